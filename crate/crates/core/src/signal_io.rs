//! CSV files for signals (`cell,degree,value`) and multiwavelet
//! coefficients (`kind,level,shift,degree,value`).

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::transform::{Coefficient, MultiresCoeffs, PiecewisePolySignal};

pub const SIGNAL_HEADER: [&str; 3] = ["cell", "degree", "value"];
pub const COEFF_HEADER: [&str; 5] = ["kind", "level", "shift", "degree", "value"];

fn check_header(found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if found.iter().map(str::trim).ne(expected.iter().copied()) {
        return Err(Error::Parse(format!(
            "expected header '{}', found '{}'",
            expected.join(","),
            found.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

fn field<'a>(rec: &'a csv::StringRecord, k: usize, line: usize) -> Result<&'a str> {
    rec.get(k)
        .map(str::trim)
        .ok_or_else(|| Error::Parse(format!("line {line}: missing column {}", k + 1)))
}

fn index(rec: &csv::StringRecord, k: usize, line: usize) -> Result<usize> {
    let s = field(rec, k, line)?;
    s.parse()
        .map_err(|_| Error::Parse(format!("line {line}: '{s}' is not a nonnegative integer")))
}

fn place<T: Clone>(slot: &mut Option<T>, v: T, what: impl FnOnce() -> String) -> Result<()> {
    if slot.is_some() {
        return Err(Error::Signal(format!("duplicate entry for {}", what())));
    }
    *slot = Some(v);
    Ok(())
}

fn unwrap_all<T>(v: Vec<Option<T>>, what: impl Fn(usize) -> String) -> Result<Vec<T>> {
    v.into_iter()
        .enumerate()
        .map(|(k, x)| x.ok_or_else(|| Error::Signal(format!("missing entry for {}", what(k)))))
        .collect()
}

/// Reads a signal with `2^levels` cells of `n + 1` coefficients; every
/// `(cell, degree)` pair must appear exactly once.
pub fn read_signal<T: Coefficient>(reader: impl Read, n: usize, levels: usize) -> Result<PiecewisePolySignal<T>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    check_header(rdr.headers()?, &SIGNAL_HEADER)?;
    let cells = 1usize << levels;
    let mut slots: Vec<Vec<Option<T>>> = vec![vec![None; n + 1]; cells];
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = k + 2;
        let (cell, degree) = (index(&rec, 0, line)?, index(&rec, 1, line)?);
        if cell >= cells || degree > n {
            return Err(Error::Signal(format!(
                "line {line}: (cell {cell}, degree {degree}) outside {cells} cells of degree ≤ {n}"
            )));
        }
        let v = T::parse(field(&rec, 2, line)?)?;
        place(&mut slots[cell][degree], v, || format!("cell {cell}, degree {degree}"))?;
    }
    let cells = slots
        .into_iter()
        .enumerate()
        .map(|(c, row)| unwrap_all(row, |d| format!("cell {c}, degree {d}")))
        .collect::<Result<_>>()?;
    PiecewisePolySignal::new(n, levels, cells)
}

pub fn write_signal<T: Coefficient>(writer: impl Write, signal: &PiecewisePolySignal<T>) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SIGNAL_HEADER)?;
    for (c, row) in signal.cells.iter().enumerate() {
        for (d, v) in row.iter().enumerate() {
            w.write_record([c.to_string(), d.to_string(), v.render()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a coefficient set of order `n` and depth `levels`. Scaling rows use
/// level 0, shift 0.
pub fn read_coeffs<T: Coefficient>(reader: impl Read, n: usize, levels: usize) -> Result<MultiresCoeffs<T>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    check_header(rdr.headers()?, &COEFF_HEADER)?;
    let mut scaling: Vec<Option<T>> = vec![None; n + 1];
    let mut detail: Vec<Vec<Vec<Option<T>>>> = (0..levels).map(|k| vec![vec![None; n + 1]; 1 << k]).collect();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = k + 2;
        let kind = field(&rec, 0, line)?;
        let (level, shift, degree) = (index(&rec, 1, line)?, index(&rec, 2, line)?, index(&rec, 3, line)?);
        if degree > n {
            return Err(Error::Signal(format!("line {line}: degree {degree} exceeds {n}")));
        }
        let v = T::parse(field(&rec, 4, line)?)?;
        match kind {
            "scaling" => {
                if level != 0 || shift != 0 {
                    return Err(Error::Signal(format!("line {line}: scaling rows use level 0, shift 0")));
                }
                place(&mut scaling[degree], v, || format!("scaling degree {degree}"))?;
            }
            "detail" => {
                if level >= levels || shift >= 1 << level {
                    return Err(Error::Signal(format!(
                        "line {line}: (level {level}, shift {shift}) outside a depth-{levels} set"
                    )));
                }
                place(&mut detail[level][shift][degree], v, || {
                    format!("detail level {level}, shift {shift}, degree {degree}")
                })?;
            }
            other => return Err(Error::Parse(format!("line {line}: unknown kind '{other}'"))),
        }
    }
    let scaling0 = unwrap_all(scaling, |d| format!("scaling degree {d}"))?;
    let detail = detail
        .into_iter()
        .enumerate()
        .map(|(k, level)| {
            level
                .into_iter()
                .enumerate()
                .map(|(i, row)| unwrap_all(row, |d| format!("detail level {k}, shift {i}, degree {d}")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(MultiresCoeffs {
        n,
        levels,
        scaling0,
        detail,
    })
}

pub fn write_coeffs<T: Coefficient>(writer: impl Write, coeffs: &MultiresCoeffs<T>) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(COEFF_HEADER)?;
    for (d, v) in coeffs.scaling0.iter().enumerate() {
        w.write_record(["scaling".to_string(), "0".into(), "0".into(), d.to_string(), v.render()])?;
    }
    for (k, level) in coeffs.detail.iter().enumerate() {
        for (i, row) in level.iter().enumerate() {
            for (d, v) in row.iter().enumerate() {
                w.write_record(["detail".to_string(), k.to_string(), i.to_string(), d.to_string(), v.render()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::SurdSum;
    use crate::transform::analyze;

    #[test]
    fn signal_round_trip() {
        let text = "cell,degree,value\n0,0,1/2*sqrt(2)\n0,1,0.25\n1,0,-3\n1,1,sqrt(3)\n";
        let s: PiecewisePolySignal<SurdSum> = read_signal(text.as_bytes(), 1, 1).unwrap();
        assert_eq!(s.cells[0][1], SurdSum::ratio(1, 4));
        let mut out = Vec::new();
        write_signal(&mut out, &s).unwrap();
        let again: PiecewisePolySignal<SurdSum> = read_signal(out.as_slice(), 1, 1).unwrap();
        assert_eq!(again, s);
        let f: PiecewisePolySignal<f64> = read_signal(text.as_bytes(), 1, 1).unwrap();
        assert!((f.cells[1][1] - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn signal_errors() {
        let missing = "cell,degree,value\n0,0,1\n";
        assert!(read_signal::<f64>(missing.as_bytes(), 0, 1).is_err());
        let dup = "cell,degree,value\n0,0,1\n0,0,2\n";
        assert!(read_signal::<f64>(dup.as_bytes(), 0, 0).is_err());
        let header = "a,b,c\n0,0,1\n";
        assert!(read_signal::<f64>(header.as_bytes(), 0, 0).is_err());
    }

    #[test]
    fn coeff_round_trip() {
        let cells = (0..4).map(|l| vec![SurdSum::integer(l), SurdSum::ratio(1, l + 1)]).collect();
        let s = PiecewisePolySignal::new(1, 2, cells).unwrap();
        let c = analyze(&s).unwrap();
        let mut out = Vec::new();
        write_coeffs(&mut out, &c).unwrap();
        let back: MultiresCoeffs<SurdSum> = read_coeffs(out.as_slice(), 1, 2).unwrap();
        assert_eq!(back, c);
    }
}
