//! The identity suites behind `alpert verify`.
//!
//! Every suite is deterministic: random signals come from a fixed-seed
//! generator. Suites run concurrently and are reported in module order.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filterbank::{method_agreement, recurrence_in_n_agreement, validate_filterbank, whipple_agreement};
use crate::fourier::{even_moment_closed, even_moment_direct, h_hat, verify_fourier, verify_fourier_ode};
use crate::hypergeom::{lagrange_identity_residual, vanishing_sum};
use crate::legendre::{legendre_orthonormal, refinement_matrices};
use crate::poly::{int, rat, Poly};
use crate::report::Report;
use crate::scalar::{ExactScalar, SurdSum};
use crate::transform::{analyze, project_poly, synthesize, MultiresCoeffs, PiecewisePolySignal};
use crate::wavelets::{
    diffop_residual, integer_normalised, jacobi_constant, jacobi_weighted_inner, verify_conditions,
};

/// Suites in reporting order.
pub const MODULES: [&str; 6] = ["hypergeom", "legendre", "wavelets", "filterbank", "fourier", "transform"];

/// Upper limits on `n` where a check is specified for a smaller range than
/// the suite bound.
const FOURIER_N: usize = 8;
const FOURIER_ODE_N: usize = 6;
const FOURIER_ODE_ORDER: usize = 36;
const METHODS_N: usize = 10;
const DIFFEQ_N: usize = 10;
const TRANSFORM_N: usize = 6;
const TRANSFORM_K: usize = 6;
const TRANSFORM_SIGNALS: usize = 20;
const LEGENDRE_ORTHO_J: usize = 20;

fn failures_detail(bad: &[String]) -> String {
    match bad.len() {
        0 => String::new(),
        k if k <= 4 => bad.join("; "),
        k => format!("{k} failures, e.g. {}", bad[..4].join("; ")),
    }
}

pub fn hypergeom_suite(n_max: usize) -> Report {
    let mut report = Report::new("hypergeom");
    let xs = [rat(1, 2), int(1), rat(3, 2), int(2), rat(7, 3)];
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 0..=n_max {
        for i in 0..=n {
            for x in &xs {
                match lagrange_identity_residual(n, i, x) {
                    Ok(r) => {
                        count += 1;
                        if r != int(0) {
                            bad.push(format!("n={n} i={i} x={x}"));
                        }
                    }
                    Err(Error::Pole(_)) => {}
                    Err(e) => bad.push(format!("n={n} i={i} x={x}: {e}")),
                }
            }
        }
    }
    report.push(format!("Lagrange identity, {count} cases"), bad.is_empty(), failures_detail(&bad));

    let mut bad = Vec::new();
    let mut count = 0;
    for n in 0..=n_max {
        for i in 0..n {
            for l in -1..(n as i64 - i as i64) {
                // deg p <= i + l, so i + l = -1 leaves only p = 0
                for r in 0..(i as i64 + l + 1) as u32 {
                    count += 1;
                    let s = vanishing_sum(n, i, l, |k| int(k as i64).pow(r as i32));
                    if s != int(0) {
                        bad.push(format!("n={n} i={i} l={l} r={r}"));
                    }
                }
            }
        }
    }
    report.push(format!("vanishing sums, {count} cases"), bad.is_empty(), failures_detail(&bad));

    for n in 0..=n_max.min(METHODS_N) {
        report.extend(whipple_agreement(n));
    }
    report
}

pub fn legendre_suite(n_max: usize) -> Report {
    let mut report = Report::new("legendre");
    let jmax = LEGENDRE_ORTHO_J.max(n_max);
    let p: Vec<Poly> = (0..=jmax).map(|j| legendre_orthonormal(j).poly).collect();
    let mut bad = Vec::new();
    for j in 0..=jmax {
        for k in 0..=j {
            let v = (&p[j] * &p[k]).integrate(&int(-1), &int(1));
            let expect = if j == k { SurdSum::one() } else { SurdSum::zero() };
            if v != expect {
                bad.push(format!("({j},{k})"));
            }
        }
    }
    report.push(format!("orthonormality j,k <= {jmax}"), bad.is_empty(), failures_detail(&bad));

    let ts = [rat(-7, 8), rat(-1, 2), rat(-1, 8), int(0), rat(1, 8), rat(1, 2), rat(7, 8)];
    let mut bad_ref = Vec::new();
    let mut bad_orth = Vec::new();
    let mut bad_parity = Vec::new();
    for n in 0..=n_max {
        let r = refinement_matrices(n);
        for t in &ts {
            if r.refinement_residual(t).iter().any(|v| !v.is_zero()) {
                bad_ref.push(format!("n={n} t={t}"));
            }
        }
        if !r.orthogonality_defect().is_zero() {
            bad_orth.push(format!("n={n}"));
        }
        for j in 0..=n {
            for k in 0..=n {
                let c1 = r.c_plus1.get(j, k);
                let expect = if (j + k) % 2 == 0 { c1.clone() } else { -c1 };
                if r.c_minus1.get(j, k) != &expect {
                    bad_parity.push(format!("n={n} ({j},{k})"));
                }
            }
        }
    }
    report.push("refinement equation at sample points", bad_ref.is_empty(), failures_detail(&bad_ref));
    report.push("2I = C_-1 C_-1^T + C_1 C_1^T", bad_orth.is_empty(), failures_detail(&bad_orth));
    report.push("C_-1 = (-1)^{j+k} C_1", bad_parity.is_empty(), failures_detail(&bad_parity));
    report
}

pub fn wavelets_suite(n_max: usize) -> Report {
    let mut report = Report::new("wavelets");
    for n in 0..=n_max {
        report.extend(verify_conditions(n));
    }

    let mut bad = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n {
            if integer_normalised(n, m).iter().any(|c| !c.is_integer()) {
                bad.push(format!("n={n} m={m}"));
            }
        }
    }
    report.push("integer-coefficient normalisation", bad.is_empty(), failures_detail(&bad));

    let mut bad = Vec::new();
    for n in 1..=n_max.min(DIFFEQ_N) {
        for i in (1..=n).step_by(2) {
            match diffop_residual(n, i) {
                Ok(r) => {
                    if !r.residual.is_zero() || r.jacobi_ratio != Some(jacobi_constant(n, i)) {
                        bad.push(format!("n={n} i={i}"));
                    }
                }
                Err(e) => bad.push(format!("n={n} i={i}: {e}")),
            }
        }
    }
    report.push("second-order equation and Jacobi form", bad.is_empty(), failures_detail(&bad));

    let mut bad = Vec::new();
    for i in (1..=n_max.min(DIFFEQ_N)).step_by(2) {
        let lifted: Vec<(usize, Poly)> = (i..=n_max.min(DIFFEQ_N))
            .filter_map(|n| diffop_residual(n, i).ok().map(|r| (n, r.lifted)))
            .collect();
        for (a, (na, pa)) in lifted.iter().enumerate() {
            for (nb, pb) in &lifted[..a] {
                if !jacobi_weighted_inner(i, pa, pb).is_zero() {
                    bad.push(format!("i={i} n={na},{nb}"));
                }
            }
        }
    }
    report.push("lifted polynomials orthogonal", bad.is_empty(), failures_detail(&bad));
    report
}

pub fn filterbank_suite(n_max: usize) -> Report {
    let mut report = Report::new("filterbank");
    for n in 0..=n_max {
        report.extend(validate_filterbank(n));
    }
    for n in 0..=n_max.min(METHODS_N) {
        report.extend(method_agreement(n));
        if n >= 3 {
            report.extend(recurrence_in_n_agreement(n));
        }
    }
    report
}

pub fn fourier_suite(n_max: usize) -> Report {
    let mut report = Report::new("fourier");
    let thetas = [0.5, 1.0, PI, 10.0];
    for n in 0..=n_max.min(FOURIER_N) {
        report.extend(verify_fourier(n, &thetas, 1e-10));
    }
    for n in 0..=n_max.min(FOURIER_ODE_N) {
        report.extend(verify_fourier_ode(n, FOURIER_ODE_ORDER));
    }
    let v = h_hat(0, 0, PI, 1e-17);
    let ok = v
        .as_ref()
        .map(|v| (v - Complex64::new(0.0, -4.0 / PI)).norm() <= 1e-14)
        .unwrap_or(false);
    report.push("h_hat(0,0,pi) = -4i/pi", ok, format!("{v:?}"));
    let mut bad = Vec::new();
    for (n, j, r) in [(3, 1, 0), (3, 1, 1), (5, 3, 2)] {
        match even_moment_closed(n, j, r) {
            Ok(c) if SurdSum::from(c.clone()) == even_moment_direct(n, j, r) => {}
            _ => bad.push(format!("({n},{j},{r})")),
        }
    }
    report.push("even-moment product formula", bad.is_empty(), failures_detail(&bad));
    report
}

/// A signal with random small rational coefficients, some multiplied by `√3`.
pub fn random_exact_signal(rng: &mut impl Rng, n: usize, levels: usize) -> PiecewisePolySignal<SurdSum> {
    let cells = (0..1usize << levels)
        .map(|_| {
            (0..=n)
                .map(|_| {
                    let v = SurdSum::ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9));
                    if rng.gen_bool(0.2) {
                        &v * &SurdSum::sqrt(3)
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    PiecewisePolySignal { n, levels, cells }
}

/// A polynomial of degree `≤ n` with random rational coefficients.
pub fn random_poly(rng: &mut impl Rng, n: usize) -> Poly {
    let c: Vec<BigRational> = (0..=n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
    Poly::from_rationals(&c)
}

pub fn transform_suite(n_max: usize) -> Report {
    let mut report = Report::new("transform");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad_round = Vec::new();
    let mut bad_parseval = Vec::new();
    let mut bad_float = Vec::new();
    let mut worst_float = 0.0f64;
    for n in 0..=n_max.min(TRANSFORM_N) {
        for s in 0..TRANSFORM_SIGNALS {
            let levels = 1 + s % TRANSFORM_K;
            let signal = random_exact_signal(&mut rng, n, levels);
            let result = analyze(&signal).and_then(|c| Ok((synthesize(&c)?, c)));
            match result {
                Ok((back, c)) => {
                    if back != signal {
                        bad_round.push(format!("n={n} K={levels} #{s}"));
                    }
                    if c.norm_sq() != signal.norm_sq() {
                        bad_parseval.push(format!("n={n} K={levels} #{s}"));
                    }
                }
                Err(e) => bad_round.push(format!("n={n} K={levels}: {e}")),
            }
            let fsig = signal.map(SurdSum::to_f64);
            match analyze(&fsig).and_then(|c| synthesize(&c)) {
                Ok(back) => {
                    let err = back
                        .cells
                        .iter()
                        .flatten()
                        .zip(fsig.cells.iter().flatten())
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    worst_float = worst_float.max(err);
                    if err > 1e-12 {
                        bad_float.push(format!("n={n} K={levels}: {err:.2e}"));
                    }
                }
                Err(e) => bad_float.push(format!("n={n} K={levels}: {e}")),
            }
        }
    }
    report.push("exact perfect reconstruction", bad_round.is_empty(), failures_detail(&bad_round));
    report.push("exact Parseval", bad_parseval.is_empty(), failures_detail(&bad_parseval));
    report.push(
        "float reconstruction within 1e-12",
        bad_float.is_empty(),
        if bad_float.is_empty() { format!("max error {worst_float:.2e}") } else { failures_detail(&bad_float) },
    );

    let mut bad = Vec::new();
    for n in 0..=n_max.min(TRANSFORM_N) {
        for levels in 1..=4 {
            let p = random_poly(&mut rng, n);
            match analyze(&project_poly(&p, n, levels)) {
                Ok(c) => {
                    if !c.details().all(SurdSum::is_zero) {
                        bad.push(format!("n={n} K={levels}"));
                    }
                }
                Err(e) => bad.push(format!("n={n} K={levels}: {e}")),
            }
        }
    }
    report.push("polynomial inputs have zero details", bad.is_empty(), failures_detail(&bad));

    let mut bad = Vec::new();
    for levels in 1..=TRANSFORM_K {
        let signal = random_exact_signal(&mut rng, 0, levels);
        let values: Vec<SurdSum> = signal.cells.iter().map(|c| c[0].clone()).collect();
        match analyze(&signal) {
            Ok(c) if c == haar_oracle(&values) => {}
            _ => bad.push(format!("K={levels}")),
        }
    }
    report.push("n = 0 matches the Haar transform", bad.is_empty(), failures_detail(&bad));
    report
}

/// The orthonormal Haar transform of `2^K` cell coefficients, written out
/// directly: averages and differences scaled by `1/√2`, with the wavelet
/// negative on the left half.
pub fn haar_oracle(values: &[SurdSum]) -> MultiresCoeffs<SurdSum> {
    let half = SurdSum::from(ExactScalar::sqrt_ratio(1, 2));
    let levels = values.len().trailing_zeros() as usize;
    let mut current = values.to_vec();
    let mut detail = vec![Vec::new(); levels];
    for k in (0..levels).rev() {
        let mut next = Vec::new();
        for pair in current.chunks(2) {
            next.push(&(&pair[0] + &pair[1]) * &half);
            detail[k].push(vec![&(&pair[1] - &pair[0]) * &half]);
        }
        current = next;
    }
    MultiresCoeffs {
        n: 0,
        levels,
        scaling0: current,
        detail,
    }
}

/// Runs one suite by name.
pub fn run_suite(module: &str, n_max: usize) -> Result<Report> {
    Ok(match module {
        "hypergeom" => hypergeom_suite(n_max),
        "legendre" => legendre_suite(n_max),
        "wavelets" => wavelets_suite(n_max),
        "filterbank" => filterbank_suite(n_max),
        "fourier" => fourier_suite(n_max),
        "transform" => transform_suite(n_max),
        other => {
            return Err(Error::Parse(format!(
                "unknown module '{other}', expected one of {}",
                MODULES.join(", ")
            )))
        }
    })
}

/// Runs the requested suites concurrently; reports come back in the order
/// of `modules`.
pub fn run_all(modules: &[&str], n_max: usize) -> Result<Vec<Report>> {
    for m in modules {
        if !MODULES.contains(m) {
            return run_suite(m, n_max).map(|_| Vec::new());
        }
    }
    let reports = std::thread::scope(|scope| {
        let handles: Vec<_> = modules
            .iter()
            .map(|m| scope.spawn(move || run_suite(m, n_max)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification suite panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let reports = run_all(&MODULES, 3).unwrap();
        assert_eq!(reports.len(), MODULES.len());
        for (r, m) in reports.iter().zip(MODULES) {
            assert_eq!(r.title, m);
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn unknown_module() {
        assert!(run_suite("nope", 2).is_err());
        assert!(run_all(&["nope"], 2).is_err());
    }
}
