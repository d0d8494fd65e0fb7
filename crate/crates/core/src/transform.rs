//! The multiwavelet transform on `[0, 1)`.
//!
//! A signal at depth `K` stores, for every cell `[l 2^{-K}, (l+1) 2^{-K})`,
//! its coefficients against `√(2^{K+1}) p̂_j(2^{K+1} t - 2l - 1)`. Analysis
//! produces coefficients against `√2 φ_j` on the root cell and against
//! `2^{k/2} ψ^n_j(2^k t - i)` for every level `k < K`. One cascade step
//! maps a sibling pair `(a_left, a_right)` to
//!
//! ```text
//! s = (C_{-1} a_left + C_1 a_right) / √2,    d = (D_{-1} a_left + D_1 a_right) / 2,
//! ```
//!
//! an orthogonal map, so synthesis applies its transpose.

use std::fmt;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::filterbank::{d1_matrix, Method};
use crate::legendre::legendre_orthonormal;
use crate::poly::{int, Poly};
use crate::scalar::{ExactScalar, SurdSum};

/// Scalars the transform can run on: exact surd sums or floats.
pub trait Coefficient: Clone + fmt::Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn from_surd(s: &SurdSum) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn parse(s: &str) -> Result<Self>;
    fn render(&self) -> String;
}

impl Coefficient for f64 {
    fn zero() -> Self {
        0.0
    }

    fn from_surd(s: &SurdSum) -> Self {
        s.to_f64()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        s.parse::<f64>()
            .or_else(|_| s.parse::<SurdSum>().map(|v| v.to_f64()))
            .map_err(|_| Error::Parse(format!("invalid number '{s}'")))
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Coefficient for SurdSum {
    fn zero() -> Self {
        SurdSum::zero()
    }

    fn from_surd(s: &SurdSum) -> Self {
        s.clone()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn to_f64(&self) -> f64 {
        SurdSum::to_f64(self)
    }

    fn is_zero(&self) -> bool {
        SurdSum::is_zero(self)
    }

    fn parse(s: &str) -> Result<Self> {
        s.trim().parse()
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

fn dot<T: Coefficient>(row: &[T], x: &[T]) -> T {
    row.iter().zip(x).fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
}

fn sum_squares<T: Coefficient>(v: &[T]) -> T {
    dot(v, v)
}

/// Runs `f` over `0..len`, splitting across threads for long levels. The
/// output order is the index order regardless of scheduling.
fn indexed_map<R: Send>(len: usize, f: impl Fn(usize) -> R + Sync) -> Vec<R> {
    const CHUNK: usize = 64;
    if len <= CHUNK {
        return (0..len).map(f).collect();
    }
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..len)
            .step_by(CHUNK)
            .map(|start| scope.spawn(move || (start..(start + CHUNK).min(len)).map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("transform worker panicked"))
            .collect()
    })
}

/// Coefficients of a piecewise polynomial of degree `≤ n` on the `2^K`
/// cells of `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePolySignal<T> {
    pub n: usize,
    pub levels: usize,
    pub cells: Vec<Vec<T>>,
}

/// Coefficients in the orthonormal multiwavelet basis of `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiresCoeffs<T> {
    pub n: usize,
    pub levels: usize,
    pub scaling0: Vec<T>,
    /// `detail[k][i][j]`: level `k`, shift `i`, wavelet `j`.
    pub detail: Vec<Vec<Vec<T>>>,
}

impl<T: Coefficient> PiecewisePolySignal<T> {
    pub fn new(n: usize, levels: usize, cells: Vec<Vec<T>>) -> Result<Self> {
        if cells.len() != 1 << levels {
            return Err(Error::Signal(format!(
                "expected {} cells for {levels} levels, got {}",
                1usize << levels,
                cells.len()
            )));
        }
        if let Some(l) = cells.iter().position(|c| c.len() != n + 1) {
            return Err(Error::Signal(format!("cell {l} needs {} coefficients", n + 1)));
        }
        Ok(PiecewisePolySignal { n, levels, cells })
    }

    pub fn zeros(n: usize, levels: usize) -> Self {
        PiecewisePolySignal {
            n,
            levels,
            cells: vec![vec![T::zero(); n + 1]; 1 << levels],
        }
    }

    /// `‖f‖²`, the sum of squared coefficients.
    pub fn norm_sq(&self) -> T {
        self.cells.iter().fold(T::zero(), |acc, c| acc.add(&sum_squares(c)))
    }

    /// `f(t)` as a float, zero outside `[0, 1)`.
    pub fn eval_f64(&self, t: f64) -> f64 {
        if !(0.0..1.0).contains(&t) {
            return 0.0;
        }
        let scale = (1u64 << (self.levels + 1)) as f64;
        let l = ((t * (1u64 << self.levels) as f64) as usize).min(self.cells.len() - 1);
        let tau = scale * t - (2 * l + 1) as f64;
        self.cells[l]
            .iter()
            .enumerate()
            .map(|(j, a)| a.to_f64() * legendre_orthonormal(j).poly.eval_f64(tau))
            .sum::<f64>()
            * scale.sqrt()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> PiecewisePolySignal<U> {
        PiecewisePolySignal {
            n: self.n,
            levels: self.levels,
            cells: self.cells.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }
}

impl PiecewisePolySignal<SurdSum> {
    /// The signal on each cell as a polynomial in `t`.
    pub fn cell_polys(&self) -> Vec<Poly> {
        let scale = BigRational::from_integer((1u64 << (self.levels + 1)).into());
        let norm = SurdSum::from(ExactScalar::sqrt(1u64 << (self.levels + 1)));
        let basis: Vec<Poly> = (0..=self.n).map(|j| legendre_orthonormal(j).poly).collect();
        self.cells
            .iter()
            .enumerate()
            .map(|(l, c)| {
                let shift = int(-(2 * l as i64 + 1));
                let mut p = Poly::zero();
                for (a, b) in c.iter().zip(&basis) {
                    p = &p + &b.compose_affine(&scale, &shift).scale(a);
                }
                p.scale(&norm)
            })
            .collect()
    }

    /// Exact `f(t)` at a rational point, zero outside `[0, 1)`.
    pub fn eval(&self, t: &BigRational) -> SurdSum {
        if t < &BigRational::zero() || t >= &int(1) {
            return SurdSum::zero();
        }
        let cells = BigRational::from_integer((1u64 << self.levels).into());
        let l = (t * cells).floor().to_integer();
        let l: usize = l.try_into().unwrap_or(0);
        self.cell_polys()[l.min(self.cells.len() - 1)].eval(t)
    }
}

impl<T: Coefficient> MultiresCoeffs<T> {
    pub fn count(&self) -> usize {
        self.scaling0.len() + self.detail.iter().flatten().map(Vec::len).sum::<usize>()
    }

    pub fn norm_sq(&self) -> T {
        self.detail
            .iter()
            .flatten()
            .fold(sum_squares(&self.scaling0), |acc, d| acc.add(&sum_squares(d)))
    }

    pub fn details(&self) -> impl Iterator<Item = &T> {
        self.detail.iter().flatten().flatten()
    }
}

/// The orthogonal step matrix `[[C_{-1}, C_1]/√2; [D_{-1}, D_1]/2]`,
/// rows are outputs `(s, d)`, columns inputs `(a_left, a_right)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepMatrix<T> {
    pub n: usize,
    pub rows: Vec<Vec<T>>,
}

impl<T: Coefficient> StepMatrix<T> {
    pub fn new(n: usize) -> Result<Self> {
        let fm = d1_matrix(n, Method::Closed)?;
        let c_scale = SurdSum::from(ExactScalar::sqrt_ratio(1, 2));
        let d_scale = SurdSum::ratio(1, 2);
        let size = n + 1;
        let mut rows = Vec::with_capacity(2 * size);
        let r = &fm.refinement;
        for j in 0..size {
            rows.push(
                (0..2 * size)
                    .map(|c| {
                        let v = if c < size { r.c_minus1.get(j, c) } else { r.c_plus1.get(j, c - size) };
                        T::from_surd(&(v * &c_scale))
                    })
                    .collect(),
            );
        }
        for j in 0..size {
            rows.push(
                (0..2 * size)
                    .map(|c| {
                        let v = if c < size { fm.d_minus1.get(j, c) } else { fm.d_plus1.get(j, c - size) };
                        T::from_surd(&(v * &d_scale))
                    })
                    .collect(),
            );
        }
        Ok(StepMatrix { n, rows })
    }

    /// `(a_left, a_right) -> (s, d)`.
    pub fn forward(&self, left: &[T], right: &[T]) -> (Vec<T>, Vec<T>) {
        let x: Vec<T> = left.iter().chain(right).cloned().collect();
        let out: Vec<T> = self.rows.iter().map(|r| dot(r, &x)).collect();
        let size = self.n + 1;
        (out[..size].to_vec(), out[size..].to_vec())
    }

    /// `(s, d) -> (a_left, a_right)`.
    pub fn inverse(&self, s: &[T], d: &[T]) -> (Vec<T>, Vec<T>) {
        let y: Vec<&T> = s.iter().chain(d).collect();
        let size = self.n + 1;
        let x: Vec<T> = (0..2 * size)
            .map(|c| {
                self.rows
                    .iter()
                    .zip(&y)
                    .fold(T::zero(), |acc, (row, v)| acc.add(&row[c].mul(v)))
            })
            .collect();
        (x[..size].to_vec(), x[size..].to_vec())
    }
}

/// Multiresolution analysis of a signal.
pub fn analyze<T: Coefficient>(signal: &PiecewisePolySignal<T>) -> Result<MultiresCoeffs<T>> {
    let step = StepMatrix::<T>::new(signal.n)?;
    Ok(analyze_with(&step, signal))
}

pub fn analyze_with<T: Coefficient>(step: &StepMatrix<T>, signal: &PiecewisePolySignal<T>) -> MultiresCoeffs<T> {
    let mut current = signal.cells.clone();
    let mut detail = vec![Vec::new(); signal.levels];
    for k in (0..signal.levels).rev() {
        let pairs = indexed_map(1 << k, |i| step.forward(&current[2 * i], &current[2 * i + 1]));
        let (s, d): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        detail[k] = d;
        current = s;
    }
    MultiresCoeffs {
        n: signal.n,
        levels: signal.levels,
        scaling0: current.pop().expect("root cell"),
        detail,
    }
}

/// Inverse of [`analyze`].
pub fn synthesize<T: Coefficient>(coeffs: &MultiresCoeffs<T>) -> Result<PiecewisePolySignal<T>> {
    let step = StepMatrix::<T>::new(coeffs.n)?;
    synthesize_with(&step, coeffs)
}

pub fn synthesize_with<T: Coefficient>(
    step: &StepMatrix<T>,
    coeffs: &MultiresCoeffs<T>,
) -> Result<PiecewisePolySignal<T>> {
    check_shape(coeffs)?;
    let mut current = vec![coeffs.scaling0.clone()];
    for (k, level) in coeffs.detail.iter().enumerate() {
        let children = indexed_map(1 << k, |i| step.inverse(&current[i], &level[i]));
        current = children.into_iter().flat_map(|(l, r)| [l, r]).collect();
    }
    PiecewisePolySignal::new(coeffs.n, coeffs.levels, current)
}

fn check_shape<T>(c: &MultiresCoeffs<T>) -> Result<()> {
    let size = c.n + 1;
    if c.scaling0.len() != size || c.detail.len() != c.levels {
        return Err(Error::Signal("coefficient set has the wrong shape".into()));
    }
    for (k, level) in c.detail.iter().enumerate() {
        if level.len() != 1 << k || level.iter().any(|d| d.len() != size) {
            return Err(Error::Signal(format!("level {k} has the wrong shape")));
        }
    }
    Ok(())
}

/// Bookkeeping from [`compress`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompressionStats {
    pub total: usize,
    pub retained: usize,
    /// Sum of squares of the dropped coefficients, which by orthonormality
    /// is the squared reconstruction error.
    pub dropped_energy: f64,
}

/// Zeroes every detail coefficient with magnitude below `threshold`.
pub fn compress<T: Coefficient>(coeffs: &MultiresCoeffs<T>, threshold: f64) -> Result<(MultiresCoeffs<T>, CompressionStats)> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::Signal(format!("threshold must be nonnegative, got {threshold}")));
    }
    let mut out = coeffs.clone();
    let mut dropped = 0.0;
    let mut retained = out.scaling0.iter().filter(|v| !v.is_zero()).count();
    for v in out.detail.iter_mut().flatten().flatten() {
        let x = v.to_f64();
        if x.abs() < threshold {
            if !v.is_zero() {
                dropped += x * x;
            }
            *v = T::zero();
        } else if !v.is_zero() {
            retained += 1;
        }
    }
    Ok((
        out,
        CompressionStats {
            total: coeffs.count(),
            retained,
            dropped_energy: dropped,
        },
    ))
}

/// Exact projection of a polynomial onto the depth-`levels` cells.
pub fn project_poly(p: &Poly, n: usize, levels: usize) -> PiecewisePolySignal<SurdSum> {
    let scale = BigRational::from_integer((1u64 << (levels + 1)).into());
    let norm = SurdSum::from(ExactScalar::sqrt_ratio(1, 1i64 << (levels + 1)));
    let basis: Vec<Poly> = (0..=n).map(|j| legendre_orthonormal(j).poly).collect();
    let cells = indexed_map(1 << levels, |l| {
        // t = (τ + 2l + 1) / 2^{K+1}
        let q = p.compose_affine(&scale.recip(), &(int(2 * l as i64 + 1) / &scale));
        basis
            .iter()
            .map(|b| (&q * b).integrate(&int(-1), &int(1)) * &norm)
            .collect()
    });
    PiecewisePolySignal { n, levels, cells }
}

/// Projection of a function by Gauss–Legendre quadrature with `n + 8`
/// nodes per cell.
pub fn project_fn(f: impl Fn(f64) -> f64 + Sync, n: usize, levels: usize) -> PiecewisePolySignal<f64> {
    let rule = GaussLegendre::new(NonZeroUsize::new(n + 8).expect("positive node count"));
    let scale = (1u64 << (levels + 1)) as f64;
    let basis: Vec<Poly> = (0..=n).map(|j| legendre_orthonormal(j).poly).collect();
    let cells = indexed_map(1 << levels, |l| {
        let shift = (2 * l + 1) as f64;
        basis
            .iter()
            .map(|b| rule.integrate(-1.0, 1.0, |tau| f((tau + shift) / scale) * b.eval_f64(tau)) / scale.sqrt())
            .collect()
    });
    PiecewisePolySignal { n, levels, cells }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn constant_projection() {
        let s = project_poly(&Poly::constant(SurdSum::sqrt(2)), 0, 1);
        assert_eq!(s.norm_sq(), SurdSum::integer(2));
        assert_eq!(s.cells[0], s.cells[1]);
        assert_eq!(s.cells[0][0], SurdSum::one());
    }

    #[test]
    fn quadratic_projection_reconstructs() {
        let p = Poly::monomial(2, SurdSum::one());
        let s = project_poly(&p, 2, 3);
        for (a, b) in [(1, 7), (3, 8), (5, 9), (0, 1), (99, 100)] {
            let t = rat(a, b);
            assert_eq!(s.eval(&t), p.eval(&t));
        }
    }

    #[test]
    fn cubic_residual_positive() {
        let s = project_poly(&Poly::monomial(3, SurdSum::one()), 2, 2);
        let residual = SurdSum::ratio(1, 7) - s.norm_sq();
        assert_eq!(residual.signum(), 1);
    }

    #[test]
    fn polynomial_details_vanish() {
        let p = Poly::from_rationals(&[rat(1, 3), rat(-2, 1), rat(0, 1), rat(5, 7)]);
        let c = analyze(&project_poly(&p, 3, 3)).unwrap();
        assert!(c.details().all(SurdSum::is_zero));
    }

    #[test]
    fn exact_round_trip_and_parseval() {
        let cells: Vec<Vec<SurdSum>> = (0..8)
            .map(|l| (0..3).map(|j| SurdSum::ratio(l * 3 - j * 5 + 1, j + 2)).collect())
            .collect();
        let s = PiecewisePolySignal::new(2, 3, cells).unwrap();
        let c = analyze(&s).unwrap();
        assert_eq!(c.count(), 24);
        assert_eq!(c.norm_sq(), s.norm_sq());
        assert_eq!(synthesize(&c).unwrap(), s);
    }

    #[test]
    fn float_compression_accounting() {
        let s = project_fn(f64::exp, 3, 6);
        let c = analyze(&s).unwrap();
        let (kept, stats) = compress(&c, 1e-6).unwrap();
        let r = synthesize(&kept).unwrap();
        let err: f64 = s
            .cells
            .iter()
            .flatten()
            .zip(r.cells.iter().flatten())
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        assert!((err - stats.dropped_energy).abs() < 1e-14);
        let (same, zero) = compress(&c, 0.0).unwrap();
        assert_eq!(same, c);
        assert_eq!(zero.dropped_energy, 0.0);
    }
}
