//! Dense polynomials with [`SurdSum`] coefficients and piecewise polynomials
//! on half-open intervals.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::SurdSum;

/// Polynomial in monomial form, lowest degree first. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<SurdSum>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<SurdSum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: SurdSum) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(k: usize, c: SurdSum) -> Self {
        let mut coeffs = vec![SurdSum::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        Self::new(coeffs.iter().cloned().map(SurdSum::from).collect())
    }

    pub fn coeffs(&self) -> &[SurdSum] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> SurdSum {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &BigRational) -> SurdSum {
        let mut acc = SurdSum::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t) + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&BigRational::from_integer(k.into())))
                .collect(),
        )
    }

    pub fn scale(&self, c: &SurdSum) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x.scale(r)).collect())
    }

    /// `p(a·t + b)`.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Poly {
        let lin = Poly::from_rationals(&[b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Multiplies the coefficient of `t^k` by `f(k)`.
    pub fn map_by_degree(&self, f: impl Fn(usize) -> BigRational) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&f(k)))
                .collect(),
        )
    }

    /// `t^s · p(t)`.
    pub fn shift(&self, s: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![SurdSum::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    /// `∫_lo^hi p(t) dt`, exact.
    pub fn integrate(&self, lo: &BigRational, hi: &BigRational) -> SurdSum {
        let mut total = SurdSum::zero();
        let (mut plo, mut phi) = (lo.clone(), hi.clone());
        for (k, c) in self.coeffs.iter().enumerate() {
            let w = (&phi - &plo) / BigRational::from_integer((k + 1).into());
            total += &c.scale(&w);
            plo *= lo;
            phi *= hi;
        }
        total
    }

    /// `∫_lo^hi t^s p(t) dt`.
    pub fn moment(&self, s: usize, lo: &BigRational, hi: &BigRational) -> SurdSum {
        self.shift(s).integrate(lo, hi)
    }

    /// Largest coefficient magnitude as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![SurdSum::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// A function that is a polynomial of degree at most `degree_bound` on each
/// half-open interval `[b_k, b_{k+1})` and zero outside `[b_0, b_last)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePoly {
    breakpoints: Vec<BigRational>,
    pieces: Vec<Poly>,
    degree_bound: usize,
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<BigRational>, pieces: Vec<Poly>, degree_bound: usize) -> Result<Self> {
        if breakpoints.len() != pieces.len() + 1 {
            return Err(Error::Piecewise(format!(
                "{} breakpoints for {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Piecewise("breakpoints must increase".into()));
        }
        if let Some(k) = pieces
            .iter()
            .position(|p| p.degree().is_some_and(|d| d > degree_bound))
        {
            return Err(Error::Piecewise(format!(
                "piece {k} exceeds degree bound {degree_bound}"
            )));
        }
        Ok(PiecewisePoly {
            breakpoints,
            pieces,
            degree_bound,
        })
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn piece(&self, k: usize) -> &Poly {
        &self.pieces[k]
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    fn locate(&self, t: &BigRational) -> Option<usize> {
        if t < &self.breakpoints[0] || t >= self.breakpoints.last().unwrap() {
            return None;
        }
        Some(self.breakpoints[1..].iter().position(|b| t < b).unwrap())
    }

    pub fn eval(&self, t: &BigRational) -> SurdSum {
        match self.locate(t) {
            Some(k) => self.pieces[k].eval(t),
            None => SurdSum::zero(),
        }
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let first = self.breakpoints[0].to_f64().unwrap();
        let last = self.breakpoints.last().unwrap().to_f64().unwrap();
        if !(first..last).contains(&t) {
            return 0.0;
        }
        let k = self.breakpoints[1..]
            .iter()
            .position(|b| t < b.to_f64().unwrap())
            .unwrap_or(self.pieces.len() - 1);
        self.pieces[k].eval_f64(t)
    }

    /// `∫ f(t) g(t) dt` over the common support; both must share breakpoints.
    pub fn inner(&self, other: &PiecewisePoly) -> Result<SurdSum> {
        if self.breakpoints != other.breakpoints {
            return Err(Error::Piecewise("breakpoints differ".into()));
        }
        Ok(self
            .intervals()
            .zip(self.pieces.iter().zip(&other.pieces))
            .map(|((lo, hi), (p, q))| (p * q).integrate(lo, hi))
            .sum())
    }

    /// `∫ t^s f(t) dt` over the support.
    pub fn moment(&self, s: usize) -> SurdSum {
        self.intervals()
            .zip(&self.pieces)
            .map(|((lo, hi), p)| p.moment(s, lo, hi))
            .sum()
    }

    pub fn intervals(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.breakpoints.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// `x ↦ f(x)` restricted to one interval, as a polynomial in `x`.
    pub fn piece_containing(&self, t: &BigRational) -> Option<&Poly> {
        self.locate(t).map(|k| &self.pieces[k])
    }
}

pub(crate) fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

pub(crate) fn one() -> BigRational {
    BigRational::one()
}

pub(crate) fn zero() -> BigRational {
    BigRational::zero()
}
