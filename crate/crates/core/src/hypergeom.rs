//! Pochhammer symbols and generalized hypergeometric series.
//!
//! Terminating series are summed exactly over rationals; non-terminating
//! ones (the `2F3` in the Fourier transforms) in `f64` with adaptive
//! truncation. Also hosts the Whipple transformation of balanced `4F3(1)`
//! series and the two summation lemmas the wavelet construction rests on,
//! exposed as residual functions that must vanish identically.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rising factorial `(a)_k = a(a+1)…(a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer<T>(a: &T, k: usize) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc = acc * x.clone();
        x = x + T::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `n!!`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial of {n}");
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Parameters `a_1…a_p; b_1…b_q; t` of a `pFq` series.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomParams<T = BigRational> {
    pub numerator: Vec<T>,
    pub denominator: Vec<T>,
    pub argument: T,
}

impl<T> HypergeomParams<T> {
    pub fn new(numerator: Vec<T>, denominator: Vec<T>, argument: T) -> Self {
        HypergeomParams {
            numerator,
            denominator,
            argument,
        }
    }
}

fn nonpositive_integer(a: &BigRational) -> Option<usize> {
    if a.is_integer() && !a.is_positive() {
        a.numer().magnitude().to_usize()
    } else {
        None
    }
}

impl HypergeomParams<BigRational> {
    /// Index of the last nonzero term: the smallest `|a|` over numerator
    /// parameters that are nonpositive integers.
    pub fn termination_order(&self) -> Option<usize> {
        self.numerator.iter().filter_map(nonpositive_integer).min()
    }

    /// Terminating, unit argument, and `Σb = Σa + 1`.
    pub fn is_balanced(&self) -> bool {
        let sum = |v: &[BigRational]| v.iter().fold(BigRational::zero(), |acc, x| acc + x);
        self.argument.is_one()
            && self.termination_order().is_some()
            && sum(&self.denominator) == sum(&self.numerator) + BigRational::one()
    }

    pub fn to_f64(&self) -> HypergeomParams<f64> {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        HypergeomParams {
            numerator: self.numerator.iter().map(f).collect(),
            denominator: self.denominator.iter().map(f).collect(),
            argument: f(&self.argument),
        }
    }
}

/// Exact value of a terminating series.
pub fn eval_pfq_terminating(params: &HypergeomParams<BigRational>) -> Result<BigRational> {
    let order = params.termination_order().ok_or(Error::NonTerminating)?;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..order {
        let kr = BigRational::from_integer(k.into());
        let mut den = BigRational::from_integer((k + 1).into());
        for b in &params.denominator {
            let bk = b + &kr;
            if bk.is_zero() {
                return Err(Error::DenominatorZero {
                    param: b.to_string(),
                    term: k + 1,
                });
            }
            den *= bk;
        }
        let num = params
            .numerator
            .iter()
            .fold(params.argument.clone(), |acc, a| acc * (a + &kr));
        term = term * num / den;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Result of a truncated summation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedSum {
    pub value: f64,
    pub terms: usize,
    /// Largest term magnitude seen; `max_term / |value|` bounds the cancellation.
    pub max_term: f64,
}

pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Sums a convergent series until three consecutive terms fall below
/// `tol·|partial sum|`.
pub fn eval_pfq_truncated(params: &HypergeomParams<f64>, tol: f64) -> Result<TruncatedSum> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut max_term = 1.0f64;
    let mut small_run = 0;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let mut ratio = params.argument / (kf + 1.0);
        for a in &params.numerator {
            ratio *= a + kf;
        }
        for b in &params.denominator {
            let bk = b + kf;
            if bk == 0.0 {
                return Err(Error::DenominatorZero {
                    param: b.to_string(),
                    term: k + 1,
                });
            }
            ratio /= bk;
        }
        term *= ratio;
        sum += term;
        max_term = max_term.max(term.abs());
        if !sum.is_finite() || !term.is_finite() {
            return Err(Error::NonFinite);
        }
        if term.abs() <= tol * sum.abs() {
            small_run += 1;
            if small_run == 3 {
                return Ok(TruncatedSum {
                    value: sum,
                    terms: k + 2,
                    max_term,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::TruncationLimit(MAX_SERIES_TERMS))
}

/// Which parameters play the roles `-N`, `z` (numerators) and `u`
/// (denominator) in the Whipple transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WhippleChoice {
    pub terminating: usize,
    pub z: usize,
    pub u: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WhippleResult {
    pub params: HypergeomParams<BigRational>,
    pub prefactor: BigRational,
}

/// Whipple's transformation of a terminating balanced `4F3(1)`:
///
/// ```text
/// 4F3(-N, x, y, z; u, v, w; 1)
///   = (1-v+z-N)_N (1-w+z-N)_N / ((v)_N (w)_N)
///     · 4F3(-N, u-x, u-y, z; u, 1-v+z-N, 1-w+z-N; 1)
/// ```
///
/// The output lists numerators as `[-N, u-x, u-y, z]` and denominators as
/// `[u, 1-v+z-N, 1-w+z-N]`, where `x, y` and `v, w` are the remaining
/// parameters in their input order. The output is again balanced.
pub fn whipple_transform(
    params: &HypergeomParams<BigRational>,
    choice: WhippleChoice,
) -> Result<WhippleResult> {
    if params.numerator.len() != 4 || params.denominator.len() != 3 {
        return Err(Error::Index("whipple transform needs a 4F3".into()));
    }
    if choice.terminating == choice.z || choice.terminating > 3 || choice.z > 3 || choice.u > 2 {
        return Err(Error::Index(format!("invalid parameter choice {choice:?}")));
    }
    if !params.is_balanced() {
        return Err(Error::NotBalanced);
    }
    let minus_n = &params.numerator[choice.terminating];
    let order = nonpositive_integer(minus_n).ok_or(Error::NonTerminating)?;
    let n = BigRational::from_integer(order.into());
    let z = params.numerator[choice.z].clone();
    let u = params.denominator[choice.u].clone();
    let rest: Vec<&BigRational> = (0..4)
        .filter(|&k| k != choice.terminating && k != choice.z)
        .map(|k| &params.numerator[k])
        .collect();
    let (x, y) = (rest[0], rest[1]);
    let dens: Vec<&BigRational> = (0..3)
        .filter(|&k| k != choice.u)
        .map(|k| &params.denominator[k])
        .collect();
    let (v, w) = (dens[0], dens[1]);
    let one = BigRational::one();
    let v2 = &one - v + &z - &n;
    let w2 = &one - w + &z - &n;
    let denom = pochhammer(v, order) * pochhammer(w, order);
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let prefactor = pochhammer(&v2, order) * pochhammer(&w2, order) / denom;
    Ok(WhippleResult {
        params: HypergeomParams::new(
            vec![minus_n.clone(), &u - x, &u - y, z],
            vec![u, v2, w2],
            one,
        ),
        prefactor,
    })
}

/// `LHS - RHS` of the partial-fraction identity
///
/// ```text
/// Σ_{k=0}^{n} (-n)_k/k! · C(n-i+k, n-i) / (x+k) = n!(1-x)_{n-i} / ((n-i)! (x)_{n+1})
/// ```
///
/// obtained from Lagrange interpolation at the nodes `0, -1, …, -n`.
pub fn lagrange_identity_residual(n: usize, i: usize, x: &BigRational) -> Result<BigRational> {
    if i > n {
        return Err(Error::Index(format!("i = {i} exceeds n = {n}")));
    }
    if let Some(k) = (0..=n).find(|&k| (x + BigRational::from_integer(k.into())).is_zero()) {
        return Err(Error::Pole(format!("{x} (term {k})")));
    }
    let minus_n = BigRational::from_integer(-BigInt::from(n));
    let lhs = (0..=n).fold(BigRational::zero(), |acc, k| {
        let c = pochhammer(&minus_n, k) / BigRational::from_integer(factorial(k as u64))
            * BigRational::from_integer(binomial((n - i + k) as u64, (n - i) as u64));
        acc + c / (x + BigRational::from_integer(k.into()))
    });
    let rhs = BigRational::from_integer(factorial(n as u64))
        * pochhammer(&(BigRational::one() - x), n - i)
        / (BigRational::from_integer(factorial((n - i) as u64)) * pochhammer(x, n + 1));
    Ok(lhs - rhs)
}

/// Closed value of the Lagrange sum at `x = n-i+1`:
/// `(-1)^{n+i} n!(n-i)!/(2n-i+1)!`.
pub fn lagrange_closed_value(n: usize, i: usize) -> BigRational {
    let sign = if (n + i).is_even() { 1 } else { -1 };
    BigRational::new(
        BigInt::from(sign) * factorial(n as u64) * factorial((n - i) as u64),
        factorial((2 * n - i + 1) as u64),
    )
}

/// `Σ_{k=0}^{n} (-n)_k (n-i+1)_k / ((1)_k (l+2)_k) · p(k)`, which vanishes
/// whenever `i + l < n`, `l ≥ -1` and `deg p ≤ i + l`.
pub fn vanishing_sum(n: usize, i: usize, l: i64, p: impl Fn(usize) -> BigRational) -> BigRational {
    assert!(l >= -1, "l must be at least -1");
    let minus_n = BigRational::from_integer(-BigInt::from(n));
    let a = BigRational::from_integer(BigInt::from(n as i64 - i as i64 + 1));
    let b = BigRational::from_integer(BigInt::from(l + 2));
    (0..=n).fold(BigRational::zero(), |acc, k| {
        let c = pochhammer(&minus_n, k) * pochhammer(&a, k)
            / (BigRational::from_integer(factorial(k as u64)) * pochhammer(&b, k));
        acc + c * p(k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn params(num: &[(i64, i64)], den: &[(i64, i64)], arg: (i64, i64)) -> HypergeomParams {
        let f = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| rat(a, b)).collect();
        HypergeomParams::new(f(num), f(den), rat(arg.0, arg.1))
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(7, 3), 0), rat(1, 1));
        assert_eq!(pochhammer(&int(-3), 5), int(0));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&0.5f64, 2), 0.75);
    }

    #[test]
    fn combinatorics() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn terminating_sums() {
        // 1 - 1 + 1/3
        let p = params(&[(-2, 1), (1, 1)], &[(2, 1)], (1, 1));
        assert_eq!(eval_pfq_terminating(&p).unwrap(), rat(1, 3));
        let p = params(&[(0, 1), (5, 2)], &[(7, 3)], (9, 1));
        assert_eq!(eval_pfq_terminating(&p).unwrap(), rat(1, 1));
        // Chu-Vandermonde zero: 2F1(-3, 3; 2; 1)
        let p = params(&[(-3, 1), (3, 1)], &[(2, 1)], (1, 1));
        assert_eq!(eval_pfq_terminating(&p).unwrap(), int(0));
    }

    #[test]
    fn terminating_errors() {
        let p = params(&[(1, 2)], &[(1, 1)], (1, 1));
        assert_eq!(eval_pfq_terminating(&p), Err(Error::NonTerminating));
        let p = params(&[(-3, 1)], &[(-1, 1)], (1, 1));
        assert!(matches!(
            eval_pfq_terminating(&p),
            Err(Error::DenominatorZero { term: 2, .. })
        ));
        // denominator zero beyond the last term is harmless
        let p = params(&[(-1, 1)], &[(-3, 1)], (1, 1));
        assert_eq!(eval_pfq_terminating(&p).unwrap(), rat(4, 3));
    }

    #[test]
    fn truncated_at_zero_argument() {
        let p = HypergeomParams::new(vec![2.0, 2.5], vec![2.5, 3.5, 3.0], 0.0);
        let s = eval_pfq_truncated(&p, 1e-15).unwrap();
        assert_eq!(s.value, 1.0);
    }

    #[test]
    fn truncated_against_fixed_sum() {
        // oracle: 50 terms summed directly from the definition
        let (a, b, z) = ([2.0, 2.5], [2.5, 3.5, 3.0], -0.25f64);
        let mut oracle = 0.0;
        for k in 0..50 {
            let num: f64 = a.iter().map(|x| pochhammer(x, k)).product();
            let den: f64 = b.iter().map(|x| pochhammer(x, k)).product::<f64>() * pochhammer(&1.0, k);
            oracle += num / den * z.powi(k as i32);
        }
        let p = HypergeomParams::new(a.to_vec(), b.to_vec(), z);
        let s = eval_pfq_truncated(&p, 1e-16).unwrap();
        assert!((s.value - oracle).abs() < 1e-14, "{} vs {}", s.value, oracle);
    }

    #[test]
    fn truncated_fourier_parameters() {
        // 2F3((n+3)/2, (n+4)/2; (j+4)/2, n+5/2, n+(5-j)/2; -θ²/4) at n=4, j=1, θ=10
        let (n, j, theta) = (4.0, 1.0, 10.0f64);
        let a = [(n + 3.0) / 2.0, (n + 4.0) / 2.0];
        let b = [(j + 4.0) / 2.0, n + 2.5, n + (5.0 - j) / 2.0];
        let z = -theta * theta / 4.0;
        let mut oracle = 0.0;
        let mut term = 1.0;
        for k in 0..200 {
            oracle += term;
            let kf = k as f64;
            term *= (a[0] + kf) * (a[1] + kf) * z / ((b[0] + kf) * (b[1] + kf) * (b[2] + kf) * (kf + 1.0));
        }
        let s = eval_pfq_truncated(&HypergeomParams::new(a.to_vec(), b.to_vec(), z), 1e-12).unwrap();
        assert!((s.value - oracle).abs() < 1e-10);
        assert!(s.terms < 200);
    }

    #[test]
    fn truncation_limit() {
        // 1F0(1;;1/2·…) style divergence is caught as non-finite or limit
        let p = HypergeomParams::new(vec![1.0, 1.0], vec![], 2.0);
        assert!(eval_pfq_truncated(&p, 1e-12).is_err());
    }

    #[test]
    fn whipple_empty_sum() {
        // N = 0: both sides are 1 and the prefactor is 1
        let p = params(&[(0, 1), (1, 2), (1, 3), (1, 4)], &[(2, 1), (-1, 12), (1, 6)], (1, 1));
        assert!(p.is_balanced());
        let w = whipple_transform(&p, WhippleChoice { terminating: 0, z: 3, u: 0 }).unwrap();
        assert_eq!(w.prefactor, int(1));
        assert_eq!(eval_pfq_terminating(&w.params).unwrap(), int(1));
    }

    #[test]
    fn whipple_rejects_unbalanced() {
        let p = params(&[(-2, 1), (1, 2), (1, 3), (1, 4)], &[(2, 1), (3, 1), (5, 1)], (1, 1));
        assert_eq!(
            whipple_transform(&p, WhippleChoice { terminating: 0, z: 3, u: 0 }),
            Err(Error::NotBalanced)
        );
    }

    #[test]
    fn lagrange_small_cases() {
        assert_eq!(lagrange_identity_residual(0, 0, &int(2)).unwrap(), int(0));
        assert_eq!(lagrange_identity_residual(1, 0, &int(2)).unwrap(), int(0));
        assert!(matches!(lagrange_identity_residual(3, 1, &int(-2)), Err(Error::Pole(_))));
    }

    #[test]
    fn lagrange_hand_value() {
        // n=1, i=0, x=2: 1/2 - 2/3 = -1/6
        let lhs = rat(1, 2) - rat(2, 3);
        assert_eq!(lhs, rat(-1, 6));
        let rhs = BigRational::from_integer(factorial(1)) * pochhammer(&int(-1), 1)
            / (BigRational::from_integer(factorial(1)) * pochhammer(&int(2), 2));
        assert_eq!(rhs, rat(-1, 6));
    }
}
