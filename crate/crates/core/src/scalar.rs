//! Exact scalars of the form `(p/q)·√m` and finite sums of them.
//!
//! Every coefficient of the wavelet construction lives in this class:
//! a rational number times the square root of a squarefree integer.
//! [`ExactScalar`] is a single such term. [`SurdSum`] is a finite
//! Q-linear combination of distinct square roots; since square roots of
//! distinct squarefree integers are linearly independent over Q, a
//! `SurdSum` is zero exactly when every coefficient is zero, which makes
//! equality tests tolerance-free.
//!
//! Text form: `num/den*sqrt(m)` with `m` squarefree, abbreviated as
//! `sqrt(m)`, `num/den` or `num` where the parts are trivial. Sums join
//! terms with `+`/`-`, ordered by radicand.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Splits `m` as `root² · core` with `core` squarefree.
pub fn split_square(m: u64) -> (u64, u64) {
    if m == 0 {
        return (0, 1);
    }
    let mut root = 1u64;
    let mut core = 1u64;
    let mut rest = m;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0u32;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    core *= rest;
    (root, core)
}

const TRIAL_LIMIT: u64 = 1 << 20;

fn split_square_big(m: &BigUint) -> Result<(BigUint, u64)> {
    if let Some(small) = m.to_u64() {
        let (r, c) = split_square(small);
        return Ok((BigUint::from(r), c));
    }
    let mut root = BigUint::one();
    let mut core = BigUint::one();
    let mut rest = m.clone();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && BigUint::from(p * p) <= rest {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        root *= bp.pow(e / 2);
        if e % 2 == 1 {
            core *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            root *= s;
        } else if rest < BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT) {
            // no factor below the trial limit, so `rest` is prime
            core *= rest;
        } else {
            return Err(Error::RadicandTooLarge(m.to_string()));
        }
    }
    let core = core
        .to_u64()
        .ok_or_else(|| Error::RadicandTooLarge(m.to_string()))?;
    Ok((root, core))
}

/// `(num/den)·√surd` with `surd` squarefree and `surd = 1` when the value is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    coeff: BigRational,
    surd: u64,
}

impl ExactScalar {
    pub fn new(coeff: BigRational, surd: u64) -> Self {
        assert!(surd > 0, "radicand must be positive");
        if coeff.is_zero() {
            return Self::zero();
        }
        let (root, core) = split_square(surd);
        ExactScalar {
            coeff: coeff * BigRational::from_integer(BigInt::from(root)),
            surd: core,
        }
    }

    pub fn zero() -> Self {
        ExactScalar {
            coeff: BigRational::zero(),
            surd: 1,
        }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(coeff: BigRational) -> Self {
        Self::new(coeff, 1)
    }

    pub fn integer(v: i64) -> Self {
        Self::rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    /// `√m`.
    pub fn sqrt(m: u64) -> Self {
        Self::new(BigRational::one(), m)
    }

    /// Square root of a nonnegative rational, `√(p/q) = √(pq)/q`.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand(r.to_string()));
        }
        if r.is_zero() {
            return Ok(Self::zero());
        }
        let pq = (r.numer() * r.denom()).magnitude().clone();
        let (root, core) = split_square_big(&pq)?;
        let coeff = BigRational::new(BigInt::from(root), r.denom().clone());
        Ok(ExactScalar { coeff, surd: core })
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn num(&self) -> &BigInt {
        self.coeff.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.coeff.denom()
    }

    pub fn surd(&self) -> u64 {
        self.surd
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd == 1
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        ExactScalar {
            coeff: self.coeff.abs(),
            surd: self.surd,
        }
    }

    /// Square of the value, always rational.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * BigRational::from_integer(self.surd.into())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.surd != other.surd {
            return Err(Error::SurdMismatch(self.surd, other.surd));
        }
        Ok(Self::new(&self.coeff + &other.coeff, self.surd))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(c√m) = √m/(c·m)
        let m = BigRational::from_integer(self.surd.into());
        Ok(ExactScalar {
            coeff: (&self.coeff * m).recip(),
            surd: self.surd,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        if self.surd == 1 {
            c
        } else {
            c * (self.surd as f64).sqrt()
        }
    }

    /// `√(a/b)` for small positive integers; panics on invalid input.
    pub fn sqrt_ratio(a: i64, b: i64) -> Self {
        Self::sqrt_rational(&BigRational::new(a.into(), b.into())).expect("positive ratio")
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        Self::integer(v)
    }
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        let (root, core) = mul_surds(self.surd, rhs.surd);
        ExactScalar {
            coeff: &self.coeff * &rhs.coeff * BigRational::from_integer(root.into()),
            surd: core,
        }
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.recip().expect("division by zero")
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        &self / &rhs
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            coeff: -self.coeff,
            surd: self.surd,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -self.clone()
    }
}

/// √a·√b for squarefree a, b: with g = gcd(a, b) the product is g·√((a/g)(b/g)),
/// and the remaining radicand is squarefree again.
fn mul_surds(a: u64, b: u64) -> (u64, u64) {
    let g = a.gcd(&b);
    (g, (a / g) * (b / g))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.surd == 1 {
            return write!(f, "{}", fmt_rational(&self.coeff));
        }
        if self.coeff.is_one() {
            write!(f, "sqrt({})", self.surd)
        } else if (-&self.coeff).is_one() {
            write!(f, "-sqrt({})", self.surd)
        } else {
            write!(f, "{}*sqrt({})", fmt_rational(&self.coeff), self.surd)
        }
    }
}

/// Parses `p/q`, an integer, or a decimal such as `-0.125` or `2.5e-3`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all.parse::<BigInt>().map_err(|_| err())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(10.into());
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if negative { -value } else { value })
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(format!("not an exact scalar: {s:?}"));
        let Some(open) = s.find("sqrt(") else {
            return parse_rational(s).map(Self::rational);
        };
        let close = s.rfind(')').ok_or_else(err)?;
        if close != s.len() - 1 || close < open + 5 {
            return Err(err());
        }
        let radicand: u64 = s[open + 5..close].trim().parse().map_err(|_| err())?;
        if radicand == 0 {
            return Ok(Self::zero());
        }
        let head = s[..open].trim();
        let coeff = match head {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            _ => {
                let c = head.strip_suffix('*').ok_or_else(err)?;
                parse_rational(c)?
            }
        };
        Ok(Self::new(coeff, radicand))
    }
}

/// A finite sum `Σ c_m √m` over distinct squarefree radicands `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SurdSum {
    // sorted by radicand, no zero coefficients
    terms: Vec<(u64, BigRational)>,
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar::rational(r).into()
    }

    pub fn integer(v: i64) -> Self {
        ExactScalar::integer(v).into()
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExactScalar::ratio(num, den).into()
    }

    pub fn sqrt(m: u64) -> Self {
        ExactScalar::sqrt(m).into()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ExactScalar> + '_ {
        self.terms
            .iter()
            .map(|(m, c)| ExactScalar { coeff: c.clone(), surd: *m })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a single term, if it has at most one.
    pub fn as_single(&self) -> Option<ExactScalar> {
        match self.terms.as_slice() {
            [] => Some(ExactScalar::zero()),
            [(m, c)] => Some(ExactScalar { coeff: c.clone(), surd: *m }),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        // an empty f64 sum is -0.0
        self.terms().fold(0.0, |acc, t| acc + t.to_f64())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SurdSum {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    /// Sign of the value. Exact for sums with one term, otherwise decided in
    /// floating point.
    pub fn signum(&self) -> i32 {
        match self.as_single() {
            Some(s) => s.signum(),
            None => {
                let v = self.to_f64();
                if v > 0.0 {
                    1
                } else if v < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    fn from_map(map: BTreeMap<u64, BigRational>) -> Self {
        SurdSum {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => {
                    if ma < mb {
                        out.push((*ma, ca.clone()));
                        a.next();
                    } else if mb < ma {
                        out.push((*mb, if negate { -cb } else { cb.clone() }));
                        b.next();
                    } else {
                        let c = if negate { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((*ma, c));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ma, ca)), None) => {
                    out.push((*ma, ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    out.push((*mb, if negate { -cb } else { cb.clone() }));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SurdSum { terms: out }
    }
}

impl From<ExactScalar> for SurdSum {
    fn from(s: ExactScalar) -> Self {
        if s.is_zero() {
            SurdSum::zero()
        } else {
            SurdSum {
                terms: vec![(s.surd, s.coeff)],
            }
        }
    }
}

impl From<&ExactScalar> for SurdSum {
    fn from(s: &ExactScalar) -> Self {
        s.clone().into()
    }
}

impl From<BigRational> for SurdSum {
    fn from(r: BigRational) -> Self {
        SurdSum::from_rational(r)
    }
}

impl Add<&SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn add(self, rhs: &SurdSum) -> SurdSum {
        self.merge(rhs, false)
    }
}

impl Sub<&SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn sub(self, rhs: &SurdSum) -> SurdSum {
        self.merge(rhs, true)
    }
}

impl Mul<&SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: &SurdSum) -> SurdSum {
        if self.is_zero() || rhs.is_zero() {
            return SurdSum::zero();
        }
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (ma, ca) = &self.terms[0];
            let (mb, cb) = &rhs.terms[0];
            let (root, core) = mul_surds(*ma, *mb);
            let c = ca * cb * BigRational::from_integer(root.into());
            return SurdSum {
                terms: vec![(core, c)],
            };
        }
        let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (root, core) = mul_surds(*ma, *mb);
                let c = ca * cb * BigRational::from_integer(root.into());
                *map.entry(core).or_insert_with(BigRational::zero) += c;
            }
        }
        SurdSum::from_map(map)
    }
}

impl Mul<&ExactScalar> for &SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: &ExactScalar) -> SurdSum {
        self * &SurdSum::from(rhs)
    }
}

impl Div<&ExactScalar> for &SurdSum {
    type Output = SurdSum;
    fn div(self, rhs: &ExactScalar) -> SurdSum {
        self * &rhs.recip().expect("division by zero")
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        SurdSum {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for SurdSum {
            type Output = SurdSum;
            fn $method(self, rhs: SurdSum) -> SurdSum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&SurdSum> for SurdSum {
            type Output = SurdSum;
            fn $method(self, rhs: &SurdSum) -> SurdSum {
                (&self).$method(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl AddAssign<&SurdSum> for SurdSum {
    fn add_assign(&mut self, rhs: &SurdSum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&SurdSum> for SurdSum {
    fn sub_assign(&mut self, rhs: &SurdSum) {
        *self = &*self - rhs;
    }
}

impl Zero for SurdSum {
    fn zero() -> Self {
        SurdSum::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SurdSum {
    fn one() -> Self {
        SurdSum::one()
    }
}

impl std::iter::Sum for SurdSum {
    fn sum<I: Iterator<Item = SurdSum>>(iter: I) -> Self {
        iter.fold(SurdSum::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, term) in self.terms().enumerate() {
            let s = term.to_string();
            if k > 0 && !s.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SurdSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty exact value".into()));
        }
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut total = SurdSum::zero();
        for k in 1..=bytes.len() {
            let at_split = k == bytes.len()
                || ((bytes[k] == b'+' || bytes[k] == b'-')
                    && !matches!(bytes[k - 1], b'e' | b'E' | b'(' | b'*' | b'/'));
            if at_split {
                let term: ExactScalar = s[start..k].parse()?;
                total += &SurdSum::from(term);
                start = k;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn square_factors_are_extracted() {
        assert_eq!(split_square(12), (2, 3));
        assert_eq!(split_square(1), (1, 1));
        assert_eq!(split_square(49 * 11), (7, 11));
        let s = ExactScalar::new(q(1, 2), 8);
        assert_eq!(s.coeff(), &q(1, 1));
        assert_eq!(s.surd(), 2);
    }

    #[test]
    fn zero_has_unit_surd() {
        let z = ExactScalar::new(BigRational::zero(), 7);
        assert_eq!(z.surd(), 1);
        assert!(z.is_zero());
    }

    #[test]
    fn sqrt_of_rational() {
        // √(3/2) = √6/2
        let s = ExactScalar::sqrt_rational(&q(3, 2)).unwrap();
        assert_eq!(s.to_string(), "1/2*sqrt(6)");
        assert!(ExactScalar::sqrt_rational(&q(-1, 2)).is_err());
        assert_eq!(ExactScalar::sqrt_rational(&q(9, 4)).unwrap(), ExactScalar::ratio(3, 2));
    }

    #[test]
    fn products_stay_in_class() {
        let a = ExactScalar::sqrt(6);
        let b = ExactScalar::sqrt(10);
        // √60 = 2√15
        assert_eq!((&a * &b).to_string(), "2*sqrt(15)");
        let c = ExactScalar::sqrt(2);
        assert_eq!(&c * &c, ExactScalar::integer(2));
        assert_eq!((&ExactScalar::integer(1) / &c).to_string(), "1/2*sqrt(2)");
    }

    #[test]
    fn addition_requires_equal_surds() {
        let a = ExactScalar::sqrt(2);
        let b = ExactScalar::sqrt(3);
        assert_eq!(a.checked_add(&b), Err(Error::SurdMismatch(2, 3)));
        assert_eq!(a.checked_add(&a).unwrap().to_string(), "2*sqrt(2)");
        assert_eq!(a.checked_add(&ExactScalar::zero()).unwrap(), a);
    }

    #[test]
    fn surd_sums_cancel_exactly() {
        let a = SurdSum::sqrt(2) + SurdSum::sqrt(3);
        let b = SurdSum::sqrt(2) - SurdSum::sqrt(3);
        // (√2+√3)(√2-√3) = -1
        assert_eq!(&a * &b, SurdSum::integer(-1));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!(ExactScalar::sqrt(2).to_string(), "sqrt(2)");
        assert_eq!((-ExactScalar::sqrt(2)).to_string(), "-sqrt(2)");
        assert_eq!(ExactScalar::ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(ExactScalar::new(q(5, 1), 3).to_string(), "5*sqrt(3)");
        let s = SurdSum::ratio(1, 2) - SurdSum::sqrt(3);
        assert_eq!(s.to_string(), "1/2-sqrt(3)");
    }

    #[test]
    fn parse_forms() {
        let cases = ["0", "sqrt(2)", "-sqrt(2)", "-1/2*sqrt(6)", "7", "-3/4", "5*sqrt(3)"];
        for c in cases {
            let v: ExactScalar = c.parse().unwrap();
            assert_eq!(v.to_string(), c);
        }
        let v: ExactScalar = "-0.5".parse().unwrap();
        assert_eq!(v, ExactScalar::ratio(-1, 2));
        let v: ExactScalar = "2.5e-1".parse().unwrap();
        assert_eq!(v, ExactScalar::ratio(1, 4));
        let v: ExactScalar = "1/2*sqrt(8)".parse().unwrap();
        assert_eq!(v, ExactScalar::sqrt(2));
        assert!("sqrt(2".parse::<ExactScalar>().is_err());
        assert!("abc".parse::<ExactScalar>().is_err());
        let s: SurdSum = "1/2*sqrt(2)-3+1e-1".parse().unwrap();
        assert_eq!(
            s,
            SurdSum::from(ExactScalar::new(q(1, 2), 2)) + SurdSum::from_rational(q(-29, 10))
        );
    }

    #[test]
    fn float_conversion() {
        assert!((ExactScalar::sqrt_ratio(3, 2).to_f64() - 1.5f64.sqrt()).abs() < 1e-15);
    }
}
