//! The explicit wavelet polynomials `h^n_m` on `[-1, 1)`.
//!
//! Members are addressed by their subscript `m`; the construction itself
//! is naturally indexed by `i = n - m`. For `i = 0` or `i` odd the `[0,1)`
//! piece is `Σ_k d^i_{n,k} t^k` with
//!
//! ```text
//! d^i_{n,k} = (-1)^n √(2n-2i+1)/(-n)_i · (-n)_k (n-i+1)_k/(k!)²
//!             · Π_{m=0}^{(i-1)/2} (n+k+1-2m) · Π_{m=0}^{(i-3)/2} (n-k-1-2m),
//! ```
//!
//! for even `i > 0` it coincides with the `(n-1, i-1)` member, and the
//! `[-1,0)` piece follows from `h(-t) = (-1)^{m+1} h(t)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hypergeom::{factorial, pochhammer};
use crate::legendre::legendre_orthonormal;
use crate::poly::{int, one, zero, Poly};
use crate::report::Report;
use crate::scalar::{ExactScalar, SurdSum};

pub use crate::poly::PiecewisePoly;

/// `i = 0` or `i` odd: the indices with their own coefficient table.
pub fn has_own_table(i: usize) -> bool {
    i == 0 || i % 2 == 1
}

/// `Π_{m=0}^{(i-1)/2} (n+k+1-2m) · Π_{m=0}^{(i-3)/2} (n-k-1-2m)`; both
/// products are empty for `i = 0`. `k` may be any rational.
pub fn coefficient_product(n: usize, i: usize, k: &BigRational) -> BigRational {
    let n = int(n as i64);
    let mut acc = BigRational::one();
    let mut m = 0i64;
    while 2 * m < i as i64 {
        acc *= &n + k + int(1 - 2 * m);
        m += 1;
    }
    let mut m = 0i64;
    while 2 * m + 2 < i as i64 {
        acc *= &n - k - int(1 + 2 * m);
        m += 1;
    }
    acc
}

/// `d^i_{n,k}` for `k = 0..=n`; each value is rational times `√(2n-2i+1)`.
pub fn wavelet_coefficients(n: usize, i: usize) -> Result<Vec<ExactScalar>> {
    if i > n {
        return Err(Error::Index(format!("i = {i} exceeds n = {n}")));
    }
    if !has_own_table(i) {
        return Err(Error::Index(format!(
            "d^i_(n,k) is defined for i = 0 or odd i, got i = {i}"
        )));
    }
    let minus_n = int(-(n as i64));
    let upper = int(n as i64 - i as i64 + 1);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let lead = int(sign) / pochhammer(&minus_n, i);
    let root = ExactScalar::sqrt(2 * (n - i) as u64 + 1);
    Ok((0..=n)
        .map(|k| {
            let kf = BigRational::from_integer(factorial(k as u64));
            let c = &lead * pochhammer(&minus_n, k) * pochhammer(&upper, k) / (&kf * &kf)
                * coefficient_product(n, i, &int(k as i64));
            &ExactScalar::rational(c) * &root
        })
        .collect())
}

/// The `[0, 1)` piece of `h^n_m`.
pub fn right_piece(n: usize, m: usize) -> Poly {
    assert!(m <= n, "subscript {m} exceeds n = {n}");
    let i = n - m;
    let coeffs = if has_own_table(i) {
        wavelet_coefficients(n, i)
    } else {
        wavelet_coefficients(n - 1, i - 1)
    }
    .expect("valid index");
    Poly::new(coeffs.into_iter().map(SurdSum::from).collect())
}

/// `(-1)^{m+1}`, the parity of `h^n_m`.
pub fn parity(m: usize) -> i64 {
    if m % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `h^n_m` on `[-1, 0) ∪ [0, 1)`.
pub fn wavelet_polynomial(n: usize, m: usize) -> PiecewisePoly {
    let right = right_piece(n, m);
    // h(t) = (-1)^{m+1} h(-t) for t in [-1, 0)
    let left = right
        .compose_affine(&int(-1), &zero())
        .scale_rational(&int(parity(m)));
    PiecewisePoly::new(vec![int(-1), zero(), one()], vec![left, right], n).expect("valid pieces")
}

/// `h^n_0 … h^n_n` with the coefficient tables they are built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletFamily {
    pub n: usize,
    pub members: Vec<PiecewisePoly>,
    pub dcoeffs: BTreeMap<usize, Vec<ExactScalar>>,
}

impl WaveletFamily {
    pub fn new(n: usize) -> Self {
        let dcoeffs = (0..=n)
            .filter(|&i| has_own_table(i))
            .map(|i| (i, wavelet_coefficients(n, i).expect("valid index")))
            .collect();
        WaveletFamily {
            n,
            members: (0..=n).map(|m| wavelet_polynomial(n, m)).collect(),
            dcoeffs,
        }
    }

    pub fn member(&self, m: usize) -> &PiecewisePoly {
        &self.members[m]
    }

    /// `∫_{-1}^{1} h_a h_b dt` for all pairs.
    pub fn gram(&self) -> Vec<Vec<SurdSum>> {
        self.members
            .iter()
            .map(|a| self.members.iter().map(|b| a.inner(b).expect("shared breakpoints")).collect())
            .collect()
    }
}

/// Checks the five defining conditions and the `i = 0` Legendre form.
pub fn verify_conditions(n: usize) -> Report {
    let fam = WaveletFamily::new(n);
    let mut report = Report::new(format!("wavelets n={n}"));

    let bad_degree: Vec<usize> = (0..=n)
        .filter(|&m| fam.members[m].pieces().iter().any(|p| p.degree().is_some_and(|d| d > n)))
        .collect();
    report.push("(i) piecewise degree <= n", bad_degree.is_empty(), witness(&bad_degree));

    let mut moment_failures = Vec::new();
    for m in 0..=n {
        for s in 0..=n {
            let v = fam.members[m].moment(s);
            if !v.is_zero() {
                moment_failures.push(format!("m={m} s={s}: {v}"));
            }
        }
    }
    report.push(
        "(ii) vanishing moments on [-1,1] through degree n",
        moment_failures.is_empty(),
        first(&moment_failures),
    );

    let gram = fam.gram();
    let mut gram_failures = Vec::new();
    for (a, row) in gram.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            let expect = if a == b { SurdSum::integer(2) } else { SurdSum::zero() };
            if v != &expect {
                gram_failures.push(format!("({a},{b}) = {v}"));
            }
        }
    }
    report.push("(iii) Gram matrix equals 2I", gram_failures.is_empty(), first(&gram_failures));

    let bad_parity: Vec<usize> = (0..=n)
        .filter(|&m| {
            let h = &fam.members[m];
            let reflected = h.piece(0).compose_affine(&int(-1), &zero());
            reflected.scale_rational(&int(parity(m))) != *h.piece(1)
        })
        .collect();
    report.push("(iv) h(-t) = (-1)^(m+1) h(t)", bad_parity.is_empty(), witness(&bad_parity));

    let mut one_sided = Vec::new();
    for m in 0..=n {
        for s in 0..m {
            let v = fam.members[m].piece(1).moment(s, &zero(), &one());
            if !v.is_zero() {
                one_sided.push(format!("m={m} s={s}: {v}"));
            }
        }
    }
    report.push(
        "(v) one-sided moments vanish for s < m",
        one_sided.is_empty(),
        first(&one_sided),
    );

    // h^n_n(t) = (-1)^n √2 p̂_n(1-2t) on [0,1)
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let closed = legendre_orthonormal(n)
        .poly
        .compose_affine(&int(-2), &int(1))
        .scale(&SurdSum::sqrt(2))
        .scale_rational(&int(sign));
    report.push(
        "h^n_n equals (-1)^n sqrt(2) p_n(1-2t)",
        &closed == fam.members[n].piece(1),
        "",
    );

    let bad_exact_degree: Vec<usize> = (0..=n)
        .filter(|&m| {
            let i = n - m;
            let expect = if has_own_table(i) { n } else { n - 1 };
            fam.members[m].piece(1).degree() != Some(expect)
        })
        .collect();
    report.push(
        "[0,1) piece has exact degree n (i=0 or odd) or n-1 (even i>0)",
        bad_exact_degree.is_empty(),
        witness(&bad_exact_degree),
    );
    report
}

fn witness(ms: &[usize]) -> String {
    if ms.is_empty() {
        String::new()
    } else {
        format!("failing subscripts {ms:?}")
    }
}

fn first(items: &[String]) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [head, rest @ ..] => format!("{head} and {} more", rest.len()),
    }
}

/// Coefficient multipliers of `𝓛_i = Π_{m=0}^{(i-3)/2}(D-n+2m) · Π_{m=0}^{(i-1)/2}(D+n-i+1+2m)`
/// with `D = t·d/dt`, which acts on `t^k` as multiplication by `k`.
fn lifting_factor(n: usize, i: usize, k: usize) -> BigRational {
    let (n, i, k) = (n as i64, i as i64, k as i64);
    let mut acc = 1i64;
    let mut m = 0;
    while 2 * m + 2 < i {
        acc *= k - n + 2 * m;
        m += 1;
    }
    let mut m = 0;
    while 2 * m < i {
        acc *= k + n - i + 1 + 2 * m;
        m += 1;
    }
    int(acc)
}

/// `𝓛_i p`.
pub fn apply_lifting_operator(n: usize, i: usize, p: &Poly) -> Poly {
    p.map_by_degree(|k| lifting_factor(n, i, k))
}

/// `t(1-t)p'' + (1-(i+2)t)p' + (n-i+1)(n+2)p`.
pub fn apply_gauss_operator(n: usize, i: usize, p: &Poly) -> Poly {
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let t_one_minus_t = Poly::from_rationals(&[zero(), one(), int(-1)]);
    let first = Poly::from_rationals(&[one(), int(-(i as i64) - 2)]);
    let c = int((n as i64 - i as i64 + 1) * (n as i64 + 2));
    &(&(&t_one_minus_t * &d2) + &(&first * &d1)) + &p.scale_rational(&c)
}

/// `2F1(-n+i-1, n+2; 1; t)` as a polynomial.
pub fn jacobi_target(n: usize, i: usize) -> Poly {
    let a = int(i as i64 - n as i64 - 1);
    let b = int(n as i64 + 2);
    Poly::from_rationals(
        &(0..=n + 1 - i)
            .map(|k| {
                let kf = BigRational::from_integer(factorial(k as u64));
                pochhammer(&a, k) * pochhammer(&b, k) / (&kf * &kf)
            })
            .collect::<Vec<_>>(),
    )
}

/// `(-1)^{n+(i-1)/2} (-n-1)_i √(2n-2i+1)`, the constant in `𝓛_i h = c·2F1(…)`.
pub fn jacobi_constant(n: usize, i: usize) -> ExactScalar {
    let sign = if (n + (i - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let c = int(sign) * pochhammer(&int(-(n as i64) - 1), i);
    &ExactScalar::rational(c) * &ExactScalar::sqrt(2 * (n - i) as u64 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffopResult {
    /// `𝓛_i h^n_{n-i}` on `[0, 1)`.
    pub lifted: Poly,
    /// The second-order operator applied to `lifted`; identically zero.
    pub residual: Poly,
    /// `c` with `lifted = c·2F1(-n+i-1, n+2; 1; t)`, if proportional.
    pub jacobi_ratio: Option<ExactScalar>,
}

/// Applies `𝓛_i` and then the Gauss operator to the `[0,1)` piece of `h^n_{n-i}`.
pub fn diffop_residual(n: usize, i: usize) -> Result<DiffopResult> {
    if i % 2 == 0 {
        return Err(Error::Index(format!("the differential equation needs odd i, got {i}")));
    }
    if i > n {
        return Err(Error::Index(format!("i = {i} exceeds n = {n}")));
    }
    let h = right_piece(n, n - i);
    let lifted = apply_lifting_operator(n, i, &h);
    let residual = apply_gauss_operator(n, i, &lifted);
    let target = jacobi_target(n, i);
    let c = lifted.coeff(0);
    let jacobi_ratio = if target.scale(&c) == lifted {
        c.as_single()
    } else {
        None
    };
    Ok(DiffopResult {
        lifted,
        residual,
        jacobi_ratio,
    })
}

/// `∫_0^1 p q (1-t)^i dt`, the inner product under which the lifted
/// polynomials are orthogonal.
pub fn jacobi_weighted_inner(i: usize, p: &Poly, q: &Poly) -> SurdSum {
    let one_minus_t = Poly::from_rationals(&[one(), int(-1)]);
    let mut w = Poly::constant(SurdSum::one());
    for _ in 0..i {
        w = &w * &one_minus_t;
    }
    (&(p * q) * &w).integrate(&zero(), &one())
}

/// Integer-coefficient normalisation: `(-n)_i h/√(2n-2i+1)` for `i = 0` or odd,
/// `(-n+1)_{i-1} h/√(2n-2i+1)` for even `i > 0`. Returns the scaled coefficients
/// as rationals.
pub fn integer_normalised(n: usize, m: usize) -> Vec<BigRational> {
    let i = n - m;
    let scale = if has_own_table(i) {
        pochhammer(&int(-(n as i64)), i)
    } else {
        pochhammer(&int(1 - n as i64), i - 1)
    };
    let root = ExactScalar::sqrt(2 * (n - i) as u64 + 1);
    right_piece(n, m)
        .coeffs()
        .iter()
        .map(|c| {
            let v = (c / &root).scale(&scale);
            v.as_rational().expect("single radicand")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn ints(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| ExactScalar::integer(x)).collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(wavelet_coefficients(0, 0).unwrap(), ints(&[1]));
        assert_eq!(wavelet_coefficients(1, 1).unwrap(), ints(&[2, -3]));
        // k >= n-i+2 with n-k odd: only k = 4 for (5, 3)
        let d = wavelet_coefficients(5, 3).unwrap();
        assert!(d[4].is_zero());
        assert!(!d[5].is_zero());
    }

    #[test]
    fn even_index_is_rejected() {
        assert!(wavelet_coefficients(4, 2).is_err());
        assert!(wavelet_coefficients(2, 3).is_err());
    }

    #[test]
    fn haar_and_linear_members() {
        let h = wavelet_polynomial(0, 0);
        assert_eq!(h.eval(&rat(1, 2)), SurdSum::one());
        assert_eq!(h.eval(&rat(-1, 2)), SurdSum::integer(-1));
        let h10 = wavelet_polynomial(1, 0);
        assert_eq!(h10.piece(1), &Poly::new(vec![SurdSum::integer(2), SurdSum::integer(-3)]));
        assert_eq!(h10.eval(&rat(-1, 2)), SurdSum::ratio(-1, 2));
        let h11 = wavelet_polynomial(1, 1);
        // -√3(1-2t)
        let s3 = SurdSum::sqrt(3);
        assert_eq!(h11.piece(1), &Poly::new(vec![-&s3, s3.scale(&int(2))]));
        assert_eq!(h11.eval(&rat(-1, 4)), h11.eval(&rat(1, 4)));
    }

    #[test]
    fn even_index_reuses_previous_family() {
        assert_eq!(wavelet_polynomial(2, 0).piece(1), wavelet_polynomial(1, 0).piece(1));
    }

    #[test]
    fn conditions_small_n() {
        for n in 0..=3 {
            let r = verify_conditions(n);
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn diffop_examples() {
        let r = diffop_residual(1, 1).unwrap();
        assert!(r.residual.is_zero());
        assert_eq!(r.lifted, Poly::new(vec![SurdSum::integer(2), SurdSum::integer(-6)]));
        assert!(diffop_residual(5, 3).unwrap().residual.is_zero());
        let r = diffop_residual(7, 5).unwrap();
        let c = r.jacobi_ratio.expect("proportional");
        assert!(!c.is_zero());
        assert_eq!(c, jacobi_constant(7, 5));
        assert!(diffop_residual(4, 2).is_err());
    }
}
