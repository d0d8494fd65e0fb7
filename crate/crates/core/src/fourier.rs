//! Fourier transforms `ĥ^n_m(θ) = ∫_{-1}^{1} h^n_m(t) e^{-iθt} dt` and
//! `ψ̂^n_m(θ) = e^{-iθ/2}/2 · ĥ^n_m(θ/2)`.
//!
//! With `j = n - m` odd,
//!
//! ```text
//! ĥ^n_m(θ) = P · (-iθ)^{n+2} · 2F3((n+3)/2, (n+4)/2; (j+4)/2, n+5/2, n+(5-j)/2; -θ²/4),
//! ```
//!
//! for even `j > 0` the member equals the one of order `n - 1`, and for
//! `j = 0`
//!
//! ```text
//! ĥ^n_n(θ) = 2√(2n+1) (n+1)!/(2n+2)! · (-iθ)^{n+1}
//!            · 2F3((n+2)/2, (n+3)/2; 3/2, n+3/2, n+2; -θ²/4).
//! ```

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{eval_pfq_truncated, factorial, HypergeomParams};
use crate::poly::{int, rat};
use crate::report::Report;
use crate::scalar::{ExactScalar, SurdSum};
use crate::wavelets::{parity, right_piece};

/// Beyond this `|θ|` the oracle never sums the moment series.
pub const SERIES_LIMIT: f64 = 50.0;

/// `prefactor · (-iθ)^power · pFq(series; series.argument · θ²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeriesForm {
    pub n: usize,
    pub m: usize,
    pub prefactor: ExactScalar,
    pub power: usize,
    /// The argument field holds the coefficient of `θ²`, here `-1/4`.
    pub series: HypergeomParams,
}

fn fact(k: usize) -> BigRational {
    BigRational::from_integer(factorial(k as u64))
}

/// `(p/2)!` for even `p ≥ 0`.
fn int_fact(p: i64) -> BigRational {
    debug_assert!(p % 2 == 0 && p >= 0);
    fact((p / 2) as usize)
}

/// The closed form of `ĥ^n_m`.
pub fn fourier_series_form(n: usize, m: usize) -> Result<FourierSeriesForm> {
    if m > n {
        return Err(Error::Index(format!("subscript {m} exceeds n = {n}")));
    }
    let j = n - m;
    if j > 0 && j % 2 == 0 {
        let inner = fourier_series_form(n - 1, m)?;
        return Ok(FourierSeriesForm { n, ..inner });
    }
    let (ni, ji) = (n as i64, j as i64);
    let quarter = rat(-1, 4);
    if j == 0 {
        let c = int(2) * fact(n + 1) / fact(2 * n + 2);
        return Ok(FourierSeriesForm {
            n,
            m,
            prefactor: &ExactScalar::rational(c) * &ExactScalar::sqrt(2 * n as u64 + 1),
            power: n + 1,
            series: HypergeomParams::new(
                vec![rat(ni + 2, 2), rat(ni + 3, 2)],
                vec![rat(3, 2), rat(2 * ni + 3, 2), int(ni + 2)],
                quarter,
            ),
        });
    }
    let sign = if ((j + 1) / 2) % 2 == 1 { -1 } else { 1 };
    let c = int(sign) * BigRational::from_integer(num_bigint::BigInt::from(1u8) << (j + 1))
        * fact((j + 1) / 2)
        * fact(n + 1)
        * fact(n + 2)
        / (fact(j + 2) * fact(2 * n + 3) * int_fact(2 * ni + 3 - ji));
    Ok(FourierSeriesForm {
        n,
        m,
        prefactor: &ExactScalar::rational(c) * &ExactScalar::sqrt((2 * n - 2 * j + 1) as u64),
        power: n + 2,
        series: HypergeomParams::new(
            vec![rat(ni + 3, 2), rat(ni + 4, 2)],
            vec![rat(ji + 4, 2), rat(2 * ni + 5, 2), rat(2 * ni + 5 - ji, 2)],
            quarter,
        ),
    })
}

fn minus_i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

impl FourierSeriesForm {
    pub fn value(&self, theta: f64, tol: f64) -> Result<Complex64> {
        if theta == 0.0 {
            return Ok(Complex64::zero());
        }
        let mut p = self.series.to_f64();
        p.argument *= theta * theta;
        let f = eval_pfq_truncated(&p, tol)?;
        let scale = self.prefactor.to_f64() * theta.powi(self.power as i32) * f.value;
        Ok(minus_i_pow(self.power) * scale)
    }

    /// Exact coefficient of `(-iθ)^{power+2r}` for `r = 0..count`.
    pub fn coefficients(&self, count: usize) -> Vec<ExactScalar> {
        let mut out = Vec::with_capacity(count);
        let mut c = BigRational::one();
        // (-iθ)^{2r} = (-θ²)^r, so -1/4 · θ² becomes +1/4 per step in (-iθ)².
        let step = -&self.series.argument;
        for r in 0..count {
            out.push(&self.prefactor * &ExactScalar::rational(c.clone()));
            let rr = int(r as i64);
            let num = self.series.numerator.iter().fold(step.clone(), |acc, a| acc * (a + &rr));
            let den = self
                .series
                .denominator
                .iter()
                .fold(&rr + int(1), |acc, b| acc * (b + &rr));
            c = c * num / den;
        }
        out
    }
}

/// `ĥ^n_m(θ)` from the closed form.
pub fn h_hat(n: usize, m: usize, theta: f64, tol: f64) -> Result<Complex64> {
    fourier_series_form(n, m)?.value(theta, tol)
}

/// `ψ̂^n_m(θ) = e^{-iθ/2}/2 · ĥ^n_m(θ/2)`.
pub fn psi_hat(n: usize, m: usize, theta: f64, tol: f64) -> Result<Complex64> {
    let h = h_hat(n, m, theta / 2.0, tol)?;
    Ok(Complex64::from_polar(0.5, -theta / 2.0) * h)
}

/// `c_s = ∫_{-1}^{1} h^n_m(t) t^s/s! dt` for `s = 0..count`, so that
/// `ĥ^n_m(θ) = Σ c_s (-iθ)^s`.
pub fn moment_coefficients(n: usize, m: usize, count: usize) -> Vec<SurdSum> {
    let right = right_piece(n, m);
    let par = parity(m);
    let mut s_fact = BigRational::one();
    (0..count)
        .map(|s| {
            if s > 0 {
                s_fact *= int(s as i64);
            }
            // ∫_{-1}^0 h t^s = (-1)^s · parity · ∫_0^1 h t^s
            let factor = 1 + if s % 2 == 0 { par } else { -par };
            if factor == 0 {
                return SurdSum::zero();
            }
            let integral: SurdSum = right
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, a)| a.scale(&rat(1, (k + s + 1) as i64)))
                .sum();
            integral.scale(&(int(factor) / &s_fact))
        })
        .collect()
}

/// The moment series at `θ` with the rounding bound `ε·Σ|c_s θ^s|`.
fn moment_series_value(n: usize, m: usize, theta: f64) -> (Complex64, f64) {
    // |θ|^s/s! is negligible well before s = 3|θ| + 40
    let count = (3.0 * theta.abs()) as usize + 40 + n;
    let c: Vec<f64> = moment_coefficients(n, m, count).iter().map(SurdSum::to_f64).collect();
    let mut acc = Complex64::zero();
    let mut size = 0.0;
    for cs in c.iter().rev() {
        acc = acc * Complex64::new(0.0, -theta) + cs;
        size = size * theta.abs() + cs.abs();
    }
    (acc, f64::EPSILON * size)
}

/// `∫_0^1 t^k e^{-iθt} dt` for `k = 0..=kmax` by the forward recursion
/// `I_k = (k I_{k-1} - e^{-iθ}) / (iθ)`.
fn exp_moments(kmax: usize, theta: f64) -> Vec<Complex64> {
    let it = Complex64::new(0.0, theta);
    let e = Complex64::from_polar(1.0, -theta);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push((Complex64::new(1.0, 0.0) - e) / it);
    for k in 1..=kmax {
        let prev = out[k - 1];
        out.push((prev * k as f64 - e) / it);
    }
    out
}

/// Independent evaluation of `ĥ^n_m(θ)`, either by integrating the
/// `[0,1)` piece against `e^{-iθt} + (-1)^{m+1} e^{iθt}` in closed form or
/// by summing the exact moment series, whichever has the smaller rounding
/// bound. Integration by parts divides by powers of `θ` and cancels badly
/// for small `|θ|`; the series grows like `e^{|θ|}` for large `|θ|`.
pub fn h_hat_oracle(n: usize, m: usize, theta: f64) -> Complex64 {
    if theta == 0.0 {
        return Complex64::zero();
    }
    let right = right_piece(n, m);
    let a: Vec<f64> = right.coeffs().iter().map(SurdSum::to_f64).collect();
    let kmax = a.len().saturating_sub(1);
    let fwd = exp_moments(kmax, theta);
    let bwd = exp_moments(kmax, -theta);
    let par = parity(m) as f64;
    let by_parts: Complex64 = a
        .iter()
        .zip(fwd.iter().zip(&bwd))
        .map(|(&ak, (&f, &b))| (f + b * par) * ak)
        .sum();
    if theta.abs() > SERIES_LIMIT {
        return by_parts;
    }
    // I_k picks up the unit boundary term at every step l ≤ k, amplified
    // by k!/(l! |θ|^{k-l+1}).
    let x = theta.abs();
    let bp_bound: f64 = a
        .iter()
        .enumerate()
        .map(|(k, ak)| {
            let mut amp = 0.0;
            let mut g = 1.0 / x;
            for l in (0..=k).rev() {
                amp += g;
                g *= l as f64 / x;
            }
            ak.abs() * amp
        })
        .sum::<f64>()
        * 2.0
        * f64::EPSILON;
    let (series, series_bound) = moment_series_value(n, m, theta);
    if series_bound < bp_bound {
        series
    } else {
        by_parts
    }
}

/// `(N, J)` of the operator annihilating `ĥ^n_m`: `(n, j)` for odd `j`,
/// `(n-1, j-1)` for even `j`.
fn operator_indices(n: usize, m: usize) -> (i64, i64) {
    let j = (n - m) as i64;
    if j % 2 == 1 {
        (n as i64, j)
    } else {
        (n as i64 - 1, j - 1)
    }
}

/// Residual of the fourth-order equation
///
/// ```text
/// [(D - (N+2)/2)(D + (N+1)/2)(D + (J-N)/2)(D + (N+1-J)/2) + θ²/4 (D + 1/2)(D + 1)] ĥ = 0,
/// D = (θ/2) d/dθ,
/// ```
///
/// applied to the exact moment series of `ĥ^n_m`; entry `k` is the
/// coefficient of `(-iθ)^k` for `k = 0..=order`.
pub fn fourier_ode_residual(n: usize, m: usize, order: usize) -> Result<Vec<SurdSum>> {
    if m > n {
        return Err(Error::Index(format!("subscript {m} exceeds n = {n}")));
    }
    let (nn, jj) = operator_indices(n, m);
    let c = moment_coefficients(n, m, order + 1);
    let q = |x: &BigRational| -> BigRational {
        (x - rat(nn + 2, 2)) * (x + rat(nn + 1, 2)) * (x + rat(jj - nn, 2)) * (x + rat(nn + 1 - jj, 2))
    };
    Ok((0..=order)
        .map(|k| {
            let x = rat(k as i64, 2);
            let mut r = c[k].scale(&q(&x));
            if k >= 2 {
                // θ² = -(-iθ)², and D acts on θ^{k-2} as (k-2)/2
                let y = rat(k as i64 - 2, 2);
                let w = (&y + rat(1, 2)) * (&y + int(1)) / int(4);
                r -= &c[k - 2].scale(&w);
            }
            r
        })
        .collect())
}

/// `∫_{-1}^{1} h^n_{n-j}(t) t^{n+2+2r}/(n+2+2r)! dt` from the product
/// formula, `j` odd.
pub fn even_moment_closed(n: usize, j: usize, r: usize) -> Result<ExactScalar> {
    if j % 2 == 0 || j > n {
        return Err(Error::Index(format!("need odd j ≤ n, got j = {j}, n = {n}")));
    }
    let form = fourier_series_form(n, n - j)?;
    Ok(form.coefficients(r + 1).pop().expect("r + 1 coefficients"))
}

/// `c_s` for `s = n + 2 + 2r`, by direct integration.
pub fn even_moment_direct(n: usize, j: usize, r: usize) -> SurdSum {
    let s = n + 2 + 2 * r;
    moment_coefficients(n, n - j, s + 1).pop().expect("s + 1 moments")
}

/// Fourier-side checks for one order `n`.
pub fn verify_fourier(n: usize, thetas: &[f64], tol: f64) -> Report {
    let mut report = Report::new(format!("fourier n={n}"));
    let mut worst = 0.0f64;
    let mut errors = Vec::new();
    for m in 0..=n {
        for &theta in thetas {
            match h_hat(n, m, theta, 1e-17) {
                Ok(v) => worst = worst.max((v - h_hat_oracle(n, m, theta)).norm()),
                Err(e) => errors.push(format!("m={m} θ={theta}: {e}")),
            }
        }
    }
    report.push(
        format!("closed form = oracle within {tol:e}"),
        errors.is_empty() && worst <= tol,
        if errors.is_empty() { format!("max error {worst:.3e}") } else { errors.join("; ") },
    );

    let zero_ok = (0..=n).all(|m| moment_coefficients(n, m, n + 1).iter().all(SurdSum::is_zero));
    report.push("h_hat(0) = 0 and Taylor terms through θ^n vanish", zero_ok, "");

    let mut parity_bad = Vec::new();
    for m in 0..=n {
        for &theta in thetas {
            let a = h_hat_oracle(n, m, theta);
            let b = h_hat_oracle(n, m, -theta);
            let scale = a.norm().max(1e-300);
            let conj_ok = (a.conj() - b).norm() <= 1e-12 * scale.max(1.0);
            let kind_ok = if parity(m) == 1 { a.im.abs() <= 1e-12 } else { a.re.abs() <= 1e-12 };
            if !conj_ok || !kind_ok {
                parity_bad.push(format!("m={m} θ={theta}"));
            }
        }
    }
    report.push("parity and conjugate symmetry", parity_bad.is_empty(), parity_bad.join("; "));

    let mut decay_bad = Vec::new();
    for m in 0..=n {
        let bound: f64 = 6.0 * right_piece(n, m).coeffs().iter().map(|a| a.to_f64().abs()).sum::<f64>();
        for theta in [1e2, 1e3] {
            let v = h_hat_oracle(n, m, theta).norm();
            if v * theta > bound {
                decay_bad.push(format!("m={m} θ={theta}: |h_hat| = {v:.3e}"));
            }
        }
    }
    report.push("decay like 1/θ", decay_bad.is_empty(), decay_bad.join("; "));
    report
}

/// Exact ODE residual check for one order `n`.
pub fn verify_fourier_ode(n: usize, order: usize) -> Report {
    let mut report = Report::new(format!("fourier ode n={n}"));
    let mut bad = Vec::new();
    for m in 0..=n {
        match fourier_ode_residual(n, m, order) {
            Ok(r) => {
                if let Some(k) = r.iter().position(|c| !c.is_zero()) {
                    bad.push(format!("m={m}: first nonzero at θ^{k}"));
                }
            }
            Err(e) => bad.push(format!("m={m}: {e}")),
        }
    }
    report.push(format!("residual vanishes through order {order}"), bad.is_empty(), bad.join("; "));
    report
}

/// `|ĥ^n_m(θ)|` as an `f64`; convenient for sampling.
pub fn h_hat_modulus(n: usize, m: usize, theta: f64, tol: f64) -> Result<f64> {
    h_hat(n, m, theta, tol).map(|v| v.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn haar_value() {
        let v = h_hat(0, 0, PI, 1e-17).unwrap();
        assert!((v - Complex64::new(0.0, -4.0 / PI)).norm() < 1e-14, "{v}");
        let o = h_hat_oracle(0, 0, PI);
        assert!((o - Complex64::new(0.0, -4.0 / PI)).norm() < 1e-14, "{o}");
        let p = psi_hat(0, 0, 2.0 * PI, 1e-17).unwrap();
        assert!((p - Complex64::new(0.0, 2.0 / PI)).norm() < 1e-14, "{p}");
    }

    #[test]
    fn zero_at_origin() {
        for n in 0..5 {
            for m in 0..=n {
                assert_eq!(h_hat(n, m, 0.0, 1e-16).unwrap(), Complex64::zero());
                assert_eq!(psi_hat(n, m, 0.0, 1e-16).unwrap(), Complex64::zero());
            }
        }
    }

    #[test]
    fn n1_leading_term() {
        let form = fourier_series_form(1, 0).unwrap();
        assert_eq!(form.power, 3);
        assert_eq!(form.prefactor, ExactScalar::ratio(-1, 30));
        // ∫ t³ h¹₀ / 3! = -1/30 as well
        let c = moment_coefficients(1, 0, 4);
        assert_eq!(c[3], SurdSum::ratio(-1, 30));
    }

    #[test]
    fn even_members_are_real() {
        let v = h_hat_oracle(1, 1, 2.5);
        assert!(v.im.abs() < 1e-15);
        assert!(v.re.abs() > 1e-3);
    }

    #[test]
    fn moment_product_formula() {
        for (n, j, r) in [(3, 1, 0), (3, 1, 1), (5, 3, 2)] {
            let closed = SurdSum::from(even_moment_closed(n, j, r).unwrap());
            assert_eq!(closed, even_moment_direct(n, j, r), "({n},{j},{r})");
        }
    }

    #[test]
    fn ode_small() {
        for (n, m) in [(1, 0), (5, 2), (3, 3), (4, 2), (2, 0)] {
            let r = fourier_ode_residual(n, m, 40).unwrap();
            assert!(r.iter().all(SurdSum::is_zero), "({n},{m})");
        }
    }

    #[test]
    fn closed_form_matches_oracle() {
        for n in 0..5 {
            let r = verify_fourier(n, &[0.5, 1.0, PI, 10.0], 1e-10);
            assert!(r.all_passed(), "{r}");
        }
    }
}
