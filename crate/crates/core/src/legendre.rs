//! Orthonormal Legendre polynomials, the scaling functions `φ_j`, and the
//! two-scale refinement matrices `C_{±1}`.

use num_rational::BigRational;

use crate::hypergeom::{factorial, pochhammer};
use crate::matrix::ExactMatrix;
use crate::poly::{int, one, rat, zero, Poly};
use crate::scalar::{ExactScalar, SurdSum};

/// `p̂_j`, orthonormal on `[-1, 1]` with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthonormalLegendre {
    pub degree: usize,
    pub poly: Poly,
}

impl OrthonormalLegendre {
    pub fn coeffs(&self) -> &[SurdSum] {
        self.poly.coeffs()
    }

    /// `k_j`, the leading coefficient.
    pub fn leading(&self) -> SurdSum {
        self.poly.coeff(self.degree)
    }
}

/// `p̂_j(t) = √(2j+1)/√2 · 2F1(-j, j+1; 1; (1-t)/2)`, expanded in monomials.
pub fn legendre_orthonormal(j: usize) -> OrthonormalLegendre {
    let norm = SurdSum::from(ExactScalar::sqrt_ratio(2 * j as i64 + 1, 2));
    let half_one_minus_t = Poly::from_rationals(&[rat(1, 2), rat(-1, 2)]);
    let minus_j = int(-(j as i64));
    let j1 = int(j as i64 + 1);
    let mut power = Poly::constant(SurdSum::one());
    let mut sum = Poly::zero();
    for k in 0..=j {
        let kf = BigRational::from_integer(factorial(k as u64));
        let c = pochhammer(&minus_j, k) * pochhammer(&j1, k) / (&kf * &kf);
        sum = &sum + &power.scale_rational(&c);
        power = &power * &half_one_minus_t;
    }
    OrthonormalLegendre {
        degree: j,
        poly: sum.scale(&norm),
    }
}

/// `P_n = [p̂_0 … p̂_n]`.
pub fn legendre_vector(n: usize) -> Vec<OrthonormalLegendre> {
    (0..=n).map(legendre_orthonormal).collect()
}

/// `p̂_j(2t-1)` as a polynomial in `t`; the shape of `φ_j` on `[0, 1)`.
pub fn scaling_poly(j: usize) -> Poly {
    legendre_orthonormal(j).poly.compose_affine(&int(2), &int(-1))
}

/// `φ_j(t) = p̂_j(2t-1)·χ_[0,1)(t)`.
pub fn scaling_eval(j: usize, t: f64) -> f64 {
    if !(0.0..1.0).contains(&t) {
        return 0.0;
    }
    scaling_poly(j).eval_f64(t)
}

/// Exact `φ_j(t)` at a rational point.
pub fn scaling_eval_exact(j: usize, t: &BigRational) -> SurdSum {
    if t < &zero() || t >= &one() {
        return SurdSum::zero();
    }
    scaling_poly(j).eval(t)
}

/// The pair `C^n_{-1}, C^n_1` of the refinement equation
/// `P_n(t) = C_{-1} P_n(2t+1)` on `[-1,0)` and `C_1 P_n(2t-1)` on `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementPair {
    pub n: usize,
    pub c_minus1: ExactMatrix,
    pub c_plus1: ExactMatrix,
}

/// `(C_1)_{jk} = 2∫_0^1 p̂_j(t) p̂_k(2t-1) dt`,
/// `(C_{-1})_{jk} = 2∫_{-1}^0 p̂_j(t) p̂_k(2t+1) dt`, by exact integration.
pub fn refinement_matrices(n: usize) -> RefinementPair {
    let p = legendre_vector(n);
    let right: Vec<Poly> = p.iter().map(|q| q.poly.compose_affine(&int(2), &int(-1))).collect();
    let left: Vec<Poly> = p.iter().map(|q| q.poly.compose_affine(&int(2), &int(1))).collect();
    let two = int(2);
    let c_plus1 = ExactMatrix::from_fn(n + 1, n + 1, |j, k| {
        (&p[j].poly * &right[k]).integrate(&zero(), &one()).scale(&two)
    });
    let c_minus1 = ExactMatrix::from_fn(n + 1, n + 1, |j, k| {
        (&p[j].poly * &left[k]).integrate(&int(-1), &zero()).scale(&two)
    });
    RefinementPair {
        n,
        c_minus1,
        c_plus1,
    }
}

impl RefinementPair {
    /// `2I - C_{-1}C_{-1}ᵀ - C_1C_1ᵀ`, zero for a valid pair.
    pub fn orthogonality_defect(&self) -> ExactMatrix {
        let two_i = ExactMatrix::identity(self.n + 1).scale_rational(&int(2));
        let a = &self.c_minus1 * &self.c_minus1.transpose();
        let b = &self.c_plus1 * &self.c_plus1.transpose();
        &(&two_i - &a) - &b
    }

    /// Residual of the refinement equation at a rational `t ∈ [-1, 1)`, row by row.
    pub fn refinement_residual(&self, t: &BigRational) -> Vec<SurdSum> {
        let p = legendre_vector(self.n);
        let (c, arg) = if t < &zero() {
            (&self.c_minus1, int(2) * t + int(1))
        } else {
            (&self.c_plus1, int(2) * t - int(1))
        };
        (0..=self.n)
            .map(|j| {
                let lhs = p[j].poly.eval(t);
                let rhs: SurdSum = (0..=self.n).map(|k| c.get(j, k) * &p[k].poly.eval(&arg)).sum();
                lhs - rhs
            })
            .collect()
    }
}
