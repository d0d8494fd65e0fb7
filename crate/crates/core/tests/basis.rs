//! Synthesizing a unit coefficient must give the basis function the
//! transform claims to use: `2^{k/2} ψ_j(2^k t - i)` for a detail at level
//! `k`, shift `i`, with `ψ_j(t) = h^n_j(2t - 1)`, and `φ_j(t) = √2 p̂_j(2t - 1)`
//! for the coarsest scaling coefficients. Inner products of the synthesized
//! functions are computed by brute force, cell by cell.

use alpert::legendre::legendre_orthonormal;
use alpert::transform::{synthesize, MultiresCoeffs, PiecewisePolySignal};
use alpert::wavelets::wavelet_polynomial;
use alpert::{ExactScalar, Poly, SurdSum};
use num_rational::BigRational;

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn unit(n: usize, levels: usize, slot: usize) -> MultiresCoeffs<SurdSum> {
    let mut c = MultiresCoeffs {
        n,
        levels,
        scaling0: vec![SurdSum::zero(); n + 1],
        detail: (0..levels).map(|k| vec![vec![SurdSum::zero(); n + 1]; 1 << k]).collect(),
    };
    let mut k = slot;
    if k <= n {
        c.scaling0[k] = SurdSum::one();
        return c;
    }
    k -= n + 1;
    for level in c.detail.iter_mut() {
        let size = level.len() * (n + 1);
        if k < size {
            level[k / (n + 1)][k % (n + 1)] = SurdSum::one();
            return c;
        }
        k -= size;
    }
    panic!("slot out of range");
}

/// `2^{k/2}` as an exact value.
fn sqrt_pow2(k: usize) -> SurdSum {
    SurdSum::from(ExactScalar::sqrt_rational(&BigRational::from_integer((1i64 << k).into())).unwrap())
}

/// Exact `∫_0^1 f g` for two signals with the same cells.
fn inner(a: &PiecewisePolySignal<SurdSum>, b: &PiecewisePolySignal<SurdSum>) -> SurdSum {
    let cells = 1i64 << a.levels;
    a.cell_polys()
        .iter()
        .zip(b.cell_polys())
        .enumerate()
        .fold(SurdSum::zero(), |acc, (l, (p, q))| {
            let prod: Poly = p * &q;
            &acc + &prod.integrate(&r(l as i64, cells), &r(l as i64 + 1, cells))
        })
}

fn sample_points(levels: usize) -> Vec<BigRational> {
    let cells = 1i64 << levels;
    (0..cells)
        .flat_map(|l| [r(8 * l + 1, 8 * cells), r(8 * l + 4, 8 * cells), r(8 * l + 7, 8 * cells)])
        .collect()
}

#[test]
fn unit_coefficients_are_the_explicit_basis() {
    for n in 0..=3 {
        for levels in 1..=3 {
            let ts = sample_points(levels);
            let legendre: Vec<Poly> = (0..=n).map(|j| legendre_orthonormal(j).poly).collect();
            let wavelets: Vec<_> = (0..=n).map(|j| wavelet_polynomial(n, j)).collect();
            let total = (n + 1) << levels;
            for slot in 0..total {
                let f = synthesize(&unit(n, levels, slot)).unwrap();
                for t in &ts {
                    let expected = if slot <= n {
                        let x = t * r(2, 1) - r(1, 1);
                        &legendre[slot].eval(&x) * &SurdSum::sqrt(2)
                    } else {
                        let mut k = slot - n - 1;
                        let mut level = 0;
                        while k >= (n + 1) << level {
                            k -= (n + 1) << level;
                            level += 1;
                        }
                        let (shift, j) = (k / (n + 1), k % (n + 1));
                        let local = t * BigRational::from_integer((1i64 << level).into()) - r(shift as i64, 1);
                        if local < r(0, 1) || local >= r(1, 1) {
                            SurdSum::zero()
                        } else {
                            let x = &local * r(2, 1) - r(1, 1);
                            &wavelets[j].eval(&x) * &sqrt_pow2(level)
                        }
                    };
                    assert_eq!(f.eval(t), expected, "n={n} K={levels} slot={slot} t={t}");
                }
            }
        }
    }
}

#[test]
fn synthesized_basis_is_orthonormal() {
    for n in 0..=3 {
        for levels in 1..=3 {
            let total = (n + 1) << levels;
            let basis: Vec<_> = (0..total).map(|s| synthesize(&unit(n, levels, s)).unwrap()).collect();
            for a in 0..total {
                for b in 0..=a {
                    let expected = if a == b { SurdSum::one() } else { SurdSum::zero() };
                    assert_eq!(inner(&basis[a], &basis[b]), expected, "n={n} K={levels} ({a},{b})");
                }
            }
        }
    }
}
