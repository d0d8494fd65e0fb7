//! The wavelets are pinned down, up to sign, by their defining linear
//! conditions. This solves those conditions by rational Gaussian
//! elimination and compares with the closed-form coefficients.

use alpert::wavelets::{parity, right_piece};
use alpert::SurdSum;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&k| !m[k][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for k in 0..m.len() {
            if k != row && !m[k][col].is_zero() {
                let f = m[k][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[k].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Nullspace basis of `m`.
fn nullspace(mut m: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let pivots = rref(&mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// Conditions on the `[0, 1)` piece `q(t) = Σ c_k t^k` of `h^n_m`:
/// vanishing full moments (which only constrain the one-sided moments of
/// the parity that does not cancel), vanishing one-sided moments below `m`,
/// and orthogonality to the members with larger subscript of the same
/// parity (the other parity is orthogonal by symmetry).
fn conditions(n: usize, m: usize, higher: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let sign = parity(m);
    let moment_row = |s: usize| (0..=n).map(|k| r(1, (k + s + 1) as i64)).collect::<Vec<_>>();
    let mut rows: Vec<Vec<BigRational>> = (0..=n)
        .filter(|&s| {
            let even = s % 2 == 0;
            // h(-t) = sign h(t): the full moment is (1 + sign (-1)^s) times the one-sided one
            let survives = if even { sign == 1 } else { sign == -1 };
            survives || s < m
        })
        .map(moment_row)
        .collect();
    for v in higher {
        rows.push(
            (0..=n)
                .map(|k| {
                    v.iter()
                        .enumerate()
                        .fold(BigRational::zero(), |acc, (l, c)| acc + c * r(1, (k + l + 1) as i64))
                })
                .collect(),
        );
    }
    rows
}

/// Solution vectors for `m = n, n-1, …, 0`, each unique up to scale.
fn oracle_family(n: usize) -> Vec<Vec<BigRational>> {
    let mut found: Vec<Option<Vec<BigRational>>> = vec![None; n + 1];
    for m in (0..=n).rev() {
        let higher: Vec<_> = ((m + 2)..=n).step_by(2).map(|k| found[k].clone().unwrap()).collect();
        let basis = nullspace(conditions(n, m, &higher), n + 1);
        assert_eq!(basis.len(), 1, "n={n} m={m}: solution space has dimension {}", basis.len());
        found[m] = basis.into_iter().next();
    }
    found.into_iter().map(Option::unwrap).collect()
}

fn integrate_square(c: &[SurdSum]) -> SurdSum {
    let mut total = SurdSum::zero();
    for (a, ca) in c.iter().enumerate() {
        for (b, cb) in c.iter().enumerate() {
            total = &total + &(ca * cb).scale(&r(1, (a + b + 1) as i64));
        }
    }
    total
}

#[test]
fn closed_form_spans_the_solution_space() {
    for n in 0..=8 {
        let family = oracle_family(n);
        for (m, v) in family.iter().enumerate() {
            let q = right_piece(n, m);
            let c: Vec<SurdSum> = (0..=n).map(|k| q.coeff(k)).collect();
            let k0 = v.iter().position(|x| !x.is_zero()).unwrap();
            let lambda = c[k0].scale(&v[k0].recip());
            for k in 0..=n {
                assert_eq!(c[k], lambda.scale(&v[k]), "n={n} m={m} k={k}");
            }
            assert_eq!(integrate_square(&c), SurdSum::one(), "n={n} m={m}");
        }
    }
}

#[test]
fn haar_wavelet_right_piece() {
    let q = right_piece(0, 0);
    assert_eq!(q.coeff(0), SurdSum::one());
    assert_eq!(parity(0), -1);
}
