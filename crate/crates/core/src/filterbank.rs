//! The wavelet filter matrices `D^n_{±1}`.
//!
//! Matrices use plain `(row, col)` indices. The closed forms are naturally
//! written in the reflected labels `(i, j)` with `row = n - i`,
//! `col = n - j`; [`to_matrix_index`] and [`to_reflected_index`] convert
//! between the two and every `*_entry_*` function takes reflected labels.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{
    double_factorial, eval_pfq_terminating, factorial, pochhammer, whipple_transform,
    HypergeomParams, WhippleChoice,
};
use crate::legendre::{legendre_orthonormal, refinement_matrices, RefinementPair};
use crate::matrix::ExactMatrix;
use crate::poly::{int, one, rat, zero};
use crate::report::Report;
use crate::scalar::{ExactScalar, SurdSum};
use crate::wavelets::{right_piece, wavelet_polynomial};

/// How the entries of `D^n_1` are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Balanced `4F3` closed form.
    Closed,
    /// Whipple-transformed `4F3` with denominators `(1, 1/2, 3/2)` or `(2, 3/2, 3/2)`.
    Alternate,
    /// Three-term recurrence in `i`, seeded from the closed form.
    Recurrence,
    /// `2∫_0^1 h^n_r(t) p̂_c(2t-1) dt`, integrated exactly.
    Integral,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Closed, Method::Alternate, Method::Recurrence, Method::Integral];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Alternate => "alternate",
            Method::Recurrence => "recurrence",
            Method::Integral => "integral",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::Closed),
            "alternate" => Ok(Method::Alternate),
            "recurrence" => Ok(Method::Recurrence),
            "integral" => Ok(Method::Integral),
            _ => Err(Error::Parse(format!("unknown method '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterMatrices {
    pub n: usize,
    pub d_plus1: ExactMatrix,
    pub d_minus1: ExactMatrix,
    pub refinement: RefinementPair,
}

/// `(i, j) -> (n - i, n - j)`.
pub fn to_matrix_index(n: usize, i: usize, j: usize) -> Result<(usize, usize)> {
    if i > n || j > n {
        return Err(Error::Index(format!("({i}, {j}) out of range for n = {n}")));
    }
    Ok((n - i, n - j))
}

/// `(row, col) -> (n - row, n - col)`; the map is an involution.
pub fn to_reflected_index(n: usize, row: usize, col: usize) -> Result<(usize, usize)> {
    to_matrix_index(n, row, col)
}

fn half(p: i64) -> BigRational {
    rat(p, 2)
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(1u8) << e)
}

fn signed(odd: bool) -> BigRational {
    if odd {
        int(-1)
    } else {
        int(1)
    }
}

fn root(m: usize) -> ExactScalar {
    ExactScalar::sqrt(m as u64)
}

fn check_odd(n: usize, i: usize, j: usize) -> Result<()> {
    if i > n {
        return Err(Error::Index(format!("i = {i} exceeds n = {n}")));
    }
    if i % 2 == 0 {
        return Err(Error::Index(format!("i = {i} must be odd")));
    }
    if j >= i {
        return Err(Error::Index(format!("need j < i, got i = {i}, j = {j}")));
    }
    Ok(())
}

fn eval_balanced(params: &HypergeomParams) -> Result<BigRational> {
    if !params.is_balanced() {
        return Err(Error::NotBalanced);
    }
    eval_pfq_terminating(params)
}

/// The `4F3` of the closed form for odd `i`, `j ≤ i`.
pub fn closed_series(n: usize, i: usize, j: usize) -> HypergeomParams {
    let (n, i, j) = (n as i64, i as i64, j as i64);
    HypergeomParams::new(
        vec![
            half(j - i),
            half(j - i + 1),
            half(2 * n - i - j + 1),
            half(2 * n - i - j + 2),
        ],
        vec![half(2 * n - i + 3), half(-i), half(2 * n - 2 * i + 3)],
        one(),
    )
}

/// `(D^n_1)_{n-i, n-j}` from the closed form; `j > i` (below the diagonal) is rejected.
pub fn d1_entry_closed(n: usize, i: usize, j: usize) -> Result<ExactScalar> {
    if i > n {
        return Err(Error::Index(format!("i = {i} exceeds n = {n}")));
    }
    if j > i {
        return Err(Error::Index(format!(
            "j = {j} > i = {i}: entry lies below the diagonal"
        )));
    }
    if i == 0 {
        return Ok(root(2));
    }
    if i % 2 == 0 {
        if j == 0 {
            // the row has degree n - 1 on [0, 1)
            return Ok(ExactScalar::zero());
        }
        return d1_entry_closed(n - 1, i - 1, j - 1);
    }
    let f = eval_balanced(&closed_series(n, i, j))?;
    let (ni, nj) = (n as i64, j as i64);
    let c = pow2((i - 1) / 2)
        * BigRational::from_integer(double_factorial(i as i64))
        * pochhammer(&half(2 * (n - i) as i64 + 3), (i - 1) / 2)
        * pochhammer(&int(nj - ni), n - i)
        * pochhammer(&int(ni - nj + 1), n - i)
        / BigRational::from_integer(factorial((2 * n - i + 1) as u64));
    let value = c * signed((n + j) % 2 == 1) * f;
    Ok(&(&ExactScalar::rational(value) * &root(2)) * &(&root(2 * (n - i) + 1) * &root(2 * (n - j) + 1)))
}

/// The `4F3` of the alternate form: `j` even gives denominators
/// `(1, 1/2, 3/2)`, `j` odd gives `(2, 3/2, 3/2)`.
pub fn alternate_series(n: usize, i: usize, j: usize) -> HypergeomParams {
    let (n, i, j) = (n as i64, i as i64, j as i64);
    if j % 2 == 0 {
        HypergeomParams::new(
            vec![half(-j), half(j - i + 1), half(2 * n + 3 - j), half(i + j - 2 * n)],
            vec![int(1), half(1), half(3)],
            one(),
        )
    } else {
        HypergeomParams::new(
            vec![half(1 - j), half(j - i + 2), half(2 * n - j + 4), half(i + j + 1 - 2 * n)],
            vec![int(2), half(3), half(3)],
            one(),
        )
    }
}

/// `(D^n_1)_{n-i, n-j}` for odd `i` and `j < i` from the alternate form.
pub fn d1_entry_alt(n: usize, i: usize, j: usize) -> Result<ExactScalar> {
    check_odd(n, i, j)?;
    let f = eval_balanced(&alternate_series(n, i, j))?;
    let (ni, ii, jj) = (n as i64, i as i64, j as i64);
    // 1/2^{i/2} = √2 / 2^{(i+1)/2} and 1/2^{(i+2)/2} = √2 / 2^{(i+3)/2}
    let value = if j % 2 == 0 {
        signed(((i - j + 1) / 2) % 2 == 1)
            * BigRational::from_integer(double_factorial(jj + 1) * double_factorial(ii - jj - 2))
            / (pow2((i + 1) / 2) * pochhammer(&half(2 * ni - ii - jj + 1), (i + 1) / 2))
    } else {
        signed(((i - j) / 2 + 1) % 2 == 1)
            * BigRational::from_integer(double_factorial(jj) * double_factorial(ii - jj - 1))
            * int((2 * ni - jj + 2) * (jj + 1))
            / (pow2((i + 3) / 2) * pochhammer(&half(2 * ni - ii - jj + 2), (i + 1) / 2))
    } * f;
    Ok(&(&ExactScalar::rational(value) * &root(2)) * &(&root(2 * (n - i) + 1) * &root(2 * (n - j) + 1)))
}

/// The parameters `a … g`, `h`, `l` from which the recurrence
/// coefficients are formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceBlock {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
    pub e: BigRational,
    pub f: BigRational,
    pub g: BigRational,
    pub h: ExactScalar,
    pub l: ExactScalar,
}

impl RecurrenceBlock {
    /// `(k¹, k²)`.
    pub fn coefficients(&self) -> Result<(ExactScalar, ExactScalar)> {
        let RecurrenceBlock { a, b, c, d, e, f, g, h, l } = self;
        let o = BigRational::one();
        let amb1 = a - b - &o;
        let below = a * (e - b) * (f - b) * (g - b);
        if amb1.is_zero() || below.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let up = b * (e - a) * (f - a) * (g - a) / &amb1;
        let k1 = ((c * d * (a - b) - &up) * (&o + a - b) / &below) - &o;
        let k2 = up * (&o + a - b) / below;
        Ok((h * &ExactScalar::rational(k1), l * &ExactScalar::rational(k2)))
    }
}

fn check_in_i(n: usize, i: usize, j: usize) -> Result<()> {
    check_odd(n, i, j)?;
    if j + 2 >= i {
        return Err(Error::Index(format!("recurrence in i needs j < i - 2, got i = {i}, j = {j}")));
    }
    if i + 2 > n {
        return Err(Error::Index(format!("recurrence in i needs i + 2 ≤ n, got i = {i}, n = {n}")));
    }
    Ok(())
}

/// The parameter block of the recurrence in `i` built for even `j`.
pub fn block_in_i_even(n: usize, i: usize, j: usize) -> Result<RecurrenceBlock> {
    check_in_i(n, i, j)?;
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let s = |a: i64, b: i64| ExactScalar::sqrt_ratio(2 * (n - i) + a, 2 * (n - i) + b);
    Ok(RecurrenceBlock {
        a: half(j - i + 1),
        b: half(i + j - 2 * n),
        c: half(-j),
        d: half(2 * n + 3 - j),
        e: int(1),
        f: half(1),
        g: half(3),
        h: &s(5, 1) * &ExactScalar::rational(rat(-2 * n + i + j - 1, i - j - 2)),
        l: &s(5, -3)
            * &ExactScalar::rational(rat((2 * n - i - j - 1) * (2 * n - i - j + 1), (i - j) * (i - j - 2))),
    })
}

/// The parameter block of the recurrence in `i` built for odd `j`.
pub fn block_in_i_odd(n: usize, i: usize, j: usize) -> Result<RecurrenceBlock> {
    check_in_i(n, i, j)?;
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let s = |a: i64, b: i64| ExactScalar::sqrt_ratio(2 * (n - i) + a, 2 * (n - i) + b);
    Ok(RecurrenceBlock {
        a: half(j - i + 2),
        b: half(i + j + 1 - 2 * n),
        c: half(1 - j),
        d: half(2 * n + 4 - j),
        e: int(2),
        f: half(3),
        g: half(3),
        h: &s(5, 1) * &ExactScalar::rational(rat(-2 * n + i + j - 2, i - j - 1)),
        l: &s(5, -3)
            * &ExactScalar::rational(rat((2 * n - i - j) * (2 * n - i - j + 2), (i - j + 1) * (i - j - 1))),
    })
}

/// `(k¹, k²)` of the recurrence in `i`. For odd `j` both parameter blocks
/// are evaluated and must agree.
pub fn coefficients_in_i(n: usize, i: usize, j: usize) -> Result<(ExactScalar, ExactScalar)> {
    let even = block_in_i_even(n, i, j)?.coefficients()?;
    if j % 2 == 1 {
        let odd = block_in_i_odd(n, i, j)?.coefficients()?;
        if odd != even {
            return Err(Error::Mismatch(format!(
                "recurrence coefficients at (n, i, j) = ({n}, {i}, {j}) differ between parameter blocks"
            )));
        }
    }
    Ok(even)
}

fn combine(k1: &ExactScalar, x: &ExactScalar, k2: &ExactScalar, y: &ExactScalar) -> Result<ExactScalar> {
    (k1 * x).checked_add(&(k2 * y)).map(|s| -s)
}

/// Given `(D^n_1)_{n-i, n-j}` and `(D^n_1)_{n-i-2, n-j}` as `lower_two`,
/// returns `(D^n_1)_{n-i+2, n-j}`.
pub fn recurrence_in_i(
    n: usize,
    i: usize,
    j: usize,
    lower_two: (&ExactScalar, &ExactScalar),
) -> Result<ExactScalar> {
    let (k1, k2) = coefficients_in_i(n, i, j)?;
    combine(&k1, lower_two.0, &k2, lower_two.1)
}

/// The same relation solved for the entry at `i + 2` from those at `i - 2`
/// and `i`.
pub fn recurrence_in_i_upward(
    n: usize,
    i: usize,
    j: usize,
    below: (&ExactScalar, &ExactScalar),
) -> Result<ExactScalar> {
    let (k1, k2) = coefficients_in_i(n, i, j)?;
    let (prev, cur) = below;
    let s = prev.checked_add(&(&k1 * cur))?;
    Ok(-(&s * &k2.recip()?))
}

fn check_in_n(n: usize, i: usize, j: usize) -> Result<()> {
    check_odd(n, i, j)?;
    if i >= n {
        return Err(Error::Index(format!("recurrence in n needs i < n, got i = {i}, n = {n}")));
    }
    Ok(())
}

/// The parameter block of the recurrence in `n`.
pub fn block_in_n(n: usize, i: usize, j: usize) -> Result<RecurrenceBlock> {
    check_in_n(n, i, j)?;
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let s = |a: i64, b: i64| {
        &ExactScalar::sqrt_ratio(2 * (n - i) + a, 2 * (n - i) + b)
            * &ExactScalar::sqrt_ratio(2 * (n - j) + a, 2 * (n - j) + b)
    };
    Ok(RecurrenceBlock {
        a: half(2 * n + 3 - j),
        b: half(i + j - 2 * n),
        c: half(-j),
        d: half(j - i + 1),
        e: int(1),
        f: half(1),
        g: half(3),
        h: &s(3, 1) * &ExactScalar::rational(rat(2 * n - i - j + 1, 2 * n - j + 2)),
        l: &s(3, -1)
            * &ExactScalar::rational(rat(
                (2 * n - i - j - 1) * (2 * n - i - j + 1),
                (2 * n - j) * (2 * n - j + 2),
            )),
    })
}

/// Given `(D^n_1)_{n-i, n-j}` and `(D^{n-1}_1)_{n-i-1, n-j-1}` as
/// `lower_two`, returns `(D^{n+1}_1)_{n-i+1, n-j+1}`.
pub fn recurrence_in_n(
    n: usize,
    i: usize,
    j: usize,
    lower_two: (&ExactScalar, &ExactScalar),
) -> Result<ExactScalar> {
    let (k1, k2) = block_in_n(n, i, j)?.coefficients()?;
    combine(&k1, lower_two.0, &k2, lower_two.1)
}

/// `(D^m_1)_{m-i, m-j}` for `m = i ..= n_max`, seeded from the closed form
/// at `m = i, i + 1` and continued by the recurrence in `n`.
pub fn column_by_recurrence_in_n(i: usize, j: usize, n_max: usize) -> Result<Vec<ExactScalar>> {
    check_odd(n_max, i, j)?;
    let mut out = vec![d1_entry_closed(i, i, j)?];
    if n_max > i {
        out.push(d1_entry_closed(i + 1, i, j)?);
    }
    for m in i + 1..n_max {
        let k = m - i;
        let next = recurrence_in_n(m, i, j, (&out[k], &out[k - 1]))?;
        out.push(next);
    }
    Ok(out)
}

/// `table[i][j] = (D^n_1)_{n-i, n-j}` with zeros for `j > i`.
type Table = Vec<Vec<ExactScalar>>;

fn recurrence_table(n: usize, prev: Option<&Table>) -> Result<Table> {
    let mut t = vec![vec![ExactScalar::zero(); n + 1]; n + 1];
    t[0][0] = root(2);
    for i in (2..=n).step_by(2) {
        let prev = prev.expect("previous table for n > 0");
        for j in 1..=i {
            t[i][j] = prev[i - 1][j - 1].clone();
        }
    }
    for j in 0..=n {
        let rows: Vec<usize> = (j + 1..=n).filter(|i| i % 2 == 1).collect();
        for (k, &i) in rows.iter().enumerate() {
            t[i][j] = if k < 2 {
                d1_entry_closed(n, i, j)?
            } else {
                recurrence_in_i_upward(n, i - 2, j, (&t[i - 4][j], &t[i - 2][j]))?
            };
        }
        if j % 2 == 1 {
            t[j][j] = d1_entry_closed(n, j, j)?;
        }
    }
    Ok(t)
}

fn recurrence_tables(n: usize) -> Result<Table> {
    let mut t = recurrence_table(0, None)?;
    for m in 1..=n {
        t = recurrence_table(m, Some(&t))?;
    }
    Ok(t)
}

fn alternate_entry(n: usize, i: usize, j: usize) -> Result<ExactScalar> {
    if i > 0 && i % 2 == 0 && j > 0 {
        return alternate_entry(n - 1, i - 1, j - 1);
    }
    if i % 2 == 1 && j < i {
        d1_entry_alt(n, i, j)
    } else {
        d1_entry_closed(n, i, j)
    }
}

/// `2∫_0^1 h^n_r(t) p̂_c(2t-1) dt` for every `(r, c)`.
pub fn integral_matrix(n: usize) -> ExactMatrix {
    let right: Vec<_> = (0..=n).map(|m| right_piece(n, m)).collect();
    let scaling: Vec<_> = (0..=n)
        .map(|c| legendre_orthonormal(c).poly.compose_affine(&int(2), &int(-1)))
        .collect();
    ExactMatrix::from_fn(n + 1, n + 1, |r, c| {
        (&right[r] * &scaling[c]).integrate(&zero(), &one()).scale(&int(2))
    })
}

/// `2∫_{-1}^0 h^n_r(t) p̂_c(2t+1) dt`, the direct definition of `D^n_{-1}`.
pub fn integral_matrix_minus1(n: usize) -> ExactMatrix {
    let left: Vec<_> = (0..=n).map(|m| wavelet_polynomial(n, m).piece(0).clone()).collect();
    let scaling: Vec<_> = (0..=n)
        .map(|c| legendre_orthonormal(c).poly.compose_affine(&int(2), &int(1)))
        .collect();
    ExactMatrix::from_fn(n + 1, n + 1, |r, c| {
        (&left[r] * &scaling[c]).integrate(&int(-1), &zero()).scale(&int(2))
    })
}

/// `(D_{-1})_{rc} = (-1)^{r+c+1} (D_1)_{rc}`.
pub fn reflect(d_plus1: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(d_plus1.rows(), d_plus1.cols(), |r, c| {
        let v = d_plus1.get(r, c);
        if (r + c) % 2 == 0 {
            -v
        } else {
            v.clone()
        }
    })
}

/// `D^n_1` by the chosen method, with `D^n_{-1}` from the reflection symmetry.
pub fn d1_matrix(n: usize, method: Method) -> Result<FilterMatrices> {
    let from_table = |entry: &dyn Fn(usize, usize) -> Result<ExactScalar>| {
        ExactMatrix::try_from_fn(n + 1, n + 1, |r, c| {
            if c < r {
                Ok(SurdSum::zero())
            } else {
                entry(n - r, n - c).map(SurdSum::from)
            }
        })
    };
    let d_plus1 = match method {
        Method::Closed => from_table(&|i, j| d1_entry_closed(n, i, j))?,
        Method::Alternate => from_table(&|i, j| alternate_entry(n, i, j))?,
        Method::Recurrence => {
            let t = recurrence_tables(n)?;
            from_table(&|i, j| Ok(t[i][j].clone()))?
        }
        Method::Integral => integral_matrix(n),
    };
    Ok(FilterMatrices {
        n,
        d_minus1: reflect(&d_plus1),
        d_plus1,
        refinement: refinement_matrices(n),
    })
}

fn mismatches(a: &ExactMatrix, b: &ExactMatrix) -> Vec<(usize, usize)> {
    a.nonzero_positions()
        .into_iter()
        .chain(b.nonzero_positions())
        .filter(|&(r, c)| a.get(r, c) != b.get(r, c))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn describe(bad: &[(usize, usize)]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        let shown: Vec<String> = bad.iter().take(4).map(|(r, c)| format!("({r},{c})")).collect();
        format!("{} entries differ, e.g. {}", bad.len(), shown.join(" "))
    }
}

impl FilterMatrices {
    /// `4I - D_{-1}D_{-1}ᵀ - D_1D_1ᵀ`.
    pub fn orthogonality_defect(&self) -> ExactMatrix {
        let four = ExactMatrix::identity(self.n + 1).scale_rational(&int(4));
        let a = &self.d_minus1 * &self.d_minus1.transpose();
        let b = &self.d_plus1 * &self.d_plus1.transpose();
        &(&four - &a) - &b
    }

    /// `C_{-1}D_{-1}ᵀ + C_1D_1ᵀ`.
    pub fn cross_defect(&self) -> ExactMatrix {
        let a = &self.refinement.c_minus1 * &self.d_minus1.transpose();
        let b = &self.refinement.c_plus1 * &self.d_plus1.transpose();
        &a + &b
    }

    /// Rows of `C_1` where `from_c(row)` holds, rows of `D_1/√2` elsewhere.
    pub fn interleaved(&self, from_c: impl Fn(usize) -> bool) -> ExactMatrix {
        let d = self.d_plus1.scale(&ExactScalar::sqrt_ratio(1, 2).into());
        self.refinement.c_plus1.interleave_rows(&d, from_c)
    }
}

/// Exact checks of every identity the filter bank satisfies.
pub fn validate_filterbank(n: usize) -> Report {
    let mut report = Report::new(format!("filterbank n={n}"));
    let fm = match d1_matrix(n, Method::Closed) {
        Ok(fm) => fm,
        Err(e) => {
            report.push("closed-form matrix", false, e.to_string());
            return report;
        }
    };
    let d = &fm.d_plus1;
    let size = n + 1;

    report.push("D_1 upper triangular", d.is_upper_triangular(), "");
    let bad_diag: Vec<usize> = (0..size).filter(|&r| d.get(r, r).signum() <= 0).collect();
    report.push(
        "D_1 diagonal positive",
        bad_diag.is_empty(),
        if bad_diag.is_empty() { String::new() } else { format!("rows {bad_diag:?}") },
    );
    report.push(
        "(D_1)_{n,n} = sqrt(2)",
        d.get(n, n) == &SurdSum::sqrt(2),
        format!("got {}", d.get(n, n)),
    );

    let defect = fm.orthogonality_defect();
    report.push("4I = D_-1 D_-1^T + D_1 D_1^T", defect.is_zero(), describe(&defect.nonzero_positions()));

    let direct = integral_matrix_minus1(n);
    report.push("D_-1 reflection symmetry", direct == fm.d_minus1, describe(&mismatches(&direct, &fm.d_minus1)));

    let mut bad = Vec::new();
    for i in 0..size {
        for k in 0..i {
            if (i + k) % 2 == 0 {
                let s: SurdSum = (i..size).map(|j| d.get(i, j) * d.get(k, j)).sum();
                if !s.is_zero() {
                    bad.push((i, k));
                }
            }
        }
    }
    report.push("row orthogonality for i + k even", bad.is_empty(), describe(&bad));

    let bad: Vec<usize> = (0..size)
        .filter(|&i| (i..size).map(|j| d.get(i, j) * d.get(i, j)).sum::<SurdSum>() != SurdSum::integer(2))
        .collect();
    report.push(
        "row sums of squares = 2",
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("rows {bad:?}") },
    );

    let c_defect = fm.refinement.orthogonality_defect();
    report.push("2I = C_-1 C_-1^T + C_1 C_1^T", c_defect.is_zero(), describe(&c_defect.nonzero_positions()));

    let cross = fm.cross_defect();
    report.push("C_-1 D_-1^T + C_1 D_1^T = 0", cross.is_zero(), describe(&cross.nonzero_positions()));

    let identity = ExactMatrix::identity(size);
    for (name, from_c) in [("even", 0usize), ("odd", 1usize)] {
        let a = fm.interleaved(|r| r % 2 == from_c);
        let g = &a * &a.transpose();
        report.push(
            format!("interleaved A ({name} rows of C_1) orthogonal"),
            g == identity,
            describe(&mismatches(&g, &identity)),
        );
    }

    let mut bad = Vec::new();
    let right: Vec<_> = (0..size)
        .map(|c| legendre_orthonormal(c).poly.compose_affine(&int(2), &int(-1)))
        .collect();
    let left: Vec<_> = (0..size)
        .map(|c| legendre_orthonormal(c).poly.compose_affine(&int(2), &int(1)))
        .collect();
    for r in 0..size {
        let h = wavelet_polynomial(n, r);
        let mut rhs_right = crate::poly::Poly::zero();
        let mut rhs_left = crate::poly::Poly::zero();
        for c in 0..size {
            rhs_right = &rhs_right + &right[c].scale(d.get(r, c));
            rhs_left = &rhs_left + &left[c].scale(fm.d_minus1.get(r, c));
        }
        if &rhs_right != h.piece(1) || &rhs_left != h.piece(0) {
            bad.push(r);
        }
    }
    report.push(
        "wavelet refinement equation",
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("rows {bad:?}") },
    );
    report
}

/// Entrywise agreement of the four constructions of `D^n_1`.
pub fn method_agreement(n: usize) -> Report {
    let mut report = Report::new(format!("D_1 methods n={n}"));
    let reference = integral_matrix(n);
    for method in [Method::Closed, Method::Alternate, Method::Recurrence] {
        match d1_matrix(n, method) {
            Ok(fm) => {
                let bad = mismatches(&fm.d_plus1, &reference);
                report.push(format!("{} = integral", method.name()), bad.is_empty(), describe(&bad));
            }
            Err(e) => report.push(format!("{} = integral", method.name()), false, e.to_string()),
        }
    }
    report
}

/// One step of the recurrence in `n` from closed-form entries of
/// `D^{n-1}_1, D^{n-2}_1`, plus the full chain seeded at the two smallest
/// orders, both compared with the closed form of `D^n_1`.
pub fn recurrence_in_n_agreement(n: usize) -> Report {
    let mut report = Report::new(format!("recurrence in n, n={n}"));
    let mut bad = Vec::new();
    let mut errors = Vec::new();
    for i in (1..n.saturating_sub(1)).step_by(2) {
        for j in 0..i {
            let step = d1_entry_closed(n - 1, i, j)
                .and_then(|a| Ok((a, d1_entry_closed(n - 2, i, j)?)))
                .and_then(|(a, b)| recurrence_in_n(n - 1, i, j, (&a, &b)));
            let chain = column_by_recurrence_in_n(i, j, n).map(|v| v[n - i].clone());
            match (step, chain, d1_entry_closed(n, i, j)) {
                (Ok(s), Ok(c), Ok(x)) => {
                    if s != x || c != x {
                        bad.push((i, j));
                    }
                }
                (s, c, x) => {
                    let e = s.err().or(c.err()).or(x.err()).expect("one side failed");
                    errors.push(format!("({i},{j}): {e}"));
                }
            }
        }
    }
    let detail = if errors.is_empty() { describe(&bad) } else { errors.join("; ") };
    report.push("recurrence in n = closed form", bad.is_empty() && errors.is_empty(), detail);
    report
}

/// Whipple's transformation applied to every closed-form series of
/// `D^n_1` must preserve its value; for even `j` the second step reaching
/// the alternate form is checked as well.
pub fn whipple_agreement(n: usize) -> Report {
    let mut report = Report::new(format!("whipple n={n}"));
    let mut failures = Vec::new();
    let mut count = 0usize;
    for i in (1..=n).step_by(2) {
        for j in 0..i {
            count += 1;
            let check = || -> Result<bool> {
                let p = closed_series(n, i, j);
                let value = eval_balanced(&p)?;
                let terminating = if j % 2 == 0 { 1 } else { 0 };
                let w = whipple_transform(&p, WhippleChoice { terminating, z: 3, u: 1 })?;
                let mut ok = w.params.is_balanced() && &w.prefactor * eval_balanced(&w.params)? == value;
                if j % 2 == 0 && j > 0 {
                    let w2 = whipple_transform(&w.params, WhippleChoice { terminating: 1, z: 0, u: 2 })?;
                    ok &= &w.prefactor * &w2.prefactor * eval_balanced(&w2.params)? == value;
                }
                Ok(ok)
            };
            match check() {
                Ok(true) => {}
                Ok(false) => failures.push(format!("({i},{j})")),
                Err(e) => failures.push(format!("({i},{j}): {e}")),
            }
        }
    }
    report.push(
        format!("value preserved on {count} instances"),
        failures.is_empty(),
        failures.join("; "),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_case() {
        let fm = d1_matrix(0, Method::Closed).unwrap();
        assert_eq!(fm.d_plus1.get(0, 0), &SurdSum::sqrt(2));
        assert_eq!(fm.d_minus1.get(0, 0), &-SurdSum::sqrt(2));
        assert!(fm.orthogonality_defect().is_zero());
    }

    #[test]
    fn n1_entries() {
        assert_eq!(d1_entry_closed(1, 1, 1).unwrap(), ExactScalar::sqrt_ratio(1, 2));
        assert_eq!(d1_entry_closed(1, 1, 0).unwrap(), -ExactScalar::sqrt_ratio(3, 2));
        assert_eq!(d1_entry_closed(1, 0, 0).unwrap(), ExactScalar::sqrt(2));
        assert!(d1_entry_closed(1, 0, 1).is_err());
        let fm = d1_matrix(1, Method::Integral).unwrap();
        assert_eq!(fm.d_plus1.row(0), &[SurdSum::from(ExactScalar::sqrt_ratio(1, 2)), -SurdSum::from(ExactScalar::sqrt_ratio(3, 2))]);
        assert_eq!(fm.d_plus1.row(1), &[SurdSum::zero(), SurdSum::sqrt(2)]);
    }

    #[test]
    fn diagonal_is_sqrt2_at_top() {
        for n in 0..8 {
            assert_eq!(d1_entry_closed(n, 0, 0).unwrap(), ExactScalar::sqrt(2));
        }
    }

    #[test]
    fn alternate_matches_closed() {
        for (n, i, j) in [(5, 3, 0), (5, 3, 2), (3, 1, 0), (5, 3, 1), (7, 5, 3)] {
            assert_eq!(d1_entry_alt(n, i, j).unwrap(), d1_entry_closed(n, i, j).unwrap(), "({n},{i},{j})");
        }
        assert!(d1_entry_alt(5, 2, 0).is_err());
        assert!(d1_entry_alt(5, 3, 3).is_err());
    }

    #[test]
    fn recurrence_in_i_examples() {
        for j in [0, 1] {
            let mid = d1_entry_closed(7, 5, j).unwrap();
            let low = d1_entry_closed(7, 7, j).unwrap();
            let got = recurrence_in_i(7, 5, j, (&mid, &low)).unwrap();
            assert_eq!(got, d1_entry_closed(7, 3, j).unwrap(), "j = {j}");
        }
        let z = ExactScalar::zero();
        assert!(recurrence_in_i(5, 3, 1, (&z, &z)).is_err());
    }

    #[test]
    fn recurrence_in_n_examples() {
        for (n, i, j) in [(2, 1, 0), (4, 3, 0), (6, 3, 1), (6, 5, 2)] {
            let a = d1_entry_closed(n, i, j).unwrap();
            let b = d1_entry_closed(n - 1, i, j).unwrap();
            let got = recurrence_in_n(n, i, j, (&a, &b)).unwrap();
            assert_eq!(got, d1_entry_closed(n + 1, i, j).unwrap(), "({n},{i},{j})");
        }
        let z = ExactScalar::zero();
        assert!(recurrence_in_n(4, 3, 3, (&z, &z)).is_err());
    }

    #[test]
    fn series_are_balanced() {
        for n in 1..10 {
            for i in (1..=n).step_by(2) {
                for j in 0..=i {
                    assert!(closed_series(n, i, j).is_balanced(), "({n},{i},{j})");
                    if j < i {
                        assert!(alternate_series(n, i, j).is_balanced(), "({n},{i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn index_helpers_round_trip() {
        let (r, c) = to_matrix_index(7, 3, 1).unwrap();
        assert_eq!((r, c), (4, 6));
        assert_eq!(to_reflected_index(7, r, c).unwrap(), (3, 1));
        assert!(to_matrix_index(3, 4, 0).is_err());
    }

    #[test]
    fn small_validation() {
        for n in 0..5 {
            let r = validate_filterbank(n);
            assert!(r.all_passed(), "{r}");
            let r = method_agreement(n);
            assert!(r.all_passed(), "{r}");
            let r = whipple_agreement(n);
            assert!(r.all_passed(), "{r}");
        }
        for n in 3..7 {
            let r = recurrence_in_n_agreement(n);
            assert!(r.all_passed(), "{r}");
        }
    }
}
