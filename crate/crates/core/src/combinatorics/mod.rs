//! Exact Catalan combinatorics: Catalan numbers, the two Catalan triangles,
//! their row polynomials, the Catalan polynomials and the integer sequences
//! built from them.
//!
//! Everything here is exact (`BigInt` / `BigRational`); the only floating
//! point result is [`asymptotic_ratio`].

mod polynomial;
mod polys;

pub use polynomial::IntPolynomial;
pub use polys::{
    alpha, alpha_sequence, catalan_polynomial, catalan_polynomial_closed_form,
    catalan_polynomial_closed_form_complex, catalan_polynomials, row_polynomial_p,
    row_polynomial_q,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::big_ln;

/// Which of the two Catalan triangles.
///
/// `B` is Shapiro's triangle `B(n,k) = k/n * binom(2n, n-k)`, `1 <= k <= n`;
/// `A` is the companion `A(n,k) = (2k-1)/(2n+1) * binom(2n+1, n+1-k)`,
/// `1 <= k <= n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleKind {
    B,
    A,
}

impl TriangleKind {
    /// First valid row index.
    pub fn first_row(self) -> u64 {
        match self {
            TriangleKind::B => 1,
            TriangleKind::A => 0,
        }
    }

    /// Number of entries in row `n`.
    pub fn row_len(self, n: u64) -> u64 {
        match self {
            TriangleKind::B => n,
            TriangleKind::A => n + 1,
        }
    }

    fn check(self, n: u64, k: u64) -> Result<()> {
        if n < self.first_row() || k < 1 || k > self.row_len(n) {
            return Err(Error::IndexOutOfRange(format!(
                "({n}, {k}) is outside the {self} triangle"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleKind::B => write!(f, "B"),
            TriangleKind::A => write!(f, "A"),
        }
    }
}

impl FromStr for TriangleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(TriangleKind::B),
            "A" | "a" => Ok(TriangleKind::A),
            other => Err(Error::Parse(format!("unknown triangle kind {other:?}"))),
        }
    }
}

/// Binomial coefficient `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    let (q, r) = binomial(2 * n, n).div_rem(&BigInt::from(n + 1));
    debug_assert!(r.is_zero());
    q
}

/// `C_0 ..= C_{n_max}` via the ratio `C_{n+1} = C_n * 2(2n+1)/(n+2)`.
pub fn catalan_numbers(n_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut c = BigInt::one();
    for n in 0..=n_max as u64 {
        out.push(c.clone());
        c = c * (2 * (2 * n + 1)) / (n + 2);
    }
    out
}

/// Single triangle entry from the binomial closed form.
pub fn triangle_entry(kind: TriangleKind, n: u64, k: u64) -> Result<BigInt> {
    kind.check(n, k)?;
    let (num, den) = match kind {
        TriangleKind::B => (BigInt::from(k) * binomial(2 * n, n - k), BigInt::from(n)),
        TriangleKind::A => (
            BigInt::from(2 * k - 1) * binomial(2 * n + 1, n + 1 - k),
            BigInt::from(2 * n + 1),
        ),
    };
    exact_div(num, &den)
}

/// Full row `n` of a triangle, `k = 1, 2, ...`.
pub fn triangle_row(kind: TriangleKind, n: u64) -> Result<Vec<BigInt>> {
    kind.check(n, 1)?;
    let len = kind.row_len(n);
    let mut row = Vec::with_capacity(len as usize);
    match kind {
        TriangleKind::B => {
            // binom(2n, n-k), stepped downwards in the lower index
            let mut b = binomial(2 * n, n - 1);
            for k in 1..=n {
                row.push(exact_div(&b * k, &BigInt::from(n))?);
                if k < n {
                    b = exact_div(b * (n - k), &BigInt::from(n + k + 1))?;
                }
            }
        }
        TriangleKind::A => {
            // binom(2n+1, n+1-k)
            let mut g = binomial(2 * n + 1, n);
            for k in 1..=n + 1 {
                row.push(exact_div(&g * (2 * k - 1), &BigInt::from(2 * n + 1))?);
                if k <= n {
                    g = exact_div(g * (n + 1 - k), &BigInt::from(n + 1 + k))?;
                }
            }
        }
    }
    Ok(row)
}

/// Rows `first_row ..= last_row` concatenated in row-major order.
pub fn triangle_flattened(kind: TriangleKind, last_row: u64) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for n in kind.first_row()..=last_row {
        out.extend(triangle_row(kind, n)?);
    }
    Ok(out)
}

/// Rows `first_row ..= last_row` built only from the three-term recurrence
/// `X(n,k) = X(n-1,k-1) + 2 X(n-1,k) + X(n-1,k+1)`, entries outside the row read as 0.
///
/// For `A` the first column needs `X(n-1,0) = -X(n-1,1)` (the closed form at
/// `k = 0`), i.e. `A(n,1) = A(n-1,1) + A(n-1,2)`.
pub fn triangle_rows_by_recurrence(kind: TriangleKind, last_row: u64) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    let zero = BigInt::zero();
    for _ in kind.first_row()..last_row {
        let prev = rows.last().expect("seeded");
        let at = |k: usize| if k >= 1 { prev.get(k - 1).unwrap_or(&zero) } else { &zero };
        let mut row = Vec::with_capacity(prev.len() + 1);
        for k in 1..=prev.len() + 1 {
            let left = match (kind, k) {
                (TriangleKind::A, 1) => -at(1).clone(),
                _ => at(k - 1).clone(),
            };
            row.push(left + at(k) * 2 + at(k + 1));
        }
        rows.push(row);
    }
    if last_row < kind.first_row() {
        rows.clear();
    }
    rows
}

fn exact_div(num: BigInt, den: &BigInt) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{num} is not divisible by {den}")));
    }
    Ok(q)
}

/// Plain and alternating row sums of both triangles at row `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSums {
    pub sum_b: BigInt,
    pub sum_a: BigInt,
    pub alt_b: BigInt,
    pub alt_a: BigInt,
}

/// Row sums at row `n >= 1`, checked against their closed forms
/// `(n+1)/2 C_n`, `(n+1) C_n`, `-C_{n-1}` and `0`.
///
/// The sums are accumulated from the rows; any disagreement with the closed
/// forms (or an odd `(n+1) C_n`) is reported as [`Error::Internal`].
pub fn row_sum_identities(n: u64) -> Result<RowSums> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("row sums need n >= 1".into()));
    }
    let rb = triangle_row(TriangleKind::B, n)?;
    let ra = triangle_row(TriangleKind::A, n)?;
    let alternating = |row: &[BigInt]| -> BigInt {
        row.iter()
            .enumerate()
            .map(|(i, x)| if (i + 1) % 2 == 0 { x.clone() } else { -x })
            .sum()
    };
    let sums = RowSums {
        sum_b: rb.iter().sum(),
        sum_a: ra.iter().sum(),
        alt_b: alternating(&rb),
        alt_a: alternating(&ra),
    };
    let closed = row_sum_closed_forms(n)?;
    if sums != closed {
        return Err(Error::Internal(format!(
            "row {n}: sums {sums:?} disagree with closed forms {closed:?}"
        )));
    }
    Ok(sums)
}

/// Closed forms of the row sums, without touching the triangle rows.
pub fn row_sum_closed_forms(n: u64) -> Result<RowSums> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("row sums need n >= 1".into()));
    }
    let cn = catalan(n);
    let twice = &cn * (n + 1);
    if twice.is_odd() {
        return Err(Error::Internal(format!("(n+1) C_n is odd at n = {n}")));
    }
    Ok(RowSums {
        sum_b: &twice / 2,
        sum_a: twice,
        alt_b: -catalan(n - 1),
        alt_a: BigInt::zero(),
    })
}

/// The integers `a(n), b(n), d(n), e(n)` hidden in the row sums weighted by
/// powers of `1/4` and `-1/4`. `a` and `d` need a B row, so they are `None`
/// at `n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarterSums {
    pub a: Option<BigInt>,
    pub b: BigInt,
    pub d: Option<BigInt>,
    pub e: BigInt,
}

/// `a(n) = 4^n sum_k B(n,k) 4^-k`, `b(n) = 4^(n+1) sum_k A(n,k) 4^-k`,
/// `d(n) = -(-4)^n sum_k B(n,k) (-1/4)^k`, `e(n) = -4^(n+1) sum_k A(n,k) (-1/4)^k`.
pub fn quarter_weighted_row_sums(n: u64) -> Result<QuarterSums> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let weighted = |row: &[BigInt], w: &BigRational| -> BigRational {
        let mut pow = w.clone();
        let mut acc = BigRational::zero();
        for x in row {
            acc += BigRational::from_integer(x.clone()) * &pow;
            pow *= w;
        }
        acc
    };
    let four_pow = |e: u64| BigRational::from_integer(BigInt::from(4).pow(e as u32));
    let minus_four_pow = |e: u64| BigRational::from_integer(BigInt::from(-4).pow(e as u32));
    let to_int = |name: &str, x: BigRational| -> Result<BigInt> {
        if !x.is_integer() {
            return Err(Error::Internal(format!("{name}({n}) = {x} is not an integer")));
        }
        Ok(x.to_integer())
    };

    let ra = triangle_row(TriangleKind::A, n)?;
    let b = to_int("b", four_pow(n + 1) * weighted(&ra, &quarter))?;
    let e = to_int("e", -four_pow(n + 1) * weighted(&ra, &-quarter.clone()))?;
    let (a, d) = if n >= 1 {
        let rb = triangle_row(TriangleKind::B, n)?;
        let a = to_int("a", four_pow(n) * weighted(&rb, &quarter))?;
        let d = to_int("d", -minus_four_pow(n) * weighted(&rb, &-quarter.clone()))?;
        (Some(a), Some(d))
    } else {
        (None, None)
    };
    Ok(QuarterSums { a, b, d, e })
}

/// Term ratio `(X_{n+1,k} / 4^{n+1}) / (X_{n,k} / 4^n)` along a column, for `n` at or past the column's first row.
pub fn column_term_ratio(kind: TriangleKind, n: u64, k: u64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    match kind {
        TriangleKind::B => nf * (2.0 * nf + 1.0) / (2.0 * (nf + 1.0 - kf) * (nf + 1.0 + kf)),
        TriangleKind::A => (2.0 * nf + 1.0) * (nf + 1.0) / (2.0 * (nf + 2.0 - kf) * (nf + 1.0 + kf)),
    }
}

/// Ratio of the exact entry to its large-`n` form
/// `4^n k / (sqrt(pi) n^{3/2})` (B) or `4^n (2k-1) / (sqrt(pi) n^{3/2})` (A).
///
/// The exact entry is kept as a big integer and compared in the log domain,
/// so `4^n` never has to be represented as a double.
pub fn asymptotic_ratio(kind: TriangleKind, n: u64, k: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("asymptotic ratio needs n >= 1".into()));
    }
    let entry = triangle_entry(kind, n, k)?;
    let weight = match kind {
        TriangleKind::B => k as f64,
        TriangleKind::A => (2 * k - 1) as f64,
    };
    let nf = n as f64;
    let log_form = nf * 4f64.ln() + weight.ln() - 0.5 * std::f64::consts::PI.ln() - 1.5 * nf.ln();
    Ok((big_ln(&entry) - log_form).exp())
}
