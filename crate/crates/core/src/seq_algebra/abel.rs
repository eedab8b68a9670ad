//! Numerical verification of the Abel-type column sums of both triangles.
//!
//! Terms `B_{n,k} / 4^n` and `A_{n,j} / 4^n` are generated in double precision
//! by their term ratios and summed with compensation. Positive sums get a
//! rigorous tail bound from `B_{n,k} / 4^n <= k / (sqrt(pi) n^{3/2})` (resp.
//! `2j - 1` for `A`) plus the asymptotic tail estimate `2k / sqrt(pi (N + 1/2))`;
//! alternating sums are bounded by the first omitted term once the terms decrease.

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{column_term_ratio, TriangleKind};
use crate::numeric::CompensatedSum;

/// Number of terms `N` used by [`abel_sums`].
pub const DEFAULT_ABEL_TERMS: u64 = 1_000_000;

/// Number of columns kept in the double sums; the remainder is below `4^-K`.
const DOUBLE_SUM_COLUMNS: u64 = 30;

/// Absolute tolerance each identity has to meet.
const TOLERANCE: f64 = 1e-3;

/// One verified identity.
#[derive(Debug, Clone, Serialize)]
pub struct AbelIdentity {
    pub name: String,
    pub target: f64,
    /// Truncated sum.
    pub partial: f64,
    /// Estimated value of the omitted terms.
    pub tail_estimate: f64,
    /// Rigorous bound on the absolute value of the omitted terms.
    pub certified_tail: f64,
    /// `|partial + tail_estimate - target|`.
    pub abs_error: f64,
    /// Whether `target` lies within `certified_tail` of the partial sum (one-sided for positive sums).
    pub certified: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AbelReport {
    pub terms: u64,
    pub k_max: u64,
    pub identities: Vec<AbelIdentity>,
}

impl AbelReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }
}

/// Sums of one column: plain and alternating, with their tails.
#[derive(Debug, Clone, Copy)]
struct ColumnSums {
    plain: f64,
    alternating: f64,
    /// Rigorous bound on the plain tail.
    plain_tail: f64,
    /// Estimate of the plain tail.
    plain_tail_estimate: f64,
    /// Rigorous bound on the alternating tail.
    alt_tail: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    /// `B_{n,k}`, `n >= k`.
    B(u64),
    /// `A_{n,j}`, `n >= j - 1`.
    A(u64),
}

impl Column {
    fn first_row(self) -> u64 {
        match self {
            Column::B(k) => k,
            Column::A(j) => j - 1,
        }
    }

    /// Multiplier `w` in the entry bound `entry / 4^n <= w / (sqrt(pi) n^{3/2})`.
    fn weight(self) -> f64 {
        match self {
            Column::B(k) => k as f64,
            Column::A(j) => (2 * j - 1) as f64,
        }
    }

    /// `t_{n+1} / t_n` for `t_n = entry(n) / 4^n`.
    fn ratio(self, n: u64) -> f64 {
        match self {
            Column::B(k) => column_term_ratio(TriangleKind::B, n, k),
            Column::A(j) => column_term_ratio(TriangleKind::A, n, j),
        }
    }

    /// First index from which `t_n` is nonincreasing.
    fn monotone_from(self) -> u64 {
        let v = match self {
            Column::B(k) => (2.0 * (k * k) as f64 - 2.0) / 3.0,
            Column::A(j) => (2.0 * (j * j) as f64 - 2.0 * j as f64 - 3.0) / 3.0,
        };
        v.max(0.0).floor() as u64 + 1
    }

    fn sums(self, terms: u64) -> ColumnSums {
        let start = self.first_row();
        let mut t = 0.25f64.powi(start as i32);
        let mut plain = CompensatedSum::default();
        let mut alt = CompensatedSum::default();
        let last = start.max(terms);
        for n in start..=last {
            plain.add(t);
            alt.add(if n % 2 == 0 { t } else { -t });
            t *= self.ratio(n);
        }
        // t is now the first omitted term, at index last + 1
        let w = self.weight() / std::f64::consts::PI.sqrt();
        let nf = last as f64;
        let plain_tail = 2.0 * w / nf.max(1.0).sqrt();
        let plain_tail_estimate = 2.0 * w / (nf + 0.5).sqrt();
        let alt_tail = if last + 1 >= self.monotone_from() { t } else { plain_tail };
        ColumnSums { plain: plain.value(), alternating: alt.value(), plain_tail, plain_tail_estimate, alt_tail }
    }
}

fn identity(name: String, target: f64, partial: f64, tail_estimate: f64, certified_tail: f64, one_sided: bool) -> AbelIdentity {
    let abs_error = (partial + tail_estimate - target).abs();
    let slack = 1e-12 * (1.0 + target.abs());
    let certified = if one_sided {
        partial <= target + slack && target <= partial + certified_tail + slack
    } else {
        (target - partial).abs() <= certified_tail + slack
    };
    AbelIdentity {
        name,
        target,
        partial,
        tail_estimate,
        certified_tail,
        abs_error,
        certified,
        pass: certified && abs_error < TOLERANCE,
    }
}

/// [`abel_sums_with`] at the default `N = 10^6`.
pub fn abel_sums(k_max: u64) -> AbelReport {
    abel_sums_with(k_max, DEFAULT_ABEL_TERMS)
}

/// Verifies the eight Abel-type identities
///
/// * `sum_n B_{n,k} / 4^n = 1` and `sum_n B_{n,k} (-1)^n / 4^n = (2 sqrt 2 - 3)^k`,
/// * `sum_{n,k} B_{n,k} / 4^{n+k} = 1/3` and its alternating form `(8 sqrt 2 - 13) / 41`,
/// * `sum_n A_{n,k+1} / 4^n = 2` and `sum_n A_{n,k+1} (-1)^n / 4^n = 2 (sqrt 2 - 1)(2 sqrt 2 - 3)^k`,
/// * `sum_{n,k>=0} A_{n,k+1} / 4^{n+k} = 8/3` and its alternating form `(8/41)(5 sqrt 2 - 3)`,
///
/// the single-column ones for every `k <= k_max`, with rows truncated at `n <= terms`.
pub fn abel_sums_with(k_max: u64, terms: u64) -> AbelReport {
    let k_max = k_max.max(1);
    let columns = k_max.max(DOUBLE_SUM_COLUMNS);
    let b: Vec<ColumnSums> = (1..=columns).into_par_iter().map(|k| Column::B(k).sums(terms)).collect();
    // A_{n,k+1} for k = 0 ..= columns - 1
    let a: Vec<ColumnSums> = (1..=columns).into_par_iter().map(|j| Column::A(j).sums(terms)).collect();

    let s2 = std::f64::consts::SQRT_2;
    let r = 2.0 * s2 - 3.0;
    let mut out = Vec::new();

    for k in 1..=k_max {
        let s = &b[k as usize - 1];
        out.push(identity(format!("B column {k}, sum = 1"), 1.0, s.plain, s.plain_tail_estimate, s.plain_tail, true));
    }
    for k in 1..=k_max {
        let s = &b[k as usize - 1];
        out.push(identity(
            format!("B column {k}, alternating sum = (2 sqrt2 - 3)^{k}"),
            r.powi(k as i32),
            s.alternating,
            0.0,
            s.alt_tail,
            false,
        ));
    }
    for k in 0..k_max {
        let s = &a[k as usize];
        out.push(identity(format!("A column {}, sum = 2", k + 1), 2.0, s.plain, s.plain_tail_estimate, s.plain_tail, true));
    }
    for k in 0..k_max {
        let s = &a[k as usize];
        out.push(identity(
            format!("A column {}, alternating sum = 2 (sqrt2 - 1)(2 sqrt2 - 3)^{k}", k + 1),
            2.0 * (s2 - 1.0) * r.powi(k as i32),
            s.alternating,
            0.0,
            s.alt_tail,
            false,
        ));
    }

    // Double sums over columns 1 ..= K with weight 4^-k. Every single-column sum is
    // at most 1 (B) or 2 (A) in absolute value, so the omitted columns add at most
    // 4^-K / 3 (B) and 2 * 4^-(K-1) / 3 (A).
    let kcap = columns as i32;
    let double = |sums: &[ColumnSums], shift: i32, alt: bool| {
        let mut v = CompensatedSum::default();
        let mut est = CompensatedSum::default();
        let mut cert = CompensatedSum::default();
        for (i, s) in sums.iter().enumerate() {
            let w = 0.25f64.powi(i as i32 + shift);
            if alt {
                v.add(w * s.alternating);
                cert.add(w * s.alt_tail);
            } else {
                v.add(w * s.plain);
                est.add(w * s.plain_tail_estimate);
                cert.add(w * s.plain_tail);
            }
        }
        (v.value(), est.value(), cert.value())
    };

    let column_rest_b = 0.25f64.powi(kcap) / 3.0;
    let (v, e, c) = double(&b, 1, false);
    out.push(identity("B double sum = 1/3".into(), 1.0 / 3.0, v, e, c + column_rest_b, true));
    let (v, e, c) = double(&b, 1, true);
    out.push(identity("B alternating double sum = (8 sqrt2 - 13)/41".into(), (8.0 * s2 - 13.0) / 41.0, v, e, c + column_rest_b, false));

    let column_rest_a = 2.0 * 0.25f64.powi(kcap) * 4.0 / 3.0;
    let (v, e, c) = double(&a, 0, false);
    out.push(identity("A double sum = 8/3".into(), 8.0 / 3.0, v, e, c + column_rest_a, true));
    let (v, e, c) = double(&a, 0, true);
    out.push(identity(
        "A alternating double sum = (8/41)(5 sqrt2 - 3)".into(),
        8.0 / 41.0 * (5.0 * s2 - 3.0),
        v,
        e,
        c + column_rest_a,
        false,
    ));

    AbelReport { terms, k_max, identities: out }
}
