//! Verification suites: each runs one group of invariants and returns a
//! [`Report`] with one record per check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{
    alpha_sequence, catalan, catalan_numbers, catalan_polynomial_closed_form, catalan_polynomials,
    row_polynomial_p, row_polynomial_q, row_sum_closed_forms, row_sum_identities, triangle_row,
    triangle_rows_by_recurrence, asymptotic_ratio, IntPolynomial, TriangleKind,
};
use crate::error::{Error, Result};
use crate::oeis;
use crate::operator_calculus::{
    catalan_operator, catalan_power, catalan_power_jordan, matrix_triangle_gf_check, norm_bound_report,
    operator_polynomial_gf, spectral_mapping_check, standard_corpus, ComplexMatrix, PolynomialFamily, DEFAULT_TOL,
};
use crate::report::{CheckRecord, Report};
use crate::seq_algebra::{
    abel_sums, catalan_inverse_power, catalan_seq, convolve, delta, inverse_norm_bound, seq_power, triangle_seq,
    weighted_norm, ColumnFamily, ExactSeq,
};
use crate::numeric::rational_to_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Identities,
    Abel,
    Asymptotics,
    Inverse,
    Operator,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Identities, Suite::Abel, Suite::Asymptotics, Suite::Inverse, Suite::Operator];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Abel => "abel",
            Suite::Asymptotics => "asymptotics",
            Suite::Inverse => "inverse",
            Suite::Operator => "operator",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "abel" => Suite::Abel,
            "asymptotics" => Suite::Asymptotics,
            "inverse" => Suite::Inverse,
            "operator" => Suite::Operator,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

/// Runs a suite. Errors raised by a check are recorded as failed checks.
pub fn run(suite: Suite) -> Report {
    match suite {
        Suite::Identities => identities(),
        Suite::Abel => abel(),
        Suite::Asymptotics => asymptotics(),
        Suite::Inverse => inverse(),
        Suite::Operator => operator(),
        Suite::All => {
            let mut r = Report::default();
            for s in Suite::ALL {
                r.extend(run(s));
            }
            r
        }
    }
}

fn failed(name: impl Into<String>, e: &Error) -> CheckRecord {
    CheckRecord { name: format!("{} (error: {e})", name.into()), value: f64::NAN, bound: 0.0, pass: false }
}

fn exact_or_error(name: &str, r: Result<bool>) -> CheckRecord {
    match r {
        Ok(ok) => CheckRecord::exact(name, ok),
        Err(e) => failed(name, &e),
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Rows 1..6 of both triangles as printed in the standard tables.
pub fn printed_rows(kind: TriangleKind) -> Vec<(u64, Vec<BigInt>)> {
    let rows: [&[i64]; 6] = match kind {
        TriangleKind::B => [
            &[1],
            &[2, 1],
            &[5, 4, 1],
            &[14, 14, 6, 1],
            &[42, 48, 27, 8, 1],
            &[132, 165, 110, 44, 10, 1],
        ],
        TriangleKind::A => [
            &[1, 1],
            &[2, 3, 1],
            &[5, 9, 5, 1],
            &[14, 28, 20, 7, 1],
            &[42, 90, 75, 35, 9, 1],
            &[132, 297, 275, 154, 54, 11, 1],
        ],
    };
    rows.iter().enumerate().map(|(i, r)| (i as u64 + 1, ints(r))).collect()
}

/// `z P_n + C_n = (z+1)^2 P_{n-1}` as polynomials.
fn p_recurrence(n: u64) -> bool {
    let one_plus_z = IntPolynomial::from_i64(&[1, 1]);
    let lhs = &row_polynomial_p(n).shift(1) + &IntPolynomial::constant(catalan(n));
    lhs == &(&one_plus_z * &one_plus_z) * &row_polynomial_p(n - 1)
}

/// `z Q_n + (1+z) C_n = (z+1)^2 Q_{n-1}` as polynomials. The `Q` rows start
/// at `A(n,0) = -C_n` rather than 0, which adds the extra `z C_n`.
fn q_recurrence(n: u64) -> bool {
    let one_plus_z = IntPolynomial::from_i64(&[1, 1]);
    let lhs = &row_polynomial_q(n).shift(1) + &one_plus_z.scale(&catalan(n));
    lhs == &(&one_plus_z * &one_plus_z) * &row_polynomial_q(n - 1)
}

/// The `Q` recurrence with the same inhomogeneous term as for `P`.
pub fn q_recurrence_same_as_p(n: u64) -> bool {
    let one_plus_z = IntPolynomial::from_i64(&[1, 1]);
    let lhs = &row_polynomial_q(n).shift(1) + &IntPolynomial::constant(catalan(n));
    lhs == &(&one_plus_z * &one_plus_z) * &row_polynomial_q(n - 1)
}

fn sample_points() -> Vec<BigRational> {
    let mut v: Vec<BigRational> = (-9..=9).map(|i| BigRational::new(BigInt::from(i), BigInt::from(13))).collect();
    v.push(BigRational::new(BigInt::from(-1), BigInt::from(4)));
    v
}

/// Triangle tables, row sums, row polynomials, Catalan polynomials, `alpha_k`
/// and the OEIS cross-checks.
pub fn identities() -> Report {
    let mut r = Report::default();
    for kind in [TriangleKind::B, TriangleKind::A] {
        for (n, row) in printed_rows(kind) {
            r.push(exact_or_error(&format!("{kind} row {n} matches the printed table"), triangle_row(kind, n).map(|x| x == row)));
        }
        let rec = triangle_rows_by_recurrence(kind, 200);
        let ok = (kind.first_row()..=200)
            .zip(&rec)
            .try_fold(true, |acc, (n, row)| Ok::<_, Error>(acc && triangle_row(kind, n)? == *row));
        r.push(exact_or_error(&format!("{kind} closed form equals recurrence, n <= 200"), ok));
    }
    let ok = (1..=200u64).try_fold(true, |acc, n| Ok::<_, Error>(acc && row_sum_identities(n)? == row_sum_closed_forms(n)?));
    r.push(exact_or_error("row sums and alternating row sums, n <= 200", ok));

    r.push(CheckRecord::exact("z P_n + C_n = (z+1)^2 P_(n-1), n <= 100", (1..=100).all(p_recurrence)));
    r.push(CheckRecord::exact("z Q_n + (1+z) C_n = (z+1)^2 Q_(n-1), n <= 100", (1..=100).all(q_recurrence)));
    let q_is_p = (0..=100u64).all(|n| row_polynomial_q(n) == &IntPolynomial::from_i64(&[1, 1]) * &row_polynomial_p(n));
    r.push(CheckRecord::exact("Q_n = (1+z) P_n, n <= 100", q_is_p));
    let p1 = (0..=100u64).all(|n| {
        let s: BigInt = row_polynomial_p(n).coeffs().iter().sum();
        s == catalan(n) * (2 * n + 1)
    });
    r.push(CheckRecord::exact("P_n(1) = (2n+1) C_n, n <= 100", p1));

    let cs = catalan_numbers(200);
    let conv = (1..=200).all(|n| (0..n).map(|i| &cs[i] * &cs[n - 1 - i]).sum::<BigInt>() == cs[n]);
    r.push(CheckRecord::exact("C_n = sum C_i C_(n-1-i), n <= 200", conv));

    let polys = catalan_polynomials(100);
    let pts = sample_points();
    let closed = polys
        .iter()
        .enumerate()
        .take(51)
        .all(|(k, p)| pts.iter().all(|z| p.eval_rational(z) == catalan_polynomial_closed_form(k as u64, z)));
    r.push(CheckRecord::exact("Catalan polynomial recurrence equals closed form at 20 points, k <= 50", closed));
    let signs = polys.iter().all(|p| {
        p.coeffs().iter().enumerate().all(|(j, c)| c.is_zero() || (c.is_negative() == (j % 2 == 1)))
    });
    r.push(CheckRecord::exact("Catalan polynomial coefficients alternate in sign, k <= 100", signs));
    let alphas = alpha_sequence(50);
    let minus_quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
    let alpha_ok = (1..=50usize).all(|k| {
        let v = polys[k].eval_rational(&minus_quarter) * BigRational::from_integer(BigInt::from(4).pow(k as u32 - 1));
        v == BigRational::from_integer(alphas[k - 1].clone())
    });
    r.push(CheckRecord::exact("alpha_k = 4^(k-1) P_k(-1/4), k <= 50", alpha_ok));

    r.extend(oeis_checks(50));
    r
}

/// Compares the locally computed terms of every known sequence with the
/// fixture directory, requiring a full match of at least 30 terms.
pub fn oeis_checks(count: usize) -> Report {
    let mut r = Report::default();
    for id in oeis::KNOWN_IDS {
        let name = format!("OEIS {id} matches the fixture");
        let res = oeis::load(id, count, true).and_then(|seq| {
            let (offset, computed) = oeis::computed_terms(id, count)?;
            oeis::compare(&seq, &computed[..count], offset)
        });
        r.push(match res {
            Ok(c) => CheckRecord {
                name: format!("{name} ({} of {} terms, shift {})", c.matched, c.compared, c.shift),
                value: c.matched as f64,
                bound: 30.0,
                pass: c.full_match && c.matched >= 30,
            },
            Err(e) => failed(name, &e),
        });
    }
    r
}

/// The eight Abel-type sums at `N = 10^6`, columns up to 8.
pub fn abel() -> Report {
    let mut r = Report::default();
    for id in abel_sums(8).identities {
        r.push(CheckRecord {
            name: format!("{}{}", id.name, if id.certified { "" } else { " (tail not certified)" }),
            value: id.abs_error,
            bound: 1e-3,
            pass: id.pass,
        });
    }
    r
}

/// Ratio of each triangle entry to its asymptotic form at `n = 5000`.
pub fn asymptotics() -> Report {
    let mut r = Report::default();
    for kind in [TriangleKind::B, TriangleKind::A] {
        for k in 1..=3 {
            let name = format!("{kind}(5000, {k}) / asymptotic form within 0.2% of 1");
            r.push(match asymptotic_ratio(kind, 5000, k) {
                Ok(x) => CheckRecord::at_most(name, (x - 1.0).abs(), 2e-3),
                Err(e) => failed(name, &e),
            });
        }
    }
    r
}

/// Power/triangle equivalence, the inverse formula and its norm bound.
pub fn inverse() -> Report {
    let mut r = Report::default();
    let n = 128;
    let c = catalan_seq(n);
    for k in 1..=6u64 {
        let eq = |fam, m| triangle_seq(fam, k, n).map(|t| t.entries() == seq_power(&c, m).entries());
        r.push(exact_or_error(&format!("a_{k} = c^(2k-1) entrywise, N = {n}"), eq(ColumnFamily::A, 2 * k - 1)));
        r.push(exact_or_error(&format!("b_{k} = c^(2k) entrywise, N = {n}"), eq(ColumnFamily::B, 2 * k)));
    }
    for k in 1..=8u64 {
        let ok = catalan_inverse_power(k, n).and_then(|inv| {
            let prod = convolve(&inv, &seq_power(&c, k))?;
            let d: ExactSeq = delta(0, n)?;
            Ok(prod.entries() == d.entries())
        });
        r.push(exact_or_error(&format!("(c^{k})^-1 * c^{k} = delta_0, N = {n}"), ok));
    }
    for k in 1..=8u64 {
        r.push(inverse_norm_check(k, 10_000));
    }
    r
}

/// Truncated norm of `(c^k)^{-1}` at `n` against the closed-form bound plus the tail bound.
pub fn inverse_norm_check(k: u64, n: usize) -> CheckRecord {
    let name = format!("||(c^{k})^-1|| at N = {n} within its bound");
    let res = catalan_inverse_power(k, n).and_then(|inv| {
        let norm = weighted_norm(&inv);
        let bound = rational_to_f64(&inverse_norm_bound(k)?);
        Ok((norm.value, bound + norm.tail_bound.unwrap_or(0.0)))
    });
    match res {
        Ok((v, b)) => CheckRecord::at_most(name, v, b * (1.0 + 1e-12)),
        Err(e) => failed(name, &e),
    }
}

fn push_result(r: &mut Report, name: String, res: Result<(f64, f64)>) {
    r.push(match res {
        Ok((v, b)) => CheckRecord::at_most(name, v, b),
        Err(e) => failed(name, &e),
    });
}

/// Operator identities over the standard corpus.
pub fn operator() -> Report {
    let mut r = Report::default();
    for (label, t) in standard_corpus() {
        r.extend(operator_checks(&label, &t));
    }
    // closed form for the Jordan block
    let (l, mu) = (Complex64::new(0.125, 0.0), Complex64::new(1.0, 0.0));
    let jt = ComplexMatrix::from_rows(2, &[l, mu, Complex64::zero(), l]).expect("finite");
    for j in -3..=3i64 {
        let res = catalan_power_jordan(l, mu, j).and_then(|cf| Ok((cf.max_abs_diff(&catalan_power(&jt, j, DEFAULT_TOL)?), 1e-8)));
        push_result(&mut r, format!("jordan(1/8,1): C(T)^{j} equals its closed form"), res);
    }
    for n in 1..=4 {
        match matrix_triangle_gf_check(Complex64::new(0.2, 0.0), n, 400) {
            Ok(rep) => r.extend(rep),
            Err(e) => r.push(failed(format!("anti-diagonal triangle formulae, n = {n}"), &e)),
        }
    }
    let t = ComplexMatrix::diag(&[Complex64::new(0.125, 0.0), Complex64::new(-0.125, 0.0)]).expect("finite");
    for (fam, z) in [(PolynomialFamily::P, 0.3), (PolynomialFamily::Q, -0.4)] {
        let res = operator_polynomial_gf(&t, Complex64::new(z, 0.0), fam, 200)
            .map(|g| (g.difference, g.tail_bound + g.rhs_error + 1e-12));
        push_result(&mut r, format!("diag(1/8,-1/8): {fam:?} polynomial generating function at z = {z}"), res);
    }
    r
}

/// All per-matrix operator checks for one matrix.
pub fn operator_checks(label: &str, t: &ComplexMatrix) -> Report {
    let mut r = Report::default();
    let d = t.dim() as f64;
    let id = ComplexMatrix::identity(t.dim());
    let op = match catalan_operator(t, DEFAULT_TOL) {
        Ok(op) => op,
        Err(e) => {
            r.push(failed(format!("{label}: C(T)"), &e));
            return r;
        }
    };
    r.push(CheckRecord::at_most(format!("{label}: ||T C(T)^2 - C(T) + I||"), op.residual, (10.0 * d * DEFAULT_TOL).min(1e-8)));
    let commute = (&op.value * t).max_abs_diff(&(t * &op.value));
    r.push(CheckRecord::at_most(format!("{label}: ||C(T) T - T C(T)||"), commute, 1e-10));

    let power = |j: i64| catalan_power(t, j, DEFAULT_TOL);
    push_result(
        &mut r,
        format!("{label}: C(T)^-1 C(T) = I"),
        power(-1).map(|inv| ((&inv * &op.value).max_abs_diff(&id), 1e-8)),
    );
    for m in 1..=4i64 {
        let res = power(m).and_then(|p| {
            let direct = p.inverse()?;
            Ok((power(-m)?.max_abs_diff(&direct), 1e-7))
        });
        push_result(&mut r, format!("{label}: C(T)^-{m} by Catalan polynomials equals the inverse of C(T)^{m}"), res);
    }
    for j in 2..=4u32 {
        let res = power(j as i64).map(|p| (p.max_abs_diff(&op.value.pow(j)), 1e-7));
        push_result(&mut r, format!("{label}: column series for C(T)^{j} equals the matrix power"), res);
    }
    let mut comp = 0.0f64;
    let mut comp_err = None;
    for j1 in -4..=4i64 {
        for j2 in -4..=4i64 {
            match (power(j1), power(j2), power(j1 + j2)) {
                (Ok(a), Ok(b), Ok(c)) => comp = comp.max((&a * &b).max_abs_diff(&c)),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => comp_err = Some(e),
            }
        }
    }
    let name = format!("{label}: C(T)^j1 C(T)^j2 = C(T)^(j1+j2), |j1|, |j2| <= 4");
    r.push(match comp_err {
        None => CheckRecord::at_most(name, comp, 1e-7),
        Some(e) => failed(name, &e),
    });
    match norm_bound_report(t, 4) {
        Ok(mut rep) => {
            for c in &mut rep.checks {
                c.name = format!("{label}: {} within its bound", c.name);
            }
            rep.skipped = rep.skipped.into_iter().map(|s| format!("{label}: {s}")).collect();
            r.extend(rep);
        }
        Err(e) => r.push(failed(format!("{label}: norm bounds"), &e)),
    }
    for j in [-2i64, -1, 1, 2, 3] {
        match spectral_mapping_check(t, j) {
            Ok(s) => r.push(CheckRecord::at_most(format!("{label}: spectral mapping for C^{j}"), s.max_distance, 1e-7)),
            Err(Error::IllConditioned(k)) => {
                r.skipped.push(format!("{label}: spectral mapping for C^{j} (not diagonalizable, condition {k:e})"))
            }
            Err(e) => r.push(failed(format!("{label}: spectral mapping for C^{j}"), &e)),
        }
    }
    r
}
