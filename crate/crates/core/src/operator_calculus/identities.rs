//! Identities checked at the matrix level: the quadratic equation, the
//! polynomial generating functions, norm bounds, and the anti-diagonal
//! generating formulae for the triangles.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use super::{catalan_operator, catalan_power, certify_power_bounded, ComplexMatrix, DEFAULT_SCAN, DEFAULT_TOL};
use crate::combinatorics::{alpha, binomial, row_polynomial_p, TriangleKind};
use crate::error::{Error, Result};
use crate::genfun::{catalan_gf, even_odd_gf, DiskGuard};
use crate::numeric::{big_to_f64_scaled, rational_to_f64};
use crate::report::{CheckRecord, Report};
use crate::seq_algebra::{triangle_seq, ColumnFamily};

/// Diagonal solutions of `T Y^2 - Y + I = 0` for `T = diag(lambda, mu)`.
#[derive(Debug, Clone)]
pub struct QuadraticSolutions {
    /// Distinct solutions with their multiplicity among the four sign choices.
    pub solutions: Vec<(ComplexMatrix, usize)>,
    /// Residual `||T Y^2 - Y + I||` of each solution.
    pub residuals: Vec<f64>,
    /// True when a double root (`lambda = 1/4` or `mu = 1/4`) merged sign choices.
    pub degenerate: bool,
}

/// Both roots of `x y^2 - y + 1 = 0`: `2 / (1 + s)` and `(1 + s) / (2x)`, `s = sqrt(1 - 4x)`.
fn scalar_roots(x: Complex64) -> (Complex64, Complex64, bool) {
    let s = (1.0 - 4.0 * x).sqrt();
    let double = s.norm() < 1e-14;
    (2.0 / (1.0 + s), (1.0 + s) / (2.0 * x), double)
}

/// The four sign choices `Y = diag((1 +- sqrt(1 - 4 lambda)) / (2 lambda), (1 +- sqrt(1 - 4 mu)) / (2 mu))`,
/// merged where a double root makes two of them coincide.
pub fn quadratic_solutions_diag(lambda: Complex64, mu: Complex64) -> Result<QuadraticSolutions> {
    if lambda.norm() == 0.0 || mu.norm() == 0.0 {
        return Err(Error::Domain("lambda and mu must be nonzero".into()));
    }
    let (l1, l2, ld) = scalar_roots(lambda);
    let (m1, m2, md) = scalar_roots(mu);
    let ls: Vec<Complex64> = if ld { vec![l1] } else { vec![l1, l2] };
    let ms: Vec<Complex64> = if md { vec![m1] } else { vec![m1, m2] };
    let t = ComplexMatrix::diag(&[lambda, mu])?;
    let mut solutions = Vec::new();
    let mut residuals = Vec::new();
    for &a in &ls {
        for &b in &ms {
            let y = ComplexMatrix::diag(&[a, b])?;
            residuals.push(super::quadratic_residual(&t, &y));
            let mult = (if ld { 2 } else { 1 }) * (if md { 2 } else { 1 });
            solutions.push((y, mult));
        }
    }
    Ok(QuadraticSolutions { solutions, residuals, degenerate: ld || md })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PolynomialFamily {
    P,
    Q,
}

/// Both sides of `sum_n R_n(z) T^n = (T (1+z)^2 - z I)^{-1} (C(T) - (z+1) I)` (times `z + 1` for `Q`).
#[derive(Debug, Clone)]
pub struct PolynomialGfReport {
    pub lhs: ComplexMatrix,
    pub rhs: ComplexMatrix,
    /// `||lhs - rhs||`.
    pub difference: f64,
    /// Certified bound on the omitted terms of the left side.
    pub tail_bound: f64,
    /// Bound on the error of the right side inherited from `C(T)`: `||(T (1+z)^2 - z I)^{-1}||` times
    /// the series tail of `C(T)` (or `1e-12` when `C(T)` came from Schur–Parlett).
    pub rhs_error: f64,
    /// `||A^{-1} B - B A^{-1}||` for the two factors of the right side.
    pub commutator: f64,
}

const RHS_TOL: f64 = 1e-12;

/// Truncated left side at `n_terms` against the closed form on the right.
pub fn operator_polynomial_gf(t: &ComplexMatrix, z: Complex64, family: PolynomialFamily, n_terms: usize) -> Result<PolynomialGfReport> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("need |z| < 1, got {}", z.norm())));
    }
    let d = t.dim();
    let cert = certify_power_bounded(t, DEFAULT_SCAN)?;
    let id = ComplexMatrix::identity(d);
    let zp1 = z + 1.0;
    let denom = &t.scale(zp1 * zp1) - &id.scale(z);
    let denom_inv = denom.inverse()?;
    let op = catalan_operator(t, RHS_TOL)?;
    let mut rhs_error = denom_inv.norm() * op.tail_bound.unwrap_or(RHS_TOL);
    let c = op.value;
    let numer = &c - &id.scale(zp1);
    let mut rhs = &denom_inv * &numer;
    let commutator = rhs.max_abs_diff(&(&numer * &denom_inv));

    // sum_n (P_n(z) / 4^n) (4T)^n with P_n = row n + 1 of B
    let s = t.scale(Complex64::new(4.0, 0.0));
    let mut pow = id.clone();
    let mut lhs = ComplexMatrix::zeros(d);
    for n in 0..=n_terms {
        if n > 0 {
            pow = &pow * &s;
        }
        let p = row_polynomial_p(n as u64);
        let mut v = Complex64::new(0.0, 0.0);
        for coef in p.coeffs().iter().rev() {
            v = v * z + big_to_f64_scaled(coef, 2 * n as u64);
        }
        lhs = &lhs + &pow.scale(v);
    }
    // |P_n(z)| / 4^n <= 4 / (sqrt(pi) (n+1)^{3/2} (1 - |z|)^2)
    let k = 4.0 / (std::f64::consts::PI.sqrt() * (1.0 - z.norm()).powi(2));
    let mut tail_bound = 2.0 * cert.m * k / ((n_terms + 1) as f64).sqrt();
    if let Some(dec) = cert.decay.filter(|d| d.factor < 1.0) {
        let p = dec.period as f64;
        let geo = cert.m * k / ((n_terms + 2) as f64).powf(1.5) * p * dec.factor.powi(((n_terms + 1) / dec.period) as i32)
            / (1.0 - dec.factor);
        tail_bound = tail_bound.min(geo);
    }
    if family == PolynomialFamily::Q {
        lhs = lhs.scale(zp1);
        rhs = rhs.scale(zp1);
        tail_bound *= zp1.norm();
        rhs_error *= zp1.norm();
    }
    let difference = (&lhs - &rhs).norm();
    Ok(PolynomialGfReport { lhs, rhs, difference, tail_bound, rhs_error, commutator })
}

/// `||C(T)^j||` against the bounds
///
/// * `C(||T||)^j` for `j >= 1`, when `||T|| <= 1/4`;
/// * `1 + M/2` for `j = -1` and `(3/2) M` for `j = -2`;
/// * `M (alpha_m + 2 alpha_{m-1}) / 4^{m-1}` for `j = -m <= -3`,
///
/// where `M = sup_n ||(4T)^n||` is taken from the power-bound certificate.
/// Each check passes when the norm is at most `bound (1 + 1e-8)`.
pub fn norm_bound_report(t: &ComplexMatrix, jmax: u32) -> Result<Report> {
    let cert = certify_power_bounded(t, DEFAULT_SCAN)?;
    let m = cert.m;
    let tn = t.norm();
    let mut report = Report::default();
    let check = |name: String, value: f64, bound: f64| CheckRecord {
        name,
        value,
        bound,
        pass: value <= bound * (1.0 + 1e-8),
    };
    for j in -(jmax as i64)..=jmax as i64 {
        let bound = match j {
            0 => 1.0,
            j if j > 0 => {
                // a norm of 1/4 computed with rounding error still counts as 1/4
                if tn > 0.25 * (1.0 + 1e-12) {
                    report.skipped.push(format!("C(T)^{j}: positive-power bound needs ||T|| <= 1/4, got {tn}"));
                    continue;
                }
                catalan_gf(Complex64::new(tn.min(0.25), 0.0))?.re.powi(j as i32)
            }
            -1 => 1.0 + m / 2.0,
            -2 => 1.5 * m,
            j => {
                let k = j.unsigned_abs();
                let num = alpha(k)? + BigInt::from(2) * alpha(k - 1)?;
                let den = BigInt::from(4).pow((k - 1) as u32);
                m * rational_to_f64(&BigRational::new(num, den))
            }
        };
        let value = catalan_power(t, j, DEFAULT_TOL)?.norm();
        report.push(check(format!("||C(T)^{j}||"), value, bound));
    }
    Ok(report)
}

/// Both sides of the four anti-diagonal generating formulae, `n >= 1`, `k = n ..= n_terms`:
///
/// * `sum_k B_{2k-n,n} z^{2k} = z^{2n} sum_{i even} binom(2n, i) C_e^{2n-i} C_o^i`,
/// * `sum_k B_{2k+1-n,n} z^{2k+1} = z^{2n} sum_{i odd} binom(2n, i) C_e^{2n-i} C_o^i`,
/// * `sum_k A_{2k-1-n,n} z^{2k} = z^{2n} sum_{i even} binom(2n-1, i) C_e^{2n-1-i} C_o^i`,
/// * `sum_k A_{2k-n,n} z^{2k+1} = z^{2n} sum_{i odd} binom(2n-1, i) C_e^{2n-1-i} C_o^i`,
///
/// with `C_e = C_e(z)`, `C_o = C_o(z)`. Each check compares the difference with
/// the certified truncation tail (plus rounding slack).
pub fn matrix_triangle_gf_check(z: Complex64, n: u64, n_terms: u64) -> Result<Report> {
    DiskGuard::CLOSED.check("z", z)?;
    if n == 0 {
        return Err(Error::IndexOutOfRange("the formulae need n >= 1 (column 0 does not exist)".into()));
    }
    if n_terms < n {
        return Err(Error::IndexOutOfRange(format!("need N >= n, got N = {n_terms}, n = {n}")));
    }
    let (ce, co) = even_odd_gf(z)?;
    let z2n = z.powi(2 * n as i32);
    let side = |m: u64, parity: u64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut i = parity;
        while i <= m {
            acc += big_to_f64_scaled(&binomial(m, i), 0) * ce.powi((m - i) as i32) * co.powi(i as i32);
            i += 2;
        }
        z2n * acc
    };
    // x(j) = b_n(j) = B_{j+n,n} or a_n(j) = A_{j+n-1,n}; the sums split C(T)^m = sum_j x(j) (zJ)^j
    // into even j (identity part) and odd j (J part), j = 0 ..= 2 (N - n) + 1
    let len = 2 * (n_terms - n) as usize + 1;
    let four_z = 4.0 * z;
    let r = 4.0 * z.norm();
    let mut report = Report::default();
    for (kind, family, m) in [(TriangleKind::B, ColumnFamily::B, 2 * n), (TriangleKind::A, ColumnFamily::A, 2 * n - 1)] {
        let seq = triangle_seq(family, n, len)?;
        let mut even = Complex64::new(0.0, 0.0);
        let mut odd = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for (j, x) in seq.entries().iter().enumerate() {
            let term = big_to_f64_scaled(x, 2 * j as u64) * pow;
            if j % 2 == 0 {
                even += term;
            } else {
                odd += term;
            }
            pow *= four_z;
        }
        // tail over j > len: x(j) / 4^j <= K (j + s)^{-3/2}
        let tail_const = seq.tail().map_or(f64::INFINITY, |t| t.constant);
        let jn = len as f64;
        let power_law = 2.0 * tail_const / jn.sqrt();
        let geometric = if r < 1.0 { tail_const / (jn + 1.0).powf(1.5) * r.powf(jn + 1.0) / (1.0 - r) } else { f64::INFINITY };
        let tail = power_law.min(geometric) * z.norm().powi(2 * n as i32);
        let name = match kind {
            TriangleKind::B => "B",
            TriangleKind::A => "A",
        };
        for (parity, lhs, label) in [(0, z2n * even, "even"), (1, z2n * odd, "odd")] {
            let rhs = side(m, parity);
            let diff = (lhs - rhs).norm();
            let slack = 1e-12 * (1.0 + rhs.norm());
            report.push(CheckRecord {
                name: format!("{name} {label} formula, n = {n}"),
                value: diff,
                bound: tail + slack,
                pass: diff <= tail + slack,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn quadratic_examples() {
        let q = quadratic_solutions_diag(c(0.25), c(0.25)).unwrap();
        assert!(q.degenerate);
        assert_eq!(q.solutions.len(), 1);
        assert_eq!(q.solutions[0].1, 4);
        assert!(q.solutions[0].0.max_abs_diff(&ComplexMatrix::identity(2).scale(c(2.0))) < 1e-15);

        let q = quadratic_solutions_diag(c(0.125), c(-0.125)).unwrap();
        assert_eq!(q.solutions.len(), 4);
        assert!(q.residuals.iter().all(|&r| r <= 1e-10));

        let q = quadratic_solutions_diag(c(0.1), c(0.2)).unwrap();
        assert!(q.residuals.iter().all(|&r| r <= 1e-10));
        let q = quadratic_solutions_diag(c(0.1), c(0.9)).unwrap();
        assert!(q.residuals.iter().all(|&r| r <= 1e-10));
        assert!(quadratic_solutions_diag(c(0.0), c(0.2)).is_err());
    }

    #[test]
    fn polynomial_gf_zero_matrix() {
        let r = operator_polynomial_gf(&ComplexMatrix::zeros(2), c(0.37), PolynomialFamily::P, 5).unwrap();
        assert!(r.lhs.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        assert!(r.difference < 1e-15);
    }

    #[test]
    fn polynomial_gf_diagonal() {
        let t = ComplexMatrix::diag(&[c(0.125), c(-0.125)]).unwrap();
        let r = operator_polynomial_gf(&t, c(0.3), PolynomialFamily::P, 80).unwrap();
        assert!(r.difference < 1e-6 && r.difference <= r.tail_bound + r.rhs_error + 1e-12);
        assert!(r.commutator < 1e-14);
        let q = operator_polynomial_gf(&t, c(0.3), PolynomialFamily::Q, 80).unwrap();
        assert!(q.lhs.max_abs_diff(&r.lhs.scale(c(1.3))) < 1e-14);
    }

    #[test]
    fn triangle_formulae() {
        let rep = matrix_triangle_gf_check(c(0.2), 1, 300).unwrap();
        assert!(rep.all_pass(), "{rep:#?}");
        assert!(rep.checks.iter().all(|r| r.value < 1e-8));
        for n in 1..5 {
            assert!(matrix_triangle_gf_check(Complex64::new(0.1, 0.15), n, 200).unwrap().all_pass());
            assert!(matrix_triangle_gf_check(c(0.25), n, 300).unwrap().all_pass());
        }
        let zero = matrix_triangle_gf_check(c(0.0), 2, 10).unwrap();
        assert!(zero.checks.iter().all(|r| r.value == 0.0));
        assert!(matrix_triangle_gf_check(c(0.2), 0, 10).is_err());
    }

    #[test]
    fn norm_bounds() {
        let t = ComplexMatrix::diag(&[c(0.25), c(-0.25)]).unwrap();
        let rep = norm_bound_report(&t, 4).unwrap();
        assert!(rep.all_pass(), "{rep:#?}");
        let one = rep.checks.iter().find(|r| r.name == "||C(T)^1||").unwrap();
        assert!((one.value - 2.0).abs() < 1e-12 && one.bound == 2.0);
        let rep = norm_bound_report(&ComplexMatrix::zeros(2), 3).unwrap();
        assert!(rep.checks.iter().all(|r| (r.value - 1.0).abs() < 1e-15 && r.pass));
    }
}
