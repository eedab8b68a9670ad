//! The Catalan operator `C(T) = sum_n C_n T^n` for square complex matrices
//! with `4T` power-bounded, its integer powers, and related identities.
//!
//! Series are summed as `sum_n (x(n) / 4^n) (4T)^n`, so neither the
//! coefficients nor the powers overflow. The number of terms is chosen from a
//! certified tail bound: the entry estimate `x(n) / 4^n <= K (n + s)^{-3/2}`
//! combined with `||(4T)^n|| <= M`, or with the geometric decay of the
//! certificate when one is known. When no affordable truncation meets the
//! tolerance (eigenvalues of modulus 1/4 make the tail decay like
//! `N^{-1/2}`), the value is computed by the Schur–Parlett method from the
//! scalar function instead.

mod certify;
mod identities;
mod matrix;
mod spectral;

pub use certify::{
    certify_power_bounded, CertMethod, Decay, PowerBoundCertificate, DEFAULT_SCAN, DIVERGENCE_CAP,
    MAX_EIGEN_CONDITION,
};
pub use identities::{
    matrix_triangle_gf_check, norm_bound_report, operator_polynomial_gf, quadratic_solutions_diag,
    PolynomialFamily, PolynomialGfReport, QuadraticSolutions,
};
pub use matrix::{ComplexMatrix, MatrixJson};
pub use spectral::{bottleneck_distance, eigen_decomposition, eigenvalues, schur_parlett, EigenDecomposition};

use num_complex::Complex64;
use serde::Serialize;

use crate::combinatorics::{catalan_polynomial, column_term_ratio, IntPolynomial, TriangleKind};
use crate::error::{Error, Result};
use crate::genfun::{catalan_gf_derivative_unchecked, catalan_gf_unchecked, DiskGuard, QUARTER};
use crate::numeric::big_to_f64_scaled;

/// Default series tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest number of series terms tried before falling back to Schur–Parlett.
pub const SERIES_CAP: usize = 20_000;

/// How a matrix function value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMethod {
    /// Truncated power series with a certified tail.
    Series,
    /// Schur–Parlett evaluation of the scalar function.
    SchurParlett,
}

/// `C(T)` together with how it was computed and its quadratic residual.
#[derive(Debug, Clone)]
pub struct CatalanOperator {
    pub source: ComplexMatrix,
    pub value: ComplexMatrix,
    pub method: EvalMethod,
    /// Highest series index used (0 for Schur–Parlett).
    pub truncation: usize,
    /// Certified bound on the omitted series terms, for the series method.
    pub tail_bound: Option<f64>,
    /// `||T C(T)^2 - C(T) + I||` as computed.
    pub residual: f64,
    pub certificate: PowerBoundCertificate,
}

/// A matrix function value with provenance.
#[derive(Debug, Clone)]
pub struct PowerValue {
    pub value: ComplexMatrix,
    pub method: EvalMethod,
    pub truncation: usize,
    pub tail_bound: Option<f64>,
}

/// Coefficient sequence `x(n)` of a series in `T`, described by `t_n = x(n) / 4^n`.
#[derive(Debug, Clone, Copy)]
struct Column {
    kind: TriangleKind,
    k: u64,
}

impl Column {
    /// `C(T)^j = sum_n x(n) T^n` for `j >= 1`: `a_k(n) = A_{n+k-1,k}` when `j = 2k - 1`,
    /// `b_k(n) = B_{n+k,k}` when `j = 2k`.
    fn for_power(j: u64) -> Self {
        if j % 2 == 1 {
            Column { kind: TriangleKind::A, k: j.div_ceil(2) }
        } else {
            Column { kind: TriangleKind::B, k: j / 2 }
        }
    }

    /// Triangle row of `x(0)`.
    fn shift(self) -> u64 {
        match self.kind {
            TriangleKind::A => self.k - 1,
            TriangleKind::B => self.k,
        }
    }

    /// `K` in `t_n <= K (n + shift)^{-3/2}`, from `X_{m,k} / 4^m <= w / (sqrt(pi) m^{3/2})`.
    fn constant(self) -> f64 {
        let w = match self.kind {
            TriangleKind::A => (2 * self.k - 1) as f64,
            TriangleKind::B => self.k as f64,
        };
        4f64.powi(self.shift() as i32) * w / std::f64::consts::PI.sqrt()
    }

    fn coefficients(self, n_max: usize) -> Vec<f64> {
        let s = self.shift();
        let mut t = 1.0;
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max as u64 {
            out.push(t);
            t *= column_term_ratio(self.kind, n + s, self.k);
        }
        out
    }
}

/// Smallest `N <= SERIES_CAP` whose certified tail is below `tol`, with that tail.
///
/// `constant` and `shift` describe `t_n <= K (n + s)^{-3/2}` for `n >= 1`.
pub(crate) fn choose_truncation(
    cert: &PowerBoundCertificate,
    constant: f64,
    shift: f64,
    tol: f64,
) -> Option<(usize, f64)> {
    let m = cert.m;
    let geometric = cert.decay.filter(|d| d.factor < 1.0);
    for n in 1..=SERIES_CAP {
        let nf = n as f64;
        let power_law = 2.0 * m * constant / (nf + shift).sqrt();
        let geo = geometric.map_or(f64::INFINITY, |d| {
            let p = d.period as f64;
            m * constant / (nf + 1.0 + shift).powf(1.5) * p * d.factor.powi(((n + 1) / d.period) as i32)
                / (1.0 - d.factor)
        });
        let tail = power_law.min(geo);
        if tail < tol {
            return Some((n, tail));
        }
    }
    None
}

/// `sum_{n <= N} t_n (4T)^n`.
fn scaled_series(t: &ComplexMatrix, coeffs: &[f64]) -> ComplexMatrix {
    let s = t.scale(Complex64::new(4.0, 0.0));
    let mut p = ComplexMatrix::identity(t.dim());
    let mut acc = ComplexMatrix::zeros(t.dim());
    for (n, &c) in coeffs.iter().enumerate() {
        if n > 0 {
            p = &p * &s;
        }
        acc = &acc + &p.scale(Complex64::new(c, 0.0));
    }
    acc
}

/// Moves eigenvalues that rounding pushed just outside the closed disk back onto its boundary.
fn snap_to_disk(z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r <= QUARTER {
        Ok(z)
    } else if r <= QUARTER * (1.0 + 1e-9) {
        Ok(z * (QUARTER / r))
    } else {
        Err(Error::Domain(format!("eigenvalue {z} lies outside |z| <= 1/4")))
    }
}

/// `C(z)^j` and its derivative `j C^{j-1} C'(z)`, for Schur–Parlett.
fn catalan_power_scalar(z: Complex64, j: i32) -> Result<Complex64> {
    let z = snap_to_disk(z)?;
    Ok(catalan_gf_unchecked(z).powi(j))
}

fn catalan_power_scalar_derivative(z: Complex64, j: i32) -> Result<Complex64> {
    let z = snap_to_disk(z)?;
    if (z - QUARTER).norm() < 1e-14 {
        return Err(Error::Domain("C is not differentiable at 1/4".into()));
    }
    Ok(f64::from(j) * catalan_gf_unchecked(z).powi(j - 1) * catalan_gf_derivative_unchecked(z))
}

fn power_by_parlett(t: &ComplexMatrix, j: i32) -> Result<ComplexMatrix> {
    schur_parlett(t, &|z| catalan_power_scalar(z, j), &|z| catalan_power_scalar_derivative(z, j))
        .map_err(|e| Error::NonConvergence(format!("series tolerance unreachable and Schur-Parlett failed: {e}")))
}

fn quadratic_residual(t: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    let ty2 = &(t * y) * y;
    (&(&ty2 - y) + &ComplexMatrix::identity(t.dim())).norm()
}

/// `C(T) = sum_n C_n T^n`, certified to `tol` when evaluated as a series.
pub fn catalan_operator(t: &ComplexMatrix, tol: f64) -> Result<CatalanOperator> {
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let cert = certify_power_bounded(t, DEFAULT_SCAN)?;
    let pv = positive_power(t, 1, tol, &cert)?;
    let residual = quadratic_residual(t, &pv.value);
    Ok(CatalanOperator {
        source: t.clone(),
        value: pv.value,
        method: pv.method,
        truncation: pv.truncation,
        tail_bound: pv.tail_bound,
        residual,
        certificate: cert,
    })
}

fn positive_power(t: &ComplexMatrix, j: u64, tol: f64, cert: &PowerBoundCertificate) -> Result<PowerValue> {
    let col = Column::for_power(j);
    match choose_truncation(cert, col.constant(), col.shift() as f64, tol) {
        Some((n, tail)) => Ok(PowerValue {
            value: scaled_series(t, &col.coefficients(n)),
            method: EvalMethod::Series,
            truncation: n,
            tail_bound: Some(tail),
        }),
        None => {
            let j = i32::try_from(j).map_err(|_| Error::InvalidPower(format!("power {j} too large")))?;
            Ok(PowerValue { value: power_by_parlett(t, j)?, method: EvalMethod::SchurParlett, truncation: 0, tail_bound: None })
        }
    }
}

/// `sum_n a_k(n) T^n` (odd `j = 2k - 1`) or `sum_n b_k(n) T^n` (even `j = 2k`) for `j >= 1`,
/// always as a series; fails with a non-convergence error when `tol` needs more than
/// [`SERIES_CAP`] terms.
pub fn phi_series(t: &ComplexMatrix, j: u64, tol: f64) -> Result<PowerValue> {
    if j == 0 {
        return Err(Error::InvalidPower("the column series starts at j = 1".into()));
    }
    let cert = certify_power_bounded(t, DEFAULT_SCAN)?;
    let col = Column::for_power(j);
    let (n, tail) = choose_truncation(&cert, col.constant(), col.shift() as f64, tol)
        .ok_or_else(|| Error::NonConvergence(format!("tolerance {tol:e} needs more than {SERIES_CAP} terms")))?;
    Ok(PowerValue {
        value: scaled_series(t, &col.coefficients(n)),
        method: EvalMethod::Series,
        truncation: n,
        tail_bound: Some(tail),
    })
}

/// Horner evaluation of an integer polynomial at a matrix.
pub fn polynomial_at(p: &IntPolynomial, t: &ComplexMatrix) -> ComplexMatrix {
    let d = t.dim();
    let mut acc = ComplexMatrix::zeros(d);
    for c in p.coeffs().iter().rev() {
        let c = Complex64::new(big_to_f64_scaled(c, 0), 0.0);
        acc = &(&acc * t) + &ComplexMatrix::identity(d).scale(c);
    }
    acc
}

/// `C(T)^j` for any integer `j`, with provenance.
///
/// * `j >= 1`: the column series `sum a_k(n) T^n` or `sum b_k(n) T^n`;
/// * `j = 0`: the identity;
/// * `j = -m <= -1`: `P_m(T) - T C(T) P_{m-1}(T)` with the Catalan polynomials,
///   which for `m = 1` is `I - T C(T)`.
pub fn catalan_power_detailed(t: &ComplexMatrix, j: i64, tol: f64) -> Result<PowerValue> {
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let cert = certify_power_bounded(t, DEFAULT_SCAN)?;
    if j == 0 {
        return Ok(PowerValue { value: ComplexMatrix::identity(t.dim()), method: EvalMethod::Series, truncation: 0, tail_bound: Some(0.0) });
    }
    if j > 0 {
        return positive_power(t, j as u64, tol, &cert);
    }
    let m = j.unsigned_abs() as usize;
    let c = positive_power(t, 1, tol, &cert)?;
    let pm = polynomial_at(&catalan_polynomial(m), t);
    let pm1 = polynomial_at(&catalan_polynomial(m - 1), t);
    let value = &pm - &(&(t * &c.value) * &pm1);
    Ok(PowerValue { value, ..c })
}

/// `C(T)^j` for any integer `j`.
pub fn catalan_power(t: &ComplexMatrix, j: i64, tol: f64) -> Result<ComplexMatrix> {
    Ok(catalan_power_detailed(t, j, tol)?.value)
}

/// Closed form of `C(T)^j` for the Jordan block `T = [[lambda, mu], [0, lambda]]`:
/// diagonal `C(lambda)^j`, corner `j C(lambda)^{j-1} mu (C(lambda) - 1) / (lambda (1 - 2 lambda C(lambda)))`.
pub fn catalan_power_jordan(lambda: Complex64, mu: Complex64, j: i64) -> Result<ComplexMatrix> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("lambda must be nonzero".into()));
    }
    DiskGuard::CLOSED.check("lambda", lambda)?;
    let c = catalan_gf_unchecked(lambda);
    let gap = 1.0 - 2.0 * lambda * c;
    if gap.norm() < 1e-14 {
        return Err(Error::Domain("the corner entry is unbounded at lambda = 1/4".into()));
    }
    let j32 = i32::try_from(j).map_err(|_| Error::InvalidPower(format!("power {j} too large")))?;
    // (C - 1) / lambda = C^2 avoids cancellation for small lambda
    let corner = f64::from(j32) * c.powi(j32 - 1) * mu * c * c / gap;
    let diag = c.powi(j32);
    ComplexMatrix::from_rows(2, &[diag, corner, Complex64::new(0.0, 0.0), diag])
}

/// Result of comparing `sigma(C(T)^j)` with `C(sigma(T))^j`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralMappingReport {
    pub power: i64,
    pub eigenvalues: Vec<(f64, f64)>,
    pub expected: Vec<(f64, f64)>,
    /// Bottleneck distance between the two multisets.
    pub max_distance: f64,
    /// Condition number of the eigenbasis of `T`.
    pub condition: f64,
}

/// Eigenvalues of `C(T)^j` against `{C(lambda_i)^j}` under an optimal matching.
pub fn spectral_mapping_check(t: &ComplexMatrix, j: i64) -> Result<SpectralMappingReport> {
    let eig = eigen_decomposition(t)?;
    if !(eig.condition < MAX_EIGEN_CONDITION) {
        return Err(Error::IllConditioned(eig.condition));
    }
    let j32 = i32::try_from(j).map_err(|_| Error::InvalidPower(format!("power {j} too large")))?;
    let value = catalan_power(t, j, DEFAULT_TOL)?;
    let got = eigenvalues(&value)?;
    let expected = eig.values.iter().map(|&z| catalan_power_scalar(z, j32)).collect::<Result<Vec<_>>>()?;
    let max_distance = bottleneck_distance(&got, &expected)?;
    let pairs = |v: &[Complex64]| v.iter().map(|z| (z.re, z.im)).collect();
    Ok(SpectralMappingReport {
        power: j,
        eigenvalues: pairs(&got),
        expected: pairs(&expected),
        max_distance,
        condition: eig.condition,
    })
}

/// The reference set of matrices used by the verification suites.
pub fn standard_corpus() -> Vec<(String, ComplexMatrix)> {
    let r = |x: f64| Complex64::new(x, 0.0);
    let mut out = vec![
        ("zero".to_string(), ComplexMatrix::zeros(2)),
        ("diag(1/4,-1/4)".to_string(), ComplexMatrix::diag(&[r(0.25), r(-0.25)]).expect("finite")),
    ];
    for lambda in [0.1, 0.2, 0.25] {
        out.push((
            format!("antidiagonal({lambda})"),
            ComplexMatrix::from_real_rows(&[&[0.0, lambda], &[lambda, 0.0]]).expect("finite"),
        ));
    }
    out.push((
        "jordan(1/8,1)".to_string(),
        ComplexMatrix::from_real_rows(&[&[0.125, 1.0], &[0.0, 0.125]]).expect("finite"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{catalan_gf, even_odd_gf};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn antidiag(l: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, l], &[l, 0.0]]).unwrap()
    }

    #[test]
    fn diagonal_quarter() {
        let t = ComplexMatrix::diag(&[c(0.25), c(-0.25)]).unwrap();
        let op = catalan_operator(&t, DEFAULT_TOL).unwrap();
        assert_eq!(op.method, EvalMethod::SchurParlett);
        let want = ComplexMatrix::diag(&[c(2.0), c(2.0 * (2f64.sqrt() - 1.0))]).unwrap();
        assert!(op.value.max_abs_diff(&want) < 1e-14);
        assert!(op.residual < 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let op = catalan_operator(&ComplexMatrix::zeros(3), DEFAULT_TOL).unwrap();
        assert_eq!(op.value, ComplexMatrix::identity(3));
    }

    #[test]
    fn antidiagonal_even_odd() {
        let t = antidiag(0.2);
        let op = catalan_operator(&t, DEFAULT_TOL).unwrap();
        assert_eq!(op.method, EvalMethod::Series);
        let (e, o) = even_odd_gf(c(0.2)).unwrap();
        let want = ComplexMatrix::from_rows(2, &[e, o, o, e]).unwrap();
        assert!(op.value.max_abs_diff(&want) < 1e-10);
    }

    #[test]
    fn negative_powers() {
        let t = ComplexMatrix::diag(&[c(0.25), c(-0.25)]).unwrap();
        let inv = catalan_power(&t, -1, DEFAULT_TOL).unwrap();
        let want = ComplexMatrix::diag(&[c(0.5), c(1.0 / (2.0 * (2f64.sqrt() - 1.0)))]).unwrap();
        assert!(inv.max_abs_diff(&want) < 1e-14);
        for m in 1..6 {
            let neg = catalan_power(&antidiag(0.2), -m, DEFAULT_TOL).unwrap();
            let pos = catalan_power(&antidiag(0.2), m, DEFAULT_TOL).unwrap();
            assert!((&neg * &pos).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-9, "m={m}");
        }
    }

    #[test]
    fn positive_power_cube() {
        let l = 0.2;
        let p3 = catalan_power(&antidiag(l), 3, DEFAULT_TOL).unwrap();
        let (cp, cm) = (catalan_gf(c(l)).unwrap().powi(3), catalan_gf(c(-l)).unwrap().powi(3));
        // eigenvectors (1, 1) and (1, -1): even part on the diagonal, odd part off it
        let want = ComplexMatrix::from_rows(2, &[(cp + cm) / 2.0, (cp - cm) / 2.0, (cp - cm) / 2.0, (cp + cm) / 2.0]).unwrap();
        assert!(p3.max_abs_diff(&want) < 1e-10);
        assert_eq!(catalan_power(&ComplexMatrix::zeros(2), 2, DEFAULT_TOL).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn jordan_closed_form() {
        let (l, mu) = (c(0.125), c(1.0));
        let one = catalan_power_jordan(l, mu, 1).unwrap();
        let cl = 4.0 * (1.0 - 0.5f64.sqrt());
        assert!((one.get(0, 0).re - cl).abs() < 1e-15);
        let corner = (cl - 1.0) / (0.125 * (1.0 - 0.25 * cl));
        assert!((one.get(0, 1).re - corner).abs() < 1e-13);
        let t = ComplexMatrix::from_rows(2, &[l, mu, c(0.0), l]).unwrap();
        for j in -4..=4 {
            let closed = catalan_power_jordan(l, mu, j).unwrap();
            let series = catalan_power(&t, j, DEFAULT_TOL).unwrap();
            assert!(closed.max_abs_diff(&series) < 1e-8, "j={j}");
        }
        let inv = catalan_power_jordan(l, mu, -1).unwrap();
        assert!((&inv * &one).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
        assert_eq!(catalan_power_jordan(l, mu, 0).unwrap(), ComplexMatrix::identity(2));
        assert!(catalan_power_jordan(c(0.3), mu, 1).is_err());
        assert!(catalan_power_jordan(c(0.0), mu, 1).is_err());
    }

    #[test]
    fn spectral_mapping_examples() {
        let t = ComplexMatrix::diag(&[c(0.25), c(-0.25)]).unwrap();
        assert!(spectral_mapping_check(&t, 1).unwrap().max_distance < 1e-9);
        let r = spectral_mapping_check(&antidiag(0.2), 2).unwrap();
        assert!(r.max_distance < 1e-9);
        let r = spectral_mapping_check(&ComplexMatrix::zeros(2), 5).unwrap();
        assert!(r.expected.iter().all(|&(re, im)| re == 1.0 && im == 0.0));
        let jordan = ComplexMatrix::from_real_rows(&[&[0.125, 1.0], &[0.0, 0.125]]).unwrap();
        assert!(matches!(spectral_mapping_check(&jordan, 1), Err(Error::IllConditioned(_))));
    }

    #[test]
    fn series_and_parlett_agree() {
        let t = ComplexMatrix::from_real_rows(&[&[0.1, 0.05, 0.0], &[0.0, -0.05, 0.02], &[0.03, 0.0, 0.12]]).unwrap();
        for j in [1u64, 2, 3, 6] {
            let s = phi_series(&t, j, 1e-13).unwrap().value;
            let p = power_by_parlett(&t, j as i32).unwrap();
            assert!(s.max_abs_diff(&p) < 1e-12, "j={j}");
        }
    }

    #[test]
    fn coefficient_columns() {
        // C(T)^3 = sum a_2(n) T^n with a_2 = 1, 3, 9, 28, ...
        let got = Column::for_power(3).coefficients(3);
        let want = [1.0, 3.0 / 4.0, 9.0 / 16.0, 28.0 / 64.0];
        assert!(got.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
        let got = Column::for_power(4).coefficients(3);
        let want = [1.0, 4.0 / 4.0, 14.0 / 16.0, 48.0 / 64.0];
        assert!(got.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
    }
}
