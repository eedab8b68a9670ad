//! Scalar generating functions on the closed disk `|z| <= 1/4`.
//!
//! `C(z) = (1 - sqrt(1 - 4z)) / (2z)` is evaluated in the rationalized form
//! `2 / (1 + sqrt(1 - 4z))`, which equals it on the whole disk, takes the value
//! `1` at `z = 0` and loses no precision for small `|z|`. The square root is the
//! principal branch; on the closed disk `Re(1 - 4z) >= 0`, so the branch cut is
//! never crossed.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Radius of the disk on which the Catalan series converges absolutely.
pub const QUARTER: f64 = 0.25;

/// Membership test for `D(0, 1/4)` or its closure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskGuard {
    pub radius: f64,
    pub closed: bool,
}

impl DiskGuard {
    pub const CLOSED: DiskGuard = DiskGuard { radius: QUARTER, closed: true };
    pub const OPEN: DiskGuard = DiskGuard { radius: QUARTER, closed: false };

    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        if self.closed {
            r <= self.radius
        } else {
            r < self.radius
        }
    }

    pub fn check(&self, what: &str, z: Complex64) -> Result<()> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!("{what} = {z} is not finite")));
        }
        if !self.contains(z) {
            let bracket = if self.closed { "<=" } else { "<" };
            return Err(Error::Domain(format!("need |{what}| {bracket} 1/4, got |{what}| = {}", z.norm())));
        }
        Ok(())
    }
}

/// `C(z)` on the closed disk.
pub fn catalan_gf(z: Complex64) -> Result<Complex64> {
    DiskGuard::CLOSED.check("z", z)?;
    Ok(catalan_gf_unchecked(z))
}

pub(crate) fn catalan_gf_unchecked(z: Complex64) -> Complex64 {
    2.0 / (1.0 + (1.0 - 4.0 * z).sqrt())
}

/// `C'(z) = C(z)^2 / (1 - 2 z C(z))`; infinite at `z = 1/4`.
pub(crate) fn catalan_gf_derivative_unchecked(z: Complex64) -> Complex64 {
    // 1 - 2zC = sqrt(1 - 4z)
    let s = (1.0 - 4.0 * z).sqrt();
    let c = 2.0 / (1.0 + s);
    c * c / s
}

/// `1 / (lambda - C(z))` computed as `(lambda z - 1 + z C(z)) / (lambda^2 z - lambda + 1)`.
pub fn resolvent_scalar(lambda: Complex64, z: Complex64) -> Result<Complex64> {
    DiskGuard::OPEN.check("z", z)?;
    let c = catalan_gf_unchecked(z);
    let den = lambda * lambda * z - lambda + 1.0;
    if den.norm() <= 1e-14 * (1.0 + lambda.norm_sqr()) {
        return Err(Error::Singular(format!(
            "lambda^2 z - lambda + 1 vanishes at lambda = {lambda}, z = {z}"
        )));
    }
    Ok((lambda * z - 1.0 + z * c) / den)
}

/// Even and odd parts `(C_e(lambda), C_o(lambda))` of the Catalan series.
///
/// With `a = sqrt(1 + 4 lambda)` and `b = sqrt(1 - 4 lambda)` the closed forms
/// `(a - b) / (4 lambda)` and `(2 - a - b) / (4 lambda)` are rewritten as
/// `2 / (a + b)` and `8 lambda / ((1 + ab)(2 + a + b))`, which are regular at 0.
pub fn even_odd_gf(lambda: Complex64) -> Result<(Complex64, Complex64)> {
    DiskGuard::CLOSED.check("lambda", lambda)?;
    let a = (1.0 + 4.0 * lambda).sqrt();
    let b = (1.0 - 4.0 * lambda).sqrt();
    let even = 2.0 / (a + b);
    let odd = 8.0 * lambda / ((1.0 + a * b) * (2.0 + a + b));
    Ok((even, odd))
}

/// `P(z, w) = sum_n P_n(z) w^n = (C(w) - (z + 1)) / (w (1 + z)^2 - z)`.
///
/// Evaluated through the equivalent `C(w)^2 / (1 - z w C(w)^2)`, which has no
/// cancellation near `w = 0`. The excluded set `w (1 + z)^2 = z` is rejected.
pub fn bivariate_p(z: Complex64, w: Complex64) -> Result<Complex64> {
    DiskGuard::CLOSED.check("w", w)?;
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("need |z| < 1, got {}", z.norm())));
    }
    if w == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let excluded = w * (1.0 + z) * (1.0 + z) - z;
    if excluded.norm() <= 1e-12 * (1.0 + z.norm()) {
        return Err(Error::Singular(format!("w (1+z)^2 = z at z = {z}, w = {w}")));
    }
    let c = catalan_gf_unchecked(w);
    let c2 = c * c;
    Ok(c2 / (1.0 - z * w * c2))
}

/// The literal quotient `(C(w) - (z + 1)) / (w (1 + z)^2 - z)`, for cross-checks.
pub fn bivariate_p_quotient(z: Complex64, w: Complex64) -> Result<Complex64> {
    DiskGuard::CLOSED.check("w", w)?;
    let den = w * (1.0 + z) * (1.0 + z) - z;
    if den.norm() <= 1e-12 * (1.0 + z.norm()) {
        return Err(Error::Singular(format!("w (1+z)^2 = z at z = {z}, w = {w}")));
    }
    Ok((catalan_gf_unchecked(w) - (z + 1.0)) / den)
}

/// `Q(z, w) = sum_n Q_n(z) w^n = P(z, w) (z + 1)`.
pub fn bivariate_q(z: Complex64, w: Complex64) -> Result<Complex64> {
    Ok(bivariate_p(z, w)? * (z + 1.0))
}

/// `C^{a,b}(z) = (1 - sqrt(1 - z a)) / (b z)`, the root of `(bz/2) y^2 - y + a/(2b) = 0`
/// that tends to `a / (2b)` at `z = 0`. Evaluated as `a / (b (1 + sqrt(1 - z a)))`.
pub fn generalized_gf(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if b.norm() == 0.0 {
        return Err(Error::Domain("b must be nonzero".into()));
    }
    if (a * z).norm() > 1.0 {
        return Err(Error::Domain(format!("need |a z| <= 1, got {}", (a * z).norm())));
    }
    Ok(a / (b * (1.0 + (1.0 - z * a).sqrt())))
}
