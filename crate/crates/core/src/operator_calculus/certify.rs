//! Certificates that `4T` is power-bounded.

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::ComplexMatrix;
use super::spectral::eigen_decomposition;
use crate::error::{Error, Result};

/// Default number of powers examined by the direct scan.
pub const DEFAULT_SCAN: usize = 10_000;

/// Growth of `||(4T)^n||` beyond this value is treated as divergence.
pub const DIVERGENCE_CAP: f64 = 1e12;

/// Eigenbases worse conditioned than this are not used for certification.
pub const MAX_EIGEN_CONDITION: f64 = 1e8;

/// Slack allowed when comparing norms and moduli with 1.
const UNIT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertMethod {
    /// Some power satisfies `||(4T)^p|| <= 1`, so `M = max_{r < p} ||(4T)^r||`.
    DirectScan,
    /// `4T = V D V^{-1}` with `|D| <= 1`, so `M <= kappa(V)`.
    EigenBound,
}

/// Geometric decay `||(4T)^n|| <= M q^{floor(n / period)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decay {
    pub period: usize,
    pub factor: f64,
}

/// `sup_n ||(4T)^n|| <= m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerBoundCertificate {
    pub m: f64,
    pub checked_up_to: usize,
    pub method: CertMethod,
    /// Geometric decay, when one was established.
    pub decay: Option<Decay>,
    /// Spectral radius of `4T`.
    pub spectral_radius: f64,
}

impl PowerBoundCertificate {
    /// Bound on `||(4T)^n||`.
    pub fn power_bound(&self, n: usize) -> f64 {
        match self.decay {
            Some(Decay { period, factor }) if factor < 1.0 => self.m * factor.powi((n / period) as i32),
            _ => self.m,
        }
    }
}

/// Certifies `sup_n ||(4T)^n|| < infinity` and returns a bound `M`.
///
/// The scan multiplies out `(4T)^n` for `n <= nmax`. As soon as some
/// `||(4T)^p|| <= 1`, submultiplicativity bounds every later power by the
/// largest of the first `p`. Otherwise a well-conditioned eigenbasis with all
/// eigenvalues of `4T` in the closed unit disk gives `M = kappa(V)`.
pub fn certify_power_bounded(t: &ComplexMatrix, nmax: usize) -> Result<PowerBoundCertificate> {
    if nmax == 0 {
        return Err(Error::Precondition("the scan needs nmax >= 1".into()));
    }
    let d = t.dim();
    let s = t.scale(Complex64::new(4.0, 0.0));
    let eig = eigen_decomposition(&s)?;
    let rho = eig.values.iter().map(|z| z.norm()).fold(0.0, f64::max);

    let mut p = ComplexMatrix::identity(d);
    let mut max_norm = 1.0f64;
    for n in 1..=nmax {
        p = &p * &s;
        let norm = p.norm();
        if norm <= 1.0 + UNIT_SLACK {
            return Ok(PowerBoundCertificate {
                m: max_norm,
                checked_up_to: n,
                method: CertMethod::DirectScan,
                decay: Some(Decay { period: n, factor: norm.min(1.0) }),
                spectral_radius: rho,
            });
        }
        if norm > DIVERGENCE_CAP {
            return Err(Error::Divergence(format!("||(4T)^{n}|| = {norm:e} exceeds {DIVERGENCE_CAP:e}")));
        }
        max_norm = max_norm.max(norm);
    }
    if rho > 1.0 + UNIT_SLACK {
        return Err(Error::Divergence(format!("spectral radius of 4T is {rho} > 1")));
    }
    if eig.condition < MAX_EIGEN_CONDITION {
        let decay = (rho < 1.0 - UNIT_SLACK).then_some(Decay { period: 1, factor: rho });
        return Ok(PowerBoundCertificate {
            m: eig.condition.max(max_norm),
            checked_up_to: nmax,
            method: CertMethod::EigenBound,
            decay,
            spectral_radius: rho,
        });
    }
    Err(Error::NotCertified(format!(
        "no power of 4T up to {nmax} has norm <= 1 and the eigenbasis condition number is {:e}",
        eig.condition
    )))
}
