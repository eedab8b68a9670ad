//! Boundary curves of the spectra of Catalan convolution powers.
//!
//! The spectrum of `c^{*j}` is the image of the closed disk `|z| <= 1/4` under
//! `C(z)^j`; its boundary is traced by `C(e^{i theta} / 4)^j`. With the principal
//! square root, `sqrt(1 - e^{i theta}) = sqrt(2 |sin(theta/2)|) e^{i (theta - sgn(theta) pi) / 4}`,
//! so the curve is
//!
//! `[2 e^{-i theta} (1 - sqrt(2 |sin(theta/2)|) e^{i (theta - sgn(theta) pi) / 4})]^j`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::fmt_g17;

/// Sampled boundary curve for the power `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCurve {
    pub power: i64,
    /// `(theta, point)` pairs, `theta` strictly increasing in `(-pi, pi)`.
    pub samples: Vec<(f64, Complex64)>,
}

/// Point of the boundary curve at angle `theta` in `[-pi, pi]`.
pub fn boundary_point(theta: f64, j: i64) -> Result<Complex64> {
    if j == 0 {
        return Err(Error::InvalidPower("the boundary curve needs j != 0".into()));
    }
    if !(-PI..=PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside [-pi, pi]")));
    }
    let radius = (2.0 * (theta / 2.0).sin().abs()).sqrt();
    let phase = (theta - theta.signum() * PI) / 4.0;
    let root = Complex64::from_polar(radius, if theta == 0.0 { 0.0 } else { phase });
    let base = 2.0 * Complex64::from_polar(1.0, -theta) * (1.0 - root);
    let p = i32::try_from(j).map_err(|_| Error::InvalidPower(format!("power {j} too large")))?;
    Ok(base.powi(p))
}

/// `samples` points at `theta_i = -pi + 2 pi (i + 1) / (samples + 1)`, `i = 0 .. samples`.
///
/// The grid is symmetric and open at both ends; it contains `theta = 0` when
/// `samples` is odd.
pub fn spectrum_boundary(j: i64, samples: usize) -> Result<SpectrumCurve> {
    if j == 0 {
        return Err(Error::InvalidPower("the boundary curve needs j != 0".into()));
    }
    if samples < 2 {
        return Err(Error::IndexOutOfRange("need at least two samples".into()));
    }
    let h = 2.0 * PI / (samples as f64 + 1.0);
    let mid = samples as f64 / 2.0 - 0.5;
    let pts = (0..samples)
        .map(|i| {
            // symmetric about the middle index so that odd grids hit 0 exactly
            let theta = (i as f64 - mid) * h;
            Ok((theta, boundary_point(theta, j)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumCurve { power: j, samples: pts })
}

impl SpectrumCurve {
    /// CSV with header `theta,re,im`, one row per sample, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "theta,re,im")?;
        for (theta, p) in &self.samples {
            writeln!(out, "{},{},{}", fmt_g17(*theta), fmt_g17(p.re), fmt_g17(p.im))?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}
