//! Square complex matrices and their JSON form.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::numeric::fmt_g17;

/// A finite square matrix over the complex doubles.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    m: DMatrix<Complex64>,
}

impl ComplexMatrix {
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidMatrix(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix("entries must be finite".into()));
        }
        Ok(Self { m })
    }

    /// Row-major entries of a `d x d` matrix.
    pub fn from_rows(d: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != d * d {
            return Err(Error::InvalidMatrix(format!("expected {} entries, got {}", d * d, entries.len())));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(d, d, entries))
    }

    /// Row-major real matrix.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let d = rows.len();
        let mut entries = Vec::with_capacity(d * d);
        for r in rows {
            if r.len() != d {
                return Err(Error::InvalidMatrix("rows must all have length d".into()));
            }
            entries.extend(r.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_rows(d, &entries)
    }

    pub fn diag(values: &[Complex64]) -> Result<Self> {
        Self::from_dmatrix(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values)))
    }

    pub fn identity(d: usize) -> Self {
        Self { m: DMatrix::identity(d, d) }
    }

    pub fn zeros(d: usize) -> Self {
        Self { m: DMatrix::zeros(d, d) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { m: &self.m * s }
    }

    /// Spectral norm (largest singular value).
    pub fn norm(&self) -> f64 {
        spectral_norm(&self.m)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.m - &other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn inverse(&self) -> Result<Self> {
        let sv = self.m.clone().svd(false, false).singular_values;
        let (hi, lo) = (sv.max(), sv.min());
        if lo <= 1e-14 * hi || hi == 0.0 {
            return Err(Error::Singular(format!("matrix is numerically singular (sigma_min = {lo:e})")));
        }
        self.m
            .clone()
            .try_inverse()
            .map(|m| Self { m })
            .ok_or_else(|| Error::Singular("matrix is not invertible".into()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::identity(self.dim());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// JSON object `{"d": d, "re": [[..]], "im": [[..]]}`, row-major, 17 significant digits.
    pub fn to_json(&self) -> Result<String> {
        let d = self.dim();
        let raw = |f: &dyn Fn(Complex64) -> f64| -> Result<Vec<Vec<Box<RawValue>>>> {
            (0..d)
                .map(|i| (0..d).map(|j| Ok(RawValue::from_string(fmt_g17(f(self.m[(i, j)])))?)).collect())
                .collect()
        };
        let out = MatrixJsonOut { d, re: raw(&|z| z.re)?, im: raw(&|z| z.im)? };
        Ok(serde_json::to_string(&out)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: MatrixJson = serde_json::from_str(text)?;
        parsed.try_into()
    }
}

pub(crate) fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

#[derive(Serialize)]
struct MatrixJsonOut {
    d: usize,
    re: Vec<Vec<Box<RawValue>>>,
    im: Vec<Vec<Box<RawValue>>>,
}

/// Matrix input schema; `im` may be omitted for a real matrix.
#[derive(Debug, Clone, Deserialize)]
pub struct MatrixJson {
    pub d: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let d = j.d;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == d && rows.iter().all(|r| r.len() == d);
        if !shape_ok(&j.re) {
            return Err(Error::InvalidMatrix(format!("\"re\" must be {d} rows of {d} numbers")));
        }
        if let Some(im) = &j.im {
            if !shape_ok(im) {
                return Err(Error::InvalidMatrix(format!("\"im\" must be {d} rows of {d} numbers")));
            }
        }
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for k in 0..d {
                let im = j.im.as_ref().map_or(0.0, |m| m[i][k]);
                entries.push(Complex64::new(j.re[i][k], im));
            }
        }
        ComplexMatrix::from_rows(d, &entries)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { m: &self.m * &rhs.m }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { m: &self.m + &rhs.m }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { m: &self.m - &rhs.m }
    }
}
