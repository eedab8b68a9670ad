//! Schur-based spectral tools: eigenvalues, eigenvector conditioning,
//! Schur–Parlett evaluation of scalar functions, and multiset matching.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{spectral_norm, ComplexMatrix};
use crate::error::{Error, Result};

/// Complex Schur form `A = Q U Q^*` with `U` upper triangular.
pub(crate) struct SchurForm {
    pub q: DMatrix<Complex64>,
    pub u: DMatrix<Complex64>,
}

pub(crate) fn schur(a: &ComplexMatrix) -> Result<SchurForm> {
    let d = a.dim();
    if d == 1 {
        return Ok(SchurForm { q: DMatrix::identity(1, 1), u: a.as_dmatrix().clone() });
    }
    let s = nalgebra::linalg::Schur::try_new(a.as_dmatrix().clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NonConvergence("Schur decomposition did not converge".into()))?;
    let (q, u) = s.unpack();
    Ok(SchurForm { q, u })
}

pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let s = schur(a)?;
    Ok((0..a.dim()).map(|i| s.u[(i, i)]).collect())
}

/// Eigenvalues with a unit-column eigenvector matrix and its 2-norm condition number.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: DMatrix<Complex64>,
    /// `kappa(V) = ||V|| ||V^{-1}||`; infinite when the matrix is defective.
    pub condition: f64,
}

/// Eigenvectors by back substitution in the Schur factor.
///
/// A repeated eigenvalue whose Jordan chain is nontrivial makes the
/// substitution break down; the decomposition is then reported with an
/// infinite condition number.
pub fn eigen_decomposition(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    let d = a.dim();
    let SchurForm { q, u } = schur(a)?;
    let scale = spectral_norm(&u).max(f64::MIN_POSITIVE);
    let tiny = 1e3 * f64::EPSILON * scale;
    let mut x = DMatrix::<Complex64>::zeros(d, d);
    let mut defective = false;
    for i in 0..d {
        let lambda = u[(i, i)];
        x[(i, i)] = Complex64::new(1.0, 0.0);
        for j in (0..i).rev() {
            let mut num = Complex64::new(0.0, 0.0);
            for l in j + 1..=i {
                num += u[(j, l)] * x[(l, i)];
            }
            let den = u[(j, j)] - lambda;
            if den.norm() <= tiny {
                if num.norm() <= tiny {
                    x[(j, i)] = Complex64::new(0.0, 0.0);
                } else {
                    defective = true;
                }
            } else {
                x[(j, i)] = -num / den;
            }
        }
    }
    let mut v = &q * &x;
    for mut col in v.column_iter_mut() {
        let n = col.norm();
        if n > 0.0 {
            col /= Complex64::new(n, 0.0);
        }
    }
    let condition = if defective {
        f64::INFINITY
    } else {
        let sv = v.clone().svd(false, false).singular_values;
        let lo = sv.min();
        if lo == 0.0 {
            f64::INFINITY
        } else {
            sv.max() / lo
        }
    };
    let values = (0..d).map(|i| u[(i, i)]).collect();
    Ok(EigenDecomposition { values, vectors: v, condition })
}

/// `f(A)` by the Schur–Parlett recurrence.
///
/// `f` is evaluated on the eigenvalues; for a pair of (numerically) equal
/// eigenvalues at adjacent positions of the Schur factor the divided
/// difference is replaced by `df`. Longer chains of coincident eigenvalues
/// with nonzero coupling are rejected.
pub fn schur_parlett(
    a: &ComplexMatrix,
    f: &dyn Fn(Complex64) -> Result<Complex64>,
    df: &dyn Fn(Complex64) -> Result<Complex64>,
) -> Result<ComplexMatrix> {
    let d = a.dim();
    let SchurForm { q, u } = schur(a)?;
    let scale = spectral_norm(&u).max(f64::MIN_POSITIVE);
    let tiny = 1e3 * f64::EPSILON * scale;
    let mut fm = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..d {
        fm[(i, i)] = f(u[(i, i)])?;
    }
    for gap in 1..d {
        for i in 0..d - gap {
            let j = i + gap;
            let mut sum = Complex64::new(0.0, 0.0);
            for k in i + 1..j {
                sum += u[(i, k)] * fm[(k, j)] - fm[(i, k)] * u[(k, j)];
            }
            let den = u[(j, j)] - u[(i, i)];
            fm[(i, j)] = if den.norm() > tiny {
                (u[(i, j)] * (fm[(j, j)] - fm[(i, i)]) + sum) / den
            } else if u[(i, j)].norm() <= tiny && sum.norm() <= tiny {
                Complex64::new(0.0, 0.0)
            } else if gap == 1 {
                u[(i, j)] * df(u[(i, i)])?
            } else {
                return Err(Error::Degenerate(
                    "coincident eigenvalues in a nontrivial Jordan chain longer than two".into(),
                ));
            };
        }
    }
    ComplexMatrix::from_dmatrix(&q * fm * q.adjoint())
}

/// Bottleneck distance between two equal-size multisets of complex numbers:
/// the smallest `r` such that a perfect matching pairs points at distance `<= r`.
pub fn bottleneck_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Internal(format!("multisets of sizes {} and {}", a.len(), b.len())));
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    let n = a.len();
    let dist: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let mut cands: Vec<f64> = dist.iter().flatten().copied().collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(n, &dist, cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cands[lo])
}

fn perfect_matching(n: usize, dist: &[Vec<f64>], r: f64) -> bool {
    fn augment(u: usize, dist: &[Vec<f64>], r: f64, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for v in 0..dist.len() {
            if dist[u][v] <= r && !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, dist, r, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; n];
    (0..n).all(|u| augment(u, dist, r, &mut vec![false; n], &mut owner))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_eigen() {
        let a = ComplexMatrix::diag(&[c(0.25, 0.0), c(-0.25, 0.0)]).unwrap();
        let e = eigen_decomposition(&a).unwrap();
        assert!((e.condition - 1.0).abs() < 1e-12);
        let mut v: Vec<f64> = e.values.iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        assert_eq!(v, vec![-0.25, 0.25]);
    }

    #[test]
    fn jordan_block_is_defective() {
        let a = ComplexMatrix::from_real_rows(&[&[0.125, 1.0], &[0.0, 0.125]]).unwrap();
        assert!(eigen_decomposition(&a).unwrap().condition.is_infinite());
        let z = ComplexMatrix::zeros(3);
        assert_eq!(eigen_decomposition(&z).unwrap().condition, 1.0);
    }

    #[test]
    fn nonnormal_condition() {
        let a = ComplexMatrix::from_real_rows(&[&[0.1, 1.0], &[0.0, -0.1]]).unwrap();
        let e = eigen_decomposition(&a).unwrap();
        // eigenvectors (1, 0) and (1, -0.2)/|.|: kappa = cot(theta/2) for the angle theta between them
        let theta = (0.2f64).atan();
        assert!((e.condition - 1.0 / (theta / 2.0).tan()).abs() < 1e-8 * e.condition);
    }

    #[test]
    fn parlett_exp_matches_series() {
        let a = ComplexMatrix::from_real_rows(&[&[0.1, 0.7, 0.0], &[0.0, -0.2, 0.3], &[0.2, 0.0, 0.05]]).unwrap();
        let e = schur_parlett(&a, &|z| Ok(z.exp()), &|z| Ok(z.exp())).unwrap();
        let mut term = ComplexMatrix::identity(3);
        let mut sum = ComplexMatrix::identity(3);
        for n in 1..40 {
            term = (&term * &a).scale(c(1.0 / n as f64, 0.0));
            sum = &sum + &term;
        }
        assert!(e.max_abs_diff(&sum) < 1e-13);
    }

    #[test]
    fn parlett_confluent_pair() {
        let a = ComplexMatrix::from_real_rows(&[&[0.125, 1.0], &[0.0, 0.125]]).unwrap();
        let sq = schur_parlett(&a, &|z| Ok(z * z), &|z| Ok(2.0 * z)).unwrap();
        assert!(sq.max_abs_diff(&(&a * &a)) < 1e-14);
    }

    #[test]
    fn matching() {
        let a = [c(0.0, 0.0), c(1.0, 0.0), c(5.0, 0.0)];
        let b = [c(5.1, 0.0), c(0.05, 0.0), c(1.0, 0.0)];
        assert!((bottleneck_distance(&a, &b).unwrap() - 0.1).abs() < 1e-12);
        assert!(bottleneck_distance(&a, &b[..2]).is_err());
    }
}
