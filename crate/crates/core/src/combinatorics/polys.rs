//! Row polynomials of the triangles and the Catalan polynomials.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{binomial, triangle_row, IntPolynomial, TriangleKind};
use crate::error::{Error, Result};

/// `P_n(z) = sum_j B(n+1, j+1) z^j`, i.e. B-triangle row `n+1` as coefficients.
pub fn row_polynomial_p(n: u64) -> IntPolynomial {
    IntPolynomial::new(triangle_row(TriangleKind::B, n + 1).expect("row n+1 >= 1 exists"))
}

/// `Q_n(z) = sum_j A(n+1, j+1) z^j`, i.e. A-triangle row `n+1` as coefficients.
pub fn row_polynomial_q(n: u64) -> IntPolynomial {
    IntPolynomial::new(triangle_row(TriangleKind::A, n + 1).expect("row n+1 >= 0 exists"))
}

/// Catalan polynomials `P_0 ..= P_{k_max}` from `P_0 = P_1 = 1`,
/// `P_{k+2} = P_{k+1} - z P_k`.
pub fn catalan_polynomials(k_max: usize) -> Vec<IntPolynomial> {
    let mut out = vec![IntPolynomial::constant(1)];
    if k_max >= 1 {
        out.push(IntPolynomial::constant(1));
    }
    for k in 2..=k_max {
        let next = &out[k - 1] - &out[k - 2].shift(1);
        out.push(next);
    }
    out
}

/// The Catalan polynomial `P_k`.
pub fn catalan_polynomial(k: usize) -> IntPolynomial {
    catalan_polynomials(k).pop().expect("nonempty")
}

/// Closed form `((1+s)^(k+1) - (1-s)^(k+1)) / (2^(k+1) s)` with `s^2 = 1 - 4z`,
/// evaluated exactly: only even powers of `s` survive, so the binomial
/// expansion `2^-k sum_{i odd} binom(k+1, i) (1-4z)^((i-1)/2)` is rational.
pub fn catalan_polynomial_closed_form(k: u64, z: &BigRational) -> BigRational {
    let disc = BigRational::one() - BigRational::from_integer(BigInt::from(4)) * z;
    let mut pow = BigRational::one();
    let mut acc = BigRational::zero();
    let mut i = 1;
    while i <= k + 1 {
        acc += BigRational::from_integer(binomial(k + 1, i)) * &pow;
        pow *= &disc;
        i += 2;
    }
    acc / BigRational::from_integer(BigInt::from(2).pow(k as u32))
}

/// The same closed form in complex floating point, using the principal square root.
pub fn catalan_polynomial_closed_form_complex(k: u64, z: Complex64) -> Complex64 {
    let s = (Complex64::one() - 4.0 * z).sqrt();
    let m = k as i32 + 1;
    if s.norm() < 1e-6 {
        // removable singularity at z = 1/4: use the even-power expansion
        let disc = s * s;
        let mut pow = Complex64::one();
        let mut acc = Complex64::zero();
        let mut i = 1u64;
        while i <= k + 1 {
            acc += binomial_f64(k + 1, i) * pow;
            pow *= disc;
            i += 2;
        }
        return acc / 2f64.powi(k as i32);
    }
    ((1.0 + s).powi(m) - (1.0 - s).powi(m)) / (2f64.powi(m) * s)
}

fn binomial_f64(n: u64, k: u64) -> f64 {
    use num_traits::ToPrimitive;
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// `alpha_1 = 1`, `alpha_2 = 5`, `alpha_k = 4 (alpha_{k-1} + alpha_{k-2})`.
pub fn alpha(k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::IndexOutOfRange("alpha is indexed from 1".into()));
    }
    Ok(alpha_sequence(k as usize).pop().expect("nonempty"))
}

/// `alpha_1 ..= alpha_{k_max}`.
pub fn alpha_sequence(k_max: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let next = match k {
            0 => BigInt::one(),
            1 => BigInt::from(5),
            _ => (&out[k - 1] + &out[k - 2]) * 4,
        };
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn row_polynomials_from_tables() {
        assert_eq!(row_polynomial_p(0), IntPolynomial::from_i64(&[1]));
        assert_eq!(row_polynomial_p(2), IntPolynomial::from_i64(&[5, 4, 1]));
        assert_eq!(row_polynomial_p(3), IntPolynomial::from_i64(&[14, 14, 6, 1]));
        assert_eq!(row_polynomial_q(0), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(row_polynomial_q(1), IntPolynomial::from_i64(&[2, 3, 1]));
        assert_eq!(row_polynomial_q(2), IntPolynomial::from_i64(&[5, 9, 5, 1]));
        assert_eq!(row_polynomial_q(3), IntPolynomial::from_i64(&[14, 28, 20, 7, 1]));
    }

    #[test]
    fn catalan_polynomials_small() {
        assert_eq!(catalan_polynomial(0), IntPolynomial::from_i64(&[1]));
        assert_eq!(catalan_polynomial(1), IntPolynomial::from_i64(&[1]));
        assert_eq!(catalan_polynomial(2), IntPolynomial::from_i64(&[1, -1]));
        assert_eq!(catalan_polynomial(3), IntPolynomial::from_i64(&[1, -2]));
        assert_eq!(catalan_polynomial(4), IntPolynomial::from_i64(&[1, -3, 1]));
        // two more recurrence steps by hand: P5 = 1 - 4z + 3z^2, P6 = P5 - z P4
        assert_eq!(catalan_polynomial(5), IntPolynomial::from_i64(&[1, -4, 3]));
        assert_eq!(catalan_polynomial(6), IntPolynomial::from_i64(&[1, -5, 6, -1]));
    }

    #[test]
    fn sign_alternation() {
        for (k, p) in catalan_polynomials(100).iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                let ok = c.is_zero() || (c.is_positive() == (j % 2 == 0));
                assert!(ok, "P_{k} coefficient {j} = {c}");
            }
        }
    }

    #[test]
    fn closed_form_at_quarter() {
        // s = 0: P_k(1/4) = (k+1) / 2^k
        let q = BigRational::new(BigInt::one(), BigInt::from(4));
        for k in 0..20u64 {
            let expect = BigRational::new(BigInt::from(k + 1), BigInt::from(2).pow(k as u32));
            assert_eq!(catalan_polynomial_closed_form(k, &q), expect);
        }
    }

    #[test]
    fn complex_closed_form_agrees() {
        let ps = catalan_polynomials(30);
        for z in [Complex64::new(0.1, 0.05), Complex64::new(-0.3, 0.2), Complex64::new(0.25, 0.0)] {
            for (k, p) in ps.iter().enumerate() {
                let a = p.eval_complex(z);
                let b = catalan_polynomial_closed_form_complex(k as u64, z);
                assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()), "k={k} z={z}");
            }
        }
    }

    #[test]
    fn alpha_values() {
        let a: Vec<i64> = alpha_sequence(5).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(a, vec![1, 5, 24, 116, 560]);
        assert_eq!(alpha(3).unwrap(), BigInt::from(24));
        assert!(alpha(0).is_err());
    }
}
