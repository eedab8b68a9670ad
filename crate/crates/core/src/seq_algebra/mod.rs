//! The weighted convolution algebra `l1(N0, 1/4^n)` on truncated sequences.
//!
//! Every element carries a fixed truncation `N` and stores `a(0) ..= a(N)`.
//! Convolution is causal, so the first `N + 1` entries of a product are exact.
//! Infinite sums (norms, Z-transforms) are reported together with a tail bound
//! whenever the sequence carries an entry estimate of the form
//! `|a(n)| / 4^n <= K n^{-3/2}`.

mod abel;
mod spectrum;

pub use abel::{abel_sums, abel_sums_with, AbelIdentity, AbelReport, DEFAULT_ABEL_TERMS};
pub use spectrum::{boundary_point, spectrum_boundary, SpectrumCurve};

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{catalan_numbers, catalan_polynomial, triangle_entry, IntPolynomial, TriangleKind};
use crate::error::{Error, Result};
use crate::genfun::DiskGuard;
use crate::numeric::{big_to_f64_scaled, ldexp, rational_to_f64, CompensatedSum};

/// Entry type of a [`WeightedSeq`]: exact integers, exact rationals or complex doubles.
pub trait Scalar: Clone + fmt::Debug + PartialEq + Zero + One + Send + Sync {
    /// `acc += a * b`.
    fn mul_add(acc: &mut Self, a: &Self, b: &Self);
    fn from_bigint(v: &BigInt) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    /// `|x| / 2^shift` as a double.
    fn abs_scaled(&self, shift: u64) -> f64;
    /// `x / 2^shift` as a complex double.
    fn complex_scaled(&self, shift: u64) -> Complex64;
    /// `|x|` as an exact rational, when the scalar is exact.
    fn abs_exact(&self) -> Option<BigRational>;
}

impl Scalar for BigInt {
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn abs_scaled(&self, shift: u64) -> f64 {
        big_to_f64_scaled(self, shift).abs()
    }
    fn complex_scaled(&self, shift: u64) -> Complex64 {
        Complex64::new(big_to_f64_scaled(self, shift), 0.0)
    }
    fn abs_exact(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(self.abs()))
    }
}

impl Scalar for BigRational {
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn abs_scaled(&self, shift: u64) -> f64 {
        ldexp(rational_to_f64(self), -(shift as i64)).abs()
    }
    fn complex_scaled(&self, shift: u64) -> Complex64 {
        Complex64::new(ldexp(rational_to_f64(self), -(shift as i64)), 0.0)
    }
    fn abs_exact(&self) -> Option<BigRational> {
        Some(self.abs())
    }
}

impl Scalar for Complex64 {
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }
    fn from_bigint(v: &BigInt) -> Self {
        Complex64::new(big_to_f64_scaled(v, 0), 0.0)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn abs_scaled(&self, shift: u64) -> f64 {
        ldexp(self.norm(), -(shift as i64))
    }
    fn complex_scaled(&self, shift: u64) -> Complex64 {
        let s = ldexp(1.0, -(shift as i64));
        self * s
    }
    fn abs_exact(&self) -> Option<BigRational> {
        None
    }
}

/// Entry estimate `|a(n)| / 4^n <= constant * n^{-3/2}` for all `n >= valid_from`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub constant: f64,
    pub valid_from: usize,
}

impl TailEstimate {
    /// Bound on `sum_{n > N} |a(n)| / 4^n`, using `sum_{n > N} n^{-3/2} <= 2 / sqrt(N)`.
    pub fn bound_after(&self, n: usize) -> Option<f64> {
        if n + 1 < self.valid_from || n == 0 {
            return None;
        }
        Some(2.0 * self.constant / (n as f64).sqrt())
    }
}

/// A truncated element of the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSeq<S> {
    entries: Vec<S>,
    tail: Option<TailEstimate>,
}

pub type ExactSeq = WeightedSeq<BigInt>;
pub type RationalSeq = WeightedSeq<BigRational>;
pub type ComplexSeq = WeightedSeq<Complex64>;

impl<S: Scalar> WeightedSeq<S> {
    /// Builds a sequence from `a(0) ..= a(N)`; the slice must be nonempty.
    pub fn new(entries: Vec<S>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::IndexOutOfRange("a sequence needs at least one entry".into()));
        }
        Ok(Self { entries, tail: None })
    }

    pub fn with_tail(mut self, tail: TailEstimate) -> Self {
        self.tail = Some(tail);
        self
    }

    pub fn zero(n: usize) -> Self {
        Self { entries: vec![S::zero(); n + 1], tail: None }
    }

    /// Coefficients of an integer polynomial, as a sequence truncated at `n`.
    pub fn from_polynomial(p: &IntPolynomial, n: usize) -> Self {
        let mut out = Self::zero(n);
        for (j, c) in p.coeffs().iter().enumerate().take(n + 1) {
            out.entries[j] = S::from_bigint(c);
        }
        out
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn tail(&self) -> Option<TailEstimate> {
        self.tail
    }

    /// The truncation index `N`.
    pub fn truncation(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&S> {
        self.entries.get(n)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub_ref(b)).collect();
        Ok(Self { entries, tail: None })
    }

    /// Same entries, truncated at a smaller `N`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.truncation() {
            return Err(Error::IndexOutOfRange(format!(
                "cannot extend truncation {} to {n}",
                self.truncation()
            )));
        }
        Ok(Self { entries: self.entries[..=n].to_vec(), tail: self.tail })
    }
}

impl ExactSeq {
    pub fn to_rational(&self) -> RationalSeq {
        WeightedSeq {
            entries: self.entries.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
            tail: self.tail,
        }
    }

    /// Complex double entries; only meaningful while the entries fit in an `f64`.
    pub fn to_complex(&self) -> ComplexSeq {
        WeightedSeq {
            entries: self.entries.iter().map(Complex64::from_bigint).collect(),
            tail: self.tail,
        }
    }
}

fn check_same<S>(a: &WeightedSeq<S>, b: &WeightedSeq<S>) -> Result<()> {
    if a.entries.len() != b.entries.len() {
        return Err(Error::TruncationMismatch { left: a.entries.len() - 1, right: b.entries.len() - 1 });
    }
    Ok(())
}

/// The basis element `delta_j` truncated at `n`.
pub fn delta<S: Scalar>(j: usize, n: usize) -> Result<WeightedSeq<S>> {
    if j > n {
        return Err(Error::IndexOutOfRange(format!("delta_{j} with truncation {n}")));
    }
    let mut out = WeightedSeq::zero(n);
    out.entries[j] = S::one();
    Ok(out)
}

/// Cauchy product `(a * b)(n) = sum_j a(n - j) b(j)` on the common truncation.
///
/// Zero entries of either factor are skipped, so products with sparse
/// (polynomial) elements cost only as much as their support.
pub fn convolve<S: Scalar>(a: &WeightedSeq<S>, b: &WeightedSeq<S>) -> Result<WeightedSeq<S>> {
    check_same(a, b)?;
    let n = a.truncation();
    let (sparse, dense) = if support(a).len() <= support(b).len() { (a, b) } else { (b, a) };
    let mut out = WeightedSeq::zero(n);
    for i in support(sparse) {
        let x = &sparse.entries[i];
        for (j, y) in dense.entries[..=n - i].iter().enumerate() {
            if !y.is_zero() {
                S::mul_add(&mut out.entries[i + j], x, y);
            }
        }
    }
    Ok(out)
}

fn support<S: Scalar>(a: &WeightedSeq<S>) -> Vec<usize> {
    a.entries.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

/// Result of a weighted-norm evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    /// `sum_{n <= N} |a(n)| / 4^n`.
    pub value: f64,
    /// The same sum as an exact rational, for exact scalars.
    pub exact: Option<BigRational>,
    /// Bound on the omitted `sum_{n > N} |a(n)| / 4^n`, when the sequence carries a tail estimate.
    pub tail_bound: Option<f64>,
}

/// Truncated weighted norm `sum_{n <= N} |a(n)| / 4^n`.
pub fn weighted_norm<S: Scalar>(a: &WeightedSeq<S>) -> NormReport {
    let n = a.truncation();
    let exact = exact_norm(a);
    let value = match &exact {
        Some(q) => rational_to_f64(q),
        None => {
            let mut acc = CompensatedSum::default();
            for (i, x) in a.entries.iter().enumerate() {
                acc.add(x.abs_scaled(2 * i as u64));
            }
            acc.value()
        }
    };
    NormReport { value, exact, tail_bound: a.tail.and_then(|t| t.bound_after(n)) }
}

fn exact_norm<S: Scalar>(a: &WeightedSeq<S>) -> Option<BigRational> {
    // Horner in 4: acc = sum_n |a(n)| 4^(N - n), then one division by 4^N.
    // Integer entries stay in BigInt so that no gcd is taken per step.
    let scale = BigInt::one() << (2 * a.truncation());
    let mut int_acc = BigInt::zero();
    let mut i = 0;
    while i < a.entries.len() {
        let x = a.entries[i].abs_exact()?;
        if !x.is_integer() {
            break;
        }
        int_acc = (int_acc << 2) + x.to_integer();
        i += 1;
    }
    let four = BigRational::from_integer(BigInt::from(4));
    let mut acc = BigRational::from_integer(int_acc);
    for x in &a.entries[i..] {
        acc = acc * &four + x.abs_exact()?;
    }
    Some(acc / BigRational::from_integer(scale))
}

/// The Catalan sequence `c = (C_n)` truncated at `n`, with `C_n / 4^n <= 1 / (sqrt(pi) n^{3/2})`.
pub fn catalan_seq(n: usize) -> ExactSeq {
    WeightedSeq { entries: catalan_numbers(n), tail: Some(TailEstimate { constant: inv_sqrt_pi(), valid_from: 1 }) }
}

fn inv_sqrt_pi() -> f64 {
    1.0 / std::f64::consts::PI.sqrt()
}

/// Which column family of [`triangle_seq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnFamily {
    /// `a_k(n) = A_{n+k-1,k}`, with Z-transform `C(z)^{2k-1}`.
    A,
    /// `b_k(n) = B_{n+k,k}`, with Z-transform `C(z)^{2k}`.
    B,
}

/// Column sequences of the two triangles: `a_k(n) = A_{n+k-1,k}` or `b_k(n) = B_{n+k,k}`.
pub fn triangle_seq(family: ColumnFamily, k: u64, n: usize) -> Result<ExactSeq> {
    if k == 0 {
        return Err(Error::IndexOutOfRange("column index k must be >= 1".into()));
    }
    let kf = k as f64;
    let mut entries = Vec::with_capacity(n + 1);
    let tail = match family {
        ColumnFamily::B => {
            // B_{m+1,k} = B_{m,k} 2m(2m+1) / ((m+1-k)(m+1+k))
            let mut x = triangle_entry(TriangleKind::B, k, k)?;
            for i in 0..=n as u64 {
                if i > 0 {
                    let m = i - 1 + k;
                    x = x * BigInt::from(2 * m) * BigInt::from(2 * m + 1);
                    x /= BigInt::from(m + 1 - k) * BigInt::from(m + 1 + k);
                }
                entries.push(x.clone());
            }
            TailEstimate { constant: 4f64.powf(kf) * kf * inv_sqrt_pi(), valid_from: 1 }
        }
        ColumnFamily::A => {
            // A_{m+1,k} = A_{m,k} 2(m+1)(2m+1) / ((m+2-k)(m+1+k))
            let mut x = triangle_entry(TriangleKind::A, k - 1, k)?;
            for i in 0..=n as u64 {
                if i > 0 {
                    let m = i - 1 + k - 1;
                    x = x * BigInt::from(2 * (m + 1)) * BigInt::from(2 * m + 1);
                    x /= BigInt::from(m + 2 - k) * BigInt::from(m + 1 + k);
                }
                entries.push(x.clone());
            }
            TailEstimate { constant: 4f64.powf(kf - 1.0) * (2.0 * kf - 1.0) * inv_sqrt_pi(), valid_from: 1 }
        }
    };
    Ok(WeightedSeq { entries, tail: Some(tail) })
}

/// Convolution power `a^{*m}` with `a^{*0} = delta_0` and `a^{*m} = a * a^{*(m-1)}`.
pub fn seq_power<S: Scalar>(a: &WeightedSeq<S>, m: u64) -> WeightedSeq<S> {
    let n = a.truncation();
    let mut result: WeightedSeq<S> = delta(0, n).expect("delta_0 always fits");
    let mut base = a.clone();
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = convolve(&result, &base).expect("same truncation");
        }
        e >>= 1;
        if e > 0 {
            base = convolve(&base, &base).expect("same truncation");
        }
    }
    if m == 1 {
        result.tail = a.tail;
    }
    result
}

/// Convolution inverse of `c^{*k}`:
/// `(c^{*k})^{-1} = P_k(delta_1) - delta_1 * c * P_{k-1}(delta_1)`,
/// where `P_j(delta_1)` substitutes `delta_1` into the Catalan polynomial.
///
/// For `k = 1` this is `delta_0 - delta_1 * c`, for `k = 2` it is
/// `delta_0 - delta_1 - delta_1 * c`.
pub fn catalan_inverse_power(k: u64, n: usize) -> Result<ExactSeq> {
    if k == 0 {
        return Err(Error::InvalidPower("the inverse formula needs k >= 1".into()));
    }
    let pk = catalan_polynomial(k as usize);
    let pk1 = catalan_polynomial(k as usize - 1);
    let head: ExactSeq = WeightedSeq::from_polynomial(&pk, n);
    let mut tail_part = convolve(&catalan_seq(n), &WeightedSeq::from_polynomial(&pk1, n))?;
    // multiply by delta_1: shift right by one
    tail_part.entries.rotate_right(1);
    tail_part.entries[0] = BigInt::zero();
    let mut out = head.sub(&tail_part)?;

    // For n past both degrees, |x(n)| / 4^n <= ||P_{k-1}(delta_1)|| 2^{3/2} / (4 sqrt(pi)) n^{-3/2}.
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let p_norm = rational_to_f64(&pk1.abs_weighted(&quarter));
    let deg_k = pk.degree().unwrap_or(0);
    let deg_k1 = pk1.degree().unwrap_or(0);
    out.tail = Some(TailEstimate {
        constant: p_norm * 2f64.powf(1.5) / 4.0 * inv_sqrt_pi(),
        valid_from: (2 * (deg_k1 + 1)).max(deg_k + 1).max(2),
    });
    Ok(out)
}

/// Upper bound `||P_k(delta_1)|| + ||P_{k-1}(delta_1)|| / 2` on the weighted norm of
/// `(c^{*k})^{-1}`. The Catalan polynomials alternate in sign, so
/// `||P_j(delta_1)|| = P_j(-1/4)`; for `k >= 2` the bound equals
/// `(alpha_k + 2 alpha_{k-1}) / 4^{k-1}`.
pub fn inverse_norm_bound(k: u64) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidPower("the inverse formula needs k >= 1".into()));
    }
    let minus_quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
    let pk = catalan_polynomial(k as usize).eval_rational(&minus_quarter);
    let pk1 = catalan_polynomial(k as usize - 1).eval_rational(&minus_quarter);
    Ok(pk + pk1 / BigRational::from_integer(BigInt::from(2)))
}

/// Value of a Z-transform together with a bound on the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZValue {
    pub value: Complex64,
    /// Bound on `|sum_{n > N} a(n) z^n|`, from the norm tail, when known.
    pub tail_bound: Option<f64>,
}

/// Truncated Z-transform `sum_{n <= N} a(n) z^n` for `|z| <= 1/4`.
///
/// Terms are formed as `(a(n) / 4^n) (4z)^n`, so exact entries far beyond the
/// range of `f64` are handled without overflow.
pub fn z_transform<S: Scalar>(a: &WeightedSeq<S>, z: Complex64) -> Result<ZValue> {
    DiskGuard::CLOSED.check("z", z)?;
    let w = 4.0 * z;
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    let mut pow = Complex64::one();
    for (i, x) in a.entries.iter().enumerate() {
        let t = x.complex_scaled(2 * i as u64) * pow;
        re.add(t.re);
        im.add(t.im);
        pow *= w;
    }
    Ok(ZValue {
        value: Complex64::new(re.value(), im.value()),
        tail_bound: a.tail.and_then(|t| t.bound_after(a.truncation())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::catalan_gf;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn delta_basics() {
        let d: ExactSeq = delta(2, 4).unwrap();
        assert_eq!(d.entries(), ints(&[0, 0, 1, 0, 0]).as_slice());
        assert!(delta::<BigInt>(5, 4).is_err());
        let d1: ExactSeq = delta(1, 6).unwrap();
        assert_eq!(seq_power(&d1, 4), delta(4, 6).unwrap());
    }

    #[test]
    fn convolve_mismatch() {
        let a: ExactSeq = delta(0, 3).unwrap();
        let b: ExactSeq = delta(0, 4).unwrap();
        assert!(matches!(convolve(&a, &b), Err(Error::TruncationMismatch { left: 3, right: 4 })));
    }

    #[test]
    fn catalan_square_is_shift() {
        let c = catalan_seq(20);
        let c2 = convolve(&c, &c).unwrap();
        for n in 0..20 {
            assert_eq!(c2.entries()[n], c.entries()[n + 1]);
        }
    }

    #[test]
    fn column_sequences() {
        let b2 = triangle_seq(ColumnFamily::B, 2, 3).unwrap();
        assert_eq!(b2.entries(), ints(&[1, 4, 14, 48]).as_slice());
        let a2 = triangle_seq(ColumnFamily::A, 2, 3).unwrap();
        assert_eq!(a2.entries(), ints(&[1, 3, 9, 28]).as_slice());
        let a1 = triangle_seq(ColumnFamily::A, 1, 10).unwrap();
        assert_eq!(a1.entries(), catalan_seq(10).entries());
        let b1 = triangle_seq(ColumnFamily::B, 1, 10).unwrap();
        assert_eq!(b1.entries(), &catalan_seq(11).entries()[1..]);
        for k in 1..5u64 {
            for (i, x) in triangle_seq(ColumnFamily::B, k, 30).unwrap().entries().iter().enumerate() {
                assert_eq!(x, &triangle_entry(TriangleKind::B, i as u64 + k, k).unwrap());
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let inv1 = catalan_inverse_power(1, 5).unwrap();
        assert_eq!(inv1.entries(), ints(&[1, -1, -1, -2, -5, -14]).as_slice());
        let inv2 = catalan_inverse_power(2, 5).unwrap();
        assert_eq!(inv2.entries(), ints(&[1, -2, -1, -2, -5, -14]).as_slice());
        assert!(catalan_inverse_power(0, 5).is_err());
    }

    #[test]
    fn norms() {
        let d: ExactSeq = delta(3, 5).unwrap();
        let r = weighted_norm(&d);
        assert_eq!(r.exact.unwrap(), BigRational::new(BigInt::one(), BigInt::from(64)));
        let inv1 = weighted_norm(&catalan_inverse_power(1, 400).unwrap());
        assert!(inv1.value <= 1.5 && inv1.value + inv1.tail_bound.unwrap() >= 1.5);
        let half = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(inverse_norm_bound(1).unwrap(), half);
        assert_eq!(inverse_norm_bound(2).unwrap(), BigRational::new(BigInt::from(7), BigInt::from(4)));
    }

    #[test]
    fn z_transform_values() {
        let c = catalan_seq(2000);
        let z = z_transform(&c, Complex64::new(0.25, 0.0)).unwrap();
        assert!((z.value.re - 2.0).abs() <= z.tail_bound.unwrap());
        let d: ExactSeq = delta(3, 8).unwrap();
        let w = Complex64::new(0.1, -0.2);
        assert!((z_transform(&d, w).unwrap().value - w.powi(3)).norm() < 1e-16);
        let b1 = triangle_seq(ColumnFamily::B, 1, 400).unwrap();
        let c02 = catalan_gf(Complex64::new(0.2, 0.0)).unwrap();
        assert!((z_transform(&b1, Complex64::new(0.2, 0.0)).unwrap().value - c02 * c02).norm() < 1e-12);
        assert!(z_transform(&c, Complex64::new(0.3, 0.0)).is_err());
    }

    #[test]
    fn complex_variant_matches_exact() {
        let c = catalan_seq(40);
        let cc = c.to_complex();
        let exact = weighted_norm(&convolve(&c, &c).unwrap()).value;
        let float = weighted_norm(&convolve(&cc, &cc).unwrap()).value;
        assert!((exact - float).abs() < 1e-13);
    }
}
