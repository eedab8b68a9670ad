use catalan_core::genfun::catalan_gf;
use catalan_core::seq_algebra::{
    catalan_inverse_power, catalan_seq, convolve, inverse_norm_bound, seq_power, triangle_seq, weighted_norm,
    z_transform, ColumnFamily, RationalSeq, WeightedSeq,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

// Plain O(N^2) Cauchy product, kept separate from the library's sparse version.
fn naive_conv(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    (0..n).map(|m| (0..=m).map(|i| &a[i] * &b[m - i]).sum()).collect()
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn catalans(n: usize) -> Vec<BigInt> {
    // C_{m} = sum C_i C_{m-1-i}
    let mut c = vec![BigInt::one()];
    for m in 1..=n {
        let next = (0..m).map(|i| &c[i] * &c[m - 1 - i]).sum();
        c.push(next);
    }
    c
}

fn rational_seq() -> impl Strategy<Value = RationalSeq> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 65).prop_map(|v| {
        WeightedSeq::new(v.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_is_associative_and_commutative(a in rational_seq(), b in rational_seq(), c in rational_seq()) {
        let ab = convolve(&a, &b).unwrap();
        prop_assert_eq!(&ab, &convolve(&b, &a).unwrap());
        prop_assert_eq!(convolve(&ab, &c).unwrap(), convolve(&a, &convolve(&b, &c).unwrap()).unwrap());
    }

    #[test]
    fn weighted_norm_is_submultiplicative(a in rational_seq(), b in rational_seq()) {
        let na = weighted_norm(&a).exact.unwrap();
        let nb = weighted_norm(&b).exact.unwrap();
        let nab = weighted_norm(&convolve(&a, &b).unwrap()).exact.unwrap();
        prop_assert!(nab <= na * nb);
    }

    #[test]
    fn z_transform_is_multiplicative(r in 0.0f64..0.2499, theta in -3.14159f64..3.14159) {
        let z = Complex64::from_polar(r, theta);
        let n = 300;
        let c = catalan_seq(n).to_complex();
        let cc = triangle_seq(ColumnFamily::B, 1, n).unwrap().to_complex();
        let zc = z_transform(&c, z).unwrap();
        let zcc = z_transform(&cc, z).unwrap();
        let tol = zcc.tail_bound.unwrap() + 2.0 * zc.tail_bound.unwrap() * zc.value.norm() + zc.tail_bound.unwrap().powi(2) + 1e-12;
        prop_assert!((zcc.value - zc.value * zc.value).norm() <= tol);
        let exact = catalan_gf(z).unwrap();
        prop_assert!((zcc.value - exact * exact).norm() <= zcc.tail_bound.unwrap() + 1e-12);
    }

    #[test]
    fn finite_support_transform_exact(
        a in prop::collection::vec(-5.0f64..5.0, 10),
        b in prop::collection::vec(-5.0f64..5.0, 10),
        r in 0.0f64..0.25,
        theta in -3.0f64..3.0,
    ) {
        let pad = |v: &[f64]| {
            let mut e: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            e.resize(21, Complex64::zero());
            WeightedSeq::new(e).unwrap()
        };
        let (a, b) = (pad(&a), pad(&b));
        let z = Complex64::from_polar(r, theta);
        let lhs = z_transform(&convolve(&a, &b).unwrap(), z).unwrap().value;
        let rhs = z_transform(&a, z).unwrap().value * z_transform(&b, z).unwrap().value;
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }
}

#[test]
fn powers_are_triangle_columns() {
    let n = 128;
    let c = catalans(n);
    let mut power = c.clone(); // c^1
    for m in 1..=12u64 {
        if m > 1 {
            power = naive_conv(&power, &c);
        }
        // oracle: c^(2k-1)(i) = A_{i+k-1,k} and c^(2k)(i) = B_{i+k,k} by the binomial formulas
        let k = m.div_ceil(2);
        let expected: Vec<BigInt> = (0..=n as u64)
            .map(|i| {
                if m % 2 == 1 {
                    let row = i + k - 1;
                    BigInt::from(2 * k - 1) * binom(2 * row + 1, row + 1 - k) / (2 * row + 1)
                } else {
                    let row = i + k;
                    BigInt::from(k) * binom(2 * row, row - k) / row
                }
            })
            .collect();
        assert_eq!(power, expected, "c^{m}");
        let family = if m % 2 == 1 { ColumnFamily::A } else { ColumnFamily::B };
        assert_eq!(triangle_seq(family, k, n).unwrap().entries(), &expected[..], "column for c^{m}");
        assert_eq!(seq_power(&catalan_seq(n), m).entries(), &expected[..], "seq_power c^{m}");
    }
}

#[test]
fn column_heads_from_tables() {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    // b_1(n) = C_{n+1}, b_2 = 1, 4, 14, 48, a_1 = C_n
    assert_eq!(triangle_seq(ColumnFamily::B, 1, 4).unwrap().entries(), &ints(&[1, 2, 5, 14, 42])[..]);
    assert_eq!(triangle_seq(ColumnFamily::B, 2, 3).unwrap().entries(), &ints(&[1, 4, 14, 48])[..]);
    assert_eq!(triangle_seq(ColumnFamily::A, 1, 4).unwrap().entries(), &ints(&[1, 1, 2, 5, 14])[..]);
}

#[test]
fn inverse_formula_convolves_to_delta() {
    let n = 128;
    let c = catalans(n);
    let mut power = vec![BigInt::zero(); n + 1];
    power[0] = BigInt::one();
    for k in 1..=8u64 {
        power = naive_conv(&power, &c);
        let inv = catalan_inverse_power(k, n).unwrap();
        let prod = naive_conv(inv.entries(), &power);
        assert!(prod[0].is_one() && prod[1..].iter().all(Zero::is_zero), "k = {k}");
    }
}

#[test]
fn inverse_first_entries() {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert_eq!(catalan_inverse_power(1, 5).unwrap().entries(), &ints(&[1, -1, -1, -2, -5, -14])[..]);
    assert_eq!(catalan_inverse_power(2, 5).unwrap().entries(), &ints(&[1, -2, -1, -2, -5, -14])[..]);
}

#[test]
fn inverse_norms_respect_bound() {
    let n = 10_000;
    for k in 1..=8u64 {
        let inv = catalan_inverse_power(k, n).unwrap();
        let norm = weighted_norm(&inv);
        let bound = inverse_norm_bound(k).unwrap().to_f64().unwrap();
        assert!(norm.value <= bound + norm.tail_bound.unwrap(), "k = {k}: {} > {bound}", norm.value);
    }
}

#[test]
fn inverse_norm_of_c_squared_tends_to_seven_quarters() {
    // 1 + 2/4 + sum_{n >= 2} C_{n-1} / 4^n = 3/2 + (C(1/4) - 1) / 4
    let inv = catalan_inverse_power(2, 10_000).unwrap();
    let norm = weighted_norm(&inv);
    let tail = norm.tail_bound.unwrap();
    assert!(norm.value <= 1.75 && norm.value + tail >= 1.75);
    // the omitted part is about 1 / (2 sqrt(pi N)) = 2.8e-3
    let missing = 1.75 - norm.value;
    assert!((missing - 0.5 / (std::f64::consts::PI * 10_000.0).sqrt()).abs() < 1e-5, "{missing}");
}
