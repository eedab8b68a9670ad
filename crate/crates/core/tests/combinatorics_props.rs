use catalan_core::combinatorics::{
    alpha, alpha_sequence, asymptotic_ratio, catalan, catalan_polynomial, quarter_weighted_row_sums, triangle_entry,
    triangle_row, TriangleKind,
};
use catalan_core::genfun::{bivariate_p, bivariate_q, catalan_gf, even_odd_gf};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = TriangleKind> {
    prop_oneof![Just(TriangleKind::B), Just(TriangleKind::A)]
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rows_satisfy_recurrence(kind in kind(), n in 2u64..200) {
        let prev = triangle_row(kind, n - 1).unwrap();
        let row = triangle_row(kind, n).unwrap();
        let at = |k: usize| if k >= 1 && k <= prev.len() { prev[k - 1].clone() } else { BigInt::zero() };
        for k in 2..=row.len() {
            prop_assert_eq!(&row[k - 1], &(at(k - 1) + at(k) * 2 + at(k + 1)));
        }
    }

    #[test]
    fn quarter_sums_match_rational_oracle(n in 1u64..60) {
        // direct rational sums over the rows
        let w = |row: &[BigInt], x: BigRational| {
            row.iter().enumerate().fold(BigRational::zero(), |acc, (i, v)| {
                acc + BigRational::from_integer(v.clone()) * num_traits::pow(x.clone(), i + 1)
            })
        };
        let q = BigRational::new(big(1), big(4));
        let rb = triangle_row(TriangleKind::B, n).unwrap();
        let ra = triangle_row(TriangleKind::A, n).unwrap();
        let four = |e: u64| BigRational::from_integer(num_traits::pow(big(4), e as usize));
        let s = quarter_weighted_row_sums(n).unwrap();
        prop_assert_eq!(BigRational::from_integer(s.a.unwrap()), four(n) * w(&rb, q.clone()));
        prop_assert_eq!(BigRational::from_integer(s.b), four(n + 1) * w(&ra, q.clone()));
        let sign = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        prop_assert_eq!(BigRational::from_integer(s.d.unwrap()), -(sign * four(n)) * w(&rb, -q.clone()));
        prop_assert_eq!(BigRational::from_integer(s.e), -four(n + 1) * w(&ra, -q));
    }

    #[test]
    fn quadratic_equation_on_closed_disk(r in 0.0f64..=0.25, theta in -3.1415926f64..3.1415926) {
        let z = Complex64::from_polar(r, theta);
        let c = catalan_gf(z).unwrap();
        prop_assert!((z * c * c - c + 1.0).norm() < 1e-12);
    }

    #[test]
    fn even_odd_split(r in 0.0f64..=0.25, theta in -3.1415926f64..3.1415926) {
        let z = Complex64::from_polar(r, theta);
        let (ce, co) = even_odd_gf(z).unwrap();
        let (me, mo) = even_odd_gf(-z).unwrap();
        prop_assert!((ce + co - catalan_gf(z).unwrap()).norm() < 1e-12);
        prop_assert!((me - ce).norm() < 1e-12 && (mo + co).norm() < 1e-12);
    }

    #[test]
    fn bivariate_q_is_p_times_one_plus_z(
        z in -0.9f64..0.9, w in -0.24f64..0.24, wi in -0.05f64..0.05,
    ) {
        let (z, w) = (Complex64::new(z, 0.0), Complex64::new(w, wi));
        if let (Ok(p), Ok(q)) = (bivariate_p(z, w), bivariate_q(z, w)) {
            prop_assert!((q - p * (z + 1.0)).norm() <= 1e-12 * q.norm().max(1.0));
        }
    }
}

#[test]
fn bivariate_p_matches_series() {
    // sum_n P_n(z) w^n with P_n = B-row n+1, for a point well inside the domain
    let (z, w) = (Complex64::new(0.3, 0.0), Complex64::new(0.1, 0.02));
    let mut sum = Complex64::zero();
    let mut wn = Complex64::one();
    for n in 0..200u64 {
        let row = triangle_row(TriangleKind::B, n + 1).unwrap();
        let mut v = Complex64::zero();
        for x in row.iter().rev() {
            v = v * z + x.to_string().parse::<f64>().unwrap();
        }
        sum += v * wn;
        wn *= w;
    }
    assert!((sum - bivariate_p(z, w).unwrap()).norm() < 1e-10);
}

#[test]
fn catalan_twenty() {
    assert_eq!(catalan(20), BigInt::from(6_564_120_420u64));
}

#[test]
fn printed_sixth_rows() {
    let ints = |v: &[i64]| v.iter().map(|&x| big(x)).collect::<Vec<_>>();
    assert_eq!(triangle_row(TriangleKind::B, 6).unwrap(), ints(&[132, 165, 110, 44, 10, 1]));
    assert_eq!(triangle_row(TriangleKind::A, 6).unwrap(), ints(&[132, 297, 275, 154, 54, 11, 1]));
    assert_eq!(triangle_entry(TriangleKind::B, 5, 3).unwrap(), big(27));
}

#[test]
fn alpha_head_and_quarter_values() {
    let ints = |v: &[i64]| v.iter().map(|&x| big(x)).collect::<Vec<_>>();
    assert_eq!(alpha_sequence(5), ints(&[1, 5, 24, 116, 560]));
    let minus_quarter = BigRational::new(big(-1), big(4));
    for k in 1..=50u64 {
        let v = catalan_polynomial(k as usize).eval_rational(&minus_quarter) * BigRational::from_integer(num_traits::pow(big(4), k as usize - 1));
        assert_eq!(v, BigRational::from_integer(alpha(k).unwrap()));
    }
}

#[test]
fn asymptotics_at_5000() {
    for kind in [TriangleKind::B, TriangleKind::A] {
        for k in 1..=3 {
            let r = asymptotic_ratio(kind, 5000, k).unwrap();
            assert!((r - 1.0).abs() < 2e-3, "{kind} k={k}: {r}");
        }
    }
}
