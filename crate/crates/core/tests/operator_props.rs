use catalan_core::operator_calculus::{
    catalan_operator, catalan_power, catalan_power_jordan, certify_power_bounded, phi_series, spectral_mapping_check,
    standard_corpus, ComplexMatrix, DEFAULT_SCAN, DEFAULT_TOL,
};
use catalan_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

// (1 - sqrt(1 - 4z)) / (2z) written as 2 / (1 + sqrt(1 - 4z))
fn scalar_c(z: Complex64) -> Complex64 {
    2.0 / (1.0 + (1.0 - 4.0 * z).sqrt())
}

/// Random `d x d` complex matrix rescaled to spectral norm `r`.
fn matrix(d: usize, r: f64) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |v| {
        let m = ComplexMatrix::from_rows(d, &v.iter().map(|&(a, b)| Complex64::new(a, b)).collect::<Vec<_>>()).unwrap();
        let n = m.norm().max(1e-3);
        m.scale(c(r / n))
    })
}

fn any_matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=4, 0.01f64..0.24).prop_flat_map(|(d, r)| matrix(d, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadratic_residual_and_commutation(t in any_matrix()) {
        let op = catalan_operator(&t, DEFAULT_TOL).unwrap();
        prop_assert!(op.residual < 10.0 * t.dim() as f64 * DEFAULT_TOL);
        prop_assert!((&op.value * &t).max_abs_diff(&(&t * &op.value)) < 1e-10);
    }

    #[test]
    fn inverse_and_composition(t in any_matrix(), j1 in -4i64..=4, j2 in -4i64..=4) {
        let id = ComplexMatrix::identity(t.dim());
        let p = |j| catalan_power(&t, j, DEFAULT_TOL).unwrap();
        prop_assert!((&p(-1) * &p(1)).max_abs_diff(&id) < 1e-8);
        prop_assert!((&p(j1) * &p(j2)).max_abs_diff(&p(j1 + j2)) < 1e-7);
    }

    #[test]
    fn column_series_is_matrix_power(t in any_matrix(), j in 1u64..=6) {
        let series = phi_series(&t, j, DEFAULT_TOL).unwrap().value;
        let direct = catalan_power(&t, 1, DEFAULT_TOL).unwrap().pow(j as u32);
        prop_assert!(series.max_abs_diff(&direct) < 1e-7);
    }

    #[test]
    fn spectral_mapping(t in any_matrix(), j in prop_oneof![-3i64..=-1, 1i64..=3]) {
        match spectral_mapping_check(&t, j) {
            Ok(r) => prop_assert!(r.max_distance < 1e-7, "{}", r.max_distance),
            Err(Error::IllConditioned(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn diagonal_matches_scalar(vals in prop::collection::vec((0.0f64..=0.25, -3.14f64..3.14), 1..5)) {
        let z: Vec<Complex64> = vals.iter().map(|&(r, th)| Complex64::from_polar(r, th)).collect();
        let t = ComplexMatrix::diag(&z).unwrap();
        let v = catalan_power(&t, 1, DEFAULT_TOL).unwrap();
        for (i, &zi) in z.iter().enumerate() {
            prop_assert!((v.get(i, i) - scalar_c(zi)).norm() < 1e-8);
        }
    }
}

#[test]
fn quarter_diagonal_values() {
    let t = ComplexMatrix::diag(&[c(0.25), c(-0.25)]).unwrap();
    let v = catalan_power(&t, 1, DEFAULT_TOL).unwrap();
    assert!((v.get(0, 0) - c(2.0)).norm() < 1e-10);
    assert!((v.get(1, 1) - c(2.0 * (2f64.sqrt() - 1.0))).norm() < 1e-10);
    let inv = catalan_power(&t, -1, DEFAULT_TOL).unwrap();
    assert!((inv.get(0, 0) - c(0.5)).norm() < 1e-10);
    assert!((inv.get(1, 1) - c(1.0 / (2.0 * (2f64.sqrt() - 1.0)))).norm() < 1e-10);
}

#[test]
fn jordan_block_closed_form() {
    let (l, mu) = (c(0.125), c(1.0));
    let t = ComplexMatrix::from_rows(2, &[l, mu, c(0.0), l]).unwrap();
    // corner of f(T) for a 2x2 Jordan block is mu f'(lambda), with f = C^j
    let h = 1e-6;
    for j in -3..=3i64 {
        let fd = (scalar_c(l + h).powi(j as i32) - scalar_c(l - h).powi(j as i32)) / (2.0 * h);
        let closed = catalan_power_jordan(l, mu, j).unwrap();
        assert!((closed.get(0, 1) - mu * fd).norm() < 1e-6, "j = {j}");
        assert!(closed.max_abs_diff(&catalan_power(&t, j, DEFAULT_TOL).unwrap()) < 1e-8, "j = {j}");
    }
}

#[test]
fn corpus_is_certified() {
    for (name, t) in standard_corpus() {
        let cert = certify_power_bounded(&t, DEFAULT_SCAN).unwrap_or_else(|e| panic!("{name}: {e}"));
        let s = t.scale(c(4.0));
        for n in 0..64u32 {
            assert!(s.pow(n).norm() <= cert.power_bound(n as usize) * (1.0 + 1e-9), "{name}, n = {n}");
        }
    }
}

#[test]
fn outside_quarter_disk_rejected() {
    let t = ComplexMatrix::diag(&[c(0.3)]).unwrap();
    assert!(matches!(catalan_operator(&t, DEFAULT_TOL), Err(Error::Divergence(_))));
    let boundary_jordan = ComplexMatrix::from_real_rows(&[&[0.25, 1.0], &[0.0, 0.25]]).unwrap();
    assert!(matches!(catalan_operator(&boundary_jordan, DEFAULT_TOL), Err(Error::NotCertified(_))));
}

#[test]
fn json_round_trip_of_result() {
    let t = ComplexMatrix::from_real_rows(&[&[0.0, 0.2], &[0.2, 0.0]]).unwrap();
    let v = catalan_power(&t, 3, DEFAULT_TOL).unwrap();
    assert_eq!(ComplexMatrix::from_json(&v.to_json().unwrap()).unwrap(), v);
}
