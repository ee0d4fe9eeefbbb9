use proptest::prelude::*;

use xilab::scattering::{nu_from_lambda, phase_shift_analytic, s_matrix};
use xilab::spectrum::{lambda_from_s, lambda_from_zero, s_from_lambda};
use xilab::xi::{chi_lambda_roundtrip, xi};
use xilab::zeros::{parse_zero_table, zero_table_csv};
use xilab::{Complex64, SpecFunConfig64, Zero};

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_is_symmetric_under_reflection(re in -5.0..5.0f64, im in -50.0..50.0f64) {
        let s = Complex64::new(re, im);
        prop_assert!(close(lambda_from_s(s), lambda_from_s(Complex64::new(1.0, 0.0) - s), 1e-14));
    }

    #[test]
    fn lambda_roots_round_trip(lambda in -1e4..1e4f64) {
        let (a, b) = s_from_lambda(lambda);
        prop_assert!((a + b - 1.0).norm() < 1e-12);
        for s in [a, b] {
            let back = lambda_from_s(s);
            prop_assert!((back.re - lambda).abs() <= 1e-12 * (1.0 + lambda.abs()));
            prop_assert!(back.im.abs() <= 1e-12 * (1.0 + lambda.abs()));
        }
    }

    #[test]
    fn critical_line_maps_below_quarter(t in 0.01..1e3f64) {
        let z = Zero { n: 1, t, bracket_lo: t - 1e-10, bracket_hi: t + 1e-10, residual: 0.0 };
        let c = lambda_from_zero(&z).unwrap();
        prop_assert!(c.lambda < -0.25);
        prop_assert!((s_from_lambda(c.lambda).0.im - t).abs() <= 1e-12 * (1.0 + t));
    }

    #[test]
    fn xi_respects_conjugation(re in -3.0..4.0f64, im in 0.5..30.0f64) {
        let cfg = SpecFunConfig64::default();
        let s = Complex64::new(re, im);
        prop_assert!(close(xi(s.conj(), &cfg), xi(s, &cfg).conj(), 1e-12));
    }

    #[test]
    fn chi_roundtrip_recovers_lambda(s in 1.0..50.0f64) {
        let exact = s * (s - 1.0);
        prop_assert!((chi_lambda_roundtrip(s).unwrap() - exact).abs() <= 1e-12 * (1.0 + exact));
    }

    #[test]
    fn s_matrix_is_unitary(lambda in 0.0..100.0f64) {
        let d = phase_shift_analytic(lambda).unwrap();
        prop_assert!((s_matrix(d).norm() - 1.0).abs() < 1e-14);
        prop_assert!(nu_from_lambda(lambda).unwrap() >= 0.5);
    }

    #[test]
    fn zero_table_csv_round_trips(ts in prop::collection::btree_set(1u32..1_000_000, 1..20)) {
        let zeros: Vec<Zero> = ts
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let t = k as f64 * 1e-3 + 0.123_456_789_012_345;
                Zero { n: i + 1, t, bracket_lo: t - 4e-10, bracket_hi: t + 4e-10, residual: 1e-15 * k as f64 }
            })
            .collect();
        let text = zero_table_csv(&zeros).unwrap();
        prop_assert_eq!(parse_zero_table::<f64>(&text).unwrap(), zeros);
    }
}

#[test]
fn single_precision_pipeline() {
    let cfg = xilab::specfun::SpecFunConfig::<f32>::default();
    let v = xi(xilab::ComplexValue::<f32>::new(2.0, 0.0), &cfg);
    assert!((v.re - std::f32::consts::PI / 6.0).abs() < 1e-5);
    let (a, _) = s_from_lambda(-200.040_45f32);
    assert!((a.im - 14.134_725).abs() < 1e-3);
}
