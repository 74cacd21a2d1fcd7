use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use modpoisson::metrics::total_variation;
use modpoisson::models::{bernoulli_sum_pmf, MassFunction};
use modpoisson::schemes::{rectify_positive, scheme_measure, SignedMeasure};
use modpoisson::symfunc::{
    elementary_from_power, power_from_elementary, power_sums_finite, residue_product_eval,
    residue_series_eval, virtual_residue_coeffs, Alphabet, PowerSums, ResidueCoeffs,
};

fn weights(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001f64..0.999, 1..=max_len)
}

fn bounded_coeffs(r: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, r).prop_map(|u| {
        u.iter()
            .enumerate()
            .map(|(i, x)| {
                let s = (i + 1) as f64;
                x * (2.0 * std::f64::consts::E / s).powf(s / 2.0)
            })
            .collect()
    })
}

/// A normalized signed measure on `0..len` built from arbitrary masses.
fn signed_measure(len: usize) -> impl Strategy<Value = SignedMeasure<f64>> {
    (prop::collection::vec(-0.3f64..1.0, len), 0usize..5).prop_map(|(mut m, offset)| {
        let rest: f64 = m[1..].iter().sum();
        m[0] = 1.0 - rest;
        SignedMeasure::new(offset, m, 0.0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(0x6d6f_6470),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn newton_round_trip(w in weights(20), r in 2usize..=12) {
        let ps = power_sums_finite(&w, r).unwrap();
        let e = elementary_from_power(&ps, r).unwrap();
        let back = power_from_elementary(&e, r).unwrap();
        for k in 1..=r {
            let (a, b) = (*ps.get(k), *back.get(k));
            // size of the terms the inverse recursion cancels to produce p_k
            let scale: f64 = k as f64 * e[k].abs()
                + (1..k).map(|i| ps.get(i).abs() * e[k - i].abs()).sum::<f64>();
            prop_assert!((a - b).abs() <= 1e-12 * scale.max(a.abs()), "k={} {} vs {}", k, a, b);
        }
    }

    #[test]
    fn newton_round_trip_exact(num in prop::collection::vec(1i64..1000, 1..=12), r in 2usize..=14) {
        let w: Vec<BigRational> = num.iter().map(|&a| BigRational::new(a.into(), 1000.into())).collect();
        let p: Vec<BigRational> = (1..=r as u32)
            .map(|k| w.iter().map(|x| Pow::pow(x, k)).fold(BigRational::zero(), |acc, x| acc + x))
            .collect();
        let e = elementary_from_power(&PowerSums::new(p.clone()).unwrap(), r).unwrap();
        let back = power_from_elementary(&e, r).unwrap();
        prop_assert_eq!(back.values(), &p[..]);
    }

    #[test]
    fn coefficient_decay(w in weights(20)) {
        let ps = power_sums_finite(&w, 30).unwrap();
        let rc = virtual_residue_coeffs(&ps, 30, w.iter().sum()).unwrap();
        let sigma2 = *ps.get(2);
        prop_assert_eq!(rc.coeff(1), 0.0);
        for s in 2..=30 {
            let bound = (std::f64::consts::E * sigma2 / s as f64).powf(s as f64 / 2.0);
            prop_assert!(rc.coeff(s).abs() <= bound + 1e-12);
        }
    }

    #[test]
    fn product_matches_series(w in weights(8), radius in 0.0f64..1.5, angle in 0.0f64..6.3) {
        let sigma2: f64 = w.iter().map(|p| p * p).sum();
        prop_assume!(sigma2 <= 2.0);
        let z = Complex64::from_polar(radius, angle);
        let ps = power_sums_finite(&w, 40).unwrap();
        let rc = virtual_residue_coeffs(&ps, 40, w.iter().sum()).unwrap();
        let series = residue_series_eval(&rc, z);
        let product = residue_product_eval(&Alphabet::finite(w.clone()).unwrap(), z, 1e-12).unwrap();
        prop_assert!((series - product).norm() < 1e-10);
    }

    #[test]
    fn schemes_are_normalized(
        lambda in prop::sample::select(vec![0.5, 1.0, 5.0, 20.0, 100.0]),
        b in (0usize..=10).prop_flat_map(bounded_coeffs),
    ) {
        let nu = scheme_measure(&ResidueCoeffs::new(lambda, b).unwrap()).unwrap();
        let total: f64 = nu.masses().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn fourier_transform_of_scheme(lambda in 0.5f64..40.0, b in (0usize..=6).prop_flat_map(bounded_coeffs), xi in -std::f64::consts::PI..std::f64::consts::PI) {
        let rc = ResidueCoeffs::new(lambda, b).unwrap();
        let nu = scheme_measure(&rc).unwrap();
        let w = Complex64::from_polar(1.0, xi);
        let lhs: Complex64 = nu.masses().iter().enumerate()
            .map(|(i, &m)| m * w.powu((nu.offset() + i) as u32)).sum();
        let rhs = (lambda * (w - 1.0)).exp() * residue_series_eval(&rc, w - 1.0);
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn rectification_does_not_increase_distance(w in weights(60), r in 1usize..=6) {
        let lambda: f64 = w.iter().sum();
        let mu = bernoulli_sum_pmf(&w).unwrap();
        let ps = power_sums_finite(&w, r.max(2)).unwrap();
        let nu = scheme_measure(&virtual_residue_coeffs(&ps, r, lambda).unwrap()).unwrap();
        let rect = rectify_positive(&nu).unwrap();
        prop_assert!(rect.masses().iter().all(|&m| m >= 0.0));
        let with_rect = total_variation(&mu, &rect).unwrap();
        let with_nu = total_variation(&mu, &nu).unwrap();
        prop_assert!(with_rect <= with_nu + 1e-12);
    }

    #[test]
    fn total_variation_is_a_metric(a in signed_measure(12), b in signed_measure(9), c in signed_measure(15)) {
        let ab = total_variation(&a, &b).unwrap();
        let ba = total_variation(&b, &a).unwrap();
        let ac = total_variation(&a, &c).unwrap();
        let cb = total_variation(&c, &b).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!(ab <= ac + cb + 1e-12);
        prop_assert!(total_variation(&a, &a).unwrap() < 1e-12);
    }

    #[test]
    fn bernoulli_laws_are_normalized(w in weights(200)) {
        let p = bernoulli_sum_pmf(&w).unwrap();
        let total: f64 = p.masses().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        let mean: f64 = w.iter().sum();
        prop_assert!((p.mean() - mean).abs() < 1e-9 * mean.max(1.0));
    }
}

#[test]
fn ewens_one_is_harmonic() {
    let a = Alphabet::ewens_limit(1.0).unwrap().power_sums(12).unwrap();
    let h = Alphabet::harmonic().power_sums(12).unwrap();
    for k in 2..=12 {
        assert!((a.get(k) - h.get(k)).abs() < 1e-12, "k={k}");
    }
}
