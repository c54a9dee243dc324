use std::f64::consts::PI;

use proptest::prelude::*;

use q1d_hydrogen::audit::delta_limit;
use q1d_hydrogen::cli::Grid;
use q1d_hydrogen::quadrature::{integrate_real_line, integrate_semi_infinite, ToleranceSpec};
use q1d_hydrogen::special_functions::{laguerre, laguerre_sum_oracle, LaguerreParams};
use q1d_hydrogen::states::{gamma_density, gamma_stc_density, phi, phi_stc, psi, QuantumIndex};

fn q(n: u32) -> QuantumIndex {
    QuantumIndex::new(n).unwrap()
}

proptest! {
    #[test]
    fn modulus_is_lorentzian(n in 1u32..=50, p in -50.0f64..50.0) {
        let a = phi(q(n), p);
        let nf = f64::from(n);
        let want = (2.0 * nf / PI).sqrt() / (1.0 + nf * nf * p * p);
        prop_assert!((a.abs() - want).abs() <= 1e-12 * want.max(1e-300));
        prop_assert!((a.norm_sqr() - gamma_density(q(n), p)).abs() <= 1e-12 * gamma_density(q(n), p));
    }

    #[test]
    fn rival_is_imaginary_part(n in 1u32..=50, p in -50.0f64..50.0) {
        let a = phi(q(n), p);
        prop_assert!((a.im - phi_stc(q(n), p)).abs() <= 1e-12 * a.abs().max(1e-300));
        let doubled = 4.0 * phi_stc(q(n), p).powi(2);
        prop_assert!((doubled - gamma_stc_density(q(n), p)).abs() <= 1e-12 * gamma_density(q(n), p));
    }

    #[test]
    fn momentum_parity(n in 1u32..=30, p in -20.0f64..20.0) {
        let a = phi(q(n), p);
        let b = phi(q(n), -p);
        prop_assert!((a.re - b.re).abs() <= 1e-13 * a.abs().max(1e-300));
        prop_assert!((a.im + b.im).abs() <= 1e-13 * a.abs().max(1e-300));
        prop_assert_eq!(gamma_density(q(n), p), gamma_density(q(n), -p));
    }

    #[test]
    fn recurrence_matches_oracle(m in 0u32..=20, beta in 0u32..=3, x in 0.0f64..60.0) {
        let params = LaguerreParams::new(m, beta);
        let a = laguerre(params, x);
        let b = laguerre_sum_oracle(params, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn position_wavefunction_vanishes_outside(n in 1u32..=20, x in -100.0f64..=0.0) {
        prop_assert_eq!(psi(q(n), x), 0.0);
    }

    #[test]
    fn delta_mass_depends_on_product(n in 1u32..=200, a in 1e-4f64..10.0, k in 1u32..=5) {
        let scaled = delta_limit(q(n * k), a / f64::from(k));
        let base = delta_limit(q(n), a);
        prop_assert!((scaled - base).abs() <= 1e-14);
        prop_assert!(base > 0.0 && base < 1.0);
    }

    #[test]
    fn grid_nodes_are_mirror_symmetric(half in 0.1f64..100.0, points in 2usize..500) {
        let nodes = Grid::new(-half, half, points).unwrap().nodes();
        prop_assert_eq!(nodes.len(), points);
        prop_assert_eq!(nodes[0], -half);
        prop_assert_eq!(nodes[points - 1], half);
        for i in 0..points {
            prop_assert_eq!(nodes[i], -nodes[points - 1 - i]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn real_line_is_sum_of_half_lines(c in -2.0f64..2.0, w in 0.3f64..3.0) {
        let tol = ToleranceSpec::default();
        let f = |x: f64| (-((x - c) / w).powi(2)).exp();
        let whole = integrate_real_line(f, &tol).unwrap().value;
        let right = integrate_semi_infinite(f, &tol).unwrap().value;
        let left = integrate_semi_infinite(|x| f(-x), &tol).unwrap().value;
        prop_assert!((whole - (left + right)).abs() <= 1e-12);
        prop_assert!((whole - w * PI.sqrt()).abs() <= 1e-10 * whole);
    }
}
