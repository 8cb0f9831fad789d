use abspin_core::specfun::{gamma, kummer_1f1, EvalAccuracy, X_SWITCH};
use proptest::prelude::*;

fn m(a: f64, b: f64, x: f64) -> f64 {
    kummer_1f1(a, b, x, &EvalAccuracy::default()).unwrap()
}

/// x M″ + (b − x) M′ − a M with the contiguous derivative formulas,
/// scaled by the largest of the three terms.
fn ode_residual(a: f64, b: f64, x: f64) -> f64 {
    let f = m(a, b, x);
    let d1 = a / b * m(a + 1.0, b + 1.0, x);
    let d2 = a * (a + 1.0) / (b * (b + 1.0)) * m(a + 2.0, b + 2.0, x);
    let terms = [x * d2, (b - x) * d1, a * f];
    let scale = terms.iter().fold(f64::MIN_POSITIVE, |s, t| s.max(t.abs()));
    (terms[0] + terms[1] - terms[2]).abs() / scale
}

#[test]
fn ode_residual_on_fixed_points() {
    for &(a, b, x) in &[(0.5, 1.4, 2.0), (-2.3, 0.6, 7.5), (1.7, 1.2, 25.0), (0.3, 1.6, 45.0), (-0.7, 0.8, -3.0)] {
        assert!(ode_residual(a, b, x) < 1e-9, "({a},{b},{x})");
    }
}

proptest! {
    #[test]
    fn kummer_solves_its_equation(a in -4.0f64..4.0, b in 0.3f64..4.0, x in 0.0f64..60.0) {
        prop_assert!(ode_residual(a, b, x) < 1e-8);
    }

    #[test]
    fn gamma_recurrence_holds(z in 0.05f64..40.0) {
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!((lhs / rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn switch_is_continuous(a in 0.05f64..2.5, b in 0.2f64..2.5) {
        let below = m(a, b, X_SWITCH * (1.0 - 1e-12));
        let above = m(a, b, X_SWITCH * (1.0 + 1e-12));
        prop_assert!((below / above - 1.0).abs() < 1e-6);
    }
}
