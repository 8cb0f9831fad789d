use abspin_core::secular::{solve_secular, ExtensionParam, KummerParams};
use abspin_core::wavefunction::{
    boundary_values, decaying_coefficients, level_profile, normalize_and_count_nodes, radial_solution,
    secular_profile,
};
use abspin_core::{Branch, PhysicalParams};

#[test]
fn finite_lambda_states_close_and_have_index_minus_one_nodes() {
    let p = PhysicalParams::atomic();
    for lam in [-1.0, 1.0, 2.5] {
        for j in [0.1, 0.2, 0.4] {
            let l = ExtensionParam::Finite(lam);
            for root in solve_secular(l, j, &p, 5).unwrap() {
                let kp = KummerParams::new(root.kappa, j, &p).unwrap();
                let bv = boundary_values(decaying_coefficients(&kp).unwrap(), &kp).unwrap();
                assert!(bv.closure_residual(l) < 1e-8, "λ={lam} j={j} n={}", root.index);
                let prof = secular_profile(&root, &p, None).unwrap();
                let (norm, nodes) = normalize_and_count_nodes(&prof).unwrap();
                assert!(norm > 0.0 && norm.is_finite());
                assert_eq!(nodes, root.index - 1, "λ={lam} j={j} n={}", root.index);
                let tail = prof.samples.last().unwrap().1.abs();
                let peak = prof.samples.iter().fold(0.0f64, |m, s| m.max(s.1.abs()));
                assert!(tail < 1e-8 * peak);
            }
        }
    }
}

#[test]
fn decaying_solution_reduces_to_levels_at_the_limits() {
    // at a closed-form κ the U-combination is proportional to the level itself
    let p = PhysicalParams::atomic();
    let j = 0.3;
    for n in 1..=3u32 {
        for branch in [Branch::Regular, Branch::Irregular] {
            let prof = level_profile(n, j, branch, &p, None).unwrap();
            let kp = KummerParams::new(prof.kappa, j, &p).unwrap();
            let root = abspin_core::SecularRoot {
                index: n as usize,
                kappa: prof.kappa,
                residual: 0.0,
                lambda: ExtensionParam::Finite(0.0),
                j,
            };
            let generic = secular_profile(&root, &p, None).unwrap();
            let ratio = |r: f64| {
                let g = generic.samples.iter().find(|s| s.0 >= r).unwrap();
                radial_solution(g.0, prof.coeffs, &kp).unwrap() / g.1
            };
            let r0 = 0.37 / prof.kappa;
            for r in [0.01 / prof.kappa, 2.9 / prof.kappa, 11.0 / prof.kappa] {
                assert!((ratio(r) / ratio(r0) - 1.0).abs() < 1e-6, "{branch} n={n} r={r}");
            }
            let (_, nodes) = normalize_and_count_nodes(&generic).unwrap();
            assert_eq!(nodes, n as usize - 1, "{branch} n={n}");
        }
    }
}

#[test]
fn irregular_state_is_normalizable() {
    let p = PhysicalParams::atomic();
    let prof = level_profile(1, 0.45, Branch::Irregular, &p, None).unwrap();
    let (norm, nodes) = normalize_and_count_nodes(&prof).unwrap();
    assert_eq!(nodes, 0);
    // F = x^{-|j|} e^{-x/2}: ∫ F² r dr = Γ(2 − 2|j|)/(4κ²)
    let want = abspin_core::specfun::gamma(2.0 - 0.9).unwrap() / (4.0 * prof.kappa * prof.kappa);
    assert!((norm / want - 1.0).abs() < 1e-6, "{norm} vs {want}");
}
