#![allow(clippy::excessive_precision)]

use abspin_core::secular::{normalized_secular, solve_secular, ExtensionParam, ROOT_RESIDUAL_TOL};
use abspin_core::spectrum::{energy_irregular, energy_regular};
use abspin_core::{FluxConfig, PhysicalParams, QuantumState, Spin};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn limits_reproduce_closed_forms() {
    let p = PhysicalParams::atomic();
    for j in [0.05, 0.2, 0.45] {
        let flux = FluxConfig::new(j).unwrap();
        let reg = solve_secular(ExtensionParam::Finite(0.0), j, &p, 5).unwrap();
        let irr = solve_secular(ExtensionParam::Infinite, j, &p, 5).unwrap();
        assert_eq!((reg.len(), irr.len()), (5, 5));
        for n in 1..=5u32 {
            let want_reg = energy_regular(QuantumState::regular(n, 0, Spin::Up).unwrap(), &p, &flux).kappa;
            let want_irr = energy_irregular(QuantumState::irregular(n, 0, Spin::Up).unwrap(), &p, &flux)
                .unwrap()
                .kappa;
            let k = n as usize - 1;
            assert!(rel(reg[k].kappa, want_reg) < 1e-10, "regular j={j} n={n}");
            assert!(rel(irr[k].kappa, want_irr) < 1e-10, "irregular j={j} n={n}");
        }
    }
}

#[test]
fn finite_lambda_reference_roots() {
    // 40-digit references from an independent arbitrary-precision root finder
    let table: [(f64, f64, [f64; 5]); 6] = [
        (-1.0, 0.3, [7.05558511854228669, 0.88675665780500681, 0.470104969872248714, 0.319788555873952933, 0.242305473806370827]),
        (1.0, 0.2, [2.44005253852701745, 0.707155817954389301, 0.414164241105986043, 0.292859436522506494, 0.226518477323538011]),
        (-1.0, 0.2, [5.72298885853483846, 0.866508959081898002, 0.464449869856389327, 0.317172535217088411, 0.240803001017596614]),
        (1.0, 0.4, [8.47616216854374361, 0.889842730911149831, 0.47081949888339344, 0.320103198113376491, 0.242482667875949995]),
        (-1.0, 0.4, [11.644164505393584, 0.925691613513513895, 0.480734155283439611, 0.324662096215257209, 0.245091080980536597]),
        (2.5, 0.1, [2.26813111984656963, 0.693636186896595483, 0.40954150623353687, 0.290547622043507686, 0.225134689846320234]),
    ];
    let p = PhysicalParams::atomic();
    for (lam, j, want) in table {
        let roots = solve_secular(ExtensionParam::Finite(lam), j, &p, 5).unwrap();
        assert_eq!(roots.len(), 5);
        for (root, w) in roots.iter().zip(want) {
            assert!(rel(root.kappa, w) < 1e-10, "λ={lam} j={j}: {} vs {w}", root.kappa);
            assert!(root.residual <= ROOT_RESIDUAL_TOL);
        }
    }
}

#[test]
fn roots_interlace_with_limits_on_dense_scan() {
    let p = PhysicalParams::atomic();
    let lam = ExtensionParam::Finite(-1.0);
    let j = 0.3;
    // independent sign scan over t ∈ (0, 20] with 1e5 samples
    let mut brackets = Vec::new();
    let samples = 100_000;
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..=samples {
        let t = 20.0 * i as f64 / samples as f64;
        let g = normalized_secular(1.0 / t, lam, j, &p).unwrap();
        if let Some((tp, gp)) = prev {
            if gp != 0.0 && g != 0.0 && (gp < 0.0) != (g < 0.0) {
                // skip sign flips through poles, where |g| jumps
                let mid = normalized_secular(2.0 / (t + tp), lam, j, &p).unwrap();
                if mid.abs() < 10.0 * gp.abs().max(g.abs()) {
                    brackets.push((tp, t));
                }
            }
        }
        prev = Some((t, g));
    }
    let roots = solve_secular(lam, j, &p, 2).unwrap();
    let reg = solve_secular(ExtensionParam::Finite(0.0), j, &p, 3).unwrap();
    let irr = solve_secular(ExtensionParam::Infinite, j, &p, 3).unwrap();
    // merged limit levels in t, with t = 0 as the first edge
    let mut edges = vec![0.0];
    edges.extend(reg.iter().chain(&irr).map(|r| 1.0 / r.kappa));
    edges.sort_by(f64::total_cmp);
    let mut gaps = Vec::new();
    for (k, root) in roots.iter().enumerate() {
        let t = 1.0 / root.kappa;
        assert!(brackets.iter().any(|&(lo, hi)| lo <= t && t <= hi), "root {k} at t={t}");
        let gap = edges.windows(2).position(|w| w[0] < t && t < w[1]);
        assert!(gap.is_some(), "root {k} at t={t} sits on a limit level");
        gaps.push(gap.unwrap());
    }
    gaps.dedup();
    assert_eq!(gaps.len(), roots.len());
}

#[test]
fn larger_counts_extend_smaller_ones() {
    let p = PhysicalParams::atomic();
    for lam in [ExtensionParam::Finite(-1.0), ExtensionParam::Finite(0.7), ExtensionParam::Infinite] {
        let three = solve_secular(lam, 0.25, &p, 3).unwrap();
        let four = solve_secular(lam, 0.25, &p, 4).unwrap();
        assert_eq!(&four[..3], &three[..]);
    }
}

#[test]
fn no_coulomb_no_regular_roots() {
    let p = PhysicalParams::atomic().with_eta(0.0).unwrap();
    assert!(solve_secular(ExtensionParam::Finite(0.0), 0.2, &p, 3).unwrap().is_empty());
}
