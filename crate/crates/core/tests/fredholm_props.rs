mod common;

use common::gaussian_renyi;
use hmmdiv::fredholm::{build_kernel, divergence_fredholm, j_alpha, j_log, solve_invariant, FredholmEngine, GridSpec};
use hmmdiv::model::{Model, ModelAParams, ModelBParams};
use hmmdiv::montecarlo::{estimate_kl_mc, McConfig};
use hmmdiv::Order;

#[test]
fn identity_law_holds_exactly() {
    for k in [1, 6, 7] {
        let (theta1, _) = common::case(k);
        let mut e = FredholmEngine::new(&theta1, &theta1, GridSpec::default()).unwrap();
        for a in [Order::Renyi(0.5), Order::Renyi(0.999), Order::Kl, Order::Renyi(2.0)] {
            assert_eq!(e.divergence(a).unwrap().value, 0.0, "case {k} α={a}");
        }
    }
    let a = Model::A(ModelAParams { p00: 0.6, p11: 0.5, mu: [1.0, 0.0], psi: [0.3, 0.1], sigma: [1.0, 1.3] });
    let grid = GridSpec::default();
    for o in [Order::Renyi(0.5), Order::Kl, Order::Renyi(2.0)] {
        assert_eq!(divergence_fredholm(&a, &a, o, grid).unwrap().value, 0.0);
    }
}

#[test]
fn j_alpha_is_one_for_identical_models() {
    let (_, theta) = common::case_pairs()[2];
    let grid = GridSpec::default();
    let k = build_kernel(&theta, &theta, &grid).unwrap();
    let m = solve_invariant(&k, grid.cell_area(), 1e-12, 100_000).unwrap();
    for a in [0.3, 0.5, 2.0, 3.0] {
        assert_eq!(j_alpha(&theta, &theta, &m, a, &grid).unwrap(), 1.0);
    }
}

#[test]
fn j_log_of_iid_model_is_gaussian_entropy() {
    let sigma: f64 = 1.3;
    let m = ModelBParams::new(0.4, 0.59, [0.5, 0.5], 0.0, 1.0, 0.0, sigma);
    let grid = GridSpec::default();
    let k = build_kernel(&m, &m, &grid).unwrap();
    let density = solve_invariant(&k, grid.cell_area(), 1e-12, 100_000).unwrap();
    let j = j_log(&m, &m, &density, &grid).unwrap();
    let exact = -0.5 * (2.0 * std::f64::consts::PI * sigma * sigma).ln() - 0.5;
    assert!((j - exact).abs() < 1e-9, "{j} vs {exact}");
}

#[test]
fn case_one_reproduces_reported_values() {
    let (theta1, theta) = common::case(1);
    let mut e = FredholmEngine::new(&theta1, &theta, GridSpec::default()).unwrap();
    let half = e.divergence(Order::Renyi(0.5)).unwrap();
    assert!((half.value - 0.1091).abs() < 5e-5, "{}", half.value);
    let kl = e.divergence(Order::Kl).unwrap();
    assert!((kl.value - 0.1773).abs() < 5e-5, "{}", kl.value);
    assert!(kl.diagnostics.eigen_residual <= 1e-10);
}

#[test]
fn case_eight_matches_gaussian_closed_form() {
    let (theta1, theta) = common::case(8);
    let mut e = FredholmEngine::new(&theta1, &theta, GridSpec::default()).unwrap();
    for (o, a) in [(Order::Renyi(0.5), 0.5), (Order::Kl, 1.0), (Order::Renyi(2.0), 2.0)] {
        let exact = gaussian_renyi(a, 2.0, 0.9, 1.0, 1.0);
        let got = e.divergence(o).unwrap().value;
        assert!((got - exact).abs() <= 0.02 * exact, "α={a}: {got} vs {exact}");
    }
    assert!((gaussian_renyi(0.5, 2.0, 0.9, 1.0, 1.0) - 0.28178).abs() < 5e-6);
    assert!((gaussian_renyi(2.0, 2.0, 0.9, 1.0, 1.0) - 0.858_720).abs() < 5e-6);
}

#[test]
fn solver_output_is_a_density() {
    let (theta, theta1) = common::case_pairs()[5];
    let grid = GridSpec::default();
    let k = build_kernel(&theta1, &theta, &grid).unwrap();
    assert!(k.entries.iter().all(|&v| v >= 0.0));
    for col in 0..k.dim {
        let s: f64 = (0..k.dim).map(|r| k.get(r, col)).sum();
        assert!((s - 1.0).abs() <= 1e-12);
    }
    assert!(k.pre_norm_col_sums.iter().all(|s| (0.8..=1.2).contains(s)));
    let m = solve_invariant(&k, grid.cell_area(), 1e-12, 100_000).unwrap();
    assert!(m.values.iter().all(|&v| v >= 0.0));
    assert!((m.total_mass() - 1.0).abs() <= 1e-10);
    assert!(m.eigen_residual <= 1e-10);
}

#[test]
fn family_a_agrees_with_simulation() {
    // weakly persistent regimes keep the filter weight away from the unresolved edges of [0, 1]
    let p = Model::A(ModelAParams { p00: 0.6, p11: 0.5, mu: [1.0, 0.0], psi: [0.3, 0.1], sigma: [1.0, 1.3] });
    let q = Model::A(ModelAParams { p00: 0.55, p11: 0.55, mu: [0.6, -0.2], psi: [0.2, 0.2], sigma: [1.2, 1.0] });
    let mut e = FredholmEngine::new(&p, &q, GridSpec::default()).unwrap();
    let vals: Vec<f64> = [0.5, 0.8, 1.5, 2.0].iter().map(|&a| e.divergence(Order::Renyi(a)).unwrap().value).collect();
    assert!(vals[0] > 0.0);
    assert!(vals.windows(2).all(|w| w[1] >= w[0] - 1e-6), "{vals:?}");
    let kl = e.divergence(Order::Kl).unwrap().value;
    assert!(kl > vals[1] - 1e-3 && kl < vals[2] + 1e-3, "{kl} vs {vals:?}");
    let mc = estimate_kl_mc(&p, &q, &McConfig::default()).unwrap();
    assert!((kl - mc.mean).abs() <= 3.0 * mc.std_dev, "{kl} vs {mc:?}");
}
