//! Quick built-in checks: likelihood oracles, Q evaluators, identity laws and
//! the i.i.d. Gaussian case.

use hmmdiv::forward::{brute_force_log_likelihood, log_likelihood, matrix_log_likelihood};
use hmmdiv::fredholm::{q_four_state, FredholmEngine, GridSpec};
use hmmdiv::model::{stationary_distribution, Model, ModelBParams, SwitchingChain, TransitionMatrix};
use hmmdiv::montecarlo::{estimate_mc_grid, McConfig};
use hmmdiv::special::{noncentral_chisq1_cdf, std_normal_cdf};
use hmmdiv::Order;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, PartialEq)]
pub struct SelfTestLine {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// A random chain with `d` states plus an observation record of length `1..=max_len`.
pub fn random_instance(rng: &mut ChaCha8Rng, d: usize, max_len: usize) -> (SwitchingChain, f64, Vec<f64>) {
    let entries: Vec<f64> = (0..d)
        .flat_map(|_| {
            let row: Vec<f64> = (0..d).map(|_| rng.random_range(0.05..1.0)).collect();
            let s: f64 = row.iter().sum();
            row.into_iter().map(move |v| v / s)
        })
        .collect();
    let t = TransitionMatrix::new(d, entries).expect("rows normalized");
    let pi = stationary_distribution(&t).expect("positive chain");
    let intercept = (0..d).map(|_| rng.random_range(-2.0..2.0)).collect();
    let slope = (0..d).map(|_| rng.random_range(-0.9..0.9)).collect();
    let sd = (0..d).map(|_| rng.random_range(0.3..2.5)).collect();
    let chain = SwitchingChain::new(t, pi, intercept, slope, sd).expect("valid chain");
    let n = rng.random_range(1..=max_len);
    let y0 = rng.random_range(-3.0..3.0);
    let ys = (0..n).map(|_| rng.random_range(-4.0..4.0)).collect();
    (chain, y0, ys)
}

/// Largest disagreement of the forward recursion and the matrix product with
/// the explicit path sum over `count` random instances (`d ∈ {2, 4}`, `n ≤ 8`).
pub fn oracle_equivalence(count: usize, seed: u64) -> hmmdiv::Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for i in 0..count {
        let d = if i % 2 == 0 { 2 } else { 4 };
        let (chain, y0, ys) = random_instance(&mut rng, d, 8);
        let brute = brute_force_log_likelihood(&chain, y0, &ys)?;
        let fwd = log_likelihood(&chain, y0, &ys)?;
        let mat = matrix_log_likelihood(&chain, y0, &ys)?;
        worst = worst.max((fwd - brute).abs()).max((mat - brute).abs());
    }
    Ok(worst)
}

fn line(name: &'static str, passed: bool, detail: String) -> SelfTestLine {
    SelfTestLine { name, passed, detail }
}

fn gaussian_case() -> (Model, Model) {
    let b = ModelBParams::new;
    (Model::B(b(0.4, 0.59, [2.0, 2.0], 0.0, 1.0, 0.0, 0.9)), Model::B(b(0.4, 0.59, [1.0, 1.0], 0.0, 1.0, 0.0, 1.0)))
}

/// Rényi divergence of `N(m1, s1²)` from `N(m2, s2²)`.
fn gaussian_renyi(alpha: Order, m1: f64, s1: f64, m2: f64, s2: f64) -> f64 {
    let dm = m1 - m2;
    match alpha.resolved() {
        Order::Kl => (s2 / s1).ln() + (s1 * s1 + dm * dm) / (2.0 * s2 * s2) - 0.5,
        Order::Renyi(a) => {
            let mix = a * s2 * s2 + (1.0 - a) * s1 * s1;
            (s2 / s1).ln() + (s2 * s2 / mix).ln() / (2.0 * (a - 1.0)) + a * dm * dm / (2.0 * mix)
        }
    }
}

pub fn run_selftest() -> Vec<SelfTestLine> {
    let mut out = Vec::new();

    out.push(match oracle_equivalence(50, 7) {
        Ok(worst) => {
            line("likelihood oracles agree", worst <= 1e-9, format!("max deviation {worst:.2e} on 50 instances"))
        }
        Err(e) => line("likelihood oracles agree", false, e.to_string()),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let x: f64 = rng.random_range(1e-3..50.0);
        let lambda: f64 = rng.random_range(0.0..30.0);
        let (r, s) = (x.sqrt(), lambda.sqrt());
        let phi = std_normal_cdf(r - s) - std_normal_cdf(-r - s);
        worst = worst.max((noncentral_chisq1_cdf(x, lambda) - phi).abs());
    }
    out.push(line("noncentral chi-square vs normal identity", worst <= 1e-12, format!("max deviation {worst:.2e}")));

    let gen = ModelBParams::new(0.41, 0.6, [2.0, 1.0], 0.0, 1.0, 0.0, 1.5);
    let filt = ModelBParams::new(0.41, 0.6, [1.0, 0.0], 0.0, 1.0, 0.0, 2.0);
    let (x, u, w) = (0.5, 0.5, 0.5);
    let exact = q_four_state(x, u, w, 0, 0, &gen, &filt);
    let draws = 200_000;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let hits = (0..draws)
        .filter(|_| {
            let e: f64 = rng.sample(StandardNormal);
            let y = gen.mean(0, 0, u) + gen.sigma * e;
            let dens = |i: usize, j: usize| {
                let prior = if i == 0 { w } else { 1.0 - w };
                prior * filt.p(i, j) * (-(y - filt.mean(i, j, u)).powi(2) / (2.0 * filt.sigma * filt.sigma)).exp()
            };
            let zero = dens(0, 0) + dens(1, 0);
            zero / (zero + dens(0, 1) + dens(1, 1)) <= x
        })
        .count();
    let freq = hits as f64 / draws as f64;
    let se = (exact * (1.0 - exact) / draws as f64).sqrt();
    out.push(line(
        "four-state Q vs simulation",
        (freq - exact).abs() <= 3.0 * se,
        format!("{exact:.5} vs {freq:.5} (se {se:.1e})"),
    ));

    let (p, q) = gaussian_case();
    let small = McConfig { n: 500, reps: 10, burn_in: 50, seed: 1 };
    let orders = [Order::Renyi(0.5), Order::Kl, Order::Renyi(2.0)];
    let identity =
        estimate_mc_grid(&p, &p, &orders, &small).map(|es| es.iter().all(|e| e.mean == 0.0)).unwrap_or(false);
    out.push(line("identity law, simulation", identity, "D(p, p) over α ∈ {0.5, KL, 2}".into()));

    let grid = GridSpec::default();
    let fred_identity = FredholmEngine::new(&p, &p, grid)
        .and_then(|mut e| orders.iter().map(|&a| e.divergence(a).map(|r| r.value)).collect::<hmmdiv::Result<Vec<_>>>());
    out.push(match fred_identity {
        Ok(v) => line("identity law, lattice", v.iter().all(|&x| x == 0.0), format!("{v:?}")),
        Err(e) => line("identity law, lattice", false, e.to_string()),
    });

    let fred = FredholmEngine::new(&p, &q, grid)
        .and_then(|mut e| orders.iter().map(|&a| e.divergence(a).map(|r| r.value)).collect::<hmmdiv::Result<Vec<_>>>());
    out.push(match fred {
        Ok(v) => {
            let exact: Vec<f64> = orders.iter().map(|&a| gaussian_renyi(a, 2.0, 0.9, 1.0, 1.0)).collect();
            let ok = v.iter().zip(&exact).all(|(g, e)| ((g - e) / e).abs() <= 0.02);
            let detail = v.iter().zip(&exact).map(|(g, e)| format!("{g:.4}/{e:.4}")).collect::<Vec<_>>().join(" ");
            line("i.i.d. Gaussian case, lattice vs closed form", ok, detail)
        }
        Err(e) => line("i.i.d. Gaussian case, lattice vs closed form", false, e.to_string()),
    });
    out
}
