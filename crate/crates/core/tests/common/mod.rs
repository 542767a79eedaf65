#![allow(dead_code)]

use hmmdiv::model::{Model, ModelBParams};

/// The eight comparison pairs as `(θ, θ₁)`; data are generated under `θ₁`.
pub fn case_pairs() -> [(ModelBParams, ModelBParams); 8] {
    let b = ModelBParams::new;
    [
        (b(0.41, 0.6, [1.0, 0.0], 0.0, 1.0, 0.0, 2.0), b(0.41, 0.6, [2.0, 1.0], 0.0, 1.0, 0.0, 1.5)),
        (b(0.41, 0.59, [1.0, 0.0], 0.0, 1.0, 0.0, 2.0), b(0.41, 0.59, [2.0, 1.0], 0.0, 1.0, 0.0, 1.6)),
        (b(0.4, 0.59, [1.0, 0.0], 0.0, 1.0, 0.0, 1.0), b(0.4, 0.59, [2.0, 1.0], 0.0, 1.0, 0.0, 0.9)),
        (b(0.4, 0.599, [1.0, 0.0], 0.0, 1.0, 0.0, 1.0), b(0.4, 0.599, [2.0, 1.0], 0.0, 1.0, 0.0, 0.9)),
        (b(0.59, 0.4, [1.0, 0.0], 0.0, 1.0, 0.0, 1.0), b(0.59, 0.4, [2.0, 1.0], 0.0, 1.0, 0.0, 0.9)),
        (b(0.599, 0.4, [1.0, 0.0], 0.2, 1.0, 0.0, 1.0), b(0.599, 0.4, [2.0, 1.0], 0.3, 1.0, 0.0, 1.1)),
        (b(0.4, 0.59, [1.0, 0.0], 0.2, 1.0, 0.2, 1.1), b(0.4, 0.59, [2.0, 1.0], 0.1, 1.0, 0.1, 1.0)),
        (b(0.4, 0.59, [1.0, 1.0], 0.0, 1.0, 0.0, 1.0), b(0.4, 0.59, [2.0, 2.0], 0.0, 1.0, 0.0, 0.9)),
    ]
}

/// `(data model, reference model)` of case `k` (1-based).
pub fn case(k: usize) -> (Model, Model) {
    let (theta, theta1) = case_pairs()[k - 1];
    (Model::B(theta1), Model::B(theta))
}

/// Rényi divergence of `N(m1, s1²)` from `N(m2, s2²)` in closed form; `α = 1` gives KL.
pub fn gaussian_renyi(alpha: f64, m1: f64, s1: f64, m2: f64, s2: f64) -> f64 {
    let dm = m1 - m2;
    if alpha == 1.0 {
        return (s2 / s1).ln() + (s1 * s1 + dm * dm) / (2.0 * s2 * s2) - 0.5;
    }
    let mix = alpha * s2 * s2 + (1.0 - alpha) * s1 * s1;
    (s2 / s1).ln() + (s2 * s2 / mix).ln() / (2.0 * (alpha - 1.0)) + alpha * dm * dm / (2.0 * mix)
}
