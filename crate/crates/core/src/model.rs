//! Markov switching model families.
//!
//! Two parameterizations of a two-state regime-switching Gaussian
//! autoregression are supported:
//!
//! - **Family A**: `Y_t = μ_{X_t} + ψ_{X_t} Y_{t−1} + σ_{X_t} ε_t`, with the
//!   transition matrix given by its diagonal `(p00, p11)`.
//! - **Family B**: `Y_t = ψ₁ μ_{X_t} + ψ₂ μ_{X_{t−1}} + φ Y_{t−1} + σ ε_t`,
//!   with the transition matrix given by its off-diagonal `(p01, p10)`.
//!   The dependence on `X_{t−1}` is absorbed by lifting the chain to the
//!   pairs `Z_t = (X_{t−1}, X_t)`, see [`lift_four_state`].
//!
//! Both families are exposed to the likelihood code as a [`SwitchingChain`]:
//! a first-order hidden chain with a Gaussian autoregressive emission per
//! hidden state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::normal_pdf;

const ROW_SUM_TOL: f64 = 1e-12;

/// Row-stochastic transition matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    d: usize,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    pub fn new(d: usize, entries: Vec<f64>) -> Result<Self> {
        if d == 0 || entries.len() != d * d {
            return Err(Error::InvalidTransition(format!("expected {}x{} entries, got {}", d, d, entries.len())));
        }
        if let Some(bad) = entries.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidTransition(format!("entry {bad} outside [0, 1]")));
        }
        for (i, row) in entries.chunks(d).enumerate() {
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidTransition(format!("row {i} sums to {s}")));
            }
        }
        Ok(TransitionMatrix { d, entries })
    }

    /// Two-state matrix from its off-diagonal entries.
    pub fn two_state(p01: f64, p10: f64) -> Result<Self> {
        Self::new(2, vec![1.0 - p01, p01, p10, 1.0 - p10])
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.entries[from * self.d + to]
    }

    pub fn row(&self, from: usize) -> &[f64] {
        &self.entries[from * self.d..(from + 1) * self.d]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Stationary distribution `π` with `π·P = π`, by power iteration from uniform.
pub fn stationary_distribution(t: &TransitionMatrix) -> Result<Vec<f64>> {
    const TOL: f64 = 1e-15;
    const MAX_ITERS: usize = 1_000_000;
    let d = t.dim();
    let mut pi = vec![1.0 / d as f64; d];
    let mut next = vec![0.0; d];
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERS {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (i, &pi_i) in pi.iter().enumerate() {
            for (j, n) in next.iter_mut().enumerate() {
                *n += pi_i * t.get(i, j);
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        residual = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut pi, &mut next);
        if residual <= TOL {
            return Ok(pi);
        }
    }
    Err(Error::NonConvergence { iterations: MAX_ITERS, residual })
}

/// Family A: per-state intercept, AR coefficient and noise scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelAParams {
    pub p00: f64,
    pub p11: f64,
    pub mu: [f64; 2],
    pub psi: [f64; 2],
    pub sigma: [f64; 2],
}

/// Family B: two-lag switching mean, shared AR coefficient and noise scale.
///
/// Field order mirrors `θ = (p01, p10, μ, φ, ψ₁, ψ₂, σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBParams {
    pub p01: f64,
    pub p10: f64,
    pub mu: [f64; 2],
    pub phi: f64,
    pub psi1: f64,
    pub psi2: f64,
    pub sigma: f64,
}

impl ModelBParams {
    pub fn new(p01: f64, p10: f64, mu: [f64; 2], phi: f64, psi1: f64, psi2: f64, sigma: f64) -> Self {
        ModelBParams { p01, p10, mu, phi, psi1, psi2, sigma }
    }

    /// `p_ij` of the two-state chain.
    #[inline]
    pub fn p(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => 1.0 - self.p01,
            (0, 1) => self.p01,
            (1, 0) => self.p10,
            _ => 1.0 - self.p10,
        }
    }

    /// Conditional mean of `Y_t` given `(X_{t−1}, X_t) = (i, j)` and `Y_{t−1}`.
    #[inline]
    pub fn mean(&self, i: usize, j: usize, y_prev: f64) -> f64 {
        self.psi2 * self.mu[i] + self.psi1 * self.mu[j] + self.phi * y_prev
    }
}

impl ModelAParams {
    #[inline]
    pub fn p(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.p00,
            (0, 1) => 1.0 - self.p00,
            (1, 0) => 1.0 - self.p11,
            _ => self.p11,
        }
    }

    #[inline]
    pub fn mean(&self, j: usize, y_prev: f64) -> f64 {
        self.mu[j] + self.psi[j] * y_prev
    }
}

/// A Markov switching model of either family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    A(ModelAParams),
    B(ModelBParams),
}

/// Constraint violations found by [`validate_model`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidModel(self.violations))
        }
    }
}

fn open_unit(v: &mut Vec<String>, name: &str, p: f64) {
    if !(p > 0.0 && p < 1.0) {
        v.push(format!("{name} must lie in (0, 1)"));
    }
}

fn stable(v: &mut Vec<String>, name: &str, c: f64) {
    if !(c.abs() < 1.0) {
        v.push(format!("|{name}| < 1 required"));
    }
}

fn positive(v: &mut Vec<String>, name: &str, s: f64) {
    if !(s > 0.0 && s.is_finite()) {
        v.push(format!("{name} must be positive"));
    }
}

fn finite(v: &mut Vec<String>, name: &str, x: f64) {
    if !x.is_finite() {
        v.push(format!("{name} must be finite"));
    }
}

pub fn validate_model(m: &Model) -> ValidationReport {
    let mut v = Vec::new();
    match m {
        Model::A(a) => {
            open_unit(&mut v, "p00", a.p00);
            open_unit(&mut v, "p11", a.p11);
            finite(&mut v, "mu0", a.mu[0]);
            finite(&mut v, "mu1", a.mu[1]);
            stable(&mut v, "psi0", a.psi[0]);
            stable(&mut v, "psi1", a.psi[1]);
            positive(&mut v, "sigma0", a.sigma[0]);
            positive(&mut v, "sigma1", a.sigma[1]);
        }
        Model::B(b) => {
            open_unit(&mut v, "p01", b.p01);
            open_unit(&mut v, "p10", b.p10);
            finite(&mut v, "mu0", b.mu[0]);
            finite(&mut v, "mu1", b.mu[1]);
            stable(&mut v, "phi", b.phi);
            finite(&mut v, "psi1", b.psi1);
            finite(&mut v, "psi2", b.psi2);
            positive(&mut v, "sigma", b.sigma);
        }
    }
    ValidationReport { violations: v }
}

/// Family B lifted to the first-order chain on `Z_t = (X_{t−1}, X_t)`.
///
/// States are ordered `(0,0), (0,1), (1,0), (1,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourStateChain {
    pub transition: TransitionMatrix,
    pub pi: [f64; 4],
    pub parent: ModelBParams,
}

/// Index of the lifted state `(prev, cur)`.
#[inline]
pub fn pair_index(prev: usize, cur: usize) -> usize {
    2 * prev + cur
}

pub fn lift_four_state(m: &ModelBParams) -> FourStateChain {
    let (p00, p01, p10, p11) = (m.p(0, 0), m.p01, m.p10, m.p(1, 1));
    #[rustfmt::skip]
    let entries = vec![
        p00, p01, 0.0, 0.0,
        0.0, 0.0, p10, p11,
        p00, p01, 0.0, 0.0,
        0.0, 0.0, p10, p11,
    ];
    let transition = TransitionMatrix { d: 4, entries };
    let s = m.p01 + m.p10;
    let pi = [p00 * m.p10 / s, m.p01 * m.p10 / s, m.p10 * m.p01 / s, p11 * m.p01 / s];
    FourStateChain { transition, pi, parent: *m }
}

impl Model {
    pub fn validate(&self) -> ValidationReport {
        validate_model(self)
    }

    /// Transition matrix of the native two-state regime chain.
    pub fn regime_transition(&self) -> TransitionMatrix {
        match self {
            Model::A(a) => TransitionMatrix { d: 2, entries: vec![a.p(0, 0), a.p(0, 1), a.p(1, 0), a.p(1, 1)] },
            Model::B(b) => TransitionMatrix { d: 2, entries: vec![b.p(0, 0), b.p(0, 1), b.p(1, 0), b.p(1, 1)] },
        }
    }

    /// Conditional density of `Y_t = y` given `X_{t−1} = i`, `X_t = j`, `Y_{t−1} = y_prev`.
    ///
    /// Family A ignores `i`.
    pub fn emission_density(&self, i: usize, j: usize, y: f64, y_prev: f64) -> f64 {
        match self {
            Model::A(a) => normal_pdf(y, a.mean(j, y_prev), a.sigma[j]),
            Model::B(b) => normal_pdf(y, b.mean(i, j, y_prev), b.sigma),
        }
    }

    /// First-order hidden chain used by the forward filter.
    ///
    /// Family A maps to its two regimes; family B to the four-state lift.
    pub fn chain(&self) -> SwitchingChain {
        match self {
            Model::A(a) => {
                let transition = self.regime_transition();
                // closed form for two states: π₀ = p10 / (p01 + p10)
                let (p01, p10) = (a.p(0, 1), a.p(1, 0));
                let initial = vec![p10 / (p01 + p10), p01 / (p01 + p10)];
                SwitchingChain {
                    transition,
                    initial,
                    intercept: a.mu.to_vec(),
                    slope: a.psi.to_vec(),
                    sd: a.sigma.to_vec(),
                }
            }
            Model::B(b) => {
                let lift = lift_four_state(b);
                let intercept = (0..4).map(|z| b.mean(z / 2, z % 2, 0.0)).collect();
                SwitchingChain {
                    transition: lift.transition,
                    initial: lift.pi.to_vec(),
                    intercept,
                    slope: vec![b.phi; 4],
                    sd: vec![b.sigma; 4],
                }
            }
        }
    }
}

/// First-order hidden chain with Gaussian autoregressive emissions:
/// in hidden state `s`, `Y_t ~ N(intercept[s] + slope[s]·Y_{t−1}, sd[s]²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingChain {
    pub transition: TransitionMatrix,
    pub initial: Vec<f64>,
    pub intercept: Vec<f64>,
    pub slope: Vec<f64>,
    pub sd: Vec<f64>,
}

impl SwitchingChain {
    pub fn new(
        transition: TransitionMatrix,
        initial: Vec<f64>,
        intercept: Vec<f64>,
        slope: Vec<f64>,
        sd: Vec<f64>,
    ) -> Result<Self> {
        let d = transition.dim();
        if [initial.len(), intercept.len(), slope.len(), sd.len()].iter().any(|&l| l != d) {
            return Err(Error::InvalidArgument(format!("every per-state vector must have {d} entries")));
        }
        let mass: f64 = initial.iter().sum();
        if initial.iter().any(|&p| p < 0.0) || (mass - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument("initial distribution must be a probability vector".into()));
        }
        if sd.iter().any(|&s| !(s > 0.0)) {
            return Err(Error::InvalidArgument("emission scales must be positive".into()));
        }
        Ok(SwitchingChain { transition, initial, intercept, slope, sd })
    }

    pub fn n_states(&self) -> usize {
        self.transition.dim()
    }

    #[inline]
    pub fn emission(&self, s: usize, y: f64, y_prev: f64) -> f64 {
        normal_pdf(y, self.intercept[s] + self.slope[s] * y_prev, self.sd[s])
    }
}

/// A simulated observation path.
///
/// `y0` is the observation preceding `y[0]` (the last discarded burn-in value,
/// or the zero initial value when `burn_in == 0`); likelihoods condition on it.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub y: Vec<f64>,
    pub x: Vec<usize>,
    pub y0: f64,
    pub seed: u64,
    pub burn_in: usize,
}

/// Simulates `n` observations after `burn_in` discarded steps.
///
/// `X₀` is drawn from the stationary distribution and `Y₀ = 0`. The stream
/// is ChaCha8 seeded with `seed`; transitions consume one uniform and the
/// innovation one ziggurat standard normal per step, in that order.
pub fn sample_path(m: &Model, n: usize, burn_in: usize, seed: u64) -> Result<PathSample> {
    if n == 0 {
        return Err(Error::InvalidArgument("path length must be at least 1".into()));
    }
    m.validate().into_result()?;
    let t = m.regime_transition();
    let pi0 = t.get(1, 0) / (t.get(0, 1) + t.get(1, 0));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x_prev = usize::from(rng.random::<f64>() >= pi0);
    let mut y_prev = 0.0;
    let mut y0 = 0.0;
    let mut y = Vec::with_capacity(n);
    let mut x = Vec::with_capacity(n);
    for step in 0..burn_in + n {
        let x_cur = usize::from(rng.random::<f64>() >= t.get(x_prev, 0));
        let eps: f64 = rng.sample(StandardNormal);
        let y_cur = match m {
            Model::A(a) => a.mean(x_cur, y_prev) + a.sigma[x_cur] * eps,
            Model::B(b) => b.mean(x_prev, x_cur, y_prev) + b.sigma * eps,
        };
        if step >= burn_in {
            if step == burn_in {
                y0 = y_prev;
            }
            y.push(y_cur);
            x.push(x_cur);
        }
        x_prev = x_cur;
        y_prev = y_cur;
    }
    Ok(PathSample { y, x, y0, seed, burn_in })
}
