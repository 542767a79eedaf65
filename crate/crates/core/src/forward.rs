//! Exact likelihoods by the normalized forward recursion.
//!
//! With `C_{t,j}` the unnormalized forward quantities, the filter keeps the
//! normalized weights `C_{t,j} / Σ_s C_{t,s}` and accumulates
//! `log Σ_j C*_{t,j}` where `C*_{t,j} = f_j(y_t | y_{t−1}) Σ_s p_{sj} w_{t−1,s}`.
//! Each increment is the log conditional density of `y_t` given the past, so
//! the sum telescopes to the joint log density without ever storing
//! magnitudes that grow with `t`.
//!
//! The first observation is weighted by the initial (stationary) law without
//! a transition: `C*_{1,j} = π_j f_j(y_1 | y_0)`. Likelihoods are conditional
//! on the preceding observation `y_0`.
//!
//! [`matrix_log_likelihood`] evaluates the same density as the L1 norm of a
//! product of [`DensityMatrix`] factors and [`brute_force_log_likelihood`] as
//! an explicit sum over hidden paths; both exist to cross-check the filter.

use crate::error::{Error, Result};
use crate::model::SwitchingChain;
use crate::special::log_sum_exp;

/// Unnormalized totals below this are treated as underflow.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;

/// Maximum number of hidden paths the brute-force oracle will enumerate.
pub const PATH_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ForwardState {
    /// Posterior over hidden states given the observations so far.
    pub weights: Vec<f64>,
    pub log_likelihood: f64,
    /// Number of observations absorbed.
    pub t: usize,
}

/// Overwrites `buf` with the unnormalized update and returns its total.
fn unnormalized_update(chain: &SwitchingChain, prior: Option<&[f64]>, y: f64, y_prev: f64, buf: &mut [f64]) -> f64 {
    let d = chain.n_states();
    let mut total = 0.0;
    for (j, slot) in buf.iter_mut().enumerate().take(d) {
        let mass = match prior {
            None => chain.initial[j],
            Some(w) => (0..d).map(|s| chain.transition.get(s, j) * w[s]).sum(),
        };
        *slot = chain.emission(j, y, y_prev) * mass;
        total += *slot;
    }
    total
}

fn normalize(buf: &mut [f64], total: f64, step: usize) -> Result<f64> {
    if !(total.is_finite()) {
        return Err(Error::Numeric("forward update"));
    }
    if buf.iter().all(|&c| c < UNDERFLOW_FLOOR) {
        return Err(Error::Degenerate { step });
    }
    buf.iter_mut().for_each(|c| *c /= total);
    Ok(total.ln())
}

pub fn forward_init(chain: &SwitchingChain, y1: f64, y_prev: f64) -> Result<ForwardState> {
    let mut weights = vec![0.0; chain.n_states()];
    let total = unnormalized_update(chain, None, y1, y_prev, &mut weights);
    let log_likelihood = normalize(&mut weights, total, 1)?;
    Ok(ForwardState { weights, log_likelihood, t: 1 })
}

pub fn forward_step(chain: &SwitchingChain, state: &ForwardState, y_t: f64, y_prev: f64) -> Result<ForwardState> {
    let mut weights = vec![0.0; chain.n_states()];
    let total = unnormalized_update(chain, Some(&state.weights), y_t, y_prev, &mut weights);
    let inc = normalize(&mut weights, total, state.t + 1)?;
    Ok(ForwardState { weights, log_likelihood: state.log_likelihood + inc, t: state.t + 1 })
}

/// Runs the filter over `ys` and returns `log s_t`, the log conditional
/// density of each observation given its past.
pub fn step_log_densities(chain: &SwitchingChain, y0: f64, ys: &[f64]) -> Result<Vec<f64>> {
    if ys.is_empty() {
        return Err(Error::InvalidArgument("empty observation sequence".into()));
    }
    let d = chain.n_states();
    let mut weights = vec![0.0; d];
    let mut next = vec![0.0; d];
    let mut out = Vec::with_capacity(ys.len());
    let mut y_prev = y0;
    for (t, &y) in ys.iter().enumerate() {
        let prior = (t > 0).then_some(weights.as_slice());
        let total = unnormalized_update(chain, prior, y, y_prev, &mut next);
        out.push(normalize(&mut next, total, t + 1)?);
        std::mem::swap(&mut weights, &mut next);
        y_prev = y;
    }
    Ok(out)
}

/// `log p(y_1, …, y_n | y_0)` by the normalized forward recursion.
pub fn log_likelihood(chain: &SwitchingChain, y0: f64, ys: &[f64]) -> Result<f64> {
    Ok(step_log_densities(chain, y0, ys)?.iter().sum())
}

/// Per-step log ratios `log s_t(p) − log s_t(q)` of the two filters' conditional densities.
pub fn per_step_log_ratios(p: &SwitchingChain, q: &SwitchingChain, y0: f64, ys: &[f64]) -> Result<Vec<f64>> {
    let lp = step_log_densities(p, y0, ys)?;
    let lq = step_log_densities(q, y0, ys)?;
    Ok(lp.iter().zip(&lq).map(|(a, b)| a - b).collect())
}

/// Matrix `M_k` with entry `(j, i) = p_ij · f_j(y_k | y_{k−1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    d: usize,
    entries: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(chain: &SwitchingChain, y: f64, y_prev: f64) -> Self {
        let d = chain.n_states();
        let mut entries = vec![0.0; d * d];
        for j in 0..d {
            let f = chain.emission(j, y, y_prev);
            for i in 0..d {
                entries[j * d + i] = chain.transition.get(i, j) * f;
            }
        }
        DensityMatrix { d, entries }
    }

    /// Diagonal emission matrix applied to the initial law.
    pub fn initial(chain: &SwitchingChain, y: f64, y_prev: f64) -> Self {
        let d = chain.n_states();
        let mut entries = vec![0.0; d * d];
        for j in 0..d {
            entries[j * d + j] = chain.emission(j, y, y_prev);
        }
        DensityMatrix { d, entries }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.d + col]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.entries.chunks(self.d).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// `log ‖M_n ⋯ M_1 ν‖₁` with the running vector rescaled to unit norm after
/// every factor.
pub fn matrix_log_likelihood(chain: &SwitchingChain, y0: f64, ys: &[f64]) -> Result<f64> {
    if ys.is_empty() {
        return Err(Error::InvalidArgument("empty observation sequence".into()));
    }
    let mut v = chain.initial.clone();
    let mut log_norm = 0.0;
    let mut y_prev = y0;
    for (t, &y) in ys.iter().enumerate() {
        let m = if t == 0 { DensityMatrix::initial(chain, y, y_prev) } else { DensityMatrix::new(chain, y, y_prev) };
        v = m.apply(&v);
        let norm: f64 = v.iter().map(|x| x.abs()).sum();
        if norm < UNDERFLOW_FLOOR {
            return Err(Error::Degenerate { step: t + 1 });
        }
        v.iter_mut().for_each(|x| *x /= norm);
        log_norm += norm.ln();
        y_prev = y;
    }
    Ok(log_norm)
}

/// Log of the explicit sum over every hidden path `x_1 … x_n`.
pub fn brute_force_log_likelihood(chain: &SwitchingChain, y0: f64, ys: &[f64]) -> Result<f64> {
    let d = chain.n_states();
    let n = ys.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty observation sequence".into()));
    }
    let paths = (d as f64).powi(n as i32);
    if paths > PATH_LIMIT as f64 {
        return Err(Error::PathLimit { paths, limit: PATH_LIMIT });
    }
    let paths = paths as usize;
    // log f_j(y_t | y_{t−1}) for every (t, j)
    let log_emit: Vec<f64> = ys
        .iter()
        .enumerate()
        .flat_map(|(t, &y)| {
            let y_prev = if t == 0 { y0 } else { ys[t - 1] };
            (0..d).map(move |j| chain.emission(j, y, y_prev).ln())
        })
        .collect();
    let mut terms = Vec::with_capacity(paths);
    let mut path = vec![0usize; n];
    for code in 0..paths {
        let mut c = code;
        for slot in path.iter_mut() {
            *slot = c % d;
            c /= d;
        }
        let mut lp = chain.initial[path[0]].ln() + log_emit[path[0]];
        for t in 1..n {
            lp += chain.transition.get(path[t - 1], path[t]).ln() + log_emit[t * d + path[t]];
        }
        terms.push(lp);
    }
    Ok(log_sum_exp(&terms))
}
