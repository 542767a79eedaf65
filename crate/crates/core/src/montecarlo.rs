//! Simulation estimators of the divergence rates.
//!
//! Each replication samples one path under `p` and runs both filters over it.
//! With `log r_t` the per-step log ratio of the two conditional densities:
//!
//! - KL: `K̂ = (1/n) Σ_t log r_t`, i.e. `(ℓ_p − ℓ_q)/n`.
//! - Rényi: `Ĵ = (1/n) Σ_t r_t^{α−1}` and `D̂ = log Ĵ / (α − 1)`, with
//!   `log Ĵ` formed by log-sum-exp so large ratios at `α = 2` cannot overflow.
//!
//! The reported spread is the sample standard deviation of the per-replication
//! values (not divided by √reps).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::per_step_log_ratios;
use crate::model::{sample_path, Model};
use crate::order::Order;
use crate::special::log_sum_exp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McConfig {
    /// Retained observations per replication.
    pub n: usize,
    pub reps: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { n: 2000, reps: 100, burn_in: 100, seed: 20_240_611 }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.reps == 0 {
            return Err(Error::InvalidArgument("mc.n and mc.reps must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceEstimate {
    pub alpha: Order,
    pub mean: f64,
    pub std_dev: f64,
    pub reps: usize,
    pub method: &'static str,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `rep`: the base seed xor a splitmix64 hash of the index.
pub fn replication_seed(seed: u64, rep: usize) -> u64 {
    seed ^ splitmix64(rep as u64)
}

/// KL statistic of one replication.
pub fn kl_statistic(log_ratios: &[f64]) -> f64 {
    log_ratios.iter().sum::<f64>() / log_ratios.len() as f64
}

/// Rényi statistic of one replication; falls back to [`kl_statistic`] near `α = 1`.
pub fn renyi_statistic(log_ratios: &[f64], alpha: Order) -> f64 {
    match alpha.resolved() {
        Order::Kl => kl_statistic(log_ratios),
        Order::Renyi(a) => {
            let scaled: Vec<f64> = log_ratios.iter().map(|&l| (a - 1.0) * l).collect();
            let log_j = log_sum_exp(&scaled) - (log_ratios.len() as f64).ln();
            log_j / (a - 1.0)
        }
    }
}

fn replication_ratios(p: &Model, q: &Model, cfg: &McConfig, rep: usize) -> Result<Vec<f64>> {
    let path = sample_path(p, cfg.n, cfg.burn_in, replication_seed(cfg.seed, rep))?;
    per_step_log_ratios(&p.chain(), &q.chain(), path.y0, &path.y)
        .map_err(|e| Error::Replication { rep, source: Box::new(e) })
}

fn summarize(alpha: Order, values: &[f64]) -> DivergenceEstimate {
    let reps = values.len();
    let mean = values.iter().sum::<f64>() / reps as f64;
    let std_dev = if reps > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (reps - 1) as f64).sqrt()
    } else {
        0.0
    };
    DivergenceEstimate { alpha, mean, std_dev, reps, method: "monte-carlo" }
}

fn check_inputs(p: &Model, q: &Model, cfg: &McConfig) -> Result<()> {
    cfg.validate()?;
    p.validate().into_result()?;
    q.validate().into_result()
}

/// Estimates several orders from the same replications.
///
/// Every order sees identical paths, so the result for one order matches a
/// standalone call with the same config.
pub fn estimate_mc_grid(p: &Model, q: &Model, alphas: &[Order], cfg: &McConfig) -> Result<Vec<DivergenceEstimate>> {
    check_inputs(p, q, cfg)?;
    for a in alphas {
        if let Order::Renyi(v) = a {
            if !(*v > 0.0) {
                return Err(Error::InvalidArgument(format!("alpha must be positive, got {v}")));
            }
        }
    }
    // collect in replication order so the reduction does not depend on scheduling
    let per_rep: Vec<Vec<f64>> = (0..cfg.reps)
        .into_par_iter()
        .map(|rep| {
            let ratios = replication_ratios(p, q, cfg, rep)?;
            Ok(alphas.iter().map(|&a| renyi_statistic(&ratios, a)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let column: Vec<f64> = per_rep.iter().map(|row| row[k]).collect();
            summarize(a, &column)
        })
        .collect())
}

pub fn estimate_kl_mc(p: &Model, q: &Model, cfg: &McConfig) -> Result<DivergenceEstimate> {
    Ok(estimate_mc_grid(p, q, &[Order::Kl], cfg)?.remove(0))
}

pub fn estimate_renyi_mc(p: &Model, q: &Model, alpha: f64, cfg: &McConfig) -> Result<DivergenceEstimate> {
    Ok(estimate_mc_grid(p, q, &[Order::Renyi(alpha)], cfg)?.remove(0))
}
