//! The two model families seen through the filter-weight recursion.

use crate::model::{ModelAParams, ModelBParams};
use crate::special::{log_sum_exp, normal_ln_pdf, normal_pdf};

use super::levels::{q_four_state, q_two_state, two_state_threshold};

/// A model whose hidden state enters the filter through a finite set of
/// density components.
///
/// For family A a component is the current regime `X_t`. For family B it is
/// the pair `(X_{t−1}, X_t)`, so the lagged regime is part of the state.
pub trait FilterModel: Copy + Send + Sync {
    const COMPONENTS: usize;

    /// Probability that component `src` at `t−1` is followed by `tgt` at `t`.
    fn link(&self, src: usize, tgt: usize) -> f64;

    /// Density of `Y_t = y` in component `c` after `Y_{t−1} = prev`.
    fn component_density(&self, c: usize, y: f64, prev: f64) -> f64;

    /// Log of the one-step predictive density when the filter puts weight `w`
    /// on regime 0 at `t−1`.
    fn ln_mixture(&self, y: f64, prev: f64, w: f64) -> f64;

    /// `P(W_t ≤ x)` when the previous weight is `w`, `Y_{t−1} = u`, the data
    /// come from `gen` in component `tgt` and the filter runs under `filt`.
    fn level_cdf(gen: &Self, filt: &Self, tgt: usize, u: f64, w: f64, x: f64) -> f64;
}

impl FilterModel for ModelAParams {
    const COMPONENTS: usize = 2;

    fn link(&self, src: usize, tgt: usize) -> f64 {
        self.p(src, tgt)
    }

    fn component_density(&self, c: usize, y: f64, prev: f64) -> f64 {
        normal_pdf(y, self.mean(c, prev), self.sigma[c])
    }

    fn ln_mixture(&self, y: f64, prev: f64, w: f64) -> f64 {
        let terms: [f64; 2] = std::array::from_fn(|j| {
            let weight = self.p(0, j) * w + self.p(1, j) * (1.0 - w);
            weight.ln() + normal_ln_pdf(y, self.mean(j, prev), self.sigma[j])
        });
        log_sum_exp(&terms)
    }

    fn level_cdf(gen: &Self, filt: &Self, tgt: usize, u: f64, w: f64, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        q_two_state(u, two_state_threshold(filt, w, x), tgt, gen, filt)
    }
}

impl FilterModel for ModelBParams {
    const COMPONENTS: usize = 4;

    fn link(&self, src: usize, tgt: usize) -> f64 {
        // (i, j) → (j', k) needs j = j'
        if src % 2 == tgt / 2 {
            self.p(tgt / 2, tgt % 2)
        } else {
            0.0
        }
    }

    fn component_density(&self, c: usize, y: f64, prev: f64) -> f64 {
        normal_pdf(y, self.mean(c / 2, c % 2, prev), self.sigma)
    }

    fn ln_mixture(&self, y: f64, prev: f64, w: f64) -> f64 {
        let terms: [f64; 4] = std::array::from_fn(|c| {
            let (i, j) = (c / 2, c % 2);
            let prior = if i == 0 { w } else { 1.0 - w };
            (prior * self.p(i, j)).ln() + normal_ln_pdf(y, self.mean(i, j, prev), self.sigma)
        });
        log_sum_exp(&terms)
    }

    fn level_cdf(gen: &Self, filt: &Self, tgt: usize, u: f64, w: f64, x: f64) -> f64 {
        q_four_state(x, u, w, tgt / 2, tgt % 2, gen, filt)
    }
}
