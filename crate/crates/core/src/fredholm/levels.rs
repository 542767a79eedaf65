//! Conditional CDFs of the next filter weight.
//!
//! Given the previous filter weight `w`, the lagged observation `u` and the
//! hidden component generating `Y_t`, the next weight `W_t` is a deterministic
//! function of `Y_t`. Its CDF at level `x` is the probability that `Y_t` lands
//! where the filter's updated state-0 weight is at most `x`.

use crate::model::{ModelAParams, ModelBParams};
use crate::special::{noncentral_chisq1_cdf, std_normal_cdf, std_normal_mass, std_normal_sf};

/// `P(g(Y|state 0, u) / g(Y|state 1, u) ≤ z)` under family A, with the ratio
/// formed from `filt` and `Y` drawn from `gen` in state `j` after lag `u`.
///
/// With `ζ = 1/(2σ₁²) − 1/(2σ₀²)` the log ratio is quadratic in `Y`, and the
/// event reduces to a noncentral `χ²₁` bound when `ζ ≠ 0`. Equal scales
/// (`ζ = 0`) leave a linear log ratio and a single normal CDF. The ratio is
/// positive, so `z ≤ 0` gives 0.
pub fn q_two_state(u: f64, z: f64, j: usize, gen: &ModelAParams, filt: &ModelAParams) -> f64 {
    if !(z > 0.0) {
        return 0.0;
    }
    if z == f64::INFINITY {
        return 1.0;
    }
    let (s0, s1) = (filt.sigma[0], filt.sigma[1]);
    let (m0, m1) = (filt.mean(0, u), filt.mean(1, u));
    let v0 = 2.0 * s0 * s0;
    let v1 = 2.0 * s1 * s1;
    let zeta = 1.0 / v1 - 1.0 / v0;
    let eta = m0 / v0 - m1 / v1;
    let nu = -m0 * m0 / v0 + m1 * m1 / v1;
    let level = (s0 * z / s1).ln();

    let gen_mean = gen.mean(j, u);
    let gen_sd = gen.sigma[j];

    if zeta == 0.0 {
        // 2ηy + ν ≤ level
        if eta == 0.0 {
            return if nu <= level { 1.0 } else { 0.0 };
        }
        let cut = (level - nu) / (2.0 * eta);
        let zc = (cut - gen_mean) / gen_sd;
        return if eta > 0.0 { std_normal_cdf(zc) } else { std_normal_sf(zc) };
    }

    let shift = eta / zeta;
    let threshold = level / zeta + shift * shift - nu / zeta;
    let lambda = ((gen_mean + shift) / gen_sd).powi(2);
    let inside = if threshold > 0.0 { noncentral_chisq1_cdf(threshold / (gen_sd * gen_sd), lambda) } else { 0.0 };
    if zeta > 0.0 {
        inside
    } else {
        1.0 - inside
    }
}

/// Filter level map of family A: `W_t ≤ x` iff the emission ratio is at most `z(w, x)`.
pub fn two_state_threshold(filt: &ModelAParams, w: f64, x: f64) -> f64 {
    if x >= 1.0 {
        return f64::INFINITY;
    }
    let to_one = filt.p(0, 1) * w + filt.p(1, 1) * (1.0 - w);
    let to_zero = filt.p(0, 0) * w + filt.p(1, 0) * (1.0 - w);
    x / (1.0 - x) * to_one / to_zero
}

/// Number of scan cells over the ±`SCAN_SDS` window when bracketing roots.
const SCAN_CELLS: usize = 512;
const SCAN_SDS: f64 = 9.0;

/// Signed exponential sum `h(y) = Σ_c s_c exp(β_c y + γ_c)`.
struct ExpSum {
    terms: Vec<(f64, f64, f64)>, // (sign, slope, log magnitude)
}

impl ExpSum {
    fn sign_at(&self, y: f64) -> bool {
        let max = self.terms.iter().map(|&(_, b, g)| b * y + g).fold(f64::NEG_INFINITY, f64::max);
        let h: f64 = self.terms.iter().map(|&(s, b, g)| s * (b * y + g - max).exp()).sum();
        h <= 0.0
    }
}

/// `P(W_t ≤ x)` under family B for the pair `(X_{t−1}, X_t) = (j, k)`.
///
/// The event is `g_x(Y_t) ≤ 0` with
/// `g_x(y) = (1−x)p₀₀w f₀₀ − x p₀₁w f₀₁ + (1−x)p₁₀(1−w) f₁₀ − x p₁₁(1−w) f₁₁`
/// (densities and transitions from `filt`, lag `u`) and
/// `Y_t ~ f_{jk}(·|u)` under `gen`. Because the four Gaussians share one scale,
/// `g_x(y) e^{y²/2σ²}` is a sum of four exponentials in `y` with at most three
/// real roots. The roots are bracketed on a ±9σ scan of the generating law,
/// refined by bisection, and the probability is summed exactly from normal
/// CDF increments.
pub fn q_four_state(x: f64, u: f64, w: f64, j: usize, k: usize, gen: &ModelBParams, filt: &ModelBParams) -> f64 {
    let coef = [
        (1.0 - x) * filt.p(0, 0) * w,
        -x * filt.p(0, 1) * w,
        (1.0 - x) * filt.p(1, 0) * (1.0 - w),
        -x * filt.p(1, 1) * (1.0 - w),
    ];
    let var = filt.sigma * filt.sigma;
    // merge components that share a mean: their exponentials coincide
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(4); // (mean, coefficient)
    for (c, &a) in coef.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let m = filt.mean(c / 2, c % 2, u);
        match merged.iter_mut().find(|(mm, _)| *mm == m) {
            Some(slot) => slot.1 += a,
            None => merged.push((m, a)),
        }
    }
    let terms: Vec<(f64, f64, f64)> = merged
        .into_iter()
        .filter(|&(_, a)| a != 0.0)
        .map(|(m, a)| (a.signum(), m / var, a.abs().ln() - m * m / (2.0 * var)))
        .collect();
    if terms.is_empty() {
        return 1.0;
    }
    if terms.iter().all(|t| t.0 > 0.0) {
        return 0.0;
    }
    if terms.iter().all(|t| t.0 < 0.0) {
        return 1.0;
    }
    let h = ExpSum { terms };

    let mean = gen.mean(j, k, u);
    let sd = gen.sigma;
    let step = 2.0 * SCAN_SDS / SCAN_CELLS as f64;
    let at = |z: f64| mean + sd * z;

    let mut z_lo = -SCAN_SDS;
    let mut neg_lo = h.sign_at(at(z_lo));
    let mut prob = if neg_lo { std_normal_cdf(z_lo) } else { 0.0 };
    // start of the current h ≤ 0 run, in standard units
    let mut run_start = z_lo;
    for cell in 1..=SCAN_CELLS {
        let z_hi = -SCAN_SDS + step * cell as f64;
        let neg_hi = h.sign_at(at(z_hi));
        if neg_hi != neg_lo {
            let (mut a, mut b) = (z_lo, z_hi);
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                if h.sign_at(at(mid)) == neg_lo {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let root = 0.5 * (a + b);
            if neg_lo {
                prob += std_normal_mass(run_start, root);
            } else {
                run_start = root;
            }
        }
        z_lo = z_hi;
        neg_lo = neg_hi;
    }
    if neg_lo {
        prob += std_normal_mass(run_start, SCAN_SDS) + std_normal_sf(SCAN_SDS);
    }
    prob.clamp(0.0, 1.0)
}
