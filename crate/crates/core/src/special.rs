//! Normal and noncentral chi-square helpers.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use libm::erfc;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[inline]
pub fn normal_pdf(x: f64, mean: f64, sd: f64) -> f64 {
    let z = (x - mean) / sd;
    (-0.5 * z * z).exp() / (sd * (2.0 * PI).sqrt())
}

#[inline]
pub fn normal_ln_pdf(x: f64, mean: f64, sd: f64) -> f64 {
    let z = (x - mean) / sd;
    -0.5 * z * z - sd.ln() - LN_SQRT_2PI
}

/// Standard normal CDF.
#[inline]
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal upper tail `1 - Φ(z)`, accurate for large `z`.
#[inline]
pub fn std_normal_sf(z: f64) -> f64 {
    0.5 * erfc(z * FRAC_1_SQRT_2)
}

/// Standard normal mass of `[lo, hi]`, computed on the tail that avoids cancellation.
pub fn std_normal_mass(lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    if lo > 0.0 {
        std_normal_sf(lo) - std_normal_sf(hi)
    } else {
        std_normal_cdf(hi) - std_normal_cdf(lo)
    }
}

/// `P(χ²₁(λ) ≤ x)` for a one-degree-of-freedom noncentral chi-square.
///
/// A `χ²₁(λ)` variable is `(Z + √λ)²` with `Z` standard normal, so the CDF is
/// `Φ(√x − √λ) − Φ(−√x − √λ)`.
pub fn noncentral_chisq1_cdf(x: f64, lambda: f64) -> f64 {
    debug_assert!(lambda >= 0.0);
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    let r = x.sqrt();
    let s = lambda.max(0.0).sqrt();
    std_normal_mass(-r - s, r - s)
}

/// `log Σ exp(xs)`, returning `-inf` for an empty slice.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    if max == f64::INFINITY {
        return max;
    }
    let sum: f64 = xs.iter().map(|&x| (x - max).exp()).sum();
    max + sum.ln()
}
