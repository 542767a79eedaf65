//! Acceptance bands applied to a finished table.

use std::collections::BTreeMap;

use hmmdiv::Order;

use crate::reference::reference_cell;
use crate::run::ResultRow;

/// Lattice value vs reference: `max(abs, rel·|reference|)`.
pub const FREDHOLM_ABS_TOL: f64 = 0.01;
pub const FREDHOLM_REL_TOL: f64 = 0.05;
/// Simulation mean vs reference, in reference standard deviations.
pub const MC_REFERENCE_SDS: f64 = 3.0;
/// Lattice vs simulation, in own simulation standard deviations.
pub const CROSS_SDS: f64 = 3.0;
/// `|D_0.999 − KL| ≤ CONTINUITY_TOL · max(1, KL)`.
pub const CONTINUITY_TOL: f64 = 0.01;
pub const MONOTONE_SLACK: f64 = 1e-6;
pub const MAX_EIGEN_RESIDUAL: f64 = 1e-10;
pub const COLUMN_SUM_RANGE: (f64, f64) = (0.8, 1.2);

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn test(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }
}

pub fn fredholm_band(reference: f64) -> f64 {
    FREDHOLM_ABS_TOL.max(FREDHOLM_REL_TOL * reference.abs())
}

/// Checks every band that the populated columns allow.
///
/// Rows of cases with reference values are compared against them; all rows
/// get the cross-method, continuity, monotonicity and solver-health checks.
pub fn check_rows(rows: &[ResultRow]) -> CheckReport {
    let mut rep = CheckReport::default();
    for r in rows {
        let cell = format!("{} α={}", r.case, r.alpha);
        if let Some(refc) = reference_cell(&r.case, r.alpha) {
            if let Some(f) = r.fredholm {
                let band = fredholm_band(refc.numerical);
                rep.test((f - refc.numerical).abs() <= band, || {
                    format!("{cell}: fredholm {f:.4} outside {:.4} ± {band:.4}", refc.numerical)
                });
            }
            if let Some(m) = r.mc_mean {
                let band = MC_REFERENCE_SDS * refc.simulation_sd;
                rep.test((m - refc.simulation).abs() <= band, || {
                    format!("{cell}: mc {m:.4} outside {:.4} ± {band:.4}", refc.simulation)
                });
            }
        }
        if let (Some(f), Some(m), Some(sd)) = (r.fredholm, r.mc_mean, r.mc_sd) {
            let band = CROSS_SDS * sd;
            rep.test((f - m).abs() <= band, || format!("{cell}: |fredholm − mc| = {:.4} > {band:.4}", (f - m).abs()));
        }
        if let Some(d) = &r.diagnostics {
            rep.test(d.eigen_residual <= MAX_EIGEN_RESIDUAL, || {
                format!("{cell}: eigen residual {:e} > {MAX_EIGEN_RESIDUAL:e}", d.eigen_residual)
            });
            rep.test(d.min_col_sum >= COLUMN_SUM_RANGE.0 && d.max_col_sum <= COLUMN_SUM_RANGE.1, || {
                format!("{cell}: column sums [{:.4}, {:.4}] leave {COLUMN_SUM_RANGE:?}", d.min_col_sum, d.max_col_sum)
            });
        }
    }

    let mut by_case: BTreeMap<&str, Vec<&ResultRow>> = BTreeMap::new();
    for r in rows {
        by_case.entry(&r.case).or_default().push(r);
    }
    for (case, rs) in by_case {
        let mut sorted = rs.clone();
        sorted.sort_by(|a, b| a.alpha.value().total_cmp(&b.alpha.value()));
        for (name, get) in [("fredholm", column_fredholm as fn(&ResultRow) -> Option<f64>), ("mc", column_mc)] {
            let vals: Vec<(Order, f64)> = sorted.iter().filter_map(|r| get(r).map(|v| (r.alpha, v))).collect();
            for w in vals.windows(2) {
                let ((a0, v0), (a1, v1)) = (w[0], w[1]);
                rep.test(v1 >= v0 - MONOTONE_SLACK, || {
                    format!("{case}: {name} decreases from α={a0} ({v0:.6}) to α={a1} ({v1:.6})")
                });
            }
            let kl = vals.iter().find(|(a, _)| a.is_kl()).map(|p| p.1);
            let near = vals.iter().find(|(a, _)| (a.value() - 0.999).abs() < 1e-12).map(|p| p.1);
            if let (Some(kl), Some(near)) = (kl, near) {
                let band = CONTINUITY_TOL * kl.abs().max(1.0);
                rep.test((near - kl).abs() <= band, || {
                    format!("{case}: {name} |D_0.999 − KL| = {:.6} > {band:.6}", (near - kl).abs())
                });
            }
        }
    }
    rep
}

fn column_fredholm(r: &ResultRow) -> Option<f64> {
    r.fredholm
}

fn column_mc(r: &ResultRow) -> Option<f64> {
    r.mc_mean
}
