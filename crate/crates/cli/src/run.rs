use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use hmmdiv::fredholm::{FredholmDiagnostics, FredholmEngine};
use hmmdiv::montecarlo::estimate_mc_grid;
use hmmdiv::Order;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::CaseSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Methods {
    pub mc: bool,
    pub fredholm: bool,
}

impl Methods {
    pub const BOTH: Methods = Methods { mc: true, fredholm: true };
}

impl FromStr for Methods {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut m = Methods { mc: false, fredholm: false };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "mc" => m.mc = true,
                "fredholm" => m.fredholm = true,
                other => bail!("unknown method `{other}` (expected mc or fredholm)"),
            }
        }
        if !m.mc && !m.fredholm {
            bail!("no method selected");
        }
        Ok(m)
    }
}

impl fmt::Display for Methods {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> =
            [(self.mc, "mc"), (self.fredholm, "fredholm")].iter().filter(|(on, _)| *on).map(|(_, n)| *n).collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub case: String,
    pub alpha: Order,
    pub fredholm: Option<f64>,
    pub mc_mean: Option<f64>,
    pub mc_sd: Option<f64>,
    /// `(fredholm − mc) / mc × 100`.
    pub rel_err_pct: Option<f64>,
    pub fredholm_secs: Option<f64>,
    pub mc_secs: Option<f64>,
    pub diagnostics: Option<FredholmDiagnostics>,
}

/// Evaluates every order of one case with the requested methods.
///
/// Monte Carlo orders are estimated one at a time on the same replications,
/// so each row's value and timing stand alone. Fredholm orders share the
/// kernel solves; a row that triggers a solve carries its time.
pub fn run_case(spec: &CaseSpec, methods: Methods) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let mut engine = if methods.fredholm {
        Some(FredholmEngine::new(&spec.theta1, &spec.theta, spec.grid).with_context(|| spec.name.clone())?)
    } else {
        None
    };
    spec.alphas
        .iter()
        .map(|&alpha| {
            let mut row = ResultRow {
                case: spec.name.clone(),
                alpha,
                fredholm: None,
                mc_mean: None,
                mc_sd: None,
                rel_err_pct: None,
                fredholm_secs: None,
                mc_secs: None,
                diagnostics: None,
            };
            if let Some(engine) = engine.as_mut() {
                let start = Instant::now();
                let r = engine.divergence(alpha).with_context(|| format!("{} α={alpha}: fredholm", spec.name))?;
                row.fredholm_secs = Some(start.elapsed().as_secs_f64());
                row.fredholm = Some(r.value);
                row.diagnostics = Some(r.diagnostics);
            }
            if methods.mc {
                let start = Instant::now();
                let e = estimate_mc_grid(&spec.theta1, &spec.theta, &[alpha], &spec.mc)
                    .with_context(|| format!("{} α={alpha}: monte carlo", spec.name))?
                    .pop()
                    .ok_or_else(|| anyhow!("empty estimate"))?;
                row.mc_secs = Some(start.elapsed().as_secs_f64());
                row.mc_mean = Some(e.mean);
                row.mc_sd = Some(e.std_dev);
            }
            if let (Some(f), Some(m)) = (row.fredholm, row.mc_mean) {
                if m != 0.0 {
                    row.rel_err_pct = Some((f - m) / m * 100.0);
                }
            }
            Ok(row)
        })
        .collect()
}

/// Runs all cases in parallel; rows come back ordered by case, then order.
pub fn run_all(cases: &[CaseSpec], methods: Methods) -> Result<Vec<ResultRow>> {
    let per_case: Vec<Vec<ResultRow>> = cases.par_iter().map(|c| run_case(c, methods)).collect::<Result<_>>()?;
    Ok(per_case.into_iter().flatten().collect())
}
