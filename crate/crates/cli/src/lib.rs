//! Batch driver for divergence rate tables: configuration, runs, rendering
//! and band checks.

pub mod check;
pub mod config;
pub mod reference;
pub mod run;
pub mod selftest;
pub mod table;

pub use config::{CaseSpec, Config, Family};
pub use run::{run_all, run_case, Methods, ResultRow};

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

#[derive(Serialize)]
struct DiagnosticsRow<'a> {
    case: &'a str,
    alpha: hmmdiv::Order,
    fredholm_secs: Option<f64>,
    mc_secs: Option<f64>,
    fredholm: Option<&'a hmmdiv::fredholm::FredholmDiagnostics>,
}

pub fn diagnostics_json(rows: &[ResultRow]) -> String {
    let diag: Vec<DiagnosticsRow> = rows
        .iter()
        .map(|r| DiagnosticsRow {
            case: &r.case,
            alpha: r.alpha,
            fredholm_secs: r.fredholm_secs,
            mc_secs: r.mc_secs,
            fredholm: r.diagnostics.as_ref(),
        })
        .collect();
    serde_json::to_string_pretty(&diag).expect("diagnostics serialize")
}

/// Writes `table.txt`, `table.csv` and `diagnostics.json` into `dir`.
pub fn write_outputs(dir: &Path, rows: &[ResultRow]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for (name, body) in [
        ("table.txt", table::render_text(rows)),
        ("table.csv", table::render_csv(rows)),
        ("diagnostics.json", diagnostics_json(rows)),
    ] {
        let path = dir.join(name);
        fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}
