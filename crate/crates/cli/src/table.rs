//! Text and CSV renderings of result rows.

use std::fmt::Write;

use crate::run::ResultRow;

const HEADERS: [&str; 8] = ["case", "alpha", "fredholm", "mc_mean", "mc_sd", "rel_err_pct", "fredholm_secs", "mc_secs"];

fn cells(r: &ResultRow, fmt: impl Fn(f64) -> String) -> [String; 8] {
    let opt = |v: Option<f64>| v.map(&fmt).unwrap_or_default();
    [
        r.case.clone(),
        r.alpha.label(),
        opt(r.fredholm),
        opt(r.mc_mean),
        opt(r.mc_sd),
        opt(r.rel_err_pct),
        opt(r.fredholm_secs),
        opt(r.mc_secs),
    ]
}

/// Aligned table with four decimals; empty cells for methods not run.
pub fn render_text(rows: &[ResultRow]) -> String {
    let body: Vec<[String; 8]> = rows.iter().map(|r| cells(r, |v| format!("{v:.4}"))).collect();
    let mut widths = HEADERS.map(str::len);
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, row: &[String]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(&mut out, &HEADERS.map(String::from));
    for row in &body {
        line(&mut out, row);
    }
    out
}

/// CSV with shortest round-trip float formatting.
pub fn render_csv(rows: &[ResultRow]) -> String {
    let mut out = HEADERS.join(",");
    out.push('\n');
    for r in rows {
        let mut row = cells(r, |v| format!("{v:?}"));
        row[0] = quote(&row[0]);
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
