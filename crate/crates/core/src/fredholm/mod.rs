//! Divergence rates from the stationary law of the filter weight.
//!
//! Under `θ₁` the triple `(component, Y_{t−1}, W_{t−1})`, with `W` the
//! filter's regime-0 weight computed under some filter model, is a Markov
//! chain. Its stationary density solves a homogeneous Fredholm equation of
//! the second kind. The equation is discretized on the tensor lattice
//! `u_i = −a + 2ai/N`, `w_i = i/N` (`i = 1..N−1`) for each component, which
//! gives a column-stochastic matrix whose Perron vector approximates the
//! density. Rates follow from one-step expectations against that density:
//!
//! - Rényi: `D_α = log J^α / (α − 1)` with the filter run under `θ`.
//! - KL: `E log p_{θ₁}(Y_t | past) − E log p_θ(Y_t | past)`, each term using
//!   the density of its own filter.

mod family;
mod functional;
mod kernel;
mod levels;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Model, ModelAParams, ModelBParams};
use crate::order::Order;

pub use family::FilterModel;
pub use functional::{j_alpha, j_log, stationary_expectation};
pub use kernel::{build_kernel, solve_invariant, InvariantDensityGrid, KernelMatrix, COLUMN_SUM_BAND};
pub use levels::{q_four_state, q_two_state, two_state_threshold};

/// Lattice and quadrature resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    /// Lattice subdivisions; `N − 1` interior nodes per axis.
    #[serde(rename = "N")]
    pub n: usize,
    /// Half-width of the observation window.
    pub a: f64,
    /// Simpson nodes per axis for the expectations (odd).
    pub quad_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n: 16, a: 15.0, quad_points: 201 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::InvalidGrid(format!("N must be at least 4, got {}", self.n)));
        }
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidGrid(format!("a must be positive, got {}", self.a)));
        }
        if self.quad_points < 51 || self.quad_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!("quad_points must be odd and >= 51, got {}", self.quad_points)));
        }
        Ok(())
    }

    /// Half the spacing of the weight axis, `1/(2N)`.
    pub fn delta(&self) -> f64 {
        0.5 / self.n as f64
    }

    /// `(2a/N)·(1/N)`, the area of one lattice cell.
    pub fn cell_area(&self) -> f64 {
        2.0 * self.a / self.n as f64 / self.n as f64
    }

    pub fn u_nodes(&self) -> Vec<f64> {
        let n = self.n as f64;
        (1..self.n).map(|i| -self.a + 2.0 * self.a * i as f64 / n).collect()
    }

    pub fn x_nodes(&self) -> Vec<f64> {
        (1..self.n).map(|i| i as f64 / self.n as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-12, max_iters: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FredholmDiagnostics {
    pub eigen_residual: f64,
    /// Largest `|column sum − 1|` before renormalization.
    pub max_col_sum_deviation: f64,
    pub iterations: usize,
    pub min_col_sum: f64,
    pub max_col_sum: f64,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceResult {
    pub alpha: Order,
    pub value: f64,
    pub method: &'static str,
    pub diagnostics: FredholmDiagnostics,
}

#[derive(Debug, Clone)]
struct Solved {
    density: InvariantDensityGrid,
    min_col_sum: f64,
    max_col_sum: f64,
}

fn solve_for<M: FilterModel>(gen: &M, filt: &M, grid: &GridSpec, opts: &SolverOptions) -> Result<Solved> {
    let k = build_kernel(gen, filt, grid)?;
    let density = solve_invariant(&k, grid.cell_area(), opts.tol, opts.max_iters)?;
    let min_col_sum = k.pre_norm_col_sums.iter().copied().fold(f64::INFINITY, f64::min);
    let max_col_sum = k.pre_norm_col_sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Solved { density, min_col_sum, max_col_sum })
}

#[derive(Debug, Clone, Copy)]
enum Pair {
    A(ModelAParams, ModelAParams),
    B(ModelBParams, ModelBParams),
}

/// Divergence rates of `θ₁` from `θ` that share kernel solves across orders.
///
/// Every Rényi order needs only the solve with the filter under `θ`; KL
/// additionally needs the solve with the filter under `θ₁`. Both are computed
/// on first use and kept.
#[derive(Debug, Clone)]
pub struct FredholmEngine {
    pair: Pair,
    grid: GridSpec,
    opts: SolverOptions,
    cross: Option<Solved>,
    own: Option<Solved>,
}

impl FredholmEngine {
    pub fn new(theta1: &Model, theta: &Model, grid: GridSpec) -> Result<Self> {
        Self::with_options(theta1, theta, grid, SolverOptions::default())
    }

    pub fn with_options(theta1: &Model, theta: &Model, grid: GridSpec, opts: SolverOptions) -> Result<Self> {
        theta1.validate().into_result()?;
        theta.validate().into_result()?;
        grid.validate()?;
        let pair = match (theta1, theta) {
            (Model::A(g), Model::A(f)) => Pair::A(*g, *f),
            (Model::B(g), Model::B(f)) => Pair::B(*g, *f),
            _ => return Err(Error::InvalidArgument("both models must belong to the same family".into())),
        };
        Ok(FredholmEngine { pair, grid, opts, cross: None, own: None })
    }

    fn identical(&self) -> bool {
        match self.pair {
            Pair::A(g, f) => g == f,
            Pair::B(g, f) => g == f,
        }
    }

    fn cross(&mut self) -> Result<Solved> {
        if self.cross.is_none() {
            let s = match &self.pair {
                Pair::A(g, f) => solve_for(g, f, &self.grid, &self.opts)?,
                Pair::B(g, f) => solve_for(g, f, &self.grid, &self.opts)?,
            };
            self.cross = Some(s);
        }
        Ok(self.cross.clone().expect("solved above"))
    }

    fn own(&mut self) -> Result<Solved> {
        if self.identical() {
            return self.cross();
        }
        if self.own.is_none() {
            let s = match &self.pair {
                Pair::A(g, _) => solve_for(g, g, &self.grid, &self.opts)?,
                Pair::B(g, _) => solve_for(g, g, &self.grid, &self.opts)?,
            };
            self.own = Some(s);
        }
        Ok(self.own.clone().expect("solved above"))
    }

    fn diagnostics(&self, solves: &[&Solved]) -> FredholmDiagnostics {
        FredholmDiagnostics {
            eigen_residual: solves.iter().map(|s| s.density.eigen_residual).fold(0.0, f64::max),
            max_col_sum_deviation: solves
                .iter()
                .map(|s| (s.min_col_sum - 1.0).abs().max((s.max_col_sum - 1.0).abs()))
                .fold(0.0, f64::max),
            iterations: solves.iter().map(|s| s.density.iterations).max().unwrap_or(0),
            min_col_sum: solves.iter().map(|s| s.min_col_sum).fold(f64::INFINITY, f64::min),
            max_col_sum: solves.iter().map(|s| s.max_col_sum).fold(f64::NEG_INFINITY, f64::max),
            grid: self.grid,
        }
    }

    pub fn divergence(&mut self, alpha: Order) -> Result<DivergenceResult> {
        let alpha = alpha.resolved();
        let grid = self.grid;
        match alpha {
            Order::Renyi(a) => {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(Error::InvalidArgument(format!("alpha must be positive, got {a}")));
                }
                let cross = self.cross()?;
                let j = match &self.pair {
                    Pair::A(g, f) => j_alpha(f, g, &cross.density, a, &grid)?,
                    Pair::B(g, f) => j_alpha(f, g, &cross.density, a, &grid)?,
                };
                if !(j > 0.0) {
                    return Err(Error::Numeric("J^alpha is not positive"));
                }
                let value = j.ln() / (a - 1.0);
                Ok(DivergenceResult { alpha, value, method: "fredholm", diagnostics: self.diagnostics(&[&cross]) })
            }
            Order::Kl => {
                let cross = self.cross()?;
                let own = self.own()?;
                let value = match &self.pair {
                    Pair::A(g, f) => j_log(g, g, &own.density, &grid)? - j_log(f, g, &cross.density, &grid)?,
                    Pair::B(g, f) => j_log(g, g, &own.density, &grid)? - j_log(f, g, &cross.density, &grid)?,
                };
                Ok(DivergenceResult {
                    alpha,
                    value,
                    method: "fredholm",
                    diagnostics: self.diagnostics(&[&cross, &own]),
                })
            }
        }
    }
}

/// One-off divergence rate of `θ₁` (data) from `θ` (reference).
pub fn divergence_fredholm(theta1: &Model, theta: &Model, alpha: Order, grid: GridSpec) -> Result<DivergenceResult> {
    FredholmEngine::new(theta1, theta, grid)?.divergence(alpha)
}
