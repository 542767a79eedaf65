//! Discretized transition kernel of `(component, Y_{t−1}, W_{t−1})` and its
//! stationary vector.

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::family::FilterModel;
use super::GridSpec;

/// Column sums outside this band before renormalization mean the grid does
/// not capture the kernel's mass.
pub const COLUMN_SUM_BAND: (f64, f64) = (0.5, 1.5);

/// Column-stochastic matrix over the lattice `component × u-node × w-node`.
///
/// Unknown `(c, a, b)` sits at `c·n² + a·n + b` with `n = N − 1`. Entry
/// `(target, source)` is stored at `target·dim + source`.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub dim: usize,
    pub components: usize,
    pub nodes: usize,
    pub entries: Vec<f64>,
    /// Column sums before renormalization, one per source unknown.
    pub pre_norm_col_sums: Vec<f64>,
}

impl KernelMatrix {
    #[inline]
    pub fn get(&self, target: usize, source: usize) -> f64 {
        self.entries[target * self.dim + source]
    }

    pub fn index(&self, c: usize, a: usize, b: usize) -> usize {
        (c * self.nodes + a) * self.nodes + b
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.entries.par_chunks(self.dim).map(|row| row.iter().zip(v).map(|(k, x)| k * x).sum()).collect()
    }

    /// Largest `|column sum − 1|` before renormalization.
    pub fn max_col_sum_deviation(&self) -> f64 {
        self.pre_norm_col_sums.iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Assembles the kernel with data from `gen` and the filter running under `filt`.
///
/// For target `(k, u_a, x_b)` and source `(c, v_j, w_l)` the raw entry is
///
/// `link_gen(c → k) · f_gen(u_a | c, v_j) · [Q_k(x_b + Δ) − Q_k(x_b − Δ)] / 2Δ · (2a/N)(1/N)`
///
/// where `Q_k` is the CDF of the next filter weight at `(u_a, w_l)`. Columns
/// are then rescaled to sum to one.
pub fn build_kernel<M: FilterModel>(gen: &M, filt: &M, grid: &GridSpec) -> Result<KernelMatrix> {
    grid.validate()?;
    let s = M::COMPONENTS;
    let n = grid.n - 1;
    let dim = s * n * n;
    let u = grid.u_nodes();
    let x = grid.x_nodes();
    let n_f = grid.n as f64;
    let cell = grid.cell_area();

    // cdf[(k·n + a)·n + l][e] = Q_k at level (2e+1)/(2N), e = 0..N−1
    let cdf: Vec<Vec<f64>> = (0..s * n * n)
        .into_par_iter()
        .map(|idx| {
            let (k, a, l) = (idx / (n * n), (idx / n) % n, idx % n);
            (0..grid.n).map(|e| M::level_cdf(gen, filt, k, u[a], x[l], (2 * e + 1) as f64 / (2.0 * n_f))).collect()
        })
        .collect();

    let mut entries = vec![0.0; dim * dim];
    entries.par_chunks_mut(dim).enumerate().for_each(|(target, row)| {
        let (k, a, b) = (target / (n * n), (target / n) % n, target % n);
        for c in 0..s {
            let link = gen.link(c, k);
            if link == 0.0 {
                continue;
            }
            for j in 0..n {
                let lag = gen.component_density(c, u[a], u[j]);
                for l in 0..n {
                    let q = &cdf[(k * n + a) * n + l];
                    let dq = (q[b + 1] - q[b]) * n_f;
                    row[(c * n + j) * n + l] = link * lag * dq * cell;
                }
            }
        }
    });

    let mut sums = vec![0.0; dim];
    for row in entries.chunks(dim) {
        for (s, v) in sums.iter_mut().zip(row) {
            *s += v;
        }
    }
    if let Some((column, &sum)) =
        sums.iter().enumerate().find(|(_, &s)| !(s >= COLUMN_SUM_BAND.0 && s <= COLUMN_SUM_BAND.1))
    {
        return Err(Error::GridTooCoarse { column, sum });
    }
    entries.par_chunks_mut(dim).for_each(|row| {
        for (v, s) in row.iter_mut().zip(&sums) {
            *v /= s;
        }
    });
    Ok(KernelMatrix { dim, components: s, nodes: n, entries, pre_norm_col_sums: sums })
}

/// Stationary density on the lattice, scaled to unit mass under `cell_area`.
#[derive(Debug, Clone)]
pub struct InvariantDensityGrid {
    pub components: usize,
    pub nodes: usize,
    pub values: Vec<f64>,
    pub cell_area: f64,
    /// `‖K m − m‖₁` of the returned values.
    pub eigen_residual: f64,
    pub iterations: usize,
}

impl InvariantDensityGrid {
    #[inline]
    pub fn value(&self, c: usize, a: usize, b: usize) -> f64 {
        self.values[(c * self.nodes + a) * self.nodes + b]
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_area
    }
}

/// Power iteration from the uniform density until `‖K m − m‖₁ ≤ tol`.
pub fn solve_invariant(k: &KernelMatrix, cell_area: f64, tol: f64, max_iters: usize) -> Result<InvariantDensityGrid> {
    if !(cell_area > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidArgument("cell_area and tol must be positive".into()));
    }
    let unit = 1.0 / (k.dim as f64 * cell_area);
    let mut m = vec![unit; k.dim];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iters {
        let next = k.apply(&m);
        residual = next.iter().zip(&m).map(|(a, b)| (a - b).abs()).sum();
        m = next;
        if residual <= tol {
            let mass = m.iter().sum::<f64>() * cell_area;
            m.iter_mut().for_each(|v| *v /= mass);
            let check = k.apply(&m);
            let eigen_residual = check.iter().zip(&m).map(|(a, b)| (a - b).abs()).sum();
            return Ok(InvariantDensityGrid {
                components: k.components,
                nodes: k.nodes,
                values: m,
                cell_area,
                eigen_residual,
                iterations: it,
            });
        }
    }
    Err(Error::NonConvergence { iterations: max_iters, residual })
}
