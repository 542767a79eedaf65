//! Stationary expectations of one-step functionals of the filter.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quad::Simpson;

use super::family::FilterModel;
use super::kernel::InvariantDensityGrid;
use super::GridSpec;

/// `E[h(Y_t, Y_{t−1}, W_{t−1})]` with `(component, Y_{t−1}, W_{t−1})` drawn
/// from the lattice density `m` and `Y_t` from `gen`.
///
/// Both integrals over `Y_{t−1}` and `Y_t` use Simpson's rule on `[−a, a]`.
/// The result is divided by the quadrature mass of the same sums, so a
/// constant `h` is reproduced exactly.
pub fn stationary_expectation<M, H>(gen: &M, m: &InvariantDensityGrid, grid: &GridSpec, h: H) -> Result<f64>
where
    M: FilterModel,
    H: Fn(f64, f64, f64) -> f64 + Sync,
{
    grid.validate()?;
    let s = M::COMPONENTS;
    let n = grid.n - 1;
    if m.components != s || m.nodes != n {
        return Err(Error::InvalidArgument(format!(
            "density has {}×{}² cells, grid expects {}×{}²",
            m.components, m.nodes, s, n
        )));
    }
    let q = Simpson::new(-grid.a, grid.a, grid.quad_points);
    let v = grid.u_nodes();
    let w = grid.x_nodes();

    // lag[(c·n + j)·Q + r] = f_gen(u_r | c, v_j)
    let lag: Vec<f64> = (0..s * n)
        .flat_map(|cj| {
            let (c, j) = (cj / n, cj % n);
            let vj = v[j];
            q.nodes.iter().map(move |&u| gen.component_density(c, u, vj))
        })
        .collect();
    let nq = q.nodes.len();

    let parts: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|l| {
            let wl = w[l];
            let mut num = 0.0;
            let mut den = 0.0;
            let mut inner = vec![0.0; nq];
            let mut inner_mass = vec![0.0; nq];
            let table: Vec<f64> =
                q.nodes.iter().flat_map(|&u| q.nodes.iter().map(move |&y| (y, u))).map(|(y, u)| h(y, u, wl)).collect();
            for k in 0..s {
                for (r, &u) in q.nodes.iter().enumerate() {
                    let mut acc = 0.0;
                    let mut mass = 0.0;
                    let hs = &table[r * nq..(r + 1) * nq];
                    for ((&y, &sw), &hv) in q.nodes.iter().zip(&q.weights).zip(hs) {
                        let g = sw * gen.component_density(k, y, u);
                        acc += g * hv;
                        mass += g;
                    }
                    inner[r] = acc;
                    inner_mass[r] = mass;
                }
                for c in 0..s {
                    let link = gen.link(c, k);
                    if link == 0.0 {
                        continue;
                    }
                    for j in 0..n {
                        let weight = m.value(c, j, l) * link;
                        let row = &lag[(c * n + j) * nq..(c * n + j + 1) * nq];
                        let mut g_num = 0.0;
                        let mut g_den = 0.0;
                        for r in 0..nq {
                            let f = q.weights[r] * row[r];
                            g_num += f * inner[r];
                            g_den += f * inner_mass[r];
                        }
                        num += weight * g_num;
                        den += weight * g_den;
                    }
                }
            }
            (num, den)
        })
        .collect();
    let (num, den) = parts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let value = num / den;
    if !value.is_finite() {
        return Err(Error::Numeric("non-finite stationary expectation"));
    }
    Ok(value)
}

/// `J^α = E[(p_{θ₁}(Y_t | Y_{t−1}, W_{t−1}) / p_θ(Y_t | Y_{t−1}, W_{t−1}))^{α−1}]`,
/// with `W` the filter weight under `filt` and `m` its stationary density.
pub fn j_alpha<M: FilterModel>(
    filt: &M,
    gen: &M,
    m: &InvariantDensityGrid,
    alpha: f64,
    grid: &GridSpec,
) -> Result<f64> {
    let e = alpha - 1.0;
    stationary_expectation(gen, m, grid, |y, u, w| (e * (gen.ln_mixture(y, u, w) - filt.ln_mixture(y, u, w))).exp())
}

/// `E[log p_filt(Y_t | Y_{t−1}, W_{t−1})]` with `m` solved for the filter `filt`.
pub fn j_log<M: FilterModel>(filt: &M, gen: &M, m: &InvariantDensityGrid, grid: &GridSpec) -> Result<f64> {
    stationary_expectation(gen, m, grid, |y, u, w| filt.ln_mixture(y, u, w))
}
