//! Divergence rates between Markov switching models.
//!
//! Two independent engines estimate the Rényi divergence rate `D_α(p‖q)` and
//! the Kullback-Leibler rate between two hidden-Markov observation laws:
//!
//! - [`montecarlo`]: simulate paths under `p`, run the normalized forward
//!   filter of both models and average the per-step likelihood ratios.
//! - [`fredholm`]: discretize the integral equation satisfied by the
//!   stationary density of the filter weight, take the Perron eigenvector of
//!   the resulting column-stochastic matrix and integrate the expected ratio
//!   against it.
//!
//! Both engines work from the same model definitions in [`model`] and the
//! likelihood machinery in [`forward`].
//!
//! ```
//! use hmmdiv::model::{Model, ModelBParams};
//! use hmmdiv::montecarlo::{estimate_kl_mc, McConfig};
//!
//! let q = Model::B(ModelBParams::new(0.4, 0.59, [1.0, 1.0], 0.0, 1.0, 0.0, 1.0));
//! let p = Model::B(ModelBParams::new(0.4, 0.59, [2.0, 2.0], 0.0, 1.0, 0.0, 0.9));
//! let cfg = McConfig { n: 500, reps: 8, ..McConfig::default() };
//! let kl = estimate_kl_mc(&p, &q, &cfg).unwrap();
//! assert!((kl.mean - 0.5104).abs() < 0.1);
//! ```

// `!(x > 0.0)` style guards deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod forward;
pub mod fredholm;
pub mod model;
pub mod montecarlo;
pub mod order;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
pub use order::Order;
