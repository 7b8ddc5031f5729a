//! Cost and scaling analysis for text-to-image diffusion denoising backbones.
//!
//! The crate is split by concern:
//!
//! - [`backbone`]: analytic parameter and MAC counting for UNet and
//!   diffusion-transformer specifications, plus a catalog of reference
//!   architectures.
//! - [`scaling`]: design-space enumeration, Pareto frontiers, log-log power-law
//!   fits and training-compute budgets.
//! - [`curves`]: steps-to-threshold and convergence speedups on logged
//!   training curves.
//! - [`corpus`]: caption dataset statistics, caption histograms and the
//!   synthetic-caption mixing sampler.
//! - [`io`]: readers and writers for the delimited and structured file formats.

pub mod backbone;
pub mod corpus;
pub mod curves;
pub mod error;
pub mod io;
pub mod scaling;

pub use error::{Error, ErrorCategory, Result};
