//! Multifidelity surrogate modeling.
//!
//! Seven data-fusion regressors (a two-stage co-kriging model and six composite
//! neural architectures) in two- and three-fidelity variants, the analytical
//! benchmark families used to validate them, and a cost-matched experiment
//! harness with leakage-safe splits, grid-search tuning and RMSE/R² reporting.

pub mod benchmarks;
pub mod config;
pub mod data;
pub mod dataset;
pub mod error;
pub mod experiments;
pub mod gp;
pub mod mf;
pub mod matrix;
pub mod nn;
mod optim;

pub use dataset::{FidelityDataset, FidelityLevel, Standardizer};
pub use error::{Error, Result};
pub use matrix::Matrix;
