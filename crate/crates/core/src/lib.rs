//! Plasmon–exciton Fano sensor model.
//!
//! A metal nanoparticle on a substrate couples to a quantum dot. This crate derives
//! the plasmon parameters from material inputs, solves the driven-dissipative
//! steady state analytically and with a truncated-Fock Lindblad solver, turns the
//! scattered field into photocount statistics, and reports refractive-index
//! sensitivities and resolutions for intensity and g⁽²⁾(0) interrogation.
//!
//! ```
//! use fanosense::config::ModelConfig;
//!
//! let cfg = ModelConfig::default();
//! let p = cfg.plasmon(cfg.environment.n).unwrap();
//! assert!((p.lambda_pl - 535.5).abs() < 1.0);
//! ```

pub mod analytic;
pub mod config;
pub mod constants;
pub mod drive;
pub mod error;
pub mod lindblad;
pub mod materials;
pub mod output;
pub mod photodetection;
pub mod sensing;
pub mod validation;

pub use config::ModelConfig;
pub use error::{Error, Result};
