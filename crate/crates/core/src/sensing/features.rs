//! Location of the Fano dip and peak on a fine wavelength scan.

use rayon::prelude::*;
use serde::Serialize;

use super::sweep::{evaluate, Engine};
use crate::config::ModelConfig;
use crate::constants::mev_to_wavelength;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FanoFeatures {
    pub dip: f64,
    pub peak: f64,
    pub flux_dip: f64,
    pub flux_peak: f64,
}

/// Dip = flux minimum within ±`half_width` nm of the exciton line; peak = flux
/// maximum on the red side of the dip. `step` is the scan resolution in nm.
pub fn fano_features(
    cfg: &ModelConfig,
    n: f64,
    engine: Engine,
    half_width: f64,
    step: f64,
) -> Result<FanoFeatures> {
    let centre = mev_to_wavelength(cfg.emitter.omega_ex);
    let count = (2.0 * half_width / step).round() as usize + 1;
    let lambdas: Vec<f64> = (0..count).map(|k| centre - half_width + k as f64 * step).collect();
    let flux: Vec<f64> = lambdas
        .par_iter()
        .map(|&l| evaluate(cfg, l, n, engine).map(|p| p.flux))
        .collect::<Result<_>>()?;
    let idip = (0..count).min_by(|&a, &b| flux[a].total_cmp(&flux[b])).expect("non-empty scan");
    let ipeak = (idip..count)
        .max_by(|&a, &b| flux[a].total_cmp(&flux[b]))
        .ok_or_else(|| Error::Domain("no peak on the red side of the dip".into()))?;
    if ipeak + 1 == count {
        return Err(Error::Domain(format!(
            "flux still rising at the scan edge {} nm; widen the scan",
            lambdas[ipeak]
        )));
    }
    Ok(FanoFeatures { dip: lambdas[idip], peak: lambdas[ipeak], flux_dip: flux[idip], flux_peak: flux[ipeak] })
}
