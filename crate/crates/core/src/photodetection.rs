//! Photocount statistics of the scattered light and their noise.
//!
//! Fluxes are in 1/ps and the integration time in ps, so counts are dimensionless.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Detector {
    /// Collection and detection efficiency ξ.
    pub xi: f64,
    /// Integration window [ps].
    #[serde(rename = "T_int")]
    pub t_int: f64,
    /// Fraction of wall time spent integrating (no recovery dead time at 1).
    pub duty_cycle: f64,
    /// Total measurement time [s] used for averaging.
    pub duration: f64,
}

impl Default for Detector {
    fn default() -> Self {
        Self { xi: 0.7, t_int: 3.0, duty_cycle: 1.0, duration: 1.0 }
    }
}

impl Detector {
    /// Number of windows recorded over the measurement duration.
    pub fn measurements(&self) -> f64 {
        let t_int_s = self.t_int * 1e-12;
        self.duty_cycle * self.duration / t_int_s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountStats {
    pub m_mean: f64,
    /// ⟨m(m−1)⟩.
    pub m2: f64,
    pub delta_m: f64,
    pub delta_m2: f64,
    pub delta_g2: f64,
    pub sigma_m: f64,
    pub sigma_g2: f64,
}

/// ⟨m⟩ = ξ T_int ⟨b†b⟩.
pub fn mean_photocount(flux: f64, det: &Detector) -> f64 {
    det.xi * det.t_int * flux
}

/// ⟨m(m−1)⟩ = (ξ T_int)² ⟨b†²b²⟩.
pub fn second_factorial_moment(nn2: f64, det: &Detector) -> f64 {
    (det.xi * det.t_int).powi(2) * nn2
}

pub fn noise_m(m_mean: f64, g2_0: f64) -> Result<f64> {
    let rad = 1.0 + (g2_0 - 1.0) * m_mean;
    if !(rad >= 0.0 && m_mean >= 0.0) {
        return Err(Error::Domain(format!(
            "negative variance in Δm: ⟨m⟩ = {m_mean}, g2 = {g2_0}"
        )));
    }
    Ok(m_mean.sqrt() * rad.sqrt())
}

pub fn noise_m2(m_mean: f64, g2_0: f64, g3_0: f64, g4_0: f64, xi: f64) -> Result<f64> {
    let q = xi / m_mean;
    let rad = g4_0 - g2_0 * g2_0 + 4.0 * g3_0 * q + 2.0 * g2_0 * q * q;
    if !(rad >= 0.0) || !(m_mean > 0.0) {
        return Err(Error::Domain(format!(
            "negative variance in Δm₂: radicand {rad:e} (g2 = {g2_0}, g3 = {g3_0}, g4 = {g4_0}, ξ/⟨m⟩ = {q:e})"
        )));
    }
    Ok(m_mean * m_mean * rad.sqrt())
}

pub fn noise_g2(g2_0: f64, m_mean: f64, delta_m: f64, delta_m2: f64) -> Result<f64> {
    if !(m_mean > 0.0 && delta_m > 0.0) {
        return Err(Error::DegenerateFlux(m_mean));
    }
    let lead = 2.0 * g2_0 * delta_m / m_mean;
    let ratio = delta_m2 / (2.0 * g2_0 * m_mean * delta_m);
    Ok(lead * (1.0 + ratio * ratio).sqrt())
}

/// σ = Δ/√N.
pub fn time_average(delta: f64, det: &Detector) -> f64 {
    delta / det.measurements().sqrt()
}

/// All count statistics from a flux [1/ps] and the zero-delay correlations.
pub fn count_stats(flux: f64, g2_0: f64, g3_0: f64, g4_0: f64, det: &Detector) -> Result<CountStats> {
    let m_mean = mean_photocount(flux, det);
    let m2 = g2_0 * m_mean * m_mean;
    let delta_m = noise_m(m_mean, g2_0)?;
    let delta_m2 = noise_m2(m_mean, g2_0, g3_0, g4_0, det.xi)?;
    let delta_g2 = noise_g2(g2_0, m_mean, delta_m, delta_m2)?;
    Ok(CountStats {
        m_mean,
        m2,
        delta_m,
        delta_m2,
        delta_g2,
        sigma_m: time_average(delta_m, det),
        sigma_g2: time_average(delta_g2, det),
    })
}
