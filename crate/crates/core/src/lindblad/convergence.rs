//! Fock-truncation convergence study.

use serde::Serialize;

use super::liouvillian::SystemParams;
use super::solver::{QuantumSystem, ScatteringOperator};
use crate::error::{Error, Result};

/// Relative change threshold between successive truncations.
pub const CONVERGENCE_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStep {
    pub fock_dim: usize,
    pub n_photon: f64,
    pub g2_0: f64,
    pub top_fock_population: f64,
    /// Relative change against the previous truncation.
    pub d_n_photon: Option<f64>,
    pub d_g2_0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub steps: Vec<ConvergenceStep>,
    pub max_delta: f64,
    pub converged: bool,
}

pub fn convergence_check(
    params: &SystemParams,
    fock_dims: &[usize],
    scattering: ScatteringOperator,
) -> Result<ConvergenceReport> {
    if fock_dims.len() < 2 {
        return Err(Error::Domain("convergence check needs at least two truncations".into()));
    }
    let mut steps: Vec<ConvergenceStep> = Vec::new();
    let mut max_delta: f64 = 0.0;
    for &n in fock_dims {
        let sys = QuantumSystem::new(*params, n, scattering)?;
        let sol = sys.steady_state()?;
        let m = sys.moments(&sol)?;
        let (dn, dg) = match steps.last() {
            Some(prev) => {
                let dn = (m.n_photon - prev.n_photon).abs() / m.n_photon.abs();
                let dg = (m.g2_0 - prev.g2_0).abs() / m.g2_0.abs();
                max_delta = max_delta.max(dn).max(dg);
                (Some(dn), Some(dg))
            }
            None => (None, None),
        };
        steps.push(ConvergenceStep {
            fock_dim: n,
            n_photon: m.n_photon,
            g2_0: m.g2_0,
            top_fock_population: m.top_fock_population,
            d_n_photon: dn,
            d_g2_0: dg,
        });
    }
    Ok(ConvergenceReport { steps, max_delta, converged: max_delta < CONVERGENCE_TOL })
}
