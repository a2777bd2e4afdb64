//! Semiclassical steady state of the driven plasmon–emitter pair.
//!
//! The emitter sees a plasmon-dressed decay Γ, detuning Δ and Rabi energy Ω.
//! Plasmon moments follow from the factorized equations of motion, and the
//! zero-delay correlations g⁽ⁿ⁾(0) from their normally ordered numerators.

use num_complex::Complex64;
use serde::Serialize;

use crate::drive::DriveParams;
use crate::error::{Error, Result};
use crate::materials::DerivedPlasmon;

/// Flux denominators below this are treated as dark points.
pub const DARK_FLOOR: f64 = 1e-300;

/// Emitter parameters dressed by the plasmon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModifiedEmitter {
    /// Plasmon-induced term F.
    pub f_term: f64,
    /// Enhanced decay Γ [meV].
    pub gamma: f64,
    /// Shifted detuning Δ [meV].
    pub delta: f64,
    /// Modified Rabi energy Ω [meV].
    #[serde(serialize_with = "crate::output::ser_complex")]
    pub omega: Complex64,
    /// Saturation parameter P.
    pub p_sat: f64,
}

/// Plasmon moments in the rotating frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlasmonMoments {
    #[serde(serialize_with = "crate::output::ser_complex")]
    pub a: Complex64,
    #[serde(serialize_with = "crate::output::ser_complex")]
    pub a2: Complex64,
    #[serde(serialize_with = "crate::output::ser_complex")]
    pub a3: Complex64,
    #[serde(serialize_with = "crate::output::ser_complex")]
    pub a4: Complex64,
    /// ⟨a†a⟩.
    pub n_photon: f64,
    /// ⟨a†²a²⟩.
    pub nn2: f64,
    pub nn3: f64,
    pub nn4: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyState {
    pub emitter: ModifiedEmitter,
    #[serde(serialize_with = "crate::output::ser_complex")]
    pub sigma: Complex64,
    /// ⟨σ†σ⟩ ∈ [0, 1/2].
    pub population: f64,
    pub moments: PlasmonMoments,
    pub g2_0: f64,
    pub g3_0: f64,
    pub g4_0: f64,
}

impl SteadyState {
    /// ⟨σ_z⟩ = 2⟨σ†σ⟩ − 1.
    pub fn sigma_z(&self) -> f64 {
        2.0 * self.population - 1.0
    }

    pub fn n_photon(&self) -> f64 {
        self.moments.n_photon
    }
}

fn lorentz(delta_pl: f64, gamma_pl: f64) -> f64 {
    delta_pl * delta_pl + gamma_pl * gamma_pl / 4.0
}

pub fn modified_emitter(plasmon: &DerivedPlasmon, drive: &DriveParams) -> ModifiedEmitter {
    let g = plasmon.g;
    let dpl = drive.delta_pl(plasmon);
    let f_term = g * g / lorentz(dpl, plasmon.gamma_pl);
    let gamma = drive.gamma_ex + f_term * plasmon.gamma_pl;
    let delta = drive.delta_ex() - f_term * dpl;
    let omega = if drive.mu == 0.0 {
        Complex64::new(drive.rabi_ex, 0.0)
    } else {
        let resp = Complex64::new(plasmon.gamma_pl / 2.0, dpl);
        drive.rabi_ex * (1.0 + Complex64::i() * g * plasmon.chi / (drive.mu * resp))
    };
    let ratio = omega.norm() / gamma;
    let p_sat = 2.0 * ratio * ratio / (1.0 + 2.0 * (delta / gamma).powi(2));
    ModifiedEmitter { f_term, gamma, delta, omega, p_sat }
}

/// (⟨σ⟩, ⟨σ†σ⟩).
pub fn qd_steady_state(em: &ModifiedEmitter) -> (Complex64, f64) {
    if em.omega.norm() == 0.0 {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    let population = if em.p_sat.is_infinite() {
        0.5
    } else {
        em.p_sat / (1.0 + 2.0 * em.p_sat)
    };
    let sigma = Complex64::i() * em.omega * (1.0 - 2.0 * population)
        / Complex64::new(em.gamma / 2.0, em.delta);
    (sigma, population)
}

fn moment_numerators(rabi_pl: f64, g: f64, sigma: Complex64, population: f64) -> [f64; 4] {
    let o = rabi_pl;
    let s = sigma.re;
    let den = o * o + 2.0 * o * g * s + g * g * population;
    let n2 = o.powi(4) + 4.0 * o.powi(3) * g * s + 4.0 * o * o * g * g * population;
    let n3 = o.powi(6) + 6.0 * g * o.powi(5) * s + 9.0 * g * g * o.powi(4) * population;
    let n4 = o.powi(8) + 8.0 * g * o.powi(7) * s + 16.0 * g * g * o.powi(6) * population;
    [den, n2, n3, n4]
}

pub fn plasmon_steady_state(
    drive: &DriveParams,
    plasmon: &DerivedPlasmon,
    sigma: Complex64,
    population: f64,
) -> PlasmonMoments {
    let g = plasmon.g;
    let dpl = drive.delta_pl(plasmon);
    let resp = Complex64::new(plasmon.gamma_pl / 2.0, dpl);
    let a = Complex64::i() * (drive.rabi_pl + g * sigma) / resp;
    let lz = lorentz(dpl, plasmon.gamma_pl);
    let [den, n2, n3, n4] = moment_numerators(drive.rabi_pl, g, sigma, population);
    PlasmonMoments {
        a,
        a2: a * a,
        a3: a * a * a,
        a4: a * a * a * a,
        n_photon: den / lz,
        nn2: n2 / (lz * lz),
        nn3: n3 / lz.powi(3),
        nn4: n4 / lz.powi(4),
    }
}

/// (g⁽²⁾(0), g⁽³⁾(0), g⁽⁴⁾(0)).
pub fn correlations_zero_delay(
    drive: &DriveParams,
    g: f64,
    sigma: Complex64,
    population: f64,
) -> Result<(f64, f64, f64)> {
    let [den, n2, n3, n4] = moment_numerators(drive.rabi_pl, g, sigma, population);
    if !(den.abs() > DARK_FLOOR) {
        return Err(Error::DegenerateFlux(den));
    }
    Ok((n2 / (den * den), n3 / den.powi(3), n4 / den.powi(4)))
}

/// Complete analytic steady state at one drive point.
pub fn steady_state(plasmon: &DerivedPlasmon, drive: &DriveParams) -> Result<SteadyState> {
    if !(plasmon.gamma_pl > 0.0) {
        return Err(Error::Domain(format!("gamma_pl = {} must be > 0", plasmon.gamma_pl)));
    }
    let emitter = modified_emitter(plasmon, drive);
    let (sigma, population) = qd_steady_state(&emitter);
    let moments = plasmon_steady_state(drive, plasmon, sigma, population);
    let (g2_0, g3_0, g4_0) = correlations_zero_delay(drive, plasmon.g, sigma, population)?;
    Ok(SteadyState { emitter, sigma, population, moments, g2_0, g3_0, g4_0 })
}
