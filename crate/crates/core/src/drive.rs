//! Coherent drive: field amplitude and Rabi energies.

use serde::{Deserialize, Serialize};

use crate::constants::{debye_to_si, wavelength_to_mev, C_LIGHT, EPS0, MEV};
use crate::error::{Error, Result};
use crate::materials::{DerivedPlasmon, Environment};

/// Relation between the incident intensity and the local field amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldNormalization {
    /// E₀² = 2I₀/(c ε₀ ε_b). Reproduces the quoted photocounts.
    #[default]
    Permittivity,
    /// E₀² = 2I₀/(c ε₀ n).
    Index,
}

/// Drive and emitter parameters at one wavelength. Energies in meV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriveParams {
    /// Intensity [W/cm²].
    pub i0: f64,
    /// Driving photon energy.
    pub omega: f64,
    /// Driving wavelength [nm].
    pub lambda: f64,
    /// Field amplitude [V/m].
    pub e0: f64,
    /// Plasmon Rabi energy Ω_pl.
    pub rabi_pl: f64,
    /// Emitter Rabi energy Ω_ex.
    pub rabi_ex: f64,
    /// Emitter dipole [D].
    pub mu: f64,
    pub omega_ex: f64,
    /// Free-space emitter decay.
    pub gamma_ex: f64,
}

/// Field amplitude [V/m] for intensity I₀ [W/cm²].
pub fn field_amplitude(i0: f64, env: &Environment, norm: FieldNormalization) -> f64 {
    let i_si = i0 * 1e4;
    let medium = match norm {
        FieldNormalization::Permittivity => env.eps_b(),
        FieldNormalization::Index => env.n,
    };
    (2.0 * i_si / (C_LIGHT * EPS0 * medium)).sqrt()
}

/// Rabi energy E₀·p/(2ħ) expressed in meV for a dipole p [D].
pub fn rabi_energy(e0: f64, dipole_debye: f64) -> f64 {
    e0 * debye_to_si(dipole_debye) / (2.0 * MEV)
}

impl DriveParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        i0: f64,
        lambda: f64,
        env: &Environment,
        plasmon: &DerivedPlasmon,
        mu: f64,
        omega_ex: f64,
        gamma_ex: f64,
        norm: FieldNormalization,
    ) -> Result<Self> {
        if !(i0 >= 0.0) {
            return Err(Error::Domain(format!("I0 = {i0} must be ≥ 0")));
        }
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("wavelength {lambda} must be > 0")));
        }
        let e0 = field_amplitude(i0, env, norm);
        Ok(Self {
            i0,
            omega: wavelength_to_mev(lambda),
            lambda,
            e0,
            rabi_pl: rabi_energy(e0, plasmon.chi),
            rabi_ex: rabi_energy(e0, mu),
            mu,
            omega_ex,
            gamma_ex,
        })
    }

    pub fn delta_pl(&self, plasmon: &DerivedPlasmon) -> f64 {
        plasmon.omega_pl - self.omega
    }

    pub fn delta_ex(&self) -> f64 {
        self.omega_ex - self.omega
    }
}
