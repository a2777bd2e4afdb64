//! Classical plasmonics of a Drude sphere on a weakly reflecting substrate.
//!
//! Produces the Lorentzian parameters of the dipole plasmon (ω_pl, η, γ_nr, γ_r),
//! the plasmon dipole moment χ and the dipole–dipole coupling g to a nearby emitter.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::constants::{
    debye_to_si, mev_to_rad_per_s, mev_to_wavelength, si_to_debye, C_LIGHT, EPS0, HBAR, MEV,
};
use crate::error::{Error, Result};

/// Free-electron metal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrudeMetal {
    /// High-frequency dielectric constant (n_∞²).
    pub eps_inf: f64,
    /// Bulk plasma energy [meV].
    pub omega_p: f64,
    /// Free-electron damping [meV].
    pub gamma_p: f64,
}

impl DrudeMetal {
    pub fn new(eps_inf: f64, omega_p: f64, gamma_p: f64) -> Result<Self> {
        if !(eps_inf >= 1.0) {
            return Err(Error::Domain(format!("eps_inf = {eps_inf} must be ≥ 1")));
        }
        if !(omega_p > 0.0) {
            return Err(Error::Domain(format!("omega_p = {omega_p} must be > 0")));
        }
        if !(gamma_p >= 0.0 && gamma_p < omega_p) {
            return Err(Error::Domain(format!(
                "gamma_p = {gamma_p} must lie in [0, omega_p)"
            )));
        }
        Ok(Self { eps_inf, omega_p, gamma_p })
    }

    /// Builds the metal from its high-frequency refractive index n_∞.
    pub fn from_index(n_inf: f64, omega_p: f64, gamma_p: f64) -> Result<Self> {
        Self::new(n_inf * n_inf, omega_p, gamma_p)
    }

    pub fn permittivity(&self, omega: f64) -> Result<Complex64> {
        drude_permittivity(self, omega)
    }
}

/// Optical environment of the particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    /// Background index.
    pub n: f64,
    /// Substrate index.
    pub n_s: f64,
    /// Emitter (quantum dot) index.
    pub n_d: f64,
    /// Substrate thickness [nm].
    pub t: f64,
}

impl Environment {
    pub fn new(n: f64, n_s: f64, n_d: f64, t: f64) -> Result<Self> {
        for (name, v) in [("n", n), ("n_s", n_s), ("n_d", n_d)] {
            if !(v >= 1.0) {
                return Err(Error::Domain(format!("{name} = {v} must be ≥ 1")));
            }
        }
        if !(t > 0.0) {
            return Err(Error::Domain(format!("t = {t} must be > 0")));
        }
        Ok(Self { n, n_s, n_d, t })
    }

    pub fn eps_b(&self) -> f64 {
        self.n * self.n
    }

    pub fn eps_s(&self) -> f64 {
        self.n_s * self.n_s
    }

    pub fn eps_d(&self) -> f64 {
        self.n_d * self.n_d
    }

    /// Screening constant seen by the emitter dipole, (2ε_b + ε_d)/3.
    pub fn eps_b_eff(&self) -> f64 {
        (2.0 * self.eps_b() + self.eps_d()) / 3.0
    }
}

/// Particle/emitter geometry. Lengths in nm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    /// Particle radius.
    pub r: f64,
    /// Emitter core radius.
    pub r_c: f64,
    /// Emitter shell thickness.
    pub t_s: f64,
    /// Surface-to-surface gap.
    pub l: f64,
    /// Dipole orientation factor, 2 (longitudinal) or −1 (transverse).
    pub s_alpha: f64,
    /// Image-dipole factor of the substrate, 1 or 2.
    pub s_beta: f64,
}

/// Soft geometry diagnostics that do not prevent evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryWarning(pub String);

impl Geometry {
    pub fn new(r: f64, r_c: f64, t_s: f64, l: f64, s_alpha: f64, s_beta: f64) -> Result<Self> {
        for (name, v) in [("r", r), ("r_c", r_c), ("t_s", t_s)] {
            if !(v > 0.0) {
                return Err(Error::Domain(format!("{name} = {v} must be > 0")));
            }
        }
        if !(l > 0.0) {
            return Err(Error::Domain(format!("l = {l} must be > 0")));
        }
        Ok(Self { r, r_c, t_s, l, s_alpha, s_beta })
    }

    /// Emitter radius a = r_c + t_s.
    pub fn a(&self) -> f64 {
        self.r_c + self.t_s
    }

    /// Centre-to-centre distance d = r + l + a.
    pub fn d(&self) -> f64 {
        self.r + self.l + self.a()
    }

    pub fn warnings(&self, env: &Environment) -> Vec<GeometryWarning> {
        let mut w = Vec::new();
        if self.l < 3.0 {
            w.push(GeometryWarning(format!(
                "gap l = {} nm is below 3 nm; the point-dipole coupling is unreliable",
                self.l
            )));
        }
        if env.t / self.r <= 100.0 {
            w.push(GeometryWarning(format!(
                "t/r = {:.1} is not ≫ 1; the thick-substrate image model is unreliable",
                env.t / self.r
            )));
        }
        w
    }
}

/// How the wavenumber in the radiative rate is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiativeWavenumber {
    /// k = n/λ_pl (cycles per unit length). Reproduces γ_r⁻¹ ≈ 4.3 ps.
    #[default]
    Spectroscopic,
    /// k = ω_pl n / c (radians per unit length).
    Angular,
}

/// Geometric factor of the sphere with its substrate image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubstrateFactor {
    pub l_factor: f64,
    pub f: f64,
    pub reflectance: f64,
}

/// Plasmon parameters derived from the material and geometry inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedPlasmon {
    pub l_factor: f64,
    pub f: f64,
    pub reflectance: f64,
    /// LSPR energy [meV].
    pub omega_pl: f64,
    /// LSPR wavelength [nm].
    pub lambda_pl: f64,
    /// Lorentzian strength [meV].
    pub eta: f64,
    pub gamma_nr: f64,
    pub gamma_r: f64,
    pub gamma_pl: f64,
    /// Plasmon dipole moment [D].
    pub chi: f64,
    /// Emitter–plasmon coupling [meV].
    pub g: f64,
}

impl DerivedPlasmon {
    /// Copy with the coupling replaced, e.g. g = 0 for the decoupled limit.
    pub fn with_coupling(mut self, g: f64) -> Self {
        self.g = g;
        self
    }

    /// Copy with the total damping and its radiative part replaced.
    pub fn with_rates(mut self, gamma_nr: f64, gamma_r: f64) -> Self {
        self.gamma_nr = gamma_nr;
        self.gamma_r = gamma_r;
        self.gamma_pl = gamma_nr + gamma_r;
        self
    }
}

pub fn drude_permittivity(metal: &DrudeMetal, omega: f64) -> Result<Complex64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega = {omega} must be > 0")));
    }
    let wp2 = metal.omega_p * metal.omega_p;
    let den = omega * omega + metal.gamma_p * metal.gamma_p;
    let re = metal.eps_inf - wp2 / den;
    let im = wp2 * metal.gamma_p / (omega * den);
    Ok(Complex64::new(re, im))
}

pub fn substrate_geometric_factor(env: &Environment, geom: &Geometry) -> SubstrateFactor {
    let (es, eb) = (env.eps_s(), env.eps_b());
    let refl = (es - eb) / (es + eb);
    let image = 1.0 - (1.0 - refl * refl) * (1.0 + env.t / geom.r).powi(-3);
    let l_factor = (1.0 - geom.s_beta * refl / 8.0 * image) / 3.0;
    SubstrateFactor { l_factor, f: (1.0 - l_factor) / l_factor, reflectance: refl }
}

/// Fröhlich resonance energy ω_pl [meV].
pub fn lspr_energy(metal: &DrudeMetal, f: f64, eps_b: f64) -> Result<f64> {
    let omega_sq = metal.omega_p * metal.omega_p / (metal.eps_inf + f * eps_b);
    let gamma_sq = metal.gamma_p * metal.gamma_p;
    if !(omega_sq > gamma_sq) {
        return Err(Error::NoPlasmonResonance { omega_sq, gamma_sq });
    }
    Ok((omega_sq - gamma_sq).sqrt())
}

/// (η, γ_nr) in meV.
pub fn lorentzian_parameters(metal: &DrudeMetal, f: f64, eps_b: f64, omega_pl: f64) -> (f64, f64) {
    let x = metal.omega_p / (metal.eps_inf + f * eps_b);
    let eta = x * x / (2.0 * omega_pl);
    let ratio = metal.gamma_p / omega_pl;
    (eta, metal.gamma_p * (1.0 + ratio * ratio))
}

/// Radiative damping γ_r [meV] for a particle of radius r [nm].
pub fn radiative_rate(
    f: f64,
    eta: f64,
    n: f64,
    omega_pl: f64,
    r: f64,
    convention: RadiativeWavenumber,
) -> f64 {
    let k = match convention {
        RadiativeWavenumber::Angular => mev_to_rad_per_s(omega_pl) * n / C_LIGHT,
        RadiativeWavenumber::Spectroscopic => n / (mev_to_wavelength(omega_pl) * 1e-9),
    };
    let kr = k * r * 1e-9;
    4.0 / 9.0 * (f + 1.0).powi(2) * eta * n * n * kr.powi(3)
}

/// Plasmon dipole moment χ [D].
pub fn mnp_dipole_moment(f: f64, eps_b: f64, eta: f64, r: f64) -> f64 {
    let r_m = r * 1e-9;
    let eta_si = mev_to_rad_per_s(eta);
    let chi = (f + 1.0) * eps_b / 3.0 * (12.0 * PI * EPS0 * HBAR * eta_si * r_m.powi(3)).sqrt();
    si_to_debye(chi)
}

/// Dipole–dipole coupling g [meV] between a particle of radius r and an
/// emitter of dipole μ [D] at centre distance d [nm].
pub fn coupling_rate(
    f: f64,
    mu: f64,
    s_alpha: f64,
    d: f64,
    env: &Environment,
    eta: f64,
    r: f64,
    a: f64,
) -> Result<f64> {
    if !(d > r + a) {
        return Err(Error::Domain(format!(
            "particles overlap: d = {d} nm ≤ r + a = {} nm",
            r + a
        )));
    }
    let r_m = r * 1e-9;
    let d_m = d * 1e-9;
    let eta_si = mev_to_rad_per_s(eta);
    let g = (f + 1.0) / 3.0
        * (debye_to_si(mu) * s_alpha / d_m.powi(3))
        * (env.eps_b() / env.eps_b_eff())
        * (3.0 * eta_si * r_m.powi(3) / (4.0 * PI * EPS0 * HBAR)).sqrt();
    Ok(g * HBAR / MEV)
}

/// Quasi-static polarizability [nm³] in its exact and Lorentzian forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarizability {
    pub exact: Complex64,
    pub lorentzian: Complex64,
}

pub fn quasistatic_polarizability(
    metal: &DrudeMetal,
    env: &Environment,
    geom: &Geometry,
    plasmon: &DerivedPlasmon,
    omega: f64,
) -> Result<Polarizability> {
    let eps = drude_permittivity(metal, omega)?;
    let eb = env.eps_b();
    let l = plasmon.l_factor;
    let den = eps * l + (1.0 - l) * eb;
    if den.norm() < 1e-300 {
        return Err(Error::Pole(omega));
    }
    let vol = 4.0 * PI * geom.r.powi(3) / 3.0;
    let exact = (eps - eb) / den * vol;
    let delta = plasmon.omega_pl - omega;
    let lor = Complex64::i() * vol * eb * (plasmon.f + 1.0).powi(2) * plasmon.eta
        / Complex64::new(plasmon.gamma_pl / 2.0, delta);
    Ok(Polarizability { exact, lorentzian: lor })
}

/// Full chain from inputs to the plasmon parameters.
pub fn derive_plasmon(
    metal: &DrudeMetal,
    env: &Environment,
    geom: &Geometry,
    mu: f64,
    convention: RadiativeWavenumber,
) -> Result<DerivedPlasmon> {
    let sub = substrate_geometric_factor(env, geom);
    let eb = env.eps_b();
    let omega_pl = lspr_energy(metal, sub.f, eb)?;
    let (eta, gamma_nr) = lorentzian_parameters(metal, sub.f, eb, omega_pl);
    let gamma_r = radiative_rate(sub.f, eta, env.n, omega_pl, geom.r, convention);
    let chi = mnp_dipole_moment(sub.f, eb, eta, geom.r);
    let g = coupling_rate(sub.f, mu, geom.s_alpha, geom.d(), env, eta, geom.r, geom.a())?;
    Ok(DerivedPlasmon {
        l_factor: sub.l_factor,
        f: sub.f,
        reflectance: sub.reflectance,
        omega_pl,
        lambda_pl: mev_to_wavelength(omega_pl),
        eta,
        gamma_nr,
        gamma_r,
        gamma_pl: gamma_nr + gamma_r,
        chi,
        g,
    })
}
