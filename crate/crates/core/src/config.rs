//! Model configuration with the reference parameter set as defaults.
//!
//! The document is JSON. Unknown keys are rejected, and `KEY=VAL` overrides
//! address fields by dotted path (`drive.I0=40`).

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::drive::{DriveParams, FieldNormalization};
use crate::error::{Error, Result};
use crate::lindblad::ScatteringOperator;
use crate::materials::{
    derive_plasmon, DerivedPlasmon, DrudeMetal, Environment, Geometry, RadiativeWavenumber,
};
use crate::photodetection::Detector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MetalConfig {
    pub n_inf: f64,
    /// meV
    pub omega_p: f64,
    /// meV
    pub gamma_p: f64,
}

impl Default for MetalConfig {
    fn default() -> Self {
        Self { n_inf: 3.16, omega_p: 8579.0, gamma_p: 71.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnvironmentConfig {
    pub n: f64,
    pub n_s: f64,
    pub n_d: f64,
    /// Substrate thickness [mm].
    pub t_mm: f64,
}

impl Default for EnvironmentConfig {
    fn default() -> Self {
        Self { n: 1.3330, n_s: 1.5, n_d: 2.45, t_mm: 0.17 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    pub r: f64,
    pub r_c: f64,
    pub t_s: f64,
    pub l: f64,
    pub s_alpha: f64,
    pub s_beta: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self { r: 25.0, r_c: 0.8, t_s: 0.7, l: 3.5, s_alpha: 2.0, s_beta: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EmitterConfig {
    /// Dipole [D].
    pub mu: f64,
    /// Exciton energy [meV].
    pub omega_ex: f64,
    /// Free-space decay [neV].
    pub gamma_ex_nev: f64,
}

impl Default for EmitterConfig {
    fn default() -> Self {
        Self { mu: 72.0, omega_ex: 2149.0, gamma_ex_nev: 118.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DriveConfig {
    /// Intensity [W/cm²].
    #[serde(rename = "I0")]
    pub i0: f64,
}

impl Default for DriveConfig {
    fn default() -> Self {
        Self { i0: 33.6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub fock_dim: usize,
    pub steady_tol: f64,
    pub positivity_tol: f64,
    pub scattering: ScatteringOperator,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            fock_dim: 10,
            steady_tol: 1e-10,
            positivity_tol: 1e-8,
            scattering: ScatteringOperator::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Conventions {
    pub radiative_wavenumber: RadiativeWavenumber,
    pub field_normalization: FieldNormalization,
}

/// Inclusive grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let g = Self { start, stop, step };
        g.validate("grid")?;
        Ok(g)
    }

    pub fn validate(&self, path: &str) -> Result<()> {
        if !(self.step > 0.0) || !(self.stop >= self.start) || !self.start.is_finite() {
            return Err(Error::config(
                path,
                format!("invalid grid {}:{}:{}", self.start, self.stop, self.step),
            ));
        }
        Ok(())
    }

    /// Points start + k·step up to stop (within a 1e-9 step slack).
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }

    /// Parses `a:b:step`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::config("grid", format!("expected start:stop:step, got `{s}`")));
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .trim()
                .parse()
                .map_err(|_| Error::config("grid", format!("not a number: `{p}`")))?;
        }
        Self::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub plasmon_window: Grid,
    pub fano_window: Grid,
    pub n_range: Grid,
    /// Correlation delay range [ps].
    pub tau_max: f64,
    pub tau_step: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            plasmon_window: Grid { start: 520.0, stop: 555.0, step: 0.01 },
            fano_window: Grid { start: 576.95, stop: 577.08, step: 1e-4 },
            n_range: Grid { start: 1.3330, stop: 1.3334, step: 1e-4 },
            tau_max: 50.0,
            tau_step: 0.1,
        }
    }
}

/// Complete set of model inputs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelConfig {
    pub metal: MetalConfig,
    pub environment: EnvironmentConfig,
    pub geometry: GeometryConfig,
    pub emitter: EmitterConfig,
    pub drive: DriveConfig,
    pub detector: Detector,
    pub solver: SolverConfig,
    pub conventions: Conventions,
    pub grids: GridConfig,
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::config("<document>", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Applies `path=value` overrides. Values parse as JSON, falling back to a string.
    pub fn with_overrides<S: AsRef<str>>(&self, sets: &[S]) -> Result<Self> {
        let mut doc = serde_json::to_value(self).expect("config serializes");
        for s in sets {
            let s = s.as_ref();
            let (path, raw) = s
                .split_once('=')
                .ok_or_else(|| Error::config(s, "expected KEY=VAL"))?;
            let value: Value =
                serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
            let mut node = &mut doc;
            for key in path.split('.') {
                node = node
                    .as_object_mut()
                    .and_then(|m| m.get_mut(key))
                    .ok_or_else(|| Error::config(path, "unknown key"))?;
            }
            *node = value;
        }
        let cfg: Self = serde_json::from_value(doc).map_err(|e| Error::config("--set", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |path: &str, v: f64| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(path, format!("{v} must be positive")))
            }
        };
        let index = |path: &str, v: f64| -> Result<()> {
            if v >= 1.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(path, format!("{v} must be ≥ 1")))
            }
        };
        index("metal.n_inf", self.metal.n_inf)?;
        pos("metal.omega_p", self.metal.omega_p)?;
        if !(self.metal.gamma_p >= 0.0 && self.metal.gamma_p < self.metal.omega_p) {
            return Err(Error::config("metal.gamma_p", "must lie in [0, omega_p)"));
        }
        index("environment.n", self.environment.n)?;
        index("environment.n_s", self.environment.n_s)?;
        index("environment.n_d", self.environment.n_d)?;
        pos("environment.t_mm", self.environment.t_mm)?;
        pos("geometry.r", self.geometry.r)?;
        pos("geometry.r_c", self.geometry.r_c)?;
        pos("geometry.t_s", self.geometry.t_s)?;
        pos("geometry.l", self.geometry.l)?;
        if !(self.geometry.s_alpha == 2.0 || self.geometry.s_alpha == -1.0) {
            return Err(Error::config("geometry.s_alpha", "must be 2 or -1"));
        }
        if !(self.geometry.s_beta == 1.0 || self.geometry.s_beta == 2.0) {
            return Err(Error::config("geometry.s_beta", "must be 1 or 2"));
        }
        if !(self.emitter.mu >= 0.0) {
            return Err(Error::config("emitter.mu", "must be ≥ 0"));
        }
        pos("emitter.omega_ex", self.emitter.omega_ex)?;
        if !(self.emitter.gamma_ex_nev >= 0.0) {
            return Err(Error::config("emitter.gamma_ex_nev", "must be ≥ 0"));
        }
        if !(self.drive.i0 >= 0.0 && self.drive.i0.is_finite()) {
            return Err(Error::config("drive.I0", "must be ≥ 0"));
        }
        if !(self.detector.xi > 0.0 && self.detector.xi <= 1.0) {
            return Err(Error::config("detector.xi", "must lie in (0, 1]"));
        }
        pos("detector.T_int", self.detector.t_int)?;
        if !(self.detector.duty_cycle > 0.0 && self.detector.duty_cycle <= 1.0) {
            return Err(Error::config("detector.duty_cycle", "must lie in (0, 1]"));
        }
        pos("detector.duration", self.detector.duration)?;
        if self.solver.fock_dim < 2 {
            return Err(Error::config("solver.fock_dim", "must be ≥ 2"));
        }
        pos("solver.steady_tol", self.solver.steady_tol)?;
        pos("solver.positivity_tol", self.solver.positivity_tol)?;
        self.grids.plasmon_window.validate("grids.plasmon_window")?;
        self.grids.fano_window.validate("grids.fano_window")?;
        self.grids.n_range.validate("grids.n_range")?;
        for n in self.grids.n_range.points() {
            index("grids.n_range", n)?;
        }
        if !(self.grids.tau_max >= 0.0) {
            return Err(Error::config("grids.tau_max", "must be ≥ 0"));
        }
        pos("grids.tau_step", self.grids.tau_step)?;
        Ok(())
    }

    /// SHA-256 of the canonical JSON document.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn metal(&self) -> Result<DrudeMetal> {
        DrudeMetal::from_index(self.metal.n_inf, self.metal.omega_p, self.metal.gamma_p)
    }

    /// Environment with the background index replaced by `n`.
    pub fn environment_at(&self, n: f64) -> Result<Environment> {
        let e = &self.environment;
        Environment::new(n, e.n_s, e.n_d, e.t_mm * 1e6)
    }

    pub fn geometry(&self) -> Result<Geometry> {
        let g = &self.geometry;
        Geometry::new(g.r, g.r_c, g.t_s, g.l, g.s_alpha, g.s_beta)
    }

    /// Emitter free-space decay [meV].
    pub fn gamma_ex(&self) -> f64 {
        self.emitter.gamma_ex_nev * 1e-6
    }

    /// Derived plasmon parameters at background index `n`.
    pub fn plasmon(&self, n: f64) -> Result<DerivedPlasmon> {
        derive_plasmon(
            &self.metal()?,
            &self.environment_at(n)?,
            &self.geometry()?,
            self.emitter.mu,
            self.conventions.radiative_wavenumber,
        )
    }

    pub fn drive_at(&self, lambda: f64, n: f64, plasmon: &DerivedPlasmon) -> Result<DriveParams> {
        DriveParams::new(
            self.drive.i0,
            lambda,
            &self.environment_at(n)?,
            plasmon,
            self.emitter.mu,
            self.emitter.omega_ex,
            self.gamma_ex(),
            self.conventions.field_normalization,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_reproduce_reference_inputs() {
        let c = ModelConfig::default();
        assert_eq!(c.metal.n_inf, 3.16);
        assert_eq!(c.metal.omega_p, 8579.0);
        assert_eq!(c.emitter.gamma_ex_nev, 118.0);
        assert_eq!(c.drive.i0, 33.6);
        assert_eq!(c.detector.xi, 0.7);
        assert_eq!(c.detector.t_int, 3.0);
        let g = c.geometry().unwrap();
        assert_eq!(g.a(), 1.5);
        assert_eq!(g.d(), 30.0);
        assert_eq!(c.solver.fock_dim, 10);
        c.validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let c = ModelConfig::default();
        let back = ModelConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(c, back);
        assert_eq!(c.hash(), back.hash());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(ModelConfig::from_json(r#"{"metal": {"colour": 1}}"#).is_err());
        assert!(ModelConfig::from_json(r#"{"bogus": 1}"#).is_err());
        let c = ModelConfig::default();
        assert!(c.with_overrides(&["drive.I1=3"]).is_err());
    }

    #[test]
    fn partial_documents_fill_defaults() {
        let c = ModelConfig::from_json(r#"{"drive": {"I0": 40.0}}"#).unwrap();
        assert_eq!(c.drive.i0, 40.0);
        assert_eq!(c.metal, MetalConfig::default());
    }

    #[test]
    fn overrides_by_dotted_path() {
        let c = ModelConfig::default()
            .with_overrides(&["drive.I0=40", "solver.scattering=\"plasmon_and_emitter\""])
            .unwrap();
        assert_eq!(c.drive.i0, 40.0);
        assert_eq!(c.solver.scattering, ScatteringOperator::PlasmonAndEmitter);
        let c = ModelConfig::default().with_overrides(&["conventions.radiative_wavenumber=angular"]).unwrap();
        assert_eq!(c.conventions.radiative_wavenumber, RadiativeWavenumber::Angular);
    }

    #[test]
    fn malformed_values_name_the_field() {
        let e = ModelConfig::default().with_overrides(&["geometry.r=-1"]).unwrap_err();
        match e {
            Error::Config { path, .. } => assert_eq!(path, "geometry.r"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grid_points_are_inclusive() {
        let g = Grid::parse("1.3330:1.3334:0.0001").unwrap();
        assert_eq!(g.points().len(), 5);
        assert!(Grid::parse("5:1:1").is_err());
        assert!(Grid::parse("1:2").is_err());
    }

    #[test]
    fn hash_changes_with_inputs() {
        let a = ModelConfig::default();
        let b = a.with_overrides(&["drive.I0=33.7"]).unwrap();
        assert_ne!(a.hash(), b.hash());
    }
}
