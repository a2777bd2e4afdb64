//! Point evaluation and (λ, n) sweeps with either engine.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic;
use crate::config::ModelConfig;
use crate::constants::mev_to_per_ps;
use crate::error::{Error, Result};
use crate::lindblad::{QuantumSystem, SystemParams};
use crate::photodetection::count_stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    #[default]
    Analytic,
    Lindblad,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Engine::Analytic),
            "lindblad" => Ok(Engine::Lindblad),
            _ => Err(Error::config("engine", format!("unknown engine `{s}`"))),
        }
    }
}

/// Observables at one (λ, n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointResult {
    pub lambda: f64,
    pub n: f64,
    /// ⟨b†b⟩ [1/ps].
    pub flux: f64,
    pub n_photon: f64,
    pub population: f64,
    pub g2_0: f64,
    pub g3_0: f64,
    pub g4_0: f64,
    pub m_mean: f64,
    pub delta_m: f64,
    pub sigma_m: f64,
    pub delta_g2: f64,
    pub sigma_g2: f64,
    /// Top Fock-level population (Lindblad only).
    pub top_fock: Option<f64>,
}

pub fn evaluate(cfg: &ModelConfig, lambda: f64, n: f64, engine: Engine) -> Result<PointResult> {
    evaluate_inner(cfg, lambda, n, engine).map_err(|e| e.at(lambda, n))
}

fn evaluate_inner(cfg: &ModelConfig, lambda: f64, n: f64, engine: Engine) -> Result<PointResult> {
    let plasmon = cfg.plasmon(n)?;
    let drive = cfg.drive_at(lambda, n, &plasmon)?;
    let (flux, n_photon, population, g, top) = match engine {
        Engine::Analytic => {
            let s = analytic::steady_state(&plasmon, &drive)?;
            let flux = mev_to_per_ps(plasmon.gamma_r) * s.n_photon();
            (flux, s.n_photon(), s.population, [s.g2_0, s.g3_0, s.g4_0], None)
        }
        Engine::Lindblad => {
            let sys = QuantumSystem::new(
                SystemParams::from_drive(&plasmon, &drive),
                cfg.solver.fock_dim,
                cfg.solver.scattering,
            )?;
            let sol = sys.steady_state()?;
            let m = sys.moments(&sol)?;
            (m.flux, m.n_photon, m.population, [m.g2_0, m.g3_0, m.g4_0], Some(m.top_fock_population))
        }
    };
    let st = count_stats(flux, g[0], g[1], g[2], &cfg.detector)?;
    Ok(PointResult {
        lambda,
        n,
        flux,
        n_photon,
        population,
        g2_0: g[0],
        g3_0: g[1],
        g4_0: g[2],
        m_mean: st.m_mean,
        delta_m: st.delta_m,
        sigma_m: st.sigma_m,
        delta_g2: st.delta_g2,
        sigma_g2: st.sigma_g2,
        top_fock: top,
    })
}

/// Runs `f` on a pool of `jobs` threads (all cores when `None`).
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Evaluates every λ at every n. Results are ordered n-major, then by λ,
/// independent of the thread count.
pub fn sweep(
    cfg: &ModelConfig,
    lambdas: &[f64],
    ns: &[f64],
    engine: Engine,
) -> Result<Vec<PointResult>> {
    if lambdas.is_empty() || ns.is_empty() {
        return Err(Error::Domain("empty sweep grid".into()));
    }
    let pairs: Vec<(f64, f64)> = ns.iter().flat_map(|&n| lambdas.iter().map(move |&l| (l, n))).collect();
    pairs.par_iter().map(|&(l, n)| evaluate(cfg, l, n, engine)).collect()
}

/// Per-point results for one n, errors kept per row.
pub fn spectrum(cfg: &ModelConfig, lambdas: &[f64], n: f64, engine: Engine) -> Vec<Result<PointResult>> {
    lambdas.par_iter().map(|&l| evaluate(cfg, l, n, engine)).collect()
}
