//! Self-consistency suite: CPTP structure, closed-form oracles, engine
//! agreement, truncation convergence and photocount identities.

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic;
use crate::config::ModelConfig;
use crate::constants::mev_to_per_ps;
use crate::error::Result;
use crate::lindblad::{
    coherent_state, convergence_check, correlation_tau, QuantumSystem, ScatteringOperator,
    SystemParams, CONVERGENCE_TOL,
};
use crate::photodetection::{count_stats, noise_m, Detector};
use crate::sensing::{fano_features, Engine};
use num_complex::Complex64;

/// Emitter population below which the factorized solution is expected to hold.
pub const WEAK_EXCITATION: f64 = 0.05;
/// Delay [ps] standing in for τ → ∞.
pub const LONG_DELAY: f64 = 1000.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn below(name: &str, measured: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            measured,
            tolerance,
            pass: measured.is_finite() && measured < tolerance,
            detail: detail.into(),
        }
    }

    fn failed(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.into(), measured: f64::NAN, tolerance: f64::NAN, pass: false, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub fock_dim: usize,
    pub probes: Vec<(String, f64)>,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// LSPR, Fano dip and Fano peak for the configured index.
pub fn probe_wavelengths(cfg: &ModelConfig) -> Result<Vec<(String, f64)>> {
    let n = cfg.environment.n;
    let p = cfg.plasmon(n)?;
    let f = fano_features(cfg, n, Engine::Analytic, 0.3, 1e-4)?;
    Ok(vec![("lspr".into(), p.lambda_pl), ("fano_dip".into(), f.dip), ("fano_peak".into(), f.peak)])
}

fn system_at(cfg: &ModelConfig, lambda: f64, fock_dim: usize) -> Result<QuantumSystem> {
    let n = cfg.environment.n;
    let p = cfg.plasmon(n)?;
    let d = cfg.drive_at(lambda, n, &p)?;
    QuantumSystem::new(SystemParams::from_drive(&p, &d), fock_dim, cfg.solver.scattering)
}

/// Runs every check; a check that cannot be computed is recorded as failed.
pub fn validate(cfg: &ModelConfig) -> Result<ValidationReport> {
    let probes = probe_wavelengths(cfg)?;
    let mut checks = Vec::new();
    let n_fock = cfg.solver.fock_dim;
    let push = |checks: &mut Vec<Check>, name: &str, r: Result<Vec<Check>>| match r {
        Ok(mut c) => checks.append(&mut c),
        Err(e) => checks.push(Check::failed(name, e.to_string())),
    };

    let per_probe: Vec<Vec<Check>> = probes
        .par_iter()
        .map(|(label, lambda)| {
            let mut c = Vec::new();
            push(&mut c, &format!("cptp/{label}"), cptp(cfg, label, *lambda));
            push(&mut c, &format!("regression_zero_delay/{label}"), regression_zero_delay(cfg, label, *lambda));
            push(&mut c, &format!("long_delay/{label}"), long_delay(cfg, label, *lambda));
            push(&mut c, &format!("fock_convergence/{label}"), fock_convergence(cfg, label, *lambda));
            c
        })
        .collect();
    checks.extend(per_probe.into_iter().flatten());
    push(&mut checks, "coherent_state_oracle", coherent_oracle(cfg, probes[0].1));
    push(&mut checks, "bare_cavity_g2_tau", bare_cavity(cfg, probes[0].1));
    push(&mut checks, "engine_agreement", engine_agreement(cfg, probes[0].1, probes[2].1));
    push(&mut checks, "shot_noise", shot_noise(cfg, probes[0].1));
    push(&mut checks, "efficiency_invariance", efficiency_invariance(cfg, probes[2].1));
    Ok(ValidationReport { fock_dim: n_fock, probes, checks })
}

fn cptp(cfg: &ModelConfig, label: &str, lambda: f64) -> Result<Vec<Check>> {
    let sys = system_at(cfg, lambda, cfg.solver.fock_dim)?;
    let sol = sys.steady_state()?;
    let tr = sol.raw_trace_error.max((sol.rho.trace() - Complex64::new(1.0, 0.0)).norm());
    Ok(vec![
        Check::below(&format!("trace/{label}"), tr, 1e-10, "|Tr ρ − 1| before projection"),
        Check::below(&format!("hermiticity/{label}"), sol.raw_hermiticity_error.max(sol.rho.hermiticity_error()), 1e-10, "max |ρ − ρ†| before projection"),
        Check::below(
            &format!("positivity/{label}"),
            -sol.rho.min_eigenvalue(),
            cfg.solver.positivity_tol,
            "−λ_min(ρ)",
        ),
        Check::below(&format!("residual/{label}"), sol.residual, cfg.solver.steady_tol, "max |L vec ρ| [1/ps]"),
        Check::below(
            &format!("trace_functional/{label}"),
            sys.liouvillian.trace_leak(),
            1e-10,
            "max |Tr ∘ L|",
        ),
    ])
}

fn regression_zero_delay(cfg: &ModelConfig, label: &str, lambda: f64) -> Result<Vec<Check>> {
    let sys = system_at(cfg, lambda, cfg.solver.fock_dim)?;
    let sol = sys.steady_state()?;
    let m = sys.moments(&sol)?;
    let b = sys.scattering_operator();
    let statics = [m.g2_0, m.g3_0, m.g4_0];
    Ok((2..=4)
        .map(|k| {
            let v = correlation_tau(&sys.liouvillian, &sol.rho, &b, k, &[0.0]).map(|v| v[0]);
            match v {
                Ok(v) => Check::below(
                    &format!("regression_zero_delay/g{k}/{label}"),
                    rel(v, statics[k - 2]),
                    1e-10,
                    "regression at τ = 0 against static moment",
                ),
                Err(e) => Check::failed(&format!("regression_zero_delay/g{k}/{label}"), e.to_string()),
            }
        })
        .collect())
}

/// With one photon at 0 and n − 1 at τ, g⁽ⁿ⁾(τ → ∞) = g⁽ⁿ⁻¹⁾(0), which is 1 for n = 2.
fn long_delay(cfg: &ModelConfig, label: &str, lambda: f64) -> Result<Vec<Check>> {
    let sys = system_at(cfg, lambda, cfg.solver.fock_dim)?;
    let sol = sys.steady_state()?;
    let m = sys.moments(&sol)?;
    let b = sys.scattering_operator();
    let taus = [0.0, LONG_DELAY];
    let rows = crate::lindblad::correlations_tau(&sys.liouvillian, &sol.rho, &b, &[2, 3, 4], &taus)?;
    let limits = [1.0, m.g2_0, m.g3_0];
    Ok(rows
        .iter()
        .zip(limits)
        .zip(2..)
        .map(|((row, lim), k)| {
            Check::below(
                &format!("long_delay/g{k}/{label}"),
                rel(row[1], lim),
                0.02,
                format!("g{k}({LONG_DELAY} ps) against g{}(0)", k - 1),
            )
        })
        .collect())
}

fn fock_dims(n: usize) -> Vec<usize> {
    let mut dims = vec![n.saturating_sub(2).max(2), n, n + 2];
    dims.dedup();
    dims
}

fn fock_convergence(cfg: &ModelConfig, label: &str, lambda: f64) -> Result<Vec<Check>> {
    let sys = system_at(cfg, lambda, cfg.solver.fock_dim)?;
    let dims = fock_dims(cfg.solver.fock_dim);
    let rep = convergence_check(&sys.params, &dims, cfg.solver.scattering)?;
    Ok(vec![Check::below(
        &format!("fock_convergence/{label}"),
        rep.max_delta,
        CONVERGENCE_TOL,
        format!("max relative change of ⟨a†a⟩, g2(0) over N = {dims:?}"),
    )])
}

fn coherent_oracle(cfg: &ModelConfig, lambda: f64) -> Result<Vec<Check>> {
    let mut sys = system_at(cfg, lambda, cfg.solver.fock_dim)?;
    let mut p = sys.params;
    p.g = 0.0;
    p.rabi_ex = 0.0;
    sys = QuantumSystem::new(p, cfg.solver.fock_dim, ScatteringOperator::Plasmon)?;
    let sol = sys.steady_state()?;
    let alpha = Complex64::i() * p.rabi_pl / Complex64::new(p.gamma_pl / 2.0, p.delta_pl);
    let psi = coherent_state(&sys.space, alpha);
    let fid = sol.rho.fidelity_pure(&psi);
    Ok(vec![Check::below("coherent_state_oracle", 1.0 - fid, 1e-6, "1 − ⟨α,g|ρ|α,g⟩ at g = Ω_ex = 0")])
}

fn bare_cavity(cfg: &ModelConfig, lambda: f64) -> Result<Vec<Check>> {
    let sys = system_at(cfg, lambda, cfg.solver.fock_dim)?;
    let mut p = sys.params;
    p.g = 0.0;
    p.rabi_ex = 0.0;
    let sys = QuantumSystem::new(p, cfg.solver.fock_dim, ScatteringOperator::Plasmon)?;
    let sol = sys.steady_state()?;
    let taus: Vec<f64> = (0..=10).map(|k| k as f64 * 0.5).collect();
    let rows = crate::lindblad::correlations_tau(
        &sys.liouvillian,
        &sol.rho,
        &sys.scattering_operator(),
        &[2, 3, 4],
        &taus,
    )?;
    let dev = rows.iter().flatten().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    Ok(vec![Check::below("bare_cavity_g2_tau", dev, 1e-6, "max |g(n)(τ) − 1| at g = Ω_ex = 0")])
}

/// Agreement on 21 points from the LSPR to the Fano peak, asserted where the
/// emitter is weakly excited.
fn engine_agreement(cfg: &ModelConfig, lspr: f64, peak: f64) -> Result<Vec<Check>> {
    let n = cfg.environment.n;
    let plasmon = cfg.plasmon(n)?;
    let mut worst_n: f64 = 0.0;
    let mut worst_g: f64 = 0.0;
    let mut excluded = Vec::new();
    for k in 0..=20 {
        let lambda = lspr + (peak - lspr) * k as f64 / 20.0;
        let drive = cfg.drive_at(lambda, n, &plasmon)?;
        let a = analytic::steady_state(&plasmon, &drive)?;
        if a.population >= WEAK_EXCITATION {
            excluded.push(format!("{lambda:.4}"));
            continue;
        }
        let sys = QuantumSystem::new(SystemParams::from_drive(&plasmon, &drive), cfg.solver.fock_dim, cfg.solver.scattering)?;
        let m = sys.moments(&sys.steady_state()?)?;
        worst_n = worst_n.max(rel(m.n_photon, a.n_photon()));
        worst_g = worst_g.max(rel(m.g2_0, a.g2_0));
    }
    let note = if excluded.is_empty() {
        String::new()
    } else {
        format!("; skipped (population ≥ {WEAK_EXCITATION}): {}", excluded.join(", "))
    };
    Ok(vec![
        Check::below("engine_agreement/n_photon", worst_n, 0.01, format!("max relative ⟨a†a⟩ difference{note}")),
        Check::below("engine_agreement/g2_0", worst_g, 0.03, format!("max relative g2(0) difference{note}")),
    ])
}

fn shot_noise(cfg: &ModelConfig, lambda: f64) -> Result<Vec<Check>> {
    let n = cfg.environment.n;
    let p = cfg.plasmon(n)?;
    let d = cfg.drive_at(lambda, n, &p)?;
    let s = analytic::steady_state(&p, &d)?;
    let m = crate::photodetection::mean_photocount(mev_to_per_ps(p.gamma_r) * s.n_photon(), &cfg.detector);
    let dm = noise_m(m, 1.0)?;
    Ok(vec![Check::below("shot_noise", rel(dm, m.sqrt()), 1e-15, "Δm against √⟨m⟩ at g2(0) = 1")])
}

fn efficiency_invariance(cfg: &ModelConfig, lambda: f64) -> Result<Vec<Check>> {
    let n = cfg.environment.n;
    let p = cfg.plasmon(n)?;
    let d = cfg.drive_at(lambda, n, &p)?;
    let s = analytic::steady_state(&p, &d)?;
    let flux = mev_to_per_ps(p.gamma_r) * s.n_photon();
    let ratio = |xi: f64| -> Result<f64> {
        let det = Detector { xi, ..cfg.detector };
        let st = count_stats(flux, s.g2_0, s.g3_0, s.g4_0, &det)?;
        Ok(st.m2 / (st.m_mean * st.m_mean))
    };
    let a = ratio(cfg.detector.xi)?;
    let b = ratio(cfg.detector.xi / 2.0)?;
    Ok(vec![Check::below("efficiency_invariance", rel(a, b), 1e-12, "⟨m(m−1)⟩/⟨m⟩² at ξ and ξ/2")])
}
