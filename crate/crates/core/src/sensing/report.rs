//! Sensitivities, resolutions and enhancement factors at the special wavelengths.

use serde::{Deserialize, Serialize};

use super::derivative::{linearity_report, sensitivity, Linearity, Sensitivity};
use super::special::{special_points, SpecialPoints};
use super::sweep::{sweep, Engine, PointResult};
use crate::config::{Grid, ModelConfig};
use crate::error::Result;

/// Δn = σ/S, or `None` when the sensitivity vanishes.
pub fn resolution(s: f64, sigma: f64) -> Option<f64> {
    if s > 0.0 {
        Some(sigma / s)
    } else {
        None
    }
}

/// Where along the n grid the derivative is taken.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    /// First grid point, one-sided stencil.
    #[default]
    Start,
    /// Middle grid point, central stencil.
    Midpoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSensing {
    pub label: String,
    pub lambda: f64,
    pub m_mean: f64,
    pub g2_0: f64,
    pub sigma_m: f64,
    pub sigma_g2: f64,
    /// Intensity sensitivity at the anchor.
    pub s_i: Sensitivity,
    /// Intensity sensitivity at the other anchor.
    pub s_i_alt: Sensitivity,
    /// g⁽²⁾(0) sensitivity at the anchor.
    pub s_ii: Sensitivity,
    pub s_ii_alt: Sensitivity,
    pub dn_i: Option<f64>,
    pub dn_ii: Option<f64>,
    pub linearity_m: Linearity,
    pub linearity_g2: Linearity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Enhancement {
    /// "L", "M" or "R".
    pub position: String,
    /// S_I(F)/S_I(P).
    pub e_s: f64,
    /// Δn_I(P)/Δn_I(F).
    pub e_dn: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensingReport {
    pub engine: Engine,
    pub anchor: Anchor,
    pub n_anchor: f64,
    pub n_grid: Vec<f64>,
    pub plasmon_window: Option<Grid>,
    pub fano_window: Option<Grid>,
    pub plasmon_points: Option<SpecialPoints>,
    pub fano_points: Option<SpecialPoints>,
    pub plasmon: Vec<PointSensing>,
    pub fano: Vec<PointSensing>,
    pub enhancements: Vec<Enhancement>,
    /// Wavelength minimizing Δn_{I−I} over the antibunched part of the Fano window.
    pub g2_resolution_argmin: Option<f64>,
    /// max |g⁽²⁾(0) − 1| over the plasmon window and n grid.
    pub plasmon_g2_max_deviation: Option<f64>,
    pub scheme: String,
    pub flags: Vec<String>,
}

pub fn enhancement(plasmon: &[PointSensing], fano: &[PointSensing]) -> Vec<Enhancement> {
    plasmon
        .iter()
        .zip(fano)
        .map(|(p, f)| Enhancement {
            position: p.label[1..].to_string(),
            e_s: f.s_i.value / p.s_i.value,
            e_dn: match (p.dn_i, f.dn_i) {
                (Some(a), Some(b)) if b > 0.0 => Some(a / b),
                _ => None,
            },
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SenseOptions {
    pub engine: Engine,
    pub anchor: Anchor,
    pub plasmon: bool,
    pub fano: bool,
}

impl Default for SenseOptions {
    fn default() -> Self {
        Self { engine: Engine::Analytic, anchor: Anchor::Start, plasmon: true, fano: true }
    }
}

fn column(points: &[PointResult], f: impl Fn(&PointResult) -> f64) -> Vec<f64> {
    points.iter().map(f).collect()
}

fn point_sensing(
    cfg: &ModelConfig,
    label: &str,
    lambda: f64,
    ns: &[f64],
    at: usize,
    alt: usize,
    engine: Engine,
) -> Result<PointSensing> {
    let pts = sweep(cfg, &[lambda], ns, engine)?;
    let m = column(&pts, |p| p.m_mean);
    let g2 = column(&pts, |p| p.g2_0);
    let s_i = sensitivity(ns, &m, at)?;
    let s_ii = sensitivity(ns, &g2, at)?;
    let here = &pts[at];
    Ok(PointSensing {
        label: label.to_string(),
        lambda,
        m_mean: here.m_mean,
        g2_0: here.g2_0,
        sigma_m: here.sigma_m,
        sigma_g2: here.sigma_g2,
        s_i,
        s_i_alt: sensitivity(ns, &m, alt)?,
        s_ii,
        s_ii_alt: sensitivity(ns, &g2, alt)?,
        dn_i: resolution(s_i.value, here.sigma_m),
        dn_ii: resolution(s_ii.value, here.sigma_g2),
        linearity_m: linearity_report(ns, &m)?,
        linearity_g2: linearity_report(ns, &g2)?,
    })
}

fn window_points(
    cfg: &ModelConfig,
    grid: &Grid,
    n: f64,
    engine: Engine,
) -> Result<(Vec<f64>, Vec<PointResult>)> {
    let lambdas = grid.points();
    let pts = sweep(cfg, &lambdas, &[n], engine)?;
    Ok((lambdas, pts))
}

/// Builds the sensing report over the configured windows and n grid.
pub fn sense(cfg: &ModelConfig, opts: &SenseOptions) -> Result<SensingReport> {
    let ns = cfg.grids.n_range.points();
    let mid = ns.len() / 2;
    let (at, alt) = match opts.anchor {
        Anchor::Start => (0, mid),
        Anchor::Midpoint => (mid, 0),
    };
    let n0 = ns[at];
    let mut flags = Vec::new();
    let mut report = SensingReport {
        engine: opts.engine,
        anchor: opts.anchor,
        n_anchor: n0,
        n_grid: ns.clone(),
        plasmon_window: opts.plasmon.then_some(cfg.grids.plasmon_window),
        fano_window: opts.fano.then_some(cfg.grids.fano_window),
        plasmon_points: None,
        fano_points: None,
        plasmon: Vec::new(),
        fano: Vec::new(),
        enhancements: Vec::new(),
        g2_resolution_argmin: None,
        plasmon_g2_max_deviation: None,
        scheme: format!(
            "second-difference special points; n-derivative {} with step {}",
            match opts.anchor {
                Anchor::Start => "one-sided three-point at the grid start",
                Anchor::Midpoint => "central at the grid midpoint",
            },
            cfg.grids.n_range.step
        ),
        flags: Vec::new(),
    };

    if opts.plasmon {
        let (lambdas, pts) = window_points(cfg, &cfg.grids.plasmon_window, n0, opts.engine)?;
        match special_points(&lambdas, &column(&pts, |p| p.m_mean)) {
            Ok(sp) => {
                report.plasmon_points = Some(sp);
                for (label, l) in [("PL", sp.left), ("PM", sp.extremum), ("PR", sp.right)] {
                    report.plasmon.push(point_sensing(cfg, label, l, &ns, at, alt, opts.engine)?);
                }
            }
            Err(e) => flags.push(format!("plasmon window: {e}")),
        }
        let all = sweep(cfg, &lambdas, &ns, opts.engine)?;
        report.plasmon_g2_max_deviation =
            Some(all.iter().map(|p| (p.g2_0 - 1.0).abs()).fold(0.0, f64::max));
    }

    if opts.fano {
        let (lambdas, pts) = window_points(cfg, &cfg.grids.fano_window, n0, opts.engine)?;
        match special_points(&lambdas, &column(&pts, |p| p.m_mean)) {
            Ok(sp) => {
                report.fano_points = Some(sp);
                for (label, l) in [("FL", sp.left), ("FM", sp.extremum), ("FR", sp.right)] {
                    report.fano.push(point_sensing(cfg, label, l, &ns, at, alt, opts.engine)?);
                }
            }
            Err(e) => flags.push(format!("fano window: {e}")),
        }
        report.g2_resolution_argmin = g2_argmin(cfg, &lambdas, &pts, &ns, at, opts.engine)?;
    }

    if report.plasmon.len() == 3 && report.fano.len() == 3 {
        report.enhancements = enhancement(&report.plasmon, &report.fano);
    } else if opts.plasmon && opts.fano {
        flags.push("enhancements omitted: special points missing".into());
    }
    report.flags = flags;
    Ok(report)
}

/// Δn_{I−I} minimizer over the antibunched wavelengths of the window.
fn g2_argmin(
    cfg: &ModelConfig,
    lambdas: &[f64],
    at_anchor: &[PointResult],
    ns: &[f64],
    at: usize,
    engine: Engine,
) -> Result<Option<f64>> {
    let anti: Vec<usize> = (0..lambdas.len()).filter(|&i| at_anchor[i].g2_0 < 1.0).collect();
    if anti.is_empty() {
        return Ok(None);
    }
    let sel: Vec<f64> = anti.iter().map(|&i| lambdas[i]).collect();
    let all = sweep(cfg, &sel, ns, engine)?;
    let k = sel.len();
    let mut best: Option<(f64, f64)> = None;
    for (j, &l) in sel.iter().enumerate() {
        let g2: Vec<f64> = (0..ns.len()).map(|i| all[i * k + j].g2_0).collect();
        let s = sensitivity(ns, &g2, at)?;
        if let Some(dn) = resolution(s.value, all[at * k + j].sigma_g2) {
            if best.map_or(true, |(_, b)| dn < b) {
                best = Some((l, dn));
            }
        }
    }
    Ok(best.map(|(l, _)| l))
}
