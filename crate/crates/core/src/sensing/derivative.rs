//! Finite-difference sensitivities and linear-fit diagnostics.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Linearity {
    pub slope: f64,
    pub intercept: f64,
    /// max |residual| / (max − min) of the signal.
    pub max_rel_deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sensitivity {
    /// |d signal/dn|.
    pub value: f64,
    /// Signed derivative.
    pub derivative: f64,
    /// Same stencil at twice the step, Richardson-combined with the step-h value.
    pub richardson: Option<f64>,
}

fn check_uniform(x: &[f64]) -> Result<f64> {
    let h = x[1] - x[0];
    if !(h > 0.0) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    for w in x.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-6 * h {
            return Err(Error::Domain("grid must be uniform".into()));
        }
    }
    Ok(h)
}

/// Second-order derivative estimate at index `at`: central in the interior,
/// one-sided three-point at the ends.
fn derivative_at(y: &[f64], at: usize, h: f64, stride: usize) -> Option<f64> {
    let n = y.len();
    let s = stride;
    if at >= s && at + s < n {
        Some((y[at + s] - y[at - s]) / (2.0 * h * s as f64))
    } else if at + 2 * s < n {
        Some((-3.0 * y[at] + 4.0 * y[at + s] - y[at + 2 * s]) / (2.0 * h * s as f64))
    } else if at >= 2 * s {
        Some((3.0 * y[at] - 4.0 * y[at - s] + y[at - 2 * s]) / (2.0 * h * s as f64))
    } else {
        None
    }
}

/// Sensitivity of `signal(n)` at grid index `at`.
pub fn sensitivity(ns: &[f64], signal: &[f64], at: usize) -> Result<Sensitivity> {
    if ns.len() < 3 || ns.len() != signal.len() {
        return Err(Error::Domain("sensitivity needs ≥ 3 matching points".into()));
    }
    if at >= ns.len() {
        return Err(Error::Domain(format!("index {at} outside the grid")));
    }
    let h = check_uniform(ns)?;
    let d = derivative_at(signal, at, h, 1).expect("three points suffice");
    let richardson = derivative_at(signal, at, h, 2).map(|d2| (4.0 * d - d2) / 3.0);
    Ok(Sensitivity { value: d.abs(), derivative: d, richardson })
}

/// Least-squares line through (x, y).
pub fn linearity_report(x: &[f64], y: &[f64]) -> Result<Linearity> {
    if x.len() < 4 || x.len() != y.len() {
        return Err(Error::Domain("linearity needs ≥ 4 matching points".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_res = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - (intercept + slope * a)).abs())
        .fold(0.0, f64::max);
    let lo = y.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    let max_rel_deviation = if range > 0.0 { max_res / range } else { 0.0 };
    Ok(Linearity { slope, intercept, max_rel_deviation })
}
