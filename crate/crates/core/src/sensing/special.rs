//! Inflection and extremum wavelengths from the second derivative of a spectrum.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialPoints {
    pub left: f64,
    pub extremum: f64,
    pub right: f64,
}

/// Three-point second difference; the two end entries are NaN.
pub fn second_derivative(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut d2 = vec![f64::NAN; n];
    for i in 1..n.saturating_sub(1) {
        let hl = x[i] - x[i - 1];
        let hr = x[i + 1] - x[i];
        d2[i] = 2.0 * (hl * y[i + 1] - (hl + hr) * y[i] + hr * y[i - 1]) / (hl * hr * (hl + hr));
    }
    d2
}

fn crossing(x: &[f64], d2: &[f64], k: usize) -> f64 {
    x[k] - d2[k] * (x[k + 1] - x[k]) / (d2[k + 1] - d2[k])
}

/// Peak (minimum of the second derivative) and the nearest zero crossings of
/// the second derivative on either side.
pub fn special_points(x: &[f64], y: &[f64]) -> Result<SpecialPoints> {
    if x.len() < 5 || x.len() != y.len() {
        return Err(Error::Domain("special points need ≥ 5 matching samples".into()));
    }
    let d2 = second_derivative(x, y);
    let im = (1..x.len() - 1)
        .min_by(|&a, &b| d2[a].total_cmp(&d2[b]))
        .expect("interior exists");
    let sign_change = |k: usize| d2[k].is_finite() && d2[k + 1].is_finite() && (d2[k] < 0.0) != (d2[k + 1] < 0.0);
    let left = (1..im).rev().find(|&k| sign_change(k));
    let right = (im..x.len() - 2).find(|&k| sign_change(k));
    match (left, right) {
        (Some(l), Some(r)) => Ok(SpecialPoints { left: crossing(x, &d2, l), extremum: x[im], right: crossing(x, &d2, r) }),
        _ => Err(Error::NoInflection(format!(
            "window {}–{} around extremum {}",
            x[0],
            x[x.len() - 1],
            x[im]
        ))),
    }
}
