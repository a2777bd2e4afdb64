//! Steady state, propagation and delayed correlations of a [`QuantumSystem`].

use std::collections::HashMap;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::expm::expm;
use super::liouvillian::{build_hamiltonian, build_liouvillian, Liouvillian, SystemParams};
use super::operators::{expectation, CMatrix, DensityMatrix, HilbertSpace};
use crate::constants::HBAR_MEV_PS;
use crate::error::{Error, Result};

/// Which field the detector sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScatteringOperator {
    /// b̂ = √γ_r â.
    #[default]
    Plasmon,
    /// b̂ = √γ_r â + √γ_ex σ̂.
    PlasmonAndEmitter,
}

/// Immutable system: space, Hamiltonian and generator.
#[derive(Debug, Clone)]
pub struct QuantumSystem {
    pub space: HilbertSpace,
    pub params: SystemParams,
    pub hamiltonian: CMatrix,
    pub liouvillian: Liouvillian,
    pub scattering: ScatteringOperator,
}

/// Steady state with solver diagnostics.
#[derive(Debug, Clone)]
pub struct SteadySolution {
    pub rho: DensityMatrix,
    /// max |L vec(ρ)| [1/ps].
    pub residual: f64,
    pub top_fock_population: f64,
    /// |Tr ρ − 1| of the linear solve before projection.
    pub raw_trace_error: f64,
    /// max |ρ − ρ†| of the linear solve before projection.
    pub raw_hermiticity_error: f64,
}

/// Numerically obtained zero-delay observables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericMoments {
    pub n_photon: f64,
    pub population: f64,
    /// ⟨b†b⟩ [1/ps].
    pub flux: f64,
    pub g2_0: f64,
    pub g3_0: f64,
    pub g4_0: f64,
    pub top_fock_population: f64,
    pub residual: f64,
}

impl QuantumSystem {
    pub fn new(params: SystemParams, fock_dim: usize, scattering: ScatteringOperator) -> Result<Self> {
        if params.gamma_pl < 0.0 || params.gamma_ex < 0.0 {
            return Err(Error::Domain("decay rates must be ≥ 0".into()));
        }
        let space = HilbertSpace::new(fock_dim)?;
        let hamiltonian = build_hamiltonian(&params, &space);
        let liouvillian = build_liouvillian(&hamiltonian, params.gamma_pl, params.gamma_ex, &space);
        Ok(Self { space, params, hamiltonian, liouvillian, scattering })
    }

    /// b̂ in √(1/ps).
    pub fn scattering_operator(&self) -> CMatrix {
        let gr = (self.params.gamma_r / HBAR_MEV_PS).sqrt();
        let b = self.space.a() * Complex64::new(gr, 0.0);
        match self.scattering {
            ScatteringOperator::Plasmon => b,
            ScatteringOperator::PlasmonAndEmitter => {
                let ge = (self.params.gamma_ex / HBAR_MEV_PS).sqrt();
                b + self.space.sigma() * Complex64::new(ge, 0.0)
            }
        }
    }

    pub fn steady_state(&self) -> Result<SteadySolution> {
        steady_state(&self.liouvillian, &self.space)
    }

    /// Static moments from the steady state.
    pub fn moments(&self, sol: &SteadySolution) -> Result<NumericMoments> {
        let rho = &sol.rho;
        let a = self.space.a();
        let ad = self.space.a_dag();
        let b = self.scattering_operator();
        let bd = b.adjoint();
        let n_photon = expectation(&(&ad * &a), rho)?.re;
        let population = expectation(&(self.space.sigma_dag() * self.space.sigma()), rho)?.re;
        let mut bk = b.clone();
        let mut bdk = bd.clone();
        let flux = expectation(&(&bdk * &bk), rho)?.re;
        if !(flux > 1e-300) {
            return Err(Error::DegenerateFlux(flux));
        }
        let mut g = [0.0; 3];
        for (k, slot) in g.iter_mut().enumerate() {
            bk = &bk * &b;
            bdk = &bd * &bdk;
            *slot = expectation(&(&bdk * &bk), rho)?.re / flux.powi(k as i32 + 2);
        }
        Ok(NumericMoments {
            n_photon,
            population,
            flux,
            g2_0: g[0],
            g3_0: g[1],
            g4_0: g[2],
            top_fock_population: sol.top_fock_population,
            residual: sol.residual,
        })
    }

    /// g⁽ⁿ⁾(τ) on `taus` [ps] by quantum regression.
    pub fn correlation_tau(&self, sol: &SteadySolution, order: usize, taus: &[f64]) -> Result<Vec<f64>> {
        correlation_tau(&self.liouvillian, &sol.rho, &self.scattering_operator(), order, taus)
    }
}

fn max_abs(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Bordered solve: the first row of L is replaced by the trace functional.
pub fn steady_state(l: &Liouvillian, space: &HilbertSpace) -> Result<SteadySolution> {
    let d = l.dim;
    let n = d * d;
    let mut m = l.matrix.clone();
    let trace_idx = l.trace_functional();
    for c in 0..n {
        m[(0, c)] = Complex64::new(0.0, 0.0);
    }
    for &c in &trace_idx {
        m[(0, c)] = Complex64::new(1.0, 0.0);
    }
    let mut rhs = DVector::zeros(n);
    rhs[0] = Complex64::new(1.0, 0.0);
    let lu = m.clone().lu();
    let mut x = lu
        .solve(&rhs)
        .ok_or_else(|| Error::DegenerateSteadyState("bordered generator is singular".into()))?;
    // two rounds of iterative refinement
    for _ in 0..2 {
        let r = &rhs - &m * &x;
        if let Some(dx) = lu.solve(&r) {
            x += dx;
        }
    }
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::DegenerateSteadyState("non-finite solution".into()));
    }
    let raw = CMatrix::from_column_slice(d, d, x.as_slice());
    let raw_trace_error = (raw.trace() - Complex64::new(1.0, 0.0)).norm();
    let raw_hermiticity_error = DensityMatrix(raw.clone()).hermiticity_error();
    let herm = (&raw + raw.adjoint()) * Complex64::new(0.5, 0.0);
    let tr = herm.trace().re;
    let rho = herm / Complex64::new(tr, 0.0);
    let residual = max_abs(&(&l.matrix * DVector::from_column_slice(rho.as_slice())));
    let top = expectation(&space.top_fock_projector(), &DensityMatrix(rho.clone()))?.re;
    Ok(SteadySolution {
        rho: DensityMatrix(rho),
        residual,
        top_fock_population: top,
        raw_trace_error,
        raw_hermiticity_error,
    })
}

/// exp(L τ) vec(X), τ in ps.
pub fn propagate(l: &Liouvillian, x: &CMatrix, tau: f64) -> Result<CMatrix> {
    if !(tau >= 0.0) {
        return Err(Error::Domain(format!("tau = {tau} must be ≥ 0")));
    }
    if tau == 0.0 {
        return Ok(x.clone());
    }
    let map = expm(&(&l.matrix * Complex64::new(tau, 0.0)))?;
    Ok(apply_map(&map, x, l.dim))
}

fn apply_map(map: &CMatrix, x: &CMatrix, d: usize) -> CMatrix {
    let v = map * DVector::from_column_slice(x.as_slice());
    CMatrix::from_column_slice(d, d, v.as_slice())
}

/// Propagator that caches exp(L·Δτ) per distinct step.
pub struct Propagator<'a> {
    l: &'a Liouvillian,
    cache: HashMap<u64, CMatrix>,
}

impl<'a> Propagator<'a> {
    pub fn new(l: &'a Liouvillian) -> Self {
        Self { l, cache: HashMap::new() }
    }

    pub fn step(&mut self, x: &DVector<Complex64>, dt: f64) -> Result<DVector<Complex64>> {
        if dt == 0.0 {
            return Ok(x.clone());
        }
        if !(dt > 0.0) {
            return Err(Error::Domain(format!("negative step {dt}")));
        }
        let key = dt.to_bits();
        if !self.cache.contains_key(&key) {
            let map = expm(&(&self.l.matrix * Complex64::new(dt, 0.0)))?;
            self.cache.insert(key, map);
        }
        Ok(&self.cache[&key] * x)
    }

    /// Values of vec(X) at increasing times `taus`, starting from τ = 0.
    pub fn trajectory(&mut self, x0: &CMatrix, taus: &[f64]) -> Result<Vec<CMatrix>> {
        let d = self.l.dim;
        let mut out = Vec::with_capacity(taus.len());
        let mut v = DVector::from_column_slice(x0.as_slice());
        let mut t = 0.0;
        // snap near-uniform spacings so one cached map serves a uniform grid
        let base = if taus.len() > 1 { taus[1] - taus[0] } else { 0.0 };
        for &tau in taus {
            if tau < t {
                return Err(Error::Domain("delay grid must be nondecreasing and ≥ 0".into()));
            }
            let mut dt = tau - t;
            if base > 0.0 && (dt - base).abs() < 1e-9 * base {
                dt = base;
            }
            v = self.step(&v, dt)?;
            t = tau;
            out.push(CMatrix::from_column_slice(d, d, v.as_slice()));
        }
        Ok(out)
    }

    pub fn cached_steps(&self) -> usize {
        self.cache.len()
    }
}

/// G⁽ⁿ⁾(τ) = Tr[b†ⁿ⁻¹bⁿ⁻¹ e^{Lτ}(b ρ b†)], normalized by ⟨b†b⟩ⁿ.
pub fn correlation_tau(
    l: &Liouvillian,
    rho: &DensityMatrix,
    b: &CMatrix,
    order: usize,
    taus: &[f64],
) -> Result<Vec<f64>> {
    Ok(correlations_tau(l, rho, b, &[order], taus)?.remove(0))
}

/// Several orders sharing one propagated trajectory; one row per order.
pub fn correlations_tau(
    l: &Liouvillian,
    rho: &DensityMatrix,
    b: &CMatrix,
    orders: &[usize],
    taus: &[f64],
) -> Result<Vec<Vec<f64>>> {
    if let Some(o) = orders.iter().find(|o| !(2..=4).contains(*o)) {
        return Err(Error::Domain(format!("order {o} not in 2..=4")));
    }
    let bd = b.adjoint();
    let flux = expectation(&(&bd * b), rho)?.re;
    if !(flux > 1e-300) {
        return Err(Error::DegenerateFlux(flux));
    }
    let observables: Vec<CMatrix> = orders
        .iter()
        .map(|&n| {
            let mut bk = CMatrix::identity(b.nrows(), b.ncols());
            let mut bdk = bk.clone();
            for _ in 0..n - 1 {
                bk = &bk * b;
                bdk = &bd * &bdk;
            }
            bdk * bk
        })
        .collect();
    let x0 = b * rho.matrix() * &bd;
    let traj = Propagator::new(l).trajectory(&x0, taus)?;
    Ok(orders
        .iter()
        .zip(&observables)
        .map(|(&n, obs)| {
            let norm = flux.powi(n as i32);
            traj.iter().map(|x| (obs * x).trace().re / norm).collect()
        })
        .collect())
}
