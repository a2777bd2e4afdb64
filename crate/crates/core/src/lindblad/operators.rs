//! Operators on the truncated Fock ⊗ two-level space.
//!
//! Basis index is `2·n + q` for photon number n and emitter level q (0 ground, 1 excited).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertSpace {
    /// Photon states 0..fock_dim−1.
    pub fock_dim: usize,
}

impl HilbertSpace {
    pub const QD_DIM: usize = 2;

    pub fn new(fock_dim: usize) -> Result<Self> {
        if fock_dim < 2 {
            return Err(Error::Domain(format!("fock_dim = {fock_dim} must be ≥ 2")));
        }
        Ok(Self { fock_dim })
    }

    pub fn dim(&self) -> usize {
        self.fock_dim * Self::QD_DIM
    }

    pub fn index(&self, photons: usize, excited: bool) -> usize {
        photons * Self::QD_DIM + excited as usize
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim())
    }

    fn fock_a(&self) -> CMatrix {
        let n = self.fock_dim;
        CMatrix::from_fn(n, n, |i, j| if j == i + 1 { Complex64::new((j as f64).sqrt(), 0.0) } else { ZERO })
    }

    fn qd_sigma() -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| if i == 0 && j == 1 { ONE } else { ZERO })
    }

    /// Plasmon annihilation â ⊗ 1.
    pub fn a(&self) -> CMatrix {
        self.fock_a().kronecker(&CMatrix::identity(2, 2))
    }

    pub fn a_dag(&self) -> CMatrix {
        self.a().adjoint()
    }

    /// Emitter lowering 1 ⊗ σ̂.
    pub fn sigma(&self) -> CMatrix {
        CMatrix::identity(self.fock_dim, self.fock_dim).kronecker(&Self::qd_sigma())
    }

    pub fn sigma_dag(&self) -> CMatrix {
        self.sigma().adjoint()
    }

    pub fn sigma_z(&self) -> CMatrix {
        let s = self.sigma();
        let sd = self.sigma_dag();
        &sd * &s - &s * &sd
    }

    /// â†â.
    pub fn number(&self) -> CMatrix {
        self.a_dag() * self.a()
    }

    /// Projector on the highest retained photon number.
    pub fn top_fock_projector(&self) -> CMatrix {
        let top = self.fock_dim - 1;
        CMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            if i == j && i / Self::QD_DIM == top { ONE } else { ZERO }
        })
    }
}

/// Density matrix with validity diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(pub CMatrix);

impl DensityMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// max |ρ − ρ†|.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.0 - self.0.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// ⟨ψ|ρ|ψ⟩ for a normalized state vector.
    pub fn fidelity_pure(&self, psi: &[Complex64]) -> f64 {
        let n = self.dim();
        let mut acc = ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += psi[i].conj() * self.0[(i, j)] * psi[j];
            }
        }
        acc.re
    }
}

pub fn expectation(op: &CMatrix, rho: &DensityMatrix) -> Result<Complex64> {
    if op.nrows() != rho.dim() || op.ncols() != rho.dim() {
        return Err(Error::Dimension { expected: rho.dim(), got: op.nrows() });
    }
    Ok((op * &rho.0).trace())
}

/// Truncated coherent state |α⟩ ⊗ |g⟩, renormalized on the retained space.
pub fn coherent_state(space: &HilbertSpace, alpha: Complex64) -> Vec<Complex64> {
    let mut psi = vec![ZERO; space.dim()];
    let mut coef = ONE;
    for n in 0..space.fock_dim {
        if n > 0 {
            coef = coef * alpha / (n as f64).sqrt();
        }
        psi[space.index(n, false)] = coef;
    }
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|z| *z /= norm);
    psi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn canonical_commutator_below_top_level() {
        let s = HilbertSpace::new(6).unwrap();
        let a = s.a();
        let c = &a * s.a_dag() - s.a_dag() * &a;
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let expect = if i == j && i / 2 < s.fock_dim - 1 { 1.0 } else if i == j { c[(i, j)].re } else { 0.0 };
                assert!((c[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn two_level_algebra() {
        let s = HilbertSpace::new(3).unwrap();
        let sig = s.sigma();
        assert!(norm(&(&sig * &sig)) == 0.0);
        assert!(norm(&(&sig * s.sigma_dag() * &sig - &sig)) < 1e-15);
        // σ and a act on different factors
        assert!(norm(&(&sig * s.a() - s.a() * &sig)) < 1e-15);
    }

    #[test]
    fn number_operator_on_fock_states() {
        let s = HilbertSpace::new(5).unwrap();
        for k in 0..5 {
            let mut rho = CMatrix::zeros(s.dim(), s.dim());
            let i = s.index(k, false);
            rho[(i, i)] = ONE;
            let rho = DensityMatrix(rho);
            let n = expectation(&s.number(), &rho).unwrap();
            assert!((n.re - k as f64).abs() < 1e-14 && n.im == 0.0);
            assert_eq!(expectation(&s.identity(), &rho).unwrap(), ONE);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let s = HilbertSpace::new(3).unwrap();
        let rho = DensityMatrix(CMatrix::identity(4, 4));
        assert!(expectation(&s.a(), &rho).is_err());
        assert!(HilbertSpace::new(1).is_err());
    }

    #[test]
    fn coherent_state_is_normalized() {
        let s = HilbertSpace::new(10).unwrap();
        let psi = coherent_state(&s, Complex64::new(0.3, -0.2));
        let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-14);
    }
}
