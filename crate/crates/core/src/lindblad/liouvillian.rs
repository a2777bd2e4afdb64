//! Rotating-frame Hamiltonian and the Lindblad generator acting on vec(ρ).
//!
//! vec stacks columns, so vec(AXB) = (Bᵀ ⊗ A) vec(X). The generator is in 1/ps.

use num_complex::Complex64;
use serde::Serialize;

use super::operators::{CMatrix, HilbertSpace};
use crate::constants::HBAR_MEV_PS;
use crate::drive::DriveParams;
use crate::materials::DerivedPlasmon;

/// Energies and rates entering the master equation [meV].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    pub delta_pl: f64,
    pub delta_ex: f64,
    pub g: f64,
    pub rabi_pl: f64,
    pub rabi_ex: f64,
    pub gamma_pl: f64,
    pub gamma_ex: f64,
    /// Radiative part of γ_pl, used by the scattering operator.
    pub gamma_r: f64,
}

impl SystemParams {
    pub fn from_drive(plasmon: &DerivedPlasmon, drive: &DriveParams) -> Self {
        Self {
            delta_pl: drive.delta_pl(plasmon),
            delta_ex: drive.delta_ex(),
            g: plasmon.g,
            rabi_pl: drive.rabi_pl,
            rabi_ex: drive.rabi_ex,
            gamma_pl: plasmon.gamma_pl,
            gamma_ex: drive.gamma_ex,
            gamma_r: plasmon.gamma_r,
        }
    }
}

/// H/ħ in meV.
pub fn build_hamiltonian(p: &SystemParams, space: &HilbertSpace) -> CMatrix {
    let a = space.a();
    let ad = space.a_dag();
    let s = space.sigma();
    let sd = space.sigma_dag();
    let r = |x: f64| Complex64::new(x, 0.0);
    &ad * &a * r(p.delta_pl) + &sd * &s * r(p.delta_ex)
        - (&s * &ad + &sd * &a) * r(p.g)
        - (&s + &sd) * r(p.rabi_ex)
        - (&a + &ad) * r(p.rabi_pl)
}

/// Superoperator on column-stacked density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    pub matrix: CMatrix,
    pub dim: usize,
}

impl Liouvillian {
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let v = nalgebra::DVector::from_column_slice(rho.as_slice());
        let out = &self.matrix * v;
        CMatrix::from_column_slice(self.dim, self.dim, out.as_slice())
    }

    /// Row vector t with t·vec(X) = Tr X.
    pub fn trace_functional(&self) -> Vec<usize> {
        (0..self.dim).map(|i| i + i * self.dim).collect()
    }

    /// max over columns of |Σ_diag rows| — zero for a trace-preserving generator.
    pub fn trace_leak(&self) -> f64 {
        let idx = self.trace_functional();
        (0..self.matrix.ncols())
            .map(|col| idx.iter().map(|&r| self.matrix[(r, col)]).sum::<Complex64>().norm())
            .fold(0.0, f64::max)
    }
}

/// Dissipator γ(c ρ c† − ½{c†c, ρ}) added in place, γ in 1/ps.
fn add_dissipator(l: &mut CMatrix, c: &CMatrix, rate: f64) {
    if rate == 0.0 {
        return;
    }
    let d = c.nrows();
    let id = CMatrix::identity(d, d);
    let cdc = c.adjoint() * c;
    let k = Complex64::new(rate, 0.0);
    let h = Complex64::new(0.5 * rate, 0.0);
    *l += c.map(|z| z.conj()).kronecker(c) * k;
    *l -= id.kronecker(&cdc) * h;
    *l -= cdc.transpose().kronecker(&id) * h;
}

/// Generator for H (meV) with damping of â at γ_pl and of σ̂ at γ_ex (meV).
pub fn build_liouvillian(h: &CMatrix, gamma_pl: f64, gamma_ex: f64, space: &HilbertSpace) -> Liouvillian {
    let d = space.dim();
    let id = CMatrix::identity(d, d);
    let mi = Complex64::new(0.0, -1.0 / HBAR_MEV_PS);
    let mut l = (id.kronecker(h) - h.transpose().kronecker(&id)) * mi;
    add_dissipator(&mut l, &space.a(), gamma_pl / HBAR_MEV_PS);
    add_dissipator(&mut l, &space.sigma(), gamma_ex / HBAR_MEV_PS);
    Liouvillian { matrix: l, dim: d }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> SystemParams {
        SystemParams {
            delta_pl: 166.0,
            delta_ex: 0.02,
            g: 4.8,
            rabi_pl: 0.9,
            rabi_ex: 0.015,
            gamma_pl: 71.2,
            gamma_ex: 118e-6,
            gamma_r: 0.154,
        }
    }

    fn maxabs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn free_hamiltonian_is_diagonal() {
        let s = HilbertSpace::new(4).unwrap();
        let p = SystemParams { g: 0.0, rabi_pl: 0.0, rabi_ex: 0.0, ..params() };
        let h = build_hamiltonian(&p, &s);
        for n in 0..4 {
            for q in [false, true] {
                let i = s.index(n, q);
                let want = n as f64 * p.delta_pl + if q { p.delta_ex } else { 0.0 };
                assert!((h[(i, i)].re - want).abs() < 1e-12);
            }
        }
        assert!(maxabs(&(h.clone() - CMatrix::from_diagonal(&h.diagonal()))) == 0.0);
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let s = HilbertSpace::new(10).unwrap();
        let h = build_hamiltonian(&params(), &s);
        assert!(maxabs(&(&h - h.adjoint())) < 1e-12);
    }

    #[test]
    fn single_excitation_block_splitting() {
        let s = HilbertSpace::new(2).unwrap();
        let p = SystemParams { rabi_pl: 0.0, rabi_ex: 0.0, delta_pl: 3.0, delta_ex: 1.0, g: 0.7, ..params() };
        let h = build_hamiltonian(&p, &s);
        let i = [s.index(1, false), s.index(0, true)];
        let block = CMatrix::from_fn(2, 2, |r, c| h[(i[r], i[c])]);
        let mut ev: Vec<f64> = block.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mid = (p.delta_pl + p.delta_ex) / 2.0;
        let split = (((p.delta_pl - p.delta_ex) / 2.0).powi(2) + p.g * p.g).sqrt();
        assert!((ev[0] - (mid - split)).abs() < 1e-12);
        assert!((ev[1] - (mid + split)).abs() < 1e-12);
    }

    #[test]
    fn closed_system_generator() {
        let s = HilbertSpace::new(3).unwrap();
        let h = build_hamiltonian(&params(), &s);
        let l = build_liouvillian(&h, 0.0, 0.0, &s);
        let d = s.dim();
        let id = CMatrix::identity(d, d);
        let want = (id.kronecker(&h) - h.transpose().kronecker(&id)) * Complex64::new(0.0, -1.0 / HBAR_MEV_PS);
        assert!(maxabs(&(&l.matrix - &want)) < 1e-15);
        // anti-Hermitian generator
        assert!(maxabs(&(&l.matrix + l.matrix.adjoint())) < 1e-12);
    }

    #[test]
    fn action_matches_commutator_and_dissipators() {
        let s = HilbertSpace::new(3).unwrap();
        let p = params();
        let h = build_hamiltonian(&p, &s);
        let l = build_liouvillian(&h, p.gamma_pl, 0.3, &s);
        let d = s.dim();
        let rho = CMatrix::from_fn(d, d, |i, j| Complex64::new(((i + 2 * j) % 5) as f64, (i as f64 - j as f64) * 0.1));
        let got = l.apply(&rho);
        let i = Complex64::i();
        let mut want = (&rho * &h - &h * &rho) * (i / HBAR_MEV_PS);
        for (c, g) in [(s.a(), p.gamma_pl), (s.sigma(), 0.3)] {
            let cd = c.adjoint();
            let d_term = &rho * &cd * &c + &cd * &c * &rho - (&c * &rho * &cd) * Complex64::new(2.0, 0.0);
            want -= d_term * Complex64::new(g / 2.0 / HBAR_MEV_PS, 0.0);
        }
        assert!(maxabs(&(got - want)) < 1e-9);
    }

    #[test]
    fn generator_preserves_trace() {
        let s = HilbertSpace::new(5).unwrap();
        let p = params();
        let l = build_liouvillian(&build_hamiltonian(&p, &s), p.gamma_pl, p.gamma_ex, &s);
        assert!(l.trace_leak() < 1e-10);
    }
}
