//! Truncated-Fock Lindblad solver for the driven plasmon–emitter pair.

mod convergence;
mod expm;
mod liouvillian;
mod operators;
mod solver;

pub use convergence::{convergence_check, ConvergenceReport, ConvergenceStep, CONVERGENCE_TOL};
pub use expm::{expm, one_norm};
pub use liouvillian::{build_hamiltonian, build_liouvillian, Liouvillian, SystemParams};
pub use operators::{coherent_state, expectation, CMatrix, DensityMatrix, HilbertSpace};
pub use solver::{
    correlation_tau, correlations_tau, propagate, steady_state, NumericMoments, Propagator,
    QuantumSystem, ScatteringOperator, SteadySolution,
};
