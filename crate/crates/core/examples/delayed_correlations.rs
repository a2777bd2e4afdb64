//! g⁽²⁾(τ), g⁽³⁾(τ), g⁽⁴⁾(τ) at the Fano peak by quantum regression.

use fanosense::lindblad::{correlations_tau, QuantumSystem, SystemParams};
use fanosense::sensing::{fano_features, Engine};
use fanosense::ModelConfig;

fn main() -> fanosense::Result<()> {
    let cfg = ModelConfig::default();
    let n = cfg.environment.n;
    let peak = fano_features(&cfg, n, Engine::Analytic, 0.3, 1e-4)?.peak;
    let p = cfg.plasmon(n)?;
    let d = cfg.drive_at(peak, n, &p)?;
    let sys = QuantumSystem::new(SystemParams::from_drive(&p, &d), cfg.solver.fock_dim, cfg.solver.scattering)?;
    let sol = sys.steady_state()?;
    let taus: Vec<f64> = (0..=50).map(|k| k as f64).collect();
    let g = correlations_tau(&sys.liouvillian, &sol.rho, &sys.scattering_operator(), &[2, 3, 4], &taus)?;
    println!("λ = {peak:.4} nm, N = {}, top Fock population {:.1e}", cfg.solver.fock_dim, sol.top_fock_population);
    println!(" τ [ps]   g2        g3        g4");
    for (k, tau) in taus.iter().enumerate().step_by(5) {
        println!("{tau:6.1}   {:.5}   {:.5}   {:.5}", g[0][k], g[1][k], g[2][k]);
    }
    Ok(())
}
