//! Fock truncation study at the LSPR for the default drive and a 100× stronger one.

use fanosense::lindblad::{convergence_check, SystemParams};
use fanosense::ModelConfig;

fn main() -> fanosense::Result<()> {
    for scale in [1.0, 100.0] {
        let mut cfg = ModelConfig::default();
        cfg.drive.i0 *= scale;
        let n = cfg.environment.n;
        let p = cfg.plasmon(n)?;
        let d = cfg.drive_at(p.lambda_pl, n, &p)?;
        let rep = convergence_check(&SystemParams::from_drive(&p, &d), &[2, 3, 5, 8, 10, 12], cfg.solver.scattering)?;
        println!("I0 = {} W/cm²", cfg.drive.i0);
        for s in &rep.steps {
            println!(
                "  N = {:2}  ⟨a†a⟩ = {:.6e}  g2 = {:.8}  top = {:.1e}  Δ = {:.1e}",
                s.fock_dim,
                s.n_photon,
                s.g2_0,
                s.top_fock_population,
                s.d_n_photon.unwrap_or(0.0).max(s.d_g2_0.unwrap_or(0.0))
            );
        }
    }
    Ok(())
}
