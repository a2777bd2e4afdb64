//! Scattered flux and g⁽²⁾(0) across the exciton line, with both engines at a
//! few points.

use fanosense::constants::mev_to_wavelength;
use fanosense::sensing::{evaluate, fano_features, Engine};
use fanosense::ModelConfig;

fn main() -> fanosense::Result<()> {
    let cfg = ModelConfig::default();
    let n = cfg.environment.n;
    let lspr = cfg.plasmon(n)?.lambda_pl;
    let f = fano_features(&cfg, n, Engine::Analytic, 0.3, 1e-4)?;
    let at_lspr = evaluate(&cfg, lspr, n, Engine::Analytic)?;
    println!("exciton line  {:.4} nm", mev_to_wavelength(cfg.emitter.omega_ex));
    println!("Fano dip      {:.4} nm", f.dip);
    println!("Fano peak     {:.4} nm", f.peak);
    println!("flux(LSPR)/flux(peak) = {:.3}", at_lspr.flux / f.flux_peak);

    println!("\n λ [nm]      flux_a [1/ps]   g2_a       flux_L [1/ps]   g2_L");
    for lambda in [f.dip - 0.05, f.dip, (f.dip + f.peak) / 2.0, f.peak, f.peak + 0.05] {
        let a = evaluate(&cfg, lambda, n, Engine::Analytic)?;
        let l = evaluate(&cfg, lambda, n, Engine::Lindblad)?;
        println!("{lambda:.4}   {:.4e}   {:9.4}   {:.4e}   {:9.4}", a.flux, a.g2_0, l.flux, l.g2_0);
    }
    Ok(())
}
