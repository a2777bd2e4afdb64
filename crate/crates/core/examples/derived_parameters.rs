//! Plasmon resonance, rates and coupling for the default nanostructure, and how
//! they move with the background index.

use fanosense::constants::lifetime_ps;
use fanosense::ModelConfig;

fn main() -> fanosense::Result<()> {
    let cfg = ModelConfig::default();
    let p = cfg.plasmon(cfg.environment.n)?;
    println!("λ_pl      {:.3} nm  (ħω_pl = {:.2} meV)", p.lambda_pl, p.omega_pl);
    println!("L, f      {:.4}, {:.4}", p.l_factor, p.f);
    println!("γ_nr      {:.3} meV", p.gamma_nr);
    println!("γ_r       {:.4} meV  → {:.3} ps", p.gamma_r, lifetime_ps(p.gamma_r));
    println!("γ_pl      {:.3} meV  → {:.3} fs", p.gamma_pl, lifetime_ps(p.gamma_pl) * 1e3);
    println!("χ/μ       {:.2}", p.chi / cfg.emitter.mu);
    println!("g         {:.3} meV", p.g);

    println!("\n   n        λ_pl [nm]   g [meV]");
    for k in 0..5 {
        let n = 1.3330 + 0.0001 * k as f64;
        let p = cfg.plasmon(n)?;
        println!("{n:.4}   {:.5}   {:.5}", p.lambda_pl, p.g);
    }
    Ok(())
}
