//! Photocount mean and noise for intensity and g⁽²⁾(0) interrogation.

use fanosense::photodetection::{count_stats, Detector};
use fanosense::sensing::{evaluate, fano_features, Engine};
use fanosense::ModelConfig;

fn main() -> fanosense::Result<()> {
    let cfg = ModelConfig::default();
    let n = cfg.environment.n;
    let lspr = cfg.plasmon(n)?.lambda_pl;
    let peak = fano_features(&cfg, n, Engine::Analytic, 0.3, 1e-4)?.peak;
    for (name, lambda) in [("LSPR", lspr), ("Fano peak", peak)] {
        let r = evaluate(&cfg, lambda, n, Engine::Analytic)?;
        println!("{name} ({lambda:.4} nm)");
        println!("  ⟨m⟩ = {:.4e}, Δm = {:.4e}, √⟨m⟩ = {:.4e}", r.m_mean, r.delta_m, r.m_mean.sqrt());
        println!("  σ_m = {:.4e}, σ_g2 = {:.4e} over {} s", r.sigma_m, r.sigma_g2, cfg.detector.duration);
        // g2 does not depend on the detector efficiency
        let half = Detector { xi: cfg.detector.xi / 2.0, ..cfg.detector };
        let st = count_stats(r.flux, r.g2_0, r.g3_0, r.g4_0, &half)?;
        println!("  ξ/2: ⟨m⟩ = {:.4e}, ⟨m(m−1)⟩/⟨m⟩² = {:.6}", st.m_mean, st.m2 / (st.m_mean * st.m_mean));
    }
    Ok(())
}
