//! Special points, sensitivities, resolutions and enhancement factors.

use fanosense::sensing::{sense, Anchor, SenseOptions};
use fanosense::ModelConfig;

fn main() -> fanosense::Result<()> {
    let cfg = ModelConfig::default();
    for anchor in [Anchor::Start, Anchor::Midpoint] {
        let r = sense(&cfg, &SenseOptions { anchor, ..SenseOptions::default() })?;
        println!("anchor {anchor:?} (n = {:.5})", r.n_anchor);
        println!("      λ [nm]      S_I        S_II       Δn_I       Δn_II");
        for p in r.plasmon.iter().chain(&r.fano) {
            println!(
                "{:>3}  {:.4}   {:.3e}  {:.3e}  {:.3e}  {:.3e}",
                p.label,
                p.lambda,
                p.s_i.value,
                p.s_ii.value,
                p.dn_i.unwrap_or(f64::NAN),
                p.dn_ii.unwrap_or(f64::NAN)
            );
        }
        for e in &r.enhancements {
            println!("  E_S{} = {:.3}, E_Δn{} = {:.3}", e.position, e.e_s, e.position, e.e_dn.unwrap_or(f64::NAN));
        }
        for f in &r.flags {
            println!("  flag: {f}");
        }
        println!();
    }
    Ok(())
}
