//! One line per acceptance criterion (and sub-check) at the stated tolerances.
//! Exits nonzero when any line fails.

use fanosense::analytic;
use fanosense::constants::lifetime_ps;
use fanosense::lindblad::{
    coherent_state, convergence_check, correlations_tau, propagate, CMatrix, QuantumSystem,
    ScatteringOperator, SystemParams,
};
use fanosense::materials::{coupling_rate, mnp_dipole_moment, radiative_rate, Environment, RadiativeWavenumber};
use fanosense::output::Table;
use fanosense::photodetection::{count_stats, noise_m, second_factorial_moment, Detector};
use fanosense::sensing::{evaluate, fano_features, sense, Engine, PointSensing, SenseOptions};
use fanosense::ModelConfig;
use num_complex::Complex64;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

#[derive(Default)]
struct Tally {
    pass: usize,
    fail: usize,
}

impl Tally {
    fn line(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
        }
        println!("{} {id} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }

    /// |x − target| ≤ tol.
    fn within(&mut self, id: &str, name: &str, x: f64, target: f64, tol: f64) {
        let ok = (x - target).abs() <= tol;
        self.line(id, name, ok, format!("{x:.6} (target {target} ± {tol})"));
    }

    /// |x/target − 1| ≤ frac.
    fn within_rel(&mut self, id: &str, name: &str, x: f64, target: f64, frac: f64) {
        let dev = (x / target - 1.0).abs();
        let ok = dev <= frac;
        self.line(id, name, ok, format!("{x:.6e} (target {target:e} ± {:.0}%, off by {:.1}%)", frac * 100.0, dev * 100.0));
    }

    fn below(&mut self, id: &str, name: &str, x: f64, tol: f64) {
        self.line(id, name, x.is_finite() && x < tol, format!("{x:.3e} (< {tol:e})"));
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn system(cfg: &ModelConfig, lambda: f64) -> QuantumSystem {
    let n = cfg.environment.n;
    let p = cfg.plasmon(n).unwrap();
    let d = cfg.drive_at(lambda, n, &p).unwrap();
    QuantumSystem::new(SystemParams::from_drive(&p, &d), cfg.solver.fock_dim, cfg.solver.scattering).unwrap()
}

fn lindblad_peak(cfg: &ModelConfig, around: f64) -> (f64, f64) {
    let n = cfg.environment.n;
    (0..=400)
        .map(|k| around - 0.02 + k as f64 * 1e-4)
        .map(|l| (l, evaluate(cfg, l, n, Engine::Lindblad).unwrap().flux))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

fn derived(t: &mut Tally, cfg: &ModelConfig) {
    let p = cfg.plasmon(cfg.environment.n).unwrap();
    t.within("C1", "lambda_pl [nm]", p.lambda_pl, 535.5, 1.0);
    t.within("C1", "g [meV]", p.g, 4.8, 0.3);
    t.within("C1", "gamma_pl [meV]", p.gamma_pl, 72.0, 2.0);
    t.within("C1", "1/gamma_r [ps]", lifetime_ps(p.gamma_r), 4.29, 0.2);
    t.within("C1", "1/gamma_pl [fs]", lifetime_ps(p.gamma_pl) * 1e3, 5.75, 0.2);
    t.within("C1", "chi/mu", p.chi / cfg.emitter.mu, 64.0, 3.0);
}

fn spectrum_structure(t: &mut Tally, cfg: &ModelConfig) -> (f64, f64) {
    let n = cfg.environment.n;
    let lspr = cfg.plasmon(n).unwrap().lambda_pl;
    let f = fano_features(cfg, n, Engine::Analytic, 0.3, 1e-4).unwrap();
    t.within("C2", "Fano dip [nm] (analytic)", f.dip, 576.9, 0.5);
    t.within("C2", "Fano peak [nm] (analytic)", f.peak, 577.038, 0.005);
    let (lpeak, lflux) = lindblad_peak(cfg, f.peak);
    t.within("C2", "Fano peak [nm] (lindblad)", lpeak, 577.038, 0.005);
    let a_lspr = evaluate(cfg, lspr, n, Engine::Analytic).unwrap().flux;
    let l_lspr = evaluate(cfg, lspr, n, Engine::Lindblad).unwrap().flux;
    t.within("C2", "flux(LSPR)/flux(peak) (analytic)", a_lspr / f.flux_peak, 1.0, 0.15);
    t.within("C2", "flux(LSPR)/flux(peak) (lindblad)", l_lspr / lflux, 1.0, 0.15);
    (lspr, f.dip)
}

fn correlations(t: &mut Tally, cfg: &ModelConfig, lspr: f64, dip: f64, peak: f64) {
    let n = cfg.environment.n;
    let p = cfg.plasmon(n).unwrap();
    let s = analytic::steady_state(&p, &cfg.drive_at(peak, n, &p).unwrap()).unwrap();
    t.within("C3", "analytic g2(0) at Fano peak", s.g2_0, 0.17, 0.03);
    t.line(
        "C3",
        "g4(0) < g3(0) < g2(0) < 1 at Fano peak",
        s.g4_0 < s.g3_0 && s.g3_0 < s.g2_0 && s.g2_0 < 1.0,
        format!("{:.4} < {:.4} < {:.4}", s.g4_0, s.g3_0, s.g2_0),
    );
    let dev = cfg
        .grids
        .plasmon_window
        .points()
        .iter()
        .map(|&l| (analytic::steady_state(&p, &cfg.drive_at(l, n, &p).unwrap()).unwrap().g2_0 - 1.0).abs())
        .fold(0.0, f64::max);
    t.below("C3", "max |g2(0) − 1| over plasmon window", dev, 1e-3);
    let horizon = 20.0 * lifetime_ps(p.gamma_r);
    for (label, lambda) in [("LSPR", lspr), ("Fano dip", dip), ("Fano peak", peak)] {
        let sys = system(cfg, lambda);
        let sol = sys.steady_state().unwrap();
        let g = correlations_tau(&sys.liouvillian, &sol.rho, &sys.scattering_operator(), &[2], &[0.0, 50.0, horizon, 1000.0])
            .unwrap()
            .remove(0);
        t.within("C3", &format!("lindblad g2(τ → ∞) at {label}, τ = 1000 ps"), g[3], 1.0, 0.02);
        t.within("C3", &format!("lindblad g2(τ) at {label}, τ = 20/γ_r = {horizon:.1} ps"), g[2], 1.0, 0.02);
        println!("INFO C3 lindblad g2 at {label}: τ = 0 → {:.4}, τ = 50 ps → {:.4}", g[0], g[1]);
    }
}

fn cross_engine(t: &mut Tally, cfg: &ModelConfig, lspr: f64, peak: f64) {
    let n = cfg.environment.n;
    let p = cfg.plasmon(n).unwrap();
    let (mut worst_n, mut worst_g, mut at_n, mut at_g) = (0.0f64, 0.0f64, 0.0, 0.0);
    for k in 0..=20 {
        let lambda = lspr + (peak - lspr) * k as f64 / 20.0;
        let a = analytic::steady_state(&p, &cfg.drive_at(lambda, n, &p).unwrap()).unwrap();
        let sys = system(cfg, lambda);
        let m = sys.moments(&sys.steady_state().unwrap()).unwrap();
        let (dn, dg) = (rel(m.n_photon, a.n_photon()), rel(m.g2_0, a.g2_0));
        if dn > worst_n {
            (worst_n, at_n) = (dn, lambda);
        }
        if dg > worst_g {
            (worst_g, at_g) = (dg, lambda);
        }
    }
    t.line("C4", "⟨a†a⟩ analytic vs lindblad, 21 points", worst_n < 0.01, format!("max rel diff {worst_n:.3e} at {at_n:.4} nm (< 1e-2)"));
    t.line("C4", "g2(0) analytic vs lindblad, 21 points", worst_g < 0.03, format!("max rel diff {worst_g:.3e} at {at_g:.4} nm (< 3e-2)"));
    for (label, lambda) in [("LSPR", lspr), ("Fano peak", peak)] {
        let sys = system(cfg, lambda);
        let rep = convergence_check(&sys.params, &[8, 10, 12], cfg.solver.scattering).unwrap();
        t.below("C4", &format!("Fock convergence N = 8→12 at {label}"), rep.max_delta, 1e-4);
    }
}

fn photocounts(t: &mut Tally, cfg: &ModelConfig, lspr: f64) {
    let r = evaluate(cfg, lspr, cfg.environment.n, Engine::Analytic).unwrap();
    t.within_rel("C5", "⟨m⟩ at LSPR", r.m_mean, 12.42e-5, 0.10);
    t.within_rel("C5", "σ_m at LSPR, 1 s", r.sigma_m, 1.93e-8, 0.10);
    let dm = noise_m(r.m_mean, 1.0).unwrap();
    t.line("C5", "Δm = √⟨m⟩ at g2(0) = 1", dm == r.m_mean.sqrt(), format!("{dm:e} vs {:e}", r.m_mean.sqrt()));
}

fn table_row(t: &mut Tally, p: &PointSensing, quoted: (f64, f64, Option<f64>, f64, Option<f64>), tol_nm: f64) {
    let (lambda, s_i, s_ii, dn_i, dn_ii) = quoted;
    let l = &p.label;
    t.within("C6", &format!("{l} λ [nm]"), p.lambda, lambda, tol_nm);
    t.within_rel("C6", &format!("{l} S_I"), p.s_i.value, s_i, 0.15);
    if let Some(s) = s_ii {
        t.within_rel("C6", &format!("{l} S_II"), p.s_ii.value, s, 0.15);
    }
    t.within_rel("C6", &format!("{l} Δn_I"), p.dn_i.unwrap_or(f64::NAN), dn_i, 0.20);
    if let Some(d) = dn_ii {
        t.within_rel("C6", &format!("{l} Δn_II"), p.dn_ii.unwrap_or(f64::NAN), d, 0.25);
    }
}

fn table2(t: &mut Tally, cfg: &ModelConfig) {
    let r = sense(cfg, &SenseOptions::default()).unwrap();
    let plasmon = [
        (530.770, 5.87e-4, None, 3.90e-5, None),
        (535.500, 3.93e-4, None, 6.90e-5, None),
        (540.270, 11.37e-4, None, 2.10e-5, None),
    ];
    let fano = [
        (577.031, 4.04e-4, Some(3.85), 4.60e-5, Some(1.3e-3)),
        (577.038, 4.15e-4, Some(1.05), 5.50e-5, Some(2.8e-3)),
        (577.045, 12.17e-4, Some(0.50), 2.10e-5, Some(7.6e-3)),
    ];
    for (p, q) in r.plasmon.iter().zip(plasmon) {
        table_row(t, p, q, 0.05);
    }
    for (p, q) in r.fano.iter().zip(fano) {
        table_row(t, p, q, 0.002);
    }
    let mid = r.enhancements.iter().find(|e| e.position == "M");
    t.within("C6", "E_SM", mid.map_or(f64::NAN, |e| e.e_s), 1.06, 0.1);
    t.within("C6", "E_ΔnM", mid.and_then(|e| e.e_dn).unwrap_or(f64::NAN), 1.25, 0.15);
    for f in &r.flags {
        println!("INFO C6 flag: {f}");
    }
    for p in r.plasmon.iter().chain(&r.fano) {
        t.below("C8", &format!("{} ⟨m⟩(n) deviation from linear fit / range", p.label), p.linearity_m.max_rel_deviation, 0.02);
        t.below("C8", &format!("{} g2(0)(n) deviation from linear fit / range", p.label), p.linearity_g2.max_rel_deviation, 0.02);
    }
}

fn properties(t: &mut Tally, cfg: &ModelConfig, lspr: f64) {
    let mut runner = TestRunner::deterministic();
    let strategy = (
        -200.0..200.0f64,
        -5.0..5.0f64,
        0.0..10.0f64,
        0.0..20.0f64,
        0.0..1.0f64,
        5.0..120.0f64,
        0.0..1e-2f64,
        4usize..=10,
    );
    let (mut tr, mut herm, mut neg, mut res) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let (dpl, dex, g, opl, oex, gpl, gex, n) = strategy.new_tree(&mut runner).unwrap().current();
        let p = SystemParams {
            delta_pl: dpl,
            delta_ex: dex,
            g,
            rabi_pl: opl,
            rabi_ex: oex,
            gamma_pl: gpl,
            gamma_ex: gex,
            gamma_r: gpl * 2e-3,
        };
        let sys = QuantumSystem::new(p, n, ScatteringOperator::Plasmon).unwrap();
        let sol = sys.steady_state().unwrap();
        tr = tr.max(sol.raw_trace_error).max((sol.rho.trace() - Complex64::new(1.0, 0.0)).norm());
        herm = herm.max(sol.raw_hermiticity_error).max(sol.rho.hermiticity_error());
        neg = neg.max(-sol.rho.min_eigenvalue());
        res = res.max(sol.residual);
    }
    t.below("C7", "CPTP fuzz (20 configs): max |Tr ρ − 1| before projection", tr, 1e-10);
    t.below("C7", "CPTP fuzz (20 configs): max |ρ − ρ†| before projection", herm, 1e-10);
    t.below("C7", "CPTP fuzz (20 configs): max −λ_min(ρ)", neg, 1e-8);
    t.below("C7", "CPTP fuzz (20 configs): max steady residual", res, 1e-10);

    let sys = system(cfg, lspr);
    let mut p = sys.params;
    p.g = 0.0;
    p.rabi_ex = 0.0;
    let bare = QuantumSystem::new(p, cfg.solver.fock_dim, ScatteringOperator::Plasmon).unwrap();
    let sol = bare.steady_state().unwrap();
    let alpha = Complex64::i() * p.rabi_pl / Complex64::new(p.gamma_pl / 2.0, p.delta_pl);
    let fid = sol.rho.fidelity_pure(&coherent_state(&bare.space, alpha));
    t.below("C7", "coherent-state oracle 1 − fidelity", 1.0 - fid, 1e-6);

    let env = Environment::new(1.333, 1.5, 2.45, 0.17e6).unwrap();
    let conv = RadiativeWavenumber::Spectroscopic;
    let gr = |r: f64| radiative_rate(2.09, 84.6, 1.333, 2316.0, r, conv);
    let chi = |r: f64| mnp_dipole_moment(2.09, 1.777, 84.6, r);
    let g = |r: f64, d: f64| coupling_rate(2.09, 72.0, 2.0, d, &env, 84.6, r, 1.0).unwrap();
    let det = Detector::default();
    let det2 = Detector { xi: 2.0 * det.xi.min(0.5), ..det };
    let xi_ratio = second_factorial_moment(1e-6, &det2) / second_factorial_moment(1e-6, &det);
    t.below("C7", "γ_r(2r)/γ_r(r) = 8", rel(gr(50.0) / gr(25.0), 8.0), 1e-12);
    t.below("C7", "χ(4r)/χ(r) = 8", rel(chi(100.0) / chi(25.0), 8.0), 1e-12);
    t.below("C7", "g(4r)/g(r) = 8 at fixed d", rel(g(100.0, 400.0) / g(25.0, 400.0), 8.0), 1e-12);
    t.below("C7", "g(2d)/g(d) = 1/8", rel(g(25.0, 60.0) / g(25.0, 30.0), 0.125), 1e-12);
    t.below("C7", "m2 ∝ ξ²", rel(xi_ratio, (det2.xi / det.xi).powi(2)), 1e-12);

    let l = &sys.liouvillian;
    let d = sys.space.dim();
    let x = CMatrix::from_fn(d, d, |i, j| Complex64::new(1.0 / (1.0 + (i + j) as f64), 0.1 * (i as f64 - j as f64)));
    let a = propagate(l, &x, 1.7).unwrap();
    let b = propagate(l, &propagate(l, &x, 0.9).unwrap(), 0.8).unwrap();
    let semi = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
    t.below("C7", "semigroup e^{L(t1+t2)} = e^{Lt2} e^{Lt1}", semi, 1e-8);

    let render = || {
        let n = cfg.environment.n;
        let mut tab = Table::new(&["lambda_nm", "flux", "g2_0"]);
        tab.stamp(cfg);
        for k in 0..=20 {
            let r = evaluate(cfg, 576.9 + 0.01 * k as f64, n, Engine::Lindblad).unwrap();
            tab.push(vec![r.lambda, r.flux, r.g2_0]);
        }
        let rep = serde_json::to_string(&sense(cfg, &SenseOptions::default()).unwrap()).unwrap();
        (tab.to_csv(), rep)
    };
    t.line("C7", "byte-identical reruns", render() == render(), "spectrum CSV and sense JSON".into());
    let xi_inv = {
        let s = count_stats(1e-5, 0.17, 0.03, 0.004, &det).unwrap();
        let h = count_stats(1e-5, 0.17, 0.03, 0.004, &Detector { xi: det.xi / 2.0, ..det }).unwrap();
        rel(s.m2 / s.m_mean.powi(2), h.m2 / h.m_mean.powi(2))
    };
    t.below("C7", "g2 from photocounts independent of ξ", xi_inv, 1e-12);
}

fn main() {
    let cfg = ModelConfig::default();
    let mut t = Tally::default();
    let started = std::time::Instant::now();
    derived(&mut t, &cfg);
    let (lspr, dip) = spectrum_structure(&mut t, &cfg);
    let peak = fano_features(&cfg, cfg.environment.n, Engine::Analytic, 0.3, 1e-4).unwrap().peak;
    correlations(&mut t, &cfg, lspr, dip, peak);
    cross_engine(&mut t, &cfg, lspr, peak);
    photocounts(&mut t, &cfg, lspr);
    table2(&mut t, &cfg);
    properties(&mut t, &cfg, lspr);
    println!(
        "acceptance: {} passed, {} failed ({:.1} s)",
        t.pass,
        t.fail,
        started.elapsed().as_secs_f64()
    );
    if t.fail > 0 {
        std::process::exit(1);
    }
}
