use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fanosense::config::Grid;
use fanosense::constants::{lifetime_ps, mev_to_per_ps};
use fanosense::lindblad::{QuantumSystem, SystemParams};
use fanosense::output::{csv_text, fmt_float, svg_plot, Table};
use fanosense::sensing::{
    fano_features, sense, spectrum, with_jobs, Anchor, Engine, PointSensing, SenseOptions,
};
use fanosense::validation::validate;
use fanosense::{analytic, Error, ModelConfig};

#[derive(Parser)]
#[command(name = "fanosense", version, about = "Plasmon–exciton Fano refractive-index sensor model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// JSON configuration document (defaults are used for absent fields).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override a dotted config path, e.g. drive.I0=33.6 (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VAL")]
    sets: Vec<String>,
    /// Fock-space truncation for the Lindblad engine.
    #[arg(long, global = true, value_name = "N")]
    fock: Option<usize>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
    /// Output directory (default: $FANOSENSE_OUT, else ./out/<command>).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long, global = true)]
    plot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Derived plasmon and coupling parameters.
    Params,
    /// Scattered flux, photocounts and zero-delay correlations over a wavelength window.
    Spectrum {
        #[arg(long, value_enum, default_value = "analytic")]
        engine: EngineChoice,
        /// λmin:λmax:step [nm] (default: the configured plasmon window).
        #[arg(long, value_name = "λmin:λmax:step")]
        window: Option<String>,
    },
    /// Delayed correlations g⁽ⁿ⁾(τ) from the Lindblad engine.
    Correlations {
        /// Driving wavelength [nm], or one of lspr, dip, peak.
        #[arg(long, default_value = "peak")]
        lambda: String,
        /// Largest delay [ps].
        #[arg(long, value_name = "PS")]
        tau_max: Option<f64>,
        /// Comma-separated correlation orders.
        #[arg(long, default_value = "2,3,4", value_delimiter = ',')]
        orders: Vec<usize>,
    },
    /// Sensitivities, resolutions and enhancement factors at the special points.
    Sense {
        #[arg(long, value_enum, default_value = "analytic")]
        engine: SenseEngine,
        /// a:b:step refractive-index grid (default: the configured range).
        #[arg(long, value_name = "a:b:step")]
        n_range: Option<String>,
        #[arg(long, value_enum, default_value = "start")]
        anchor: AnchorChoice,
        #[arg(long, value_enum, default_value = "both")]
        region: Region,
    },
    /// Invariant and oracle checks; exits 3 when any check fails.
    Validate,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineChoice {
    Analytic,
    Lindblad,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseEngine {
    Analytic,
    Lindblad,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnchorChoice {
    Start,
    Midpoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Region {
    Plasmon,
    Fano,
    Both,
}

enum Failure {
    Config(String),
    Numerical(String),
    Validation(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_config() {
            Failure::Config(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numerical(format!("output: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(m)) => {
            eprintln!("config error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Validation(k)) => {
            eprintln!("{k} validation check(s) failed");
            ExitCode::from(3)
        }
    }
}

fn load_config(common: &Common, extra: &[String]) -> Result<ModelConfig, Failure> {
    let base = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            ModelConfig::from_json(&text)?
        }
        None => ModelConfig::default(),
    };
    let mut sets = common.sets.clone();
    if let Some(n) = common.fock {
        sets.push(format!("solver.fock_dim={n}"));
    }
    sets.extend_from_slice(extra);
    let cfg = base.with_overrides(&sets)?;
    cfg.validate()?;
    Ok(cfg)
}

fn out_dir(common: &Common, command: &str) -> PathBuf {
    common
        .out
        .clone()
        .or_else(|| std::env::var_os("FANOSENSE_OUT").map(PathBuf::from))
        .unwrap_or_else(|| Path::new("out").join(command))
}

fn run(cli: Cli) -> Outcome {
    let common = &cli.common;
    if common.jobs == Some(0) {
        return Err(Failure::Config("--jobs must be ≥ 1".into()));
    }
    match &cli.command {
        Command::Params => cmd_params(common),
        Command::Spectrum { engine, window } => cmd_spectrum(common, *engine, window.as_deref()),
        Command::Correlations { lambda, tau_max, orders } => {
            cmd_correlations(common, lambda, *tau_max, orders)
        }
        Command::Sense { engine, n_range, anchor, region } => {
            cmd_sense(common, *engine, n_range.as_deref(), *anchor, *region)
        }
        Command::Validate => cmd_validate(common),
    }
}

fn cmd_params(common: &Common) -> Outcome {
    let cfg = load_config(common, &[])?;
    let n = cfg.environment.n;
    let p = cfg.plasmon(n)?;
    let warnings = cfg.geometry()?.warnings(&cfg.environment_at(n)?);
    let rows: [(&str, f64); 16] = [
        ("lambda_pl_nm", p.lambda_pl),
        ("omega_pl_meV", p.omega_pl),
        ("L", p.l_factor),
        ("f", p.f),
        ("reflectance", p.reflectance),
        ("eta_meV", p.eta),
        ("gamma_nr_meV", p.gamma_nr),
        ("gamma_r_meV", p.gamma_r),
        ("gamma_pl_meV", p.gamma_pl),
        ("chi_D", p.chi),
        ("chi_over_mu", p.chi / cfg.emitter.mu),
        ("g_meV", p.g),
        ("gamma_r_lifetime_ps", lifetime_ps(p.gamma_r)),
        ("gamma_nr_lifetime_fs", lifetime_ps(p.gamma_nr) * 1e3),
        ("gamma_pl_lifetime_fs", lifetime_ps(p.gamma_pl) * 1e3),
        ("gamma_ex_lifetime_ns", lifetime_ps(cfg.gamma_ex()) * 1e-3),
    ];
    let mut meta = Table::default();
    meta.stamp(&cfg);
    meta.meta("n", fmt_float(n));
    for w in &warnings {
        meta.meta("warning", &w.0);
        eprintln!("warning: {}", w.0);
    }
    let mut lines = Vec::new();
    for (name, v) in rows {
        println!("{name:>22} = {}", fmt_float(v));
        lines.push(vec![name.to_string(), fmt_float(v)]);
    }
    let dir = out_dir(common, "params");
    std::fs::create_dir_all(&dir)?;
    let columns = ["quantity".to_string(), "value".to_string()];
    std::fs::write(dir.join("params.csv"), csv_text(&meta.metadata, &columns, &lines))?;
    let mut named = serde_json::Map::new();
    for (name, v) in rows {
        named.insert(name.into(), fanosense::output::json_float(v));
    }
    let doc = serde_json::json!({
        "config_hash": cfg.hash(),
        "n": n,
        "derived": named,
        "warnings": warnings.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
    });
    write_json(&dir.join("params.json"), &doc)
}

fn write_json(path: &Path, v: &serde_json::Value) -> Outcome {
    let text = serde_json::to_string_pretty(v).expect("json serializes");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn cmd_spectrum(common: &Common, choice: EngineChoice, window: Option<&str>) -> Outcome {
    let cfg = load_config(common, &[])?;
    let grid = match window {
        Some(w) => Grid::parse(w).and_then(|g| g.validate("--window").map(|_| g))?,
        None => cfg.grids.plasmon_window,
    };
    let lambdas = grid.points();
    let engines: Vec<(Engine, &str)> = match choice {
        EngineChoice::Analytic => vec![(Engine::Analytic, "")],
        EngineChoice::Lindblad => vec![(Engine::Lindblad, "")],
        EngineChoice::Both => vec![(Engine::Analytic, "_analytic"), (Engine::Lindblad, "_lindblad")],
    };
    let n = cfg.environment.n;
    let fields = ["flux", "m_mean", "g2_0", "g3_0", "g4_0", "flux_norm"];
    let mut columns = vec!["lambda_nm".to_string()];
    for (_, suffix) in &engines {
        columns.extend(fields.iter().map(|f| format!("{f}{suffix}")));
    }
    let mut t = Table { columns, ..Table::default() };
    t.stamp(&cfg);
    t.meta("n", fmt_float(n));
    t.meta("window", format!("{}:{}:{}", fmt_float(grid.start), fmt_float(grid.stop), fmt_float(grid.step)));
    t.meta("flux_unit", "1/ps");
    let mut rows: Vec<Vec<f64>> = lambdas.iter().map(|&l| vec![l]).collect();
    let mut failures = 0;
    for (engine, suffix) in &engines {
        let results = with_jobs(common.jobs, || spectrum(&cfg, &lambdas, n, *engine));
        let max_flux = results.iter().flatten().map(|r| r.flux).fold(0.0, f64::max);
        let mut top: f64 = 0.0;
        for (row, r) in rows.iter_mut().zip(&results) {
            match r {
                Ok(p) => {
                    top = top.max(p.top_fock.unwrap_or(0.0));
                    row.extend([p.flux, p.m_mean, p.g2_0, p.g3_0, p.g4_0, p.flux / max_flux]);
                }
                Err(e) => {
                    failures += 1;
                    t.meta(&format!("row_error{suffix}"), e);
                    row.extend([f64::NAN; 6]);
                }
            }
        }
        if *engine == Engine::Lindblad {
            t.meta("top_fock_population_max", fmt_float(top));
        }
    }
    for r in rows {
        t.push(r);
    }
    let dir = out_dir(common, "spectrum");
    t.write(&dir, "spectrum")?;
    if common.plot {
        let x = t.column("lambda_nm").unwrap_or_default();
        let series: Vec<(&str, Vec<f64>)> = engines
            .iter()
            .map(|(e, s)| (engine_name(*e), t.column(&format!("flux_norm{s}")).unwrap_or_default()))
            .collect();
        std::fs::write(dir.join("spectrum_flux.svg"), svg_plot("normalized scattered flux", &x, &series))?;
        let series: Vec<(&str, Vec<f64>)> = engines
            .iter()
            .map(|(e, s)| (engine_name(*e), t.column(&format!("g2_0{s}")).unwrap_or_default()))
            .collect();
        std::fs::write(dir.join("spectrum_g2.svg"), svg_plot("g2(0)", &x, &series))?;
    }
    println!("{} rows written to {}", t.rows.len(), dir.display());
    if failures == t.rows.len() * engines.len() {
        return Err(Failure::Numerical("every row failed".into()));
    }
    if failures > 0 {
        eprintln!("{failures} row(s) failed; see row_error metadata");
    }
    Ok(())
}

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Analytic => "analytic",
        Engine::Lindblad => "lindblad",
    }
}

fn resolve_lambda(cfg: &ModelConfig, spec: &str) -> Result<f64, Failure> {
    let n = cfg.environment.n;
    match spec {
        "lspr" => Ok(cfg.plasmon(n)?.lambda_pl),
        "dip" | "peak" => {
            let f = fano_features(cfg, n, Engine::Analytic, 0.3, 1e-4)?;
            Ok(if spec == "dip" { f.dip } else { f.peak })
        }
        other => other
            .parse::<f64>()
            .ok()
            .filter(|l| *l > 0.0 && l.is_finite())
            .ok_or_else(|| Failure::Config(format!("--lambda: expected a wavelength or lspr|dip|peak, got `{other}`"))),
    }
}

fn cmd_correlations(common: &Common, lambda: &str, tau_max: Option<f64>, orders: &[usize]) -> Outcome {
    let extra: Vec<String> = tau_max.map(|t| format!("grids.tau_max={t}")).into_iter().collect();
    let cfg = load_config(common, &extra)?;
    if orders.is_empty() || orders.iter().any(|o| !(2..=4).contains(o)) {
        return Err(Failure::Config(format!("--orders: each order must be 2, 3 or 4, got {orders:?}")));
    }
    let lam = resolve_lambda(&cfg, lambda)?;
    let n = cfg.environment.n;
    let p = cfg.plasmon(n)?;
    let d = cfg.drive_at(lam, n, &p)?;
    let (tmax, step) = (cfg.grids.tau_max, cfg.grids.tau_step);
    let count = (tmax / step + 1e-9).floor() as usize;
    let taus: Vec<f64> = (0..=count).map(|k| k as f64 * step).collect();
    let sys = QuantumSystem::new(SystemParams::from_drive(&p, &d), cfg.solver.fock_dim, cfg.solver.scattering)?;
    let sol = sys.steady_state()?;
    let values = fanosense::lindblad::correlations_tau(&sys.liouvillian, &sol.rho, &sys.scattering_operator(), orders, &taus)
        .map_err(|e| Failure::from(e.at(lam, n)))?;
    let mut columns = vec!["tau_ps".to_string()];
    columns.extend(orders.iter().map(|o| format!("g{o}")));
    let mut t = Table { columns, ..Table::default() };
    t.stamp(&cfg);
    t.meta("lambda_nm", fmt_float(lam));
    t.meta("n", fmt_float(n));
    t.meta("top_fock_population", fmt_float(sol.top_fock_population));
    t.meta("steady_residual", fmt_float(sol.residual));
    t.meta("gamma_r_lifetime_ps", fmt_float(lifetime_ps(p.gamma_r)));
    if let Ok(a) = analytic::steady_state(&p, &d) {
        t.meta("analytic_g2_0", fmt_float(a.g2_0));
        t.meta("analytic_flux", fmt_float(mev_to_per_ps(p.gamma_r) * a.n_photon()));
    }
    for (k, tau) in taus.iter().enumerate() {
        let mut row = vec![*tau];
        row.extend(values.iter().map(|v| v[k]));
        t.push(row);
    }
    let dir = out_dir(common, "correlations");
    t.write(&dir, "correlations")?;
    if common.plot {
        let series: Vec<(String, Vec<f64>)> = orders.iter().zip(values).map(|(o, v)| (format!("g{o}(τ)"), v)).collect();
        let series: Vec<(&str, Vec<f64>)> = series.iter().map(|(s, v)| (s.as_str(), v.clone())).collect();
        std::fs::write(
            dir.join("correlations.svg"),
            svg_plot(&format!("delayed correlations at {} nm", fmt_float(lam)), &taus, &series),
        )?;
    }
    println!("λ = {} nm, {} delays written to {}", fmt_float(lam), taus.len(), dir.display());
    Ok(())
}

fn opt_float(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn sense_row(region: &str, p: &PointSensing) -> Vec<String> {
    vec![
        region.to_string(),
        p.label.clone(),
        fmt_float(p.lambda),
        fmt_float(p.m_mean),
        fmt_float(p.g2_0),
        fmt_float(p.s_i.value),
        fmt_float(p.s_ii.value),
        fmt_float(p.sigma_m),
        fmt_float(p.sigma_g2),
        opt_float(p.dn_i),
        opt_float(p.dn_ii),
        fmt_float(p.s_i_alt.value),
        fmt_float(p.s_ii_alt.value),
        fmt_float(p.linearity_m.max_rel_deviation),
        fmt_float(p.linearity_g2.max_rel_deviation),
    ]
}

fn cmd_sense(
    common: &Common,
    engine: SenseEngine,
    n_range: Option<&str>,
    anchor: AnchorChoice,
    region: Region,
) -> Outcome {
    let extra: Vec<String> = match n_range {
        Some(r) => {
            let g = Grid::parse(r)?;
            vec![format!("grids.n_range={}", serde_json::to_string(&g).expect("grid serializes"))]
        }
        None => Vec::new(),
    };
    let cfg = load_config(common, &extra)?;
    let opts = SenseOptions {
        engine: match engine {
            SenseEngine::Analytic => Engine::Analytic,
            SenseEngine::Lindblad => Engine::Lindblad,
        },
        anchor: match anchor {
            AnchorChoice::Start => Anchor::Start,
            AnchorChoice::Midpoint => Anchor::Midpoint,
        },
        plasmon: !matches!(region, Region::Fano),
        fano: !matches!(region, Region::Plasmon),
    };
    let report = with_jobs(common.jobs, || sense(&cfg, &opts))?;
    let mut meta = Table::default();
    meta.stamp(&cfg);
    meta.meta("engine", engine_name(opts.engine));
    meta.meta("anchor", format!("{:?}", report.anchor));
    meta.meta("n_anchor", fmt_float(report.n_anchor));
    meta.meta("scheme", &report.scheme);
    for f in &report.flags {
        meta.meta("flag", f);
    }
    for e in &report.enhancements {
        meta.meta(&format!("E_S_{}", e.position), fmt_float(e.e_s));
        meta.meta(&format!("E_dn_{}", e.position), opt_float(e.e_dn));
    }
    let columns: Vec<String> = [
        "region", "label", "lambda_nm", "m_mean", "g2_0", "S_I", "S_II", "sigma_m", "sigma_g2", "dn_I",
        "dn_II", "S_I_alt", "S_II_alt", "linearity_m", "linearity_g2",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let rows: Vec<Vec<String>> = report
        .plasmon
        .iter()
        .map(|p| sense_row("plasmon", p))
        .chain(report.fano.iter().map(|p| sense_row("fano", p)))
        .collect();
    let dir = out_dir(common, "sense");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("sense.csv"), csv_text(&meta.metadata, &columns, &rows))?;
    let doc = serde_json::json!({
        "config_hash": cfg.hash(),
        "solver": cfg.solver,
        "report": report,
    });
    write_json(&dir.join("sense.json"), &doc)?;
    for p in report.plasmon.iter().chain(&report.fano) {
        println!(
            "{:>3} λ = {:>10.4} nm  S_I = {:.3e}  S_II = {:.3e}  Δn_I = {}  Δn_II = {}",
            p.label,
            p.lambda,
            p.s_i.value,
            p.s_ii.value,
            p.dn_i.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "—".into()),
            p.dn_ii.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "—".into()),
        );
    }
    for e in &report.enhancements {
        println!(
            "E_S{} = {:.3}  E_Δn{} = {}",
            e.position,
            e.e_s,
            e.position,
            e.e_dn.map(|v| format!("{v:.3}")).unwrap_or_else(|| "—".into())
        );
    }
    for f in &report.flags {
        eprintln!("flag: {f}");
    }
    Ok(())
}

fn cmd_validate(common: &Common) -> Outcome {
    let cfg = load_config(common, &[])?;
    let report = with_jobs(common.jobs, || validate(&cfg))?;
    let dir = out_dir(common, "validate");
    std::fs::create_dir_all(&dir)?;
    let doc = serde_json::json!({
        "config_hash": cfg.hash(),
        "solver": cfg.solver,
        "passed": report.passed(),
        "report": report,
    });
    write_json(&dir.join("validate.json"), &doc)?;
    for c in &report.checks {
        println!(
            "{} {:<40} measured {:<24} tolerance {:<8} {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            fmt_float(c.measured),
            fmt_float(c.tolerance),
            c.detail
        );
    }
    let failed = report.failures().count();
    if failed > 0 {
        return Err(Failure::Validation(failed));
    }
    Ok(())
}
