#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use icl_core::critical::{
    area_closed_form, build_critical_curve, make_params, solve_length, CriticalReport, InvariantReport,
};
use icl_core::curvegeom::enclosed_area;
use icl_core::output::{svg_curves, to_csv_string, to_json_string};
use icl_core::perturb::{run_perturbations, PerturbSpec};
use icl_core::stability::{analyze, coercivity_constant, ratio_sweep};
use icl_core::steiner::{corpus_specs, run_corpus, Corpus};
use icl_core::{Error, OutputFormat, RunConfig};

const EXIT_THRESHOLD: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_STABILITY: u8 = 4;
const EXIT_MINIMALITY: u8 = 5;
const EXIT_STEINER: u8 = 6;
const EXIT_USAGE: u8 = 1;

/// Equilibrium curves of the total inverse curvature functional: construction,
/// stability constants, random perturbations and Steiner symmetrization.
#[derive(Parser, Debug)]
#[command(name = "icl", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Directory for written files.
    #[arg(long, global = true, env = "ICL_OUTPUT_DIR", default_value = "out")]
    output_dir: PathBuf,
    /// Format of tabular outputs (reports are always JSON).
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: OutputFormat,
    /// Samples on the arc-length grid.
    #[arg(long, global = true)]
    grid_n: Option<usize>,
    /// Hermite elements for the Rayleigh and coercivity solves.
    #[arg(long, global = true)]
    fe_elements: Option<usize>,
    /// Grid step of the determinant scan.
    #[arg(long, global = true)]
    mu_scan_step: Option<f64>,
    #[arg(long, global = true)]
    root_tol: Option<f64>,
    /// Height nodes for symmetrization.
    #[arg(long, global = true)]
    steiner_nodes: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the critical curve for x0 and L (or enclosed area A0) and check its invariants.
    Critical {
        #[arg(long)]
        x0: f64,
        /// Half-length; several values draw several curves in the SVG.
        #[arg(long = "L", num_args = 1.., conflicts_with = "a0", required_unless_present = "a0")]
        half_length: Vec<f64>,
        #[arg(long = "A0")]
        a0: Option<f64>,
        #[arg(long)]
        svg: bool,
    },
    /// Compute μ_W1 by determinant root and Rayleigh quotient, or sweep over x0/(L+x0).
    Stability {
        #[arg(long, requires = "half_length", conflicts_with = "ratio_sweep")]
        x0: Option<f64>,
        #[arg(long = "L")]
        half_length: Option<f64>,
        /// a:b:step
        #[arg(long, required_unless_present = "x0")]
        ratio_sweep: Option<String>,
    },
    /// Random clamped normal perturbations of the critical curve.
    Perturb {
        #[arg(long, default_value_t = 1.0)]
        x0: f64,
        #[arg(long = "L", default_value_t = 4.0)]
        half_length: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
        /// Also evaluate ℱ along area-preserving corrections of mean-zero fields.
        #[arg(long)]
        area: bool,
    },
    /// Symmetrize a corpus of convex regions and compare area and ℱ.
    Steiner {
        #[arg(long, default_value = "mixed", value_parser = parse_corpus)]
        corpus: Corpus,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        _ => Err(format!("expected json or csv, got {s:?}")),
    }
}

fn parse_corpus(s: &str) -> Result<Corpus, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_sweep(s: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad ratio sweep {s:?}"))?;
    let [a, b, step] = parts[..] else {
        anyhow::bail!("ratio sweep must be a:b:step, got {s:?}");
    };
    if !(step > 0.0 && a > 0.0 && b >= a && b < 0.25) {
        anyhow::bail!("ratio sweep needs 0 < a <= b < 1/4 and step > 0, got {s:?}");
    }
    let n = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| ((a + i as f64 * step) * 1e12).round() / 1e12).collect())
}

struct Outcome {
    code: u8,
    files: Vec<PathBuf>,
}

struct Writer {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Writer {
    fn new(dir: &Path) -> anyhow::Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf(), files: Vec::new() })
    }

    fn write(&mut self, name: &str, text: &str) -> anyhow::Result<()> {
        let p = self.dir.join(name);
        fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        self.files.push(p);
        Ok(())
    }

    fn table<S: serde::Serialize>(&mut self, stem: &str, rows: &[S], format: OutputFormat) -> anyhow::Result<()> {
        match format {
            OutputFormat::Csv => self.write(&format!("{stem}.csv"), &to_csv_string(rows)?),
            OutputFormat::Json => self.write(&format!("{stem}.json"), &to_json_string(rows)?),
        }
    }

    fn done(self, code: u8) -> Outcome {
        Outcome { code, files: self.files }
    }
}

fn config(g: &Global) -> anyhow::Result<RunConfig> {
    let mut c = RunConfig { output_dir: g.output_dir.clone(), format: g.format, ..RunConfig::default() };
    if let Some(n) = g.grid_n {
        c.grid_n = n;
    }
    if let Some(n) = g.fe_elements {
        c.fe_elements = n;
    }
    if let Some(x) = g.mu_scan_step {
        c.mu_scan_step = x;
    }
    if let Some(x) = g.root_tol {
        c.root_tol = x;
    }
    if let Some(n) = g.steiner_nodes {
        c.steiner_nodes = n;
    }
    c.validate()?;
    Ok(c)
}

fn cmd_critical(x0: f64, lengths: &[f64], a0: Option<f64>, svg: bool, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let lengths = match a0 {
        Some(a) => vec![solve_length(x0, a, cfg.length_cap)?],
        None => lengths.to_vec(),
    };
    let mut w = Writer::new(&cfg.output_dir)?;
    let mut reports = Vec::new();
    let mut curves = Vec::new();
    let mut code = 0;
    for &l in &lengths {
        let p = make_params(x0, l)?;
        let c = build_critical_curve(p, cfg.grid_n + 1)?;
        let inv = InvariantReport::new(&c)?;
        if !(inv.max_boundary_error() <= 1e-10) {
            code = EXIT_NUMERIC;
        }
        let mut report = json!({
            "params": p,
            "report": CriticalReport::new(&c),
            "invariants": inv,
            "max_boundary_error": inv.max_boundary_error(),
        });
        if let Some(a) = a0 {
            let quad = enclosed_area(&c.curve)?;
            report["area_round_trip"] = json!({
                "A0": a,
                "solved_L": l,
                "closed_form": area_closed_form(&p),
                "quadrature": quad,
                "rel_error": (quad - a).abs() / a,
            });
        }
        reports.push(report);
        curves.push(c);
    }
    let single = curves.len() == 1;
    for (i, c) in curves.iter().enumerate() {
        let stem = if single { "critical_curve".to_string() } else { format!("critical_curve_{i}") };
        match cfg.format {
            OutputFormat::Csv => w.write(&format!("{stem}.csv"), &c.curve.to_csv())?,
            OutputFormat::Json => w.write(&format!("{stem}.json"), &to_json_string(&c.curve.to_json())?)?,
        }
    }
    let body = if single { reports.pop().unwrap() } else { json!(reports) };
    w.write("critical.json", &to_json_string(&body)?)?;
    if svg || cfg.svg {
        let pts: Vec<&[[f64; 2]]> = curves.iter().map(|c| c.curve.pts()).collect();
        w.write("critical.svg", &svg_curves(&pts))?;
    }
    Ok(w.done(code))
}

fn cmd_stability(x0: Option<f64>, l: Option<f64>, sweep: Option<&str>, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let mut w = Writer::new(&cfg.output_dir)?;
    if let Some(spec) = sweep {
        let ratios = parse_sweep(spec)?;
        let rows = ratio_sweep(&ratios, cfg)?;
        let pass = rows.iter().all(|r| r.mu_w1 > 1.0 && r.mu_w1_rayleigh > 1.0 && r.coercivity > 0.0);
        w.table("stability_sweep", &rows, cfg.format)?;
        return Ok(w.done(if pass { 0 } else { EXIT_STABILITY }));
    }
    let (x0, l) = (x0.expect("clap requires x0"), l.expect("clap requires L"));
    let p = make_params(x0, l)?;
    let report = analyze(&p, cfg)?;
    w.write("stability.json", &to_json_string(&report)?)?;
    Ok(w.done(if report.pass { 0 } else { EXIT_STABILITY }))
}

fn cmd_perturb(x0: f64, l: f64, spec: PerturbSpec, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let p = make_params(x0, l)?;
    let c = build_critical_curve(p, cfg.grid_n + 1)?;
    let coer = coercivity_constant(p, cfg.fe_elements)?;
    let (summary, rows, area) = run_perturbations(&c, coer, &spec)?;
    let mut w = Writer::new(&cfg.output_dir)?;
    w.write("perturb.json", &to_json_string(&summary)?)?;
    w.table("perturb_rows", &rows, cfg.format)?;
    if let Some(a) = area {
        w.table("perturb_area_rows", &a, cfg.format)?;
    }
    Ok(w.done(if summary.pass { 0 } else { EXIT_MINIMALITY }))
}

fn cmd_steiner(corpus: Corpus, count: usize, seed: u64, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let specs = corpus_specs(corpus, seed, count);
    let (rows, summary) = run_corpus(&specs, cfg.steiner_nodes, cfg.curvature_floor)?;
    let mut w = Writer::new(&cfg.output_dir)?;
    w.write("steiner.json", &to_json_string(&json!({ "corpus": corpus, "seed": seed, "summary": summary }))?)?;
    w.table("steiner_rows", &rows, cfg.format)?;
    Ok(w.done(if summary.pass { 0 } else { EXIT_STEINER }))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::ThresholdViolation(_)) => EXIT_THRESHOLD,
        Some(Error::InvalidInput(_)) => EXIT_USAGE,
        _ => EXIT_NUMERIC,
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let cfg = config(&cli.global)?;
    match cli.command {
        Command::Critical { x0, half_length, a0, svg } => cmd_critical(x0, &half_length, a0, svg, &cfg),
        Command::Stability { x0, half_length, ratio_sweep } => cmd_stability(x0, half_length, ratio_sweep.as_deref(), &cfg),
        Command::Perturb { x0, half_length, seed, count, eps, area } => {
            cmd_perturb(x0, half_length, PerturbSpec { seed, count, eps, area }, &cfg)
        }
        Command::Steiner { corpus, count, seed } => cmd_steiner(corpus, count, seed, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            for f in &out.files {
                println!("{}", f.display());
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
