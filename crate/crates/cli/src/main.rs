//! Command-line front end: seed selection, synthesis, verification, worked
//! example reproduction, and report emission.
//!
//! Exit codes: 0 success, 2 configuration error, 3 positivity failure,
//! 4 strict-mode condition failure, 5 golden mismatch.

use clap::{Args, Parser, Subcommand};
use mra_seed::catalog;
use mra_seed::error::Error;
use mra_seed::overlap;
use mra_seed::relevance::{self, RelevanceOptions, Tolerances};
use mra_seed::report;
use mra_seed::seed::{self, SeedFamily, SeedFunction};
use mra_seed::synthesis::{self, PhaseSpec, RunParams};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_CONFIG: u8 = 2;
const EXIT_POSITIVITY: u8 = 3;
const EXIT_STRICT: u8 = 4;
const EXIT_GOLDEN: u8 = 5;

#[derive(Parser)]
#[command(
    name = "mra-seed",
    about = "Build filter sequences from seed functions and verify the conditions they must satisfy",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline for one seed and write filter + verification reports.
    Synthesize(SynthesizeArgs),
    /// Reproduce the built-in worked examples against their expected values.
    Examples(ExamplesArgs),
    /// Evaluate the summation rules and cross-checks for one seed.
    Sumrules(SumrulesArgs),
}

#[derive(Args)]
struct SeedArgs {
    /// Seed spec: gaussian | lorentzian | box-momentum:W | box-position:D |
    /// tabulated:PATH. `box-momentum:2k+1` with --k K selects the odd width 2K+1.
    #[arg(long)]
    seed: String,
    /// Family parameter k for the `2k+1` width form.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct RunArgs {
    /// Overlap table truncation radius.
    #[arg(long, default_value_t = 8)]
    radius: i64,
    /// Synthesis weight index range.
    #[arg(long = "s-max", default_value_t = 32)]
    s_max: i64,
    /// Hard cap on filter indices.
    #[arg(long = "n-cap", default_value_t = 512)]
    n_cap: i64,
    /// Phase choice: none | linear:K0 | quadratic:G.
    #[arg(long, default_value = "none")]
    phase: String,
}

#[derive(Args)]
struct SynthesizeArgs {
    #[command(flatten)]
    seed: SeedArgs,
    #[command(flatten)]
    run: RunArgs,
    /// Orthonormality residual tolerance.
    #[arg(long = "tol-r1", default_value_t = 1e-6)]
    tol_r1: f64,
    /// Sum-condition tolerance.
    #[arg(long = "tol-r3", default_value_t = 1e-6)]
    tol_r3: f64,
    /// Symbol minimum tolerance.
    #[arg(long = "tol-r4", default_value_t = 1e-6)]
    tol_r4: f64,
    /// Spectral positivity threshold.
    #[arg(long = "pos-tol", default_value_t = 1e-8)]
    pos_tol: f64,
    /// Output directory for reports.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Exit nonzero when any of the four conditions fails.
    #[arg(long)]
    strict: bool,
    /// Which files to emit.
    #[arg(long, default_value = "both", value_parser = ["json", "csv", "both"])]
    format: String,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Example indices (1..9) or `all`.
    #[arg(default_value = "all")]
    which: Vec<String>,
    /// Optional directory for per-example reports.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SumrulesArgs {
    #[command(flatten)]
    seed: SeedArgs,
    #[command(flatten)]
    run: RunArgs,
    /// Output directory; when given, writes sumrules.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Synthesize(args) => cmd_synthesize(args),
        Command::Examples(args) => cmd_examples(args),
        Command::Sumrules(args) => cmd_sumrules(args),
    };
    ExitCode::from(code)
}

/// MRA_SEED_THREADS caps internal parallelism.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("MRA_SEED_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn parse_seed(args: &SeedArgs) -> Result<SeedFunction, String> {
    let spec = args.seed.trim();
    let (family, param) = match spec.split_once(':') {
        Some((f, p)) => (f, Some(p)),
        None => (spec, None),
    };
    let build = |family: SeedFamily| SeedFunction::new(family).map_err(|e| e.to_string());
    match family {
        "gaussian" => build(SeedFamily::Gaussian),
        "lorentzian" => build(SeedFamily::LorentzianFt),
        "box-momentum" => {
            let p = param.ok_or("box-momentum requires a width parameter")?;
            let width = if p == "2k+1" {
                let k = args.k.ok_or("box-momentum:2k+1 requires --k")?;
                (2 * k + 1) as f64
            } else {
                p.parse::<f64>().map_err(|_| format!("bad width '{p}'"))?
            };
            build(SeedFamily::BoxMomentum { width })
        }
        "box-position" => {
            let p = param.ok_or("box-position requires a width parameter")?;
            let width = p.parse::<f64>().map_err(|_| format!("bad width '{p}'"))?;
            build(SeedFamily::BoxPosition { width })
        }
        "tabulated" => {
            let p = param.ok_or("tabulated requires a file path")?;
            let data = seed::load_tabulated_csv(Path::new(p)).map_err(|e| e.to_string())?;
            build(SeedFamily::Tabulated(data))
        }
        other => Err(format!(
            "unknown seed family '{other}' (expected gaussian, lorentzian, box-momentum, box-position, tabulated)"
        )),
    }
}

fn parse_phase(spec: &str) -> Result<PhaseSpec, String> {
    if spec == "none" {
        return Ok(PhaseSpec::Zero);
    }
    if let Some(k) = spec.strip_prefix("linear:") {
        let k0 = k.parse::<i64>().map_err(|_| format!("bad linear phase '{k}'"))?;
        return Ok(PhaseSpec::Linear(k0));
    }
    if let Some(g) = spec.strip_prefix("quadratic:") {
        let gamma = g.parse::<f64>().map_err(|_| format!("bad quadratic phase '{g}'"))?;
        let phase = PhaseSpec::Quadratic(gamma);
        phase.validate().map_err(|e| e.to_string())?;
        return Ok(phase);
    }
    Err(format!("unknown phase '{spec}' (expected none, linear:K0, quadratic:G)"))
}

fn run_params(args: &RunArgs) -> Result<RunParams, String> {
    if args.radius < 1 {
        return Err("--radius must be at least 1".into());
    }
    if args.s_max < 0 || args.n_cap < 1 {
        return Err("--s-max must be >= 0 and --n-cap >= 1".into());
    }
    Ok(RunParams {
        radius: args.radius,
        s_max: args.s_max,
        n_cap: args.n_cap,
        phase: parse_phase(&args.phase)?,
        f_radius: None,
    })
}

fn config_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_CONFIG
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    std::fs::write(dir.join(name), contents).map_err(|e| e.to_string())
}

fn cmd_synthesize(args: SynthesizeArgs) -> u8 {
    let seed = match parse_seed(&args.seed) {
        Ok(s) => s,
        Err(e) => return config_error(&e),
    };
    let params = match run_params(&args.run) {
        Ok(p) => p,
        Err(e) => return config_error(&e),
    };
    if args.pos_tol <= 0.0 || args.tol_r1 <= 0.0 || args.tol_r3 <= 0.0 || args.tol_r4 <= 0.0 {
        return config_error("tolerances must be positive");
    }

    let run = match synthesis::run_pipeline(&seed, &params) {
        Ok(r) => r,
        Err(Error::Positivity { min_value, min_location }) => {
            let failure = mra_seed::jsonout::Json::obj(vec![
                ("schema", mra_seed::jsonout::Json::Int(report::SCHEMA_VERSION)),
                ("error", mra_seed::jsonout::Json::Str("positivity".into())),
                ("seed", mra_seed::jsonout::Json::Str(seed.descriptor())),
                ("min_value", mra_seed::jsonout::Json::Float(min_value)),
                ("min_location", mra_seed::jsonout::Json::Float(min_location)),
            ]);
            if let Err(e) = write_file(&args.out, "failure.json", &failure.to_string()) {
                return config_error(&e);
            }
            eprintln!(
                "error: spectral series is not strictly positive (min {min_value:.6e} at p = {min_location:.6}); \
                 the synthesis integral may diverge"
            );
            return EXIT_POSITIVITY;
        }
        Err(e) => return config_error(&e.to_string()),
    };

    let psf = overlap::psf_crosscheck(&seed, &run.table);
    let tols = Tolerances {
        r1: args.tol_r1,
        r3: args.tol_r3,
        r4: args.tol_r4,
        pos: args.pos_tol,
    };
    let opts = RelevanceOptions { tols, ..Default::default() };
    let rep = relevance::assess(&seed, &run.table, &run.series, &run.weights, &run.filter, &psf, &opts);

    let json = args.format == "json" || args.format == "both";
    let csv = args.format == "csv" || args.format == "both";
    let phase_desc = params.phase.descriptor();
    let emit = || -> Result<(), String> {
        if json {
            write_file(&args.out, "filter.json", &report::filter_to_json(&run.filter).to_string())?;
            write_file(
                &args.out,
                "relevance.json",
                &report::relevance_to_json(&seed.descriptor(), &phase_desc, &rep, &run.weights, &psf)
                    .to_string(),
            )?;
            write_file(
                &args.out,
                "overlap.json",
                &report::table_to_json(&seed.descriptor(), &run.table, &run.series).to_string(),
            )?;
        }
        if csv {
            write_file(&args.out, "filter.csv", &report::filter_to_csv(&run.filter))?;
            write_file(&args.out, "spectrum.csv", &report::spectrum_to_csv(&run.series, 512))?;
            write_file(&args.out, "symbol.csv", &report::symbol_to_csv(&run.filter, 513))?;
        }
        Ok(())
    };
    if let Err(e) = emit() {
        return config_error(&e);
    }

    println!("seed {} phase {}", seed.descriptor(), phase_desc);
    println!(
        "  positivity: min {:.6e} at p = {:.6}",
        rep.positivity_min, rep.positivity_location
    );
    println!(
        "  orthonormality: max residual {:.3e} (tol {:.1e}) -> {}",
        rep.r1.max_residual,
        rep.r1.tol,
        pass_str(rep.r1.pass)
    );
    println!(
        "  decay: {} -> {}",
        rep.r2.class.label(),
        rep.r2.pass.map(pass_str).unwrap_or("undetermined")
    );
    println!(
        "  sum: {:.9} (residual {:.3e}) -> {}",
        rep.r3.sum.re,
        rep.r3.residual,
        pass_str(rep.r3.pass)
    );
    println!(
        "  symbol: min {:.6} at {:.4} -> {}",
        rep.r4.min_modulus,
        rep.r4.argmin,
        pass_str(rep.r4.pass)
    );
    for note in &rep.notes {
        println!("  note: {note}");
    }

    if args.strict {
        let all = rep.r1.pass && rep.r2.pass == Some(true) && rep.r3.pass && rep.r4.pass;
        if !all {
            eprintln!("strict mode: at least one condition failed");
            return EXIT_STRICT;
        }
    }
    EXIT_OK
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_examples(args: ExamplesArgs) -> u8 {
    let mut indices: Vec<usize> = Vec::new();
    for w in &args.which {
        if w == "all" {
            indices = (1..=catalog::EXAMPLE_COUNT).collect();
            break;
        }
        match w.parse::<usize>() {
            Ok(i) if (1..=catalog::EXAMPLE_COUNT).contains(&i) => indices.push(i),
            _ => return config_error(&format!("bad example index '{w}' (expected 1..9 or all)")),
        }
    }
    let mut any_mismatch = false;
    for index in indices {
        let outcome = match catalog::run_example(index) {
            Ok(o) => o,
            Err(e) => return config_error(&e.to_string()),
        };
        println!("example {index}: {}", outcome.title);
        for c in &outcome.checks {
            println!(
                "  [{}] {:<40} computed {:>14.6e}  expected {:>14.6e}  tol {:.1e}",
                if c.pass { " ok " } else { "FAIL" },
                c.label,
                c.computed,
                c.expected,
                c.tol
            );
            any_mismatch |= !c.pass;
        }
        for n in &outcome.notes {
            println!("  note: {n}");
        }
        if let Some(dir) = &args.out {
            let sub = dir.join(format!("example{index}"));
            let phase_desc = "none";
            let files = [
                (
                    "relevance.json",
                    report::relevance_to_json(
                        &outcome.seed.descriptor(),
                        phase_desc,
                        &outcome.report,
                        &outcome.run.weights,
                        &outcome.psf,
                    )
                    .to_string(),
                ),
                ("filter.json", report::filter_to_json(&outcome.run.filter).to_string()),
                ("filter.csv", report::filter_to_csv(&outcome.run.filter)),
            ];
            for (name, contents) in files {
                if let Err(e) = write_file(&sub, name, &contents) {
                    return config_error(&e);
                }
            }
        }
    }
    if any_mismatch {
        eprintln!("golden mismatch: at least one expected value was missed");
        EXIT_GOLDEN
    } else {
        EXIT_OK
    }
}

fn cmd_sumrules(args: SumrulesArgs) -> u8 {
    let seed = match parse_seed(&args.seed) {
        Ok(s) => s,
        Err(e) => return config_error(&e),
    };
    let params = match run_params(&args.run) {
        Ok(p) => p,
        Err(e) => return config_error(&e),
    };
    let run = match synthesis::run_pipeline(&seed, &params) {
        Ok(r) => r,
        Err(Error::Positivity { min_value, min_location }) => {
            eprintln!(
                "error: spectral series is not strictly positive (min {min_value:.6e} at p = {min_location:.6})"
            );
            return EXIT_POSITIVITY;
        }
        Err(e) => return config_error(&e.to_string()),
    };
    let psf = overlap::psf_crosscheck(&seed, &run.table);
    let rules = overlap::sum_rules(&seed, &run.table, &run.series, &run.weights);

    println!("seed {}", seed.descriptor());
    println!("row sums (momentum samples):");
    for row in &psf.momentum_rows {
        println!(
            "  index {:>3}: lattice {:>13.9} samples {:>13.9} residual {:.3e}{}",
            row.index,
            row.lattice_sum.re,
            row.sample_sum.re,
            row.residual,
            if row.passes(psf.tol) { "" } else { "  <- outside tolerance" }
        );
    }
    println!("row sums (position samples):");
    for row in &psf.position_rows {
        println!(
            "  index {:>3}: lattice {:>13.9} samples {:>13.9} residual {:.3e}{}",
            row.index,
            row.lattice_sum.re,
            row.sample_sum.re,
            row.residual,
            if row.passes(psf.tol) { "" } else { "  <- outside tolerance" }
        );
    }
    println!("global rules:");
    for rule in &rules.rules {
        println!(
            "  {:<40} lhs {:>13.9} rhs {:>13.9} residual {:.3e}{}",
            rule.name,
            rule.lhs.re,
            rule.rhs.re,
            rule.residual,
            rule.note
                .as_ref()
                .map(|n| format!("  ({n})"))
                .unwrap_or_default()
        );
    }
    if let Some(dir) = &args.out {
        let json = report::sum_rules_to_json(&seed.descriptor(), &rules, &psf).to_string();
        if let Err(e) = write_file(dir, "sumrules.json", &json) {
            return config_error(&e);
        }
    }
    EXIT_OK
}
