use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::Parser;
use log::{error, info};

use pdfl::{
    boundary_matrix, build_complex, emit_csv, emit_json, emit_plot, load_digraph, run_digraph, InputFormat,
    PairSchedule, PersistentOptions, ReductionMode, Report, RunConfig,
};

/// Persistent directed flag Laplacian spectra of filtered digraphs.
#[derive(Debug, Parser)]
#[command(name = "pdfl", version)]
struct Args {
    /// Input file.
    #[arg(long)]
    input: PathBuf,

    /// Input format: flag, distmat or mol.
    #[arg(long, default_value = "flag")]
    format: InputFormat,

    /// Highest Laplacian dimension reported.
    #[arg(long, default_value_t = 2)]
    max_dim: usize,

    /// Distance cutoff for distmat and mol inputs.
    #[arg(long, default_value_t = 8.0)]
    cutoff: f64,

    /// Rounding step for distances.
    #[arg(long = "round", default_value_t = 0.001)]
    rounding: f64,

    /// `consecutive`, `all`, or explicit pairs such as `0:1,2:inf`.
    #[arg(long, default_value = "consecutive")]
    pairs: PairSchedule,

    /// Relative zero threshold: eigenvalues below zero_tol * max(1, ||L||_inf) count as zero.
    #[arg(long, default_value_t = pdfl::laplacian::DEFAULT_ZERO_TOL)]
    zero_tol: f64,

    /// Largest Laplacian the eigensolver accepts.
    #[arg(long, default_value_t = pdfl::laplacian::DEFAULT_MAX_SIZE)]
    max_size: usize,

    /// Cross-check every Betti number against exact rational arithmetic.
    #[arg(long)]
    verify: bool,

    #[arg(long)]
    out_csv: Option<PathBuf>,

    #[arg(long)]
    out_json: Option<PathBuf>,

    /// Write an SVG plot to this path.
    #[arg(long)]
    plot: Option<PathBuf>,

    /// Reject edges whose value is below an endpoint's value instead of raising them.
    #[arg(long)]
    strict: bool,

    /// Ligand bonds enter the filtration at 0.
    #[arg(long)]
    bonds_at_zero: bool,

    /// Connect all ligand atom pairs within the cutoff, not only bonded ones.
    #[arg(long)]
    all_ligand_pairs: bool,

    /// Electronegativity table (`symbol value` per line).
    #[arg(long)]
    electronegativity: Option<PathBuf>,

    /// Include eigenvectors in the JSON report.
    #[arg(long)]
    eigenvectors: bool,

    /// Persistent basis reduction: auto, exact or float.
    #[arg(long, default_value = "auto", value_parser = parse_mode)]
    reduction: ReductionMode,

    /// Write boundary matrices of the full complex as triplet files into this directory.
    #[arg(long)]
    dump_matrices: Option<PathBuf>,
}

fn parse_mode(s: &str) -> std::result::Result<ReductionMode, String> {
    match s {
        "auto" => Ok(ReductionMode::Auto),
        "exact" => Ok(ReductionMode::Exact),
        "float" => Ok(ReductionMode::Float),
        _ => Err(format!("unknown reduction mode {s:?}")),
    }
}

impl Args {
    fn config(&self) -> RunConfig {
        RunConfig {
            input: self.input.clone(),
            format: self.format,
            max_dim: self.max_dim,
            cutoff: self.cutoff,
            rounding: self.rounding,
            pairs: self.pairs.clone(),
            zero_tol: self.zero_tol,
            max_size: self.max_size,
            verify: self.verify,
            strict: self.strict,
            bonds_at_zero: self.bonds_at_zero,
            all_ligand_pairs: self.all_ligand_pairs,
            electronegativity: self.electronegativity.clone(),
            eigenvectors: self.eigenvectors,
            persistent: PersistentOptions {
                mode: self.reduction,
                ..PersistentOptions::default()
            },
            out_csv: self.out_csv.clone(),
            out_json: self.out_json.clone(),
            plot: self.plot.clone(),
        }
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn dump_matrices(dir: &Path, g: &pdfl::FilteredDigraph, max_dim: usize) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let complex = build_complex(g, max_dim + 1);
    for k in 1..=max_dim + 1 {
        let b = boundary_matrix(&complex, k, f64::INFINITY)?;
        let mut out = Vec::new();
        b.write_triplets(&mut out)?;
        write(&dir.join(format!("boundary_{k}.txt")), &String::from_utf8(out)?)?;
    }
    Ok(())
}

fn execute(args: &Args) -> Result<Report> {
    let config = args.config();
    let start = std::time::Instant::now();
    let g = load_digraph(&config).with_context(|| format!("reading {}", config.input.display()))?;
    let parse_ms = start.elapsed().as_secs_f64() * 1e3;
    info!("{} vertices, {} edges", g.vertices().len(), g.edges().len());
    if let Some(dir) = &args.dump_matrices {
        dump_matrices(dir, &g, config.max_dim)?;
    }
    let mut report = run_digraph(&g, &config)?;
    report.provenance.timings.parse_ms = parse_ms;

    let csv = emit_csv(&report);
    match &config.out_csv {
        Some(p) => write(p, &csv)?,
        None if config.out_json.is_none() => print!("{csv}"),
        None => {}
    }
    if let Some(p) = &config.out_json {
        write(p, &emit_json(&report))?;
    }
    if let Some(p) = &config.plot {
        write(p, &emit_plot(&report))?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(&args) {
        Ok(report) if report.has_mismatches() => {
            for m in &report.provenance.verification.as_ref().expect("checked").mismatches {
                error!(
                    "verification failed: dim {} pair ({}, {}): spectral betti {} vs exact {}",
                    m.dim, m.a, m.b, m.spectral, m.exact
                );
            }
            ExitCode::from(2)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
