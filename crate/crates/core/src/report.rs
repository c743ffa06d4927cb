//! End-to-end runs and their CSV, JSON and SVG renderings.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::build_complex;
use crate::error::{Error, Result};
use crate::ingest::{
    from_distance_matrix, from_molecule, parse_distance_matrix, parse_flag_file, parse_molecule,
    ElectronegativityTable, MoleculeOptions,
};
use crate::laplacian::{SpectraRecord, SpectralOptions, DEFAULT_MAX_SIZE, DEFAULT_ZERO_TOL};
use crate::model::FilteredDigraph;
use crate::oracle::oracle_persistent_betti;
use crate::persistent::{persistent_laplacian, persistent_spectra, PersistentOptions};

/// Renders a filtration value, with infinities as `inf` and `-inf`.
pub fn format_value(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        x.to_string()
    }
}

fn parse_value(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" | "+inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        t => t.parse().ok().filter(|x: &f64| !x.is_nan()),
    }
}

/// Serde adapter writing infinite values as strings.
pub(crate) mod filtration {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_str(&format_value(*x))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) => {
                parse_value(&s).ok_or_else(|| serde::de::Error::custom(format!("bad filtration value {s:?}")))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InputFormat {
    #[serde(rename = "flag")]
    Flag,
    #[serde(rename = "distmat")]
    DistanceMatrix,
    #[serde(rename = "mol")]
    Molecule,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "flag" => Ok(Self::Flag),
            "distmat" => Ok(Self::DistanceMatrix),
            "mol" => Ok(Self::Molecule),
            _ => Err(format!("unknown format {s:?} (expected flag, distmat or mol)")),
        }
    }
}

/// Which `(a, b)` pairs to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum PairSchedule {
    /// Each grid value with the next one, then the last value with itself.
    Consecutive,
    /// Every `a <= b` on the grid.
    All,
    Explicit(Vec<(f64, f64)>),
}

impl PairSchedule {
    pub fn pairs(&self, grid: &crate::model::FiltrationGrid) -> Vec<(f64, f64)> {
        match self {
            Self::Consecutive => grid.consecutive_pairs(),
            Self::All => grid.all_pairs(),
            Self::Explicit(p) => p.clone(),
        }
    }
}

impl FromStr for PairSchedule {
    type Err = Error;

    /// `consecutive`, `all`, or a list such as `0:1,1:2.5,inf:inf`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "consecutive" => return Ok(Self::Consecutive),
            "all" => return Ok(Self::All),
            _ => {}
        }
        let bad = |message: String| Error::Parse { line: 0, message };
        let pairs = s
            .split(',')
            .map(|item| {
                let (a, b) = item
                    .split_once(':')
                    .ok_or_else(|| bad(format!("pair {item:?} is not of the form a:b")))?;
                let a = parse_value(a).ok_or_else(|| bad(format!("bad value in pair {item:?}")))?;
                let b = parse_value(b).ok_or_else(|| bad(format!("bad value in pair {item:?}")))?;
                if a > b {
                    return Err(Error::InvalidPair { a, b });
                }
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::Explicit(pairs))
    }
}

impl fmt::Display for PairSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Consecutive => f.write_str("consecutive"),
            Self::All => f.write_str("all"),
            Self::Explicit(p) => {
                let items: Vec<String> = p
                    .iter()
                    .map(|&(a, b)| format!("{}:{}", format_value(a), format_value(b)))
                    .collect();
                f.write_str(&items.join(","))
            }
        }
    }
}

impl Serialize for PairSchedule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PairSchedule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: InputFormat,
    pub max_dim: usize,
    pub cutoff: f64,
    pub rounding: f64,
    pub pairs: PairSchedule,
    pub zero_tol: f64,
    pub max_size: usize,
    pub verify: bool,
    pub strict: bool,
    pub bonds_at_zero: bool,
    pub all_ligand_pairs: bool,
    pub electronegativity: Option<PathBuf>,
    pub eigenvectors: bool,
    pub persistent: PersistentOptions,
    pub out_csv: Option<PathBuf>,
    pub out_json: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, format: InputFormat) -> Self {
        Self {
            input: input.into(),
            format,
            max_dim: 2,
            cutoff: 8.0,
            rounding: 1e-3,
            pairs: PairSchedule::Consecutive,
            zero_tol: DEFAULT_ZERO_TOL,
            max_size: DEFAULT_MAX_SIZE,
            verify: false,
            strict: false,
            bonds_at_zero: false,
            all_ligand_pairs: false,
            electronegativity: None,
            eigenvectors: false,
            persistent: PersistentOptions::default(),
            out_csv: None,
            out_json: None,
            plot: None,
        }
    }

    fn spectral(&self) -> SpectralOptions {
        SpectralOptions {
            zero_tol: self.zero_tol,
            max_size: self.max_size,
            eigenvectors: self.eigenvectors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub vertices: usize,
    pub edges: usize,
    pub clamped_edges: usize,
    /// Simplices per dimension, including the extra dimension used for the
    /// top up-term.
    pub simplices: Vec<usize>,
    #[serde(with = "crate::report::filtration_vec")]
    pub grid: Vec<f64>,
}

/// Wall-clock milliseconds per phase. Excluded from determinism comparisons.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub build_ms: f64,
    pub spectra_ms: f64,
    pub verify_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub dim: usize,
    #[serde(with = "filtration")]
    pub a: f64,
    #[serde(with = "filtration")]
    pub b: f64,
    pub spectral: usize,
    pub exact: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub checked: usize,
    /// Records too large for the exact oracle.
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub config: Option<RunConfig>,
    pub input: Option<InputSummary>,
    pub timings: Timings,
    pub verification: Option<Verification>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Sorted by `(dim, a, b)`.
    pub records: Vec<SpectraRecord>,
    pub provenance: Provenance,
}

impl Report {
    pub fn empty() -> Self {
        Self {
            records: Vec::new(),
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION").to_string(),
                config: None,
                input: None,
                timings: Timings::default(),
                verification: None,
            },
        }
    }

    /// True when verification ran and found a disagreement.
    pub fn has_mismatches(&self) -> bool {
        self.provenance
            .verification
            .as_ref()
            .is_some_and(|v| !v.mismatches.is_empty())
    }

    /// Copy with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.provenance.timings = Timings::default();
        r
    }

    pub fn records_for(&self, dim: usize) -> impl Iterator<Item = &SpectraRecord> {
        self.records.iter().filter(move |r| r.dim == dim)
    }
}

pub(crate) mod filtration_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct W(#[serde(with = "filtration")] f64);
        s.collect_seq(v.iter().map(|&x| W(x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "filtration")] f64);
        Ok(Vec::<W>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Loads the configured input as a filtered digraph.
pub fn load_digraph(config: &RunConfig) -> Result<FilteredDigraph> {
    let text = read(&config.input)?;
    match config.format {
        InputFormat::Flag => parse_flag_file(&text, config.strict),
        InputFormat::DistanceMatrix => {
            from_distance_matrix(&parse_distance_matrix(&text)?, config.cutoff, config.rounding)
        }
        InputFormat::Molecule => {
            let table = match &config.electronegativity {
                Some(p) => ElectronegativityTable::parse(&read(p)?)?,
                None => ElectronegativityTable::pauling(),
            };
            let opts = MoleculeOptions {
                cutoff: config.cutoff,
                rounding: config.rounding,
                bonds_at_zero: config.bonds_at_zero,
                all_ligand_pairs: config.all_ligand_pairs,
                table,
            };
            from_molecule(&parse_molecule(&text)?, &opts)
        }
    }
}

/// Reads the input and computes every scheduled record.
pub fn run(config: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let g = load_digraph(config)?;
    let parse_ms = ms(start);
    let mut report = run_digraph(&g, config)?;
    report.provenance.timings.parse_ms = parse_ms;
    Ok(report)
}

enum Outcome {
    Agree,
    Differ(Mismatch),
    TooLarge,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Computes `L_k^{a,b}` spectra for `k <= max_dim` and every scheduled pair.
///
/// The complex is built one dimension higher than reported so that the top
/// dimension keeps its up-term.
pub fn run_digraph(g: &FilteredDigraph, config: &RunConfig) -> Result<Report> {
    let t = Instant::now();
    let complex = build_complex(g, config.max_dim + 1);
    let build_ms = ms(t);
    info!("complex built: {:?} simplices per dimension", complex.counts());

    let pairs = config.pairs.pairs(complex.grid());
    for &(a, b) in &pairs {
        if a > b || a.is_nan() || b.is_nan() {
            return Err(Error::InvalidPair { a, b });
        }
    }
    let items: Vec<(usize, f64, f64)> = (0..=config.max_dim)
        .flat_map(|k| pairs.iter().map(move |&(a, b)| (k, a, b)))
        .collect();

    let t = Instant::now();
    let sopts = config.spectral();
    let mut records = items
        .par_iter()
        .map(|&(k, a, b)| {
            let pl = persistent_laplacian(&complex, k, a, b, &config.persistent)?;
            persistent_spectra(&pl, &sopts)
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|x, y| x.dim.cmp(&y.dim).then(x.a.total_cmp(&y.a)).then(x.b.total_cmp(&y.b)));
    let spectra_ms = ms(t);

    let t = Instant::now();
    let verification = if config.verify {
        let outcomes = records
            .par_iter()
            .map(|r| match oracle_persistent_betti(&complex, r.dim, r.a, r.b) {
                Ok(exact) if exact == r.betti => Ok(Outcome::Agree),
                Ok(exact) => Ok(Outcome::Differ(Mismatch {
                    dim: r.dim,
                    a: r.a,
                    b: r.b,
                    spectral: r.betti,
                    exact,
                })),
                Err(Error::Capacity { .. }) => Ok(Outcome::TooLarge),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        let skipped = outcomes.iter().filter(|o| matches!(o, Outcome::TooLarge)).count();
        if skipped > 0 {
            warn!("{skipped} records exceed the exact oracle's size limit and were not verified");
        }
        let mismatches: Vec<Mismatch> = outcomes
            .into_iter()
            .filter_map(|o| match o {
                Outcome::Differ(m) => Some(m),
                _ => None,
            })
            .collect();
        Some(Verification {
            checked: records.len() - skipped,
            skipped,
            mismatches,
        })
    } else {
        None
    };
    let verify_ms = if config.verify { ms(t) } else { 0.0 };

    Ok(Report {
        records,
        provenance: Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: Some(config.clone()),
            input: Some(InputSummary {
                vertices: g.vertices().len(),
                edges: g.edges().len(),
                clamped_edges: g.clamped_edges(),
                simplices: complex.counts(),
                grid: complex.grid().values().to_vec(),
            }),
            timings: Timings {
                parse_ms: 0.0,
                build_ms,
                spectra_ms,
                verify_ms,
            },
            verification,
        },
    })
}

const CSV_HEADER: [&str; 6] = ["dim", "a", "b", "betti", "lambda_min_nonzero", "n_eigenvalues"];

/// One row per record: `dim,a,b,betti,lambda_min_nonzero,n_eigenvalues`. An
/// absent nonzero eigenvalue is an empty field.
pub fn emit_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in &report.records {
        w.write_record([
            r.dim.to_string(),
            format_value(r.a),
            format_value(r.b),
            r.betti.to_string(),
            r.lambda_min_nonzero.map(format_value).unwrap_or_default(),
            r.eigenvalues.len().to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn emit_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report is serializable") + "\n"
}

pub fn parse_json(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))
}

const PLOT_WIDTH: f64 = 720.0;
const PANEL_HEIGHT: f64 = 150.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_Y: f64 = 30.0;

/// The record plotted at each `a`: the smallest `b > a`, else `b = a`.
fn plotted(report: &Report, dim: usize) -> Vec<&SpectraRecord> {
    let mut out: Vec<&SpectraRecord> = Vec::new();
    for r in report.records_for(dim) {
        match out.last_mut() {
            Some(last) if last.a == r.a => {
                if last.b == last.a && r.b > r.a {
                    *last = r;
                }
            }
            _ => out.push(r),
        }
    }
    out
}

/// Standalone SVG with, for each dimension, a step plot of the persistent
/// Betti number and one of the smallest nonzero eigenvalue against `a`.
///
/// The horizontal axis is ordinal in `a`. Every plotted value carries a
/// `circle` marker with class `beta` or `lambda` and `data-dim`, `data-a` and
/// `data-value` attributes.
pub fn emit_plot(report: &Report) -> String {
    let dims: Vec<usize> = {
        let mut d: Vec<usize> = report.records.iter().map(|r| r.dim).collect();
        d.dedup();
        d
    };
    let height = MARGIN_Y + dims.len().max(1) as f64 * 2.0 * (PANEL_HEIGHT + MARGIN_Y);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PLOT_WIDTH}" height="{height}" viewBox="0 0 {PLOT_WIDTH} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let mut top = MARGIN_Y;
    for &dim in &dims {
        let recs = plotted(report, dim);
        let betti: Vec<Option<f64>> = recs.iter().map(|r| Some(r.betti as f64)).collect();
        let lambda: Vec<Option<f64>> = recs.iter().map(|r| r.lambda_min_nonzero).collect();
        let a: Vec<f64> = recs.iter().map(|r| r.a).collect();
        panel(
            &mut s,
            top,
            dim,
            "beta",
            &format!("\u{3b2}{dim}"),
            &a,
            &betti,
            "#1f77b4",
        );
        top += PANEL_HEIGHT + MARGIN_Y;
        panel(
            &mut s,
            top,
            dim,
            "lambda",
            &format!("\u{3bb}{dim}"),
            &a,
            &lambda,
            "#d62728",
        );
        top += PANEL_HEIGHT + MARGIN_Y;
    }
    s.push_str("</svg>\n");
    s
}

#[allow(clippy::too_many_arguments)]
fn panel(s: &mut String, top: f64, dim: usize, class: &str, title: &str, a: &[f64], ys: &[Option<f64>], color: &str) {
    let left = MARGIN_LEFT;
    let right = PLOT_WIDTH - MARGIN_RIGHT;
    let bottom = top + PANEL_HEIGHT;
    let ymax = ys.iter().flatten().copied().fold(0.0_f64, f64::max).max(1.0) * 1.1;
    let n = a.len().max(1) as f64;
    let x = |i: f64| left + (right - left) * i / n;
    let y = |v: f64| bottom - (bottom - top) * v / ymax;

    let _ = writeln!(s, r#"<g class="panel {class}" data-dim="{dim}">"#);
    let _ = writeln!(
        s,
        r##"<rect x="{left}" y="{top}" width="{}" height="{PANEL_HEIGHT}" fill="none" stroke="#888"/>"##,
        right - left
    );
    let _ = writeln!(s, r#"<text x="8" y="{}">{title}</text>"#, top + PANEL_HEIGHT / 2.0);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        left - 4.0,
        top + 10.0,
        fmt_tick(ymax)
    );
    let _ = writeln!(s, r#"<text x="{}" y="{bottom}" text-anchor="end">0</text>"#, left - 4.0);

    let mut path = String::new();
    let mut pen_down = false;
    for (i, v) in ys.iter().enumerate() {
        match v {
            Some(v) => {
                let (x0, x1, yv) = (x(i as f64), x(i as f64 + 1.0), y(*v));
                let _ = write!(
                    path,
                    "{}{x0:.2},{yv:.2} L{x1:.2},{yv:.2} ",
                    if pen_down { "L" } else { "M" }
                );
                pen_down = true;
            }
            None => pen_down = false,
        }
    }
    if !path.is_empty() {
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            path.trim_end()
        );
    }
    for (i, v) in ys.iter().enumerate() {
        if let Some(v) = v {
            let _ = writeln!(
                s,
                r#"<circle class="{class}" data-dim="{dim}" data-a="{}" data-value="{v}" cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#,
                format_value(a[i]),
                x(i as f64 + 0.5),
                y(*v)
            );
        }
    }
    let step = (a.len() / 8).max(1);
    for (i, av) in a.iter().enumerate().step_by(step) {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            x(i as f64 + 0.5),
            bottom + 14.0,
            fmt_tick(*av)
        );
    }
    s.push_str("</g>\n");
}

fn fmt_tick(v: f64) -> String {
    if v.is_finite() {
        let t = format!("{v:.3}");
        t.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format_value(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(dim: usize, a: f64, b: f64, eigenvalues: Vec<f64>) -> SpectraRecord {
        let betti = eigenvalues.iter().filter(|&&x| x < 1e-8).count();
        SpectraRecord {
            dim,
            a,
            b,
            lambda_min_nonzero: eigenvalues.iter().copied().find(|&x| x >= 1e-8),
            eigenvalues,
            betti,
            zero_threshold: 1e-8,
            eigenvectors: None,
        }
    }

    #[test]
    fn schedules() {
        assert_eq!(
            "consecutive".parse::<PairSchedule>().unwrap(),
            PairSchedule::Consecutive
        );
        assert_eq!(
            "0:1,inf:inf".parse::<PairSchedule>().unwrap(),
            PairSchedule::Explicit(vec![(0.0, 1.0), (f64::INFINITY, f64::INFINITY)])
        );
        assert_eq!(
            "2:1".parse::<PairSchedule>(),
            Err(Error::InvalidPair { a: 2.0, b: 1.0 })
        );
        assert!("0-1".parse::<PairSchedule>().is_err());
        let p: PairSchedule = "0.5:inf".parse().unwrap();
        assert_eq!(p.to_string(), "0.5:inf");
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(
            emit_csv(&Report::empty()),
            "dim,a,b,betti,lambda_min_nonzero,n_eigenvalues\n"
        );
    }

    #[test]
    fn csv_rows() {
        let mut r = Report::empty();
        r.records
            .push(record(1, f64::INFINITY, f64::INFINITY, vec![0.0, 0.0, 1.5]));
        r.records.push(record(1, 0.0, 1.0, vec![0.0]));
        let csv = emit_csv(&r);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "1,inf,inf,2,1.5,3");
        assert_eq!(lines[2], "1,0,1,1,,1");
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::empty();
        r.records
            .push(record(0, 0.1, 0.30000000000000004, vec![0.0, 2.0 - 2f64.sqrt()]));
        r.records.push(record(2, f64::INFINITY, f64::INFINITY, vec![]));
        let mut cfg = RunConfig::new("x.flag", InputFormat::Flag);
        cfg.pairs = "0:inf".parse().unwrap();
        r.provenance.config = Some(cfg);
        let back = parse_json(&emit_json(&r)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn plot_markers() {
        let mut r = Report::empty();
        r.records.push(record(0, 0.0, 0.0, vec![0.0]));
        let svg = emit_plot(&r);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches(r#"class="beta""#).count(), 1);
    }

    #[test]
    fn plot_prefers_next_pair() {
        let mut r = Report::empty();
        r.records.push(record(0, 0.0, 0.0, vec![0.0, 0.0]));
        r.records.push(record(0, 0.0, 1.0, vec![0.0, 1.0]));
        r.records.push(record(0, 0.0, 2.0, vec![0.0, 2.0]));
        let p = plotted(&r, 0);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].b, 1.0);
    }
}
