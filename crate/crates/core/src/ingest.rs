//! Input formats: flag files, distance matrices and molecular point clouds.
//!
//! # Flag files
//!
//! ```text
//! dim 0:
//! 0 0 1          # one filtration value per vertex, ids 0..n
//! dim 1:
//! 0 1 0.5        # source target [weight]
//! 1 2
//! ```
//!
//! A missing weight defaults to the larger endpoint value.
//!
//! # Molecules
//!
//! ```text
//! C 0.0 0.0 0.0 ligand
//! O 1.2 0.0 0.0 ligand
//! C 0.0 5.0 0.0 protein
//! bonds:
//! 0 1
//! ```
//!
//! Bonds are ligand-internal atom index pairs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{FilteredDigraph, VertexId};

/// Nearest multiple of `step`, ties away from zero.
///
/// Quotients within `1e-9` of a half-integer count as ties, so decimal inputs
/// such as `1.2345` round as written rather than as stored.
pub fn round_to(x: f64, step: f64) -> f64 {
    let q = x / step;
    let frac = q.abs().fract();
    let n = if (frac - 0.5).abs() < 1e-9 {
        q.signum() * (q.abs().trunc() + 1.0)
    } else {
        q.round()
    };
    let inv = 1.0 / step;
    if (inv - inv.round()).abs() < 1e-9 * inv.max(1.0) {
        n / inv.round()
    } else {
        n * step
    }
}

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidStep(step))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Significant lines with 1-based numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_real(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("expected a number, found {tok:?}")))
}

fn is_header(l: &str, dim: usize) -> bool {
    let mut t = l.split_whitespace();
    matches!((t.next(), t.next(), t.next()), (Some("dim"), Some(d), None) if d == format!("{dim}:"))
}

pub fn parse_flag_file(text: &str, strict: bool) -> Result<FilteredDigraph> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, l)) if is_header(l, 0) => {}
        Some((n, l)) => return Err(parse_err(n, format!("expected \"dim 0:\", found {l:?}"))),
        None => return Err(parse_err(1, "empty input")),
    }
    let values: Vec<f64> = match lines.next() {
        Some((n, l)) if !l.starts_with("dim") => {
            l.split_whitespace().map(|t| parse_real(t, n)).collect::<Result<_>>()?
        }
        _ => return Err(Error::EmptyVertexSet),
    };
    match lines.next() {
        None => {}
        Some((_, l)) if is_header(l, 1) => {}
        Some((n, l)) => return Err(parse_err(n, format!("expected \"dim 1:\", found {l:?}"))),
    }

    let mut edges = Vec::new();
    for (n, l) in lines {
        if l.starts_with("dim") {
            return Err(parse_err(n, "only dim 0 and dim 1 sections are supported"));
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(parse_err(n, "expected \"source target [weight]\""));
        }
        let index = |t: &str| {
            t.parse::<VertexId>()
                .map_err(|_| parse_err(n, format!("expected a vertex index, found {t:?}")))
        };
        let (s, t) = (index(toks[0])?, index(toks[1])?);
        let w = match toks.get(2) {
            Some(tok) => parse_real(tok, n)?,
            None => {
                let vs = values.get(s).copied().unwrap_or(0.0);
                let vt = values.get(t).copied().unwrap_or(0.0);
                vs.max(vt)
            }
        };
        edges.push((s, t, w));
    }
    FilteredDigraph::build(values.into_iter().enumerate().collect(), edges, strict)
}

/// Serializes in the flag-file dialect. Vertices are renumbered `0..n` in id
/// order.
pub fn write_flag_file(g: &FilteredDigraph) -> String {
    let pos: BTreeMap<VertexId, usize> = g.vertices().iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let mut out = String::from("dim 0:\n");
    let values: Vec<String> = g.vertices().iter().map(|v| v.value.to_string()).collect();
    out.push_str(&values.join(" "));
    out.push_str("\ndim 1:\n");
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", pos[&e.source], pos[&e.target], e.value);
    }
    out
}

/// Reads a square matrix of reals from comma-separated text.
pub fn parse_distance_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::DistanceMatrix(e.to_string()))?;
        let line = rec.position().map_or(i + 1, |p| p.line() as usize);
        let row = rec
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| parse_real(f, line))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Vertices at 0 and, for each pair within `cutoff`, both directed edges at the
/// rounded distance.
pub fn from_distance_matrix(d: &[Vec<f64>], cutoff: f64, rounding: f64) -> Result<FilteredDigraph> {
    check_step(rounding)?;
    let n = d.len();
    for (i, row) in d.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DistanceMatrix(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, &x) in row.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::DistanceMatrix(format!(
                    "entry ({i}, {j}) = {x} is not a distance"
                )));
            }
            if i == j && x != 0.0 {
                return Err(Error::DistanceMatrix(format!("nonzero diagonal entry at {i}")));
            }
            if x != d[j][i] {
                return Err(Error::DistanceMatrix(format!(
                    "entries ({i}, {j}) and ({j}, {i}) differ"
                )));
            }
        }
    }
    let mut edges = Vec::new();
    for (i, row) in d.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i != j && x <= cutoff {
                edges.push((i, j, round_to(x, rounding)));
            }
        }
    }
    FilteredDigraph::new((0..n).map(|i| (i, 0.0)).collect(), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Protein,
    Ligand,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub element: String,
    pub position: [f64; 3],
    pub role: Role,
}

impl Atom {
    pub fn distance(&self, other: &Atom) -> f64 {
        self.position
            .iter()
            .zip(&other.position)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MolecularSystem {
    pub atoms: Vec<Atom>,
    /// Ligand-internal covalent bonds as atom index pairs.
    pub bonds: Vec<(usize, usize)>,
}

impl MolecularSystem {
    pub fn new(atoms: Vec<Atom>, bonds: Vec<(usize, usize)>) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if a.position.iter().any(|x| !x.is_finite()) {
                return Err(Error::Molecule(format!("atom {i} has non-finite coordinates")));
            }
        }
        for &(i, j) in &bonds {
            if i == j {
                return Err(Error::Molecule(format!("bond ({i}, {j}) joins an atom to itself")));
            }
            for x in [i, j] {
                match atoms.get(x) {
                    None => return Err(Error::Molecule(format!("bond endpoint {x} is not an atom"))),
                    Some(a) if a.role != Role::Ligand => {
                        return Err(Error::Molecule(format!("bond endpoint {x} is not a ligand atom")))
                    }
                    _ => {}
                }
            }
        }
        Ok(Self { atoms, bonds })
    }
}

/// Canonical element capitalization: `CL` and `cl` become `Cl`.
fn normalize_element(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_ascii_uppercase().to_string() + &c.as_str().to_ascii_lowercase(),
        None => String::new(),
    }
}

pub fn parse_molecule(text: &str) -> Result<MolecularSystem> {
    let mut atoms = Vec::new();
    let mut bonds = Vec::new();
    let mut in_bonds = false;
    for (n, l) in content_lines(text) {
        if l.eq_ignore_ascii_case("bonds:") {
            in_bonds = true;
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if in_bonds {
            let [i, j] = toks[..] else {
                return Err(parse_err(n, "expected a bond \"i j\""));
            };
            let idx = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(n, format!("expected an atom index, found {t:?}")))
            };
            bonds.push((idx(i)?, idx(j)?));
        } else {
            let [el, x, y, z, role] = toks[..] else {
                return Err(parse_err(n, "expected \"element x y z role\""));
            };
            let role = match role.to_ascii_lowercase().as_str() {
                "protein" => Role::Protein,
                "ligand" => Role::Ligand,
                other => return Err(parse_err(n, format!("unknown role {other:?}"))),
            };
            atoms.push(Atom {
                element: normalize_element(el),
                position: [parse_real(x, n)?, parse_real(y, n)?, parse_real(z, n)?],
                role,
            });
        }
    }
    MolecularSystem::new(atoms, bonds)
}

/// Element symbol to Pauling electronegativity.
#[derive(Debug, Clone, PartialEq)]
pub struct ElectronegativityTable(BTreeMap<String, f64>);

impl Default for ElectronegativityTable {
    fn default() -> Self {
        Self::pauling()
    }
}

impl ElectronegativityTable {
    pub fn pauling() -> Self {
        const VALUES: &[(&str, f64)] = &[
            ("H", 2.20),
            ("Li", 0.98),
            ("B", 2.04),
            ("C", 2.55),
            ("N", 3.04),
            ("O", 3.44),
            ("F", 3.98),
            ("Na", 0.93),
            ("Mg", 1.31),
            ("Al", 1.61),
            ("Si", 1.90),
            ("P", 2.19),
            ("S", 2.58),
            ("Cl", 3.16),
            ("K", 0.82),
            ("Ca", 1.00),
            ("Mn", 1.55),
            ("Fe", 1.83),
            ("Co", 1.88),
            ("Ni", 1.91),
            ("Cu", 1.90),
            ("Zn", 1.65),
            ("Se", 2.55),
            ("Br", 2.96),
            ("I", 2.66),
        ];
        Self(VALUES.iter().map(|&(e, v)| (e.to_string(), v)).collect())
    }

    /// Reads `symbol value` lines. Entries override nothing; the result holds
    /// exactly the listed elements.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, l) in content_lines(text) {
            let [el, v] = l.split_whitespace().collect::<Vec<_>>()[..] else {
                return Err(parse_err(n, "expected \"symbol value\""));
            };
            map.insert(normalize_element(el), parse_real(v, n)?);
        }
        Ok(Self(map))
    }

    pub fn get(&self, element: &str) -> Result<f64> {
        self.0
            .get(element)
            .copied()
            .ok_or_else(|| Error::UnknownElement(element.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeOptions {
    pub cutoff: f64,
    pub rounding: f64,
    /// Ligand bonds enter at 0 instead of at their length.
    pub bonds_at_zero: bool,
    /// Connect every ligand pair within the cutoff, not only bonded pairs.
    pub all_ligand_pairs: bool,
    pub table: ElectronegativityTable,
}

impl Default for MoleculeOptions {
    fn default() -> Self {
        Self {
            cutoff: 8.0,
            rounding: 1e-3,
            bonds_at_zero: false,
            all_ligand_pairs: false,
            table: ElectronegativityTable::pauling(),
        }
    }
}

const LIGAND_ELEMENTS: [&str; 4] = ["C", "N", "O", "S"];

/// Protein-ligand digraph.
///
/// Vertices are the ligand C, N, O and S atoms plus the protein carbons within
/// the cutoff of one of them, all at filtration 0 and labelled with element and
/// original atom index. Edges join bonded ligand atoms and protein-ligand pairs
/// within the cutoff, never two protein atoms, at the rounded distance. Each
/// edge points to the more electronegative atom; ties give both directions.
pub fn from_molecule(sys: &MolecularSystem, opts: &MoleculeOptions) -> Result<FilteredDigraph> {
    check_step(opts.rounding)?;
    let en: Vec<f64> = sys
        .atoms
        .iter()
        .map(|a| opts.table.get(&a.element))
        .collect::<Result<_>>()?;

    let ligand: Vec<usize> = (0..sys.atoms.len())
        .filter(|&i| sys.atoms[i].role == Role::Ligand && LIGAND_ELEMENTS.contains(&sys.atoms[i].element.as_str()))
        .collect();
    let protein: Vec<usize> = (0..sys.atoms.len())
        .filter(|&i| {
            let a = &sys.atoms[i];
            a.role == Role::Protein
                && a.element == "C"
                && ligand.iter().any(|&l| a.distance(&sys.atoms[l]) <= opts.cutoff)
        })
        .collect();
    let kept: Vec<usize> = {
        let mut v: Vec<usize> = ligand.iter().chain(&protein).copied().collect();
        v.sort_unstable();
        v
    };
    if kept.is_empty() {
        return Err(Error::Molecule("no atoms survive filtering".into()));
    }
    let id: BTreeMap<usize, VertexId> = kept.iter().enumerate().map(|(v, &a)| (a, v)).collect();

    let mut edges = Vec::new();
    let mut connect = |i: usize, j: usize, value: f64| {
        let (u, v) = (id[&i], id[&j]);
        if en[i] <= en[j] {
            edges.push((u, v, value));
        }
        if en[j] <= en[i] {
            edges.push((v, u, value));
        }
    };

    let mut bonded = std::collections::BTreeSet::new();
    for &(i, j) in &sys.bonds {
        if id.contains_key(&i) && id.contains_key(&j) && bonded.insert((i.min(j), i.max(j))) {
            let d = sys.atoms[i].distance(&sys.atoms[j]);
            let value = if opts.bonds_at_zero {
                0.0
            } else {
                round_to(d, opts.rounding)
            };
            connect(i, j, value);
        }
    }
    if opts.all_ligand_pairs {
        for (x, &i) in ligand.iter().enumerate() {
            for &j in &ligand[x + 1..] {
                let d = sys.atoms[i].distance(&sys.atoms[j]);
                if d <= opts.cutoff && !bonded.contains(&(i, j)) {
                    connect(i, j, round_to(d, opts.rounding));
                }
            }
        }
    }
    for &l in &ligand {
        for &p in &protein {
            let d = sys.atoms[l].distance(&sys.atoms[p]);
            if d <= opts.cutoff {
                connect(l, p, round_to(d, opts.rounding));
            }
        }
    }

    let labels = kept
        .iter()
        .enumerate()
        .map(|(v, &a)| (v, format!("{}{}", sys.atoms[a].element, a)));
    Ok(FilteredDigraph::new(kept.iter().enumerate().map(|(v, _)| (v, 0.0)).collect(), edges)?.with_labels(labels))
}

/// Vertices of a [`from_molecule`] digraph that came from protein atoms,
/// recovered from their labels.
pub fn protein_vertices(sys: &MolecularSystem, g: &FilteredDigraph) -> Vec<VertexId> {
    g.labels()
        .iter()
        .filter_map(|(&v, label)| {
            let idx: usize = label.trim_start_matches(char::is_alphabetic).parse().ok()?;
            (sys.atoms.get(idx)?.role == Role::Protein).then_some(v)
        })
        .collect()
}
