//! Table generation and verification runs behind the `planar-dunkl` binary.
//!
//! Everything here is deterministic: work items may be computed in parallel
//! but are always assembled in `(n, sign)` order.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use planar_dunkl::dunkl::{DunklContext, DEFAULT_DEGREE_CAP};
use planar_dunkl::inner::ConstantsRow;
use planar_dunkl::planar::{harmonic_with, GKind, GTables, HarmonicJson, Symmetry};
use planar_dunkl::poly::{PolyJson, Rep, TermJson};
use planar_dunkl::scalar::{parse_rational, Field, KappaScalar, Rational, ScalarText};
use planar_dunkl::verify::{run_suite, CheckOutcome, Suite, VerifyOptions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KappaArg {
    Symbolic,
    Value(Rational),
}

impl FromStr for KappaArg {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("symbolic") {
            return Ok(KappaArg::Symbolic);
        }
        Ok(KappaArg::Value(parse_rational(s).map_err(|e| anyhow!("--kappa {s:?}: {e}"))?))
    }
}

impl fmt::Display for KappaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaArg::Symbolic => f.write_str("symbolic"),
            KappaArg::Value(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `kind:n:delta`, e.g. `o:2:1` adds 1 to the constant term of the odd `g_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub kind: GKind,
    pub n: u32,
    pub delta: Rational,
}

impl FromStr for Perturbation {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [kind, n, delta] = parts[..] else {
            bail!("expected kind:n:delta, got {s:?}");
        };
        let kind = match kind {
            "o" | "odd" => GKind::Odd,
            "e" | "even" => GKind::Even,
            _ => bail!("unknown g family {kind:?}"),
        };
        let n = n.parse().with_context(|| format!("bad index in {s:?}"))?;
        let delta = parse_rational(delta).map_err(|e| anyhow!("{e}"))?;
        Ok(Perturbation { kind, n, delta })
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n_vars: usize,
    pub kappa: KappaArg,
    pub max_degree: u32,
    pub perturb: Option<Perturbation>,
}

impl RunConfig {
    fn tables(&self) -> GTables {
        match &self.perturb {
            Some(p) => GTables::perturbed(p.kind, p.n, p.delta.clone()),
            None => GTables::new(),
        }
    }
}

fn symbolic_ctx(cfg: &RunConfig) -> Result<DunklContext<KappaScalar>> {
    Ok(DunklContext::symbolic(cfg.n_vars)?.with_degree_cap(cfg.max_degree.max(DEFAULT_DEGREE_CAP)))
}

fn rational_ctx(cfg: &RunConfig, k: &Rational) -> Result<DunklContext<Rational>> {
    Ok(DunklContext::specialized(cfg.n_vars, k.clone())?.with_degree_cap(cfg.max_degree.max(DEFAULT_DEGREE_CAP)))
}

fn work_items(max_degree: u32) -> Vec<(u32, Symmetry)> {
    (0..=max_degree)
        .flat_map(|n| [Symmetry::Plus, Symmetry::Minus].map(|s| (n, s)))
        .filter(|&(n, s)| !(n == 0 && s == Symmetry::Minus))
        .collect()
}

// ---------------------------------------------------------------- harmonics

/// One `h_n^sign`, or the reason it could not be built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HarmonicEntry {
    Ok(HarmonicJson),
    Failed { n: u32, sign: Symmetry, error: String },
}

impl HarmonicEntry {
    pub fn n(&self) -> u32 {
        match self {
            HarmonicEntry::Ok(h) => h.n,
            HarmonicEntry::Failed { n, .. } => *n,
        }
    }

    pub fn sign(&self) -> Symmetry {
        match self {
            HarmonicEntry::Ok(h) => h.sign,
            HarmonicEntry::Failed { sign, .. } => *sign,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicsTable {
    pub n_vars: usize,
    pub kappa: String,
    pub entries: Vec<HarmonicEntry>,
}

impl HarmonicsTable {
    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e, HarmonicEntry::Failed { .. })).count()
    }
}

pub fn harmonics_table(cfg: &RunConfig) -> Result<HarmonicsTable> {
    let entries = match &cfg.kappa {
        KappaArg::Symbolic => harmonic_entries(&symbolic_ctx(cfg)?, cfg),
        KappaArg::Value(k) => harmonic_entries(&rational_ctx(cfg, k)?, cfg),
    };
    Ok(HarmonicsTable { n_vars: cfg.n_vars, kappa: cfg.kappa.to_string(), entries })
}

fn harmonic_entries<F: Field>(ctx: &DunklContext<F>, cfg: &RunConfig) -> Vec<HarmonicEntry> {
    let tables = cfg.tables();
    work_items(cfg.max_degree)
        .into_par_iter()
        .map(|(n, sign)| match harmonic_with(ctx, &tables, n, sign) {
            Ok(h) => HarmonicEntry::Ok(h.to_json()),
            Err(e) => {
                log::warn!("h_{n}^{sign}: {e}");
                HarmonicEntry::Failed { n, sign, error: e.to_string() }
            }
        })
        .collect()
}

/// Checks every entry of a table against its own P-rep and basis
/// expansion, in the scalar type named by the table's kappa.
pub fn validate_harmonics(t: &HarmonicsTable) -> Result<()> {
    for e in &t.entries {
        if let HarmonicEntry::Ok(h) = e {
            if t.kappa == "symbolic" {
                planar_dunkl::planar::PlanarPoly::<KappaScalar>::from_json(h)?;
            } else {
                planar_dunkl::planar::PlanarPoly::<Rational>::from_json(h)?;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct HarmonicCsvRow {
    n_vars: usize,
    kappa: String,
    n: u32,
    sign: Symmetry,
    form: String,
    index: String,
    value: String,
}

fn exp_text(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn harmonics_to_csv(t: &HarmonicsTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in &t.entries {
        let row = |form: &str, index: String, value: String| HarmonicCsvRow {
            n_vars: t.n_vars,
            kappa: t.kappa.clone(),
            n: e.n(),
            sign: e.sign(),
            form: form.to_string(),
            index,
            value,
        };
        match e {
            HarmonicEntry::Ok(h) => {
                for b in &h.basis {
                    w.serialize(row("basis", b.j.to_string(), b.coeff.clone()))?;
                }
                for term in &h.p_rep.terms {
                    w.serialize(row("p_rep", exp_text(&term.exp), term.coeff.clone()))?;
                }
            }
            HarmonicEntry::Failed { error, .. } => w.serialize(row("error", String::new(), error.clone()))?,
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn harmonics_from_csv(s: &str) -> Result<HarmonicsTable> {
    let mut r = csv::Reader::from_reader(s.as_bytes());
    let mut n_vars = None;
    let mut kappa = None;
    let mut entries: Vec<HarmonicEntry> = Vec::new();
    for row in r.deserialize() {
        let row: HarmonicCsvRow = row?;
        n_vars.get_or_insert(row.n_vars);
        kappa.get_or_insert(row.kappa.clone());
        let fresh = entries.last().is_none_or(|e| (e.n(), e.sign()) != (row.n, row.sign));
        if fresh {
            entries.push(if row.form == "error" {
                HarmonicEntry::Failed { n: row.n, sign: row.sign, error: String::new() }
            } else {
                HarmonicEntry::Ok(HarmonicJson {
                    n: row.n,
                    sign: row.sign,
                    basis: Vec::new(),
                    p_rep: PolyJson { rep: Rep::P, nvars: row.n_vars, terms: Vec::new() },
                })
            });
        }
        match (entries.last_mut().expect("just pushed"), row.form.as_str()) {
            (HarmonicEntry::Ok(h), "basis") => h.basis.push(planar_dunkl::planar::BasisTermJson {
                j: row.index.parse()?,
                coeff: row.value,
            }),
            (HarmonicEntry::Ok(h), "p_rep") => {
                let exp = row.index.split(' ').map(str::parse).collect::<Result<Vec<u32>, _>>()?;
                h.p_rep.terms.push(TermJson { exp, coeff: row.value });
            }
            (HarmonicEntry::Failed { error, .. }, "error") => *error = row.value,
            (_, form) => bail!("unexpected {form:?} row for h_{}^{}", row.n, row.sign),
        }
    }
    Ok(HarmonicsTable {
        n_vars: n_vars.ok_or_else(|| anyhow!("empty table"))?,
        kappa: kappa.unwrap_or_default(),
        entries,
    })
}

pub fn harmonics_to_text(t: &HarmonicsTable) -> Result<String> {
    use std::fmt::Write;
    let mut out = String::new();
    for e in &t.entries {
        match e {
            HarmonicEntry::Ok(h) => {
                let terms: Vec<String> = h.basis.iter().map(|b| format!("[{}] {}", b.j, b.coeff)).collect();
                writeln!(out, "h_{}^{} = {}", h.n, h.sign, terms.join(" + "))?;
            }
            HarmonicEntry::Failed { n, sign, error } => writeln!(out, "h_{n}^{sign}: {error}")?,
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- constants

/// A structure-constant row, or the reason it could not be computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsEntry {
    pub n_vars: usize,
    pub n: u32,
    pub sign: Symmetry,
    pub norm_kappa: String,
    pub sphere_factor: String,
    pub norm_sphere: String,
    pub error: String,
}

impl From<ConstantsRow> for ConstantsEntry {
    fn from(r: ConstantsRow) -> Self {
        ConstantsEntry {
            n_vars: r.nvars,
            n: r.n,
            sign: r.sign,
            norm_kappa: r.norm_kappa,
            sphere_factor: r.sphere_factor,
            norm_sphere: r.norm_sphere,
            error: String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsTable {
    pub n_vars: usize,
    pub kappa: String,
    pub rows: Vec<ConstantsEntry>,
}

impl ConstantsTable {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.error.is_empty()).count()
    }
}

pub fn constants_table(cfg: &RunConfig) -> Result<ConstantsTable> {
    let rows = match &cfg.kappa {
        KappaArg::Symbolic => constants_rows(&symbolic_ctx(cfg)?, cfg),
        KappaArg::Value(k) => constants_rows(&rational_ctx(cfg, k)?, cfg),
    };
    Ok(ConstantsTable { n_vars: cfg.n_vars, kappa: cfg.kappa.to_string(), rows })
}

fn constants_rows<F: Field>(ctx: &DunklContext<F>, cfg: &RunConfig) -> Vec<ConstantsEntry> {
    work_items(cfg.max_degree)
        .into_par_iter()
        .map(|(n, sign)| match ConstantsRow::compute(ctx, n, sign) {
            Ok(r) => r.into(),
            Err(e) => {
                log::warn!("constants for h_{n}^{sign}: {e}");
                ConstantsEntry {
                    n_vars: ctx.nvars(),
                    n,
                    sign,
                    norm_kappa: String::new(),
                    sphere_factor: String::new(),
                    norm_sphere: String::new(),
                    error: e.to_string(),
                }
            }
        })
        .collect()
}

pub fn constants_to_csv(t: &ConstantsTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &t.rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Parses rows written by [`constants_to_csv`]; kappa is not part of the
/// rows and has to be supplied.
pub fn constants_from_csv(s: &str, kappa: &str) -> Result<ConstantsTable> {
    let mut r = csv::Reader::from_reader(s.as_bytes());
    let rows = r.deserialize().collect::<Result<Vec<ConstantsEntry>, _>>()?;
    let n_vars = rows.first().map(|r| r.n_vars).ok_or_else(|| anyhow!("empty table"))?;
    Ok(ConstantsTable { n_vars, kappa: kappa.to_string(), rows })
}

pub fn constants_to_text(t: &ConstantsTable) -> Result<String> {
    use std::fmt::Write;
    let mut out = String::new();
    for r in &t.rows {
        if r.error.is_empty() {
            writeln!(
                out,
                "N={} n={} {}: <h,h>_kappa = {}; factor = {}; <h,h>_S = {}",
                r.n_vars, r.n, r.sign, r.norm_kappa, r.sphere_factor, r.norm_sphere
            )?;
        } else {
            writeln!(out, "N={} n={} {}: {}", r.n_vars, r.n, r.sign, r.error)?;
        }
    }
    Ok(out)
}

/// Parses a scalar string emitted under `kappa` and specializes it to a
/// rational at `at` (identity for already-rational output).
pub fn specialize_text(text: &str, kappa: &str, at: &Rational) -> Result<Rational> {
    if kappa == "symbolic" {
        Ok(KappaScalar::parse_text(text)?.specialize(at)?)
    } else {
        Ok(Rational::parse_text(text)?)
    }
}

// ------------------------------------------------------------------- verify

pub fn verify(cfg: &RunConfig, suites: &[Suite]) -> Result<Vec<CheckOutcome>> {
    let opts = VerifyOptions { max_degree: cfg.max_degree, tables: cfg.tables(), ..Default::default() };
    Ok(match &cfg.kappa {
        KappaArg::Symbolic => run_all(&symbolic_ctx(cfg)?, suites, &opts),
        KappaArg::Value(k) => run_all(&rational_ctx(cfg, k)?, suites, &opts),
    })
}

fn run_all<F: Field>(ctx: &DunklContext<F>, suites: &[Suite], opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let parts: Vec<Vec<CheckOutcome>> = suites.par_iter().map(|&s| run_suite(ctx, s, opts)).collect();
    parts.into_iter().flatten().collect()
}

/// `all` or a comma-separated list of suite names.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let suite: Suite = part.parse()?;
        if !out.contains(&suite) {
            out.push(suite);
        }
    }
    if out.is_empty() {
        bail!("no suite selected");
    }
    Ok(out)
}

#[derive(Serialize)]
struct OutcomeCsvRow<'a> {
    suite: &'a str,
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

pub fn outcomes_to_csv(out: &[CheckOutcome]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for o in out {
        w.serialize(OutcomeCsvRow {
            suite: o.suite,
            name: &o.name,
            passed: o.passed,
            detail: o.detail.as_deref().unwrap_or(""),
        })?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn outcomes_to_text(out: &[CheckOutcome]) -> String {
    let passed = out.iter().filter(|o| o.passed).count();
    let mut s: String = out.iter().map(|o| format!("{o}\n")).collect();
    s.push_str(&format!("{passed}/{} checks passed\n", out.len()));
    s
}
