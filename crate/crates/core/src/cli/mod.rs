//! Command-line surface: JSON inputs, the pipelines, a content-addressed
//! cache and deterministic reports.

mod report;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub use report::{Cocycle, Report, Section};

use crate::abgrp::{AbGroup, FeDiagram, FeDiagramSpec};
use crate::chain::{homology, ChainComplex, ComplexSpec};
use crate::cohom::{bredon_index, dualize, equivariant_operations};
use crate::diagcat::{FiniteGroup, GSpace, GSpaceSpec, GroupSpec, SpaceDiagram, SpaceDiagramSpec};
use crate::em::EmRegistry;
use crate::error::{Error, Result};
use crate::holan::{cofibrant_replacement, hocolim_effective, pointwise_finite, HolanOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    HomologyOfHocolim,
    CofibrantHomology,
    Cohomology,
    Bredon,
    EqOperations,
}

impl TaskKind {
    pub fn name(self) -> &'static str {
        match self {
            TaskKind::HomologyOfHocolim => "homology-of-hocolim",
            TaskKind::CofibrantHomology => "cofibrant-homology",
            TaskKind::Cohomology => "cohomology",
            TaskKind::Bredon => "bredon",
            TaskKind::EqOperations => "eq-operations",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Command-line arguments.
#[derive(Clone, Debug, Parser)]
#[command(name = "effhom", version, about = "Effective homology of diagrams of simplicial sets")]
pub struct TaskSpec {
    #[arg(long, value_enum)]
    pub task: TaskKind,
    /// JSON input files, merged key by key in order.
    #[arg(long = "input", required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for cached effective complexes and homology tables.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Run every construction audit and equivalence check up to the
    /// requested degree.
    #[arg(long)]
    pub strict_audit: bool,
    /// Worker threads; the report does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Include cocycle representatives in JSON cohomology reports.
    #[arg(long)]
    pub generators: bool,
}

/// The merged input document.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Input {
    diagram: Option<SpaceDiagramSpec>,
    gspace: Option<GSpaceSpec>,
    group: Option<GroupSpec>,
    coefficients: Option<FeDiagramSpec>,
    source: Option<FeDiagramSpec>,
    #[serde(default = "one")]
    em_degree: usize,
}

fn one() -> usize {
    1
}

fn missing(what: &str, task: TaskKind) -> Error {
    Error::Parse(format!("task {} needs \"{what}\" in the input", task.name()))
}

/// Reads and merges the input files; later files override earlier keys.
pub fn load_inputs(paths: &[PathBuf]) -> Result<Value> {
    let mut merged = serde_json::Map::new();
    for p in paths {
        let text = fs::read_to_string(p).map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?;
        match serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))? {
            Value::Object(m) => merged.extend(m),
            _ => return Err(Error::Parse(format!("{}: expected a JSON object", p.display()))),
        }
    }
    Ok(Value::Object(merged))
}

/// Content hash of the canonical inputs, task and degree.
pub fn cache_key(inputs: &Value, task: TaskKind, max_degree: usize) -> String {
    let canonical = serde_json::json!({
        "inputs": inputs,
        "task": task.name(),
        "max_degree": max_degree,
        "version": env!("CARGO_PKG_VERSION"),
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    report: Report,
    complexes: Vec<(String, ComplexSpec)>,
}

/// Homology of an effective complex through `max_degree`, one degree per
/// job.
fn homology_table(c: &ChainComplex, max_degree: usize) -> Result<Vec<AbGroup>> {
    (0..=max_degree as isize).into_par_iter().map(|n| Ok(homology(c, n)?.group().canonical())).collect()
}

fn holan_options(spec: &TaskSpec) -> HolanOptions {
    let mut opts = HolanOptions::default();
    if spec.strict_audit {
        opts.check_degree = opts.check_degree.max(spec.max_degree as isize + 1);
    }
    opts
}

fn space_diagram(input: &Input, spec: &TaskSpec) -> Result<SpaceDiagram> {
    let d = SpaceDiagram::from_spec(input.diagram.as_ref().ok_or_else(|| missing("diagram", spec.task))?)?;
    if spec.strict_audit {
        d.audit(spec.max_degree + 1)?;
        d.chains().audit(spec.max_degree as isize + 1)?;
    }
    Ok(d)
}

fn coefficients(spec: &Option<FeDiagramSpec>, cat: &crate::diagcat::FiniteCategory, what: &str, task: TaskKind) -> Result<FeDiagram> {
    FeDiagram::from_spec(cat, spec.as_ref().ok_or_else(|| missing(what, task))?)
}

/// Cohomology of a cofibrant replacement, with optional cocycles.
fn cohomology_section(
    x: &SpaceDiagram,
    pi: &FeDiagram,
    spec: &TaskSpec,
    label: &str,
) -> Result<Section> {
    let cof = cofibrant_replacement(x, &pointwise_finite(x)?, &holan_options(spec))?;
    let chains = &cof.holan.chains;
    if spec.strict_audit {
        chains.effective.audit(spec.max_degree as isize + 1)?;
    }
    let cochains = dualize(&chains.effective, pi, spec.max_degree)?;
    if spec.strict_audit {
        cochains.check_square_zero()?;
    }
    let groups: Vec<_> = (0..=spec.max_degree).into_par_iter().map(|n| cochains.cohomology(n)).collect::<Result<_>>()?;
    let mut section = Section::new(label, groups.iter().map(|g| g.group().canonical()).collect());
    if spec.generators {
        section.cocycles = Some(
            groups
                .iter()
                .enumerate()
                .map(|(n, g)| g.generators().iter().map(|x| Cocycle::new(cochains.cocycle_blocks(n, x))).collect())
                .collect(),
        );
    }
    Ok(section)
}

/// Runs a task without the cache.
pub fn compute(spec: &TaskSpec, inputs: &Value) -> Result<(Report, Vec<(String, ComplexSpec)>)> {
    let input: Input = serde_json::from_value(inputs.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let n = spec.max_degree;
    let mut complexes = Vec::new();
    let sections = match spec.task {
        TaskKind::HomologyOfHocolim => {
            let x = space_diagram(&input, spec)?;
            let (_, eq) = hocolim_effective(&x, &pointwise_finite(&x)?, &holan_options(spec))?;
            complexes.push(("hocolim".to_string(), ComplexSpec::from_complex(eq.effective(), n + 1)?));
            vec![Section::new("hocolim", homology_table(eq.effective(), n)?)]
        }
        TaskKind::CofibrantHomology => {
            let x = space_diagram(&input, spec)?;
            let cof = cofibrant_replacement(&x, &pointwise_finite(&x)?, &holan_options(spec))?;
            let cat = x.category().clone();
            let mut out = Vec::new();
            for j in 0..cat.n_objects() {
                let value = cof.holan.chains.effective.value_at(j);
                let label = cat.object_name(j).to_string();
                complexes.push((label.clone(), ComplexSpec::from_complex(&value, n + 1)?));
                out.push(Section::new(&label, homology_table(&value, n)?));
            }
            out
        }
        TaskKind::Cohomology => {
            let x = space_diagram(&input, spec)?;
            let pi = coefficients(&input.coefficients, x.category(), "coefficients", spec.task)?;
            vec![cohomology_section(&x, &pi, spec, "cohomology")?]
        }
        TaskKind::Bredon => {
            let g = GSpace::from_spec(input.gspace.as_ref().ok_or_else(|| missing("gspace", spec.task))?)?;
            let rho = coefficients(&input.coefficients, &bredon_index(g.group()), "coefficients", spec.task)?;
            let phi = g.fixed_points();
            if spec.strict_audit {
                phi.audit(n + 1)?;
            }
            vec![cohomology_section(&phi, &rho, spec, "bredon")?]
        }
        TaskKind::EqOperations => {
            let group = FiniteGroup::from_spec(input.group.as_ref().ok_or_else(|| missing("group", spec.task))?)?;
            let cat = bredon_index(&group);
            let pi = coefficients(&input.source, &cat, "source", spec.task)?;
            let rho = coefficients(&input.coefficients, &cat, "coefficients", spec.task)?;
            let ops = equivariant_operations(&EmRegistry::default(), &pi, &rho, input.em_degree, n, &holan_options(spec))?;
            vec![Section::new("reduced", ops.reduced), Section::new("unreduced", ops.unreduced)]
        }
    };
    Ok((Report { task: spec.task.name().to_string(), max_degree: n, sections }, complexes))
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// A cached report; homology tables are recomputed from the cached
/// effective complexes.
fn read_cache(dir: &Path, key: &str, spec: &TaskSpec) -> Option<Report> {
    let text = fs::read_to_string(cache_path(dir, key)).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    let mut report = entry.report;
    for (label, c) in &entry.complexes {
        let complex = c.to_complex(label).ok()?;
        let groups = homology_table(&complex, spec.max_degree).ok()?;
        let section = report.sections.iter_mut().find(|s| &s.label == label)?;
        section.groups = groups.iter().map(ToString::to_string).collect();
    }
    Some(report)
}

fn write_cache(dir: &Path, key: &str, report: &Report, complexes: Vec<(String, ComplexSpec)>) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let entry = CacheEntry { report: report.clone(), complexes };
    let tmp = dir.join(format!("{key}.tmp"));
    fs::write(&tmp, serde_json::to_string(&entry)?)?;
    fs::rename(tmp, cache_path(dir, key))
}

/// Runs a task, consulting and filling the cache. Cocycle reports bypass
/// the cache.
pub fn run(spec: &TaskSpec) -> Result<Report> {
    let inputs = load_inputs(&spec.inputs)?;
    let key = cache_key(&inputs, spec.task, spec.max_degree);
    let cache = spec.cache.as_deref().filter(|_| !spec.generators && !spec.strict_audit);
    if let Some(report) = cache.and_then(|dir| read_cache(dir, &key, spec)) {
        return Ok(report);
    }
    let (report, complexes) = compute(spec, &inputs)?;
    if let Some(dir) = cache {
        if let Err(e) = write_cache(dir, &key, &report, complexes) {
            eprintln!("effhom: cache not written: {e}");
        }
    }
    Ok(report)
}

/// Distinct exit codes per error kind.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::IllFormed(_) => 3,
        Error::Audit { .. } => 4,
        Error::Unsupported(_) => 5,
        Error::NonNilpotent { .. } => 6,
        _ => 1,
    }
}

/// The `effhom` entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let spec = match TaskSpec::try_parse_from(args) {
        Ok(s) => s,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let pool = match spec.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => Some(pool),
            Err(e) => {
                eprintln!("effhom: {e}");
                return 1;
            }
        },
        None => None,
    };
    let guarded = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| match &pool {
        Some(pool) => pool.install(|| run(&spec)),
        None => run(&spec),
    }));
    let result = match guarded {
        Ok(r) => r,
        // lazily evaluated series report non-nilpotency by panicking
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            return if msg.starts_with("perturbation series did not vanish") { 6 } else { 1 };
        }
    };
    match result {
        Ok(report) => {
            match spec.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            0
        }
        Err(e) => {
            eprintln!("effhom: {e}");
            exit_code(&e)
        }
    }
}
