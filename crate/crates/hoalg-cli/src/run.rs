//! Job orchestration: load, validate, build the complex weight by weight
//! and assemble the report.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use hoalg::algebras::{validate, validate_module, AlgebraPresentation, Kind, ModulePresentation, Violation};
use hoalg::bar::{bar_boundary, hochschild_boundary, hochschild_cohomology_coboundary};
use hoalg::chevalley::{chevalley_boundary, chevalley_cohomology_coboundary};
use hoalg::ginfty::Bicoalgebra;
use hoalg::harrison::{harrison_boundary, harrison_cohomology_coboundary};
use hoalg::koszul::{koszul_augmentation, koszul_boundary};
use hoalg::linalg::{rank, SparseMap};
use hoalg::selftest::{self, CheckOutcome};
use hoalg::Q;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::format::{load_algebra, load_module};
use crate::report::{aligned, BettiReport, Check, Row};

/// Environment variable holding the number of worker threads.
pub const THREADS_VAR: &str = "HOALG_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    Hochschild,
    Harrison,
    Chevalley,
    Koszul,
    Ginfty,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Hochschild => "hochschild",
            Theory::Harrison => "harrison",
            Theory::Chevalley => "chevalley",
            Theory::Koszul => "koszul",
            Theory::Ginfty => "ginfty",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Homology,
    Cohomology,
}

/// `regular`, `trivial`, or a module file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleChoice {
    Regular,
    Trivial,
    File(PathBuf),
}

impl ModuleChoice {
    pub fn parse(s: &str) -> Self {
        match s {
            "regular" => ModuleChoice::Regular,
            "trivial" => ModuleChoice::Trivial,
            path => ModuleChoice::File(path.into()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub theory: Theory,
    pub direction: Direction,
    pub max_weight: usize,
    pub input: PathBuf,
    pub module: Option<ModuleChoice>,
    pub width: usize,
}

/// Worker count from [`THREADS_VAR`], defaulting to the machine's.
pub fn width_from_env() -> Result<usize, CliError> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Validation(format!("{THREADS_VAR} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn pool(width: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(width)
        .build()
        .expect("thread pool")
}

fn violations(what: &str, v: &[Violation]) -> CliError {
    let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    CliError::Validation(format!("{what}: {}", list.join("; ")))
}

/// Loads an algebra file and checks every axiom of its kind.
pub fn load_validated(path: &Path) -> Result<AlgebraPresentation<Q>, CliError> {
    let a = load_algebra(path)?;
    let v = validate(&a)?;
    if !v.is_empty() {
        return Err(violations(&format!("{} presentation {}", a.kind.name(), path.display()), &v));
    }
    Ok(a)
}

pub fn resolve_module(a: &AlgebraPresentation<Q>, choice: &ModuleChoice) -> Result<(ModulePresentation<Q>, String), CliError> {
    let (m, label) = match choice {
        ModuleChoice::Regular => (ModulePresentation::regular(a), "regular".to_string()),
        ModuleChoice::Trivial => (ModulePresentation::trivial(0), "trivial".to_string()),
        ModuleChoice::File(p) => (load_module(p, a)?, p.display().to_string()),
    };
    let v = validate_module(a, &m)?;
    if !v.is_empty() {
        return Err(violations(&format!("module {label}"), &v));
    }
    Ok((m, label))
}

// the presentation the theory works with, or why it cannot
fn adapt(theory: Theory, a: &AlgebraPresentation<Q>) -> Result<AlgebraPresentation<Q>, CliError> {
    let ok = match theory {
        Theory::Hochschild => a.kind.has_product(),
        Theory::Harrison => matches!(a.kind, Kind::Commutative | Kind::Gerstenhaber),
        Theory::Chevalley | Theory::Koszul => a.kind == Kind::Lie,
        Theory::Ginfty => a.kind == Kind::Gerstenhaber,
    };
    if !ok {
        return Err(CliError::Validation(format!(
            "{} theory does not apply to a {} presentation",
            theory.name(),
            a.kind.name()
        )));
    }
    Ok(match (theory, a.kind) {
        (Theory::Hochschild | Theory::Harrison, Kind::Gerstenhaber) => a.forget_bracket(),
        _ => a.clone(),
    })
}

fn default_module(theory: Theory, direction: Direction) -> Option<ModuleChoice> {
    match (theory, direction) {
        (Theory::Hochschild | Theory::Harrison, Direction::Homology) | (Theory::Koszul, _) => None,
        (Theory::Chevalley, _) => Some(ModuleChoice::Trivial),
        _ => Some(ModuleChoice::Regular),
    }
}

/// Chain maps `maps[i] : C_{lo+i} → C_{lo+i-1}` or cochain maps
/// `maps[i] : C^{lo+i} → C^{lo+i+1}`.
struct Complex {
    lo: usize,
    maps: Vec<SparseMap<Q>>,
}

fn build_maps<F>(width: usize, weights: std::ops::RangeInclusive<usize>, f: F) -> Result<Vec<SparseMap<Q>>, CliError>
where
    F: Fn(usize) -> Result<SparseMap<Q>, CliError> + Sync,
{
    let ns: Vec<usize> = weights.collect();
    pool(width).install(|| {
        ns.par_iter()
            .map(|&n| f(n).map_err(|e| e.context(&format!("weight {n}"))))
            .collect()
    })
}

fn ranks(width: usize, maps: &[SparseMap<Q>]) -> Vec<usize> {
    pool(width).install(|| maps.par_iter().map(rank).collect())
}

fn composite_check(name: String, outer: &SparseMap<Q>, inner: &SparseMap<Q>) -> Check {
    match outer.compose(inner) {
        Ok(c) if c.is_zero() => Check::new(name, true),
        Ok(c) => Check::new(name, false).with_detail(format!("{} nonzero entries", c.nnz())),
        Err(e) => Check::new(name, false).with_detail(e.to_string()),
    }
}

fn homology_complex(job: &JobConfig, a: &AlgebraPresentation<Q>, m: Option<&ModulePresentation<Q>>) -> Result<Complex, CliError> {
    let n = job.max_weight;
    let w = job.width;
    Ok(match (job.theory, m) {
        (Theory::Hochschild, None) => Complex { lo: 0, maps: build_maps(w, 0..=n + 1, |k| Ok(bar_boundary(a, k)?))? },
        (Theory::Hochschild, Some(m)) => Complex { lo: 0, maps: build_maps(w, 0..=n + 1, |k| Ok(hochschild_boundary(a, m, k)?))? },
        (Theory::Harrison, m) => {
            let lo = if m.is_some() { 0 } else { 1 };
            Complex { lo, maps: build_maps(w, lo..=n + 1, |k| Ok(harrison_boundary(a, m, k)?))? }
        }
        (Theory::Chevalley, m) => Complex { lo: 0, maps: build_maps(w, 0..=n + 1, |k| Ok(chevalley_boundary(a, m, k)?))? },
        (Theory::Ginfty, Some(m)) => {
            let b = Bicoalgebra::new(a, Some(m), n + 1)?;
            Complex { lo: 0, maps: build_maps(w, 0..=n + 1, |k| Ok(b.chevalley_harrison_boundary(k)?))? }
        }
        (Theory::Ginfty, None) => unreachable!("ginfty always has a module"),
        (Theory::Koszul, _) => unreachable!("handled by the resolution runner"),
    })
}

fn cohomology_complex(job: &JobConfig, a: &AlgebraPresentation<Q>, m: &ModulePresentation<Q>) -> Result<Complex, CliError> {
    let n = job.max_weight;
    let w = job.width;
    Ok(match job.theory {
        Theory::Hochschild => Complex { lo: 0, maps: build_maps(w, 0..=n, |k| Ok(hochschild_cohomology_coboundary(a, m, k)?))? },
        Theory::Harrison => Complex { lo: 0, maps: build_maps(w, 0..=n, |k| Ok(harrison_cohomology_coboundary(a, m, k)?))? },
        Theory::Chevalley => Complex { lo: 0, maps: build_maps(w, 0..=n, |k| Ok(chevalley_cohomology_coboundary(a, m, k)?))? },
        Theory::Ginfty => {
            let b = Bicoalgebra::for_cochains(a, m, n + 1)?;
            Complex { lo: 1, maps: build_maps(w, 1..=n, |k| Ok(b.coboundary(k)?))? }
        }
        Theory::Koszul => {
            return Err(CliError::Validation("the koszul theory computes homology only".into()));
        }
    })
}

/// `homology` and `cohomology`.
pub fn run(job: &JobConfig) -> Result<BettiReport, CliError> {
    if job.max_weight == 0 {
        return Err(CliError::Validation("max weight must be at least 1".into()));
    }
    let a = adapt(job.theory, &load_validated(&job.input)?)?;
    if job.theory == Theory::Koszul {
        if job.module.is_some() {
            return Err(CliError::Validation("the koszul theory takes no module".into()));
        }
        if job.direction == Direction::Cohomology {
            return Err(CliError::Validation("the koszul theory computes homology only".into()));
        }
        return koszul_report(&a, job.max_weight, &job.input.display().to_string(), "homology", job.width);
    }
    let choice = job.module.clone().or_else(|| default_module(job.theory, job.direction));
    let module = choice.map(|c| resolve_module(&a, &c)).transpose()?;
    let label = module.as_ref().map_or("none".to_string(), |(_, l)| l.clone());
    let m = module.as_ref().map(|(m, _)| m);
    let input = job.input.display().to_string();
    let n = job.max_weight;
    let context = |e: CliError| e.context(job.theory.name());
    match job.direction {
        Direction::Homology => {
            let mut report = BettiReport::new("homology", job.theory.name(), &input, &label, n);
            let c = homology_complex(job, &a, m).map_err(context)?;
            let r = ranks(job.width, &c.maps);
            for k in c.lo..=n {
                let i = k - c.lo;
                let (cols, out, inn) = (c.maps[i].cols(), r[i], r[i + 1]);
                report.rows.push(Row {
                    weight: k,
                    chain_dim: cols,
                    rank_in: inn,
                    rank_out: out,
                    dim: cols.saturating_sub(out + inn),
                });
                report.push_check(composite_check(format!("d_{k} d_{} = 0", k + 1), &c.maps[i], &c.maps[i + 1]));
            }
            Ok(report)
        }
        Direction::Cohomology => {
            let m = m.expect("cohomology always has a module");
            let mut report = BettiReport::new("cohomology", job.theory.name(), &input, &label, n);
            let c = cohomology_complex(job, &a, m).map_err(context)?;
            let r = ranks(job.width, &c.maps);
            for k in c.lo..=n {
                let i = k - c.lo;
                let out = r[i];
                let inn = if i == 0 { 0 } else { r[i - 1] };
                let cols = c.maps[i].cols();
                report.rows.push(Row {
                    weight: k,
                    chain_dim: cols,
                    rank_in: inn,
                    rank_out: out,
                    dim: cols.saturating_sub(out + inn),
                });
                if i > 0 {
                    report.push_check(composite_check(format!("d^{} d^{k} = 0", k + 1), &c.maps[i], &c.maps[i - 1]));
                }
            }
            Ok(report)
        }
    }
}

/// The ground field slot, then `F_p(C)_0 … F_p(C)_{p+1}`; exactness
/// everywhere means the resolution is verified up to `p`.
pub fn koszul_report(g: &AlgebraPresentation<Q>, p: usize, input: &str, command: &str, width: usize) -> Result<BettiReport, CliError> {
    let g = adapt(Theory::Koszul, g)?;
    let aug = koszul_augmentation(&g, p)?;
    let mut maps = vec![aug];
    maps.extend(build_maps(width, 1..=p + 1, |n| Ok(koszul_boundary(&g, p, n)?)).map_err(|e| e.context("koszul"))?);
    maps.push(SparseMap::zeros(maps[p + 1].cols(), 0));
    let r = ranks(width, &maps);
    let mut report = BettiReport::new(command, "koszul", input, "none", p);
    let ground_defect = 1 - r[0].min(1);
    report.push_check(Check::new("augmentation onto the ground field", ground_defect == 0));
    for n in 0..=p + 1 {
        let cols = maps[n].cols();
        report.rows.push(Row {
            weight: n,
            chain_dim: cols,
            rank_in: r[n + 1],
            rank_out: r[n],
            dim: cols.saturating_sub(r[n] + r[n + 1]),
        });
        let name = if n == 0 { "eps d_1 = 0".to_string() } else { format!("d_{n} d_{} = 0", n + 1) };
        report.push_check(composite_check(name, &maps[n], &maps[n + 1]));
    }
    let exact = ground_defect == 0 && report.rows.iter().all(|row| row.dim == 0);
    report.push_check(Check::new(format!("exact in every degree for p <= {p}"), exact));
    report.summary = Some(if exact {
        format!("resolution verified in valid range (p <= {p})")
    } else {
        format!("resolution NOT exact for p <= {p}")
    });
    Ok(report)
}

/// Structure laws of the G∞ coalgebra, the chain boundary and the cochain
/// coboundary, all up to `max_weight`.
pub fn ginfty_verify(input: &Path, module: Option<&ModuleChoice>, max_weight: usize) -> Result<BettiReport, CliError> {
    if max_weight == 0 {
        return Err(CliError::Validation("max weight must be at least 1".into()));
    }
    let g = adapt(Theory::Ginfty, &load_validated(input)?)?;
    let (m, label) = resolve_module(&g, module.unwrap_or(&ModuleChoice::Regular))?;
    let b = Bicoalgebra::new(&g, Some(&m), max_weight).map_err(|e| CliError::from(e).context("ginfty"))?;
    let mut report = BettiReport::new("verify", "ginfty", &input.display().to_string(), &label, max_weight);
    report.push_check(Check::new("bracket descends to Harrison classes", true));
    for (name, ok) in b.laws(max_weight).entries() {
        report.push_check(Check::new(format!("law: {name}"), ok));
    }
    let d: Vec<SparseMap<Q>> = (1..=max_weight).map(|n| b.chevalley_harrison_boundary(n)).collect::<Result<_, _>>()?;
    for n in 1..max_weight {
        report.push_check(composite_check(format!("d_{n} d_{} = 0", n + 1), &d[n - 1], &d[n]));
    }
    let cod: Vec<SparseMap<Q>> = (1..max_weight).map(|n| b.coboundary(n)).collect::<Result<_, _>>()?;
    for n in 2..max_weight {
        report.push_check(composite_check(format!("d^{} d^{} = 0", n + 1, n), &cod[n - 1], &cod[n - 2]));
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestEntry {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub tool: String,
    pub seed: u64,
    pub results: Vec<SelftestEntry>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 4]> = self
            .results
            .iter()
            .map(|r| [r.id.to_string(), r.name.clone(), if r.passed { "PASS" } else { "FAIL" }.into(), r.detail.clone()])
            .collect();
        let mut out = format!("selftest, seed {}\n", self.seed);
        out.push_str(&aligned(&["id", "criterion", "verdict", "detail"], &rows));
        out.push_str(if self.passed { "all criteria passed\n" } else { "some criteria FAILED\n" });
        out
    }
}

pub fn selftest(seed: u64, width: usize) -> SelftestReport {
    let ids: Vec<usize> = (1..=selftest::CRITERIA.len()).collect();
    let outcomes: Vec<CheckOutcome> = pool(width).install(|| ids.par_iter().map(|&id| selftest::run(id, seed)).collect());
    let results: Vec<SelftestEntry> = outcomes
        .into_iter()
        .map(|o| SelftestEntry { id: o.id, name: o.name.into(), passed: o.passed, detail: o.detail })
        .collect();
    SelftestReport {
        tool: format!("hoalg {}", env!("CARGO_PKG_VERSION")),
        seed,
        passed: results.iter().all(|r| r.passed),
        results,
    }
}
