//! Batch driver: runs the full pipeline per `(a, b)`, sweeps ranges in
//! parallel, compares against the oracles and renders reports.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{brute_generators, brute_thue, SearchBox};
use crate::pib::{assemble_generators, closed_form_generator, verify_index_one, GeneratorCoeffs};
use crate::polyfield::{embeddings, field_params, high_precision_embeddings, FieldParams, DEFAULT_DIGITS, MAX_DIGITS};
use crate::scalar::{BigFixed, Real};
use crate::thue::{enumerate_solutions, enumeration_box, initial_bound, reduced_bound, ReductionStep, ThueSolution};

/// Environment variable overriding the default working precision.
pub const DIGITS_ENV: &str = "OCTIC_DIGITS";
/// Precision of the table used to locate candidate `P` values in large boxes.
pub const ENUMERATION_DIGITS: u32 = 60;
/// Boxes up to this half-width are searched in double precision: there the
/// error in `P` stays far below the 1/2 needed for correct rounding.
pub const F64_ENUMERATION_LIMIT: i64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub a_min: i64,
    pub a_max: i64,
    pub b_min: i64,
    pub b_max: i64,
    /// Generators with coefficients up to `10^coeff_bound_exponent` are found.
    pub coeff_bound_exponent: u32,
    pub digits: u32,
    /// Worker threads; 0 picks the number of CPUs.
    pub jobs: usize,
    pub output_format: OutputFormat,
    pub oracle_radius: Option<u32>,
    /// Record wall-clock time per instance (off gives reproducible output).
    pub timings: bool,
}

/// Default precision, honouring [`DIGITS_ENV`].
pub fn default_digits() -> u32 {
    std::env::var(DIGITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DIGITS)
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            a_min: -25,
            a_max: 25,
            b_min: 2,
            b_max: 25,
            coeff_bound_exponent: 200,
            digits: default_digits(),
            jobs: 0,
            output_format: OutputFormat::Table,
            oracle_radius: None,
            timings: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.a_min > self.a_max || self.b_min > self.b_max {
            return Err(Error::Config("empty (a, b) range".into()));
        }
        if self.digits < 50 || self.digits > MAX_DIGITS {
            return Err(Error::Config(format!("digits must lie in 50..={MAX_DIGITS}")));
        }
        if self.coeff_bound_exponent < 2 {
            return Err(Error::Config("coefficient bound exponent must be at least 2".into()));
        }
        if self.oracle_radius == Some(0) {
            return Err(Error::Config("oracle radius must be at least 1".into()));
        }
        Ok(())
    }

    pub fn coeff_bound(&self) -> BigInt {
        BigInt::from(10).pow(self.coeff_bound_exponent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solved,
    RealSubfield,
    NotSquarefree,
    Reducible,
    NotMonogenic,
    Indeterminate,
    VerificationFailed,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub i0: usize,
    #[serde(rename = "A0")]
    pub a0: String,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "newA0")]
    pub new_a0: String,
}

impl From<&ReductionStep> for StepRecord {
    fn from(s: &ReductionStep) -> Self {
        StepRecord {
            i0: s.i0,
            a0: s.a0.to_string(),
            h: s.h.to_string(),
            new_a0: s.new_a0.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub a: i64,
    pub b: i64,
    pub m: i64,
    pub status: Status,
    pub generators: Vec<GeneratorCoeffs>,
    pub theorem4_present: bool,
    pub reduction_steps: Vec<StepRecord>,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl InstanceResult {
    /// Solved, verified and containing the closed-form generator.
    pub fn passed(&self) -> bool {
        self.status != Status::Solved || self.theorem4_present
    }
}

/// Everything computed for one solved instance.
#[derive(Debug, Clone)]
pub struct Solved {
    pub params: FieldParams,
    pub digits: u32,
    pub initial_bound: BigInt,
    pub reduced_bound: BigInt,
    pub steps: Vec<ReductionStep>,
    pub solutions: Vec<ThueSolution>,
    pub generators: Vec<GeneratorCoeffs>,
    pub theorem4_present: bool,
}

fn solve_at(p: &FieldParams, digits: u32, bound: &BigInt) -> Result<Solved> {
    let e = high_precision_embeddings(p, digits)?;
    let prec = e.precision();
    let a_init = initial_bound::<BigFixed>(p, bound, prec).ceil_to_bigint();
    let (a_r, states) = reduced_bound(p, &e, &a_init)?;
    let solutions = search_solutions(p, &a_r, digits)?;
    if let Some(bad) = solutions.iter().find(|s| !s.verify(p)) {
        return Err(Error::Precondition(format!("solution failed exact re-check: {bad:?}")));
    }
    let generators = assemble_generators(p, &e, &solutions)?;
    for g in &generators {
        if !verify_index_one(g, p, &e)? {
            return Err(Error::Precondition(format!("generator {g} failed index certification")));
        }
    }
    let t4 = closed_form_generator(p).normalize();
    let theorem4_present = generators.contains(&t4) && verify_index_one(&t4, p, &e)?;
    Ok(Solved {
        params: p.clone(),
        digits,
        initial_bound: a_init,
        reduced_bound: a_r,
        steps: states.iter().flat_map(|s| s.history.iter().cloned()).collect(),
        solutions,
        generators,
        theorem4_present,
    })
}

/// Candidate search over the enumeration box, in `f64` when the box is small.
pub fn search_solutions(p: &FieldParams, a_r: &BigInt, digits: u32) -> Result<Vec<ThueSolution>> {
    let (a1, a2) = enumeration_box::<f64>(p, a_r, ());
    let limit = BigInt::from(F64_ENUMERATION_LIMIT);
    if a1 <= limit && a2 <= limit {
        enumerate_solutions(p, &embeddings::<f64>(p, ()), a_r)
    } else {
        let coarse = embeddings::<BigFixed>(p, BigFixed::bits_for_digits(ENUMERATION_DIGITS.min(digits)));
        enumerate_solutions(p, &coarse, a_r)
    }
}

/// Runs the pipeline on a monogenic instance, doubling precision when a
/// rounding step cannot be certified.
pub fn solve_params(p: &FieldParams, cfg: &RunConfig) -> Result<Solved> {
    let bound = cfg.coeff_bound();
    let mut digits = cfg.digits;
    loop {
        match solve_at(p, digits, &bound) {
            Err(Error::PrecisionExhausted(_)) if digits * 2 <= MAX_DIGITS => digits *= 2,
            other => return other,
        }
    }
}

/// Builds and solves `(a, b)`, propagating classification errors.
pub fn solve_instance(a: i64, b: i64, cfg: &RunConfig) -> Result<Solved> {
    let p = field_params(a, b)?;
    if !p.monogenic {
        return Err(Error::Precondition(format!("f is not monogenic for ({a}, {b})")));
    }
    solve_params(&p, cfg)
}

/// Single-instance entry point used by `sweep`; never fails.
pub fn solve_one(a: i64, b: i64, cfg: &RunConfig) -> InstanceResult {
    solve_one_detailed(a, b, cfg).0
}

/// As [`solve_one`], also returning the full computation when it succeeded.
pub fn solve_one_detailed(a: i64, b: i64, cfg: &RunConfig) -> (InstanceResult, Option<Solved>) {
    let start = Instant::now();
    let m = a * a - 4 * b + 8;
    let mut out = InstanceResult {
        a,
        b,
        m,
        status: Status::Error,
        generators: Vec::new(),
        theorem4_present: false,
        reduction_steps: Vec::new(),
        millis: 0,
        detail: None,
    };
    let mut solved = None;
    match field_params(a, b) {
        Err(e) => {
            out.status = match e {
                Error::RealSubfield(_) => Status::RealSubfield,
                Error::NotSquarefree(_) => Status::NotSquarefree,
                Error::Reducible { .. } => Status::Reducible,
                Error::IndeterminateMonogenity(_) => Status::Indeterminate,
                _ => Status::Error,
            };
            if out.status == Status::Error || out.status == Status::Indeterminate {
                out.detail = Some(e.to_string());
            }
        }
        Ok(p) if !p.monogenic => out.status = Status::NotMonogenic,
        Ok(p) => match solve_params(&p, cfg) {
            Ok(s) => {
                out.status = Status::Solved;
                out.generators = s.generators.clone();
                out.theorem4_present = s.theorem4_present;
                out.reduction_steps = s.steps.iter().map(StepRecord::from).collect();
                solved = Some(s);
            }
            Err(e) => {
                out.status = match e {
                    Error::Precondition(_) => Status::VerificationFailed,
                    _ => Status::Error,
                };
                out.detail = Some(e.to_string());
            }
        },
    }
    if cfg.timings {
        out.millis = start.elapsed().as_millis() as u64;
    }
    (out, solved)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub instances: Vec<InstanceResult>,
}

impl RunReport {
    pub fn solved(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|r| r.status == Status::Solved)
    }

    /// No failures and the closed-form generator in every solved instance.
    pub fn all_passed(&self) -> bool {
        self.instances
            .iter()
            .all(|r| r.passed() && !matches!(r.status, Status::Error | Status::VerificationFailed))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.instances).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let instances = serde_json::from_str(s).map_err(|e| Error::Config(format!("bad report JSON: {e}")))?;
        Ok(RunReport { instances })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Table => render_table(self),
        }
    }
}

fn render_table(report: &RunReport) -> String {
    let mut out = String::new();
    let rows: Vec<(String, Vec<String>)> = report
        .solved()
        .map(|r| {
            let head = format!("({},{},{}),", r.a, r.b, r.m);
            let gens = r
                .generators
                .iter()
                .filter(|g| **g != GeneratorCoeffs::TRIVIAL)
                .map(|g| g.to_string())
                .collect();
            (head, gens)
        })
        .collect();
    let width = rows.iter().map(|(h, _)| h.chars().count()).max().unwrap_or(0);
    for (head, gens) in &rows {
        for (k, chunk) in gens.chunks(3).enumerate() {
            let lead = if k == 0 { head.as_str() } else { "" };
            let _ = writeln!(out, "{lead:<width$}  {}", chunk.join(", "));
        }
        if gens.is_empty() {
            let _ = writeln!(out, "{head:<width$}");
        }
    }
    let _ = writeln!(out, "\nThe trivial generator [0, 1, 0, 0, 0, 0, 0] is omitted from every row.");
    let mut counts = std::collections::BTreeMap::new();
    for r in &report.instances {
        *counts.entry(format!("{:?}", r.status)).or_insert(0usize) += 1;
    }
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    let _ = writeln!(out, "{}", summary.join(", "));
    for r in &report.instances {
        if let Some(d) = &r.detail {
            let _ = writeln!(out, "({},{}): {:?}: {d}", r.a, r.b, r.status);
        }
        if r.status == Status::Solved && !r.theorem4_present {
            let _ = writeln!(out, "({},{}): closed-form generator missing", r.a, r.b);
        }
    }
    out
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

/// Every `(a, b)` in the configured ranges, ordered by `(a, b)`.
pub fn sweep(cfg: &RunConfig) -> Result<RunReport> {
    let instances = sweep_detailed(cfg)?.into_iter().map(|(r, _)| r).collect();
    Ok(RunReport { instances })
}

/// [`sweep`] keeping the Thue solutions and traces of solved instances.
pub fn sweep_detailed(cfg: &RunConfig) -> Result<Vec<(InstanceResult, Option<Solved>)>> {
    cfg.validate()?;
    let pairs: Vec<(i64, i64)> = (cfg.a_min..=cfg.a_max)
        .flat_map(|a| (cfg.b_min..=cfg.b_max).map(move |b| (a, b)))
        .collect();
    let mut out: Vec<(InstanceResult, Option<Solved>)> =
        pool(cfg.jobs)?.install(|| pairs.par_iter().map(|&(a, b)| solve_one_detailed(a, b, cfg)).collect());
    out.sort_by_key(|(r, _)| (r.a, r.b));
    Ok(out)
}

/// Differences between the solver and the brute-force searches in a box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub a: i64,
    pub b: i64,
    pub radius: u32,
    pub thue_oracle_count: usize,
    pub generator_oracle_count: usize,
    /// `[p₁, p₂, q₁, q₂]` found only by the oracle.
    pub thue_missing: Vec<[String; 4]>,
    /// Solver solutions inside the box the oracle did not find.
    pub thue_extra: Vec<[String; 4]>,
    pub generators_missing: Vec<GeneratorCoeffs>,
    pub generators_extra: Vec<GeneratorCoeffs>,
    pub pass: bool,
}

fn coord_strings(s: &ThueSolution) -> [String; 4] {
    s.coords().map(|c| c.to_string())
}

/// Oracle-vs-solver comparison over the box of the given radius. The
/// generator box is capped separately by the oracle.
pub fn verify(a: i64, b: i64, radius: u32, cfg: &RunConfig) -> Result<VerifyReport> {
    if radius == 0 {
        return Err(Error::Config("oracle radius must be at least 1".into()));
    }
    let solved = solve_instance(a, b, cfg)?;
    let p = &solved.params;
    let thue = brute_thue(p, radius)?;
    let gens = brute_generators(p, radius)?;
    let bx = SearchBox::thue(radius)?;
    let in_box = |s: &ThueSolution| {
        let c: Vec<i64> = s.coords().iter().map(|x| crate::thue::to_i64(x).unwrap_or(i64::MAX)).collect();
        bx.contains(&c)
    };
    let solver_thue: Vec<&ThueSolution> = solved.solutions.iter().filter(|s| in_box(s)).collect();
    let thue_missing: Vec<[String; 4]> = thue
        .iter()
        .filter(|s| !solver_thue.contains(s))
        .map(coord_strings)
        .collect();
    let thue_extra: Vec<[String; 4]> = solver_thue
        .iter()
        .filter(|s| !thue.contains(s))
        .map(|s| coord_strings(s))
        .collect();
    let r = i64::from(radius);
    let solver_gens: Vec<GeneratorCoeffs> = solved.generators.iter().filter(|g| g.max_abs() <= r).copied().collect();
    let generators_missing: Vec<GeneratorCoeffs> = gens.iter().filter(|g| !solver_gens.contains(g)).copied().collect();
    let generators_extra: Vec<GeneratorCoeffs> = solver_gens.iter().filter(|g| !gens.contains(g)).copied().collect();
    let pass = thue_missing.is_empty()
        && thue_extra.is_empty()
        && generators_missing.is_empty()
        && generators_extra.is_empty();
    Ok(VerifyReport {
        a,
        b,
        radius,
        thue_oracle_count: thue.len(),
        generator_oracle_count: gens.len(),
        thue_missing,
        thue_extra,
        generators_missing,
        generators_extra,
        pass,
    })
}
