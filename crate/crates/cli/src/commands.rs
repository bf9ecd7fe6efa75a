use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::ValueEnum;
use hcv_core::identities::{
    cancellation_check, catalan_alternating_sum, composition_sum, composition_sum_closed_form, compositions,
    expression_via_b_check, COMPOSITION_LIMIT,
};
use hcv_core::io::{FormsFile, PolynomialFile};
use hcv_core::reduction;
use hcv_core::symfun::{newton_check, newton_coefficient};
use hcv_core::vanishing::{min_degree_with_witness, multiplicity_profile_with_limit, MinDegreeOutcome, MinDegreeQuery};
use hcv_core::witness::{self, cover_lower_bound};
use hcv_core::{Error, Field, FieldDescriptor, Multiplicity, OriginCondition, PrimeField, Rationals, SparsePolynomial};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_INVALID: u8 = 64;
pub const EXIT_CHARACTERISTIC: u8 = 65;

/// Largest weight swept by the Newton suite; the brute-force side expands
/// products of up to `weight` power sums in `weight` variables.
const NEWTON_LIMIT: u32 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Infeasible,
}

#[derive(Debug)]
pub struct Report {
    status: Status,
    payload: Map<String, Value>,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut payload = Map::new();
        payload.insert("command".into(), command.into());
        Report { status: Status::Ok, payload }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.payload.insert(key.into(), value.into());
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type Outcome = Result<Report, CliError>;

pub fn finish(outcome: Outcome) -> ExitCode {
    let (doc, code) = match outcome {
        Ok(mut report) => {
            let (name, code) = match report.status {
                Status::Ok => ("ok", 0),
                Status::Failed => ("failed", EXIT_FAILED),
                Status::Infeasible => ("infeasible", EXIT_INFEASIBLE),
            };
            report.set("status", name);
            (Value::Object(report.payload), code)
        }
        Err(e) => {
            let (name, code, msg) = match e {
                CliError::Core(e @ Error::Characteristic { .. }) => ("characteristic_error", EXIT_CHARACTERISTIC, e.to_string()),
                CliError::Core(e) => ("invalid_input", EXIT_INVALID, e.to_string()),
                CliError::Input(msg) => ("invalid_input", EXIT_INVALID, msg),
            };
            eprintln!("hcv: {msg}");
            (json!({ "status": name, "error": msg }), code)
        }
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    ExitCode::from(code)
}

macro_rules! with_field {
    ($desc:expr, |$f:ident| $body:expr) => {
        match $desc {
            FieldDescriptor::Rational => {
                let $f = Rationals;
                $body
            }
            FieldDescriptor::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn poly_value<F: Field>(p: &SparsePolynomial<F>) -> Value {
    serde_json::to_value(PolynomialFile::from_polynomial(p)).expect("polynomial serializes")
}

fn multiplicity_value(m: Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(v) => v.into(),
        Multiplicity::Infinite => "inf".into(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit_polynomial<F: Field>(report: &mut Report, p: &SparsePolynomial<F>, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let text = PolynomialFile::from_polynomial(p).to_json() + "\n";
            fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            report.set("out", path.display().to_string());
        }
        None => {
            report.set("polynomial", poly_value(p));
        }
    }
    Ok(())
}

pub fn mindeg(
    n: usize,
    k: u32,
    origin: OriginCondition,
    field: FieldDescriptor,
    max_degree: Option<u32>,
    limit: usize,
) -> Outcome {
    let query = MinDegreeQuery::new(n, k, origin, max_degree.unwrap_or(n as u32 + 2 * k)).with_enumeration_limit(limit);
    let mut report = Report::new("mindeg");
    report
        .set("n", n)
        .set("k", k)
        .set("origin", origin.to_string())
        .set("field", field.to_string())
        .set("max_degree", query.max_degree);
    with_field!(field, |f| match min_degree_with_witness(&f, query)? {
        MinDegreeOutcome::Found { degree, witness } => {
            report.set("degree", degree);
            if let Some(w) = witness {
                report.set("witness", poly_value(&w));
            }
        }
        MinDegreeOutcome::Infeasible { .. } => report.status = Status::Infeasible,
    });
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Ell(u32),
    ExactKMinus1,
    Gf2Counterexample,
}

pub fn witness(n: usize, k: Option<u32>, kind: WitnessKind, out: Option<&Path>, limit: usize) -> Outcome {
    let mut report = Report::new("witness");
    report.set("n", n);
    match kind {
        WitnessKind::Gf2Counterexample => {
            report.set("kind", "gf2-counterexample");
            let p = witness::f2_counterexample(n)?;
            summarize_witness(&mut report, &p, out, limit)?;
        }
        WitnessKind::Ell(ell) => {
            let k = k.ok_or_else(|| CliError::Input("--k is required".into()))?;
            report.set("k", k).set("kind", "ell").set("ell", ell);
            let p = witness::witness_ell(&Rationals, n, k, ell)?;
            summarize_witness(&mut report, &p, out, limit)?;
        }
        WitnessKind::ExactKMinus1 => {
            let k = k.ok_or_else(|| CliError::Input("--k is required".into()))?;
            report.set("k", k).set("kind", "exact-kminus1");
            let p = witness::witness_exact_kminus1(&Rationals, n, k)?;
            summarize_witness(&mut report, &p, out, limit)?;
        }
    }
    Ok(report)
}

fn summarize_witness<F: Field>(report: &mut Report, p: &SparsePolynomial<F>, out: Option<&Path>, limit: usize) -> Result<(), CliError> {
    let profile = multiplicity_profile_with_limit(p, limit)?;
    report
        .set("field", p.field().descriptor().to_string())
        .set("degree", p.degree())
        .set("terms", p.num_terms())
        .set("origin_multiplicity", multiplicity_value(profile.origin()))
        .set("min_multiplicity_off_origin", profile.min_off_origin().map(multiplicity_value));
    emit_polynomial(report, p, out)
}

/// Lower degree bound for polynomials with multiplicity `>= k` off the
/// origin and origin multiplicity `ell` (or nonzero value when `None`),
/// where it is known in characteristic zero.
fn degree_lower_bound(n: usize, k: u32, ell: Option<u32>) -> Option<u32> {
    let n = n as u32;
    match ell {
        Some(l) if l + 1 == k => Some(n + 2 * k - 2),
        _ => cover_lower_bound(n as usize, k).map(|b| b as u32),
    }
}

pub fn verify(path: &Path, k: u32, ell: Option<u32>, limit: usize) -> Outcome {
    if k == 0 {
        return Err(CliError::Input("--k must be at least 1".into()));
    }
    if ell.is_some_and(|l| l >= k) {
        return Err(CliError::Input("--ell must be below --k".into()));
    }
    let file = PolynomialFile::from_json(&read(path)?)?;
    let mut report = Report::new("verify");
    with_field!(file.field, |f| verify_in(&mut report, &file.to_polynomial(&f)?, k, ell, limit))?;
    Ok(report)
}

fn verify_in<F: Field>(report: &mut Report, p: &SparsePolynomial<F>, k: u32, ell: Option<u32>, limit: usize) -> Result<(), CliError> {
    let profile = multiplicity_profile_with_limit(p, limit)?;
    let n = p.nvars();
    let origin = profile.origin();
    let origin_ok = origin == Multiplicity::Finite(ell.unwrap_or(0));
    let off_ok = profile.vanishes_off_origin(k);
    let mut reasons = Vec::new();
    if !origin_ok {
        reasons.push(match ell {
            None => format!("value at the origin is zero (multiplicity {origin})"),
            Some(l) => format!("origin multiplicity is {origin}, not {l}"),
        });
    }
    if !off_ok {
        reasons.push(format!(
            "some nonzero point has multiplicity below {k} (minimum {})",
            profile.min_off_origin().map_or("none".into(), |m| m.to_string())
        ));
    }
    let bound = degree_lower_bound(n, k, ell);
    let entries: Vec<Value> = profile
        .entries()
        .iter()
        .map(|(a, m)| json!({ "point": a.to_string(), "multiplicity": multiplicity_value(*m) }))
        .collect();
    report
        .set("field", p.field().descriptor().to_string())
        .set("n", n)
        .set("k", k)
        .set("ell", ell)
        .set("degree", p.degree())
        .set("profile", entries)
        .set("origin_multiplicity", multiplicity_value(origin))
        .set("min_multiplicity_off_origin", profile.min_off_origin().map(multiplicity_value))
        .set("degree_lower_bound", bound)
        .set(
            "meets_degree_lower_bound",
            bound.map(|b| p.degree().is_some_and(|d| d >= b)),
        )
        .set("verdict", if reasons.is_empty() { "PASS" } else { "FAIL" })
        .set("reasons", reasons);
    Ok(())
}

pub fn reduce(path: &Path, k: u32, out: Option<&Path>) -> Outcome {
    let file = PolynomialFile::from_json(&read(path)?)?;
    let mut report = Report::new("reduce");
    with_field!(file.field, |f| {
        let p = file.to_polynomial(&f)?;
        let r = reduction::reduce(&p, k)?;
        report
            .set("field", file.field.to_string())
            .set("k", k)
            .set("steps_taken", r.steps_taken)
            .set("degree", r.reduced.degree());
        emit_polynomial(&mut report, &r.reduced, out)?;
    });
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Catalan,
    Newton,
    Composition,
    ViaB,
    Cancellation,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Catalan => "catalan",
            Suite::Newton => "newton",
            Suite::Composition => "composition",
            Suite::ViaB => "via-b",
            Suite::Cancellation => "cancellation",
        }
    }
}

/// Worker pool capped by `HCV_THREADS` when set.
fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("HCV_THREADS") {
        let threads: usize = v
            .parse()
            .ok()
            .filter(|t| *t > 0)
            .ok_or_else(|| CliError::Input(format!("HCV_THREADS must be a positive integer, got `{v}`")))?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| CliError::Input(e.to_string()))
}

type Instance = Result<(Value, bool), Error>;

fn sweep<T: Sync>(params: &[T], run: impl Fn(&T) -> Instance + Sync + Send) -> Result<Vec<(Value, bool)>, CliError> {
    let results: Vec<Instance> = pool()?.install(|| params.par_iter().map(run).collect());
    Ok(results.into_iter().collect::<Result<_, _>>()?)
}

/// `t! (-1)^{t-1} / t` as an integer string; `t <= NEWTON_LIMIT`.
fn factorial_sign_ratio(t: u32) -> String {
    let f: u64 = (1..t as u64).product();
    if t.is_multiple_of(2) { format!("-{f}") } else { f.to_string() }
}

pub fn identities(suite: Suite, max: u32) -> Outcome {
    let mut report = Report::new("identities");
    report.set("suite", suite.name()).set("max", max);
    let q = Rationals;
    let results = match suite {
        Suite::Catalan => {
            let params: Vec<u32> = (1..=max).collect();
            sweep(&params, |&s| {
                let v = catalan_alternating_sum(s);
                let ok = v.is_zero();
                Ok((json!({ "s": s, "value": v.to_string() }), ok))
            })?
        }
        Suite::Composition => {
            if max > COMPOSITION_LIMIT {
                return Err(CliError::Input(format!("--max for composition is at most {COMPOSITION_LIMIT}")));
            }
            let params: Vec<u32> = (1..=max).collect();
            sweep(&params, |&l| {
                let v = composition_sum(l)?;
                let expected = composition_sum_closed_form(l);
                let ok = v == expected;
                Ok((json!({ "l": l, "value": v.to_string(), "expected": expected.to_string() }), ok))
            })?
        }
        Suite::Newton => {
            if max > NEWTON_LIMIT {
                return Err(CliError::Input(format!("--max for newton is at most {NEWTON_LIMIT}")));
            }
            let params: Vec<u32> = (1..=max).collect();
            sweep(&params, |&t| {
                let coefficient = q.format(&newton_coefficient(&q, t as usize)?);
                let expected = factorial_sign_ratio(t);
                let mut checked = 0usize;
                let mut ok = coefficient == expected;
                for c in compositions(t) {
                    ok &= newton_check(&q, c.parts(), t as usize)?;
                    checked += 1;
                }
                Ok((
                    json!({ "weight": t, "coefficient": coefficient, "expected": expected, "compositions": checked }),
                    ok,
                ))
            })?
        }
        Suite::ViaB => {
            let params: Vec<(u32, u32, u32)> = (0..=max)
                .flat_map(|n| (0..=max).flat_map(move |m| (0..=max / 2).map(move |s| (n, m, s))))
                .collect();
            sweep(&params, |&(n, m, s)| Ok((json!({ "n": n, "m": m, "s": s }), expression_via_b_check(n, m, s))))?
        }
        Suite::Cancellation => {
            if max > COMPOSITION_LIMIT + 1 {
                return Err(CliError::Input(format!("--max for cancellation is at most {}", COMPOSITION_LIMIT + 1)));
            }
            let params: Vec<(u32, u32)> = (2..=max).flat_map(|l| (0..=l - 2).map(move |j| (l, j))).collect();
            sweep(&params, |&(l, j)| Ok((json!({ "l": l, "j": j }), cancellation_check(l, j)?)))?
        }
    };
    let passed = results.iter().filter(|(_, ok)| *ok).count();
    let total = results.len();
    let instances: Vec<Value> = results
        .into_iter()
        .map(|(mut v, ok)| {
            v["pass"] = ok.into();
            v
        })
        .collect();
    report.set("passed", passed).set("total", total).set("instances", instances);
    if passed != total {
        report.status = Status::Failed;
    }
    Ok(report)
}

pub fn cover(path: &Path, k: u32, limit: usize) -> Outcome {
    if k == 0 {
        return Err(CliError::Input("--k must be at least 1".into()));
    }
    let file = FormsFile::from_json(&read(path)?)?;
    let mut report = Report::new("cover");
    with_field!(file.field, |f| {
        let forms = file.to_forms(&f)?;
        let r = witness::cover_verify_with_limit(&forms, k, limit)?;
        let bound = r.lower_bound();
        let mut reasons = Vec::new();
        if r.origin_covered {
            reasons.push("a form vanishes at the origin".to_string());
        }
        if !r.min_coverage_off_origin.is_some_and(|m| m >= k) {
            reasons.push(format!("some nonzero point is covered fewer than {k} times"));
        }
        if r.satisfies_hypotheses() && bound.is_some_and(|b| r.forms < b) {
            reasons.push(format!("{} forms is below the lower bound {}", r.forms, bound.unwrap_or(0)));
        }
        let counts: Vec<Value> = r
            .counts
            .iter()
            .map(|(a, c)| json!({ "point": a.to_string(), "count": c }))
            .collect();
        report
            .set("field", file.field.to_string())
            .set("n", r.nvars)
            .set("k", k)
            .set("forms", r.forms)
            .set("counts", counts)
            .set("origin_covered", r.origin_covered)
            .set("min_coverage_off_origin", r.min_coverage_off_origin)
            .set("lower_bound", bound)
            .set("verdict", if reasons.is_empty() { "PASS" } else { "FAIL" })
            .set("reasons", reasons);
    });
    Ok(report)
}
