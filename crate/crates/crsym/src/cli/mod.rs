//! Command-line front end: model resolution (expressions, sum-of-squares
//! factors, model JSON, zoo names), report generation and the zoo runner.
//!
//! Reports are deterministic: given the same model specification and options
//! the JSON output is byte-identical across runs. Timing information is
//! therefore confined to the human-readable rendering and never enters the
//! JSON.

pub mod parse;
pub mod zoo;

use crate::analysis::{
    classify_g0, structure_verdict, AnalysisError, DichotomyForm, GradingShape, StructureVerdict,
};
use crate::arith::{format_rat, parse_rat, rat_int, GaussRat, Rat};
use crate::model::{LeviStatus, LeviVerdict, Model, ModelError, Nondegeneracy};
use crate::ring::{RealPoly, WeightVector};
use crate::solver::{extended_menu_check, full_grading, solve_graded, GradingReport};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Options shared by all model-reading commands.
#[derive(Debug, Clone)]
pub struct Options {
    pub sample_budget: usize,
    pub seed: u64,
    pub degree_cap: Rat,
    pub debug_extended_menu: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            sample_budget: 100,
            seed: 1,
            degree_cap: rat_int(1),
            debug_extended_menu: false,
        }
    }
}

/// Where the model comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Expr { expr: String, mu: Vec<String> },
    Sos { q: Vec<String>, mu: Vec<String> },
    Zoo { name: String },
    JsonFile { path: PathBuf },
}

#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub source: Source,
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Levi,
    Symmetries,
    Verdicts,
}

// ---------------------------------------------------------------------------
// Model JSON input
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ModelJson {
    n: Option<usize>,
    mu: Option<Vec<String>>,
    #[serde(rename = "P")]
    p: Option<PolyJson>,
    sos: Option<SosJson>,
}

#[derive(Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

#[derive(Deserialize)]
struct TermJson {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    re: String,
    im: String,
}

#[derive(Deserialize)]
struct SosJson {
    mu: Vec<String>,
    #[serde(rename = "Q")]
    q: Vec<String>,
}

fn parse_mu(mu: &[String]) -> Result<WeightVector, CliError> {
    let parsed: Result<Vec<Rat>, _> = mu.iter().map(|s| parse_rat(s)).collect();
    let parsed = parsed.map_err(|e| CliError::Usage(format!("bad weight: {e}")))?;
    WeightVector::new(parsed).map_err(|e| CliError::Usage(format!("bad weights: {e}")))
}

/// Resolves a model specification to a validated model (plus its zoo name,
/// when it came from the zoo).
pub fn resolve(spec: &ModelSpec) -> Result<(Model, Option<String>), CliError> {
    match &spec.source {
        Source::Zoo { name } => {
            let entry = zoo::find(name).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown zoo model `{name}` (run `zoo-list` for the catalogue)"
                ))
            })?;
            Ok((entry.build(), Some(entry.name.to_string())))
        }
        Source::Expr { expr, mu } => {
            let wv = parse_mu(mu)?;
            let p = parse::parse_real_poly(expr, wv.n())
                .map_err(|e| CliError::Usage(format!("--expr: {e}")))?;
            Ok((Model::validate(wv, p)?, None))
        }
        Source::Sos { q, mu } => {
            let wv = parse_mu(mu)?;
            let factors: Result<Vec<_>, _> = q
                .iter()
                .map(|s| parse::parse_holo_poly(s, wv.n()))
                .collect();
            let factors = factors.map_err(|e| CliError::Usage(format!("--sos: {e}")))?;
            Ok((Model::build_sos(wv, factors)?, None))
        }
        Source::JsonFile { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let mj: ModelJson = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad model JSON: {e}")))?;
            if let Some(sos) = mj.sos {
                let wv = parse_mu(&sos.mu)?;
                let factors: Result<Vec<_>, _> = sos
                    .q
                    .iter()
                    .map(|s| parse::parse_holo_poly(s, wv.n()))
                    .collect();
                let factors = factors.map_err(|e| CliError::Usage(format!("sos factor: {e}")))?;
                return Ok((Model::build_sos(wv, factors)?, None));
            }
            let mu = mj
                .mu
                .ok_or_else(|| CliError::Usage("model JSON lacks `mu`".into()))?;
            let wv = parse_mu(&mu)?;
            let n = mj.n.unwrap_or(wv.n());
            if n != wv.n() {
                return Err(CliError::Usage(format!(
                    "model JSON `n` = {n} disagrees with {} weights",
                    wv.n()
                )));
            }
            let pj =
                mj.p.ok_or_else(|| CliError::Usage("model JSON lacks `P`".into()))?;
            let mut raw = Vec::new();
            for t in pj.terms {
                let re = parse_rat(&t.re)
                    .map_err(|e| CliError::Usage(format!("bad coefficient: {e}")))?;
                let im = parse_rat(&t.im)
                    .map_err(|e| CliError::Usage(format!("bad coefficient: {e}")))?;
                raw.push((
                    crate::arith::MultiIndex::new(t.alpha),
                    crate::arith::MultiIndex::new(t.beta),
                    crate::arith::gauss(re, im),
                ));
            }
            let p = RealPoly::from_terms(n, raw).map_err(ModelError::Ring)?;
            Ok((Model::validate(wv, p)?, None))
        }
    }
}

// ---------------------------------------------------------------------------
// Report DTOs
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub model: ModelEcho,
    pub validation: ValidationOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudoconvexity: Option<LeviOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nondegeneracy: Option<NondegOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictsOut>,
}

#[derive(Serialize)]
pub struct ModelEcho {
    pub n: usize,
    pub mu: Vec<String>,
    pub p: String,
    pub p_terms: Vec<TermOut>,
    pub provenance: ProvenanceOut,
}

#[derive(Serialize)]
pub struct TermOut {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub re: String,
    pub im: String,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ProvenanceOut {
    Generic,
    Sos { q: Vec<String> },
}

#[derive(Serialize)]
pub struct ValidationOut {
    pub valid: bool,
    pub violations: Vec<String>,
}

#[derive(Serialize)]
pub struct GaussOut {
    pub re: String,
    pub im: String,
}

#[derive(Serialize)]
pub struct LeviOut {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<GaussOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minor: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minor_value: Option<String>,
    pub samples_checked: usize,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct NondegOut {
    pub status: String,
    pub degree_cap: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_degree: Option<String>,
}

#[derive(Serialize)]
pub struct DegreeOut {
    pub degree: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rigid_dim: Option<usize>,
}

#[derive(Serialize)]
pub struct FlagsOut {
    pub has_gc: bool,
    pub has_gn: bool,
    pub gn_weights: Vec<String>,
}

#[derive(Serialize)]
pub struct GradingOut {
    pub degrees: Vec<DegreeOut>,
    pub total_dim: usize,
    pub flags: FlagsOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended_menu_extra: Option<Vec<DegreeOut>>,
}

#[derive(Serialize)]
pub struct DichotomyOut {
    pub l: usize,
    pub form: String,
}

#[derive(Serialize)]
pub struct RotationsOut {
    pub euler_in_span: bool,
    pub complement_dim: usize,
    pub violations: usize,
    pub unsupported: usize,
}

#[derive(Serialize)]
pub struct VerdictsOut {
    pub grading_shape: String,
    pub gc_zero: bool,
    pub gn_weight_half_only: bool,
    pub jet_order: u8,
    pub balanced: bool,
    pub kappa: usize,
    pub dichotomy: Vec<DichotomyOut>,
    pub rotations: RotationsOut,
}

fn gauss_out(c: &GaussRat) -> GaussOut {
    GaussOut {
        re: format_rat(&c.re),
        im: format_rat(&c.im),
    }
}

fn shape_str(s: GradingShape) -> &'static str {
    match s {
        GradingShape::Thm11 => "thm_1_1",
        GradingShape::Thm53 => "thm_5_3",
        GradingShape::Thm54 => "thm_5_4",
        GradingShape::Other => "other",
    }
}

fn form_str(f: DichotomyForm) -> &'static str {
    match f {
        DichotomyForm::Form63 => "form_6_3",
        DichotomyForm::Form64 => "form_6_4",
        DichotomyForm::None => "none",
    }
}

fn model_echo(model: &Model) -> ModelEcho {
    ModelEcho {
        n: model.n(),
        mu: model.mu().mu().iter().map(format_rat).collect(),
        p: model.p().text(),
        p_terms: model
            .p()
            .terms()
            .map(|(k, c)| TermOut {
                alpha: k.alpha.exponents().to_vec(),
                beta: k.beta.exponents().to_vec(),
                re: format_rat(&c.re),
                im: format_rat(&c.im),
            })
            .collect(),
        provenance: match model.provenance() {
            crate::model::Provenance::Generic => ProvenanceOut::Generic,
            crate::model::Provenance::SumOfSquares(q) => ProvenanceOut::Sos {
                q: q.iter().map(|h| h.text()).collect(),
            },
        },
    }
}

fn levi_out(v: &LeviVerdict) -> LeviOut {
    let (status, witness, minor, minor_value) = match &v.status {
        LeviStatus::PsdCertified => ("psd_certified", None, None, None),
        LeviStatus::PsdSampled => ("psd_sampled", None, None, None),
        LeviStatus::Unknown => ("unknown", None, None, None),
        LeviStatus::NotPsd {
            witness,
            minor,
            minor_value,
        } => (
            "not_psd",
            Some(witness.iter().map(gauss_out).collect()),
            Some(minor.clone()),
            Some(format_rat(minor_value)),
        ),
    };
    LeviOut {
        status: status.to_string(),
        witness,
        minor,
        minor_value,
        samples_checked: v.samples_checked,
        tolerance: v.tolerance,
    }
}

fn nondeg_out(v: &Nondegeneracy, cap: &Rat) -> NondegOut {
    match v {
        Nondegeneracy::Nondegenerate { .. } => NondegOut {
            status: "nondegenerate".into(),
            degree_cap: format_rat(cap),
            witness: None,
            witness_degree: None,
        },
        Nondegeneracy::Degenerate { witness, degree } => NondegOut {
            status: "degenerate".into(),
            degree_cap: format_rat(cap),
            witness: Some(witness.text()),
            witness_degree: Some(format_rat(degree)),
        },
    }
}

fn grading_out(rep: &GradingReport, extra: Option<Vec<(Rat, usize)>>) -> GradingOut {
    GradingOut {
        degrees: rep
            .components
            .iter()
            .map(|c| DegreeOut {
                degree: format_rat(&c.degree),
                dim: c.dim,
                basis: c.basis.iter().map(|g| g.field.text()).collect(),
                rigid_dim: c.rigid_dim,
            })
            .collect(),
        total_dim: rep.total_dim,
        flags: FlagsOut {
            has_gc: rep.flags.has_gc,
            has_gn: rep.flags.has_gn,
            gn_weights: rep.flags.gn_weights.iter().map(format_rat).collect(),
        },
        extended_menu_extra: extra.map(|v| {
            v.into_iter()
                .map(|(d, dim)| DegreeOut {
                    degree: format_rat(&d),
                    dim,
                    basis: Vec::new(),
                    rigid_dim: None,
                })
                .collect()
        }),
    }
}

fn verdicts_out(verdict: &StructureVerdict, rotations: RotationsOut) -> VerdictsOut {
    VerdictsOut {
        grading_shape: shape_str(verdict.grading_shape).into(),
        gc_zero: verdict.gc_zero,
        gn_weight_half_only: verdict.gn_weight_half_only,
        jet_order: verdict.jet_order,
        balanced: verdict.balance.balanced,
        kappa: verdict.balance.kappa,
        dichotomy: verdict
            .dichotomy
            .iter()
            .enumerate()
            .map(|(i, f)| DichotomyOut {
                l: i + 1,
                form: form_str(*f).into(),
            })
            .collect(),
        rotations,
    }
}

/// How much of the pipeline a command runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Depth {
    Validation,
    Levi,
    Full,
}

/// Builds the full report for a validated model.
pub fn build_report(model: &Model, name: Option<String>, opts: &Options) -> Report {
    build_report_at(model, name, opts, Depth::Full)
}

fn build_report_at(model: &Model, name: Option<String>, opts: &Options, depth: Depth) -> Report {
    let mut report = Report {
        schema: 1,
        name,
        model: model_echo(model),
        validation: ValidationOut {
            valid: true,
            violations: Vec::new(),
        },
        pseudoconvexity: None,
        nondegeneracy: None,
        grading: None,
        verdicts: None,
    };
    if depth == Depth::Validation {
        return report;
    }
    let levi = model.pseudoconvexity(opts.sample_budget, opts.seed);
    report.pseudoconvexity = Some(levi_out(&levi));
    if depth == Depth::Levi {
        return report;
    }
    let nondeg = model.holomorphic_nondegeneracy(&opts.degree_cap);
    report.nondegeneracy = Some(nondeg_out(&nondeg, &opts.degree_cap));
    let grading = full_grading(model);
    let extra = if opts.debug_extended_menu {
        Some(extended_menu_check(model))
    } else {
        None
    };
    report.grading = Some(grading_out(&grading, extra));
    let verdict = structure_verdict(&grading, model, &levi, &nondeg);
    let g0_basis = solve_graded(model, &rat_int(0));
    let rotations = match classify_g0(&g0_basis, model) {
        Ok(cls) => RotationsOut {
            euler_in_span: true,
            complement_dim: cls.rotations.len(),
            violations: cls.violations().len(),
            unsupported: cls.unsupported().len(),
        },
        Err(_) => RotationsOut {
            euler_in_span: false,
            complement_dim: 0,
            violations: 0,
            unsupported: 0,
        },
    };
    report.verdicts = Some(verdicts_out(&verdict, rotations));
    report
}

/// Report for an invalid model specification.
fn invalid_report(violations: &[crate::model::Violation]) -> Report {
    Report {
        schema: 1,
        name: None,
        model: ModelEcho {
            n: 0,
            mu: Vec::new(),
            p: String::new(),
            p_terms: Vec::new(),
            provenance: ProvenanceOut::Generic,
        },
        validation: ValidationOut {
            valid: false,
            violations: violations.iter().map(|v| v.to_string()).collect(),
        },
        pseudoconvexity: None,
        nondegeneracy: None,
        grading: None,
        verdicts: None,
    }
}

pub fn report_to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Human rendering
// ---------------------------------------------------------------------------

fn render_human(report: &Report, focus_verdicts: bool) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    if let Some(name) = &report.name {
        push(&mut out, format!("model: {name}"));
    }
    push(
        &mut out,
        format!(
            "Im w = {}   [mu = {}]",
            report.model.p,
            report.model.mu.join(", ")
        ),
    );
    if !report.validation.valid {
        push(&mut out, "validation: FAILED".into());
        for v in &report.validation.violations {
            push(&mut out, format!("  - {v}"));
        }
        return out;
    }
    push(&mut out, "validation: ok".into());
    if let Some(l) = &report.pseudoconvexity {
        let mut line = format!("pseudoconvexity: {}", l.status);
        if let (Some(w), Some(v)) = (&l.witness, &l.minor_value) {
            let pt: Vec<String> = w.iter().map(|g| format!("{}+{}i", g.re, g.im)).collect();
            line.push_str(&format!(
                "  witness z = ({}), minor value {}",
                pt.join(", "),
                v
            ));
        } else if l.status == "psd_sampled" {
            line.push_str(&format!("  ({} exact sample points)", l.samples_checked));
        }
        push(&mut out, line);
    }
    if let Some(n) = &report.nondegeneracy {
        let mut line = format!("nondegeneracy: {} (degree cap {})", n.status, n.degree_cap);
        if let Some(w) = &n.witness {
            line.push_str(&format!("  witness {w}"));
        }
        push(&mut out, line);
    }
    if !focus_verdicts {
        if let Some(g) = &report.grading {
            push(&mut out, "grading:".into());
            for d in &g.degrees {
                let rigid = match d.rigid_dim {
                    Some(r) if d.dim > 0 => format!("  (rigid {r})"),
                    _ => String::new(),
                };
                push(
                    &mut out,
                    format!("  degree {:>5}: dim {}{}", d.degree, d.dim, rigid),
                );
                for b in &d.basis {
                    push(&mut out, format!("      {b}"));
                }
            }
            push(&mut out, format!("  total real dimension: {}", g.total_dim));
            if let Some(extra) = &g.extended_menu_extra {
                if extra.is_empty() {
                    push(&mut out, "  extended menu check: no extra degrees".into());
                } else {
                    for d in extra {
                        push(
                            &mut out,
                            format!("  EXTRA degree {} dim {} (outside menu!)", d.degree, d.dim),
                        );
                    }
                }
            }
        }
    }
    if let Some(v) = &report.verdicts {
        push(&mut out, "verdicts:".into());
        push(&mut out, format!("  grading shape: {}", v.grading_shape));
        push(&mut out, format!("  g_c = 0: {}", v.gc_zero));
        push(
            &mut out,
            format!(
                "  intermediate weights only at 1/2: {}",
                v.gn_weight_half_only
            ),
        );
        push(
            &mut out,
            format!(
                "  balanced: {} (kappa = {}), jet order {}",
                v.balanced, v.kappa, v.jet_order
            ),
        );
        let forms: Vec<String> = v
            .dichotomy
            .iter()
            .map(|d| format!("l={}: {}", d.l, d.form))
            .collect();
        push(&mut out, format!("  dichotomy: {}", forms.join(", ")));
        push(
            &mut out,
            format!(
                "  rotations: complement dim {}, violations {}, unsupported {}",
                v.rotations.complement_dim, v.rotations.violations, v.rotations.unsupported
            ),
        );
    }
    out
}

// ---------------------------------------------------------------------------
// Command dispatch
// ---------------------------------------------------------------------------

/// Runs a model-reading command; returns the output text and the exit code
/// (0 ok, 1 assertion/validation failure, 2 usage error).
pub fn run(cmd: Command, spec: &ModelSpec, json: bool) -> (String, i32) {
    let depth = match cmd {
        Command::Validate => Depth::Validation,
        Command::Levi => Depth::Levi,
        Command::Symmetries | Command::Verdicts => Depth::Full,
    };
    let (model, name) = match resolve(spec) {
        Ok(x) => x,
        Err(CliError::Model(ModelError::Invalid(violations))) => {
            let report = invalid_report(&violations);
            let out = if json {
                report_to_json(&report)
            } else {
                render_human(&report, false)
            };
            return (out, 1);
        }
        Err(e) => return (format!("error: {e}\n"), 2),
    };
    let report = build_report_at(&model, name, &spec.options, depth);
    let out = if json {
        report_to_json(&report)
    } else {
        render_human(&report, cmd == Command::Verdicts)
    };
    (out, 0)
}

// ---------------------------------------------------------------------------
// Zoo commands
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ZooListEntry {
    name: &'static str,
    description: &'static str,
    mu: Vec<&'static str>,
    n: usize,
}

pub fn zoo_list(json: bool) -> (String, i32) {
    let entries: Vec<ZooListEntry> = zoo::zoo()
        .iter()
        .map(|e| ZooListEntry {
            name: e.name,
            description: e.description,
            mu: e.mu.to_vec(),
            n: e.mu.len(),
        })
        .collect();
    if json {
        let mut s = serde_json::to_string_pretty(&entries).expect("serializes");
        s.push('\n');
        (s, 0)
    } else {
        let mut out = String::new();
        for e in entries {
            out.push_str(&format!(
                "{:<20} mu = ({})  {}\n",
                e.name,
                e.mu.join(", "),
                e.description
            ));
        }
        (out, 0)
    }
}

#[derive(Serialize)]
struct ZooRunResult {
    name: &'static str,
    ok: bool,
    failures: Vec<String>,
}

/// Checks one zoo entry's fresh report against its expectations.
fn check_expectations(entry: &zoo::ZooEntry, report: &Report) -> Vec<String> {
    use zoo::ExpectedPsd;
    let mut failures = Vec::new();
    let exp = &entry.expected;
    let levi = report.pseudoconvexity.as_ref().expect("full report");
    let expected_status = match exp.psd {
        ExpectedPsd::Certified => "psd_certified",
        ExpectedPsd::Sampled => "psd_sampled",
        ExpectedPsd::NotPsd => "not_psd",
    };
    if levi.status != expected_status {
        failures.push(format!(
            "pseudoconvexity: expected {expected_status}, got {}",
            levi.status
        ));
    }
    let nd = report.nondegeneracy.as_ref().expect("full report");
    let nd_ok = (nd.status == "nondegenerate") == exp.nondegenerate;
    if !nd_ok {
        failures.push(format!(
            "nondegeneracy: expected {}, got {}",
            exp.nondegenerate, nd.status
        ));
    }
    let v = report.verdicts.as_ref().expect("full report");
    if v.balanced != exp.balanced {
        failures.push(format!(
            "balanced: expected {}, got {}",
            exp.balanced, v.balanced
        ));
    }
    if v.jet_order != exp.jet_order {
        failures.push(format!(
            "jet_order: expected {}, got {}",
            exp.jet_order, v.jet_order
        ));
    }
    if v.grading_shape != shape_str(exp.shape) {
        failures.push(format!(
            "grading_shape: expected {}, got {}",
            shape_str(exp.shape),
            v.grading_shape
        ));
    }
    if v.gc_zero != exp.gc_zero {
        failures.push(format!(
            "gc_zero: expected {}, got {}",
            exp.gc_zero, v.gc_zero
        ));
    }
    let grading = report.grading.as_ref().expect("full report");
    if let Some(dims) = exp.dims {
        for d in &grading.degrees {
            let expected_dim = dims
                .iter()
                .find(|(deg, _)| *deg == d.degree)
                .map(|(_, k)| *k)
                .unwrap_or(0);
            if d.dim != expected_dim {
                failures.push(format!(
                    "dim at degree {}: expected {}, got {}",
                    d.degree, expected_dim, d.dim
                ));
            }
        }
    }
    if let Some(total) = exp.total_dim {
        if grading.total_dim != total {
            failures.push(format!(
                "total_dim: expected {}, got {}",
                total, grading.total_dim
            ));
        }
    }
    failures
}

/// Runs every zoo model, asserting expectations and comparing against the
/// committed golden reports. Golden byte comparison only applies with
/// default options; expectation checks always run. `write_golden` writes the
/// fresh reports into the given directory instead of comparing.
pub fn zoo_run_all(opts: &Options, json: bool, write_golden: Option<&Path>) -> (String, i32) {
    let default_opts = Options::default();
    let compare_golden = write_golden.is_none()
        && opts.sample_budget == default_opts.sample_budget
        && opts.seed == default_opts.seed
        && opts.degree_cap == default_opts.degree_cap
        && opts.debug_extended_menu == default_opts.debug_extended_menu;
    let mut results = Vec::new();
    for entry in zoo::zoo() {
        let model = entry.build();
        let report = build_report_at(&model, Some(entry.name.to_string()), opts, Depth::Full);
        let json_text = report_to_json(&report);
        let mut failures = check_expectations(&entry, &report);
        if let Some(dir) = write_golden {
            let path = dir.join(format!("{}.json", entry.name));
            if let Err(e) = std::fs::write(&path, &json_text) {
                failures.push(format!("cannot write {}: {e}", path.display()));
            }
        } else if compare_golden {
            match zoo::golden_for(entry.name) {
                Some(golden) if golden == json_text => {}
                Some(_) => failures.push("golden mismatch".into()),
                None => failures.push("no committed golden".into()),
            }
        }
        results.push(ZooRunResult {
            name: entry.name,
            ok: failures.is_empty(),
            failures,
        });
    }
    let all_ok = results.iter().all(|r| r.ok);
    let out = if json {
        let mut s = serde_json::to_string_pretty(&results).expect("serializes");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for r in &results {
            if r.ok {
                s.push_str(&format!("ok   {}\n", r.name));
            } else {
                s.push_str(&format!("FAIL {}: {}\n", r.name, r.failures.join("; ")));
            }
        }
        if !compare_golden && write_golden.is_none() {
            s.push_str("note: non-default options, golden comparison skipped\n");
        }
        s.push_str(if all_ok {
            "all models ok\n"
        } else {
            "failures detected\n"
        });
        s
    };
    (out, if all_ok { 0 } else { 1 })
}
