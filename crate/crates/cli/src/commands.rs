use std::path::Path;

use hhs_amalgam::{
    build_chain, check_hypotheses, verify_chain, verify_injectivity, ChainCertificate, ChainStatus, HypothesisReport,
    InjectivityReport, InjectivityStatus,
};
use hhs_action::GroupHierarchy;
use hhs_coarse::Rational64;
use hhs_convexity::{
    combined_amalgam_convexity, default_path_lambdas, default_tolerances, drift_qualifying, fill_all_squares, hqc_check,
    hqc_via_paths, hull, no_drift_check, orth_dichotomy, AmalgamSubsets, DriftReport, HqcReport, HullReport,
    PathGaugeReport, SubsetSpec,
};
use hhs_model::{audit, write_model, AxiomReport};
use hhs_zoo::{Family, ZooParams};
use serde::Serialize;

use crate::error::{input, CliError, Result};
use crate::load::{amalgam_closed_form, load_model, resolve_subset, twisted_amalgam, Loaded};
use crate::{AmalgamArgs, Command, Context, Execution, Status, ZooCommand};

pub(crate) fn dispatch(ctx: &mut Context, command: Command) -> Result<Execution> {
    match command {
        Command::Zoo { action: ZooCommand::Build { family, n, twist, model, skip_audit } } => {
            zoo_build(ctx, &family, n, twist, &model, skip_audit)
        }
        Command::Audit(m) => {
            let l = open(ctx, &m.model)?;
            let report = audit(&l.model, &ctx.budgets.as_ref().expect("resolved").audit_options());
            Ok(ctx.finish(Status::from_verdict(report.passes(), report.partial()), &report))
        }
        Command::Certify { model, word, amalgam } => certify(ctx, &model.model, &word, &amalgam),
        Command::InjectVerify { model, syllables, radius, amalgam } => inject_verify(ctx, &model.model, syllables, radius, &amalgam),
        Command::Hqc { model, subset, tolerances, paths, lambdas } => hqc(ctx, &model.model, &subset, tolerances, paths, &lambdas),
        Command::FillSquares { model, a, b } => {
            let l = open(ctx, &model.model)?;
            let (a, b) = (subset(ctx, &l, &a)?, subset(ctx, &l, &b)?);
            let r = fill_all_squares(&l.model, &a, &b, &l.frame()?)?;
            Ok(ctx.finish(Status::from_verdict(r.passes, false), &r))
        }
        Command::NoDrift { model, a, b, amalgam } => {
            let l = open(ctx, &model.model)?;
            let (a, b) = (subset(ctx, &l, &a)?, subset(ctx, &l, &b)?);
            let r = drift(ctx, &l, &a, &b, &amalgam)?;
            Ok(ctx.finish(Status::from_verdict(r.passes, false), &r))
        }
        Command::Dichotomy { model, subset: s, theta } => {
            let l = open(ctx, &model.model)?;
            let s = subset(ctx, &l, &s)?;
            let r = orth_dichotomy(&l.model, &s, &l.frame()?, &theta)?;
            Ok(ctx.finish(Status::from_verdict(r.passes, false), &r))
        }
        Command::Hull { model, subset: s, lambda, rounds } => hull_command(ctx, &model.model, &s, &lambda, rounds),
        Command::Combined { model, a, b, product, amalgam } => combined(ctx, &model.model, &a, &b, &product, &amalgam),
    }
}

fn open(ctx: &mut Context, path: &Path) -> Result<Loaded> {
    let l = load_model(path)?;
    ctx.model = Some(l.info());
    Ok(l)
}

fn subset(ctx: &mut Context, l: &Loaded, argument: &str) -> Result<SubsetSpec> {
    let (s, info) = resolve_subset(l, argument)?;
    if info.outside_window > 0 {
        ctx.notes.push(format!("{} orbit points of `{argument}` lie outside the window", info.outside_window));
    }
    ctx.subsets.push(info);
    Ok(s)
}

fn budgets(ctx: &Context) -> &hhs_convexity::Budgets {
    &ctx.budgets.as_ref().expect("resolved before dispatch").convexity
}

#[derive(Serialize)]
struct SubsetSummary {
    name: String,
    provenance: String,
    members: usize,
}

#[derive(Serialize)]
struct ZooBuild {
    family: String,
    n: usize,
    twist: i64,
    model_file: String,
    vertices: usize,
    domains: usize,
    declared_e: u32,
    header: Vec<String>,
    subsets: Vec<SubsetSummary>,
    audit: Option<AxiomReport>,
}

fn zoo_build(ctx: &mut Context, family: &str, n: Option<usize>, twist: Option<i64>, path: &Path, skip_audit: bool) -> Result<Execution> {
    let family: Family = family.parse()?;
    let defaults = family.default_params();
    let params = ZooParams { n: n.unwrap_or(defaults.n), twist: twist.unwrap_or(defaults.twist) };
    let z = hhs_zoo::build(family, params)?;
    let audit = (!skip_audit).then(|| audit(&z.model, &ctx.budgets.as_ref().expect("resolved").audit_options()));
    std::fs::write(path, write_model(&z.model, z.header.clone()))
        .map_err(|source| CliError::Write { path: path.to_path_buf(), source })?;
    let status = match &audit {
        Some(a) => {
            if a.audited_e != Some(z.model.e()) {
                ctx.notes.push(format!("audited E is {:?}, declared {}", a.audited_e, z.model.e()));
            }
            Status::from_verdict(a.passes(), a.partial())
        }
        None => Status::Pass,
    };
    let m = &z.model;
    ctx.model = Some(crate::load::ModelInfo {
        reference: Some(z.reference_line()),
        vertices: m.ambient().len(),
        domains: m.domain_count(),
        e: m.e(),
    });
    let report = ZooBuild {
        family: family.to_string(),
        n: params.n,
        twist: params.twist,
        model_file: path.display().to_string(),
        vertices: m.ambient().len(),
        domains: m.domain_count(),
        declared_e: m.e(),
        header: z.header.clone(),
        subsets: z
            .subsets
            .iter()
            .map(|s| SubsetSummary { name: s.name.clone(), provenance: s.provenance.clone(), members: s.members.len() })
            .collect(),
        audit,
    };
    Ok(ctx.finish(status, &report))
}

fn scale(amalgam: &AmalgamArgs, twist: i64) -> (i64, u64) {
    let n = amalgam.n.unwrap_or(twist);
    (n, amalgam.m.unwrap_or(n.max(0) as u64))
}

#[derive(Serialize)]
struct Certification {
    n: i64,
    m: u64,
    hypotheses: HypothesisReport,
    certificate: ChainCertificate,
    /// The word evaluated in G.
    element: String,
    is_identity: bool,
}

fn certify(ctx: &mut Context, path: &Path, word: &str, amalgam: &AmalgamArgs) -> Result<Execution> {
    let l = open(ctx, path)?;
    let (h, twist) = amalgam_closed_form(&l, "certify")?;
    let (n, m) = scale(amalgam, twist);
    let d = twisted_amalgam(&h, n, m)?;
    let hypotheses = check_hypotheses(&d, amalgam.sample_radius)?;
    let word = d.parse_word(word)?;
    let certificate = verify_chain(&d, &build_chain(&d, &word)?);
    let g = d.evaluate(&word);
    let status = if !hypotheses.failures.is_empty() {
        ctx.notes.push(format!("failing hypotheses: {}", hypotheses.failures.join(", ")));
        Status::Falsified
    } else {
        match certificate.status {
            ChainStatus::Verified if hypotheses.partial => Status::Partial,
            ChainStatus::Verified => Status::Pass,
            ChainStatus::Failed { .. } => Status::Falsified,
            ChainStatus::Partial => Status::Partial,
        }
    };
    let report = Certification { n, m, element: h.describe_element(&g), is_identity: g == h.identity(), hypotheses, certificate };
    Ok(ctx.finish(status, &report))
}

#[derive(Serialize)]
struct Injectivity {
    n: i64,
    m: u64,
    #[serde(flatten)]
    report: InjectivityReport,
}

fn inject_verify(ctx: &mut Context, path: &Path, syllables: usize, radius: u64, amalgam: &AmalgamArgs) -> Result<Execution> {
    let l = open(ctx, path)?;
    let (h, twist) = amalgam_closed_form(&l, "inject-verify")?;
    let (n, m) = scale(amalgam, twist);
    let d = twisted_amalgam(&h, n, m)?;
    let report = verify_injectivity(&d, syllables, radius)?;
    let status = match &report.status {
        InjectivityStatus::Passed => Status::Pass,
        InjectivityStatus::Failed => Status::Falsified,
        InjectivityStatus::Partial => Status::Partial,
        InjectivityStatus::Refused { failures } => {
            ctx.notes.push(format!("refused: failing hypotheses {}", failures.join(", ")));
            Status::Falsified
        }
    };
    Ok(ctx.finish(status, &Injectivity { n, m, report }))
}

fn parse_lambdas(lambdas: &[String]) -> Result<Vec<Rational64>> {
    if lambdas.is_empty() {
        return Ok(default_path_lambdas());
    }
    lambdas
        .iter()
        .map(|t| hhs_coarse::rational::parse(t).ok_or_else(|| input(format!("bad path constant `{t}`"))))
        .collect()
}

#[derive(Serialize)]
struct Hqc {
    realisation: HqcReport,
    paths: Option<PathGaugeReport>,
}

fn hqc_partial(r: &HqcReport) -> bool {
    r.kappa.partial || !r.projections.exhaustive
}

fn hqc(ctx: &mut Context, path: &Path, s: &str, tolerances: Vec<u32>, paths: bool, lambdas: &[String]) -> Result<Execution> {
    let l = open(ctx, path)?;
    let s = subset(ctx, &l, s)?;
    let frame = l.frame()?;
    let tolerances = if tolerances.is_empty() { default_tolerances(&l.model) } else { tolerances };
    let realisation = hqc_check(&l.model, &s, &tolerances, &frame, budgets(ctx))?;
    let paths = if paths { Some(hqc_via_paths(&l.model, &s, &parse_lambdas(lambdas)?, &frame, budgets(ctx))?) } else { None };
    let mut passes = realisation.passes;
    let mut partial = hqc_partial(&realisation);
    if let Some(p) = &paths {
        if p.passes != realisation.passes {
            ctx.notes.push("the realisation and path gauges disagree".into());
        }
        passes &= p.passes;
        partial |= p.lambda.partial;
    }
    Ok(ctx.finish(Status::from_verdict(passes, partial), &Hqc { realisation, paths }))
}

fn drift(ctx: &mut Context, l: &Loaded, a: &SubsetSpec, b: &SubsetSpec, amalgam: &AmalgamArgs) -> Result<DriftReport> {
    let (h, twist) = amalgam_closed_form(l, "no-drift")?;
    let (n, m) = scale(amalgam, twist);
    let d = twisted_amalgam(&h, n, m)?;
    let model = &l.model;
    let locate = |u: &<hhs_zoo::f2xdxd::F2xD2 as hhs_model::Hierarchy>::Domain| model.domains().id(&h.describe_domain(u)).ok();
    let sample = drift_qualifying(model, &d, amalgam.sample_radius, &locate)?;
    if sample.unlocated > 0 {
        ctx.notes.push(format!("{} witness-domain translates lie outside the model's domains", sample.unlocated));
    }
    Ok(no_drift_check(model, &l.frame()?, a, b, sample)?)
}

#[derive(Serialize)]
struct Hull {
    hull: HullReport,
    hqc: HqcReport,
}

fn hull_command(ctx: &mut Context, path: &Path, s: &str, lambda: &str, rounds: usize) -> Result<Execution> {
    let l = open(ctx, path)?;
    let s = subset(ctx, &l, s)?;
    let lambda = hhs_coarse::rational::parse(lambda).ok_or_else(|| input(format!("bad path constant `{lambda}`")))?;
    let h = hull(&l.model, &s, lambda, rounds, budgets(ctx))?;
    let closed = h.to_subset(&l.model, &format!("hull({})", s.name))?;
    let hqc = hqc_check(&l.model, &closed, &default_tolerances(&l.model), &l.frame()?, budgets(ctx))?;
    let status = Status::from_verdict(hqc.passes, h.partial || hqc_partial(&hqc));
    Ok(ctx.finish(status, &Hull { hull: h, hqc }))
}

fn combined(ctx: &mut Context, path: &Path, a: &str, b: &str, product: &str, amalgam: &AmalgamArgs) -> Result<Execution> {
    let l = open(ctx, path)?;
    let (a, b, p) = (subset(ctx, &l, a)?, subset(ctx, &l, b)?, subset(ctx, &l, product)?);
    let (h, twist) = amalgam_closed_form(&l, "combined")?;
    let (n, m) = scale(amalgam, twist);
    let d = twisted_amalgam(&h, n, m)?;
    let hypotheses = check_hypotheses(&d, amalgam.sample_radius)?;
    let drift = drift(ctx, &l, &a, &b, amalgam)?;
    let subsets = AmalgamSubsets { a: &a, b: &b, product: &p };
    let r = combined_amalgam_convexity(&l.model, &l.frame()?, &subsets, &hypotheses, drift, budgets(ctx))?;
    if r.counterexample {
        ctx.notes.push("drift is present and the product is not hierarchically quasiconvex".into());
    }
    let consistent = r.quasiconvex_combination.consistent && r.strong_combination.consistent;
    Ok(ctx.finish(Status::from_verdict(consistent, false), &r))
}
