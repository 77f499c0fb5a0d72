use std::path::PathBuf;

use lichnerowicz::asymptotic::{finite_index_barrier, integrate_beta, BarrierMode, BetaKind, DEFAULT_T};
use lichnerowicz::bounds::{bilateral_bound_check, interior_sup_bound, upper_bound_ustar};
use lichnerowicz::hypotheses::{
    bilateral_predicates, comparison_predicates, theorem_a_predicates, theorem_b_predicates, PredicateTable,
};
use lichnerowicz::nonlinearity::barriers::{theorem_a_subsolution, theorem_b_subsolution};
use lichnerowicz::nonlinearity::{constant_barriers, BarrierPair};
use lichnerowicz::solver::{self, exhaustion_grid, maximal_solution, solve_dirichlet, Check, DirichletProblem, SolveOptions};
use lichnerowicz::spectral::spectral_profile;
use lichnerowicz::suite::{run_suite, SuiteOptions, DEFAULT_SEED};
use lichnerowicz::{CoefficientSet, ModelManifold, RadialFunction, RadialGrid};
use serde::Serialize;

use crate::config::{config_error, Loaded};
use crate::output::Output;
use crate::Failure;

pub struct Context<'a> {
    pub loaded: &'a Loaded,
    pub dir: PathBuf,
    pub name: &'a str,
    pub quiet: bool,
    pub grid_n: Option<usize>,
}

impl Context<'_> {
    fn output(&self) -> Result<Output, Failure> {
        Output::new(self.dir.clone(), self.name, self.loaded.hash(), self.quiet)
    }

    fn n(&self) -> usize {
        self.loaded.grid_n()
    }

    fn say(&self, line: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", line.as_ref());
        }
    }
}

fn solution_rows(u: &RadialFunction) -> impl Iterator<Item = Vec<f64>> + '_ {
    u.pairs().map(|(r, v)| vec![r, v])
}

fn failed_names(checks: &[Check]) -> String {
    checks.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct ModelReport {
    dim: usize,
    r_max: f64,
    warping: String,
    comparison_constant: f64,
    volume_growth: lichnerowicz::model::VolumeGrowth,
    nonparabolic: bool,
    green_tail: lichnerowicz::model::TailModel,
    green_checks: Option<lichnerowicz::model::GreenChecks>,
}

pub fn model(ctx: &Context) -> Result<(), Failure> {
    let model = ctx.loaded.model()?;
    let out = ctx.output()?;
    let gk = model.green_kernel(ctx.n())?;
    let warping = match model.warping() {
        lichnerowicz::WarpingFunction::Euclidean => "euclidean".to_string(),
        lichnerowicz::WarpingFunction::Hyperbolic { k } => format!("hyperbolic k = {k}"),
        _ => "tabulated".to_string(),
    };
    let report = ModelReport {
        dim: model.dim(),
        r_max: model.r_max(),
        warping,
        comparison_constant: model.comparison_constant(model.r_max()),
        volume_growth: model.volume_growth_check(0.0)?,
        nonparabolic: gk.nonparabolic,
        green_tail: gk.tail.clone(),
        green_checks: gk.checks.clone(),
    };
    if let Some(grid) = &gk.grid {
        let rows = (0..gk.values.len()).map(|i| vec![grid.r(i), gk.values[i], gk.t[i]]);
        out.csv("green.csv", &["r", "G", "t"], rows)?;
    }
    out.json("model.json", &report)?;
    ctx.say(format!("nonparabolic: {}", gk.nonparabolic));
    Ok(())
}

pub fn spectrum(ctx: &Context) -> Result<(), Failure> {
    let model = ctx.loaded.model()?;
    let coeffs = ctx.loaded.coefficients()?;
    let r = model.r_max();
    let radii = ctx.loaded.config.params.radii.clone().unwrap_or_else(|| vec![r / 8.0, r / 4.0, r / 2.0, r]);
    let last = *radii.last().ok_or_else(|| config_error("radii must not be empty"))?;
    let n_first = ((ctx.n() as f64 * radii[0] / last).round() as usize).max(8);
    let prof = spectral_profile(&model, &coeffs.a, &radii, n_first)?;
    let out = ctx.output()?;
    out.csv("spectrum.csv", &["radius", "lambda1"], prof.radii.iter().zip(&prof.eigenvalues).map(|(r, l)| vec![*r, *l]))?;
    out.json("spectrum.json", &prof)?;
    ctx.say(format!("λ₁ along {:?}: {:?}", prof.radii, prof.eigenvalues));
    Ok(())
}

fn barriers(model: &ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid) -> Result<BarrierPair, Failure> {
    let bp = constant_barriers(model, coeffs, grid)?;
    if !bp.certified {
        return Err(Failure::Numerical(format!(
            "constant barriers not certified: sub residual {:.3e}, sup residual {:.3e}",
            bp.sub_residual_min, bp.sup_residual_max
        )));
    }
    Ok(bp)
}

#[derive(Serialize)]
struct SolveSummary {
    boundary: f64,
    iterations: usize,
    residual_max: f64,
    monotone: bool,
    sandwiched: bool,
    lambda_shift_max: f64,
    near_zero: bool,
    sub_residual_min: f64,
    sup_residual_max: f64,
    u_min: f64,
    u_max: f64,
    bilateral_holds: Option<bool>,
}

fn dirichlet(ctx: &Context, boundary: Option<f64>) -> Result<(RadialFunction, SolveSummary), Failure> {
    let model = ctx.loaded.model()?;
    let coeffs = ctx.loaded.coefficients()?;
    let grid = RadialGrid::ball(model.r_max(), ctx.n())?;
    let bp = barriers(&model, &coeffs, &grid)?;
    let boundary = boundary.or(ctx.loaded.config.params.boundary).unwrap_or(bp.sub.value(grid.n()));
    let p = DirichletProblem { model: &model, coeffs: &coeffs, boundary, sub: bp.sub.clone(), sup: bp.sup.clone() };
    let rep = solve_dirichlet(&p, &SolveOptions::default())?;
    let bil = bilateral_bound_check(&model, &coeffs, &rep.solution)?;
    let summary = SolveSummary {
        boundary,
        iterations: rep.iterations,
        residual_max: rep.residual_max,
        monotone: rep.monotone,
        sandwiched: rep.sandwiched,
        lambda_shift_max: rep.lambda_shift_max,
        near_zero: rep.near_zero,
        sub_residual_min: bp.sub_residual_min,
        sup_residual_max: bp.sup_residual_max,
        u_min: rep.solution.min(),
        u_max: rep.solution.max(),
        bilateral_holds: bil.hypotheses_hold().then_some(bil.holds),
    };
    Ok((rep.solution, summary))
}

pub fn solve(ctx: &Context) -> Result<(), Failure> {
    let (u, summary) = dirichlet(ctx, None)?;
    let out = ctx.output()?;
    out.csv("solution.csv", &["r", "u"], solution_rows(&u))?;
    out.json("report.json", &summary)?;
    ctx.say(format!("{} iterations, residual {:.3e}", summary.iterations, summary.residual_max));
    Ok(())
}

#[derive(Serialize)]
struct MaximalSummary {
    subsolution: String,
    subsolution_certified: bool,
    exhaustion_radii: Vec<f64>,
    blowups: Vec<solver::BlowupSummary>,
    monotone_decreasing_certificate: bool,
    above_subsolution: bool,
    min_margin_over_subsolution: f64,
}

pub fn maximal(ctx: &Context) -> Result<(), Failure> {
    let model = ctx.loaded.model()?;
    let coeffs = ctx.loaded.coefficients()?;
    let params = &ctx.loaded.config.params;
    let r = model.r_max();
    let radii = params.radii.clone().unwrap_or_else(|| vec![r / 4.0, r / 2.0, r]);
    let grid = exhaustion_grid(&radii, ctx.n())?;
    let mut kind = params.subsolution.clone().unwrap_or_else(|| "auto".into());
    if kind == "auto" {
        kind = if constant_barriers(&model, &coeffs, &grid).is_ok() { "constant".into() } else { "theorem_a".into() };
    }
    let (u_minus, certified) = match kind.as_str() {
        "constant" => {
            let bp = barriers(&model, &coeffs, &grid)?;
            (bp.sub, bp.certified)
        }
        "theorem_a" => {
            let s = theorem_a_subsolution(&model, &coeffs, &grid)?;
            (s.u_minus, s.certified)
        }
        "theorem_b" => {
            let (r1, r2) = params.r1.zip(params.r2).ok_or_else(|| config_error("theorem_b subsolution needs r1 and r2"))?;
            let s = theorem_b_subsolution(&model, &coeffs, &grid, r1, r2)?;
            (s.u_minus, s.certified)
        }
        other => return Err(config_error(format!("unknown subsolution {other:?}"))),
    };
    if !certified {
        return Err(Failure::Hypothesis(format!("{kind} subsolution is not certified on this grid")));
    }
    let rep = maximal_solution(&model, &coeffs, &u_minus, &radii, &SolveOptions::default())?;
    let out = ctx.output()?;
    out.csv("solution.csv", &["r", "u"], solution_rows(&rep.solution))?;
    out.csv("subsolution.csv", &["r", "u"], solution_rows(&u_minus))?;
    out.json(
        "report.json",
        &MaximalSummary {
            subsolution: kind,
            subsolution_certified: certified,
            exhaustion_radii: rep.exhaustion_radii.clone(),
            blowups: rep.blowups.clone(),
            monotone_decreasing_certificate: rep.monotone_decreasing_certificate,
            above_subsolution: rep.above_subsolution,
            min_margin_over_subsolution: rep.min_margin_over_subsolution,
        },
    )?;
    ctx.say(format!("maximal solution ≥ subsolution: {}", rep.above_subsolution));
    if !rep.above_subsolution {
        return Err(Failure::Numerical("maximal solution dips below the subsolution".into()));
    }
    Ok(())
}

fn read_solution(path: &std::path::Path) -> Result<RadialFunction, Failure> {
    let (r, u) = lichnerowicz::field::read_two_columns(path)?;
    if r.len() < 3 {
        return Err(config_error(format!("{}: need at least 3 rows", path.display())));
    }
    let grid = RadialGrid::new(r[0], r[r.len() - 1], r.len() - 1)?;
    let h = grid.h();
    if r.iter().enumerate().any(|(i, &x)| (x - grid.r(i)).abs() > 1e-9 * h.max(x.abs())) {
        return Err(config_error(format!("{}: r must be uniformly spaced", path.display())));
    }
    Ok(RadialFunction::new(grid, u)?)
}

#[derive(Serialize)]
struct BoundsVerdict {
    hypotheses_hold: bool,
    bounds_hold: bool,
    bilateral: lichnerowicz::bounds::BilateralReport,
    ustar: lichnerowicz::bounds::UstarReport,
    interior: Option<InteriorVerdict>,
    interior_skipped: Option<String>,
}

#[derive(Serialize)]
struct InteriorVerdict {
    bound: lichnerowicz::bounds::InteriorBound,
    check: Check,
}

pub fn bounds(ctx: &Context) -> Result<(), Failure> {
    let model = ctx.loaded.model()?;
    let coeffs = ctx.loaded.coefficients()?;
    let params = &ctx.loaded.config.params;
    let u = match ctx.loaded.solution_path() {
        Some(p) => read_solution(&p)?,
        None => dirichlet(ctx, None)?.0,
    };
    let bil = bilateral_bound_check(&model, &coeffs, &u)?;
    let ustar = upper_bound_ustar(&model, &coeffs, &u, params.gamma.unwrap_or(1.0))?;
    let reach = u.grid().r_max().min(model.r_max());
    let (t, tt, om) = (params.t.unwrap_or(reach), params.t_tilde.unwrap_or(reach / 2.0), params.omega.unwrap_or(reach / 4.0));
    let (interior, interior_skipped) = match interior_sup_bound(&model, &coeffs, t, tt, om) {
        Ok(b) => {
            let check = b.check(&u);
            (Some(InteriorVerdict { bound: b, check }), None)
        }
        Err(e) if e.is_hypothesis() => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let hypotheses_hold = bil.hypotheses_hold() && ustar.hypotheses_hold();
    let bounds_hold = bil.holds && ustar.holds && interior.as_ref().is_none_or(|i| i.check.holds);
    let failing = format!("{} {}", failed_names(&bil.hypotheses), failed_names(&ustar.hypotheses));
    let verdict = BoundsVerdict { hypotheses_hold, bounds_hold, bilateral: bil, ustar, interior, interior_skipped };
    let out = ctx.output()?;
    out.json("verdict.json", &verdict)?;
    ctx.say(format!("hypotheses hold: {hypotheses_hold}, bounds hold: {bounds_hold}"));
    if !hypotheses_hold {
        return Err(Failure::Hypothesis(format!("failed predicates: {}", failing.trim())));
    }
    if !bounds_hold {
        return Err(Failure::Numerical("a bound is violated by the solution".into()));
    }
    Ok(())
}

fn beta_kind(ctx: &Context) -> Result<BetaKind, Failure> {
    let p = &ctx.loaded.config.params;
    Ok(match p.kind.as_deref().unwrap_or("kappa") {
        "kappa" => BetaKind::KappaThreshold,
        "constant" => BetaKind::ConstantLambda { lambda: p.lambda.unwrap_or(1.0) },
        "euler" => BetaKind::EulerReference,
        "super_euler" => BetaKind::SuperEuler { epsilon: p.epsilon.unwrap_or(0.5) },
        other => return Err(config_error(format!("unknown oscillation kind {other:?}"))),
    })
}

pub fn oscillate(ctx: &Context) -> Result<(), Failure> {
    let p = &ctx.loaded.config.params;
    let kind = beta_kind(ctx)?;
    let t0 = p.t_start.unwrap_or(DEFAULT_T);
    let rep = integrate_beta(kind, t0, p.t_end.unwrap_or(1e8), p.beta0.unwrap_or(1.0), p.dbeta0.unwrap_or(1.0))?;
    let out = ctx.output()?;
    out.csv("trace.csv", &["t", "beta", "dbeta"], rep.trace.iter().map(|&(t, b, d)| vec![t, b, d]))?;
    out.json("oscillation.json", &rep)?;
    ctx.say(format!("{} zeros, ratio drift {:.3e}", rep.zero_count, rep.ratio_drift));
    Ok(())
}

#[derive(Serialize)]
struct BarrierCertificate {
    mode: BarrierMode,
    t_start: f64,
    nodes: usize,
    certified_nodes: usize,
    certified: bool,
    residual_max: f64,
    ratio_u_phi_drift: Option<f64>,
    power_ratio_drift: Option<f64>,
    be_bed_min: f64,
}

pub fn barrier(ctx: &Context) -> Result<(), Failure> {
    let model = ctx.loaded.model()?;
    let p = &ctx.loaded.config.params;
    let mode = match p.kind.as_deref().unwrap_or("kappa") {
        "kappa" => BarrierMode::KappaThreshold,
        "constant" => BarrierMode::ConstantLambda { lambda: p.lambda.unwrap_or(1.0) },
        other => return Err(config_error(format!("unknown barrier mode {other:?}"))),
    };
    let green_n = match (ctx.grid_n, p.green_n) {
        (Some(n), _) => n,
        (None, Some(n)) => n,
        (None, None) => ctx.n(),
    };
    let gk = model.green_kernel(green_n)?;
    let b = finite_index_barrier(&model, &gk, mode, p.t_start.unwrap_or(DEFAULT_T))?;
    let out = ctx.output()?;
    let rows = (0..b.r.len()).map(|i| vec![b.r[i], b.t[i], b.g[i], b.u[i], b.beta[i], b.residual[i]]);
    out.csv("barrier.csv", &["r", "t", "G", "u", "beta", "residual"], rows)?;
    let cert = BarrierCertificate {
        mode: b.mode,
        t_start: b.t_start,
        nodes: b.r.len(),
        certified_nodes: b.certified_nodes,
        certified: b.certified,
        residual_max: b.residual_max,
        ratio_u_phi_drift: b.ratio_u_phi_drift,
        power_ratio_drift: b.power_ratio_drift,
        be_bed_min: b.be_bed_min,
    };
    out.json("certificate.json", &cert)?;
    ctx.say(format!("certified: {}, residual {:.3e}", b.certified, b.residual_max));
    if !b.certified {
        return Err(Failure::Numerical(format!("barrier residual {:.3e} above tolerance", b.residual_max)));
    }
    Ok(())
}

#[derive(Serialize)]
struct CompareSummary {
    boundaries: [f64; 2],
    compare: solver::CompareReport,
    l2: solver::L2Diagnostic,
}

pub fn compare(ctx: &Context) -> Result<(), Failure> {
    let model = ctx.loaded.model()?;
    let coeffs = ctx.loaded.coefficients()?;
    let grid = RadialGrid::ball(model.r_max(), ctx.n())?;
    let bp = barriers(&model, &coeffs, &grid)?;
    let mut b = ctx.loaded.config.params.boundaries.unwrap_or([bp.sub.value(grid.n()), bp.sup.value(grid.n())]);
    b.sort_by(f64::total_cmp);
    let (u, _) = dirichlet(ctx, Some(b[0]))?;
    let (v, _) = dirichlet(ctx, Some(b[1]))?;
    let rep = solver::compare(&model, &coeffs, &u, &v)?;
    let l2 = solver::uniqueness_l2_diagnostic(&model, &u, &v)?;
    let out = ctx.output()?;
    let holds = rep.holds;
    out.json("compare.json", &CompareSummary { boundaries: b, compare: rep, l2 })?;
    ctx.say(format!("u ≤ v: {holds}"));
    if !holds {
        return Err(Failure::Numerical("comparison failed".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct HypothesesReport {
    tables: Vec<PredicateTable>,
    all_hold: bool,
}

pub fn hypotheses(ctx: &Context) -> Result<(), Failure> {
    let model = ctx.loaded.model()?;
    let coeffs = ctx.loaded.coefficients()?;
    let p = &ctx.loaded.config.params;
    let n = ctx.n();
    let which = p.theorem.as_deref().unwrap_or("all");
    let mut tables = Vec::new();
    if matches!(which, "a" | "all") {
        tables.push(theorem_a_predicates(&model, &coeffs, n)?);
    }
    if which == "b" || (which == "all" && p.r1.is_some() && p.r2.is_some()) {
        let (r1, r2) = p.r1.zip(p.r2).ok_or_else(|| config_error("theorem b needs r1 and r2"))?;
        tables.push(theorem_b_predicates(&model, &coeffs, r1, r2, n)?);
    }
    if matches!(which, "bilateral" | "all") {
        tables.push(bilateral_predicates(&model, &coeffs, n)?);
    }
    if which == "comparison" || (which == "all" && p.r_omega.is_some()) {
        let r_omega = p.r_omega.ok_or_else(|| config_error("comparison needs r_omega"))?;
        tables.push(comparison_predicates(&model, &coeffs, r_omega, n)?);
    }
    if tables.is_empty() {
        return Err(config_error(format!("unknown theorem {which:?}")));
    }
    for t in &tables {
        ctx.say(format!("{}: {}", t.theorem, if t.all_hold { "all hold" } else { "FAILS" }));
        for c in &t.predicates {
            ctx.say(format!("  {:<24} {:<5} {:.4e}  {}", c.name, c.holds, c.value, c.detail));
        }
    }
    let all_hold = tables.iter().all(|t| t.all_hold);
    let failing: Vec<String> = tables.iter().filter(|t| !t.all_hold).map(|t| t.theorem.clone()).collect();
    ctx.output()?.json("hypotheses.json", &HypothesesReport { tables, all_hold })?;
    if !all_hold {
        return Err(Failure::Hypothesis(format!("predicates fail for {}", failing.join(", "))));
    }
    Ok(())
}

#[derive(Serialize)]
struct SuiteLine {
    id: usize,
    name: String,
    passed: bool,
    error: Option<String>,
    checks: Vec<Check>,
}

pub fn demo(ctx: &Context) -> Result<(), Failure> {
    let opts = SuiteOptions {
        grid_n: ctx.grid_n.unwrap_or(lichnerowicz::grid::DEFAULT_N),
        seed: ctx.loaded.config.seed.unwrap_or(DEFAULT_SEED),
    };
    let report = run_suite(&opts);
    for r in &report.results {
        ctx.say(r.line());
    }
    let passed = report.results.iter().filter(|r| r.passed).count();
    ctx.say(format!("{passed}/{} criteria pass", report.results.len()));
    let lines: Vec<SuiteLine> = report
        .results
        .iter()
        .map(|r| SuiteLine { id: r.id, name: r.name.clone(), passed: r.passed, error: r.error.clone(), checks: r.checks.clone() })
        .collect();
    ctx.output()?.json("suite.json", &lines)?;
    if report.all_passed {
        Ok(())
    } else {
        let failed: Vec<String> = report.results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
        Err(Failure::Numerical(format!("criteria {} failed", failed.join(", "))))
    }
}
