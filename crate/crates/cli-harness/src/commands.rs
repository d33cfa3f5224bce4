//! One function per subcommand. Each returns the text to emit and whether
//! the run should exit successfully.

use asep_duality::{evolution_residual, symmetric_limit_check, tau_moment, AsepParams};
use asymptotics_ldf::{xi0_solve, RateFunctions, Transform};
use kernel_fredholm::{gf_height, tagged_cdf, DensityPair};
use moment_cumulant_algebra::{cumulant_n_finite, moment_n, moments_spectral, MAX_CONTOUR_J};
use num_complex::Complex;
use serde::Serialize;
use sep_simulator::{
    estimate_gf, estimate_observables, estimate_tagged, fmt_f64, run_samples, trajectory_table, CsvTable,
    SimConfig, Violations,
};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::validate::{run_all, ValidateOptions};

pub const GF_SCHEMA: &str = "sep-gf/v1 x,t,lambda,re,im,est_error,converged";
pub const MOMENTS_SCHEMA: &str = "sep-moments/v1 x,t,n,moment,moment_contour,contour_error";
pub const CUMULANTS_SCHEMA: &str = "sep-cumulants/v1 x,t,n,cumulant";
pub const RATE_FN_SCHEMA: &str = "sep-rate-fn/v1 kind,arg,value,optimizer,method,low_confidence,ft_residual";
pub const TAGGED_SCHEMA: &str = "sep-tagged-dist/v1 x,t,cdf,est_error,mc_p,mc_stderr";

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    pub ok: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, ok: true }
    }
}

fn density(c: &RunConfig) -> Result<DensityPair<f64>> {
    DensityPair::new(c.rho_minus, c.rho_plus).map_err(CliError::compute)
}

fn csv(t: &CsvTable) -> Result<String> {
    t.to_string_csv().map_err(CliError::compute)
}

fn json<S: Serialize>(v: &S) -> Result<String> {
    crate::json::to_string(v).map_err(CliError::compute)
}

pub fn gf(c: &RunConfig) -> Result<Output> {
    let d = density(c)?;
    let mut table = CsvTable::new(GF_SCHEMA, &["x", "t", "lambda", "re", "im", "est_error", "converged"]);
    let mut ok = true;
    for &x in &c.x {
        for &t in &c.t {
            for &l in &c.lambda {
                let g = gf_height(x, t, Complex::new(l, 0.0), &d).map_err(CliError::compute)?;
                ok &= g.converged;
                table.push(vec![
                    x.to_string(),
                    fmt_f64(t),
                    fmt_f64(l),
                    fmt_f64(g.value.re),
                    fmt_f64(g.value.im),
                    fmt_f64(g.est_error),
                    g.converged.to_string(),
                ]);
            }
        }
    }
    Ok(Output { body: csv(&table)?, ok })
}

pub fn moments(c: &RunConfig) -> Result<Output> {
    let d = density(c)?;
    let mut table = CsvTable::new(MOMENTS_SCHEMA, &["x", "t", "n", "moment", "moment_contour", "contour_error"]);
    let mut ok = true;
    for &x in &c.x {
        for &t in &c.t {
            let m = moments_spectral(x, t, &d, c.order).map_err(CliError::compute)?;
            for (i, v) in m.iter().enumerate() {
                let n = i + 1;
                let (mc, me) = if n <= MAX_CONTOUR_J {
                    let e = moment_n(x, t, &d, n).map_err(CliError::compute)?;
                    ok &= e.converged;
                    (fmt_f64(e.value), fmt_f64(e.est_error))
                } else {
                    (String::new(), String::new())
                };
                table.push(vec![x.to_string(), fmt_f64(t), n.to_string(), fmt_f64(*v), mc, me]);
            }
        }
    }
    Ok(Output { body: csv(&table)?, ok })
}

pub fn cumulants(c: &RunConfig) -> Result<Output> {
    let d = density(c)?;
    let mut table = CsvTable::new(CUMULANTS_SCHEMA, &["x", "t", "n", "cumulant"]);
    for &x in &c.x {
        for &t in &c.t {
            for n in 1..=c.order {
                let k = cumulant_n_finite(x, t, &d, n).map_err(CliError::compute)?;
                table.push(vec![x.to_string(), fmt_f64(t), n.to_string(), fmt_f64(k)]);
            }
        }
    }
    Ok(Output::ok(csv(&table)?))
}

/// `phi(xi)` rows (with the fluctuation-symmetry residual) then `C(s)` rows.
pub fn rate_fn(c: &RunConfig) -> Result<Output> {
    let d = density(c)?;
    let rf = RateFunctions::new(d);
    let slope = ((1.0 - c.rho_plus) / (1.0 - c.rho_minus)).ln();
    let mut table = CsvTable::new(
        RATE_FN_SCHEMA,
        &["kind", "arg", "value", "optimizer", "method", "low_confidence", "ft_residual"],
    );
    let mut xs = c.xi.clone();
    if let Ok(x0) = xi0_solve(&d) {
        if !xs.contains(&x0) {
            xs.push(x0);
            xs.sort_by(f64::total_cmp);
        }
    }
    let mut ok = true;
    // a failed point becomes a NaN row and a nonzero exit
    let mut row = |kind: &str, arg: f64, v: asymptotics_ldf::Result<Transform<f64>>, ft: Option<f64>| match v {
        Ok(v) => {
            ok &= !v.low_confidence;
            table.push(vec![
                kind.into(),
                fmt_f64(arg),
                fmt_f64(v.value),
                fmt_f64(v.arg),
                v.method.as_str().into(),
                v.low_confidence.to_string(),
                ft.map(fmt_f64).unwrap_or_default(),
            ]);
        }
        Err(e) => {
            eprintln!("sep: rate-fn {kind} at {arg}: {e}");
            ok = false;
            let nan = fmt_f64(f64::NAN);
            table.push(vec![kind.into(), fmt_f64(arg), nan.clone(), nan.clone(), "error".into(), "true".into(), nan]);
        }
    };
    for &xi in &xs {
        let a = rf.phi_rate(xi);
        let ft = match (&a, rf.phi_rate(-xi)) {
            (Ok(a), Ok(b)) => Some(a.value - b.value - 2.0 * xi * slope),
            _ => None,
        };
        row("phi", xi, a, ft);
    }
    for &s in &c.s {
        row("C", s, rf.c_of_s(s), None);
    }
    Ok(Output { body: csv(&table)?, ok })
}

#[derive(Serialize)]
struct Xi0Report {
    schema: &'static str,
    rho_minus: f64,
    rho_plus: f64,
    xi0: f64,
    /// `-xi0`: limit of `<X_0(t)>/sqrt(4t)`.
    tracer_velocity: f64,
    phi_at_xi0: f64,
}

pub fn xi0(c: &RunConfig) -> Result<Output> {
    let d = density(c)?;
    let x0 = xi0_solve(&d).map_err(CliError::compute)?;
    let phi = RateFunctions::new(d).phi_rate(x0).map_err(CliError::compute)?.value;
    Ok(Output::ok(json(&Xi0Report {
        schema: "sep-xi0/v1",
        rho_minus: c.rho_minus,
        rho_plus: c.rho_plus,
        xi0: x0,
        tracer_velocity: 0.0 - x0,
        phi_at_xi0: phi,
    })?))
}

/// Exact `P[X_0(t) <= x]` over the grids; Monte Carlo columns with `--monte-carlo`.
pub fn tagged_dist(c: &RunConfig) -> Result<Output> {
    let d = density(c)?;
    let mut table = CsvTable::new(TAGGED_SCHEMA, &["x", "t", "cdf", "est_error", "mc_p", "mc_stderr"]);
    let mut ok = true;
    for &t in &c.t {
        let mc = if c.monte_carlo {
            let cfg = SimConfig::new(c.rho_minus, c.rho_plus, t)
                .with_record_sites(c.x.clone())
                .with_tags(vec![0])
                .with_seed(c.seed);
            Some(estimate_tagged(&cfg, 0, c.samples).map_err(CliError::compute)?)
        } else {
            None
        };
        for &x in &c.x {
            // a failed point becomes a NaN row and a nonzero exit
            let (v, e) = match tagged_cdf(x, t, &d) {
                Ok(e) => {
                    ok &= e.converged;
                    (e.value, e.est_error)
                }
                Err(err) => {
                    eprintln!("sep: tagged-dist x={x} t={t}: {err}");
                    ok = false;
                    (f64::NAN, f64::NAN)
                }
            };
            let (p, s) = match mc.as_ref().and_then(|m| m.cdf.iter().find(|p| p.x == x)) {
                Some(pt) => (fmt_f64(pt.p), fmt_f64(pt.stderr)),
                None => (String::new(), String::new()),
            };
            table.push(vec![x.to_string(), fmt_f64(t), fmt_f64(v), fmt_f64(e), p, s]);
        }
    }
    Ok(Output { body: csv(&table)?, ok })
}

#[derive(Serialize)]
struct HeightRow {
    x: i64,
    t: f64,
    mean_n: f64,
    stderr_n: f64,
    mean_q: f64,
    stderr_q: f64,
}

#[derive(Serialize)]
struct TracerRow {
    m: i64,
    t: f64,
    mean: f64,
    stderr: f64,
}

#[derive(Serialize)]
struct GfCheck {
    x: i64,
    t: f64,
    lambda: f64,
    monte_carlo: f64,
    stderr: f64,
    formula: f64,
    z_score: f64,
}

#[derive(Serialize)]
struct SimulateReport {
    schema: &'static str,
    rho_minus: f64,
    rho_plus: f64,
    p: f64,
    q: f64,
    half_width: i64,
    samples: u64,
    seed: u64,
    heights: Vec<HeightRow>,
    tracer: Vec<TracerRow>,
    /// Only for symmetric rates.
    gf_check: Vec<GfCheck>,
    truncated: u64,
    rejections: u64,
    violations: Violations,
}

pub fn simulate(c: &RunConfig) -> Result<Output> {
    let mut cfg = SimConfig::new(c.rho_minus, c.rho_plus, c.t_max())
        .with_rates(c.p, c.q)
        .with_record_sites(c.x.clone())
        .with_tags(vec![c.tag])
        .with_seed(c.seed);
    cfg.record_times = c.t.clone();
    let nt = cfg.record_times.len();
    let obs = |tr: &sep_simulator::Trajectory| {
        let mut v = Vec::with_capacity(nt * (2 * c.x.len() + 1) + 2);
        for k in 0..nt {
            for &x in &c.x {
                let r = tr.sites.iter().find(|r| r.time_index == k && r.x == x).expect("record site");
                v.push(r.n as f64);
                v.push(r.q as f64);
            }
            v.push(tr.tags.iter().find(|r| r.time_index == k).expect("tag").x as f64);
        }
        v
    };
    let est = estimate_observables(&cfg, c.samples, obs).map_err(CliError::compute)?;
    let mut heights = Vec::new();
    let mut tracer = Vec::new();
    let mut it = est.iter();
    for &t in &cfg.record_times {
        for &x in &c.x {
            let (n, q) = (it.next().unwrap(), it.next().unwrap());
            heights.push(HeightRow { x, t, mean_n: n.mean, stderr_n: n.stderr, mean_q: q.mean, stderr_q: q.stderr });
        }
        let m = it.next().unwrap();
        tracer.push(TracerRow { m: c.tag, t, mean: m.mean, stderr: m.stderr });
    }
    let stats = run_samples(&cfg, c.samples, |tr| (tr.truncated, tr.rejections, tr.violations)).map_err(CliError::compute)?;
    let mut violations = Violations::default();
    for s in &stats {
        violations.add(&s.2);
    }
    let mut gf_check = Vec::new();
    let mut ok = violations.total() == 0;
    if c.p == c.q && c.samples >= sep_simulator::MIN_SAMPLES {
        let d = density(c)?;
        for &x in &c.x {
            for &l in &c.lambda {
                let mc = estimate_gf(&cfg, x, l, c.samples).map_err(CliError::compute)?;
                let f = gf_height(x, cfg.t_max / c.p, Complex::new(l, 0.0), &d).map_err(CliError::compute)?.value.re;
                gf_check.push(GfCheck { x, t: cfg.t_max, lambda: l, monte_carlo: mc.mean, stderr: mc.stderr, formula: f, z_score: mc.z_score(f) });
            }
        }
    }
    if let Some(path) = &c.samples_output {
        let trs = run_samples(&cfg, c.samples, |tr| tr.clone()).map_err(CliError::compute)?;
        let table = trajectory_table(&trs, &cfg.tag_labels);
        std::fs::write(path, csv(&table)?)?;
    }
    let truncated = stats.iter().filter(|s| s.0).count() as u64;
    ok &= truncated == 0;
    let report = SimulateReport {
        schema: "sep-simulate/v1",
        rho_minus: c.rho_minus,
        rho_plus: c.rho_plus,
        p: c.p,
        q: c.q,
        half_width: cfg.half_width,
        samples: c.samples,
        seed: c.seed,
        heights,
        tracer,
        gf_check,
        truncated,
        rejections: stats.iter().map(|s| s.1).sum(),
        violations,
    };
    Ok(Output { body: json(&report)?, ok })
}

#[derive(Serialize)]
struct MomentCheck {
    n: usize,
    value: f64,
    est_error: f64,
    monte_carlo: Option<f64>,
    stderr: Option<f64>,
    residual_h: f64,
    residual_half_h: f64,
    /// Near 4 when the residual is second order in `h`.
    halving_ratio: f64,
}

#[derive(Serialize)]
struct LimitRow {
    n: usize,
    rho_minus: f64,
    rho_plus: f64,
    extrapolated: f64,
    sep_value: f64,
    rel_error: f64,
    monotone: bool,
}

#[derive(Serialize)]
struct DualityPoint {
    x: i64,
    t: f64,
    moments: Vec<MomentCheck>,
    symmetric_limit: Vec<LimitRow>,
}

#[derive(Serialize)]
struct DualityReport {
    schema: &'static str,
    p: f64,
    q: f64,
    tau: f64,
    rho_minus: f64,
    rho_plus: f64,
    h: f64,
    eps: Vec<f64>,
    points: Vec<DualityPoint>,
}

/// `tau`-moments for `p < q`, their master-equation residuals, and the
/// symmetric limit at the same densities.
pub fn duality_check(c: &RunConfig) -> Result<Output> {
    let d = density(c)?;
    let a = AsepParams::new(c.p, c.q, d).map_err(CliError::compute)?;
    let tau = c.p / c.q;
    let mut points = Vec::new();
    for &x in &c.x {
        for &t in &c.t {
            let mut moments = Vec::new();
            let cfg = SimConfig::new(c.rho_minus, c.rho_plus, t).with_rates(c.p, c.q).with_record_sites(vec![x]).with_seed(c.seed);
            for n in 1..=2usize {
                let r = tau_moment(n, x, t, &a).map_err(CliError::compute)?;
                let (mc, se) = if c.monte_carlo {
                    let e = estimate_gf(&cfg, x, n as f64 * tau.ln(), c.samples).map_err(CliError::compute)?;
                    (Some(e.mean), Some(e.stderr))
                } else {
                    (None, None)
                };
                let (r1, r2) = if t > c.h {
                    let r1 = evolution_residual(n as u32, x, t, &a, c.h).map_err(CliError::compute)?;
                    let r2 = evolution_residual(n as u32, x, t, &a, c.h / 2.0).map_err(CliError::compute)?;
                    (r1, r2)
                } else {
                    (f64::NAN, f64::NAN)
                };
                moments.push(MomentCheck {
                    n,
                    value: r.value.re,
                    est_error: r.est_error,
                    monte_carlo: mc,
                    stderr: se,
                    residual_h: r1,
                    residual_half_h: r2,
                    halving_ratio: r1 / r2,
                });
            }
            let mut symmetric_limit = Vec::new();
            for n in 1..=2 {
                let r = symmetric_limit_check(n, x, t, &d, &c.eps).map_err(CliError::compute)?;
                symmetric_limit.push(LimitRow {
                    n,
                    rho_minus: c.rho_minus,
                    rho_plus: c.rho_plus,
                    extrapolated: r.extrapolated,
                    sep_value: r.sep_value,
                    rel_error: r.rel_error,
                    monotone: r.monotone,
                });
            }
            points.push(DualityPoint { x, t, moments, symmetric_limit });
        }
    }
    Ok(Output::ok(json(&DualityReport {
        schema: "sep-duality-check/v1",
        p: c.p,
        q: c.q,
        tau,
        rho_minus: c.rho_minus,
        rho_plus: c.rho_plus,
        h: c.h,
        eps: c.eps.clone(),
        points,
    })?))
}

/// Runs the acceptance suite; progress lines go to stderr.
pub fn validate(c: &RunConfig) -> Result<Output> {
    let o = ValidateOptions { quick: c.quick, tol_scale: c.tol_scale, seed: c.seed, only: c.only.clone() };
    let m = run_all(&o, |r| eprintln!("{}", r.line()));
    Ok(Output { body: json(&m)?, ok: m.all_pass })
}
