//! Monte Carlo estimators.  Samples run in parallel, each on its own RNG
//! stream, and are reduced in sample order so results do not depend on
//! scheduling.

use average::{Estimate as _, Merge, Variance};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::sim::{simulate, Trajectory, Violations};

pub const MIN_SAMPLES: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn from_variance(v: &Variance, seed: u64) -> Self {
        let stderr = if v.len() > 1 { v.error() } else { 0.0 };
        Estimate { mean: v.mean(), stderr, n: v.len(), seed }
    }

    /// `|mean - target| / stderr`; infinite if the error is zero and the values differ.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = (self.mean - target).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }
}

/// Runs samples `0..n` and maps each trajectory to a summary, in sample order.
pub fn run_samples<R, F>(cfg: &SimConfig, n: u64, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(&Trajectory) -> R + Sync,
{
    cfg.validate()?;
    (0..n).into_par_iter().map(|i| simulate(cfg, i).map(|tr| f(&tr))).collect()
}

/// Mean and standard error of several observables at once.
pub fn estimate_observables<F>(cfg: &SimConfig, n: u64, f: F) -> Result<Vec<Estimate>>
where
    F: Fn(&Trajectory) -> Vec<f64> + Sync,
{
    let rows = run_samples(cfg, n, f)?;
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut acc = vec![Variance::new(); width];
    for r in &rows {
        if r.len() != width {
            return Err(SimError::InvalidRequest("observable count changed between samples".into()));
        }
        for (a, &v) in acc.iter_mut().zip(r) {
            a.add(v);
        }
    }
    Ok(acc.iter().map(|v| Estimate::from_variance(v, cfg.seed)).collect())
}

fn time_index(cfg: &SimConfig, t: f64) -> Result<usize> {
    cfg.record_times
        .iter()
        .position(|&s| s == t)
        .ok_or_else(|| SimError::InvalidRequest(format!("time {t} is not a record time")))
}

fn need_site(cfg: &SimConfig, x: i64) -> Result<()> {
    if cfg.record_sites.contains(&x) {
        Ok(())
    } else {
        Err(SimError::InvalidRequest(format!("site {x} is not a record site")))
    }
}

fn need_samples(n: u64) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(SimError::InvalidRequest(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    Ok(())
}

/// `<e^{lambda N(x, t_max)}>`.
pub fn estimate_gf(cfg: &SimConfig, x: i64, lambda: f64, n: u64) -> Result<Estimate> {
    need_samples(n)?;
    need_site(cfg, x)?;
    let k = time_index(cfg, cfg.t_max)?;
    let e = estimate_observables(cfg, n, |tr| vec![(lambda * tr.height(k, x).unwrap() as f64).exp()])?;
    Ok(e[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdfPoint {
    pub x: i64,
    pub p: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaggedEstimate {
    pub label: i64,
    pub t: f64,
    pub n: u64,
    pub seed: u64,
    pub mean: f64,
    pub mean_stderr: f64,
    pub variance: f64,
    /// From the sample fourth central moment.
    pub variance_stderr: f64,
    /// `P[X_m(t) <= x]` at the record sites.
    pub cdf: Vec<CdfPoint>,
    pub rejections: u64,
    pub truncated: u64,
    pub violations: Violations,
}

/// Law of `X_m(t_max)`: empirical CDF on the record sites and moments.
pub fn estimate_tagged(cfg: &SimConfig, m: i64, n: u64) -> Result<TaggedEstimate> {
    need_samples(n)?;
    if !cfg.tag_labels.contains(&m) {
        return Err(SimError::InvalidRequest(format!("label {m} is not among tag_labels")));
    }
    let k = time_index(cfg, cfg.t_max)?;
    let rows = run_samples(cfg, n, |tr| (tr.tag(k, m).unwrap(), tr.rejections, tr.truncated, tr.violations))?;
    let xs: Vec<f64> = rows.iter().map(|r| r.0 as f64).collect();
    let mut v = Variance::new();
    for &x in &xs {
        v.add(x);
    }
    let mean = v.mean();
    let var = v.sample_variance();
    let nf = xs.len() as f64;
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / nf;
    let variance_stderr = ((m4 - var * var * (nf - 3.0) / (nf - 1.0)) / nf).max(0.0).sqrt();
    let mut sites = cfg.record_sites.clone();
    sites.sort_unstable();
    sites.dedup();
    let cdf = sites
        .iter()
        .map(|&x| {
            let p = xs.iter().filter(|&&v| v <= x as f64).count() as f64 / nf;
            CdfPoint { x, p, stderr: (p * (1.0 - p) / nf).sqrt() }
        })
        .collect();
    let mut violations = Violations::default();
    for r in &rows {
        violations.add(&r.3);
    }
    Ok(TaggedEstimate {
        label: m,
        t: cfg.t_max,
        n,
        seed: cfg.seed,
        mean,
        mean_stderr: v.error(),
        variance: var,
        variance_stderr,
        cdf,
        rejections: rows.iter().map(|r| r.1).sum(),
        truncated: rows.iter().filter(|r| r.2).count() as u64,
        violations,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct IdentityAudit {
    pub samples: u64,
    pub checks: u64,
    pub violations: Violations,
    pub truncated: u64,
}

/// Runs `n` samples and sums the pathwise identity failures.
pub fn audit_identities(cfg: &SimConfig, n: u64) -> Result<IdentityAudit> {
    let rows = run_samples(cfg, n, |tr| (tr.violations, tr.truncated))?;
    let mut a = IdentityAudit { samples: n, ..Default::default() };
    let per_time = cfg.record_sites.len() as u64 * (1 + cfg.tag_labels.len() as u64) + 2;
    a.checks = n * cfg.record_times.len() as u64 * per_time;
    for (v, t) in rows {
        a.violations.add(&v);
        a.truncated += t as u64;
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsResult {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = (na * nb / (na + nb)).sqrt();
    let lam = (ne + 0.12 + 0.11 / ne) * d;
    KsResult { statistic: d, p_value: kolmogorov_q(lam) }
}

/// `Q(l) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 l^2}`.
fn kolmogorov_q(l: f64) -> f64 {
    if l < 0.2 {
        return 1.0;
    }
    let mut s = 0.0;
    for k in 1..=200 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * l * l).exp();
        s += if k % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

/// Parity check: `N(-x,t)` under `(rho_-, rho_+)` against `-N(x,t)` under the
/// swapped densities.
pub fn parity_ks(cfg: &SimConfig, x: i64, n: u64) -> Result<KsResult> {
    need_site(cfg, -x)?;
    need_site(cfg, x)?;
    let k = time_index(cfg, cfg.t_max)?;
    let a = run_samples(cfg, n, |tr| tr.height(k, -x).unwrap() as f64)?;
    let mut swapped = cfg.clone();
    std::mem::swap(&mut swapped.rho_minus, &mut swapped.rho_plus);
    swapped.seed = cfg.seed ^ 0x9e37_79b9_7f4a_7c15;
    let b = run_samples(&swapped, n, |tr| -(tr.height(k, x).unwrap() as f64))?;
    Ok(ks_two_sample(&a, &b))
}

/// Occupation of each record site, averaged over the record times of a
/// sample and then over samples.
pub fn estimate_density(cfg: &SimConfig, n: u64) -> Result<Vec<Estimate>> {
    let sites = cfg.record_sites.clone();
    let nt = cfg.record_times.len() as f64;
    estimate_observables(cfg, n, |tr| {
        sites
            .iter()
            .map(|&x| tr.sites.iter().filter(|r| r.x == x).map(|r| r.eta as f64).sum::<f64>() / nt)
            .collect()
    })
}

pub fn merge_variances(parts: &[Variance]) -> Variance {
    let mut v = Variance::new();
    for p in parts {
        v.merge(p);
    }
    v
}
