//! Run configuration: a JSON file overridden by command-line flags.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Default worker count when neither the flag nor the config sets one.
pub const WORKERS_ENV: &str = "SEP_WORKERS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub rho_minus: f64,
    pub rho_plus: f64,
    pub x: Vec<i64>,
    pub t: Vec<f64>,
    pub lambda: Vec<f64>,
    pub xi: Vec<f64>,
    pub s: Vec<f64>,
    /// Highest moment or cumulant order.
    pub order: usize,
    pub samples: u64,
    pub seed: u64,
    /// Hop rates to the right and left.
    pub p: f64,
    pub q: f64,
    /// Tagged particle label.
    pub tag: i64,
    pub eps: Vec<f64>,
    /// Time step of the master-equation residual.
    pub h: f64,
    /// Add Monte Carlo columns where a command supports them.
    pub monte_carlo: bool,
    pub output: Option<PathBuf>,
    /// Per-sample CSV of `simulate`.
    pub samples_output: Option<PathBuf>,
    pub workers: Option<usize>,
    pub tol_scale: f64,
    pub quick: bool,
    /// Criteria ids for `validate`; empty runs all.
    pub only: Vec<u32>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            rho_minus: 0.5,
            rho_plus: 0.5,
            x: vec![0],
            t: vec![1.0],
            lambda: vec![-0.5, 0.0, 0.5],
            xi: (-10..=10).map(|i| i as f64 / 10.0).collect(),
            s: (-3..=3).map(|i| i as f64 / 10.0).collect(),
            order: 4,
            samples: 10_000,
            seed: 0,
            p: 1.0,
            q: 1.0,
            tag: 0,
            eps: vec![0.2, 0.1, 0.05],
            h: 1e-2,
            monte_carlo: false,
            output: None,
            samples_output: None,
            workers: None,
            tol_scale: 1.0,
            quick: false,
            only: Vec::new(),
        }
    }
}

/// Flags shared by every subcommand; each one replaces the config value.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON config file; flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub rho_minus: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub rho_plus: Option<f64>,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub x: Option<Vec<i64>>,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub t: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub lambda: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub xi: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub s: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub p: Option<f64>,
    #[arg(long, global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tag: Option<i64>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub h: Option<f64>,
    #[arg(long, global = true)]
    pub monte_carlo: bool,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub samples_output: Option<PathBuf>,
    /// Worker threads for sample-level parallelism [default: $SEP_WORKERS, else all cores].
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Multiply every validation tolerance.
    #[arg(long, global = true)]
    pub tol_scale: Option<f64>,
    #[arg(long, global = true)]
    pub quick: bool,
    #[arg(long, global = true, value_delimiter = ',')]
    pub only: Option<Vec<u32>>,
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Config file (if any), then flags, then normalisation.
    pub fn resolve(o: &Overrides) -> Result<Self> {
        let mut c = match &o.config {
            Some(p) => RunConfig::from_json_file(p)?,
            None => RunConfig::default(),
        };
        c.apply(o);
        c.normalize()?;
        Ok(c)
    }

    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! take {
            ($($f:ident),*) => {$(
                if let Some(v) = &o.$f {
                    self.$f = v.clone();
                }
            )*};
        }
        take!(rho_minus, rho_plus, x, t, lambda, xi, s, order, samples, seed, p, q, tag, eps, h, tol_scale, only);
        if o.output.is_some() {
            self.output = o.output.clone();
        }
        if o.samples_output.is_some() {
            self.samples_output = o.samples_output.clone();
        }
        if o.workers.is_some() {
            self.workers = o.workers;
        }
        self.monte_carlo |= o.monte_carlo;
        self.quick |= o.quick;
    }

    /// Sorts and deduplicates the grids; rejects non-finite values.
    pub fn normalize(&mut self) -> Result<()> {
        let finite = |name: &str, v: &[f64]| {
            if v.iter().all(|a| a.is_finite()) {
                Ok(())
            } else {
                Err(CliError::Config(format!("{name} grid has a non-finite value")))
            }
        };
        for (name, g) in [("t", &mut self.t), ("lambda", &mut self.lambda), ("xi", &mut self.xi), ("s", &mut self.s)] {
            finite(name, g)?;
            g.sort_by(f64::total_cmp);
            g.dedup();
        }
        finite("eps", &self.eps)?;
        self.eps.sort_by(|a, b| b.total_cmp(a));
        self.eps.dedup();
        self.x.sort_unstable();
        self.x.dedup();
        self.only.sort_unstable();
        self.only.dedup();
        for (name, v) in [("rho_minus", self.rho_minus), ("rho_plus", self.rho_plus), ("p", self.p), ("q", self.q), ("h", self.h)] {
            if !v.is_finite() {
                return Err(CliError::Config(format!("{name} = {v} is not finite")));
            }
        }
        if !(self.tol_scale > 0.0 && self.tol_scale.is_finite()) {
            return Err(CliError::Config(format!("tol_scale = {} must be positive", self.tol_scale)));
        }
        if self.t.iter().any(|&t| t < 0.0) {
            return Err(CliError::Config("times must be >= 0".into()));
        }
        Ok(())
    }

    /// Flag or config, then the environment variable, then `None` (all cores).
    pub fn worker_count(&self) -> Result<Option<usize>> {
        if let Some(w) = self.workers {
            return if w == 0 { Err(CliError::Config("workers must be >= 1".into())) } else { Ok(Some(w)) };
        }
        match std::env::var(WORKERS_ENV) {
            Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
                Ok(w) if w > 0 => Ok(Some(w)),
                _ => Err(CliError::Config(format!("{WORKERS_ENV} = {v:?} is not a positive integer"))),
            },
            _ => Ok(None),
        }
    }

    pub fn t_max(&self) -> f64 {
        self.t.iter().copied().fold(0.0, f64::max)
    }
}
