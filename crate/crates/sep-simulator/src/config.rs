use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

pub const DEFAULT_MAX_EVENTS: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    pub rho_minus: f64,
    pub rho_plus: f64,
    /// Rate of hops to the right.
    pub p: f64,
    /// Rate of hops to the left.
    pub q: f64,
    /// Sites `-half_width..=half_width`; bonds leaving the window are frozen.
    pub half_width: i64,
    pub t_max: f64,
    pub seed: u64,
    pub record_sites: Vec<i64>,
    /// Ascending, within `[0, t_max]`.
    pub record_times: Vec<f64>,
    pub tag_labels: Vec<i64>,
    pub max_events: u64,
    /// Explicit initial particle positions replacing the Bernoulli sample.
    pub initial_particles: Option<Vec<i64>>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            rho_minus: 0.5,
            rho_plus: 0.5,
            p: 1.0,
            q: 1.0,
            half_width: 0,
            t_max: 1.0,
            seed: 0,
            record_sites: vec![0],
            record_times: vec![1.0],
            tag_labels: Vec::new(),
            max_events: DEFAULT_MAX_EVENTS,
            initial_particles: None,
        }
    }
}

impl SimConfig {
    /// Symmetric hopping, recording at `t_max` only, window sized automatically.
    pub fn new(rho_minus: f64, rho_plus: f64, t_max: f64) -> Self {
        SimConfig { rho_minus, rho_plus, t_max, record_times: vec![t_max], ..Default::default() }.with_auto_half_width()
    }

    pub fn with_record_sites(mut self, sites: Vec<i64>) -> Self {
        self.record_sites = sites;
        self.with_auto_half_width()
    }

    pub fn with_tags(mut self, labels: Vec<i64>) -> Self {
        self.tag_labels = labels;
        self.with_auto_half_width()
    }

    pub fn with_rates(mut self, p: f64, q: f64) -> Self {
        self.p = p;
        self.q = q;
        self.with_auto_half_width()
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// `max|record_sites| + ceil(6 sqrt(t max(p,q))) + 10`.
    pub fn min_half_width(&self) -> i64 {
        let reach = self.record_sites.iter().map(|x| x.abs()).max().unwrap_or(0);
        let cone = (6.0 * (self.t_max.max(0.0) * self.p.max(self.q)).sqrt()).ceil() as i64;
        reach + cone + 10
    }

    /// Room for tagged particles: they start about `|m|/rho` from the origin
    /// and spread by the same light cone.
    pub fn tag_room(&self) -> i64 {
        if self.tag_labels.is_empty() {
            return 0;
        }
        let m = self.tag_labels.iter().map(|m| m.abs()).max().unwrap_or(0);
        let rho = [self.rho_minus, self.rho_plus].into_iter().filter(|&r| r > 0.0).fold(1.0f64, f64::min);
        ((m as f64 + 8.0) / rho).ceil() as i64
    }

    pub fn with_auto_half_width(mut self) -> Self {
        self.half_width = self.min_half_width() + self.tag_room();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(SimError::InvalidConfig(m));
        for (name, r) in [("rho_minus", self.rho_minus), ("rho_plus", self.rho_plus)] {
            if !(0.0..=1.0).contains(&r) {
                return bad(format!("{name} = {r} is not in [0, 1]"));
            }
        }
        if !(self.p >= 0.0 && self.q >= 0.0 && self.p + self.q > 0.0) || !(self.p + self.q).is_finite() {
            return bad(format!("rates p = {}, q = {} must be >= 0 with p + q > 0", self.p, self.q));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return bad(format!("t_max = {} must be finite and >= 0", self.t_max));
        }
        if self.half_width < self.min_half_width() {
            return bad(format!("half_width {} below the light-cone minimum {}", self.half_width, self.min_half_width()));
        }
        if self.record_times.is_empty() {
            return bad("record_times is empty".into());
        }
        if self.record_times.windows(2).any(|w| !(w[0] <= w[1])) {
            return bad("record_times must be ascending".into());
        }
        if self.record_times.iter().any(|&t| !(t >= 0.0 && t <= self.t_max)) {
            return bad("record_times must lie in [0, t_max]".into());
        }
        if let Some(ps) = &self.initial_particles {
            let mut s = ps.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return bad("initial_particles has a repeated site".into());
            }
            if s.iter().any(|x| x.abs() > self.half_width) {
                return bad("initial_particles outside the window".into());
            }
        }
        Ok(())
    }

    pub fn sites(&self) -> usize {
        (2 * self.half_width + 1) as usize
    }

    /// `tau = p/q`.
    pub fn tau(&self) -> f64 {
        self.p / self.q
    }
}
