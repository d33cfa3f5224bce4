//! Gillespie simulation of a single trajectory.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::SimConfig;
use crate::error::{Result, SimError};

const ABSENT: u32 = u32::MAX;
const MAX_RESAMPLES: u64 = 10_000;

/// Set of bond indices with O(1) insert, remove and uniform choice.
#[derive(Debug, Clone)]
struct BondSet {
    items: Vec<u32>,
    pos: Vec<u32>,
}

impl BondSet {
    fn new(n_bonds: usize) -> Self {
        BondSet { items: Vec::with_capacity(n_bonds), pos: vec![ABSENT; n_bonds] }
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn insert(&mut self, b: usize) {
        if self.pos[b] == ABSENT {
            self.pos[b] = self.items.len() as u32;
            self.items.push(b as u32);
        }
    }

    fn remove(&mut self, b: usize) {
        let i = self.pos[b];
        if i == ABSENT {
            return;
        }
        let last = self.items.pop().unwrap();
        if last as usize != b {
            self.items[i as usize] = last;
            self.pos[last as usize] = i;
        }
        self.pos[b] = ABSENT;
    }
}

/// Lattice state on the window; site `x` lives at index `x + half_width`,
/// bond `(x, x+1)` at index `x + half_width`.
#[derive(Debug, Clone)]
pub struct State {
    pub half_width: i64,
    pub occ: Vec<u8>,
    pub initial: Vec<u8>,
    /// Net right-to-left crossings per bond.
    pub current: Vec<i64>,
    /// Particle positions (site indices), ascending.
    pub particles: Vec<u32>,
    site_particle: Vec<u32>,
    /// Index in `particles` of the label-0 tracer, if tags were requested.
    pub tracer: Option<usize>,
    pub rejections: u64,
    right: BondSet,
    left: BondSet,
}

impl State {
    pub fn site_index(&self, x: i64) -> usize {
        (x + self.half_width) as usize
    }

    pub fn site_of(&self, idx: usize) -> i64 {
        idx as i64 - self.half_width
    }

    pub fn occupied(&self, x: i64) -> bool {
        self.occ[self.site_index(x)] == 1
    }

    fn classify(&mut self, b: usize) {
        let (a, c) = (self.occ[b], self.occ[b + 1]);
        if a == 1 && c == 0 {
            self.right.insert(b);
            self.left.remove(b);
        } else if a == 0 && c == 1 {
            self.left.insert(b);
            self.right.remove(b);
        } else {
            self.right.remove(b);
            self.left.remove(b);
        }
    }

    fn from_occupation(cfg: &SimConfig, occ: Vec<u8>, rejections: u64) -> Self {
        let n = occ.len();
        let mut site_particle = vec![ABSENT; n];
        let mut particles = Vec::new();
        for (i, &o) in occ.iter().enumerate() {
            if o == 1 {
                site_particle[i] = particles.len() as u32;
                particles.push(i as u32);
            }
        }
        let nb = n.saturating_sub(1);
        let mut s = State {
            half_width: cfg.half_width,
            initial: occ.clone(),
            occ,
            current: vec![0; nb],
            particles,
            site_particle,
            tracer: None,
            rejections,
            right: BondSet::new(nb),
            left: BondSet::new(nb),
        };
        for b in 0..nb {
            s.classify(b);
        }
        s
    }

    /// Index of the first particle at a site `>= 1`.
    fn first_right_particle(&self) -> Option<usize> {
        let one = self.site_index(1) as u32;
        let i = self.particles.partition_point(|&p| p < one);
        (i < self.particles.len()).then_some(i)
    }

    fn tags_valid(&self, cfg: &SimConfig, i0: usize) -> bool {
        cfg.tag_labels.iter().all(|&m| {
            let k = i0 as i64 - m;
            k >= 0 && (k as usize) < self.particles.len()
        })
    }

    /// Position of the particle with label `m`.
    pub fn tag_position(&self, m: i64) -> Option<i64> {
        let i0 = self.tracer? as i64;
        let k = i0 - m;
        if k < 0 || k as usize >= self.particles.len() {
            return None;
        }
        Some(self.site_of(self.particles[k as usize] as usize))
    }
}

/// Samples the initial state.  When tags are requested, configurations
/// without the needed particles to the right of the origin are rejected and
/// redrawn; the count is kept in `rejections`.
pub fn init_bernoulli(cfg: &SimConfig, rng: &mut impl Rng) -> Result<State> {
    let n = cfg.sites();
    let tags = !cfg.tag_labels.is_empty();
    if tags && cfg.initial_particles.is_none() && cfg.rho_plus == 0.0 {
        return Err(SimError::NoTracer(format!(
            "rho_plus = 0 leaves no particle right of the origin (rho_minus = {})",
            cfg.rho_minus
        )));
    }
    let mut rejections = 0;
    loop {
        let occ: Vec<u8> = match &cfg.initial_particles {
            Some(ps) => {
                let mut o = vec![0u8; n];
                for &x in ps {
                    o[(x + cfg.half_width) as usize] = 1;
                }
                o
            }
            None => (0..n)
                .map(|i| {
                    let x = i as i64 - cfg.half_width;
                    let r = if x <= 0 { cfg.rho_minus } else { cfg.rho_plus };
                    rng.gen_bool(r) as u8
                })
                .collect(),
        };
        let mut s = State::from_occupation(cfg, occ, rejections);
        if !tags {
            return Ok(s);
        }
        if let Some(i0) = s.first_right_particle() {
            if s.tags_valid(cfg, i0) {
                s.tracer = Some(i0);
                return Ok(s);
            }
        }
        rejections += 1;
        if cfg.initial_particles.is_some() || rejections >= MAX_RESAMPLES {
            return Err(SimError::NoTracer(format!("no valid tagging after {rejections} initial configurations")));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SiteRecord {
    pub time_index: usize,
    pub x: i64,
    pub q: i64,
    pub n: i64,
    /// Occupation of `x`.
    pub eta: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TagRecord {
    pub time_index: usize,
    pub m: i64,
    pub x: i64,
}

/// Counts of pathwise identity failures; all zero on a correct run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Violations {
    /// `N(x,t) = Q(x,t) +/- sum of initial occupations`.
    pub height_current: u64,
    /// `X_m(t) <= x  <=>  N(x,t) >= 1 - m`.
    pub tracer_height: u64,
    /// Labels out of order.
    pub order: u64,
    /// Particle number changed.
    pub conservation: u64,
}

impl Violations {
    pub fn total(&self) -> u64 {
        self.height_current + self.tracer_height + self.order + self.conservation
    }

    pub fn add(&mut self, o: &Violations) {
        self.height_current += o.height_current;
        self.tracer_height += o.tracer_height;
        self.order += o.order;
        self.conservation += o.conservation;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub sample_id: u64,
    pub times: Vec<f64>,
    pub sites: Vec<SiteRecord>,
    pub tags: Vec<TagRecord>,
    pub final_occupation: Vec<u8>,
    pub n_events: u64,
    pub truncated: bool,
    /// Occupation at `-L` or `L` differs from the initial one.
    pub boundary_changed: bool,
    pub rejections: u64,
    pub violations: Violations,
}

impl Trajectory {
    /// `N(x, times[k])`.
    pub fn height(&self, k: usize, x: i64) -> Option<i64> {
        self.sites.iter().find(|r| r.time_index == k && r.x == x).map(|r| r.n)
    }

    pub fn current(&self, k: usize, x: i64) -> Option<i64> {
        self.sites.iter().find(|r| r.time_index == k && r.x == x).map(|r| r.q)
    }

    pub fn tag(&self, k: usize, m: i64) -> Option<i64> {
        self.tags.iter().find(|r| r.time_index == k && r.m == m).map(|r| r.x)
    }

    /// Index of the last record time.
    pub fn last(&self) -> usize {
        self.times.len() - 1
    }
}

/// Generator for sample `sample_id`: seeded by `cfg.seed`, one stream per sample.
pub fn sample_rng(seed: u64, sample_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_id);
    rng
}

/// Samples an initial state and runs it to `t_max`.
pub fn simulate(cfg: &SimConfig, sample_id: u64) -> Result<Trajectory> {
    cfg.validate()?;
    let mut rng = sample_rng(cfg.seed, sample_id);
    let state = init_bernoulli(cfg, &mut rng)?;
    Ok(run(state, cfg, sample_id, &mut rng))
}

pub fn run(mut s: State, cfg: &SimConfig, sample_id: u64, rng: &mut impl Rng) -> Trajectory {
    let mut tr = Trajectory {
        sample_id,
        times: cfg.record_times.clone(),
        sites: Vec::with_capacity(cfg.record_times.len() * cfg.record_sites.len()),
        tags: Vec::new(),
        final_occupation: Vec::new(),
        n_events: 0,
        truncated: false,
        boundary_changed: false,
        rejections: s.rejections,
        violations: Violations::default(),
    };
    let n0 = s.particles.len();
    let mut t = 0.0f64;
    let mut k = 0;
    loop {
        let rate_r = cfg.p * s.right.len() as f64;
        let rate_l = cfg.q * s.left.len() as f64;
        let total = rate_r + rate_l;
        let dt = if total > 0.0 { -(1.0 - rng.gen::<f64>()).ln() / total } else { f64::INFINITY };
        while k < cfg.record_times.len() && cfg.record_times[k] < t + dt {
            record(&s, cfg, k, n0, &mut tr);
            k += 1;
        }
        if k == cfg.record_times.len() {
            break;
        }
        if tr.n_events >= cfg.max_events {
            tr.truncated = true;
            while k < cfg.record_times.len() {
                record(&s, cfg, k, n0, &mut tr);
                k += 1;
            }
            break;
        }
        t += dt;
        tr.n_events += 1;
        let go_right = rng.gen::<f64>() * total < rate_r;
        let set = if go_right { &s.right } else { &s.left };
        let b = set.items[rng.gen_range(0..set.len())] as usize;
        let (from, to) = if go_right { (b, b + 1) } else { (b + 1, b) };
        s.occ[from] = 0;
        s.occ[to] = 1;
        let id = s.site_particle[from];
        s.site_particle[to] = id;
        s.site_particle[from] = ABSENT;
        s.particles[id as usize] = to as u32;
        s.current[b] += if go_right { -1 } else { 1 };
        if b > 0 {
            s.classify(b - 1);
        }
        s.classify(b);
        if b + 1 < s.current.len() {
            s.classify(b + 1);
        }
    }
    let last = s.occ.len() - 1;
    tr.boundary_changed = s.occ[0] != s.initial[0] || s.occ[last] != s.initial[last];
    tr.final_occupation = s.occ;
    tr
}

fn record(s: &State, cfg: &SimConfig, k: usize, n0: usize, tr: &mut Trajectory) {
    let origin = s.site_index(0);
    let nt = s.current[origin];
    if s.particles.len() != n0 || s.occ.iter().map(|&o| o as usize).sum::<usize>() != n0 {
        tr.violations.conservation += 1;
    }
    let mut tag_pos: Vec<(i64, i64)> = Vec::new();
    for &m in &cfg.tag_labels {
        if let Some(x) = s.tag_position(m) {
            tag_pos.push((m, x));
            tr.tags.push(TagRecord { time_index: k, m, x });
        }
    }
    let mut sorted = tag_pos.clone();
    sorted.sort_unstable();
    // larger labels sit further left
    if sorted.windows(2).any(|w| w[0].0 < w[1].0 && !(w[1].1 < w[0].1)) {
        tr.violations.order += 1;
    }
    for &x in &cfg.record_sites {
        let i = s.site_index(x);
        let (n, n_alt) = if x > 0 {
            let now: i64 = s.occ[origin + 1..=i].iter().map(|&o| o as i64).sum();
            let then: i64 = s.initial[origin + 1..=i].iter().map(|&o| o as i64).sum();
            (nt + now, s.current[i] + then)
        } else if x < 0 {
            let now: i64 = s.occ[i + 1..=origin].iter().map(|&o| o as i64).sum();
            let then: i64 = s.initial[i + 1..=origin].iter().map(|&o| o as i64).sum();
            (nt - now, s.current[i] - then)
        } else {
            (nt, nt)
        };
        if n != n_alt {
            tr.violations.height_current += 1;
        }
        for &(m, xm) in &tag_pos {
            if (xm <= x) != (n >= 1 - m) {
                tr.violations.tracer_height += 1;
            }
        }
        tr.sites.push(SiteRecord { time_index: k, x, q: s.current[i], n, eta: s.occ[i] });
    }
}
