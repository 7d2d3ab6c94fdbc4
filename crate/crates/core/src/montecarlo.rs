//! Monte Carlo estimates of the polygon-formation events.
//!
//! Each trial draws its own generator from the pair `(seed, trial index)`: the seed fixes
//! a ChaCha8 key and the trial index selects the stream. Any split of the trial range
//! across workers therefore sees the same random numbers, and the estimate is
//! bit-identical for every worker count.
//!
//! Ties follow one rule throughout: a window that sums to exactly the next length does
//! *not* form a polygon. Ties have probability zero under every continuous model here.

use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// How the `n` stick lengths are produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistributionSpec {
    Uniform01,
    UniformTruncated { a: f64 },
    Exponential { rate: f64 },
    BrokenStick,
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DistributionSpec::UniformTruncated { a } if !(0.0..1.0).contains(&a) => Err(domain(
                format!("truncation point must lie in [0, 1), got {a}"),
            )),
            DistributionSpec::Exponential { rate } if !(rate.is_finite() && rate > 0.0) => Err(
                domain(format!("rate must be positive and finite, got {rate}")),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionSpec::Uniform01 => f.write_str("uniform[0,1]"),
            DistributionSpec::UniformTruncated { a } => write!(f, "uniform[{a},1]"),
            DistributionSpec::Exponential { rate } => write!(f, "exponential(rate={rate})"),
            DistributionSpec::BrokenStick => f.write_str("broken-stick"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// No `p + 1` of the sticks form a polygon.
    NoPolygon,
    /// Every choice of `p + 1` sticks forms a polygon.
    AllPolygon,
    /// A uniformly chosen `p + 1` sticks form a polygon.
    RandomSubsetPolygon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventSpec {
    pub kind: EventKind,
    pub p: usize,
}

impl EventSpec {
    pub fn new(kind: EventKind, p: usize) -> Result<Self> {
        if p < 2 {
            return Err(domain(format!("step count p must be at least 2, got {p}")));
        }
        Ok(Self { kind, p })
    }
}

/// Result of [`estimate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub p_hat: f64,
    pub successes: u64,
    pub trials: u64,
    pub std_err: f64,
    pub seed: u64,
    pub n: usize,
    pub event: EventSpec,
    pub dist: DistributionSpec,
}

impl MCEstimate {
    /// `(p_hat - exact) / std_err`; `None` when the standard error is zero.
    pub fn z_score(&self, exact: f64) -> Option<f64> {
        (self.std_err > 0.0).then(|| (self.p_hat - exact) / self.std_err)
    }

    /// `|p_hat - exact| <= k * std_err`. A zero standard error requires an exact hit.
    pub fn within_sigma(&self, exact: f64, k: f64) -> bool {
        (self.p_hat - exact).abs() <= k * self.std_err
    }
}

/// Spacings of the unit interval cut at `cuts`, sorted. `cuts` is sorted in place.
pub fn broken_stick_spacings(cuts: &mut [f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    fill_spacings(cuts, &mut out);
    out
}

fn fill_spacings(cuts: &mut [f64], out: &mut Vec<f64>) {
    cuts.sort_unstable_by(f64::total_cmp);
    out.clear();
    let mut prev = 0.0;
    for &c in cuts.iter() {
        out.push(c - prev);
        prev = c;
    }
    out.push(1.0 - prev);
    out.sort_unstable_by(f64::total_cmp);
}

struct Sampler {
    dist: DistributionSpec,
    exp: Option<Exp<f64>>,
    cuts: Vec<f64>,
}

impl Sampler {
    fn new(dist: DistributionSpec, n: usize) -> Result<Self> {
        dist.validate()?;
        let exp = match dist {
            DistributionSpec::Exponential { rate } => {
                Some(Exp::new(rate).map_err(|e| domain(e.to_string()))?)
            }
            _ => None,
        };
        Ok(Self {
            dist,
            exp,
            cuts: Vec::with_capacity(n.saturating_sub(1)),
        })
    }

    fn fill<R: Rng + ?Sized>(&mut self, n: usize, rng: &mut R, out: &mut Vec<f64>) {
        out.clear();
        match self.dist {
            DistributionSpec::Uniform01 => out.extend((0..n).map(|_| rng.random::<f64>())),
            DistributionSpec::UniformTruncated { a } => {
                out.extend((0..n).map(|_| a + (1.0 - a) * rng.random::<f64>()))
            }
            DistributionSpec::Exponential { .. } => {
                let exp = self.exp.expect("built with rate");
                out.extend((0..n).map(|_| exp.sample(rng)))
            }
            DistributionSpec::BrokenStick => {
                self.cuts.clear();
                self.cuts.extend((0..n - 1).map(|_| rng.random::<f64>()));
                fill_spacings(&mut self.cuts, out);
                return;
            }
        }
        out.sort_unstable_by(f64::total_cmp);
    }
}

/// `n` lengths from `dist`, sorted nondecreasing.
pub fn sample_lengths<R: Rng + ?Sized>(
    dist: DistributionSpec,
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(domain("need at least one stick"));
    }
    let mut out = Vec::with_capacity(n);
    Sampler::new(dist, n)?.fill(n, rng, &mut out);
    Ok(out)
}

fn check_sorted(lengths: &[f64]) -> Result<()> {
    if lengths.windows(2).any(|w| w[0] > w[1]) {
        return Err(domain("lengths must be sorted nondecreasing"));
    }
    Ok(())
}

fn no_polygon_unchecked(sorted: &[f64], p: usize) -> bool {
    sorted
        .windows(p + 1)
        .all(|w| w[..p].iter().sum::<f64>() <= w[p])
}

fn all_polygon_unchecked(sorted: &[f64], p: usize) -> bool {
    if sorted.len() <= p {
        return true;
    }
    sorted[..p].iter().sum::<f64>() > sorted[sorted.len() - 1]
}

/// Every window of `p` consecutive sorted lengths sums to at most the next length.
pub fn no_polygon(sorted: &[f64], p: usize) -> Result<bool> {
    check_sorted(sorted)?;
    Ok(no_polygon_unchecked(sorted, p))
}

/// The `p` shortest lengths sum to more than the longest, which makes every
/// `(p+1)`-subset a polygon.
pub fn all_polygon(sorted: &[f64], p: usize) -> Result<bool> {
    check_sorted(sorted)?;
    Ok(all_polygon_unchecked(sorted, p))
}

/// A sorted set of lengths forms a polygon when all but the longest sum to more than it.
pub fn forms_polygon(sorted_subset: &[f64]) -> bool {
    match sorted_subset.split_last() {
        Some((last, rest)) => rest.iter().sum::<f64>() > *last,
        None => false,
    }
}

fn random_subset_unchecked<R: Rng + ?Sized>(
    sorted: &[f64],
    p: usize,
    rng: &mut R,
    buf: &mut Vec<usize>,
) -> bool {
    buf.clear();
    buf.extend(index::sample(rng, sorted.len(), p + 1).iter());
    buf.sort_unstable();
    let longest = sorted[buf[p]];
    buf[..p].iter().map(|&i| sorted[i]).sum::<f64>() > longest
}

/// Draws a uniform `(p+1)`-subset and tests whether it forms a polygon.
pub fn random_subset_polygon<R: Rng + ?Sized>(
    sorted: &[f64],
    p: usize,
    rng: &mut R,
) -> Result<bool> {
    check_sorted(sorted)?;
    if sorted.len() < p + 1 {
        return Err(domain(format!("need at least p + 1 = {} sticks", p + 1)));
    }
    Ok(random_subset_unchecked(sorted, p, rng, &mut Vec::new()))
}

/// Generator for one trial: key from `seed`, stream from `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

struct TrialKey([u8; 32]);

impl TrialKey {
    fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed).get_seed())
    }

    fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.0);
        rng.set_stream(trial);
        rng
    }
}

fn count_successes(
    event: EventSpec,
    dist: DistributionSpec,
    n: usize,
    key: &TrialKey,
    trials: std::ops::Range<u64>,
) -> Result<u64> {
    let mut sampler = Sampler::new(dist, n)?;
    let mut lengths = Vec::with_capacity(n);
    let mut buf = Vec::with_capacity(event.p + 1);
    let mut hits = 0u64;
    for trial in trials {
        let mut rng = key.rng(trial);
        sampler.fill(n, &mut rng, &mut lengths);
        let hit = match event.kind {
            EventKind::NoPolygon => no_polygon_unchecked(&lengths, event.p),
            EventKind::AllPolygon => all_polygon_unchecked(&lengths, event.p),
            EventKind::RandomSubsetPolygon => {
                random_subset_unchecked(&lengths, event.p, &mut rng, &mut buf)
            }
        };
        hits += u64::from(hit);
    }
    Ok(hits)
}

/// Fraction of `trials` in which `event` occurs, split over `workers` threads.
pub fn estimate(
    event: EventSpec,
    dist: DistributionSpec,
    n: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<MCEstimate> {
    if trials < 1 {
        return Err(domain("trials must be at least 1"));
    }
    if workers < 1 {
        return Err(domain("workers must be at least 1"));
    }
    if n < 1 {
        return Err(domain("need at least one stick"));
    }
    if event.kind == EventKind::RandomSubsetPolygon && n < event.p + 1 {
        return Err(domain(format!(
            "random subset needs n >= p + 1 = {}",
            event.p + 1
        )));
    }
    dist.validate()?;

    let key = TrialKey::new(seed);
    let workers = workers.min(trials as usize) as u64;
    let chunk = trials.div_ceil(workers);
    let successes = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = (w * chunk).min(trials);
                let hi = ((w + 1) * chunk).min(trials);
                let key = &key;
                scope.spawn(move || count_successes(event, dist, n, key, lo..hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .map_err(|_| Error::Resource("worker panicked".into()))?
            })
            .sum::<Result<u64>>()
    })?;

    let p_hat = successes as f64 / trials as f64;
    Ok(MCEstimate {
        p_hat,
        successes,
        trials,
        std_err: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        seed,
        n,
        event,
        dist,
    })
}

/// Default worker count: available parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
