//! Versals as vertex weightings with a unique minimum-weight edge.
//!
//! Weighting a versal `S` of `e` with 2 on `S` and 1 elsewhere gives edge `f`
//! the sum `|f| + |S ∩ f|`, so `e` is the unique lightest edge. This module
//! also measures how often uniform random weightings in `{1..K}` isolate an
//! edge, exactly or by seeded Monte Carlo.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::versal::versal_raw;
use crate::vertex_set::VertexSet;

/// Largest `K^n` accepted by exact enumeration.
pub const EXACT_BUDGET: u64 = 1 << 24;

/// Samples per independently seeded Monte Carlo block.
const MC_BLOCK: u64 = 4096;

/// Positive integer weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weighting(Vec<u32>);

impl Weighting {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if let Some(v) = values.iter().position(|&w| w == 0) {
            return Err(Error::Parameter(format!(
                "weight of vertex {v} must be >= 1"
            )));
        }
        Ok(Weighting(values))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn edge_sum(&self, edge: VertexSet) -> u64 {
        edge.iter().map(|v| u64::from(self.0[v])).sum()
    }
}

/// Weight 2 on `s`, 1 elsewhere. Fails unless `s` is a versal of the edge.
pub fn weight_from_versal(h: &Hypergraph, e_index: usize, s: VertexSet) -> Result<Weighting> {
    if !crate::versal::is_versal(h, e_index, s)? {
        return Err(Error::NotAVersal { index: e_index });
    }
    Ok(Weighting(
        (0..h.n())
            .map(|v| if s.contains(v) { 2 } else { 1 })
            .collect(),
    ))
}

/// Index of the edge with strictly smallest weight sum, if there is one.
pub fn unique_min_edge(h: &Hypergraph, w: &Weighting) -> Result<Option<usize>> {
    if w.0.len() != h.n() {
        return Err(Error::Parameter(format!(
            "weighting has {} values for n = {}",
            w.0.len(),
            h.n()
        )));
    }
    Ok(unique_min_by(h.edges(), |e| w.edge_sum(e)))
}

fn unique_min_by(edges: &[VertexSet], mut sum: impl FnMut(VertexSet) -> u64) -> Option<usize> {
    let mut best = None;
    let mut best_sum = u64::MAX;
    let mut tied = false;
    for (i, &e) in edges.iter().enumerate() {
        let s = sum(e);
        if s < best_sum {
            best = Some(i);
            best_sum = s;
            tied = false;
        } else if s == best_sum {
            tied = true;
        }
    }
    if tied {
        None
    } else {
        best
    }
}

/// Unique lightest edge under the {1,2} weighting that is 2 exactly on `s`.
#[inline]
pub fn unique_min_for_set(h: &Hypergraph, s: VertexSet) -> Option<usize> {
    unique_min_by(h.edges(), |e| (e.len() + e.intersection(s).len()) as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbabilityMode {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Probability {
    Exact {
        #[serde(serialize_with = "ser_ratio")]
        probability: Ratio<u64>,
        value: f64,
    },
    MonteCarlo {
        hits: u64,
        samples: u64,
        seed: u64,
        value: f64,
        standard_error: f64,
    },
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

impl Probability {
    pub fn value(&self) -> f64 {
        match self {
            Probability::Exact { value, .. } | Probability::MonteCarlo { value, .. } => *value,
        }
    }
}

/// Probability that independent uniform weights in `{1..k}` give a unique
/// lightest edge. `jobs` only affects speed: Monte Carlo samples are drawn in
/// fixed-size blocks with per-block seeds, so the estimate is independent of
/// how blocks are spread over workers.
pub fn min_unique_probability(
    h: &Hypergraph,
    k: u32,
    mode: ProbabilityMode,
    jobs: usize,
) -> Result<Probability> {
    if k < 1 {
        return Err(Error::Parameter("K must be >= 1".into()));
    }
    if h.m() == 0 {
        return Err(Error::NoEdges);
    }
    match mode {
        ProbabilityMode::Exact => exact_probability(h, k),
        ProbabilityMode::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::Parameter("sample count must be >= 1".into()));
            }
            Ok(monte_carlo(h, k, samples, seed, jobs))
        }
    }
}

fn exact_probability(h: &Hypergraph, k: u32) -> Result<Probability> {
    let n = h.n();
    let total = (0..n).try_fold(1u64, |acc, _| {
        acc.checked_mul(u64::from(k)).filter(|&t| t <= EXACT_BUDGET)
    });
    let Some(total) = total else {
        return Err(Error::Infeasible(format!(
            "K^n = {k}^{n} exceeds the exact budget of {EXACT_BUDGET}"
        )));
    };
    let mut w = vec![1u32; n];
    let mut hits = 0u64;
    for _ in 0..total {
        if unique_min_by(h.edges(), |e| e.iter().map(|v| u64::from(w[v])).sum()).is_some() {
            hits += 1;
        }
        // Odometer step over {1..k}^n.
        for slot in w.iter_mut() {
            if *slot < k {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
    }
    let probability = Ratio::new(hits, total);
    Ok(Probability::Exact {
        probability,
        value: hits as f64 / total as f64,
    })
}

fn monte_carlo_block(h: &Hypergraph, k: u32, seed: u64, block: u64, count: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut w = vec![0u32; h.n()];
    let mut hits = 0;
    for _ in 0..count {
        for slot in w.iter_mut() {
            *slot = rng.gen_range(1..=k);
        }
        if unique_min_by(h.edges(), |e| e.iter().map(|v| u64::from(w[v])).sum()).is_some() {
            hits += 1;
        }
    }
    hits
}

fn monte_carlo(h: &Hypergraph, k: u32, samples: u64, seed: u64, jobs: usize) -> Probability {
    let blocks = samples.div_ceil(MC_BLOCK);
    let block_size = |b: u64| MC_BLOCK.min(samples - b * MC_BLOCK);
    let hits: u64 = if jobs <= 1 {
        (0..blocks)
            .map(|b| monte_carlo_block(h, k, seed, b, block_size(b)))
            .sum()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..blocks)
                .into_par_iter()
                .map(|b| monte_carlo_block(h, k, seed, b, block_size(b)))
                .sum()
        })
    };
    let p = hits as f64 / samples as f64;
    Probability::MonteCarlo {
        hits,
        samples,
        seed,
        value: p,
        standard_error: (p * (1.0 - p) / samples as f64).sqrt(),
    }
}

/// Round trip between versals and {1,2} weightings over every subset of the
/// universe: the set is a versal of `e` (per `is_versal`) iff its weighting
/// isolates `e`. Returns the first disagreeing set.
pub fn round_trip_mismatch(h: &Hypergraph) -> Option<(VertexSet, Option<usize>, Option<usize>)> {
    (0..1u32 << h.n()).map(VertexSet::from_bits).find_map(|s| {
        let by_weight = unique_min_for_set(h, s);
        let by_versal = (0..h.m()).find(|&e| versal_raw(h.edges(), e, s));
        (by_weight != by_versal).then_some((s, by_versal, by_weight))
    })
}
