//! Candidate streams: exhaustive antichains, exhaustive uniform families and
//! seeded random hypergraphs.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::{VertexSet, VERTEX_CAP};

/// Largest `n` for exhaustive antichain enumeration.
pub const ANTICHAIN_MAX_N: usize = 5;

/// Largest number of candidate edges `C(n, r)` for exhaustive uniform sweeps.
pub const UNIFORM_MAX_CANDIDATES: usize = 24;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Every antichain of distinct nonempty subsets of `{0..n-1}` with at least
/// one edge, each exactly once. Edges appear in increasing bitmask order.
pub fn enum_antichains(n: usize) -> Result<Vec<Hypergraph>> {
    if n > ANTICHAIN_MAX_N {
        return Err(Error::Infeasible(format!(
            "exhaustive antichains need n <= {ANTICHAIN_MAX_N}, got {n}"
        )));
    }
    let candidates: Vec<VertexSet> = (1u32..1 << n).map(VertexSet::from_bits).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_antichains(n, &candidates, 0, &mut chosen, &mut out);
    Ok(out)
}

fn extend_antichains(
    n: usize,
    candidates: &[VertexSet],
    start: usize,
    chosen: &mut Vec<VertexSet>,
    out: &mut Vec<Hypergraph>,
) {
    for i in start..candidates.len() {
        let c = candidates[i];
        if chosen.iter().all(|&e| !e.is_subset(c) && !c.is_subset(e)) {
            chosen.push(c);
            out.push(Hypergraph::new_unchecked(n, chosen.clone()));
            extend_antichains(n, candidates, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// All `r`-subsets of `{0..n-1}` in lexicographic order.
pub fn r_subsets(n: usize, r: usize) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = (0u32..1 << n)
        .map(VertexSet::from_bits)
        .filter(|s| s.len() == r)
        .collect();
    out.sort_by(VertexSet::canonical_cmp);
    out
}

/// The uniform families on `C(n, r)` candidate edges, addressed by a bitmask
/// over the candidates. Index `i` selects candidate `j` iff bit `j` of `i` is
/// set; only masks with `m_min <= popcount <= m_max` are instances.
#[derive(Clone, Debug)]
pub struct UniformFamilies {
    n: usize,
    candidates: Vec<VertexSet>,
    m_min: usize,
    m_max: usize,
}

impl UniformFamilies {
    pub fn new(n: usize, r: usize, m_min: usize, m_max: usize) -> Result<Self> {
        if n > VERTEX_CAP {
            return Err(Error::UniverseTooLarge { n });
        }
        if r == 0 || r > n {
            return Err(Error::Infeasible(format!(
                "rank {r} impossible on {n} vertices"
            )));
        }
        let c = binomial(n, r);
        if c > UNIFORM_MAX_CANDIDATES as u64 {
            return Err(Error::Infeasible(format!(
                "C({n},{r}) = {c} candidate edges exceeds {UNIFORM_MAX_CANDIDATES}"
            )));
        }
        if m_min > m_max || m_min as u64 > c {
            return Err(Error::Infeasible(format!(
                "edge-count range {m_min}..={m_max} is empty for C({n},{r}) = {c}"
            )));
        }
        Ok(UniformFamilies {
            n,
            candidates: r_subsets(n, r),
            m_min: m_min.max(1),
            m_max,
        })
    }

    /// Number of raw indices (`2^C(n,r)`), instances or not.
    pub fn index_len(&self) -> u64 {
        1u64 << self.candidates.len()
    }

    pub fn get(&self, index: u64) -> Option<Hypergraph> {
        let m = index.count_ones() as usize;
        if index >= self.index_len() || m < self.m_min || m > self.m_max {
            return None;
        }
        let edges = (0..self.candidates.len())
            .filter(|j| index >> j & 1 == 1)
            .map(|j| self.candidates[j])
            .collect();
        Some(Hypergraph::new_unchecked(self.n, edges))
    }

    pub fn iter(&self) -> impl Iterator<Item = Hypergraph> + '_ {
        (0..self.index_len()).filter_map(|i| self.get(i))
    }
}

/// Every uniform family of rank `r` on `n` vertices with `m_min..=m_max` edges.
pub fn enum_uniform(n: usize, r: usize, m_min: usize, m_max: usize) -> Result<UniformFamilies> {
    UniformFamilies::new(n, r, m_min, m_max)
}

fn random_antichain_with(n: usize, rng: &mut ChaCha8Rng) -> Hypergraph {
    let k = rng.gen_range(1..=2 * n);
    let mut sets: Vec<VertexSet> = Vec::with_capacity(k);
    for _ in 0..k {
        let size = rng.gen_range(1..=n);
        let s: VertexSet = sample(rng, n, size).into_iter().collect();
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    let maximal: Vec<VertexSet> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && s.is_subset(t)))
        .collect();
    Hypergraph::new_unchecked(n, maximal)
}

/// A seeded random antichain: a random family of nonempty subsets reduced to
/// its containment-maximal members. Never edgeless.
pub fn random_antichain(n: usize, seed: u64) -> Result<Hypergraph> {
    if n == 0 || n > VERTEX_CAP {
        return Err(Error::Parameter(format!(
            "n must be in 1..={VERTEX_CAP}, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_antichain_with(n, &mut rng))
}

fn random_uniform_with(n: usize, r: usize, m: usize, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut edges: Vec<VertexSet> = Vec::with_capacity(m);
    while edges.len() < m {
        let s: VertexSet = sample(rng, n, r).into_iter().collect();
        if !edges.contains(&s) {
            edges.push(s);
        }
    }
    Hypergraph::new_unchecked(n, edges)
}

/// `m` distinct random `r`-subsets of `{0..n-1}`.
pub fn random_uniform(n: usize, r: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    if n == 0 || n > VERTEX_CAP || r == 0 || r > n || m == 0 || m as u64 > binomial(n, r) {
        return Err(Error::Parameter(format!(
            "no uniform family with n={n}, r={r}, m={m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_uniform_with(n, r, m, &mut rng))
}

fn indexed_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sample `index` of a random antichain plan: `n` drawn from the range, then
/// a random antichain. Depends only on `(n range, seed, index)`.
pub fn random_antichain_sample(n_min: usize, n_max: usize, seed: u64, index: u64) -> Hypergraph {
    let mut rng = indexed_rng(seed, index);
    let n = rng.gen_range(n_min.max(1)..=n_max);
    random_antichain_with(n, &mut rng)
}

/// Sample `index` of a random uniform plan: `n` from the range (at least 2),
/// `1 <= r < n`, and `2 <= m <= min(C(n, r), 2n)` distinct edges.
pub fn random_uniform_sample(n_min: usize, n_max: usize, seed: u64, index: u64) -> Hypergraph {
    let mut rng = indexed_rng(seed, index);
    let n = rng.gen_range(n_min.max(2)..=n_max);
    let r = rng.gen_range(1..n);
    let m_cap = binomial(n, r).min(2 * n as u64) as usize;
    let m = rng.gen_range(2..=m_cap);
    random_uniform_with(n, r, m, &mut rng)
}
