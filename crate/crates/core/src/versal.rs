//! The versal predicate and exact enumeration of versals.
//!
//! A set `S` is a versal for edge `e` when `e` is the unique edge minimising
//! `|f| + |S ∩ f|`. Versals of different edges are therefore disjoint, and a
//! versal stays a versal when vertices outside `S ∪ e` are added to it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// Largest universe for which full `2^n` subset enumeration is allowed.
pub const ENUMERATION_CAP: usize = 20;

#[inline]
pub(crate) fn score(f: VertexSet, s: VertexSet) -> usize {
    f.len() + f.intersection(s).len()
}

/// General versal test on raw edges; `e` must index into `edges`.
#[inline]
pub(crate) fn versal_raw(edges: &[VertexSet], e: usize, s: VertexSet) -> bool {
    let own = score(edges[e], s);
    edges
        .iter()
        .enumerate()
        .all(|(i, &f)| i == e || own < score(f, s))
}

/// The simplified test valid for uniform hypergraphs: `|S ∩ e| < |S ∩ f|`.
#[inline]
pub(crate) fn versal_raw_uniform(edges: &[VertexSet], e: usize, s: VertexSet) -> bool {
    let own = edges[e].intersection(s).len();
    edges
        .iter()
        .enumerate()
        .all(|(i, &f)| i == e || own < f.intersection(s).len())
}

fn check_index(h: &Hypergraph, e_index: usize) -> Result<VertexSet> {
    h.edge(e_index)
}

fn check_enumerable(h: &Hypergraph) -> Result<()> {
    if h.n() > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            n: h.n(),
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// True iff `|e| + |S ∩ e| < |f| + |S ∩ f|` for every other edge `f`.
/// Vertices of `s` outside the universe are ignored by the test but rejected.
pub fn is_versal(h: &Hypergraph, e_index: usize, s: VertexSet) -> Result<bool> {
    check_index(h, e_index)?;
    if let Some(vertex) = s.difference(h.universe()).iter().next() {
        return Err(Error::Vertex { vertex, n: h.n() });
    }
    Ok(versal_raw(h.edges(), e_index, s))
}

/// The uniform-case test. Errors on non-uniform input.
pub fn is_versal_uniform(h: &Hypergraph, e_index: usize, s: VertexSet) -> Result<bool> {
    check_index(h, e_index)?;
    if !h.is_uniform() {
        return Err(Error::NotUniform);
    }
    Ok(versal_raw_uniform(h.edges(), e_index, s))
}

/// `L(e)`: every versal of edge `e`, in canonical order.
pub fn versals_of(h: &Hypergraph, e_index: usize) -> Result<Vec<VertexSet>> {
    check_index(h, e_index)?;
    check_enumerable(h)?;
    let mut out: Vec<VertexSet> = (0..1u32 << h.n())
        .map(VertexSet::from_bits)
        .filter(|&s| versal_raw(h.edges(), e_index, s))
        .collect();
    out.sort_by(VertexSet::canonical_cmp);
    Ok(out)
}

/// Null versals of edge `e` (versals contained in the complement of `e`),
/// in canonical order.
pub fn null_versals_of(h: &Hypergraph, e_index: usize) -> Result<Vec<VertexSet>> {
    let e = check_index(h, e_index)?;
    let mut out: Vec<VertexSet> = e
        .complement(h.n())
        .subsets()
        .filter(|&s| versal_raw(h.edges(), e_index, s))
        .collect();
    out.sort_by(VertexSet::canonical_cmp);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VersalRecord {
    pub edge_index: usize,
    pub set: VertexSet,
    pub is_null: bool,
}

/// Counts of versals per edge, with the sets themselves when requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VersalCensus {
    /// Present only when materialisation was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<VersalRecord>>,
    pub per_edge_counts: Vec<u64>,
    pub per_edge_null_counts: Vec<u64>,
    pub total: u64,
    pub null_total: u64,
}

impl VersalCensus {
    fn from_per_edge(lists: Vec<Vec<VertexSet>>, h: &Hypergraph, materialize: bool) -> Self {
        let mut per_edge_counts = Vec::with_capacity(lists.len());
        let mut per_edge_null_counts = Vec::with_capacity(lists.len());
        let mut records = materialize.then(Vec::new);
        for (i, list) in lists.into_iter().enumerate() {
            let e = h.edges()[i];
            per_edge_counts.push(list.len() as u64);
            per_edge_null_counts.push(list.iter().filter(|s| s.is_disjoint(e)).count() as u64);
            if let Some(records) = records.as_mut() {
                records.extend(list.into_iter().map(|set| VersalRecord {
                    edge_index: i,
                    set,
                    is_null: set.is_disjoint(e),
                }));
            }
        }
        VersalCensus {
            records,
            total: per_edge_counts.iter().sum(),
            null_total: per_edge_null_counts.iter().sum(),
            per_edge_counts,
            per_edge_null_counts,
        }
    }
}

/// `(|L(e)|, number of null versals of e)` without materialising sets.
fn edge_counts(h: &Hypergraph, e: usize) -> (u64, u64) {
    let edge = h.edges()[e];
    let mut total = 0;
    let mut null = 0;
    for bits in 0..1u32 << h.n() {
        let s = VertexSet::from_bits(bits);
        if versal_raw(h.edges(), e, s) {
            total += 1;
            null += u64::from(s.is_disjoint(edge));
        }
    }
    (total, null)
}

/// `Z(H)`, edge by edge. An edgeless hypergraph has an empty census.
pub fn all_versals(h: &Hypergraph, materialize: bool) -> Result<VersalCensus> {
    check_enumerable(h)?;
    if materialize {
        let lists = (0..h.m())
            .map(|i| versals_of(h, i))
            .collect::<Result<Vec<_>>>()?;
        return Ok(VersalCensus::from_per_edge(lists, h, true));
    }
    let (per_edge_counts, per_edge_null_counts): (Vec<u64>, Vec<u64>) =
        (0..h.m()).map(|e| edge_counts(h, e)).unzip();
    Ok(VersalCensus {
        records: None,
        total: per_edge_counts.iter().sum(),
        null_total: per_edge_null_counts.iter().sum(),
        per_edge_counts,
        per_edge_null_counts,
    })
}

/// `|Z(H)|` without materialising anything.
pub fn versal_count(h: &Hypergraph) -> Result<u64> {
    check_enumerable(h)?;
    Ok((0..h.m()).map(|e| edge_counts(h, e).0).sum())
}

/// `Z'(H)`: only null versals, enumerated inside each edge complement.
pub fn null_versals(h: &Hypergraph, materialize: bool) -> Result<VersalCensus> {
    let lists = (0..h.m())
        .map(|i| null_versals_of(h, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(VersalCensus::from_per_edge(lists, h, materialize))
}

/// `|Z'(H)|` without materialising anything.
pub fn null_versal_count(h: &Hypergraph) -> u64 {
    let edges = h.edges();
    (0..edges.len())
        .map(|i| {
            edges[i]
                .complement(h.n())
                .subsets()
                .filter(|&s| versal_raw(edges, i, s))
                .count() as u64
        })
        .sum()
}

/// Whether `v` is free for edge `e`: some versal `S` of `e` avoids `v`.
/// Equivalent to the complement of `e` minus `v` being a versal, since versals
/// are closed under adding vertices outside the edge.
pub fn edge_free(h: &Hypergraph, e_index: usize, v: usize) -> Result<bool> {
    let e = check_index(h, e_index)?;
    if v >= h.n() {
        return Err(Error::Vertex {
            vertex: v,
            n: h.n(),
        });
    }
    if e.contains(v) {
        return Err(Error::VertexInEdge {
            index: e_index,
            vertex: v,
        });
    }
    Ok(versal_raw(
        h.edges(),
        e_index,
        e.complement(h.n()).without(v),
    ))
}

/// All vertices free for edge `e`.
pub fn free_vertices(h: &Hypergraph, e_index: usize) -> Result<VertexSet> {
    let e = check_index(h, e_index)?;
    let outside = e.complement(h.n());
    Ok(outside
        .iter()
        .filter(|&v| versal_raw(h.edges(), e_index, outside.without(v)))
        .collect())
}

/// `q`: the number of (edge, vertex) pairs where the vertex is free for the edge.
pub fn free_pairs(h: &Hypergraph) -> usize {
    (0..h.m())
        .map(|i| free_vertices(h, i).map_or(0, VertexSet::len))
        .sum()
}

/// Owner edge of every subset of the universe, computed edge by edge with the
/// general predicate. A subset claimed by two edges is recorded as a conflict
/// (which would break disjointness of the `L(e)`).
#[derive(Clone, Debug)]
pub struct VersalTable {
    n: usize,
    owner: Vec<u32>,
    counts: Vec<u64>,
    conflicts: Vec<(VertexSet, usize, usize)>,
}

const NO_OWNER: u32 = u32::MAX;

impl VersalTable {
    pub fn build(h: &Hypergraph) -> Result<Self> {
        check_enumerable(h)?;
        let size = 1usize << h.n();
        let mut owner = vec![NO_OWNER; size];
        let mut counts = vec![0u64; h.m()];
        let mut conflicts = Vec::new();
        for (e, count) in counts.iter_mut().enumerate() {
            for (bits, slot) in owner.iter_mut().enumerate() {
                let s = VertexSet::from_bits(bits as u32);
                if versal_raw(h.edges(), e, s) {
                    *count += 1;
                    if *slot == NO_OWNER {
                        *slot = e as u32;
                    } else {
                        conflicts.push((s, *slot as usize, e));
                    }
                }
            }
        }
        Ok(VersalTable {
            n: h.n(),
            owner,
            counts,
            conflicts,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn owner(&self, s: VertexSet) -> Option<usize> {
        match self.owner[s.bits() as usize] {
            NO_OWNER => None,
            e => Some(e as usize),
        }
    }

    #[inline]
    pub fn is_versal(&self, e: usize, s: VertexSet) -> bool {
        self.owner(s) == Some(e)
    }

    pub fn count(&self, e: usize) -> u64 {
        self.counts[e]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Subsets claimed by more than one edge: `(set, first edge, second edge)`.
    pub fn conflicts(&self) -> &[(VertexSet, usize, usize)] {
        &self.conflicts
    }

    /// All `(set, owner)` pairs in increasing bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, usize)> + '_ {
        self.owner
            .iter()
            .enumerate()
            .filter(|(_, &o)| o != NO_OWNER)
            .map(|(s, &o)| (VertexSet::from_bits(s as u32), o as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::parse_hypergraph;

    fn hg(text: &str) -> Hypergraph {
        parse_hypergraph(text).unwrap()
    }
    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }
    fn c4() -> Hypergraph {
        hg("4 4\n0 1\n1 2\n2 3\n0 3")
    }
    fn p3() -> Hypergraph {
        hg("3 2\n0 1\n1 2")
    }
    fn path4() -> Hypergraph {
        hg("4 2\n0 1\n1 2")
    }
    fn star_t4() -> Hypergraph {
        hg("6 4\n0 1 2\n0 1 3\n0 1 4\n0 1 5")
    }

    /// Independent oracle: |e| + |S∩e| via explicit vertex loops.
    fn oracle_versal(h: &Hypergraph, e: usize, s: &[usize]) -> bool {
        let w = |edge: &[usize]| edge.len() + edge.iter().filter(|v| s.contains(v)).count();
        let lists: Vec<Vec<usize>> = h.edges().iter().map(|e| e.to_vec()).collect();
        let own = w(&lists[e]);
        lists.iter().enumerate().all(|(i, f)| i == e || own < w(f))
    }

    fn oracle_versals(h: &Hypergraph, e: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for bits in 0u32..1 << h.n() {
            let s: Vec<usize> = (0..h.n()).filter(|v| bits >> v & 1 == 1).collect();
            if oracle_versal(h, e, &s) {
                out.push(s);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn versal_predicate_examples() {
        assert!(is_versal(&c4(), 0, set(&[2, 3])).unwrap());
        assert!(!is_versal(&c4(), 0, set(&[2])).unwrap());
        assert!(is_versal(&hg("3 2\n0\n1 2"), 0, VertexSet::EMPTY).unwrap());
        assert_eq!(oracle_versals(&c4(), 0), vec![vec![2, 3]]);
    }

    #[test]
    fn predicate_errors() {
        assert_eq!(
            is_versal(&c4(), 4, VertexSet::EMPTY),
            Err(Error::EdgeIndex { index: 4, m: 4 })
        );
        assert_eq!(
            is_versal(&c4(), 0, set(&[5])),
            Err(Error::Vertex { vertex: 5, n: 4 })
        );
        assert_eq!(
            is_versal_uniform(&hg("3 2\n0\n1 2"), 0, VertexSet::EMPTY),
            Err(Error::NotUniform)
        );
    }

    #[test]
    fn versals_of_examples_match_oracle() {
        let lists = |v: Vec<VertexSet>| v.into_iter().map(|s| s.to_vec()).collect::<Vec<_>>();
        assert_eq!(
            lists(versals_of(&p3(), 0).unwrap()),
            vec![vec![2], vec![1, 2]]
        );
        assert_eq!(lists(versals_of(&c4(), 0).unwrap()), vec![vec![2, 3]]);
        let star = lists(versals_of(&star_t4(), 0).unwrap());
        assert_eq!(
            star,
            vec![
                vec![3, 4, 5],
                vec![0, 3, 4, 5],
                vec![1, 3, 4, 5],
                vec![0, 1, 3, 4, 5]
            ]
        );
        for h in [p3(), c4(), star_t4(), path4(), hg("3 2\n0\n1 2")] {
            for e in 0..h.m() {
                assert_eq!(lists(versals_of(&h, e).unwrap()), oracle_versals(&h, e));
            }
        }
    }

    #[test]
    fn census_examples() {
        let c = all_versals(&c4(), false).unwrap();
        assert_eq!(c.total, 4);
        assert!(c.records.is_none());

        let s3 = hg("3 3\n0\n1\n2");
        let c = all_versals(&s3, true).unwrap();
        assert_eq!(c.total, 3);
        let recs = c.records.unwrap();
        for (i, r) in recs.iter().enumerate() {
            assert_eq!(r.edge_index, i);
            assert_eq!(r.set, set(&[i]).complement(3));
            assert!(r.is_null);
        }

        let disjoint = hg("4 2\n0 1\n2 3");
        let c = all_versals(&disjoint, false).unwrap();
        assert_eq!(c.per_edge_counts, vec![5, 5]);
        assert_eq!(c.total, 10);

        let empty = hg("3 0");
        assert_eq!(all_versals(&empty, false).unwrap().total, 0);
    }

    #[test]
    fn null_census_examples() {
        let c = null_versals(&star_t4(), true).unwrap();
        assert_eq!(c.null_total, 4);
        let recs = c.records.unwrap();
        for (i, r) in recs.iter().enumerate() {
            assert_eq!(r.set, star_t4().edges()[i].complement(6));
        }
        let bstar = hg("6 6\n0 1 3\n0 1 4\n0 1 5\n0 2 3\n0 2 4\n0 2 5");
        assert_eq!(null_versals(&bstar, false).unwrap().null_total, 6);
        assert_eq!(null_versals(&c4(), false).unwrap().null_total, 4);
        assert_eq!(null_versal_count(&c4()), 4);
    }

    #[test]
    fn free_vertex_examples() {
        assert!(edge_free(&path4(), 0, 3).unwrap());
        assert!(!edge_free(&c4(), 0, 2).unwrap());
        assert!(!edge_free(&p3(), 0, 2).unwrap());
        assert_eq!(
            edge_free(&c4(), 0, 1),
            Err(Error::VertexInEdge {
                index: 0,
                vertex: 1
            })
        );
        assert_eq!(free_pairs(&c4()), 0);
        assert_eq!(free_pairs(&path4()), 2);
        assert_eq!(free_pairs(&star_t4()), 0);
    }

    #[test]
    fn free_vertices_match_any_versal_definition() {
        // v is free iff some versal of e avoids v (and v is outside e).
        for h in [p3(), c4(), path4(), star_t4(), hg("5 3\n0 1\n2 3\n1 4")] {
            for e in 0..h.m() {
                let all = versals_of(&h, e).unwrap();
                let edge = h.edges()[e];
                for v in edge.complement(h.n()).iter() {
                    let by_def = all.iter().any(|s| !s.contains(v));
                    assert_eq!(edge_free(&h, e, v).unwrap(), by_def);
                }
            }
        }
    }

    #[test]
    fn table_agrees_with_lists() {
        let h = hg("5 3\n0 1\n2 3\n1 4");
        let t = VersalTable::build(&h).unwrap();
        assert!(t.conflicts().is_empty());
        for e in 0..h.m() {
            let from_table: Vec<VertexSet> =
                t.iter().filter(|&(_, o)| o == e).map(|(s, _)| s).collect();
            let mut sorted = from_table.clone();
            sorted.sort_by(VertexSet::canonical_cmp);
            assert_eq!(sorted, versals_of(&h, e).unwrap());
            assert_eq!(t.count(e), from_table.len() as u64);
        }
    }

    #[test]
    fn enumeration_cap() {
        let h = Hypergraph::from_edge_lists(21, [vec![0]]).unwrap();
        assert_eq!(
            versals_of(&h, 0),
            Err(Error::EnumerationCap {
                n: 21,
                cap: ENUMERATION_CAP
            })
        );
    }
}
