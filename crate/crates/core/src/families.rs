//! Named extremal hypergraphs (singletons, co-singletons, stars, binary
//! stars) and the flag / pole / pennant apparatus on uniform hypergraphs.
//!
//! Recognition works on labeled vertices. Generators emit one canonical
//! labeling each.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::{VertexSet, VERTEX_CAP};

fn check_universe(n: usize) -> Result<()> {
    if n > VERTEX_CAP {
        return Err(Error::UniverseTooLarge { n });
    }
    Ok(())
}

/// `S_n`: every singleton.
pub fn gen_singletons(n: usize) -> Result<Hypergraph> {
    if n < 2 {
        return Err(Error::Parameter(format!("singletons need n >= 2, got {n}")));
    }
    check_universe(n)?;
    Ok(Hypergraph::new_unchecked(
        n,
        (0..n).map(VertexSet::singleton).collect(),
    ))
}

/// The complements of the singletons, edge `i` missing vertex `i`.
pub fn gen_cosingletons(n: usize) -> Result<Hypergraph> {
    if n < 2 {
        return Err(Error::Parameter(format!(
            "co-singletons need n >= 2, got {n}"
        )));
    }
    check_universe(n)?;
    Ok(Hypergraph::new_unchecked(
        n,
        (0..n)
            .map(|v| VertexSet::singleton(v).complement(n))
            .collect(),
    ))
}

/// The 4-cycle `{0,1},{1,2},{2,3},{0,3}`.
pub fn gen_c4() -> Hypergraph {
    let e = |a, b| VertexSet::from_vertices([a, b]);
    Hypergraph::new_unchecked(4, vec![e(0, 1), e(1, 2), e(2, 3), e(0, 3)])
}

/// The `m`-star of rank `r`: core `{0..r-2}`, tips `r-1 .. r-2+m`, one edge
/// per tip, `n = r - 1 + m`.
pub fn gen_star(r: usize, m: usize) -> Result<Hypergraph> {
    if r < 1 || m < 2 {
        return Err(Error::Parameter(format!(
            "star needs r >= 1, m >= 2, got r={r}, m={m}"
        )));
    }
    let n = r - 1 + m;
    check_universe(n)?;
    let core = VertexSet::full(r - 1);
    Ok(Hypergraph::new_unchecked(
        n,
        (r - 1..n).map(|t| core.with(t)).collect(),
    ))
}

/// Two `s`-stars of rank `r` whose cores share `{0..r-3}` and differ in
/// `a = r-2` versus `b = r-1`, over common tips `r .. r-1+s`. Edges are
/// listed as all `a`-edges, then all `b`-edges; `n = r + s`.
pub fn gen_binary_star(r: usize, s: usize) -> Result<Hypergraph> {
    if r < 2 || s < 2 {
        return Err(Error::Parameter(format!(
            "binary star needs r >= 2, s >= 2, got r={r}, s={s}"
        )));
    }
    let n = r + s;
    check_universe(n)?;
    let shared = VertexSet::full(r - 2);
    let (a, b) = (r - 2, r - 1);
    let edges = [a, b]
        .iter()
        .flat_map(|&x| (r..n).map(move |t| shared.with(x).with(t)))
        .collect();
    Ok(Hypergraph::new_unchecked(n, edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Singletons,
    CoSingletons,
    Star,
    /// The 4-cycle: the binary star with `r = 2`, `star_size = 2` on four
    /// vertices. Its parameters and cores are reported as for a binary star.
    C4,
    BinaryStar,
    Other,
}

/// Classification verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyTag {
    pub kind: FamilyKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star_size: Option<usize>,
    /// One core for a star; the two star cores for a binary star.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cores: Vec<VertexSet>,
    /// Every vertex lies in some edge.
    pub spanning: bool,
}

impl FamilyTag {
    fn plain(kind: FamilyKind, h: &Hypergraph) -> Self {
        FamilyTag {
            kind,
            r: h.rank().ok(),
            star_size: None,
            cores: Vec::new(),
            spanning: is_spanning(h),
        }
    }

    pub fn is_c4(&self) -> bool {
        self.kind == FamilyKind::C4
    }

    /// One of the three Main Theorem exceptions.
    pub fn is_main_exception(&self) -> bool {
        matches!(
            self.kind,
            FamilyKind::Singletons | FamilyKind::CoSingletons | FamilyKind::C4
        )
    }
}

fn is_spanning(h: &Hypergraph) -> bool {
    h.edges()
        .iter()
        .fold(VertexSet::EMPTY, |acc, &e| acc.union(e))
        == h.universe()
}

fn common_intersection(h: &Hypergraph) -> VertexSet {
    h.edges()
        .iter()
        .fold(h.universe(), |acc, &e| acc.intersection(e))
}

/// Core of `h` if it is a star (uniform, `m > 1`, all edges share `r - 1`
/// vertices). With `m > 1` the common intersection has exactly `r - 1`
/// vertices.
pub fn star_core(h: &Hypergraph) -> Option<VertexSet> {
    if h.m() < 2 || !h.is_uniform() {
        return None;
    }
    let r = h.edges()[0].len();
    let core = common_intersection(h);
    (core.len() + 1 >= r).then_some(core)
}

/// Star whose tips together with the core cover the universe
/// (`n = r - 1 + m`). Includes `S_n` as the rank-1 case.
pub fn spanning_star_core(h: &Hypergraph) -> Option<VertexSet> {
    let core = star_core(h)?;
    let r = h.edges()[0].len();
    (h.n() + 1 == r + h.m()).then_some(core)
}

/// The two star cores of a binary star, trying candidate pairs `(a, b)` in
/// increasing order and returning the first decomposition found.
pub fn binary_star_cores(h: &Hypergraph) -> Option<(VertexSet, VertexSet)> {
    let m = h.m();
    if m < 4 || m % 2 == 1 || !h.is_uniform() {
        return None;
    }
    let r = h.edges()[0].len();
    if r < 2 {
        return None;
    }
    let shared = common_intersection(h);
    if shared.len() != r - 2 {
        return None;
    }
    let s = m / 2;
    let support = h
        .edges()
        .iter()
        .fold(VertexSet::EMPTY, |acc, &e| acc.union(e))
        .difference(shared);
    let tips_of = |x: usize| -> VertexSet {
        h.edges()
            .iter()
            .filter(|e| e.contains(x))
            .map(|e| e.difference(shared).without(x))
            .filter(|rest| rest.len() == 1)
            .fold(VertexSet::EMPTY, |acc, t| acc.union(t))
    };
    for a in support.iter() {
        for b in support.iter().filter(|&b| b > a) {
            let tips = tips_of(a);
            let ab = VertexSet::from_vertices([a, b]);
            if tips.len() != s || tips_of(b) != tips || !tips.is_disjoint(ab) {
                continue;
            }
            // With 2s distinct edges and 2s required ones, equality of
            // membership in both directions reduces to one direction.
            let all_present = tips.iter().all(|t| {
                let ea = shared.with(a).with(t);
                let eb = shared.with(b).with(t);
                h.edges().contains(&ea) && h.edges().contains(&eb)
            });
            if all_present {
                return Some((shared.with(a), shared.with(b)));
            }
        }
    }
    None
}

/// Structural classification, checked in order: singletons, co-singletons,
/// star, binary star (the 4-cycle separately), other.
pub fn classify(h: &Hypergraph) -> FamilyTag {
    let n = h.n();
    let m = h.m();
    if m == 0 {
        return FamilyTag::plain(FamilyKind::Other, h);
    }
    if m == n && h.edges().iter().all(|e| e.len() == 1) {
        return FamilyTag::plain(FamilyKind::Singletons, h);
    }
    if m == n && h.edges().iter().all(|e| e.len() + 1 == n) {
        return FamilyTag::plain(FamilyKind::CoSingletons, h);
    }
    if let Some(core) = star_core(h) {
        return FamilyTag {
            kind: FamilyKind::Star,
            r: Some(core.len() + 1),
            star_size: Some(m),
            cores: vec![core],
            spanning: is_spanning(h),
        };
    }
    if let Some((ca, cb)) = binary_star_cores(h) {
        let r = ca.len() + 1;
        let s = m / 2;
        let kind = if r == 2 && s == 2 && n == 4 {
            FamilyKind::C4
        } else {
            FamilyKind::BinaryStar
        };
        return FamilyTag {
            kind,
            r: Some(r),
            star_size: Some(s),
            cores: vec![ca, cb],
            spanning: is_spanning(h),
        };
    }
    FamilyTag::plain(FamilyKind::Other, h)
}

/// Pennants, the missing-pennant count and the pole flag of one edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleReport {
    pub edge_index: usize,
    pub pennants: Vec<usize>,
    pub missing: usize,
    pub is_pole: bool,
}

fn uniform_rank(h: &Hypergraph) -> Result<usize> {
    if !h.is_uniform() {
        return Err(Error::NotUniform);
    }
    h.rank()
}

/// Pennants of `e` are the other edges meeting it in `r - 1` vertices; `e` is
/// a pole when their tips cover the complement of `e`.
pub fn pole_report(h: &Hypergraph, e_index: usize) -> Result<PoleReport> {
    let r = uniform_rank(h)?;
    let e = h.edge(e_index)?;
    let mut covered = VertexSet::EMPTY;
    let mut pennants = Vec::new();
    for (i, &f) in h.edges().iter().enumerate() {
        if i != e_index && f.intersection(e).len() + 1 == r {
            pennants.push(i);
            covered = covered.union(f.difference(e));
        }
    }
    let missing = e.complement(h.n()).len() - covered.len();
    Ok(PoleReport {
        edge_index: e_index,
        pennants,
        missing,
        is_pole: missing == 0,
    })
}

/// Indices of all pole edges.
pub fn poles(h: &Hypergraph) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..h.m() {
        if pole_report(h, i)?.is_pole {
            out.push(i);
        }
    }
    Ok(out)
}

/// Whether `h` itself is a flag with the given pole: `m = n - r + 1`, every
/// other edge is a pennant, the pennant tips are distinct and cover the
/// complement of the pole, and each tip has degree 1.
pub fn is_flag(h: &Hypergraph, pole_index: usize) -> Result<bool> {
    let r = uniform_rank(h)?;
    let pole = h.edge(pole_index)?;
    if h.m() + r != h.n() + 1 {
        return Ok(false);
    }
    let mut tips = VertexSet::EMPTY;
    for (i, &f) in h.edges().iter().enumerate() {
        if i == pole_index {
            continue;
        }
        if f.intersection(pole).len() + 1 != r {
            return Ok(false);
        }
        let tip = f.difference(pole);
        if !tips.is_disjoint(tip) {
            return Ok(false);
        }
        tips = tips.union(tip);
    }
    Ok(tips == pole.complement(h.n()) && tips.iter().all(|v| h.degree(v) == 1))
}

/// Edges that are poles of `h` viewed as a flag.
pub fn flag_poles(h: &Hypergraph) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..h.m() {
        if is_flag(h, i)? {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::parse_hypergraph;

    fn hg(text: &str) -> Hypergraph {
        parse_hypergraph(text).unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(gen_singletons(3).unwrap(), hg("3 3\n0\n1\n2"));
        assert_eq!(gen_cosingletons(3).unwrap(), hg("3 3\n1 2\n0 2\n0 1"));
        assert_eq!(gen_c4(), hg("4 4\n0 1\n1 2\n2 3\n0 3"));
        assert_eq!(
            gen_star(3, 4).unwrap(),
            hg("6 4\n0 1 2\n0 1 3\n0 1 4\n0 1 5")
        );
        assert_eq!(gen_star(1, 5).unwrap(), gen_singletons(5).unwrap());
        let b = gen_binary_star(3, 3).unwrap();
        assert_eq!((b.n(), b.m()), (6, 6));
        assert!(gen_singletons(1).is_err());
        assert!(gen_star(3, 1).is_err());
        assert!(gen_binary_star(1, 3).is_err());
        assert!(gen_star(3, 23).is_err());
    }

    #[test]
    fn binary_star_two_two_is_c4_up_to_labeling() {
        let b = gen_binary_star(2, 2).unwrap();
        // a=0, b=1, tips 2,3: edges 02 03 12 13 -- the cycle 0-2-1-3-0.
        assert_eq!(b, hg("4 4\n0 2\n0 3\n1 2\n1 3"));
        assert!(classify(&b).is_c4());
    }

    #[test]
    fn classify_examples() {
        let t = classify(&gen_star(3, 4).unwrap());
        assert_eq!(t.kind, FamilyKind::Star);
        assert_eq!(t.cores, vec![VertexSet::from_vertices([0, 1])]);
        assert!(t.spanning);

        let c = classify(&gen_c4());
        assert_eq!(c.kind, FamilyKind::C4);
        assert_eq!(c.star_size, Some(2));
        assert!(c.is_c4());
        assert!(c.is_main_exception());

        assert_eq!(classify(&hg("4 2\n0 1\n2 3")).kind, FamilyKind::Other);
        assert_eq!(
            classify(&gen_singletons(4).unwrap()).kind,
            FamilyKind::Singletons
        );
        assert_eq!(
            classify(&gen_cosingletons(4).unwrap()).kind,
            FamilyKind::CoSingletons
        );

        let b = classify(&gen_binary_star(3, 3).unwrap());
        assert_eq!(b.kind, FamilyKind::BinaryStar);
        assert_eq!((b.r, b.star_size), (Some(3), Some(3)));
        assert!(!b.is_c4());
    }

    #[test]
    fn non_spanning_star_is_still_a_star() {
        let t = classify(&hg("7 3\n0 1 2\n0 1 3\n0 1 4"));
        assert_eq!(t.kind, FamilyKind::Star);
        assert!(!t.spanning);
        assert!(spanning_star_core(&hg("7 3\n0 1 2\n0 1 3\n0 1 4")).is_none());
    }

    #[test]
    fn generators_round_trip_through_classify() {
        for r in 2..=6 {
            for m in 2..=8 {
                let t = classify(&gen_star(r, m).unwrap());
                assert_eq!(t.kind, FamilyKind::Star, "star r={r} m={m}");
                assert_eq!(t.star_size, Some(m));
            }
            for s in 2..=6 {
                let t = classify(&gen_binary_star(r, s).unwrap());
                let kind = if (r, s) == (2, 2) {
                    FamilyKind::C4
                } else {
                    FamilyKind::BinaryStar
                };
                assert_eq!(t.kind, kind, "binary r={r} s={s}");
                assert_eq!((t.r, t.star_size), (Some(r), Some(s)));
            }
        }
        for n in 2..=8 {
            assert_eq!(
                classify(&gen_singletons(n).unwrap()).kind,
                FamilyKind::Singletons
            );
        }
        for n in 3..=8 {
            assert_eq!(
                classify(&gen_cosingletons(n).unwrap()).kind,
                FamilyKind::CoSingletons
            );
        }
    }

    #[test]
    fn binary_star_decomposition_is_label_independent() {
        // Binary star with r=3, s=3 relabeled: shared 5, a=2, b=0, tips 1,3,4.
        let h = hg("6 6\n1 2 5\n0 1 5\n2 3 5\n0 3 5\n2 4 5\n0 4 5");
        let (ca, cb) = binary_star_cores(&h).unwrap();
        assert_eq!(ca.to_vec(), vec![0, 5]);
        assert_eq!(cb.to_vec(), vec![2, 5]);
        // Missing one edge: not a binary star.
        let h = hg("6 5\n1 2 5\n0 1 5\n2 3 5\n0 3 5\n2 4 5");
        assert!(binary_star_cores(&h).is_none());
    }

    #[test]
    fn pole_reports() {
        let star = gen_star(3, 4).unwrap();
        assert_eq!(poles(&star).unwrap(), vec![0, 1, 2, 3]);

        let c4 = gen_c4();
        let p = pole_report(&c4, 0).unwrap();
        assert_eq!(p.pennants, vec![1, 3]);
        assert_eq!(p.missing, 0);
        assert!(p.is_pole);

        let p = pole_report(&hg("4 2\n0 1\n2 3"), 0).unwrap();
        assert!(p.pennants.is_empty());
        assert_eq!(p.missing, 2);
        assert!(!p.is_pole);

        assert_eq!(pole_report(&hg("3 2\n0\n1 2"), 0), Err(Error::NotUniform));
        assert_eq!(poles(&gen_binary_star(3, 3).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn flags() {
        let star = gen_star(3, 4).unwrap();
        assert!(is_flag(&star, 0).unwrap());
        assert!(!is_flag(&gen_c4(), 0).unwrap());
        let smaller = hg("6 3\n0 1 2\n0 1 3\n0 1 4");
        assert!(!is_flag(&smaller, 0).unwrap());
        // A flag that is not a star: pole 012, pennants 013, 024, 125.
        let f = hg("6 4\n0 1 2\n0 1 3\n0 2 4\n1 2 5");
        assert!(is_flag(&f, 0).unwrap());
        assert_eq!(flag_poles(&f).unwrap(), vec![0]);
        assert_eq!(is_flag(&hg("3 2\n0\n1 2"), 0), Err(Error::NotUniform));
    }
}
