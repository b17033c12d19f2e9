//! Executable verdicts for each claim on a single hypergraph.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{
    binary_star_cores, classify, flag_poles, poles, spanning_star_core, star_core, FamilyKind,
};
use crate::hypergraph::Hypergraph;
use crate::isolation::{unique_min_edge, unique_min_for_set, weight_from_versal};
use crate::versal::{
    free_pairs, free_vertices, null_versal_count, versal_count, versal_raw, versal_raw_uniform,
    VersalTable,
};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `|Z(H)| >= n + 1` except for singletons, co-singletons and the 4-cycle.
    MainTheorem,
    /// `|Z'(H)| >= n + 1` for uniform `H` with `2r <= n`, except stars
    /// (including singletons) and binary stars with `s = r`, `n = 2r`.
    Theorem2,
    /// Uniform `|Z(H)| >= n + 1` with the exact star count `2^(r-1) m`.
    Theorem7,
    /// Null-versal lower bounds for few edges.
    Bounds,
    /// Versals of the minimum layer lift to versals of the whole hypergraph.
    Lifting,
    /// Complementation maps `L(H, e)` onto `L(H~, e~)` for uniform `H`.
    Lemma1,
    Lemma3,
    Lemma4,
    Lemma5,
    Lemma6,
    /// Disjointness, uniform test agreement, upward closure, power bound
    /// and the `m + q <= |Z'|` floor.
    VersalProperties,
    /// Versal / {1,2}-weighting round trip.
    Isolation,
}

impl Claim {
    pub const ALL: [Claim; 12] = [
        Claim::MainTheorem,
        Claim::Theorem2,
        Claim::Theorem7,
        Claim::Bounds,
        Claim::Lifting,
        Claim::Lemma1,
        Claim::Lemma3,
        Claim::Lemma4,
        Claim::Lemma5,
        Claim::Lemma6,
        Claim::VersalProperties,
        Claim::Isolation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::MainTheorem => "main-theorem",
            Claim::Theorem2 => "theorem2",
            Claim::Theorem7 => "theorem7",
            Claim::Bounds => "bounds",
            Claim::Lifting => "lifting",
            Claim::Lemma1 => "lemma1",
            Claim::Lemma3 => "lemma3",
            Claim::Lemma4 => "lemma4",
            Claim::Lemma5 => "lemma5",
            Claim::Lemma6 => "lemma6",
            Claim::VersalProperties => "versal-properties",
            Claim::Isolation => "isolation",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown claim `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    ExceptionAsPredicted,
    NotApplicable,
    Counterexample,
}

/// Counts involved in a verdict. Absent fields were not computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Detail {
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_null: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: Claim,
    pub outcome: Outcome,
    pub detail: Detail,
    /// `.hg` text of the instance; present for exceptions and counterexamples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    /// What failed, for counterexamples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

struct Builder<'a> {
    claim: Claim,
    h: &'a Hypergraph,
    detail: Detail,
}

impl<'a> Builder<'a> {
    fn new(claim: Claim, h: &'a Hypergraph) -> Self {
        Builder {
            claim,
            h,
            detail: Detail {
                n: h.n(),
                m: h.m(),
                r: h.rank().ok(),
                ..Detail::default()
            },
        }
    }

    fn z(mut self, z: u64) -> Self {
        self.detail.z = Some(z);
        self
    }

    fn z_null(mut self, z: u64) -> Self {
        self.detail.z_null = Some(z);
        self
    }

    fn q(mut self, q: u64) -> Self {
        self.detail.q = Some(q);
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.detail.note = Some(note.into());
        self
    }

    fn finish(self, outcome: Outcome) -> Verdict {
        let instance = matches!(
            outcome,
            Outcome::ExceptionAsPredicted | Outcome::Counterexample
        )
        .then(|| self.h.to_hg());
        Verdict {
            claim: self.claim,
            outcome,
            detail: self.detail,
            instance,
            witness: None,
        }
    }

    fn pass(self) -> Verdict {
        self.finish(Outcome::Pass)
    }

    fn exception(self) -> Verdict {
        self.finish(Outcome::ExceptionAsPredicted)
    }

    fn not_applicable(self, why: &str) -> Verdict {
        self.note(why).finish(Outcome::NotApplicable)
    }

    fn counterexample(self, witness: impl Into<String>) -> Verdict {
        let mut v = self.finish(Outcome::Counterexample);
        v.witness = Some(witness.into());
        v
    }
}

fn require_edges(h: &Hypergraph) -> Result<()> {
    if h.m() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(())
}

/// Evaluates `claim` on one hypergraph. Errors only for edgeless input or
/// universes beyond the enumeration cap.
pub fn check(claim: Claim, h: &Hypergraph) -> Result<Verdict> {
    require_edges(h)?;
    match claim {
        Claim::MainTheorem => check_main_theorem(h),
        Claim::Theorem2 => Ok(check_theorem2(h)),
        Claim::Theorem7 => check_theorem7(h),
        Claim::Bounds => Ok(check_bounds(h)),
        Claim::Lifting => Ok(check_lifting(h)),
        Claim::Lemma1 => check_lemma1(h),
        Claim::Lemma3 => Ok(check_lemma3(h)),
        Claim::Lemma4 => Ok(check_lemma4(h)),
        Claim::Lemma5 => Ok(check_lemma5(h)),
        Claim::Lemma6 => Ok(check_lemma6(h)),
        Claim::VersalProperties => check_versal_properties(h),
        Claim::Isolation => check_isolation(h),
    }
}

fn main_exception_name(h: &Hypergraph) -> Option<&'static str> {
    let tag = classify(h);
    match tag.kind {
        FamilyKind::Singletons => Some("singletons"),
        FamilyKind::CoSingletons => Some("co_singletons"),
        _ if tag.is_c4() => Some("c4"),
        _ => None,
    }
}

/// Exceptions must attain exactly `|Z| = n`; everything else needs `n + 1`.
pub fn check_main_theorem(h: &Hypergraph) -> Result<Verdict> {
    require_edges(h)?;
    let n = h.n() as u64;
    let b = Builder::new(Claim::MainTheorem, h);
    if h.m() == 1 {
        // Every subset is a versal of the only edge.
        return Ok(b.z(1 << h.n()).note("vacuous").pass());
    }
    let z = versal_count(h)?;
    let b = b.z(z);
    Ok(match main_exception_name(h) {
        Some(name) if z == n => b.note(name).exception(),
        Some(name) => {
            let w = format!("{name} should have |Z| = n = {n}, found {z}");
            b.note(name).counterexample(w)
        }
        None if z > n => b.pass(),
        None => {
            let w = format!(
                "|Z| = {z} < n + 1 = {} and not an exceptional family",
                n + 1
            );
            b.counterexample(w)
        }
    })
}

/// Exact `|Z'|` of an `m`-star of rank `r` on `n` vertices: each edge's null
/// versals contain the other `m - 1` tips and any subset of the
/// `n - r + 1 - m` isolated vertices.
pub fn star_null_formula(n: usize, r: usize, m: usize) -> u64 {
    (m as u64) << (n + 1 - r - m)
}

/// Family label and exact `|Z'|` for the families Theorem 2 exempts: stars
/// (including `S_n` at `r = 1`) and binary stars with `s = r` on `n = 2r`.
fn theorem2_family(h: &Hypergraph) -> Option<(&'static str, u64)> {
    let n = h.n();
    let m = h.m();
    let r = h.rank().ok()?;
    if star_core(h).is_some() {
        let label = match (n + 1 == r + m, r) {
            (true, 1) => "singletons",
            (true, _) => "spanning_star",
            (false, _) => "star",
        };
        return Some((label, star_null_formula(n, r, m)));
    }
    if n == 2 * r && m == 2 * r && binary_star_cores(h).is_some() {
        return Some(("binary_star", n as u64));
    }
    None
}

/// Exempt families must match their exact null-versal count; they are
/// exceptions when that count is at most `n`. Everything else needs `n + 1`.
pub fn check_theorem2(h: &Hypergraph) -> Verdict {
    let b = Builder::new(Claim::Theorem2, h);
    let n = h.n();
    if !h.is_uniform() {
        return b.not_applicable("not uniform");
    }
    let r = h.edges()[0].len();
    if 2 * r > n || h.m() < 2 {
        return b.not_applicable("needs 2r <= n and m > 1");
    }
    let z = null_versal_count(h);
    let b = b.z_null(z);
    match theorem2_family(h) {
        Some((label, expected)) if z != expected => {
            let w = format!("{label} should have |Z'| = {expected}, found {z}");
            b.note(label).counterexample(w)
        }
        Some((label, _)) if z <= n as u64 => b.note(label).exception(),
        Some((label, _)) => b.note(label).pass(),
        None if z > n as u64 => b.pass(),
        None => {
            let w = format!(
                "|Z'| = {z} < n + 1 = {} and not an exceptional family",
                n + 1
            );
            b.counterexample(w)
        }
    }
}

/// `2^(r-1) (n - r + 1)`.
pub fn star_versal_formula(r: usize, n: usize) -> u64 {
    (1u64 << (r - 1)) * (n + 1 - r) as u64
}

pub fn check_theorem7(h: &Hypergraph) -> Result<Verdict> {
    let b = Builder::new(Claim::Theorem7, h);
    if !h.is_uniform() {
        return Ok(b.not_applicable("not uniform"));
    }
    if h.m() == 1 {
        return Ok(b.z(1 << h.n()).note("vacuous").pass());
    }
    let n = h.n();
    let r = h.edges()[0].len();
    let z = versal_count(h)?;
    let b = b.z(z);
    if spanning_star_core(h).is_some() {
        let expected = star_versal_formula(r, n);
        if z != expected {
            let w = format!("star should have |Z| = 2^(r-1)(n-r+1) = {expected}, found {z}");
            return Ok(b.note("spanning_star").counterexample(w));
        }
        if r >= 2 && n >= 3 && z <= n as u64 {
            let w = format!("star with r >= 2 has |Z| = {z} <= n");
            return Ok(b.note("spanning_star").counterexample(w));
        }
        if r >= 2 {
            return Ok(b.note("spanning_star").pass());
        }
    }
    Ok(match main_exception_name(h) {
        Some(name) if z == n as u64 => b.note(name).exception(),
        Some(name) => {
            let w = format!("{name} should have |Z| = n = {n}, found {z}");
            b.note(name).counterexample(w)
        }
        None if z > n as u64 => b.pass(),
        None => b.counterexample(format!("|Z| = {z} < n + 1 = {}", n + 1)),
    })
}

/// The explicit null-versal lower bound for `(n, r, m)`, if a hypothesis holds.
pub fn null_versal_bound(n: usize, r: usize, m: usize) -> Option<u64> {
    if m <= n.saturating_sub(r) && n > 2 * r {
        Some((m as u64) << (n - m - r + 1))
    } else if n == 2 * r && m < r {
        Some((m as u64) << (r - m + 1))
    } else {
        None
    }
}

pub fn check_bounds(h: &Hypergraph) -> Verdict {
    let b = Builder::new(Claim::Bounds, h);
    if !h.is_uniform() || h.m() < 2 {
        return b.not_applicable("needs uniform H with m > 1");
    }
    let r = h.edges()[0].len();
    let Some(bound) = null_versal_bound(h.n(), r, h.m()) else {
        return b.not_applicable("no bound hypothesis holds");
    };
    let z = null_versal_count(h);
    let b = b.z_null(z).note(format!("bound {bound}"));
    if z >= bound {
        b.pass()
    } else {
        b.counterexample(format!("|Z'| = {z} below bound {bound}"))
    }
}

/// Null versals of `layer` lift to `h` when `n >= 2 rho`; complements of
/// null versals of the reflected layer lift when `n < 2 rho`; and for star or
/// binary-star layers, every layer versal containing the edge complement
/// lifts.
pub fn check_lifting(h: &Hypergraph) -> Verdict {
    let b = Builder::new(Claim::Lifting, h);
    if h.is_uniform() {
        return b.note("uniform: minimum layer is H").pass();
    }
    let n = h.n();
    let indices = h.min_layer_indices().expect("nonempty");
    let layer = h.min_layer().expect("nonempty");
    let rho = layer.edges()[0].len();
    let lifts = |i: usize, s: VertexSet| versal_raw(h.edges(), indices[i], s);

    if n >= 2 * rho {
        for (i, &e) in layer.edges().iter().enumerate() {
            for s in e.complement(n).subsets() {
                if versal_raw(layer.edges(), i, s) && !lifts(i, s) {
                    let w = format!(
                        "null versal {s:?} of layer edge {} does not lift",
                        indices[i]
                    );
                    return b.counterexample(w);
                }
            }
        }
    } else {
        // No layer edge is the whole universe: H would then be that one edge.
        let reflected = layer.reflect().expect("non-uniform H has no full edge");
        for (i, &e) in layer.edges().iter().enumerate() {
            // Null versals of the reflected edge live inside e itself.
            for t in e.subsets() {
                if versal_raw(reflected.edges(), i, t) && !lifts(i, t.complement(n)) {
                    let w = format!(
                        "complement of reflected null versal {t:?} for edge {} does not lift",
                        indices[i]
                    );
                    return b.counterexample(w);
                }
            }
        }
    }

    if matches!(
        classify(&layer).kind,
        FamilyKind::Star | FamilyKind::BinaryStar | FamilyKind::C4
    ) {
        for (i, &e) in layer.edges().iter().enumerate() {
            let outside = e.complement(n);
            for t in e.subsets() {
                let s = outside.union(t);
                if versal_raw(layer.edges(), i, s) && !lifts(i, s) {
                    let w = format!(
                        "star-layer versal {s:?} of edge {} does not lift",
                        indices[i]
                    );
                    return b.counterexample(w);
                }
            }
        }
    }
    b.note(if n >= 2 * rho {
        "null lift"
    } else {
        "complement lift"
    })
    .pass()
}

pub fn check_lemma1(h: &Hypergraph) -> Result<Verdict> {
    let b = Builder::new(Claim::Lemma1, h);
    if !h.is_uniform() {
        return Ok(b.not_applicable("not uniform"));
    }
    let Ok(reflected) = h.reflect() else {
        return Ok(b.not_applicable("edge equals the universe"));
    };
    let n = h.n();
    let here = VersalTable::build(h)?;
    let there = VersalTable::build(&reflected)?;
    let b = b.z(here.total());
    for bits in 0..1u32 << n {
        let s = VertexSet::from_bits(bits);
        let a = here.owner(s);
        let c = there.owner(s.complement(n));
        if a != c {
            let w = format!(
                "{s:?} is a versal of edge {a:?} but its complement is a versal of reflected edge {c:?}"
            );
            return Ok(b.counterexample(w));
        }
    }
    if here.total() != there.total() {
        let w = format!("|Z| = {} but |Z~| = {}", here.total(), there.total());
        return Ok(b.counterexample(w));
    }
    Ok(b.pass())
}

pub fn check_lemma3(h: &Hypergraph) -> Verdict {
    let b = Builder::new(Claim::Lemma3, h);
    let n = h.n();
    let rho = h.min_rank().expect("nonempty");
    for (i, &e) in h.edges().iter().enumerate() {
        if e.len() != rho {
            continue;
        }
        let outside = e.complement(n);
        let free = free_vertices(h, i).expect("valid index");
        for v in outside.difference(free).iter() {
            let witnessed = h
                .edges()
                .iter()
                .any(|&f| f.len() == rho && f.intersection(outside) == VertexSet::singleton(v));
            if !witnessed {
                let w = format!(
                    "edge {i}, vertex {v}: not free, yet no size-{rho} edge meets the complement only in {v}"
                );
                return b.counterexample(w);
            }
        }
    }
    b.pass()
}

pub fn check_lemma4(h: &Hypergraph) -> Verdict {
    let b = Builder::new(Claim::Lemma4, h);
    let rho = h.min_rank().expect("nonempty");
    if rho < 2 {
        return b.not_applicable("|f ∩ g| < rho - 1 impossible for rho < 2");
    }
    let edges = h.edges();
    let degrees = h.degrees();
    let has_free: Vec<bool> = (0..h.m())
        .map(|g| edges[g].len() == rho && !free_vertices(h, g).expect("valid").is_empty())
        .collect();
    let mut applicable = 0u64;
    for (fi, &f) in edges.iter().enumerate() {
        for u in f.iter().filter(|&u| degrees[u] == 1) {
            let rest = f.without(u);
            for (ei, &e) in edges.iter().enumerate() {
                if ei == fi || !rest.is_subset(e) {
                    continue;
                }
                for (gi, &g) in edges.iter().enumerate() {
                    if g.len() != rho || f.intersection(g).len() + 1 >= rho {
                        continue;
                    }
                    applicable += 1;
                    if !has_free[gi] {
                        let w = format!("e={ei}, f={fi}, g={gi}, u={u}: no vertex is free for g");
                        return b.counterexample(w);
                    }
                }
            }
        }
    }
    if applicable == 0 {
        return b.not_applicable("no (e, f, g, u) meets the hypotheses");
    }
    b.note(format!("{applicable} triples")).pass()
}

fn is_star_family(h: &Hypergraph) -> bool {
    match classify(h).kind {
        FamilyKind::Star => true,
        FamilyKind::Singletons => h.m() > 1,
        _ => false,
    }
}

pub fn check_lemma5(h: &Hypergraph) -> Verdict {
    let b = Builder::new(Claim::Lemma5, h);
    if !h.is_uniform() {
        return b.not_applicable("not uniform");
    }
    let r = h.edges()[0].len();
    if h.m() + r != h.n() + 1 {
        return b.not_applicable("m != n - r + 1");
    }
    let fp = flag_poles(h).expect("uniform");
    if fp.is_empty() {
        return b.not_applicable("not a flag");
    }
    let several = fp.len() > 1;
    let star = is_star_family(h);
    let all = fp.len() == h.m();
    if several == star && star == all {
        b.note(format!("{} poles", fp.len())).pass()
    } else {
        b.counterexample(format!(
            "poles {fp:?}: more-than-one={several}, star={star}, every-edge={all}"
        ))
    }
}

pub fn check_lemma6(h: &Hypergraph) -> Verdict {
    let b = Builder::new(Claim::Lemma6, h);
    if !h.is_uniform() {
        return b.not_applicable("not uniform");
    }
    let (n, m) = (h.n(), h.m());
    let r = h.edges()[0].len();
    if n < 2 * r || m + r < n + 1 || m > n {
        return b.not_applicable("needs n >= 2r and n - r + 1 <= m <= n");
    }
    let all_poles = poles(h).expect("uniform").len() == m;
    let star = m + r == n + 1 && spanning_star_core(h).is_some();
    let binary = m == n && n == 2 * r && binary_star_cores(h).is_some_and(|_| m / 2 == r);
    let predicted = star || binary;
    if all_poles == predicted {
        b.note(if all_poles {
            "every edge a pole"
        } else {
            "some edge not a pole"
        })
        .pass()
    } else {
        b.counterexample(format!(
            "every-edge-a-pole={all_poles}, star={star}, binary-star={binary}"
        ))
    }
}

pub fn check_versal_properties(h: &Hypergraph) -> Result<Verdict> {
    let b = Builder::new(Claim::VersalProperties, h);
    let n = h.n();
    let m = h.m();
    let edges = h.edges();
    let table = VersalTable::build(h)?;
    let b = b.z(table.total());

    if let Some(&(s, e, f)) = table.conflicts().first() {
        return Ok(b.counterexample(format!("{s:?} is a versal of both edge {e} and edge {f}")));
    }

    let null_from_table = table
        .iter()
        .filter(|&(s, e)| s.is_disjoint(edges[e]))
        .count() as u64;
    let z_null = null_versal_count(h);
    let b = b.z_null(z_null);
    if null_from_table != z_null {
        let w = format!("null versals: {null_from_table} via full table, {z_null} via complements");
        return Ok(b.counterexample(w));
    }

    let uniform = h.is_uniform();
    if uniform {
        for e in 0..m {
            for bits in 0..1u32 << n {
                let s = VertexSet::from_bits(bits);
                if versal_raw_uniform(edges, e, s) != table.is_versal(e, s) {
                    let w = format!("general and uniform tests disagree on edge {e}, {s:?}");
                    return Ok(b.counterexample(w));
                }
            }
        }
    }

    let universe = h.universe();
    for (s, e) in table.iter() {
        let outside = universe.difference(s.union(edges[e]));
        for v in outside.iter() {
            if !table.is_versal(e, s.with(v)) {
                let w = format!("{s:?} is a versal of edge {e} but adding {v} breaks it");
                return Ok(b.counterexample(w));
            }
        }
        let p = outside.len();
        if table.count(e) < 1u64 << p {
            let w = format!(
                "{s:?} has {p} free vertices for edge {e} but |L(e)| = {}",
                table.count(e)
            );
            return Ok(b.counterexample(w));
        }
    }

    let q = free_pairs(h) as u64;
    let b = b.q(q);
    if uniform && m > 1 {
        for (e, &edge) in edges.iter().enumerate() {
            if !table.is_versal(e, edge.complement(n)) {
                let w = format!("complement of edge {e} is not a null versal");
                return Ok(b.counterexample(w));
            }
        }
        if m as u64 + q > z_null {
            let w = format!("m + q = {} exceeds |Z'| = {z_null}", m as u64 + q);
            return Ok(b.counterexample(w));
        }
    }
    Ok(b.pass())
}

pub fn check_isolation(h: &Hypergraph) -> Result<Verdict> {
    let b = Builder::new(Claim::Isolation, h);
    let table = VersalTable::build(h)?;
    let b = b.z(table.total());
    for (s, e) in table.iter() {
        let w = weight_from_versal(h, e, s)?;
        let got = unique_min_edge(h, &w)?;
        if got != Some(e) {
            let w = format!("weighting of versal {s:?} of edge {e} isolates {got:?}");
            return Ok(b.counterexample(w));
        }
    }
    for bits in 0..1u32 << h.n() {
        let s = VertexSet::from_bits(bits);
        if let Some(e) = unique_min_for_set(h, s) {
            if !table.is_versal(e, s) {
                let w = format!(
                    "{{1,2}}-weighting 2 on {s:?} isolates edge {e}, which it is not a versal of"
                );
                return Ok(b.counterexample(w));
            }
        }
    }
    Ok(b.pass())
}
