//! Validated hypergraphs, the `.hg` text format, and structural queries.
//!
//! A `.hg` file holds a header line `n m` followed by `m` edge lines, each a
//! strictly ascending list of 0-based vertex indices. Lines whose first
//! non-blank character is `#` are comments; blank lines are ignored.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, VERTEX_CAP};

/// A hypergraph on `{0..n-1}` whose edges are distinct, nonempty and form an
/// antichain. Edges keep their construction order; every reported edge index
/// refers to that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<VertexSet>) -> Result<Self> {
        validate(n, &edges)?;
        Ok(Hypergraph { n, edges })
    }

    /// Skips validation. Callers guarantee the antichain invariants, e.g.
    /// distinct edges of equal size.
    pub(crate) fn new_unchecked(n: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert_eq!(validate(n, &edges), Ok(()));
        Hypergraph { n, edges }
    }

    /// Convenience constructor from vertex lists.
    pub fn from_edge_lists<E, I>(n: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if n > VERTEX_CAP {
            return Err(Error::UniverseTooLarge { n });
        }
        let mut sets = Vec::new();
        for (index, edge) in edges.into_iter().enumerate() {
            let mut set = VertexSet::EMPTY;
            for v in edge {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        index,
                        vertex: v,
                        n,
                    });
                }
                set = set.with(v);
            }
            sets.push(set);
        }
        Hypergraph::new(n, sets)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<VertexSet> {
        self.edges
            .get(index)
            .copied()
            .ok_or(Error::EdgeIndex { index, m: self.m() })
    }

    #[inline]
    pub fn universe(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Maximum edge cardinality.
    pub fn rank(&self) -> Result<usize> {
        self.edges
            .iter()
            .map(|e| e.len())
            .max()
            .ok_or(Error::NoEdges)
    }

    /// Minimum edge cardinality.
    pub fn min_rank(&self) -> Result<usize> {
        self.edges
            .iter()
            .map(|e| e.len())
            .min()
            .ok_or(Error::NoEdges)
    }

    /// True iff all edges have the same cardinality (vacuously true for m = 0).
    pub fn is_uniform(&self) -> bool {
        match self.edges.split_first() {
            None => true,
            Some((first, rest)) => rest.iter().all(|e| e.len() == first.len()),
        }
    }

    /// Number of edges containing `v` (0 for vertices outside the universe).
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// The hypergraph whose edge `i` is the complement of edge `i`.
    pub fn reflect(&self) -> Result<Hypergraph> {
        let full = self.universe();
        if let Some(index) = self.edges.iter().position(|&e| e == full) {
            return Err(Error::FullEdge { index });
        }
        let edges = self.edges.iter().map(|e| e.complement(self.n)).collect();
        // Complementation reverses containment, so the antichain survives.
        Ok(Hypergraph::new_unchecked(self.n, edges))
    }

    /// Indices of the edges of minimum cardinality, ascending.
    pub fn min_layer_indices(&self) -> Result<Vec<usize>> {
        let rho = self.min_rank()?;
        Ok((0..self.m())
            .filter(|&i| self.edges[i].len() == rho)
            .collect())
    }

    /// The sub-hypergraph on the same universe made of the minimum-size edges.
    pub fn min_layer(&self) -> Result<Hypergraph> {
        let edges = self
            .min_layer_indices()?
            .into_iter()
            .map(|i| self.edges[i])
            .collect();
        Ok(Hypergraph::new_unchecked(self.n, edges))
    }

    /// Edges as sorted vertex lists in canonical order, for comparing
    /// hypergraphs as edge *sets*.
    pub fn edge_set_key(&self) -> Vec<u32> {
        let mut key: Vec<u32> = self.edges.iter().map(|e| e.bits()).collect();
        key.sort_unstable();
        key
    }

    /// `.hg` text, one trailing newline.
    pub fn to_hg(&self) -> String {
        self.to_string()
    }
}

fn validate(n: usize, edges: &[VertexSet]) -> Result<()> {
    if n > VERTEX_CAP {
        return Err(Error::UniverseTooLarge { n });
    }
    let full = VertexSet::full(n);
    let mut seen: HashMap<VertexSet, usize> = HashMap::with_capacity(edges.len());
    for (index, &e) in edges.iter().enumerate() {
        if e.is_empty() {
            return Err(Error::EmptyEdge { index });
        }
        if !e.is_subset(full) {
            let vertex = e.difference(full).iter().next().unwrap_or(n);
            return Err(Error::VertexOutOfRange { index, vertex, n });
        }
        if let Some(&first) = seen.get(&e) {
            return Err(Error::DuplicateEdge { index, first });
        }
        seen.insert(e, index);
    }
    for j in 1..edges.len() {
        for i in 0..j {
            if edges[i].is_subset(edges[j]) {
                return Err(Error::Containment { inner: i, outer: j });
            }
            if edges[j].is_subset(edges[i]) {
                return Err(Error::Containment { inner: j, outer: i });
            }
        }
    }
    Ok(())
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m())?;
        for e in &self.edges {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_hypergraph(s)
    }
}

/// Parses `.hg` text. Every error carries the 1-based line it refers to.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let malformed = |line: usize, reason: String| Error::Parse { line, reason };

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| malformed(text.lines().count().max(1), "missing header `n m`".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields.as_slice() else {
        return Err(malformed(
            header_line,
            format!("expected `n m`, found `{header}`"),
        ));
    };
    let n: usize = n
        .parse()
        .map_err(|_| malformed(header_line, format!("bad vertex count `{n}`")))?;
    let m: usize = m
        .parse()
        .map_err(|_| malformed(header_line, format!("bad edge count `{m}`")))?;
    if n > VERTEX_CAP {
        return Err(malformed(
            header_line,
            Error::UniverseTooLarge { n }.to_string(),
        ));
    }

    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for (line, content) in lines {
        if edges.len() == m {
            return Err(malformed(line, format!("more than {m} edge lines")));
        }
        let mut set = VertexSet::EMPTY;
        let mut prev: Option<usize> = None;
        for tok in content.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| malformed(line, format!("bad vertex `{tok}`")))?;
            if v >= n {
                return Err(malformed(
                    line,
                    format!("vertex {v} out of range for n = {n}"),
                ));
            }
            if prev.is_some_and(|p| p >= v) {
                return Err(malformed(
                    line,
                    "vertices must be strictly ascending".into(),
                ));
            }
            prev = Some(v);
            set = set.with(v);
        }
        edges.push(set);
        edge_lines.push(line);
    }
    if edges.len() < m {
        let last = text.lines().count().max(1);
        return Err(malformed(
            last,
            format!("expected {m} edge lines, found {}", edges.len()),
        ));
    }

    validate(n, &edges).map_err(|err| {
        let index = match err {
            Error::EmptyEdge { index }
            | Error::VertexOutOfRange { index, .. }
            | Error::DuplicateEdge { index, .. } => index,
            Error::Containment { inner, outer } => inner.max(outer),
            _ => 0,
        };
        let reason = match err {
            Error::DuplicateEdge { first, .. } => {
                format!("duplicate of the edge on line {}", edge_lines[first])
            }
            Error::Containment { inner, outer } => format!(
                "containment: edge on line {} is contained in edge on line {}",
                edge_lines[inner], edge_lines[outer]
            ),
            other => other.to_string(),
        };
        malformed(
            edge_lines.get(index).copied().unwrap_or(header_line),
            reason,
        )
    })?;
    Ok(Hypergraph { n, edges })
}
