//! Simple undirected graphs on dense vertex labels `0..n`, stored as one
//! adjacency bitmask per vertex.
//!
//! Every edit operation returns a new graph whose vertices are again labelled
//! densely; surviving vertices keep their relative order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order the representation can hold (one `u64` mask per vertex).
pub const MAX_ORDER: usize = 64;

/// A subset of the vertices of some graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        if n == MAX_ORDER {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::capacity("graph", n, MAX_ORDER));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency masks. The masks must be symmetric and
    /// loop-free.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(Error::capacity("graph", n, MAX_ORDER));
        }
        let full = VertexSet::full(n).bits();
        for (v, &row) in adj.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::InvalidInput(format!(
                    "row {v} references a vertex >= {n}"
                )));
            }
            if row >> v & 1 == 1 {
                return Err(Error::InvalidInput(format!("self-loop at vertex {v}")));
            }
            for u in VertexSet::from_bits(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::InvalidInput(format!("asymmetric adjacency {v}-{u}")));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n).bits();
        for v in 0..n {
            g.adj[v] = full & !(1u64 << v);
        }
        Ok(g)
    }

    /// `P_n` with edges `i-(i+1)`.
    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    /// `C_n` with edges `i-(i+1)` and `(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut g = Graph::path(n)?;
        g.add_edge(n - 1, 0)?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let e = Edge::new(a, b)?;
        self.adj[e.u] |= 1u64 << e.v;
        self.adj[e.v] |= 1u64 << e.u;
        Ok(())
    }

    pub(crate) fn remove_edge_in_place(&mut self, e: Edge) {
        self.adj[e.u] &= !(1u64 << e.v);
        self.adj[e.v] &= !(1u64 << e.u);
    }

    /// Edges in lexicographic order of their normalized endpoints.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for v in VertexSet(self.adj[u] & ((u64::MAX << u) << 1)) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset(self.vertices()) {
            let bad = s.difference(self.vertices()).min().unwrap_or(0);
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: self.order(),
            });
        }
        Ok(())
    }

    fn check_edge(&self, e: Edge) -> Result<()> {
        self.check_vertex(e.v)?;
        if !self.has_edge(e.u, e.v) {
            return Err(Error::NotAnEdge { u: e.u, v: e.v });
        }
        Ok(())
    }

    /// `G - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced_subgraph_unchecked(self.vertices().without(v)))
    }

    /// `G - S`.
    pub fn delete_vertices(&self, s: VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        Ok(self.induced_subgraph_unchecked(self.vertices().difference(s)))
    }

    /// `G - e`.
    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        self.check_edge(e)?;
        let mut g = self.clone();
        g.remove_edge_in_place(e);
        Ok(g)
    }

    /// `G · e`: the endpoints merge into the smaller one, loops and parallel
    /// edges vanish, and the larger endpoint's label is removed.
    pub fn contract_edge(&self, e: Edge) -> Result<Graph> {
        self.check_edge(e)?;
        let (keep, gone) = e.endpoints();
        let mut merged = self.clone();
        let extra = self.adj[gone] & !(1u64 << keep);
        merged.adj[keep] |= extra;
        for w in VertexSet(extra) {
            merged.adj[w] |= 1u64 << keep;
        }
        Ok(merged.induced_subgraph_unchecked(self.vertices().without(gone)))
    }

    /// `G + H`, with the vertices of `other` shifted up by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order() + other.order();
        if n > MAX_ORDER {
            return Err(Error::capacity("disjoint union", n, MAX_ORDER));
        }
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << shift));
        Ok(Graph { adj })
    }

    /// `G[S]`, relabelled densely in increasing vertex order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        Ok(self.induced_subgraph_unchecked(s))
    }

    pub(crate) fn induced_subgraph_unchecked(&self, s: VertexSet) -> Graph {
        let keep: Vec<usize> = s.to_vec();
        let adj = keep
            .iter()
            .map(|&v| compress(self.adj[v] & s.0, s.0))
            .collect();
        Graph { adj }
    }

    /// Components ordered by their minimum vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        components_within(&self.adj, self.vertices().bits())
            .map(VertexSet)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0
            && component_of(&self.adj, self.vertices().bits(), 0) == self.vertices().bits()
    }

    /// Vertices whose removal leaves a connected graph (for connected input).
    pub(crate) fn non_cut_vertices(&self) -> VertexSet {
        let all = self.vertices().bits();
        let mut out = VertexSet::EMPTY;
        for v in 0..self.order() {
            let rest = all & !(1u64 << v);
            if rest == 0 || component_of(&self.adj, rest, rest.trailing_zeros() as usize) == rest {
                out.insert(v);
            }
        }
        out
    }

    /// Applies `perm` (old vertex -> new vertex).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.order());
        let mut adj = vec![0u64; self.order()];
        for (v, &row) in self.adj.iter().enumerate() {
            let mut r = 0u64;
            for u in VertexSet(row) {
                r |= 1u64 << perm[u];
            }
            adj[perm[v]] = r;
        }
        Graph { adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order())?;
        for (i, e) in self.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

/// Packs the bits of `row` selected by `mask` into the low bits, in order.
fn compress(row: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bit = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros();
        if row >> v & 1 == 1 {
            out |= 1u64 << bit;
        }
        bit += 1;
        m &= m - 1;
    }
    out
}

/// Vertices reachable from `start` inside `within`.
pub(crate) fn component_of(adj: &[u64], within: u64, start: usize) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Connected components of the subgraph induced by `within`, by minimum vertex.
pub(crate) fn components_within(adj: &[u64], within: u64) -> impl Iterator<Item = u64> + '_ {
    let mut rest = within;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let c = component_of(adj, rest, rest.trailing_zeros() as usize);
        rest &= !c;
        Some(c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn delete_vertex_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.delete_vertex(0).unwrap(), Graph::complete(2).unwrap());

        let p4 = Graph::path(4).unwrap();
        let g = p4.delete_vertex(1).unwrap();
        assert_eq!(g, Graph::from_edges(3, &[(1, 2)]).unwrap());

        let k1 = Graph::complete(1).unwrap();
        assert_eq!(k1.delete_vertex(0).unwrap().order(), 0);

        assert!(matches!(
            k3.delete_vertex(3),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        ));
    }

    #[test]
    fn delete_edge_examples() {
        let k3 = Graph::complete(3).unwrap();
        let g = k3.delete_edge(edge(0, 1)).unwrap();
        assert_eq!(g, Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap());

        let p2 = Graph::path(2).unwrap();
        assert_eq!(
            p2.delete_edge(edge(0, 1)).unwrap(),
            Graph::empty(2).unwrap()
        );

        let c4 = Graph::cycle(4).unwrap();
        for e in c4.edges() {
            let g = c4.delete_edge(e).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.degree_sequence(), vec![2, 2, 1, 1]);
        }

        let p3 = Graph::path(3).unwrap();
        assert_eq!(
            p3.delete_edge(edge(0, 2)),
            Err(Error::NotAnEdge { u: 0, v: 2 })
        );
    }

    #[test]
    fn contract_edge_examples() {
        let c6 = Graph::cycle(6).unwrap();
        for e in c6.edges() {
            let g = c6.contract_edge(e).unwrap();
            assert_eq!(g.order(), 5);
            assert_eq!(g.size(), 5);
            assert!(g.is_connected());
            assert_eq!(g.degree_sequence(), vec![2; 5]);
        }

        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            k3.contract_edge(edge(1, 2)).unwrap(),
            Graph::complete(2).unwrap()
        );

        let p2 = Graph::path(2).unwrap();
        assert_eq!(
            p2.contract_edge(edge(0, 1)).unwrap(),
            Graph::empty(1).unwrap()
        );
    }

    #[test]
    fn contraction_merges_into_smaller_endpoint() {
        // star centred at 3, contract 1-3: vertex 1 absorbs 0 and 2
        let star = Graph::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        let g = star.contract_edge(edge(1, 3)).unwrap();
        assert_eq!(g, Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
    }

    #[test]
    fn disjoint_union_examples() {
        let k1 = Graph::complete(1).unwrap();
        assert_eq!(k1.disjoint_union(&k1).unwrap(), Graph::empty(2).unwrap());

        let g = Graph::path(2)
            .unwrap()
            .disjoint_union(&Graph::path(3).unwrap())
            .unwrap();
        assert_eq!(g, Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap());
        assert_eq!(
            g.connected_components(),
            vec![VertexSet::from_bits(0b11), VertexSet::from_bits(0b11100)]
        );

        let p5 = Graph::path(5).unwrap();
        assert_eq!(Graph::empty(0).unwrap().disjoint_union(&p5).unwrap(), p5);

        let big = Graph::empty(40).unwrap();
        assert!(matches!(
            big.disjoint_union(&big),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn induced_subgraph_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.induced_subgraph(c5.vertices()).unwrap(), c5);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(
            k4.induced_subgraph([1, 3].into_iter().collect()).unwrap(),
            Graph::complete(2).unwrap()
        );
        assert_eq!(
            c5.induced_subgraph([4, 0, 1].into_iter().collect())
                .unwrap(),
            // 0,1,4 relabel to 0,1,2; path 1-0-4
            Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap()
        );
        assert!(c5.induced_subgraph(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            Graph::path(3).unwrap().connected_components(),
            vec![VertexSet::full(3)]
        );
        assert_eq!(
            Graph::empty(2).unwrap().connected_components(),
            vec![VertexSet::singleton(0), VertexSet::singleton(1)]
        );
        assert!(Graph::empty(0).unwrap().connected_components().is_empty());
        assert!(!Graph::empty(0).unwrap().is_connected());
    }

    #[test]
    fn from_adjacency_rejects_bad_rows() {
        assert!(Graph::from_adjacency(vec![0b01]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
    }

    #[test]
    fn non_cut_vertices_of_path() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(p4.non_cut_vertices(), [0, 3].into_iter().collect());
    }
}
