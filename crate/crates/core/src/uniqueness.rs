//! t-uniqueness: whether some optimal ranking gives a vertex a label no other
//! vertex carries.
//!
//! Two independent routes decide 1-uniqueness. The fast route compares the
//! tree-depth of the star-clique transform with that of the graph (connected
//! graphs only). The direct route searches optimal rankings with the label
//! constrained to the vertex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components_within, Graph, VertexSet};
use crate::ranking::{label_range, Ranking, RankingSearch};
use crate::solver::{td, td_at_most};

/// Largest order accepted by the direct ranking searches.
pub const SEARCH_MAX_ORDER: usize = 20;

/// Largest order accepted by [`decomposition_optimum`].
pub const DECOMPOSITION_MAX_ORDER: usize = 12;

/// Largest order accepted by [`check_top_set_characterization`].
pub const TOP_SET_MAX_ORDER: usize = 8;

/// Deletes `v` and turns its neighbourhood into a clique.
pub fn star_clique_transform(g: &Graph, v: usize) -> Result<Graph> {
    g.check_vertex(v)?;
    let mut h = g.clone();
    let nbrs = g.neighbors(v).to_vec();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            h.add_edge(a, b)?;
        }
    }
    h.delete_vertex(v)
}

/// `G<S>`: the graph on `S` where `u ~ w` if they are adjacent in `G` or both
/// have a neighbour in one component of `G - S`.
pub fn quotient_graph(g: &Graph, s: VertexSet) -> Result<Graph> {
    g.check_set(s)?;
    let mut h = g.clone();
    let outside = g.vertices().difference(s);
    for comp in components_within(g.adjacency(), outside.bits()) {
        let attach: Vec<usize> = VertexSet::from_bits(comp)
            .iter()
            .fold(VertexSet::EMPTY, |acc, w| acc.union(g.neighbors(w)))
            .intersection(s)
            .to_vec();
        for (i, &a) in attach.iter().enumerate() {
            for &b in &attach[i + 1..] {
                h.add_edge(a, b)?;
            }
        }
    }
    h.induced_subgraph(s)
}

/// Whether `v` is 1-unique. Connected graphs use `td(H) < td(G)` for the
/// star-clique transform `H`; other graphs fall back to the direct search.
pub fn is_1_unique_vertex(g: &Graph, v: usize) -> Result<bool> {
    g.check_vertex(v)?;
    if !g.is_connected() {
        return is_t_unique_vertex(g, v, 1);
    }
    let k = td(g)?;
    let h = star_clique_transform(g, v)?;
    Ok(k >= 1 && td_at_most(&h, k - 1)?)
}

pub fn is_1_unique_graph(g: &Graph) -> Result<bool> {
    for v in 0..g.order() {
        if !is_1_unique_vertex(g, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Directly searches for an optimal ranking in which `v` is the only vertex
/// with label `t`.
pub fn t_unique_witness(g: &Graph, v: usize, t: u32) -> Result<Option<Ranking>> {
    g.check_vertex(v)?;
    if g.order() > SEARCH_MAX_ORDER {
        return Err(Error::capacity(
            "t-uniqueness search",
            g.order(),
            SEARCH_MAX_ORDER,
        ));
    }
    let k = td(g)?;
    if t < 1 || t > k {
        return Err(Error::InvalidInput(format!("label {t} is outside 1..={k}")));
    }
    let others = label_range(1, k) & !(1u64 << t);
    let mut allowed = vec![others; g.order()];
    allowed[v] = 1u64 << t;
    Ok(RankingSearch::new(g, allowed).find(k))
}

pub fn is_t_unique_vertex(g: &Graph, v: usize, t: u32) -> Result<bool> {
    Ok(t_unique_witness(g, v, t)?.is_some())
}

/// Per-vertex minimum unique label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessProfile {
    pub td: u32,
    /// `min_t[v]` is the least `t` for which `v` is t-unique, `None` if no
    /// `t <= td` works.
    pub min_t: Vec<Option<u32>>,
}

impl UniquenessProfile {
    /// Least `t` for which the whole graph is t-unique.
    pub fn graph_min_t(&self) -> Option<u32> {
        self.min_t
            .iter()
            .try_fold(0, |acc, m| m.map(|t| acc.max(t)))
    }

    pub fn is_one_unique(&self) -> bool {
        self.graph_min_t() == Some(1)
    }
}

/// Computes the minimum unique label of every vertex and checks that
/// uniqueness is upward closed in `t`.
pub fn uniqueness_profile(g: &Graph) -> Result<UniquenessProfile> {
    let k = td(g)?;
    let connected = g.is_connected();
    let mut min_t = Vec::with_capacity(g.order());
    for v in 0..g.order() {
        if connected && is_1_unique_vertex(g, v)? {
            min_t.push(Some(1));
            continue;
        }
        let flags: Vec<bool> = (1..=k)
            .map(|t| is_t_unique_vertex(g, v, t))
            .collect::<Result<_>>()?;
        let first = flags.iter().position(|&f| f);
        if let Some(i) = first {
            if let Some(gap) = flags[i..].iter().position(|&f| !f) {
                return Err(Error::Invariant(format!(
                    "vertex {v} is {}-unique but not {}-unique",
                    i + 1,
                    i + gap + 1
                )));
            }
        }
        min_t.push(first.map(|i| i as u32 + 1));
    }
    Ok(UniquenessProfile { td: k, min_t })
}

/// A minimizing set for `td(G<S>) + td(G - S)` and the minimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub set: VertexSet,
    pub value: u32,
    /// Number of sets attaining the minimum.
    pub tight_sets: usize,
}

/// Minimizes `td(G<S>) + td(G - S)` over every `S`. Ties go to the
/// lexicographically least sorted member list.
pub fn decomposition_optimum(g: &Graph) -> Result<Decomposition> {
    let n = g.order();
    if n > DECOMPOSITION_MAX_ORDER {
        return Err(Error::capacity(
            "decomposition search",
            n,
            DECOMPOSITION_MAX_ORDER,
        ));
    }
    let mut best: Option<(u32, Vec<usize>, VertexSet)> = None;
    let mut tight = 0;
    for bits in 0..1u64 << n {
        let s = VertexSet::from_bits(bits);
        let value = td(&quotient_graph(g, s)?)? + td(&g.delete_vertices(s)?)?;
        let members = s.to_vec();
        match &best {
            Some((b, _, _)) if value > *b => {}
            Some((b, m, _)) if value == *b => {
                tight += 1;
                if members < *m {
                    best = Some((value, members, s));
                }
            }
            _ => {
                tight = 1;
                best = Some((value, members, s));
            }
        }
    }
    let (value, _, set) = best.expect("at least the empty set is considered");
    Ok(Decomposition {
        set,
        value,
        tight_sets: tight,
    })
}

/// Searches for an optimal ranking that puts every vertex of `top` strictly
/// above every vertex outside it.
pub fn top_set_ranking(g: &Graph, top: VertexSet) -> Result<Option<Ranking>> {
    g.check_set(top)?;
    if g.order() > SEARCH_MAX_ORDER {
        return Err(Error::capacity(
            "top-set ranking search",
            g.order(),
            SEARCH_MAX_ORDER,
        ));
    }
    let k = td(g)?;
    for split in 0..=k {
        let allowed = (0..g.order())
            .map(|v| {
                if top.contains(v) {
                    label_range(split + 1, k)
                } else {
                    label_range(1, split)
                }
            })
            .collect();
        if let Some(r) = RankingSearch::new(g, allowed).find(k) {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Whether `td(G<T>) + td(G - T) = td(G)` agrees with the existence of an
/// optimal ranking placing `T` above the rest.
pub fn check_top_set_characterization(g: &Graph, top: VertexSet) -> Result<bool> {
    if g.order() > TOP_SET_MAX_ORDER {
        return Err(Error::capacity(
            "top-set characterization",
            g.order(),
            TOP_SET_MAX_ORDER,
        ));
    }
    g.check_set(top)?;
    let tight = td(&quotient_graph(g, top)?)? + td(&g.delete_vertices(top)?)? == td(g)?;
    let ranked = top_set_ranking(g, top)?.is_some();
    Ok(tight == ranked)
}

/// Searches for an optimal ranking giving `v` the top label `td(G)`.
pub fn top_label_witness(g: &Graph, v: usize) -> Result<Option<Ranking>> {
    g.check_vertex(v)?;
    if g.order() > SEARCH_MAX_ORDER {
        return Err(Error::capacity(
            "top-label search",
            g.order(),
            SEARCH_MAX_ORDER,
        ));
    }
    let k = td(g)?;
    let mut allowed = vec![label_range(1, k); g.order()];
    allowed[v] = 1u64 << k;
    Ok(RankingSearch::new(g, allowed).find(k))
}
