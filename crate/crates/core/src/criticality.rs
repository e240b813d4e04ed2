//! Criticality under the minor, subgraph and induced-subgraph orders, and
//! searches for critical graphs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::enumerate::enumerate_connected_graphs;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::solver::{td, td_at_most, tree_depth_capped};
use crate::uniqueness::is_1_unique_vertex;

/// A one-step reduction that did not lower the tree-depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum MinorStep {
    DeleteEdge {
        u: usize,
        v: usize,
    },
    ContractEdge {
        u: usize,
        v: usize,
    },
    DeleteVertex {
        v: usize,
    },
    /// A disconnected graph: dropping every component except one of maximum
    /// tree-depth keeps the tree-depth.
    DropComponent {
        keep: usize,
    },
    /// The empty graph has no proper minor with smaller tree-depth to speak of.
    Empty,
}

impl MinorStep {
    fn delete(e: Edge) -> Self {
        MinorStep::DeleteEdge { u: e.u(), v: e.v() }
    }

    fn contract(e: Edge) -> Self {
        MinorStep::ContractEdge { u: e.u(), v: e.v() }
    }
}

/// `Ok(None)` if `g` is minor-critical, otherwise the first one-step minor
/// with the same tree-depth.
///
/// One-step minors suffice: tree-depth never increases under taking minors,
/// and every proper minor is a minor of some `G - e` or `G · e` (a vertex
/// deletion is a minor of deleting any incident edge, and an isolated vertex
/// only occurs in a disconnected graph or in `K_1`). So if every single edge
/// deletion and contraction lowers the tree-depth, every proper minor does.
pub fn minor_critical_witness(g: &Graph) -> Result<Option<MinorStep>> {
    let k = td(g)?;
    if let Some(step) = disconnected_witness(g, k)? {
        return Ok(Some(step));
    }
    for e in g.edges() {
        if !td_at_most(&g.delete_edge(e)?, k - 1)? {
            return Ok(Some(MinorStep::delete(e)));
        }
        if !td_at_most(&g.contract_edge(e)?, k - 1)? {
            return Ok(Some(MinorStep::contract(e)));
        }
    }
    Ok(None)
}

fn disconnected_witness(g: &Graph, k: u32) -> Result<Option<MinorStep>> {
    if g.order() == 0 {
        return Ok(Some(MinorStep::Empty));
    }
    if g.is_connected() {
        return Ok(None);
    }
    for comp in g.connected_components() {
        if td(&g.induced_subgraph(comp)?)? == k {
            let keep = comp.min().expect("components are non-empty");
            return Ok(Some(MinorStep::DropComponent { keep }));
        }
    }
    unreachable!("some component attains the tree-depth")
}

pub fn is_minor_critical(g: &Graph) -> Result<bool> {
    Ok(minor_critical_witness(g)?.is_none())
}

/// Every edge deletion lowers the tree-depth and there is no isolated vertex
/// (unless the graph is `K_1`); vertex deletions are then dominated by edge
/// deletions.
pub fn subgraph_critical_witness(g: &Graph) -> Result<Option<MinorStep>> {
    let k = td(g)?;
    if g.order() == 0 {
        return Ok(Some(MinorStep::Empty));
    }
    if g.order() > 1 {
        if let Some(v) = (0..g.order()).find(|&v| g.degree(v) == 0) {
            return Ok(Some(MinorStep::DeleteVertex { v }));
        }
    }
    for e in g.edges() {
        if !td_at_most(&g.delete_edge(e)?, k - 1)? {
            return Ok(Some(MinorStep::delete(e)));
        }
    }
    Ok(None)
}

pub fn is_subgraph_critical(g: &Graph) -> Result<bool> {
    Ok(subgraph_critical_witness(g)?.is_none())
}

pub fn induced_subgraph_critical_witness(g: &Graph) -> Result<Option<MinorStep>> {
    let k = td(g)?;
    if g.order() == 0 {
        return Ok(Some(MinorStep::Empty));
    }
    for v in 0..g.order() {
        if !td_at_most(&g.delete_vertex(v)?, k - 1)? {
            return Ok(Some(MinorStep::DeleteVertex { v }));
        }
    }
    Ok(None)
}

pub fn is_induced_subgraph_critical(g: &Graph) -> Result<bool> {
    Ok(induced_subgraph_critical_witness(g)?.is_none())
}

/// 1-uniqueness of every vertex, or the first vertex that is not 1-unique.
pub fn first_non_one_unique(g: &Graph) -> Result<Option<usize>> {
    for v in 0..g.order() {
        if !is_1_unique_vertex(g, v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub td: u32,
    pub minor_critical: bool,
    pub subgraph_critical: bool,
    pub induced_subgraph_critical: bool,
    pub one_unique: bool,
    /// A one-step minor with unchanged tree-depth, when not minor-critical.
    pub failing_witness: Option<MinorStep>,
}

/// Classifies `g` and checks the nesting of the three orders and that a
/// 1-unique subgraph-critical graph is minor-critical.
pub fn classify(g: &Graph) -> Result<CriticalityReport> {
    let k = td(g)?;
    let failing_witness = minor_critical_witness(g)?;
    let report = CriticalityReport {
        td: k,
        minor_critical: failing_witness.is_none(),
        subgraph_critical: is_subgraph_critical(g)?,
        induced_subgraph_critical: is_induced_subgraph_critical(g)?,
        one_unique: first_non_one_unique(g)?.is_none(),
        failing_witness,
    };
    if report.minor_critical && !report.subgraph_critical
        || report.subgraph_critical && !report.induced_subgraph_critical
    {
        return Err(Error::Invariant(format!(
            "criticality flags do not nest: {report:?}"
        )));
    }
    if report.one_unique && report.subgraph_critical && !report.minor_critical {
        return Err(Error::Invariant(
            "a 1-unique subgraph-critical graph is not minor-critical".into(),
        ));
    }
    Ok(report)
}

/// Largest order searched by [`find_critical_graphs`].
pub const SEARCH_MAX_ORDER: usize = 8;

fn check_search_params(k: u32, n_max: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if n_max > SEARCH_MAX_ORDER {
        return Err(Error::capacity(
            "critical graph search",
            n_max,
            SEARCH_MAX_ORDER,
        ));
    }
    Ok(())
}

/// Connected graphs on `1..=n_max` vertices with tree-depth exactly `k`, in
/// order then canonical-form order.
fn graphs_with_td(k: u32, n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        // td <= n, so orders below k cannot reach it
        if (n as u32) < k {
            continue;
        }
        let graphs = enumerate_connected_graphs(n)?;
        let hits: Vec<Graph> = graphs
            .into_par_iter()
            .map(|g| {
                let exact = tree_depth_capped(&g, k)?.is_some_and(|r| r.value == k);
                Ok(exact.then_some(g))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        out.extend(sorted_by_form(hits)?);
    }
    Ok(out)
}

fn sorted_by_form(graphs: Vec<Graph>) -> Result<Vec<Graph>> {
    let mut keyed: Vec<_> = graphs
        .into_iter()
        .map(|g| Ok((g.order(), canonical_form(&g)?, g)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(keyed.into_iter().map(|(_, _, g)| g).collect())
}

/// All minor-critical graphs with tree-depth `k` on at most `n_max` vertices,
/// one per isomorphism class. Only connected candidates are examined, since a
/// disconnected graph keeps its tree-depth when a smaller component is
/// dropped.
pub fn find_critical_graphs(k: u32, n_max: usize) -> Result<Vec<Graph>> {
    check_search_params(k, n_max)?;
    let candidates = graphs_with_td(k, n_max)?;
    let flags: Vec<bool> = candidates
        .par_iter()
        .map(is_minor_critical)
        .collect::<Result<_>>()?;
    Ok(candidates
        .into_iter()
        .zip(flags)
        .filter_map(|(g, c)| c.then_some(g))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureFinding {
    pub order: usize,
    pub max_degree: usize,
    pub one_unique: bool,
    pub order_bound_holds: bool,
    pub degree_bound_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub k: u32,
    pub n_max: usize,
    /// `2^(k-1)`.
    pub order_bound: usize,
    /// `k - 1`.
    pub degree_bound: usize,
    pub critical: Vec<(Graph6Key, ConjectureFinding)>,
    /// Critical graphs breaking at least one of the three properties.
    pub counterexamples: Vec<Graph6Key>,
    /// Orders of induced-subgraph-critical graphs with tree-depth `k`
    /// (order -> count), recorded for the wider form of the order bound.
    pub induced_critical_orders: BTreeMap<usize, usize>,
    pub induced_order_violations: Vec<Graph6Key>,
}

/// graph6 text used to name graphs inside reports.
pub type Graph6Key = String;

/// Records, for every critical graph with tree-depth `k` and at most `n_max`
/// vertices, whether it has at most `2^(k-1)` vertices, maximum degree at most
/// `k-1`, and is 1-unique. Violations are reported, never filtered.
pub fn conjecture_stress(k: u32, n_max: usize) -> Result<ConjectureReport> {
    check_search_params(k, n_max)?;
    let order_bound = 1usize << (k - 1);
    let degree_bound = (k - 1) as usize;

    let candidates = graphs_with_td(k, n_max)?;
    let classified: Vec<(bool, bool)> = candidates
        .par_iter()
        .map(|g| Ok((is_minor_critical(g)?, is_induced_subgraph_critical(g)?)))
        .collect::<Result<_>>()?;

    let mut critical = Vec::new();
    let mut counterexamples = Vec::new();
    let mut induced_critical_orders = BTreeMap::new();
    let mut induced_order_violations = Vec::new();
    for (g, (minor, induced)) in candidates.iter().zip(classified) {
        let key = crate::graph6::emit_graph6(g);
        if induced {
            *induced_critical_orders.entry(g.order()).or_insert(0) += 1;
            if g.order() > order_bound {
                induced_order_violations.push(key.clone());
            }
        }
        if !minor {
            continue;
        }
        let finding = ConjectureFinding {
            order: g.order(),
            max_degree: g.max_degree(),
            one_unique: first_non_one_unique(g)?.is_none(),
            order_bound_holds: g.order() <= order_bound,
            degree_bound_holds: g.max_degree() <= degree_bound,
        };
        if !(finding.one_unique && finding.order_bound_holds && finding.degree_bound_holds) {
            counterexamples.push(key.clone());
        }
        critical.push((key, finding));
    }
    Ok(ConjectureReport {
        k,
        n_max,
        order_bound,
        degree_bound,
        critical,
        counterexamples,
        induced_critical_orders,
        induced_order_violations,
    })
}

/// Result of greedily deleting edges that keep the tree-depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningReduction {
    pub graph: Graph,
    /// Deleted edges in order, labelled in the input graph.
    pub removed: Vec<Edge>,
}

/// Repeatedly deletes the lexicographically first edge whose removal keeps
/// the tree-depth, restarting the scan after each deletion. The input must be
/// 1-unique; the result is then a minor-critical spanning subgraph, which is
/// checked.
pub fn critical_spanning_subgraph(g: &Graph) -> Result<SpanningReduction> {
    if g.order() == 0 {
        return Err(Error::Precondition(
            "the empty graph has no critical subgraph".into(),
        ));
    }
    if let Some(v) = first_non_one_unique(g)? {
        return Err(Error::Precondition(format!("vertex {v} is not 1-unique")));
    }
    let k = td(g)?;
    let mut h = g.clone();
    let mut removed = Vec::new();
    'scan: loop {
        for e in h.edges() {
            let smaller = h.delete_edge(e)?;
            if !td_at_most(&smaller, k - 1)? {
                h = smaller;
                removed.push(e);
                continue 'scan;
            }
        }
        break;
    }
    if !is_minor_critical(&h)? {
        return Err(Error::Invariant(
            "edge-minimal spanning subgraph of a 1-unique graph is not minor-critical".into(),
        ));
    }
    Ok(SpanningReduction { graph: h, removed })
}
