//! Building critical graphs: the edge join, the adjoining construction, the
//! `G_k`, `Q` and `R_{k,t}` families, and the inductive family `S_k`.

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, orbit_representatives, CanonicalForm};
use crate::criticality::{first_non_one_unique, is_minor_critical};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::graph6::emit_graph6;
use crate::solver::{td, SOLVER_MAX_ORDER};

/// Outputs up to this order are always checked with the solver.
pub const VERIFY_ORDER_LIMIT: usize = 20;

/// `G + H` plus the edge `{u, v + |V(G)|}`.
pub fn edge_join(g: &Graph, h: &Graph, u: usize, v: usize) -> Result<Graph> {
    g.check_vertex(u)?;
    h.check_vertex(v)?;
    let mut j = g.disjoint_union(h)?;
    j.add_edge(u, v + g.order())?;
    Ok(j)
}

/// Tree-depth, criticality and 1-uniqueness of one part of a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartFlags {
    pub order: usize,
    pub td: u32,
    pub minor_critical: bool,
    pub one_unique: bool,
}

impl PartFlags {
    fn of(g: &Graph) -> Result<Self> {
        Ok(PartFlags {
            order: g.order(),
            td: td(g)?,
            minor_critical: is_minor_critical(g)?,
            one_unique: first_non_one_unique(g)?.is_none(),
        })
    }

    /// `|V| <= 2^(td - 1)`.
    pub fn order_bound_holds(&self) -> bool {
        self.td >= 1 && self.order <= 1usize << (self.td - 1).min(62)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub graph: Graph,
    /// The vertex identified with its host vertex.
    pub vertex: usize,
}

/// A host graph with one attachment per host vertex. Structural invariants
/// are enforced; criticality and 1-uniqueness of the parts are recorded.
#[derive(Clone, Debug)]
pub struct ConstructionSpec {
    host: Graph,
    attachments: Vec<Attachment>,
    host_flags: PartFlags,
    attachment_flags: Vec<PartFlags>,
}

impl ConstructionSpec {
    pub fn new(host: Graph, attachments: Vec<Attachment>) -> Result<Self> {
        let mut problems = Vec::new();
        if host.order() == 0 {
            problems.push("host graph is empty".to_string());
        }
        if attachments.len() != host.order() {
            problems.push(format!(
                "host has {} vertices but {} attachments were given",
                host.order(),
                attachments.len()
            ));
        }
        for (i, a) in attachments.iter().enumerate() {
            if a.vertex >= a.graph.order() {
                problems.push(format!(
                    "attachment {i}: vertex {} is out of range for order {}",
                    a.vertex,
                    a.graph.order()
                ));
            }
        }
        let total = adjoined_order(&host, &attachments);
        if total > MAX_ORDER {
            return Err(Error::capacity("adjoined graph", total, MAX_ORDER));
        }
        if !problems.is_empty() {
            return Err(Error::SpecValidation(problems));
        }

        let host_flags = PartFlags::of(&host)?;
        let attachment_flags: Vec<PartFlags> = attachments
            .iter()
            .map(|a| PartFlags::of(&a.graph))
            .collect::<Result<_>>()?;
        let first = attachment_flags[0].td;
        for (i, f) in attachment_flags.iter().enumerate() {
            if f.td != first {
                problems.push(format!(
                    "attachment {i} has tree-depth {} but attachment 0 has {first}",
                    f.td
                ));
            }
        }
        if !problems.is_empty() {
            return Err(Error::SpecValidation(problems));
        }
        Ok(ConstructionSpec {
            host,
            attachments,
            host_flags,
            attachment_flags,
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    pub fn host_flags(&self) -> &PartFlags {
        &self.host_flags
    }

    pub fn attachment_flags(&self) -> &[PartFlags] {
        &self.attachment_flags
    }

    /// `td(H)`.
    pub fn s(&self) -> u32 {
        self.host_flags.td
    }

    /// One less than the common tree-depth of the attachments.
    pub fn r(&self) -> u32 {
        self.attachment_flags[0].td - 1
    }

    /// Host and attachments are all minor-critical.
    pub fn parts_critical(&self) -> bool {
        self.host_flags.minor_critical && self.attachment_flags.iter().all(|f| f.minor_critical)
    }

    pub fn parts_one_unique(&self) -> bool {
        self.host_flags.one_unique && self.attachment_flags.iter().all(|f| f.one_unique)
    }

    pub fn order(&self) -> usize {
        adjoined_order(&self.host, &self.attachments)
    }

    /// Every failed hypothesis of the criticality theorem, one entry per part.
    pub fn hypothesis_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |name: String, f: &PartFlags| {
            if !f.minor_critical {
                out.push(format!("{name} is not minor-critical"));
            }
            if !f.one_unique {
                out.push(format!("{name} is not 1-unique"));
            }
        };
        check("host".into(), &self.host_flags);
        for (i, f) in self.attachment_flags.iter().enumerate() {
            check(format!("attachment {i}"), f);
        }
        out
    }
}

fn adjoined_order(host: &Graph, attachments: &[Attachment]) -> usize {
    host.order()
        + attachments
            .iter()
            .map(|a| a.graph.order().saturating_sub(1))
            .sum::<usize>()
}

/// Identifies `w_i` of each attachment with host vertex `i`. Host vertices
/// keep labels `0..q`; the remaining vertices of each attachment follow in
/// attachment order, keeping their relative order.
fn build_adjoined(host: &Graph, attachments: &[Attachment]) -> Result<Graph> {
    let n = adjoined_order(host, attachments);
    if n > MAX_ORDER {
        return Err(Error::capacity("adjoined graph", n, MAX_ORDER));
    }
    let mut g = Graph::empty(n)?;
    for e in host.edges() {
        g.add_edge(e.u(), e.v())?;
    }
    let mut next = host.order();
    for (i, a) in attachments.iter().enumerate() {
        let map: Vec<usize> = (0..a.graph.order())
            .map(|x| {
                if x == a.vertex {
                    i
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        for e in a.graph.edges() {
            g.add_edge(map[e.u()], map[e.v()])?;
        }
    }
    Ok(g)
}

/// Builds the adjoined graph. When all parts are critical and the result has
/// at most [`VERIFY_ORDER_LIMIT`] vertices, its tree-depth is checked to be
/// `r + s`.
pub fn adjoin(spec: &ConstructionSpec) -> Result<Graph> {
    let g = build_adjoined(&spec.host, &spec.attachments)?;
    if spec.parts_critical() && g.order() <= VERIFY_ORDER_LIMIT {
        let got = td(&g)?;
        let want = spec.r() + spec.s();
        if got != want {
            return Err(Error::Invariant(format!(
                "adjoined graph has tree-depth {got}, expected r + s = {want}"
            )));
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub graph6: String,
    pub order: usize,
    pub r: u32,
    pub s: u32,
    pub td: u32,
    pub td_matches: bool,
    pub minor_critical: bool,
    pub one_unique: bool,
    /// Host and every attachment satisfy `|V| <= 2^(td - 1)`.
    pub order_hypotheses_hold: bool,
    pub order_bound_holds: bool,
    /// Failed criticality / 1-uniqueness hypotheses of the parts.
    pub hypothesis_failures: Vec<String>,
}

impl ConstructionReport {
    /// The conclusions that the hypotheses promise all hold. Vacuously true
    /// when a hypothesis fails.
    pub fn conclusions_hold(&self) -> bool {
        if !self.hypothesis_failures.is_empty() {
            return true;
        }
        self.td_matches
            && self.minor_critical
            && self.one_unique
            && (!self.order_hypotheses_hold || self.order_bound_holds)
    }
}

/// Builds the graph and checks its tree-depth, criticality, 1-uniqueness and
/// order against the parts.
pub fn verify_construction(spec: &ConstructionSpec) -> Result<ConstructionReport> {
    let g = build_adjoined(&spec.host, &spec.attachments)?;
    if g.order() > SOLVER_MAX_ORDER {
        return Err(Error::capacity(
            "construction verification",
            g.order(),
            SOLVER_MAX_ORDER,
        ));
    }
    let k = td(&g)?;
    let flags = PartFlags {
        order: g.order(),
        td: k,
        minor_critical: is_minor_critical(&g)?,
        one_unique: first_non_one_unique(&g)?.is_none(),
    };
    Ok(ConstructionReport {
        graph6: emit_graph6(&g),
        order: g.order(),
        r: spec.r(),
        s: spec.s(),
        td: k,
        td_matches: k == spec.r() + spec.s(),
        minor_critical: flags.minor_critical,
        one_unique: flags.one_unique,
        order_hypotheses_hold: spec.host_flags.order_bound_holds()
            && spec
                .attachment_flags
                .iter()
                .all(PartFlags::order_bound_holds),
        order_bound_holds: flags.order_bound_holds(),
        hypothesis_failures: spec.hypothesis_failures(),
    })
}

/// `C_{2^k+1}` with a chord between the two neighbours of vertex 0.
pub fn family_gk(k: u32) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidInput("G_k needs k >= 1".into()));
    }
    if k > 4 {
        let n = (1usize << k.min(20)) + 1;
        return Err(Error::capacity("G_k", n, SOLVER_MAX_ORDER));
    }
    let n = (1usize << k) + 1;
    let mut g = Graph::cycle(n)?;
    g.add_edge(1, n - 1)?;
    Ok(g)
}

/// `H_0 = K_s` on vertices `0..s`, split into consecutive blocks `B_i` of
/// sizes `partition[i]`; each block is joined to its own `K_{k-s}`.
pub fn family_q(k: usize, s: usize, partition: &[usize]) -> Result<Graph> {
    let q = partition.len();
    let mut problems = Vec::new();
    if !(1..=k).contains(&s) {
        problems.push(format!("s = {s} is outside 1..={k}"));
    }
    if !(1..=s.max(1)).contains(&q) {
        problems.push(format!("q = {q} is outside 1..={s}"));
    }
    if partition.contains(&0) {
        problems.push("partition parts must be positive".into());
    }
    if partition.iter().sum::<usize>() != s {
        problems.push(format!("partition {partition:?} does not sum to s = {s}"));
    }
    if !problems.is_empty() {
        return Err(Error::InvalidInput(problems.join("; ")));
    }
    let n = s + q * (k - s);
    if n > MAX_ORDER {
        return Err(Error::capacity("Q family", n, MAX_ORDER));
    }
    let mut g = Graph::complete(s)?.disjoint_union(&Graph::empty(n - s)?)?;
    let mut block_start = 0;
    for (i, &size) in partition.iter().enumerate() {
        let clique: Vec<usize> = (s + i * (k - s)..s + (i + 1) * (k - s)).collect();
        for (a, &x) in clique.iter().enumerate() {
            for &y in &clique[a + 1..] {
                g.add_edge(x, y)?;
            }
            for b in block_start..block_start + size {
                g.add_edge(b, x)?;
            }
        }
        block_start += size;
    }
    Ok(g)
}

/// Path on `2^(k-2) + 1 + t` vertices plus the edge between the two vertices
/// at distance `t` from the ends.
pub fn family_r(k: u32, t: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidInput("R_{k,t} needs k >= 3".into()));
    }
    if k > 7 {
        return Err(Error::capacity(
            "R family",
            (1usize << (k - 2).min(20)) + 1,
            MAX_ORDER,
        ));
    }
    let base = 1usize << (k - 2);
    if t > base - 2 {
        return Err(Error::InvalidInput(format!(
            "t = {t} is outside 0..={}",
            base - 2
        )));
    }
    let n = base + 1 + t;
    let mut g = Graph::path(n)?;
    g.add_edge(t, n - 1 - t)?;
    Ok(g)
}

/// Parameters of the explicit families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilyParams {
    Gk {
        k: u32,
    },
    Q {
        k: usize,
        s: usize,
        partition: Vec<usize>,
    },
    R {
        k: u32,
        t: usize,
    },
}

impl FamilyParams {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilyParams::Gk { k } => family_gk(*k),
            FamilyParams::Q { k, s, partition } => family_q(*k, *s, partition),
            FamilyParams::R { k, t } => family_r(*k, *t),
        }
    }
}

/// How a member of `S_k` was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionTree {
    /// `K_2`, the seed of `S_2`.
    Seed,
    /// A member of the supplied base family.
    Base { graph6: String },
    Adjoin {
        host: Box<ConstructionTree>,
        /// Attachment tree and the attachment vertex, per host vertex.
        attachments: Vec<(ConstructionTree, usize)>,
    },
}

#[derive(Clone, Debug)]
pub struct SMember {
    pub graph: Graph,
    pub td: u32,
    pub tree: ConstructionTree,
}

/// Largest order cap accepted by [`generate_s_family`].
pub const S_FAMILY_MAX_ORDER: usize = 32;

/// Members of `S_k` with at most `order_cap` vertices, one per isomorphism
/// class. `S_2 = {K_2}` plus the base graphs of tree-depth 2; `S_j` holds the
/// base graphs of tree-depth `j` and every adjoining of a host from `S_s` with
/// attachments from `S_{r+1}`, `r >= 1`, `s >= 2`, `r + s = j`. The first
/// construction found for a class is kept as its provenance.
///
/// Base graphs must be minor-critical and 1-unique; this is checked.
pub fn generate_s_family(k: u32, base: &[Graph], order_cap: usize) -> Result<Vec<SMember>> {
    if k < 2 {
        return Err(Error::InvalidInput("S_k is defined for k >= 2".into()));
    }
    if order_cap > S_FAMILY_MAX_ORDER {
        return Err(Error::capacity(
            "S family order cap",
            order_cap,
            S_FAMILY_MAX_ORDER,
        ));
    }
    let mut verified: Vec<(Graph, u32)> = Vec::new();
    for (i, g) in base.iter().enumerate() {
        let f = PartFlags::of(g)?;
        if !f.minor_critical || !f.one_unique {
            return Err(Error::Precondition(format!(
                "base graph {i} ({}) is not critical and 1-unique",
                emit_graph6(g)
            )));
        }
        verified.push((g.clone(), f.td));
    }

    // levels[j] holds S_j
    let mut levels: Vec<Vec<SMember>> = vec![Vec::new(); k as usize + 1];
    for j in 2..=k {
        let mut seen: FxHashSet<CanonicalForm> = FxHashSet::default();
        let mut members = Vec::new();
        let mut push = |m: SMember, members: &mut Vec<SMember>| -> Result<()> {
            if seen.insert(canonical_form(&m.graph)?) {
                members.push(m);
            }
            Ok(())
        };
        if j == 2 && order_cap >= 2 {
            let seed = SMember {
                graph: Graph::complete(2)?,
                td: 2,
                tree: ConstructionTree::Seed,
            };
            push(seed, &mut members)?;
        }
        for (g, t) in &verified {
            if *t == j && g.order() <= order_cap {
                let m = SMember {
                    graph: g.clone(),
                    td: j,
                    tree: ConstructionTree::Base {
                        graph6: emit_graph6(g),
                    },
                };
                push(m, &mut members)?;
            }
        }
        for r in 1..=j - 2 {
            let s = j - r;
            let hosts = &levels[s as usize];
            let parts = &levels[r as usize + 1];
            if hosts.is_empty() || parts.is_empty() {
                continue;
            }
            let choices = attachment_choices(parts)?;
            for host in hosts {
                let mut found = Vec::new();
                adjoin_all(
                    host,
                    parts,
                    &choices,
                    order_cap,
                    &mut Vec::new(),
                    &mut found,
                )?;
                for (g, picks) in found {
                    if g.order() <= VERIFY_ORDER_LIMIT {
                        let got = td(&g)?;
                        if got != j {
                            return Err(Error::Invariant(format!(
                                "S_{j} candidate {} has tree-depth {got}",
                                emit_graph6(&g)
                            )));
                        }
                    }
                    let tree = ConstructionTree::Adjoin {
                        host: Box::new(host.tree.clone()),
                        attachments: picks
                            .iter()
                            .map(|&(p, w)| (parts[p].tree.clone(), w))
                            .collect(),
                    };
                    push(
                        SMember {
                            graph: g,
                            td: j,
                            tree,
                        },
                        &mut members,
                    )?;
                }
            }
        }
        levels[j as usize] = members;
    }
    Ok(levels.swap_remove(k as usize))
}

/// `(part index, attachment vertex)` pairs, one vertex per automorphism orbit.
fn attachment_choices(parts: &[SMember]) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (i, m) in parts.iter().enumerate() {
        for w in orbit_representatives(&m.graph)? {
            out.push((i, w));
        }
    }
    Ok(out)
}

type Picks = Vec<(usize, usize)>;

fn adjoin_all(
    host: &SMember,
    parts: &[SMember],
    choices: &[(usize, usize)],
    order_cap: usize,
    picks: &mut Picks,
    found: &mut Vec<(Graph, Picks)>,
) -> Result<()> {
    let q = host.graph.order();
    let order_so_far = q + picks
        .iter()
        .map(|&(p, _)| parts[p].graph.order() - 1)
        .sum::<usize>();
    let smallest = parts.iter().map(|m| m.graph.order() - 1).min().unwrap_or(0);
    if order_so_far + (q - picks.len()) * smallest > order_cap {
        return Ok(());
    }
    if picks.len() == q {
        let attachments: Vec<Attachment> = picks
            .iter()
            .map(|&(p, w)| Attachment {
                graph: parts[p].graph.clone(),
                vertex: w,
            })
            .collect();
        found.push((build_adjoined(&host.graph, &attachments)?, picks.clone()));
        return Ok(());
    }
    for &c in choices {
        picks.push(c);
        adjoin_all(host, parts, choices, order_cap, picks, found)?;
        picks.pop();
    }
    Ok(())
}
