//! Canonical labelling by colour refinement plus individualization search.
//!
//! The ordered partition produced by refinement is isomorphism-invariant, so
//! the maximum adjacency encoding over all leaves of the individualization
//! tree is a canonical form. Swapping two twins inside a cell is an
//! automorphism that fixes the current partition, so only one vertex per twin
//! class is individualized.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX_ORDER: usize = 32;

/// Adjacency rows of the canonically relabelled graph. Equal iff the source
/// graphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_adjacency(self.rows.clone()).expect("canonical rows are a valid graph")
    }
}

/// A canonical form together with the labelling that produced it.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `labeling[v]` is the canonical position of original vertex `v`.
    pub labeling: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(canonical_labeling(g)?.form)
}

pub fn canonical_labeling(g: &Graph) -> Result<Canonical> {
    canonical_labeling_colored(g, &vec![0; g.order()])
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.size() != b.size() || a.degree_sequence() != b.degree_sequence()
    {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Canonical labelling of a vertex-coloured graph. Colour classes are ordered
/// by colour value, so only isomorphisms preserving colours are quotiented.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Result<Canonical> {
    let n = g.order();
    if n > CANON_MAX_ORDER {
        return Err(Error::capacity("canonical form", n, CANON_MAX_ORDER));
    }
    if colors.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} colours given for {n} vertices",
            colors.len()
        )));
    }
    let mut by_color: Vec<(u32, usize)> = colors.iter().copied().zip(0..n).collect();
    by_color.sort_unstable();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, &(c, v)) in by_color.iter().enumerate() {
        if i == 0 || by_color[i - 1].0 != c {
            cells.push(Vec::new());
        }
        cells.last_mut().unwrap().push(v);
    }

    let mut search = Search {
        adj: g.adjacency(),
        best: None,
    };
    let cells = refine(search.adj, cells);
    search.explore(cells);
    let (rows, labeling) = search.best.unwrap_or_default();
    Ok(Canonical {
        form: CanonicalForm { rows },
        labeling,
    })
}

/// One representative (the smallest vertex) of each automorphism orbit.
pub fn orbit_representatives(g: &Graph) -> Result<Vec<usize>> {
    let n = g.order();
    let mut seen: Vec<CanonicalForm> = Vec::new();
    let mut reps = Vec::new();
    for v in 0..n {
        let mut colors = vec![0u32; n];
        colors[v] = 1;
        let form = canonical_labeling_colored(g, &colors)?.form;
        if !seen.contains(&form) {
            seen.push(form);
            reps.push(v);
        }
    }
    Ok(reps)
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn explore(&mut self, cells: Vec<Vec<usize>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = &cells[target];
        let mut tried: Vec<usize> = Vec::new();
        for &v in cell {
            if tried.iter().any(|&u| are_twins(self.adj, u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.explore(refine(self.adj, next));
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.adj.len();
        let mut perm = vec![0usize; n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let mut rows = vec![0u64; n];
        for (v, &row) in self.adj.iter().enumerate() {
            let mut r = 0u64;
            for u in VertexSet::from_bits(row) {
                r |= 1u64 << perm[u];
            }
            rows[perm[v]] = r;
        }
        let better = match &self.best {
            None => true,
            Some((b, _)) => rows.cmp(b) == Ordering::Greater,
        };
        if better {
            self.best = Some((rows, perm));
        }
    }
}

fn are_twins(adj: &[u64], u: usize, v: usize) -> bool {
    adj[u] & !(1u64 << v) == adj[v] & !(1u64 << u)
}

/// Equitable refinement: repeatedly split every cell by the vector of
/// neighbour counts into each cell, keeping split pieces in signature order.
fn refine(adj: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut cell_mask: Vec<u64> = Vec::new();
    loop {
        cell_mask.clear();
        cell_mask.extend(
            cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | 1u64 << v)),
        );
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = cell_mask
                        .iter()
                        .map(|&m| (adj[v] & m).count_ones())
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let start = next.len();
            for (i, (sig, v)) in keyed.iter().enumerate() {
                if i == 0 || keyed[i - 1].0 != *sig {
                    next.push(Vec::new());
                }
                next.last_mut().unwrap().push(*v);
            }
            if next.len() - start > 1 {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}
