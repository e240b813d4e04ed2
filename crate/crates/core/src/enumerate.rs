//! Connected graphs up to isomorphism by canonical augmentation.
//!
//! A child is formed from a parent on `n - 1` vertices by adding vertex
//! `n - 1` with a non-empty neighbourhood. The child is kept only if deleting
//! its canonically chosen vertex (the non-cut vertex with the highest canonical
//! label) gives a graph isomorphic to the parent, i.e. if the new vertex could
//! be that vertex up to isomorphism of the remainder. Each class then has
//! exactly one parent class, so deduplicating per parent is enough.

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order [`enumerate_connected_graphs`] accepts.
pub const ENUMERATE_MAX_ORDER: usize = 8;

pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n < 1 {
        return Err(Error::InvalidInput("enumeration needs n >= 1".into()));
    }
    if n > ENUMERATE_MAX_ORDER {
        return Err(Error::capacity(
            "connected graph enumeration",
            n,
            ENUMERATE_MAX_ORDER,
        ));
    }
    let mut level = vec![Graph::empty(1)?];
    for _ in 1..n {
        let next: Vec<Vec<Graph>> = level.par_iter().map(augment).collect::<Result<_>>()?;
        level = next.into_iter().flatten().collect();
    }
    Ok(level)
}

/// Canonical children of one parent, in neighbourhood-mask order.
fn augment(parent: &Graph) -> Result<Vec<Graph>> {
    let m = parent.order();
    let parent_form = canonical_form(parent)?;
    let mut seen: FxHashSet<CanonicalForm> = FxHashSet::default();
    let mut out = Vec::new();
    for nbrs in 1u64..1 << m {
        let mut adj: Vec<u64> = parent.adjacency().to_vec();
        for (v, row) in adj.iter_mut().enumerate() {
            if nbrs >> v & 1 == 1 {
                *row |= 1u64 << m;
            }
        }
        adj.push(nbrs);
        let child = Graph::from_adjacency(adj)?;
        if !is_canonical_augmentation(&child, m, &parent_form)? {
            continue;
        }
        if seen.insert(canonical_form(&child)?) {
            out.push(child);
        }
    }
    Ok(out)
}

fn is_canonical_augmentation(
    child: &Graph,
    new_vertex: usize,
    parent_form: &CanonicalForm,
) -> Result<bool> {
    let labeling = canonical_labeling(child)?.labeling;
    let chosen = child
        .non_cut_vertices()
        .iter()
        .max_by_key(|&v| labeling[v])
        .expect("a connected graph has a non-cut vertex");
    if chosen == new_vertex {
        return Ok(true);
    }
    Ok(canonical_form(&child.delete_vertex(chosen)?)? == *parent_form)
}
