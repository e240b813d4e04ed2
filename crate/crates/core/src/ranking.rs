//! Vertex rankings: labellings where every path between two equal labels
//! passes through a larger label.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components_within, Graph, VertexSet};

/// Labels indexed by vertex. Validity is checked by [`is_feasible_ranking`],
/// not enforced by the type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ranking(Vec<u32>);

impl Ranking {
    pub fn new(labels: Vec<u32>) -> Self {
        Ranking(labels)
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn label(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_label(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Vertices carrying `label`.
    pub fn class(&self, label: u32) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == label)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

/// For each label `l`, no component of the subgraph induced by labels `<= l`
/// may contain two vertices labelled `l`. This is equivalent to the path
/// condition: a path between two `l`-vertices avoiding larger labels lies in
/// exactly such a component.
pub fn is_feasible_ranking(g: &Graph, r: &Ranking) -> Result<bool> {
    if r.len() != g.order() {
        return Err(Error::InvalidInput(format!(
            "ranking labels {} vertices, graph has {}",
            r.len(),
            g.order()
        )));
    }
    if let Some(v) = r.labels().iter().position(|&l| l == 0) {
        return Err(Error::InvalidInput(format!("vertex {v} has label 0")));
    }
    Ok(feasible_unchecked(g.adjacency(), r.labels()))
}

pub(crate) fn feasible_unchecked(adj: &[u64], labels: &[u32]) -> bool {
    let mut distinct: Vec<u32> = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut below = 0u64;
    for &l in &distinct {
        let class = mask_of(labels, |x| x == l);
        below |= class;
        for comp in components_within(adj, below) {
            if (comp & class).count_ones() > 1 {
                return false;
            }
        }
    }
    true
}

fn mask_of(labels: &[u32], pred: impl Fn(u32) -> bool) -> u64 {
    labels
        .iter()
        .enumerate()
        .filter(|&(_, &l)| pred(l))
        .fold(0u64, |m, (v, _)| m | 1u64 << v)
}

/// Searches for a ranking with labels in `1..=max_label` where vertex `v` may
/// only take labels in `allowed[v]` (bit `l` set means label `l` allowed).
///
/// Labels are placed from the top down: at level `l`, every component of the
/// still-unlabelled vertices receives at most one `l`. Every feasible ranking
/// arises this way exactly once, and components are independent, so results
/// are memoized on (connected vertex set, level).
pub struct RankingSearch<'g> {
    adj: &'g [u64],
    allowed: Vec<u64>,
    memo: FxHashMap<(u64, u32), bool>,
}

impl<'g> RankingSearch<'g> {
    pub fn new(g: &'g Graph, allowed: Vec<u64>) -> Self {
        assert_eq!(allowed.len(), g.order());
        RankingSearch {
            adj: g.adjacency(),
            allowed,
            memo: FxHashMap::default(),
        }
    }

    /// Every vertex may take every label.
    pub fn unconstrained(g: &'g Graph, max_label: u32) -> Self {
        Self::new(g, vec![label_range(1, max_label); g.order()])
    }

    pub fn find(&mut self, max_label: u32) -> Option<Ranking> {
        let n = self.adj.len();
        let all = VertexSet::full(n).bits();
        let comps: Vec<u64> = components_within(self.adj, all).collect();
        if !comps.iter().all(|&c| self.solvable(c, max_label)) {
            return None;
        }
        let mut labels = vec![0u32; n];
        for c in comps {
            self.assign(c, max_label, &mut labels);
        }
        Some(Ranking(labels))
    }

    fn solvable(&mut self, set: u64, level: u32) -> bool {
        if set == 0 {
            return true;
        }
        if level == 0 {
            return false;
        }
        if let Some(&hit) = self.memo.get(&(set, level)) {
            return hit;
        }
        let ok = self.choice(set, level).is_some();
        self.memo.insert((set, level), ok);
        ok
    }

    /// The first workable choice for `set` at `level`: `Some(None)` skips the
    /// level, `Some(Some(x))` labels `x` with `level`.
    fn choice(&mut self, set: u64, level: u32) -> Option<Option<usize>> {
        let bit = 1u64 << level;
        let at_most = (bit << 1) - 1;
        let mut forced = 0u64;
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            match self.allowed[v] & at_most {
                0 => return None,
                a if a == bit => forced |= 1u64 << v,
                _ => {}
            }
        }
        // vertices that can only take this level must take it now
        match forced.count_ones() {
            0 => {}
            1 => {
                let x = forced.trailing_zeros() as usize;
                return self.try_place(set, level, x).then_some(Some(x));
            }
            _ => return None,
        }
        if self.rest_solvable(set, level) {
            return Some(None);
        }
        let mut s = set;
        while s != 0 {
            let x = s.trailing_zeros() as usize;
            s &= s - 1;
            if self.allowed[x] & bit != 0 && self.try_place(set, level, x) {
                return Some(Some(x));
            }
        }
        None
    }

    fn try_place(&mut self, set: u64, level: u32, x: usize) -> bool {
        self.rest_solvable(set & !(1u64 << x), level)
    }

    fn rest_solvable(&mut self, set: u64, level: u32) -> bool {
        let comps: Vec<u64> = components_within(self.adj, set).collect();
        comps.into_iter().all(|c| self.solvable(c, level - 1))
    }

    fn assign(&mut self, set: u64, level: u32, labels: &mut [u32]) {
        if set == 0 {
            return;
        }
        let rest = match self
            .choice(set, level)
            .expect("assign follows a solvable check")
        {
            None => set,
            Some(x) => {
                labels[x] = level;
                set & !(1u64 << x)
            }
        };
        let comps: Vec<u64> = components_within(self.adj, rest).collect();
        for c in comps {
            self.assign(c, level - 1, labels);
        }
    }
}

/// Bitmask with bits `lo..=hi` set (labels as bit positions).
pub fn label_range(lo: u32, hi: u32) -> u64 {
    if lo > hi {
        return 0;
    }
    let upper = if hi >= 63 {
        u64::MAX
    } else {
        (1u64 << (hi + 1)) - 1
    };
    upper & !((1u64 << lo) - 1)
}
