//! Exact tree-depth.
//!
//! For a connected vertex set `S`, `td(S) = 1` if `|S| = 1` and otherwise
//! `1 + min over roots v of max over components C of S - v of td(C)`.
//! A disconnected graph takes the maximum over its components, and the empty
//! graph has tree-depth 0.
//!
//! The recursion runs over connected subsets of the input with a per-call memo
//! and a depth budget: a subset is solved exactly when its tree-depth fits the
//! budget, otherwise only a lower bound is recorded.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components_within, Graph};
use crate::ranking::{feasible_unchecked, Ranking};

/// Largest order the solver accepts.
pub const SOLVER_MAX_ORDER: usize = 32;

/// Largest order accepted by [`tree_depth_bruteforce`].
pub const BRUTEFORCE_MAX_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDepthResult {
    pub value: u32,
    /// Feasible ranking with maximum label `value`.
    pub witness: Ranking,
}

pub fn tree_depth(g: &Graph) -> Result<TreeDepthResult> {
    check_order(g)?;
    let n = g.order() as u32;
    Ok(solve(g, n).expect("every graph has tree-depth at most its order"))
}

/// `Ok(None)` when the tree-depth exceeds `cap`.
pub fn tree_depth_capped(g: &Graph, cap: u32) -> Result<Option<TreeDepthResult>> {
    check_order(g)?;
    Ok(solve(g, cap))
}

/// Tree-depth value only.
pub fn td(g: &Graph) -> Result<u32> {
    tree_depth(g).map(|r| r.value)
}

/// `Ok(true)` iff `td(g) <= bound`.
pub fn td_at_most(g: &Graph, bound: u32) -> Result<bool> {
    check_order(g)?;
    let mut solver = Solver::new(g.adjacency());
    Ok(components_within(g.adjacency(), g.vertices().bits())
        .all(|c| solver.depth(c, bound).is_some()))
}

pub fn optimal_ranking(g: &Graph) -> Result<Ranking> {
    tree_depth(g).map(|r| r.witness)
}

fn check_order(g: &Graph) -> Result<()> {
    if g.order() > SOLVER_MAX_ORDER {
        return Err(Error::capacity(
            "tree-depth solver",
            g.order(),
            SOLVER_MAX_ORDER,
        ));
    }
    Ok(())
}

fn solve(g: &Graph, cap: u32) -> Option<TreeDepthResult> {
    let adj = g.adjacency();
    let mut solver = Solver::new(adj);
    let comps: Vec<u64> = components_within(adj, g.vertices().bits()).collect();
    let mut value = 0;
    for &c in &comps {
        value = value.max(solver.depth(c, cap)?);
    }
    let mut labels = vec![0u32; g.order()];
    for &c in &comps {
        solver.label(c, &mut labels);
    }
    Some(TreeDepthResult {
        value,
        witness: Ranking::new(labels),
    })
}

#[derive(Clone, Copy)]
enum Memo {
    Exact { depth: u32, root: u32 },
    AtLeast(u32),
}

struct Solver<'a> {
    adj: &'a [u64],
    memo: FxHashMap<u64, Memo>,
}

impl<'a> Solver<'a> {
    fn new(adj: &'a [u64]) -> Self {
        Solver {
            adj,
            memo: FxHashMap::default(),
        }
    }

    /// Exact tree-depth of the connected set `set` if it is at most `budget`.
    fn depth(&mut self, set: u64, budget: u32) -> Option<u32> {
        let size = set.count_ones();
        if size == 1 {
            return (budget >= 1).then_some(1);
        }
        let mut lower = 2;
        match self.memo.get(&set) {
            Some(&Memo::Exact { depth, .. }) => return (depth <= budget).then_some(depth),
            Some(&Memo::AtLeast(lb)) => lower = lb,
            None => {}
        }
        if lower > budget {
            return None;
        }
        if self.is_clique(set) {
            let root = set.trailing_zeros();
            self.memo.insert(set, Memo::Exact { depth: size, root });
            return (size <= budget).then_some(size);
        }

        // try high-degree roots first; ties among minimizers still resolve
        // to the smallest index because a smaller index may match `best`
        let mut roots: Vec<(u32, u32)> = Vec::with_capacity(size as usize);
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros();
            s &= s - 1;
            roots.push(((self.adj[v as usize] & set).count_ones(), v));
        }
        roots.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut best: Option<(u32, u32)> = None;
        let mut comps: Vec<u64> = Vec::new();
        for &(_, v) in &roots {
            let limit = match best {
                None => budget,
                Some((d, r)) if v < r => d,
                Some((d, _)) => d - 1,
            };
            if limit < lower {
                continue;
            }
            comps.clear();
            comps.extend(components_within(self.adj, set & !(1u64 << v)));
            comps.sort_unstable_by_key(|c| std::cmp::Reverse(c.count_ones()));
            let mut worst = 0;
            let mut fits = true;
            for &c in &comps {
                match self.depth(c, limit - 1) {
                    Some(d) => worst = worst.max(d),
                    None => {
                        fits = false;
                        break;
                    }
                }
            }
            if fits {
                let cand = worst + 1;
                best = match best {
                    Some((d, r)) if d < cand || (d == cand && r < v) => Some((d, r)),
                    _ => Some((cand, v)),
                };
            }
        }
        match best {
            Some((depth, root)) => {
                self.memo.insert(set, Memo::Exact { depth, root });
                Some(depth)
            }
            None => {
                self.memo.insert(set, Memo::AtLeast(lower.max(budget + 1)));
                None
            }
        }
    }

    fn is_clique(&self, set: u64) -> bool {
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            if (self.adj[v] | 1u64 << v) & set != set {
                return false;
            }
        }
        true
    }

    /// Writes the witness for a solved connected set: its root gets the set's
    /// tree-depth and each component below is labelled recursively.
    fn label(&mut self, set: u64, labels: &mut [u32]) {
        if set.count_ones() == 1 {
            labels[set.trailing_zeros() as usize] = 1;
            return;
        }
        let (depth, root) = match self.memo.get(&set) {
            Some(&Memo::Exact { depth, root }) => (depth, root),
            _ => {
                let size = set.count_ones();
                self.depth(set, size);
                match self.memo.get(&set) {
                    Some(&Memo::Exact { depth, root }) => (depth, root),
                    _ => unreachable!("a set is always solvable with budget |set|"),
                }
            }
        };
        labels[root as usize] = depth;
        let comps: Vec<u64> = components_within(self.adj, set & !(1u64 << root)).collect();
        for c in comps {
            self.label(c, labels);
        }
    }
}

/// `floor(log2 n) + 1`.
pub fn td_path(n: u64) -> Result<u32> {
    if n < 1 {
        return Err(Error::InvalidInput("td_path needs n >= 1".into()));
    }
    Ok(n.ilog2() + 1)
}

/// `floor(log2 (n - 1)) + 2`.
pub fn td_cycle(n: u64) -> Result<u32> {
    if n < 3 {
        return Err(Error::InvalidInput("td_cycle needs n >= 3".into()));
    }
    Ok((n - 1).ilog2() + 2)
}

/// Smallest `k` such that some labelling `V -> {1..k}` is feasible, found by
/// exhaustive backtracking over proper colourings. Shares nothing with the
/// subset recursion, so it serves as an independent check.
pub fn tree_depth_bruteforce(g: &Graph) -> Result<u32> {
    let n = g.order();
    if n > BRUTEFORCE_MAX_ORDER {
        return Err(Error::capacity(
            "brute-force tree-depth",
            n,
            BRUTEFORCE_MAX_ORDER,
        ));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = g.adjacency();
    let mut labels = vec![0u32; n];
    for k in 1..=n as u32 {
        if extend(adj, &mut labels, 0, k) {
            return Ok(k);
        }
    }
    unreachable!("n distinct labels always form a ranking")
}

fn extend(adj: &[u64], labels: &mut [u32], v: usize, k: u32) -> bool {
    if v == labels.len() {
        return feasible_unchecked(adj, labels);
    }
    for l in 1..=k {
        let clash = (0..v).any(|u| adj[v] >> u & 1 == 1 && labels[u] == l);
        if clash {
            continue;
        }
        labels[v] = l;
        if extend(adj, labels, v + 1, k) {
            return true;
        }
    }
    labels[v] = 0;
    false
}
