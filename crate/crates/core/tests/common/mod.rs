//! Brute-force oracles shared by the integration tests. They only use the
//! adjacency lists of `Graph`, never the library's algorithms.

#![allow(dead_code)]

use rand::Rng;
use tdcrit_core::Graph;

/// Whether `labels` is a ranking: any two vertices with the same label are
/// separated by a strictly higher label on every path between them.
pub fn is_ranking(g: &Graph, labels: &[u32]) -> bool {
    let n = g.order();
    for a in 0..n {
        // vertices reachable from a through labels strictly below labels[a]
        let l = labels[a];
        let mut seen = vec![false; n];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(x) = stack.pop() {
            for y in g.neighbors(x) {
                if seen[y] {
                    continue;
                }
                if labels[y] == l {
                    return false;
                }
                if labels[y] < l {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    true
}

/// Smallest `k` admitting a ranking with labels in `1..=k`.
pub fn brute_td(g: &Graph) -> u32 {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    (1..=n as u32)
        .find(|&k| {
            let mut labels = vec![0; n];
            assign(g, k, 0, &mut labels)
        })
        .unwrap()
}

fn assign(g: &Graph, k: u32, i: usize, labels: &mut [u32]) -> bool {
    if i == labels.len() {
        return is_ranking(g, labels);
    }
    for l in 1..=k {
        // adjacent vertices never share a label
        if g.neighbors(i).into_iter().any(|j| j < i && labels[j] == l) {
            continue;
        }
        labels[i] = l;
        if assign(g, k, i + 1, labels) {
            return true;
        }
    }
    labels[i] = 0;
    false
}

/// Graph on `n` vertices from the bits of `mask` over pairs `(i, j)`, `i < j`,
/// in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn connected_mask(n: usize, mask: u64) -> bool {
    let mut adj = vec![0u64; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen.count_ones() as usize == n
}

/// Number of labelled connected graphs on `n` vertices.
pub fn labelled_connected_count(n: usize) -> u64 {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs).filter(|&m| connected_mask(n, m)).count() as u64
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permute(&mut p, 0, &mut out);
    out
}

fn permute(p: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
    if i == p.len() {
        out.push(p.clone());
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, out);
        p.swap(i, j);
    }
}

pub fn automorphism_count(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let edges = g.edges();
    perms
        .iter()
        .filter(|p| edges.iter().all(|e| g.has_edge(p[e.u()], p[e.v()])))
        .count() as u64
}

/// Whether some permutation maps `a` onto `b`.
pub fn brute_isomorphic(a: &Graph, b: &Graph, perms: &[Vec<usize>]) -> bool {
    a.order() == b.order()
        && a.size() == b.size()
        && perms
            .iter()
            .any(|p| a.edges().iter().all(|e| b.has_edge(p[e.u()], p[e.v()])))
}

pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}
