//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tdcrit_core::canon::canonical_form;
use tdcrit_core::constructions::{Attachment, ConstructionSpec};
use tdcrit_core::criticality::first_non_one_unique;
use tdcrit_core::solver::{td_cycle, td_path, tree_depth_bruteforce};
use tdcrit_core::uniqueness::{decomposition_optimum, t_unique_witness};
use tdcrit_core::*;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: tdcrit_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.1?}, limit {limit:?}")
    })
}

struct Corpus {
    /// `by_order[n]` holds the connected graphs on `n` vertices.
    by_order: Vec<Vec<Graph>>,
}

impl Corpus {
    fn up_to(&self, n: usize) -> impl Iterator<Item = &Graph> {
        self.by_order[1..=n].iter().flatten()
    }
}

fn ac1() -> Check {
    let start = Instant::now();
    for n in 1..=20usize {
        let got = lib(td(&Graph::path(n).unwrap()))?;
        let want = n.ilog2() + 1;
        ensure(got == want, || {
            format!("td(P_{n}) = {got}, expected {want}")
        })?;
        ensure(lib(td_path(n as u64))? == want, || {
            format!("td_path({n}) disagrees")
        })?;
    }
    for n in 3..=20usize {
        let got = lib(td(&Graph::cycle(n).unwrap()))?;
        let want = (n - 1).ilog2() + 2;
        ensure(got == want, || {
            format!("td(C_{n}) = {got}, expected {want}")
        })?;
        ensure(lib(td_cycle(n as u64))? == want, || {
            format!("td_cycle({n}) disagrees")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("P_1..P_20 and C_3..C_20 exact in {elapsed:.2?}"))
}

fn ac2(corpus: &Corpus) -> Check {
    let counts: Vec<usize> = corpus.by_order[1..].iter().map(Vec::len).collect();
    ensure(counts == [1, 1, 2, 6, 21, 112, 853], || {
        format!("enumerator counts {counts:?}")
    })?;

    // labelled brute force: distinct isomorphism classes among all labelled
    // connected graphs on n <= 6 vertices
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        let mut classes = HashSet::new();
        for m in 0..1u64 << pairs {
            if common::connected_mask(n, m) {
                classes.insert(lib(canonical_form(&common::graph_from_mask(n, m)))?);
            }
        }
        ensure(classes.len() == counts[n - 1], || {
            format!(
                "n = {n}: {} labelled classes vs {} enumerated",
                classes.len(),
                counts[n - 1]
            )
        })?;
    }
    // n = 7: the orbit-stabilizer sum over the enumerated classes must equal
    // the labelled connected count
    let perms = common::permutations(7);
    let orbit_sum: u64 = corpus.by_order[7]
        .iter()
        .map(|g| 5040 / common::automorphism_count(g, &perms))
        .sum();
    let labelled = common::labelled_connected_count(7);
    ensure(orbit_sum == labelled && labelled == 1_866_256, || {
        format!("n = 7: orbit sum {orbit_sum}, labelled count {labelled}")
    })?;

    let mut checked = 0;
    for g in corpus.up_to(7) {
        let got = lib(td(g))?;
        let oracle = common::brute_td(g);
        let bf = lib(tree_depth_bruteforce(g))?;
        ensure(got == oracle && bf == oracle, || {
            format!(
                "{}: solver {got}, brute force {bf}, oracle {oracle}",
                emit_graph6(g)
            )
        })?;
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let p = [0.3, 0.5, 0.7][i % 3];
        let g = common::random_connected_graph(&mut rng, 7, p);
        let got = lib(td(&g))?;
        let oracle = common::brute_td(&g);
        ensure(got == oracle, || {
            format!("random {}: solver {got}, oracle {oracle}", emit_graph6(&g))
        })?;
    }
    Ok(format!(
        "class counts {counts:?} confirmed by labelled brute force; {checked} classes (n <= 7) and 200 random n = 7 graphs agree"
    ))
}

fn ac3() -> Check {
    let mut notes = Vec::new();
    for k in 2..=4u32 {
        let start = Instant::now();
        let g = lib(family_gk(k))?;
        let value = lib(td(&g))?;
        ensure(value == k + 2, || format!("td(G_{k}) = {value}"))?;
        ensure(lib(is_1_unique_graph(&g))?, || {
            format!("G_{k} is not 1-unique")
        })?;
        ensure(lib(is_induced_subgraph_critical(&g))?, || {
            format!("G_{k} is not induced-subgraph-critical")
        })?;
        ensure(!lib(is_subgraph_critical(&g))?, || {
            format!("G_{k} is subgraph-critical")
        })?;
        let elapsed = start.elapsed();
        if k == 4 {
            within(elapsed, Duration::from_secs(60))?;
        }
        notes.push(format!("G_{k} ({} vertices) in {elapsed:.2?}", g.order()));
    }
    Ok(notes.join(", "))
}

fn ac4() -> Check {
    for (k, n) in [(2u32, 6usize), (3, 10)] {
        let g = Graph::cycle(n).unwrap();
        let r = lib(classify(&g))?;
        ensure(r.td == k + 2, || format!("td(C_{n}) = {}", r.td))?;
        ensure(r.subgraph_critical, || {
            format!("C_{n} is not subgraph-critical")
        })?;
        ensure(!r.minor_critical, || format!("C_{n} is minor-critical"))?;
        ensure(!r.one_unique, || format!("C_{n} is 1-unique"))?;
    }
    Ok("C_6 and C_10: subgraph-critical, not minor-critical, not 1-unique".into())
}

fn forms(graphs: &[Graph]) -> Result<BTreeSet<CanonicalForm>, String> {
    graphs.iter().map(|g| lib(canonical_form(g))).collect()
}

fn ac5() -> Check {
    let start = Instant::now();
    let expect = |k: u32, n_max: usize, want: Vec<Graph>| -> Result<(), String> {
        let found = lib(find_critical_graphs(k, n_max))?;
        ensure(forms(&found)? == forms(&want)?, || {
            let names: Vec<String> = found.iter().map(emit_graph6).collect();
            format!("k = {k}: found {names:?}")
        })
    };
    expect(1, 6, vec![Graph::complete(1).unwrap()])?;
    expect(2, 6, vec![Graph::complete(2).unwrap()])?;
    expect(
        3,
        6,
        vec![Graph::complete(3).unwrap(), Graph::path(4).unwrap()],
    )?;

    let found = lib(find_critical_graphs(4, 8))?;
    let have = forms(&found)?;
    let required = [
        ("K_4", Graph::complete(4).unwrap()),
        ("C_5", Graph::cycle(5).unwrap()),
        ("P_8", Graph::path(8).unwrap()),
        ("R_{4,1}", lib(family_r(4, 1))?),
        ("R_{4,2}", lib(family_r(4, 2))?),
    ];
    for (name, g) in &required {
        ensure(have.contains(&lib(canonical_form(g))?), || {
            format!("k = 4 list misses {name}")
        })?;
    }
    ensure(
        found.iter().any(|g| g.degree_sequence() == [3, 3, 3, 2, 1]),
        || "k = 4 list has no graph with degree sequence (3,3,3,2,1)".into(),
    )?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30 * 60))?;
    Ok(format!(
        "k = 1..3 exact; k = 4, n <= 8: {} critical graphs including the required ones, in {elapsed:.1?}",
        found.len()
    ))
}

fn ac6(corpus: &Corpus) -> Check {
    let mut pairs = 0;
    for g in corpus.up_to(6) {
        for v in 0..g.order() {
            let fast = lib(is_1_unique_vertex(g, v))?;
            let direct = lib(t_unique_witness(g, v, 1))?.is_some();
            ensure(fast == direct, || {
                format!(
                    "{} vertex {v}: fast {fast}, direct {direct}",
                    emit_graph6(g)
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (graph, vertex) pairs, zero discrepancies"))
}

fn ac7(corpus: &Corpus) -> Check {
    let mut graphs: Vec<Graph> = corpus.up_to(6).cloned().collect();
    for n in 1..=10 {
        graphs.push(Graph::path(n).unwrap());
        if n >= 3 {
            graphs.push(Graph::cycle(n).unwrap());
        }
    }
    for g in &graphs {
        let d = lib(decomposition_optimum(g))?;
        let k = lib(td(g))?;
        ensure(d.value == k, || {
            format!("{}: optimum {}, td {k}", emit_graph6(g), d.value)
        })?;
    }
    Ok(format!("{} graphs, zero discrepancies", graphs.len()))
}

fn ac8(corpus: &Corpus) -> Check {
    let mut tight = 0;
    for g in corpus.up_to(6) {
        let k = lib(td(g))?;
        for e in g.edges() {
            if lib(td(&lib(g.contract_edge(e))?))? != k {
                continue;
            }
            tight += 1;
            for x in [e.u(), e.v()] {
                ensure(!lib(is_1_unique_vertex(g, x))?, || {
                    format!("{} edge {e}: endpoint {x} is 1-unique", emit_graph6(g))
                })?;
            }
        }
    }
    Ok(format!(
        "{tight} td-preserving contractions, zero violations"
    ))
}

fn ac9(corpus: &Corpus) -> Check {
    let mut checks = 0;
    for g in corpus.up_to(5) {
        let k = lib(td(g))?;
        for v in 0..g.order() {
            let flags: Vec<bool> = (1..=k)
                .map(|t| lib(is_t_unique_vertex(g, v, t)))
                .collect::<Result<_, _>>()?;
            for t in 0..flags.len() {
                for s in t..flags.len() {
                    checks += 1;
                    ensure(!flags[t] || flags[s], || {
                        format!(
                            "{} vertex {v}: {}-unique but not {}-unique",
                            emit_graph6(g),
                            t + 1,
                            s + 1
                        )
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{checks} (graph, vertex, t, s) checks, zero violations"
    ))
}

fn ac10() -> Check {
    let start = Instant::now();
    let parts = [
        Graph::complete(2).unwrap(),
        Graph::complete(3).unwrap(),
        Graph::path(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::path(8).unwrap(),
    ];
    let depths: Vec<u32> = parts.iter().map(|g| lib(td(g))).collect::<Result<_, _>>()?;
    // every attachment uses the same part and the same vertex, plus one
    // mixed spec per host where two parts share a tree-depth
    let mut specs = Vec::new();
    for host in &parts {
        for (li, l) in parts.iter().enumerate() {
            for w in [0, l.order() / 2] {
                let atts = vec![
                    Attachment {
                        graph: l.clone(),
                        vertex: w
                    };
                    host.order()
                ];
                specs.push((host.clone(), atts));
            }
            for (mi, m) in parts.iter().enumerate() {
                if mi > li && depths[mi] == depths[li] {
                    let atts = (0..host.order())
                        .map(|i| {
                            let g = if i % 2 == 0 { l } else { m };
                            Attachment {
                                graph: g.clone(),
                                vertex: 0,
                            }
                        })
                        .collect();
                    specs.push((host.clone(), atts));
                }
            }
        }
    }
    let mut verified = 0;
    for (host, atts) in specs {
        let spec = lib(ConstructionSpec::new(host, atts))?;
        if spec.order() > 16 {
            continue;
        }
        let r = lib(verify_construction(&spec))?;
        ensure(r.hypothesis_failures.is_empty(), || {
            format!("{}: {:?}", r.graph6, r.hypothesis_failures)
        })?;
        ensure(r.td_matches, || {
            format!("{}: td {} vs r + s = {}", r.graph6, r.td, r.r + r.s)
        })?;
        ensure(r.minor_critical && r.one_unique, || {
            format!("{}: {r:?}", r.graph6)
        })?;
        ensure(r.order_hypotheses_hold && r.order_bound_holds, || {
            format!("{}: order {} exceeds 2^(td-1)", r.graph6, r.order)
        })?;
        let g = lib(adjoin(&spec))?;
        ensure(emit_graph6(&g) == r.graph6, || {
            "adjoin and verify disagree".into()
        })?;
        verified += 1;
    }
    ensure(verified >= 20, || {
        format!("only {verified} specs within order 16")
    })?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5 * 60))?;
    Ok(format!("{verified} specs, zero failures, in {elapsed:.1?}"))
}

fn ac11() -> Check {
    // K_4 and K_3 joined by two disjoint edges
    let mut k4k3 = lib(edge_join(
        &Graph::complete(4).unwrap(),
        &Graph::complete(3).unwrap(),
        0,
        0,
    ))?;
    lib(k4k3.add_edge(1, 5))?;
    let inputs = [
        ("G_2", lib(family_gk(2))?),
        ("G_3", lib(family_gk(3))?),
        ("K_4 =2= K_3", k4k3),
    ];
    let mut notes = Vec::new();
    for (name, g) in inputs {
        let k = lib(td(&g))?;
        ensure(lib(first_non_one_unique(&g))?.is_none(), || {
            format!("{name} is not 1-unique")
        })?;
        ensure(!lib(is_minor_critical(&g))?, || {
            format!("{name} is already critical")
        })?;
        let red = lib(critical_spanning_subgraph(&g))?;
        let h = &red.graph;
        ensure(h.order() == g.order(), || format!("{name}: not spanning"))?;
        ensure(h.edges().iter().all(|e| g.has_edge(e.u(), e.v())), || {
            format!("{name}: not a subgraph")
        })?;
        ensure(lib(td(h))? == k, || format!("{name}: tree-depth changed"))?;
        ensure(lib(is_minor_critical(h))?, || {
            format!("{name}: result not minor-critical")
        })?;
        notes.push(format!("{name} -{}", red.removed.len()));
    }
    Ok(format!("edges removed: {}", notes.join(", ")))
}

fn ac12() -> Check {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for k in 1..=4 {
        let r = lib(conjecture_stress(k, 8))?;
        for (key, f) in &r.critical {
            println!(
                "  finding k={k} {key}: order {} (<= {}: {}), max degree {} (<= {}: {}), 1-unique {}",
                f.order, r.order_bound, f.order_bound_holds, f.max_degree, r.degree_bound, f.degree_bound_holds, f.one_unique
            );
        }
        for key in &r.counterexamples {
            println!("  COUNTEREXAMPLE k={k}: {key}");
        }
        failures.extend(r.counterexamples.iter().cloned());
        notes.push(format!("k={k}: {}", r.critical.len()));
    }
    ensure(failures.is_empty(), || {
        format!("counterexamples: {failures:?}")
    })?;
    Ok(format!(
        "critical graphs {}; all within bounds and 1-unique",
        notes.join(", ")
    ))
}

fn main() -> ExitCode {
    let corpus = Corpus {
        by_order: std::iter::once(Vec::new())
            .chain((1..=7).map(|n| enumerate_connected_graphs(n).expect("enumeration")))
            .collect(),
    };
    let criteria: Vec<Criterion> = vec![
        ("AC1 path and cycle formulas", Box::new(ac1)),
        (
            "AC2 solver vs brute-force oracle",
            Box::new(|| ac2(&corpus)),
        ),
        ("AC3 G_k family", Box::new(ac3)),
        ("AC4 even cycles C_6, C_10", Box::new(ac4)),
        ("AC5 critical graph lists", Box::new(ac5)),
        ("AC6 star-clique 1-uniqueness", Box::new(|| ac6(&corpus))),
        ("AC7 decomposition identity", Box::new(|| ac7(&corpus))),
        ("AC8 td-preserving contractions", Box::new(|| ac8(&corpus))),
        ("AC9 t-uniqueness monotonicity", Box::new(|| ac9(&corpus))),
        ("AC10 adjoining construction", Box::new(ac10)),
        ("AC11 critical spanning subgraphs", Box::new(ac11)),
        ("AC12 conjecture stress report", Box::new(ac12)),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("{failed} of 12 criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
