//! The `tdcrit` command line. Every command prints one JSON object per line.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use tdcrit_core::constructions::{Attachment, ConstructionSpec, FamilyParams};
use tdcrit_core::solver::SOLVER_MAX_ORDER;
use tdcrit_core::uniqueness::{decomposition_optimum, t_unique_witness};
use tdcrit_core::{
    classify, conjecture_stress, emit_graph6, find_critical_graphs, is_feasible_ranking,
    parse_graph6, quotient_graph, star_clique_transform, tree_depth, tree_depth_capped,
    uniqueness_profile, verify_construction, Error, Graph, Ranking, VertexSet,
};

pub const DEFAULT_MAX_N: usize = 24;
pub const MAX_N_ENV: &str = "TDCRIT_MAX_N";

#[derive(Debug, Parser)]
#[command(
    name = "tdcrit",
    version,
    about = "Tree-depth, rankings and critical graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// graph6 strings; read from --file or stdin when absent
    pub graphs: Vec<String>,
    /// File with one graph6 string per line
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tree-depth
    Td {
        #[command(flatten)]
        input: Input,
        /// Include an optimal ranking
        #[arg(long)]
        witness: bool,
        /// Only report whether td exceeds this value
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Optimal ranking, or feasibility of a given labelling
    Rank {
        #[command(flatten)]
        input: Input,
        /// Comma-separated labels in vertex order
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<u32>>,
    },
    /// Minor, subgraph and induced-subgraph criticality and 1-uniqueness
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Minimum unique label per vertex, or t-uniqueness of one vertex
    Unique {
        #[command(flatten)]
        input: Input,
        #[arg(long, requires = "t")]
        vertex: Option<usize>,
        #[arg(long, requires = "vertex")]
        t: Option<u32>,
    },
    /// Star-clique transform or quotient graph
    Transform {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        kind: TransformKind,
        /// Vertex for star-clique
        #[arg(long)]
        vertex: Option<usize>,
        /// Comma-separated vertex set for quotient
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
    },
    /// Minimum of td(G<S>) + td(G - S) over vertex sets S
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Critical graphs with tree-depth k, one per line
    Enumerate {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        nmax: usize,
        /// Add order, degree and 1-uniqueness checks to each line
        #[arg(long)]
        stress_conjectures: bool,
    },
    /// Adjoining construction or explicit family member
    Construct {
        /// Host graph6
        #[arg(long, conflicts_with = "family", requires = "attach")]
        host: Option<String>,
        /// Attachment as graph6:vertex, once per host vertex
        #[arg(long)]
        attach: Vec<String>,
        #[arg(long, value_enum, requires = "params")]
        family: Option<FamilyKind>,
        /// e.g. k=4,t=1 or k=4,s=3,partition=2:1
        #[arg(long)]
        params: Option<String>,
    },
    /// Conjecture report over all critical graphs with tree-depth k
    Stress {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        nmax: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TransformKind {
    StarClique,
    Quotient,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyKind {
    Q,
    R,
    Gk,
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Lib(e) => match e {
                Error::Parse { .. }
                | Error::InvalidInput(_)
                | Error::VertexOutOfRange { .. }
                | Error::NotAnEdge { .. } => 2,
                Error::Capacity { .. } => 3,
                Error::SpecValidation(_) | Error::Precondition(_) => 4,
                Error::Invariant(_) => 1,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    graph6: String,
    results: Value,
}

/// Order cap from `TDCRIT_MAX_N`, defaulting to [`DEFAULT_MAX_N`].
pub fn max_order(env: Option<&str>) -> CliResult<usize> {
    let Some(raw) = env else {
        return Ok(DEFAULT_MAX_N);
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{MAX_N_ENV} must be an integer, got {raw:?}")))?;
    if n > SOLVER_MAX_ORDER {
        return Err(Error::Capacity {
            what: "TDCRIT_MAX_N",
            order: n,
            limit: SOLVER_MAX_ORDER,
        }
        .into());
    }
    Ok(n)
}

pub struct Context<'a, R, W> {
    pub max_n: usize,
    pub stdin: R,
    pub out: &'a mut W,
}

impl<R: BufRead, W: Write> Context<'_, R, W> {
    fn emit(&mut self, command: &str, g: &Graph, results: Value) -> CliResult<()> {
        let report = Report {
            command,
            graph6: emit_graph6(g),
            results,
        };
        serde_json::to_writer(&mut *self.out, &report).map_err(std::io::Error::from)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn graphs(&mut self, input: &Input) -> CliResult<Vec<Graph>> {
        let lines: Vec<String> = if !input.graphs.is_empty() {
            input.graphs.clone()
        } else if let Some(path) = &input.file {
            std::fs::read_to_string(path)?
                .lines()
                .map(str::to_owned)
                .collect()
        } else {
            (&mut self.stdin).lines().collect::<Result<_, _>>()?
        };
        let mut out = Vec::new();
        for line in lines.iter().map(|l| l.trim()).filter(|l| !l.is_empty()) {
            let g = parse_graph6(line)?;
            self.check_order(&g)?;
            out.push(g);
        }
        Ok(out)
    }

    fn check_order(&self, g: &Graph) -> CliResult<()> {
        if g.order() > self.max_n {
            return Err(Error::Capacity {
                what: "input graph (see TDCRIT_MAX_N)",
                order: g.order(),
                limit: self.max_n,
            }
            .into());
        }
        Ok(())
    }
}

pub fn run<R: BufRead, W: Write>(cli: Cli, ctx: &mut Context<'_, R, W>) -> CliResult<()> {
    match cli.command {
        Command::Td {
            input,
            witness,
            cap,
        } => {
            for g in ctx.graphs(&input)? {
                let results = match cap {
                    Some(c) => match tree_depth_capped(&g, c)? {
                        Some(r) if witness => {
                            json!({"td": r.value, "exceeds_cap": false, "witness": r.witness})
                        }
                        Some(r) => json!({"td": r.value, "exceeds_cap": false}),
                        None => json!({"cap": c, "exceeds_cap": true}),
                    },
                    None => {
                        let r = tree_depth(&g)?;
                        if witness {
                            json!({"td": r.value, "witness": r.witness})
                        } else {
                            json!({"td": r.value})
                        }
                    }
                };
                ctx.emit("td", &g, results)?;
            }
        }
        Command::Rank { input, labels } => {
            for g in ctx.graphs(&input)? {
                let results = match &labels {
                    Some(l) => {
                        let r = Ranking::new(l.clone());
                        json!({"labels": r, "feasible": is_feasible_ranking(&g, &r)?})
                    }
                    None => {
                        let r = tree_depth(&g)?;
                        json!({"td": r.value, "ranking": r.witness})
                    }
                };
                ctx.emit("rank", &g, results)?;
            }
        }
        Command::Classify { input } => {
            for g in ctx.graphs(&input)? {
                let r = classify(&g)?;
                ctx.emit(
                    "classify",
                    &g,
                    serde_json::to_value(r).expect("report serializes"),
                )?;
            }
        }
        Command::Unique { input, vertex, t } => {
            for g in ctx.graphs(&input)? {
                let results = match (vertex, t) {
                    (Some(v), Some(t)) => {
                        let w = t_unique_witness(&g, v, t)?;
                        json!({"vertex": v, "t": t, "t_unique": w.is_some(), "witness": w})
                    }
                    _ => {
                        let p = uniqueness_profile(&g)?;
                        json!({
                            "td": p.td,
                            "min_t": p.min_t,
                            "graph_min_t": p.graph_min_t(),
                            "one_unique": p.is_one_unique(),
                        })
                    }
                };
                ctx.emit("unique", &g, results)?;
            }
        }
        Command::Transform {
            input,
            kind,
            vertex,
            set,
        } => {
            for g in ctx.graphs(&input)? {
                let (h, results) = match kind {
                    TransformKind::StarClique => {
                        let v = vertex
                            .ok_or_else(|| CliError::Usage("star-clique needs --vertex".into()))?;
                        (
                            star_clique_transform(&g, v)?,
                            json!({"kind": "star-clique", "vertex": v}),
                        )
                    }
                    TransformKind::Quotient => {
                        let s = set
                            .clone()
                            .ok_or_else(|| CliError::Usage("quotient needs --set".into()))?;
                        if let Some(&v) = s.iter().find(|&&v| v >= g.order()) {
                            return Err(Error::VertexOutOfRange {
                                vertex: v,
                                order: g.order(),
                            }
                            .into());
                        }
                        let vs: VertexSet = s.iter().copied().collect();
                        (
                            quotient_graph(&g, vs)?,
                            json!({"kind": "quotient", "set": vs.to_vec()}),
                        )
                    }
                };
                let mut results = results;
                results["result"] = json!(emit_graph6(&h));
                results["order"] = json!(h.order());
                ctx.emit("transform", &g, results)?;
            }
        }
        Command::Decompose { input } => {
            for g in ctx.graphs(&input)? {
                let d = decomposition_optimum(&g)?;
                let results = json!({
                    "set": d.set.to_vec(),
                    "value": d.value,
                    "tight_sets": d.tight_sets,
                    "td": tree_depth(&g)?.value,
                });
                ctx.emit("decompose", &g, results)?;
            }
        }
        Command::Enumerate {
            k,
            nmax,
            stress_conjectures,
        } => {
            if stress_conjectures {
                let report = conjecture_stress(k, nmax)?;
                for (key, f) in &report.critical {
                    let g = parse_graph6(key)?;
                    let mut results = serde_json::to_value(f).expect("finding serializes");
                    results["k"] = json!(k);
                    results["order_bound"] = json!(report.order_bound);
                    results["degree_bound"] = json!(report.degree_bound);
                    ctx.emit("enumerate", &g, results)?;
                }
            } else {
                for g in find_critical_graphs(k, nmax)? {
                    let results = json!({"k": k, "order": g.order(), "size": g.size()});
                    ctx.emit("enumerate", &g, results)?;
                }
            }
        }
        Command::Construct {
            host,
            attach,
            family,
            params,
        } => {
            if let Some(kind) = family {
                let p = parse_family(kind, params.as_deref().unwrap_or(""))?;
                let g = p.build()?;
                let mut results = json!({"provenance": p, "order": g.order()});
                if g.order() <= ctx.max_n {
                    let r = classify(&g)?;
                    results["td"] = json!(r.td);
                    results["minor_critical"] = json!(r.minor_critical);
                    results["one_unique"] = json!(r.one_unique);
                }
                ctx.emit("construct", &g, results)?;
            } else {
                let host = host.ok_or_else(|| {
                    CliError::Usage("construct needs --host with --attach, or --family".into())
                })?;
                let h = parse_graph6(&host)?;
                let attachments = attach
                    .iter()
                    .map(|a| parse_attachment(a))
                    .collect::<CliResult<Vec<_>>>()?;
                let provenance = json!({
                    "host": emit_graph6(&h),
                    "attachments": attachments
                        .iter()
                        .map(|a| json!({"graph6": emit_graph6(&a.graph), "vertex": a.vertex}))
                        .collect::<Vec<_>>(),
                });
                ctx.check_order(&h)?;
                for a in &attachments {
                    ctx.check_order(&a.graph)?;
                }
                let spec = ConstructionSpec::new(h, attachments)?;
                if spec.order() > ctx.max_n {
                    return Err(Error::Capacity {
                        what: "adjoined graph (see TDCRIT_MAX_N)",
                        order: spec.order(),
                        limit: ctx.max_n,
                    }
                    .into());
                }
                let report = verify_construction(&spec)?;
                let g = parse_graph6(&report.graph6)?;
                let mut results = serde_json::to_value(&report).expect("report serializes");
                results
                    .as_object_mut()
                    .expect("report is an object")
                    .remove("graph6");
                results["provenance"] = provenance;
                ctx.emit("construct", &g, results)?;
            }
        }
        Command::Stress { k, nmax } => {
            let report = conjecture_stress(k, nmax)?;
            let line = json!({"command": "stress", "results": report});
            serde_json::to_writer(&mut *ctx.out, &line).map_err(std::io::Error::from)?;
            writeln!(ctx.out)?;
        }
    }
    Ok(())
}

fn parse_attachment(text: &str) -> CliResult<Attachment> {
    let (g6, w) = text
        .rsplit_once(':')
        .ok_or_else(|| CliError::Usage(format!("attachment {text:?} is not graph6:vertex")))?;
    let vertex = w
        .parse()
        .map_err(|_| CliError::Usage(format!("attachment vertex {w:?} is not an integer")))?;
    Ok(Attachment {
        graph: parse_graph6(g6)?,
        vertex,
    })
}

fn parse_family(kind: FamilyKind, params: &str) -> CliResult<FamilyParams> {
    let mut k = None;
    let mut s = None;
    let mut t = None;
    let mut partition = None;
    for pair in params.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("parameter {pair:?} is not key=value")))?;
        let int = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("{key} = {v:?} is not an integer")))
        };
        match key {
            "k" => k = Some(int(value)?),
            "s" => s = Some(int(value)?),
            "t" => t = Some(int(value)?),
            "partition" => {
                partition = Some(value.split(':').map(int).collect::<CliResult<Vec<_>>>()?)
            }
            _ => return Err(CliError::Usage(format!("unknown parameter {key:?}"))),
        }
    }
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| CliError::Usage(format!("missing parameter {name}")))
    };
    let k = need(k, "k")?;
    let small = |v: usize| {
        u32::try_from(v).map_err(|_| CliError::Usage(format!("parameter {v} is too large")))
    };
    Ok(match kind {
        FamilyKind::Gk => FamilyParams::Gk { k: small(k)? },
        FamilyKind::R => FamilyParams::R {
            k: small(k)?,
            t: need(t, "t")?,
        },
        FamilyKind::Q => {
            let s = need(s, "s")?;
            FamilyParams::Q {
                k,
                s,
                partition: partition.unwrap_or_else(|| vec![s]),
            }
        }
    })
}
