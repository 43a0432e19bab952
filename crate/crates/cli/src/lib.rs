//! Command-line front end: group specs in, class tables, graphs and
//! verification reports out.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or internal error.

pub mod dot;
pub mod spec;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use pnclass::catalog::{self, Clause};
use pnclass::constructors::Builder;
use pnclass::graphs::{self, ClassGraph, GraphKind};
use pnclass::verifier::{self, VerifyOptions};
use pnclass::{decompose, ClassDecomposition, DEFAULT_CAP};
use serde_json::json;

pub use spec::{parse_spec, GroupSpec, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pnclass",
    version,
    about = "Conjugacy classes, class graphs and property P_n"
)]
pub struct Cli {
    /// Element limit for group enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    Order,
    Size,
    Prime,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class table, spectrum, graphs and P_n report for one group.
    Analyze {
        spec: String,
        /// Check property P_n for this n.
        #[arg(long)]
        n: Option<usize>,
        /// Emit the given graph(s) in DOT after the report.
        #[arg(long = "graph", value_enum)]
        graphs: Vec<GraphArg>,
        /// Print a JSON document instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the full catalog verification.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write one DOT file per entry and graph kind into this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Worker threads for entry verification.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include per-entry runtimes in the JSON report.
        #[arg(long)]
        timings: bool,
    },
    /// List the catalog, counterexample and probe entries.
    Catalog,
    /// Parse a group spec and print its canonical form.
    SpecCheck { spec: String },
}

pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Analyze {
            spec,
            n,
            graphs,
            json,
        } => cmd_analyze(&spec, n, &graphs, json, cli.cap, out),
        Command::Verify {
            n,
            json,
            dot,
            jobs,
            timings,
        } => cmd_verify(n, json, dot, jobs, timings, cli.cap, out),
        Command::Catalog => cmd_catalog(cli.cap, out).map(|_| EXIT_OK),
        Command::SpecCheck { spec } => parse_spec(&spec)
            .map_err(anyhow::Error::from)
            .and_then(|s| writeln!(out, "{}", s.canonical()).map_err(Into::into))
            .map(|_| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn graph_of(d: &ClassDecomposition, kind: GraphArg) -> ClassGraph {
    match kind {
        GraphArg::Order => graphs::order_class_graph(d),
        GraphArg::Size => graphs::size_class_graph(d),
        GraphArg::Prime => graphs::prime_graph_from(d.group().order() as u64, &d.spectrum()),
    }
}

pub fn cmd_analyze(
    text: &str,
    n: Option<usize>,
    graph_kinds: &[GraphArg],
    as_json: bool,
    cap: usize,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let spec = parse_spec(text)?;
    let group = spec.expr.build(&Builder::with_cap(cap))?;
    let d = decompose(&group);
    let pn = match n {
        Some(n) if n < 2 => anyhow::bail!("--n must be at least 2"),
        Some(n) => Some(verifier::check_pn(&d, n)),
        None => None,
    };
    let spectrum: Vec<u64> = d.spectrum().into_iter().collect();
    let graphs: Vec<ClassGraph> = graph_kinds.iter().map(|&k| graph_of(&d, k)).collect();

    if as_json {
        let classes: Vec<_> = d
            .classes()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "index": i,
                    "representative": c.representative.to_string(),
                    "order": c.element_order,
                    "size": c.size,
                    "central": c.is_central,
                    "centralizer_order": d.centralizer_order(i),
                })
            })
            .collect();
        let doc = json!({
            "spec": spec.canonical(),
            "order": group.order(),
            "degree": group.degree(),
            "center": d.center_size(),
            "class_count": d.class_count(),
            "classes": classes,
            "spectrum": spectrum,
            "fingerprint": d.fingerprint(),
            "pn": pn,
            "graphs": graphs,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(EXIT_OK);
    }

    writeln!(out, "group: {}", spec.canonical())?;
    writeln!(out, "order: {}", group.order())?;
    writeln!(out, "degree: {}", group.degree())?;
    writeln!(out, "center: {}", d.center_size())?;
    writeln!(out, "classes: {}", d.class_count())?;
    for (i, c) in d.classes().iter().enumerate() {
        writeln!(
            out,
            "  C{i:<3} o={:<3} s={:<6} {}{}",
            c.element_order,
            c.size,
            c.representative,
            if c.is_central { "  [central]" } else { "" }
        )?;
    }
    let spectrum_text: Vec<String> = spectrum.iter().map(u64::to_string).collect();
    writeln!(out, "spectrum: {{{}}}", spectrum_text.join(", "))?;
    let order_graph = graphs::order_class_graph(&d);
    writeln!(
        out,
        "order graph: {} vertices, {} edges, clique number {}",
        order_graph.vertex_count(),
        order_graph.edges().len(),
        graphs::max_clique(&order_graph)
    )?;
    if let Some(report) = &pn {
        let counts: Vec<String> = report
            .per_prime_counts
            .iter()
            .map(|(p, c)| format!("{p}:{c}"))
            .collect();
        match &report.witness {
            None => writeln!(
                out,
                "P_{}: satisfied (per-prime counts {})",
                report.n,
                counts.join(" ")
            )?,
            Some(w) => {
                let cls: Vec<String> = w
                    .classes
                    .iter()
                    .map(|&i| format!("C{i}(o={})", d.class(i).element_order))
                    .collect();
                writeln!(
                    out,
                    "P_{}: violated (per-prime counts {}); witness prime {}: {}",
                    report.n,
                    counts.join(" "),
                    w.prime,
                    cls.join(", ")
                )?
            }
        }
    }
    if !graphs.is_empty() {
        let refs: Vec<&ClassGraph> = graphs.iter().collect();
        write!(out, "{}", dot::to_dot(&spec.canonical(), &refs))?;
    }
    Ok(EXIT_OK)
}

fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn cmd_verify(
    n: usize,
    json_path: Option<PathBuf>,
    dot_dir: Option<PathBuf>,
    jobs: usize,
    timings: bool,
    cap: usize,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    if n < 2 {
        anyhow::bail!("--n must be at least 2");
    }
    let opts = VerifyOptions {
        n,
        jobs,
        cap,
        timings,
        keep_decompositions: dot_dir.is_some(),
    };
    let outcome = verifier::verify_theorem_a(&opts)?;
    let report = &outcome.report;

    for e in &report.entries {
        let status = if e.pn.satisfied {
            "satisfied"
        } else {
            "violated"
        };
        writeln!(
            out,
            "{:<14} {:<15} order {:<6} classes {:<3} P_{}: {:<9} lemma1 {}",
            e.id,
            format!("({})", e.clause),
            e.order,
            e.class_count,
            n,
            status,
            if e.lemma1_consistent {
                "ok"
            } else {
                "MISMATCH"
            }
        )?;
    }
    for d in &report.discrepancies {
        writeln!(out, "discrepancy {} [{:?}]: {}", d.id, d.kind, d.detail)?;
    }
    let s = &report.summary;
    writeln!(
        out,
        "sz8 class profile: {}",
        if s.sz8_profile_holds { "ok" } else { "FAILED" }
    )?;
    writeln!(
        out,
        "L2(q) power classes: {}",
        if s.l2q_power_classes_hold {
            "ok"
        } else {
            "FAILED"
        }
    )?;
    writeln!(
        out,
        "lemma 2 pairs: {} ({} violations)",
        s.lemma2_pairs, s.lemma2_violations
    )?;
    writeln!(out, "result: {}", if s.passed { "PASS" } else { "FAIL" })?;

    if let Some(path) = json_path {
        let text = serde_json::to_string_pretty(report)?;
        fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(dir) = dot_dir {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for (id, d) in &outcome.decompositions {
            for kind in [GraphArg::Order, GraphArg::Size, GraphArg::Prime] {
                let g = graph_of(d, kind);
                let name = format!("{}_{}", id, kind_name(g.kind));
                let path = dir.join(format!("{}.{}.dot", file_stem(id), kind_name(g.kind)));
                fs::write(&path, dot::to_dot(&name, &[&g]))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    Ok(if outcome.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn kind_name(kind: GraphKind) -> &'static str {
    kind.as_str()
}

pub fn cmd_catalog(cap: usize, out: &mut dyn Write) -> anyhow::Result<()> {
    for e in catalog::all_entries(cap) {
        let what = match (&e.recipe, &e.reason) {
            (Some(r), _) => r.to_string(),
            (None, Some(reason)) => format!("unconstructible: {reason}"),
            (None, None) => "unconstructible".to_string(),
        };
        let clause = match e.clause {
            Clause::Counterexample | Clause::Probe => e.clause.as_str().to_string(),
            c => format!("({c})"),
        };
        writeln!(
            out,
            "{:<14} {:<15} {:<28} {}",
            e.id, clause, what, e.description
        )?;
    }
    Ok(())
}
