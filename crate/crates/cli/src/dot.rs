//! Graphviz output. Class vertices are labelled `C<index>:o=<order>,s=<size>`
//! where `index` is the class position in the decomposition; prime vertices
//! are labelled `p=<prime>`.

use std::fmt::Write;

use pnclass::graphs::{ClassGraph, Vertex};

fn vertex_id(kind: &str, v: &Vertex) -> String {
    match v {
        Vertex::Class { index, .. } => format!("{kind}_C{index}"),
        Vertex::Prime { p } => format!("{kind}_p{p}"),
    }
}

fn vertex_label(v: &Vertex) -> String {
    match v {
        Vertex::Class { index, order, size } => format!("C{index}:o={order},s={size}"),
        Vertex::Prime { p } => format!("p={p}"),
    }
}

fn write_subgraph(out: &mut String, graph: &ClassGraph) {
    let kind = graph.kind.as_str();
    writeln!(out, "  subgraph cluster_{kind} {{").unwrap();
    writeln!(out, "    label=\"{kind}\";").unwrap();
    for v in &graph.vertices {
        writeln!(
            out,
            "    {} [label=\"{}\"];",
            vertex_id(kind, v),
            vertex_label(v)
        )
        .unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(
            out,
            "    {} -- {};",
            vertex_id(kind, &graph.vertices[a]),
            vertex_id(kind, &graph.vertices[b])
        )
        .unwrap();
    }
    writeln!(out, "  }}").unwrap();
}

/// One DOT document with a subgraph per graph, in the order given.
pub fn to_dot(name: &str, graphs: &[&ClassGraph]) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
    for g in graphs {
        write_subgraph(&mut out, g);
    }
    out.push_str("}\n");
    out
}
