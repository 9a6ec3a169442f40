//! Graphviz output.

use std::fmt::Write;

use ssa_core::schreier::TilePartition;
use ssa_core::LabeledGraph;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn edges(out: &mut String, g: &LabeledGraph) {
    for (s, t, label) in g.keyed_edges() {
        writeln!(out, "  {} -> {} [label={}];", quote(s), quote(t), quote(label)).unwrap();
    }
}

/// A directed graph with one `label` attribute per edge.
pub fn graph(name: &str, g: &LabeledGraph) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for v in g.vertices() {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    edges(&mut out, g);
    out.push_str("}\n");
    out
}

/// The level graph with each tile drawn as a cluster; critical edges are dashed.
pub fn tiles(name: &str, p: &TilePartition) -> String {
    let g = &p.schreier.graph;
    let mut out = format!("digraph {} {{\n", quote(name));
    for (i, (suffix, members)) in p.classes.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{i} {{").unwrap();
        writeln!(out, "    label={};", quote(suffix)).unwrap();
        for &v in members {
            writeln!(out, "    {};", quote(&g.vertices()[v])).unwrap();
        }
        out.push_str("  }\n");
    }
    for (i, e) in g.edges().iter().enumerate() {
        let style = if p.is_critical(i) { ", style=dashed" } else { "" };
        writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            quote(&g.vertices()[e.source]),
            quote(&g.vertices()[e.target]),
            quote(&e.label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph() {
        let mut g = LabeledGraph::new(vec!["0".into(), "1".into()]);
        g.add_edge(0, 1, "a/b");
        g.add_edge(1, 1, "say \"hi\"");
        assert_eq!(
            graph("g", &g),
            "digraph \"g\" {\n  \"0\";\n  \"1\";\n  \"0\" -> \"1\" [label=\"a/b\"];\n  \"1\" -> \"1\" [label=\"say \\\"hi\\\"\"];\n}\n"
        );
    }
}
