//! Graphviz output with an optional highlighted embedding.

use std::fmt::Write;

use crate::format::GraphFile;
use crate::patterns::{MEmbedding, Pattern};

const COLORS: [&str; 9] = [
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
    "teal",
    "goldenrod",
];

pub fn to_dot(file: &GraphFile, embedding: Option<&MEmbedding>) -> String {
    let g = &file.graph;
    let mut edge_color = vec![None; g.edge_count()];
    let mut branch_label = vec![None; g.vertex_count()];
    if let Some(emb) = embedding {
        let pattern = Pattern::get(emb.pattern);
        for (i, seg) in emb.segments.iter().enumerate() {
            for hop in &seg.hops {
                for e in hop {
                    edge_color[e.0] = Some(COLORS[i % COLORS.len()]);
                }
            }
        }
        for (i, v) in emb.branch.iter().enumerate() {
            branch_label[v.0] = Some(pattern.names[i]);
        }
    }
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let name = file.name(v);
        match branch_label[v.0] {
            Some(role) => writeln!(
                out,
                "  \"{name}\" [label=\"{name}\\n({role})\", style=filled, fillcolor=lightyellow];"
            ),
            None => writeln!(out, "  \"{name}\";"),
        }
        .unwrap();
    }
    for e in g.edges() {
        let (a, b) = (file.name(e.ends[0]), file.name(e.ends[1]));
        let mut attrs = Vec::new();
        if let Some(l) = &file.labels {
            attrs.push(format!("label=\"{}\"", l[e.id.0]));
        }
        if let Some(c) = edge_color[e.id.0] {
            attrs.push(format!("color={c}, penwidth=2"));
        }
        if attrs.is_empty() {
            writeln!(out, "  \"{a}\" -- \"{b}\";").unwrap();
        } else {
            writeln!(out, "  \"{a}\" -- \"{b}\" [{}];", attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{is_m_subdivision, PatternId};

    #[test]
    fn parallel_edges_are_separate() {
        let p = Pattern::get(PatternId::F1);
        let file = GraphFile::with_names(p.graph.clone(), p.names);
        let emb = is_m_subdivision(&p.graph, PatternId::F1).unwrap();
        let dot = to_dot(&file, Some(&emb));
        assert_eq!(
            dot.matches("\"w\" -- \"w'\"").count() + dot.matches("\"w'\" -- \"w\"").count(),
            2
        );
        assert!(dot.contains("(s)"));
        assert_eq!(dot.matches("penwidth").count(), 9);
    }
}
