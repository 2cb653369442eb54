//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! v s
//! v t
//! e s t 3
//! ```
//!
//! `v <name>` declares a vertex, `e <u> <v> [<label>]` adds one edge. Either
//! every edge has a label or none has.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexId};
use crate::temporal::{Label, TemporalGraph, TimeFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub names: Vec<String>,
    pub graph: Multigraph,
    pub labels: Option<Vec<Label>>,
}

impl GraphFile {
    /// Vertices named `v0`, `v1`, ...
    pub fn unnamed(graph: Multigraph, labels: Option<Vec<Label>>) -> Self {
        GraphFile {
            names: (0..graph.vertex_count()).map(|i| format!("v{i}")).collect(),
            graph,
            labels,
        }
    }

    pub fn with_names(graph: Multigraph, names: &[&str]) -> Self {
        GraphFile {
            names: names.iter().map(|s| s.to_string()).collect(),
            graph,
            labels: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut pairs = Vec::new();
        let mut labels = Vec::new();
        let mut labelled: Option<bool> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| Error::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields[0] {
                "v" => {
                    if fields.len() != 2 {
                        return Err(err("expected `v <name>`".into()));
                    }
                    let name = fields[1].to_string();
                    if index.contains_key(&name) {
                        return Err(err(format!("vertex {name:?} declared twice")));
                    }
                    index.insert(name.clone(), names.len());
                    names.push(name);
                }
                "e" => {
                    if fields.len() != 3 && fields.len() != 4 {
                        return Err(err("expected `e <u> <v> [<label>]`".into()));
                    }
                    let lookup = |name: &str| {
                        index
                            .get(name)
                            .copied()
                            .ok_or_else(|| err(format!("undeclared vertex {name:?}")))
                    };
                    let (a, b) = (lookup(fields[1])?, lookup(fields[2])?);
                    if a == b {
                        return Err(err(format!("self-loop at {:?}", fields[1])));
                    }
                    let has_label = fields.len() == 4;
                    if *labelled.get_or_insert(has_label) != has_label {
                        return Err(err("labels must be given on all edges or on none".into()));
                    }
                    if has_label {
                        let l: Label = fields[3]
                            .parse()
                            .map_err(|_| err(format!("invalid label {:?}", fields[3])))?;
                        if l == 0 {
                            return Err(err("labels must be positive".into()));
                        }
                        labels.push(l);
                    }
                    pairs.push((a, b));
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        let graph = Multigraph::new(names.len(), pairs)?;
        Ok(GraphFile {
            names,
            graph,
            labels: if labelled == Some(true) {
                Some(labels)
            } else {
                None
            },
        })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            writeln!(out, "v {name}").unwrap();
        }
        for e in self.graph.edges() {
            let (a, b) = (&self.names[e.ends[0].0], &self.names[e.ends[1].0]);
            match &self.labels {
                Some(l) => writeln!(out, "e {a} {b} {}", l[e.id.0]).unwrap(),
                None => writeln!(out, "e {a} {b}").unwrap(),
            }
        }
        out
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(VertexId)
            .ok_or_else(|| Error::Usage(format!("no vertex named {name:?}")))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    /// The labelled graph; fails for unlabelled files.
    pub fn temporal(&self) -> Result<TemporalGraph> {
        let labels = self
            .labels
            .clone()
            .ok_or_else(|| Error::Usage("graph file has no labels".into()))?;
        TemporalGraph::new(self.graph.clone(), TimeFunction::new(labels)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_emit() {
        let text = "# two parallel edges\nv a\nv b\nv c\ne a b 2\ne a b 5 # trailing\n\ne b c 1\n";
        let f = GraphFile::parse(text).unwrap();
        assert_eq!(f.graph.edge_count(), 3);
        assert_eq!(f.labels.as_deref(), Some(&[2, 5, 1][..]));
        let again = GraphFile::parse(&f.emit()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("v a\nv a\n", 2),
            ("v a\nv b\ne a b 1\ne a b\n", 4),
            ("v a\ne a b\n", 2),
            ("v a\nv b\ne a b 0\n", 3),
            ("v a\ne a a\n", 2),
            ("x\n", 1),
        ];
        for (text, line) in cases {
            match GraphFile::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn unlabelled_has_no_temporal_view() {
        let f = GraphFile::parse("v a\nv b\ne a b\n").unwrap();
        assert!(f.temporal().is_err());
    }
}
