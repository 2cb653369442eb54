//! The three forbidden patterns, embedding verification, gem search and the
//! chain case analysis.

mod assemble;
mod crossed;
mod gem;
mod subdivision;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::multigraph::{Chain, EdgeId, Multigraph, VertexId};
use crate::temporal::TimeFunction;

pub use assemble::{assemble_f1, assemble_f2, search_chain_patterns};
pub use crossed::{
    find_crossed_structures, helpcrossed, ChainOutcome, CrossedStructure, Crossing, Part,
};
pub use gem::{find_f3_subdivision, find_gem_with_apex};
pub use subdivision::{certify, is_m_subdivision, revalidate, MEmbedding, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternId {
    F1,
    F2,
    F3,
}

impl PatternId {
    pub const ALL: [PatternId; 3] = [PatternId::F1, PatternId::F2, PatternId::F3];
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternId::F1 => "F1",
            PatternId::F2 => "F2",
            PatternId::F3 => "F3",
        };
        f.write_str(s)
    }
}

impl FromStr for PatternId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(PatternId::F1),
            "F2" => Ok(PatternId::F2),
            "F3" | "GEM" => Ok(PatternId::F3),
            other => Err(Error::Usage(format!("unknown pattern {other:?}"))),
        }
    }
}

/// A forbidden pattern with its distinguished pair and a labeling on which
/// one disjoint temporal path exists but every cut needs two vertices.
#[derive(Clone, Debug)]
pub struct Pattern {
    pub id: PatternId,
    pub graph: Multigraph,
    pub names: &'static [&'static str],
    pub source: VertexId,
    pub target: VertexId,
    pub bad_labeling: TimeFunction,
}

/// Vertex order s, u, v, w, w', t. Edge `i` carries label `i + 1`.
const F1_EDGES: [(usize, usize); 9] = [
    (0, 1),
    (1, 4),
    (4, 3),
    (3, 5),
    (0, 3),
    (3, 4),
    (1, 2),
    (4, 2),
    (2, 5),
];

const F2_EDGES: [(usize, usize); 9] = [
    (0, 1),
    (1, 3),
    (3, 4),
    (4, 5),
    (0, 3),
    (3, 4),
    (1, 2),
    (4, 2),
    (2, 5),
];

/// Path s, u, v, t with apex w. Edge `i` carries label `i + 1`.
const F3_EDGES: [(usize, usize); 7] = [(0, 1), (1, 3), (3, 4), (0, 3), (3, 2), (1, 2), (2, 4)];

const SIX_NAMES: [&str; 6] = ["s", "u", "v", "w", "w'", "t"];
const GEM_NAMES: [&str; 5] = ["s", "u", "v", "w", "t"];

fn build(id: PatternId) -> Pattern {
    let (n, edges, names): (usize, &[(usize, usize)], &'static [&'static str]) = match id {
        PatternId::F1 => (6, &F1_EDGES, &SIX_NAMES),
        PatternId::F2 => (6, &F2_EDGES, &SIX_NAMES),
        PatternId::F3 => (5, &F3_EDGES, &GEM_NAMES),
    };
    let graph = Multigraph::new(n, edges.iter().copied()).expect("pattern edges are valid");
    let bad_labeling =
        TimeFunction::new((1..=edges.len() as u64).collect()).expect("labels are positive");
    Pattern {
        id,
        graph,
        names,
        source: VertexId(0),
        target: VertexId(n - 1),
        bad_labeling,
    }
}

impl Pattern {
    pub fn get(id: PatternId) -> &'static Pattern {
        static CELLS: [OnceLock<Pattern>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let slot = match id {
            PatternId::F1 => 0,
            PatternId::F2 => 1,
            PatternId::F3 => 2,
        };
        CELLS[slot].get_or_init(|| build(id))
    }

    pub fn vertex(&self, name: &str) -> VertexId {
        VertexId(
            self.names
                .iter()
                .position(|&n| n == name)
                .unwrap_or_else(|| panic!("pattern {} has no vertex {name}", self.id)),
        )
    }

    /// Adjacent pairs `(a, b)`, `a < b`, with their parallel edges sorted by id.
    pub fn multiedges(&self) -> Vec<(VertexId, VertexId, Vec<EdgeId>)> {
        self.graph
            .simple_pairs()
            .into_iter()
            .map(|(a, b)| (a, b, self.graph.edges_between(a, b)))
            .collect()
    }

    /// The doubled pair `w`–`w'`, absent for the gem.
    pub fn chain(&self) -> Option<Chain> {
        self.graph.maximal_chains().into_iter().next()
    }
}

/// Vertex order z0, zq, h1, h2, h3, h4; the z0–zq chain is doubled and every
/// part of the crossing is a single edge.
pub fn crossed_graph() -> Multigraph {
    Multigraph::new(
        6,
        [
            (0, 1),
            (0, 1),
            (0, 2),
            (0, 4),
            (1, 3),
            (1, 5),
            (2, 3),
            (4, 5),
            (3, 4),
            (2, 5),
        ],
    )
    .expect("valid")
}

/// As [`crossed_graph`] without the h1–h4 edge.
pub fn one_crossed_graph() -> Multigraph {
    Multigraph::new(
        6,
        [
            (0, 1),
            (0, 1),
            (0, 2),
            (0, 4),
            (1, 3),
            (1, 5),
            (2, 3),
            (4, 5),
            (3, 4),
        ],
    )
    .expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_shapes() {
        let f1 = Pattern::get(PatternId::F1);
        let f2 = Pattern::get(PatternId::F2);
        let f3 = Pattern::get(PatternId::F3);
        assert_eq!((f1.graph.vertex_count(), f1.graph.edge_count()), (6, 9));
        assert_eq!((f2.graph.vertex_count(), f2.graph.edge_count()), (6, 9));
        assert_eq!((f3.graph.vertex_count(), f3.graph.edge_count()), (5, 7));
        assert!(f3.graph.is_simple());
        for p in [f1, f2] {
            let w = p.vertex("w");
            let w2 = p.vertex("w'");
            assert_eq!(p.graph.multiplicity(w, w2).unwrap(), 2);
            assert_eq!(p.chain().unwrap().vertices, vec![w, w2]);
            assert!(!p.graph.adjacent(p.source, p.target));
        }
        assert_eq!(f3.graph.simple_degree(f3.vertex("w")).unwrap(), 4);
        assert!(f3.chain().is_none());
    }

    #[test]
    fn identifying_the_chain_gives_a_gem() {
        for id in [PatternId::F1, PatternId::F2] {
            let p = Pattern::get(id);
            let ident = p.graph.identify(&p.chain().unwrap().vertices).unwrap();
            let u = ident.graph.underlying_simple();
            assert!(is_m_subdivision(&u, PatternId::F3).is_some(), "{id}");
        }
    }

    #[test]
    fn crossed_graph_has_no_gem_of_its_own() {
        let g = crossed_graph();
        assert_eq!(g.max_simple_degree(), 3);
        assert!(find_f3_subdivision(&g.underlying_simple()).is_none());
    }

    #[test]
    fn pattern_id_parses() {
        assert_eq!("f2".parse::<PatternId>().unwrap(), PatternId::F2);
        assert_eq!("gem".parse::<PatternId>().unwrap(), PatternId::F3);
        assert!("F4".parse::<PatternId>().is_err());
    }
}
