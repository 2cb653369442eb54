//! Time-functions, non-strict temporal walks and earliest arrival.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

pub type Label = u64;

/// A positive label for every edge, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TimeFunction {
    labels: Vec<Label>,
}

impl TimeFunction {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        if let Some(i) = labels.iter().position(|&l| l == 0) {
            return Err(Error::ZeroLabel(EdgeId(i)));
        }
        Ok(TimeFunction { labels })
    }

    pub fn constant(edge_count: usize, label: Label) -> Self {
        assert!(label >= 1);
        TimeFunction {
            labels: vec![label; edge_count],
        }
    }

    pub fn label(&self, e: EdgeId) -> Label {
        self.labels[e.0]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Largest label, 0 for the empty function.
    pub fn lifetime(&self) -> Label {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Dense ranks `1..=k` preserving order and ties.
    pub fn canonicalize(&self) -> TimeFunction {
        let mut distinct = self.labels.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let labels = self
            .labels
            .iter()
            .map(|l| distinct.binary_search(l).unwrap() as Label + 1)
            .collect();
        TimeFunction { labels }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    graph: Multigraph,
    times: TimeFunction,
}

impl TemporalGraph {
    pub fn new(graph: Multigraph, times: TimeFunction) -> Result<Self> {
        if times.len() != graph.edge_count() {
            return Err(Error::TimeFunctionSize {
                expected: graph.edge_count(),
                found: times.len(),
            });
        }
        Ok(TemporalGraph { graph, times })
    }

    pub fn from_labels(graph: Multigraph, labels: Vec<Label>) -> Result<Self> {
        Self::new(graph, TimeFunction::new(labels)?)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn times(&self) -> &TimeFunction {
        &self.times
    }

    pub fn label(&self, e: EdgeId) -> Label {
        self.times.label(e)
    }

    pub fn into_parts(self) -> (Multigraph, TimeFunction) {
        (self.graph, self.times)
    }

    /// Each label `λ(e)` becomes `T + 1 − λ(e)` with `T` the lifetime.
    pub fn reverse(&self) -> TemporalGraph {
        let t = self.times.lifetime();
        TemporalGraph {
            graph: self.graph.clone(),
            times: TimeFunction {
                labels: self.times.labels.iter().map(|&l| t + 1 - l).collect(),
            },
        }
    }

    pub fn canonicalize(&self) -> TemporalGraph {
        TemporalGraph {
            graph: self.graph.clone(),
            times: self.times.canonicalize(),
        }
    }

    /// Deletes the given vertices. Vertex ids are kept stable: deleted
    /// vertices stay in the graph as isolated vertices. The second component
    /// maps new edge ids to the original ones.
    pub fn remove_vertices(&self, vertices: &[VertexId]) -> Result<(TemporalGraph, Vec<EdgeId>)> {
        let mut gone = vec![false; self.graph.vertex_count()];
        for &v in vertices {
            if !self.graph.contains_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
            gone[v.0] = true;
        }
        let keep: Vec<EdgeId> = self
            .graph
            .edges()
            .filter(|e| !gone[e.ends[0].0] && !gone[e.ends[1].0])
            .map(|e| e.id)
            .collect();
        Ok((self.restrict_edges(&keep), keep))
    }

    /// Deletes the given edges; vertices are untouched. The second component
    /// maps new edge ids to the original ones.
    pub fn remove_edges(&self, edges: &[EdgeId]) -> Result<(TemporalGraph, Vec<EdgeId>)> {
        let mut gone = vec![false; self.graph.edge_count()];
        for &e in edges {
            if e.0 >= gone.len() {
                return Err(Error::UnknownEdge(e));
            }
            gone[e.0] = true;
        }
        let keep: Vec<EdgeId> = self.graph.edge_ids().filter(|e| !gone[e.0]).collect();
        Ok((self.restrict_edges(&keep), keep))
    }

    fn restrict_edges(&self, keep: &[EdgeId]) -> TemporalGraph {
        let graph = Multigraph::new(
            self.graph.vertex_count(),
            keep.iter().map(|&e| {
                let [a, b] = self.graph.endpoints(e);
                (a.0, b.0)
            }),
        )
        .expect("restriction of a valid graph");
        let labels = keep.iter().map(|&e| self.times.label(e)).collect();
        TemporalGraph {
            graph,
            times: TimeFunction { labels },
        }
    }

    /// Edge ids sorted by `(label, id)`.
    pub fn edges_by_time(&self) -> Vec<EdgeId> {
        let mut order: Vec<EdgeId> = self.graph.edge_ids().collect();
        order.sort_by_key(|&e| (self.times.label(e), e));
        order
    }
}

/// An alternating vertex/edge sequence with non-decreasing labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalWalk {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl TemporalWalk {
    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().expect("walks are non-empty")
    }

    pub fn is_path(&self) -> bool {
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.vertices.len()
    }

    pub fn internal_vertices(&self) -> &[VertexId] {
        let n = self.vertices.len();
        if n <= 2 {
            &[]
        } else {
            &self.vertices[1..n - 1]
        }
    }

    pub fn labels(&self, tg: &TemporalGraph) -> Vec<Label> {
        self.edges.iter().map(|&e| tg.label(e)).collect()
    }
}

/// A temporal walk whose vertices are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TemporalPath(TemporalWalk);

impl TemporalPath {
    pub fn walk(&self) -> &TemporalWalk {
        &self.0
    }

    pub fn into_walk(self) -> TemporalWalk {
        self.0
    }
}

impl std::ops::Deref for TemporalPath {
    type Target = TemporalWalk;
    fn deref(&self) -> &TemporalWalk {
        &self.0
    }
}

pub fn validate_walk(
    tg: &TemporalGraph,
    vertices: &[VertexId],
    edges: &[EdgeId],
) -> Result<TemporalWalk> {
    let bad = |index: usize, reason: String| Err(Error::InvalidWalk { index, reason });
    if vertices.is_empty() {
        return bad(0, "walk has no vertices".into());
    }
    if edges.len() + 1 != vertices.len() {
        return bad(
            0,
            format!(
                "{} vertices need {} edges, found {}",
                vertices.len(),
                vertices.len() - 1,
                edges.len()
            ),
        );
    }
    for (i, &v) in vertices.iter().enumerate() {
        if !tg.graph.contains_vertex(v) {
            return bad(i, format!("unknown vertex {v}"));
        }
    }
    let mut previous = 0;
    for (i, &e) in edges.iter().enumerate() {
        let ends = match tg.graph.try_endpoints(e) {
            Ok(ends) => ends,
            Err(_) => return bad(i, format!("unknown edge {e}")),
        };
        let (a, b) = (vertices[i], vertices[i + 1]);
        if !(ends == [a, b] || ends == [b, a]) {
            return bad(i, format!("edge {e} does not join {a} and {b}"));
        }
        let l = tg.label(e);
        if l < previous {
            return bad(
                i,
                format!("label {l} of {e} is below the previous label {previous}"),
            );
        }
        previous = l;
    }
    Ok(TemporalWalk {
        vertices: vertices.to_vec(),
        edges: edges.to_vec(),
    })
}

/// Validates and additionally requires distinct vertices.
pub fn validate_path(
    tg: &TemporalGraph,
    vertices: &[VertexId],
    edges: &[EdgeId],
) -> Result<TemporalPath> {
    let walk = validate_walk(tg, vertices, edges)?;
    if !walk.is_path() {
        let mut seen = std::collections::HashSet::new();
        let index = vertices.iter().position(|v| !seen.insert(*v)).unwrap_or(0);
        return Err(Error::InvalidWalk {
            index,
            reason: "vertex repeats".into(),
        });
    }
    Ok(TemporalPath(walk))
}

/// Cuts out every closed sub-walk: from each vertex, continue from its last
/// occurrence in the walk. Kept edges form a subsequence, so labels stay
/// monotone.
pub fn walk_to_path(tg: &TemporalGraph, walk: &TemporalWalk) -> TemporalPath {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut i = 0;
    loop {
        let v = walk.vertices[i];
        let last = walk.vertices.iter().rposition(|&x| x == v).unwrap();
        vertices.push(v);
        if last + 1 == walk.vertices.len() {
            break;
        }
        edges.push(walk.edges[last]);
        i = last + 1;
    }
    let path = validate_path(tg, &vertices, &edges).expect("splice of a valid walk");
    debug_assert_eq!(path.source(), walk.source());
    path
}

/// Earliest arrival labels from a source, with a predecessor edge per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrival {
    pub source: VertexId,
    /// `Some(0)` for the source, `None` for unreachable vertices.
    pub time: Vec<Option<Label>>,
    pub via: Vec<Option<EdgeId>>,
}

impl Arrival {
    pub fn reaches(&self, v: VertexId) -> bool {
        self.time[v.0].is_some()
    }

    /// A temporal path from the source realising the earliest arrival at `v`.
    pub fn path_to(&self, tg: &TemporalGraph, v: VertexId) -> Option<TemporalPath> {
        self.time[v.0]?;
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        let mut cur = v;
        while cur != self.source {
            let e = self.via[cur.0].expect("reached vertices have a predecessor");
            edges.push(e);
            cur = tg.graph.opposite(e, cur);
            vertices.push(cur);
        }
        vertices.reverse();
        edges.reverse();
        Some(validate_path(tg, &vertices, &edges).expect("arrival tree yields a path"))
    }
}

/// Earliest arrival from `s`. Edges are scanned in `(label, id)` order; within
/// a group of equal labels arrivals propagate transitively, since consecutive
/// edges may share a label.
pub fn earliest_arrival(tg: &TemporalGraph, s: VertexId) -> Result<Arrival> {
    if !tg.graph.contains_vertex(s) {
        return Err(Error::UnknownVertex(s));
    }
    let n = tg.graph.vertex_count();
    let mut time = vec![None; n];
    let mut via = vec![None; n];
    time[s.0] = Some(0);
    let order = tg.edges_by_time();
    let mut start = 0;
    while start < order.len() {
        let label = tg.label(order[start]);
        let mut end = start;
        while end < order.len() && tg.label(order[end]) == label {
            end += 1;
        }
        let group = &order[start..end];
        loop {
            let mut changed = false;
            for &e in group {
                let [a, b] = tg.graph.endpoints(e);
                for (x, y) in [(a, b), (b, a)] {
                    if time[x.0].is_some() && time[y.0].is_none() {
                        time[y.0] = Some(label);
                        via[y.0] = Some(e);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        start = end;
    }
    Ok(Arrival {
        source: s,
        time,
        via,
    })
}

/// Whether some temporal `s,t`-walk avoids the blocked vertices and edges.
/// Masks are indexed by id; an empty slice blocks nothing.
pub fn reachable_avoiding(
    tg: &TemporalGraph,
    s: VertexId,
    t: VertexId,
    blocked_vertices: &[bool],
    blocked_edges: &[bool],
) -> bool {
    let vb = |v: VertexId| blocked_vertices.get(v.0).copied().unwrap_or(false);
    let eb = |e: EdgeId| blocked_edges.get(e.0).copied().unwrap_or(false);
    if vb(s) || vb(t) {
        return false;
    }
    if s == t {
        return true;
    }
    let mut reached = vec![false; tg.graph.vertex_count()];
    reached[s.0] = true;
    let order = tg.edges_by_time();
    let mut start = 0;
    while start < order.len() {
        let label = tg.label(order[start]);
        let mut end = start;
        while end < order.len() && tg.label(order[end]) == label {
            end += 1;
        }
        loop {
            let mut changed = false;
            for &e in &order[start..end] {
                if eb(e) {
                    continue;
                }
                let [a, b] = tg.graph.endpoints(e);
                if vb(a) || vb(b) {
                    continue;
                }
                if reached[a.0] != reached[b.0] {
                    reached[a.0] = true;
                    reached[b.0] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if reached[t.0] {
            return true;
        }
        start = end;
    }
    reached[t.0]
}
