//! Multigraphs with identified parallel edges.
//!
//! Vertices and edges are dense indices. Every structural operation returns a
//! fresh graph together with the id mappings needed to relate it to its
//! source, so evidence computed on a derived graph can be carried back.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub ends: [VertexId; 2],
}

/// An undirected multigraph without self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    ends: Vec<[VertexId; 2]>,
    incidence: Vec<Vec<EdgeId>>,
    neighbors: Vec<Vec<VertexId>>,
}

/// A path `(z_0, ..., z_q)` in the underlying simple graph whose consecutive
/// pairs all have multiplicity at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain {
    pub vertices: Vec<VertexId>,
}

impl Chain {
    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("chains are non-empty")
    }

    pub fn internal(&self) -> &[VertexId] {
        let n = self.vertices.len();
        if n <= 2 {
            &[]
        } else {
            &self.vertices[1..n - 1]
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn reversed(&self) -> Chain {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Chain { vertices }
    }

    /// Consecutive vertex pairs along the chain.
    pub fn hops(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Result of identifying a vertex set into one fresh vertex.
#[derive(Clone, Debug)]
pub struct Identification {
    pub graph: Multigraph,
    pub merged: VertexId,
    /// Old vertex -> new vertex; vertices of the identified set map to `merged`.
    pub vertex_map: Vec<VertexId>,
    /// Old edge -> new edge, `None` for edges with both ends in the set.
    pub edge_map: Vec<Option<EdgeId>>,
}

/// Result of m-subdividing a multiedge.
#[derive(Clone, Debug)]
pub struct MSubdivision {
    pub graph: Multigraph,
    pub vertex: VertexId,
    /// Old edge -> new edge for every edge outside the subdivided multiedge.
    pub edge_map: Vec<Option<EdgeId>>,
    /// For each original parallel edge: (old id, new u-side edge, new v-side edge).
    pub split: Vec<(EdgeId, EdgeId, EdgeId)>,
}

/// A subgraph relabelled densely, with maps back to the parent graph.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Multigraph,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<EdgeId>,
}

impl Subgraph {
    pub fn local_vertex(&self, parent: VertexId) -> Option<VertexId> {
        self.vertex_origin
            .iter()
            .position(|&v| v == parent)
            .map(VertexId)
    }
}

impl Multigraph {
    /// Builds a multigraph on `vertex_count` vertices. Edge `i` of the
    /// iterator receives id `i`.
    pub fn new<I>(vertex_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut ends = Vec::new();
        for (u, v) in pairs {
            if u >= vertex_count {
                return Err(Error::UnknownVertex(VertexId(u)));
            }
            if v >= vertex_count {
                return Err(Error::UnknownVertex(VertexId(v)));
            }
            if u == v {
                return Err(Error::SelfLoop(VertexId(u)));
            }
            ends.push([VertexId(u), VertexId(v)]);
        }
        Ok(Self::from_ends(vertex_count, ends))
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_ends(vertex_count, Vec::new())
    }

    fn from_ends(vertex_count: usize, ends: Vec<[VertexId; 2]>) -> Self {
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut neighbors = vec![Vec::new(); vertex_count];
        for (i, &[u, v]) in ends.iter().enumerate() {
            incidence[u.0].push(EdgeId(i));
            incidence[v.0].push(EdgeId(i));
            neighbors[u.0].push(v);
            neighbors[v.0].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        Multigraph {
            ends,
            incidence,
            neighbors,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.ends.iter().enumerate().map(|(i, &ends)| Edge {
            id: EdgeId(i),
            ends,
        })
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertex_count()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e.0]
    }

    pub fn try_endpoints(&self, e: EdgeId) -> Result<[VertexId; 2]> {
        self.ends.get(e.0).copied().ok_or(Error::UnknownEdge(e))
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.ends[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.0]
    }

    /// Distinct neighbours of `v`, sorted by id.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v.0]
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors[u.0].binary_search(&v).is_ok()
    }

    /// Parallel edges between `u` and `v`, sorted by id.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        let (a, b) = if self.incidence[u.0].len() <= self.incidence[v.0].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.incidence[a.0]
            .iter()
            .copied()
            .filter(|&e| self.opposite(e, a) == b)
            .collect()
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(0);
        }
        Ok(self.edges_between(u, v).len())
    }

    /// Degree in the underlying simple graph.
    pub fn simple_degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.neighbors[v.0].len())
    }

    /// Number of incident edges, counted with multiplicity.
    pub fn edge_degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incidence[v.0].len())
    }

    pub fn max_simple_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.vertices()
            .any(|v| self.incidence[v.0].len() > self.neighbors[v.0].len())
    }

    /// Adjacent pairs `(u, v)` with `u < v`, each listed once.
    pub fn simple_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut pairs = Vec::new();
        for u in self.vertices() {
            for &v in &self.neighbors[u.0] {
                if u < v {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }

    /// The underlying simple graph: same vertices, one edge per adjacent pair.
    /// Edges are ordered by their smaller endpoint, then the larger one.
    pub fn underlying_simple(&self) -> Multigraph {
        let pairs = self.simple_pairs();
        Self::from_ends(
            self.vertex_count(),
            pairs.into_iter().map(|(u, v)| [u, v]).collect(),
        )
    }

    pub fn is_simple(&self) -> bool {
        !self.has_parallel_edges()
    }

    /// Identifies the vertices of `set` into a single fresh vertex, which is
    /// appended after the surviving vertices. Edges inside the set are dropped;
    /// every edge with one end in the set is re-attached to the new vertex.
    pub fn identify(&self, set: &[VertexId]) -> Result<Identification> {
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut in_set = vec![false; self.vertex_count()];
        for &v in set {
            self.check_vertex(v)?;
            in_set[v.0] = true;
        }
        let mut vertex_map = vec![VertexId(0); self.vertex_count()];
        let mut next = 0;
        for v in self.vertices() {
            if !in_set[v.0] {
                vertex_map[v.0] = VertexId(next);
                next += 1;
            }
        }
        let merged = VertexId(next);
        for v in self.vertices() {
            if in_set[v.0] {
                vertex_map[v.0] = merged;
            }
        }
        let mut ends = Vec::with_capacity(self.edge_count());
        let mut edge_map = Vec::with_capacity(self.edge_count());
        for &[u, v] in &self.ends {
            if in_set[u.0] && in_set[v.0] {
                edge_map.push(None);
            } else {
                edge_map.push(Some(EdgeId(ends.len())));
                ends.push([vertex_map[u.0], vertex_map[v.0]]);
            }
        }
        Ok(Identification {
            graph: Self::from_ends(next + 1, ends),
            merged,
            vertex_map,
            edge_map,
        })
    }

    /// Replaces the `μ` parallel `u`–`v` edges by `μ` parallel `u`–`z` and
    /// `μ` parallel `z`–`v` edges through one fresh vertex `z`.
    pub fn m_subdivide(&self, u: VertexId, v: VertexId) -> Result<MSubdivision> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let parallel = self.edges_between(u, v);
        if u == v || parallel.is_empty() {
            return Err(Error::NotAdjacent(u, v));
        }
        let z = VertexId(self.vertex_count());
        let mut ends = Vec::with_capacity(self.edge_count() + parallel.len());
        let mut edge_map = vec![None; self.edge_count()];
        for (i, &pair) in self.ends.iter().enumerate() {
            if parallel.binary_search(&EdgeId(i)).is_err() {
                edge_map[i] = Some(EdgeId(ends.len()));
                ends.push(pair);
            }
        }
        let mut split = Vec::with_capacity(parallel.len());
        for &e in &parallel {
            let a = EdgeId(ends.len());
            ends.push([u, z]);
            let b = EdgeId(ends.len());
            ends.push([z, v]);
            split.push((e, a, b));
        }
        Ok(MSubdivision {
            graph: Self::from_ends(self.vertex_count() + 1, ends),
            vertex: z,
            edge_map,
            split,
        })
    }

    /// Maximal chains whose internal vertices have simple degree exactly 2.
    ///
    /// Each chain is reported once, oriented so that its first vertex has the
    /// smaller id, and the list is sorted by (smaller endpoint, larger endpoint).
    /// A closed ring of doubled edges is cut open at its only vertex of other
    /// degree, or at its smallest vertex, so its closing pair is not reported.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let pairs: Vec<(VertexId, VertexId)> = self
            .simple_pairs()
            .into_iter()
            .filter(|&(u, v)| self.edges_between(u, v).len() >= 2)
            .collect();
        let heavy = |a: VertexId, b: VertexId| self.edges_between(a, b).len() >= 2;
        let mut used = std::collections::HashSet::new();
        let mut chains = Vec::new();
        for (u, v) in pairs {
            if used.contains(&(u, v)) {
                continue;
            }
            // extend forward from v, backward from u
            let mut forward = vec![u, v];
            let mut closed = false;
            loop {
                let last = *forward.last().unwrap();
                let prev = forward[forward.len() - 2];
                if self.neighbors[last.0].len() != 2 {
                    break;
                }
                let next = self.neighbors[last.0]
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .unwrap();
                if !heavy(last, next) {
                    break;
                }
                if next == forward[0] {
                    closed = true;
                    break;
                }
                forward.push(next);
            }
            let vertices = if closed {
                // a ring hanging from one branch vertex is cut there
                let start = if self.neighbors[forward[0].0].len() != 2 {
                    0
                } else {
                    forward
                        .iter()
                        .enumerate()
                        .min_by_key(|(_, v)| **v)
                        .map(|(i, _)| i)
                        .unwrap()
                };
                let mut ring = forward[start..].to_vec();
                ring.extend_from_slice(&forward[..start]);
                ring
            } else {
                let mut backward = Vec::new();
                let mut prev = forward[1];
                let mut cur = forward[0];
                while self.neighbors[cur.0].len() == 2 {
                    let next = self.neighbors[cur.0]
                        .iter()
                        .copied()
                        .find(|&w| w != prev)
                        .unwrap();
                    if !heavy(cur, next) {
                        break;
                    }
                    backward.push(next);
                    prev = cur;
                    cur = next;
                }
                backward.reverse();
                backward.extend(forward);
                backward
            };
            for w in vertices.windows(2) {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                used.insert((a, b));
            }
            if closed {
                let (a, b) = (vertices[0], *vertices.last().unwrap());
                used.insert((a.min(b), a.max(b)));
            }
            let mut chain = Chain { vertices };
            if chain.first() > chain.last() {
                chain = chain.reversed();
            }
            chains.push(chain);
        }
        chains.sort_by_key(|c| (c.first(), c.last(), c.vertices.len()));
        chains
    }

    /// Subgraph spanned by the given edges (vertices are the edge endpoints,
    /// renumbered in increasing parent order).
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> Subgraph {
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        edges.dedup();
        let mut vertex_origin: Vec<VertexId> = edges.iter().flat_map(|&e| self.ends[e.0]).collect();
        vertex_origin.sort_unstable();
        vertex_origin.dedup();
        self.build_subgraph(vertex_origin, edges)
    }

    /// Subgraph induced by `vertices` (renumbered in increasing parent order).
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Subgraph {
        let mut vertex_origin = vertices.to_vec();
        vertex_origin.sort_unstable();
        vertex_origin.dedup();
        let mut keep = vec![false; self.vertex_count()];
        for &v in &vertex_origin {
            keep[v.0] = true;
        }
        let edges: Vec<EdgeId> = self
            .edges()
            .filter(|e| keep[e.ends[0].0] && keep[e.ends[1].0])
            .map(|e| e.id)
            .collect();
        self.build_subgraph(vertex_origin, edges)
    }

    fn build_subgraph(&self, vertex_origin: Vec<VertexId>, edge_origin: Vec<EdgeId>) -> Subgraph {
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, v) in vertex_origin.iter().enumerate() {
            local[v.0] = i;
        }
        let ends = edge_origin
            .iter()
            .map(|&e| {
                let [a, b] = self.ends[e.0];
                [VertexId(local[a.0]), VertexId(local[b.0])]
            })
            .collect();
        Subgraph {
            graph: Self::from_ends(vertex_origin.len(), ends),
            vertex_origin,
            edge_origin,
        }
    }

    /// Blocks of the underlying simple graph, with all parallel edges carried
    /// along. A bridge multiedge forms a block of its own; isolated vertices
    /// belong to no block. Blocks are ordered by their smallest edge id.
    pub fn biconnected_components(&self) -> Vec<Subgraph> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut pair_stack: Vec<(VertexId, VertexId)> = Vec::new();
        let mut blocks: Vec<Vec<(VertexId, VertexId)>> = Vec::new();

        for root in self.vertices() {
            if disc[root.0] != usize::MAX || self.neighbors[root.0].is_empty() {
                continue;
            }
            disc[root.0] = timer;
            low[root.0] = timer;
            timer += 1;
            // (vertex, parent, next neighbour index)
            let mut stack: Vec<(VertexId, Option<VertexId>, usize)> = vec![(root, None, 0)];
            while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
                if *next < self.neighbors[v.0].len() {
                    let w = self.neighbors[v.0][*next];
                    *next += 1;
                    if Some(w) == parent {
                        continue;
                    }
                    if disc[w.0] == usize::MAX {
                        pair_stack.push((v, w));
                        disc[w.0] = timer;
                        low[w.0] = timer;
                        timer += 1;
                        stack.push((w, Some(v), 0));
                    } else if disc[w.0] < disc[v.0] {
                        pair_stack.push((v, w));
                        low[v.0] = low[v.0].min(disc[w.0]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent {
                        low[p.0] = low[p.0].min(low[v.0]);
                        if low[v.0] >= disc[p.0] {
                            let mut block = Vec::new();
                            while let Some(pair) = pair_stack.pop() {
                                block.push(pair);
                                if pair == (p, v) {
                                    break;
                                }
                            }
                            blocks.push(block);
                        }
                    }
                }
            }
        }

        let mut result: Vec<Subgraph> = blocks
            .into_iter()
            .map(|pairs| {
                let mut edges = Vec::new();
                for (a, b) in pairs {
                    edges.extend(self.edges_between(a, b));
                }
                self.edge_subgraph(&edges)
            })
            .collect();
        result.sort_by_key(|b| b.edge_origin[0]);
        result
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        self.reachable_from(VertexId(0), &[]).iter().all(|&r| r)
    }

    /// Vertices reachable from `start` without entering `banned`.
    pub fn reachable_from(&self, start: VertexId, banned: &[VertexId]) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        for &b in banned {
            seen[b.0] = true;
        }
        let mut reach = vec![false; self.vertex_count()];
        if seen[start.0] {
            return reach;
        }
        let mut queue = VecDeque::from([start]);
        seen[start.0] = true;
        reach[start.0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v.0] {
                if !seen[w.0] {
                    seen[w.0] = true;
                    reach[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        reach
    }

    /// Shortest path (in hops) from any source to any target, avoiding the
    /// banned vertices as intermediate or end points. Ties break towards
    /// smaller ids.
    pub fn find_path(
        &self,
        sources: &[VertexId],
        targets: &[VertexId],
        banned: &[VertexId],
    ) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut blocked = vec![false; n];
        for &b in banned {
            blocked[b.0] = true;
        }
        let mut is_target = vec![false; n];
        for &t in targets {
            is_target[t.0] = true;
        }
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let mut sources = sources.to_vec();
        sources.sort_unstable();
        for &s in &sources {
            if blocked[s.0] || parent[s.0] != usize::MAX {
                continue;
            }
            if is_target[s.0] {
                return Some(vec![s]);
            }
            parent[s.0] = s.0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v.0] {
                if blocked[w.0] || parent[w.0] != usize::MAX {
                    continue;
                }
                parent[w.0] = v.0;
                if is_target[w.0] {
                    let mut path = vec![w];
                    let mut cur = w.0;
                    while parent[cur] != cur {
                        cur = parent[cur];
                        path.push(VertexId(cur));
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }
}
