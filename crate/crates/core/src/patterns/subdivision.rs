//! Embeddings of m-subdivided patterns and their exact verification.

use serde::{Deserialize, Serialize};

use super::{Pattern, PatternId};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, Subgraph, VertexId};

/// The image of one pattern multiedge: a host path with the chosen parallel
/// edges on every hop. `hops[i][k]` joins `path[i]` and `path[i + 1]` and
/// stands for `pattern_edges[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub ends: (VertexId, VertexId),
    pub pattern_edges: Vec<EdgeId>,
    pub path: Vec<VertexId>,
    pub hops: Vec<Vec<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MEmbedding {
    pub pattern: PatternId,
    /// Pattern vertex `i` is mapped to `branch[i]`.
    pub branch: Vec<VertexId>,
    /// One segment per pattern multiedge, in the order of
    /// [`Pattern::multiedges`].
    pub segments: Vec<Segment>,
}

impl MEmbedding {
    /// Builds an embedding from one host path per pattern multiedge, choosing
    /// the lowest-id parallel edges on each hop. Paths may be given in either
    /// direction.
    pub fn from_paths(
        g: &Multigraph,
        pattern: PatternId,
        branch: Vec<VertexId>,
        paths: &[((VertexId, VertexId), Vec<VertexId>)],
    ) -> Result<MEmbedding> {
        let p = Pattern::get(pattern);
        let mut segments = Vec::new();
        for (a, b, pattern_edges) in p.multiedges() {
            let (_, path) = paths
                .iter()
                .find(|((x, y), _)| (*x, *y) == (a, b) || (*x, *y) == (b, a))
                .ok_or_else(|| Error::Assembly(format!("no path for pattern pair {a}-{b}")))?;
            let mut path = path.clone();
            if path.first() != Some(&branch[a.0]) {
                path.reverse();
            }
            if path.first() != Some(&branch[a.0]) || path.last() != Some(&branch[b.0]) {
                return Err(Error::Assembly(format!(
                    "path for {a}-{b} does not join its branch vertices"
                )));
            }
            let mu = pattern_edges.len();
            let mut hops = Vec::with_capacity(path.len().saturating_sub(1));
            for w in path.windows(2) {
                let parallel = g.edges_between(w[0], w[1]);
                if parallel.len() < mu {
                    return Err(Error::Assembly(format!(
                        "hop {}-{} has multiplicity {} < {mu}",
                        w[0],
                        w[1],
                        parallel.len()
                    )));
                }
                hops.push(parallel[..mu].to_vec());
            }
            segments.push(Segment {
                ends: (a, b),
                pattern_edges,
                path,
                hops,
            });
        }
        Ok(MEmbedding {
            pattern,
            branch,
            segments,
        })
    }

    /// All host vertices used, sorted.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .segments
            .iter()
            .flat_map(|s| s.path.iter().copied())
            .chain(self.branch.iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// All chosen host edges, sorted.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut es: Vec<EdgeId> = self
            .segments
            .iter()
            .flat_map(|s| s.hops.iter().flatten().copied())
            .collect();
        es.sort_unstable();
        es
    }

    /// Host image of a pattern vertex given by name.
    pub fn image(&self, name: &str) -> VertexId {
        self.branch[Pattern::get(self.pattern).vertex(name).0]
    }

    pub fn source(&self) -> VertexId {
        self.branch[Pattern::get(self.pattern).source.0]
    }

    pub fn target(&self) -> VertexId {
        self.branch[Pattern::get(self.pattern).target.0]
    }

    /// Rewrites host ids, e.g. from a block back to the whole graph.
    pub fn map_ids(
        &self,
        vertex: impl Fn(VertexId) -> VertexId,
        edge: impl Fn(EdgeId) -> EdgeId,
    ) -> MEmbedding {
        MEmbedding {
            pattern: self.pattern,
            branch: self.branch.iter().map(|&v| vertex(v)).collect(),
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    ends: s.ends,
                    pattern_edges: s.pattern_edges.clone(),
                    path: s.path.iter().map(|&v| vertex(v)).collect(),
                    hops: s
                        .hops
                        .iter()
                        .map(|h| h.iter().map(|&e| edge(e)).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn lift_from(&self, sub: &Subgraph) -> MEmbedding {
        self.map_ids(|v| sub.vertex_origin[v.0], |e| sub.edge_origin[e.0])
    }
}

/// Decides whether `h` is exactly an m-subdivision of the pattern, i.e. every
/// vertex and edge of `h` is used, and returns the embedding if so.
///
/// Branch images are assigned by backtracking in breadth-first order over the
/// pattern; each new image is searched along the degree-2 threads leaving an
/// already placed neighbour. A complete assignment is accepted only if the
/// threads between images match the pattern multiedges one to one, with the
/// right multiplicity on every hop.
pub fn is_m_subdivision(h: &Multigraph, id: PatternId) -> Option<MEmbedding> {
    let p = Pattern::get(id);
    let pg = &p.graph;
    let k = pg.vertex_count();
    let deg = |g: &Multigraph, v: VertexId| g.neighbors(v).len();

    let mut want = std::collections::BTreeMap::new();
    for v in pg.vertices() {
        if deg(pg, v) != 2 {
            *want.entry(deg(pg, v)).or_insert(0usize) += 1;
        }
    }
    let mut have = std::collections::BTreeMap::new();
    for v in h.vertices() {
        if deg(h, v) != 2 {
            *have.entry(deg(h, v)).or_insert(0usize) += 1;
        }
    }
    if want != have || !h.is_connected() || h.vertex_count() < k {
        return None;
    }

    // BFS order from the highest-degree pattern vertex
    let root = pg
        .vertices()
        .max_by_key(|&v| (deg(pg, v), std::cmp::Reverse(v)))
        .unwrap();
    let mut order = vec![root];
    let mut parent = vec![None; k];
    let mut seen = vec![false; k];
    seen[root.0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &y in pg.neighbors(x) {
            if !seen[y.0] {
                seen[y.0] = true;
                parent[y.0] = Some(x);
                order.push(y);
            }
        }
        i += 1;
    }

    let mut phi: Vec<Option<VertexId>> = vec![None; k];
    let mut used = vec![false; h.vertex_count()];
    assign(h, p, &order, &parent, 0, &mut phi, &mut used)
}

fn assign(
    h: &Multigraph,
    p: &Pattern,
    order: &[VertexId],
    parent: &[Option<VertexId>],
    depth: usize,
    phi: &mut Vec<Option<VertexId>>,
    used: &mut Vec<bool>,
) -> Option<MEmbedding> {
    if depth == order.len() {
        let branch: Vec<VertexId> = phi.iter().map(|v| v.unwrap()).collect();
        return trace(h, p, &branch);
    }
    let y = order[depth];
    let dy = p.graph.neighbors(y).len();
    let candidates: Vec<VertexId> = match parent[y.0] {
        None => h
            .vertices()
            .filter(|&v| h.neighbors(v).len() == dy)
            .collect(),
        Some(x) => thread_candidates(h, phi[x.0].unwrap(), dy, used),
    };
    for c in candidates {
        if used[c.0] {
            continue;
        }
        phi[y.0] = Some(c);
        used[c.0] = true;
        if let Some(found) = assign(h, p, order, parent, depth + 1, phi, used) {
            return Some(found);
        }
        used[c.0] = false;
        phi[y.0] = None;
    }
    None
}

/// Unused vertices of simple degree `d` reachable from `start` along threads
/// of degree-2 vertices that avoid placed images.
fn thread_candidates(h: &Multigraph, start: VertexId, d: usize, used: &[bool]) -> Vec<VertexId> {
    let mut out = Vec::new();
    for &first in h.neighbors(start) {
        let mut prev = start;
        let mut cur = first;
        loop {
            if used[cur.0] {
                break;
            }
            let dc = h.neighbors(cur).len();
            if dc == d {
                out.push(cur);
            }
            if dc != 2 {
                break;
            }
            let next = if h.neighbors(cur)[0] == prev {
                h.neighbors(cur)[1]
            } else {
                h.neighbors(cur)[0]
            };
            if next == start {
                break;
            }
            prev = cur;
            cur = next;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn trace(h: &Multigraph, p: &Pattern, branch: &[VertexId]) -> Option<MEmbedding> {
    let n = h.vertex_count();
    let mut pattern_of = vec![None; n];
    for (i, &b) in branch.iter().enumerate() {
        pattern_of[b.0] = Some(VertexId(i));
    }
    let mut covered = vec![false; n];
    for &b in branch {
        covered[b.0] = true;
    }
    let multiedges = p.multiedges();
    let mut segment_for: Vec<Option<Segment>> = vec![None; multiedges.len()];
    let mut edge_total = 0;

    for &b in branch {
        for &first in h.neighbors(b) {
            let mut path = vec![b];
            let mut prev = b;
            let mut cur = first;
            while pattern_of[cur.0].is_none() {
                if h.neighbors(cur).len() != 2 {
                    return None;
                }
                path.push(cur);
                let next = if h.neighbors(cur)[0] == prev {
                    h.neighbors(cur)[1]
                } else {
                    h.neighbors(cur)[0]
                };
                prev = cur;
                cur = next;
            }
            path.push(cur);
            let (pa, pb) = (pattern_of[b.0].unwrap(), pattern_of[cur.0].unwrap());
            if pa == pb {
                return None;
            }
            if pa > pb {
                // handled from the other end
                continue;
            }
            let mu = h.edges_between(path[0], path[1]).len();
            let mut hops = Vec::with_capacity(path.len() - 1);
            for w in path.windows(2) {
                let parallel = h.edges_between(w[0], w[1]);
                if parallel.len() != mu {
                    return None;
                }
                hops.push(parallel);
            }
            let idx = multiedges
                .iter()
                .position(|(a, c, _)| (*a, *c) == (pa, pb))?;
            if multiedges[idx].2.len() != mu || segment_for[idx].is_some() {
                return None;
            }
            for &v in &path[1..path.len() - 1] {
                covered[v.0] = true;
            }
            edge_total += mu * (path.len() - 1);
            segment_for[idx] = Some(Segment {
                ends: (pa, pb),
                pattern_edges: multiedges[idx].2.clone(),
                path,
                hops,
            });
        }
    }
    if edge_total != h.edge_count() || covered.iter().any(|c| !c) {
        return None;
    }
    let segments: Option<Vec<Segment>> = segment_for.into_iter().collect();
    Some(MEmbedding {
        pattern: p.id,
        branch: branch.to_vec(),
        segments: segments?,
    })
}

/// Certifies that the given host edges span an m-subdivision of the pattern
/// and returns the embedding in host ids.
pub fn certify(g: &Multigraph, edges: &[EdgeId], id: PatternId) -> Option<MEmbedding> {
    let sub = g.edge_subgraph(edges);
    is_m_subdivision(&sub.graph, id).map(|e| e.lift_from(&sub))
}

/// Checks an embedding against a host: segment shape, chosen edges,
/// disjointness, and an independent re-derivation of the pattern from the
/// chosen edges.
pub fn revalidate(g: &Multigraph, emb: &MEmbedding) -> Result<()> {
    let fail = |m: String| Err(Error::Contract(m));
    let p = Pattern::get(emb.pattern);
    if emb.branch.len() != p.graph.vertex_count() {
        return fail(format!(
            "{} branch vertices for a pattern with {}",
            emb.branch.len(),
            p.graph.vertex_count()
        ));
    }
    let n = g.vertex_count();
    let mut owner = vec![false; n];
    for &b in &emb.branch {
        if !g.contains_vertex(b) {
            return fail(format!("branch vertex {b} is not in the host"));
        }
        if owner[b.0] {
            return fail(format!("branch vertex {b} used twice"));
        }
        owner[b.0] = true;
    }
    let multiedges = p.multiedges();
    if multiedges.len() != emb.segments.len() {
        return fail("segment count does not match the pattern".into());
    }
    let mut edge_used = vec![false; g.edge_count()];
    for ((a, b, pe), seg) in multiedges.iter().zip(&emb.segments) {
        if seg.ends != (*a, *b) || &seg.pattern_edges != pe {
            return fail(format!("segment for {a}-{b} is out of order"));
        }
        if seg.path.len() < 2 || seg.hops.len() + 1 != seg.path.len() {
            return fail(format!("segment {a}-{b} is malformed"));
        }
        if seg.path[0] != emb.branch[a.0] || *seg.path.last().unwrap() != emb.branch[b.0] {
            return fail(format!("segment {a}-{b} does not join its branch images"));
        }
        for &v in &seg.path[1..seg.path.len() - 1] {
            if !g.contains_vertex(v) || owner[v.0] {
                return fail(format!("segment {a}-{b} reuses vertex {v}"));
            }
            owner[v.0] = true;
        }
        for (i, hop) in seg.hops.iter().enumerate() {
            if hop.len() != pe.len() {
                return fail(format!(
                    "hop {i} of segment {a}-{b} has {} edges, expected {}",
                    hop.len(),
                    pe.len()
                ));
            }
            let (x, y) = (seg.path[i], seg.path[i + 1]);
            for &e in hop {
                let ends = g.try_endpoints(e)?;
                if !(ends == [x, y] || ends == [y, x]) {
                    return fail(format!("edge {e} does not join {x} and {y}"));
                }
                if edge_used[e.0] {
                    return fail(format!("edge {e} used twice"));
                }
                edge_used[e.0] = true;
            }
        }
    }
    if certify(g, &emb.edges(), emb.pattern).is_none() {
        return fail(format!(
            "chosen edges do not form an m-subdivision of {}",
            emb.pattern
        ));
    }
    Ok(())
}
