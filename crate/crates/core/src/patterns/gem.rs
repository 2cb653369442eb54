//! Exact search for subdivisions of the gem.
//!
//! A gem subdivision with apex `e` is a path `R` avoiding `e` together with
//! four paths from distinct neighbours of `e` to distinct vertices of `R`,
//! disjoint from each other and meeting `R` only at their last vertex. The
//! search grows `R` depth-first from a neighbour of `e` and measures the
//! number of such legs by unit-capacity flow. That number only grows with
//! `V(R)`, so a branch is cut as soon as even every vertex still reachable
//! from the end of `R` could not bring it to four.

use std::collections::VecDeque;

use super::{MEmbedding, PatternId};
use crate::multigraph::{Multigraph, VertexId};

/// Finds a subdivision of the gem in `g`, or proves there is none. Parallel
/// edges are ignored; the embedding picks the lowest-id edge on every hop.
pub fn find_f3_subdivision(g: &Multigraph) -> Option<MEmbedding> {
    if g.max_simple_degree() < 4 {
        return None;
    }
    for block in g.biconnected_components() {
        let b = &block.graph;
        if b.vertex_count() < 5 || b.max_simple_degree() < 4 {
            continue;
        }
        for apex in b.vertices() {
            if b.neighbors(apex).len() >= 4 {
                if let Some(emb) = search_apex(b, apex) {
                    return Some(emb.lift_from(&block));
                }
            }
        }
    }
    None
}

/// Finds a gem subdivision whose degree-4 branch vertex is `apex`.
pub fn find_gem_with_apex(g: &Multigraph, apex: VertexId) -> Option<MEmbedding> {
    if !g.contains_vertex(apex) || g.neighbors(apex).len() < 4 {
        return None;
    }
    search_apex(g, apex)
}

fn search_apex(g: &Multigraph, apex: VertexId) -> Option<MEmbedding> {
    let mut net = LegNetwork::new(g, apex);
    let n = g.vertex_count();
    let mut in_r = vec![false; n];
    let mut r = Vec::new();
    for &x in g.neighbors(apex) {
        r.push(x);
        in_r[x.0] = true;
        if let Some(emb) = grow(g, apex, &mut net, &mut r, &mut in_r) {
            return Some(emb);
        }
        r.pop();
        in_r[x.0] = false;
    }
    None
}

fn grow(
    g: &Multigraph,
    apex: VertexId,
    net: &mut LegNetwork,
    r: &mut Vec<VertexId>,
    in_r: &mut Vec<bool>,
) -> Option<MEmbedding> {
    if net.max_legs(in_r) >= 4 {
        return Some(extract(g, apex, net, r));
    }
    let end = *r.last().unwrap();
    let mut bound = in_r.clone();
    let mut queue = VecDeque::from([end]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w != apex && !bound[w.0] {
                bound[w.0] = true;
                queue.push_back(w);
            }
        }
    }
    if net.max_legs(&bound) < 4 {
        return None;
    }
    for &y in g.neighbors(end) {
        if y == apex || in_r[y.0] {
            continue;
        }
        r.push(y);
        in_r[y.0] = true;
        if let Some(emb) = grow(g, apex, net, r, in_r) {
            return Some(emb);
        }
        r.pop();
        in_r[y.0] = false;
    }
    None
}

fn extract(g: &Multigraph, apex: VertexId, net: &mut LegNetwork, r: &[VertexId]) -> MEmbedding {
    let mut on_r = vec![usize::MAX; g.vertex_count()];
    for (i, v) in r.iter().enumerate() {
        on_r[v.0] = i;
    }
    let sinks: Vec<bool> = on_r.iter().map(|&p| p != usize::MAX).collect();
    let flow = net.max_legs(&sinks);
    debug_assert!(flow >= 4);
    let mut legs: Vec<Vec<VertexId>> = net
        .paths()
        .into_iter()
        .map(|p| {
            let cut = p.iter().position(|v| sinks[v.0]).expect("leg reaches R");
            p[..=cut].to_vec()
        })
        .collect();
    legs.sort_by_key(|leg| on_r[leg.last().unwrap().0]);
    legs.truncate(4);
    let pos: Vec<usize> = legs.iter().map(|l| on_r[l.last().unwrap().0]).collect();
    let spine = |i: usize, j: usize| r[pos[i]..=pos[j]].to_vec();
    let apex_path = |leg: &Vec<VertexId>| {
        let mut p = vec![apex];
        p.extend(leg.iter().copied());
        p
    };
    // pattern order: s, u, v, w (apex), t
    let branch = vec![r[pos[0]], r[pos[1]], r[pos[2]], apex, r[pos[3]]];
    let (s, u, v, w, t) = (
        VertexId(0),
        VertexId(1),
        VertexId(2),
        VertexId(3),
        VertexId(4),
    );
    let paths = vec![
        ((s, u), spine(0, 1)),
        ((u, v), spine(1, 2)),
        ((v, t), spine(2, 3)),
        ((s, w), apex_path(&legs[0])),
        ((u, w), apex_path(&legs[1])),
        ((v, w), apex_path(&legs[2])),
        ((w, t), apex_path(&legs[3])),
    ];
    MEmbedding::from_paths(g, PatternId::F3, branch, &paths).expect("gem assembly")
}

/// Vertex-split unit-capacity network for counting legs from the apex
/// neighbours. Node `2v` is the entry of `v`, `2v + 1` its exit.
struct LegNetwork {
    sources: Vec<VertexId>,
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<u8>,
    base: Vec<u8>,
    source_used: Vec<bool>,
    sink_used: Vec<bool>,
}

const NONE: usize = usize::MAX;

impl LegNetwork {
    fn new(g: &Multigraph, apex: VertexId) -> Self {
        let n = g.vertex_count();
        let mut net = LegNetwork {
            sources: g.neighbors(apex).to_vec(),
            head: vec![NONE; 2 * n],
            to: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
            base: Vec::new(),
            source_used: vec![false; n],
            sink_used: vec![false; n],
        };
        for v in g.vertices() {
            if v == apex {
                continue;
            }
            net.arc(2 * v.0, 2 * v.0 + 1);
            for &w in g.neighbors(v) {
                if w != apex {
                    net.arc(2 * v.0 + 1, 2 * w.0);
                }
            }
        }
        net.base = net.cap.clone();
        net
    }

    fn arc(&mut self, a: usize, b: usize) {
        for (x, y, c) in [(a, b, 1), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(c);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// Maximum number of disjoint legs ending in `sinks`, capped at 4. The
    /// flow is left in place for [`LegNetwork::paths`].
    fn max_legs(&mut self, sinks: &[bool]) -> usize {
        self.cap.copy_from_slice(&self.base);
        self.source_used.iter_mut().for_each(|x| *x = false);
        self.sink_used.iter_mut().for_each(|x| *x = false);
        let nodes = self.head.len();
        let mut flow = 0;
        let mut pred = vec![NONE; nodes];
        while flow < 4 {
            pred.iter_mut().for_each(|p| *p = NONE);
            let mut queue = VecDeque::new();
            for &x in &self.sources {
                if !self.source_used[x.0] && pred[2 * x.0] == NONE {
                    pred[2 * x.0] = NONE - 1;
                    queue.push_back(2 * x.0);
                }
            }
            let mut found = None;
            'bfs: while let Some(a) = queue.pop_front() {
                if a % 2 == 1 && sinks[a / 2] && !self.sink_used[a / 2] {
                    found = Some(a);
                    break 'bfs;
                }
                let mut arc = self.head[a];
                while arc != NONE {
                    let b = self.to[arc];
                    if self.cap[arc] > 0 && pred[b] == NONE {
                        pred[b] = arc;
                        queue.push_back(b);
                    }
                    arc = self.next[arc];
                }
            }
            let Some(end) = found else { break };
            self.sink_used[end / 2] = true;
            let mut node = end;
            loop {
                let arc = pred[node];
                if arc == NONE - 1 {
                    self.source_used[node / 2] = true;
                    break;
                }
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                node = self.to[arc ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Vertex sequences of the current flow, one per used source.
    fn paths(&self) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        for &x in &self.sources {
            if !self.source_used[x.0] {
                continue;
            }
            let mut path = vec![x];
            let mut v = x.0;
            while !self.sink_used[v] {
                let mut arc = self.head[2 * v + 1];
                let mut step = None;
                while arc != NONE {
                    // forward arcs carry flow when their base capacity was used
                    if arc.is_multiple_of(2) && self.base[arc] == 1 && self.cap[arc] == 0 {
                        step = Some(self.to[arc] / 2);
                        break;
                    }
                    arc = self.next[arc];
                }
                match step {
                    Some(w) => {
                        path.push(VertexId(w));
                        v = w;
                    }
                    None => break,
                }
            }
            out.push(path);
        }
        out
    }
}
