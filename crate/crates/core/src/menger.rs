//! Exact temporal Menger quantities.
//!
//! `p(s,t)` and `c(s,t)` are computed by exhaustive search under a vertex
//! guard. The edge version is a max-flow on a time-expanded network, where
//! maximum and minimum always coincide.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::multigraph::{EdgeId, Multigraph, VertexId};
use crate::temporal::{
    earliest_arrival, reachable_avoiding, validate_path, validate_walk, walk_to_path, Label,
    TemporalGraph, TemporalPath, TimeFunction,
};

/// Hard ceiling of the bitmask representation.
const MASK_BITS: usize = 128;

/// Size guards for the exponential oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_vertices: usize,
    /// Largest edge count accepted by exhaustive falsification.
    pub max_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 16,
            max_edges: 7,
        }
    }
}

impl OracleLimits {
    fn check_vertices(&self, g: &Multigraph) -> Result<()> {
        let limit = self.max_vertices.min(MASK_BITS);
        if g.vertex_count() > limit {
            return Err(Error::SizeGuard {
                what: "vertex count",
                size: g.vertex_count(),
                limit,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerReport {
    pub p: usize,
    /// `None` when `s` and `t` are adjacent.
    pub c: Option<usize>,
    pub paths: Vec<TemporalPath>,
    pub cut: Option<Vec<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeMengerReport {
    pub value: usize,
    pub paths: Vec<TemporalPath>,
    pub edge_cut: Vec<EdgeId>,
}

fn check_terminals(g: &Multigraph, s: VertexId, t: VertexId) -> Result<()> {
    for v in [s, t] {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if s == t {
        return Err(Error::SameEndpoints);
    }
    Ok(())
}

fn bit(v: VertexId) -> u128 {
    1u128 << v.0
}

/// Per vertex: neighbours in id order, each with its edges sorted by label.
type TimedAdjacency = Vec<Vec<(VertexId, Vec<(Label, EdgeId)>)>>;

fn timed_adjacency(tg: &TemporalGraph) -> TimedAdjacency {
    let g = tg.graph();
    g.vertices()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&w| {
                    let mut es: Vec<(Label, EdgeId)> = g
                        .edges_between(v, w)
                        .into_iter()
                        .map(|e| (tg.label(e), e))
                        .collect();
                    es.sort_unstable();
                    (w, es)
                })
                .collect()
        })
        .collect()
}

struct PathSearch<'a> {
    adj: &'a TimedAdjacency,
    t: VertexId,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    visited: u128,
    found: HashMap<u128, (Vec<VertexId>, Vec<EdgeId>)>,
}

impl PathSearch<'_> {
    /// Extends the current path taking, towards each neighbour, the earliest
    /// parallel edge that keeps labels monotone. Any path with the same vertex
    /// sequence can be replaced by that choice.
    fn dfs(&mut self, v: VertexId, time: Label) {
        for (w, es) in self.adj[v.0].iter() {
            let w = *w;
            if self.visited & bit(w) != 0 {
                continue;
            }
            let Some(&(label, e)) = es.iter().find(|(l, _)| *l >= time) else {
                continue;
            };
            self.vertices.push(w);
            self.edges.push(e);
            if w == self.t {
                // direct edges are handled separately
                if self.vertices.len() > 2 {
                    let interior = self.vertices[1..self.vertices.len() - 1]
                        .iter()
                        .fold(0u128, |m, &x| m | bit(x));
                    self.found
                        .entry(interior)
                        .or_insert_with(|| (self.vertices.clone(), self.edges.clone()));
                }
            } else {
                self.visited |= bit(w);
                self.dfs(w, label);
                self.visited &= !bit(w);
            }
            self.vertices.pop();
            self.edges.pop();
        }
    }
}

/// Interior vertex sets of temporal `s,t`-paths with at least one interior
/// vertex, reduced to the inclusion-minimal ones, each with one realising path.
fn minimal_interiors(
    tg: &TemporalGraph,
    s: VertexId,
    t: VertexId,
) -> Vec<(u128, Vec<VertexId>, Vec<EdgeId>)> {
    let adj = timed_adjacency(tg);
    let mut search = PathSearch {
        adj: &adj,
        t,
        vertices: vec![s],
        edges: Vec::new(),
        visited: bit(s),
        found: HashMap::new(),
    };
    search.dfs(s, 0);
    let mut all: Vec<(u128, Vec<VertexId>, Vec<EdgeId>)> = search
        .found
        .into_iter()
        .map(|(m, (v, e))| (m, v, e))
        .collect();
    all.sort_by_key(|(m, _, _)| (m.count_ones(), *m));
    let mut kept: Vec<(u128, Vec<VertexId>, Vec<EdgeId>)> = Vec::new();
    for item in all {
        if !kept.iter().any(|(k, _, _)| k & item.0 == *k) {
            kept.push(item);
        }
    }
    kept
}

struct Packing<'a> {
    sets: &'a [u128],
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl Packing<'_> {
    fn run(&mut self, i: usize, used: u128, free: u32) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let remaining = (self.sets.len() - i) as u32;
        if self.chosen.len() as u32 + remaining.min(free) <= self.best.len() as u32 {
            return;
        }
        for j in i..self.sets.len() {
            let m = self.sets[j];
            if m & used == 0 {
                self.chosen.push(j);
                self.run(j + 1, used | m, free - (m & !used).count_ones().min(free));
                self.chosen.pop();
                let left = (self.sets.len() - j - 1) as u32;
                if self.chosen.len() as u32 + left.min(free) <= self.best.len() as u32 {
                    return;
                }
            }
        }
    }
}

/// Maximum number of internally vertex-disjoint temporal `s,t`-paths, with
/// paths realising it. Each parallel `s`–`t` edge counts as one path.
pub fn max_disjoint_paths(
    tg: &TemporalGraph,
    s: VertexId,
    t: VertexId,
    limits: &OracleLimits,
) -> Result<(usize, Vec<TemporalPath>)> {
    let g = tg.graph();
    check_terminals(g, s, t)?;
    limits.check_vertices(g)?;
    let mut paths: Vec<TemporalPath> = g
        .edges_between(s, t)
        .into_iter()
        .map(|e| validate_path(tg, &[s, t], &[e]).expect("single edge is a path"))
        .collect();
    let candidates = minimal_interiors(tg, s, t);
    let sets: Vec<u128> = candidates.iter().map(|(m, _, _)| *m).collect();
    let free = sets.iter().fold(0u128, |a, m| a | m).count_ones();
    let mut packing = Packing {
        sets: &sets,
        best: Vec::new(),
        chosen: Vec::new(),
    };
    packing.run(0, 0, free);
    for j in packing.best {
        let (_, vs, es) = &candidates[j];
        paths.push(validate_path(tg, vs, es).expect("search yields paths"));
    }
    Ok((paths.len(), paths))
}

/// Vertices lying on some temporal `s,t`-walk. Every vertex of an
/// inclusion-minimal cut is one of them.
fn walk_vertices(tg: &TemporalGraph, s: VertexId, t: VertexId) -> Result<Vec<VertexId>> {
    let forward = earliest_arrival(tg, s)?;
    let lifetime = tg.times().lifetime();
    let backward = earliest_arrival(&tg.reverse(), t)?;
    Ok(tg
        .graph()
        .vertices()
        .filter(|&v| v != s && v != t)
        .filter(|&v| match (forward.time[v.0], backward.time[v.0]) {
            // latest departure towards t is T + 1 - reverse arrival
            (Some(a), Some(b)) => a + b <= lifetime + 1,
            _ => false,
        })
        .collect())
}

/// Minimum temporal vertex cut, the first in `(size, lexicographic)` order.
pub fn min_vertex_cut(
    tg: &TemporalGraph,
    s: VertexId,
    t: VertexId,
    limits: &OracleLimits,
) -> Result<(usize, Vec<VertexId>)> {
    let g = tg.graph();
    check_terminals(g, s, t)?;
    if g.adjacent(s, t) {
        return Err(Error::AdjacentTerminals(s, t));
    }
    limits.check_vertices(g)?;
    let pool = walk_vertices(tg, s, t)?;
    let mut blocked = vec![false; g.vertex_count()];
    for k in 0..=pool.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            for &i in &idx {
                blocked[pool[i].0] = true;
            }
            let cut = !reachable_avoiding(tg, s, t, &blocked, &[]);
            for &i in &idx {
                blocked[pool[i].0] = false;
            }
            if cut {
                return Ok((k, idx.iter().map(|&i| pool[i]).collect()));
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    unreachable!("removing every walk vertex separates non-adjacent terminals")
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Both vertex quantities; the cut is omitted for adjacent terminals.
pub fn vertex_menger(
    tg: &TemporalGraph,
    s: VertexId,
    t: VertexId,
    limits: &OracleLimits,
) -> Result<MengerReport> {
    let (p, paths) = max_disjoint_paths(tg, s, t, limits)?;
    let (c, cut) = if tg.graph().adjacent(s, t) {
        (None, None)
    } else {
        let (c, cut) = min_vertex_cut(tg, s, t, limits)?;
        (Some(c), Some(cut))
    };
    Ok(MengerReport { p, c, paths, cut })
}

/// `(p, c, c - p)` for non-adjacent terminals.
pub fn menger_gap(
    tg: &TemporalGraph,
    s: VertexId,
    t: VertexId,
    limits: &OracleLimits,
) -> Result<(usize, usize, usize)> {
    let (c, _) = min_vertex_cut(tg, s, t, limits)?;
    let (p, _) = max_disjoint_paths(tg, s, t, limits)?;
    Ok((p, c, c.saturating_sub(p)))
}

enum Node {
    Layer(VertexId),
    EdgeIn,
    EdgeOut(EdgeId),
    Terminal,
}

/// Edge-disjoint temporal paths and a minimum temporal edge cut from one
/// max-flow. Layers are the distinct labels; `(v, τ)` exists when `v` has an
/// edge labelled `τ`. Waiting arcs move up a layer at no cost and each edge
/// is a unit gadget usable in either direction within its layer.
pub fn edge_menger(tg: &TemporalGraph, s: VertexId, t: VertexId) -> Result<EdgeMengerReport> {
    let g = tg.graph();
    check_terminals(g, s, t)?;
    let mut net = FlowNetwork::new(2);
    let (source, sink) = (0, 1);
    let mut kinds = vec![Node::Terminal, Node::Terminal];
    let mut layer_nodes: Vec<Vec<(Label, usize)>> = vec![Vec::new(); g.vertex_count()];
    for v in g.vertices() {
        let mut labels: Vec<Label> = g.incident(v).iter().map(|&e| tg.label(e)).collect();
        labels.sort_unstable();
        labels.dedup();
        for l in labels {
            let node = net.add_node();
            kinds.push(Node::Layer(v));
            layer_nodes[v.0].push((l, node));
        }
        for w in layer_nodes[v.0].windows(2) {
            net.add_arc(w[0].1, w[1].1, INF);
        }
    }
    let node_at = |v: VertexId, l: Label| -> usize {
        let list = &layer_nodes[v.0];
        list[list
            .binary_search_by_key(&l, |&(x, _)| x)
            .expect("layer exists")]
        .1
    };
    let mut gadget = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let l = tg.label(e.id);
        let a = node_at(e.ends[0], l);
        let b = node_at(e.ends[1], l);
        let x = net.add_node();
        kinds.push(Node::EdgeIn);
        let y = net.add_node();
        kinds.push(Node::EdgeOut(e.id));
        let arc = net.add_arc(x, y, 1);
        for end in [a, b] {
            net.add_arc(end, x, INF);
            net.add_arc(y, end, INF);
        }
        gadget.push((x, y, arc));
    }
    if let Some(&(_, first)) = layer_nodes[s.0].first() {
        net.add_arc(source, first, INF);
    }
    for &(_, node) in &layer_nodes[t.0] {
        net.add_arc(node, sink, INF);
    }
    let value = net.max_flow(source, sink, INF) as usize;

    let reach = net.residual_reach(source);
    let edge_cut: Vec<EdgeId> = g
        .edge_ids()
        .filter(|e| {
            let (x, y, _) = gadget[e.0];
            reach[x] && !reach[y]
        })
        .collect();

    let mut paths = Vec::new();
    for walk in net.take_unit_walks(source, sink) {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut pending: Option<EdgeId> = None;
        for &node in &walk {
            match kinds[node] {
                Node::Layer(v) => match pending.take() {
                    Some(e) if vertices.last() != Some(&v) => {
                        edges.push(e);
                        vertices.push(v);
                    }
                    Some(_) => {}
                    None if vertices.last() != Some(&v) => vertices.push(v),
                    None => {}
                },
                Node::EdgeOut(e) => pending = Some(e),
                Node::EdgeIn | Node::Terminal => {}
            }
        }
        let walk = validate_walk(tg, &vertices, &edges).expect("flow walks are temporal");
        paths.push(walk_to_path(tg, &walk));
    }
    paths.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(EdgeMengerReport {
        value,
        paths,
        edge_cut,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FalsifyMode {
    /// Every weak order of the edges, as labels in `1..=m`.
    Exhaustive,
    /// Labels drawn uniformly from `1..=m`.
    Randomized { samples: u64, seed: u64 },
}

/// A time-function and a non-adjacent pair with `p < c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub times: TimeFunction,
    pub s: VertexId,
    pub t: VertexId,
    pub p: usize,
    pub c: usize,
}

/// Looks for a time-function violating the temporal Menger equality. The
/// result is the first counterexample in enumeration order, independent of
/// the number of threads.
pub fn falsify_mengerian(
    g: &Multigraph,
    mode: FalsifyMode,
    limits: &OracleLimits,
) -> Result<Option<Counterexample>> {
    limits.check_vertices(g)?;
    let m = g.edge_count();
    let pairs: Vec<(VertexId, VertexId)> = g
        .vertices()
        .flat_map(|s| g.vertices().map(move |t| (s, t)))
        .filter(|&(s, t)| s != t && !g.adjacent(s, t))
        .collect();
    if m == 0 || pairs.is_empty() {
        return Ok(None);
    }
    match mode {
        FalsifyMode::Exhaustive => {
            if m > limits.max_edges {
                return Err(Error::SizeGuard {
                    what: "edge count for exhaustive falsification",
                    size: m,
                    limit: limits.max_edges,
                });
            }
            let total = (m as u64).checked_pow(m as u32).ok_or(Error::SizeGuard {
                what: "edge count for exhaustive falsification",
                size: m,
                limit: 15,
            })?;
            Ok((0..total).into_par_iter().find_map_first(|index| {
                let labels = decode_labeling(index, m);
                if !is_dense(&labels) {
                    return None;
                }
                check_labeling(g, labels, &pairs, limits)
            }))
        }
        FalsifyMode::Randomized { samples, seed } => {
            Ok((0..samples).into_par_iter().find_map_first(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let labels = (0..m).map(|_| rng.random_range(1..=m as Label)).collect();
                check_labeling(g, labels, &pairs, limits)
            }))
        }
    }
}

/// The `index`-th labeling in lexicographic order, first edge most
/// significant.
fn decode_labeling(mut index: u64, m: usize) -> Vec<Label> {
    let mut labels = vec![1; m];
    for slot in labels.iter_mut().rev() {
        *slot = 1 + index % m as u64;
        index /= m as u64;
    }
    labels
}

/// Whether the used labels are exactly `1..=k` for some `k`.
fn is_dense(labels: &[Label]) -> bool {
    let mut used = [false; 64];
    for &l in labels {
        used[l as usize] = true;
    }
    let k = labels.iter().copied().max().unwrap_or(0) as usize;
    used[1..=k].iter().all(|&u| u)
}

fn check_labeling(
    g: &Multigraph,
    labels: Vec<Label>,
    pairs: &[(VertexId, VertexId)],
    limits: &OracleLimits,
) -> Option<Counterexample> {
    let tg = TemporalGraph::from_labels(g.clone(), labels).expect("labels are positive");
    for &(s, t) in pairs {
        let (c, _) = min_vertex_cut(&tg, s, t, limits).ok()?;
        // p = c whenever c <= 1
        if c <= 1 {
            continue;
        }
        let (p, _) = max_disjoint_paths(&tg, s, t, limits).ok()?;
        if p < c {
            let (_, times) = tg.into_parts();
            return Some(Counterexample { times, s, t, p, c });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{Pattern, PatternId};

    fn labeled(id: PatternId) -> (TemporalGraph, VertexId, VertexId) {
        let p = Pattern::get(id);
        let tg = TemporalGraph::new(p.graph.clone(), p.bad_labeling.clone()).unwrap();
        (tg, p.source, p.target)
    }

    #[test]
    fn patterns_have_gap_one() {
        let limits = OracleLimits::default();
        for id in PatternId::ALL {
            let (tg, s, t) = labeled(id);
            assert_eq!(menger_gap(&tg, s, t, &limits).unwrap(), (1, 2, 1), "{id}");
        }
    }

    #[test]
    fn f1_has_cut_v_w() {
        let (tg, s, t) = labeled(PatternId::F1);
        let p = Pattern::get(PatternId::F1);
        let (c, cut) = min_vertex_cut(&tg, s, t, &OracleLimits::default()).unwrap();
        assert_eq!(c, 2);
        let mut blocked = vec![false; 6];
        for v in &cut {
            blocked[v.0] = true;
        }
        assert!(!reachable_avoiding(&tg, s, t, &blocked, &[]));
        let mut blocked = vec![false; 6];
        blocked[p.vertex("v").0] = true;
        blocked[p.vertex("w").0] = true;
        assert!(!reachable_avoiding(&tg, s, t, &blocked, &[]));
    }

    #[test]
    fn short_path() {
        let g = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let tg = TemporalGraph::from_labels(g, vec![1, 2]).unwrap();
        let limits = OracleLimits::default();
        let r = vertex_menger(&tg, VertexId(0), VertexId(2), &limits).unwrap();
        assert_eq!((r.p, r.c), (1, Some(1)));
        assert_eq!(r.cut.unwrap(), vec![VertexId(1)]);
        let rev = TemporalGraph::from_labels(tg.graph().clone(), vec![2, 1]).unwrap();
        assert_eq!(
            menger_gap(&rev, VertexId(0), VertexId(2), &limits).unwrap(),
            (0, 0, 0)
        );
    }

    #[test]
    fn adjacent_terminals() {
        let g = Multigraph::new(3, [(0, 2), (0, 2), (0, 1), (1, 2)]).unwrap();
        let tg = TemporalGraph::from_labels(g, vec![1, 1, 1, 1]).unwrap();
        let limits = OracleLimits::default();
        assert!(matches!(
            min_vertex_cut(&tg, VertexId(0), VertexId(2), &limits),
            Err(Error::AdjacentTerminals(..))
        ));
        let r = vertex_menger(&tg, VertexId(0), VertexId(2), &limits).unwrap();
        assert_eq!((r.p, r.c), (3, None));
    }

    #[test]
    fn f1_edge_menger() {
        let (tg, s, t) = labeled(PatternId::F1);
        let r = edge_menger(&tg, s, t).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.paths.len(), 2);
        assert_eq!(r.edge_cut.len(), 2);
        let mut used: Vec<EdgeId> = r.paths.iter().flat_map(|p| p.edges.clone()).collect();
        let len = used.len();
        used.sort();
        used.dedup();
        assert_eq!(used.len(), len);
        let (cut_graph, _) = tg.remove_edges(&r.edge_cut).unwrap();
        assert!(!reachable_avoiding(&cut_graph, s, t, &[], &[]));
    }

    #[test]
    fn guard_is_enforced() {
        let g = Multigraph::new(20, (0..19).map(|i| (i, i + 1))).unwrap();
        let tg = TemporalGraph::from_labels(g, vec![1; 19]).unwrap();
        assert!(matches!(
            max_disjoint_paths(&tg, VertexId(0), VertexId(19), &OracleLimits::default()),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn falsifier_on_small_graphs() {
        let limits = OracleLimits::default();
        let p3 = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(falsify_mengerian(&p3, FalsifyMode::Exhaustive, &limits)
            .unwrap()
            .is_none());
        let gem = &Pattern::get(PatternId::F3).graph;
        let found = falsify_mengerian(gem, FalsifyMode::Exhaustive, &limits)
            .unwrap()
            .unwrap();
        assert!(found.p < found.c);
        let a = falsify_mengerian(
            gem,
            FalsifyMode::Randomized {
                samples: 2000,
                seed: 7,
            },
            &limits,
        )
        .unwrap();
        let b = falsify_mengerian(
            gem,
            FalsifyMode::Randomized {
                samples: 2000,
                seed: 7,
            },
            &limits,
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(a.is_some());
    }

    #[test]
    fn exhaustive_guard() {
        let f1 = &Pattern::get(PatternId::F1).graph;
        assert!(matches!(
            falsify_mengerian(f1, FalsifyMode::Exhaustive, &OracleLimits::default()),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn dense_labelings() {
        assert!(is_dense(&[1, 2, 2, 3]));
        assert!(!is_dense(&[1, 3]));
        assert_eq!(decode_labeling(0, 3), vec![1, 1, 1]);
        assert_eq!(decode_labeling(5, 3), vec![1, 2, 3]);
    }
}
