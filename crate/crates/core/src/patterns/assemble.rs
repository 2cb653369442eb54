//! Building F1 and F2 subdivisions around a fixed chain.

use std::collections::{BTreeSet, VecDeque};

use super::{certify, MEmbedding, PatternId};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::multigraph::{Chain, EdgeId, Multigraph, VertexId};

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Assembly(msg.into()))
}

fn check_chain(g: &Multigraph, chain: &Chain) -> Result<()> {
    if chain.vertices.len() < 2 {
        return fail("a chain needs at least two vertices");
    }
    let distinct: BTreeSet<_> = chain.vertices.iter().collect();
    if distinct.len() != chain.vertices.len() {
        return fail("chain repeats a vertex");
    }
    for (a, b) in chain.hops() {
        if !g.contains_vertex(a) || !g.contains_vertex(b) {
            return fail("chain leaves the graph");
        }
        if g.edges_between(a, b).len() < 2 {
            return fail(format!("chain hop {a}-{b} is not a multiedge"));
        }
    }
    Ok(())
}

fn check_walk(g: &Multigraph, vs: &[VertexId], closed: bool, name: &str) -> Result<()> {
    let min = if closed { 3 } else { 2 };
    if vs.len() < min {
        return fail(format!("{name} is too short"));
    }
    let distinct: BTreeSet<_> = vs.iter().collect();
    if distinct.len() != vs.len() {
        return fail(format!("{name} repeats a vertex"));
    }
    let mut pairs: Vec<(VertexId, VertexId)> = vs.windows(2).map(|w| (w[0], w[1])).collect();
    if closed {
        pairs.push((*vs.last().unwrap(), vs[0]));
    }
    for (a, b) in pairs {
        if !g.contains_vertex(a) || !g.contains_vertex(b) || !g.adjacent(a, b) {
            return fail(format!("{name} uses a non-edge {a}-{b}"));
        }
    }
    Ok(())
}

/// Collects hop pairs of the given walks and picks host edges: two parallel
/// edges on chain hops, one elsewhere.
struct EdgePicker<'a> {
    g: &'a Multigraph,
    chain_pairs: BTreeSet<(VertexId, VertexId)>,
    pairs: BTreeSet<(VertexId, VertexId)>,
}

impl<'a> EdgePicker<'a> {
    fn new(g: &'a Multigraph, chain: &Chain) -> Self {
        let chain_pairs: BTreeSet<_> = chain.hops().map(|(a, b)| (a.min(b), a.max(b))).collect();
        EdgePicker {
            g,
            pairs: chain_pairs.clone(),
            chain_pairs,
        }
    }

    fn pair(&mut self, a: VertexId, b: VertexId) {
        self.pairs.insert((a.min(b), a.max(b)));
    }

    fn path(&mut self, vs: &[VertexId]) {
        for w in vs.windows(2) {
            self.pair(w[0], w[1]);
        }
    }

    fn cycle(&mut self, vs: &[VertexId]) {
        self.path(vs);
        self.pair(*vs.last().unwrap(), vs[0]);
    }

    fn neighbors_of(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.pairs
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn edges(&self) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for &(a, b) in &self.pairs {
            let parallel = self.g.edges_between(a, b);
            let take = if self.chain_pairs.contains(&(a, b)) {
                2
            } else {
                1
            };
            out.extend(parallel.into_iter().take(take));
        }
        out
    }

    fn certify(&self, id: PatternId) -> Option<MEmbedding> {
        certify(self.g, &self.edges(), id)
    }
}

/// Joins a chain, two cycles through it and a path between the cycles into an
/// F1 subdivision. The cycles must share exactly the chain's vertices, the
/// path must avoid the chain, and for one chain end neither end of the path
/// may be adjacent to it in the union.
pub fn assemble_f1(
    g: &Multigraph,
    chain: &Chain,
    c1: &[VertexId],
    c2: &[VertexId],
    j: &[VertexId],
) -> Result<MEmbedding> {
    check_chain(g, chain)?;
    check_walk(g, c1, true, "C1")?;
    check_walk(g, c2, true, "C2")?;
    check_walk(g, j, false, "J")?;
    let s1: BTreeSet<VertexId> = c1.iter().copied().collect();
    let s2: BTreeSet<VertexId> = c2.iter().copied().collect();
    let sl: BTreeSet<VertexId> = chain.vertices.iter().copied().collect();
    if s1.intersection(&s2).copied().collect::<BTreeSet<_>>() != sl {
        return fail("the cycles must meet exactly in the chain vertices");
    }
    if j.iter().any(|v| sl.contains(v)) {
        return fail("J must avoid the chain");
    }
    let (w1, w2) = (j[0], *j.last().unwrap());
    let joins = (s1.contains(&w1) && s2.contains(&w2)) || (s2.contains(&w1) && s1.contains(&w2));
    if !joins {
        return fail("J must run from one cycle to the other");
    }
    if j[1..j.len() - 1]
        .iter()
        .any(|v| s1.contains(v) || s2.contains(v))
    {
        return fail("J must meet the cycles only at its ends");
    }
    let mut pick = EdgePicker::new(g, chain);
    pick.cycle(c1);
    pick.cycle(c2);
    pick.path(j);
    let free_end = [chain.first(), chain.last()].into_iter().any(|z| {
        let nz = pick.neighbors_of(z);
        !nz.contains(&w1) && !nz.contains(&w2)
    });
    if !free_end {
        return fail("both ends of J are adjacent to each chain end");
    }
    pick.certify(PatternId::F1)
        .ok_or_else(|| Error::Assembly("union is not an m-subdivision of F1".into()))
}

/// Joins a chain, a cycle at each chain end and a path between the cycles into
/// an F2 subdivision.
pub fn assemble_f2(
    g: &Multigraph,
    chain: &Chain,
    c0: &[VertexId],
    cq: &[VertexId],
    j: &[VertexId],
) -> Result<MEmbedding> {
    check_chain(g, chain)?;
    check_walk(g, c0, true, "C0")?;
    check_walk(g, cq, true, "Cq")?;
    check_walk(g, j, false, "J")?;
    let s0: BTreeSet<VertexId> = c0.iter().copied().collect();
    let sq: BTreeSet<VertexId> = cq.iter().copied().collect();
    let sl: BTreeSet<VertexId> = chain.vertices.iter().copied().collect();
    let meet0: BTreeSet<VertexId> = s0.intersection(&sl).copied().collect();
    let meetq: BTreeSet<VertexId> = sq.intersection(&sl).copied().collect();
    if meet0 != BTreeSet::from([chain.first()]) || meetq != BTreeSet::from([chain.last()]) {
        return fail("each cycle must meet the chain in exactly its own end");
    }
    if s0.intersection(&sq).next().is_some() {
        return fail("the cycles must be vertex-disjoint");
    }
    if j.iter().any(|v| sl.contains(v)) {
        return fail("J must avoid the chain");
    }
    let (w1, w2) = (j[0], *j.last().unwrap());
    let joins = (s0.contains(&w1) && sq.contains(&w2)) || (sq.contains(&w1) && s0.contains(&w2));
    if !joins {
        return fail("J must run from one cycle to the other");
    }
    if j[1..j.len() - 1]
        .iter()
        .any(|v| s0.contains(v) || sq.contains(v))
    {
        return fail("J must meet the cycles only at its ends");
    }
    let mut pick = EdgePicker::new(g, chain);
    pick.cycle(c0);
    pick.cycle(cq);
    pick.path(j);
    pick.certify(PatternId::F2)
        .ok_or_else(|| Error::Assembly("union is not an m-subdivision of F2".into()))
}

/// Exhaustive search for an F1 or F2 subdivision whose chain is exactly
/// `chain`.
///
/// Every such subdivision contains a path `P` outside the chain joining two
/// neighbours `x`, `y` of the same chain end `z`. For F1 the other chain end
/// reaches the interior of `P` by two disjoint legs; for F2 the other end
/// closes a cycle that is joined to `P` by a third path. Paths `P` are
/// enumerated depth-first; the remaining conditions are flow problems.
pub fn search_chain_patterns(g: &Multigraph, chain: &Chain) -> Option<MEmbedding> {
    check_chain(g, chain).ok()?;
    let n = g.vertex_count();
    let mut in_chain = vec![false; n];
    for &v in &chain.vertices {
        in_chain[v.0] = true;
    }
    let ends = [chain.first(), chain.last()];
    let mut side = [vec![false; n], vec![false; n]];
    for (k, &z) in ends.iter().enumerate() {
        for &x in g.neighbors(z) {
            if !in_chain[x.0] {
                side[k][x.0] = true;
            }
        }
    }
    let ctx = ChainSearch {
        g,
        chain,
        in_chain,
        side,
        ends,
    };
    let starts: Vec<VertexId> = g
        .vertices()
        .filter(|v| ctx.side[0][v.0] || ctx.side[1][v.0])
        .collect();
    let mut in_p = vec![false; n];
    for x in starts {
        let mut p = vec![x];
        in_p[x.0] = true;
        if let Some(emb) = ctx.extend(&mut p, &mut in_p) {
            return Some(emb);
        }
        in_p[x.0] = false;
    }
    None
}

struct ChainSearch<'a> {
    g: &'a Multigraph,
    chain: &'a Chain,
    in_chain: Vec<bool>,
    side: [Vec<bool>; 2],
    ends: [VertexId; 2],
}

impl ChainSearch<'_> {
    fn extend(&self, p: &mut Vec<VertexId>, in_p: &mut Vec<bool>) -> Option<MEmbedding> {
        let (x, y) = (p[0], *p.last().unwrap());
        if p.len() >= 2 {
            for k in 0..2 {
                if self.side[k][x.0] && self.side[k][y.0] {
                    if let Some(emb) = self.try_f1(k, p, in_p) {
                        return Some(emb);
                    }
                    if let Some(emb) = self.try_f2(k, p, in_p) {
                        return Some(emb);
                    }
                }
            }
        }
        if !self.can_reach_side(y, in_p) {
            return None;
        }
        for &w in self.g.neighbors(y) {
            if self.in_chain[w.0] || in_p[w.0] {
                continue;
            }
            p.push(w);
            in_p[w.0] = true;
            let found = self.extend(p, in_p);
            in_p[w.0] = false;
            p.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn can_reach_side(&self, from: VertexId, in_p: &[bool]) -> bool {
        let mut seen = vec![false; self.g.vertex_count()];
        seen[from.0] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in self.g.neighbors(v) {
                if seen[w.0] || in_p[w.0] || self.in_chain[w.0] {
                    continue;
                }
                if self.side[0][w.0] || self.side[1][w.0] {
                    return true;
                }
                seen[w.0] = true;
                queue.push_back(w);
            }
        }
        false
    }

    /// Vertex-split network over allowed vertices. Returns the network and
    /// the two extra terminal nodes' base index.
    fn split_network(&self, allowed: &[bool]) -> FlowNetwork {
        let n = self.g.vertex_count();
        let mut net = FlowNetwork::new(2 * n);
        for v in self.g.vertices() {
            if !allowed[v.0] {
                continue;
            }
            net.add_arc(2 * v.0, 2 * v.0 + 1, 1);
            for &w in self.g.neighbors(v) {
                if allowed[w.0] {
                    net.add_arc(2 * v.0 + 1, 2 * w.0, 1);
                }
            }
        }
        net
    }

    fn base_picker(&self, k: usize, p: &[VertexId]) -> EdgePicker<'_> {
        let mut pick = EdgePicker::new(self.g, self.chain);
        let z = self.ends[k];
        pick.pair(z, p[0]);
        pick.pair(z, *p.last().unwrap());
        pick.path(p);
        pick
    }

    fn try_f1(&self, k: usize, p: &[VertexId], in_p: &[bool]) -> Option<MEmbedding> {
        if p.len() < 4 {
            return None;
        }
        let o = 1 - k;
        let n = self.g.vertex_count();
        let mut allowed: Vec<bool> = (0..n).map(|v| !self.in_chain[v]).collect();
        allowed[p[0].0] = false;
        allowed[p.last().unwrap().0] = false;
        let mut net = self.split_network(&allowed);
        let src = net.add_node();
        let snk = net.add_node();
        for v in self.g.vertices() {
            if !allowed[v.0] {
                continue;
            }
            if self.side[o][v.0] {
                net.add_arc(src, 2 * v.0, 1);
            }
            if in_p[v.0] {
                net.add_arc(2 * v.0 + 1, snk, 1);
            }
        }
        if net.max_flow(src, snk, 2) < 2 {
            return None;
        }
        let mut pick = self.base_picker(k, p);
        for walk in net.take_unit_walks(src, snk) {
            let leg = vertex_path(&walk[1..walk.len() - 1]);
            let cut = leg.iter().position(|v| in_p[v.0]).unwrap();
            let leg = &leg[..=cut];
            pick.pair(self.ends[o], leg[0]);
            pick.path(leg);
        }
        pick.certify(PatternId::F1)
    }

    fn try_f2(&self, k: usize, p: &[VertexId], in_p: &[bool]) -> Option<MEmbedding> {
        let o = 1 - k;
        let n = self.g.vertex_count();
        let allowed: Vec<bool> = (0..n).map(|v| !self.in_chain[v] && !in_p[v]).collect();
        let touches_p: Vec<bool> = (0..n)
            .map(|v| allowed[v] && self.g.neighbors(VertexId(v)).iter().any(|w| in_p[w.0]))
            .collect();
        for r in self.g.vertices().filter(|r| allowed[r.0]) {
            let mut net = self.split_network(&allowed);
            let to_side = net.add_node();
            let to_p = net.add_node();
            let snk = net.add_node();
            net.add_arc(to_side, snk, 2);
            net.add_arc(to_p, snk, 1);
            for v in self.g.vertices().filter(|v| allowed[v.0]) {
                if self.side[o][v.0] {
                    net.add_arc(2 * v.0 + 1, to_side, 1);
                }
                if touches_p[v.0] {
                    net.add_arc(2 * v.0 + 1, to_p, 1);
                }
            }
            if net.max_flow(2 * r.0 + 1, snk, 3) < 3 {
                continue;
            }
            let mut pick = self.base_picker(k, p);
            for walk in net.take_unit_walks(2 * r.0 + 1, snk) {
                let last_hop = walk[walk.len() - 2];
                let body = vertex_path(&walk[..walk.len() - 2]);
                pick.path(&body);
                let end = *body.last().unwrap();
                if last_hop == to_side {
                    pick.pair(self.ends[o], end);
                } else {
                    let q = *self.g.neighbors(end).iter().find(|w| in_p[w.0]).unwrap();
                    pick.pair(end, q);
                }
            }
            if let Some(emb) = pick.certify(PatternId::F2) {
                return Some(emb);
            }
        }
        None
    }
}

/// Collapses split-node walks (`2v`, `2v + 1`) into vertex sequences.
fn vertex_path(nodes: &[usize]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = Vec::new();
    for &x in nodes {
        let v = VertexId(x / 2);
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{revalidate, Pattern};

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    // s0 u1 v2 w3 w'4 t5
    #[test]
    fn f1_from_its_own_parts() {
        let p = Pattern::get(PatternId::F1);
        let chain = p.chain().unwrap();
        let emb = assemble_f1(
            &p.graph,
            &chain,
            &ids(&[3, 0, 1, 4]),
            &ids(&[3, 5, 2, 4]),
            &ids(&[1, 2]),
        )
        .unwrap();
        revalidate(&p.graph, &emb).unwrap();
    }

    #[test]
    fn f1_rejects_j_through_chain() {
        let p = Pattern::get(PatternId::F1);
        let chain = p.chain().unwrap();
        let err = assemble_f1(
            &p.graph,
            &chain,
            &ids(&[3, 0, 1, 4]),
            &ids(&[3, 5, 2, 4]),
            &ids(&[1, 4]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Assembly(m) if m.contains("avoid the chain")));
    }

    #[test]
    fn f2_from_its_own_parts() {
        let p = Pattern::get(PatternId::F2);
        let chain = p.chain().unwrap();
        let emb = assemble_f2(
            &p.graph,
            &chain,
            &ids(&[3, 0, 1]),
            &ids(&[4, 2, 5]),
            &ids(&[1, 2]),
        )
        .unwrap();
        revalidate(&p.graph, &emb).unwrap();
    }

    #[test]
    fn f2_rejects_touching_cycles() {
        let p = Pattern::get(PatternId::F2);
        let chain = p.chain().unwrap();
        // second cycle borrows u
        let g = {
            let mut pairs: Vec<(usize, usize)> = p
                .graph
                .edges()
                .map(|e| (e.ends[0].0, e.ends[1].0))
                .collect();
            pairs.push((1, 4));
            Multigraph::new(6, pairs).unwrap()
        };
        let err = assemble_f2(
            &g,
            &chain,
            &ids(&[3, 0, 1]),
            &ids(&[4, 1, 2]),
            &ids(&[0, 1]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Assembly(_)));
    }

    #[test]
    fn exhaustive_search_finds_both_patterns() {
        for id in [PatternId::F1, PatternId::F2] {
            let p = Pattern::get(id);
            let emb = search_chain_patterns(&p.graph, &p.chain().unwrap()).unwrap();
            assert_eq!(emb.pattern, id);
            revalidate(&p.graph, &emb).unwrap();
        }
    }

    #[test]
    fn exhaustive_search_on_crossed_graph_is_empty() {
        let g = crate::patterns::crossed_graph();
        let chain = g.maximal_chains().remove(0);
        assert!(search_chain_patterns(&g, &chain).is_none());
    }
}
