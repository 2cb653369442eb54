//! Case analysis around one chain: lift a gem of the identified graph back to
//! the host, then either read off F1/F2 or certify a crossed structure.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{
    assemble_f1, certify, find_f3_subdivision, find_gem_with_apex, search_chain_patterns,
    MEmbedding, PatternId,
};
use crate::error::{Error, Result};
use crate::multigraph::{Chain, EdgeId, Multigraph, Subgraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Crossing {
    OneCrossed,
    TwoCrossed,
}

/// A part linking two of the `h` vertices: the vertices of the components
/// attached exactly there, plus direct edges between the two attachments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub attachments: (VertexId, VertexId),
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Part {
    fn new(a: VertexId, b: VertexId) -> Self {
        Part {
            attachments: (a, b),
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn exists(&self) -> bool {
        !self.vertices.is_empty() || !self.edges.is_empty()
    }
}

/// `z0` is adjacent to `h1`, `h3`; `zq` to `h2`, `h4`. Parts `a1`, `a2`, `b2`
/// and the optional `b1` link `h1h2`, `h3h4`, `h2h3` and `h1h4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossedStructure {
    pub chain: Chain,
    pub h: [VertexId; 4],
    pub a1: Part,
    pub a2: Part,
    pub b2: Part,
    pub b1: Option<Part>,
    pub crossing: Crossing,
}

impl CrossedStructure {
    pub fn parts(&self) -> impl Iterator<Item = &Part> {
        [&self.a1, &self.a2, &self.b2]
            .into_iter()
            .chain(self.b1.as_ref())
    }

    /// Edge scan: every edge leaving a part ends at one of its attachments.
    pub fn verify(&self, g: &Multigraph) -> Result<()> {
        let mut owner = vec![usize::MAX; g.vertex_count()];
        for (i, part) in self.parts().enumerate() {
            for &v in &part.vertices {
                owner[v.0] = i;
            }
        }
        for (i, part) in self.parts().enumerate() {
            let (a, b) = part.attachments;
            for &v in &part.vertices {
                for &w in g.neighbors(v) {
                    if owner[w.0] != i && w != a && w != b {
                        return Err(Error::Contract(format!(
                            "vertex {v} of a part is adjacent to {w} outside its attachments"
                        )));
                    }
                }
            }
            for &e in &part.edges {
                let [x, y] = g.endpoints(e);
                if !((x, y) == (a, b) || (y, x) == (a, b)) {
                    return Err(Error::Contract(format!(
                        "edge {e} is not between {a} and {b}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lift_from(&self, sub: &Subgraph) -> CrossedStructure {
        let v = |x: VertexId| sub.vertex_origin[x.0];
        let part = |p: &Part| Part {
            attachments: (v(p.attachments.0), v(p.attachments.1)),
            vertices: p.vertices.iter().map(|&x| v(x)).collect(),
            edges: p.edges.iter().map(|&e| sub.edge_origin[e.0]).collect(),
        };
        CrossedStructure {
            chain: Chain {
                vertices: self.chain.vertices.iter().map(|&x| v(x)).collect(),
            },
            h: self.h.map(v),
            a1: part(&self.a1),
            a2: part(&self.a2),
            b2: part(&self.b2),
            b1: self.b1.as_ref().map(part),
            crossing: self.crossing,
        }
    }
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum ChainOutcome {
    /// An m-subdivision of a forbidden pattern.
    Pattern(MEmbedding),
    /// The graph has a crossed structure around this chain, so no F1 or F2
    /// subdivision uses it.
    Crossed(CrossedStructure),
    /// The identified graph has no gem through the merged vertex.
    NoGem,
    /// A gem exists after identification, but an exhaustive search found no
    /// F1 or F2 subdivision with this chain.
    NoPattern,
}

/// Analyses one maximal chain of a graph whose underlying simple graph has no
/// gem subdivision.
pub fn helpcrossed(g: &Multigraph, chain: &Chain) -> Result<ChainOutcome> {
    let n = g.vertex_count();
    if chain.vertices.len() < 2 {
        return Err(Error::Contract("chain needs two vertices".into()));
    }
    let mut in_chain = vec![false; n];
    for &v in &chain.vertices {
        if !g.contains_vertex(v) || in_chain[v.0] {
            return Err(Error::Contract(format!("chain vertex {v} is invalid")));
        }
        in_chain[v.0] = true;
    }
    for (a, b) in chain.hops() {
        if g.edges_between(a, b).len() < 2 {
            return Err(Error::Contract(format!(
                "chain hop {a}-{b} is not a multiedge"
            )));
        }
    }
    for &v in chain.internal() {
        if g.neighbors(v).len() != 2 {
            return Err(Error::Contract(format!(
                "internal chain vertex {v} has degree above 2"
            )));
        }
    }

    let ident = g.identify(&chain.vertices)?;
    let Some(gem) = find_gem_with_apex(&ident.graph, ident.merged) else {
        return Ok(ChainOutcome::NoGem);
    };
    let mut back = vec![VertexId(usize::MAX); ident.graph.vertex_count()];
    for v in g.vertices() {
        if !in_chain[v.0] {
            back[ident.vertex_map[v.0].0] = v;
        }
    }
    let lifted = LiftedGem::new(&gem, &back);
    let (z0, zq) = (chain.first(), chain.last());
    let options: Vec<Vec<usize>> = lifted
        .legs
        .iter()
        .map(|leg| {
            let u = leg[0];
            let mut o = Vec::new();
            if g.adjacent(z0, u) {
                o.push(0);
            }
            if g.adjacent(zq, u) {
                o.push(1);
            }
            o
        })
        .collect();

    let mut assignment = [0usize; 4];
    let mut combos = Vec::new();
    enumerate_sides(&options, 0, &mut assignment, &mut combos);

    for sides in combos {
        let count0 = sides.iter().filter(|&&s| s == 0).count();
        if count0 != 2 {
            if let Some(emb) = lifted.as_gem(g, chain, &sides) {
                return Ok(ChainOutcome::Pattern(emb));
            }
            continue;
        }
        let edges = lifted.hstar_edges(g, chain, &sides);
        for id in [PatternId::F1, PatternId::F2] {
            if let Some(emb) = certify(g, &edges, id) {
                return Ok(ChainOutcome::Pattern(emb));
            }
        }
        if sides[0] == sides[2] {
            match crossed_case(g, chain, &lifted, &sides) {
                Some(ChainOutcome::Pattern(emb)) => return Ok(ChainOutcome::Pattern(emb)),
                Some(ChainOutcome::Crossed(cs)) => return Ok(ChainOutcome::Crossed(cs)),
                _ => {}
            }
        }
    }
    Ok(match search_chain_patterns(g, chain) {
        Some(emb) => ChainOutcome::Pattern(emb),
        None => ChainOutcome::NoPattern,
    })
}

fn enumerate_sides(
    options: &[Vec<usize>],
    i: usize,
    cur: &mut [usize; 4],
    out: &mut Vec<[usize; 4]>,
) {
    if i == 4 {
        out.push(*cur);
        return;
    }
    for &s in &options[i] {
        cur[i] = s;
        enumerate_sides(options, i + 1, cur, out);
    }
}

/// A gem found with the merged vertex as apex, expressed in host ids.
struct LiftedGem {
    /// Spine from the first to the last landing.
    spine: Vec<VertexId>,
    /// For each landing in spine order, the leg from the apex neighbour to the
    /// landing.
    legs: Vec<Vec<VertexId>>,
    /// Spine index of each landing.
    pos: [usize; 4],
}

impl LiftedGem {
    fn new(gem: &MEmbedding, back: &[VertexId]) -> Self {
        let seg = |a: usize, b: usize| -> Vec<VertexId> {
            gem.segments
                .iter()
                .find(|s| s.ends == (VertexId(a), VertexId(b)))
                .expect("gem segment")
                .path
                .clone()
        };
        // pattern order s0 u1 v2 w3 t4, apex w
        let mut spine = seg(0, 1);
        spine.extend_from_slice(&seg(1, 2)[1..]);
        spine.extend_from_slice(&seg(2, 4)[1..]);
        let mut legs = Vec::new();
        for i in [0, 1, 2] {
            let mut p = seg(i, 3);
            p.reverse();
            legs.push(p[1..].to_vec());
        }
        legs.push(seg(3, 4)[1..].to_vec());
        let map = |p: &[VertexId]| p.iter().map(|v| back[v.0]).collect::<Vec<_>>();
        let spine = map(&spine);
        let legs: Vec<Vec<VertexId>> = legs.iter().map(|l| map(l)).collect();
        let mut pos = [0; 4];
        for (i, leg) in legs.iter().enumerate() {
            pos[i] = spine.iter().position(|v| v == leg.last().unwrap()).unwrap();
        }
        LiftedGem { spine, legs, pos }
    }

    fn landing(&self, i: usize) -> VertexId {
        self.spine[self.pos[i]]
    }

    fn common_edges(&self, g: &Multigraph, out: &mut Vec<EdgeId>) {
        for w in self.spine.windows(2) {
            out.push(g.edges_between(w[0], w[1])[0]);
        }
        for leg in &self.legs {
            for w in leg.windows(2) {
                out.push(g.edges_between(w[0], w[1])[0]);
            }
        }
    }

    fn hstar_edges(&self, g: &Multigraph, chain: &Chain, sides: &[usize; 4]) -> Vec<EdgeId> {
        let mut edges = Vec::new();
        for (a, b) in chain.hops() {
            edges.extend(g.edges_between(a, b).into_iter().take(2));
        }
        let ends = [chain.first(), chain.last()];
        for (leg, &s) in self.legs.iter().zip(sides) {
            edges.push(g.edges_between(ends[s], leg[0])[0]);
        }
        self.common_edges(g, &mut edges);
        edges
    }

    /// With at most one leg on some side the gem lifts to the host directly.
    fn as_gem(&self, g: &Multigraph, chain: &Chain, sides: &[usize; 4]) -> Option<MEmbedding> {
        let ends = [chain.first(), chain.last()];
        let count0 = sides.iter().filter(|&&s| s == 0).count();
        let apex_side = if count0 >= 3 { 0 } else { 1 };
        let mut edges = Vec::new();
        let mut route_chain = false;
        for (leg, &s) in self.legs.iter().zip(sides) {
            edges.push(g.edges_between(ends[s], leg[0])[0]);
            if s != apex_side {
                route_chain = true;
            }
        }
        if route_chain {
            for (a, b) in chain.hops() {
                edges.push(g.edges_between(a, b)[0]);
            }
        }
        self.common_edges(g, &mut edges);
        certify(g, &edges, PatternId::F3)
    }
}

fn crossed_case(
    g: &Multigraph,
    chain: &Chain,
    lifted: &LiftedGem,
    sides: &[usize; 4],
) -> Option<ChainOutcome> {
    // orient so that the first chain end carries legs 1 and 3
    let chain = if sides[0] == 0 {
        chain.clone()
    } else {
        chain.reversed()
    };
    let (z0, zq) = (chain.first(), chain.last());
    let h: Vec<VertexId> = (0..4).map(|i| lifted.landing(i)).collect();
    let u: Vec<VertexId> = lifted.legs.iter().map(|l| l[0]).collect();
    if u[1] != h[1] || u[2] != h[2] {
        return None;
    }
    let spine = &lifted.spine;
    let pos = lifted.pos;
    let n = g.vertex_count();

    let mut a1: BTreeSet<VertexId> = spine[pos[0]..pos[1]].iter().copied().collect();
    a1.extend(lifted.legs[0].iter().copied());
    let mut a2: BTreeSet<VertexId> = spine[pos[2] + 1..=pos[3]].iter().copied().collect();
    a2.extend(lifted.legs[3].iter().copied());
    let b: BTreeSet<VertexId> = spine[pos[1] + 1..pos[2]].iter().copied().collect();

    let mut in_h = vec![false; n];
    let mut pairs = BTreeSet::new();
    let mut add_path = |p: &[VertexId], in_h: &mut Vec<bool>| {
        for &v in p {
            in_h[v.0] = true;
        }
        for w in p.windows(2) {
            pairs.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    };
    add_path(&chain.vertices, &mut in_h);
    add_path(spine, &mut in_h);
    for (i, leg) in lifted.legs.iter().enumerate() {
        let z = if i == 0 || i == 2 { z0 } else { zq };
        let mut p = vec![z];
        p.extend(leg.iter().copied());
        add_path(&p, &mut in_h);
    }

    let chain_back: Vec<VertexId> = chain.vertices[1..chain.vertices.len() - 1]
        .iter()
        .rev()
        .copied()
        .collect();
    // C1 = z0, P1 (u1..h1), spine h1..h2, zq, chain back to z0
    let mut c1 = vec![z0];
    c1.extend(lifted.legs[0].iter().copied());
    c1.extend_from_slice(&spine[pos[0] + 1..=pos[1]]);
    c1.push(zq);
    c1.extend(chain_back.iter().copied());
    // C2 = z0, spine h3..h4, P4 reversed (h4..u4), zq, chain back
    let mut c2 = vec![z0];
    c2.extend_from_slice(&spine[pos[2]..=pos[3]]);
    c2.extend(lifted.legs[3].iter().rev().skip(1).copied());
    c2.push(zq);
    c2.extend(chain_back.iter().copied());

    let try_f1 = |j: &[VertexId]| assemble_f1(g, &chain, &c1, &c2, j).ok();

    // paths from B to the A parts leave through the spine towards h3 or h2
    for (part, toward) in [(&a1, pos[2]), (&a2, pos[1])] {
        if let Some(p) = external_path(g, &in_h, &pairs, part, &b) {
            let bend = *p.last().unwrap();
            let bi = spine.iter().position(|&v| v == bend).unwrap();
            let mut j = p.clone();
            if toward > bi {
                j.extend_from_slice(&spine[bi + 1..=toward]);
            } else {
                j.extend(spine[toward..bi].iter().rev().copied());
            }
            if let Some(emb) = try_f1(&j) {
                return Some(ChainOutcome::Pattern(emb));
            }
        }
    }
    let mut a1_inner = a1.clone();
    a1_inner.remove(&u[0]);
    let mut a2_inner = a2.clone();
    a2_inner.remove(&u[3]);
    for (from, to) in [(&a1_inner, &a2), (&a1, &a2_inner)] {
        if let Some(p) = external_path(g, &in_h, &pairs, from, to) {
            if let Some(emb) = try_f1(&p) {
                return Some(ChainOutcome::Pattern(emb));
            }
        }
    }

    validate_crossed(g, &chain, [u[0], h[1], h[2], u[3]]).map(ChainOutcome::Crossed)
}

/// Shortest path from `from` to `to` whose interior avoids the marked
/// vertices and which is not a single already used pair.
fn external_path(
    g: &Multigraph,
    in_h: &[bool],
    pairs: &BTreeSet<(VertexId, VertexId)>,
    from: &BTreeSet<VertexId>,
    to: &BTreeSet<VertexId>,
) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &s in from {
        for &w in g.neighbors(s) {
            if to.contains(&w) && !pairs.contains(&(s.min(w), s.max(w))) {
                return Some(vec![s, w]);
            }
        }
    }
    for &s in from {
        for &w in g.neighbors(s) {
            if !in_h[w.0] && parent[w.0] == usize::MAX {
                parent[w.0] = s.0;
                queue.push_back(w);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if to.contains(&w) {
                let mut path = vec![w, v];
                let mut cur = v.0;
                while !from.contains(&VertexId(parent[cur])) {
                    cur = parent[cur];
                    path.push(VertexId(cur));
                }
                path.push(VertexId(parent[cur]));
                path.reverse();
                return Some(path);
            }
            if !in_h[w.0] && parent[w.0] == usize::MAX {
                parent[w.0] = v.0;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Checks the global partition around the chain and the four `h` vertices.
fn validate_crossed(g: &Multigraph, chain: &Chain, h: [VertexId; 4]) -> Option<CrossedStructure> {
    let n = g.vertex_count();
    let mut sep = vec![false; n];
    for &v in &chain.vertices {
        sep[v.0] = true;
    }
    for &x in &h {
        if sep[x.0] {
            return None;
        }
        sep[x.0] = true;
    }
    let q = chain.vertices.len() - 1;
    let (z0, zq) = (chain.first(), chain.last());
    let end_ok = |z: VertexId, inner: VertexId, a: VertexId, b: VertexId| {
        let nb = g.neighbors(z);
        nb.contains(&a) && nb.contains(&b) && nb.iter().all(|&w| w == inner || w == a || w == b)
    };
    if !end_ok(z0, chain.vertices[1], h[0], h[2]) || !end_ok(zq, chain.vertices[q - 1], h[1], h[3])
    {
        return None;
    }

    let slots = [(0, 1), (2, 3), (1, 2), (0, 3)];
    let mut parts: Vec<Part> = slots.iter().map(|&(a, b)| Part::new(h[a], h[b])).collect();
    let slot_of = |x: usize, y: usize| {
        let (x, y) = (x.min(y), x.max(y));
        slots.iter().position(|&s| s == (x, y))
    };

    let mut comp = vec![usize::MAX; n];
    for start in g.vertices() {
        if sep[start.0] || comp[start.0] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        comp[start.0] = start.0;
        let mut attach = BTreeSet::new();
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            for &w in g.neighbors(v) {
                if let Some(k) = h.iter().position(|&x| x == w) {
                    attach.insert(k);
                } else if sep[w.0] {
                    return None;
                } else if comp[w.0] == usize::MAX {
                    comp[w.0] = start.0;
                    members.push(w);
                }
            }
            i += 1;
        }
        let attach: Vec<usize> = attach.into_iter().collect();
        if attach.len() != 2 {
            return None;
        }
        let slot = slot_of(attach[0], attach[1])?;
        parts[slot].vertices.extend(members);
    }
    for e in g.edges() {
        let [x, y] = e.ends;
        let (Some(i), Some(j)) = (
            h.iter().position(|&v| v == x),
            h.iter().position(|&v| v == y),
        ) else {
            continue;
        };
        let slot = slot_of(i, j)?;
        parts[slot].edges.push(e.id);
    }
    for p in &mut parts {
        p.vertices.sort_unstable();
    }
    let b1 = parts.pop().unwrap();
    let b2 = parts.pop().unwrap();
    let a2 = parts.pop().unwrap();
    let a1 = parts.pop().unwrap();
    if !a1.exists() || !a2.exists() || !b2.exists() {
        return None;
    }
    let (b1, crossing) = if b1.exists() {
        (Some(b1), Crossing::TwoCrossed)
    } else {
        (None, Crossing::OneCrossed)
    };
    Some(CrossedStructure {
        chain: chain.clone(),
        h,
        a1,
        a2,
        b2,
        b1,
        crossing,
    })
}

/// Crossed structures met while analysing every maximal chain of every block
/// that has no gem subdivision of its own.
pub fn find_crossed_structures(g: &Multigraph) -> Vec<CrossedStructure> {
    let mut out = Vec::new();
    for block in g.biconnected_components() {
        let b = &block.graph;
        if b.vertex_count() < 5 || find_f3_subdivision(b).is_some() {
            continue;
        }
        for chain in b.maximal_chains() {
            if let Ok(ChainOutcome::Crossed(cs)) = helpcrossed(b, &chain) {
                out.push(cs.lift_from(&block));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{crossed_graph, one_crossed_graph, revalidate, Pattern};

    #[test]
    fn f1_and_f2_classify_by_certification() {
        for id in [PatternId::F1, PatternId::F2] {
            let p = Pattern::get(id);
            let chain = p.chain().unwrap();
            match helpcrossed(&p.graph, &chain).unwrap() {
                ChainOutcome::Pattern(emb) => {
                    assert_eq!(emb.pattern, id);
                    revalidate(&p.graph, &emb).unwrap();
                }
                other => panic!("{id}: {other:?}"),
            }
        }
    }

    #[test]
    fn crossed_graph_yields_structure() {
        let g = crossed_graph();
        let chain = g.maximal_chains().remove(0);
        match helpcrossed(&g, &chain).unwrap() {
            ChainOutcome::Crossed(cs) => {
                assert_eq!(cs.crossing, Crossing::TwoCrossed);
                cs.verify(&g).unwrap();
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(find_crossed_structures(&g).len(), 1);
    }

    #[test]
    fn one_crossed_variant() {
        let g = one_crossed_graph();
        let chain = g.maximal_chains().remove(0);
        match helpcrossed(&g, &chain).unwrap() {
            ChainOutcome::Crossed(cs) => assert_eq!(cs.crossing, Crossing::OneCrossed),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn no_structures_in_f1_or_trees() {
        assert!(find_crossed_structures(&Pattern::get(PatternId::F1).graph).is_empty());
        let tree = Multigraph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(find_crossed_structures(&tree).is_empty());
    }

    #[test]
    fn bad_chain_is_a_contract_error() {
        let g = Pattern::get(PatternId::F1).graph.clone();
        let not_a_chain = Chain {
            vertices: vec![VertexId(0), VertexId(1)],
        };
        assert!(matches!(
            helpcrossed(&g, &not_a_chain),
            Err(Error::Contract(_))
        ));
    }
}
