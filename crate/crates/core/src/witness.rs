//! Counterexample time-functions built from an embedded pattern.
//!
//! The pattern's bad labeling is copied onto every hop of the embedding, then
//! extended to the host so that no temporal `s,t`-path can leave the embedded
//! subgraph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::menger::{menger_gap, OracleLimits};
use crate::multigraph::{Multigraph, VertexId};
use crate::patterns::{revalidate, MEmbedding, Pattern, PatternId};
use crate::temporal::{Label, TemporalGraph, TimeFunction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub times: TimeFunction,
    pub s: VertexId,
    pub t: VertexId,
    pub claimed_p: usize,
    pub claimed_c: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verification {
    Verified { p: usize, c: usize },
    Mismatch { p: usize, c: usize },
    Skipped { reason: String },
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Verified { .. })
    }
}

/// The pattern's bad labeling with its terminals.
pub fn base_labeling(id: PatternId) -> (TimeFunction, VertexId, VertexId) {
    let p = Pattern::get(id);
    (p.bad_labeling.clone(), p.source, p.target)
}

/// Labels of the embedded subgraph, indexed by host edge id; `None` off the
/// embedding. Every hop of a segment receives the labels of the pattern's
/// parallel edges in the same order.
pub fn lift_labeling(
    g: &Multigraph,
    emb: &MEmbedding,
    base: &TimeFunction,
) -> Result<Vec<Option<Label>>> {
    revalidate(g, emb)?;
    let pattern = Pattern::get(emb.pattern);
    if base.len() != pattern.graph.edge_count() {
        return Err(Error::TimeFunctionSize {
            expected: pattern.graph.edge_count(),
            found: base.len(),
        });
    }
    let mut labels = vec![None; g.edge_count()];
    for seg in &emb.segments {
        for hop in &seg.hops {
            for (&host, &pe) in hop.iter().zip(&seg.pattern_edges) {
                labels[host.0] = Some(base.label(pe));
            }
        }
    }
    Ok(labels)
}

/// Extends a labeling of a subgraph `H` to the host: `H` edges are shifted up
/// by one, edges outside `H` at `t` get 1 and all others `max + 2`.
pub fn extend_to_host(g: &Multigraph, sub: &[Option<Label>], t: VertexId) -> Result<TimeFunction> {
    if sub.len() != g.edge_count() {
        return Err(Error::Contract(format!(
            "subgraph labeling covers {} edges, host has {}",
            sub.len(),
            g.edge_count()
        )));
    }
    if !g.contains_vertex(t) {
        return Err(Error::UnknownVertex(t));
    }
    let Some(max) = sub.iter().flatten().copied().max() else {
        return Err(Error::Contract("subgraph has no edges".into()));
    };
    if !g.incident(t).iter().any(|e| sub[e.0].is_some()) {
        return Err(Error::Contract(format!(
            "{t} is not a vertex of the subgraph"
        )));
    }
    let labels = g
        .edges()
        .map(|e| match sub[e.id.0] {
            Some(l) => l + 1,
            None if e.ends.contains(&t) => 1,
            None => max + 2,
        })
        .collect();
    TimeFunction::new(labels)
}

/// Composes the three steps on an embedding. Fails when the embedded
/// terminals are adjacent in the host, where no cut is defined.
pub fn make_witness(g: &Multigraph, emb: &MEmbedding) -> Result<Witness> {
    let (base, _, _) = base_labeling(emb.pattern);
    let (s, t) = (emb.source(), emb.target());
    if g.adjacent(s, t) {
        return Err(Error::AdjacentTerminals(s, t));
    }
    let sub = lift_labeling(g, emb, &base)?;
    let times = extend_to_host(g, &sub, t)?;
    Ok(Witness {
        times,
        s,
        t,
        claimed_p: 1,
        claimed_c: 2,
    })
}

/// Recomputes `p` and `c` with the exact oracles.
pub fn verify_witness(g: &Multigraph, w: &Witness, limits: &OracleLimits) -> Verification {
    let tg = match TemporalGraph::new(g.clone(), w.times.clone()) {
        Ok(tg) => tg,
        Err(e) => {
            return Verification::Skipped {
                reason: e.to_string(),
            }
        }
    };
    match menger_gap(&tg, w.s, w.t, limits) {
        Ok((p, c, _)) if p == w.claimed_p && c == w.claimed_c && p < c => {
            Verification::Verified { p, c }
        }
        Ok((p, c, _)) => Verification::Mismatch { p, c },
        Err(e) => Verification::Skipped {
            reason: e.to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::is_m_subdivision;

    fn identity(id: PatternId) -> (Multigraph, MEmbedding) {
        let g = Pattern::get(id).graph.clone();
        let emb = is_m_subdivision(&g, id).unwrap();
        (g, emb)
    }

    #[test]
    fn witnesses_on_patterns() {
        for id in PatternId::ALL {
            let (g, emb) = identity(id);
            let w = make_witness(&g, &emb).unwrap();
            let v = verify_witness(&g, &w, &OracleLimits::default());
            assert_eq!(v, Verification::Verified { p: 1, c: 2 }, "{id}");
        }
    }

    #[test]
    fn chain_subdivision_copies_labels() {
        let p = Pattern::get(PatternId::F1);
        let sub = p.graph.m_subdivide(p.vertex("w"), p.vertex("w'")).unwrap();
        let emb = is_m_subdivision(&sub.graph, PatternId::F1).unwrap();
        let labels = lift_labeling(&sub.graph, &emb, &p.bad_labeling).unwrap();
        let mut around: Vec<Label> = sub
            .graph
            .incident(sub.vertex)
            .iter()
            .map(|e| labels[e.0].unwrap())
            .collect();
        around.sort();
        assert_eq!(around, vec![3, 3, 6, 6]);
        let w = make_witness(&sub.graph, &emb).unwrap();
        assert!(verify_witness(&sub.graph, &w, &OracleLimits::default()).is_verified());
    }

    #[test]
    fn pendant_edge_at_t_gets_one() {
        let p = Pattern::get(PatternId::F1);
        let mut pairs: Vec<(usize, usize)> = p
            .graph
            .edges()
            .map(|e| (e.ends[0].0, e.ends[1].0))
            .collect();
        pairs.push((5, 6));
        let g = Multigraph::new(7, pairs).unwrap();
        let emb = is_m_subdivision(&p.graph, PatternId::F1).unwrap();
        let w = make_witness(&g, &emb).unwrap();
        assert_eq!(w.times.labels()[9], 1);
        assert_eq!(&w.times.labels()[..9], &[2, 3, 4, 5, 6, 7, 8, 9, 10]);
        assert!(verify_witness(&g, &w, &OracleLimits::default()).is_verified());
    }

    #[test]
    fn tampered_witness_fails() {
        let (g, emb) = identity(PatternId::F1);
        let mut w = make_witness(&g, &emb).unwrap();
        let mut labels = w.times.labels().to_vec();
        // the w-w' edge at 3 becomes late: s,u,w',w,t breaks and c drops
        labels[2] = 20;
        w.times = TimeFunction::new(labels).unwrap();
        assert!(!verify_witness(&g, &w, &OracleLimits::default()).is_verified());
    }

    #[test]
    fn adjacent_terminals_have_no_witness() {
        let p = Pattern::get(PatternId::F3);
        let mut pairs: Vec<(usize, usize)> = p
            .graph
            .edges()
            .map(|e| (e.ends[0].0, e.ends[1].0))
            .collect();
        pairs.push((0, 4));
        let g = Multigraph::new(5, pairs).unwrap();
        let emb = is_m_subdivision(&p.graph, PatternId::F3).unwrap();
        assert!(matches!(
            make_witness(&g, &emb),
            Err(Error::AdjacentTerminals(..))
        ));
    }

    #[test]
    fn extension_rejects_bad_input() {
        let (g, _) = identity(PatternId::F3);
        assert!(extend_to_host(&g, &[None; 7], VertexId(4)).is_err());
        assert!(extend_to_host(&g, &[Some(1); 3], VertexId(4)).is_err());
    }
}
