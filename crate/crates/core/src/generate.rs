//! Seeded random graphs for experiments and tests.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexId};
use crate::patterns::{Pattern, PatternId};

/// `m` edges between uniformly chosen distinct endpoints, rejecting a pair
/// once it already has `max_mult` parallel edges.
pub fn random_multigraph(n: usize, m: usize, max_mult: usize, seed: u64) -> Result<Multigraph> {
    if max_mult == 0 && m > 0 {
        return Err(Error::Usage("max multiplicity must be positive".into()));
    }
    let capacity = n * n.saturating_sub(1) / 2 * max_mult;
    if m > capacity {
        return Err(Error::Usage(format!(
            "{m} edges do not fit on {n} vertices with multiplicity at most {max_mult}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = std::collections::HashMap::new();
    let mut pairs = Vec::with_capacity(m);
    while pairs.len() < m {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let c = count.entry(key).or_insert(0usize);
        if *c < max_mult {
            *c += 1;
            pairs.push(key);
        }
    }
    Multigraph::new(n, pairs)
}

/// A pattern after `ops` m-subdivisions of uniformly chosen adjacent pairs.
pub fn m_subdivided_pattern(id: PatternId, ops: usize, seed: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Pattern::get(id).graph.clone();
    for _ in 0..ops {
        let pairs: Vec<(VertexId, VertexId)> = g.simple_pairs();
        let &(u, v) = pairs.choose(&mut rng).expect("patterns have edges");
        g = g.m_subdivide(u, v).expect("pair is adjacent").graph;
    }
    g
}
