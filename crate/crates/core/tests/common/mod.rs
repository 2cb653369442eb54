//! Brute-force oracles kept separate from the library algorithms.
#![allow(dead_code)]

use mengerian_core::multigraph::{Multigraph, VertexId};
use mengerian_core::temporal::TemporalGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Plain {
    pub n: usize,
    pub ends: Vec<(usize, usize)>,
    pub labels: Vec<u64>,
}

impl Plain {
    pub fn of(tg: &TemporalGraph) -> Self {
        let g = tg.graph();
        Plain {
            n: g.vertex_count(),
            ends: g.edges().map(|e| (e.ends[0].0, e.ends[1].0)).collect(),
            labels: g.edge_ids().map(|e| tg.label(e)).collect(),
        }
    }

    /// Relaxation to a fixpoint over all edges, independent of label order.
    pub fn reaches(&self, s: usize, t: usize, banned_v: u64, banned_e: u64) -> bool {
        if banned_v >> s & 1 == 1 || banned_v >> t & 1 == 1 {
            return false;
        }
        let mut arr = vec![u64::MAX; self.n];
        arr[s] = 0;
        loop {
            let mut changed = false;
            for (i, &(a, b)) in self.ends.iter().enumerate() {
                if banned_e >> i & 1 == 1 || banned_v >> a & 1 == 1 || banned_v >> b & 1 == 1 {
                    continue;
                }
                let l = self.labels[i];
                for (x, y) in [(a, b), (b, a)] {
                    if arr[x] <= l && l < arr[y] {
                        arr[y] = l;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        arr[t] != u64::MAX
    }

    /// Every temporal `s,t`-path, each parallel edge choice separately, as
    /// (vertex mask, edge mask, first edge).
    pub fn all_paths(&self, s: usize, t: usize) -> Vec<(u64, u64, usize)> {
        let mut out = Vec::new();
        self.extend(s, t, 0, 1 << s, 0, None, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        v: usize,
        t: usize,
        time: u64,
        verts: u64,
        edges: u64,
        first: Option<usize>,
        out: &mut Vec<(u64, u64, usize)>,
    ) {
        if v == t {
            out.push((verts, edges, first.unwrap()));
            return;
        }
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if verts >> w & 1 == 1 || self.labels[i] < time {
                continue;
            }
            self.extend(
                w,
                t,
                self.labels[i],
                verts | 1 << w,
                edges | 1 << i,
                first.or(Some(i)),
                out,
            );
        }
    }

    /// Maximum internally vertex-disjoint temporal paths.
    pub fn p(&self, s: usize, t: usize) -> usize {
        let ends = (1u64 << s) | (1u64 << t);
        let paths: Vec<u64> = self
            .all_paths(s, t)
            .into_iter()
            .map(|(v, _, _)| v & !ends)
            .collect();
        let direct = paths.iter().filter(|&&m| m == 0).count();
        let mut inner: Vec<u64> = paths.into_iter().filter(|&m| m != 0).collect();
        inner.sort_unstable();
        inner.dedup();
        direct + max_packing(&inner)
    }

    /// Maximum edge-disjoint temporal paths.
    pub fn p_edge(&self, s: usize, t: usize) -> usize {
        let mut sets: Vec<u64> = self
            .all_paths(s, t)
            .into_iter()
            .map(|(_, e, _)| e)
            .collect();
        sets.sort_unstable();
        sets.dedup();
        max_packing(&sets)
    }

    /// Minimum temporal vertex cut over all subsets of `V - {s, t}`.
    pub fn c(&self, s: usize, t: usize) -> usize {
        let others: Vec<usize> = (0..self.n).filter(|&v| v != s && v != t).collect();
        (0u64..1 << others.len())
            .filter(|mask| {
                let banned = others
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |b, (_, &v)| b | 1 << v);
                !self.reaches(s, t, banned, 0)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    /// Minimum temporal edge cut over all edge subsets.
    pub fn c_edge(&self, s: usize, t: usize) -> usize {
        let m = self.ends.len();
        (0u64..1 << m)
            .filter(|&mask| !self.reaches(s, t, 0, mask))
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }
}

/// Largest number of pairwise disjoint masks. Branches on the lowest bit
/// of the first set: some set holding it is taken, or none is.
pub fn max_packing(sets: &[u64]) -> usize {
    fn go(sets: &[u64], count: usize, best: &mut usize) {
        *best = (*best).max(count);
        if sets.is_empty() || count + sets.len() <= *best {
            return;
        }
        let x = sets[0] & sets[0].wrapping_neg();
        for &s in sets.iter().filter(|&&s| s & x != 0) {
            let rest: Vec<u64> = sets.iter().copied().filter(|&r| r & s == 0).collect();
            go(&rest, count + 1, best);
        }
        let rest: Vec<u64> = sets.iter().copied().filter(|&r| r & x == 0).collect();
        go(&rest, count, best);
    }
    let mut best = 0;
    go(sets, 0, &mut best);
    best
}

/// Whether the simple graph has a gem subdivision: every injective placement
/// of the five branch vertices, then every routing of the seven edges.
pub fn has_gem_subdivision(g: &Multigraph) -> bool {
    const GEM: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)];
    let n = g.vertex_count();
    let adj: Vec<u64> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w.0))
        .collect();
    fn route(adj: &[u64], map: &[usize; 5], k: usize, used: u64) -> bool {
        if k == GEM.len() {
            return true;
        }
        let (a, b) = (map[GEM[k].0], map[GEM[k].1]);
        walk(adj, map, k, a, b, used)
    }
    fn walk(adj: &[u64], map: &[usize; 5], k: usize, v: usize, target: usize, used: u64) -> bool {
        if adj[v] >> target & 1 == 1 && route(adj, map, k + 1, used) {
            return true;
        }
        let mut free = adj[v] & !used;
        while free != 0 {
            let w = free.trailing_zeros() as usize;
            free &= free - 1;
            if walk(adj, map, k, w, target, used | 1 << w) {
                return true;
            }
        }
        false
    }
    let deg = |v: usize| adj[v].count_ones();
    let mut map = [0usize; 5];
    fn place(
        adj: &[u64],
        n: usize,
        deg: &dyn Fn(usize) -> u32,
        map: &mut [usize; 5],
        i: usize,
        used: u64,
    ) -> bool {
        const NEED: [u32; 5] = [2, 3, 3, 2, 4];
        if i == 5 {
            return route(adj, map, 0, used);
        }
        for v in 0..n {
            if used >> v & 1 == 0 && deg(v) >= NEED[i] {
                map[i] = v;
                if place(adj, n, deg, map, i + 1, used | 1 << v) {
                    return true;
                }
            }
        }
        false
    }
    place(&adj, n, &deg, &mut map, 0, 0)
}

/// Random multigraph with labels in `1..=m`.
pub fn random_temporal(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_m: usize,
    max_mult: usize,
) -> TemporalGraph {
    let n = rng.random_range(2..=max_n);
    let m = rng.random_range(1..=max_m);
    let mut pairs = Vec::new();
    let mut tries = 0;
    while pairs.len() < m && tries < 1000 {
        tries += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let key = (a.min(b), a.max(b));
        if a != b && pairs.iter().filter(|&&p| p == key).count() < max_mult {
            pairs.push(key);
        }
    }
    let labels = (0..pairs.len())
        .map(|_| rng.random_range(1..=pairs.len() as u64))
        .collect();
    TemporalGraph::from_labels(Multigraph::new(n, pairs).unwrap(), labels).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected multigraphs with at most `max_n` vertices and `max_m` edges, one
/// per isomorphism class.
pub fn connected_multigraphs(max_n: usize, max_m: usize) -> Vec<Multigraph> {
    let mut out = vec![Multigraph::empty(1)];
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let perms = permutations(n);
        let mut seen = std::collections::HashSet::new();
        for m in n - 1..=max_m {
            let mut idx = vec![0usize; m];
            loop {
                let edges: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
                if spanning_connected(n, &edges) {
                    let canon = perms
                        .iter()
                        .map(|p| {
                            let mut e: Vec<(usize, usize)> = edges
                                .iter()
                                .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                                .collect();
                            e.sort_unstable();
                            e
                        })
                        .min()
                        .unwrap();
                    if seen.insert(canon.clone()) {
                        out.push(Multigraph::new(n, canon).unwrap());
                    }
                }
                if !next_multiset(&mut idx, pairs.len()) {
                    break;
                }
            }
        }
    }
    out
}

/// Next non-decreasing index sequence over `0..k`.
fn next_multiset(idx: &mut [usize], k: usize) -> bool {
    for i in (0..idx.len()).rev() {
        if idx[i] + 1 < k {
            idx[i] += 1;
            for j in i + 1..idx.len() {
                idx[j] = idx[i];
            }
            return true;
        }
    }
    false
}

fn spanning_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let r = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == r)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn v(i: usize) -> VertexId {
    VertexId(i)
}
