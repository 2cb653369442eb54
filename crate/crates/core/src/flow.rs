//! A small Dinic max-flow on explicit arc lists.

use std::collections::VecDeque;

pub const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<i64>,
    initial: Vec<i64>,
}

const NIL: usize = usize::MAX;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: vec![NIL; nodes],
            to: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
            initial: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.head.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.head.push(NIL);
        self.head.len() - 1
    }

    /// Adds an arc and its residual twin; returns the forward arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.to.len();
        for (a, b, c) in [(from, to, cap), (to, from, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.initial.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
        id
    }

    pub fn head_of(&self, arc: usize) -> usize {
        self.to[arc]
    }

    pub fn tail_of(&self, arc: usize) -> usize {
        self.to[arc ^ 1]
    }

    /// Flow currently carried by a forward arc.
    pub fn flow(&self, arc: usize) -> i64 {
        self.initial[arc] - self.cap[arc]
    }

    /// Forward arcs leaving `node`.
    pub fn out_arcs(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        let mut arc = self.head[node];
        std::iter::from_fn(move || {
            while arc != NIL {
                let a = arc;
                arc = self.next[a];
                if a.is_multiple_of(2) {
                    return Some(a);
                }
            }
            None
        })
    }

    /// Augments from `s` to `t` until the flow reaches `limit` or is maximum.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let n = self.head.len();
        let mut total = 0;
        let mut level = vec![0usize; n];
        let mut iter = vec![NIL; n];
        while total < limit {
            level.iter_mut().for_each(|l| *l = usize::MAX);
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let mut a = self.head[v];
                while a != NIL {
                    let w = self.to[a];
                    if self.cap[a] > 0 && level[w] == usize::MAX {
                        level[w] = level[v] + 1;
                        queue.push_back(w);
                    }
                    a = self.next[a];
                }
            }
            if level[t] == usize::MAX {
                break;
            }
            iter.copy_from_slice(&self.head);
            loop {
                let pushed = self.augment(s, t, limit - total, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    fn augment(
        &mut self,
        s: usize,
        t: usize,
        want: i64,
        level: &[usize],
        iter: &mut [usize],
    ) -> i64 {
        // iterative DFS along the level graph
        let mut stack: Vec<usize> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let mut bottleneck = want;
                for &a in &stack {
                    bottleneck = bottleneck.min(self.cap[a]);
                }
                for &a in &stack {
                    self.cap[a] -= bottleneck;
                    self.cap[a ^ 1] += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while iter[v] != NIL {
                let a = iter[v];
                let w = self.to[a];
                if self.cap[a] > 0 && level[w] == level[v] + 1 {
                    stack.push(a);
                    v = w;
                    advanced = true;
                    break;
                }
                iter[v] = self.next[a];
            }
            if !advanced {
                match stack.pop() {
                    Some(a) => {
                        v = self.to[a ^ 1];
                        iter[v] = self.next[iter[v]];
                    }
                    None => return 0,
                }
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let mut a = self.head[v];
            while a != NIL {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
                a = self.next[a];
            }
        }
        seen
    }

    /// Splits the current flow into `s`–`t` walks of one unit each. Walks may
    /// revisit nodes when the flow contains cycles.
    pub fn take_unit_walks(&mut self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut carried: Vec<i64> = (0..self.to.len())
            .map(|a| if a.is_multiple_of(2) { self.flow(a) } else { 0 })
            .collect();
        let mut walks = Vec::new();
        loop {
            let mut walk = vec![s];
            let mut v = s;
            while v != t {
                let next = self.out_arcs(v).find(|&a| carried[a] > 0);
                match next {
                    Some(a) => {
                        carried[a] -= 1;
                        v = self.to[a];
                        walk.push(v);
                    }
                    None => break,
                }
            }
            if v != t {
                break;
            }
            walks.push(walk);
        }
        walks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_flow() {
        let mut f = FlowNetwork::new(4);
        f.add_arc(0, 1, 1);
        f.add_arc(0, 2, 1);
        f.add_arc(1, 3, 1);
        f.add_arc(2, 3, 1);
        f.add_arc(1, 2, 1);
        assert_eq!(f.max_flow(0, 3, INF), 2);
        let walks = f.take_unit_walks(0, 3);
        assert_eq!(walks.len(), 2);
        let reach = f.residual_reach(0);
        assert!(reach[0] && !reach[3]);
    }

    #[test]
    fn limit_stops_early() {
        let mut f = FlowNetwork::new(2);
        f.add_arc(0, 1, 5);
        assert_eq!(f.max_flow(0, 1, 3), 3);
    }
}
