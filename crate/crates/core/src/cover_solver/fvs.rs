//! Exact minimum feedback vertex set on multigraphs.
//!
//! Branch and bound over an instance with "kept" (undeletable) nodes:
//!
//! * a node with a self-loop must be deleted;
//! * nodes of degree at most one are dropped;
//! * a double edge with one kept endpoint forces the other endpoint;
//! * adjacent kept nodes are contracted;
//! * a degree-2 node is bypassed unless it is deletable and both neighbours are kept;
//! * branching is on a deletable node of maximum degree, delete first.
//!
//! Pruning uses the larger of a degree bound and a greedy packing of
//! vertex-disjoint short cycles.

use std::collections::{BTreeMap, VecDeque};

#[derive(Clone, Debug)]
pub(crate) struct Instance {
    adj: Vec<BTreeMap<usize, u32>>,
    loops: Vec<u32>,
    alive: Vec<bool>,
    keep: Vec<bool>,
}

struct Infeasible;

impl Instance {
    /// `edges` may contain parallel edges and self-loops.
    pub(crate) fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut inst = Self {
            adj: vec![BTreeMap::new(); n],
            loops: vec![0; n],
            alive: vec![true; n],
            keep: vec![false; n],
        };
        for &(a, b) in edges {
            inst.add_edge(a, b, 1);
        }
        inst
    }

    pub(crate) fn delete(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].keys().copied().collect();
        for w in nbrs {
            self.adj[w].remove(&v);
        }
        self.adj[v].clear();
        self.loops[v] = 0;
        self.alive[v] = false;
    }

    pub(crate) fn keep(&mut self, v: usize) {
        self.keep[v] = true;
    }

    fn add_edge(&mut self, a: usize, b: usize, mult: u32) {
        if a == b {
            self.loops[a] += mult;
        } else {
            *self.adj[a].entry(b).or_insert(0) += mult;
            *self.adj[b].entry(a).or_insert(0) += mult;
        }
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].values().sum::<u32>() + 2 * self.loops[v]
    }

    /// Merges `u` into its neighbour `v`; the edges between them disappear.
    fn contract(&mut self, u: usize, v: usize) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        let moved: Vec<(usize, u32)> = std::mem::take(&mut self.adj[u]).into_iter().collect();
        for (w, m) in moved {
            self.adj[w].remove(&u);
            self.add_edge(v, w, m);
        }
        self.loops[v] += self.loops[u];
        self.loops[u] = 0;
        self.alive[u] = false;
    }

    fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    /// Applies the reduction rules to a fixpoint, adding forced deletions to `taken`.
    fn reduce(&mut self, taken: &mut usize) -> Result<(), Infeasible> {
        loop {
            let mut changed = false;
            for v in 0..self.alive.len() {
                if !self.alive[v] {
                    continue;
                }
                if self.loops[v] > 0 {
                    if self.keep[v] {
                        return Err(Infeasible);
                    }
                    self.delete(v);
                    *taken += 1;
                    changed = true;
                    continue;
                }
                if self.degree(v) <= 1 {
                    self.delete(v);
                    changed = true;
                    continue;
                }
                if let Some((&w, _)) = self.adj[v].iter().find(|(&w, &m)| m >= 2 && (self.keep[v] || self.keep[w])) {
                    let forced = match (self.keep[v], self.keep[w]) {
                        (true, true) => return Err(Infeasible),
                        (true, false) => w,
                        _ => v,
                    };
                    self.delete(forced);
                    *taken += 1;
                    changed = true;
                    continue;
                }
                if self.keep[v] {
                    if let Some(&w) = self.adj[v].keys().find(|&&w| self.keep[w]) {
                        self.contract(w, v);
                        changed = true;
                        continue;
                    }
                }
                if self.degree(v) == 2 {
                    let nbrs: Vec<(usize, u32)> = self.adj[v].iter().map(|(&w, &m)| (w, m)).collect();
                    match nbrs.as_slice() {
                        // Double edge between deletable nodes: deleting the
                        // neighbour hits every cycle deleting `v` would.
                        [(u, 2)] => {
                            self.delete(*u);
                            *taken += 1;
                            changed = true;
                        }
                        [(a, 1), (b, 1)] if self.keep[v] || !self.keep[*a] || !self.keep[*b] => {
                            let (a, b) = (*a, *b);
                            self.delete(v);
                            self.add_edge(a, b, 1);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.alive.len()];
        let mut out = Vec::new();
        for s in self.live() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in self.adj[v].keys() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn restrict(&self, comp: &[usize]) -> Instance {
        let mut sub = self.clone();
        for v in 0..sub.alive.len() {
            sub.alive[v] = false;
        }
        for &v in comp {
            sub.alive[v] = true;
        }
        sub
    }

    fn lower_bound(&self) -> usize {
        self.degree_bound().max(self.packing_bound())
    }

    /// Deleting `S` must leave at most `n - |S| - 1` edges, so the deleted
    /// degrees must satisfy `sum(deg - 1) >= m - n + 1`.
    fn degree_bound(&self) -> usize {
        let n = self.live().count() as i64;
        let m = self.live().map(|v| self.degree(v) as i64).sum::<i64>() / 2;
        let need = m - n + 1;
        if need <= 0 {
            return 0;
        }
        let mut gains: Vec<i64> = self
            .live()
            .filter(|&v| !self.keep[v])
            .map(|v| self.degree(v) as i64 - 1)
            .collect();
        gains.sort_unstable_by(|a, b| b.cmp(a));
        let mut acc = 0;
        for (i, g) in gains.iter().enumerate() {
            acc += g;
            if acc >= need {
                return i + 1;
            }
        }
        gains.len()
    }

    /// Number of vertex-disjoint cycles found by repeatedly removing a shortest one.
    fn packing_bound(&self) -> usize {
        let mut removed: Vec<bool> = self.alive.iter().map(|&a| !a).collect();
        let mut count = 0;
        while let Some(cycle) = self.shortest_cycle(&removed) {
            for v in cycle {
                removed[v] = true;
            }
            count += 1;
        }
        count
    }

    fn shortest_cycle(&self, removed: &[bool]) -> Option<Vec<usize>> {
        for v in 0..self.alive.len() {
            if removed[v] {
                continue;
            }
            if let Some((&w, _)) = self.adj[v].iter().find(|(&w, &m)| m >= 2 && !removed[w]) {
                return Some(vec![v, w]);
            }
        }
        let n = self.alive.len();
        let mut best: Option<Vec<usize>> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if removed[root] {
                continue;
            }
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            let mut touched = vec![root];
            'bfs: while let Some(u) = queue.pop_front() {
                if let Some(b) = &best {
                    if 2 * dist[u] + 1 >= b.len() {
                        break;
                    }
                }
                for &w in self.adj[u].keys() {
                    if removed[w] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.as_ref().is_none_or(|b| len < b.len()) {
                            // Walk both branches back to their meeting point.
                            let mut path_u = vec![u];
                            let mut path_w = vec![w];
                            let (mut x, mut y) = (u, w);
                            while x != y {
                                if dist[x] >= dist[y] {
                                    x = parent[x];
                                    path_u.push(x);
                                } else {
                                    y = parent[y];
                                    path_w.push(y);
                                }
                            }
                            path_w.pop();
                            path_u.extend(path_w.into_iter().rev());
                            best = Some(path_u);
                        }
                        break 'bfs;
                    }
                }
            }
            for &t in &touched {
                parent[t] = usize::MAX;
            }
        }
        best
    }

    fn branch_node(&self) -> Option<usize> {
        self.live()
            .filter(|&v| !self.keep[v])
            .max_by_key(|&v| (self.degree(v), std::cmp::Reverse(v)))
    }
}

/// Minimum number of deletable nodes hitting every cycle, if at most `limit`.
pub(crate) fn solve(mut inst: Instance, limit: usize) -> Option<usize> {
    let mut taken = 0;
    inst.reduce(&mut taken).ok()?;
    let limit = limit.checked_sub(taken)?;
    let comps = inst.components();
    match comps.len() {
        0 => Some(taken),
        1 => solve_connected(inst, limit).map(|s| s + taken),
        _ => {
            let subs: Vec<Instance> = comps.iter().map(|c| inst.restrict(c)).collect();
            let bounds: Vec<usize> = subs.iter().map(Instance::lower_bound).collect();
            let mut total = 0;
            for (i, sub) in subs.into_iter().enumerate() {
                let rest: usize = bounds[i + 1..].iter().sum();
                let budget = limit.checked_sub(total + rest)?;
                total += solve_connected(sub, budget)?;
            }
            Some(taken + total)
        }
    }
}

fn solve_connected(inst: Instance, limit: usize) -> Option<usize> {
    if inst.lower_bound() > limit {
        return None;
    }
    let Some(x) = inst.branch_node() else {
        // Only kept nodes remain; after contraction they carry no cycle.
        return Some(0);
    };

    let mut best = None;
    if limit >= 1 {
        let mut with = inst.clone();
        with.delete(x);
        best = solve(with, limit - 1).map(|s| s + 1);
    }
    let rest = match best {
        Some(b) => b - 1,
        None => limit,
    };
    let mut without = inst;
    without.keep(x);
    if let Some(s) = solve(without, rest) {
        best = Some(s);
    }
    best
}

/// Lexicographically least minimum feedback vertex set of the multigraph on
/// nodes `0..n`.
pub(crate) fn lex_min_fvs(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let base = Instance::new(n, edges);
    let k = solve(base.clone(), n).expect("deleting every node always works");
    let mut chosen = Vec::with_capacity(k);
    let mut excluded = Vec::new();
    for x in 0..n {
        if chosen.len() == k {
            break;
        }
        let mut trial = base.clone();
        for &c in &chosen {
            trial.delete(c);
        }
        for &o in &excluded {
            trial.keep(o);
        }
        trial.delete(x);
        if solve(trial, k - chosen.len() - 1).is_some() {
            chosen.push(x);
        } else {
            excluded.push(x);
        }
    }
    chosen
}
