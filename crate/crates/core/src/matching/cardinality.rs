//! Edmonds' blossom algorithm for maximum-cardinality matching, O(V³).

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

struct Search<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search<'_> {
    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, stem: usize, mut child: usize) {
        while self.base[v] != stem {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Returns the free endpoint of an augmenting path from `root`, if any.
    fn augmenting_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for k in 0..self.adj[v].len() {
                let to = self.adj[v][k];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let stem = self.lowest_common_base(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, stem, to);
                    self.mark_path(to, stem, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = stem;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        NONE
    }
}

/// Maximum-cardinality matching of a 0-based adjacency list; returns mates.
pub(crate) fn maximum_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut search = Search {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    // greedy warm start
    for v in 0..n {
        if search.mate[v] == NONE {
            if let Some(&u) = adj[v].iter().find(|&&u| search.mate[u] == NONE) {
                search.mate[v] = u;
                search.mate[u] = v;
            }
        }
    }
    for root in 0..n {
        if search.mate[root] != NONE {
            continue;
        }
        let mut v = search.augmenting_path(root);
        while v != NONE {
            let pv = search.parent[v];
            let ppv = search.mate[pv];
            search.mate[v] = pv;
            search.mate[pv] = v;
            v = ppv;
        }
    }
    search
        .mate
        .into_iter()
        .map(|m| (m != NONE).then_some(m))
        .collect()
}

/// Size of a maximum matching.
pub(crate) fn maximum_matching_size(adj: &[Vec<usize>]) -> usize {
    maximum_matching(adj).iter().filter(|m| m.is_some()).count() / 2
}
