//! Dinic's maximum flow on integer capacities.

use std::collections::VecDeque;

pub type Capacity = i128;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: Capacity,
}

#[derive(Debug, Clone)]
pub struct Dinic {
    graph: Vec<Vec<Arc>>,
    level: Vec<usize>,
    iter: Vec<usize>,
}

impl Dinic {
    pub fn new(nodes: usize) -> Self {
        Dinic {
            graph: vec![Vec::new(); nodes],
            level: vec![usize::MAX; nodes],
            iter: vec![0; nodes],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: Capacity) {
        debug_assert!(cap >= 0);
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(Arc { to, rev: rev_from, cap });
        self.graph[to].push(Arc { to: from, rev: rev_to, cap: 0 });
    }

    fn bfs(&mut self, s: usize) {
        self.level.fill(usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for a in &self.graph[u] {
                if a.cap > 0 && self.level[a.to] == usize::MAX {
                    self.level[a.to] = self.level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: Capacity) -> Capacity {
        if u == t {
            return pushed;
        }
        while self.iter[u] < self.graph[u].len() {
            let i = self.iter[u];
            let Arc { to, rev, cap } = self.graph[u][i];
            if cap > 0 && self.level[u] < self.level[to] {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.graph[u][i].cap -= d;
                    self.graph[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Augments as much flow as possible from `s` to `t`.
    pub fn max_flow(&mut self, s: usize, t: usize) -> Capacity {
        let mut total = 0;
        loop {
            self.bfs(s);
            if self.level[t] == usize::MAX {
                return total;
            }
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, Capacity::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network: the source side of
    /// the minimum cut with the fewest nodes.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for a in &self.graph[u] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}
