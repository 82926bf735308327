use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

pub(crate) const UNREACHED: usize = usize::MAX;

/// Breadth-first search with buffers reused across calls.
pub(crate) struct Bfs {
    pub dist: Vec<usize>,
    pub order: Vec<usize>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Bfs {
            dist: vec![UNREACHED; n],
            order: Vec::new(),
        }
    }

    /// Levels from `start`; returns the eccentricity of `start`.
    pub fn run(&mut self, g: &Graph, start: usize) -> usize {
        self.clear();
        self.dist[start] = 0;
        self.order.push(start);
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            let du = self.dist[u];
            for &v in g.neighbors(u) {
                if self.dist[v] == UNREACHED {
                    self.dist[v] = du + 1;
                    self.order.push(v);
                }
            }
        }
        self.dist[*self.order.last().unwrap()]
    }

    fn clear(&mut self) {
        for &v in &self.order {
            self.dist[v] = UNREACHED;
        }
        self.order.clear();
    }
}

/// George-Liu pseudo-peripheral vertex search started at `start`.
///
/// Repeats BFS from the minimum-degree vertex (ties by id) of the last level
/// while the eccentricity grows. Leaves `bfs` holding the levels of the result.
pub(crate) fn pseudo_peripheral(g: &Graph, bfs: &mut Bfs, start: usize) -> usize {
    let mut root = start;
    let mut ecc = bfs.run(g, root);
    loop {
        let candidate = bfs
            .order
            .iter()
            .rev()
            .take_while(|&&v| bfs.dist[v] == ecc)
            .copied()
            .min_by_key(|&v| (g.degree(v), v))
            .unwrap();
        let next_ecc = bfs.run(g, candidate);
        if next_ecc > ecc {
            root = candidate;
            ecc = next_ecc;
        } else {
            bfs.run(g, root);
            return root;
        }
    }
}
