use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Permutation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlashburnParams {
    /// Fraction of the current giant component removed per round.
    pub hub_ratio: f64,
    /// Spoke components up to this size are ordered by degree instead of
    /// recursively.
    pub min_component: usize,
}

impl Default for SlashburnParams {
    fn default() -> Self {
        SlashburnParams {
            hub_ratio: 0.005,
            min_component: 16,
        }
    }
}

/// SlashBurn hub/spoke ordering.
///
/// # Panics
/// If `hub_ratio` is outside `(0, 0.5]`.
pub fn slashburn(g: &Graph, params: &SlashburnParams) -> Permutation {
    assert!(
        params.hub_ratio > 0.0 && params.hub_ratio <= 0.5,
        "hub_ratio must lie in (0, 0.5]"
    );
    let g = g.undirected();
    let n = g.n();
    let mut state = Burner {
        g: &g,
        params,
        alive: vec![true; n],
        degree: (0..n).map(|v| g.degree(v)).collect(),
        seen: vec![false; n],
    };
    let order = state.run((0..n).collect());
    Permutation::from_order(order).expect("every vertex is placed once")
}

struct Burner<'a> {
    g: &'a Graph,
    params: &'a SlashburnParams,
    alive: Vec<bool>,
    /// Degree among alive vertices.
    degree: Vec<usize>,
    seen: Vec<bool>,
}

impl Burner<'_> {
    /// Orders the alive vertex set `current`, killing it.
    fn run(&mut self, mut current: Vec<usize>) -> Vec<usize> {
        let mut front = Vec::with_capacity(current.len());
        // Spoke blocks in the order they claim positions from the back.
        let mut back: Vec<Vec<usize>> = Vec::new();
        loop {
            let k = libm::ceil(self.params.hub_ratio * current.len() as f64).max(1.0) as usize;
            if current.len() <= k {
                self.sort_by_degree(&mut current);
                self.kill(&current);
                front.extend(current);
                break;
            }
            let degree = &self.degree;
            let key = |&v: &usize| (usize::MAX - degree[v], v);
            current.select_nth_unstable_by_key(k - 1, key);
            let mut hubs = current[..k].to_vec();
            hubs.sort_unstable_by_key(key);
            self.kill(&hubs);
            front.extend(hubs);

            let mut comps = self.components(&current[k..]);
            // Giant: largest, then smallest first vertex.
            let giant = (0..comps.len())
                .min_by_key(|&c| (usize::MAX - comps[c].len(), comps[c][0]))
                .unwrap();
            let next = comps.swap_remove(giant);
            comps.sort_unstable_by_key(|c| (c.len(), c[0]));
            for comp in comps {
                let block = self.spoke(comp);
                back.push(block);
            }
            current = next;
        }
        for block in back.into_iter().rev() {
            front.extend(block);
        }
        front
    }

    fn spoke(&mut self, mut comp: Vec<usize>) -> Vec<usize> {
        if comp.len() > self.params.min_component {
            self.run(comp)
        } else {
            self.sort_by_degree(&mut comp);
            self.kill(&comp);
            comp
        }
    }

    fn sort_by_degree(&self, vs: &mut [usize]) {
        vs.sort_unstable_by_key(|&v| (usize::MAX - self.degree[v], v));
    }

    fn kill(&mut self, vs: &[usize]) {
        for &v in vs {
            self.alive[v] = false;
        }
        for &v in vs {
            for &u in self.g.neighbors(v) {
                if self.alive[u] {
                    self.degree[u] -= 1;
                }
            }
        }
    }

    /// Components of the alive vertices in `vs`, each listed from its
    /// smallest vertex in BFS order.
    fn components(&mut self, vs: &[usize]) -> Vec<Vec<usize>> {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        let mut comps = Vec::new();
        for &s in &sorted {
            if self.seen[s] {
                continue;
            }
            self.seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in self.g.neighbors(u) {
                    if self.alive[v] && !self.seen[v] {
                        self.seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comps.push(comp);
        }
        for &s in &sorted {
            self.seen[s] = false;
        }
        comps
    }
}
