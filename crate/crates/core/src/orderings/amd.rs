//! Approximate minimum degree on a quotient graph.
//!
//! Eliminated pivots become elements; each remaining variable keeps a list of
//! adjacent elements and a list of adjacent variables. Degrees are the
//! Amestoy-Davis-Duff upper bounds. Indistinguishable variables are merged into
//! supervariables found by hashing. Elements are absorbed only when adjacent
//! to the pivot (no aggressive absorption).
//!
//! The elimination sequence is then postordered along the assembly tree, which
//! keeps fill unchanged and makes every subtree contiguous.
//!
//! Degree buckets are LIFO lists: among variables of equal degree, the one
//! updated most recently is eliminated first, and within one update the
//! smallest id wins. Initially the smallest id wins. Rows denser than
//! `max(16, 10·√n)` are set aside and ordered last by ascending degree.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Permutation};

const NONE: usize = usize::MAX;

/// AMD ordering; position 0 is eliminated first.
pub fn amd(g: &Graph) -> Permutation {
    Permutation::from_order(amd_order(&g.undirected())).expect("elimination visits every vertex")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Variable,
    Element,
    /// Absorbed element, merged variable or eliminated member.
    Dead,
    Dense,
}

struct Buckets {
    head: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    degree: Vec<usize>,
    min: usize,
}

impl Buckets {
    fn new(n: usize) -> Self {
        Buckets {
            head: vec![NONE; n + 1],
            next: vec![NONE; n],
            prev: vec![NONE; n],
            degree: vec![0; n],
            min: n,
        }
    }

    fn push(&mut self, i: usize, d: usize) {
        self.degree[i] = d;
        let h = self.head[d];
        self.next[i] = h;
        self.prev[i] = NONE;
        if h != NONE {
            self.prev[h] = i;
        }
        self.head[d] = i;
        self.min = self.min.min(d);
    }

    fn remove(&mut self, i: usize) {
        let (p, nx) = (self.prev[i], self.next[i]);
        if p == NONE {
            self.head[self.degree[i]] = nx;
        } else {
            self.next[p] = nx;
        }
        if nx != NONE {
            self.prev[nx] = p;
        }
    }

    fn pop_min(&mut self) -> usize {
        while self.head[self.min] == NONE {
            self.min += 1;
        }
        let i = self.head[self.min];
        self.remove(i);
        i
    }
}

/// Elimination sequence of a symmetric graph.
pub(crate) fn amd_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let dense_above = 16usize.max((10.0 * libm::sqrt(n as f64)) as usize);
    let mut state = vec![State::Variable; n];
    let mut dense: Vec<usize> = (0..n).filter(|&v| g.degree(v) > dense_above).collect();
    for &v in &dense {
        state[v] = State::Dense;
    }
    let sparse = n - dense.len();

    let mut vars: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if state[v] == State::Dense {
                Vec::new()
            } else {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&u| state[u] != State::Dense)
                    .collect()
            }
        })
        .collect();
    let mut elems: Vec<Vec<usize>> = vec![Vec::new(); n];
    // Members of an element, or of a supervariable (its elimination group).
    let mut le: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut group: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut weight = vec![1usize; n];
    let mut elem_weight = vec![0usize; n];
    // Assembly tree: the pivot absorbing each element.
    let mut parent = vec![NONE; n];

    let mut buckets = Buckets::new(n);
    for v in (0..n).rev() {
        if state[v] == State::Variable {
            buckets.push(v, vars[v].len());
        }
    }

    let mut mark = vec![0usize; n];
    let mut stamp = 0usize;
    let mut w_mark = vec![0usize; n];
    let mut w = vec![0usize; n];
    let mut w_stamp = 0usize;
    let mut hash = vec![0usize; n];

    let mut pivots = Vec::new();
    let mut eliminated = 0usize;
    let mut lp: Vec<usize> = Vec::new();
    while eliminated < sparse {
        let p = buckets.pop_min();

        stamp += 1;
        mark[p] = stamp;
        lp.clear();
        for e in core::mem::take(&mut elems[p]) {
            if state[e] != State::Element {
                continue;
            }
            for &i in &le[e] {
                if state[i] == State::Variable && mark[i] != stamp {
                    mark[i] = stamp;
                    lp.push(i);
                }
            }
            state[e] = State::Dead;
            le[e] = Vec::new();
            parent[e] = p;
        }
        for i in core::mem::take(&mut vars[p]) {
            if state[i] == State::Variable && mark[i] != stamp {
                mark[i] = stamp;
                lp.push(i);
            }
        }
        lp.sort_unstable();
        state[p] = State::Element;
        pivots.push(p);
        eliminated += weight[p];
        let lp_weight: usize = lp.iter().map(|&i| weight[i]).sum();
        elem_weight[p] = lp_weight;

        for &i in &lp {
            buckets.remove(i);
        }

        // w[e] = |Le \ Lp| for every element adjacent to Lp.
        w_stamp += 1;
        for &i in &lp {
            for &e in &elems[i] {
                if state[e] != State::Element {
                    continue;
                }
                if w_mark[e] != w_stamp {
                    w_mark[e] = w_stamp;
                    w[e] = elem_weight[e];
                }
                w[e] -= weight[i];
            }
        }

        let remaining = sparse - eliminated;
        for &i in &lp {
            let list = &mut elems[i];
            list.retain(|&e| state[e] == State::Element);
            let external: usize = list.iter().map(|&e| w[e]).sum();
            list.push(p);
            vars[i].retain(|&j| state[j] == State::Variable && mark[j] != stamp);
            let adjacent: usize = vars[i].iter().map(|&j| weight[j]).sum();
            let outside_i = lp_weight - weight[i];
            let d = (buckets.degree[i] + outside_i)
                .min(adjacent + outside_i + external)
                .min(remaining - weight[i]);
            buckets.degree[i] = d;
            hash[i] = elems[i]
                .iter()
                .chain(&vars[i])
                .fold(0usize, |h, &x| h.wrapping_add(x));
        }

        merge_indistinguishable(
            &lp,
            &hash,
            &mut elems,
            &mut vars,
            &mut state,
            &mut weight,
            &mut group,
            &mut buckets.degree,
        );

        let mut members = Vec::with_capacity(lp.len());
        for &i in lp.iter().rev() {
            if state[i] == State::Variable {
                buckets.push(i, buckets.degree[i]);
                members.push(i);
            }
        }
        members.reverse();
        le[p] = members;
    }

    let mut order = postorder(&pivots, &parent, &mut group);
    dense.sort_unstable_by_key(|&v| (g.degree(v), v));
    order.extend(dense);
    order
}

/// Depth-first postorder of the assembly tree, expanding each pivot into its
/// supervariable. `pivots` is in elimination order. Children are visited by
/// descending subtree size, then id, and so are the roots.
fn postorder(pivots: &[usize], parent: &[usize], group: &mut [Vec<usize>]) -> Vec<usize> {
    let n = parent.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    let mut sorted = pivots.to_vec();
    sorted.sort_unstable();
    for &p in &sorted {
        match parent[p] {
            NONE => roots.push(p),
            q => children[q].push(p),
        }
    }
    let mut size = vec![0usize; n];
    for &p in pivots {
        size[p] += group[p].len();
        if parent[p] != NONE {
            let s = size[p];
            size[parent[p]] += s;
        }
    }
    for list in children.iter_mut().chain(core::iter::once(&mut roots)) {
        list.sort_by_key(|&c| (core::cmp::Reverse(size[c]), c));
    }
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for r in roots {
        stack.push((r, 0));
        while let Some(top) = stack.last_mut() {
            let (v, k) = *top;
            if let Some(&c) = children[v].get(k) {
                top.1 += 1;
                stack.push((c, 0));
            } else {
                stack.pop();
                order.append(&mut group[v]);
            }
        }
    }
    order
}

/// Merges variables of `lp` with identical element and variable lists.
#[allow(clippy::too_many_arguments)]
fn merge_indistinguishable(
    lp: &[usize],
    hash: &[usize],
    elems: &mut [Vec<usize>],
    vars: &mut [Vec<usize>],
    state: &mut [State],
    weight: &mut [usize],
    group: &mut [Vec<usize>],
    degree: &mut [usize],
) {
    let mut by_hash: Vec<usize> = lp.to_vec();
    by_hash.sort_unstable_by_key(|&i| (hash[i], i));
    let mut start = 0;
    while start < by_hash.len() {
        let mut end = start + 1;
        while end < by_hash.len() && hash[by_hash[end]] == hash[by_hash[start]] {
            end += 1;
        }
        if end - start > 1 {
            let run = &by_hash[start..end];
            for &i in run {
                elems[i].sort_unstable();
                vars[i].sort_unstable();
            }
            for (a, &i) in run.iter().enumerate() {
                if state[i] != State::Variable {
                    continue;
                }
                for &j in &run[a + 1..] {
                    if state[j] != State::Variable || elems[i] != elems[j] || vars[i] != vars[j] {
                        continue;
                    }
                    weight[i] += weight[j];
                    // j was counted in i's degree through the pivot element.
                    degree[i] -= weight[j];
                    weight[j] = 0;
                    state[j] = State::Dead;
                    let moved = core::mem::take(&mut group[j]);
                    group[i].extend(moved);
                    elems[j] = Vec::new();
                    vars[j] = Vec::new();
                }
            }
        }
        start = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn path_eliminates_from_the_ends() {
        let g = generators::conv1(6, 1).unwrap();
        let order = amd_order(&g);
        assert_eq!(order[0], 0);
        assert_eq!(order.len(), 6);
    }

    #[test]
    fn biclique_centers_last_and_contiguous() {
        let g = generators::biclique(500, 14.0).unwrap();
        let pi = amd(&g);
        let mut pos: Vec<usize> = (0..7).map(|c| pi.position(c)).collect();
        pos.sort_unstable();
        assert_eq!(pos, (493..500).collect::<Vec<_>>());
    }

    #[test]
    fn star_center_at_the_end() {
        // The last two vertices tie at degree 1; the center was updated last.
        let g = generators::biclique(20, 2.0).unwrap();
        let pi = amd(&g);
        assert_eq!(pi.position(0), 18);
        assert_eq!(pi.vertex_at(19), 19);
    }

    #[test]
    fn disconnected_and_isolated() {
        let g = Graph::from_undirected_edges(7, [(0, 1), (1, 2), (4, 5)]).unwrap();
        let pi = amd(&g);
        assert_eq!(pi.len(), 7);
    }
}
