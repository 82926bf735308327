use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Permutation};
use crate::traversal::{pseudo_peripheral, Bfs};

/// Reverse Cuthill-McKee.
///
/// Each component is traversed breadth-first from a pseudo-peripheral vertex,
/// enqueueing children by ascending degree then id, and the visit order is
/// reversed. Components are concatenated largest first, so isolated vertices
/// trail in id order.
pub fn rcm(g: &Graph) -> Permutation {
    let g = g.undirected();
    let n = g.n();
    let mut bfs = Bfs::new(n);
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut children = Vec::new();
    for comp in g.connected_components().members() {
        let start = *comp.iter().min_by_key(|&&v| (g.degree(v), v)).unwrap();
        let root = pseudo_peripheral(&g, &mut bfs, start);
        let begin = order.len();
        visited[root] = true;
        order.push(root);
        let mut head = begin;
        while head < order.len() {
            let u = order[head];
            head += 1;
            children.clear();
            children.extend(g.neighbors(u).iter().copied().filter(|&v| !visited[v]));
            children.sort_unstable_by_key(|&v| (g.degree(v), v));
            for &v in &children {
                visited[v] = true;
                order.push(v);
            }
        }
        order[begin..].reverse();
    }
    Permutation::from_order(order).expect("every vertex is visited once")
}
