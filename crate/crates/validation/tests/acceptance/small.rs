//! Connected graphs on at most nine vertices, one per isomorphism class.
//!
//! Graphs on `n` vertices are grown from all graphs on `n - 1` by adding a
//! vertex with every possible neighbourhood, and deduplicated by a canonical
//! code from colour refinement with individualisation.

use std::collections::BTreeSet;

/// Connected graphs on 1, 2, ... vertices (OEIS A001349).
pub const CONNECTED: [usize; 9] = [1, 1, 2, 6, 21, 112, 853, 11117, 261080];

const MAX: usize = 9;

type Adj = [u16; MAX];

fn pair(n: usize, a: usize, b: usize) -> usize {
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Ranks the colours, then splits classes by neighbour colour counts until
/// stable. Returns the number of classes.
fn refine(adj: &Adj, n: usize, col: &mut [u8; MAX]) -> usize {
    let rank = |col: &mut [u8; MAX], keys: &[u64]| {
        let mut sorted = keys.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for v in 0..n {
            col[v] = sorted.binary_search(&keys[v]).unwrap() as u8;
        }
        sorted.len()
    };
    let keys: Vec<u64> = col[..n].iter().map(|&c| c as u64).collect();
    let mut cells = rank(col, &keys);
    loop {
        let keys: Vec<u64> = (0..n)
            .map(|v| {
                let mut s = (col[v] as u64) << 40;
                let mut m = adj[v];
                while m != 0 {
                    s += 1 << (4 * col[m.trailing_zeros() as usize]);
                    m &= m - 1;
                }
                s
            })
            .collect();
        let next = rank(col, &keys);
        if next == cells {
            return cells;
        }
        cells = next;
    }
}

fn code(adj: &Adj, n: usize, col: &[u8; MAX]) -> u64 {
    let mut c = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 {
                let (a, b) = (col[u].min(col[v]) as usize, col[u].max(col[v]) as usize);
                c |= 1 << pair(n, a, b);
            }
        }
    }
    c
}

fn search(adj: &Adj, n: usize, mut col: [u8; MAX]) -> u64 {
    if refine(adj, n, &mut col) == n {
        return code(adj, n, &col);
    }
    let mut size = [0usize; MAX];
    for &c in &col[..n] {
        size[c as usize] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1).unwrap() as u8;
    let mut best = 0;
    for v in (0..n).filter(|&v| col[v] == target) {
        let mut split = col;
        for w in 0..n {
            split[w] = 2 * col[w] + u8::from(col[w] == target && w != v);
        }
        best = best.max(search(adj, n, split));
    }
    best
}

fn canonical(adj: &Adj, n: usize) -> u64 {
    search(adj, n, [0; MAX])
}

fn decode(c: u64, n: usize) -> Adj {
    let mut adj = [0u16; MAX];
    for a in 0..n {
        for b in a + 1..n {
            if c >> pair(n, a, b) & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }
    adj
}

fn connected(adj: &Adj, n: usize) -> bool {
    let all = (1u16 << n) - 1;
    let mut seen = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let mut next = 0;
        let mut m = frontier;
        while m != 0 {
            next |= adj[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & all == all
}

fn edges(adj: &Adj, n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| {
            (u + 1..n)
                .filter(move |&v| adj[u] >> v & 1 == 1)
                .map(move |v| (u, v))
        })
        .collect()
}

/// Entry `k` lists the connected graphs on `k + 1` vertices as edge lists.
pub fn connected_classes(max_n: usize) -> Vec<Vec<Vec<(usize, usize)>>> {
    assert!((1..=MAX).contains(&max_n));
    let mut out = vec![vec![Vec::new()]];
    let mut all: Vec<u64> = vec![0];
    for n in 2..=max_n {
        let mut next = BTreeSet::new();
        for &c in &all {
            let base = decode(c, n - 1);
            for s in 0u16..1 << (n - 1) {
                let mut adj = base;
                adj[n - 1] = s;
                for (u, row) in adj[..n - 1].iter_mut().enumerate() {
                    *row |= (s >> u & 1) << (n - 1);
                }
                if n == max_n && !connected(&adj, n) {
                    continue;
                }
                next.insert(canonical(&adj, n));
            }
        }
        all = next.into_iter().collect();
        out.push(
            all.iter()
                .map(|&c| decode(c, n))
                .filter(|adj| connected(adj, n))
                .map(|adj| edges(&adj, n))
                .collect(),
        );
    }
    out
}
