//! Matrix Market, edge-list and permutation files.

use std::io::{self, BufRead, Write};

use graphorder_core::{Graph, GraphError, Permutation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: index {index} outside 1..={bound}")]
    OutOfBounds {
        line: usize,
        index: i64,
        bound: usize,
    },
    #[error("empty input")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn malformed(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        msg: msg.into(),
    }
}

/// Non-comment lines with their 1-based line numbers.
struct Lines<R> {
    inner: io::Lines<R>,
    number: usize,
    comment: char,
}

impl<R: BufRead> Iterator for Lines<R> {
    type Item = Result<(usize, String), FormatError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = match self.inner.next()? {
                Ok(l) => l,
                Err(e) => return Some(Err(e.into())),
            };
            self.number += 1;
            let t = line.trim();
            if !t.is_empty() && !t.starts_with(self.comment) {
                return Some(Ok((self.number, t.to_string())));
            }
        }
    }
}

fn parse_index(tok: Option<&str>, line: usize) -> Result<i64, FormatError> {
    let tok = tok.ok_or_else(|| malformed(line, "missing index"))?;
    tok.parse()
        .map_err(|_| malformed(line, format!("not an integer: {tok:?}")))
}

/// Reads a Matrix Market coordinate file. Values are discarded, self-loops
/// dropped, and `symmetric` / `skew-symmetric` files are mirrored.
pub fn load_matrix_market<R: BufRead>(reader: R) -> Result<Graph, FormatError> {
    let mut raw = reader.lines();
    let header = match raw.next() {
        None => return Err(FormatError::Empty),
        Some(h) => h?,
    };
    let words: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(malformed(1, "expected a %%MatrixMarket matrix header"));
    }
    if words[2] != "coordinate" {
        return Err(malformed(1, "only the coordinate format is supported"));
    }
    if !matches!(words[3].as_str(), "pattern" | "integer" | "real") {
        return Err(malformed(1, format!("unsupported field {:?}", words[3])));
    }
    let mirror = match words[4].as_str() {
        "general" => false,
        "symmetric" | "skew-symmetric" => true,
        other => return Err(malformed(1, format!("unsupported symmetry {other:?}"))),
    };

    let mut lines = Lines {
        inner: raw,
        number: 1,
        comment: '%',
    };
    let (size_line, size) = lines
        .next()
        .ok_or_else(|| malformed(1, "missing size line"))??;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| malformed(size_line, "bad size line")))
        .collect::<Result<_, _>>()?;
    let &[rows, cols, entries] = dims.as_slice() else {
        return Err(malformed(
            size_line,
            "size line needs rows, columns and entries",
        ));
    };
    if rows != cols {
        return Err(malformed(size_line, "matrix is not square"));
    }
    let n = rows;
    let mut edges = Vec::with_capacity(if mirror { 2 * entries } else { entries });
    let mut seen = 0;
    for item in lines {
        let (line, text) = item?;
        let mut toks = text.split_whitespace();
        let i = parse_index(toks.next(), line)?;
        let j = parse_index(toks.next(), line)?;
        let index = |x: i64| {
            if x < 1 || x as u64 > n as u64 {
                Err(FormatError::OutOfBounds {
                    line,
                    index: x,
                    bound: n,
                })
            } else {
                Ok(x as usize - 1)
            }
        };
        let (u, v) = (index(i)?, index(j)?);
        edges.push((u, v));
        if mirror {
            edges.push((v, u));
        }
        seen += 1;
    }
    if seen != entries {
        return Err(malformed(
            0,
            format!("header declares {entries} entries, found {seen}"),
        ));
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Writes a pattern file; symmetric graphs store their lower triangle.
pub fn write_matrix_market<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    let symmetric = g.is_symmetric();
    let kind = if symmetric { "symmetric" } else { "general" };
    writeln!(w, "%%MatrixMarket matrix coordinate pattern {kind}")?;
    let entries: Vec<(usize, usize)> = g.entries().filter(|&(u, v)| !symmetric || u > v).collect();
    writeln!(w, "{} {} {}", g.n(), g.n(), entries.len())?;
    for (u, v) in entries {
        writeln!(w, "{} {}", u + 1, v + 1)?;
    }
    w.flush()
}

/// Reads whitespace-separated pairs, one per line, `#` starting a comment.
/// Tokens after the pair are ignored. `n` is one past the largest id.
pub fn load_edge_list<R: BufRead>(
    reader: R,
    zero_based: bool,
    symmetrize: bool,
) -> Result<Graph, FormatError> {
    let lines = Lines {
        inner: reader.lines(),
        number: 0,
        comment: '#',
    };
    let mut edges = Vec::new();
    let mut n = 0;
    for item in lines {
        let (line, text) = item?;
        let mut toks = text.split_whitespace();
        let mut id = |tok| -> Result<usize, FormatError> {
            let x = parse_index(tok, line)?;
            let x = if zero_based { x } else { x - 1 };
            if x < 0 {
                return Err(malformed(line, "negative index"));
            }
            let x = x as usize;
            n = n.max(x + 1);
            Ok(x)
        };
        let u = id(toks.next())?;
        let v = id(toks.next())?;
        edges.push((u, v));
    }
    let g = Graph::from_edges(n, edges)?;
    Ok(if symmetrize { g.symmetrize() } else { g })
}

/// Writes one 0-based edge per line.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    for (u, v) in g.entries() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}

/// Reads a permutation file: line `i` holds `forward[i]`, the position of
/// vertex `i`.
pub fn read_permutation<R: BufRead>(reader: R) -> Result<Permutation, FormatError> {
    let lines = Lines {
        inner: reader.lines(),
        number: 0,
        comment: '#',
    };
    let mut forward = Vec::new();
    for item in lines {
        let (line, text) = item?;
        let p = text
            .parse::<usize>()
            .map_err(|_| malformed(line, format!("not a position: {text:?}")))?;
        forward.push(p);
    }
    Ok(Permutation::from_forward(forward)?)
}

pub fn write_permutation<W: Write>(pi: &Permutation, mut w: W) -> io::Result<()> {
    for p in pi.forward() {
        writeln!(w, "{p}")?;
    }
    w.flush()
}
