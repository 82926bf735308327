//! Gap encoding of permuted adjacency lists.
//!
//! Layout: 4 magic bytes, `n` and `m` as little-endian `u64`, then one record
//! per row in new-index order. In the default Elias-γ stream (magic `VGC1`) a
//! record is `γ(d+1)`, and for `d > 0` also `γ(first+1)` followed by `γ(gap)`
//! for each later neighbor. Codes are written most significant bit first and
//! the stream is zero-padded to a byte boundary at the end only.
//!
//! `γ(x)` for `x ≥ 1` is `⌊log₂x⌋` zeros followed by the `⌊log₂x⌋+1` bits of `x`.
//!
//! The byte-aligned variant (magic `VGV1`) stores `d`, `first` and each gap as
//! LEB128 varints.

use alloc::vec::Vec;

use crate::error::{CodecError, GraphError};
use crate::graph::{Graph, Permutation};

pub const GAMMA_MAGIC: [u8; 4] = *b"VGC1";
pub const VARINT_MAGIC: [u8; 4] = *b"VGV1";
pub const HEADER_BYTES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Code {
    #[default]
    Gamma,
    Varint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedGraph {
    pub n: u64,
    pub m: u64,
    pub code: Code,
    /// Payload length before padding.
    pub payload_bits: u64,
    /// The whole stream, header included.
    pub bytes: Vec<u8>,
}

/// Elias-γ length of `x ≥ 1`.
#[inline]
pub fn gamma_len(x: u64) -> u64 {
    2 * u64::from(63 - x.leading_zeros()) + 1
}

struct BitWriter {
    bytes: Vec<u8>,
    acc: u64,
    filled: u32,
    bits: u64,
}

impl BitWriter {
    fn new(bytes: Vec<u8>) -> Self {
        BitWriter {
            bytes,
            acc: 0,
            filled: 0,
            bits: 0,
        }
    }

    /// Appends the low `len` bits of `value`, `len ≤ 32`.
    fn put(&mut self, value: u64, len: u32) {
        self.acc = (self.acc << len) | (value & ((1u64 << len) - 1));
        self.filled += len;
        self.bits += u64::from(len);
        while self.filled >= 8 {
            self.filled -= 8;
            self.bytes.push((self.acc >> self.filled) as u8);
        }
    }

    fn gamma(&mut self, x: u64) {
        let width = 64 - x.leading_zeros();
        let mut zeros = width - 1;
        while zeros > 0 {
            let step = zeros.min(32);
            self.put(0, step);
            zeros -= step;
        }
        let mut left = width;
        while left > 0 {
            let step = left.min(32);
            left -= step;
            self.put(x >> left, step);
        }
    }

    fn finish(mut self) -> (Vec<u8>, u64) {
        if self.filled > 0 {
            let pad = 8 - self.filled;
            self.bytes.push((self.acc << pad) as u8);
        }
        (self.bytes, self.bits)
    }
}

fn header(magic: [u8; 4], n: u64, m: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_BYTES);
    out.extend_from_slice(&magic);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&m.to_le_bytes());
    out
}

/// Rows of the permuted graph: `(new row, sorted new neighbor ids)` in row order.
fn permuted_rows<'a>(g: &'a Graph, pi: &'a Permutation) -> impl Iterator<Item = Vec<usize>> + 'a {
    (0..g.n()).map(move |r| {
        let v = pi.vertex_at(r);
        let mut row: Vec<usize> = g.neighbors(v).iter().map(|&u| pi.position(u)).collect();
        row.sort_unstable();
        row
    })
}

fn check(g: &Graph, pi: &Permutation) -> Result<(), GraphError> {
    if g.n() != pi.len() {
        return Err(GraphError::SizeMismatch {
            expected: g.n(),
            found: pi.len(),
        });
    }
    Ok(())
}

/// Elias-γ encoding of `g` relabeled by `pi`.
pub fn encode(g: &Graph, pi: &Permutation) -> Result<EncodedGraph, GraphError> {
    encode_with(g, pi, Code::Gamma)
}

pub fn encode_with(g: &Graph, pi: &Permutation, code: Code) -> Result<EncodedGraph, GraphError> {
    check(g, pi)?;
    let (n, m) = (g.n() as u64, g.nnz() as u64);
    let (bytes, payload_bits) = match code {
        Code::Gamma => {
            let mut w = BitWriter::new(header(GAMMA_MAGIC, n, m));
            for row in permuted_rows(g, pi) {
                w.gamma(row.len() as u64 + 1);
                for (i, &u) in row.iter().enumerate() {
                    let x = if i == 0 { u + 1 } else { u - row[i - 1] };
                    w.gamma(x as u64);
                }
            }
            w.finish()
        }
        Code::Varint => {
            let mut out = header(VARINT_MAGIC, n, m);
            for row in permuted_rows(g, pi) {
                put_varint(&mut out, row.len() as u64);
                for (i, &u) in row.iter().enumerate() {
                    let x = if i == 0 { u } else { u - row[i - 1] };
                    put_varint(&mut out, x as u64);
                }
            }
            let bits = 8 * (out.len() - HEADER_BYTES) as u64;
            (out, bits)
        }
    };
    Ok(EncodedGraph {
        n,
        m,
        code,
        payload_bits,
        bytes,
    })
}

fn put_varint(out: &mut Vec<u8>, mut x: u64) {
    while x >= 0x80 {
        out.push((x as u8) | 0x80);
        x >>= 7;
    }
    out.push(x as u8);
}

/// Elias-γ payload bits per stored entry, computed without building the stream.
pub fn encoded_bits_per_link(g: &Graph, pi: &Permutation) -> Result<f64, CodecError> {
    check(g, pi)?;
    if g.nnz() == 0 {
        return Err(CodecError::NoEntries);
    }
    let mut bits = 0u64;
    for row in permuted_rows(g, pi) {
        bits += gamma_len(row.len() as u64 + 1);
        for (i, &u) in row.iter().enumerate() {
            let x = if i == 0 { u + 1 } else { u - row[i - 1] };
            bits += gamma_len(x as u64);
        }
    }
    Ok(bits as f64 / g.nnz() as f64)
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: u64,
}

impl BitReader<'_> {
    fn bit(&mut self) -> Option<bool> {
        let byte = *self.bytes.get((self.pos / 8) as usize)?;
        let b = (byte >> (7 - self.pos % 8)) & 1;
        self.pos += 1;
        Some(b == 1)
    }

    fn gamma(&mut self, row: usize) -> Result<u64, CodecError> {
        let truncated = CodecError::Truncated { row };
        let mut zeros = 0u32;
        while !self.bit().ok_or(truncated.clone())? {
            zeros += 1;
            if zeros > 63 {
                return Err(CodecError::Overlong { row });
            }
        }
        let mut x = 1u64;
        for _ in 0..zeros {
            x = (x << 1) | u64::from(self.bit().ok_or(truncated.clone())?);
        }
        Ok(x)
    }
}

/// Decodes either stream variant into the permuted graph.
pub fn decode(bytes: &[u8]) -> Result<Graph, CodecError> {
    if bytes.len() < 4 {
        return Err(CodecError::TruncatedHeader);
    }
    let code = match bytes[..4].try_into().unwrap() {
        GAMMA_MAGIC => Code::Gamma,
        VARINT_MAGIC => Code::Varint,
        _ => return Err(CodecError::BadMagic),
    };
    if bytes.len() < HEADER_BYTES {
        return Err(CodecError::TruncatedHeader);
    }
    let n64 = u64::from_le_bytes(bytes[4..12].try_into().unwrap());
    let m = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
    let payload = &bytes[HEADER_BYTES..];
    // Every row takes at least one bit, so a larger n cannot be honest.
    if n64 > 8 * payload.len() as u64 {
        return Err(CodecError::Truncated { row: 0 });
    }
    let n = n64 as usize;
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0usize);
    let mut targets = Vec::new();
    match code {
        Code::Gamma => {
            let mut r = BitReader {
                bytes: payload,
                pos: 0,
            };
            for row in 0..n {
                let d = r.gamma(row)? - 1;
                read_row(row, n, d, m, &mut targets, |first| {
                    r.gamma(row).map(|x| if first { x - 1 } else { x })
                })?;
                offsets.push(targets.len());
            }
        }
        Code::Varint => {
            let mut pos = 0usize;
            for row in 0..n {
                let d = get_varint(payload, &mut pos, row)?;
                read_row(row, n, d, m, &mut targets, |_| {
                    get_varint(payload, &mut pos, row)
                })?;
                offsets.push(targets.len());
            }
        }
    }
    if targets.len() as u64 != m {
        return Err(CodecError::EntryCount {
            declared: m,
            found: targets.len() as u64,
        });
    }
    Ok(Graph::from_sorted_rows(offsets, targets))
}

/// Reads `d` neighbors of `row`; `next(true)` yields the first neighbor id and
/// `next(false)` each later gap.
fn read_row(
    row: usize,
    n: usize,
    d: u64,
    m: u64,
    targets: &mut Vec<usize>,
    mut next: impl FnMut(bool) -> Result<u64, CodecError>,
) -> Result<(), CodecError> {
    if d >= n as u64 || targets.len() as u64 + d > m {
        return Err(CodecError::EntryCount {
            declared: m,
            found: targets.len() as u64 + d,
        });
    }
    let mut prev = 0u64;
    for i in 0..d {
        let x = next(i == 0)?;
        let u = if i == 0 {
            x
        } else {
            if x == 0 {
                return Err(CodecError::ZeroGap { row });
            }
            prev.checked_add(x)
                .ok_or(CodecError::NeighborOutOfRange { row })?
        };
        if u >= n as u64 {
            return Err(CodecError::NeighborOutOfRange { row });
        }
        if u == row as u64 {
            return Err(CodecError::SelfLoop { row });
        }
        targets.push(u as usize);
        prev = u;
    }
    Ok(())
}

fn get_varint(bytes: &[u8], pos: &mut usize, row: usize) -> Result<u64, CodecError> {
    let mut x = 0u64;
    let mut shift = 0u32;
    loop {
        let b = *bytes.get(*pos).ok_or(CodecError::Truncated { row })?;
        *pos += 1;
        if shift > 63 || (shift == 63 && b > 1) {
            return Err(CodecError::Overlong { row });
        }
        x |= u64::from(b & 0x7f) << shift;
        if b & 0x80 == 0 {
            return Ok(x);
        }
        shift += 7;
    }
}

/// Stream length in bytes for a payload of `payload_bits` bits.
pub fn stream_len(payload_bits: u64) -> usize {
    HEADER_BYTES + payload_bits.div_ceil(8) as usize
}
