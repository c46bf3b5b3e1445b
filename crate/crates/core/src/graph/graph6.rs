//! The graph6 text format.
//!
//! `N(n)` is one byte `n + 63` for `n <= 62`, `'~'` followed by three 6-bit
//! groups for `n <= 258047`, and `"~~"` followed by six groups beyond that.
//! The body lists the upper triangle column by column
//! (`x01, x02, x12, x03, ...`), zero-padded to a multiple of six bits, each
//! group offset by 63.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        push_groups(&mut out, n as u64, 3);
    } else {
        out.extend_from_slice(&[126, 126]);
        push_groups(&mut out, n as u64, 6);
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn push_groups(out: &mut Vec<u8>, value: u64, groups: u32) {
    for k in (0..groups).rev() {
        out.push(((value >> (6 * k)) & 0x3f) as u8 + BIAS);
    }
}

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 string. An optional `>>graph6<<` header is accepted.
pub fn graph6_decode(text: &str) -> Result<Graph> {
    decode_at(text, 0)
}

fn decode_at(text: &str, base: usize) -> Result<Graph> {
    let bytes = text.as_bytes();
    let mut pos = if text.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };

    let group = |pos: &mut usize| -> Result<u64> {
        let b = *bytes
            .get(*pos)
            .ok_or_else(|| parse_err(base + *pos, "unexpected end of input in size field"))?;
        if !(63..=126).contains(&b) {
            return Err(parse_err(base + *pos, format!("illegal byte 0x{b:02x}")));
        }
        *pos += 1;
        Ok((b - BIAS) as u64)
    };

    let first = group(&mut pos)?;
    let n = if first < 63 {
        first
    } else {
        let wide = bytes.get(pos) == Some(&126);
        if wide {
            pos += 1;
        }
        let count = if wide { 6 } else { 3 };
        let mut n = 0u64;
        for _ in 0..count {
            n = n << 6 | group(&mut pos)?;
        }
        n
    } as usize;
    if n > MAX_ORDER {
        return Err(parse_err(
            base,
            format!("order {n} exceeds the supported maximum of {MAX_ORDER}"),
        ));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() < nbytes {
        return Err(parse_err(
            base + bytes.len(),
            format!("expected {nbytes} body bytes, found {}", body.len()),
        ));
    }
    if body.len() > nbytes {
        return Err(parse_err(base + pos + nbytes, "trailing bytes after graph"));
    }
    for (k, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(base + pos + k, format!("illegal byte 0x{b:02x}")));
        }
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            bit += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[nbytes - 1] - BIAS;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + pos + nbytes - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Parses a multi-graph graph6 file: one graph per line, blank lines
/// skipped. Error offsets are relative to the start of `text`.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches(['\n', '\r']);
        if !line.trim().is_empty() {
            out.push(decode_at(line, offset)?);
        }
        offset += raw.len();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn small_complete_graphs() {
        assert_eq!(graph6_encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(graph6_encode(&complete(1)), "@");
        assert_eq!(graph6_encode(&complete(2)), "A_");
        assert_eq!(graph6_encode(&complete(3)), "Bw");
        assert_eq!(graph6_decode("Bw").unwrap(), complete(3));
    }

    #[test]
    fn matches_reference_encoder() {
        // Reference strings produced by networkx.to_graph6_bytes(header=False).
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(graph6_encode(&g), "DQc");
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(graph6_encode(&p4), "Ch");
        assert_eq!(graph6_encode(&complete(4)), "C~");
        assert_eq!(graph6_encode(&Graph::empty(63).unwrap()).len(), 4 + 326);
        assert!(graph6_encode(&Graph::empty(63).unwrap()).starts_with("~??~"));
    }

    #[test]
    fn header_is_stripped() {
        assert_eq!(graph6_decode(">>graph6<<A_").unwrap(), complete(2));
    }

    #[test]
    fn malformed_inputs_name_the_offset() {
        match graph6_decode("Bw?").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 2),
            e => panic!("{e:?}"),
        }
        match graph6_decode("B").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 1),
            e => panic!("{e:?}"),
        }
        match graph6_decode("C\x7f").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 1),
            e => panic!("{e:?}"),
        }
        match graph6_decode(" ").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 0),
            e => panic!("{e:?}"),
        }
        match graph6_decode("").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 0),
            e => panic!("{e:?}"),
        }
        // K3 with a padding bit set: 111001 → 57 + 63 = 'x'
        assert!(matches!(graph6_decode("Bx"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn multi_line_files() {
        let gs = read_graph6_lines(">>graph6<<A_\n\nBw\r\n@\n").unwrap();
        assert_eq!(gs.len(), 3);
        assert_eq!(gs[1], complete(3));
        match read_graph6_lines("A_\nBw!\n").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 5),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn large_order_round_trip() {
        let edges: Vec<_> = (0..99).map(|v| (v, v + 1)).collect();
        let g = Graph::from_edges(100, &edges).unwrap();
        let s = graph6_encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(graph6_decode(&s).unwrap(), g);
    }
}
