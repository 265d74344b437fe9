//! graph6 short form (orders up to 62).
//!
//! Byte `n + 63` gives the order, then the upper triangle in column-major
//! order `(0,1), (0,2), (1,2), (0,3), ...` packed six bits per byte (most
//! significant first), zero padded, each group offset by 63.

use alloc::string::String;
use alloc::vec::Vec;

use super::Graph;

pub const GRAPH6_HEADER: &str = ">>graph6<<";

/// Largest order representable in the short form.
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    Empty,
    /// The first byte is not a short-form order in `63..=125`.
    BadLengthByte(u8),
    /// A byte outside the printable range `63..=126`.
    InvalidByte(u8),
    WrongLength { expected: usize, found: usize },
    NonzeroPadding,
    /// Order above 62 when writing.
    UnsupportedOrder(usize),
    /// Order zero decodes but is not a valid [`Graph`].
    EmptyGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph6 error at byte {offset}: {kind:?}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

fn err(offset: usize, kind: Graph6ErrorKind) -> Graph6Error {
    Graph6Error { offset, kind }
}

/// Number of data bytes for a graph of order `n`.
fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(GRAPH6_HEADER.as_bytes()) {
        bytes = rest;
        base = GRAPH6_HEADER.len();
    }
    while let [head @ .., b'\n' | b'\r'] = bytes {
        bytes = head;
    }
    let (&first, body) = bytes.split_first().ok_or(err(base, Graph6ErrorKind::Empty))?;
    if !(63..=125).contains(&first) {
        return Err(err(base, Graph6ErrorKind::BadLengthByte(first)));
    }
    let n = (first - 63) as usize;
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(base + 1 + pos, Graph6ErrorKind::InvalidByte(body[pos])));
    }
    let expected = body_len(n);
    if body.len() != expected {
        return Err(err(base + 1, Graph6ErrorKind::WrongLength { expected, found: body.len() }));
    }
    if n == 0 {
        return Err(err(base, Graph6ErrorKind::EmptyGraph));
    }
    let bits = n * (n - 1) / 2;
    let pad = expected * 6 - bits;
    if pad > 0 {
        let last = body[expected - 1] - 63;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(err(base + expected, Graph6ErrorKind::NonzeroPadding));
        }
    }
    let mut g = Graph::empty(n).map_err(|_| err(base, Graph6ErrorKind::EmptyGraph))?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(err(0, Graph6ErrorKind::UnsupportedOrder(n)));
    }
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn triangle() {
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(write_graph6(&g).unwrap(), "Bw");
    }

    #[test]
    fn path_p4() {
        // bits for (0,1),(0,2),(1,2),(0,3),(1,3),(2,3) = 101001 -> 41 + 63 = 'h'
        let g = parse_graph6("Ch").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(write_graph6(&p4).unwrap(), "Ch");
    }

    #[test]
    fn k4_and_k2() {
        assert_eq!(parse_graph6("C~").unwrap().edge_count(), 6);
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(write_graph6(&k2).unwrap(), "A_");
    }

    #[test]
    fn header_and_newline_accepted() {
        let g = parse_graph6(">>graph6<<Bw\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn malformed_input() {
        assert_eq!(parse_graph6("").unwrap_err().kind, Graph6ErrorKind::Empty);
        assert_eq!(parse_graph6("~").unwrap_err().kind, Graph6ErrorKind::BadLengthByte(b'~'));
        assert_eq!(parse_graph6("B ").unwrap_err(), err(1, Graph6ErrorKind::InvalidByte(b' ')));
        assert_eq!(
            parse_graph6("Bww").unwrap_err().kind,
            Graph6ErrorKind::WrongLength { expected: 1, found: 2 }
        );
        // n = 3 uses 3 of 6 bits; 'x' = 57 = 111001 has padding bit set.
        assert_eq!(parse_graph6("Bx").unwrap_err(), err(1, Graph6ErrorKind::NonzeroPadding));
        assert_eq!(parse_graph6(">>graph6<<B!").unwrap_err().offset, 11);
    }

    #[test]
    fn oversize_graph_rejected() {
        let g = Graph::empty(63).unwrap();
        assert_eq!(write_graph6(&g).unwrap_err().kind, Graph6ErrorKind::UnsupportedOrder(63));
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=62, seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut g = Graph::empty(n).unwrap();
            for j in 1..n {
                for i in 0..j {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state & 3 == 0 {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            let s = write_graph6(&g).unwrap();
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
