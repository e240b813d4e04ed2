//! graph6 reading and writing.
//!
//! Each byte carries six bits offset by 63. The order comes first (one byte
//! for `n <= 62`, otherwise `~` plus three bytes), followed by the upper
//! triangle of the adjacency matrix in column-major order:
//! `x(0,1) x(0,2) x(1,2) x(0,3) ...`, zero-padded to a multiple of six.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if bytes.starts_with(HEADER.as_bytes()) {
        bytes = &bytes[HEADER.len()..];
        base = HEADER.len();
    }
    while let [rest @ .., b'\n' | b'\r' | b' ' | b'\t'] = bytes {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(parse_err(base, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(
                base + i,
                format!("byte {b:#04x} is outside the graph6 range"),
            ));
        }
    }

    let (n, header_len) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.get(1) == Some(&126) {
            return Err(parse_err(base + 1, "8-byte order prefix is not supported"));
        }
        if bytes.len() < 4 {
            return Err(parse_err(base + bytes.len(), "truncated order prefix"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, 4)
    };
    if n > MAX_ORDER {
        return Err(Error::capacity("graph6 input", n, MAX_ORDER));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let body = &bytes[header_len..];
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(parse_err(
            base + header_len + body.len().min(expected),
            format!(
                "expected {expected} edge bytes for order {n}, found {}",
                body.len()
            ),
        ));
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[body.len() - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(
                base + header_len + body.len() - 1,
                "non-zero padding bits",
            ));
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
