//! graph6 encoding (McKay): a size header followed by the upper triangle of
//! the adjacency matrix, column by column, packed six bits per printable byte
//! with offset 63.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

impl Graph {
    /// Decodes one graph6 line. Surrounding whitespace and the optional
    /// `>>graph6<<` header are accepted.
    pub fn from_graph6(text: &str) -> Result<Graph> {
        let lead = text.len() - text.trim_start().len();
        let mut body = text.trim();
        let mut base = lead;
        if let Some(rest) = body.strip_prefix(HEADER) {
            body = rest;
            base += HEADER.len();
        }
        let bytes = body.as_bytes();
        if bytes.is_empty() {
            return Err(Error::parse(base, "empty input"));
        }
        for (i, &b) in bytes.iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(Error::parse(base + i, format!("byte {b:#04x} outside graph6 range")));
            }
        }

        let (n, header_len) = if bytes[0] == 126 {
            if bytes.len() > 1 && bytes[1] == 126 {
                return Err(Error::parse(base + 1, "order too large for this encoder"));
            }
            if bytes.len() < 4 {
                return Err(Error::parse(base + bytes.len(), "truncated size header"));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, 4)
        } else {
            ((bytes[0] - 63) as usize, 1)
        };
        if n == 0 {
            return Err(Error::parse(base, "graph of order 0"));
        }
        if n > MAX_ORDER {
            return Err(Error::Capacity {
                what: "graph order",
                requested: n,
                limit: MAX_ORDER,
            });
        }

        let pairs = n * (n - 1) / 2;
        let need = pairs.div_ceil(6);
        let data = &bytes[header_len..];
        if data.len() != need {
            return Err(Error::parse(
                base + header_len + data.len().min(need),
                format!("expected {need} data bytes for order {n}, found {}", data.len()),
            ));
        }

        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = data[k / 6] - 63;
                if byte >> (5 - k % 6) & 1 == 1 {
                    g.insert_edge(i, j);
                }
                k += 1;
            }
        }
        if pairs % 6 != 0 {
            let last = data[need - 1] - 63;
            let pad = 6 - pairs % 6;
            if last & ((1 << pad) - 1) != 0 {
                return Err(Error::parse(base + header_len + need - 1, "nonzero padding bits"));
            }
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> String {
        let n = self.order();
        let mut out = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 0x3f) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }
}
