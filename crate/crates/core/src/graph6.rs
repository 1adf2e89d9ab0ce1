//! graph6 interchange: order byte(s), then the upper triangle in column-major
//! order packed six bits per byte, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_graph6(self))
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.extend_from_slice(&[
            126,
            ((n >> 12) & 63) as u8 + 63,
            ((n >> 6) & 63) as u8 + 63,
            (n & 63) as u8 + 63,
        ]);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} out of range 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty string".into())),
        [126, 126, ..] => return Err(Error::Graph6("order too large".into())),
        [126, a, b, c, rest @ ..] => {
            let n = ((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63);
            (n, rest)
        }
        [126, ..] => return Err(Error::Graph6("truncated order field".into())),
        [first, rest @ ..] => (*first as usize - 63, rest),
    };
    if n > MAX_ORDER {
        return Err(Error::Capacity { requested: n });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for order {n}, got {}",
            body.len()
        )));
    }
    let mut g = Graph::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        if (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("non-zero padding bits".into()));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_encoded_examples() {
        assert_eq!(to_graph6(&Graph::path(2).unwrap()), "A_");
        assert_eq!(to_graph6(&Graph::new(0).unwrap()), "?");
        assert_eq!(to_graph6(&Graph::new(1).unwrap()), "@");
        // 0-2, 0-4, 1-3, 3-4 is "DQc" in the reference encoder.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::cycle(5).unwrap()), "Dhc");
    }

    #[test]
    fn round_trip_and_header() {
        for n in [0, 1, 2, 5, 13, 62, 63, 64] {
            let g = Graph::cycle(n).unwrap();
            let s = to_graph6(&g);
            assert_eq!(from_graph6(&s).unwrap(), g, "n = {n}");
        }
        assert_eq!(
            from_graph6(">>graph6<<A_\n").unwrap(),
            Graph::path(2).unwrap()
        );
    }

    #[test]
    fn malformed_inputs() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("A").is_err());
        assert!(from_graph6("A__").is_err());
        assert!(from_graph6("A\x20").is_err());
        assert!(from_graph6("A`").is_err()); // padding bit set
        assert!(from_graph6("~??").is_err());
    }
}
