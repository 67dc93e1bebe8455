//! Text encodings: graph6 lines and the `n m` edge-list format.

use std::str::FromStr;

use crate::error::ParseError;
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edgelist" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and
/// surrounding whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let line = text.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some((offset, &byte)) = bytes.iter().enumerate().find(|(_, &b)| !(63..=126).contains(&b)) {
        return Err(ParseError::BadCharacter { offset, byte });
    }
    let (n, body) = decode_n(bytes)?;
    if n > MAX_VERTICES {
        return Err(ParseError::TooManyVertices { n, cap: MAX_VERTICES });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(ParseError::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(ParseError::TrailingData { extra: body.len() - expected });
    }
    let mut adj = vec![0u64; n];
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - OFFSET;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(ParseError::NonzeroPadding);
        }
    }
    Ok(Graph::from_rows(adj).expect("decoded rows are symmetric"))
}

fn decode_n(bytes: &[u8]) -> Result<(usize, &[u8]), ParseError> {
    let six = |s: &[u8]| s.iter().fold(0usize, |acc, &b| acc << 6 | (b - OFFSET) as usize);
    if bytes[0] != 126 {
        return Ok(((bytes[0] - OFFSET) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(ParseError::BadHeader);
        }
        let n = six(&bytes[2..8]);
        if n <= 258047 {
            return Err(ParseError::BadHeader);
        }
        return Ok((n, &bytes[8..]));
    }
    if bytes.len() < 4 {
        return Err(ParseError::BadHeader);
    }
    let n = six(&bytes[1..4]);
    if n < 63 {
        return Err(ParseError::BadHeader);
    }
    Ok((n, &bytes[4..]))
}

/// Encodes a graph as a graph6 line (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v` with `1 ≤ u < v ≤ n`. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(ParseError::Empty)?;
    let (n, declared) = two_numbers(header).ok_or(ParseError::Malformed { line: hline, what: "header `n m`" })?;
    if n > MAX_VERTICES {
        return Err(ParseError::TooManyVertices { n, cap: MAX_VERTICES });
    }
    let mut adj = vec![0u64; n];
    let mut found = 0;
    for (line, l) in lines {
        let (u, v) = two_numbers(l).ok_or(ParseError::Malformed { line, what: "edge `u v`" })?;
        for vertex in [u, v] {
            if vertex == 0 || vertex > n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::Loop { line, vertex: u });
        }
        let (a, b) = (u.min(v) - 1, u.max(v) - 1);
        if adj[a] >> b & 1 == 1 {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
        found += 1;
    }
    if found != declared {
        return Err(ParseError::EdgeCountMismatch { declared, found });
    }
    Ok(Graph::from_rows(adj).expect("edge list rows are symmetric"))
}

/// Writes the edge-list format accepted by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    s
}

fn two_numbers(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    let a = it.next()?.ok()?;
    let b = it.next()?.ok()?;
    it.next().is_none().then_some((a, b))
}

/// Parses a whole input in the given format. graph6 input may carry one
/// graph per non-empty line; the edge-list format holds exactly one graph.
pub fn parse_graphs(text: &str, format: GraphFormat) -> Result<Vec<Graph>, (usize, ParseError)> {
    match format {
        GraphFormat::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_graph6(l).map_err(|e| (i + 1, e)))
            .collect(),
        GraphFormat::EdgeList => parse_edge_list(text).map(|g| vec![g]).map_err(|e| (0, e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use proptest::prelude::*;

    #[test]
    fn graph6_examples() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4, Family::Complete(4).build().unwrap());
        let e5 = parse_graph6("D??").unwrap();
        assert_eq!((e5.n(), e5.edge_count()), (5, 0));
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), k4);
        assert_eq!(to_graph6(&k2), "A_");
        assert_eq!(to_graph6(&k4), "C~");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn graph6_large_n_header() {
        let g = Family::Cycle(64).build().unwrap();
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors_are_distinct() {
        assert_eq!(parse_graph6(""), Err(ParseError::Empty));
        assert!(matches!(parse_graph6("C~ x"), Err(ParseError::BadCharacter { offset: 2, .. })));
        assert_eq!(parse_graph6("D?"), Err(ParseError::Truncated { expected: 2, found: 1 }));
        assert_eq!(parse_graph6("A__"), Err(ParseError::TrailingData { extra: 1 }));
        assert_eq!(parse_graph6("A`"), Err(ParseError::NonzeroPadding));
        assert_eq!(parse_graph6("~?"), Err(ParseError::BadHeader));
        assert!(matches!(parse_graph6("~?@@"), Err(ParseError::TooManyVertices { n: 65, .. })));
    }

    #[test]
    fn edge_list_examples() {
        let k3 = parse_edge_list("3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(k3, Family::Complete(3).build().unwrap());
        let star = parse_edge_list("4 3\n1 2\n1 3\n1 4").unwrap();
        assert_eq!(star, Family::Star(3).build().unwrap());
        assert_eq!(parse_edge_list("2 1\n1 1"), Err(ParseError::Loop { line: 2, vertex: 1 }));
        assert_eq!(
            parse_edge_list("3 2\n1 2\n2 1"),
            Err(ParseError::DuplicateEdge { line: 3, u: 2, v: 1 })
        );
        assert_eq!(
            parse_edge_list("3 1\n1 4"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 4, n: 3 })
        );
        assert_eq!(
            parse_edge_list("3 2\n1 2"),
            Err(ParseError::EdgeCountMismatch { declared: 2, found: 1 })
        );
        assert!(matches!(parse_edge_list("3\n"), Err(ParseError::Malformed { line: 1, .. })));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            g.insert_edge(u, v);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph(12)) {
            prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
        }

        #[test]
        fn edge_list_round_trip_and_handshake(g in arb_graph(12)) {
            let back = parse_edge_list(&to_edge_list(&g)).unwrap();
            let degree_sum: usize = (0..back.n()).map(|u| back.degree(u)).sum();
            prop_assert_eq!(degree_sum, 2 * back.edge_count());
            prop_assert_eq!(back, g);
        }

        #[test]
        fn forest_criterion_matches_cycle_census(g in arb_graph(9)) {
            let cycles = g.simple_cycles().unwrap();
            prop_assert_eq!(cycles.is_empty(), g.is_forest());
        }

        #[test]
        fn star_graphs_have_pairwise_intersecting_edges(g in arb_graph(8)) {
            if g.is_star_plus_isolated() {
                let e = g.edges();
                for (i, a) in e.iter().enumerate() {
                    for b in &e[i + 1..] {
                        prop_assert!(a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1);
                    }
                }
            }
        }
    }
}
