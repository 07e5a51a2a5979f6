//! Text formats: the `AdjacencyGraph` CSR dump and whitespace edge lists.

use std::fmt::Write as _;
use std::path::Path;

use super::{EdgeList, Graph};
use crate::error::{Error, Result};

const ADJACENCY_HEADER: &str = "AdjacencyGraph";

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_adjacency_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_adjacency_graph(&read(path.as_ref())?)
}

/// Parses the adjacency format: header, `n`, `m`, `n` offsets, `m` targets,
/// one token per line. Blank lines are ignored.
pub fn parse_adjacency_graph(text: &str) -> Result<Graph> {
    let mut tokens = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    match tokens.next() {
        Some((_, ADJACENCY_HEADER)) => {}
        Some((line, other)) => {
            return Err(Error::parse(
                line,
                format!("expected header `{ADJACENCY_HEADER}`, found `{other}`"),
            ))
        }
        None => return Err(Error::parse(1, "empty file")),
    }

    let mut number = |what: &str| -> Result<(usize, usize)> {
        match tokens.next() {
            Some((line, tok)) => tok
                .parse::<usize>()
                .map(|x| (line, x))
                .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`"))),
            None => Err(Error::parse(0, format!("unexpected end of file reading {what}"))),
        }
    };

    let (_, n) = number("vertex count")?;
    let (_, m) = number("edge count")?;

    let mut offsets = Vec::with_capacity(n + 1);
    for _ in 0..n {
        let (line, off) = number("offset")?;
        if off > m {
            return Err(Error::parse(line, format!("offset {off} exceeds edge count {m}")));
        }
        if offsets.last().is_some_and(|&prev| off < prev) {
            return Err(Error::parse(line, "offsets must be nondecreasing"));
        }
        if offsets.is_empty() && off != 0 {
            return Err(Error::parse(line, "first offset must be 0"));
        }
        offsets.push(off);
    }
    offsets.push(m);

    let mut neighbors = Vec::with_capacity(m);
    let mut last_line = 0;
    for (line, tok) in tokens {
        last_line = line;
        let v: usize = tok
            .parse()
            .map_err(|_| Error::parse(line, format!("expected edge target, found `{tok}`")))?;
        if v >= n {
            return Err(Error::parse(line, format!("edge target {v} out of range for n = {n}")));
        }
        neighbors.push(v);
    }
    if neighbors.len() != m {
        return Err(Error::parse(
            last_line,
            format!("edge count mismatch: header declares {m}, found {}", neighbors.len()),
        ));
    }
    let graph = Graph::from_csr(offsets, neighbors)?;
    graph
        .verify_symmetric()
        .map_err(|why| Error::InvalidParameter(format!("adjacency graph is not symmetric: {why}")))?;
    Ok(graph)
}

pub fn write_adjacency_graph(graph: &Graph) -> String {
    let mut out = String::with_capacity(16 * (graph.n() + graph.m() + 3));
    out.push_str(ADJACENCY_HEADER);
    out.push('\n');
    let _ = writeln!(out, "{}", graph.n());
    let _ = writeln!(out, "{}", graph.m());
    for &o in &graph.offsets()[..graph.n()] {
        let _ = writeln!(out, "{o}");
    }
    for &v in graph.neighbor_array() {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn load_edge_list(path: impl AsRef<Path>, n_hint: Option<usize>) -> Result<EdgeList> {
    parse_edge_list(&read(path.as_ref())?, n_hint)
}

/// Parses `u v` or `u v w` lines, skipping blanks and `#` comments. Input
/// order is preserved. Without `n_hint` the vertex count is one more than
/// the largest id seen.
pub fn parse_edge_list(text: &str, n_hint: Option<usize>) -> Result<EdgeList> {
    let mut pairs = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut weighted: Option<bool> = None;
    let mut max_id: Option<usize> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::parse(
                line,
                format!("expected `u v` or `u v w`, found `{content}`"),
            ));
        }
        let id = |tok: &str| -> Result<usize> {
            if tok.starts_with('-') {
                return Err(Error::parse(line, format!("negative vertex id `{tok}`")));
            }
            tok.parse()
                .map_err(|_| Error::parse(line, format!("vertex id `{tok}` is not an integer")))
        };
        let (u, v) = (id(fields[0])?, id(fields[1])?);
        let has_weight = fields.len() == 3;
        match weighted {
            None => weighted = Some(has_weight),
            Some(w) if w != has_weight => {
                return Err(Error::parse(line, "mixed weighted and unweighted lines"));
            }
            _ => {}
        }
        if has_weight {
            let w: f64 = fields[2]
                .parse()
                .map_err(|_| Error::parse(line, format!("weight `{}` is not a number", fields[2])))?;
            weights.push(w);
        }
        if let Some(n) = n_hint {
            if u >= n || v >= n {
                return Err(Error::parse(line, format!("vertex id out of range for n = {n}")));
            }
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        pairs.push((u, v));
    }

    let n = n_hint.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Ok(EdgeList {
        n,
        pairs,
        weights: weighted.unwrap_or(false).then_some(weights),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_round_trip() {
        let text = "AdjacencyGraph\n3\n4\n0\n2\n3\n1\n2\n0\n0\n";
        let g = parse_adjacency_graph(text).unwrap();
        assert_eq!((g.n(), g.m()), (3, 4));
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(1), &[0]);
        assert_eq!(g.neighbors(2), &[0]);
        assert_eq!(parse_adjacency_graph(&write_adjacency_graph(&g)).unwrap(), g);
    }

    #[test]
    fn adjacency_edge_count_mismatch() {
        let text = "AdjacencyGraph\n3\n4\n0\n2\n3\n1\n2\n0\n";
        let err = parse_adjacency_graph(text).unwrap_err().to_string();
        assert!(err.contains("edge count mismatch"), "{err}");
    }

    #[test]
    fn adjacency_empty_graph() {
        let g = parse_adjacency_graph("AdjacencyGraph\n0\n0\n").unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
    }

    #[test]
    fn adjacency_bad_header_and_target() {
        let err = parse_adjacency_graph("Adjacency\n0\n0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_adjacency_graph("AdjacencyGraph\n2\n1\n0\n1\n5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 6, .. }), "{err}");
    }

    #[test]
    fn edge_list_plain_and_weighted() {
        let el = parse_edge_list("0 2\n1 3\n", None).unwrap();
        assert_eq!(el.pairs, vec![(0, 2), (1, 3)]);
        assert_eq!(el.n, 4);
        assert!(el.weights.is_none());

        let el = parse_edge_list("# comment\n0 1 2.5\n", None).unwrap();
        assert_eq!(el.pairs, vec![(0, 1)]);
        assert_eq!(el.weights, Some(vec![2.5]));
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            parse_edge_list("0 -1\n", None),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_edge_list("0 x\n", None).is_err());
        assert!(parse_edge_list("0 1\n0 1 2.0\n", None).is_err());
        assert!(parse_edge_list("0 7\n", Some(4)).is_err());
    }

    #[test]
    fn asymmetric_adjacency_rejected() {
        let text = "AdjacencyGraph\n2\n1\n0\n1\n1\n";
        assert!(matches!(parse_adjacency_graph(text), Err(Error::InvalidParameter(_))));
    }
}
