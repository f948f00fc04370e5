//! The text graph format and certificate files.
//!
//! ```text
//! # comment
//! sg 3 4
//! e 0 1 +
//! e 0 1 -
//! e 0 2 +
//! e 1 2 +
//! ```
//!
//! Vertex ids are 0-based and edge ids follow line order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::sign::Sign;
use crate::verdict::{CertificateFile, Verdict};

pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    let mut graph: Option<(SignedGraph, usize)> = None;
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line, msg };
        let fields: Vec<&str> = content.split_whitespace().collect();
        match (fields[0], &mut graph) {
            ("sg", None) => {
                let [_, n, m] = fields[..] else {
                    return Err(err("header must be `sg <n> <m>`".into()));
                };
                let n = n.parse().map_err(|_| err(format!("bad vertex count {n:?}")))?;
                let m = m.parse().map_err(|_| err(format!("bad edge count {m:?}")))?;
                graph = Some((SignedGraph::new(n), m));
            }
            ("sg", Some(_)) => return Err(err("second header".into())),
            ("e", Some((g, _))) => {
                let [_, u, v, s] = fields[..] else {
                    return Err(err("edge line must be `e <u> <v> <+|->`".into()));
                };
                let u: usize = u.parse().map_err(|_| err(format!("bad vertex {u:?}")))?;
                let v: usize = v.parse().map_err(|_| err(format!("bad vertex {v:?}")))?;
                let sign = match s {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    _ => return Err(err(format!("bad sign {s:?}"))),
                };
                g.add_edge(VertexId(u), VertexId(v), sign)
                    .map_err(|e| err(e.to_string()))?;
            }
            ("e", None) => return Err(err("edge before the `sg` header".into())),
            (other, _) => return Err(err(format!("unknown line type {other:?}"))),
        }
    }
    let (g, m) = graph.ok_or(Error::Parse {
        line: last_line.max(1),
        msg: "missing `sg <n> <m>` header".into(),
    })?;
    if g.edge_count() != m {
        return Err(Error::Parse {
            line: last_line.max(1),
            msg: format!("header declares {m} edges but {} were given", g.edge_count()),
        });
    }
    Ok(g)
}

pub fn format_graph(g: &SignedGraph) -> String {
    let mut out = format!("sg {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u, e.v, e.sign).expect("string write");
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<SignedGraph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph(g: &SignedGraph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_graph(g))?;
    Ok(())
}

pub fn certificate_to_json(e1: EdgeId, e2: EdgeId, verdict: &Verdict) -> Result<String> {
    let file = CertificateFile::new(e1, e2, verdict.clone());
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

pub fn certificate_from_json(text: &str) -> Result<CertificateFile> {
    let file: CertificateFile = serde_json::from_str(text)?;
    if file.format != CertificateFile::FORMAT {
        return Err(Error::BadParams(format!("unknown certificate format {:?}", file.format)));
    }
    if file.version != 1 {
        return Err(Error::BadParams(format!("unsupported certificate version {}", file.version)));
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HAT: &str = "# hat\nsg 3 4\ne 0 1 +\ne 0 1 -\ne 0 2 +\ne 1 2 +\n";

    #[test]
    fn round_trip() {
        let g = parse_graph(HAT).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 4));
        assert_eq!(format_graph(&g), HAT.trim_start_matches("# hat\n"));
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("sg 3 1\n\ne 2 2 +\n", 3, "loop"),
            ("e 0 1 +\n", 1, "header"),
            ("sg 3 1\ne 0 1 *\n", 2, "sign"),
            ("sg 2 1\ne 0 5 +\n", 2, "vertex 5"),
            ("sg 2 2\ne 0 1 +\n", 2, "declares"),
            ("sg x 2\n", 1, "vertex count"),
        ];
        for (text, want, needle) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line, msg }) => {
                    assert_eq!(line, want, "{text:?}");
                    assert!(msg.contains(needle), "{msg}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
