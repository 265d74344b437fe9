//! Edge lists, graph6 streams and the CSV ranking projection.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use distspec_core::enumeration::ScanReport;
use distspec_core::graph::{parse_graph6, Graph, Graph6Error, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Parses `u v` pairs, one per line, 0-indexed. `#` starts a comment; a
/// `# n=N` comment fixes the order, otherwise it is one more than the largest
/// index.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut order = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(v) = c.trim().strip_prefix("n=") {
                let n = v.trim().parse::<usize>().map_err(|e| FormatError::EdgeList { line, msg: format!("bad order: {e}") })?;
                order = Some(n);
            }
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [u, v] => {
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|e| FormatError::EdgeList { line, msg: format!("bad vertex {s:?}: {e}") })
                };
                edges.push((parse(u)?, parse(v)?));
            }
            _ => return Err(FormatError::EdgeList { line, msg: format!("expected two fields, found {}", fields.len()) }),
        }
    }
    let n = order.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# n={}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Opens `path` for reading; `-` is standard input.
pub fn open_input(path: &Path) -> io::Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

/// One graph per non-blank line.
pub struct Graph6Stream<R> {
    lines: io::Lines<R>,
    line: usize,
}

impl<R: BufRead> Graph6Stream<R> {
    pub fn new(reader: R) -> Self {
        Graph6Stream { lines: reader.lines(), line: 0 }
    }
}

impl<R: BufRead> Iterator for Graph6Stream<R> {
    type Item = Result<Graph, FormatError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let text = match self.lines.next()? {
                Ok(t) => t,
                Err(e) => return Some(Err(e.into())),
            };
            self.line += 1;
            let trimmed = text.trim();
            if trimmed.is_empty() {
                continue;
            }
            let line = self.line;
            return Some(parse_graph6(trimmed).map_err(|source| FormatError::Graph6 { line, source }));
        }
    }
}

pub fn read_to_string(path: &Path) -> Result<String, FormatError> {
    let mut s = String::new();
    open_input(path)?.read_to_string(&mut s)?;
    Ok(s)
}

/// `rank,graph6,lambda_n` with 17 significant digits.
pub fn ranking_csv(report: &ScanReport) -> String {
    let mut out = String::from("rank,graph6,lambda_n\n");
    for (i, e) in report.ranking.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", i + 1, csv_field(&e.graph6), crate::json::format_f64(e.lambda_n)));
    }
    out
}

/// Quotes a field containing a comma, quote or newline. graph6 bytes include `"`.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
