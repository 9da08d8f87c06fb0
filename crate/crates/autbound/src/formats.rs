//! graph6 and edge-list readers and writers.
//!
//! graph6: a size header of printable bytes `63 + x`, then the upper
//! triangle of the adjacency matrix in column order (`(0,1), (0,2), (1,2),
//! (0,3), ...`), packed six bits per byte, most significant first. Padding
//! bits in the last byte must be zero.

use std::fmt::Write as _;

use autbound_core::{Graph, MAX_VERTICES};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("graph6 byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: &'static str },
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("graph has {n} vertices; the limit is {cap}")]
    TooLarge { n: u64, cap: usize },
    #[error(transparent)]
    Graph(#[from] autbound_core::Error),
}

impl FormatError {
    /// Whether the input was well formed but larger than supported.
    pub fn is_size_refusal(&self) -> bool {
        matches!(self, FormatError::TooLarge { .. } | FormatError::Graph(autbound_core::Error::TooManyVertices { .. }))
    }
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

/// Which text format a graph is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    Graph6,
    EdgeList,
}

fn g6_err(offset: usize, msg: &'static str) -> FormatError {
    FormatError::Graph6 { offset, msg }
}

/// Parses one graph6 line. A leading `>>graph6<<` header is skipped; a
/// trailing line break is tolerated, any other extra byte is an error.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (bytes, base) = match line.strip_prefix(">>graph6<<") {
        Some(rest) => (rest.as_bytes(), 10),
        None => (line.as_bytes(), 0),
    };
    if let Some(i) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(g6_err(base + i, "byte outside the printable range 63..=126"));
    }
    let (n, mut pos) = match bytes {
        [] => return Err(g6_err(base, "empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(g6_err(base + bytes.len(), "truncated 8-byte size header"));
            }
            (rest[..6].iter().fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_err(base + bytes.len(), "truncated 4-byte size header"));
            }
            (rest[..3].iter().fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64), 4)
        }
        [b, ..] => ((b - 63) as u64, 1),
    };
    if n > MAX_VERTICES as u64 {
        return Err(FormatError::TooLarge { n, cap: MAX_VERTICES });
    }
    let n = n as usize;
    if n == 0 {
        return Err(g6_err(base, "graph has no vertices"));
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &bytes[pos..];
    if data.len() < nbytes {
        return Err(g6_err(base + bytes.len(), "truncated adjacency data"));
    }
    if data.len() > nbytes {
        return Err(g6_err(base + pos + nbytes, "trailing bytes after adjacency data"));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if nbytes > 0 && nbits % 6 != 0 {
        let last = data[nbytes - 1] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(g6_err(base + pos + nbytes - 1, "nonzero padding bits"));
        }
    }
    pos += nbytes;
    debug_assert_eq!(pos, bytes.len());
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.extend([12, 6, 0].map(|s| 63 + (n >> s & 63) as u8));
    }
    let mut acc = 0u8;
    let mut len = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            len += 1;
            if len == 6 {
                out.push(63 + acc);
                acc = 0;
                len = 0;
            }
        }
    }
    if len > 0 {
        out.push(63 + (acc << (6 - len)));
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses `n` on the first line followed by one `u v` pair per line.
/// Blank lines and `#` comments are skipped. Duplicate edges are logged and
/// ignored.
pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line, msg: String| FormatError::EdgeList { line, msg };
    let (first, header) = lines.next().ok_or_else(|| err(1, "missing vertex count".into()))?;
    let n: u64 = header.parse().map_err(|_| err(first, format!("expected a vertex count, found `{header}`")))?;
    if n > MAX_VERTICES as u64 {
        return Err(FormatError::TooLarge { n, cap: MAX_VERTICES });
    }
    let n = n as usize;
    let mut g_edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = vec![0u64; n];
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(err(line, format!("expected `u v`, found `{text}`")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| err(line, format!("`{s}` is not a vertex index")));
        let (u, v) = (parse(a)?, parse(b)?);
        if u >= n || v >= n {
            return Err(err(line, format!("vertex {} out of range for n = {n}", u.max(v))));
        }
        if u == v {
            return Err(err(line, format!("loop at vertex {u}")));
        }
        if seen[u] >> v & 1 == 1 {
            log::warn!("edge list line {line}: duplicate edge {u}-{v} ignored");
            continue;
        }
        seen[u] |= 1 << v;
        seen[v] |= 1 << u;
        g_edges.push((u, v));
    }
    Ok(Graph::from_edges(n, g_edges)?)
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Reads a single graph in the given format.
pub fn parse_graph(text: &str, format: InputFormat) -> Result<Graph> {
    match format {
        InputFormat::EdgeList => parse_edgelist(text),
        InputFormat::Graph6 => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let first = lines.next().ok_or(g6_err(0, "empty input"))?;
            if lines.next().is_some() {
                return Err(g6_err(first.len(), "more than one graph; use `batch` for graph6 files"));
            }
            parse_graph6(first)
        }
    }
}
