//! Text file formats: `.pol` polytope files, DIMACS edge-format graphs,
//! and the flow dump. Parse errors carry line numbers for diagnostics.

use std::fmt;

use cubex_core::expansion::FlowField;
use cubex_core::graph::Graph;
use cubex_core::polytope::{Vertex01, ZeroOnePolytope};
use cubex_core::rat::format_rat_frac;

/// A parse failure with its 1-based line number.
#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Parses the `.pol` format: first payload line `d n`, then `n` rows of
/// `d` characters from `{0,1}`; `#` starts a comment line. Bit `i` of row
/// `j` is coordinate `i` of vertex `j`.
pub fn parse_pol(text: &str) -> Result<ZeroOnePolytope, ParseError> {
    let mut payload = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = payload.next().ok_or_else(|| err(1, "empty file"))?;
    let mut parts = header.split_whitespace();
    let d: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(line_no, "expected header `d n`"))?;
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(line_no, "expected header `d n`"))?;
    if parts.next().is_some() {
        return Err(err(line_no, "trailing tokens after `d n` header"));
    }
    if d > 64 {
        return Err(err(line_no, "dimension above supported maximum 64"));
    }

    let mut vertices = Vec::with_capacity(n);
    for _ in 0..n {
        let (line_no, row) = payload
            .next()
            .ok_or_else(|| err(usize::MAX, format!("expected {} vertex rows", n)))?;
        if row.len() != d {
            return Err(err(
                line_no,
                format!("expected {} characters from {{0,1}}, got `{}`", d, row),
            ));
        }
        let v = Vertex01::parse(row)
            .ok_or_else(|| err(line_no, format!("bad vertex row `{}`", row)))?;
        vertices.push(v);
    }
    if let Some((line_no, _)) = payload.next() {
        return Err(err(line_no, "unexpected content after vertex rows"));
    }
    ZeroOnePolytope::new(d, vertices).map_err(|e| err(0, e.to_string()))
}

pub fn render_pol(p: &ZeroOnePolytope) -> String {
    let mut out = format!("{} {}\n", p.ambient_dim(), p.n_vertices());
    for v in p.vertices() {
        out.push_str(&v.render(p.ambient_dim()));
        out.push('\n');
    }
    out
}

/// Parses DIMACS edge format: `c` comments, one `p edge <n> <m>` line,
/// then `e <u> <v>` lines with 1-based node indices.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(err(line_no, "duplicate `p` line"));
                }
                if parts.next() != Some("edge") {
                    return Err(err(line_no, "expected `p edge n m`"));
                }
                let nn: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(line_no, "bad node count"))?;
                let _m: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(line_no, "bad edge count"))?;
                n = Some(nn);
            }
            Some("e") => {
                let n = n.ok_or_else(|| err(line_no, "`e` line before `p edge`"))?;
                let u: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(line_no, "bad edge endpoint"))?;
                let v: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(line_no, "bad edge endpoint"))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(err(line_no, "edge endpoint out of range (1-based)"));
                }
                if u == v {
                    return Err(err(line_no, "loops are not allowed"));
                }
                edges.push((u as u32 - 1, v as u32 - 1));
            }
            Some(other) => {
                return Err(err(line_no, format!("unknown record `{}`", other)));
            }
            None => {}
        }
    }
    let n = n.ok_or_else(|| err(usize::MAX, "missing `p edge n m` line"))?;
    Graph::new(n, &edges).map_err(|e| err(0, e.to_string()))
}

pub fn render_dimacs(g: &Graph) -> String {
    cubex_core::graph::to_dimacs(g)
}

/// Flow dump: one `u v num/den` line per arc, in sorted arc order.
pub fn render_flow(f: &FlowField) -> String {
    let mut out = String::new();
    for (&(u, v), amount) in f.iter() {
        out.push_str(&format!("{} {} {}\n", u, v, format_rat_frac(amount)));
    }
    out
}
