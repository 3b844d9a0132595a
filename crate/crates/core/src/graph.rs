//! Directed weighted graphs and simple undirected graphs, with their text format.
//!
//! ```text
//! graph <n> <m> <directed|undirected>
//! vweights <w_1> ... <w_n>      (optional, directed only; default 1)
//! aweights                      (optional, directed only; edge lines then carry a weight)
//! <u> <v> [w]                   (m lines, 1-based endpoints)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error, ParseError, Result};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
    .into()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    vertex_weights: Vec<i64>,
    arc_weights: Option<Vec<i64>>,
}

impl WeightedDigraph {
    /// A digraph with unit vertex weights and no arc weights. Vertices are 0-based.
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        Self::with_weights(n, arcs, vec![1; n], None)
    }

    pub fn with_weights(
        n: usize,
        arcs: Vec<(usize, usize)>,
        vertex_weights: Vec<i64>,
        arc_weights: Option<Vec<i64>>,
    ) -> Result<Self> {
        if let Some(&(u, v)) = arcs.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(param(format!(
                "arc ({}, {}) leaves the vertex range 1..={n}",
                u + 1,
                v + 1
            )));
        }
        if vertex_weights.len() != n {
            return Err(param(format!(
                "{} vertex weights for {n} vertices",
                vertex_weights.len()
            )));
        }
        if let Some(w) = &arc_weights {
            if w.len() != arcs.len() {
                return Err(param(format!(
                    "{} arc weights for {} arcs",
                    w.len(),
                    arcs.len()
                )));
            }
        }
        Ok(WeightedDigraph {
            n,
            arcs,
            vertex_weights,
            arc_weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn vertex_weights(&self) -> &[i64] {
        &self.vertex_weights
    }

    pub fn arc_weights(&self) -> Option<&[i64]> {
        self.arc_weights.as_deref()
    }

    /// In-arcs of every vertex as `(tail, arc index)`.
    pub fn in_arcs(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.n];
        for (idx, &(u, v)) in self.arcs.iter().enumerate() {
            out[v].push((u, idx));
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WeightedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {} {} directed", self.n, self.arcs.len())?;
        if self.vertex_weights.iter().any(|&w| w != 1) {
            let w: Vec<String> = self.vertex_weights.iter().map(|w| w.to_string()).collect();
            writeln!(f, "vweights {}", w.join(" "))?;
        }
        match &self.arc_weights {
            Some(ws) => {
                writeln!(f, "aweights")?;
                for (&(u, v), w) in self.arcs.iter().zip(ws) {
                    writeln!(f, "{} {} {w}", u + 1, v + 1)?;
                }
            }
            None => {
                for &(u, v) in &self.arcs {
                    writeln!(f, "{} {}", u + 1, v + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Simple undirected graph; edges are stored with the smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(param(format!(
                    "edge {{{}, {}}} leaves the vertex range 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(param(format!("loop at vertex {}", u + 1)));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(param(format!("repeated edge {{{}, {}}}", e.0 + 1, e.1 + 1)));
            }
            norm.push(e);
        }
        Ok(UndirectedGraph { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn without_edge(&self, idx: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(idx);
        UndirectedGraph { n: self.n, edges }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {} {} undirected", self.n, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

/// Either kind of graph, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Directed(WeightedDigraph),
    Undirected(UndirectedGraph),
}

fn parse_int<T: FromStr>(tok: &str, line: usize, col: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| syntax(line, col, format!("expected {what}, found `{tok}`")))
}

fn columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in line.split(' ') {
        if !tok.is_empty() {
            out.push((pos + 1, tok));
        }
        pos += tok.len() + 1;
    }
    out
}

impl FromStr for GraphFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        let &(hl, header) = lines.first().ok_or_else(|| syntax(1, 1, "empty input"))?;
        let h = columns(header);
        if h.len() != 4 || h[0].1 != "graph" {
            return Err(syntax(
                hl,
                1,
                "expected `graph <n> <m> <directed|undirected>`",
            ));
        }
        let n: usize = parse_int(h[1].1, hl, h[1].0, "vertex count")?;
        let m: usize = parse_int(h[2].1, hl, h[2].0, "edge count")?;
        let directed = match h[3].1 {
            "directed" => true,
            "undirected" => false,
            other => {
                return Err(syntax(
                    hl,
                    h[3].0,
                    format!("expected `directed` or `undirected`, found `{other}`"),
                ))
            }
        };
        let mut rest = lines[1..].iter().peekable();
        let mut vweights = None;
        let mut weighted = false;
        while let Some(&&(ln, line)) = rest.peek() {
            let cols = columns(line);
            match cols[0].1 {
                "vweights" => {
                    if !directed {
                        return Err(syntax(ln, 1, "vertex weights need a directed graph"));
                    }
                    let ws = cols[1..]
                        .iter()
                        .map(|&(c, t)| parse_int::<i64>(t, ln, c, "weight"))
                        .collect::<Result<Vec<_>>>()?;
                    if ws.len() != n {
                        return Err(syntax(
                            ln,
                            1,
                            format!("expected {n} vertex weights, found {}", ws.len()),
                        ));
                    }
                    vweights = Some(ws);
                }
                "aweights" => {
                    if !directed {
                        return Err(syntax(ln, 1, "arc weights need a directed graph"));
                    }
                    if cols.len() > 1 {
                        return Err(syntax(ln, cols[1].0, "`aweights` takes no arguments"));
                    }
                    weighted = true;
                }
                _ => break,
            }
            rest.next();
        }
        let mut pairs = Vec::with_capacity(m);
        let mut aw = Vec::new();
        for &(ln, line) in rest {
            let cols = columns(line);
            let want = if weighted { 3 } else { 2 };
            if cols.len() != want {
                return Err(syntax(
                    ln,
                    1,
                    format!("expected {want} fields per edge line"),
                ));
            }
            let u: usize = parse_int(cols[0].1, ln, cols[0].0, "vertex")?;
            let v: usize = parse_int(cols[1].1, ln, cols[1].0, "vertex")?;
            for (c, x) in [(cols[0].0, u), (cols[1].0, v)] {
                if x == 0 || x > n {
                    return Err(syntax(ln, c, format!("vertex outside 1..={n}")));
                }
            }
            if weighted {
                aw.push(parse_int::<i64>(cols[2].1, ln, cols[2].0, "weight")?);
            }
            pairs.push((u - 1, v - 1));
        }
        if pairs.len() != m {
            return Err(syntax(
                text.lines().count() + 1,
                1,
                format!("header announces {m} edges, found {}", pairs.len()),
            ));
        }
        let invalid = |e: Error| -> Error {
            match e {
                Error::Parameter(message) => ParseError::Invalid { line: hl, message }.into(),
                other => other,
            }
        };
        if directed {
            WeightedDigraph::with_weights(
                n,
                pairs,
                vweights.unwrap_or_else(|| vec![1; n]),
                weighted.then_some(aw),
            )
            .map(GraphFile::Directed)
            .map_err(invalid)
        } else {
            UndirectedGraph::new(n, pairs)
                .map(GraphFile::Undirected)
                .map_err(invalid)
        }
    }
}

impl FromStr for WeightedDigraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.parse()? {
            GraphFile::Directed(g) => Ok(g),
            GraphFile::Undirected(_) => Err(ParseError::Invalid {
                line: 1,
                message: "expected a directed graph".into(),
            }
            .into()),
        }
    }
}

impl FromStr for UndirectedGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.parse()? {
            GraphFile::Undirected(g) => Ok(g),
            GraphFile::Directed(_) => Err(ParseError::Invalid {
                line: 1,
                message: "expected an undirected graph".into(),
            }
            .into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_round_trip() {
        let text = "graph 2 2 directed\n1 2\n2 1\n";
        let g: WeightedDigraph = text.parse().unwrap();
        assert_eq!(g.arcs(), &[(0, 1), (1, 0)]);
        assert_eq!(g.to_text(), text);

        let text = "graph 3 2 directed\nvweights 0 -2 5\naweights\n1 2 4\n3 3 -1\n";
        let g: WeightedDigraph = text.parse().unwrap();
        assert_eq!(g.arc_weights(), Some(&[4, -1][..]));
        assert_eq!(g.to_text(), text);
    }

    #[test]
    fn undirected_round_trip() {
        let text = "graph 3 2 undirected\n1 2\n2 3\n";
        let g: UndirectedGraph = text.parse().unwrap();
        assert_eq!(g.to_text(), text);
        let g: UndirectedGraph = "graph 3 1 undirected\n3 1\n".parse().unwrap();
        assert_eq!(g.edges(), &[(0, 2)]);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!("graph 2 1 directed\n1 3\n"
            .parse::<WeightedDigraph>()
            .is_err());
        assert!("graph 2 2 directed\n1 2\n"
            .parse::<WeightedDigraph>()
            .is_err());
        assert!("graph 2 1 undirected\n1 1\n"
            .parse::<UndirectedGraph>()
            .is_err());
        assert!("graph 2 2 undirected\n1 2\n2 1\n"
            .parse::<UndirectedGraph>()
            .is_err());
        assert!("graph 2 1 sideways\n1 2\n".parse::<GraphFile>().is_err());
        assert!("graph 2 1 directed\naweights\n1 2\n"
            .parse::<WeightedDigraph>()
            .is_err());
        assert!("graph 2 1 undirected\n1 2\n"
            .parse::<WeightedDigraph>()
            .is_err());
    }
}
