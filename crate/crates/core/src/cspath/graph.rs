use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::PathError;
use crate::pareto::{Cost, Label};

/// One arc with its `k` positive weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge<W> {
    pub from: usize,
    pub to: usize,
    pub weights: Label<W>,
}

/// Graph on nodes `0..n` whose arcs carry `k` positive integer weights.
/// Undirected edges are stored as two opposite arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiWeightGraph<W> {
    n: usize,
    k: usize,
    directed: bool,
    edges: Vec<Edge<W>>,
    arcs: Vec<Edge<W>>,
    out: Vec<Vec<usize>>,
}

impl<W: Cost> MultiWeightGraph<W> {
    pub fn new(n: usize, k: usize, directed: bool) -> Result<Self, PathError> {
        if k == 0 {
            return Err(PathError::Dimension);
        }
        Ok(MultiWeightGraph { n, k, directed, edges: Vec::new(), arcs: Vec::new(), out: vec![Vec::new(); n] })
    }

    pub fn from_edges(
        n: usize,
        k: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (usize, usize, Vec<W>)>,
    ) -> Result<Self, PathError> {
        let mut g = Self::new(n, k, directed)?;
        for (from, to, w) in edges {
            g.add_edge(from, to, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, from: usize, to: usize, weights: Vec<W>) -> Result<(), PathError> {
        self.check_node(from)?;
        self.check_node(to)?;
        if from == to {
            return Err(PathError::SelfLoop { node: from });
        }
        if weights.len() != self.k {
            return Err(PathError::Arity { expected: self.k, found: weights.len() });
        }
        if weights.iter().any(|w| w.is_zero()) {
            return Err(PathError::NonPositiveWeight { from, to });
        }
        let weights = Label::new(weights);
        self.push_arc(from, to, weights.clone());
        if !self.directed {
            self.push_arc(to, from, weights.clone());
        }
        self.edges.push(Edge { from, to, weights });
        Ok(())
    }

    fn push_arc(&mut self, from: usize, to: usize, weights: Label<W>) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Edge { from, to, weights });
    }

    pub fn check_node(&self, v: usize) -> Result<(), PathError> {
        if v < self.n {
            Ok(())
        } else {
            Err(PathError::InvalidNode { node: v, n: self.n })
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Edges as given.
    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    /// Arcs after expanding undirected edges.
    pub fn arcs(&self) -> &[Edge<W>] {
        &self.arcs
    }

    /// Arcs leaving `v`, in input order.
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = &Edge<W>> + '_ {
        self.out[v].iter().map(move |&i| &self.arcs[i])
    }

    /// Text form: header `k n directed|undirected`, then `from to w1 .. wk`.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.k, self.n, if self.directed { "directed" } else { "undirected" });
        for e in &self.edges {
            let _ = writeln!(s, "{} {} {}", e.from, e.to, e.weights);
        }
        s
    }

    /// Parses the text form. Blank lines and `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<Self, PathError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(PathError::Parse { line: 0, message: "empty graph file".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let bad_header = |m: &str| PathError::Parse { line: hline, message: m.to_string() };
        if fields.len() != 3 {
            return Err(bad_header("header must be `k n directed|undirected`"));
        }
        let k: usize = fields[0].parse().map_err(|_| bad_header("k must be a nonnegative integer"))?;
        let n: usize = fields[1].parse().map_err(|_| bad_header("n must be a nonnegative integer"))?;
        let directed = match fields[2] {
            "directed" => true,
            "undirected" => false,
            _ => return Err(bad_header("expected `directed` or `undirected`")),
        };
        let mut g = Self::new(n, k, directed).map_err(|e| bad_header(&e.to_string()))?;
        for (line, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let err = |m: String| PathError::Parse { line, message: m };
            if parts.len() != k + 2 {
                return Err(err(format!("expected {} fields, found {}", k + 2, parts.len())));
            }
            let from: usize = parts[0].parse().map_err(|_| err(format!("bad node {:?}", parts[0])))?;
            let to: usize = parts[1].parse().map_err(|_| err(format!("bad node {:?}", parts[1])))?;
            let weights = parts[2..]
                .iter()
                .map(|w| w.parse::<W>().map_err(|_| err(format!("bad weight {w:?}"))))
                .collect::<Result<Vec<W>, _>>()?;
            g.add_edge(from, to, weights).map_err(|e| err(e.to_string()))?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let spec = GraphSpec {
            k: self.k,
            n: self.n,
            directed: self.directed,
            edges: self.edges.iter().map(|e| EdgeSpec { from: e.from, to: e.to, weights: e.weights.components().to_vec() }).collect(),
        };
        serde_json::to_string_pretty(&spec).expect("graph serializes")
    }

    pub fn parse_json(text: &str) -> Result<Self, PathError> {
        let spec: GraphSpec<W> = serde_json::from_str(text).map_err(|e| PathError::Json(e.to_string()))?;
        Self::from_edges(spec.n, spec.k, spec.directed, spec.edges.into_iter().map(|e| (e.from, e.to, e.weights)))
    }

    /// JSON when the first non-blank character is `{`, text otherwise.
    pub fn parse_any(text: &str) -> Result<Self, PathError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphSpec<W> {
    k: usize,
    n: usize,
    directed: bool,
    edges: Vec<EdgeSpec<W>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeSpec<W> {
    from: usize,
    to: usize,
    weights: Vec<W>,
}

/// A decision query `s t b1 .. bk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query<W> {
    pub s: usize,
    pub t: usize,
    pub bounds: Vec<W>,
}

impl<W: Cost> Query<W> {
    pub fn parse(line: &str, k: usize) -> Result<Self, PathError> {
        let err = |m: String| PathError::Parse { line: 1, message: m };
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() < 2 {
            return Err(err("query must be `s t b1 .. bk`".into()));
        }
        if parts.len() != k + 2 {
            return Err(PathError::Arity { expected: k, found: parts.len() - 2 });
        }
        let s = parts[0].parse().map_err(|_| err(format!("bad node {:?}", parts[0])))?;
        let t = parts[1].parse().map_err(|_| err(format!("bad node {:?}", parts[1])))?;
        let bounds = parts[2..]
            .iter()
            .map(|b| b.parse::<W>().map_err(|_| err(format!("bad bound {b:?}"))))
            .collect::<Result<_, _>>()?;
        Ok(Query { s, t, bounds })
    }
}
