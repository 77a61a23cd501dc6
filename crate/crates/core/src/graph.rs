//! Directed graph instances.
//!
//! Vertices carry 1-based labels `1..=order`. The highest label is the fixed
//! start/end vertex of every Hamilton cycle, so a graph of order `n + 1`
//! yields an `n`-permutation model. Undirected input is stored as pairs of
//! counter-directed arcs.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Deref, DerefMut};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Length of a shortest directed path, in arcs.
///
/// A graph of order `n + 1` reports the sentinel `n + 1` when no path exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathLength {
    value: usize,
    sentinel: usize,
}

impl PathLength {
    pub fn value(self) -> usize {
        self.value
    }

    pub fn is_unreachable(self) -> bool {
        self.value == self.sentinel
    }
}

impl fmt::Display for PathLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    order: usize,
    adj: Vec<bool>,
}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectedGraph")
            .field("order", &self.order)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl DirectedGraph {
    /// An arcless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self> {
        if order < 3 {
            return Err(Error::TooFewVertices(order));
        }
        Ok(Self {
            order,
            adj: vec![false; order * order],
        })
    }

    pub fn from_arcs(order: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(order)?;
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Every edge `{u, v}` becomes the arcs `(u, v)` and `(v, u)`.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(order)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(order: usize) -> Result<Self> {
        let mut g = Self::empty(order)?;
        for u in 1..=order {
            for v in 1..=order {
                if u != v {
                    g.adj[(u - 1) * order + (v - 1)] = true;
                }
            }
        }
        Ok(g)
    }

    /// Number of vertices, `n + 1`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Size `n` of the permutation model.
    pub fn model_size(&self) -> usize {
        self.order - 1
    }

    /// The fixed start/end vertex `n + 1`.
    pub fn start_vertex(&self) -> usize {
        self.order
    }

    fn check(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.order {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn slot(&self, u: usize, v: usize) -> usize {
        (u - 1) * self.order + (v - 1)
    }

    /// Membership test. Labels outside the graph are never adjacent.
    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.order && v <= self.order && self.adj[self.slot(u, v)]
    }

    /// Inserts `(u, v)`; returns whether it was already present.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let s = self.slot(u, v);
        Ok(std::mem::replace(&mut self.adj[s], true))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_arc(u, v)?;
        self.add_arc(v, u)?;
        Ok(())
    }

    /// Removes `(u, v)`; returns whether it was present.
    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        if !self.has_arc(u, v) {
            return false;
        }
        let s = self.slot(u, v);
        std::mem::replace(&mut self.adj[s], false)
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count()
    }

    /// Arcs in row-major label order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.order).flat_map(move |u| {
            (1..=self.order)
                .filter(move |&v| self.has_arc(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.order).filter(move |&v| self.has_arc(u, v))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_neighbors(u).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (1..=self.order).filter(|&u| self.has_arc(u, v)).count()
    }

    /// True when every arc has its reverse, i.e. the graph is undirected.
    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    /// Unit-weight single-source distances (BFS; Dijkstra with equal weights
    /// visits vertices in the same order). Index 0 is unused.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order + 1];
        if s == 0 || s > self.order {
            return dist;
        }
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for y in self.out_neighbors(x) {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Fewest arcs on a directed `s -> t` path, or the sentinel `n + 1`.
    pub fn shortest_path(&self, s: usize, t: usize) -> PathLength {
        let sentinel = self.order;
        let mut dist = vec![usize::MAX; self.order + 1];
        let mut queue = VecDeque::new();
        if s >= 1 && s <= self.order {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(x) = queue.pop_front() {
            for y in self.out_neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == t {
                        return PathLength {
                            value: dist[y].min(sentinel),
                            sentinel,
                        };
                    }
                    queue.push_back(y);
                }
            }
        }
        PathLength {
            value: sentinel,
            sentinel,
        }
    }

    pub fn is_strongly_connected(&self) -> bool {
        let reaches_all = |g: &Self, reverse: bool| {
            let mut seen = vec![false; g.order + 1];
            let mut stack = vec![1];
            seen[1] = true;
            while let Some(x) = stack.pop() {
                for y in 1..=g.order {
                    let arc = if reverse { g.has_arc(y, x) } else { g.has_arc(x, y) };
                    if arc && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen[1..].iter().all(|&s| s)
        };
        reaches_all(self, false) && reaches_all(self, true)
    }

    /// Runs `body` with `(u, v)` temporarily absent. The previous membership
    /// of the arc is restored when `body` returns or unwinds.
    pub fn with_arc_deleted<R>(&mut self, u: usize, v: usize, body: impl FnOnce(&mut Self) -> R) -> R {
        let existed = self.remove_arc(u, v);
        let mut guard = ArcRestore {
            graph: self,
            u,
            v,
            existed,
        };
        body(&mut guard)
    }

    /// Swaps labels `label` and `n + 1`, making `label` the start vertex.
    pub fn relabel_as_start(&self, label: usize) -> Result<Self> {
        self.check(label)?;
        let last = self.order;
        let swap = |x: usize| {
            if x == label {
                last
            } else if x == last {
                label
            } else {
                x
            }
        };
        Self::from_arcs(self.order, self.arcs().map(|(u, v)| (swap(u), swap(v))))
    }

    /// Dense 0/1 adjacency rows, 0-based.
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        (1..=self.order)
            .map(|u| (1..=self.order).map(|v| self.has_arc(u, v)).collect())
            .collect()
    }
}

struct ArcRestore<'a> {
    graph: &'a mut DirectedGraph,
    u: usize,
    v: usize,
    existed: bool,
}

impl Deref for ArcRestore<'_> {
    type Target = DirectedGraph;
    fn deref(&self) -> &DirectedGraph {
        self.graph
    }
}

impl DerefMut for ArcRestore<'_> {
    fn deref_mut(&mut self) -> &mut DirectedGraph {
        self.graph
    }
}

impl Drop for ArcRestore<'_> {
    fn drop(&mut self) {
        if self.existed {
            let s = self.graph.slot(self.u, self.v);
            self.graph.adj[s] = true;
        } else if self.graph.has_arc(self.u, self.v) {
            // the body may have inserted it; the scope restores absence
            let s = self.graph.slot(self.u, self.v);
            self.graph.adj[s] = false;
        }
    }
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses the edge-list format: a header line with the vertex count, then
/// one `u v` pair per line. `#` starts a comment line.
pub fn parse_edge_list(text: &str, directed: bool) -> Result<DirectedGraph> {
    let mut lines = significant_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing vertex-count header".into(),
    })?;
    let order: usize = header.parse().map_err(|_| Error::Parse {
        line: header_line,
        message: format!("expected vertex count, found `{header}`"),
    })?;
    let mut g = DirectedGraph::empty(order).map_err(|e| Error::Parse {
        line: header_line,
        message: e.to_string(),
    })?;
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse_vertex = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line,
                message: format!("expected vertex label, found `{s}`"),
            })
        };
        let (u, v) = match fields.as_slice() {
            [a, b] => (parse_vertex(a)?, parse_vertex(b)?),
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `u v`, found `{content}`"),
                })
            }
        };
        let added = if directed {
            g.add_arc(u, v).map(|_| ())
        } else {
            g.add_edge(u, v)
        };
        added.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes one graph6 string into counter-directed arc pairs.
pub fn parse_graph6(text: &str) -> Result<DirectedGraph> {
    let mut s = text.trim();
    let mut base = text.len() - text.trim_start().len();
    if let Some(rest) = s.strip_prefix(GRAPH6_HEADER) {
        s = rest.trim_start();
        base += GRAPH6_HEADER.len();
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6 {
            offset: base,
            message: "empty input".into(),
        });
    }
    for (k, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6 {
                offset: base + k,
                message: format!("byte {b:#04x} outside the printable graph6 range"),
            });
        }
    }
    let trunc = |offset: usize| Error::Graph6 {
        offset: base + offset,
        message: "truncated input".into(),
    };
    let word = |from: usize, len: usize| -> Result<usize> {
        let chunk = bytes.get(from..from + len).ok_or_else(|| trunc(from))?;
        Ok(chunk.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (order, start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        (word(1, 3)?, 4)
    } else {
        (word(2, 6)?, 8)
    };
    let bits = order * order.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let body = &bytes[start.min(bytes.len())..];
    if body.len() < needed {
        return Err(trunc(start + body.len()));
    }
    if body.len() > needed {
        return Err(Error::Graph6 {
            offset: base + start + needed,
            message: "trailing bytes after graph".into(),
        });
    }
    let mut g = DirectedGraph::empty(order).map_err(|e| Error::Graph6 {
        offset: base,
        message: e.to_string(),
    })?;
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i + 1, j + 1).expect("labels are in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Parses a file of graph6 lines, skipping blanks.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<DirectedGraph>> {
    let mut offset = 0;
    let mut out = Vec::new();
    for line in text.split_inclusive('\n') {
        if !line.trim().is_empty() {
            out.push(parse_graph6(line).map_err(|e| match e {
                Error::Graph6 { offset: o, message } => Error::Graph6 {
                    offset: offset + o,
                    message,
                },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}

/// Encodes a symmetric graph as graph6.
pub fn to_graph6(g: &DirectedGraph) -> Result<String> {
    if !g.is_symmetric() {
        return Err(Error::Config("graph6 encodes undirected graphs only".into()));
    }
    let n = g.order();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_arc(i + 1, j + 1) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Named graphs available without an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    Petersen,
    PetersenPlusEdge,
    Herschel,
    /// `K14` on vertices 1..=14 plus vertices 15..=21 each joined to 1..=7.
    C7_21,
    /// Directed cycle `1 -> 2 -> ... -> k -> 1`.
    Cycle(usize),
    /// Complete digraph on `k` vertices.
    Complete(usize),
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `name`, `name:k` and `name(k)`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, arg) = match lower.split_once([':', '(']) {
            Some((name, rest)) => (name.to_string(), Some(rest.trim_end_matches(')').to_string())),
            None => (lower.clone(), None),
        };
        let unknown = || Error::UnknownBuiltin(s.to_string());
        let size = |arg: Option<String>| -> Result<usize> { arg.and_then(|a| a.parse().ok()).ok_or_else(unknown) };
        match (name.replace('-', "_").as_str(), arg) {
            ("petersen", None) => Ok(Self::Petersen),
            ("petersen_plus_edge", None) => Ok(Self::PetersenPlusEdge),
            ("herschel", None) => Ok(Self::Herschel),
            ("c7_21", None) => Ok(Self::C7_21),
            ("cycle", a) => Ok(Self::Cycle(size(a)?)),
            ("complete", a) => Ok(Self::Complete(size(a)?)),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Petersen => write!(f, "petersen"),
            Self::PetersenPlusEdge => write!(f, "petersen_plus_edge"),
            Self::Herschel => write!(f, "herschel"),
            Self::C7_21 => write!(f, "c7_21"),
            Self::Cycle(k) => write!(f, "cycle:{k}"),
            Self::Complete(k) => write!(f, "complete:{k}"),
        }
    }
}

#[rustfmt::skip]
const PETERSEN_EDGES: [(usize, usize); 15] = [
    (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
    (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
    (6, 8), (8, 10), (10, 7), (7, 9), (9, 6),
];

#[rustfmt::skip]
const HERSCHEL_EDGES: [(usize, usize); 18] = [
    (1, 2), (1, 4), (1, 5), (2, 3), (2, 6), (2, 7),
    (3, 4), (3, 8), (4, 9), (4, 10), (5, 6), (5, 10),
    (6, 11), (7, 8), (7, 11), (8, 9), (9, 11), (10, 11),
];

pub fn builtin_graph(name: Builtin) -> Result<DirectedGraph> {
    match name {
        Builtin::Petersen => DirectedGraph::from_edges(10, PETERSEN_EDGES),
        Builtin::PetersenPlusEdge => DirectedGraph::from_edges(10, PETERSEN_EDGES.into_iter().chain([(1, 3)])),
        Builtin::Herschel => DirectedGraph::from_edges(11, HERSCHEL_EDGES),
        Builtin::C7_21 => {
            let mut g = DirectedGraph::empty(21)?;
            for u in 1..=14 {
                for v in u + 1..=14 {
                    g.add_edge(u, v)?;
                }
            }
            for hub in 15..=21 {
                for rim in 1..=7 {
                    g.add_edge(hub, rim)?;
                }
            }
            Ok(g)
        }
        Builtin::Cycle(k) => DirectedGraph::from_arcs(k, (1..=k).map(|u| (u, u % k + 1))),
        Builtin::Complete(k) => DirectedGraph::complete(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> DirectedGraph {
        parse_edge_list("3\n1 2\n2 3\n3 1", true).unwrap()
    }

    #[test]
    fn edge_list_directed_read_back() {
        let g = three_cycle();
        assert_eq!(g.order(), 3);
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(1, 2), (2, 3), (3, 1)]);
    }

    #[test]
    fn edge_list_undirected_pairs() {
        let g = parse_edge_list("3\n1 2", false).unwrap();
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        assert_eq!(
            parse_edge_list("3\n1 1", true).unwrap_err(),
            Error::Parse {
                line: 2,
                message: "self-loop at vertex 1".into()
            }
        );
        match parse_edge_list("3\n1 2\n# note\n1 9", true).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            e => panic!("{e}"),
        }
        match parse_edge_list("3\n1 2 3", true).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("{e}"),
        }
        assert!(parse_edge_list("", true).is_err());
        assert!(parse_edge_list("2\n1 2", true).is_err());
    }

    #[test]
    fn graph6_complete_triangle() {
        // K3: n = 3 -> 'B', bits 111 -> 0b111000 + 63
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g.arc_count(), 6);
        assert_eq!(to_graph6(&g).unwrap(), "Bw");
    }

    #[test]
    fn graph6_petersen() {
        // networkx.to_graph6_bytes(petersen_graph(), header=False)
        let g = parse_graph6(">>graph6<<IheA@GUAo\n").unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(g.arc_count(), 30);
        assert!(g.arcs().all(|(u, _)| g.out_degree(u) == 3));
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { .. })));
        match parse_graph6("B\u{7f}").unwrap_err() {
            Error::Graph6 { offset, .. } => assert_eq!(offset, 1),
            e => panic!("{e}"),
        }
        assert!(matches!(parse_graph6("I"), Err(Error::Graph6 { .. })));
    }

    #[test]
    fn builtins() {
        let p = builtin_graph(Builtin::Petersen).unwrap();
        assert_eq!((p.order(), p.arc_count()), (10, 30));
        let c = builtin_graph(Builtin::C7_21).unwrap();
        assert_eq!(c.order(), 21);
        assert_eq!((1..=21).map(|u| c.out_degree(u)).min(), Some(7));
        assert_eq!(builtin_graph(Builtin::Complete(4)).unwrap().arc_count(), 12);
        let h = builtin_graph(Builtin::Herschel).unwrap();
        assert_eq!((h.order(), h.arc_count()), (11, 36));
        assert_eq!(builtin_graph(Builtin::PetersenPlusEdge).unwrap().arc_count(), 32);
    }

    #[test]
    fn builtin_names() {
        assert_eq!("complete:4".parse::<Builtin>().unwrap(), Builtin::Complete(4));
        assert_eq!("complete(5)".parse::<Builtin>().unwrap(), Builtin::Complete(5));
        assert_eq!("C7-21".parse::<Builtin>().unwrap(), Builtin::C7_21);
        assert_eq!("cycle:4".parse::<Builtin>().unwrap(), Builtin::Cycle(4));
        assert!("dodecahedron".parse::<Builtin>().is_err());
        assert!("complete".parse::<Builtin>().is_err());
    }

    #[test]
    fn strong_connectivity() {
        assert!(three_cycle().is_strongly_connected());
        let path = parse_edge_list("3\n1 2\n2 3", true).unwrap();
        assert!(!path.is_strongly_connected());
        assert!(builtin_graph(Builtin::Petersen).unwrap().is_strongly_connected());
    }

    #[test]
    fn shortest_paths() {
        let mut g = three_cycle();
        assert_eq!(g.shortest_path(1, 3).value(), 2);
        assert_eq!(g.shortest_path(1, 2).value(), 1);
        // 1 -> 2 is the only way out of 1; the sentinel is the vertex count
        let len = g.with_arc_deleted(1, 2, |g| g.shortest_path(1, 2));
        assert_eq!(len.value(), 3);
        assert!(len.is_unreachable());
    }

    #[test]
    fn scoped_deletion_restores() {
        let mut g = three_cycle();
        let inside = g.with_arc_deleted(1, 2, |g| g.has_arc(1, 2));
        assert!(!inside);
        assert!(g.has_arc(1, 2));

        let before = g.clone();
        g.with_arc_deleted(2, 1, |g| assert_eq!(g.arc_count(), 3));
        assert_eq!(g, before);

        g.with_arc_deleted(1, 2, |g| {
            g.with_arc_deleted(2, 3, |g| {
                assert!(!g.has_arc(1, 2) && !g.has_arc(2, 3));
            });
            assert!(g.has_arc(2, 3) && !g.has_arc(1, 2));
        });
        assert_eq!(g, before);

        let failed: std::result::Result<(), &str> = g.with_arc_deleted(3, 1, |_| Err("boom"));
        assert!(failed.is_err());
        assert_eq!(g, before);
    }

    #[test]
    fn relabel_moves_vertex_to_start() {
        let g = parse_edge_list("4\n1 2\n2 3\n3 4\n4 1", true).unwrap();
        let r = g.relabel_as_start(1).unwrap();
        assert!(r.has_arc(4, 2) && r.has_arc(3, 1) && r.has_arc(1, 4));
        assert_eq!(r.arc_count(), 4);
    }
}
