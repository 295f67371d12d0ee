//! Simple undirected graphs with stable edge ids, BFS primitives and paths.
//!
//! Vertices are the dense integers `0..n`. Every edge keeps the id it was
//! created with, also in graphs derived through [`remove_edges`], so a path's
//! edge-id sequence identifies its edges across all views of one host graph.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{ParseError, PathError};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Read-only adjacency access shared by [`Graph`] and edge-filtered views.
pub trait GraphView {
    fn vertex_count(&self) -> usize;

    /// Neighbors of `v` with the joining edge id, ascending by neighbor id.
    fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_;

    fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.neighbors(u).find(|&(w, _)| w == v).map(|(_, e)| e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EdgeRejection {
    SelfLoop,
    Duplicate,
    OutOfRange(VertexId),
}

/// An immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    endpoints: Vec<(VertexId, VertexId)>,
    live: Vec<bool>,
    live_count: usize,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

pub(crate) struct GraphBuilder {
    n: usize,
    endpoints: Vec<(VertexId, VertexId)>,
    seen: HashSet<(VertexId, VertexId)>,
}

impl GraphBuilder {
    pub(crate) fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            endpoints: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub(crate) fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, EdgeRejection> {
        if u >= self.n {
            return Err(EdgeRejection::OutOfRange(u));
        }
        if v >= self.n {
            return Err(EdgeRejection::OutOfRange(v));
        }
        if u == v {
            return Err(EdgeRejection::SelfLoop);
        }
        let key = (u.min(v), u.max(v));
        if !self.seen.insert(key) {
            return Err(EdgeRejection::Duplicate);
        }
        self.endpoints.push((u, v));
        Ok(self.endpoints.len() - 1)
    }

    pub(crate) fn build(self) -> Graph {
        let live = vec![true; self.endpoints.len()];
        Graph::assemble(self.n, self.endpoints, live)
    }
}

impl Graph {
    /// Builds a graph from an edge list; edge `i` of the list gets id `i`.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> crate::Result<Graph> {
        let mut builder = GraphBuilder::new(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            builder.add_edge(u, v).map_err(|why| {
                crate::Error::InvalidArgument(format!("edge #{i} ({u},{v}) rejected: {why:?}"))
            })?;
        }
        Ok(builder.build())
    }

    fn assemble(n: usize, endpoints: Vec<(VertexId, VertexId)>, live: Vec<bool>) -> Graph {
        let mut adjacency = vec![Vec::new(); n];
        let mut live_count = 0;
        for (id, &(u, v)) in endpoints.iter().enumerate() {
            if live[id] {
                adjacency[u].push((v, id));
                adjacency[v].push((u, id));
                live_count += 1;
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            endpoints,
            live,
            live_count,
            adjacency,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.live_count
    }

    /// One past the largest edge id ever issued for this graph's id space.
    pub fn edge_id_bound(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        match self.live.get(e) {
            Some(true) => Some(self.endpoints[e]),
            _ => None,
        }
    }

    /// Live edges in ascending id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.endpoints
            .iter()
            .enumerate()
            .filter(|(id, _)| self.live[*id])
            .map(|(id, &(u, v))| (id, u, v))
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges().map(|(id, _, _)| id).collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n
            && self.adjacency[u]
                .binary_search_by_key(&v, |&(w, _)| w)
                .is_ok()
    }

    /// A view of this graph restricted to edges whose flag in `allowed` is set.
    pub fn masked<'a>(&'a self, allowed: &'a [bool]) -> Masked<'a> {
        debug_assert_eq!(allowed.len(), self.edge_id_bound());
        Masked {
            graph: self,
            allowed,
        }
    }

    /// Serializes to the `n m` + edge-lines text format, edges in id order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.live_count);
        for (_, u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl GraphView for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.adjacency[v].iter().copied()
    }

    fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = &self.adjacency[u];
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.live_count)
            .field(
                "edges",
                &self.edges().map(|(_, u, v)| (u, v)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A graph seen through an edge filter; ids are the host graph's ids.
#[derive(Clone, Copy)]
pub struct Masked<'a> {
    graph: &'a Graph,
    allowed: &'a [bool],
}

impl GraphView for Masked<'_> {
    fn vertex_count(&self) -> usize {
        self.graph.n
    }

    fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.graph.adjacency[v]
            .iter()
            .copied()
            .filter(|&(_, e)| self.allowed[e])
    }

    fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.graph.edge_between(u, v).filter(|&e| self.allowed[e])
    }
}

/// Graph on the same vertex set without `ids`; survivors keep their ids.
pub fn remove_edges(g: &Graph, ids: &[EdgeId]) -> Graph {
    let mut live = g.live.clone();
    for &id in ids {
        if let Some(flag) = live.get_mut(id) {
            *flag = false;
        }
    }
    Graph::assemble(g.n, g.endpoints.clone(), live)
}

/// Single-source hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMap {
    source: VertexId,
    dist: Vec<Option<usize>>,
}

impl DistanceMap {
    pub fn source(&self) -> VertexId {
        self.source
    }

    /// `None` when `v` is unreachable.
    pub fn get(&self, v: VertexId) -> Option<usize> {
        self.dist[v]
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.dist
    }

    pub fn reachable_count(&self) -> usize {
        self.dist.iter().filter(|d| d.is_some()).count()
    }
}

pub fn bfs_distances<G: GraphView>(g: &G, source: VertexId) -> DistanceMap {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let next = dist[v].map(|d| d + 1);
        for (w, _) in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    DistanceMap { source, dist }
}

/// A minimum-length `(s, t)`-path, breaking ties by BFS discovery order over
/// ascending neighbor ids.
pub fn shortest_path<G: GraphView>(g: &G, s: VertexId, t: VertexId) -> Option<Path> {
    if s == t {
        return Some(Path::trivial(s));
    }
    let n = g.vertex_count();
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    'search: while let Some(v) = queue.pop_front() {
        for (w, e) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e));
                if w == t {
                    break 'search;
                }
                queue.push_back(w);
            }
        }
    }
    if !seen[t] {
        return None;
    }
    let mut vertices = vec![t];
    let mut edges = Vec::new();
    let mut cur = t;
    while let Some((p, e)) = parent[cur] {
        vertices.push(p);
        edges.push(e);
        cur = p;
    }
    vertices.reverse();
    edges.reverse();
    Some(Path { vertices, edges })
}

/// A simple path: distinct vertices, consecutive ones adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Path {
    /// The zero-length path sitting at `v`.
    pub fn trivial(v: VertexId) -> Path {
        Path {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    /// Checks the vertex sequence against `g` and resolves its edge ids.
    pub fn new<G: GraphView>(g: &G, vertices: Vec<VertexId>) -> Result<Path, PathError> {
        if vertices.is_empty() {
            return Err(PathError::Empty);
        }
        let n = g.vertex_count();
        let mut seen = HashSet::with_capacity(vertices.len());
        for &v in &vertices {
            if v >= n {
                return Err(PathError::UnknownVertex(v));
            }
            if !seen.insert(v) {
                return Err(PathError::RepeatedVertex(v));
            }
        }
        let edges = vertices
            .windows(2)
            .map(|w| {
                g.edge_between(w[0], w[1])
                    .ok_or(PathError::NotAdjacent(w[0], w[1]))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Path { vertices, edges })
    }

    /// Re-checks this path against a (possibly different) host graph.
    pub fn validate_in(&self, g: &Graph) -> Result<(), PathError> {
        let fresh = Path::new(g, self.vertices.clone())?;
        if let Some((&e, _)) = self.edges.iter().zip(&fresh.edges).find(|(a, b)| a != b) {
            return Err(PathError::EdgeMismatch(e));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Always false; a path holds at least one vertex.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().expect("non-empty path")
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        Path { vertices, edges }
    }

    pub fn shares_edge_with(&self, other: &Path) -> bool {
        let mine: HashSet<_> = self.edges.iter().collect();
        other.edges.iter().any(|e| mine.contains(e))
    }

    /// Space-separated vertex sequence, the solution-file line format.
    pub fn to_line(&self) -> String {
        self.vertices
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("-"))
    }
}

/// Line reader for the text formats: skips blank lines and `#` comments and
/// remembers 1-based physical line numbers.
pub(crate) struct LineCursor<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> LineCursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        LineCursor {
            lines: text.lines().enumerate(),
        }
    }

    pub(crate) fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.lines.by_ref() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((idx + 1, line));
        }
        None
    }

    pub(crate) fn expect_content(
        &mut self,
        expected: &str,
    ) -> Result<(usize, &'a str), ParseError> {
        self.next_content()
            .ok_or_else(|| ParseError::UnexpectedEof {
                expected: expected.to_string(),
            })
    }
}

pub(crate) fn parse_usize(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| {
        ParseError::malformed(
            line,
            format!("expected a non-negative integer, got {token:?}"),
        )
    })
}

pub(crate) fn parse_graph_block(cursor: &mut LineCursor<'_>) -> Result<Graph, ParseError> {
    let (line, header) = cursor.expect_content("graph header \"n m\"")?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(ParseError::malformed(line, "header must be \"n m\""));
    }
    let n = parse_usize(tokens[0], line)?;
    let m = parse_usize(tokens[1], line)?;
    let mut builder = GraphBuilder::new(n);
    for i in 0..m {
        let (line, text) = cursor.expect_content(&format!("edge {} of {m}", i + 1))?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::malformed(line, "edge line must be \"u v\""));
        }
        let u = parse_usize(tokens[0], line)?;
        let v = parse_usize(tokens[1], line)?;
        builder.add_edge(u, v).map_err(|why| match why {
            EdgeRejection::SelfLoop => ParseError::SelfLoop { line, vertex: u },
            EdgeRejection::Duplicate => ParseError::DuplicateEdge { line, u, v },
            EdgeRejection::OutOfRange(vertex) => ParseError::VertexOutOfRange { line, vertex, n },
        })?;
    }
    Ok(builder.build())
}

/// Parses a standalone graph file: header `n m`, then `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut cursor = LineCursor::new(text);
    let graph = parse_graph_block(&mut cursor)?;
    if let Some((line, _)) = cursor.next_content() {
        return Err(ParseError::malformed(
            line,
            "trailing content after the edge list",
        ));
    }
    Ok(graph)
}
