//! Simple undirected graphs on vertices `1..=n`.

mod coloring;
mod essential;

pub use coloring::{
    greedy_coloring, longest_increasing_path, ordering_from_coloring, ProperColoring,
    VertexOrdering,
};
pub use essential::{
    descendant_graph, descendant_graph_ordered, essential_graph, essential_graph_ordered, is_forest,
    SubgraphEdgeSet,
};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::exec::{self, Execution};

pub type Vertex = u32;

/// Simple undirected graph with vertex set `{1, …, n}`.
///
/// Edges are stored once, as `(u, v)` with `u < v`, sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u32,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: u32,
    edges: Vec<[u32; 2]>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges in either orientation.
    pub fn new(n: u32, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v || u == 0 || v == 0 || u > n || v > n {
                return Err(GraphError::InvalidEdge(u, v));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: u32, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n as usize + 1];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn empty(n: u32) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Self::new(n, (1..=n).map(|i| (i, i % n + 1))).expect("valid cycle")
    }

    pub fn path(n: u32) -> Self {
        Self::new(n, (1..n).map(|i| (i, i + 1))).expect("valid path")
    }

    pub fn complete(n: u32) -> Self {
        Self::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)))).expect("valid clique")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v
            && u >= 1
            && u <= self.n
            && v >= 1
            && v <= self.n
            && self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Lower-labelled neighbours.
    pub fn parents(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v as usize].iter().copied().take_while(move |&w| w < v)
    }

    /// Higher-labelled neighbours.
    pub fn children(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v as usize].iter().copied().filter(move |&w| w > v)
    }

    /// Same graph with every edge removed except those in `keep`.
    pub fn with_edges(&self, keep: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        for &(u, v) in keep {
            if !self.has_edge(u, v) {
                return Err(GraphError::UnknownEdge(u, v));
            }
        }
        Self::new(self.n, keep.iter().copied())
    }

    /// Same graph without the edge `{u, v}`.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Result<Self, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::UnknownEdge(u, v));
        }
        let key = (u.min(v), u.max(v));
        Ok(Self::from_sorted(
            self.n,
            self.edges.iter().copied().filter(|&e| e != key).collect(),
        ))
    }

    /// Relabels every vertex `v` as `order.new_label(v)`.
    pub fn relabel(&self, order: &VertexOrdering) -> Self {
        Self::new(
            self.n,
            self.edges
                .iter()
                .map(|&(u, v)| (order.new_label(u), order.new_label(v))),
        )
        .expect("relabeling preserves validity")
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&doc).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::new(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))
    }

    /// Renders the graph in DIMACS `col` format.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Parses DIMACS `col` text: `c` comments, one `p edge n m` header, then `e u v` lines.
///
/// Duplicate edges (in either orientation) are collapsed. The declared edge
/// count is informational only.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<u32> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        let Some(tag) = tok.next() else { continue };
        let parse_err = |msg: &str| GraphError::Parse {
            line,
            msg: msg.to_string(),
        };
        match tag {
            "c" => {}
            "p" => {
                if n.is_some() {
                    return Err(parse_err("duplicate `p` header"));
                }
                let kind = tok.next().ok_or_else(|| parse_err("malformed header"))?;
                if kind != "edge" && kind != "col" {
                    return Err(parse_err("header must read `p edge n m`"));
                }
                let nv: u32 = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("malformed header: vertex count"))?;
                let _m: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("malformed header: edge count"))?;
                if tok.next().is_some() {
                    return Err(parse_err("malformed header: trailing tokens"));
                }
                n = Some(nv);
            }
            "e" => {
                let nv = n.ok_or_else(|| parse_err("edge line before `p` header"))?;
                let mut endpoint = || -> Result<u32, GraphError> {
                    tok.next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| parse_err("malformed edge line"))
                };
                let u = endpoint()?;
                let v = endpoint()?;
                for w in [u, v] {
                    if w == 0 || w > nv {
                        return Err(GraphError::VertexOutOfRange {
                            line,
                            vertex: w,
                            n: nv,
                        });
                    }
                }
                if u == v {
                    return Err(GraphError::SelfLoop { line, vertex: u });
                }
                edges.push((u, v));
            }
            other => return Err(parse_err(&format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or(GraphError::MissingHeader)?;
    Graph::new(n, edges)
}

/// Length of a shortest cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

pub fn girth(g: &Graph) -> Girth {
    girth_with(g, Execution::default())
}

/// Shortest cycle via a BFS rooted at every vertex.
pub fn girth_with(g: &Graph, exec: Execution) -> Girth {
    let roots: Vec<Vertex> = g.vertices().collect();
    let best = exec::map(exec, &roots, |&s| shortest_cycle_through_bfs(g, s))
        .into_iter()
        .flatten()
        .min();
    best.map_or(Girth::Infinite, Girth::Finite)
}

// Smallest cycle length detected by a BFS from `root`. The minimum over all
// roots is the girth.
fn shortest_cycle_through_bfs(g: &Graph, root: Vertex) -> Option<u32> {
    let n = g.n as usize;
    let mut dist = vec![u32::MAX; n + 1];
    let mut parent = vec![0u32; n + 1];
    let mut queue = VecDeque::new();
    dist[root as usize] = 0;
    queue.push_back(root);
    let mut best: Option<u32> = None;
    while let Some(u) = queue.pop_front() {
        if let Some(b) = best {
            if 2 * dist[u as usize] + 1 >= b {
                break;
            }
        }
        for &w in g.neighbors(u) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[u as usize] + 1;
                parent[w as usize] = u;
                queue.push_back(w);
            } else if parent[u as usize] != w {
                let len = dist[u as usize] + dist[w as usize] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}
