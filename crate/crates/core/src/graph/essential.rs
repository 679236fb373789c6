//! Descendant graphs and essential graphs of monomials.
//!
//! Both constructions depend on a vertex labelling: in an edge `{u, v}` with
//! `u < v`, `v` is a child of `u`, and descendants are reached along
//! index-increasing paths. The public functions take the labelling as a
//! [`VertexOrdering`] and report results in the caller's labels; the
//! `*_ordered` variants assume the graph is already labelled.

use std::collections::BTreeSet;

use super::{Graph, Vertex, VertexOrdering};
use crate::algebra::ExponentVector;

/// A subgraph given by a vertex set and the edges among them that were kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubgraphEdgeSet {
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
}

impl SubgraphEdgeSet {
    /// Subgraph of `g` induced by `vertices`.
    pub fn induced(g: &Graph, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        let edges = g
            .edges()
            .iter()
            .copied()
            .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
            .collect();
        Self {
            vertices: vertices.into_iter().collect(),
            edges,
        }
    }

    /// An explicit edge set `F` together with the vertices it touches.
    pub fn from_edges(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let edges: BTreeSet<(Vertex, Vertex)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let vertices: BTreeSet<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Self {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Whether `self` is a subgraph of `other`.
    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.vertices.iter().all(|&v| other.contains_vertex(v))
            && self.edges.iter().all(|&(u, v)| other.contains_edge(u, v))
    }

    fn relabel(&self, order: &VertexOrdering) -> Self {
        let vertices: BTreeSet<Vertex> = self.vertices.iter().map(|&v| order.new_label(v)).collect();
        let mut edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (order.new_label(u), order.new_label(v));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Self {
            vertices: vertices.into_iter().collect(),
            edges,
        }
    }
}

/// Union-find acyclicity check.
pub fn is_forest(h: &SubgraphEdgeSet) -> bool {
    let index = |v: Vertex| h.vertices.binary_search(&v).expect("edge endpoint in vertex set");
    let mut parent: Vec<usize> = (0..h.vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in &h.edges {
        let (a, b) = (find(&mut parent, index(u)), find(&mut parent, index(v)));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Subgraph induced by `supp(m)` and all descendants of those vertices.
pub fn descendant_graph(g: &Graph, order: &VertexOrdering, m: &ExponentVector) -> SubgraphEdgeSet {
    let h = g.relabel(order);
    let support: Vec<Vertex> = m.support().map(|v| order.new_label(v)).collect();
    descendant_graph_ordered(&h, &support).relabel(&order.inverse())
}

/// Essential graph (closure of the descendant graph under merging components
/// whose parents coincide or are adjacent).
pub fn essential_graph(g: &Graph, order: &VertexOrdering, m: &ExponentVector) -> SubgraphEdgeSet {
    let h = g.relabel(order);
    let support: Vec<Vertex> = m.support().map(|v| order.new_label(v)).collect();
    essential_graph_ordered(&h, &support).relabel(&order.inverse())
}

/// [`descendant_graph`] for a graph that is already labelled in the desired
/// order, with `support` in those labels.
pub fn descendant_graph_ordered(g: &Graph, support: &[Vertex]) -> SubgraphEdgeSet {
    let mut set = BTreeSet::new();
    add_with_descendants(g, support.iter().copied(), &mut set);
    SubgraphEdgeSet::induced(g, set)
}

/// [`essential_graph`] for a graph that is already labelled in the desired
/// order.
pub fn essential_graph_ordered(g: &Graph, support: &[Vertex]) -> SubgraphEdgeSet {
    let mut set = BTreeSet::new();
    add_with_descendants(g, support.iter().copied(), &mut set);
    while let Some((a, b)) = find_merge(g, &set) {
        add_with_descendants(g, [a, b], &mut set);
    }
    SubgraphEdgeSet::induced(g, set)
}

fn add_with_descendants(g: &Graph, roots: impl IntoIterator<Item = Vertex>, set: &mut BTreeSet<Vertex>) {
    let mut stack: Vec<Vertex> = roots.into_iter().collect();
    while let Some(v) = stack.pop() {
        if set.insert(v) {
            stack.extend(g.children(v).filter(|c| !set.contains(c)));
        }
    }
}

/// Components of `g[set]`, each sorted, listed by ascending smallest vertex.
fn components(g: &Graph, set: &BTreeSet<Vertex>) -> Vec<Vec<Vertex>> {
    let mut seen = BTreeSet::new();
    let mut comps = Vec::new();
    for &start in set {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if set.contains(&w) && seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

// First pair of parents (u*, v*) that triggers a merge, scanning component
// pairs by ascending smallest vertex, then parents ascending. A pair is only
// reported if it adds a vertex, which guarantees termination.
fn find_merge(g: &Graph, set: &BTreeSet<Vertex>) -> Option<(Vertex, Vertex)> {
    let comps = components(g, set);
    let parent_sets: Vec<Vec<Vertex>> = comps
        .iter()
        .map(|c| {
            let ps: BTreeSet<Vertex> = c.iter().flat_map(|&w| g.parents(w)).collect();
            ps.into_iter().collect()
        })
        .collect();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            for &p in &parent_sets[i] {
                for &q in &parent_sets[j] {
                    if (p == q || g.has_edge(p, q)) && !(set.contains(&p) && set.contains(&q)) {
                        return Some((p, q));
                    }
                }
            }
        }
    }
    None
}
