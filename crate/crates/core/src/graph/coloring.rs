use super::{Graph, Vertex};
use crate::error::GraphError;

/// Vertex colouring with colours `1..=c`, proper on the graph it was built for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProperColoring {
    // colors[v] for v in 1..=n; slot 0 unused
    colors: Vec<u32>,
    classes: u32,
}

impl ProperColoring {
    /// Validates `colors` (vertex `i + 1` gets `colors[i]`, colours start at 1)
    /// against `g`.
    pub fn new(g: &Graph, colors: &[u32]) -> Result<Self, GraphError> {
        if colors.len() != g.n() as usize {
            return Err(GraphError::ColoringSize {
                got: colors.len(),
                n: g.n(),
            });
        }
        if let Some(i) = colors.iter().position(|&c| c == 0) {
            return Err(GraphError::ZeroColor(i as u32 + 1));
        }
        for &(u, v) in g.edges() {
            if colors[u as usize - 1] == colors[v as usize - 1] {
                return Err(GraphError::ImproperColoring(u, v));
            }
        }
        let mut stored = Vec::with_capacity(colors.len() + 1);
        stored.push(0);
        stored.extend_from_slice(colors);
        let classes = colors.iter().copied().max().unwrap_or(0);
        Ok(Self {
            colors: stored,
            classes,
        })
    }

    pub fn color(&self, v: Vertex) -> u32 {
        self.colors[v as usize]
    }

    /// Largest colour index used.
    pub fn color_count(&self) -> u32 {
        self.classes
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colors[1..]
    }
}

/// DSATUR: repeatedly colour the uncoloured vertex with the most distinctly
/// coloured neighbours (ties: larger degree, then lower label) with the
/// smallest colour absent from its neighbourhood.
pub fn greedy_coloring(g: &Graph) -> ProperColoring {
    let n = g.n() as usize;
    let mut colors = vec![0u32; n + 1];
    // neighbour colour sets as sorted vectors; graphs here are small
    let mut seen: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for _ in 0..n {
        let v = g
            .vertices()
            .filter(|&v| colors[v as usize] == 0)
            .max_by(|&a, &b| {
                let ka = (seen[a as usize].len(), g.degree(a));
                let kb = (seen[b as usize].len(), g.degree(b));
                ka.cmp(&kb).then(b.cmp(&a))
            })
            .expect("an uncoloured vertex remains");
        let used = &seen[v as usize];
        let c = (1..).find(|c| used.binary_search(c).is_err()).unwrap();
        colors[v as usize] = c;
        for &w in g.neighbors(v) {
            let s = &mut seen[w as usize];
            if let Err(pos) = s.binary_search(&c) {
                s.insert(pos, c);
            }
        }
    }
    ProperColoring::new(g, &colors[1..]).expect("DSATUR produces a proper colouring")
}

/// A relabelling of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    new_of_old: Vec<Vertex>,
    old_of_new: Vec<Vertex>,
}

impl VertexOrdering {
    pub fn identity(n: u32) -> Self {
        let ids: Vec<Vertex> = (0..=n).collect();
        Self {
            new_of_old: ids.clone(),
            old_of_new: ids,
        }
    }

    /// `labels[i]` is the new label of vertex `i + 1`.
    pub fn from_new_labels(labels: &[Vertex]) -> Result<Self, GraphError> {
        let n = labels.len() as u32;
        let mut old_of_new = vec![0; labels.len() + 1];
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 || l > n || old_of_new[l as usize] != 0 {
                return Err(GraphError::NotABijection(n));
            }
            old_of_new[l as usize] = i as u32 + 1;
        }
        let mut new_of_old = Vec::with_capacity(labels.len() + 1);
        new_of_old.push(0);
        new_of_old.extend_from_slice(labels);
        Ok(Self {
            new_of_old,
            old_of_new,
        })
    }

    pub fn len(&self) -> u32 {
        self.new_of_old.len() as u32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn new_label(&self, old: Vertex) -> Vertex {
        self.new_of_old[old as usize]
    }

    pub fn old_label(&self, new: Vertex) -> Vertex {
        self.old_of_new[new as usize]
    }

    pub fn inverse(&self) -> Self {
        Self {
            new_of_old: self.old_of_new.clone(),
            old_of_new: self.new_of_old.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.new_of_old.iter().enumerate().all(|(i, &l)| i as u32 == l)
    }

    pub fn new_labels(&self) -> &[Vertex] {
        &self.new_of_old[1..]
    }
}

/// Labels colour class 1 first, then class 2, and so on; ascending old label
/// inside each class. Every index-increasing path then crosses classes in
/// increasing order, so it has at most `c - 1` edges.
pub fn ordering_from_coloring(
    g: &Graph,
    coloring: &ProperColoring,
) -> Result<VertexOrdering, GraphError> {
    // re-validate: the colouring may have been built for a different graph
    let coloring = ProperColoring::new(g, coloring.as_slice())?;
    let mut by_class: Vec<(u32, Vertex)> = g.vertices().map(|v| (coloring.color(v), v)).collect();
    by_class.sort_unstable();
    let mut labels = vec![0; g.n() as usize];
    for (new, &(_, old)) in by_class.iter().enumerate() {
        labels[old as usize - 1] = new as u32 + 1;
    }
    VertexOrdering::from_new_labels(&labels)
}

/// Number of edges on the longest index-increasing path under `order`.
pub fn longest_increasing_path(g: &Graph, order: &VertexOrdering) -> u32 {
    let h = g.relabel(order);
    let n = h.n() as usize;
    let mut longest = vec![0u32; n + 1];
    for v in (1..=h.n()).rev() {
        longest[v as usize] = h
            .children(v)
            .map(|c| longest[c as usize] + 1)
            .max()
            .unwrap_or(0);
    }
    longest.into_iter().max().unwrap_or(0)
}
