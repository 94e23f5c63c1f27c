//! Finite simplicial graphs, edge-adding extensions, and injective simplicial maps.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A finite simple graph on the dense vertex set `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
    // row-major adjacency, kept in sync with `edges`
    adjacency: Vec<bool>,
}

impl SimplicialGraph {
    /// Builds a graph from unordered edge pairs. Repeated pairs collapse.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            for v in [i, j] {
                if v >= vertices {
                    return Err(Error::VertexOutOfRange { vertex: v, count: vertices });
                }
            }
            if i == j {
                return Err(Error::Loop(i));
            }
            set.insert((i.min(j), i.max(j)));
        }
        let mut adjacency = vec![false; vertices * vertices];
        for &(i, j) in &set {
            adjacency[i * vertices + j] = true;
            adjacency[j * vertices + i] = true;
        }
        Ok(SimplicialGraph { vertices, edges: set, adjacency })
    }

    pub fn empty(vertices: usize) -> Self {
        Self::new(vertices, []).expect("no edges")
    }

    pub fn complete(vertices: usize) -> Self {
        let edges = (0..vertices).flat_map(|i| (i + 1..vertices).map(move |j| (i, j)));
        Self::new(vertices, edges).expect("valid edges")
    }

    pub fn path(vertices: usize) -> Self {
        Self::new(vertices, (1..vertices).map(|i| (i - 1, i))).expect("valid edges")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Edges as ordered pairs `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edge(&self, i: usize, j: usize) -> Result<bool> {
        for v in [i, j] {
            if v >= self.vertices {
                return Err(Error::VertexOutOfRange { vertex: v, count: self.vertices });
            }
        }
        Ok(self.adjacent(i, j))
    }

    /// Unchecked adjacency; false on the diagonal.
    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.vertices + j]
    }

    /// This graph with extra edges added.
    pub fn with_edges(&self, added: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(self.vertices, self.edges().chain(added))
    }
}

/// A pair `Γ ⊆ Γ̄` on a common vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphExtension {
    base: SimplicialGraph,
    extended: SimplicialGraph,
}

impl GraphExtension {
    pub fn validate(base: SimplicialGraph, extended: SimplicialGraph) -> Result<Self> {
        if base.vertex_count() != extended.vertex_count() {
            return Err(Error::VertexCountMismatch(base.vertex_count(), extended.vertex_count()));
        }
        if let Some((i, j)) = base.edges().find(|&(i, j)| !extended.adjacent(i, j)) {
            return Err(Error::ExtensionMissingEdge(i, j));
        }
        Ok(GraphExtension { base, extended })
    }

    /// The extension of `base` to the complete graph on its vertices.
    pub fn to_complete(base: SimplicialGraph) -> Self {
        let extended = SimplicialGraph::complete(base.vertex_count());
        GraphExtension { base, extended }
    }

    pub fn base(&self) -> &SimplicialGraph {
        &self.base
    }

    pub fn extended(&self) -> &SimplicialGraph {
        &self.extended
    }

    /// Edges of the extended graph that are not in the base.
    pub fn added_edges(&self) -> Vec<(usize, usize)> {
        self.extended.edges().filter(|&(i, j)| !self.base.adjacent(i, j)).collect()
    }

    /// Chains `Γ ⊆ Γ̄` with `Γ̄ ⊆ Γ̿`.
    pub fn then(&self, next: &GraphExtension) -> Result<GraphExtension> {
        if next.base != self.extended {
            return Err(Error::Precondition(
                "second extension does not start where the first ends".into(),
            ));
        }
        GraphExtension::validate(self.base.clone(), next.extended.clone())
    }
}

/// An injective vertex map that sends edges to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectiveSimplicialMap {
    source: SimplicialGraph,
    target: SimplicialGraph,
    map: Vec<usize>,
}

impl InjectiveSimplicialMap {
    pub fn validate(map: Vec<usize>, source: SimplicialGraph, target: SimplicialGraph) -> Result<Self> {
        if map.len() != source.vertex_count() {
            return Err(Error::VertexMapLength { got: map.len(), expected: source.vertex_count() });
        }
        let mut owner = vec![None; target.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            if v >= target.vertex_count() {
                return Err(Error::VertexOutOfRange { vertex: v, count: target.vertex_count() });
            }
            if let Some(prev) = owner[v] {
                return Err(Error::NonInjectiveSimplicialMap(prev, i, v));
            }
            owner[v] = Some(i);
        }
        if let Some((i, j)) = source.edges().find(|&(i, j)| !target.adjacent(map[i], map[j])) {
            return Err(Error::EdgeNotPreserved(i, j));
        }
        Ok(InjectiveSimplicialMap { source, target, map })
    }

    pub fn identity(graph: SimplicialGraph) -> Self {
        let map = (0..graph.vertex_count()).collect();
        InjectiveSimplicialMap { source: graph.clone(), target: graph, map }
    }

    pub fn source(&self) -> &SimplicialGraph {
        &self.source
    }

    pub fn target(&self) -> &SimplicialGraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &InjectiveSimplicialMap) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::Precondition("simplicial maps do not compose".into()));
        }
        let map = self.map.iter().map(|&v| next.map[v]).collect();
        Self::validate(map, self.source.clone(), next.target.clone())
    }

    /// The same vertex map read between two other graphs, e.g. `ψ̄: Γ̄₁ → Γ̄₂`.
    pub fn extend_to(&self, source: SimplicialGraph, target: SimplicialGraph) -> Result<Self> {
        Self::validate(self.map.clone(), source, target)
    }
}
