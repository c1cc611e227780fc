//! Multigraphs over a dense vertex set, with connectivity, component and
//! bridge queries and the component contraction used to pick reserve edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::weight::Weight;

/// Identifier of an edge. Unique across the graph and reserve pools of an
/// instance, so parallel edges stay distinguishable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(Arc<str>);

impl EdgeId {
    pub fn new(id: impl AsRef<str>) -> Self {
        EdgeId(Arc::from(id.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId::new(s)
    }
}

/// A set of edge ids. Ids are unique, so sub-multisets of a pool are sets of
/// ids.
pub type EdgeSet = BTreeSet<EdgeId>;

/// Builds an [`EdgeSet`] from string ids.
pub fn edge_set<I, S>(ids: I) -> EdgeSet
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    ids.into_iter().map(EdgeId::new).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
    pub weight: Weight,
}

impl Edge {
    pub fn new(id: impl AsRef<str>, u: usize, v: usize, weight: Weight) -> Self {
        Edge {
            id: EdgeId::new(id),
            u,
            v,
            weight,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {id} references vertex {vertex} but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        id: EdgeId,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("duplicate edge id {0}")]
    DuplicateId(EdgeId),
    #[error("edge {0} has a negative weight")]
    NegativeWeight(EdgeId),
    #[error("a multigraph needs at least one vertex")]
    NoVertices,
}

/// A multiset of edges over vertices `0..vertex_count`, stored sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in edges.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(GraphError::DuplicateId(pair[0].id.clone()));
            }
        }
        for e in &edges {
            for vertex in [e.u, e.v] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        id: e.id.clone(),
                        vertex,
                        vertex_count,
                    });
                }
            }
            if e.weight.is_negative() {
                return Err(GraphError::NegativeWeight(e.id.clone()));
            }
        }
        Ok(Multigraph { vertex_count, edges })
    }

    pub fn empty(vertex_count: usize) -> Self {
        assert!(vertex_count > 0, "a multigraph needs at least one vertex");
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn ids(&self) -> EdgeSet {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by(|e| e.id.cmp(id))
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn contains(&self, id: &EdgeId) -> bool {
        self.edge(id).is_some()
    }

    pub fn contains_all(&self, ids: &EdgeSet) -> bool {
        ids.iter().all(|id| self.contains(id))
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| &e.weight).sum()
    }

    /// The edges whose ids are in `ids`, in id order.
    pub fn select(&self, ids: &EdgeSet) -> Vec<Edge> {
        self.edges.iter().filter(|e| ids.contains(&e.id)).cloned().collect()
    }

    /// `self − ids`. Ids not present are ignored.
    pub fn without(&self, ids: &EdgeSet) -> Multigraph {
        Multigraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().filter(|e| !ids.contains(&e.id)).cloned().collect(),
        }
    }

    /// `self ∪ extra`. Ids already present are not duplicated.
    pub fn with_edges<'a>(&self, extra: impl IntoIterator<Item = &'a Edge>) -> Multigraph {
        let mut edges = self.edges.clone();
        for e in extra {
            if !self.contains(&e.id) {
                edges.push(e.clone());
            }
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        Multigraph {
            vertex_count: self.vertex_count,
            edges,
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // the smaller root wins so labels stay deterministic
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Component labelling of a multigraph. Components are numbered in order of
/// their minimum vertex, so vertex 0 is always in component 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub labels: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn component_of(&self, vertex: usize) -> usize {
        self.labels[vertex]
    }

    /// Members of every component, each sorted ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.count];
        for (v, &c) in self.labels.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }
}

pub(crate) fn label_components(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Components {
    let mut uf = UnionFind::new(n);
    for (u, v) in pairs {
        uf.union(u, v);
    }
    let mut label_of_root = BTreeMap::new();
    let mut labels = Vec::with_capacity(n);
    for v in 0..n {
        let root = uf.find(v);
        let next = label_of_root.len();
        labels.push(*label_of_root.entry(root).or_insert(next));
    }
    Components {
        labels,
        count: label_of_root.len(),
    }
}

pub fn components(g: &Multigraph) -> Components {
    label_components(g.vertex_count, g.edges.iter().map(|e| (e.u, e.v)))
}

pub fn is_connected(g: &Multigraph) -> bool {
    components(g).count == 1
}

/// Edges lying on no cycle. Parallel edges and loops are never bridges.
pub fn bridges(g: &Multigraph) -> EdgeSet {
    let n = g.vertex_count;
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        if e.is_loop() {
            continue;
        }
        adjacency[e.u].push((e.v, i));
        adjacency[e.v].push((e.u, i));
    }

    let mut found = EdgeSet::new();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative low-link: (vertex, edge index used to enter it, next neighbour cursor)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, via, cursor) = stack[top];
            if let Some(&(w, edge)) = adjacency[v].get(cursor) {
                stack[top].2 += 1;
                if edge == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, edge, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        found.insert(g.edges[via].id.clone());
                    }
                }
            }
        }
    }
    found
}

/// The multigraph whose vertices are the components of a base graph and whose
/// edges are reserve edges with endpoints replaced by their components.
/// Contracted edges keep the id of the reserve edge they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedGraph {
    pub component_count: usize,
    pub component_of: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl ContractedGraph {
    /// A contracted graph given directly by its component-level edges.
    pub fn from_edges(component_count: usize, edges: Vec<Edge>) -> Self {
        ContractedGraph {
            component_count,
            component_of: (0..component_count).collect(),
            edges,
        }
    }

    /// The reserve edge a contracted edge was derived from. Contraction keeps
    /// ids, so this is the identity on ids present in the graph.
    pub fn origin(&self, id: &EdgeId) -> Option<&EdgeId> {
        self.edges.iter().find(|e| &e.id == id).map(|e| &e.id)
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| &e.id == id)
    }

    pub fn is_connected(&self) -> bool {
        label_components(self.component_count, self.edges.iter().map(|e| (e.u, e.v))).count == 1
    }
}

pub fn contract(base: &Multigraph, reserve: &Multigraph) -> ContractedGraph {
    let comps = components(base);
    let edges = reserve
        .edges
        .iter()
        .map(|e| Edge {
            id: e.id.clone(),
            u: comps.labels[e.u],
            v: comps.labels[e.v],
            weight: e.weight.clone(),
        })
        .collect();
    ContractedGraph {
        component_count: comps.count,
        component_of: comps.labels,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: i64) -> Weight {
        Weight::from_integer(x)
    }

    // a=0, b=1, c=2 with the example's edge layout
    fn e(id: &str) -> Edge {
        match id {
            "e1" => Edge::new("e1", 0, 1, w(0)),
            "e2" => Edge::new("e2", 1, 2, w(0)),
            "e3" => Edge::new("e3", 2, 0, w(0)),
            "e4" => Edge::new("e4", 0, 1, w(1)),
            "e5" => Edge::new("e5", 1, 2, w(2)),
            _ => unreachable!(),
        }
    }

    fn graph(ids: &[&str]) -> Multigraph {
        Multigraph::new(3, ids.iter().map(|id| e(id))).unwrap()
    }

    #[test]
    fn components_of_example_graphs() {
        assert_eq!(components(&graph(&["e1", "e2", "e3"])).count, 1);
        let split = components(&graph(&["e3"]));
        assert_eq!(split.count, 2);
        assert_eq!(split.classes(), vec![vec![0, 2], vec![1]]);
        assert_eq!(components(&graph(&[])).count, 3);
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&graph(&["e3", "e4"])));
        assert!(!is_connected(&graph(&["e5"])));
        assert!(is_connected(&Multigraph::empty(1)));
    }

    #[test]
    fn bridge_examples() {
        assert!(bridges(&graph(&["e1", "e2", "e3"])).is_empty());
        assert_eq!(bridges(&graph(&["e3", "e4"])), edge_set(["e3", "e4"]));
        assert!(bridges(&graph(&["e1", "e4"])).is_empty());
        let with_loop = Multigraph::new(2, [Edge::new("l", 1, 1, w(0)), Edge::new("x", 0, 1, w(0))]).unwrap();
        assert_eq!(bridges(&with_loop), edge_set(["x"]));
    }

    #[test]
    fn contraction_examples() {
        let m = contract(&graph(&["e3"]), &graph(&["e4", "e5"]));
        assert_eq!(m.component_count, 2);
        assert!(m.edges.iter().all(|e| !e.is_loop()));
        assert_eq!(m.edges.len(), 2);

        let m = contract(&graph(&["e1", "e2"]), &graph(&["e4", "e5"]));
        assert_eq!(m.component_count, 1);
        assert!(m.edges.iter().all(Edge::is_loop));

        let edgeless = Multigraph::empty(3);
        let reserve = Multigraph::new(3, [Edge::new("r", 0, 1, w(1))]).unwrap();
        let m = contract(&edgeless, &reserve);
        assert_eq!(m.component_count, 3);
        assert_eq!(m.edges.len(), 1);
        assert!(!m.edges[0].is_loop());
        assert_eq!(m.origin(&EdgeId::new("r")), Some(&EdgeId::new("r")));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(matches!(
            Multigraph::new(2, [Edge::new("x", 0, 2, w(0))]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Multigraph::new(2, [Edge::new("x", 0, 1, w(0)), Edge::new("x", 1, 0, w(0))]),
            Err(GraphError::DuplicateId(_))
        ));
        assert!(matches!(
            Multigraph::new(2, [Edge::new("x", 0, 1, Weight::from_integer(-1))]),
            Err(GraphError::NegativeWeight(_))
        ));
        assert_eq!(Multigraph::new(0, []), Err(GraphError::NoVertices));
    }
}
