//! Immutable simple undirected graphs on dense vertex indices `0..n`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A simple undirected graph. Vertices are `0..n`; adjacency lists are
/// sorted and contain no duplicates or self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// A set of vertices of some host graph, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: BTreeSet<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.members.insert(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<usize> {
        self.members.iter().next_back().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet { members: iter.into_iter().collect() }
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(arr: [usize; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl From<&[usize]> for VertexSet {
    fn from(s: &[usize]) -> Self {
        s.iter().copied().collect()
    }
}

/// An induced subgraph together with the map from its vertices back to the
/// host graph (`origin[i]` is the host vertex relabeled as `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub origin: Vec<usize>,
}

impl Graph {
    /// Builds a simple graph. Duplicate pairs (in either orientation) are
    /// merged; self-loops and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, edges: set.into_iter().collect() })
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Graph {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, pairs).expect("complete graph edges are valid")
    }

    /// The cycle `0-1-..-(m-1)-0`. Requires `m >= 3`.
    pub fn cycle(m: usize) -> Result<Graph> {
        if m < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs at least 3 vertices, got {m}")));
        }
        Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Graph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, pairs).expect("petersen edges are valid")
    }

    /// Vertex count.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Edge count.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor slice. Panics if `v` is out of range; see
    /// [`Graph::neighbors`] for the checked form.
    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.adj[v].iter().copied().collect())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// `Some(r)` if every vertex has degree `r`. The empty graph is not
    /// considered regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == first).then_some(first)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.order() });
        }
        Ok(())
    }

    /// The subgraph induced by `s`, relabeled `0..|s|` in increasing order of
    /// host index.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        if let Some(m) = s.max() {
            self.check_vertex(m)?;
        }
        let origin = s.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in origin.iter().enumerate() {
            index[v] = i;
        }
        let pairs = self
            .edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let graph = Graph::from_edges(origin.len(), pairs)?;
        Ok(InducedSubgraph { graph, origin })
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    /// True if no two vertices of `s` are adjacent.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].iter().all(|&u| !s.contains(u)))
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by
    /// `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.order();
        let pairs = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::from_edges(off + other.order(), pairs).expect("shifted edges are valid")
    }

    /// Checks that `map` is an isomorphism from `self` onto `other`
    /// (`map[v]` is the image of `v`).
    pub fn is_isomorphic_under(&self, other: &Graph, map: &[usize]) -> bool {
        if self.order() != other.order() || self.size() != other.size() || map.len() != self.order() {
            return false;
        }
        let mut hit = vec![false; other.order()];
        for &m in map {
            if m >= other.order() || hit[m] {
                return false;
            }
            hit[m] = true;
        }
        self.edges.iter().all(|&(u, v)| other.has_edge(map[u], map[v]))
    }
}
