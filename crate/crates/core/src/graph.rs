//! Directed multigraphs with ordered vertex keys and string-labelled edges.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A directed multigraph. Loops and parallel edges are allowed; edges refer to
/// vertices by position in `vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(vertices: Vec<String>) -> Self {
        LabeledGraph {
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adds an edge between existing vertices.
    ///
    /// Panics if either endpoint is not a vertex index.
    pub fn add_edge(&mut self, source: usize, target: usize, label: impl Into<String>) {
        assert!(
            source < self.vertices.len() && target < self.vertices.len(),
            "edge endpoint out of range"
        );
        self.edges.push(Edge {
            source,
            target,
            label: label.into(),
        });
    }

    pub fn position(&self, key: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == key)
    }

    /// Edges as `(source key, target key, label)` triples.
    pub fn keyed_edges(&self) -> impl Iterator<Item = (&str, &str, &str)> + '_ {
        self.edges.iter().map(move |e| {
            (
                self.vertices[e.source].as_str(),
                self.vertices[e.target].as_str(),
                e.label.as_str(),
            )
        })
    }

    /// Edge multiset keyed by vertex names, with multiplicities.
    pub fn edge_multiset(&self) -> BTreeMap<(String, String, String), usize> {
        let mut out = BTreeMap::new();
        for (s, t, l) in self.keyed_edges() {
            *out.entry((s.into(), t.into(), l.into())).or_insert(0) += 1;
        }
        out
    }

    /// Label-sensitive edge-multiset equality under vertex-key identification.
    pub fn same_edges(&self, other: &LabeledGraph) -> bool {
        let mut a: Vec<String> = self.vertices.clone();
        let mut b: Vec<String> = other.vertices.clone();
        a.sort();
        b.sort();
        a == b && self.edge_multiset() == other.edge_multiset()
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        uf.groups()
    }

    /// Directed adjacency between distinct vertices, ignoring labels and multiplicity.
    pub fn adjacency(&self) -> alloc::collections::BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .filter(|e| e.source != e.target)
            .map(|e| (e.source, e.target))
            .collect()
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: alloc::vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        groups.sort_by_key(|g| g[0]);
        groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn loops_and_parallel_edges_are_kept() {
        let mut g = LabeledGraph::new(vec!["x".to_string()]);
        g.add_edge(0, 0, "0/0");
        g.add_edge(0, 0, "0/0");
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edge_multiset().values().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn components_group_weakly_connected_vertices() {
        let mut g = LabeledGraph::new(vec!["a".into(), "b".into(), "c".into()]);
        g.add_edge(2, 0, "q");
        assert_eq!(g.components(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    #[should_panic]
    fn rejects_dangling_edge() {
        let mut g = LabeledGraph::new(vec!["a".into()]);
        g.add_edge(0, 1, "q");
    }
}
