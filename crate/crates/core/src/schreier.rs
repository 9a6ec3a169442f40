//! Schreier graphs on the levels `A^n`, the maps between consecutive levels, and
//! the partition of a level into tiles.
//!
//! A vertex of level `n` is a word `a₁…a_n`; vertices are listed in lexicographic
//! order, so the index of a word reads its letters most significant first.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::level_size;
use crate::automaton::{Automaton, Letter, StateId};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, UnionFind};

/// Default bound on `|A|^n` for graph construction.
pub const DEFAULT_LEVEL_CAP: usize = 100_000;

/// The Schreier graph of a level: an edge `w → q(w)` labelled `q` for every
/// vertex `w` and every state `q` of `generators`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierLevel {
    pub level: usize,
    pub graph: LabeledGraph,
    pub generators: Vec<StateId>,
}

impl SchreierLevel {
    /// Index of the edge leaving `vertex` labelled by `generators[slot]`.
    pub fn edge_index(&self, vertex: usize, slot: usize) -> usize {
        vertex * self.generators.len() + slot
    }

    pub fn slot(&self, q: StateId) -> Option<usize> {
        self.generators.iter().position(|&g| g == q)
    }
}

/// Letters of the word with index `index` at level `n`.
pub fn word_of(alphabet_size: usize, n: usize, mut index: usize) -> Vec<Letter> {
    let mut word = vec![0; n];
    for slot in word.iter_mut().rev() {
        *slot = index % alphabet_size;
        index /= alphabet_size;
    }
    word
}

pub fn index_of(alphabet_size: usize, word: &[Letter]) -> usize {
    word.iter().fold(0, |acc, &a| acc * alphabet_size + a)
}

/// Vertex key of a word: letter names concatenated, or comma-separated when some
/// letter name is longer than one character.
pub fn word_key(automaton: &Automaton, word: &[Letter]) -> String {
    let names = automaton.letter_names();
    let single = names.iter().all(|n| n.chars().count() == 1);
    let parts: Vec<&str> = word.iter().map(|&a| names[a].as_str()).collect();
    parts.join(if single { "" } else { "," })
}

fn level_keys(automaton: &Automaton, n: usize, points: usize) -> Vec<String> {
    (0..points)
        .map(|i| word_key(automaton, &word_of(automaton.alphabet_size(), n, i)))
        .collect()
}

pub fn schreier_graph(automaton: &Automaton, n: usize, cap: usize) -> Result<SchreierLevel> {
    let all: Vec<StateId> = (0..automaton.state_count()).collect();
    schreier_graph_on(automaton, n, &all, cap)
}

/// Schreier graph using only the listed states as generators.
pub fn schreier_graph_on(
    automaton: &Automaton,
    n: usize,
    generators: &[StateId],
    cap: usize,
) -> Result<SchreierLevel> {
    automaton.require_invertible()?;
    automaton.check_states(generators)?;
    let k = automaton.alphabet_size();
    let points = level_size(k, n, cap)?;
    let mut graph = LabeledGraph::new(level_keys(automaton, n, points));
    for i in 0..points {
        let word = word_of(k, n, i);
        for &q in generators {
            let image = automaton.act(&[q], &word)?.output;
            graph.add_edge(i, index_of(k, &image), automaton.state_name(q));
        }
    }
    Ok(SchreierLevel {
        level: n,
        graph,
        generators: generators.to_vec(),
    })
}

/// The graph of the `n`-th power of the dual automaton, with its states (tuples
/// of letters) read as words of `A^n` and its edges labelled by input letter,
/// that is by a state of `automaton`.
pub fn dual_power_graph(automaton: &Automaton, n: usize, cap: usize) -> Result<LabeledGraph> {
    automaton.require_invertible()?;
    let points = level_size(automaton.alphabet_size(), n, cap)?;
    let power = automaton.dual().power(n)?;
    debug_assert_eq!(power.state_count(), points);
    let mut graph = LabeledGraph::new(level_keys(automaton, n, points));
    for w in 0..power.state_count() {
        for q in 0..power.alphabet_size() {
            graph.add_edge(w, power.transition(q, w), automaton.state_name(q));
        }
    }
    Ok(graph)
}

/// Where an edge of the upper level goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeImage {
    Edge(usize),
    /// Collapsed onto a vertex: the image label acts trivially and is not a generator.
    Vertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// `a₁…a_{n+1} ↦ a₁…a_n`, labels unchanged.
    Covering,
    /// `a₁…a_{n+1} ↦ a₂…a_{n+1}`, label `q ↦ τ(a₁, q)`.
    Projection,
}

/// A map from the level `n+1` Schreier graph to the level `n` one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMap {
    pub kind: MapKind,
    pub upper: SchreierLevel,
    pub lower: SchreierLevel,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<EdgeImage>,
}

impl LevelMap {
    /// Sources and targets commute with the map, and collapsed edges are loops
    /// at the image of their source.
    pub fn is_morphism(&self) -> bool {
        let up = self.upper.graph.edges();
        let down = self.lower.graph.edges();
        up.iter().zip(&self.edge_map).all(|(e, image)| {
            let (s, t) = (self.vertex_map[e.source], self.vertex_map[e.target]);
            match *image {
                EdgeImage::Edge(f) => down[f].source == s && down[f].target == t,
                EdgeImage::Vertex(v) => v == s && v == t,
            }
        })
    }

    /// Number of upper vertices over each lower vertex.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.lower.graph.vertex_count()];
        for &v in &self.vertex_map {
            sizes[v] += 1;
        }
        sizes
    }

    /// Every lower edge has exactly one lift starting at each vertex over its source.
    pub fn has_unique_lifts(&self) -> bool {
        let down = self.lower.graph.edges();
        let mut lifts = vec![BTreeSet::new(); down.len()];
        for (e, image) in self.upper.graph.edges().iter().zip(&self.edge_map) {
            let EdgeImage::Edge(f) = *image else {
                return false;
            };
            if !lifts[f].insert(e.source) {
                return false;
            }
        }
        let fibers = self.fiber_sizes();
        down.iter()
            .zip(&lifts)
            .all(|(f, sources)| sources.len() == fibers[f.source])
    }
}

pub fn covering_map(automaton: &Automaton, n: usize, cap: usize) -> Result<LevelMap> {
    let all: Vec<StateId> = (0..automaton.state_count()).collect();
    level_map(automaton, n, &all, cap, MapKind::Covering)
}

pub fn projection_map(automaton: &Automaton, n: usize, cap: usize) -> Result<LevelMap> {
    let all: Vec<StateId> = (0..automaton.state_count()).collect();
    level_map(automaton, n, &all, cap, MapKind::Projection)
}

/// Either map, on the Schreier graphs generated by `generators`. A projected
/// label outside `generators` is an error unless it acts trivially.
pub fn level_map(
    automaton: &Automaton,
    n: usize,
    generators: &[StateId],
    cap: usize,
    kind: MapKind,
) -> Result<LevelMap> {
    let upper = schreier_graph_on(automaton, n + 1, generators, cap)?;
    let lower = schreier_graph_on(automaton, n, generators, cap)?;
    let k = automaton.alphabet_size();
    let width = level_size(k, n, cap)?;
    let vertex_map: Vec<usize> = (0..upper.graph.vertex_count())
        .map(|i| match kind {
            MapKind::Covering => i / k,
            MapKind::Projection => i % width,
        })
        .collect();
    let trivial = automaton.trivial_states();
    let mut edge_map = Vec::with_capacity(upper.graph.edge_count());
    for (i, &v) in vertex_map.iter().enumerate() {
        let first = i / width;
        for &q in generators {
            let label = match kind {
                MapKind::Covering => q,
                MapKind::Projection => automaton.transition(first, q),
            };
            edge_map.push(match lower.slot(label) {
                Some(slot) => EdgeImage::Edge(lower.edge_index(v, slot)),
                None if trivial[label] => EdgeImage::Vertex(v),
                None => {
                    return Err(Error::LabelOutsideGenerators {
                        label: automaton.state_name(label).into(),
                    })
                }
            });
        }
    }
    Ok(LevelMap {
        kind,
        upper,
        lower,
        vertex_map,
        edge_map,
    })
}

/// Level `m` cut into the classes of words sharing a suffix of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilePartition {
    pub ambient_level: usize,
    pub tile_level: usize,
    pub schreier: SchreierLevel,
    /// `(suffix key, vertices ending with it)`, ordered by suffix.
    pub classes: Vec<(String, Vec<usize>)>,
    /// Indices of edges whose label restricted along the prefix acts nontrivially.
    pub critical_edges: Vec<usize>,
    /// For each class, its components under non-critical edges.
    pub components: Vec<Vec<Vec<usize>>>,
}

impl TilePartition {
    pub fn class_of(&self, vertex: usize) -> usize {
        vertex % self.classes.len()
    }

    pub fn is_critical(&self, edge: usize) -> bool {
        self.critical_edges.binary_search(&edge).is_ok()
    }

    pub fn connectivity(&self) -> Vec<bool> {
        self.components.iter().map(|c| c.len() == 1).collect()
    }
}

pub fn tile_partition(automaton: &Automaton, m: usize, n: usize, cap: usize) -> Result<TilePartition> {
    if n > m {
        return Err(Error::InvalidAutomaton(alloc::format!(
            "tile level {n} exceeds ambient level {m}"
        )));
    }
    let schreier = schreier_graph(automaton, m, cap)?;
    let k = automaton.alphabet_size();
    let width = level_size(k, n, cap)?;
    let trivial = automaton.trivial_states();
    let mut critical_edges = Vec::new();
    let mut uf = UnionFind::new(schreier.graph.vertex_count());
    for (index, e) in schreier.graph.edges().iter().enumerate() {
        let prefix = &word_of(k, m, e.source)[..m - n];
        let q = schreier.generators[index % schreier.generators.len()];
        if trivial[automaton.restrict_state(q, prefix)] {
            uf.union(e.source, e.target);
        } else {
            critical_edges.push(index);
        }
    }
    let mut classes = Vec::with_capacity(width);
    let mut components = Vec::with_capacity(width);
    for w in 0..width {
        let members: Vec<usize> = (0..schreier.graph.vertex_count() / width)
            .map(|u| u * width + w)
            .collect();
        let mut by_root: alloc::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &v in &members {
            by_root.entry(uf.find(v)).or_default().push(v);
        }
        let mut parts: Vec<Vec<usize>> = by_root.into_values().collect();
        parts.sort_by_key(|p| p[0]);
        classes.push((word_key(automaton, &word_of(k, n, w)), members));
        components.push(parts);
    }
    Ok(TilePartition {
        ambient_level: m,
        tile_level: n,
        schreier,
        classes,
        critical_edges,
        components,
    })
}

/// Graph on `A^n` with an edge `w → w'` labelled `τ(u, q)` for each critical edge
/// `u·w → u'·w'` of level `m`; repeated `(w, w', label)` triples are kept once.
pub fn tile_adjacency(automaton: &Automaton, m: usize, n: usize, cap: usize) -> Result<LabeledGraph> {
    let partition = tile_partition(automaton, m, n, cap)?;
    let k = automaton.alphabet_size();
    let keys: Vec<String> = partition.classes.iter().map(|(key, _)| key.clone()).collect();
    let mut graph = LabeledGraph::new(keys);
    let mut seen = BTreeSet::new();
    let edges = partition.schreier.graph.edges();
    let generators = &partition.schreier.generators;
    for &index in &partition.critical_edges {
        let e = &edges[index];
        let prefix = &word_of(k, m, e.source)[..m - n];
        let label = automaton.restrict_state(generators[index % generators.len()], prefix);
        let (w, w2) = (partition.class_of(e.source), partition.class_of(e.target));
        if seen.insert((w, w2, label)) {
            graph.add_edge(w, w2, automaton.state_name(label));
        }
    }
    Ok(graph)
}

/// Whether each tile (suffix class) is connected by non-critical edges.
pub fn tile_connectivity(automaton: &Automaton, m: usize, n: usize, cap: usize) -> Result<Vec<bool>> {
    Ok(tile_partition(automaton, m, n, cap)?.connectivity())
}

/// The component of `base` in the Schreier graph of level `|base|`.
pub fn orbit_schreier(automaton: &Automaton, base: &[Letter], cap: usize) -> Result<LabeledGraph> {
    automaton.check_letters(base)?;
    let level = schreier_graph(automaton, base.len(), cap)?;
    let start = index_of(automaton.alphabet_size(), base);
    let graph = &level.graph;
    let component = graph
        .components()
        .into_iter()
        .find(|c| c.contains(&start))
        .expect("every vertex lies in a component");
    let mut position = vec![usize::MAX; graph.vertex_count()];
    for (i, &v) in component.iter().enumerate() {
        position[v] = i;
    }
    let mut orbit = LabeledGraph::new(component.iter().map(|&v| graph.vertices()[v].clone()).collect());
    for e in graph.edges() {
        if position[e.source] != usize::MAX {
            orbit.add_edge(position[e.source], position[e.target], e.label.clone());
        }
    }
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::WreathRecursion;

    fn odometer() -> Automaton {
        WreathRecursion::new(2)
            .generator("τ", &["ε", "τ"], &[1, 0])
            .build(true, 8)
            .unwrap()
    }

    fn labelled(graph: &LabeledGraph, label: &str) -> Vec<(String, String)> {
        graph
            .keyed_edges()
            .filter(|e| e.2 == label)
            .map(|(s, t, _)| (s.into(), t.into()))
            .collect()
    }

    #[test]
    fn odometer_level_two_is_a_cycle() {
        let level = schreier_graph(&odometer(), 2, 100).unwrap();
        assert_eq!(level.graph.vertices(), &["00", "01", "10", "11"]);
        let mut tau = labelled(&level.graph, "τ");
        tau.sort();
        let expected = [("00", "10"), ("01", "11"), ("10", "01"), ("11", "00")];
        assert_eq!(
            tau,
            expected.iter().map(|(s, t)| (String::from(*s), String::from(*t))).collect::<Vec<_>>()
        );
        assert_eq!(labelled(&level.graph, "ε").len(), 4);
    }

    #[test]
    fn level_zero_has_loops_only() {
        let level = schreier_graph(&odometer(), 0, 100).unwrap();
        assert_eq!(level.graph.vertices(), &[""]);
        assert_eq!(level.graph.edge_count(), 2);
        assert!(level.graph.adjacency().is_empty());
    }

    #[test]
    fn dual_power_agrees_on_odometer() {
        let a = odometer();
        for n in 1..=4 {
            let level = schreier_graph(&a, n, 100).unwrap();
            assert!(level.graph.same_edges(&dual_power_graph(&a, n, 100).unwrap()));
        }
    }

    #[test]
    fn word_keys() {
        let a = Automaton::identity_automaton(12);
        assert_eq!(word_key(&a, &[1, 11, 0]), "1,11,0");
        assert_eq!(word_key(&odometer(), &[1, 0, 1]), "101");
        assert_eq!(word_of(3, 3, index_of(3, &[2, 0, 1])), vec![2, 0, 1]);
    }

    #[test]
    fn covering_and_projection_of_odometer() {
        let a = odometer();
        let cover = covering_map(&a, 1, 100).unwrap();
        assert_eq!(cover.vertex_map, vec![0, 0, 1, 1]);
        assert!(cover.is_morphism() && cover.has_unique_lifts());
        assert_eq!(cover.fiber_sizes(), vec![2, 2]);
        let projection = projection_map(&a, 1, 100).unwrap();
        assert_eq!(projection.vertex_map, vec![0, 1, 0, 1]);
        // the τ edge at 00 becomes the ε loop at 0
        let tau = cover.upper.slot(1).unwrap();
        let EdgeImage::Edge(f) = projection.edge_map[cover.upper.edge_index(0, tau)] else {
            panic!("expected an edge");
        };
        let image = &projection.lower.graph.edges()[f];
        assert_eq!((image.source, image.target, image.label.as_str()), (0, 0, "ε"));
        assert!(projection.is_morphism());
    }

    #[test]
    fn projection_outside_generators() {
        // τ restricts to ε and τ: with only τ as generator, ε edges collapse
        let a = odometer();
        let map = level_map(&a, 1, &[1], 100, MapKind::Projection).unwrap();
        assert!(map.is_morphism());
        assert!(map.edge_map.contains(&EdgeImage::Vertex(0)));
        // ψ(b) = (a, b): with b alone the label a is missing
        let d = WreathRecursion::new(2)
            .generator("a", &["ε", "ε"], &[1, 0])
            .generator("b", &["a", "b"], &[0, 1])
            .build(true, 8)
            .unwrap();
        let b = d.state_index("b").unwrap();
        let err = level_map(&d, 1, &[b], 100, MapKind::Projection).unwrap_err();
        assert_eq!(err, Error::LabelOutsideGenerators { label: "a".into() });
    }

    #[test]
    fn odometer_tiles() {
        let a = odometer();
        let p = tile_partition(&a, 3, 1, 100).unwrap();
        assert_eq!(p.classes.len(), 2);
        assert_eq!(p.classes[0], ("0".into(), vec![0, 2, 4, 6]));
        for (index, e) in p.schreier.graph.edges().iter().enumerate() {
            if p.class_of(e.source) != p.class_of(e.target) {
                assert!(p.is_critical(index));
            }
        }
        // τ at u·w is critical exactly when u = 11
        let critical: Vec<&str> = p
            .critical_edges
            .iter()
            .map(|&i| p.schreier.graph.vertices()[p.schreier.graph.edges()[i].source].as_str())
            .collect();
        assert_eq!(critical, vec!["110", "111"]);
        assert_eq!(p.connectivity(), vec![true, true]);
    }

    #[test]
    fn whole_level_is_one_tile() {
        let p = tile_partition(&odometer(), 3, 0, 100).unwrap();
        assert_eq!(p.classes.len(), 1);
        assert_eq!(p.classes[0].1.len(), 8);
        // τ restricted along 111 is τ itself
        assert_eq!(p.critical_edges.len(), 1);
        assert_eq!(p.connectivity(), vec![true]);
        assert!(tile_partition(&odometer(), 1, 2, 100).is_err());
    }

    #[test]
    fn orbit_of_identity_is_a_point() {
        let a = Automaton::identity_automaton(2);
        let orbit = orbit_schreier(&a, &[0, 1], 100).unwrap();
        assert_eq!(orbit.vertices(), &["01"]);
        assert_eq!(orbit.edge_count(), 1);
        let full = orbit_schreier(&odometer(), &[0, 0], 100).unwrap();
        assert_eq!(full.vertex_count(), 4);
    }
}
