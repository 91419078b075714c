//! Vertex-weighted multigraphs with loops, and their stabilization.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm, ColoredGraph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge<L> {
    pub source: usize,
    pub target: usize,
    pub length: L,
}

impl<L> Edge<L> {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    pub fn other(&self, v: usize) -> usize {
        if self.source == v {
            self.target
        } else {
            self.source
        }
    }
}

/// Edge lengths that can be added when a vertex is smoothed away.
pub trait Concat {
    fn concat(&self, other: &Self) -> Self;
}

impl Concat for Rational {
    fn concat(&self, other: &Self) -> Self {
        self + other
    }
}

/// A formal length `Σ c_k ℓ_k` in terms of independent class lengths `ℓ_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LinearLength(pub BTreeMap<usize, u64>);

impl LinearLength {
    pub fn unit(class: usize) -> Self {
        LinearLength([(class, 1)].into())
    }
}

impl Concat for LinearLength {
    fn concat(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, c) in &other.0 {
            *out.entry(*k).or_default() += c;
        }
        LinearLength(out)
    }
}

/// A connected multigraph with nonnegative integer vertex weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedGraph<L> {
    pub weights: Vec<u64>,
    pub edges: Vec<Edge<L>>,
}

/// The Berkovich skeleton: a weighted metric graph with exact lengths.
pub type Skeleton = WeightedGraph<Rational>;

impl<L> WeightedGraph<L> {
    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    /// Number of half-edges at `v`; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.source == v) as usize + (e.target == v) as usize)
            .sum()
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.weights.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.weights.len();
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components
    }

    /// First Betti number.
    pub fn betti(&self) -> u64 {
        (self.edges.len() + self.component_count() - self.weights.len()) as u64
    }

    pub fn genus(&self) -> u64 {
        self.weights.iter().sum::<u64>() + self.betti()
    }

    /// Graphviz rendering with weights as vertex labels.
    pub fn to_dot(&self) -> String
    where
        L: std::fmt::Display,
    {
        let mut out = String::from("graph skeleton {\n");
        for (v, w) in self.weights.iter().enumerate() {
            let _ = writeln!(out, "  v{v} [label=\"{w}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.source, e.target, e.length);
        }
        out.push_str("}\n");
        out
    }
}

impl<L: Clone + Concat> WeightedGraph<L> {
    /// Minimal model: repeatedly deletes weight-zero vertices of valence one
    /// with their edge and smooths weight-zero vertices of valence two that
    /// are not the base of a loop. Vertex order is otherwise kept.
    pub fn stabilize(&self) -> WeightedGraph<L> {
        let n = self.weights.len();
        let mut alive = vec![true; n];
        let mut remaining = n;
        let mut edges: Vec<Option<Edge<L>>> = self.edges.iter().cloned().map(Some).collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.source].push(i);
            if !e.is_loop() {
                incident[e.target].push(i);
            }
        }
        let valence = |v: usize, edges: &[Option<Edge<L>>], incident: &[Vec<usize>]| -> usize {
            incident[v]
                .iter()
                .filter_map(|&i| edges[i].as_ref())
                .map(|e| if e.is_loop() { 2 } else { 1 })
                .sum()
        };
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if !alive[v] || self.weights[v] != 0 || remaining == 1 {
                    continue;
                }
                let live: Vec<usize> = incident[v].iter().copied().filter(|&i| edges[i].is_some()).collect();
                match valence(v, &edges, &incident) {
                    1 => {
                        let e = edges[live[0]].take().expect("live edge");
                        let w = e.other(v);
                        incident[w].retain(|&i| i != live[0]);
                        alive[v] = false;
                        remaining -= 1;
                        changed = true;
                    }
                    2 if live.len() == 2 => {
                        let a = edges[live[0]].take().expect("live edge");
                        let b = edges[live[1]].take().expect("live edge");
                        let (x, y) = (a.other(v), b.other(v));
                        incident[x].retain(|&i| i != live[0]);
                        incident[y].retain(|&i| i != live[1]);
                        let id = edges.len();
                        edges.push(Some(Edge {
                            source: x.min(y),
                            target: x.max(y),
                            length: a.length.concat(&b.length),
                        }));
                        incident[x].push(id);
                        if x != y {
                            incident[y].push(id);
                        }
                        alive[v] = false;
                        remaining -= 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let mut id = vec![usize::MAX; n];
        let mut weights = Vec::with_capacity(remaining);
        for v in 0..n {
            if alive[v] {
                id[v] = weights.len();
                weights.push(self.weights[v]);
            }
        }
        let edges = edges
            .into_iter()
            .flatten()
            .map(|e| Edge {
                source: id[e.source],
                target: id[e.target],
                length: e.length,
            })
            .collect();
        WeightedGraph { weights, edges }
    }
}

/// `graph.json`: a weighted metric graph and its genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub genus: u64,
    pub weights: Vec<u64>,
    pub edges: Vec<Edge<Rational>>,
}

impl GraphFile {
    pub fn new(graph: &Skeleton) -> Self {
        GraphFile {
            genus: graph.genus(),
            weights: graph.weights.clone(),
            edges: graph.edges.clone(),
        }
    }

    /// Endpoints in range, positive lengths, and a genus that matches.
    pub fn validate(&self) -> crate::Result<Skeleton> {
        let graph = Skeleton {
            weights: self.weights.clone(),
            edges: self.edges.clone(),
        };
        let n = graph.vertex_count();
        if let Some(e) = self.edges.iter().find(|e| e.source >= n || e.target >= n) {
            return Err(crate::Error::InvalidInput(format!(
                "edge {} -- {} leaves the {n} vertices",
                e.source, e.target
            )));
        }
        if self.edges.iter().any(|e| !e.length.is_positive()) {
            return Err(crate::Error::InvalidInput("edge lengths must be positive".into()));
        }
        if graph.genus() != self.genus {
            return Err(crate::Error::InvalidInput(format!(
                "recorded genus {} but the graph has genus {}",
                self.genus,
                graph.genus()
            )));
        }
        Ok(graph)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum KeyColor<L> {
    Vertex(u64),
    Bundle { length: L, count: usize, is_loop: bool },
}

/// Equal for two graphs exactly when an isomorphism preserves weights and
/// edge lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphKey<L> {
    palette: Vec<KeyColor<L>>,
    form: CanonicalForm,
}

impl<L: Clone + Ord> WeightedGraph<L> {
    /// Parallel edges of equal length become one bundle node carrying the
    /// length and count; the bundled graph is labeled canonically.
    pub fn isomorphism_key(&self) -> GraphKey<L> {
        let mut colors: Vec<KeyColor<L>> = self.weights.iter().map(|&w| KeyColor::Vertex(w)).collect();
        let mut bundles: BTreeMap<(usize, usize, &L), usize> = BTreeMap::new();
        for e in &self.edges {
            *bundles
                .entry((e.source.min(e.target), e.source.max(e.target), &e.length))
                .or_default() += 1;
        }
        let mut links = Vec::new();
        for ((a, b, length), count) in bundles {
            links.push((colors.len(), a));
            links.push((colors.len(), b));
            colors.push(KeyColor::Bundle {
                length: length.clone(),
                count,
                is_loop: a == b,
            });
        }
        let mut palette = colors.clone();
        palette.sort();
        palette.dedup();
        let mut cg = ColoredGraph::new(
            colors
                .iter()
                .map(|c| palette.binary_search(c).expect("in palette") as u32)
                .collect(),
        );
        for (node, v) in links {
            if cg.multiplicity(node, v) == 0 {
                cg.add_edge(node, v, 1);
            }
        }
        GraphKey {
            palette,
            form: canonical_form(&cg),
        }
    }
}
