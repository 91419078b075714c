//! Canonical labeling of vertex-colored multigraphs by individualization and
//! refinement, with pruning by discovered automorphisms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Undirected multigraph with a color per vertex. `adjacency[v]` lists
/// `(neighbour, multiplicity)`; a loop appears once, at `v` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    colors: Vec<u32>,
    adjacency: Vec<BTreeMap<usize, u32>>,
}

/// Equal for two graphs exactly when they are isomorphic as colored
/// multigraphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u32>);

impl CanonicalForm {
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_be_bytes()).collect()
    }
}

impl ColoredGraph {
    pub fn new(colors: Vec<u32>) -> Self {
        let n = colors.len();
        ColoredGraph {
            colors,
            adjacency: vec![BTreeMap::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize, multiplicity: u32) {
        *self.adjacency[u].entry(v).or_default() += multiplicity;
        if u != v {
            *self.adjacency[v].entry(u).or_default() += multiplicity;
        }
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.adjacency[u].get(&v).copied().unwrap_or(0)
    }

    /// The graph relabeled so that vertex `v` becomes `position[v]`,
    /// flattened into a comparable certificate.
    fn certificate(&self, position: &[usize]) -> Vec<u32> {
        let n = self.len();
        let mut colors = vec![0; n];
        for v in 0..n {
            colors[position[v]] = self.colors[v];
        }
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        for u in 0..n {
            for (&v, &m) in &self.adjacency[u] {
                let (a, b) = (position[u] as u32, position[v] as u32);
                if a <= b {
                    edges.push((a, b, m));
                }
            }
        }
        edges.sort_unstable();
        let mut cert = Vec::with_capacity(2 + n + 3 * edges.len());
        cert.push(n as u32);
        cert.extend(colors);
        cert.push(edges.len() as u32);
        for (a, b, m) in edges {
            cert.extend([a, b, m]);
        }
        cert
    }

    /// Coarsest equitable refinement of an ordered partition. Cells split in
    /// the order of their neighbourhood signatures, so the result does not
    /// depend on vertex names.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let mut cell_of = vec![0usize; self.len()];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: BTreeMap<Vec<(usize, u32)>, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
                    for (&w, &m) in &self.adjacency[v] {
                        // loops are told apart from edges into the own cell
                        let key = if w == v { usize::MAX } else { cell_of[w] };
                        *counts.entry(key).or_default() += m;
                    }
                    groups.entry(counts.into_iter().collect()).or_default().push(v);
                }
                next.extend(groups.into_values());
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }
}

struct Leaf {
    sequence: Vec<usize>,
    position: Vec<usize>,
    certificate: Vec<u32>,
}

struct Search<'a> {
    graph: &'a ColoredGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Explores the subtree below `cells`. `Some(k)` asks the caller to
    /// abandon everything below depth `k`, because an automorphism maps the
    /// current branch onto one already explored.
    fn visit(&mut self, cells: Vec<Vec<usize>>, sequence: &mut Vec<usize>) -> Option<usize> {
        let depth = sequence.len();
        let Some(target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
        else {
            return self.leaf(&cells, sequence);
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for x in candidates {
            if !explored.is_empty() && self.same_orbit(x, &explored, sequence) {
                continue;
            }
            explored.push(x);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![x]);
                    child.push(cell.iter().copied().filter(|&v| v != x).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            let child = self.graph.refine(child);
            sequence.push(x);
            let jump = self.visit(child, sequence);
            sequence.pop();
            if let Some(k) = jump {
                if k < depth {
                    return Some(k);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[Vec<usize>], sequence: &[usize]) -> Option<usize> {
        let mut position = vec![0; self.graph.len()];
        for (i, cell) in cells.iter().enumerate() {
            position[cell[0]] = i;
        }
        let certificate = self.graph.certificate(&position);
        let leaf = Leaf {
            sequence: sequence.to_vec(),
            position,
            certificate,
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                sequence: leaf.sequence.clone(),
                position: leaf.position.clone(),
                certificate: leaf.certificate.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if leaf.certificate == first.certificate {
            let k = common_prefix(&leaf.sequence, &first.sequence);
            self.record_automorphism(&leaf, true);
            return Some(k);
        }
        let best = self.best.as_ref().expect("set with first");
        match leaf.certificate.cmp(&best.certificate) {
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let k = common_prefix(&leaf.sequence, &best.sequence);
                self.record_automorphism(&leaf, false);
                Some(k)
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    fn record_automorphism(&mut self, leaf: &Leaf, against_first: bool) {
        let reference = if against_first { &self.first } else { &self.best };
        let reference = reference.as_ref().expect("reference leaf");
        let mut at_position = vec![0; self.graph.len()];
        for (v, &p) in reference.position.iter().enumerate() {
            at_position[p] = v;
        }
        let map: Vec<usize> = leaf.position.iter().map(|&p| at_position[p]).collect();
        if map.iter().enumerate().any(|(v, &w)| v != w) {
            self.generators.push(map);
        }
    }

    /// Whether `x` is in the orbit of an explored vertex under the
    /// automorphisms found so far that fix the current sequence.
    fn same_orbit(&self, x: usize, explored: &[usize], sequence: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.graph.len()).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut any = false;
        for g in &self.generators {
            if sequence.iter().all(|&s| g[s] == s) {
                any = true;
                for (v, &w) in g.iter().enumerate() {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rx = find(&mut parent, x);
        explored.iter().any(|&y| find(&mut parent, y) == rx)
    }
}

/// Canonical form of a colored multigraph.
pub fn canonical_form(graph: &ColoredGraph) -> CanonicalForm {
    if graph.is_empty() {
        return CanonicalForm(vec![0, 0]);
    }
    let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for v in 0..graph.len() {
        by_color.entry(graph.colors[v]).or_default().push(v);
    }
    let cells = graph.refine(by_color.into_values().collect());
    let mut search = Search {
        graph,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    search.visit(cells, &mut Vec::new());
    CanonicalForm(search.best.expect("at least one leaf").certificate)
}

/// Isomorphism by trying every bijection; only for small graphs.
pub fn brute_force_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(a: &ColoredGraph, b: &ColoredGraph, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = perm.len();
        if v == a.len() {
            return true;
        }
        for w in 0..a.len() {
            if used[w] || a.color(v) != b.color(w) {
                continue;
            }
            let consistent = (0..v).all(|u| a.multiplicity(u, v) == b.multiplicity(perm[u], w))
                && a.multiplicity(v, v) == b.multiplicity(w, w);
            if !consistent {
                continue;
            }
            used[w] = true;
            perm.push(w);
            if extend(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[w] = false;
        }
        false
    }
    extend(a, b, &mut perm, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_edges(colors: Vec<u32>, edges: &[(usize, usize, u32)]) -> ColoredGraph {
        let mut g = ColoredGraph::new(colors);
        for &(u, v, m) in edges {
            g.add_edge(u, v, m);
        }
        g
    }

    fn relabel(g: &ColoredGraph, perm: &[usize]) -> ColoredGraph {
        let mut colors = vec![0; g.len()];
        for v in 0..g.len() {
            colors[perm[v]] = g.color(v);
        }
        let mut h = ColoredGraph::new(colors);
        for u in 0..g.len() {
            for (&v, &m) in &g.adjacency[u] {
                if u <= v {
                    h.add_edge(perm[u], perm[v], m);
                }
            }
        }
        h
    }

    fn k33(perm: &[usize]) -> ColoredGraph {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((perm[a], perm[b], 1));
            }
        }
        from_edges(vec![0; 6], &edges)
    }

    #[test]
    fn relabeled_k33_agrees() {
        let a = k33(&[0, 1, 2, 3, 4, 5]);
        let b = k33(&[4, 0, 5, 1, 3, 2]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let mut c = b.clone();
        c.colors[2] = 1;
        assert_ne!(canonical_form(&a), canonical_form(&c));
    }

    #[test]
    fn banana_is_symmetric() {
        let a = from_edges(vec![1, 1], &[(0, 1, 2)]);
        let b = relabel(&a, &[1, 0]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn regular_graphs_are_told_apart() {
        // the 6-cycle and two triangles are both 2-regular on 6 vertices
        let hexagon = from_edges(
            vec![0; 6],
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1)],
        );
        let triangles = from_edges(
            vec![0; 6],
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)],
        );
        assert_ne!(canonical_form(&hexagon), canonical_form(&triangles));
        assert!(!brute_force_isomorphic(&hexagon, &triangles));
    }

    #[test]
    fn many_parallel_copies() {
        // p parallel paths of length two between two hubs, p = 17
        let p = 17;
        let mut edges = Vec::new();
        for i in 0..p {
            edges.push((0, 2 + i, 1));
            edges.push((2 + i, 1, 1));
        }
        let g = from_edges(vec![0; p + 2], &edges);
        let perm: Vec<usize> = (0..p + 2).rev().collect();
        assert_eq!(canonical_form(&g), canonical_form(&relabel(&g, &perm)));
    }

    fn small_graph() -> impl Strategy<Value = ColoredGraph> {
        (1usize..=7).prop_flat_map(|n| {
            (
                proptest::collection::vec(0u32..2, n),
                proptest::collection::vec((0..n, 0..n, 1u32..3), 0..12),
            )
                .prop_map(|(colors, edges)| from_edges(colors, &edges))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(a in small_graph(), b in small_graph()) {
            prop_assert_eq!(
                canonical_form(&a) == canonical_form(&b),
                brute_force_isomorphic(&a, &b)
            );
        }

        #[test]
        fn invariant_under_relabeling(a in small_graph(), seed in any::<u64>()) {
            let n = a.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let b = relabel(&a, &perm);
            prop_assert_eq!(canonical_form(&a), canonical_form(&b));
        }
    }
}
