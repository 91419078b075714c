use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub source: usize,
    pub target: usize,
    pub length: Rational,
}

impl TreeEdge {
    pub fn other(&self, v: usize) -> usize {
        if self.source == v {
            self.target
        } else {
            self.source
        }
    }
}

/// A finite tree with exact positive edge lengths. Points are attached to
/// vertices as infinite leaves; `leaves` maps a point index to the vertex
/// it is attached at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct MetricTree {
    vertex_count: usize,
    edges: Vec<TreeEdge>,
    leaves: BTreeMap<usize, usize>,
    root: usize,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawLeaf {
    point: usize,
    vertex: usize,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    vertices: Vec<usize>,
    edges: Vec<TreeEdge>,
    leaves: Vec<RawLeaf>,
    root: usize,
}

impl TryFrom<RawTree> for MetricTree {
    type Error = Error;

    fn try_from(raw: RawTree) -> Result<Self> {
        if raw.vertices.iter().copied().ne(0..raw.vertices.len()) {
            return Err(Error::InvalidInput(
                "tree vertices must be numbered 0..n in order".into(),
            ));
        }
        let mut leaves = BTreeMap::new();
        for l in raw.leaves {
            if leaves.insert(l.point, l.vertex).is_some() {
                return Err(Error::InvalidInput(format!("point {} attached twice", l.point)));
            }
        }
        MetricTree::new(raw.vertices.len(), raw.edges, leaves, raw.root)
    }
}

impl From<MetricTree> for RawTree {
    fn from(t: MetricTree) -> Self {
        RawTree {
            vertices: (0..t.vertex_count).collect(),
            edges: t.edges,
            leaves: t
                .leaves
                .into_iter()
                .map(|(point, vertex)| RawLeaf { point, vertex })
                .collect(),
            root: t.root,
        }
    }
}

impl MetricTree {
    /// Validates connectivity, acyclicity, positive lengths and vertex ranges.
    pub fn new(vertex_count: usize, edges: Vec<TreeEdge>, leaves: BTreeMap<usize, usize>, root: usize) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if vertex_count == 0 {
            return bad("a tree needs at least one vertex".into());
        }
        if edges.len() + 1 != vertex_count {
            return bad(format!(
                "{} edges on {} vertices cannot form a tree",
                edges.len(),
                vertex_count
            ));
        }
        if root >= vertex_count {
            return bad(format!("root {root} out of range"));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (id, e) in edges.iter().enumerate() {
            if e.source >= vertex_count || e.target >= vertex_count || e.source == e.target {
                return bad(format!("edge {id} has invalid endpoints"));
            }
            if !e.length.is_positive() {
                return bad(format!("edge {id} has non-positive length {}", e.length));
            }
            adjacency[e.source].push(id);
            adjacency[e.target].push(id);
        }
        if let Some((p, v)) = leaves.iter().find(|(_, v)| **v >= vertex_count) {
            return bad(format!("point {p} attached to missing vertex {v}"));
        }
        let tree = MetricTree {
            vertex_count,
            edges,
            leaves,
            root,
            adjacency,
        };
        // n − 1 edges and connected ⇒ acyclic
        if tree.bfs_order(root).len() != vertex_count {
            return bad("tree is not connected".into());
        }
        Ok(tree)
    }

    /// A single vertex carrying all the given points.
    pub fn single_vertex(points: impl IntoIterator<Item = usize>) -> Self {
        MetricTree::new(1, Vec::new(), points.into_iter().map(|p| (p, 0)).collect(), 0)
            .expect("single vertex tree is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn leaves(&self) -> &BTreeMap<usize, usize> {
        &self.leaves
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn with_root(mut self, root: usize) -> Result<Self> {
        if root >= self.vertex_count {
            return Err(Error::InvalidInput(format!("root {root} out of range")));
        }
        self.root = root;
        Ok(self)
    }

    /// Ids of the edges incident to `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn points_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.leaves.iter().filter(move |(_, w)| **w == v).map(|(p, _)| *p)
    }

    /// Tree edges plus attached leaves at `v`.
    pub fn incidence(&self, v: usize) -> usize {
        self.adjacency[v].len() + self.points_at(v).count()
    }

    fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        let mut order = Vec::with_capacity(self.vertex_count);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in &self.adjacency[v] {
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Orientation toward the root: for every vertex, the edge leading to its
    /// parent (`None` at the root), together with a root-first vertex order.
    pub fn parent_edges(&self) -> (Vec<Option<usize>>, Vec<usize>) {
        let order = self.bfs_order(self.root);
        let mut parent = vec![None; self.vertex_count];
        let mut placed = vec![false; self.vertex_count];
        for &v in &order {
            placed[v] = true;
            for &e in &self.adjacency[v] {
                let w = self.edges[e].other(v);
                if !placed[w] {
                    parent[w] = Some(e);
                }
            }
        }
        (parent, order)
    }

    /// The endpoint of edge `e` lying away from the root.
    pub fn far_endpoint(&self, e: usize) -> usize {
        let (parent, _) = self.parent_edges();
        let edge = &self.edges[e];
        if parent[edge.source] == Some(e) {
            edge.source
        } else {
            edge.target
        }
    }

    /// Path length between two vertices.
    pub fn vertex_distance(&self, u: usize, v: usize) -> Rational {
        self.distances_from(u)[v].clone()
    }

    pub fn distances_from(&self, u: usize) -> Vec<Rational> {
        let mut dist = vec![None; self.vertex_count];
        dist[u] = Some(Rational::zero());
        let mut stack = vec![u];
        while let Some(v) = stack.pop() {
            let dv = dist[v].clone().expect("visited");
            for &e in &self.adjacency[v] {
                let w = self.edges[e].other(v);
                if dist[w].is_none() {
                    dist[w] = Some(&dv + &self.edges[e].length);
                    stack.push(w);
                }
            }
        }
        dist.into_iter().map(|d| d.expect("connected")).collect()
    }

    /// Interior path length between the attachment vertices of two points.
    pub fn leaf_distance(&self, p: usize, q: usize) -> Option<Rational> {
        let (a, b) = (*self.leaves.get(&p)?, *self.leaves.get(&q)?);
        Some(self.vertex_distance(a, b))
    }

    /// Removes finite pendant stems: a vertex carrying exactly one point and
    /// exactly one edge is deleted and its point moves to the neighbour.
    /// Turns a phylogenetic tree with leaf vertices into a marked tree.
    pub fn strip_leaf_stems(&self) -> MetricTree {
        let mut alive = vec![true; self.vertex_count];
        let mut edge_alive = vec![true; self.edges.len()];
        let mut leaves = self.leaves.clone();
        let mut degree: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        let mut remaining = self.vertex_count;
        loop {
            let stem = (0..self.vertex_count)
                .find(|&v| alive[v] && degree[v] == 1 && leaves.values().filter(|w| **w == v).count() == 1);
            let Some(v) = stem else { break };
            if remaining == 1 {
                break;
            }
            let e = *self.adjacency[v].iter().find(|&&e| edge_alive[e]).expect("degree one");
            let w = self.edges[e].other(v);
            for target in leaves.values_mut() {
                if *target == v {
                    *target = w;
                }
            }
            alive[v] = false;
            edge_alive[e] = false;
            degree[w] -= 1;
            remaining -= 1;
        }
        let mut new_id = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if alive[v] {
                new_id[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .zip(&edge_alive)
            .filter(|(_, a)| **a)
            .map(|(e, _)| TreeEdge {
                source: new_id[e.source],
                target: new_id[e.target],
                length: e.length.clone(),
            })
            .collect();
        let leaves = leaves.into_iter().map(|(p, v)| (p, new_id[v])).collect();
        let root = if alive[self.root] { new_id[self.root] } else { 0 };
        MetricTree::new(next, edges, leaves, root).expect("stripping keeps a tree")
    }

    /// Same point set and identical interior distances between every pair of
    /// points. For trees without valence-two vertices this is labeled
    /// isometry.
    pub fn same_leaf_metric(&self, other: &MetricTree) -> bool {
        if self.leaves.keys().ne(other.leaves.keys()) {
            return false;
        }
        let pts: Vec<usize> = self.leaves.keys().copied().collect();
        pts.iter().enumerate().all(|(i, &p)| {
            pts[i + 1..]
                .iter()
                .all(|&q| self.leaf_distance(p, q) == other.leaf_distance(p, q))
        })
    }

    /// Multiplies every edge length by a positive rational.
    pub fn scaled(&self, factor: &Rational) -> MetricTree {
        assert!(factor.is_positive());
        let mut t = self.clone();
        for e in &mut t.edges {
            e.length = &e.length * factor;
        }
        t
    }

    /// Graphviz rendering; `label` names the attached points.
    pub fn to_dot(&self, label: impl Fn(usize) -> String) -> String {
        let mut out = String::from("graph tree {\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(out, "  v{v} [shape=circle, label=\"v{v}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.source, e.target, e.length);
        }
        for (p, v) in &self.leaves {
            let _ = writeln!(out, "  p{p} [shape=plaintext, label=\"{}\"];", label(*p));
            let _ = writeln!(out, "  v{v} -- p{p} [style=dashed];");
        }
        out.push_str("}\n");
        out
    }
}
