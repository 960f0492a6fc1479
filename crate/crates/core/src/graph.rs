//! Simple undirected graphs on dense vertex ids, with the metric primitives
//! (BFS distances, intervals, balls) every checker is built on.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

mod canon;
mod io;

pub use canon::{certificate, certificate_with_bound, Certificate, DEFAULT_CERTIFICATE_BOUND};
pub use io::{read_graph, write_graph, ParseError};
pub(crate) use io::{data_lines, parse_usize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(usize, usize),
    #[error("graph has {n} vertices, above the certificate bound {bound}")]
    TooLarge { n: usize, bound: usize },
}

/// Immutable simple graph. Neighbor lists are sorted and symmetric.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph from an edge list, dropping duplicates and reversed copies.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// Sorts and deduplicates the given lists. Callers guarantee symmetry and
    /// the absence of loops.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(u, l)| l.iter().all(|&v| v != u && adj[v].binary_search(&u).is_ok())));
        Graph { adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Graph { adj }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::from_edges(a + b, &edges).expect("valid bipartite graph")
    }

    /// `K_{parts×size}`: complete multipartite graph, parts of equal size.
    /// `cocktail_party(d)` is `complete_multipartite(d, 2)`.
    pub fn complete_multipartite(parts: usize, size: usize) -> Self {
        let n = parts * size;
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v / size != u / size).collect())
            .collect();
        Graph { adj }
    }

    /// The octahedron `K_{2,2,2}`; vertex `i` is antipodal to `i ^ 1`.
    pub fn octahedron() -> Self {
        Self::complete_multipartite(3, 2)
    }

    /// Wheel `W_k`: hub `0` joined to the cycle `1..=k`.
    pub fn wheel(k: usize) -> Self {
        let mut edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        edges.extend((0..k).map(|i| (1 + i, 1 + (i + 1) % k)));
        Self::from_edges(k + 1, &edges).expect("wheel needs k >= 3")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    /// Sorted common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        intersect_sorted(&self.adj[u], &self.adj[v])
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs_distances(self, 0).unreachable_count() == 0
    }

    /// Complement graph.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        Graph { adj }
    }

    /// The line graph; vertex `i` is the `i`-th edge of [`Graph::edges`].
    pub fn line_graph(&self) -> Graph {
        let edges: Vec<_> = self.edges().collect();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); self.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            at[u].push(i);
            at[v].push(i);
        }
        let mut adj = vec![Vec::new(); edges.len()];
        for list in &at {
            for &a in list {
                for &b in list {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        Graph::from_adjacency_unchecked(adj)
    }

    /// Applies a vertex relabeling `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, l) in self.adj.iter().enumerate() {
            adj[perm[u]] = l.iter().map(|&v| perm[v]).collect();
        }
        Graph::from_adjacency_unchecked(adj)
    }

    /// Degree sequence, sorted descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Distance from a fixed source. `None` marks an unreachable vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distances {
    pub source: usize,
    dist: Vec<Option<u32>>,
}

impl Distances {
    #[inline]
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }

    /// Distance of a vertex known to be reachable.
    #[inline]
    pub fn of(&self, v: usize) -> u32 {
        self.dist[v].expect("vertex reachable from source")
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.dist
    }

    pub fn unreachable_count(&self) -> usize {
        self.dist.iter().filter(|d| d.is_none()).count()
    }

    pub fn eccentricity(&self) -> Option<u32> {
        self.dist.iter().flatten().copied().max()
    }
}

pub fn bfs_distances(g: &Graph, source: usize) -> Distances {
    bfs_bounded(g, source, u32::MAX)
}

/// BFS that stops expanding past `radius`; vertices farther away stay `None`.
pub fn bfs_bounded(g: &Graph, source: usize, radius: u32) -> Distances {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        if du >= radius {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    Distances { source, dist }
}

/// `I(u, v)`: all vertices on shortest `(u, v)`-paths, ascending.
pub fn interval(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>, GraphError> {
    let du = bfs_distances(g, u);
    let total = du.get(v).ok_or(GraphError::DifferentComponents(u, v))?;
    let dv = bfs_distances(g, v);
    Ok((0..g.n())
        .filter(|&x| match (du.get(x), dv.get(x)) {
            (Some(a), Some(b)) => a + b == total,
            _ => false,
        })
        .collect())
}

/// An induced subgraph together with the original ids of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[i]` is the id in the parent graph of local vertex `i`.
    pub original: Vec<usize>,
}

impl Subgraph {
    pub fn local_of(&self, original: usize) -> Option<usize> {
        self.original.binary_search(&original).ok()
    }
}

/// Subgraph induced by `set`, relabeled densely in ascending id order.
pub fn induced(g: &Graph, set: &[usize]) -> Subgraph {
    let mut original = set.to_vec();
    original.sort_unstable();
    original.dedup();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in original.iter().enumerate() {
        local[v] = i;
    }
    let adj = original
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| local[w] != usize::MAX)
                .map(|&w| local[w])
                .collect()
        })
        .collect();
    Subgraph { graph: Graph { adj }, original }
}

/// A ball `B_r(v)` as an induced subgraph with its center marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub sub: Subgraph,
    /// Local id of the center.
    pub root: usize,
}

pub fn ball(g: &Graph, v: usize, r: u32) -> Ball {
    let d = bfs_bounded(g, v, r);
    let members: Vec<usize> = (0..g.n()).filter(|&x| d.get(x).is_some()).collect();
    let sub = induced(g, &members);
    let root = sub.local_of(v).unwrap();
    Ball { sub, root }
}

/// The subgraph induced by `N(v)` (the link of `v`).
pub fn link(g: &Graph, v: usize) -> Subgraph {
    induced(g, g.neighbors(v))
}
