//! Triangle-square flag complexes `X(G)`: the 2-cells are all triangles and
//! all induced 4-cycles of the graph.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{certificate, induced, intersect_sorted, Certificate, Graph, GraphError};

/// An induced 4-cycle `u1 u2 u3 u4` stored with `u1` the smallest corner and
/// `u2 < u4`, so every square has one representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Square(pub [usize; 4]);

impl Square {
    /// Canonical form of the cycle `c[0] c[1] c[2] c[3]`.
    pub fn new(c: [usize; 4]) -> Square {
        let i = (0..4).min_by_key(|&i| c[i]).unwrap();
        let (a, b, cc, d) = (c[i], c[(i + 1) % 4], c[(i + 2) % 4], c[(i + 3) % 4]);
        if b < d {
            Square([a, b, cc, d])
        } else {
            Square([a, d, cc, b])
        }
    }

    pub fn corners(&self) -> [usize; 4] {
        self.0
    }

    /// The two diagonals `{u1, u3}` and `{u2, u4}`.
    pub fn diagonals(&self) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.0;
        [(a, c), (b, d)]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// Whether the four vertices induce this 4-cycle in `g`.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let [a, b, c, d] = self.0;
        let n = g.n();
        a < n
            && b < n
            && c < n
            && d < n
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && g.has_edge(d, a)
            && !g.has_edge(a, c)
            && !g.has_edge(b, d)
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Square {
        Square::new(self.0.map(f))
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a}-{b}-{c}-{d}")
    }
}

/// Common neighbours of `v` and each vertex at distance exactly 2, as
/// `(far vertex, common neighbours)` sorted by far vertex.
pub fn second_neighborhood(g: &Graph, v: usize) -> Vec<(usize, Vec<usize>)> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &a in g.neighbors(v) {
        for &c in g.neighbors(a) {
            if c != v && !g.has_edge(v, c) {
                pairs.push((c, a));
            }
        }
    }
    pairs.sort_unstable();
    let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
    for (c, a) in pairs {
        match out.last_mut() {
            Some((last, list)) if *last == c => list.push(a),
            _ => out.push((c, vec![a])),
        }
    }
    out
}

/// All squares through `v`, sorted.
pub fn squares_at(g: &Graph, v: usize) -> Vec<Square> {
    let mut out = Vec::new();
    for (c, common) in second_neighborhood(g, v) {
        push_squares(g, v, c, &common, &mut out);
    }
    out.sort_unstable();
    out
}

/// Squares with diagonal `{a, c}`: pairs of non-adjacent common neighbours.
fn push_squares(g: &Graph, a: usize, c: usize, common: &[usize], out: &mut Vec<Square>) {
    for (i, &b) in common.iter().enumerate() {
        for &d in &common[i + 1..] {
            if !g.has_edge(b, d) {
                out.push(Square::new([a, b, c, d]));
            }
        }
    }
}

/// `X(G)` with its cells listed once each, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSquareComplex {
    pub graph: Graph,
    pub triangles: Vec<[usize; 3]>,
    pub squares: Vec<Square>,
}

impl TriangleSquareComplex {
    pub fn new(graph: Graph) -> Self {
        let g = &graph;
        let triangles: Vec<[usize; 3]> = (0..g.n())
            .into_par_iter()
            .flat_map_iter(|u| {
                let mut out = Vec::new();
                for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
                    for w in intersect_sorted(g.neighbors(u), g.neighbors(v)) {
                        if w > v {
                            out.push([u, v, w]);
                        }
                    }
                }
                out
            })
            .collect();
        // Each square is emitted from its smallest corner only.
        let squares: Vec<Square> = (0..g.n())
            .into_par_iter()
            .flat_map_iter(|a| {
                let mut out = Vec::new();
                for (c, common) in second_neighborhood(g, a) {
                    if c > a {
                        let common: Vec<usize> = common.into_iter().filter(|&x| x > a).collect();
                        push_squares(g, a, c, &common, &mut out);
                    }
                }
                out.sort_unstable();
                out
            })
            .collect();
        TriangleSquareComplex { graph, triangles, squares }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn star(&self, v: usize) -> Star {
        star(&self.graph, v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellCounts {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub squares: usize,
}

/// Cell counts of `X(G)` without materializing the cells.
pub fn cell_counts(g: &Graph) -> CellCounts {
    let (triangles, squares) = (0..g.n())
        .into_par_iter()
        .map(|a| {
            let nb = g.neighbors(a);
            let mut t = 0;
            for (i, &b) in nb.iter().enumerate().filter(|&(_, &b)| b > a) {
                t += nb[i + 1..].iter().filter(|&&c| g.has_edge(b, c)).count();
            }
            let mut s = 0;
            for (c, common) in second_neighborhood(g, a) {
                if c > a {
                    let common: Vec<usize> = common.into_iter().filter(|&x| x > a).collect();
                    for (i, &b) in common.iter().enumerate() {
                        s += common[i + 1..].iter().filter(|&&d| !g.has_edge(b, d)).count();
                    }
                }
            }
            (t, s)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    CellCounts { vertices: g.n(), edges: g.edge_count(), triangles, squares }
}

/// The cells of `X(G)` containing `center`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    /// All vertices of the star, ascending.
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<[usize; 3]>,
    pub squares: Vec<Square>,
}

impl Star {
    pub fn cell_counts(&self) -> (usize, usize, usize) {
        (self.edges.len(), self.triangles.len(), self.squares.len())
    }
}

/// `St(v, X(G))`, computed from the graph alone.
pub fn star(g: &Graph, v: usize) -> Star {
    let nb = g.neighbors(v);
    let edges = nb.iter().map(|&w| (v.min(w), v.max(w))).collect();
    let mut triangles = Vec::new();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if g.has_edge(a, b) {
                let mut t = [v, a, b];
                t.sort_unstable();
                triangles.push(t);
            }
        }
    }
    triangles.sort_unstable();
    let squares = squares_at(g, v);
    let mut vertices: Vec<usize> = nb.to_vec();
    vertices.push(v);
    vertices.extend(squares.iter().flat_map(|s| s.0));
    vertices.sort_unstable();
    vertices.dedup();
    Star { center: v, vertices, edges, triangles, squares }
}

/// Rooted certificate of the graph induced on the star's vertices.
pub fn star_certificate(g: &Graph, v: usize) -> Result<(Certificate, (usize, usize, usize)), GraphError> {
    let st = star(g, v);
    let sub = induced(g, &st.vertices);
    let root = sub.local_of(v).unwrap();
    Ok((certificate(&sub.graph, Some(root))?, st.cell_counts()))
}

/// Whether some center-preserving isomorphism matches the two stars,
/// decided by rooted certificates of the induced star graphs plus cell counts.
pub fn star_isomorphic(
    x1: &TriangleSquareComplex,
    v1: usize,
    x2: &TriangleSquareComplex,
    v2: usize,
) -> Result<bool, GraphError> {
    Ok(star_certificate(&x1.graph, v1)? == star_certificate(&x2.graph, v2)?)
}

/// Why a vertex map fails to restrict to an isomorphism of stars.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum StarDefect {
    /// Two star vertices share an image.
    NotInjective { a: usize, b: usize, image: usize },
    /// The image of the star's vertex set is not the target star's vertex set.
    VertexSetMismatch { mapped: usize, target: usize },
    EdgesMismatch,
    TrianglesMismatch,
    SquaresMismatch,
}

impl fmt::Display for StarDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarDefect::NotInjective { a, b, image } => write!(f, "{a} and {b} both map to {image}"),
            StarDefect::VertexSetMismatch { mapped, target } => {
                write!(f, "star image has {mapped} vertices, target star has {target}")
            }
            StarDefect::EdgesMismatch => f.write_str("edges do not correspond"),
            StarDefect::TrianglesMismatch => f.write_str("triangles do not correspond"),
            StarDefect::SquaresMismatch => f.write_str("squares do not correspond"),
        }
    }
}

/// Checks that `map` restricted to `St(w, X(g1))` is an isomorphism onto
/// `St(map(w), X(g2))`: bijective on vertices and cell-for-cell.
pub fn star_map_defect(g1: &Graph, w: usize, g2: &Graph, map: impl Fn(usize) -> usize) -> Option<StarDefect> {
    let s1 = star(g1, w);
    let s2 = star(g2, map(w));
    let mut images: Vec<(usize, usize)> = s1.vertices.iter().map(|&x| (map(x), x)).collect();
    images.sort_unstable();
    if let Some(p) = images.windows(2).find(|p| p[0].0 == p[1].0) {
        return Some(StarDefect::NotInjective { a: p[0].1, b: p[1].1, image: p[0].0 });
    }
    let mapped: Vec<usize> = images.iter().map(|p| p.0).collect();
    if mapped != s2.vertices {
        return Some(StarDefect::VertexSetMismatch { mapped: mapped.len(), target: s2.vertices.len() });
    }
    let mut edges: Vec<(usize, usize)> =
        s1.edges.iter().map(|&(a, b)| (map(a).min(map(b)), map(a).max(map(b)))).collect();
    edges.sort_unstable();
    if edges != s2.edges {
        return Some(StarDefect::EdgesMismatch);
    }
    let mut triangles: Vec<[usize; 3]> = s1
        .triangles
        .iter()
        .map(|t| {
            let mut m = t.map(&map);
            m.sort_unstable();
            m
        })
        .collect();
    triangles.sort_unstable();
    if triangles != s2.triangles {
        return Some(StarDefect::TrianglesMismatch);
    }
    let mut squares: Vec<Square> = s1.squares.iter().map(|s| s.map(&map)).collect();
    squares.sort_unstable();
    if squares != s2.squares {
        return Some(StarDefect::SquaresMismatch);
    }
    None
}
