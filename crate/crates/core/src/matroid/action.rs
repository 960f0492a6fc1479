//! Cyclic automorphism groups acting on a graph, their quotients, and the
//! displacement bound that controls how far the quotient looks like the base.

use rayon::prelude::*;
use thiserror::Error;

use super::{basis_graph, complete_matroid, BasisGraph, Mask};
use crate::graph::{bfs_bounded, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("permutation has length {len}, graph has {n} vertices")]
    WrongLength { len: usize, n: usize },
    #[error("not a permutation: {0} is hit twice")]
    NotAPermutation(usize),
    #[error("edge ({u}, {v}) is not mapped to an edge")]
    NotAnAutomorphism { u: usize, v: usize },
    #[error("vertex {vertex} is fixed by the generator power {power}")]
    NotFree { vertex: usize, power: usize },
    #[error("orbit of {u} contains the edge ({u}, {v})")]
    AdjacentOrbit { u: usize, v: usize },
}

/// The cyclic group generated by one automorphism of `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismAction {
    base: Graph,
    perm: Vec<usize>,
    order: usize,
}

impl AutomorphismAction {
    pub fn new(base: Graph, perm: Vec<usize>) -> Result<Self, ActionError> {
        let n = base.n();
        if perm.len() != n {
            return Err(ActionError::WrongLength { len: perm.len(), n });
        }
        let mut hit = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(ActionError::NotAPermutation(p));
            }
        }
        if let Some((u, v)) = base.edges().find(|&(u, v)| !base.has_edge(perm[u], perm[v])) {
            return Err(ActionError::NotAnAutomorphism { u, v });
        }
        let order = (0..n).map(|v| cycle_len(&perm, v)).fold(1, lcm);
        Ok(AutomorphismAction { base, perm, order })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `NotFree` with the smallest vertex fixed by a non-identity power.
    pub fn check_free(&self) -> Result<(), ActionError> {
        for v in 0..self.base.n() {
            let len = cycle_len(&self.perm, v);
            if len < self.order {
                return Err(ActionError::NotFree { vertex: v, power: len });
            }
        }
        Ok(())
    }

    /// The orbit of `v` in generator order, starting at `v`.
    pub fn orbit(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut x = self.perm[v];
        while x != v {
            out.push(x);
            x = self.perm[x];
        }
        out
    }
}

fn cycle_len(perm: &[usize], v: usize) -> usize {
    let mut len = 1;
    let mut x = perm[v];
    while x != v {
        x = perm[x];
        len += 1;
    }
    len
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Complementation `A ↦ I \ A` on the basis graph of `M_{n,n}`, together
/// with that basis graph.
pub fn antipodal_action<M: Mask>(n: usize, budget: usize) -> Result<(BasisGraph<M>, AutomorphismAction), super::SetSystemError> {
    assert!(n >= 2, "the antipodal action needs n >= 2");
    let bg = basis_graph(&complete_matroid::<M>(n, budget)?);
    let full = M::full(2 * n);
    let perm = bg.bases.iter().map(|&b| bg.vertex_of(full ^ b).unwrap()).collect();
    let action = AutomorphismAction::new(bg.graph.clone(), perm).expect("complementation is an automorphism");
    Ok((bg, action))
}

/// A quotient graph with the projection from the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub graph: Graph,
    /// `projection[v]` is the orbit index of base vertex `v`.
    pub projection: Vec<usize>,
    /// Orbits in ascending order of their smallest vertex; members ascending.
    pub orbits: Vec<Vec<usize>>,
}

pub fn quotient(action: &AutomorphismAction) -> Result<Quotient, ActionError> {
    action.check_free()?;
    let g = &action.base;
    let n = g.n();
    let mut projection = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for v in 0..n {
        if projection[v] != usize::MAX {
            continue;
        }
        let mut orbit = action.orbit(v);
        orbit.sort_unstable();
        for &x in &orbit {
            projection[x] = orbits.len();
        }
        orbits.push(orbit);
    }
    let mut adj = vec![Vec::new(); orbits.len()];
    for (u, v) in g.edges() {
        let (p, q) = (projection[u], projection[v]);
        if p == q {
            return Err(ActionError::AdjacentOrbit { u, v });
        }
        adj[p].push(q);
        adj[q].push(p);
    }
    Ok(Quotient { graph: Graph::from_adjacency_unchecked(adj), projection, orbits })
}

/// `min d(v, g·v)` over all vertices and non-identity group elements, or
/// `None` when some `g·v` is unreachable from `v`.
///
/// Runs 64 breadth-first searches at a time as bit-parallel frontiers, one
/// source per orbit.
pub fn min_displacement(action: &AutomorphismAction) -> Option<u32> {
    let g = &action.base;
    let n = g.n();
    if action.order == 1 {
        return Some(0);
    }
    let mut seen = vec![false; n];
    let mut sources = Vec::new();
    for v in 0..n {
        if !seen[v] {
            for x in action.orbit(v) {
                seen[x] = true;
            }
            sources.push(v);
        }
    }
    let results: Vec<Option<u32>> = sources
        .par_chunks(64)
        .map(|chunk| {
            let targets: Vec<Vec<usize>> = chunk.iter().map(|&s| action.orbit(s)[1..].to_vec()).collect();
            batch_displacement(g, chunk, &targets)
        })
        .collect();
    results.into_iter().try_fold(u32::MAX, |acc, r| r.map(|d| acc.min(d)))
}

/// For up to 64 sources, the smallest distance from each to any of its
/// targets, minimized over the batch.
fn batch_displacement(g: &Graph, sources: &[usize], targets: &[Vec<usize>]) -> Option<u32> {
    let n = g.n();
    let mut visited = vec![0u64; n];
    let mut frontier = vec![0u64; n];
    for (i, &s) in sources.iter().enumerate() {
        visited[s] |= 1 << i;
        frontier[s] |= 1 << i;
    }
    let mut level = 0;
    loop {
        if targets.iter().enumerate().any(|(i, ts)| ts.iter().any(|&t| visited[t] >> i & 1 == 1)) {
            return Some(level);
        }
        let next: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | frontier[w]) & !visited[v])
            .collect();
        if next.iter().all(|&x| x == 0) {
            return None;
        }
        for v in 0..n {
            visited[v] |= next[v];
        }
        frontier = next;
        level += 1;
    }
}

/// Whether the projection maps `B_r(v)` in the base bijectively onto
/// `B_r(p(v))` in the quotient, preserving adjacency and non-adjacency.
pub fn projection_is_ball_isomorphism(action: &AutomorphismAction, q: &Quotient, v: usize, r: u32) -> bool {
    let g = &action.base;
    let db = bfs_bounded(g, v, r);
    let dq = bfs_bounded(&q.graph, q.projection[v], r);
    let ball: Vec<usize> = (0..g.n()).filter(|&x| db.get(x).is_some()).collect();
    let mut image: Vec<usize> = ball.iter().map(|&x| q.projection[x]).collect();
    image.sort_unstable();
    image.dedup();
    let target: Vec<usize> = (0..q.graph.n()).filter(|&x| dq.get(x).is_some()).collect();
    if image.len() != ball.len() || image != target {
        return false;
    }
    ball.iter().enumerate().all(|(i, &a)| {
        ball[i + 1..].iter().all(|&b| g.has_edge(a, b) == q.graph.has_edge(q.projection[a], q.projection[b]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_distances, certificate};

    #[test]
    fn antipodal_small_cases() {
        let (bg, a2) = antipodal_action::<u64>(2, 100).unwrap();
        assert_eq!(a2.order(), 2);
        for (v, &p) in a2.perm().iter().enumerate() {
            assert_eq!(bg.bases[p], 0b1111 ^ bg.bases[v]);
        }
        let q = quotient(&a2).unwrap();
        assert_eq!(q.graph, Graph::complete(3));
        assert_eq!(min_displacement(&a2), Some(2));

        let (_, a3) = antipodal_action::<u64>(3, 100).unwrap();
        assert!(a3.check_free().is_ok());
        assert_eq!(a3.perm().iter().enumerate().filter(|&(v, &p)| v == p).count(), 0);
        assert_eq!(min_displacement(&a3), Some(3));

        let (_, a4) = antipodal_action::<u64>(4, 100).unwrap();
        assert_eq!(quotient(&a4).unwrap().graph.n(), 35);
        assert_eq!(min_displacement(&a4), Some(4));
    }

    #[test]
    fn displacement_matches_plain_bfs() {
        for n in [3, 4] {
            let (_, a) = antipodal_action::<u64>(n, 1000).unwrap();
            let brute = (0..a.base().n())
                .map(|v| bfs_distances(a.base(), v).of(a.perm()[v]))
                .min()
                .unwrap();
            assert_eq!(min_displacement(&a), Some(brute));
        }
        let c9 = Graph::cycle(9);
        let rot: Vec<usize> = (0..9).map(|v| (v + 3) % 9).collect();
        let a = AutomorphismAction::new(c9, rot).unwrap();
        assert_eq!(a.order(), 3);
        assert_eq!(min_displacement(&a), Some(3));
    }

    #[test]
    fn action_errors() {
        let id = AutomorphismAction::new(Graph::cycle(4), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(quotient(&id).unwrap().graph.n(), 4);
        let flip = AutomorphismAction::new(Graph::cycle(4), vec![0, 3, 2, 1]).unwrap();
        assert_eq!(quotient(&flip), Err(ActionError::NotFree { vertex: 0, power: 1 }));
        let rot = AutomorphismAction::new(Graph::cycle(4), vec![1, 2, 3, 0]).unwrap();
        assert_eq!(quotient(&rot), Err(ActionError::AdjacentOrbit { u: 0, v: 1 }));
        assert_eq!(
            AutomorphismAction::new(Graph::path(3), vec![1, 0, 2]),
            Err(ActionError::NotAnAutomorphism { u: 1, v: 2 })
        );
        assert_eq!(AutomorphismAction::new(Graph::path(3), vec![0, 0, 2]), Err(ActionError::NotAPermutation(0)));
    }

    #[test]
    fn balls_project_isomorphically_below_the_bound() {
        let (_, a) = antipodal_action::<u64>(4, 100).unwrap();
        let q = quotient(&a).unwrap();
        // displacement 4 gives radius 1 via 2r + 2 <= 4
        for v in 0..a.base().n() {
            assert!(projection_is_ball_isomorphism(&a, &q, v, 1));
        }
        assert!(!projection_is_ball_isomorphism(&a, &q, 0, 2));
        let bb = crate::graph::ball(a.base(), 0, 1);
        let bq = crate::graph::ball(&q.graph, q.projection[0], 1);
        assert_eq!(
            certificate(&bb.sub.graph, Some(bb.root)).unwrap(),
            certificate(&bq.sub.graph, Some(bq.root)).unwrap()
        );
    }
}
