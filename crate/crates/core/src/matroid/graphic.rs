//! Cycle matroids: bases are the spanning trees of a multigraph, enumerated by
//! reverse search.
//!
//! The root of the search tree is the greedy tree `T0` (edges scanned by
//! index). The parent of any other tree `T` is `T + f - e` where `f` is the
//! smallest edge of `T0 \ T` and `e` the largest edge outside `T0` on the
//! cycle `f` closes. Children are generated by inverting that step and
//! keeping only the swaps whose parent is the current tree.

use super::{Mask, SetSystem, SetSystemError};

pub const DEFAULT_EDGE_BUDGET: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphicError {
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("{edges} edges exceed the budget of {budget}")]
    BudgetExceeded { edges: usize, budget: usize },
    #[error(transparent)]
    SetSystem(#[from] SetSystemError),
}

/// Spanning trees of the multigraph on `n` vertices with the given edges
/// (element `i` is edge `i`), sorted ascending. Loops never enter a tree.
pub fn graphic_matroid<M: Mask>(
    n: usize,
    edges: &[(usize, usize)],
    budget: usize,
) -> Result<SetSystem<M>, GraphicError> {
    if edges.len() > budget {
        return Err(GraphicError::BudgetExceeded { edges: edges.len(), budget });
    }
    if edges.len() > M::WIDTH {
        return Err(SetSystemError::GroundTooLarge { ground: edges.len(), width: M::WIDTH }.into());
    }
    assert!(edges.iter().all(|&(u, v)| u < n && v < n), "edge endpoint outside 0..{n}");
    let search = Search { n, edges };
    let root = search.greedy(M::zero()).ok_or(GraphicError::Disconnected)?;
    let mut trees = vec![root];
    let mut stack = vec![root];
    while let Some(t) = stack.pop() {
        for f in (t & root).elements() {
            for e in (0..edges.len()).filter(|&e| !root.has(e) && !t.has(e)) {
                let child = t ^ M::bit(f) ^ M::bit(e);
                if search.spans(child) && search.parent(child, root) == Some(t) {
                    trees.push(child);
                    stack.push(child);
                }
            }
        }
    }
    trees.sort_unstable();
    Ok(SetSystem::new(edges.len(), trees)?)
}

struct Search<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
}

impl Search<'_> {
    /// Greedy spanning tree extending `forced`, or `None` if disconnected.
    fn greedy<M: Mask>(&self, forced: M) -> Option<M> {
        let mut dsu: Vec<usize> = (0..self.n).collect();
        let mut tree = M::zero();
        let order = forced.elements().chain((0..self.edges.len()).filter(|&e| !forced.has(e)));
        for e in order {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
            if a != b {
                dsu[a] = b;
                tree = tree | M::bit(e);
            }
        }
        (tree.size() + 1 == self.n.max(1)).then_some(tree)
    }

    fn spans<M: Mask>(&self, t: M) -> bool {
        if t.size() + 1 != self.n.max(1) {
            return false;
        }
        let mut dsu: Vec<usize> = (0..self.n).collect();
        t.elements().all(|e| {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
            dsu[a] = b;
            a != b
        })
    }

    fn parent<M: Mask>(&self, t: M, root: M) -> Option<M> {
        let f = (root & !t).elements().next()?;
        let cycle = self.tree_path(t, self.edges[f].0, self.edges[f].1);
        let e = cycle.elements().filter(|&e| !root.has(e)).last()?;
        Some(t ^ M::bit(f) ^ M::bit(e))
    }

    /// Edge set of the path between `s` and `t` inside tree `tree`.
    fn tree_path<M: Mask>(&self, tree: M, s: usize, t: usize) -> M {
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for e in tree.elements() {
                let (u, v) = self.edges[e];
                let y = if u == x { v } else if v == x { u } else { continue };
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, e));
                    stack.push(y);
                }
            }
        }
        let mut path = M::zero();
        let mut x = t;
        while let Some((p, e)) = via[x] {
            path = path | M::bit(e);
            x = p;
        }
        path
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}
