//! Universal covers of triangle-square flag complexes, built level by level
//! from a basepoint.
//!
//! Level `i + 1` is made from the pairs `(w̃, z)` with `w̃` on level `i` and
//! `z` a neighbour of `f(w̃)` not yet lifted next to `w̃`. Pairs with the same
//! `z` are glued when the two cover vertices are equal or adjacent, span a
//! lifted square with a vertex one level down, or lie on a level square whose
//! image is the base of a pyramid with apex `z`. Each glued class becomes one
//! new vertex.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{cell_counts, squares_at, star_map_defect, CellCounts, Square, StarDefect};
use crate::conditions::{square_pyramid_report, triangle_report, CheckOptions, Violation};
use crate::graph::{bfs_distances, induced, intersect_sorted, write_graph, Graph};
use crate::matroid::{AutomorphismAction, Quotient};

/// Default vertex budget is this many times the base's vertex count.
pub const DEFAULT_BUDGET_FACTOR: usize = 64;

pub fn default_budget(base: &Graph) -> usize {
    DEFAULT_BUDGET_FACTOR.saturating_mul(base.n()).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("basepoint {basepoint} is not a vertex of a graph with {n} vertices")]
    BadBasepoint { basepoint: usize, n: usize },
    #[error("the base graph is disconnected")]
    Disconnected,
    #[error("cover reached {vertices} vertices at level {level}, over the budget of {budget}")]
    BudgetExceeded { vertices: usize, level: usize, budget: usize },
    #[error("level {level} breaks property {}", .failure.property)]
    HypothesisViolation { level: usize, failure: Box<PropertyCheck> },
    #[error("the cover is not finished")]
    NotFinished,
    #[error("{cover} cover vertices over {base} base vertices is not a whole number of sheets")]
    NonDivisible { cover: usize, base: usize },
}

/// A cover under construction, or finished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverState {
    base: Graph,
    basepoint: usize,
    graph: Graph,
    /// `f[x]` is the base vertex under cover vertex `x`.
    f: Vec<usize>,
    /// Level `i` is the id range `level_starts[i]..level_starts[i + 1]`.
    level_starts: Vec<usize>,
    finished: bool,
}

impl CoverState {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn f(&self) -> &[usize] {
        &self.f
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Number of levels built, counting the basepoint's level 0.
    pub fn levels(&self) -> usize {
        self.level_starts.len() - 1
    }

    pub fn level(&self, i: usize) -> std::ops::Range<usize> {
        self.level_starts[i]..self.level_starts[i + 1]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.level_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn level_of(&self, x: usize) -> usize {
        self.level_starts.partition_point(|&s| s <= x) - 1
    }

    /// The same state with the edge `ab` deleted from the cover graph. Only
    /// useful for exercising the verifier.
    pub fn without_edge(&self, a: usize, b: usize) -> CoverState {
        let edges: Vec<(usize, usize)> = self.graph.edges().filter(|&e| e != (a.min(b), a.max(b))).collect();
        CoverState { graph: Graph::from_edges(self.graph.n(), &edges).unwrap(), ..self.clone() }
    }

    /// The ball of radius 1 around the basepoint, lifted identically.
    fn initial(base: &Graph, v: usize) -> CoverState {
        let mut f = vec![v];
        f.extend_from_slice(base.neighbors(v));
        let sub = induced(base, &f);
        // `induced` numbers by ascending original id; renumber so the basepoint is 0.
        let local: Vec<usize> = f.iter().map(|&x| sub.local_of(x).unwrap()).collect();
        let mut inverse = vec![0; f.len()];
        for (new, &old) in local.iter().enumerate() {
            inverse[old] = new;
        }
        let graph = sub.graph.relabel(&inverse);
        let finished = f.len() == 1;
        CoverState {
            base: base.clone(),
            basepoint: v,
            graph,
            f,
            level_starts: if finished { vec![0, 1] } else { vec![0, 1, base.degree(v) + 1] },
            finished,
        }
    }

    /// Builds level `i + 1` from level `i`. Returns false once nothing is left.
    fn step(&mut self) -> bool {
        let i = self.levels() - 1;
        let level = self.level(i);
        let (g, base, f) = (&self.graph, &self.base, &self.f);

        // Z, as per-vertex sorted lists of unlifted base neighbours.
        let zs: Vec<Vec<usize>> = level
            .clone()
            .into_par_iter()
            .map(|w| {
                let mut lifted: Vec<usize> = g.neighbors(w).iter().map(|&x| f[x]).collect();
                lifted.sort_unstable();
                base.neighbors(f[w]).iter().copied().filter(|z| lifted.binary_search(z).is_err()).collect()
            })
            .collect();
        let mut offsets = Vec::with_capacity(zs.len() + 1);
        offsets.push(0);
        for z in &zs {
            offsets.push(offsets.last().unwrap() + z.len());
        }
        let total = *offsets.last().unwrap();
        if total == 0 {
            self.finished = true;
            return false;
        }
        let lo = level.start;
        let in_level = |x: usize| level.contains(&x);
        let pair = |w: usize, z: usize| -> Option<usize> {
            let k = w - lo;
            zs[k].binary_search(&z).ok().map(|j| offsets[k] + j)
        };
        // Pairs sharing `z` at two level vertices.
        let shared = |a: usize, b: usize| -> Vec<(usize, usize)> {
            intersect_sorted(&zs[a - lo], &zs[b - lo])
                .into_iter()
                .map(|z| (pair(a, z).unwrap(), pair(b, z).unwrap()))
                .collect()
        };

        // Adjacent level vertices.
        let mut unions: Vec<(usize, usize)> = level
            .clone()
            .into_par_iter()
            .flat_map_iter(|a| {
                g.neighbors(a).iter().filter(|&&b| b > a && in_level(b)).flat_map(|&b| shared(a, b)).collect::<Vec<_>>()
            })
            .collect();

        // `u` one level down, `f(u) f(w) z f(w')` an induced square.
        let below = if i == 0 { 0..0 } else { self.level(i - 1) };
        unions.par_extend(below.into_par_iter().flat_map_iter(|u| {
            let up: Vec<usize> = g.neighbors(u).iter().copied().filter(|&x| in_level(x)).collect();
            let mut out = Vec::new();
            for (k, &a) in up.iter().enumerate() {
                for &b in &up[k + 1..] {
                    if base.has_edge(f[a], f[b]) || f[a] == f[b] {
                        continue;
                    }
                    for (p, q) in shared(a, b) {
                        let z = zs[a - lo][p - offsets[a - lo]];
                        if z != f[u] && !base.has_edge(f[u], z) {
                            out.push((p, q));
                        }
                    }
                }
            }
            out
        }));

        // A square inside the level whose image with `z` is a pyramid.
        let members: Vec<usize> = level.clone().collect();
        let sub = induced(g, &members);
        unions.par_extend((0..sub.graph.n()).into_par_iter().flat_map_iter(|a| {
            let mut out = Vec::new();
            for s in squares_at(&sub.graph, a).into_iter().filter(|s| s.0[0] == a) {
                let corners = s.0.map(|x| sub.original[x]);
                let image = Square(corners.map(|x| f[x]));
                if !image.is_induced_in(base) {
                    continue;
                }
                let mut candidates: Vec<usize> = corners.iter().flat_map(|&c| zs[c - lo].iter().copied()).collect();
                candidates.sort_unstable();
                candidates.dedup();
                for z in candidates {
                    if !image.0.iter().all(|&y| base.has_edge(y, z)) {
                        continue;
                    }
                    let ids: Vec<usize> = corners.iter().filter_map(|&c| pair(c, z)).collect();
                    out.extend(ids.windows(2).map(|w| (w[0], w[1])));
                }
            }
            out
        }));

        unions.par_sort_unstable();
        unions.dedup();
        let mut dsu = Dsu::new(total);
        for (p, q) in unions {
            dsu.union(p, q);
        }

        // Class ids follow the smallest pair of each class, i.e. ascending (min w̃, z).
        let start = g.n();
        let mut class_of_root = vec![usize::MAX; total];
        let mut next = start;
        let class: Vec<usize> = (0..total)
            .map(|p| {
                let r = dsu.find(p);
                if class_of_root[r] == usize::MAX {
                    class_of_root[r] = next;
                    next += 1;
                }
                class_of_root[r]
            })
            .collect();
        let mut new_f = vec![0; next - start];
        for (k, z) in zs.iter().enumerate() {
            for (j, &zz) in z.iter().enumerate() {
                new_f[class[offsets[k] + j] - start] = zz;
            }
        }

        let mut adj: Vec<Vec<usize>> = (0..g.n()).map(|x| g.neighbors(x).to_vec()).collect();
        adj.resize(next, Vec::new());
        for (k, z) in zs.iter().enumerate() {
            let w = lo + k;
            for (j, &zj) in z.iter().enumerate() {
                let cj = class[offsets[k] + j];
                adj[w].push(cj);
                adj[cj].push(w);
                for (jj, &zjj) in z.iter().enumerate().skip(j + 1) {
                    if base.has_edge(zj, zjj) {
                        let cjj = class[offsets[k] + jj];
                        adj[cj].push(cjj);
                        adj[cjj].push(cj);
                    }
                }
            }
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        self.graph = Graph::from_adjacency_unchecked(adj);
        self.f.extend(new_f);
        self.level_starts.push(next);
        true
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

pub fn build_universal_cover(base: &Graph, v: usize, budget: usize) -> Result<CoverState, CoverError> {
    build(base, v, budget, false)
}

/// As [`build_universal_cover`], verifying the level properties after every
/// level and stopping at the first failure.
pub fn build_universal_cover_checked(base: &Graph, v: usize, budget: usize) -> Result<CoverState, CoverError> {
    build(base, v, budget, true)
}

fn build(base: &Graph, v: usize, budget: usize, checked: bool) -> Result<CoverState, CoverError> {
    if v >= base.n() {
        return Err(CoverError::BadBasepoint { basepoint: v, n: base.n() });
    }
    if !base.is_connected() {
        return Err(CoverError::Disconnected);
    }
    let mut state = CoverState::initial(base, v);
    loop {
        let level = state.levels() - 1;
        if state.graph.n() > budget {
            return Err(CoverError::BudgetExceeded { vertices: state.graph.n(), level, budget });
        }
        if checked {
            if let Some(failure) = verify_cover(&state).properties.into_iter().find(|p| !p.pass) {
                return Err(CoverError::HypothesisViolation { level, failure: Box::new(failure) });
            }
        }
        if state.finished || !state.step() {
            state.finished = true;
            return Ok(state);
        }
    }
}

/// `|Ṽ| / |V|`.
pub fn sheets(state: &CoverState) -> Result<usize, CoverError> {
    if !state.finished {
        return Err(CoverError::NotFinished);
    }
    let (cover, base) = (state.graph.n(), state.base.n());
    if cover % base != 0 {
        return Err(CoverError::NonDivisible { cover, base });
    }
    Ok(cover / base)
}

/// Builds the cover from vertex 0 and compares it with the base.
pub fn is_simply_connected(base: &Graph, budget: usize) -> Result<bool, CoverError> {
    Ok(sheets(&build_universal_cover(base, 0, budget)?)? == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverVerdict {
    pub sheets: usize,
    pub simply_connected: bool,
    pub basepoint: usize,
    pub cover: CellCounts,
    pub level_sizes: Vec<usize>,
}

pub fn verdict(state: &CoverState) -> Result<CoverVerdict, CoverError> {
    let sheets = sheets(state)?;
    Ok(CoverVerdict {
        sheets,
        simply_connected: sheets == 1,
        basepoint: state.basepoint,
        cover: cell_counts(&state.graph),
        level_sizes: state.level_sizes(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverProperty {
    /// Levels are the spheres around the basepoint.
    P,
    /// TC and SPC with respect to the basepoint.
    Q,
    /// `f` is an isomorphism from the closed neighbourhood of each inner vertex
    /// onto the closed neighbourhood of its image.
    R,
    /// Base squares through an inner edge lift to squares.
    S,
    /// `f` is an isomorphism from the closed neighbourhood of each outer-level
    /// vertex onto its image.
    T,
    /// Positioning with respect to the basepoint on all cover squares.
    U,
    /// Stars map isomorphically onto stars. Finished covers only.
    #[serde(rename = "covering")]
    Covering,
}

impl std::fmt::Display for CoverProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CoverProperty::P => "P",
            CoverProperty::Q => "Q",
            CoverProperty::R => "R",
            CoverProperty::S => "S",
            CoverProperty::T => "T",
            CoverProperty::U => "U",
            CoverProperty::Covering => "covering",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CoverDefect {
    WrongLevel { vertex: usize, level: usize, distance: Option<u32> },
    Condition { violation: Violation },
    NotInjective { vertex: usize, a: usize, b: usize },
    /// The neighbourhood image misses or adds base vertices.
    ImageMismatch { vertex: usize },
    AdjacencyMismatch { vertex: usize, a: usize, b: usize },
    MissingSquareLift { a: usize, b: usize, square: Square },
    Star { vertex: usize, defect: StarDefect },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub property: CoverProperty,
    pub pass: bool,
    pub checked: u64,
    pub first_failure: Option<CoverDefect>,
}

impl PropertyCheck {
    fn from_results(property: CoverProperty, results: Vec<(u64, Option<CoverDefect>)>) -> Self {
        let checked = results.iter().map(|r| r.0).sum();
        let first_failure = results.into_iter().find_map(|r| r.1);
        PropertyCheck { property, pass: first_failure.is_none(), checked, first_failure }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub pass: bool,
    /// Deepest level treated as inner.
    pub level: usize,
    pub properties: Vec<PropertyCheck>,
}

impl CoverReport {
    pub fn get(&self, p: CoverProperty) -> Option<&PropertyCheck> {
        self.properties.iter().find(|c| c.property == p)
    }
}

/// Checks the level properties at the current depth: levels below the
/// outermost one are inner, the outermost is the boundary. A finished cover
/// has no boundary and additionally gets the star check at every vertex.
pub fn verify_cover(state: &CoverState) -> CoverReport {
    let g = &state.graph;
    let f = &state.f;
    let base = &state.base;
    let depth = state.levels() - 1;
    let inner = |x: usize| state.finished || state.level_of(x) < depth;

    let d = bfs_distances(g, 0);
    let p = PropertyCheck::from_results(
        CoverProperty::P,
        (0..g.n())
            .into_par_iter()
            .map(|x| {
                let level = state.level_of(x);
                let ok = d.get(x) == Some(level as u32);
                (1, (!ok).then_some(CoverDefect::WrongLevel { vertex: x, level, distance: d.get(x) }))
            })
            .collect(),
    );

    let opts = CheckOptions { max_witnesses: 1, ..CheckOptions::default() };
    let tc = triangle_report(g, &d, &opts);
    let spc = square_pyramid_report(g, &d, &opts);
    let q = PropertyCheck::from_results(
        CoverProperty::Q,
        [tc, spc]
            .into_iter()
            .map(|r| (r.stats.scanned, r.witnesses.into_iter().next().map(|violation| CoverDefect::Condition { violation })))
            .collect(),
    );

    // Neighbour lists keyed by image, for lifting.
    let lifted: Vec<Vec<(usize, usize)>> = (0..g.n())
        .into_par_iter()
        .map(|x| {
            let mut l: Vec<(usize, usize)> = g.neighbors(x).iter().map(|&y| (f[y], y)).collect();
            l.sort_unstable();
            l
        })
        .collect();
    let lift = |x: usize, target: usize| -> Option<usize> {
        let l = &lifted[x];
        let k = l.partition_point(|e| e.0 < target);
        (k < l.len() && l[k].0 == target).then(|| l[k].1)
    };

    let local = |x: usize, full: bool| -> Option<CoverDefect> {
        let l = &lifted[x];
        if let Some(w) = l.windows(2).find(|w| w[0].0 == w[1].0) {
            return Some(CoverDefect::NotInjective { vertex: x, a: w[0].1, b: w[1].1 });
        }
        if let Some(&(_, y)) = l.iter().find(|e| e.0 == f[x]) {
            return Some(CoverDefect::NotInjective { vertex: x, a: x, b: y });
        }
        if full && !l.iter().map(|e| e.0).eq(base.neighbors(f[x]).iter().copied()) {
            return Some(CoverDefect::ImageMismatch { vertex: x });
        }
        if let Some(&(_, y)) = l.iter().find(|e| !base.has_edge(f[x], e.0)) {
            return Some(CoverDefect::AdjacencyMismatch { vertex: x, a: x, b: y });
        }
        let nb = g.neighbors(x);
        for (k, &a) in nb.iter().enumerate() {
            for &b in &nb[k + 1..] {
                if g.has_edge(a, b) != base.has_edge(f[a], f[b]) {
                    return Some(CoverDefect::AdjacencyMismatch { vertex: x, a, b });
                }
            }
        }
        None
    };
    let r = PropertyCheck::from_results(
        CoverProperty::R,
        (0..g.n()).into_par_iter().map(|x| if inner(x) { (1, local(x, true)) } else { (0, None) }).collect(),
    );
    let t = PropertyCheck::from_results(
        CoverProperty::T,
        (0..g.n()).into_par_iter().map(|x| if inner(x) { (0, None) } else { (1, local(x, false)) }).collect(),
    );

    // A base square w w' u u' through the image of an inner edge a b lifts to
    // b ~ ũ ~ ũ' ~ a.
    let s = PropertyCheck::from_results(
        CoverProperty::S,
        (0..g.n())
            .into_par_iter()
            .map(|a| {
                if !inner(a) {
                    return (0, None);
                }
                let mut checked = 0;
                for sq in squares_at(base, f[a]) {
                    let c = sq.0;
                    let k = c.iter().position(|&x| x == f[a]).unwrap();
                    for (next, far, prev) in [(c[(k + 1) % 4], c[(k + 2) % 4], c[(k + 3) % 4]), (c[(k + 3) % 4], c[(k + 2) % 4], c[(k + 1) % 4])] {
                        let Some(b) = lift(a, next).filter(|&b| inner(b)) else { continue };
                        checked += 1;
                        let found = lift(a, prev).and_then(|u2| lift(b, far).filter(|&u| g.has_edge(u, u2)).map(|u| (u, u2)));
                        let ok = found.is_some_and(|(u, u2)| Square([a, b, u, u2]).is_induced_in(g));
                        if !ok {
                            return (checked, Some(CoverDefect::MissingSquareLift { a, b, square: sq }));
                        }
                    }
                }
                (checked, None)
            })
            .collect(),
    );

    let u = PropertyCheck::from_results(
        CoverProperty::U,
        (0..g.n())
            .into_par_iter()
            .map(|a| {
                let mut checked = 0;
                for sq in squares_at(g, a).into_iter().filter(|s| s.0[0] == a) {
                    checked += 1;
                    let [w, x, y, z] = sq.0;
                    if d.of(w) + d.of(y) != d.of(x) + d.of(z) {
                        return (checked, Some(CoverDefect::Condition { violation: Violation::Positioning { v: 0, square: sq } }));
                    }
                }
                (checked, None)
            })
            .collect(),
    );

    let mut properties = vec![p, q, r, s, t, u];
    if state.finished {
        let defects = star_defects(state);
        properties.push(PropertyCheck {
            property: CoverProperty::Covering,
            pass: defects.is_empty(),
            checked: g.n() as u64,
            first_failure: defects.into_iter().next().map(|(vertex, defect)| CoverDefect::Star { vertex, defect }),
        });
    }
    CoverReport { pass: properties.iter().all(|p| p.pass), level: depth, properties }
}

/// Every cover vertex whose star does not map isomorphically onto the star of
/// its image.
pub fn star_defects(state: &CoverState) -> Vec<(usize, StarDefect)> {
    (0..state.graph.n())
        .into_par_iter()
        .filter_map(|x| star_map_defect(&state.graph, x, &state.base, |y| state.f[y]).map(|d| (x, d)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientCoveringReport {
    pub pass: bool,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<(usize, StarDefect)>,
}

/// Whether the projection onto the quotient maps every star of the base
/// complex isomorphically onto a star of the quotient complex.
pub fn verify_quotient_covering(action: &AutomorphismAction, q: &Quotient) -> QuotientCoveringReport {
    let base = action.base();
    let failures: Vec<(usize, StarDefect)> = (0..base.n())
        .into_par_iter()
        .filter_map(|v| star_map_defect(base, v, &q.graph, |x| q.projection[x]).map(|d| (v, d)))
        .collect();
    QuotientCoveringReport {
        pass: failures.is_empty(),
        checked: base.n(),
        failures: failures.len(),
        first_failure: failures.into_iter().next(),
    }
}

/// Graph text followed by `map` (`f <cover> <base>`) and `levels`
/// (`level <cover> <i>`) sections.
pub fn write_cover(state: &CoverState) -> String {
    let mut out = write_graph(&state.graph);
    out.push_str("map\n");
    for (c, &b) in state.f.iter().enumerate() {
        writeln!(out, "f {c} {b}").unwrap();
    }
    out.push_str("levels\n");
    for i in 0..state.levels() {
        for c in state.level(i) {
            writeln!(out, "level {c} {i}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::certificate;
    use crate::matroid::{antipodal_action, basis_graph, complete_matroid, quotient, uniform_matroid};

    fn cover(g: &Graph) -> CoverState {
        build_universal_cover_checked(g, 0, default_budget(g)).unwrap()
    }

    #[test]
    fn simply_connected_examples() {
        for g in [Graph::cycle(4), Graph::octahedron(), Graph::complete(3), Graph::empty(1), Graph::path(2)] {
            let c = cover(&g);
            assert_eq!(sheets(&c), Ok(1));
            assert_eq!(certificate(c.graph(), None).unwrap(), certificate(&g, None).unwrap());
            assert!(verify_cover(&c).pass);
        }
        let m33 = basis_graph(&complete_matroid::<u64>(3, 100).unwrap()).graph;
        assert!(is_simply_connected(&m33, 2000).unwrap());
        assert!(verify_cover(&cover(&m33)).pass);
    }

    #[test]
    fn cycles_without_cells_do_not_close() {
        let c5 = Graph::cycle(5);
        assert!(matches!(build_universal_cover(&c5, 0, 100), Err(CoverError::BudgetExceeded { budget: 100, .. })));
    }

    #[test]
    fn antipodal_quotients_have_two_sheets() {
        for n in [5] {
            let (_, a) = antipodal_action::<u64>(n, 1000).unwrap();
            let q = quotient(&a).unwrap();
            let c = build_universal_cover_checked(&q.graph, 0, default_budget(&q.graph)).unwrap();
            assert_eq!(sheets(&c), Ok(2), "n = {n}");
            assert!(verify_cover(&c).pass);
            // The cover's spheres around its basepoint are those of B_{n,n}.
            let d = bfs_distances(a.base(), 0);
            let mut profile = vec![0; n + 1];
            for x in 0..a.base().n() {
                profile[d.of(x) as usize] += 1;
            }
            assert_eq!(c.level_sizes(), profile);
        }
    }

    #[test]
    fn small_antipodal_quotients() {
        // Below n = 5 the quotient is not covered by B_{n,n}; the builder still closes.
        let (_, a3) = antipodal_action::<u64>(3, 100).unwrap();
        let q3 = quotient(&a3).unwrap();
        let c3 = build_universal_cover(&q3.graph, 0, 1000).unwrap();
        assert_eq!(sheets(&c3), Ok(1));
        assert!(verify_cover(&c3).pass);
        let (_, a4) = antipodal_action::<u64>(4, 100).unwrap();
        let q4 = quotient(&a4).unwrap();
        let c4 = build_universal_cover(&q4.graph, 0, 1000).unwrap();
        assert!(!verify_cover(&c4).get(CoverProperty::U).unwrap().pass);
    }

    #[test]
    fn levels_and_determinism() {
        let g = basis_graph(&uniform_matroid::<u64>(6, 3, 1000).unwrap()).graph;
        let a = cover(&g);
        assert_eq!(a, build_universal_cover(&g, 0, 10_000).unwrap());
        assert_eq!(a.level_sizes(), vec![1, 9, 9, 1]);
        for x in 0..a.graph().n() {
            assert!(a.level(a.level_of(x)).contains(&x));
        }
        assert_eq!(sheets(&a), Ok(1));
    }

    #[test]
    fn deleted_edge_is_caught_at_its_endpoints() {
        let c = cover(&Graph::octahedron());
        let (a, b) = c.graph().edges().next().unwrap();
        let broken = c.without_edge(a, b);
        let bad: Vec<usize> = star_defects(&broken).into_iter().map(|p| p.0).collect();
        assert!(bad.contains(&a) && bad.contains(&b));
        assert!(!verify_cover(&broken).get(CoverProperty::Covering).unwrap().pass);
    }

    #[test]
    fn quotient_coverings() {
        let (_, a2) = antipodal_action::<u64>(2, 100).unwrap();
        assert!(!verify_quotient_covering(&a2, &quotient(&a2).unwrap()).pass);
        for n in [3, 4] {
            let (_, a) = antipodal_action::<u64>(n, 100).unwrap();
            assert!(!verify_quotient_covering(&a, &quotient(&a).unwrap()).pass);
        }
        let (_, a5) = antipodal_action::<u64>(5, 1000).unwrap();
        assert!(verify_quotient_covering(&a5, &quotient(&a5).unwrap()).pass);
    }

    #[test]
    fn export_sections() {
        let c = cover(&Graph::cycle(4));
        let text = write_cover(&c);
        assert!(text.starts_with("graph 4\n"));
        assert!(text.contains("map\nf 0 0\nf 1 1\nf 2 3\nf 3 2\nlevels\nlevel 0 0\nlevel 1 1\nlevel 2 1\nlevel 3 2\n"));
    }

    #[test]
    fn errors() {
        assert_eq!(sheets(&CoverState::initial(&Graph::cycle(4), 0)), Err(CoverError::NotFinished));
        assert_eq!(
            build_universal_cover(&Graph::cycle(4), 9, 100),
            Err(CoverError::BadBasepoint { basepoint: 9, n: 4 })
        );
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(build_universal_cover(&two, 0, 100), Err(CoverError::Disconnected));
    }
}

