//! Local and global conditions on graphs, each reported with the violating
//! tuples it found.
//!
//! Every checker takes [`CheckOptions`]. Exhaustive coverage scans every
//! instance; sampled coverage draws instances from a seeded ChaCha stream and
//! says so in the report.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{second_neighborhood, squares_at, Square};
use crate::graph::{bfs_distances, induced, intersect_sorted, link, Distances, Graph};
use crate::patterns::{
    classify_two_interval, find_pattern, find_pattern_at, is_induced_cocktail_subgraph, is_line_graph,
    is_line_graph_of_bipartite, CocktailVerdict, IntervalShape, LineGraphObstruction, PatternKind, PatternWitness,
    RootGraph,
};

/// Graphs above this many vertices are sampled by [`Coverage::auto`].
pub const DEFAULT_SAMPLE_THRESHOLD: usize = 2000;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionId {
    #[serde(rename = "IC")]
    Interval,
    #[serde(rename = "PC")]
    Positioning,
    #[serde(rename = "LPC")]
    LocalPositioning,
    #[serde(rename = "TC(v)")]
    Triangle,
    #[serde(rename = "SPC(v)")]
    SquarePyramid,
    #[serde(rename = "LTC")]
    LocalTriangle,
    #[serde(rename = "LC(v)")]
    Link,
    #[serde(rename = "LC-all")]
    LinkAll,
    #[serde(rename = "GenLink")]
    GeneralizedLink,
    #[serde(rename = "IC4")]
    Ic4,
    #[serde(rename = "NoForbidden")]
    NoForbidden,
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConditionId::Interval => "IC",
            ConditionId::Positioning => "PC",
            ConditionId::LocalPositioning => "LPC",
            ConditionId::Triangle => "TC(v)",
            ConditionId::SquarePyramid => "SPC(v)",
            ConditionId::LocalTriangle => "LTC",
            ConditionId::Link => "LC(v)",
            ConditionId::LinkAll => "LC-all",
            ConditionId::GeneralizedLink => "GenLink",
            ConditionId::Ic4 => "IC4",
            ConditionId::NoForbidden => "NoForbidden",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl Coverage {
    /// Exhaustive up to [`DEFAULT_SAMPLE_THRESHOLD`] vertices, sampled above.
    pub fn auto(n: usize, seed: u64) -> Coverage {
        if n > DEFAULT_SAMPLE_THRESHOLD {
            Coverage::Sampled { samples: DEFAULT_SAMPLES, seed }
        } else {
            Coverage::Exhaustive
        }
    }

    fn seed(self) -> Option<u64> {
        match self {
            Coverage::Exhaustive => None,
            Coverage::Sampled { seed, .. } => Some(seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub coverage: Coverage,
    pub max_witnesses: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { coverage: Coverage::Exhaustive, max_witnesses: DEFAULT_MAX_WITNESSES }
    }
}

impl CheckOptions {
    pub fn sampled(samples: usize, seed: u64) -> Self {
        CheckOptions { coverage: Coverage::Sampled { samples, seed }, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the graph is disconnected")]
pub struct Disconnected;

/// Reason an IC4 interval fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ic4Failure {
    NoSquare,
    /// Cocktail-party embedding failed; vertex ids are original ids.
    NotCocktail(CocktailVerdict),
}

/// One violating instance, with named roles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Violation {
    Interval { u: usize, v: usize, shape: IntervalShape },
    /// `d(v,u1) + d(v,u3) != d(v,u2) + d(v,u4)`.
    Positioning { v: usize, square: Square },
    /// `v` at distance 2 from both ends of one diagonal, sum over the other is not 4.
    LocalPositioning { v: usize, square: Square },
    /// Edge `uw` at level `k >= 2` from `v` without a common neighbour at level `k-1`.
    Triangle { v: usize, u: usize, w: usize },
    SquarePyramid { v: usize, u: usize, w: usize, w2: usize },
    /// `u ~ w`, both at distance 2 from `v`, no vertex adjacent to all three.
    LocalTriangle { v: usize, u: usize, w: usize },
    Link { v: usize, witness: PatternWitness },
    GeneralizedLink { v: usize, obstruction: LineGraphObstruction },
    Ic4 { u: usize, v: usize, failure: Ic4Failure },
    Forbidden { witness: PatternWitness },
}

impl Violation {
    /// Re-checks the violation against `g` from scratch.
    pub fn revalidate(&self, g: &Graph) -> bool {
        match self {
            Violation::Interval { u, v, .. } => {
                matches!(classify_two_interval(g, *u, *v), Ok(IntervalShape::Other(_)))
            }
            Violation::Positioning { v, square } => {
                let d = bfs_distances(g, *v);
                let [a, b, c, e] = square.corners();
                square.is_induced_in(g) && d.of(a) + d.of(c) != d.of(b) + d.of(e)
            }
            Violation::LocalPositioning { v, square } => {
                let d = bfs_distances(g, *v);
                let [a, b, c, e] = square.corners();
                square.is_induced_in(g)
                    && ((d.of(a) == 2 && d.of(c) == 2 && d.of(b) + d.of(e) != 4)
                        || (d.of(b) == 2 && d.of(e) == 2 && d.of(a) + d.of(c) != 4))
            }
            Violation::Triangle { v, u, w } => {
                let d = bfs_distances(g, *v);
                let k = d.of(*u);
                g.has_edge(*u, *w)
                    && k >= 2
                    && d.of(*w) == k
                    && !g.common_neighbors(*u, *w).iter().any(|&x| d.of(x) + 1 == k)
            }
            Violation::SquarePyramid { v, u, w, w2 } => {
                let d = bfs_distances(g, *v);
                g.has_edge(*u, *w)
                    && g.has_edge(*u, *w2)
                    && w != w2
                    && !g.has_edge(*w, *w2)
                    && d.of(*w) == d.of(*w2)
                    && d.of(*u) == d.of(*w) + 1
                    && !spc_holds(g, &d, *u, *w, *w2)
            }
            Violation::LocalTriangle { v, u, w } => {
                let d = bfs_distances(g, *v);
                g.has_edge(*u, *w)
                    && d.of(*u) == 2
                    && d.of(*w) == 2
                    && intersect_sorted(&g.common_neighbors(*u, *w), g.neighbors(*v)).is_empty()
            }
            Violation::Link { v, witness } => {
                witness.vertices.iter().all(|&x| g.has_edge(*v, x)) && witness.validate(g)
            }
            Violation::GeneralizedLink { v, obstruction } => match obstruction {
                LineGraphObstruction::Pattern(w) => w.vertices.iter().all(|&x| g.has_edge(*v, x)) && w.validate(g),
                LineGraphObstruction::MinimalNonLine(vs) => {
                    vs.iter().all(|&x| g.has_edge(*v, x)) && is_line_graph(&induced(g, vs).graph).is_err()
                }
            },
            Violation::Ic4 { u, v, .. } => ic4_failure(g, *u, *v).is_some(),
            Violation::Forbidden { witness } => witness.validate(g),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// Instances examined (pairs, squares, square/vertex pairs, edges, ...).
    pub scanned: u64,
    /// Violations found before truncation to `max_witnesses`.
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: ConditionId,
    pub pass: bool,
    pub exhaustive: bool,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<usize>,
    pub witnesses: Vec<Violation>,
    pub stats: Stats,
}

impl ConditionReport {
    fn new(
        condition: ConditionId,
        opts: &CheckOptions,
        basepoint: Option<usize>,
        scanned: u64,
        violations: Vec<Violation>,
    ) -> Self {
        let total = violations.len() as u64;
        let mut witnesses = violations;
        witnesses.truncate(opts.max_witnesses);
        ConditionReport {
            condition,
            pass: total == 0,
            exhaustive: opts.coverage == Coverage::Exhaustive,
            seed: opts.coverage.seed(),
            basepoint,
            witnesses,
            stats: Stats { scanned, violations: total },
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random `(u, v)` with `d(u, v) = 2`, or `None` if `u` has none.
fn sample_distance_two(g: &Graph, rng: &mut ChaCha8Rng) -> Option<(usize, usize, Vec<usize>)> {
    let u = rng.gen_range(0..g.n());
    let second = second_neighborhood(g, u);
    let (v, common) = second.choose(rng)?.clone();
    Some((u, v, common))
}

/// Random square: a random vertex, a random far corner, a random non-adjacent
/// pair of common neighbours.
fn sample_square(g: &Graph, rng: &mut ChaCha8Rng) -> Option<Square> {
    let a = rng.gen_range(0..g.n());
    let squares = squares_at(g, a);
    squares.choose(rng).copied()
}

pub fn check_interval_condition(g: &Graph, opts: &CheckOptions) -> ConditionReport {
    let classify = |u: usize, v: usize| match classify_two_interval(g, u, v) {
        Ok(IntervalShape::Other(reason)) => Some(Violation::Interval { u, v, shape: IntervalShape::Other(reason) }),
        _ => None,
    };
    let (scanned, violations) = match opts.coverage {
        Coverage::Exhaustive => {
            let per: Vec<(u64, Vec<Violation>)> = (0..g.n())
                .into_par_iter()
                .map(|u| {
                    let far: Vec<usize> =
                        second_neighborhood(g, u).into_iter().map(|(v, _)| v).filter(|&v| v > u).collect();
                    (far.len() as u64, far.into_iter().filter_map(|v| classify(u, v)).collect())
                })
                .collect();
            merge(per)
        }
        Coverage::Sampled { samples, seed } => {
            let mut r = rng(seed);
            let mut scanned = 0;
            let mut out = Vec::new();
            for _ in 0..samples.saturating_mul(20) {
                if scanned == samples as u64 {
                    break;
                }
                if let Some((u, v, _)) = sample_distance_two(g, &mut r) {
                    scanned += 1;
                    out.extend(classify(u.min(v), u.max(v)));
                }
            }
            out.sort_by_key(|w| format!("{w:?}"));
            out.dedup();
            (scanned, out)
        }
    };
    ConditionReport::new(ConditionId::Interval, opts, None, scanned, violations)
}

fn merge(per: Vec<(u64, Vec<Violation>)>) -> (u64, Vec<Violation>) {
    let scanned = per.iter().map(|p| p.0).sum();
    (scanned, per.into_iter().flat_map(|p| p.1).collect())
}

/// All squares of `g`, each once.
pub fn all_squares(g: &Graph) -> Vec<Square> {
    let mut out: Vec<Square> = (0..g.n())
        .into_par_iter()
        .flat_map_iter(|a| squares_at(g, a).into_iter().filter(move |s| s.0[0] == a))
        .collect();
    out.sort_unstable();
    out
}

/// PC(v) for the given basepoint, or for every vertex.
pub fn check_positioning(
    g: &Graph,
    basepoint: Option<usize>,
    opts: &CheckOptions,
) -> Result<ConditionReport, Disconnected> {
    if !g.is_connected() {
        return Err(Disconnected);
    }
    let pc = |d: &Distances, s: &Square| {
        let [a, b, c, e] = s.corners();
        (d.of(a) + d.of(c) != d.of(b) + d.of(e)).then_some(Violation::Positioning { v: d.source, square: *s })
    };
    let (scanned, violations) = match opts.coverage {
        Coverage::Exhaustive => {
            let squares = all_squares(g);
            let bases: Vec<usize> = basepoint.map_or_else(|| (0..g.n()).collect(), |v| vec![v]);
            let per: Vec<(u64, Vec<Violation>)> = bases
                .into_par_iter()
                .map(|v| {
                    let d = bfs_distances(g, v);
                    (squares.len() as u64, squares.iter().filter_map(|s| pc(&d, s)).collect())
                })
                .collect();
            merge(per)
        }
        Coverage::Sampled { samples, seed } => {
            let mut r = rng(seed);
            let pool: Vec<usize> = match basepoint {
                Some(v) => vec![v],
                None => (0..16.min(g.n())).map(|_| r.gen_range(0..g.n())).collect(),
            };
            let dists: Vec<Distances> = pool.iter().map(|&v| bfs_distances(g, v)).collect();
            let mut scanned = 0;
            let mut out = Vec::new();
            for _ in 0..samples.saturating_mul(20) {
                if scanned == samples as u64 {
                    break;
                }
                if let Some(s) = sample_square(g, &mut r) {
                    scanned += 1;
                    out.extend(pc(&dists[r.gen_range(0..dists.len())], &s));
                }
            }
            out.sort_by_key(|w| format!("{w:?}"));
            out.dedup();
            (scanned, out)
        }
    };
    Ok(ConditionReport::new(ConditionId::Positioning, opts, basepoint, scanned, violations))
}

/// Distance between `x` and `y` when it is known to be at most 3.
fn short_distance(g: &Graph, x: usize, y: usize) -> u32 {
    if x == y {
        0
    } else if g.has_edge(x, y) {
        1
    } else if !intersect_sorted(g.neighbors(x), g.neighbors(y)).is_empty() {
        2
    } else {
        3
    }
}

/// LPC instances of one square: for each diagonal `{p, q}`, every `v` at
/// distance 2 from both, with the opposite diagonal's distances summing to 4.
fn lpc_square(g: &Graph, s: &Square, far: &dyn Fn(usize) -> Vec<usize>) -> (u64, Vec<Violation>) {
    let [a, b, c, e] = s.corners();
    let mut scanned = 0;
    let mut out = Vec::new();
    for ((p, q), (x, y)) in [((a, c), (b, e)), ((b, e), (a, c))] {
        for v in intersect_sorted(&far(p), &far(q)) {
            scanned += 1;
            if short_distance(g, v, x) + short_distance(g, v, y) != 4 {
                out.push(Violation::LocalPositioning { v, square: *s });
            }
        }
    }
    (scanned, out)
}

fn far_vertices(g: &Graph, v: usize) -> Vec<usize> {
    second_neighborhood(g, v).into_iter().map(|(x, _)| x).collect()
}

pub fn check_local_positioning(g: &Graph, opts: &CheckOptions) -> ConditionReport {
    let (scanned, mut violations) = match opts.coverage {
        Coverage::Exhaustive => {
            let far: Vec<Vec<usize>> = (0..g.n()).into_par_iter().map(|v| far_vertices(g, v)).collect();
            let lookup = |v: usize| far[v].clone();
            let per: Vec<(u64, Vec<Violation>)> =
                all_squares(g).par_iter().map(|s| lpc_square(g, s, &lookup)).collect();
            merge(per)
        }
        Coverage::Sampled { samples, seed } => {
            let mut r = rng(seed);
            let lookup = |v: usize| far_vertices(g, v);
            let mut scanned = 0;
            let mut out = Vec::new();
            for _ in 0..samples.saturating_mul(20) {
                if scanned >= samples as u64 {
                    break;
                }
                if let Some(s) = sample_square(g, &mut r) {
                    let (k, v) = lpc_square(g, &s, &lookup);
                    scanned += k;
                    out.extend(v);
                }
            }
            (scanned, out)
        }
    };
    violations.sort_by_key(|w| match w {
        Violation::LocalPositioning { v, square } => (square.0, *v),
        _ => unreachable!(),
    });
    violations.dedup();
    ConditionReport::new(ConditionId::LocalPositioning, opts, None, scanned, violations)
}

/// TC(v): every edge inside a level `k >= 2` has a common neighbour at `k - 1`.
pub fn check_triangle_condition(g: &Graph, v: usize, opts: &CheckOptions) -> Result<ConditionReport, Disconnected> {
    if !g.is_connected() {
        return Err(Disconnected);
    }
    Ok(triangle_report(g, &bfs_distances(g, v), opts))
}

/// Either a common neighbour of `w, w2` one level below them, or two
/// non-adjacent common neighbours of `u, w, w2` on their level.
fn spc_holds(g: &Graph, d: &Distances, u: usize, w: usize, w2: usize) -> bool {
    let k = d.of(w);
    let common = intersect_sorted(g.neighbors(w), g.neighbors(w2));
    if common.iter().any(|&x| d.of(x) + 1 == k) {
        return true;
    }
    let level: Vec<usize> = intersect_sorted(&common, g.neighbors(u)).into_iter().filter(|&x| d.of(x) == k).collect();
    level.iter().enumerate().any(|(i, &x)| level[i + 1..].iter().any(|&y| !g.has_edge(x, y)))
}

/// SPC(v) over every `u` and every non-adjacent pair of its lower neighbours.
pub fn check_square_pyramid(g: &Graph, v: usize, opts: &CheckOptions) -> Result<ConditionReport, Disconnected> {
    if !g.is_connected() {
        return Err(Disconnected);
    }
    let d = bfs_distances(g, v);
    Ok(square_pyramid_report(g, &d, opts))
}

pub(crate) fn square_pyramid_report(g: &Graph, d: &Distances, opts: &CheckOptions) -> ConditionReport {
    let v = d.source;
    let per: Vec<(u64, Vec<Violation>)> = (0..g.n())
        .into_par_iter()
        .map(|u| {
            let Some(du) = d.get(u) else { return (0, Vec::new()) };
            let lower: Vec<usize> = g.neighbors(u).iter().copied().filter(|&x| d.get(x) == Some(du.wrapping_sub(1))).collect();
            let mut scanned = 0;
            let mut out = Vec::new();
            for (i, &w) in lower.iter().enumerate() {
                for &w2 in &lower[i + 1..] {
                    if g.has_edge(w, w2) {
                        continue;
                    }
                    scanned += 1;
                    if !spc_holds(g, d, u, w, w2) {
                        out.push(Violation::SquarePyramid { v, u, w, w2 });
                    }
                }
            }
            (scanned, out)
        })
        .collect();
    let (scanned, violations) = merge(per);
    ConditionReport::new(ConditionId::SquarePyramid, opts, Some(v), scanned, violations)
}

pub(crate) fn triangle_report(g: &Graph, d: &Distances, opts: &CheckOptions) -> ConditionReport {
    let v = d.source;
    let per: Vec<(u64, Vec<Violation>)> = (0..g.n())
        .into_par_iter()
        .map(|u| {
            let Some(k) = d.get(u) else { return (0, Vec::new()) };
            let mut scanned = 0;
            let mut out = Vec::new();
            for &w in g.neighbors(u).iter().filter(|&&w| w > u && d.get(w) == Some(k) && k >= 2) {
                scanned += 1;
                if !intersect_sorted(g.neighbors(u), g.neighbors(w)).iter().any(|&x| d.get(x) == Some(k - 1)) {
                    out.push(Violation::Triangle { v, u, w });
                }
            }
            (scanned, out)
        })
        .collect();
    let (scanned, violations) = merge(per);
    ConditionReport::new(ConditionId::Triangle, opts, Some(v), scanned, violations)
}

/// For each `v`, every edge `uw` with both ends at distance 2 from `v` has a
/// vertex adjacent to all three.
pub fn check_local_triangle(g: &Graph, opts: &CheckOptions) -> ConditionReport {
    let at = |v: usize| -> (u64, Vec<Violation>) {
        let far = far_vertices(g, v);
        let mut scanned = 0;
        let mut out = Vec::new();
        for &u in &far {
            for w in intersect_sorted(g.neighbors(u), &far) {
                if w <= u {
                    continue;
                }
                scanned += 1;
                let common = intersect_sorted(g.neighbors(u), g.neighbors(w));
                if intersect_sorted(&common, g.neighbors(v)).is_empty() {
                    out.push(Violation::LocalTriangle { v, u, w });
                }
            }
        }
        (scanned, out)
    };
    let (scanned, violations) = merge(sample_vertices(g.n(), opts).into_par_iter().map(at).collect());
    ConditionReport::new(ConditionId::LocalTriangle, opts, None, scanned, violations)
}

/// Every vertex, or `samples` distinct random vertices in ascending order.
fn sample_vertices(n: usize, opts: &CheckOptions) -> Vec<usize> {
    match opts.coverage {
        Coverage::Exhaustive => (0..n).collect(),
        Coverage::Sampled { samples, seed } => {
            let mut all: Vec<usize> = (0..n).collect();
            let (chosen, _) = all.partial_shuffle(&mut rng(seed), samples.min(n));
            let mut chosen = chosen.to_vec();
            chosen.sort_unstable();
            chosen
        }
    }
}

/// LC at one vertex or all of them, with the bipartite root of every link
/// that passes.
pub fn check_link_condition(
    g: &Graph,
    v: Option<usize>,
    opts: &CheckOptions,
) -> (ConditionReport, Vec<(usize, RootGraph)>) {
    let vertices = v.map_or_else(|| sample_vertices(g.n(), opts), |v| vec![v]);
    let results: Vec<(usize, Result<RootGraph, PatternWitness>)> = vertices
        .into_par_iter()
        .map(|x| {
            let l = link(g, x);
            (x, is_line_graph_of_bipartite(&l.graph).map_err(|w| w.map_vertices(&l.original)))
        })
        .collect();
    let scanned = results.len() as u64;
    let mut roots = Vec::new();
    let mut violations = Vec::new();
    for (x, r) in results {
        match r {
            Ok(root) => roots.push((x, root)),
            Err(witness) => violations.push(Violation::Link { v: x, witness }),
        }
    }
    let id = if v.is_some() { ConditionId::Link } else { ConditionId::LinkAll };
    (ConditionReport::new(id, opts, v, scanned, violations), roots)
}

/// Every link is the line graph of some graph.
pub fn check_generalized_link(g: &Graph, opts: &CheckOptions) -> ConditionReport {
    let violations: Vec<Violation> = sample_vertices(g.n(), opts)
        .into_par_iter()
        .filter_map(|v| {
            let l = link(g, v);
            is_line_graph(&l.graph).err().map(|o| {
                let obstruction = match o {
                    LineGraphObstruction::Pattern(w) => LineGraphObstruction::Pattern(w.map_vertices(&l.original)),
                    LineGraphObstruction::MinimalNonLine(vs) => {
                        LineGraphObstruction::MinimalNonLine(vs.iter().map(|&x| l.original[x]).collect())
                    }
                };
                Violation::GeneralizedLink { v, obstruction }
            })
        })
        .collect();
    let scanned = match opts.coverage {
        Coverage::Exhaustive => g.n(),
        Coverage::Sampled { samples, .. } => samples.min(g.n()),
    } as u64;
    ConditionReport::new(ConditionId::GeneralizedLink, opts, None, scanned, violations)
}

fn ic4_failure(g: &Graph, u: usize, v: usize) -> Option<Ic4Failure> {
    let set = crate::patterns::two_interval(g, u, v).ok()?;
    let sub = induced(g, &set);
    match is_induced_cocktail_subgraph(&sub.graph, 4) {
        CocktailVerdict::Embeds => {}
        CocktailVerdict::TwoNonNeighbors { vertex, a, b } => {
            let o = &sub.original;
            return Some(Ic4Failure::NotCocktail(CocktailVerdict::TwoNonNeighbors {
                vertex: o[vertex],
                a: o[a],
                b: o[b],
            }));
        }
        other => return Some(Ic4Failure::NotCocktail(other)),
    }
    let has_square = (0..sub.graph.n()).any(|x| !squares_at(&sub.graph, x).is_empty());
    (!has_square).then_some(Ic4Failure::NoSquare)
}

/// Every 2-interval contains a square and embeds in `K_{4×2}`.
pub fn check_ic4(g: &Graph, opts: &CheckOptions) -> ConditionReport {
    let per: Vec<(u64, Vec<Violation>)> = sample_vertices(g.n(), opts)
        .into_par_iter()
        .map(|u| {
            let far: Vec<usize> = far_vertices(g, u).into_iter().filter(|&v| v > u).collect();
            let out = far
                .iter()
                .filter_map(|&v| ic4_failure(g, u, v).map(|failure| Violation::Ic4 { u, v, failure }))
                .collect();
            (far.len() as u64, out)
        })
        .collect();
    let (scanned, violations) = merge(per);
    ConditionReport::new(ConditionId::Ic4, opts, None, scanned, violations)
}

/// Patterns excluded from basis graphs: propellers, half open books, odd
/// wheels, induced `K_{2,3}` and `W_4^-`.
pub const FORBIDDEN: [PatternKind; 5] = [
    PatternKind::Propeller,
    PatternKind::HalfOpenBook,
    PatternKind::OddWheel,
    PatternKind::K23,
    PatternKind::W4Minus,
];

/// First witness of each forbidden kind. Sampled mode only tries anchors
/// drawn from the seeded stream.
pub fn check_forbidden(g: &Graph, kinds: &[PatternKind], opts: &CheckOptions) -> ConditionReport {
    let anchors = sample_vertices(g.n(), opts);
    let violations: Vec<Violation> = kinds
        .par_iter()
        .filter_map(|&kind| {
            let found = match opts.coverage {
                Coverage::Exhaustive => find_pattern(g, kind),
                Coverage::Sampled { .. } => anchors.iter().find_map(|&a| find_pattern_at(g, kind, a)),
            };
            found.map(|witness| Violation::Forbidden { witness })
        })
        .collect();
    let scanned = (kinds.len() * anchors.len()) as u64;
    ConditionReport::new(ConditionId::NoForbidden, opts, None, scanned, violations)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Matroid,
    EvenDelta,
}

/// The battery for matroid basis graphs (IC, LPC) or even Δ-matroid basis
/// graphs (IC4, generalized links, LPC), plus the forbidden-pattern scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaurerReport {
    pub mode: Mode,
    pub pass: bool,
    pub vertices: usize,
    pub edges: usize,
    /// Finite inputs always have a vertex of finite degree; reported anyway.
    pub min_degree: Option<usize>,
    pub reports: Vec<ConditionReport>,
}

impl MaurerReport {
    pub fn get(&self, id: ConditionId) -> Option<&ConditionReport> {
        self.reports.iter().find(|r| r.condition == id)
    }

    pub fn first_failure(&self) -> Option<&ConditionReport> {
        self.reports.iter().find(|r| !r.pass)
    }
}

pub fn maurer_check(g: &Graph, mode: Mode, opts: &CheckOptions) -> Result<MaurerReport, Disconnected> {
    if !g.is_connected() {
        return Err(Disconnected);
    }
    let mut reports = match mode {
        Mode::Matroid => vec![check_interval_condition(g, opts), check_local_positioning(g, opts)],
        Mode::EvenDelta => {
            vec![check_ic4(g, opts), check_generalized_link(g, opts), check_local_positioning(g, opts)]
        }
    };
    reports.push(check_forbidden(g, &FORBIDDEN, opts));
    Ok(MaurerReport {
        mode,
        pass: reports.iter().all(|r| r.pass),
        vertices: g.n(),
        edges: g.edge_count(),
        min_degree: g.min_degree(),
        reports,
    })
}
