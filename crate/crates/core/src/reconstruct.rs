//! Recovering a matroid from its basis graph.
//!
//! The link of a basepoint `v` is the line graph of a bipartite graph
//! `(B_0 ∪ B, E)`. Labelling `v` by `B_0` and each neighbour by the exchange
//! its root edge names fixes the labels near `v`; the rest are propagated in
//! breadth-first order, each new label being one exchange away from an
//! already labelled neighbour. Ambiguities are resolved by backtracking and
//! the result is checked in full, so success is never heuristic.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::conditions::{maurer_check, CheckOptions, ConditionReport, Mode};
use crate::complex::second_neighborhood;
use crate::graph::{bfs_distances, link, Graph};
use crate::matroid::{basis_graph, verify_matroid, Mask, SetSystem};
use crate::patterns::{is_line_graph_of_bipartite, PatternWitness, RootGraph};

/// Search nodes allowed to one propagation run.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;
/// At most `2^16` side assignments are tried.
pub const MAX_FLIP_COMPONENTS: usize = 16;

/// Equicardinal subsets of `0..universe`, one per vertex, possibly partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling<M: Mask = u64> {
    pub universe: usize,
    pub labels: Vec<Option<M>>,
}

impl<M: Mask> Labeling<M> {
    pub fn is_complete(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// First pair breaking `u ~ v ⟺ |S_u Δ S_v| = 2`, distinctness or
    /// equicardinality, if any. Complete labelings only.
    pub fn first_defect(&self, g: &Graph) -> Option<(usize, usize)> {
        let labels: Vec<M> = self.labels.iter().map(|l| l.expect("complete labeling")).collect();
        let k = labels.first()?.size();
        if let Some(x) = labels.iter().position(|l| l.size() != k) {
            return Some((0, x));
        }
        let mut index: HashMap<M, usize> = HashMap::with_capacity(labels.len());
        for (x, &l) in labels.iter().enumerate() {
            if let Some(y) = index.insert(l, x) {
                return Some((y, x));
            }
        }
        for (x, &l) in labels.iter().enumerate() {
            let mut near: Vec<usize> = exchanges(l, self.universe).filter_map(|s| index.get(&s).copied()).collect();
            near.sort_unstable();
            if near != g.neighbors(x) {
                let y = near
                    .iter()
                    .find(|y| !g.has_edge(x, **y))
                    .or_else(|| g.neighbors(x).iter().find(|y| near.binary_search(y).is_err()))
                    .copied()
                    .unwrap();
                return Some((x.min(y), x.max(y)));
            }
        }
        None
    }
}

/// Every `S - a + b` with `a ∈ S`, `b ∉ S`, `b < universe`.
fn exchanges<M: Mask>(s: M, universe: usize) -> impl Iterator<Item = M> {
    let outside = M::full(universe) & !s;
    s.elements().flat_map(move |a| outside.elements().map(move |b| s ^ M::bit(a) ^ M::bit(b)))
}

fn far_vertices(g: &Graph, y: usize) -> Vec<usize> {
    second_neighborhood(g, y).into_iter().map(|(w, _)| w).collect()
}

fn delta<M: Mask>(a: M, b: M) -> usize {
    (a ^ b).size()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("link of {v} is not the line graph of a bipartite graph")]
    LinkNotBipartiteLineGraph { v: usize, witness: PatternWitness },
    #[error("the link root has {universe} vertices, more than the mask width {width}")]
    UniverseTooLarge { universe: usize, width: usize },
    #[error("no consistent label for vertex {vertex} after {nodes} search nodes")]
    NoConsistentLabeling { vertex: usize, nodes: usize, exhausted_budget: bool },
}

/// The bipartite root of the link of `v`.
pub fn link_root(g: &Graph, v: usize) -> Result<(Vec<usize>, RootGraph), LabelError> {
    let l = link(g, v);
    is_line_graph_of_bipartite(&l.graph)
        .map(|r| (l.original.clone(), r))
        .map_err(|w| LabelError::LinkNotBipartiteLineGraph { v, witness: w.map_vertices(&l.original) })
}

/// Labels on `{v} ∪ N(v)`: `S_v` is one side of the link root, each
/// neighbour is `S_v` with its root edge's exchange applied. Bit `c` of
/// `flips` swaps the sides of root component `c`.
pub fn root_labels<M: Mask>(g: &Graph, v: usize, flips: u64) -> Result<Labeling<M>, LabelError> {
    let (original, root) = link_root(g, v)?;
    let universe = root.root.n();
    if universe > M::WIDTH {
        return Err(LabelError::UniverseTooLarge { universe, width: M::WIDTH });
    }
    let mut sides = root.sides.clone().expect("bipartite root carries sides");
    for (c, comp) in root.components().iter().enumerate() {
        if c < 64 && flips >> c & 1 == 1 {
            for &x in comp {
                sides[x] ^= 1;
            }
        }
    }
    let b0 = M::from_elements(&(0..universe).filter(|&x| sides[x] == 0).collect::<Vec<_>>());
    let mut labels = vec![None; g.n()];
    labels[v] = Some(b0);
    for (local, &(a, b)) in root.edge_of.iter().enumerate() {
        labels[original[local]] = Some(b0 ^ M::bit(a) ^ M::bit(b));
    }
    Ok(Labeling { universe, labels })
}

/// Number of root components of the link of `v`, i.e. the bits that
/// [`root_labels`] reads from `flips`.
pub fn root_component_count(g: &Graph, v: usize) -> Result<usize, LabelError> {
    Ok(link_root(g, v)?.1.components().len())
}

/// Extends a partial labeling to all of `g`, breadth first from `v`.
pub fn propagate_labels<M: Mask>(
    g: &Graph,
    v: usize,
    partial: Labeling<M>,
    node_budget: usize,
) -> Result<Labeling<M>, LabelError> {
    let d = bfs_distances(g, v);
    let mut order: Vec<usize> = (0..g.n()).filter(|&x| partial.labels[x].is_none() && d.get(x).is_some()).collect();
    order.sort_by_key(|&x| (d.of(x), x));
    let universe = partial.universe;
    let mut labels = partial.labels;
    let mut used: HashMap<M, usize> = labels.iter().enumerate().filter_map(|(x, l)| l.map(|l| (l, x))).collect();

    let second: Vec<Vec<usize>> = (0..g.n())
        .map(|y| if labels[y].is_some() { Vec::new() } else { far_vertices(g, y) })
        .collect();
    let candidates = |y: usize, labels: &[Option<M>], used: &HashMap<M, usize>| -> Vec<M> {
        let known: Vec<M> = g.neighbors(y).iter().filter_map(|&x| labels[x]).collect();
        let Some(&anchor) = known.first() else { return Vec::new() };
        exchanges(anchor, universe)
            .filter(|&s| !used.contains_key(&s))
            .filter(|&s| known.iter().all(|&k| delta(s, k) == 2))
            // Every labelled vertex one exchange away must be a neighbour.
            .filter(|&s| exchanges(s, universe).all(|t| used.get(&t).is_none_or(|&x| g.has_edge(x, y))))
            // Labelled vertices at distance 2 sit two exchanges away.
            .filter(|&s| second[y].iter().all(|&w| labels[w].is_none_or(|l| delta(s, l) == 4)))
            .collect()
    };

    // Each frame: position in `order`, its remaining candidates.
    let mut stack: Vec<(usize, Vec<M>)> = Vec::new();
    let mut pos = 0;
    let mut nodes = 0;
    let mut stuck: Option<usize> = None;
    while pos < order.len() {
        nodes += 1;
        let y = order[pos];
        let mut cands = candidates(y, &labels, &used);
        if cands.is_empty() {
            stuck.get_or_insert(y);
            // Backtrack to the latest frame with an untried candidate.
            loop {
                let Some((p, rest)) = stack.last_mut() else {
                    return Err(LabelError::NoConsistentLabeling { vertex: stuck.unwrap(), nodes, exhausted_budget: false });
                };
                let p = *p;
                for &x in &order[p..pos.max(p + 1)] {
                    if let Some(l) = labels[x].take() {
                        used.remove(&l);
                    }
                }
                if let Some(next) = rest.pop() {
                    labels[order[p]] = Some(next);
                    used.insert(next, order[p]);
                    pos = p + 1;
                    break;
                }
                stack.pop();
                pos = p;
            }
        } else {
            cands.reverse();
            let first = cands.pop().unwrap();
            labels[y] = Some(first);
            used.insert(first, y);
            stack.push((pos, cands));
            pos += 1;
        }
        if nodes >= node_budget && pos < order.len() {
            return Err(LabelError::NoConsistentLabeling { vertex: stuck.unwrap_or(y), nodes, exhausted_budget: true });
        }
    }
    Ok(Labeling { universe, labels })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Conditions,
    RootLabels,
    Propagation,
    Labeling,
    ExchangeAxiom,
    Isomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Diagnosis {
    Disconnected,
    Condition { report: Box<ConditionReport> },
    Link { v: usize, witness: PatternWitness },
    UniverseTooLarge { universe: usize, width: usize },
    TooManyComponents { components: usize },
    Stuck { vertex: usize, nodes: usize, exhausted_budget: bool },
    LabelPair { u: usize, v: usize },
    Exchange { a_set: Vec<usize>, b_set: Vec<usize>, element: Option<usize> },
    NotIsomorphic { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("not a basis graph: stage {stage:?} failed ({witness:?})")]
pub struct NotABasisGraph {
    pub stage: Stage,
    pub witness: Diagnosis,
}

impl NotABasisGraph {
    fn new(stage: Stage, witness: Diagnosis) -> Self {
        NotABasisGraph { stage, witness }
    }
}

impl From<LabelError> for NotABasisGraph {
    fn from(e: LabelError) -> Self {
        match e {
            LabelError::LinkNotBipartiteLineGraph { v, witness } => {
                NotABasisGraph::new(Stage::RootLabels, Diagnosis::Link { v, witness })
            }
            LabelError::UniverseTooLarge { universe, width } => {
                NotABasisGraph::new(Stage::RootLabels, Diagnosis::UniverseTooLarge { universe, width })
            }
            LabelError::NoConsistentLabeling { vertex, nodes, exhausted_budget } => {
                NotABasisGraph::new(Stage::Propagation, Diagnosis::Stuck { vertex, nodes, exhausted_budget })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction<M: Mask = u64> {
    pub matroid: SetSystem<M>,
    pub labeling: Labeling<M>,
    /// Side-assignment bits that produced the labeling.
    pub flips: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReconstructOptions {
    pub basepoint: usize,
    pub check: CheckOptions,
    pub node_budget: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions { basepoint: 0, check: CheckOptions::default(), node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// Conditions, root labels under every side assignment in ascending order,
/// propagation, then full verification of the first labeling found.
pub fn reconstruct_matroid<M: Mask>(g: &Graph, opts: &ReconstructOptions) -> Result<Reconstruction<M>, NotABasisGraph> {
    let report = maurer_check(g, Mode::Matroid, &opts.check)
        .map_err(|_| NotABasisGraph::new(Stage::Conditions, Diagnosis::Disconnected))?;
    if let Some(r) = report.first_failure() {
        return Err(NotABasisGraph::new(Stage::Conditions, Diagnosis::Condition { report: Box::new(r.clone()) }));
    }
    let v = opts.basepoint;
    let components = root_component_count(g, v)?;
    if components > MAX_FLIP_COMPONENTS {
        return Err(NotABasisGraph::new(Stage::RootLabels, Diagnosis::TooManyComponents { components }));
    }
    let mut first_error = None;
    for flips in 0..1u64 << components {
        let partial = root_labels::<M>(g, v, flips)?;
        match propagate_labels(g, v, partial, opts.node_budget) {
            Ok(labeling) => return finish(g, labeling, flips),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.expect("at least one side assignment").into())
}

fn finish<M: Mask>(g: &Graph, labeling: Labeling<M>, flips: u64) -> Result<Reconstruction<M>, NotABasisGraph> {
    if let Some((u, v)) = labeling.first_defect(g) {
        return Err(NotABasisGraph::new(Stage::Labeling, Diagnosis::LabelPair { u, v }));
    }
    let labels: Vec<M> = labeling.labels.iter().map(|l| l.unwrap()).collect();
    let matroid = SetSystem::new(labeling.universe, labels.clone())
        .expect("distinct labels inside the universe form a set system")
        .sorted();
    let verdict = verify_matroid(&matroid);
    if !verdict.holds() {
        let witness = match verdict {
            crate::matroid::ExchangeVerdict::CardinalityMismatch { first, other } => {
                Diagnosis::Exchange { a_set: first.elements().collect(), b_set: other.elements().collect(), element: None }
            }
            crate::matroid::ExchangeVerdict::ExchangeFails { a_set, b_set, element } => Diagnosis::Exchange {
                a_set: a_set.elements().collect(),
                b_set: b_set.elements().collect(),
                element: Some(element),
            },
            crate::matroid::ExchangeVerdict::Holds => unreachable!(),
        };
        return Err(NotABasisGraph::new(Stage::ExchangeAxiom, witness));
    }
    // The labels give an explicit map onto the basis graph; check it is an isomorphism.
    let bg = basis_graph(&matroid);
    let map: Vec<usize> = labels.iter().map(|&l| bg.vertex_of(l).unwrap()).collect();
    if let Some(x) = (0..g.n()).find(|&x| {
        let mut image: Vec<usize> = g.neighbors(x).iter().map(|&y| map[y]).collect();
        image.sort_unstable();
        image != bg.graph.neighbors(map[x])
    }) {
        return Err(NotABasisGraph::new(Stage::Isomorphism, Diagnosis::NotIsomorphic { vertex: x }));
    }
    Ok(Reconstruction { matroid, labeling, flips })
}
