//! Small fixed configurations and line-graph recognition.
//!
//! Witness role orders are fixed:
//!
//! | kind           | roles                      | shape                                             |
//! |----------------|----------------------------|---------------------------------------------------|
//! | `Propeller`    | `(u, v, x, y, z)`          | shaft `uv`, pairwise non-adjacent tips `x, y, z`  |
//! | `HalfOpenBook` | `(u, v, w, x, y, z)`       | edges `uv ux vw vz wy xy xz yz`                   |
//! | `K23`          | `(a, b, x, y, z)`          | `a, b` the degree-3 side                          |
//! | `W4Minus`      | `(c, r0, r1, r2, r3)`      | rim `r0 r1 r2 r3`, centre `c` misses `r3`         |
//! | `Claw`         | `(c, a, b, d)`             | centre `c`                                        |
//! | `Diamond`      | `(a, b, c, d)`             | `ab` the shared edge, `c, d` non-adjacent         |
//! | `OddWheel`     | `(hub, r0, r1, …)`         | hub plus an induced odd rim of length ≥ 5         |
//! | `OddHole`      | `(r0, r1, …)`              | induced odd cycle of length ≥ 5, in cycle order   |
//!
//! Searches scan candidates in ascending id order, so the witness returned is
//! the lexicographically first one in role order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bfs_distances, induced, intersect_sorted, link, Graph};

/// Length cap for induced odd-cycle searches.
pub const DEFAULT_HOLE_CAP: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternKind {
    Propeller,
    HalfOpenBook,
    OddWheel,
    K23,
    W4Minus,
    Claw,
    Diamond,
    OddHole,
}

impl PatternKind {
    pub const ALL: [PatternKind; 8] = [
        PatternKind::Propeller,
        PatternKind::HalfOpenBook,
        PatternKind::OddWheel,
        PatternKind::K23,
        PatternKind::W4Minus,
        PatternKind::Claw,
        PatternKind::Diamond,
        PatternKind::OddHole,
    ];

    /// Number of witness vertices, `None` for the variable-length kinds.
    pub fn arity(self) -> Option<usize> {
        self.fixed().map(|p| p.roles)
    }

    fn fixed(self) -> Option<FixedPattern> {
        use PatternKind::*;
        Some(match self {
            Propeller => FixedPattern {
                roles: 5,
                edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
                order: &[(0, 1), (2, 3), (3, 4)],
                search: &[0, 1, 2, 3, 4],
            },
            HalfOpenBook => FixedPattern {
                roles: 6,
                edges: &[(0, 1), (0, 3), (1, 2), (1, 5), (2, 4), (3, 4), (3, 5), (4, 5)],
                order: &[(0, 2)],
                search: &[0, 1, 3, 5, 4, 2],
            },
            K23 => FixedPattern {
                roles: 5,
                edges: &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
                order: &[(0, 1), (2, 3), (3, 4)],
                search: &[0, 2, 3, 1, 4],
            },
            W4Minus => FixedPattern {
                roles: 5,
                edges: &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 4), (4, 1)],
                order: &[(1, 3)],
                search: &[0, 1, 2, 3, 4],
            },
            Claw => FixedPattern {
                roles: 4,
                edges: &[(0, 1), (0, 2), (0, 3)],
                order: &[(1, 2), (2, 3)],
                search: &[0, 1, 2, 3],
            },
            Diamond => FixedPattern {
                roles: 4,
                edges: &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
                order: &[(0, 1), (2, 3)],
                search: &[0, 1, 2, 3],
            },
            OddWheel | OddHole => return None,
        })
    }

    /// The pattern graph itself, labelled in role order (odd kinds: length 5).
    pub fn model(self) -> Graph {
        match self.fixed() {
            Some(p) => Graph::from_edges(p.roles, p.edges).unwrap(),
            None if self == PatternKind::OddWheel => Graph::wheel(5),
            None => Graph::cycle(5),
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub vertices: Vec<usize>,
}

impl PatternWitness {
    /// Checks that the witness vertices induce the named pattern with roles in place.
    pub fn validate(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        if vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vs.len() {
            return false;
        }
        let model = match self.kind.fixed() {
            Some(p) if vs.len() == p.roles => p.graph(),
            Some(_) => return false,
            None => {
                let (hub, rim) = match self.kind {
                    PatternKind::OddWheel => match vs.split_first() {
                        Some((h, r)) => (Some(*h), r),
                        None => return false,
                    },
                    _ => (None, vs.as_slice()),
                };
                if rim.len() < 5 || rim.len() % 2 == 0 {
                    return false;
                }
                if let Some(h) = hub {
                    if !rim.iter().all(|&r| g.has_edge(h, r)) {
                        return false;
                    }
                }
                return (0..rim.len()).all(|i| {
                    (i + 1..rim.len()).all(|j| {
                        let consecutive = j == i + 1 || (i == 0 && j == rim.len() - 1);
                        g.has_edge(rim[i], rim[j]) == consecutive
                    })
                });
            }
        };
        (0..vs.len()).all(|i| (i + 1..vs.len()).all(|j| g.has_edge(vs[i], vs[j]) == model.has_edge(i, j)))
    }

    pub fn map_vertices(&self, original: &[usize]) -> PatternWitness {
        PatternWitness { kind: self.kind, vertices: self.vertices.iter().map(|&v| original[v]).collect() }
    }
}

#[derive(Debug, Clone, Copy)]
struct FixedPattern {
    roles: usize,
    edges: &'static [(usize, usize)],
    /// `(i, j)`: the vertex in role `i` has a smaller id than the one in role `j`.
    order: &'static [(usize, usize)],
    /// Order in which roles are assigned; always starts with role 0.
    search: &'static [usize],
}

impl FixedPattern {
    fn graph(&self) -> Graph {
        Graph::from_edges(self.roles, self.edges).unwrap()
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    fn first_match(&self, g: &Graph, anchor: Option<usize>) -> Option<Vec<usize>> {
        let anchors: Vec<usize> = match anchor {
            Some(a) => vec![a],
            None => (0..g.n()).collect(),
        };
        let in_order = self.search.iter().enumerate().all(|(i, &r)| i == r);
        anchors.into_iter().find_map(|a| {
            let mut slots = vec![usize::MAX; self.roles];
            slots[0] = a;
            let mut best: Option<Vec<usize>> = None;
            self.extend(g, 1, &mut slots, &mut best, in_order);
            best
        })
    }

    /// Assigns `search[step..]`. Role order equals search order when
    /// `stop_at_first`, so the first match is the smallest; otherwise all
    /// matches are visited and the smallest kept.
    fn extend(&self, g: &Graph, step: usize, slots: &mut [usize], best: &mut Option<Vec<usize>>, stop_at_first: bool) -> bool {
        if step == self.roles {
            if best.as_deref().is_none_or(|b| *slots < *b) {
                *best = Some(slots.to_vec());
            }
            return stop_at_first;
        }
        let role = self.search[step];
        let placed = &self.search[..step];
        let adjacent: Vec<usize> = placed.iter().copied().filter(|&j| self.adjacent(role, j)).collect();
        let candidates: Vec<usize> = match adjacent.split_first() {
            None => (0..g.n()).collect(),
            Some((&first, rest)) => {
                let mut c = g.neighbors(slots[first]).to_vec();
                for &j in rest {
                    c = intersect_sorted(&c, g.neighbors(slots[j]));
                }
                c
            }
        };
        for x in candidates {
            if placed.iter().any(|&j| slots[j] == x) {
                continue;
            }
            let ok_order = self.order.iter().all(|&(i, j)| {
                if j == role && slots[i] != usize::MAX {
                    slots[i] < x
                } else if i == role && slots[j] != usize::MAX {
                    x < slots[j]
                } else {
                    true
                }
            });
            if !ok_order || placed.iter().any(|&j| !self.adjacent(role, j) && g.has_edge(x, slots[j])) {
                continue;
            }
            slots[role] = x;
            if self.extend(g, step + 1, slots, best, stop_at_first) {
                return true;
            }
            slots[role] = usize::MAX;
        }
        false
    }
}

/// First witness of `kind` in `g`, or `None`.
pub fn find_pattern(g: &Graph, kind: PatternKind) -> Option<PatternWitness> {
    match kind {
        PatternKind::OddHole => {
            find_odd_hole(g, DEFAULT_HOLE_CAP).map(|vertices| PatternWitness { kind, vertices })
        }
        PatternKind::OddWheel => (0..g.n()).find_map(|c| find_odd_wheel_at(g, c)),
        _ => kind.fixed().unwrap().first_match(g, None).map(|vertices| PatternWitness { kind, vertices }),
    }
}

/// First witness whose first role (shaft end, centre, hub, ...) is `anchor`.
pub fn find_pattern_at(g: &Graph, kind: PatternKind, anchor: usize) -> Option<PatternWitness> {
    match kind {
        PatternKind::OddWheel => find_odd_wheel_at(g, anchor),
        PatternKind::OddHole => find_odd_hole_from(g, anchor, DEFAULT_HOLE_CAP)
            .map(|vertices| PatternWitness { kind, vertices }),
        _ => kind
            .fixed()
            .unwrap()
            .first_match(g, Some(anchor))
            .map(|vertices| PatternWitness { kind, vertices }),
    }
}

fn find_odd_wheel_at(g: &Graph, hub: usize) -> Option<PatternWitness> {
    let l = link(g, hub);
    // line graphs of bipartite graphs have no odd holes
    if is_line_graph_of_bipartite(&l.graph).is_ok() {
        return None;
    }
    let rim = find_odd_hole(&l.graph, DEFAULT_HOLE_CAP)?;
    let mut vertices = vec![hub];
    vertices.extend(rim.iter().map(|&v| l.original[v]));
    Some(PatternWitness { kind: PatternKind::OddWheel, vertices })
}

/// An induced odd cycle of length in `5..=cap`, starting at its smallest vertex.
pub fn find_odd_hole(g: &Graph, cap: usize) -> Option<Vec<usize>> {
    (0..g.n()).find_map(|s| find_odd_hole_from(g, s, cap))
}

/// Induced odd cycles whose minimum vertex is `s`.
fn find_odd_hole_from(g: &Graph, s: usize, cap: usize) -> Option<Vec<usize>> {
    fn dfs(g: &Graph, s: usize, cap: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
        let last = *path.last().unwrap();
        for &x in g.neighbors(last) {
            if x <= s || on_path[x] {
                continue;
            }
            let interior = if path.len() >= 2 { &path[1..path.len() - 1] } else { &[][..] };
            if interior.iter().any(|&p| g.has_edge(x, p)) {
                continue;
            }
            if path.len() >= 2 && g.has_edge(x, s) {
                let len = path.len() + 1;
                if len >= 5 && len % 2 == 1 {
                    path.push(x);
                    return true;
                }
                continue;
            }
            if path.len() + 1 < cap {
                path.push(x);
                on_path[x] = true;
                if dfs(g, s, cap, path, on_path) {
                    return true;
                }
                on_path[x] = false;
                path.pop();
            }
        }
        false
    }
    let mut path = vec![s];
    let mut on_path = vec![false; g.n()];
    on_path[s] = true;
    dfs(g, s, cap, &mut path, &mut on_path).then_some(path)
}

/// Shape of a 2-interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalShape {
    Square,
    Pyramid,
    Octahedron,
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("vertices {0} and {1} are not at distance 2")]
pub struct NotAtDistanceTwo(pub usize, pub usize);

/// The vertex set of `I(u, v)` for `d(u, v) = 2`: `u`, `v` and their common neighbours.
pub fn two_interval(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>, NotAtDistanceTwo> {
    if u == v || g.has_edge(u, v) {
        return Err(NotAtDistanceTwo(u, v));
    }
    let common = g.common_neighbors(u, v);
    if common.is_empty() {
        return Err(NotAtDistanceTwo(u, v));
    }
    let mut set = common;
    set.push(u);
    set.push(v);
    set.sort_unstable();
    Ok(set)
}

pub fn classify_two_interval(g: &Graph, u: usize, v: usize) -> Result<IntervalShape, NotAtDistanceTwo> {
    two_interval(g, u, v)?;
    let common = g.common_neighbors(u, v);
    let sub = induced(g, &common).graph;
    let edges = sub.edge_count();
    let degrees = sub.degree_sequence();
    Ok(match common.len() {
        2 if edges == 0 => IntervalShape::Square,
        // middle P_3: the pyramid apex is the common neighbour adjacent to the other two
        3 if edges == 2 => IntervalShape::Pyramid,
        4 if edges == 4 && degrees == [2, 2, 2, 2] => IntervalShape::Octahedron,
        k @ (2..=4) => IntervalShape::Other(format!(
            "{k} common neighbours inducing {edges} edges (degrees {degrees:?})"
        )),
        k => IntervalShape::Other(format!("{k} common neighbours")),
    })
}

/// A graph `H` with `L(H)` isomorphic to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootGraph {
    pub root: Graph,
    /// `edge_of[x]` is the root edge standing for input vertex `x`.
    pub edge_of: Vec<(usize, usize)>,
    /// Proper 2-colouring of the root (bipartite variant only).
    pub sides: Option<Vec<u8>>,
}

impl RootGraph {
    /// Checks `x ~ y ⟺ edge_of[x], edge_of[y] share an endpoint`, edges distinct,
    /// and the colouring (if any) proper.
    pub fn realizes(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.edge_of.len() != n {
            return false;
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.edge_of {
            let key = (a.min(b), a.max(b));
            if a == b || !self.root.has_edge(a, b) || !seen.insert(key) {
                return false;
            }
        }
        if seen.len() != self.root.edge_count() {
            return false;
        }
        if let Some(sides) = &self.sides {
            if self.root.edges().any(|(a, b)| sides[a] == sides[b]) {
                return false;
            }
        }
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                let (a, b) = self.edge_of[x];
                let (c, d) = self.edge_of[y];
                g.has_edge(x, y) == (a == c || a == d || b == c || b == d)
            })
        })
    }

    /// Connected components of the root, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.root.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let d = bfs_distances(&self.root, s);
            let members: Vec<usize> = (0..n).filter(|&x| d.get(x).is_some()).collect();
            for &m in &members {
                comp[m] = out.len();
            }
            out.push(members);
        }
        out
    }
}

/// Builds the Krausz root from an edge-clique partition in which every vertex
/// lies in at most two cliques.
fn root_from_cliques(n: usize, cliques: &[Vec<usize>]) -> RootGraph {
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            member[v].push(i);
        }
    }
    let mut next = cliques.len();
    let mut edge_of = Vec::with_capacity(n);
    for m in &member {
        let e = match m.as_slice() {
            [a, b] => (*a, *b),
            [a] => {
                next += 1;
                (*a, next - 1)
            }
            [] => {
                next += 2;
                (next - 2, next - 1)
            }
            _ => unreachable!("vertex in more than two cliques"),
        };
        edge_of.push(e);
    }
    let root = Graph::from_edges(next, &edge_of).expect("clique partition yields a simple root");
    RootGraph { root, edge_of, sides: None }
}

/// Recognises line graphs of bipartite graphs. On failure the witness is a
/// claw, a diamond, or an odd hole of the input.
pub fn is_line_graph_of_bipartite(g: &Graph) -> Result<RootGraph, PatternWitness> {
    for kind in [PatternKind::Claw, PatternKind::Diamond] {
        if let Some(w) = find_pattern(g, kind) {
            return Err(w);
        }
    }
    // claw- and diamond-free: each neighbourhood is at most two disjoint cliques
    let mut cliques = BTreeSet::new();
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        let mut done = vec![false; nb.len()];
        for i in 0..nb.len() {
            if done[i] {
                continue;
            }
            let mut clique = vec![v, nb[i]];
            done[i] = true;
            for j in i + 1..nb.len() {
                if g.has_edge(nb[i], nb[j]) {
                    clique.push(nb[j]);
                    done[j] = true;
                }
            }
            clique.sort_unstable();
            cliques.insert(clique);
        }
    }
    let cliques: Vec<Vec<usize>> = cliques.into_iter().collect();
    let mut rg = root_from_cliques(g.n(), &cliques);
    match two_color(&rg.root) {
        Ok(sides) => {
            rg.sides = Some(sides);
            Ok(rg)
        }
        Err(()) => {
            let cycle = shortest_odd_cycle(&rg.root).expect("non-bipartite root has an odd cycle");
            let by_edge: HashMap<(usize, usize), usize> = rg
                .edge_of
                .iter()
                .enumerate()
                .map(|(x, &(a, b))| ((a.min(b), a.max(b)), x))
                .collect();
            let k = cycle.len();
            let vertices = (0..k)
                .map(|i| {
                    let (a, b) = (cycle[i], cycle[(i + 1) % k]);
                    by_edge[&(a.min(b), a.max(b))]
                })
                .collect();
            Err(PatternWitness { kind: PatternKind::OddHole, vertices })
        }
    }
}

fn two_color(g: &Graph) -> Result<Vec<u8>, ()> {
    let mut side = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    q.push_back(w);
                } else if side[w] == side[u] {
                    return Err(());
                }
            }
        }
    }
    Ok(side)
}

/// A shortest odd cycle, in cycle order. Shortest odd cycles are induced.
fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for s in 0..g.n() {
        let mut parent = vec![usize::MAX; g.n()];
        let mut dist = vec![u32::MAX; g.n()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        let mut found = None;
        'bfs: while let Some(u) = q.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if dist[w] == dist[u] && u < w {
                    found = Some((u, w));
                    break 'bfs;
                }
            }
        }
        let Some((x, y)) = found else { continue };
        let len = 2 * dist[x] as usize + 1;
        if best.as_ref().is_some_and(|b| b.len() <= len) {
            continue;
        }
        let climb = |mut v: usize| {
            let mut p = vec![v];
            while v != s {
                v = parent[v];
                p.push(v);
            }
            p
        };
        let (px, py) = (climb(x), climb(y));
        // only a globally shortest cycle is guaranteed to have disjoint branches
        let mut cycle: Vec<usize> = px.iter().rev().copied().collect();
        cycle.extend(py[..py.len() - 1].iter());
        let mut uniq = cycle.clone();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() == cycle.len() {
            best = Some(cycle);
        }
    }
    best
}

/// Why a graph is not a line graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineGraphObstruction {
    /// A forbidden pattern (a claw).
    Pattern(PatternWitness),
    /// A vertex set inducing a minimal non-line graph, found by deleting
    /// vertices while the clique-partition reconstruction keeps failing.
    MinimalNonLine(Vec<usize>),
}

/// Recognises line graphs (of arbitrary simple graphs) by searching for an
/// edge-clique partition with every vertex in at most two cliques.
pub fn is_line_graph(g: &Graph) -> Result<RootGraph, LineGraphObstruction> {
    if let Some(w) = find_pattern(g, PatternKind::Claw) {
        return Err(LineGraphObstruction::Pattern(w));
    }
    if let Some(cliques) = clique_partition(g) {
        return Ok(root_from_cliques(g.n(), &cliques));
    }
    let mut keep: Vec<usize> = (0..g.n()).collect();
    for v in 0..g.n() {
        let trial: Vec<usize> = keep.iter().copied().filter(|&x| x != v).collect();
        if clique_partition(&induced(g, &trial).graph).is_none() {
            keep = trial;
        }
    }
    Err(LineGraphObstruction::MinimalNonLine(keep))
}

fn clique_partition(g: &Graph) -> Option<Vec<Vec<usize>>> {
    struct State<'a> {
        g: &'a Graph,
        edges: Vec<(usize, usize)>,
        covered: HashMap<(usize, usize), usize>,
        cliques: Vec<Vec<usize>>,
        member: Vec<Vec<usize>>,
    }
    impl State<'_> {
        fn key(a: usize, b: usize) -> (usize, usize) {
            (a.min(b), a.max(b))
        }
        fn can_join(&self, c: usize, x: usize) -> bool {
            self.member[x].len() < 2
                && !self.cliques[c].contains(&x)
                && self.cliques[c]
                    .iter()
                    .all(|&m| self.g.has_edge(m, x) && !self.covered.contains_key(&Self::key(m, x)))
        }
        fn join(&mut self, c: usize, x: usize) {
            for i in 0..self.cliques[c].len() {
                let m = self.cliques[c][i];
                self.covered.insert(Self::key(m, x), c);
            }
            self.cliques[c].push(x);
            self.member[x].push(c);
        }
        fn leave(&mut self, c: usize, x: usize) {
            self.cliques[c].pop();
            self.member[x].pop();
            for &m in &self.cliques[c] {
                self.covered.remove(&Self::key(m, x));
            }
        }
        fn solve(&mut self, mut idx: usize) -> bool {
            while idx < self.edges.len() && self.covered.contains_key(&self.edges[idx]) {
                idx += 1;
            }
            let Some(&(u, w)) = self.edges.get(idx) else { return true };
            for (a, b) in [(u, w), (w, u)] {
                for k in 0..self.member[a].len() {
                    let c = self.member[a][k];
                    if self.can_join(c, b) {
                        self.join(c, b);
                        if self.solve(idx + 1) {
                            return true;
                        }
                        self.leave(c, b);
                    }
                }
            }
            if self.member[u].len() < 2 && self.member[w].len() < 2 {
                let c = self.cliques.len();
                self.cliques.push(vec![u]);
                self.member[u].push(c);
                self.join(c, w);
                if self.solve(idx + 1) {
                    return true;
                }
                self.leave(c, w);
                self.member[u].pop();
                self.cliques.pop();
            }
            false
        }
    }
    let mut st = State {
        g,
        edges: g.edges().collect(),
        covered: HashMap::new(),
        cliques: Vec::new(),
        member: vec![Vec::new(); g.n()],
    };
    st.solve(0).then(|| {
        let mut cliques = st.cliques;
        for c in &mut cliques {
            c.sort_unstable();
        }
        cliques
    })
}

/// Outcome of the cocktail-party embedding test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CocktailVerdict {
    Embeds,
    TooManyVertices { n: usize, max: usize },
    TwoNonNeighbors { vertex: usize, a: usize, b: usize },
}

/// Whether `g` is an induced subgraph of the cocktail-party graph `K_{d×2}`.
pub fn is_induced_cocktail_subgraph(g: &Graph, d: usize) -> CocktailVerdict {
    for v in 0..g.n() {
        let non: Vec<usize> = (0..g.n()).filter(|&x| x != v && !g.has_edge(v, x)).take(2).collect();
        if let [a, b] = non[..] {
            return CocktailVerdict::TwoNonNeighbors { vertex: v, a, b };
        }
    }
    if g.n() > 2 * d {
        return CocktailVerdict::TooManyVertices { n: g.n(), max: 2 * d };
    }
    CocktailVerdict::Embeds
}
