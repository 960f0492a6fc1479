//! Corpus generators and a coset-enumeration oracle shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use basis_core::conditions::{
    check_interval_condition, check_link_condition, check_local_positioning, check_local_triangle, check_positioning,
};
use basis_core::graph::certificate;
use basis_core::patterns::find_pattern;
use basis_core::{basis_graph, CheckOptions, PatternKind};
use basis_core::matroid::{complete_matroid, graphic_matroid, uniform_matroid, DEFAULT_BASES_BUDGET};
use basis_core::{Graph, SetSystem64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const COSET_CAP: usize = 10_000;

pub fn uniform_corpus() -> Vec<(String, SetSystem64)> {
    (0..=6)
        .flat_map(|m| (0..=m).map(move |k| (format!("U({k},{m})"), uniform_matroid(m, k, DEFAULT_BASES_BUDGET).unwrap())))
        .collect()
}

pub fn complete_corpus() -> Vec<(String, SetSystem64)> {
    (1..=3).map(|n| (format!("M({n},{n})"), complete_matroid(n, DEFAULT_BASES_BUDGET).unwrap())).collect()
}

/// Connected simple graphs with at most `max_edges` edges, one per
/// isomorphism class, grown edge by edge from a single vertex.
pub fn connected_graphs(max_edges: usize) -> Vec<Graph> {
    let mut layer = vec![Graph::empty(1)];
    let mut all = layer.clone();
    for _ in 0..max_edges {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &layer {
            let n = g.n();
            let edges: Vec<_> = g.edges().collect();
            let mut children = Vec::new();
            for v in 0..n {
                let mut e = edges.clone();
                e.push((v, n));
                children.push(Graph::from_edges(n + 1, &e).unwrap());
            }
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let mut e = edges.clone();
                        e.push((u, v));
                        children.push(Graph::from_edges(n, &e).unwrap());
                    }
                }
            }
            for c in children {
                if seen.insert(certificate(&c, None).unwrap()) {
                    next.push(c);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

pub fn graphic_corpus() -> Vec<(String, SetSystem64)> {
    connected_graphs(8)
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            let edges: Vec<_> = g.edges().collect();
            (format!("graphic #{i} ({} vertices, {} edges)", g.n(), edges.len()), graphic_matroid(g.n(), &edges, 64).unwrap())
        })
        .collect()
}

/// Uniform matroids on at most 6 elements, graphic matroids of connected
/// graphs with at most 8 edges, and `M_{n,n}` for `n <= 3`.
pub fn matroid_corpus() -> Vec<(String, SetSystem64)> {
    let mut all = uniform_corpus();
    all.extend(graphic_corpus());
    all.extend(complete_corpus());
    all
}

/// G(n, p) with `n` in 3..=10 and `p` in [0.2, 0.8).
pub fn random_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=10);
            let p: f64 = rng.gen_range(0.2..0.8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// Corpus members whose basis graph fails IC, PC (at any basepoint) or LC
/// (at any vertex).
pub fn conjecture_counterexamples(corpus: &[(String, SetSystem64)]) -> Vec<String> {
    let opts = CheckOptions::default();
    let mut out = Vec::new();
    for (name, ss) in corpus {
        let g = basis_graph(ss).graph;
        let reports = [
            check_interval_condition(&g, &opts),
            check_positioning(&g, None, &opts).expect("basis graphs are connected"),
            check_link_condition(&g, None, &opts).0,
        ];
        for r in reports.iter().filter(|r| !r.pass) {
            out.push(format!("{name}: {} fails with {:?}", r.condition, r.witnesses.first()));
        }
    }
    out
}

/// Checks that IC and LPC force the local triangle condition and exclude
/// propellers and half open books, and that excluding those excludes odd
/// wheels. Returns how many graphs met the hypotheses, and the failures.
pub fn local_implication_failures<'a>(graphs: impl IntoIterator<Item = (String, &'a Graph)>) -> (usize, Vec<String>) {
    let opts = CheckOptions::default();
    let mut hypotheses = 0;
    let mut out = Vec::new();
    for (name, g) in graphs {
        if !(check_interval_condition(g, &opts).pass && check_local_positioning(g, &opts).pass) {
            continue;
        }
        hypotheses += 1;
        if !check_local_triangle(g, &opts).pass {
            out.push(format!("{name}: local triangle fails"));
        }
        let mut books = false;
        for kind in [PatternKind::Propeller, PatternKind::HalfOpenBook] {
            if let Some(w) = find_pattern(g, kind) {
                books = true;
                out.push(format!("{name}: {w:?}"));
            }
        }
        if !books {
            if let Some(w) = find_pattern(g, PatternKind::OddWheel) {
                out.push(format!("{name}: {w:?}"));
            }
        }
    }
    (hypotheses, out)
}

/// Triangles and induced 4-cycles by brute force, as closed vertex walks.
fn cells(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let e = |a, b| g.has_edge(a, b);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if e(a, b) && e(b, c) && e(a, c) {
                    out.push(vec![a, b, c]);
                }
                for d in c + 1..n {
                    // The three ways to close a, b, c, d into a 4-cycle.
                    for w in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        let cyc = (0..4).all(|i| e(w[i], w[(i + 1) % 4]));
                        let chordless = !e(w[0], w[2]) && !e(w[1], w[3]);
                        if cyc && chordless {
                            out.push(w.to_vec());
                        }
                    }
                }
            }
        }
    }
    out
}

/// Order of the fundamental group of the triangle-square complex of a
/// connected graph, by Todd-Coxeter enumeration over the trivial subgroup.
/// `None` once more than `cap` cosets have been defined.
pub fn pi1_order(g: &Graph, cap: usize) -> Option<usize> {
    let n = g.n();
    assert!(g.is_connected());
    // BFS spanning tree; every other edge is a generator.
    let mut parent = vec![usize::MAX; n];
    parent[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut gen_of = std::collections::HashMap::new();
    for (u, v) in g.edges() {
        if parent[v] != u && parent[u] != v {
            let i = gen_of.len();
            gen_of.insert((u, v), i);
        }
    }
    let gens = gen_of.len();
    if gens == 0 {
        return Some(1);
    }
    // Column 2i is generator i, column 2i + 1 its inverse.
    let letter = |a: usize, b: usize| -> Option<usize> {
        let (lo, hi) = (a.min(b), a.max(b));
        gen_of.get(&(lo, hi)).map(|&i| 2 * i + usize::from(a > b))
    };
    let mut relators = Vec::new();
    for c in cells(g) {
        let mut word: Vec<usize> = Vec::new();
        for i in 0..c.len() {
            if let Some(x) = letter(c[i], c[(i + 1) % c.len()]) {
                if word.last() == Some(&(x ^ 1)) {
                    word.pop();
                } else {
                    word.push(x);
                }
            }
        }
        while word.len() >= 2 && word[0] == word[word.len() - 1] ^ 1 {
            word.remove(0);
            word.pop();
        }
        if !word.is_empty() {
            relators.push(word);
        }
    }
    coset_count(gens, &relators, cap)
}

/// Order of the group on `gens` generators with the given relators (column
/// `2i` is generator `i`, `2i + 1` its inverse); `None` past `cap` cosets.
pub fn coset_count(gens: usize, relators: &[Vec<usize>], cap: usize) -> Option<usize> {
    CosetTable::new(2 * gens, cap).enumerate(relators)
}

const UNDEF: usize = usize::MAX;

/// Hasse-Lee-Trotter style enumeration with a union-find coincidence queue.
struct CosetTable {
    cols: usize,
    cap: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
}

struct CapReached;

impl CosetTable {
    fn new(cols: usize, cap: usize) -> Self {
        CosetTable { cols, cap, table: vec![vec![UNDEF; cols]], parent: vec![0] }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), CapReached> {
        if self.table.len() >= self.cap {
            return Err(CapReached);
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, lose) = (a.min(b), a.max(b));
            self.parent[lose] = keep;
            queue.push(lose);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                self.table[f][x ^ 1] = UNDEF;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != UNDEF {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), CapReached> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        let at = |k: isize| w[k as usize];
        loop {
            while i <= j && self.table[f][at(i)] != UNDEF {
                f = self.table[f][at(i)];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][at(j) ^ 1] != UNDEF {
                b = self.table[b][at(j) ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.table[f][at(i)] = b;
                self.table[b][at(i) ^ 1] = f;
                return Ok(());
            }
            self.define(f, at(i))?;
        }
    }

    fn enumerate(mut self, relators: &[Vec<usize>]) -> Option<usize> {
        let mut c = 0;
        while c < self.table.len() {
            for r in relators {
                if !self.live(c) {
                    break;
                }
                self.scan_and_fill(c, r).ok()?;
            }
            for x in 0..self.cols {
                if self.live(c) && self.table[c][x] == UNDEF {
                    self.define(c, x).ok()?;
                }
            }
            c += 1;
        }
        Some((0..self.table.len()).filter(|&c| self.live(c)).count())
    }
}
