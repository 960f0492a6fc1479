//! Canonical certificates for small graphs by colour refinement plus
//! individualisation, with automorphism pruning along the first path of the
//! search tree.

use super::{Graph, GraphError};

pub const DEFAULT_CERTIFICATE_BOUND: usize = 2000;

/// Canonical byte string: equal for two graphs iff they are isomorphic
/// (root-preserving when a root was given).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(pub Vec<u8>);

pub fn certificate(g: &Graph, root: Option<usize>) -> Result<Certificate, GraphError> {
    certificate_with_bound(g, root, DEFAULT_CERTIFICATE_BOUND)
}

pub fn certificate_with_bound(
    g: &Graph,
    root: Option<usize>,
    bound: usize,
) -> Result<Certificate, GraphError> {
    let n = g.n();
    if n > bound {
        return Err(GraphError::TooLarge { n, bound });
    }
    let colors: Vec<u32> = (0..n).map(|v| u32::from(Some(v) != root)).collect();
    let mut search = Search { g, first: None, best: None, autos: Vec::new() };
    let mut path = Vec::new();
    search.run(colors, &mut path, true);

    let mut bytes = Vec::with_capacity(8 + 8 * n * n.div_ceil(64));
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    bytes.push(u8::from(root.is_some()));
    for word in search.best.unwrap_or_default() {
        bytes.extend_from_slice(&word.to_le_bytes());
    }
    Ok(Certificate(bytes))
}

struct FirstLeaf {
    code: Vec<u64>,
    labeling: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<FirstLeaf>,
    best: Option<Vec<u64>>,
    /// Automorphisms found so far, with the length of the search-path prefix
    /// they fix pointwise.
    autos: Vec<(Vec<usize>, usize)>,
}

impl Search<'_> {
    fn run(&mut self, colors: Vec<u32>, path: &mut Vec<usize>, on_first_path: bool) {
        let colors = refine(self.g, colors);
        let Some(cell) = target_cell(&colors) else {
            self.leaf(&colors, path);
            return;
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for (idx, &m) in cell.iter().enumerate() {
            if on_first_path && idx > 0 && self.same_orbit_as_any(m, &explored, depth) {
                continue;
            }
            path.push(m);
            self.run(individualize(&colors, m), path, on_first_path && idx == 0);
            path.pop();
            explored.push(m);
        }
    }

    fn leaf(&mut self, colors: &[u32], path: &[usize]) {
        let n = colors.len();
        let mut labeling = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            labeling[c as usize] = v;
        }
        let code = encode(self.g, &labeling);
        match &self.first {
            None => {
                self.best = Some(code.clone());
                self.first = Some(FirstLeaf { code, labeling, path: path.to_vec() });
            }
            Some(first) => {
                if code == first.code {
                    let mut gamma = vec![0; n];
                    for (pos, &v) in first.labeling.iter().enumerate() {
                        gamma[v] = labeling[pos];
                    }
                    let fixed = first.path.iter().zip(path).take_while(|(a, b)| a == b).count();
                    self.autos.push((gamma, fixed));
                }
                if self.best.as_ref().is_some_and(|b| code < *b) {
                    self.best = Some(code);
                }
            }
        }
    }

    fn same_orbit_as_any(&self, m: usize, explored: &[usize], depth: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (gamma, fixed) in &self.autos {
            if *fixed < depth {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rm = find(&mut parent, m);
        explored.iter().any(|&e| find(&mut parent, e) == rm)
    }
}

/// First non-singleton cell (lowest colour), members ascending.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let n = colors.len();
    let mut counts = vec![0usize; n];
    for &c in colors {
        counts[c as usize] += 1;
    }
    let c = counts.iter().position(|&k| k > 1)? as u32;
    Some((0..n).filter(|&v| colors[v] == c).collect())
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let keyed: Vec<(u32, bool)> =
        colors.iter().enumerate().map(|(x, &c)| (c, x != v)).collect();
    rank(&keyed)
}

/// Dense ranks of arbitrary ordered keys; the result is invariant under
/// relabelling of the vertices.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

/// Colours become positions: each class is assigned the index of its first
/// slot in the sorted order, so a discrete colouring is a permutation.
fn to_positions(colors: &[u32]) -> Vec<u32> {
    let n = colors.len();
    let mut counts = vec![0u32; n + 1];
    for &c in colors {
        counts[c as usize + 1] += 1;
    }
    for i in 1..=n {
        counts[i] += counts[i - 1];
    }
    colors.iter().map(|&c| counts[c as usize]).collect()
}

fn refine(g: &Graph, colors: Vec<u32>) -> Vec<u32> {
    let mut colors = to_positions(&rank(&colors));
    let mut classes = distinct(&colors);
    loop {
        let keys: Vec<(u32, Vec<u32>)> = (0..g.n())
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = to_positions(&rank(&keys));
        let k = distinct(&next);
        colors = next;
        if k == classes {
            return colors;
        }
        classes = k;
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Upper triangle of the adjacency matrix under `labeling[pos] = vertex`.
fn encode(g: &Graph, labeling: &[usize]) -> Vec<u64> {
    let n = labeling.len();
    let mut pos = vec![0; n];
    for (p, &v) in labeling.iter().enumerate() {
        pos[v] = p;
    }
    let words = n.div_ceil(64);
    let mut rows = vec![0u64; n * words];
    for (u, &pu) in pos.iter().enumerate() {
        for &w in g.neighbors(u) {
            let pw = pos[w];
            rows[pu * words + pw / 64] |= 1 << (pw % 64);
        }
    }
    rows
}
