//! Set systems over a small ground set, the matroid and even Δ-matroid
//! exchange axioms, basis graphs, and the standard generators.
//!
//! Subsets are bit masks. [`Mask`] is implemented for `u32`, `u64` and
//! `u128`; everything defaults to `u64`.

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::PrimInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

mod action;
mod graphic;
mod io;

pub use action::{antipodal_action, min_displacement, quotient, ActionError, AutomorphismAction, Quotient};
pub use action::projection_is_ball_isomorphism;
pub use graphic::{graphic_matroid, GraphicError, DEFAULT_EDGE_BUDGET};
pub use io::{read_bases, write_bases};

/// Fixed-width bit set over ground elements `0..WIDTH`.
pub trait Mask: PrimInt + Hash + Debug + Send + Sync + 'static {
    const WIDTH: usize;

    fn bit(i: usize) -> Self {
        Self::one() << i
    }

    fn has(self, i: usize) -> bool {
        self & Self::bit(i) != Self::zero()
    }

    fn size(self) -> usize {
        self.count_ones() as usize
    }

    /// Set elements in ascending order.
    fn elements(self) -> Elements<Self> {
        Elements(self)
    }

    fn from_elements(items: &[usize]) -> Self {
        items.iter().fold(Self::zero(), |m, &i| m | Self::bit(i))
    }

    /// The set `{0, …, m-1}`.
    fn full(m: usize) -> Self {
        if m == 0 {
            Self::zero()
        } else {
            Self::max_value() >> (Self::WIDTH - m)
        }
    }
}

macro_rules! impl_mask {
    ($($t:ty),*) => {$(
        impl Mask for $t {
            const WIDTH: usize = <$t>::BITS as usize;
        }
    )*};
}
impl_mask!(u32, u64, u128);

pub struct Elements<M>(M);

impl<M: Mask> Iterator for Elements<M> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0.is_zero() {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 = self.0 & (self.0 - M::one());
        Some(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetSystemError {
    #[error("a set system needs at least one basis")]
    Empty,
    #[error("ground size {ground} exceeds the mask width {width}")]
    GroundTooLarge { ground: usize, width: usize },
    #[error("basis {index} contains element {element}, outside the ground set of size {ground}")]
    ElementOutOfRange { index: usize, element: usize, ground: usize },
    #[error("basis {index} repeats basis {first}")]
    Duplicate { index: usize, first: usize },
    #[error("{needed} bases requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: usize },
}

/// Nonempty family of distinct subsets of `0..ground`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem<M: Mask = u64> {
    ground: usize,
    bases: Vec<M>,
}

impl<M: Mask> SetSystem<M> {
    pub fn new(ground: usize, bases: Vec<M>) -> Result<Self, SetSystemError> {
        if ground > M::WIDTH {
            return Err(SetSystemError::GroundTooLarge { ground, width: M::WIDTH });
        }
        if bases.is_empty() {
            return Err(SetSystemError::Empty);
        }
        let full = M::full(ground);
        let mut seen = HashMap::with_capacity(bases.len());
        for (index, &b) in bases.iter().enumerate() {
            if let Some(element) = (b & !full).elements().next() {
                return Err(SetSystemError::ElementOutOfRange { index, element, ground });
            }
            if let Some(&first) = seen.get(&b) {
                return Err(SetSystemError::Duplicate { index, first });
            }
            seen.insert(b, index);
        }
        Ok(SetSystem { ground, bases })
    }

    pub fn from_sets(ground: usize, sets: &[Vec<usize>]) -> Result<Self, SetSystemError> {
        if ground > M::WIDTH {
            return Err(SetSystemError::GroundTooLarge { ground, width: M::WIDTH });
        }
        for (index, s) in sets.iter().enumerate() {
            if let Some(&element) = s.iter().find(|&&e| e >= ground) {
                return Err(SetSystemError::ElementOutOfRange { index, element, ground });
            }
        }
        Self::new(ground, sets.iter().map(|s| M::from_elements(s)).collect())
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn bases(&self) -> &[M] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Same family with bases in ascending mask order.
    pub fn sorted(&self) -> Self {
        let mut bases = self.bases.clone();
        bases.sort_unstable();
        SetSystem { ground: self.ground, bases }
    }

    /// Renames ground elements by `perm` (element `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let bases = self
            .bases
            .iter()
            .map(|b| b.elements().fold(M::zero(), |m, i| m | M::bit(perm[i])))
            .collect();
        SetSystem { ground: self.ground, bases }
    }
}

/// Outcome of an exchange-axiom check. Failure witnesses name the pair of
/// bases and the element `a ∈ A \ B` (or `a ∈ A Δ B`) with no valid partner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ExchangeVerdict<M: Mask> {
    Holds,
    CardinalityMismatch { first: M, other: M },
    ExchangeFails { a_set: M, b_set: M, element: usize },
}

impl<M: Mask> ExchangeVerdict<M> {
    pub fn holds(&self) -> bool {
        matches!(self, ExchangeVerdict::Holds)
    }
}

pub fn verify_matroid<M: Mask>(ss: &SetSystem<M>) -> ExchangeVerdict<M> {
    let first = ss.bases[0];
    if let Some(&other) = ss.bases.iter().find(|b| b.size() != first.size()) {
        return ExchangeVerdict::CardinalityMismatch { first, other };
    }
    let family: HashSet<M> = ss.bases.iter().copied().collect();
    first_failure(ss, |a_set, b_set| {
        (a_set & !b_set).elements().find(|&a| {
            !(b_set & !a_set).elements().any(|b| family.contains(&(a_set ^ M::bit(a) ^ M::bit(b))))
        })
    })
}

/// Symmetric exchange: for `a ∈ A Δ B` some `b ∈ A Δ B` (possibly `a`) has
/// `A Δ {a, b}` in the family; sizes must share one parity.
pub fn verify_even_delta_matroid<M: Mask>(ss: &SetSystem<M>) -> ExchangeVerdict<M> {
    let first = ss.bases[0];
    if let Some(&other) = ss.bases.iter().find(|b| b.size() % 2 != first.size() % 2) {
        return ExchangeVerdict::CardinalityMismatch { first, other };
    }
    let family: HashSet<M> = ss.bases.iter().copied().collect();
    first_failure(ss, |a_set, b_set| {
        let diff = a_set ^ b_set;
        diff.elements().find(|&a| {
            !diff.elements().any(|b| family.contains(&(a_set ^ M::bit(a) ^ (M::bit(b) & !M::bit(a)))))
        })
    })
}

/// First `(A, B, a)` in family order where `bad` reports an element.
fn first_failure<M: Mask>(ss: &SetSystem<M>, bad: impl Fn(M, M) -> Option<usize> + Sync) -> ExchangeVerdict<M> {
    ss.bases
        .par_iter()
        .find_map_first(|&a_set| {
            ss.bases.iter().find_map(|&b_set| {
                bad(a_set, b_set).map(|element| ExchangeVerdict::ExchangeFails { a_set, b_set, element })
            })
        })
        .unwrap_or(ExchangeVerdict::Holds)
}

/// A basis graph with the basis behind every vertex. Vertices follow
/// ascending mask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisGraph<M: Mask = u64> {
    pub graph: Graph,
    pub bases: Vec<M>,
}

impl<M: Mask> BasisGraph<M> {
    pub fn vertex_of(&self, basis: M) -> Option<usize> {
        self.bases.binary_search(&basis).ok()
    }
}

/// Bases adjacent iff their symmetric difference has exactly two elements.
pub fn basis_graph<M: Mask>(ss: &SetSystem<M>) -> BasisGraph<M> {
    let bases = ss.sorted().bases;
    let m = ss.ground;
    let pair_count = m * m.saturating_sub(1) / 2;
    let adj: Vec<Vec<usize>> = if bases.len() <= pair_count {
        (0..bases.len())
            .into_par_iter()
            .map(|i| (0..bases.len()).filter(|&j| (bases[i] ^ bases[j]).size() == 2).collect())
            .collect()
    } else {
        let index: HashMap<M, usize> = bases.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        bases
            .par_iter()
            .map(|&b| {
                let mut nbrs = Vec::new();
                for x in 0..m {
                    for y in x + 1..m {
                        if let Some(&j) = index.get(&(b ^ M::bit(x) ^ M::bit(y))) {
                            nbrs.push(j);
                        }
                    }
                }
                nbrs
            })
            .collect()
    };
    BasisGraph { graph: Graph::from_adjacency_unchecked(adj), bases }
}

/// Default cap on generated family sizes.
pub const DEFAULT_BASES_BUDGET: usize = 1 << 22;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `0..m` in ascending mask order.
pub fn uniform_matroid<M: Mask>(m: usize, k: usize, budget: usize) -> Result<SetSystem<M>, SetSystemError> {
    assert!(k <= m, "rank {k} exceeds ground size {m}");
    if m > M::WIDTH {
        return Err(SetSystemError::GroundTooLarge { ground: m, width: M::WIDTH });
    }
    let needed = binomial(m, k);
    if needed > budget as u128 {
        return Err(SetSystemError::BudgetExceeded { needed, budget });
    }
    let mut bases = Vec::with_capacity(needed as usize);
    if k == 0 {
        bases.push(M::zero());
    } else {
        // Gosper's hack: next larger mask with the same popcount.
        let last = M::full(k) << (m - k);
        let mut x = M::full(k);
        loop {
            bases.push(x);
            if x == last {
                break;
            }
            let c = x & (!x + M::one());
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
    }
    SetSystem::new(m, bases)
}

/// `M_{n,n}`: all `n`-subsets of a `2n`-set.
pub fn complete_matroid<M: Mask>(n: usize, budget: usize) -> Result<SetSystem<M>, SetSystemError> {
    uniform_matroid(2 * n, n, budget)
}

/// All even-cardinality subsets of `0..m`, ascending.
pub fn even_delta_free<M: Mask>(m: usize, budget: usize) -> Result<SetSystem<M>, SetSystemError> {
    if m > M::WIDTH {
        return Err(SetSystemError::GroundTooLarge { ground: m, width: M::WIDTH });
    }
    let needed = if m == 0 { 1 } else { 1u128 << (m - 1) };
    if needed > budget as u128 {
        return Err(SetSystemError::BudgetExceeded { needed, budget });
    }
    let bases = (0..(1u128 << m))
        .filter(|x| x.count_ones() % 2 == 0)
        .map(|x| <M as num_traits::NumCast>::from(x).unwrap())
        .collect();
    SetSystem::new(m, bases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_distances, certificate};

    fn sets(m: usize, list: &[&[usize]]) -> SetSystem {
        SetSystem::from_sets(m, &list.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn mask_helpers() {
        assert_eq!(0b1011u64.elements().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(u64::full(64), u64::MAX);
        assert_eq!(u128::full(3), 7);
        assert_eq!(u32::from_elements(&[2, 4]), 0b10100);
    }

    #[test]
    fn set_system_validation() {
        assert_eq!(SetSystem::<u64>::new(3, vec![]), Err(SetSystemError::Empty));
        assert_eq!(
            SetSystem::<u64>::new(2, vec![0b1, 0b100]),
            Err(SetSystemError::ElementOutOfRange { index: 1, element: 2, ground: 2 })
        );
        assert_eq!(
            SetSystem::<u64>::new(2, vec![0b1, 0b1]),
            Err(SetSystemError::Duplicate { index: 1, first: 0 })
        );
        assert!(matches!(SetSystem::<u32>::new(40, vec![0]), Err(SetSystemError::GroundTooLarge { .. })));
    }

    #[test]
    fn matroid_axiom() {
        assert!(verify_matroid(&uniform_matroid::<u64>(4, 2, 100).unwrap()).holds());
        assert_eq!(
            verify_matroid(&sets(4, &[&[0, 1], &[2, 3]])),
            ExchangeVerdict::ExchangeFails { a_set: 0b0011, b_set: 0b1100, element: 0 }
        );
        assert!(matches!(verify_matroid(&sets(2, &[&[0], &[0, 1]])), ExchangeVerdict::CardinalityMismatch { .. }));
    }

    #[test]
    fn even_delta_axiom() {
        assert!(verify_even_delta_matroid(&sets(2, &[&[], &[0, 1]])).holds());
        assert!(verify_even_delta_matroid(&even_delta_free::<u64>(4, 100).unwrap()).holds());
        assert_eq!(
            verify_even_delta_matroid(&sets(4, &[&[], &[0, 1, 2, 3]])),
            ExchangeVerdict::ExchangeFails { a_set: 0, b_set: 0b1111, element: 0 }
        );
    }

    #[test]
    fn generators() {
        assert_eq!(uniform_matroid::<u64>(4, 2, 100).unwrap().len(), 6);
        assert_eq!(complete_matroid::<u64>(4, 100).unwrap().len(), 70);
        assert_eq!(uniform_matroid::<u64>(3, 0, 100).unwrap().bases(), &[0]);
        assert!(matches!(uniform_matroid::<u64>(20, 10, 1000), Err(SetSystemError::BudgetExceeded { .. })));
        let u = uniform_matroid::<u128>(70, 2, 10_000).unwrap();
        assert_eq!(u.len(), 2415);
        assert!(u.bases().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(even_delta_free::<u64>(4, 100).unwrap().len(), 8);
    }

    #[test]
    fn basis_graph_examples() {
        let oct = basis_graph(&uniform_matroid::<u64>(4, 2, 100).unwrap());
        assert_eq!(oct.graph.edge_count(), 12);
        assert_eq!(certificate(&oct.graph, None), certificate(&Graph::octahedron(), None));
        for (i, &b) in oct.bases.iter().enumerate() {
            let comp = oct.vertex_of(b ^ 0b1111).unwrap();
            assert!(!oct.graph.has_edge(i, comp));
        }
        let m33 = basis_graph(&complete_matroid::<u64>(3, 100).unwrap());
        assert_eq!(m33.graph.n(), 20);
        assert_eq!(m33.graph.edge_count(), 90);
        assert!((0..20).all(|v| m33.graph.degree(v) == 9));
        let single = basis_graph(&sets(3, &[&[0, 2]]));
        assert_eq!(single.graph, Graph::empty(1));
    }

    #[test]
    fn matroid_distance_is_half_symmetric_difference() {
        let m33 = basis_graph(&complete_matroid::<u64>(3, 100).unwrap());
        for s in 0..20 {
            let d = bfs_distances(&m33.graph, s);
            for t in 0..20 {
                assert_eq!(2 * d.of(t) as usize, (m33.bases[s] ^ m33.bases[t]).size());
            }
        }
    }
}
