//! The basis graph on all subsets of `R+`.
//!
//! Two subsets are adjacent when one trades a root `e` for a pair `e1, e2`
//! with `e = e1 + e2`. Every edge preserves the weight `rho - Σσ`, so the graph
//! splits into weight components ([`decompose`]). This module also carries
//! the twisted Weyl action on subsets, the index `r(e, α)` and both sign
//! functions.

mod decompose;
pub mod dot;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{RootSystem, WeylElement};
use crate::vector::ExactVector;

pub use decompose::{
    decompose, decompose_with, Decomposition, Edge, WeightComponent, MAX_ENUMERABLE_ROOTS,
    STORED_GRAPH_ROOTS,
};
pub use verify::{verify_component, CheckKind, CheckTally, Failure, VerificationReport};

/// A subset of `R+`; bit `i` is the root with index `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSubset {
    pub bits: u32,
}

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset { bits: 0 };

    pub fn new(bits: u32) -> Self {
        VertexSubset { bits }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        VertexSubset {
            bits: indices.into_iter().fold(0, |acc, i| acc | 1 << i),
        }
    }

    pub fn full(width: usize) -> Self {
        VertexSubset {
            bits: low_mask(width),
        }
    }

    pub fn degree(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn complement(self, width: usize) -> Self {
        VertexSubset {
            bits: !self.bits & low_mask(width),
        }
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Number of members with index `<= k`.
    fn count_upto(self, k: usize) -> u32 {
        (u64::from(self.bits) & ((1u64 << (k + 1)) - 1)).count_ones()
    }
}

fn low_mask(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// `rho - Σ_{e∈σ} e` in doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightKey(pub ExactVector);

impl WeightKey {
    pub fn vector(&self) -> &ExactVector {
        &self.0
    }

    pub fn negated(&self) -> WeightKey {
        WeightKey(-&self.0)
    }
}

impl fmt::Display for WeightKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn weight_of(system: &RootSystem, sigma: VertexSubset) -> WeightKey {
    let mut w = system.rho.clone();
    for i in sigma.indices() {
        w.sub_assign(system.root(i));
    }
    WeightKey(w)
}

/// Adjacency in the basis graph: one side has exactly one extra root `e`, the
/// other exactly two extra roots `e1, e2`, and `e = e1 + e2`.
pub fn are_adjacent(system: &RootSystem, sigma: VertexSubset, tau: VertexSubset) -> bool {
    oriented(system, sigma, tau).is_some()
}

/// Returns `(upper, lower)` where `upper` holds the pair and `lower` the sum.
fn oriented(
    system: &RootSystem,
    a: VertexSubset,
    b: VertexSubset,
) -> Option<(VertexSubset, VertexSubset)> {
    let only_a = VertexSubset::new(a.bits & !b.bits);
    let only_b = VertexSubset::new(b.bits & !a.bits);
    let check = |single: VertexSubset, pair: VertexSubset| {
        if single.degree() != 1 || pair.degree() != 2 {
            return false;
        }
        let mut it = pair.indices();
        let (i, j) = (it.next().unwrap(), it.next().unwrap());
        system.root_sum(i, j) == Some(single.bits.trailing_zeros() as usize)
    };
    if check(only_a, only_b) {
        Some((b, a))
    } else if check(only_b, only_a) {
        Some((a, b))
    } else {
        None
    }
}

/// All basis-graph neighbors of `sigma`, generated from the exchange rule alone.
pub fn neighbors(system: &RootSystem, sigma: VertexSubset) -> Vec<VertexSubset> {
    let n = system.num_roots();
    let mut out = Vec::new();
    for e in sigma.indices() {
        for &(i, j) in system.decompositions(e) {
            if !sigma.contains(i) && !sigma.contains(j) {
                out.push(VertexSubset::new(sigma.bits & !(1 << e) | 1 << i | 1 << j));
            }
        }
    }
    for e in 0..n {
        if sigma.contains(e) {
            continue;
        }
        for &(i, j) in system.decompositions(e) {
            if sigma.contains(i) && sigma.contains(j) {
                out.push(VertexSubset::new(
                    sigma.bits & !(1 << i) & !(1 << j) | 1 << e,
                ));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Edge sign `(-1)^(a+b+c)` for an edge whose larger end `upper` holds `e_u, e_v`
/// (`u < v`) and whose smaller end `lower` holds `e_w`: `a`, `b` count members of
/// `upper` up to `u`, `v`; `c` counts members of `lower` up to `w`.
pub(crate) fn oriented_sign(upper: VertexSubset, lower: VertexSubset) -> i8 {
    let pair = upper.bits & !lower.bits;
    let u = pair.trailing_zeros() as usize;
    let v = (31 - pair.leading_zeros()) as usize;
    let w = (lower.bits & !upper.bits).trailing_zeros() as usize;
    let parity = upper.count_upto(u) + upper.count_upto(v) + lower.count_upto(w);
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of the edge `{sigma, tau}`, symmetric in its arguments.
pub fn edge_sign(system: &RootSystem, sigma: VertexSubset, tau: VertexSubset) -> Result<i8> {
    let (upper, lower) =
        oriented(system, sigma, tau).ok_or(Error::NotAnEdge { a: sigma, b: tau })?;
    Ok(oriented_sign(upper, lower))
}

/// `(-1)^(i_1 + ... + i_s)` with 1-based positions in the fixed order.
pub fn vertex_sign(sigma: VertexSubset) -> i8 {
    let total: usize = sigma.indices().map(|i| i + 1).sum();
    if total.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Twisted action `w ∘ σ = w*(σ ∪ -σᶜ) ∩ R+`.
pub fn circ_action(system: &RootSystem, w: &WeylElement, sigma: VertexSubset) -> VertexSubset {
    let mut bits = 0u32;
    for i in 0..system.num_roots() {
        let img = w.images[i];
        if sigma.contains(i) != img.negative {
            bits |= 1 << img.index;
        }
    }
    VertexSubset::new(bits)
}

/// The integer `r` with `r_e * α - α = r e`.
pub fn index_of(system: &RootSystem, e: usize, alpha: &WeightKey) -> Result<i64> {
    let diff = &system.reflect(e, alpha.vector()) - alpha.vector();
    diff.multiple_of(system.root(e))
        .ok_or_else(|| Error::NotProportional {
            root: e,
            weight: alpha.vector().clone(),
        })
}

/// Partition of a component's vertices into those containing `e` and the rest.
pub fn split_by_root(
    component: &WeightComponent,
    e: usize,
) -> (Vec<VertexSubset>, Vec<VertexSubset>) {
    component.vertices.iter().partition(|v| v.contains(e))
}

/// The fourth vertex of the diamond through the 2-path `a - b - c`.
pub fn diamond_completion(
    system: &RootSystem,
    a: VertexSubset,
    b: VertexSubset,
    c: VertexSubset,
) -> Result<VertexSubset> {
    let invalid = |reason| Err(Error::InvalidPath { a, b, c, reason });
    if a == c {
        return invalid("endpoints coincide");
    }
    if !are_adjacent(system, a, b) || !are_adjacent(system, b, c) {
        return invalid("consecutive vertices are not adjacent");
    }
    if are_adjacent(system, a, c) {
        return invalid("endpoints are adjacent (triangle)");
    }
    let from_c = neighbors(system, c);
    let candidates: Vec<VertexSubset> = neighbors(system, a)
        .into_iter()
        .filter(|d| *d != b && from_c.binary_search(d).is_ok())
        .collect();
    match candidates.as_slice() {
        [] => Err(Error::NoDiamond { a, b, c }),
        [d] if are_adjacent(system, b, *d) => Err(Error::NoDiamond { a, b, c }),
        [d] => Ok(*d),
        many => Err(Error::MultipleDiamonds {
            a,
            b,
            c,
            count: many.len(),
        }),
    }
}
