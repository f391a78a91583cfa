//! Per-weight signed chain and cochain complexes as sparse integer matrices.

use std::io::{self, Write};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::basis_graph::{vertex_sign, VertexSubset, WeightComponent, WeightKey};
use crate::error::{Error, Result};
use crate::linalg::SparseIntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `d` lowers degree by one.
    Chain,
    /// `δ` raises degree by one.
    Cochain,
}

#[derive(Clone, Debug)]
pub struct GradedMatrixComplex {
    pub weight: WeightKey,
    pub direction: Direction,
    pub min_degree: usize,
    /// `basis[k - min_degree]`: the vertices of degree `k`, ascending by bitmask.
    pub basis: Vec<Vec<VertexSubset>>,
    /// `maps[i]` joins degrees `min_degree + i` and `min_degree + i + 1`. For a chain
    /// complex it is `D_{k+1}` (rows index degree `k`); for a cochain complex its transpose.
    maps: Vec<SparseIntMatrix>,
}

impl GradedMatrixComplex {
    pub fn max_degree(&self) -> usize {
        self.min_degree + self.basis.len() - 1
    }

    pub fn degrees(&self) -> RangeInclusive<usize> {
        self.min_degree..=self.max_degree()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.slot(k).map_or(0, |i| self.basis[i].len())
    }

    fn slot(&self, k: usize) -> Option<usize> {
        k.checked_sub(self.min_degree)
            .filter(|&i| i < self.basis.len())
    }

    /// The chain boundary `D_k` from degree `k` to `k - 1`, whatever the direction.
    pub fn boundary(&self, k: usize) -> Option<SparseIntMatrix> {
        let i = self.slot(k)?.checked_sub(1)?;
        Some(match self.direction {
            Direction::Chain => self.maps[i].clone(),
            Direction::Cochain => self.maps[i].transpose(),
        })
    }

    /// The differential leaving degree `k`.
    pub fn outgoing(&self, k: usize) -> Option<&SparseIntMatrix> {
        let i = self.slot(k)?;
        match self.direction {
            Direction::Chain => i.checked_sub(1).map(|i| &self.maps[i]),
            Direction::Cochain => self.maps.get(i),
        }
    }

    /// The differential arriving in degree `k`.
    pub fn incoming(&self, k: usize) -> Option<&SparseIntMatrix> {
        let i = self.slot(k)?;
        match self.direction {
            Direction::Chain => self.maps.get(i),
            Direction::Cochain => i.checked_sub(1).map(|i| &self.maps[i]),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k % 2 == 0 { 1 } else { -1 } * self.dim(k) as i64)
            .sum()
    }

    /// Plain-text dump: per map a header `degree k rows m cols n`, then one
    /// `i j ±1` line per entry, 0-based. `k` is the source degree.
    pub fn write_triplets(&self, out: &mut impl Write) -> io::Result<()> {
        for k in self.degrees() {
            if let Some(m) = self.outgoing(k) {
                writeln!(out, "degree {k} rows {} cols {}", m.rows(), m.cols())?;
                for (i, j, v) in m.entries() {
                    writeln!(out, "{i} {j} {v}")?;
                }
            }
        }
        Ok(())
    }
}

/// Assembles `(Λ(α), d)` or `(Λ(α), δ)` from a component's signed edges and
/// checks that consecutive differentials compose to zero.
pub fn build_complex(
    component: &WeightComponent,
    direction: Direction,
) -> Result<GradedMatrixComplex> {
    assert!(
        component.has_graph(),
        "component graph not built; use Decomposition::graph"
    );
    let (lo, hi) = component.degree_range;
    let mut basis = vec![Vec::new(); hi - lo + 1];
    let mut position = vec![0usize; component.vertices.len()];
    for (i, v) in component.vertices.iter().enumerate() {
        let level = &mut basis[v.degree() - lo];
        position[i] = level.len();
        level.push(*v);
    }
    let mut triplets: Vec<Vec<(usize, usize, BigInt)>> = vec![Vec::new(); hi - lo];
    for e in &component.edges {
        let lower_degree = component.vertices[e.lower].degree();
        let (row, col) = (position[e.lower], position[e.upper]);
        let entry = match direction {
            Direction::Chain => (row, col, BigInt::from(e.sign)),
            Direction::Cochain => (col, row, BigInt::from(e.sign)),
        };
        triplets[lower_degree - lo].push(entry);
    }
    let maps: Vec<SparseIntMatrix> = triplets
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let (r, c) = (basis[i].len(), basis[i + 1].len());
            match direction {
                Direction::Chain => SparseIntMatrix::from_triplets(r, c, t),
                Direction::Cochain => SparseIntMatrix::from_triplets(c, r, t),
            }
        })
        .collect();
    for i in 1..maps.len() {
        let square = match direction {
            Direction::Chain => maps[i - 1].mul(&maps[i]),
            Direction::Cochain => maps[i].mul(&maps[i - 1]),
        };
        if !square.is_zero() {
            let (from, to) = match direction {
                Direction::Chain => (lo + i + 1, lo + i - 1),
                Direction::Cochain => (lo + i - 1, lo + i + 1),
            };
            return Err(Error::SquareNotZero {
                weight: component.weight.vector().clone(),
                from,
                to,
            });
        }
    }
    Ok(GradedMatrixComplex {
        weight: component.weight.clone(),
        direction,
        min_degree: lo,
        basis,
        maps,
    })
}

/// `ϑ(σ) = φ(σ) σᶜ` from `Λ(α)` to `Λ(-α)`.
#[derive(Clone, Debug)]
pub struct DualityMap {
    pub source_weight: WeightKey,
    pub target_weight: WeightKey,
    /// `(σ, σᶜ, φ(σ))` in the order of the source vertices.
    pub assignment: Vec<(VertexSubset, VertexSubset, i8)>,
}

impl DualityMap {
    pub fn apply(&self, sigma: VertexSubset) -> Option<(VertexSubset, i8)> {
        self.assignment
            .iter()
            .find(|(s, _, _)| *s == sigma)
            .map(|&(_, t, sign)| (t, sign))
    }
}

/// Builds `ϑ` and checks `ϑ d = δ ϑ` entry by entry: every edge `{σ, τ}` of
/// `Λ(α)` must map to an edge `{σᶜ, τᶜ}` of `Λ(-α)` with
/// `φ(σ, τ) φ(τ) = φ(σ) φ(σᶜ, τᶜ)` for `|τ| = |σ| - 1`.
pub fn build_duality(
    width: usize,
    source: &WeightComponent,
    target: &WeightComponent,
) -> Result<DualityMap> {
    if source.weight.negated() != target.weight {
        return Err(Error::NotDual {
            a: source.weight.vector().clone(),
            b: target.weight.vector().clone(),
        });
    }
    let mut assignment = Vec::with_capacity(source.vertices.len());
    for &v in &source.vertices {
        let c = v.complement(width);
        if target.local_index(c).is_none() {
            return Err(Error::IntertwineFailure { vertex: v });
        }
        assignment.push((v, c, vertex_sign(v)));
    }
    if source.edges.len() != target.edges.len() {
        return Err(Error::IntertwineFailure {
            vertex: source.vertices[0],
        });
    }
    for e in &source.edges {
        let (upper, lower) = (source.vertices[e.upper], source.vertices[e.lower]);
        let cu = target
            .local_index(upper.complement(width))
            .expect("checked above");
        let cl = target
            .local_index(lower.complement(width))
            .expect("checked above");
        match target.sign_between(cu, cl) {
            Some(s) if e.sign * vertex_sign(lower) == vertex_sign(upper) * s => {}
            _ => return Err(Error::IntertwineFailure { vertex: upper }),
        }
    }
    Ok(DualityMap {
        source_weight: source.weight.clone(),
        target_weight: target.weight.clone(),
        assignment,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaplacianOutcome {
    pub holds: bool,
    pub first_failure: Option<usize>,
}

/// Checks `D_k D_kᵀ + D_{k+1}ᵀ D_{k+1} = r I` on the chain side at every degree,
/// with `D_k` mapping degree `k` to `k - 1` (so the sum acts on degree `k`).
pub fn laplacian_check(complex: &GradedMatrixComplex, rank: usize) -> LaplacianOutcome {
    for k in complex.degrees() {
        let n = complex.dim(k);
        let mut total = SparseIntMatrix::zero(n, n);
        if let Some(down) = complex.boundary(k) {
            total = total.add(&down.transpose().mul(&down));
        }
        if let Some(up) = complex.boundary(k + 1) {
            total = total.add(&up.mul(&up.transpose()));
        }
        let expected =
            SparseIntMatrix::from_triplets(n, n, (0..n).map(|i| (i, i, BigInt::from(rank))));
        if total != expected {
            return LaplacianOutcome {
                holds: false,
                first_failure: Some(k),
            };
        }
    }
    LaplacianOutcome {
        holds: true,
        first_failure: None,
    }
}

/// Whether every stored entry is `±1`.
pub fn entries_are_units(complex: &GradedMatrixComplex) -> bool {
    complex.degrees().all(|k| {
        complex
            .outgoing(k)
            .is_none_or(|m| m.entries().iter().all(|(_, _, v)| v.abs().is_one()))
    })
}
