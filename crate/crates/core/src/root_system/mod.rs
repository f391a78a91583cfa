//! Positive root systems with exact doubled coordinates.
//!
//! A [`RootSystem`] fixes the positive roots in a canonical total order (see
//! [`order`]), identifies the simple roots, and precomputes the root-sum table
//! used by the basis graph and the signed permutations by which simple
//! reflections act on `R+ ∪ -R+`.

mod order;
mod realization;
pub mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::ExactVector;

pub use weyl::{enumerate_weyl_group, enumerate_weyl_group_with_cap, WeylElement, WeylGroup};

/// Largest `|R+|` enumerated without `large_ok`: `A6` has 21 positive roots.
pub const DEFAULT_MAX_ROOTS: usize = 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    G2,
    F4,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DynkinType::A => "A",
            DynkinType::B => "B",
            DynkinType::C => "C",
            DynkinType::D => "D",
            DynkinType::G2 => "G2",
            DynkinType::F4 => "F4",
        };
        f.write_str(s)
    }
}

impl FromStr for DynkinType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(DynkinType::A),
            "B" => Ok(DynkinType::B),
            "C" => Ok(DynkinType::C),
            "D" => Ok(DynkinType::D),
            "G" | "G2" => Ok(DynkinType::G2),
            "F" | "F4" => Ok(DynkinType::F4),
            other => Err(format!("unknown Dynkin type `{other}`")),
        }
    }
}

impl DynkinType {
    /// Classical `|R+|` for the type, if the rank makes sense for it.
    pub fn num_positive_roots(self, rank: usize) -> Option<usize> {
        match (self, rank) {
            (DynkinType::A, n) if n >= 1 => Some(n * (n + 1) / 2),
            (DynkinType::B | DynkinType::C, n) if n >= 2 => Some(n * n),
            (DynkinType::D, n) if n >= 4 => Some(n * (n - 1)),
            (DynkinType::G2, 2) => Some(6),
            (DynkinType::F4, 4) => Some(24),
            _ => None,
        }
    }

    /// Classical order of the Weyl group.
    pub fn weyl_order(self, rank: usize) -> Option<u64> {
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        match (self, rank) {
            (DynkinType::A, n) if n >= 1 => Some(fact(n + 1)),
            (DynkinType::B | DynkinType::C, n) if n >= 2 => Some((1u64 << n) * fact(n)),
            (DynkinType::D, n) if n >= 4 => Some((1u64 << (n - 1)) * fact(n)),
            (DynkinType::G2, 2) => Some(12),
            (DynkinType::F4, 4) => Some(1152),
            _ => None,
        }
    }

    /// Whether `(self, rank)` is in the desk-scale table.
    fn in_default_table(self, rank: usize) -> bool {
        matches!(
            (self, rank),
            (DynkinType::A, 1..=6)
                | (DynkinType::B, 2..=4)
                | (DynkinType::C, 2..=4)
                | (DynkinType::D, 4)
                | (DynkinType::G2, 2)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub vector: ExactVector,
    /// Position in the fixed total order; also the bit position in a vertex bitmask.
    pub index: usize,
    pub is_simple: bool,
}

/// A root of `R+ ∪ -R+`, given as a positive root index and a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: u16,
    pub negative: bool,
}

impl SignedRoot {
    pub fn positive(index: usize) -> Self {
        SignedRoot {
            index: index as u16,
            negative: false,
        }
    }

    pub fn negate(self) -> Self {
        SignedRoot {
            index: self.index,
            negative: !self.negative,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub dynkin_type: DynkinType,
    pub rank: usize,
    pub positive_roots: Vec<Root>,
    /// Indices into `positive_roots`, ascending.
    pub simple_roots: Vec<usize>,
    /// Half-sum of positive roots (doubled coordinates).
    pub rho: ExactVector,
    /// Inner products of positive roots in doubled coordinates.
    pub gram: Vec<Vec<i64>>,
    lookup: HashMap<ExactVector, usize>,
    sums: Vec<Vec<Option<u16>>>,
    decompositions: Vec<Vec<(usize, usize)>>,
    simple_actions: Vec<Vec<SignedRoot>>,
}

/// Builds a root system from the desk-scale table.
pub fn build_root_system(dynkin_type: DynkinType, rank: usize) -> Result<RootSystem> {
    build_root_system_with(dynkin_type, rank, false)
}

/// Like [`build_root_system`], but `large_ok` also admits `F4` (2^24 subsets).
pub fn build_root_system_with(
    dynkin_type: DynkinType,
    rank: usize,
    large_ok: bool,
) -> Result<RootSystem> {
    let name = format!("{dynkin_type}{rank}");
    let Some(num_roots) = dynkin_type.num_positive_roots(rank) else {
        return Err(Error::UnsupportedType {
            name,
            reason: "the rank is not valid for this type".into(),
        });
    };
    let admitted = dynkin_type.in_default_table(rank)
        || (large_ok && dynkin_type == DynkinType::F4 && rank == 4);
    if !admitted {
        let reason = if dynkin_type == DynkinType::F4 {
            format!("2^{num_roots} subsets need the --large flag")
        } else {
            format!(
                "2^{num_roots} subsets exceed the supported table \
                 (A1..A6, B2..B4, C2..C4, D4, G2; F4 with --large)"
            )
        };
        return Err(Error::UnsupportedType { name, reason });
    }
    Ok(RootSystem::from_vectors(
        dynkin_type,
        rank,
        realization::positive_root_vectors(dynkin_type, rank),
    ))
}

impl RootSystem {
    fn from_vectors(dynkin_type: DynkinType, rank: usize, mut vectors: Vec<Vec<i64>>) -> Self {
        vectors.sort();
        let order = order::bracket_consistent_order(&vectors);
        let vectors: Vec<ExactVector> = order
            .iter()
            .map(|&i| ExactVector::new(vectors[i].clone()))
            .collect();
        let n = vectors.len();
        let dim = vectors[0].dim();

        let lookup: HashMap<ExactVector, usize> = vectors
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();

        let mut sums = vec![vec![None; n]; n];
        let mut decompositions = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if let Some(&k) = lookup.get(&(&vectors[i] + &vectors[j])) {
                    sums[i][j] = Some(k as u16);
                    sums[j][i] = Some(k as u16);
                    decompositions[k].push((i, j));
                }
            }
        }

        let positive_roots: Vec<Root> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| Root {
                vector: v.clone(),
                index: i,
                is_simple: decompositions[i].is_empty(),
            })
            .collect();
        let simple_roots: Vec<usize> = (0..n).filter(|&i| positive_roots[i].is_simple).collect();

        let mut twice_rho = ExactVector::zeros(dim);
        for v in &vectors {
            twice_rho.add_assign(v);
        }
        let rho = twice_rho
            .exact_div(2)
            .expect("half-sum of roots is integral when doubled");

        let gram = vectors
            .iter()
            .map(|u| vectors.iter().map(|v| u.dot(v)).collect())
            .collect();

        let mut system = RootSystem {
            dynkin_type,
            rank,
            positive_roots,
            simple_roots,
            rho,
            gram,
            lookup,
            sums,
            decompositions,
            simple_actions: Vec::new(),
        };
        system.simple_actions = system
            .simple_roots
            .iter()
            .map(|&s| {
                (0..n)
                    .map(|i| {
                        let image = system.reflect(s, &system.positive_roots[i].vector);
                        system
                            .locate(&image)
                            .expect("root systems are closed under simple reflections")
                    })
                    .collect()
            })
            .collect();
        system
    }

    pub fn num_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn root(&self, index: usize) -> &ExactVector {
        &self.positive_roots[index].vector
    }

    pub fn name(&self) -> String {
        match self.dynkin_type {
            DynkinType::G2 | DynkinType::F4 => self.dynkin_type.to_string(),
            t => format!("{t}{}", self.rank),
        }
    }

    /// `v - 2<v,e>/<e,e> e`, with `e` the positive root at `root`.
    ///
    /// Panics if the result leaves the doubled lattice, which cannot happen for
    /// roots and weights.
    pub fn reflect(&self, root: usize, v: &ExactVector) -> ExactVector {
        let e = self.root(root);
        let num = 2 * v.dot(e);
        let den = self.gram[root][root];
        let shift = e
            .scale(num)
            .exact_div(den)
            .unwrap_or_else(|| panic!("reflection of {v} in root {root} is not integral"));
        v - &shift
    }

    /// Positive root index with vector `e1 + e2`, if that sum is a positive root.
    pub fn root_sum(&self, e1: usize, e2: usize) -> Option<usize> {
        self.sums[e1][e2].map(usize::from)
    }

    /// All unordered pairs `(i, j)`, `i < j`, with `root(i) + root(j) == root(e)`.
    pub fn decompositions(&self, e: usize) -> &[(usize, usize)] {
        &self.decompositions[e]
    }

    pub fn index_of_vector(&self, v: &ExactVector) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    /// Finds `v` in `R+ ∪ -R+`.
    pub fn locate(&self, v: &ExactVector) -> Option<SignedRoot> {
        if let Some(i) = self.index_of_vector(v) {
            return Some(SignedRoot::positive(i));
        }
        self.index_of_vector(&-v)
            .map(|i| SignedRoot::positive(i).negate())
    }

    /// Signed image of each positive root under the `k`-th simple reflection.
    pub fn simple_action(&self, k: usize) -> &[SignedRoot] {
        &self.simple_actions[k]
    }

    pub fn signed_vector(&self, r: SignedRoot) -> ExactVector {
        let v = self.root(r.index as usize);
        if r.negative {
            -v
        } else {
            v.clone()
        }
    }
}
