//! Combinatorial weights on `A_n` and the rank identities they satisfy.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::basis_graph::{weight_of, Decomposition, VertexSubset, WeightKey};
use crate::error::{Error, Result};
use crate::homology::HomologyReport;
use crate::root_system::{DynkinType, RootSystem};

/// `(i_0, ..., i_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CombinatorialWeight(pub Vec<i64>);

impl CombinatorialWeight {
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `(n - i_n, ..., n - i_0)`.
    pub fn reflected(&self) -> Self {
        let n = self.0.len() as i64 - 1;
        CombinatorialWeight(self.0.iter().rev().map(|i| n - i).collect())
    }

    /// `(i_n, i_0, ..., i_{n-1})`.
    pub fn rotated(&self) -> Self {
        let mut v = self.0.clone();
        v.rotate_right(1);
        CombinatorialWeight(v)
    }

    pub fn is_permutation_of(&self, values: &[i64]) -> bool {
        let mut a = self.0.clone();
        let mut b = values.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl fmt::Display for CombinatorialWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `n` for `A_n`.
pub fn type_a_rank(system: &RootSystem) -> Result<usize> {
    if system.dynkin_type == DynkinType::A {
        Ok(system.rank)
    } else {
        Err(Error::NotTypeA)
    }
}

/// `(i, j)` with `e = e_{i,j}`: the coordinates holding `-2` and `+2`.
fn ends(system: &RootSystem, e: usize) -> (usize, usize) {
    let c = system.root(e).coords();
    let i = c
        .iter()
        .position(|&x| x < 0)
        .expect("A_n roots have a negative coordinate");
    let j = c
        .iter()
        .position(|&x| x > 0)
        .expect("A_n roots have a positive coordinate");
    (i, j)
}

/// `i_k = #{t : e_{k,t} ∈ σ} + #{s : e_{s,k} ∉ σ}`.
pub fn combinatorial_weight_of(
    system: &RootSystem,
    sigma: VertexSubset,
) -> Result<CombinatorialWeight> {
    let n = type_a_rank(system)?;
    let mut out = vec![0i64; n + 1];
    for e in 0..system.num_roots() {
        let (i, j) = ends(system, e);
        if sigma.contains(e) {
            out[i] += 1;
        } else {
            out[j] += 1;
        }
    }
    Ok(CombinatorialWeight(out))
}

/// `ω + ρ` with `ρ = (n/2, ..., n/2)`; in doubled coordinates `(α_k + n) / 2`.
pub fn weight_translation(system: &RootSystem, alpha: &WeightKey) -> Result<CombinatorialWeight> {
    let n = type_a_rank(system)? as i64;
    alpha
        .vector()
        .coords()
        .iter()
        .map(|&a| {
            let twice = a + n;
            (twice % 2 == 0).then_some(twice / 2)
        })
        .collect::<Option<Vec<_>>>()
        .map(CombinatorialWeight)
        .ok_or_else(|| Error::NotIntegral(alpha.vector().clone()))
}

/// Number of subsets where the combinatorial weight differs from the translated weight.
pub fn translation_mismatches(system: &RootSystem) -> Result<u64> {
    let width = system.num_roots();
    let mut bad = 0;
    for bits in 0..1u32 << width {
        let s = VertexSubset::new(bits);
        if combinatorial_weight_of(system, s)? != weight_translation(system, &weight_of(system, s))?
        {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Neighbor-count ranks keyed by combinatorial weight.
pub fn combinatorial_ranks(
    system: &RootSystem,
    decomposition: &Decomposition,
) -> Result<BTreeMap<CombinatorialWeight, usize>> {
    decomposition
        .components
        .iter()
        .map(|c| Ok((weight_translation(system, &c.weight)?, c.rank)))
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PairCheck {
    pub checked: usize,
    pub failures: Vec<(CombinatorialWeight, CombinatorialWeight)>,
}

impl PairCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `r(.., j+1, .., i-1, ..) = r(.., j, .., i, ..) + i - j - 1` for every ordered pair
/// of positions where both weights occur.
pub fn rank_recursion_check(ranks: &BTreeMap<CombinatorialWeight, usize>) -> PairCheck {
    let mut out = PairCheck::default();
    for (w, &r) in ranks {
        let len = w.0.len();
        for p in 0..len {
            for q in (0..len).filter(|&q| q != p) {
                let (j, i) = (w.0[p], w.0[q]);
                let mut moved = w.0.clone();
                moved[p] = j + 1;
                moved[q] = i - 1;
                let moved = CombinatorialWeight(moved);
                if let Some(&r2) = ranks.get(&moved) {
                    out.checked += 1;
                    if r2 as i64 != r as i64 + i - j - 1 {
                        out.failures.push((w.clone(), moved));
                    }
                }
            }
        }
    }
    out
}

/// Weights where "rank zero" and "permutation of `(0, 1, ..., n)`" disagree.
pub fn rank_zero_mismatches(
    ranks: &BTreeMap<CombinatorialWeight, usize>,
) -> Vec<CombinatorialWeight> {
    ranks
        .iter()
        .filter(|(w, &r)| {
            let identity: Vec<i64> = (0..w.0.len() as i64).collect();
            (r == 0) != w.is_permutation_of(&identity)
        })
        .map(|(w, _)| w.clone())
        .collect()
}

/// `(1, 1, 2, ..., n-1, n, n)`, a weight of `A_{n+1}`.
pub fn doubled_ends_tuple(n: usize) -> Vec<i64> {
    let n = n as i64;
    std::iter::once(1)
        .chain(1..=n)
        .chain(std::iter::once(n))
        .collect()
}

/// On `A_m`, every weight permuting `(1, 1, 2, ..., m-2, m-1, m-1)` has rank `m - 1`.
/// Returns `(weights found, weights with another rank)`.
pub fn doubled_ends_rank_check(
    ranks: &BTreeMap<CombinatorialWeight, usize>,
) -> (usize, Vec<CombinatorialWeight>) {
    let Some(m) = ranks.keys().next().map(|w| w.0.len() - 1) else {
        return (0, Vec::new());
    };
    if m < 2 {
        return (0, Vec::new());
    }
    let tuple = doubled_ends_tuple(m - 1);
    let mut found = 0;
    let mut bad = Vec::new();
    for (w, &r) in ranks {
        if w.is_permutation_of(&tuple) {
            found += 1;
            if r != m - 1 {
                bad.push(w.clone());
            }
        }
    }
    (found, bad)
}

/// Degree shift of the rotation isomorphism `Λ(i_0, ..., i_n) ≅ Λ(i_n, i_0, ..., i_{n-1})`:
/// degree `k` corresponds to `k + 2 i_n - n`.
pub fn rotation_shift(w: &CombinatorialWeight) -> i64 {
    let n = w.0.len() as i64 - 1;
    2 * w.0[n as usize] - n
}

/// Weights whose image under `f` is not a weight.
pub fn closure_failures(
    ranks: &BTreeMap<CombinatorialWeight, usize>,
    f: impl Fn(&CombinatorialWeight) -> CombinatorialWeight,
) -> Vec<CombinatorialWeight> {
    ranks
        .keys()
        .filter(|w| !ranks.contains_key(&f(w)))
        .cloned()
        .collect()
}

/// Compares `(free, torsion)` per degree, with `b` read at degree `k + shift`.
pub fn reports_match(a: &HomologyReport, b: &HomologyReport, shift: i64) -> bool {
    let degrees: std::collections::BTreeSet<i64> = a
        .degrees
        .keys()
        .map(|&k| k as i64)
        .chain(b.degrees.keys().map(|&k| k as i64 - shift))
        .collect();
    degrees.into_iter().all(|k| {
        let x = usize::try_from(k).map(|k| a.get(k)).unwrap_or_default();
        let y = usize::try_from(k + shift)
            .map(|k| b.get(k))
            .unwrap_or_default();
        x.free == y.free && x.torsion == y.torsion
    })
}

/// For each weight, compares its report with the report at `f(w)`, at zero shift.
/// Returns `(pairs compared, pairs that differ)`.
pub fn paired_report_check(
    system: &RootSystem,
    reports: &[HomologyReport],
    f: impl Fn(&CombinatorialWeight) -> CombinatorialWeight,
    shift: impl Fn(&CombinatorialWeight) -> i64,
) -> Result<PairCheck> {
    let by_weight: BTreeMap<CombinatorialWeight, &HomologyReport> = reports
        .iter()
        .map(|r| Ok((weight_translation(system, &r.weight)?, r)))
        .collect::<Result<_>>()?;
    let mut out = PairCheck::default();
    for (w, a) in &by_weight {
        let image = f(w);
        let Some(b) = by_weight.get(&image) else {
            out.failures.push((w.clone(), image));
            continue;
        };
        out.checked += 1;
        if !reports_match(a, b, shift(w)) {
            out.failures.push((w.clone(), image));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis_graph::decompose;
    use crate::homology::homology_of;
    use crate::root_system::build_root_system;
    use crate::weight_complex::{build_complex, Direction};

    #[test]
    fn translation_examples() {
        for n in 1..=3 {
            let sys = build_root_system(DynkinType::A, n).unwrap();
            let empty = combinatorial_weight_of(&sys, VertexSubset::EMPTY).unwrap();
            assert_eq!(empty.0, (0..=n as i64).collect::<Vec<_>>());
            assert_eq!(
                empty,
                weight_translation(&sys, &WeightKey(sys.rho.clone())).unwrap()
            );
            let full = combinatorial_weight_of(&sys, VertexSubset::full(sys.num_roots())).unwrap();
            assert_eq!(full.sum(), (n * (n + 1) / 2) as i64);
            assert_eq!(translation_mismatches(&sys).unwrap(), 0);
        }
        let sys = build_root_system(DynkinType::A, 2).unwrap();
        let odd = WeightKey(crate::ExactVector::new(vec![1, 0, -1]));
        assert!(matches!(
            weight_translation(&sys, &odd),
            Err(Error::NotIntegral(_))
        ));
        let b2 = build_root_system(DynkinType::B, 2).unwrap();
        assert!(matches!(
            combinatorial_weight_of(&b2, VertexSubset::EMPTY),
            Err(Error::NotTypeA)
        ));
    }

    #[test]
    fn adding_a_root_subtracts_it() {
        let sys = build_root_system(DynkinType::A, 3).unwrap();
        for bits in 0..1u32 << sys.num_roots() {
            let s = VertexSubset::new(bits);
            let w = combinatorial_weight_of(&sys, s).unwrap();
            for e in (0..sys.num_roots()).filter(|&e| !s.contains(e)) {
                let (i, j) = ends(&sys, e);
                let mut expect = w.0.clone();
                expect[i] += 1;
                expect[j] -= 1;
                let grown = VertexSubset::new(bits | 1 << e);
                assert_eq!(combinatorial_weight_of(&sys, grown).unwrap().0, expect);
            }
        }
    }

    #[test]
    fn rank_identities_small() {
        for n in 2..=4 {
            let sys = build_root_system(DynkinType::A, n).unwrap();
            let d = decompose(&sys).unwrap();
            let ranks = combinatorial_ranks(&sys, &d).unwrap();
            let rec = rank_recursion_check(&ranks);
            assert!(
                rec.checked > 0 && rec.passed(),
                "A{n}: {:?}",
                rec.failures.first()
            );
            assert!(rank_zero_mismatches(&ranks).is_empty());
            let (found, bad) = doubled_ends_rank_check(&ranks);
            assert!(found > 0 && bad.is_empty(), "A{n}");
            assert!(closure_failures(&ranks, CombinatorialWeight::reflected).is_empty());
            assert!(closure_failures(&ranks, CombinatorialWeight::rotated).is_empty());
            assert!(ranks.keys().all(|w| w.sum() == (n * (n + 1) / 2) as i64
                && w.0.iter().all(|&i| (0..=n as i64).contains(&i))));
        }
        assert_eq!(doubled_ends_tuple(3), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn reflection_preserves_cohomology() {
        let sys = build_root_system(DynkinType::A, 3).unwrap();
        let d = decompose(&sys).unwrap();
        let reports: Vec<_> = d
            .components
            .iter()
            .map(|c| {
                homology_of(&build_complex(c, Direction::Cochain).unwrap(), c.rank, &[]).unwrap()
            })
            .collect();
        let check =
            paired_report_check(&sys, &reports, CombinatorialWeight::reflected, |_| 0).unwrap();
        assert!(check.passed(), "{:?}", check.failures.first());
    }

    #[test]
    fn rotation_shifts_cohomology() {
        for n in 2..=4 {
            let sys = build_root_system(DynkinType::A, n).unwrap();
            let d = decompose(&sys).unwrap();
            let reports: Vec<_> = d
                .components
                .iter()
                .map(|c| {
                    homology_of(&build_complex(c, Direction::Cochain).unwrap(), c.rank, &[])
                        .unwrap()
                })
                .collect();
            let check =
                paired_report_check(&sys, &reports, CombinatorialWeight::rotated, rotation_shift)
                    .unwrap();
            assert!(check.passed(), "A{n}: {:?}", check.failures.first());
            // Unshifted comparison fails on the singletons, which move degree.
            let unshifted =
                paired_report_check(&sys, &reports, CombinatorialWeight::rotated, |_| 0).unwrap();
            assert!(!unshifted.passed());
        }
    }
}
