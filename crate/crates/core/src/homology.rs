//! Integral and mod-p homology of the weight complexes, with the global
//! consistency checks (Kostant free part, vanishing, duality).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::basis_graph::WeightKey;
use crate::error::{Error, Result};
use crate::linalg::{prime_power_factors, rank_mod_p, smith_normal_form, SmithForm};
use crate::weight_complex::{Direction, GradedMatrixComplex};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub free: usize,
    /// Prime powers, ascending.
    pub torsion: Vec<u64>,
    /// `p -> dim H_k(F_p)`.
    pub modp: BTreeMap<u64, usize>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty() && self.modp.values().all(|&d| d == 0)
    }

    /// Number of invariant factors divisible by `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        self.torsion.iter().filter(|&&q| q % p == 0).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub weight: WeightKey,
    pub rank_of_weight: usize,
    pub direction: Direction,
    pub euler_characteristic: i64,
    /// Every degree of the complex, including those with zero homology.
    pub degrees: BTreeMap<usize, DegreeHomology>,
}

impl HomologyReport {
    pub fn total_free(&self) -> usize {
        self.degrees.values().map(|d| d.free).sum()
    }

    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .degrees
            .values()
            .flat_map(|d| d.torsion.iter().map(|&q| smallest_prime_factor(q)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_modp_homology(&self, p: u64) -> bool {
        self.degrees
            .values()
            .any(|d| d.modp.get(&p).is_some_and(|&n| n > 0))
    }

    pub fn get(&self, k: usize) -> DegreeHomology {
        self.degrees.get(&k).cloned().unwrap_or_default()
    }
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..).find(|p| q.is_multiple_of(*p)).expect("q > 1")
}

/// `H_k = ker / im` for every degree: free rank from Smith ranks, torsion
/// from the invariant factors of the incoming map, and `F_p` dimensions from
/// independent elimination mod `p`.
pub fn homology_of(
    complex: &GradedMatrixComplex,
    rank_of_weight: usize,
    primes: &[u64],
) -> Result<HomologyReport> {
    let mut snf: BTreeMap<usize, SmithForm> = BTreeMap::new();
    let mut modp: BTreeMap<(usize, u64), usize> = BTreeMap::new();
    // Key each differential by its lower degree so both endpoints share it.
    for k in complex.degrees() {
        if let Some(m) = complex.boundary(k + 1) {
            for &p in primes {
                modp.insert((k, p), rank_mod_p(&m, p)?);
            }
            snf.insert(k, smith_normal_form(&m));
        }
    }
    let lower_key = |k: usize, out: bool| match (complex.direction, out) {
        (Direction::Chain, true) | (Direction::Cochain, false) => k.checked_sub(1),
        (Direction::Chain, false) | (Direction::Cochain, true) => Some(k),
    };
    let mut degrees = BTreeMap::new();
    for k in complex.degrees() {
        let out = lower_key(k, true).and_then(|i| snf.get(&i).map(|s| (i, s)));
        let inc = lower_key(k, false).and_then(|i| snf.get(&i).map(|s| (i, s)));
        let n = complex.dim(k);
        let rank = |x: Option<(usize, &SmithForm)>| x.map_or(0, |(_, s)| s.rank);
        let mut torsion = Vec::new();
        if let Some((_, s)) = inc {
            for d in s.torsion() {
                torsion.extend(prime_power_factors(d)?);
            }
        }
        torsion.sort_unstable();
        let mut dims = BTreeMap::new();
        for &p in primes {
            let r = |x: Option<(usize, &SmithForm)>| x.map_or(0, |(i, _)| modp[&(i, p)]);
            dims.insert(p, n - r(out) - r(inc));
        }
        degrees.insert(
            k,
            DegreeHomology {
                free: n - rank(out) - rank(inc),
                torsion,
                modp: dims,
            },
        );
    }
    Ok(HomologyReport {
        weight: complex.weight.clone(),
        rank_of_weight,
        direction: complex.direction,
        euler_characteristic: complex.euler_characteristic(),
        degrees,
    })
}

/// Universal coefficients: `dim H_k(F_p) = free_k + t_p(H_k) + t_p(H_j)` where `j`
/// is the degree the outgoing differential lands in. Returns the failing `(k, p)`.
pub fn universal_coefficients_mismatch(report: &HomologyReport) -> Option<(usize, u64)> {
    for (&k, h) in &report.degrees {
        let j = match report.direction {
            Direction::Chain => k.checked_sub(1),
            Direction::Cochain => Some(k + 1),
        };
        let target = j.map(|j| report.get(j)).unwrap_or_default();
        for (&p, &dim) in &h.modp {
            if dim != h.free + h.p_torsion_count(p) + target.p_torsion_count(p) {
                return Some((k, p));
            }
        }
    }
    None
}

/// Alternating sum of free ranks equals the alternating count of basis vectors.
pub fn euler_consistent(report: &HomologyReport) -> bool {
    let free: i64 = report
        .degrees
        .iter()
        .map(|(&k, h)| if k % 2 == 0 { 1 } else { -1 } * h.free as i64)
        .sum();
    free == report.euler_characteristic
}

/// Compares `H_k` of `Λ(α)` with `H^{N-k}` of `Λ(-α)`, free rank and torsion.
pub fn duality_mismatch(
    chain: &HomologyReport,
    cochain: &HomologyReport,
    num_roots: usize,
) -> Option<usize> {
    let shifted = |k: usize| num_roots.checked_sub(k).map(|j| cochain.get(j));
    for k in 0..=num_roots {
        let a = chain.get(k);
        let b = shifted(k).unwrap_or_default();
        if a.free != b.free || a.torsion != b.torsion {
            return Some(k);
        }
    }
    None
}

/// Weights whose `F_p` homology is nonzero somewhere.
pub fn vanishing_audit(reports: &[HomologyReport], p: u64) -> Vec<WeightKey> {
    reports
        .iter()
        .filter(|r| r.has_modp_homology(p))
        .map(|r| r.weight.clone())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalSummary {
    /// Total free rank per degree `0..=|R+|`.
    pub betti: Vec<usize>,
    /// Degree to all torsion prime powers in that degree, ascending.
    pub torsion: BTreeMap<usize, Vec<u64>>,
    pub torsion_primes: Vec<u64>,
    pub singleton_weights: Vec<WeightKey>,
    pub length_histogram: Vec<usize>,
    pub violations: Vec<String>,
}

/// Aggregates chain-direction reports and checks them against the Weyl group:
/// free ranks must reproduce the length histogram and live exactly on the
/// rank-zero weights, and every prime seen (as torsion or in `F_p` homology)
/// must divide the rank of its weight.
pub fn global_summary(
    num_roots: usize,
    length_histogram: &[usize],
    reports: &[HomologyReport],
) -> GlobalSummary {
    let mut betti = vec![0; num_roots + 1];
    let mut torsion: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    let mut singleton_weights = Vec::new();
    let mut violations = Vec::new();
    for r in reports {
        for (&k, h) in &r.degrees {
            betti[k] += h.free;
            if !h.torsion.is_empty() {
                torsion.entry(k).or_default().extend(&h.torsion);
            }
        }
        let rank = r.rank_of_weight as u64;
        if rank == 0 {
            singleton_weights.push(r.weight.clone());
            if r.total_free() != 1 {
                violations.push(format!(
                    "rank-zero weight {} has free rank {}",
                    r.weight,
                    r.total_free()
                ));
            }
        } else if r.total_free() != 0 {
            violations.push(format!(
                "weight {} of rank {rank} has rational homology",
                r.weight
            ));
        }
        for p in r.torsion_primes() {
            if !rank.is_multiple_of(p) {
                violations.push(format!(
                    "weight {} of rank {rank} has {p}-torsion",
                    r.weight
                ));
            }
        }
        for &p in r
            .degrees
            .values()
            .flat_map(|h| h.modp.keys())
            .collect::<std::collections::BTreeSet<_>>()
        {
            if !rank.is_multiple_of(p) && r.has_modp_homology(p) {
                violations.push(format!(
                    "weight {} of rank {rank} has nonzero F_{p} homology",
                    r.weight
                ));
            }
        }
    }
    for v in torsion.values_mut() {
        v.sort_unstable();
    }
    let mut expected = length_histogram.to_vec();
    expected.resize(num_roots + 1, 0);
    if betti != expected {
        violations.push(format!(
            "free ranks {betti:?} differ from the Weyl length histogram {expected:?}"
        ));
    }
    if singleton_weights.len() != length_histogram.iter().sum::<usize>() {
        violations.push(format!(
            "{} rank-zero weights but |W| = {}",
            singleton_weights.len(),
            length_histogram.iter().sum::<usize>()
        ));
    }
    let mut torsion_primes: Vec<u64> = reports.iter().flat_map(|r| r.torsion_primes()).collect();
    torsion_primes.sort_unstable();
    torsion_primes.dedup();
    GlobalSummary {
        betti,
        torsion,
        torsion_primes,
        singleton_weights,
        length_histogram: length_histogram.to_vec(),
        violations,
    }
}

pub fn ensure_consistent(summary: &GlobalSummary) -> Result<()> {
    if summary.violations.is_empty() {
        Ok(())
    } else {
        Err(Error::TheoremViolation(summary.violations.clone()))
    }
}

/// All primes up to `bound`.
pub fn primes_up_to(bound: usize) -> Vec<u64> {
    (2..=bound as u64)
        .filter(|&p| crate::linalg::is_prime(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis_graph::decompose;
    use crate::root_system::{build_root_system, enumerate_weyl_group, DynkinType};
    use crate::weight_complex::build_complex;

    fn reports(
        t: DynkinType,
        n: usize,
        primes: &[u64],
    ) -> (usize, Vec<usize>, Vec<HomologyReport>) {
        let sys = build_root_system(t, n).unwrap();
        let hist = enumerate_weyl_group(&sys).unwrap().length_histogram();
        let d = decompose(&sys).unwrap();
        let reps = d
            .components
            .iter()
            .map(|c| {
                let cx = build_complex(c, Direction::Chain).unwrap();
                homology_of(&cx, c.rank, primes).unwrap()
            })
            .collect();
        (sys.num_roots(), hist, reps)
    }

    #[test]
    fn a2_betti_and_exactness() {
        let (n, hist, reps) = reports(DynkinType::A, 2, &[2, 3]);
        let s = global_summary(n, &hist, &reps);
        assert_eq!(s.betti, vec![1, 2, 2, 1]);
        assert!(s.torsion.is_empty());
        assert!(s.violations.is_empty(), "{:?}", s.violations);
        let pair = reps.iter().find(|r| r.rank_of_weight == 1).unwrap();
        assert!(pair.degrees.values().all(DegreeHomology::is_zero));
        for r in reps.iter().filter(|r| r.rank_of_weight == 0) {
            assert_eq!(r.degrees.len(), 1);
            let h = r.degrees.values().next().unwrap();
            assert_eq!((h.free, h.torsion.len()), (1, 0));
        }
        assert!(vanishing_audit(&reps, 2).iter().all(|w| reps
            .iter()
            .find(|r| &r.weight == w)
            .unwrap()
            .rank_of_weight
            % 2
            == 0));
    }

    #[test]
    fn kostant_histograms() {
        for (t, n, expect) in [
            (DynkinType::A, 3, vec![1, 3, 5, 6, 5, 3, 1]),
            (DynkinType::G2, 2, vec![1, 2, 2, 2, 2, 2, 1]),
        ] {
            let (m, hist, reps) = reports(t, n, &[2, 3]);
            let s = global_summary(m, &hist, &reps);
            assert_eq!(&s.betti[..expect.len()], &expect[..]);
            assert!(s.violations.is_empty(), "{:?}", s.violations);
            for r in &reps {
                assert_eq!(universal_coefficients_mismatch(r), None);
                assert!(euler_consistent(r));
            }
        }
    }

    #[test]
    fn violations_are_reported() {
        let (n, hist, mut reps) = reports(DynkinType::A, 2, &[2]);
        let pair = reps.iter_mut().find(|r| r.rank_of_weight == 1).unwrap();
        pair.degrees.get_mut(&1).unwrap().torsion.push(2);
        let s = global_summary(n, &hist, &reps);
        assert_eq!(s.violations.len(), 1);
        assert!(matches!(
            ensure_consistent(&s),
            Err(Error::TheoremViolation(_))
        ));
    }

    #[test]
    fn prime_list() {
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(7), vec![2, 3, 5, 7]);
    }
}
