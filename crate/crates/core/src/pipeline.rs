//! End-to-end runs: decomposition, complexes, homology, and the verification suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis_graph::{
    circ_action, decompose, index_of, verify_component, weight_of, CheckKind, Decomposition,
    VertexSubset, WeightComponent, WeightKey,
};
use crate::error::Result;
use crate::homology::{
    duality_mismatch, euler_consistent, global_summary, homology_of, primes_up_to,
    universal_coefficients_mismatch, GlobalSummary, HomologyReport,
};
use crate::root_system::{DynkinType, RootSystem, WeylGroup};
use crate::type_a;
use crate::weight_complex::{
    build_complex, build_duality, entries_are_units, laplacian_check, Direction,
};

/// Everything computed for one root system.
pub struct Analysis {
    pub system: RootSystem,
    pub group: WeylGroup,
    pub decomposition: Decomposition,
    pub primes: Vec<u64>,
    /// Chain-direction reports, in component order.
    pub reports: Vec<HomologyReport>,
    pub summary: GlobalSummary,
}

impl Analysis {
    pub fn max_rank(&self) -> usize {
        self.decomposition
            .components
            .iter()
            .map(|c| c.rank)
            .max()
            .unwrap_or(0)
    }
}

/// Builds every weight complex and computes its homology. `primes = None`
/// selects all primes up to the largest component rank.
pub fn analyze(system: RootSystem, group: WeylGroup, primes: Option<Vec<u64>>) -> Result<Analysis> {
    let decomposition = decompose(&system)?;
    let max_rank = decomposition
        .components
        .iter()
        .map(|c| c.rank)
        .max()
        .unwrap_or(0);
    let primes = primes.unwrap_or_else(|| primes_up_to(max_rank));
    let reports = (0..decomposition.components.len())
        .into_par_iter()
        .map(|i| {
            let c = decomposition.graph(i);
            let complex = build_complex(&c, Direction::Chain)?;
            homology_of(&complex, c.rank, &primes)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = global_summary(system.num_roots(), &group.length_histogram(), &reports);
    Ok(Analysis {
        system,
        group,
        decomposition,
        primes,
        reports,
        summary,
    })
}

/// Aggregated outcome of one family of checks.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub example: Option<String>,
}

impl SuiteCheck {
    fn new(name: impl Into<String>) -> Self {
        SuiteCheck {
            name: name.into(),
            checked: 0,
            failed: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.example.is_none() {
                self.example = Some(example());
            }
        }
    }

    fn merge(&mut self, other: SuiteCheck) {
        self.checked += other.checked;
        self.failed += other.failed;
        if self.example.is_none() {
            self.example = other.example;
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub system: String,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SuiteCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const GROUP_ACTION_SAMPLES: usize = 10_000;

/// Runs every check on a completed analysis.
pub fn verify(analysis: &Analysis, samples: usize, seed: u64) -> Result<SuiteReport> {
    let system = &analysis.system;
    let comps = &analysis.decomposition.components;
    let width = system.num_roots();
    let mut checks = Vec::new();

    let decomp = &analysis.decomposition;
    let cochain: Vec<HomologyReport> = (0..comps.len())
        .into_par_iter()
        .map(|i| {
            let c = decomp.graph(i);
            homology_of(&build_complex(&c, Direction::Cochain)?, c.rank, &[])
        })
        .collect::<Result<_>>()?;

    // Per-component structure, Laplacian and duality.
    let per_component: Vec<Vec<SuiteCheck>> = (0..comps.len())
        .into_par_iter()
        .zip(&analysis.reports)
        .map(|(i, chain)| -> Result<Vec<SuiteCheck>> {
            let c = &*decomp.graph(i);
            let mut out = component_checks(system, c)?;
            let mut duality = SuiteCheck::new("duality");
            if let Some(pos) = decomp.position(&c.weight.negated()) {
                let map = build_duality(width, c, &decomp.graph(pos));
                duality.record(map.is_ok(), || format!("{}", map.unwrap_err()));
                let k = duality_mismatch(chain, &cochain[pos], width);
                duality.record(k.is_none(), || {
                    format!("weight {}: H_k vs H^(N-k) differ at k = {:?}", c.weight, k)
                });
            } else {
                duality.record(false, || format!("weight {} has no negative", c.weight));
            }
            out.push(duality);
            Ok(out)
        })
        .collect::<Result<_>>()?;
    checks.extend(merge_checks(per_component));

    // Homology-level consistency.
    let mut uct = SuiteCheck::new("universal-coefficients");
    let mut euler = SuiteCheck::new("euler-characteristic");
    for r in &analysis.reports {
        let bad = universal_coefficients_mismatch(r);
        uct.record(bad.is_none(), || {
            format!("weight {} at (k, p) = {:?}", r.weight, bad)
        });
        euler.record(euler_consistent(r), || format!("weight {}", r.weight));
    }
    checks.push(uct);
    checks.push(euler);

    let mut kostant = SuiteCheck::new("kostant");
    kostant.record(analysis.summary.violations.is_empty(), || {
        analysis.summary.violations.join("; ")
    });
    checks.push(kostant);

    let mut vanishing = SuiteCheck::new("vanishing");
    for r in &analysis.reports {
        for &p in &analysis.primes {
            if r.has_modp_homology(p) {
                vanishing.record((r.rank_of_weight as u64).is_multiple_of(p), || {
                    format!(
                        "weight {} rank {} has F_{p} homology",
                        r.weight, r.rank_of_weight
                    )
                });
            }
        }
    }
    checks.push(vanishing);

    checks.push(singleton_check(analysis)?);
    checks.extend(group_action_checks(analysis, samples, seed));

    if system.dynkin_type == DynkinType::A {
        checks.extend(type_a_checks(analysis, &cochain)?);
    }

    Ok(SuiteReport {
        system: system.name(),
        checks,
    })
}

/// Structural checks, unit entries, `d² = 0` and the Laplacian for one component.
fn component_checks(system: &RootSystem, c: &WeightComponent) -> Result<Vec<SuiteCheck>> {
    let report = verify_component(system, c)?;
    let mut out: Vec<SuiteCheck> = report
        .checks
        .iter()
        .map(|t| SuiteCheck {
            name: t.kind.name().to_string(),
            checked: t.checked,
            failed: t.failed,
            example: t.first.as_ref().map(|f| {
                let vs: Vec<String> = f.vertices.iter().map(|v| v.to_string()).collect();
                format!("weight {}: {} [{}]", c.weight, f.detail, vs.join(" "))
            }),
        })
        .collect();
    let mut square = SuiteCheck::new("d-squared");
    let mut laplacian = SuiteCheck::new("laplacian");
    match build_complex(c, Direction::Chain) {
        Ok(chain) => {
            square.record(entries_are_units(&chain), || {
                format!("weight {}: entry outside ±1", c.weight)
            });
            let lap = laplacian_check(&chain, c.rank);
            laplacian.record(lap.holds, || {
                format!(
                    "weight {} fails at degree {:?}",
                    c.weight, lap.first_failure
                )
            });
        }
        Err(e) => {
            square.record(false, || e.to_string());
            laplacian.record(false, || format!("weight {}: no complex", c.weight));
        }
    }
    out.extend([square, laplacian]);
    Ok(out)
}

/// Sums same-named checks, keeping first-seen order.
fn merge_checks(lists: Vec<Vec<SuiteCheck>>) -> Vec<SuiteCheck> {
    let mut merged: Vec<SuiteCheck> = Vec::new();
    for c in lists.into_iter().flatten() {
        match merged.iter_mut().find(|m| m.name == c.name) {
            Some(m) => m.merge(c),
            None => merged.push(c),
        }
    }
    merged
}

/// The per-component part of [`verify`], usable when no complex can be built
/// (when `d² ≠ 0` somewhere and [`analyze`] refuses).
pub fn verify_structure(system: &RootSystem) -> Result<SuiteReport> {
    let decomp = decompose(system)?;
    let lists = (0..decomp.components.len())
        .into_par_iter()
        .map(|i| component_checks(system, &decomp.graph(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        system: system.name(),
        checks: merge_checks(lists),
    })
}

/// Singletons are exactly the `W`-orbit of `ϱ`, exactly the weights with
/// nonzero index at every root, and there are `|W|` of them.
fn singleton_check(analysis: &Analysis) -> Result<SuiteCheck> {
    let system = &analysis.system;
    let orbit: std::collections::HashSet<WeightKey> = analysis
        .group
        .elements
        .iter()
        .map(|w| WeightKey(w.act(system, &system.rho)))
        .collect();
    let mut check = SuiteCheck::new("singletons");
    check.record(
        analysis.decomposition.singletons().count() == analysis.group.order(),
        || {
            format!(
                "{} singletons, |W| = {}",
                analysis.decomposition.singletons().count(),
                analysis.group.order()
            )
        },
    );
    for c in &analysis.decomposition.components {
        let mut regular = true;
        for e in 0..system.num_roots() {
            regular &= index_of(system, e, &c.weight)? != 0;
        }
        let single = c.is_singleton();
        check.record(
            single == orbit.contains(&c.weight) && single == regular,
            || format!("weight {}", c.weight),
        );
    }
    Ok(check)
}

/// Sampled laws of the `∘` action and its compatibility with weights and ranks.
fn group_action_checks(analysis: &Analysis, samples: usize, seed: u64) -> Vec<SuiteCheck> {
    let system = &analysis.system;
    let group = &analysis.group;
    let decomp = &analysis.decomposition;
    let width = system.num_roots();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut law = SuiteCheck::new("action-composition");
    let mut unit = SuiteCheck::new("action-identity");
    let mut weight = SuiteCheck::new("action-weight");
    let mut iso = SuiteCheck::new("action-isomorphism");
    for _ in 0..samples {
        let a = rng.gen_range(0..group.order());
        let b = rng.gen_range(0..group.order());
        let sigma = VertexSubset::new(rng.gen_range(0..1u64 << width) as u32);
        let (w2, w) = (&group.elements[a], &group.elements[b]);
        let ww = &group.elements[group.product(a, b)];
        let lhs = circ_action(system, ww, sigma);
        let rhs = circ_action(system, w2, circ_action(system, w, sigma));
        law.record(lhs == rhs, || {
            format!("w'={:?} w={:?} σ={sigma}", w2.word, w.word)
        });
        unit.record(
            circ_action(system, group.identity(), sigma) == sigma,
            || format!("σ={sigma}"),
        );
        let moved = weight_of(system, circ_action(system, w, sigma));
        let expected = WeightKey(w.act(system, weight_of(system, sigma).vector()));
        weight.record(moved == expected, || format!("w={:?} σ={sigma}", w.word));

        let here = decomp
            .component(&weight_of(system, sigma))
            .expect("every subset has a component");
        let there = decomp.component(&expected);
        iso.record(
            there.is_some_and(|t| {
                t.rank == here.rank && t.len() == here.len() && t.num_edges == here.num_edges
            }),
            || format!("w={:?} weight {}", w.word, here.weight),
        );
    }
    vec![law, unit, weight, iso]
}

fn type_a_checks(analysis: &Analysis, cochain: &[HomologyReport]) -> Result<Vec<SuiteCheck>> {
    let system = &analysis.system;
    let n = system.rank;
    let mut out = Vec::new();

    let mut translation = SuiteCheck::new("typeA-translation");
    let bad = type_a::translation_mismatches(system)?;
    translation.checked = 1u64 << system.num_roots();
    translation.failed = bad;
    if bad > 0 {
        translation.example = Some(format!("{bad} subsets disagree"));
    }
    out.push(translation);

    let ranks = type_a::combinatorial_ranks(system, &analysis.decomposition)?;
    let rec = type_a::rank_recursion_check(&ranks);
    out.push(SuiteCheck {
        name: "typeA-rank-recursion".into(),
        checked: rec.checked as u64,
        failed: rec.failures.len() as u64,
        example: rec.failures.first().map(|(a, b)| format!("{a} -> {b}")),
    });

    let zero = type_a::rank_zero_mismatches(&ranks);
    out.push(SuiteCheck {
        name: "typeA-rank-zero".into(),
        checked: ranks.len() as u64,
        failed: zero.len() as u64,
        example: zero.first().map(ToString::to_string),
    });

    if n >= 2 {
        let (found, bad) = type_a::doubled_ends_rank_check(&ranks);
        out.push(SuiteCheck {
            name: "typeA-doubled-ends".into(),
            checked: found as u64,
            failed: bad.len() as u64 + u64::from(found == 0),
            example: bad.first().map(ToString::to_string),
        });
    }

    for (name, shift) in [("typeA-reflection", false), ("typeA-rotation", true)] {
        let f = if shift {
            type_a::CombinatorialWeight::rotated
        } else {
            type_a::CombinatorialWeight::reflected
        };
        let check = type_a::paired_report_check(system, cochain, f, |w| {
            if shift {
                type_a::rotation_shift(w)
            } else {
                0
            }
        })?;
        out.push(SuiteCheck {
            name: name.into(),
            checked: check.checked as u64,
            failed: check.failures.len() as u64,
            example: check.failures.first().map(|(a, b)| format!("{a} vs {b}")),
        });
    }
    Ok(out)
}

/// Names of the structural checks, in report order.
pub fn structural_check_names() -> Vec<&'static str> {
    CheckKind::ALL.iter().map(|k| k.name()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_root_system, enumerate_weyl_group};

    fn run(t: DynkinType, n: usize) -> (Analysis, SuiteReport) {
        let sys = build_root_system(t, n).unwrap();
        let group = enumerate_weyl_group(&sys).unwrap();
        let a = analyze(sys, group, None).unwrap();
        let s = verify(&a, 500, 7).unwrap();
        (a, s)
    }

    #[test]
    fn a2_end_to_end() {
        let (a, s) = run(DynkinType::A, 2);
        assert_eq!(a.summary.betti, vec![1, 2, 2, 1]);
        assert!(
            s.passed(),
            "{:#?}",
            s.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>()
        );
        for name in structural_check_names() {
            assert!(s.check(name).is_some());
        }
    }

    #[test]
    fn g2_end_to_end() {
        let (a, s) = run(DynkinType::G2, 2);
        assert_eq!(a.summary.betti, vec![1, 2, 2, 2, 2, 2, 1]);
        assert!(
            s.passed(),
            "{:#?}",
            s.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn structure_only_suite() {
        let b3 = build_root_system(DynkinType::B, 3).unwrap();
        assert!(verify_structure(&b3).unwrap().passed());
        let c3 = build_root_system(DynkinType::C, 3).unwrap();
        let s = verify_structure(&c3).unwrap();
        assert!(!s.check("d-squared").unwrap().passed());
        assert!(!s.passed());
    }
}
