use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::root_system::RootSystem;

use super::{index_of, neighbors, VertexSubset, WeightComponent, WeightKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Triangle,
    Diamond,
    Admissibility,
    Connectivity,
    RankUniformity,
    NeighborProperty,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Triangle,
        CheckKind::Diamond,
        CheckKind::Admissibility,
        CheckKind::Connectivity,
        CheckKind::RankUniformity,
        CheckKind::NeighborProperty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Triangle => "triangle-free",
            CheckKind::Diamond => "diamond",
            CheckKind::Admissibility => "admissibility",
            CheckKind::Connectivity => "connectivity",
            CheckKind::RankUniformity => "rank-uniformity",
            CheckKind::NeighborProperty => "neighbor-property",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A counterexample: the vertices involved and what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub vertices: Vec<VertexSubset>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckTally {
    pub kind: CheckKind,
    pub checked: u64,
    pub failed: u64,
    /// The first failure in traversal order.
    pub first: Option<Failure>,
}

impl CheckTally {
    fn new(kind: CheckKind) -> Self {
        CheckTally {
            kind,
            checked: 0,
            failed: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(failure());
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub weight: WeightKey,
    pub rank: usize,
    pub vertices: usize,
    pub edges: usize,
    pub checks: Vec<CheckTally>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn tally(&self, kind: CheckKind) -> &CheckTally {
        self.checks
            .iter()
            .find(|c| c.kind == kind)
            .expect("every kind is tallied")
    }
}

/// Runs every structural check on one component.
///
/// Diamonds are completed inside the component's own adjacency lists;
/// connectivity is checked separately with the global exchange rule, so a
/// neighbor escaping the component is reported there.
pub fn verify_component(
    system: &RootSystem,
    component: &WeightComponent,
) -> Result<VerificationReport> {
    assert!(
        component.has_graph(),
        "component graph not built; use Decomposition::graph"
    );
    let verts = &component.vertices;
    let adj = &component.adjacency;
    let adjacent = |x: usize, y: usize| component.sign_between(x, y);

    let mut triangle = CheckTally::new(CheckKind::Triangle);
    let mut diamond = CheckTally::new(CheckKind::Diamond);
    let mut admissible = CheckTally::new(CheckKind::Admissibility);
    for (b, around) in adj.iter().enumerate() {
        for (p, &(a, s_ab)) in around.iter().enumerate() {
            for &(c, s_bc) in &around[p + 1..] {
                if adjacent(a, c).is_some() {
                    triangle.record(false, || Failure {
                        vertices: vec![verts[a], verts[b], verts[c]],
                        detail: "triangle".into(),
                    });
                    continue;
                }
                triangle.record(true, || unreachable!());
                let candidates: Vec<(usize, i8, i8)> = adj[a]
                    .iter()
                    .filter(|&&(d, _)| d != b)
                    .filter_map(|&(d, s_ad)| adjacent(d, c).map(|s_dc| (d, s_ad, s_dc)))
                    .collect();
                let fourth = match candidates.as_slice() {
                    [(d, s_ad, s_dc)] if adjacent(b, *d).is_none() => Some((*d, *s_ad, *s_dc)),
                    _ => None,
                };
                diamond.record(fourth.is_some(), || Failure {
                    vertices: vec![verts[a], verts[b], verts[c]],
                    detail: format!("{} completion candidates", candidates.len()),
                });
                if let Some((d, s_ad, s_dc)) = fourth {
                    admissible.record(s_ab * s_bc + s_ad * s_dc == 0, || Failure {
                        vertices: vec![verts[a], verts[b], verts[c], verts[d]],
                        detail: "signs commute around the diamond".into(),
                    });
                }
            }
        }
    }

    let mut connected = CheckTally::new(CheckKind::Connectivity);
    let mut uniform = CheckTally::new(CheckKind::RankUniformity);
    let mut seen = vec![false; verts.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        let global = neighbors(system, verts[i]);
        uniform.record(
            global.len() == component.rank && adj[i].len() == component.rank,
            || Failure {
                vertices: vec![verts[i]],
                detail: format!("{} neighbors, expected {}", global.len(), component.rank),
            },
        );
        for n in global {
            match component.local_index(n) {
                Some(j) => {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        queue.push_back(j);
                    }
                }
                None => connected.record(false, || Failure {
                    vertices: vec![verts[i], n],
                    detail: "neighbor outside the component".into(),
                }),
            }
        }
    }
    connected.record(reached == verts.len(), || Failure {
        vertices: verts
            .iter()
            .zip(&seen)
            .filter(|(_, s)| !**s)
            .map(|(v, _)| *v)
            .take(1)
            .collect(),
        detail: format!("reached {reached} of {} vertices", verts.len()),
    });

    let mut neighbor = CheckTally::new(CheckKind::NeighborProperty);
    for e in 0..system.num_roots() {
        let r = index_of(system, e, &component.weight)?;
        // (want, other): vertices lacking `want`-membership need a neighbor with it.
        let mut sides = Vec::new();
        if r >= 0 {
            sides.push(true);
        }
        if r <= 0 {
            sides.push(false);
        }
        for want in sides {
            let has = |i: usize| verts[i].contains(e) == want;
            neighbor.record((0..verts.len()).any(has), || Failure {
                vertices: Vec::new(),
                detail: format!("root {e}, index {r}: side {} empty", u8::from(want)),
            });
            for i in (0..verts.len()).filter(|&i| !has(i)) {
                neighbor.record(adj[i].iter().any(|&(j, _)| has(j)), || Failure {
                    vertices: vec![verts[i]],
                    detail: format!("root {e}, index {r}: no neighbor across"),
                });
            }
        }
    }

    Ok(VerificationReport {
        weight: component.weight.clone(),
        rank: component.rank,
        vertices: verts.len(),
        edges: component.edges.len(),
        checks: vec![triangle, diamond, admissible, connected, uniform, neighbor],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis_graph::decompose;
    use crate::root_system::{build_root_system, DynkinType};

    fn all_pass(t: DynkinType, n: usize) {
        let sys = build_root_system(t, n).unwrap();
        let d = decompose(&sys).unwrap();
        for c in &d.components {
            let report = verify_component(&sys, c).unwrap();
            for tally in &report.checks {
                assert_eq!(
                    tally.failed, 0,
                    "{}{n} weight {} {}: {:?}",
                    t, c.weight, tally.kind, tally.first
                );
            }
        }
    }

    #[test]
    fn a2_pair_component() {
        let sys = build_root_system(DynkinType::A, 2).unwrap();
        let d = decompose(&sys).unwrap();
        let c = d.components.iter().find(|c| c.len() == 2).unwrap();
        let r = verify_component(&sys, c).unwrap();
        assert!(r.passed());
        assert_eq!(r.rank, 1);
        assert_eq!(r.tally(CheckKind::Diamond).checked, 0);
    }

    #[test]
    fn singletons_are_vacuous() {
        let sys = build_root_system(DynkinType::B, 2).unwrap();
        let d = decompose(&sys).unwrap();
        for c in d.singletons() {
            let r = verify_component(&sys, c).unwrap();
            assert!(r.passed());
            assert_eq!(r.rank, 0);
            assert_eq!(r.tally(CheckKind::Diamond).checked, 0);
        }
    }

    #[test]
    fn small_systems_pass_everything() {
        all_pass(DynkinType::A, 3);
        all_pass(DynkinType::B, 2);
        all_pass(DynkinType::G2, 2);
        all_pass(DynkinType::B, 3);
    }

    #[test]
    fn unsigned_diamonds_are_not_admissible() {
        let sys = build_root_system(DynkinType::G2, 2).unwrap();
        let d = decompose(&sys).unwrap();
        let failures: u64 = d
            .components
            .iter()
            .map(|c| {
                let mut c = c.clone();
                for adj in &mut c.adjacency {
                    for (_, s) in adj.iter_mut() {
                        *s = 1;
                    }
                }
                verify_component(&sys, &c)
                    .unwrap()
                    .tally(CheckKind::Admissibility)
                    .failed
            })
            .sum();
        assert!(failures > 0);
    }
}
