use std::borrow::Cow;
use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::root_system::RootSystem;
use crate::vector::ExactVector;

use super::{oriented_sign, VertexSubset, WeightKey};

/// Bitmasks are `u32` and the two enumeration passes touch every subset.
pub const MAX_ENUMERABLE_ROOTS: usize = 24;

/// Above this many positive roots, edges are not kept in memory; each
/// component's graph is rebuilt on demand by [`Decomposition::graph`].
pub const STORED_GRAPH_ROOTS: usize = 20;

/// An edge between local vertex indices; `upper` has degree one more than `lower`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub upper: usize,
    pub lower: usize,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct WeightComponent {
    pub weight: WeightKey,
    /// Ascending by bitmask.
    pub vertices: Vec<VertexSubset>,
    /// Empty for components of a decomposition that does not store graphs.
    pub edges: Vec<Edge>,
    /// Per vertex: `(neighbor, edge sign)`, ascending by neighbor.
    pub adjacency: Vec<Vec<(usize, i8)>>,
    pub num_edges: usize,
    /// Neighbor count of the first vertex; [`super::verify_component`] checks uniformity.
    pub rank: usize,
    pub degree_range: (usize, usize),
}

impl WeightComponent {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn local_index(&self, v: VertexSubset) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn sign_between(&self, a: usize, b: usize) -> Option<i8> {
        let adj = &self.adjacency[a];
        adj.binary_search_by_key(&b, |&(n, _)| n)
            .ok()
            .map(|k| adj[k].1)
    }

    /// True when `edges` and `adjacency` are populated.
    pub fn has_graph(&self) -> bool {
        self.edges.len() == self.num_edges
    }

    /// Vertices and counts only: the rank is read off the first vertex and
    /// edges are counted without being stored.
    fn shell(system: &RootSystem, weight: WeightKey, mut vertices: Vec<VertexSubset>) -> Self {
        vertices.sort_unstable();
        let up_degree = |v: VertexSubset| {
            v.indices()
                .flat_map(|e| system.decompositions(e))
                .filter(|&&(i, j)| !v.contains(i) && !v.contains(j))
                .count()
        };
        let num_edges = vertices.iter().map(|&v| up_degree(v)).sum();
        let rank = vertices
            .first()
            .map_or(0, |&v| super::neighbors(system, v).len());
        let degrees = vertices.iter().map(|v| v.degree());
        let degree_range = (
            degrees.clone().min().unwrap_or(0),
            degrees.max().unwrap_or(0),
        );
        WeightComponent {
            weight,
            vertices,
            edges: Vec::new(),
            adjacency: Vec::new(),
            num_edges,
            rank,
            degree_range,
        }
    }

    fn build(system: &RootSystem, weight: WeightKey, mut vertices: Vec<VertexSubset>) -> Self {
        vertices.sort_unstable();
        let local = |v: VertexSubset| {
            vertices
                .binary_search(&v)
                .expect("exchange edges preserve the weight")
        };
        let mut edges = Vec::new();
        for (li, &v) in vertices.iter().enumerate() {
            for e in v.indices() {
                for &(i, j) in system.decompositions(e) {
                    if v.contains(i) || v.contains(j) {
                        continue;
                    }
                    let up = VertexSubset::new(v.bits & !(1 << e) | 1 << i | 1 << j);
                    edges.push(Edge {
                        upper: local(up),
                        lower: li,
                        sign: oriented_sign(up, v),
                    });
                }
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for e in &edges {
            adjacency[e.upper].push((e.lower, e.sign));
            adjacency[e.lower].push((e.upper, e.sign));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let degrees = vertices.iter().map(|v| v.degree());
        let degree_range = (
            degrees.clone().min().unwrap_or(0),
            degrees.max().unwrap_or(0),
        );
        WeightComponent {
            weight,
            rank: adjacency.first().map_or(0, Vec::len),
            vertices,
            num_edges: edges.len(),
            edges,
            adjacency,
            degree_range,
        }
    }
}

/// All weight components, sorted by weight.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub num_roots: usize,
    /// Graph fields are empty unless [`Decomposition::stores_graphs`].
    pub components: Vec<WeightComponent>,
    by_weight: HashMap<WeightKey, usize>,
    system: Option<RootSystem>,
}

impl Decomposition {
    pub fn stores_graphs(&self) -> bool {
        self.system.is_none()
    }

    /// Component `i` with its edges, borrowed when stored and rebuilt otherwise.
    pub fn graph(&self, i: usize) -> Cow<'_, WeightComponent> {
        let c = &self.components[i];
        match &self.system {
            None => Cow::Borrowed(c),
            Some(system) => Cow::Owned(WeightComponent::build(
                system,
                c.weight.clone(),
                c.vertices.clone(),
            )),
        }
    }

    pub fn component(&self, weight: &WeightKey) -> Option<&WeightComponent> {
        self.position(weight).map(|i| &self.components[i])
    }

    pub fn position(&self, weight: &WeightKey) -> Option<usize> {
        self.by_weight.get(weight).copied()
    }

    pub fn total_vertices(&self) -> usize {
        self.components.iter().map(WeightComponent::len).sum()
    }

    pub fn singletons(&self) -> impl Iterator<Item = &WeightComponent> {
        self.components.iter().filter(|c| c.is_singleton())
    }
}

/// Walks all `2^n` subsets in Gray-code order, updating the weight by one root per step.
fn for_each_subset(system: &RootSystem, mut visit: impl FnMut(u32, &ExactVector)) {
    let n = system.num_roots();
    let mut weight = system.rho.clone();
    let mut mask = 0u32;
    visit(mask, &weight);
    for step in 1..1u64 << n {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if mask >> bit & 1 == 1 {
            weight.sub_assign(system.root(bit));
        } else {
            weight.add_assign(system.root(bit));
        }
        visit(mask, &weight);
    }
}

/// Splits all subsets of `R+` by weight and builds each component's signed edges.
///
/// Two streaming passes: the first counts component sizes, the second fills
/// preallocated buckets, so peak memory is one `u32` per subset. Above
/// [`STORED_GRAPH_ROOTS`] the edges are counted but not kept.
pub fn decompose(system: &RootSystem) -> Result<Decomposition> {
    decompose_with(system, system.num_roots() <= STORED_GRAPH_ROOTS)
}

/// [`decompose`] with an explicit choice of whether to keep the graphs.
pub fn decompose_with(system: &RootSystem, store_graphs: bool) -> Result<Decomposition> {
    let n = system.num_roots();
    if n > MAX_ENUMERABLE_ROOTS {
        return Err(Error::SizeExceeded {
            num_roots: n,
            limit: MAX_ENUMERABLE_ROOTS,
        });
    }

    let mut counts: HashMap<ExactVector, usize> = HashMap::new();
    for_each_subset(system, |_, w| {
        if let Some(c) = counts.get_mut(w.coords()) {
            *c += 1;
        } else {
            counts.insert(w.clone(), 1);
        }
    });

    let mut keys: Vec<(ExactVector, usize)> = counts.into_iter().collect();
    keys.sort_unstable();
    let slot: HashMap<ExactVector, usize> = keys
        .iter()
        .enumerate()
        .map(|(i, (k, _))| (k.clone(), i))
        .collect();
    let mut buckets: Vec<Vec<VertexSubset>> =
        keys.iter().map(|(_, c)| Vec::with_capacity(*c)).collect();
    for_each_subset(system, |mask, w| {
        buckets[slot[w.coords()]].push(VertexSubset::new(mask));
    });

    let components: Vec<WeightComponent> = keys
        .into_par_iter()
        .zip(buckets.into_par_iter())
        .map(|((key, _), vertices)| {
            if store_graphs {
                WeightComponent::build(system, WeightKey(key), vertices)
            } else {
                WeightComponent::shell(system, WeightKey(key), vertices)
            }
        })
        .collect();
    let by_weight = components
        .iter()
        .enumerate()
        .map(|(i, c)| (c.weight.clone(), i))
        .collect();
    Ok(Decomposition {
        num_roots: n,
        components,
        by_weight,
        system: (!store_graphs).then(|| system.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis_graph::{are_adjacent, weight_of};
    use crate::root_system::{build_root_system, DynkinType};

    #[test]
    fn a2_has_six_singletons_and_one_edge() {
        let sys = build_root_system(DynkinType::A, 2).unwrap();
        let d = decompose(&sys).unwrap();
        assert_eq!(d.components.len(), 7);
        assert_eq!(d.singletons().count(), 6);
        let two: Vec<_> = d.components.iter().filter(|c| c.len() == 2).collect();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].edges.len(), 1);
        assert_eq!(two[0].rank, 1);
        assert_eq!(two[0].degree_range, (1, 2));
    }

    #[test]
    fn a1_has_two_singletons() {
        let sys = build_root_system(DynkinType::A, 1).unwrap();
        let d = decompose(&sys).unwrap();
        assert_eq!(d.components.len(), 2);
        assert!(d.components.iter().all(|c| c.is_singleton() && c.rank == 0));
    }

    #[test]
    fn unstored_graphs_rebuild_identically() {
        let sys = build_root_system(DynkinType::B, 3).unwrap();
        let full = decompose_with(&sys, true).unwrap();
        let lean = decompose_with(&sys, false).unwrap();
        assert!(full.stores_graphs() && !lean.stores_graphs());
        for (i, (a, b)) in full.components.iter().zip(&lean.components).enumerate() {
            assert_eq!(a.weight, b.weight);
            assert_eq!(a.vertices, b.vertices);
            assert_eq!((a.rank, a.num_edges), (b.rank, b.num_edges));
            assert!(a.has_graph());
            assert_eq!(b.has_graph(), b.num_edges == 0);
            let g = lean.graph(i);
            assert_eq!(g.edges, a.edges);
            assert_eq!(g.adjacency, a.adjacency);
        }
    }

    /// Brute-force oracle: group all subsets by weight directly and compare edge
    /// sets against the pairwise adjacency test.
    #[test]
    fn matches_brute_force_grouping() {
        for (t, n) in [(DynkinType::A, 3), (DynkinType::B, 2), (DynkinType::G2, 2)] {
            let sys = build_root_system(t, n).unwrap();
            let d = decompose(&sys).unwrap();
            let width = sys.num_roots();
            assert_eq!(d.total_vertices(), 1 << width);
            let mut groups: std::collections::BTreeMap<WeightKey, Vec<VertexSubset>> =
                Default::default();
            for bits in 0..1u32 << width {
                let v = VertexSubset::new(bits);
                groups.entry(weight_of(&sys, v)).or_default().push(v);
            }
            assert_eq!(groups.len(), d.components.len());
            for (comp, (key, verts)) in d.components.iter().zip(&groups) {
                assert_eq!(&comp.weight, key);
                assert_eq!(&comp.vertices, verts);
                let mut pairs = 0;
                for (i, &a) in verts.iter().enumerate() {
                    for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                        if are_adjacent(&sys, a, b) {
                            pairs += 1;
                            assert!(comp.sign_between(i, j).is_some());
                        }
                    }
                }
                assert_eq!(pairs, comp.edges.len());
                for e in &comp.edges {
                    assert_eq!(
                        comp.vertices[e.upper].degree(),
                        comp.vertices[e.lower].degree() + 1
                    );
                }
            }
        }
    }
}
