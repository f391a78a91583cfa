//! Weyl group elements as signed permutations of the positive roots.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::vector::ExactVector;

use super::{RootSystem, SignedRoot};

/// Cap on `|W|` during enumeration; `F4` has exactly this many elements.
pub const DEFAULT_WEYL_CAP: usize = 1152;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Reduced word in simple reflections; entries index `RootSystem::simple_roots`.
    /// The element is `s_{word[0]} s_{word[1]} ... s_{word[k-1]}`.
    pub word: Vec<usize>,
    /// `images[i]` is `w * e_i` as a signed root.
    pub images: Vec<SignedRoot>,
    /// Number of positive roots sent to negative roots.
    pub length: usize,
}

impl WeylElement {
    pub fn identity(system: &RootSystem) -> Self {
        WeylElement {
            word: Vec::new(),
            images: (0..system.num_roots()).map(SignedRoot::positive).collect(),
            length: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, r)| !r.negative && r.index as usize == i)
    }

    pub fn act_on_root(&self, r: SignedRoot) -> SignedRoot {
        let img = self.images[r.index as usize];
        if r.negative {
            img.negate()
        } else {
            img
        }
    }

    /// `w * v` for an arbitrary vector, applying the word's reflections right to left.
    pub fn act(&self, system: &RootSystem, v: &ExactVector) -> ExactVector {
        let mut out = v.clone();
        for &k in self.word.iter().rev() {
            out = system.reflect(system.simple_roots[k], &out);
        }
        out
    }

    /// Signed permutation of `self * other`.
    pub fn compose_images(&self, other: &WeylElement) -> Vec<SignedRoot> {
        other.images.iter().map(|&r| self.act_on_root(r)).collect()
    }

    fn left_multiply(&self, system: &RootSystem, k: usize) -> WeylElement {
        let action = system.simple_action(k);
        let images: Vec<SignedRoot> = self
            .images
            .iter()
            .map(|r| {
                let img = action[r.index as usize];
                if r.negative {
                    img.negate()
                } else {
                    img
                }
            })
            .collect();
        let length = images.iter().filter(|r| r.negative).count();
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(k);
        word.extend_from_slice(&self.word);
        WeylElement {
            word,
            images,
            length,
        }
    }

    /// `w * rho`, read off the signed permutation (`2 rho` is the sum of positive roots).
    pub fn image_of_rho(&self, system: &RootSystem) -> ExactVector {
        let mut twice = ExactVector::zeros(system.dim());
        for &r in &self.images {
            if r.negative {
                twice.sub_assign(system.root(r.index as usize));
            } else {
                twice.add_assign(system.root(r.index as usize));
            }
        }
        twice
            .exact_div(2)
            .expect("w * rho is integral in doubled coordinates")
    }
}

/// All of `W`, with lookup by signed permutation.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    by_images: HashMap<Vec<SignedRoot>, usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    /// The longest element, sending every positive root to a negative one.
    pub fn longest(&self) -> &WeylElement {
        self.elements
            .iter()
            .max_by_key(|w| w.length)
            .expect("W is never empty")
    }

    pub fn position(&self, images: &[SignedRoot]) -> Option<usize> {
        self.by_images.get(images).copied()
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let images = self.elements[a].compose_images(&self.elements[b]);
        self.position(&images).expect("W is closed under products")
    }

    /// `histogram[k] = #{w : length(w) = k}`.
    pub fn length_histogram(&self) -> Vec<usize> {
        let max = self.elements.iter().map(|w| w.length).max().unwrap_or(0);
        let mut h = vec![0; max + 1];
        for w in &self.elements {
            h[w.length] += 1;
        }
        h
    }
}

pub fn enumerate_weyl_group(system: &RootSystem) -> Result<WeylGroup> {
    enumerate_weyl_group_with_cap(system, DEFAULT_WEYL_CAP)
}

/// Breadth-first search over words in simple reflections. Elements are
/// deduplicated by `w * rho`, which is faithful because `rho` is regular; BFS
/// order makes each stored word reduced.
pub fn enumerate_weyl_group_with_cap(system: &RootSystem, cap: usize) -> Result<WeylGroup> {
    let identity = WeylElement::identity(system);
    let mut seen: HashMap<ExactVector, usize> = HashMap::new();
    seen.insert(identity.image_of_rho(system), 0);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for k in 0..system.simple_roots.len() {
            let next = elements[i].left_multiply(system, k);
            let key = next.image_of_rho(system);
            if seen.contains_key(&key) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            seen.insert(key, elements.len());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }
    let by_images = elements
        .iter()
        .enumerate()
        .map(|(i, w)| (w.images.clone(), i))
        .collect();
    Ok(WeylGroup {
        elements,
        by_images,
    })
}
