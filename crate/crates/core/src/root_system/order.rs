//! Choice of the fixed total order on R+.
//!
//! The edge sign of the basis graph reads every bracket `[e_u, e_v]` with
//! `u < v` as `+e_{u+v}`. That reading is a Lie bracket (so the resulting
//! differential squares to zero) only if each Jacobi triple whose expansion has
//! two nonzero terms sees them cancel. Whether they cancel depends on the order.
//! For type A the lexicographic order already works; for the other types we
//! search permutations of the lexicographic list in lexicographic order and
//! take the first one satisfying every such constraint.

use std::collections::HashMap;

/// One Jacobi constraint: the product of the four comparisons must be `-1`.
type Constraint = [(usize, usize); 4];

/// Returns `order` with `order[k]` = lexicographic index of the root placed at position `k`.
pub(super) fn bracket_consistent_order(vectors: &[Vec<i64>]) -> Vec<usize> {
    let n = vectors.len();
    let lookup: HashMap<&[i64], usize> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let sum = |a: usize, b: usize| -> Option<usize> {
        let s: Vec<i64> = vectors[a]
            .iter()
            .zip(&vectors[b])
            .map(|(x, y)| x + y)
            .collect();
        lookup.get(s.as_slice()).copied()
    };

    let mut constraints: Vec<Constraint> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let terms: Vec<(usize, usize, usize)> = [(x, y, z), (y, z, x), (z, x, y)]
                    .into_iter()
                    .filter_map(|(a, b, c)| {
                        let bc = sum(b, c)?;
                        sum(a, bc).map(|_| (a, b, c))
                    })
                    .collect();
                match terms.len() {
                    // A three-term Jacobi identity cannot cancel with unit coefficients;
                    // no order helps, keep the lexicographic one.
                    3 => return (0..n).collect(),
                    2 => {
                        let (a1, b1, c1) = terms[0];
                        let (a2, b2, c2) = terms[1];
                        constraints.push([
                            (b1, c1),
                            (a1, sum(b1, c1).unwrap()),
                            (b2, c2),
                            (a2, sum(b2, c2).unwrap()),
                        ]);
                    }
                    _ => {}
                }
            }
        }
    }

    let mut search = OrderSearch {
        n,
        constraints,
        position: vec![None; n],
    };
    if search.place(0) {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| search.position[i].unwrap());
        order
    } else {
        (0..n).collect()
    }
}

struct OrderSearch {
    n: usize,
    constraints: Vec<Constraint>,
    position: Vec<Option<usize>>,
}

impl OrderSearch {
    /// `Some(true)` if `a` precedes `b`; unplaced roots come after every placed one.
    fn before(&self, a: usize, b: usize) -> Option<bool> {
        match (self.position[a], self.position[b]) {
            (None, None) => None,
            (Some(_), None) => Some(true),
            (None, Some(_)) => Some(false),
            (Some(pa), Some(pb)) => Some(pa < pb),
        }
    }

    fn consistent(&self) -> bool {
        self.constraints.iter().all(|c| {
            let mut negative = false;
            for &(a, b) in c {
                match self.before(a, b) {
                    None => return true,
                    Some(first) => negative ^= !first,
                }
            }
            negative
        })
    }

    fn place(&mut self, k: usize) -> bool {
        if k == self.n {
            return true;
        }
        for r in 0..self.n {
            if self.position[r].is_some() {
                continue;
            }
            self.position[r] = Some(k);
            if self.consistent() && self.place(k + 1) {
                return true;
            }
            self.position[r] = None;
        }
        false
    }
}
