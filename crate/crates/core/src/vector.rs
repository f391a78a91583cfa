//! Exact vectors in doubled coordinates.
//!
//! Every vector stored here is twice its true Euclidean coordinates, so the
//! half-sum of positive roots and the half-integral roots of `F4` are plain
//! integers. Magnitudes stay tiny (bounded by the sum of all positive roots),
//! and every operation uses checked `i64` arithmetic.

use std::borrow::Borrow;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactVector(Vec<i64>);

impl ExactVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ExactVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        ExactVector(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Inner product of the stored (doubled) coordinates; four times the true value.
    pub fn dot(&self, other: &ExactVector) -> i64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_mul(*b).expect("coordinate overflow"))
            .fold(0i64, |acc, x| {
                acc.checked_add(x).expect("coordinate overflow")
            })
    }

    pub fn scale(&self, k: i64) -> ExactVector {
        ExactVector(
            self.0
                .iter()
                .map(|c| c.checked_mul(k).expect("coordinate overflow"))
                .collect(),
        )
    }

    pub fn add_assign(&mut self, other: &ExactVector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.checked_add(*b).expect("coordinate overflow");
        }
    }

    pub fn sub_assign(&mut self, other: &ExactVector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.checked_sub(*b).expect("coordinate overflow");
        }
    }

    /// Divides every coordinate by `d`, or returns `None` if some coordinate is not a multiple.
    pub fn exact_div(&self, d: i64) -> Option<ExactVector> {
        if d == 0 {
            return None;
        }
        self.0
            .iter()
            .map(|&c| if c % d == 0 { Some(c / d) } else { None })
            .collect::<Option<Vec<_>>>()
            .map(ExactVector)
    }

    /// The integer `k` with `self == k * other`, if one exists.
    pub fn multiple_of(&self, other: &ExactVector) -> Option<i64> {
        let mut k: Option<i64> = None;
        for (&a, &b) in self.0.iter().zip(&other.0) {
            if b == 0 {
                if a != 0 {
                    return None;
                }
                continue;
            }
            if a % b != 0 {
                return None;
            }
            let q = a / b;
            match k {
                None => k = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        Some(k.unwrap_or(0))
    }
}

impl Borrow<[i64]> for ExactVector {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ExactVector {
    fn from(v: Vec<i64>) -> Self {
        ExactVector(v)
    }
}

impl<'a> Add<&'a ExactVector> for &'a ExactVector {
    type Output = ExactVector;
    fn add(self, rhs: &ExactVector) -> ExactVector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<'a> Sub<&'a ExactVector> for &'a ExactVector {
    type Output = ExactVector;
    fn sub(self, rhs: &ExactVector) -> ExactVector {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &ExactVector {
    type Output = ExactVector;
    fn neg(self) -> ExactVector {
        self.scale(-1)
    }
}

impl Neg for ExactVector {
    type Output = ExactVector;
    fn neg(self) -> ExactVector {
        self.scale(-1)
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
