//! Exact integer matrices: Smith normal form and ranks over `Q` and `F_p`.

mod modp;
mod smith;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use modp::{is_prime, rank_mod_p};
pub use smith::{prime_power_factors, smith_normal_form, SmithForm, DENSE_LIMIT};

/// Sparse integer matrix in triplet form, sorted by `(row, col)` with no
/// duplicates and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Duplicate positions are summed; zeros are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut all: Vec<(usize, usize, BigInt)> = triplets.into_iter().collect();
        all.sort_by_key(|&(i, j, _)| (i, j));
        let mut entries: Vec<(usize, usize, BigInt)> = Vec::with_capacity(all.len());
        for (i, j, v) in all {
            assert!(
                i < rows && j < cols,
                "entry ({i},{j}) outside {rows}x{cols}"
            );
            match entries.last_mut() {
                Some(last) if (last.0, last.1) == (i, j) => last.2 += v,
                _ => entries.push((i, j, v)),
            }
        }
        entries.retain(|(_, _, v)| !v.is_zero());
        SparseIntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i, j, v.clone().into()))
        });
        Self::from_triplets(rows.len(), cols, triplets)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, BigInt::one())))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(i, j)))
            .map_or_else(|_| BigInt::zero(), |k| self.entries[k].2.clone())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in &self.entries {
            out[*i][*j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().map(|(i, j, v)| (*j, *i, v.clone())),
        )
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (i, j, v) in &other.entries {
            by_row[*i].push((*j, v));
        }
        let mut triplets = Vec::new();
        for (i, k, a) in &self.entries {
            for &(j, b) in &by_row[*k] {
                triplets.push((*i, j, a * b));
            }
        }
        Self::from_triplets(self.rows, other.cols, triplets)
    }

    pub fn add(&self, other: &SparseIntMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().chain(&other.entries).cloned(),
        )
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|(i, j, v)| (row_perm[*i], col_perm[*j], v.clone())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_are_normalized() {
        let m = SparseIntMatrix::from_triplets(
            2,
            2,
            vec![
                (1, 0, BigInt::from(2)),
                (0, 1, BigInt::from(1)),
                (0, 1, BigInt::from(-1)),
                (1, 0, BigInt::from(3)),
            ],
        );
        assert_eq!(m.entries(), &[(1, 0, BigInt::from(5))]);
        assert_eq!(m.get(1, 0), BigInt::from(5));
        assert!(m.get(0, 1).is_zero());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2, 0], vec![0, -1, 3]]);
        let b = SparseIntMatrix::from_dense(&[vec![1, 0], vec![0, 1], vec![2, 2]]);
        let ab = a.mul(&b);
        assert_eq!(
            ab.to_dense(),
            vec![
                vec![BigInt::from(1), BigInt::from(2)],
                vec![BigInt::from(6), BigInt::from(5)]
            ]
        );
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul(&SparseIntMatrix::identity(3)), a);
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
    }
}
