use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::SparseIntMatrix;

/// Matrices with both dimensions below this are reduced in dense storage.
pub const DENSE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one())
    }

    /// Number of invariant factors not divisible by `p`, i.e. the rank mod `p`.
    pub fn rank_mod(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.diagonal
            .iter()
            .filter(|d| !(*d % &p).is_zero())
            .count()
    }
}

/// Entry arithmetic for elimination. Machine integers report overflow as `None`
/// so the caller can restart in arbitrary precision.
trait Entry: Clone + std::fmt::Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn into_big(self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_less(&self, other: &Self) -> bool;
    fn quot(&self, p: &Self) -> Option<Self>;
    /// `self - q * v`.
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_less(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, p: &Self) -> Option<Self> {
        self.checked_div(*p)
    }
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*v)?)
    }
}

impl Entry for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn into_big(self) -> BigInt {
        self
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_less(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, p: &Self) -> Option<Self> {
        Some(self / p)
    }
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self> {
        Some(self - q * v)
    }
}

/// Invariant factors over `Z`.
///
/// The pivot is always an entry of least absolute value. Among those, the
/// sparse path prefers the least Markowitz cost `(row nnz - 1)(col nnz - 1)` to
/// limit fill-in; remaining ties go to the lowest `(row, col)`. Its column is cleared by row operations and its row by
/// column operations; a nonzero remainder restarts with a smaller pivot.
/// Elimination runs in `i64` and restarts with `BigInt` if any entry overflows.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let pivots = pivots::<i64>(m)
        .map(|p| p.into_iter().map(Entry::into_big).collect())
        .unwrap_or_else(|| pivots::<BigInt>(m).expect("arbitrary precision cannot overflow"));
    let diagonal = divisibility_chain(pivots);
    SmithForm {
        rank: diagonal.len(),
        diagonal,
    }
}

fn pivots<T: Entry>(m: &SparseIntMatrix) -> Option<Vec<T>> {
    if m.rows() < DENSE_LIMIT && m.cols() < DENSE_LIMIT {
        dense_pivots(m)
    } else {
        sparse_pivots(m)
    }
}

fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for v in &mut d {
        *v = v.abs();
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}

fn dense_pivots<T: Entry>(m: &SparseIntMatrix) -> Option<Vec<T>> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<T>> = vec![vec![T::from_big(&BigInt::zero())?; nc]; nr];
    for (i, j, v) in m.entries() {
        a[*i][*j] = T::from_big(v)?;
    }
    let mut rows: Vec<usize> = (0..nr).collect();
    let mut cols: Vec<usize> = (0..nc).collect();
    let mut out = Vec::new();
    'outer: loop {
        let mut best: Option<(usize, usize)> = None;
        'scan: for &i in &rows {
            for &j in &cols {
                if a[i][j].is_nil() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[i][j].abs_less(&a[bi][bj])) {
                    best = Some((i, j));
                    if a[i][j].is_unit() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((r, c)) = best else { break };
        let p = a[r][c].clone();
        let mut remainder = false;
        for &i in rows.iter().filter(|&&i| i != r) {
            if a[i][c].is_nil() {
                continue;
            }
            let q = a[i][c].quot(&p)?;
            if !q.is_nil() {
                for &j in &cols {
                    if !a[r][j].is_nil() {
                        a[i][j] = a[i][j].sub_mul(&q, &a[r][j])?;
                    }
                }
            }
            remainder |= !a[i][c].is_nil();
        }
        if remainder {
            continue 'outer;
        }
        for &j in cols.iter().filter(|&&j| j != c) {
            if a[r][j].is_nil() {
                continue;
            }
            let q = a[r][j].quot(&p)?;
            a[r][j] = a[r][j].sub_mul(&q, &p)?;
            remainder |= !a[r][j].is_nil();
        }
        if remainder {
            continue 'outer;
        }
        out.push(p);
        rows.retain(|&i| i != r);
        cols.retain(|&j| j != c);
    }
    Some(out)
}

/// Rows as column-sorted vectors, plus a row index per column.
struct SparseWork<T> {
    rows: Vec<Vec<(usize, T)>>,
    cols: Vec<BTreeSet<usize>>,
}

impl<T: Entry> SparseWork<T> {
    fn new(m: &SparseIntMatrix) -> Option<Self> {
        let mut rows = vec![Vec::new(); m.rows()];
        let mut cols = vec![BTreeSet::new(); m.cols()];
        for (i, j, v) in m.entries() {
            rows[*i].push((*j, T::from_big(v)?));
            cols[*j].insert(*i);
        }
        Some(SparseWork { rows, cols })
    }

    fn get(&self, i: usize, j: usize) -> Option<&T> {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |e| e.0)
            .ok()
            .map(|k| &row[k].1)
    }

    fn pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &T, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                let cost = (row.len() - 1) * (self.cols[*j].len() - 1);
                let better = match best {
                    None => true,
                    Some((_, _, b, bc)) => v.abs_less(b) || (!b.abs_less(v) && cost < bc),
                };
                if better {
                    best = Some((i, *j, v, cost));
                    if cost == 0 && v.is_unit() {
                        return Some((i, *j));
                    }
                }
            }
        }
        best.map(|(i, j, _, _)| (i, j))
    }

    /// `row[i] -= q * row[r]`, merging the sorted rows.
    fn row_axpy(&mut self, i: usize, r: usize, q: &T) -> Option<()> {
        let target = std::mem::take(&mut self.rows[i]);
        let source = &self.rows[r];
        let mut merged = Vec::with_capacity(target.len() + source.len());
        let (mut x, mut y) = (0, 0);
        while x < target.len() || y < source.len() {
            let tj = target.get(x).map_or(usize::MAX, |e| e.0);
            let sj = source.get(y).map_or(usize::MAX, |e| e.0);
            if tj < sj {
                merged.push(target[x].clone());
                x += 1;
                continue;
            }
            let base = if tj == sj {
                x += 1;
                target[x - 1].1.clone()
            } else {
                T::from_big(&BigInt::zero())?
            };
            let v = base.sub_mul(q, &source[y].1)?;
            y += 1;
            if v.is_nil() {
                self.cols[sj].remove(&i);
            } else {
                self.cols[sj].insert(i);
                merged.push((sj, v));
            }
        }
        self.rows[i] = merged;
        Some(())
    }
}

fn sparse_pivots<T: Entry>(m: &SparseIntMatrix) -> Option<Vec<T>> {
    let mut w = SparseWork::<T>::new(m)?;
    let mut out = Vec::new();
    'outer: while let Some((r, c)) = w.pivot() {
        let p = w.get(r, c).expect("pivot is stored").clone();
        let mut remainder = false;
        let others: Vec<usize> = w.cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let q = w.get(i, c).expect("column index is exact").quot(&p)?;
            if !q.is_nil() {
                w.row_axpy(i, r, &q)?;
            }
            remainder |= w.get(i, c).is_some();
        }
        if remainder {
            continue 'outer;
        }
        // Column `c` now holds only the pivot, so column operations touch row `r` alone.
        let row = std::mem::take(&mut w.rows[r]);
        let mut kept = Vec::with_capacity(row.len());
        for (j, v) in row {
            if j == c {
                kept.push((j, v));
                continue;
            }
            let q = v.quot(&p)?;
            let reduced = v.sub_mul(&q, &p)?;
            if reduced.is_nil() {
                w.cols[j].remove(&r);
            } else {
                remainder = true;
                kept.push((j, reduced));
            }
        }
        w.rows[r] = kept;
        if remainder {
            continue 'outer;
        }
        out.push(p);
        w.rows[r].clear();
        w.cols[c].remove(&r);
    }
    Some(out)
}

/// Prime-power decomposition of an invariant factor, ascending.
pub fn prime_power_factors(d: &BigInt) -> Result<Vec<u64>> {
    let mut n = d
        .abs()
        .to_u64()
        .ok_or_else(|| Error::TorsionTooLarge(d.to_string()))?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    Ok(out)
}
