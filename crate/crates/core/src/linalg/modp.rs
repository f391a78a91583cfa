use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

use super::SparseIntMatrix;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let (mut base, mut exp, mut acc) = (a as u128, p - 2, 1u128);
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = r.to_i128().expect("remainder fits");
    r.rem_euclid(p as i128) as u64
}

/// Rank over `F_p`, by reducing rows one at a time against an echelon basis
/// keyed by leading column. Rows are column-sorted and kept monic.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); m.rows()];
    for (i, j, v) in m.entries() {
        let r = reduce(v, p);
        if r != 0 {
            rows[*i].push((*j, r));
        }
    }
    let mut basis: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for mut row in rows {
        while let Some(&(lead, lv)) = row.first() {
            match basis.get(&lead) {
                Some(b) => row = sub_multiple(&row, lv, b, p),
                None => {
                    let inv = inverse(lv, p);
                    for (_, v) in &mut row {
                        *v = mul(*v, inv, p);
                    }
                    basis.insert(lead, row);
                    break;
                }
            }
        }
    }
    Ok(basis.len())
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

/// `row - c * b` for sorted sparse rows.
fn sub_multiple(row: &[(usize, u64)], c: u64, b: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < row.len() || y < b.len() {
        let rj = row.get(x).map_or(usize::MAX, |e| e.0);
        let bj = b.get(y).map_or(usize::MAX, |e| e.0);
        if rj < bj {
            out.push(row[x]);
            x += 1;
            continue;
        }
        let base = if rj == bj {
            x += 1;
            row[x - 1].1
        } else {
            0
        };
        let v = (base + p - mul(c, b[y].1, p)) % p;
        y += 1;
        if v != 0 {
            out.push((bj, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let two = SparseIntMatrix::from_dense(&[vec![2]]);
        assert_eq!(rank_mod_p(&two, 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&two, 3).unwrap(), 1);
        assert!(matches!(rank_mod_p(&two, 4), Err(Error::NotPrime(4))));
        assert!(matches!(rank_mod_p(&two, 1), Err(Error::NotPrime(1))));
        let m = SparseIntMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]]);
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 2);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 2);
        let n = SparseIntMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(rank_mod_p(&n, 2).unwrap(), 2);
        assert_eq!(rank_mod_p(&n, 3).unwrap(), 3);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(inverse(3, 7), 5);
    }
}
