//! Standard Euclidean realizations of the positive roots, in doubled coordinates.

use super::DynkinType;

/// Positive roots of the given type, doubled, in no particular order.
pub(super) fn positive_root_vectors(dynkin: DynkinType, rank: usize) -> Vec<Vec<i64>> {
    match dynkin {
        DynkinType::A => type_a(rank),
        DynkinType::B => type_bcd(rank, Some(2)),
        DynkinType::C => type_bcd(rank, Some(4)),
        DynkinType::D => type_bcd(rank, None),
        DynkinType::G2 => type_g2(),
        DynkinType::F4 => type_f4(),
    }
}

/// `e_{i,j}` for `0 <= i < j <= n`: `-1` at coordinate `i`, `+1` at coordinate `j`.
fn type_a(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let mut v = vec![0; n + 1];
            v[i] = -2;
            v[j] = 2;
            out.push(v);
        }
    }
    out
}

/// `e_i ± e_j` for `i < j`, plus `c * e_i` when `c` is given (doubled `c`).
fn type_bcd(n: usize, short: Option<i64>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for s in [1, -1] {
                let mut v = vec![0; n];
                v[i] = 2;
                v[j] = 2 * s;
                out.push(v);
            }
        }
        if let Some(c) = short {
            let mut v = vec![0; n];
            v[i] = c;
            out.push(v);
        }
    }
    out
}

/// G2 inside the plane `x + y + z = 0`, short simple root `(1,-1,0)`, long `(-2,1,1)`.
fn type_g2() -> Vec<Vec<i64>> {
    let short = [2i64, -2, 0];
    let long = [-4i64, 2, 2];
    [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
        .iter()
        .map(|&(a, b)| (0..3).map(|k| a * short[k] + b * long[k]).collect())
        .collect()
}

fn type_f4() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..4 {
        let mut v = vec![0; 4];
        v[i] = 2;
        out.push(v);
    }
    out.extend(type_bcd(4, None));
    for signs in 0..8u32 {
        let mut v = vec![1i64; 4];
        for k in 0..3 {
            if signs >> k & 1 == 1 {
                v[k + 1] = -1;
            }
        }
        out.push(v);
    }
    out
}
