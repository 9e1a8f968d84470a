//! Dense linear algebra over `GF(q)`.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldCtx, Fq};

/// Basis of the right kernel of a `rows x cols` matrix.
pub fn kernel(k: &FieldCtx, rows: &[Vec<Fq>], cols: usize) -> Vec<Vec<Fq>> {
    let mut m: Vec<Vec<Fq>> = rows.iter().filter(|r| r.iter().any(|a| !a.is_zero())).cloned().collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = k.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = k.sub(*x, k.mul(f, y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Fq::ZERO; cols];
        v[free] = Fq::ONE;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = k.neg(m[i][free]);
        }
        out.push(v);
    }
    out
}

/// Rank of a matrix.
pub fn rank(k: &FieldCtx, rows: &[Vec<Fq>], cols: usize) -> usize {
    cols - kernel(k, rows, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_small() {
        let k = FieldCtx::prime(7).unwrap();
        let rows = vec![vec![Fq(1), Fq(2), Fq(3)], vec![Fq(2), Fq(4), Fq(6)]];
        let ker = kernel(&k, &rows, 3);
        assert_eq!(ker.len(), 2);
        for v in ker {
            let s = (0..3).fold(Fq::ZERO, |acc, i| k.add(acc, k.mul(rows[0][i], v[i])));
            assert!(s.is_zero());
        }
    }
}
