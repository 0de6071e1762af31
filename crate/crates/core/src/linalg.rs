//! Dense exact linear algebra over a field.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(m: &mut Matrix<K::Elem>, k: &K) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut().skip(c) {
            *x = k.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || k.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !k.is_zero(&pivot_row[j]) {
                    row[j] = k.sub_mul(&row[j], &f, &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(rows);
    pivots
}

pub fn rank<K: Field>(m: &Matrix<K::Elem>, k: &K) -> usize {
    let mut a = m.clone();
    rref(&mut a, k).len()
}

/// Basis of `{v : m v = 0}` for a matrix with `cols` columns.
pub fn nullspace<K: Field>(m: &Matrix<K::Elem>, cols: usize, k: &K) -> Vec<Vec<K::Elem>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, k);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![k.zero(); cols];
        v[f] = k.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = k.neg(&a[r][f]);
        }
        out.push(v);
    }
    out
}

/// Row reduces `c` while recording the row operations: returns `(R, E, pivots)`
/// with `E · c = R` and `E` invertible.
pub fn rref_with_transform<K: Field>(
    c: &Matrix<K::Elem>,
    cols: usize,
    k: &K,
) -> (Matrix<K::Elem>, Matrix<K::Elem>, Vec<usize>) {
    let rows = c.len();
    let mut aug: Matrix<K::Elem> = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..rows).map(|j| if i == j { k.one() } else { k.zero() }));
            r
        })
        .collect();
    // Only pivot inside the first `cols` columns.
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&aug[i][col])) else { continue };
        aug.swap(r, p);
        let inv = k.inv(&aug[r][col]).expect("nonzero pivot");
        for x in aug[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pr = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == r || k.is_zero(&row[col]) {
                continue;
            }
            let f = row[col].clone();
            for j in 0..cols + rows {
                if !k.is_zero(&pr[j]) {
                    row[j] = k.sub_mul(&row[j], &f, &pr[j]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut red = Vec::with_capacity(rows);
    let mut e = Vec::with_capacity(rows);
    for row in aug {
        let (a, b) = row.split_at(cols);
        red.push(a.to_vec());
        e.push(b.to_vec());
    }
    (red, e, pivots)
}

/// Determinant by Gaussian elimination.
pub fn det<K: Field>(m: &Matrix<K::Elem>, k: &K) -> K::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !k.is_zero(&a[i][c])) else { return k.zero() };
        if p != c {
            a.swap(p, c);
            d = k.neg(&d);
        }
        d = k.mul(&d, &a[c][c]);
        let inv = k.inv(&a[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if k.is_zero(&a[i][c]) {
                continue;
            }
            let f = k.mul(&a[i][c], &inv);
            for j in c..n {
                let t = a[c][j].clone();
                a[i][j] = k.sub_mul(&a[i][j], &f, &t);
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rat, Rationals};

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect()
    }

    #[test]
    fn nullspace_and_rank() {
        let k = Rationals;
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a, &k), 2);
        let ns = nullspace(&a, 3, &k);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let s = row.iter().zip(&ns[0]).fold(Rat::ZERO, |acc, (x, y)| acc.add(&x.mul(y)));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn transform_reproduces_rref() {
        let k = Rationals;
        let a = m(&[&[0, 2, 1], &[1, 1, 1], &[1, 3, 2]]);
        let (r, e, piv) = rref_with_transform(&a, 3, &k);
        assert_eq!(piv, vec![0, 1]);
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(Rat::ZERO, |acc, t| acc.add(&e[i][t].mul(&a[t][j])));
                assert_eq!(s, r[i][j]);
            }
        }
        assert_eq!(det(&a, &k), Rat::ZERO);
        assert_eq!(det(&m(&[&[2, 1], &[1, 3]]), &k), Rat::from_int(5));
    }
}
