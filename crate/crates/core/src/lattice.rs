//! Intersection lattice, Möbius function and characteristic polynomial.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::linalg;

/// A flat `X`, identified by the set of hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    pub hyperplanes: Vec<usize>,
    pub codim: usize,
    /// Reduced row echelon basis of the forms vanishing on `X`.
    pub basis: Vec<Vec<Rat>>,
}

impl Flat {
    pub fn contains_hyperplane(&self, h: usize) -> bool {
        self.hyperplanes.binary_search(&h).is_ok()
    }

    /// `self ⊆ other` as subspaces.
    pub fn is_below(&self, other: &Flat) -> bool {
        other.hyperplanes.iter().all(|h| self.contains_hyperplane(*h))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lattice {
    pub dim: usize,
    pub flats: Vec<Flat>,
    /// Flat indices by codimension.
    pub strata: Vec<Vec<usize>>,
    /// `covers[x]`: flats of codimension one more contained in `x`.
    pub covers: Vec<Vec<usize>>,
    pub mobius: Vec<i64>,
}

/// Default cap on the number of flats.
pub const DEFAULT_FLAT_CAP: usize = 200_000;

fn span_closure(a: &Arrangement, hs: &[usize]) -> (Vec<usize>, Vec<Vec<Rat>>) {
    let k = a.tag_field();
    let mut m: Vec<Vec<Rat>> = hs.iter().map(|&i| a.form(i).to_vec()).collect();
    let piv = linalg::rref(&mut m, &k);
    m.truncate(piv.len());
    let members = (0..a.len())
        .filter(|&j| {
            // reduce α_j by the basis; zero means α_j vanishes on the flat
            let mut v = a.form(j).to_vec();
            for (r, &p) in piv.iter().enumerate() {
                if !v[p].is_zero() {
                    let f = v[p].clone();
                    for c in 0..v.len() {
                        v[c] = k.sub(&v[c], &k.mul(&f, &m[r][c]));
                    }
                }
            }
            v.iter().all(|x| x.is_zero())
        })
        .collect();
    (members, m)
}

/// The flat spanned by (the intersection of) the given hyperplanes.
pub fn flat_of(a: &Arrangement, hs: &[usize]) -> Flat {
    let (members, basis) = span_closure(a, hs);
    Flat { codim: basis.len(), hyperplanes: members, basis }
}

pub fn intersection_lattice(a: &Arrangement) -> Result<Lattice> {
    intersection_lattice_capped(a, DEFAULT_FLAT_CAP)
}

pub fn intersection_lattice_capped(a: &Arrangement, cap: usize) -> Result<Lattice> {
    let mut flats: Vec<Flat> = vec![Flat { hyperplanes: Vec::new(), codim: 0, basis: Vec::new() }];
    let mut strata: Vec<Vec<usize>> = vec![vec![0]];
    let mut covers: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    index.insert(Vec::new(), 0);
    let rank = a.rank();
    for c in 0..rank {
        let mut next = Vec::new();
        for &x in &strata[c] {
            let base = flats[x].hyperplanes.clone();
            for h in 0..a.len() {
                if flats[x].contains_hyperplane(h) {
                    continue;
                }
                let mut hs = base.clone();
                hs.push(h);
                let (members, basis) = span_closure(a, &hs);
                let y = match index.get(&members) {
                    Some(&y) => y,
                    None => {
                        if flats.len() >= cap {
                            return Err(Error::CutoffExceeded(alloc::format!("more than {cap} flats")));
                        }
                        let y = flats.len();
                        index.insert(members.clone(), y);
                        flats.push(Flat { hyperplanes: members, codim: basis.len(), basis });
                        covers.push(Vec::new());
                        next.push(y);
                        y
                    }
                };
                if !covers[x].contains(&y) {
                    covers[x].push(y);
                }
            }
        }
        next.sort_by(|p, q| flats[*p].hyperplanes.cmp(&flats[*q].hyperplanes));
        strata.push(next);
    }
    // Möbius: μ(V) = 1, μ(X) = -Σ_{Y strictly above X} μ(Y)
    let mut mobius = vec![0i64; flats.len()];
    mobius[0] = 1;
    for c in 1..strata.len() {
        for &x in &strata[c] {
            let mut s = 0i64;
            for lower in strata.iter().take(c) {
                for &y in lower {
                    if flats[y].hyperplanes.iter().all(|h| flats[x].contains_hyperplane(*h)) {
                        s += mobius[y];
                    }
                }
            }
            mobius[x] = -s;
        }
    }
    Ok(Lattice { dim: a.dim(), flats, strata, covers, mobius })
}

impl Lattice {
    pub fn stratum_sizes(&self) -> Vec<usize> {
        self.strata.iter().map(|s| s.len()).collect()
    }

    /// Index of the flat with exactly this hyperplane set.
    pub fn find(&self, hyperplanes: &[usize]) -> Option<usize> {
        self.flats.iter().position(|f| f.hyperplanes == hyperplanes)
    }

    pub fn characteristic_polynomial(&self) -> CharPoly {
        let mut coeffs = vec![0i64; self.dim + 1];
        for (x, f) in self.flats.iter().enumerate() {
            coeffs[self.dim - f.codim] += self.mobius[x];
        }
        CharPoly::new(coeffs)
    }

    /// Nonzero flats contained in hyperplane `h`.
    pub fn flats_in(&self, h: usize) -> Vec<usize> {
        (0..self.flats.len()).filter(|&x| self.flats[x].contains_hyperplane(h)).collect()
    }
}

/// Integer polynomial in `t`, coefficient of `t^i` at index `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    pub coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn new(mut coeffs: Vec<i64>) -> CharPoly {
        while coeffs.len() > 1 && *coeffs.last().expect("nonempty") == 0 {
            coeffs.pop();
        }
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, t: i64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, c| acc * t as i128 + *c as i128)
    }

    /// `∏ (t - d_i)`.
    pub fn from_roots(roots: &[i64]) -> CharPoly {
        let mut c = vec![1i64];
        for &d in roots {
            let mut n = vec![0i64; c.len() + 1];
            for (i, x) in c.iter().enumerate() {
                n[i + 1] += x;
                n[i] -= d * x;
            }
            c = n;
        }
        CharPoly::new(c)
    }

    /// Quotient by `(t - 1)` when `χ(1) = 0`.
    pub fn reduced(&self) -> Option<CharPoly> {
        if self.eval(1) != 0 || self.coeffs.len() < 2 {
            return None;
        }
        // synthetic division by (t - 1), highest degree first
        let n = self.coeffs.len();
        let mut q = vec![0i64; n - 1];
        let mut acc = 0i64;
        for i in (1..n).rev() {
            acc += self.coeffs[i];
            q[i - 1] = acc;
        }
        Some(CharPoly::new(q))
    }

    /// Unsigned coefficients `b_i` with `χ = Σ (-1)^{deg-i} b_i t^i`.
    pub fn betti(&self) -> Vec<i64> {
        let d = self.degree();
        (0..=d).map(|i| if (d - i).is_multiple_of(2) { self.coeff(i) } else { -self.coeff(i) }).collect()
    }

    pub fn sub(&self, o: &CharPoly) -> CharPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        CharPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn display(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            let neg = c < 0;
            let a = c.unsigned_abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (i, a) {
                (0, _) => write!(s, "{a}").unwrap(),
                (1, 1) => s.push('t'),
                (1, _) => write!(s, "{a}t").unwrap(),
                (_, 1) => write!(s, "t^{i}").unwrap(),
                _ => write!(s, "{a}t^{i}").unwrap(),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

pub fn characteristic_polynomial(a: &Arrangement) -> Result<CharPoly> {
    Ok(intersection_lattice(a)?.characteristic_polynomial())
}

/// Whitney's formula `χ(t) = Σ_{B ⊆ A} (-1)^{|B|} t^{ℓ - rank B}`; exponential,
/// used as an independent check.
pub fn char_poly_by_subsets(a: &Arrangement) -> CharPoly {
    let n = a.len();
    let mut coeffs = vec![0i64; a.dim() + 1];
    for mask in 0u64..(1u64 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let r = a.rank_of(&s);
        coeffs[a.dim() - r] += if s.len().is_multiple_of(2) { 1 } else { -1 };
    }
    CharPoly::new(coeffs)
}

/// Forms vanishing on a flat, as field elements.
pub fn flat_forms<K: Field>(a: &Arrangement, f: &Flat, k: &K) -> Result<Vec<Vec<K::Elem>>> {
    f.hyperplanes.iter().map(|&h| crate::arrangement::form_in(a.form(h), k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_lattice() {
        let a = Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let l = intersection_lattice(&a).unwrap();
        assert_eq!(l.stratum_sizes(), vec![1, 3, 3, 1]);
        assert_eq!(l.characteristic_polynomial(), CharPoly::from_roots(&[1, 1, 1]));
    }

    #[test]
    fn generic_three_four() {
        let a = Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let chi = characteristic_polynomial(&a).unwrap();
        assert_eq!(chi.coeffs, vec![-3, 6, -4, 1]);
        assert_eq!(chi, char_poly_by_subsets(&a));
        assert_eq!(chi.reduced().unwrap().coeffs, vec![3, -3, 1]);
        assert_eq!(chi.display(), "t^3 - 4t^2 + 6t - 3");
    }

    #[test]
    fn empty_arrangement() {
        let a = Arrangement::empty(3, crate::field::FieldTag::Rational);
        assert_eq!(characteristic_polynomial(&a).unwrap().coeffs, vec![0, 0, 0, 1]);
    }
}
