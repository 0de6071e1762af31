//! Degreewise solution spaces by pure linear algebra.
//!
//! An unknown vector `θ = (θ_1..θ_n)` of homogeneous polynomials of degree `d`
//! is constrained by conditions of the form "`Σ c_i θ_i` is divisible by `α^m`"
//! for a linear form `α`, or "`Σ c_i θ_i = 0`". Divisibility is tested by
//! rewriting in coordinates where `α` is a variable `y` and requiring every
//! coefficient of `y^e`, `e < m`, to vanish.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug)]
pub enum Constraint<E> {
    Divisible { functional: Vec<E>, form: Vec<E>, power: u32 },
    Vanishing { functional: Vec<E> },
}

#[derive(Clone, Debug)]
pub struct LinearConditions<E> {
    pub nvars: usize,
    pub ncoords: usize,
    pub constraints: Vec<Constraint<E>>,
}

/// Incrementally maintained row echelon basis.
struct Echelon<E> {
    rows: BTreeMap<usize, Vec<E>>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    fn push<K: Field<Elem = E>>(&mut self, mut r: Vec<E>, k: &K) {
        loop {
            let Some(p) = r.iter().position(|x| !k.is_zero(x)) else { return };
            match self.rows.get(&p) {
                Some(b) => {
                    let f = r[p].clone();
                    for j in p..r.len() {
                        if !k.is_zero(&b[j]) {
                            r[j] = k.sub_mul(&r[j], &f, &b[j]);
                        }
                    }
                }
                None => {
                    let inv = k.inv(&r[p]).expect("nonzero");
                    for x in r.iter_mut().skip(p) {
                        *x = k.mul(x, &inv);
                    }
                    self.rows.insert(p, r);
                    return;
                }
            }
        }
    }

    fn nullspace<K: Field<Elem = E>>(&self, cols: usize, k: &K) -> Vec<Vec<E>> {
        // back substitution to reduced form
        let mut rows: Vec<(usize, Vec<E>)> = self.rows.iter().map(|(p, r)| (*p, r.clone())).collect();
        for i in (0..rows.len()).rev() {
            let (p, ri) = (rows[i].0, rows[i].1.clone());
            for row in rows.iter_mut().take(i) {
                if !k.is_zero(&row.1[p]) {
                    let f = row.1[p].clone();
                    for j in p..cols {
                        if !k.is_zero(&ri[j]) {
                            row.1[j] = k.sub_mul(&row.1[j], &f, &ri[j]);
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        for f in (0..cols).filter(|c| !self.rows.contains_key(c)) {
            let mut v = vec![k.zero(); cols];
            v[f] = k.one();
            for (p, r) in &rows {
                v[*p] = k.neg(&r[f]);
            }
            out.push(v);
        }
        out
    }
}

/// Images of monomials under the substitution making `α` the variable at
/// its pivot slot, truncated to powers of that variable below `m`.
struct Substitution<'a, K: Field> {
    k: &'a K,
    pivot: usize,
    m: u16,
    var_images: Vec<Poly<K::Elem>>,
    memo: BTreeMap<Monomial, Poly<K::Elem>>,
}

impl<'a, K: Field> Substitution<'a, K> {
    fn new(form: &[K::Elem], m: u32, nvars: usize, k: &'a K) -> Self {
        let pivot = form.iter().position(|c| !k.is_zero(c)).expect("nonzero form");
        let inv = k.inv(&form[pivot]).expect("nonzero");
        let mut var_images = Vec::with_capacity(nvars);
        for i in 0..nvars {
            if i != pivot {
                var_images.push(Poly::var(i, k));
                continue;
            }
            // x_p = (y - Σ_{j≠p} α_j x_j) / α_p, with y stored in slot p
            let mut t = vec![(Monomial::var(pivot), inv.clone())];
            for (j, c) in form.iter().enumerate() {
                if j != pivot && !k.is_zero(c) {
                    t.push((Monomial::var(j), k.neg(&k.mul(c, &inv))));
                }
            }
            var_images.push(Poly::from_terms(t, k));
        }
        Substitution { k, pivot, m: m as u16, var_images, memo: BTreeMap::new() }
    }

    fn truncate(&self, p: Poly<K::Elem>) -> Poly<K::Elem> {
        let t = p.into_terms().into_iter().filter(|(mm, _)| mm.exp(self.pivot) < self.m).collect();
        Poly::from_terms(t, self.k)
    }

    fn image(&mut self, mon: &Monomial) -> Poly<K::Elem> {
        if mon.degree() == 0 {
            return Poly::one(self.k);
        }
        if let Some(p) = self.memo.get(mon) {
            return p.clone();
        }
        let i = (0..self.var_images.len()).find(|&i| mon.exp(i) > 0).expect("positive degree");
        let rest = Monomial::var(i).quotient_of(mon).expect("divides");
        let r = self.image(&rest);
        let p = self.truncate(r.mul(&self.var_images[i], self.k));
        self.memo.insert(*mon, p.clone());
        p
    }
}

/// Basis of the degree-`d` solution space, each element a vector of polynomials.
pub fn graded_piece<K: Field>(conds: &LinearConditions<K::Elem>, d: u32, k: &K) -> Vec<Vec<Poly<K::Elem>>> {
    let mons = Monomial::all_of_degree(conds.nvars, d);
    let nm = mons.len();
    let cols = conds.ncoords * nm;
    let mut ech = Echelon { rows: BTreeMap::new() };
    let mut subs: Vec<(Vec<K::Elem>, u32, Substitution<K>)> = Vec::new();
    for c in &conds.constraints {
        match c {
            Constraint::Vanishing { functional } => {
                for a in 0..nm {
                    let mut row = vec![k.zero(); cols];
                    for (i, ci) in functional.iter().enumerate() {
                        row[i * nm + a] = ci.clone();
                    }
                    ech.push(row, k);
                }
            }
            Constraint::Divisible { functional, form, power } => {
                if *power == 0 {
                    continue;
                }
                let idx = match subs.iter().position(|(f, p, _)| f == form && p == power) {
                    Some(i) => i,
                    None => {
                        subs.push((form.clone(), *power, Substitution::new(form, *power, conds.nvars, k)));
                        subs.len() - 1
                    }
                };
                let sub = &mut subs[idx].2;
                // low part of each monomial's image
                let images: Vec<Poly<K::Elem>> = mons.iter().map(|m| sub.image(m)).collect();
                let mut rows: BTreeMap<Monomial, Vec<K::Elem>> = BTreeMap::new();
                for (a, img) in images.iter().enumerate() {
                    for (mu, x) in img.terms() {
                        let row = rows.entry(*mu).or_insert_with(|| vec![k.zero(); cols]);
                        for (i, ci) in functional.iter().enumerate() {
                            if !k.is_zero(ci) {
                                let cell = &mut row[i * nm + a];
                                *cell = k.add(cell, &k.mul(ci, x));
                            }
                        }
                    }
                }
                for (_, r) in rows {
                    ech.push(r, k);
                }
            }
        }
    }
    ech.nullspace(cols, k)
        .into_iter()
        .map(|v| {
            (0..conds.ncoords)
                .map(|i| {
                    let t = (0..nm).map(|a| (mons[a], v[i * nm + a].clone())).collect();
                    Poly::from_terms(t, k)
                })
                .collect()
        })
        .collect()
}

/// Dimension of the degree-`d` solution space.
pub fn graded_dimension<K: Field>(conds: &LinearConditions<K::Elem>, d: u32, k: &K) -> usize {
    graded_piece(conds, d, k).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rat, Rationals};

    fn r(x: i64) -> Rat {
        Rat::from_int(x)
    }

    #[test]
    fn boolean_derivations_degree_one() {
        // θ = (θ_1, θ_2, θ_3) with θ_i divisible by x_i
        let k = Rationals;
        let mut cs = Vec::new();
        for i in 0..3 {
            let mut e = vec![r(0); 3];
            e[i] = r(1);
            cs.push(Constraint::Divisible { functional: e.clone(), form: e, power: 1 });
        }
        let conds = LinearConditions { nvars: 3, ncoords: 3, constraints: cs };
        assert_eq!(graded_dimension(&conds, 1, &k), 3);
        assert_eq!(graded_dimension(&conds, 0, &k), 0);
    }

    #[test]
    fn divisibility_by_power() {
        // f in K[x,y] of degree 3 divisible by (x-y)^2: dimension 2
        let k = Rationals;
        let conds = LinearConditions {
            nvars: 2,
            ncoords: 1,
            constraints: vec![Constraint::Divisible { functional: vec![r(1)], form: vec![r(1), r(-1)], power: 2 }],
        };
        let b = graded_piece(&conds, 3, &k);
        assert_eq!(b.len(), 2);
        let sq = Poly::linear(&[r(1), r(-1)], &k).pow(2, &k);
        for v in b {
            assert!(v[0].div_exact(&sq, &k).is_some());
        }
    }
}
