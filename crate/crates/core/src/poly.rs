//! Sparse multivariate polynomials in at most [`MAX_VARS`] variables.
//!
//! Terms are kept sorted by degree-reverse-lexicographic order, largest
//! first, and zero coefficients are never stored.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use crate::field::Field;

pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], deg: 0 };

    pub fn var(i: usize) -> Monomial {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exps(e: &[u16]) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[..e.len()].copy_from_slice(e);
        m.deg = e.iter().map(|&x| x as u32).sum();
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += o.exps[i];
        }
        m.deg += o.deg;
        m
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exps[i] <= o.exps[i])
    }

    /// `o / self` when `self | o`.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        Some(m)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(o.exps[i]);
        }
        m.deg = m.exps.iter().map(|&x| x as u32).sum();
        m
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || o.exps[i] == 0)
    }

    /// Drops variable `v`, shifting later variables down; `None` if it occurs.
    pub fn without_var(&self, v: usize) -> Option<Monomial> {
        if self.exps[v] != 0 {
            return None;
        }
        let mut m = Monomial::ONE;
        let mut j = 0;
        for i in 0..MAX_VARS {
            if i != v {
                m.exps[j] = self.exps[i];
                j += 1;
            }
        }
        m.deg = self.deg;
        Some(m)
    }

    /// All monomials of total degree `d` in `n` variables, in decreasing order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        let mut cur = [0u16; MAX_VARS];
        fn rec(i: usize, n: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
            if i == n - 1 {
                cur[i] = left as u16;
                out.push(Monomial::from_exps(&cur[..n]));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, n, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, n, d, &mut cur, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl Ord for Monomial {
    /// Degree reverse lexicographic order.
    fn cmp(&self, o: &Monomial) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            c => return c,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != o.exps[i] {
                return o.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Monomial) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant<K: Field<Elem = E>>(c: E, k: &K) -> Self {
        Self::term(Monomial::ONE, c, k)
    }

    pub fn one<K: Field<Elem = E>>(k: &K) -> Self {
        Self::constant(k.one(), k)
    }

    pub fn term<K: Field<Elem = E>>(m: Monomial, c: E, k: &K) -> Self {
        if k.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: alloc::vec![(m, c)] }
        }
    }

    pub fn var<K: Field<Elem = E>>(i: usize, k: &K) -> Self {
        Self::term(Monomial::var(i), k.one(), k)
    }

    /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms<K: Field<Elem = E>>(mut t: Vec<(Monomial, E)>, k: &K) -> Self {
        t.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, E)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = k.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !k.is_zero(c));
        Poly { terms: out }
    }

    /// The linear form `Σ c_i x_i`.
    pub fn linear<K: Field<Elem = E>>(coeffs: &[E], k: &K) -> Self {
        let mut t: Vec<(Monomial, E)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| (Monomial::var(i), c.clone()))
            .collect();
        t.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms: t }
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.binary_search_by(|(t, _)| m.cmp(t)).ok().map(|i| &self.terms[i].1)
    }

    fn merge<K: Field<Elem = E>>(&self, o: &Self, k: &K, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { k.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { k.sub(&a[i].1, &b[j].1) } else { k.add(&a[i].1, &b[j].1) };
                    if !k.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { k.neg(&t.1) } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add<K: Field<Elem = E>>(&self, o: &Self, k: &K) -> Self {
        self.merge(o, k, false)
    }

    pub fn sub<K: Field<Elem = E>>(&self, o: &Self, k: &K) -> Self {
        self.merge(o, k, true)
    }

    pub fn neg<K: Field<Elem = E>>(&self, k: &K) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, k.neg(c))).collect() }
    }

    pub fn scale<K: Field<Elem = E>>(&self, c: &E, k: &K) -> Self {
        if k.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, k.mul(a, c))).collect() }
    }

    /// Multiplication by the term `c·m` keeps the order of terms.
    pub fn mul_term<K: Field<Elem = E>>(&self, m: &Monomial, c: &E, k: &K) -> Self {
        if k.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), k.mul(a, c))).collect() }
    }

    pub fn mul<K: Field<Elem = E>>(&self, o: &Self, k: &K) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c, k);
        }
        let mut t = Vec::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                t.push((m1.mul(m2), k.mul(c1, c2)));
            }
        }
        Self::from_terms(t, k)
    }

    pub fn pow<K: Field<Elem = E>>(&self, e: u32, k: &K) -> Self {
        let mut acc = Self::one(k);
        for _ in 0..e {
            acc = acc.mul(self, k);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact<K: Field<Elem = E>>(&self, d: &Self, k: &K) -> Option<Self> {
        let (dm, dc) = d.lead()?;
        let dinv = k.inv(dc).ok()?;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.lead() {
            let qm = dm.quotient_of(m)?;
            let qc = k.mul(c, &dinv);
            rem = rem.sub(&d.mul_term(&qm, &qc, k), k);
            q.push((qm, qc));
        }
        Some(Poly { terms: q })
    }

    /// Divides by `x_v^e` exactly.
    pub fn div_var_pow(&self, v: usize, e: u16) -> Option<Self> {
        let m = Monomial::var_pow(v, e);
        let terms =
            self.terms.iter().map(|(t, c)| m.quotient_of(t).map(|q| (q, c.clone()))).collect::<Option<Vec<_>>>()?;
        Some(Poly { terms })
    }

    /// Sets `x_v = 0` and renumbers the remaining variables.
    pub fn restrict_var(&self, v: usize) -> Self {
        let mut terms: Vec<(Monomial, E)> =
            self.terms.iter().filter_map(|(m, c)| m.without_var(v).map(|m| (m, c.clone()))).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Substitutes `x_i ↦ images[i]`.
    pub fn substitute<K: Field<Elem = E>>(&self, images: &[Poly<E>], k: &K) -> Self {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone(), k);
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul(img, k);
                }
            }
            acc = acc.add(&t, k);
        }
        acc
    }

    /// Makes the leading coefficient one.
    pub fn monic<K: Field<Elem = E>>(&self, k: &K) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&k.inv(c).expect("nonzero lead"), k),
        }
    }

    pub fn map_coeffs<K: Field, F: Fn(&E) -> K::Elem>(&self, f: F, k: &K) -> Poly<K::Elem> {
        let t = self.terms.iter().map(|(m, c)| (*m, f(c))).collect();
        Poly::from_terms(t, k)
    }

    /// Human readable rendering with the given variable names.
    pub fn display<K: Field<Elem = E>>(&self, names: &[&str], k: &K) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let q = k.to_rat(c);
            let neg = q.signum() < 0;
            let a = if neg { q.neg() } else { q };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = a == crate::field::Rat::ONE;
            if !unit || m.degree() == 0 {
                let _ = write!(s, "{a}");
            }
            let mut first = unit;
            for (i, name) in names.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                s.push_str(name);
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
        }
        s
    }
}

/// Default variable names `x1, x2, ...`.
pub fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| alloc::format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rat, Rationals};

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn degrevlex_order() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        // x^2 > xy > y^2 > xz > yz > z^2
        let seq = [x.mul(&x), x.mul(&y), y.mul(&y), x.mul(&z), y.mul(&z), z.mul(&z)];
        for w in seq.windows(2) {
            assert!(w[0] > w[1], "{:?} > {:?}", w[0], w[1]);
        }
        assert_eq!(Monomial::all_of_degree(3, 2), seq.to_vec());
        assert_eq!(Monomial::all_of_degree(4, 3).len(), 20);
    }

    #[test]
    fn exact_division() {
        let k = Rationals;
        let x = Poly::var(0, &k);
        let y = Poly::var(1, &k);
        let a = x.sub(&y, &k);
        let b = x.add(&y, &k);
        let p = a.mul(&b, &k).mul(&a, &k);
        assert_eq!(p.div_exact(&a, &k).unwrap(), a.mul(&b, &k));
        assert!(p.div_exact(&x, &k).is_none());
        let s = Poly::linear(&[q(1), q(3)], &k);
        assert_eq!(s.display(&["x", "y"], &k), "x + 3*y");
        assert_eq!(p.restrict_var(1), x.pow(3, &k));
    }
}
