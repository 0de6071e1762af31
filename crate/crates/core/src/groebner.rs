//! Gröbner bases and syzygies for homogeneous submodules of graded free modules.
//!
//! Every element handled here must be homogeneous: a term `c·x^a·e_i` has degree
//! `|a| + shift_i`, and all terms of an element share one degree. The algorithm
//! is Buchberger's, run degree by degree, with the Gebauer–Möller pair criteria.
//! Syzygies come from an augmented computation: each generator `g_k` is paired
//! with a unit vector in an auxiliary block placed below the main block, so the
//! basis elements whose main part vanishes form a Gröbner basis of the syzygies.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Poly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Compare positions first (lower index is larger), then degrevlex.
    #[default]
    PositionOverTerm,
    /// Compare degrevlex first, then positions.
    TermOverPosition,
}

/// A term `coeff · mon · e_comp`.
pub type Term<E> = (u32, Monomial, E);

/// Element of a free module; terms sorted decreasingly in the module's order.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<E> {
    terms: Vec<Term<E>>,
}

impl<E> Vector<E> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }
    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
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
    pub fn lead(&self) -> Option<&Term<E>> {
        self.terms.first()
    }
}

/// A graded free module `⊕ S(-shift_i)` in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub nvars: usize,
    pub shifts: Vec<i32>,
    pub order: TermOrder,
    /// Components `>= split` form a block below all components `< split`.
    pub split: Option<u32>,
}

impl FreeModule {
    pub fn new(nvars: usize, shifts: Vec<i32>) -> FreeModule {
        FreeModule { nvars, shifts, order: TermOrder::default(), split: None }
    }

    pub fn with_order(mut self, order: TermOrder) -> FreeModule {
        self.order = order;
        self
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn cmp_key(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        if let Some(s) = self.split {
            match ((b.0 >= s), (a.0 >= s)) {
                (true, false) => return Ordering::Greater,
                (false, true) => return Ordering::Less,
                _ => {}
            }
        }
        match self.order {
            TermOrder::PositionOverTerm => b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)),
            TermOrder::TermOverPosition => a.1.cmp(b.1).then_with(|| b.0.cmp(&a.0)),
        }
    }

    pub fn term_degree(&self, comp: u32, m: &Monomial) -> i32 {
        m.degree() as i32 + self.shifts[comp as usize]
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree<E>(&self, v: &Vector<E>) -> Option<i32> {
        v.lead().map(|(c, m, _)| self.term_degree(*c, m))
    }

    pub fn is_homogeneous<E>(&self, v: &Vector<E>) -> bool {
        match self.degree(v) {
            None => true,
            Some(d) => v.terms.iter().all(|(c, m, _)| self.term_degree(*c, m) == d),
        }
    }

    pub fn from_terms<K: Field>(&self, mut t: Vec<Term<K::Elem>>, k: &K) -> Vector<K::Elem> {
        t.sort_by(|a, b| self.cmp_key((b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<Term<K::Elem>> = Vec::with_capacity(t.len());
        for (c, m, x) in t {
            match out.last_mut() {
                Some(last) if last.0 == c && last.1 == m => last.2 = k.add(&last.2, &x),
                _ => out.push((c, m, x)),
            }
        }
        out.retain(|t| !k.is_zero(&t.2));
        Vector { terms: out }
    }

    pub fn from_polys<K: Field>(&self, p: &[Poly<K::Elem>], k: &K) -> Vector<K::Elem> {
        let mut t = Vec::new();
        for (i, f) in p.iter().enumerate() {
            for (m, c) in f.terms() {
                t.push((i as u32, *m, c.clone()));
            }
        }
        self.from_terms(t, k)
    }

    pub fn to_polys<K: Field>(&self, v: &Vector<K::Elem>, k: &K) -> Vec<Poly<K::Elem>> {
        let mut buckets: Vec<Vec<(Monomial, K::Elem)>> = vec![Vec::new(); self.rank()];
        for (c, m, x) in &v.terms {
            buckets[*c as usize].push((*m, x.clone()));
        }
        buckets.into_iter().map(|t| Poly::from_terms(t, k)).collect()
    }

    pub fn unit<K: Field>(&self, i: usize, k: &K) -> Vector<K::Elem> {
        Vector { terms: vec![(i as u32, Monomial::ONE, k.one())] }
    }

    fn merge<K: Field>(
        &self,
        a: &[Term<K::Elem>],
        b: &[Term<K::Elem>],
        bm: &Monomial,
        bc: &K::Elem,
        out: &mut Vec<Term<K::Elem>>,
        k: &K,
    ) {
        // out = a - bc * bm * b
        let (mut i, mut j) = (0, 0);
        let mut bt: Option<(u32, Monomial)> = b.first().map(|t| (t.0, t.1.mul(bm)));
        while i < a.len() {
            let Some((bcomp, bmon)) = bt else { break };
            match self.cmp_key((a[i].0, &a[i].1), (bcomp, &bmon)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bcomp, bmon, k.neg(&k.mul(bc, &b[j].2))));
                    j += 1;
                    bt = b.get(j).map(|t| (t.0, t.1.mul(bm)));
                }
                Ordering::Equal => {
                    let c = k.sub_mul(&a[i].2, bc, &b[j].2);
                    if !k.is_zero(&c) {
                        out.push((bcomp, bmon, c));
                    }
                    i += 1;
                    j += 1;
                    bt = b.get(j).map(|t| (t.0, t.1.mul(bm)));
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while j < b.len() {
            out.push((b[j].0, b[j].1.mul(bm), k.neg(&k.mul(bc, &b[j].2))));
            j += 1;
        }
    }

    /// `a - c·m·b`
    pub fn sub_scaled<K: Field>(
        &self,
        a: &Vector<K::Elem>,
        c: &K::Elem,
        m: &Monomial,
        b: &Vector<K::Elem>,
        k: &K,
    ) -> Vector<K::Elem> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        self.merge(&a.terms, &b.terms, m, c, &mut out, k);
        Vector { terms: out }
    }

    pub fn add<K: Field>(&self, a: &Vector<K::Elem>, b: &Vector<K::Elem>, k: &K) -> Vector<K::Elem> {
        self.sub_scaled(a, &k.neg(&k.one()), &Monomial::ONE, b, k)
    }

    pub fn sub<K: Field>(&self, a: &Vector<K::Elem>, b: &Vector<K::Elem>, k: &K) -> Vector<K::Elem> {
        self.sub_scaled(a, &k.one(), &Monomial::ONE, b, k)
    }

    pub fn scale<K: Field>(&self, a: &Vector<K::Elem>, c: &K::Elem, k: &K) -> Vector<K::Elem> {
        if k.is_zero(c) {
            return Vector::zero();
        }
        Vector { terms: a.terms.iter().map(|(i, m, x)| (*i, *m, k.mul(x, c))).collect() }
    }

    pub fn mul_term<K: Field>(&self, a: &Vector<K::Elem>, m: &Monomial, c: &K::Elem, k: &K) -> Vector<K::Elem> {
        if k.is_zero(c) {
            return Vector::zero();
        }
        Vector { terms: a.terms.iter().map(|(i, t, x)| (*i, t.mul(m), k.mul(x, c))).collect() }
    }

    pub fn mul_poly<K: Field>(&self, a: &Vector<K::Elem>, p: &Poly<K::Elem>, k: &K) -> Vector<K::Elem> {
        let mut t = Vec::with_capacity(a.len() * p.len());
        for (m, c) in p.terms() {
            for (i, am, x) in &a.terms {
                t.push((*i, am.mul(m), k.mul(x, c)));
            }
        }
        self.from_terms(t, k)
    }

    /// Applies a module map given by the images of the basis vectors.
    pub fn apply_map<K: Field>(
        &self,
        target: &FreeModule,
        images: &[Vector<K::Elem>],
        v: &Vector<K::Elem>,
        k: &K,
    ) -> Vector<K::Elem> {
        let mut t = Vec::new();
        for (i, m, c) in &v.terms {
            for (j, im, x) in &images[*i as usize].terms {
                t.push((*j, im.mul(m), k.mul(c, x)));
            }
        }
        target.from_terms(t, k)
    }

    /// Re-sorts terms after changing the order or the block split.
    pub fn normalize<K: Field>(&self, v: &Vector<K::Elem>, k: &K) -> Vector<K::Elem> {
        self.from_terms(v.terms.clone(), k)
    }

    /// Removes component indices `from..` into `0..` by subtracting an offset.
    pub fn shift_components<E: Clone>(v: &Vector<E>, offset: u32) -> Vector<E> {
        Vector { terms: v.terms.iter().map(|(c, m, x)| (*c - offset, *m, x.clone())).collect() }
    }

    pub fn make_monic<K: Field>(&self, v: &Vector<K::Elem>, k: &K) -> Vector<K::Elem> {
        match v.lead() {
            None => Vector::zero(),
            Some((_, _, c)) if k.is_one(c) => v.clone(),
            Some((_, _, c)) => self.scale(v, &k.inv(c).expect("nonzero lead"), k),
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Degree-by-degree Buchberger state.
struct Engine<'a, K: Field> {
    k: &'a K,
    fm: &'a FreeModule,
    budget: &'a Budget,
    elems: Vec<Vector<K::Elem>>,
    /// `(comp, lead monomial)` of each element.
    leads: Vec<(u32, Monomial)>,
    by_comp: BTreeMap<u32, Vec<usize>>,
    pairs: BTreeMap<i32, Vec<Pair>>,
    buf: Vec<Term<K::Elem>>,
}

impl<'a, K: Field> Engine<'a, K> {
    fn new(fm: &'a FreeModule, k: &'a K, budget: &'a Budget) -> Self {
        Engine {
            k,
            fm,
            budget,
            elems: Vec::new(),
            leads: Vec::new(),
            by_comp: BTreeMap::new(),
            pairs: BTreeMap::new(),
            buf: Vec::new(),
        }
    }

    fn find_reducer(&self, comp: u32, m: &Monomial) -> Option<usize> {
        self.by_comp.get(&comp)?.iter().copied().find(|&i| self.leads[i].1.divides(m))
    }

    /// Full reduction with respect to the current basis.
    fn reduce(&mut self, mut f: Vector<K::Elem>) -> Result<Vector<K::Elem>> {
        let mut pos = 0;
        while pos < f.terms.len() {
            let (comp, mon) = (f.terms[pos].0, f.terms[pos].1);
            let Some(r) = self.find_reducer(comp, &mon) else {
                pos += 1;
                continue;
            };
            let q = self.leads[r].1.quotient_of(&mon).expect("divides");
            let c = f.terms[pos].2.clone();
            let g = &self.elems[r];
            self.budget.tick((f.terms.len() - pos + g.len()) as u64)?;
            self.buf.clear();
            self.buf.extend_from_slice(&f.terms[..pos]);
            // the lead terms cancel exactly; merge the tails
            self.fm.merge(&f.terms[pos + 1..], &g.terms[1..], &q, &c, &mut self.buf, self.k);
            core::mem::swap(&mut f.terms, &mut self.buf);
        }
        Ok(f)
    }

    fn spoly(&self, p: &Pair) -> Vector<K::Elem> {
        let (gi, gj) = (&self.elems[p.i], &self.elems[p.j]);
        let qi = self.leads[p.i].1.quotient_of(&p.lcm).expect("lcm");
        let qj = self.leads[p.j].1.quotient_of(&p.lcm).expect("lcm");
        let a = self.fm.mul_term(gi, &qi, &self.k.one(), self.k);
        let mut out = Vec::with_capacity(gi.len() + gj.len());
        self.fm.merge(&a.terms[1..], &gj.terms[1..], &qj, &self.k.one(), &mut out, self.k);
        Vector { terms: out }
    }

    fn insert(&mut self, v: Vector<K::Elem>) -> usize {
        let v = self.fm.make_monic(&v, self.k);
        let (comp, mon) = {
            let l = v.lead().expect("nonzero");
            (l.0, l.1)
        };
        let t = self.elems.len();
        // Below the split every element is a syzygy. Pairs among them would only
        // complete a Gröbner basis of the syzygy module, while the syzygies
        // found from pairs above the split already generate it.
        let same: Vec<usize> = if self.fm.split.is_some_and(|s| comp >= s) {
            Vec::new()
        } else {
            self.by_comp.get(&comp).cloned().unwrap_or_default()
        };

        // Gebauer–Möller: drop old pairs whose lcm is strictly divisible by the new lead.
        for bucket in self.pairs.values_mut() {
            bucket.retain(|p| {
                if self.leads[p.i].0 != comp || !mon.divides(&p.lcm) {
                    return true;
                }
                let li = self.leads[p.i].1.lcm(&mon);
                let lj = self.leads[p.j].1.lcm(&mon);
                li == p.lcm || lj == p.lcm
            });
        }
        // New pairs, filtered by the M and F criteria.
        let cands: Vec<(usize, Monomial)> = same.iter().map(|&i| (i, self.leads[i].1.lcm(&mon))).collect();
        let mut keep: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (i, l)) in cands.iter().enumerate() {
            let strictly = cands.iter().any(|(_, l2)| l2 != l && l2.divides(l));
            let dup = cands[..idx].iter().any(|(_, l2)| l2 == l);
            if !strictly && !dup {
                keep.push((*i, *l));
            }
        }
        for (i, l) in keep {
            let d = self.fm.term_degree(comp, &l);
            self.pairs.entry(d).or_default().push(Pair { i, j: t, lcm: l });
        }
        self.elems.push(v);
        self.leads.push((comp, mon));
        self.by_comp.entry(comp).or_default().push(t);
        t
    }

    /// Runs to completion on the given inputs. Returns, for each input, the
    /// index of the basis element it produced (or `None` if it reduced to zero).
    fn run(&mut self, inputs: &[Vector<K::Elem>]) -> Result<Vec<Option<usize>>> {
        self.run_through(inputs, None)
    }

    /// As [`Engine::run`], stopping after degree `max_deg` when given.
    fn run_through(&mut self, inputs: &[Vector<K::Elem>], max_deg: Option<i32>) -> Result<Vec<Option<usize>>> {
        let mut by_deg: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, g) in inputs.iter().enumerate() {
            if let Some(d) = self.fm.degree(g) {
                by_deg.entry(d).or_default().push(i);
            }
        }
        let mut produced = vec![None; inputs.len()];
        loop {
            let next_pair = self.pairs.keys().next().copied();
            let next_in = by_deg.keys().next().copied();
            let d = match (next_pair, next_in) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            if max_deg.is_some_and(|m| d > m) {
                break;
            }
            self.budget.check()?;
            if let Some(batch) = self.pairs.remove(&d) {
                for p in batch {
                    let s = self.spoly(&p);
                    let r = self.reduce(s)?;
                    if !r.is_zero() {
                        self.insert(r);
                    }
                }
            }
            if let Some(ins) = by_deg.remove(&d) {
                for i in ins {
                    let r = self.reduce(inputs[i].clone())?;
                    if !r.is_zero() {
                        produced[i] = Some(self.insert(r));
                    }
                }
            }
        }
        Ok(produced)
    }

    /// Reduces the tails so that the basis becomes the reduced Gröbner basis.
    fn interreduce(&mut self) -> Result<()> {
        for i in 0..self.elems.len() {
            let v = core::mem::replace(&mut self.elems[i], Vector::zero());
            let lead = v.terms[0].clone();
            let tail = Vector { terms: v.terms[1..].to_vec() };
            // temporarily hide element i from the reducer table
            let comp = self.leads[i].0;
            let list = self.by_comp.get_mut(&comp).expect("comp");
            let pos = list.iter().position(|&x| x == i).expect("present");
            list.remove(pos);
            let t = self.reduce(tail)?;
            self.by_comp.get_mut(&comp).expect("comp").insert(pos, i);
            let mut terms = Vec::with_capacity(t.len() + 1);
            terms.push(lead);
            terms.extend(t.terms);
            self.elems[i] = Vector { terms };
        }
        Ok(())
    }
}

/// A Gröbner basis of a homogeneous submodule.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<E> {
    pub module: FreeModule,
    pub elems: Vec<Vector<E>>,
    /// Input indices that are minimal generators, in degree order.
    pub minimal: Vec<usize>,
}

fn check_inputs<E>(fm: &FreeModule, gens: &[Vector<E>]) -> Result<()> {
    for g in gens {
        if g.terms.iter().any(|t| t.0 as usize >= fm.rank()) {
            return Err(Error::MixedAmbientRanks);
        }
        if !fm.is_homogeneous(g) {
            return Err(Error::Internal("inhomogeneous generator".into()));
        }
    }
    Ok(())
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner_basis<K: Field>(
    fm: &FreeModule,
    gens: &[Vector<K::Elem>],
    k: &K,
    budget: &Budget,
) -> Result<GroebnerBasis<K::Elem>> {
    check_inputs(fm, gens)?;
    let gens: Vec<_> = gens.iter().map(|g| fm.normalize(g, k)).collect();
    let mut e = Engine::new(fm, k, budget);
    let produced = e.run(&gens)?;
    e.interreduce()?;
    let mut minimal: Vec<usize> = (0..gens.len()).filter(|&i| produced[i].is_some()).collect();
    minimal.sort_by_key(|&i| (fm.degree(&gens[i]), i));
    let mut order: Vec<usize> = (0..e.elems.len()).collect();
    order.sort_by(|&a, &b| fm.cmp_key((e.leads[a].0, &e.leads[a].1), (e.leads[b].0, &e.leads[b].1)));
    let elems = order.into_iter().map(|i| e.elems[i].clone()).collect();
    Ok(GroebnerBasis { module: fm.clone(), elems, minimal })
}

impl<E: Clone + PartialEq + core::fmt::Debug + Send + Sync + 'static> GroebnerBasis<E> {
    /// Normal form of `v` (zero iff `v` lies in the submodule).
    pub fn normal_form<K: Field<Elem = E>>(&self, v: &Vector<E>, k: &K) -> Vector<E> {
        let budget = Budget::unlimited();
        let mut e = Engine::new(&self.module, k, &budget);
        for g in &self.elems {
            let l = g.lead().expect("nonzero");
            let t = e.elems.len();
            e.leads.push((l.0, l.1));
            e.by_comp.entry(l.0).or_default().push(t);
            e.elems.push(g.clone());
        }
        let v = self.module.normalize(v, k);
        e.reduce(v).expect("unlimited budget")
    }

    pub fn contains<K: Field<Elem = E>>(&self, v: &Vector<E>, k: &K) -> bool {
        self.normal_form(v, k).is_zero()
    }

    /// Lead terms `(comp, monomial)`.
    pub fn leads(&self) -> Vec<(u32, Monomial)> {
        self.elems
            .iter()
            .map(|g| {
                let l = g.lead().expect("nonzero");
                (l.0, l.1)
            })
            .collect()
    }

    /// A basis of `M_d`: one monomial multiple of a basis element per lead
    /// term of degree `d`.
    pub fn basis_in_degree<K: Field<Elem = E>>(&self, d: i32, k: &K) -> Vec<Vector<E>> {
        let leads = self.leads();
        let mut out = Vec::new();
        for (c, &s) in self.module.shifts.iter().enumerate() {
            let md = d - s;
            if md < 0 {
                continue;
            }
            for m in Monomial::all_of_degree(self.module.nvars, md as u32) {
                let hit = leads.iter().position(|l| l.0 == c as u32 && l.1.divides(&m));
                if let Some(i) = hit {
                    let u = leads[i].1.quotient_of(&m).expect("divides");
                    out.push(self.module.mul_term(&self.elems[i], &u, &k.one(), k));
                }
            }
        }
        out
    }

    /// `dim_K M_d` for the submodule `M`, by counting standard monomials.
    pub fn dim_in_degree(&self, d: i32) -> usize {
        let leads = self.leads();
        let mut total = 0;
        for (c, &s) in self.module.shifts.iter().enumerate() {
            let md = d - s;
            if md < 0 {
                continue;
            }
            let ls: Vec<&Monomial> = leads.iter().filter(|l| l.0 == c as u32).map(|l| &l.1).collect();
            if ls.is_empty() {
                continue;
            }
            total += Monomial::all_of_degree(self.module.nvars, md as u32)
                .iter()
                .filter(|m| ls.iter().any(|l| l.divides(m)))
                .count();
        }
        total
    }
}

/// Indices of a minimal generating subset of `gens`, ordered by degree.
pub fn minimal_generators<K: Field>(
    fm: &FreeModule,
    gens: &[Vector<K::Elem>],
    k: &K,
    budget: &Budget,
) -> Result<Vec<usize>> {
    check_inputs(fm, gens)?;
    let gens: Vec<_> = gens.iter().map(|g| fm.normalize(g, k)).collect();
    // an input is minimal iff it is new modulo everything of its degree, so a
    // basis truncated at the top input degree suffices
    let top = gens.iter().filter_map(|g| fm.degree(g)).max();
    let mut e = Engine::new(fm, k, budget);
    let produced = e.run_through(&gens, top)?;
    let mut minimal: Vec<usize> = (0..gens.len()).filter(|&i| produced[i].is_some()).collect();
    minimal.sort_by_key(|&i| (fm.degree(&gens[i]), i));
    Ok(minimal)
}

/// Generators of the syzygy module of `gens` inside the free module
/// `⊕ S(-deg g_k)` (zero generators get shift 0). They need not be minimal
/// and need not form a Gröbner basis.
pub fn syzygies<K: Field>(
    fm: &FreeModule,
    gens: &[Vector<K::Elem>],
    k: &K,
    budget: &Budget,
) -> Result<(FreeModule, Vec<Vector<K::Elem>>)> {
    syzygies_with_shifts(fm, gens, None, k, budget)
}

/// As [`syzygies`], with explicit shifts for the zero generators.
pub fn syzygies_with_shifts<K: Field>(
    fm: &FreeModule,
    gens: &[Vector<K::Elem>],
    zero_shifts: Option<&[i32]>,
    k: &K,
    budget: &Budget,
) -> Result<(FreeModule, Vec<Vector<K::Elem>>)> {
    check_inputs(fm, gens)?;
    let r = fm.rank() as u32;
    let src_shifts: Vec<i32> =
        gens.iter().enumerate().map(|(i, g)| fm.degree(g).unwrap_or_else(|| zero_shifts.map_or(0, |z| z[i]))).collect();
    let mut shifts = fm.shifts.clone();
    shifts.extend_from_slice(&src_shifts);
    let aug = FreeModule { nvars: fm.nvars, shifts, order: fm.order, split: Some(r) };
    let inputs: Vec<Vector<K::Elem>> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut t: Vec<Term<K::Elem>> = g.terms.clone();
            t.push((r + i as u32, Monomial::ONE, k.one()));
            aug.from_terms(t, k)
        })
        .collect();
    let mut e = Engine::new(&aug, k, budget);
    e.run(&inputs)?;
    let src = FreeModule::new(fm.nvars, src_shifts).with_order(fm.order);
    let mut out = Vec::new();
    for (i, g) in e.elems.iter().enumerate() {
        if e.leads[i].0 >= r {
            out.push(src.normalize(&FreeModule::shift_components(g, r), k));
        }
    }
    Ok((src, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rat, Rationals};

    fn lin(k: &Rationals, c: &[i64]) -> Poly<Rat> {
        let c: Vec<Rat> = c.iter().map(|&x| Rat::from_int(x)).collect();
        Poly::linear(&c, k)
    }

    #[test]
    fn ideal_membership() {
        let k = Rationals;
        let fm = FreeModule::new(2, vec![0]);
        let x = lin(&k, &[1, 0]);
        let y = lin(&k, &[0, 1]);
        let f = x.mul(&x, &k).sub(&y.mul(&y, &k), &k);
        let g = x.sub(&y, &k);
        let gens = [fm.from_polys(core::slice::from_ref(&f), &k), fm.from_polys(core::slice::from_ref(&g), &k)];
        let gb = groebner_basis(&fm, &gens, &k, &Budget::unlimited()).unwrap();
        assert_eq!(gb.elems.len(), 1);
        assert_eq!(gb.minimal, vec![1]);
        assert!(gb.contains(&fm.from_polys(&[f], &k), &k));
        assert!(!gb.contains(&fm.from_polys(&[x], &k), &k));
    }

    #[test]
    fn koszul_syzygy() {
        let k = Rationals;
        let fm = FreeModule::new(2, vec![0]);
        let gens = [fm.from_polys(&[lin(&k, &[1, 0])], &k), fm.from_polys(&[lin(&k, &[0, 1])], &k)];
        let (src, syz) = syzygies(&fm, &gens, &k, &Budget::unlimited()).unwrap();
        assert_eq!(syz.len(), 1);
        let p = src.to_polys(&syz[0], &k);
        // (y, -x) up to sign
        let y = lin(&k, &[0, 1]);
        let x = lin(&k, &[1, 0]);
        assert!(p[0] == y && p[1] == x.neg(&k) || p[0] == y.neg(&k) && p[1] == x);
    }

    #[test]
    fn zero_generator_gives_unit_syzygy() {
        let k = Rationals;
        let fm = FreeModule::new(1, vec![0]);
        let gens = [Vector::zero(), fm.from_polys(&[lin(&k, &[1])], &k)];
        let (_, syz) = syzygies(&fm, &gens, &k, &Budget::unlimited()).unwrap();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].terms()[0].0, 0);
    }
}
