//! Graded module presentations and minimal free resolutions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{minimal_generators, syzygies, FreeModule, Term, TermOrder, Vector};
use crate::hilbert::HilbertSeries;
use crate::poly::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PresentationKind {
    /// The module is the image of the columns.
    Submodule,
    /// The module is the ambient free module modulo the columns.
    Cokernel,
}

/// A finitely generated graded module given by columns in a graded free module.
#[derive(Clone, Debug)]
pub struct GradedModulePresentation<E> {
    pub ambient: FreeModule,
    pub columns: Vec<Vector<E>>,
    pub kind: PresentationKind,
}

impl<E: Clone + PartialEq + core::fmt::Debug + Send + Sync + 'static> GradedModulePresentation<E> {
    pub fn submodule(ambient: FreeModule, columns: Vec<Vector<E>>) -> Self {
        GradedModulePresentation { ambient, columns, kind: PresentationKind::Submodule }
    }

    pub fn cokernel(ambient: FreeModule, columns: Vec<Vector<E>>) -> Self {
        GradedModulePresentation { ambient, columns, kind: PresentationKind::Cokernel }
    }

    /// Every column must be homogeneous.
    pub fn validate(&self) -> Result<()> {
        for c in &self.columns {
            if c.terms().iter().any(|t| t.0 as usize >= self.ambient.rank()) {
                return Err(Error::MixedAmbientRanks);
            }
            if !self.ambient.is_homogeneous(c) {
                return Err(Error::Internal("relation column is not homogeneous".into()));
            }
        }
        Ok(())
    }

    /// Removes unit entries of a cokernel presentation: a relation with a
    /// constant coefficient on `e_c` makes `e_c` redundant; it is eliminated
    /// from the other relations and dropped together with that relation.
    pub fn prune<K: Field<Elem = E>>(&self, k: &K) -> Self {
        let mut fm = self.ambient.clone();
        let mut cols: Vec<Vector<E>> = self.columns.iter().filter(|c| !c.is_zero()).cloned().collect();
        loop {
            let found = cols
                .iter()
                .enumerate()
                .find_map(|(j, c)| c.terms().iter().find(|t| t.1 == Monomial::ONE).map(|t| (j, t.0, t.2.clone())));
            let Some((j, comp, u)) = found else { break };
            let pivot = cols.remove(j);
            let uinv = k.inv(&u).expect("nonzero");
            let pivot = fm.scale(&pivot, &uinv, k);
            let mut next = Vec::with_capacity(cols.len());
            for c in cols {
                let mut v = c;
                let hits: Vec<Term<E>> = v.terms().iter().filter(|t| t.0 == comp).cloned().collect();
                for (_, m, x) in hits {
                    v = fm.sub_scaled(&v, &x, &m, &pivot, k);
                }
                // renumber components above `comp`
                let t: Vec<Term<E>> =
                    v.terms().iter().map(|(i, m, x)| (if *i > comp { i - 1 } else { *i }, *m, x.clone())).collect();
                next.push(t);
            }
            fm.shifts.remove(comp as usize);
            cols = next.into_iter().map(|t| fm.from_terms(t, k)).filter(|v| !v.is_zero()).collect();
        }
        GradedModulePresentation { ambient: fm, columns: cols, kind: PresentationKind::Cokernel }
    }
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn add(&mut self, i: usize, j: i32, n: usize) {
        if n > 0 {
            *self.entries.entry((i, j)).or_default() += n;
        }
    }

    /// Projective dimension; `None` for the zero module.
    pub fn pd(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// Generator degrees of the `i`-th free module, with repetition, ascending.
    pub fn degrees(&self, i: usize) -> Vec<i32> {
        let mut out = Vec::new();
        for ((a, j), n) in &self.entries {
            if *a == i {
                out.extend(core::iter::repeat_n(*j, *n));
            }
        }
        out
    }

    /// Shifts every twist by `s` (tensoring with `S(s)`).
    pub fn twisted(&self, s: i32) -> BettiTable {
        BettiTable { entries: self.entries.iter().map(|((i, j), n)| ((*i, j - s), *n)).collect() }
    }

    pub fn hilbert_series(&self, nvars: usize) -> HilbertSeries {
        let mut num: BTreeMap<i32, i64> = BTreeMap::new();
        for ((i, j), n) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            *num.entry(*j).or_default() += s * *n as i64;
        }
        HilbertSeries::new(num, nvars)
    }

    /// Rows as `(i, j, β)` triples.
    pub fn triples(&self) -> Vec<(usize, i32, usize)> {
        self.entries.iter().map(|((i, j), n)| (*i, *j, *n)).collect()
    }
}

/// A minimal free resolution `F_0 <- F_1 <- ...`.
///
/// `maps[0]` holds the minimal generators of the module inside the ambient
/// free module (for a submodule) and `maps[i]` the images of the basis of
/// `F_i` in `F_{i-1}`.
#[derive(Clone, Debug)]
pub struct Resolution<E> {
    pub nvars: usize,
    pub modules: Vec<FreeModule>,
    pub maps: Vec<Vec<Vector<E>>>,
    pub betti: BettiTable,
}

impl<E> Resolution<E> {
    pub fn pd(&self) -> Option<usize> {
        self.betti.pd()
    }
}

/// Minimal free resolution of the submodule generated by `gens`.
pub fn resolve_submodule<K: Field>(
    fm: &FreeModule,
    gens: &[Vector<K::Elem>],
    max_length: usize,
    k: &K,
    budget: &Budget,
) -> Result<Resolution<K::Elem>> {
    let min = minimal_generators(fm, gens, k, budget)?;
    let mut cur: Vec<Vector<K::Elem>> = min.iter().map(|&i| fm.normalize(&gens[i], k)).collect();
    let mut cur_fm = fm.clone();
    let mut res = Resolution { nvars: fm.nvars, modules: Vec::new(), maps: Vec::new(), betti: BettiTable::default() };
    let mut level = 0;
    while !cur.is_empty() {
        if level > max_length {
            return Err(Error::Internal("resolution longer than the allowed length".into()));
        }
        let shifts: Vec<i32> = cur.iter().map(|g| cur_fm.degree(g).expect("nonzero")).collect();
        for &d in &shifts {
            res.betti.add(level, d, 1);
        }
        let (src, syz) = syzygies(&cur_fm, &cur, k, budget)?;
        // syzygy modules behave far better under a term-over-position order
        let src = src.with_order(TermOrder::TermOverPosition);
        let syz: Vec<Vector<K::Elem>> = syz.iter().map(|v| src.normalize(v, k)).collect();
        debug_assert_eq!(src.shifts, shifts);
        res.modules.push(src.clone());
        res.maps.push(core::mem::take(&mut cur));
        if syz.is_empty() {
            break;
        }
        let min = minimal_generators(&src, &syz, k, budget)?;
        cur = min.into_iter().map(|i| syz[i].clone()).collect();
        cur_fm = src;
        level += 1;
    }
    Ok(res)
}

/// Minimal free resolution of a presented module.
pub fn minimal_free_resolution<K: Field>(
    m: &GradedModulePresentation<K::Elem>,
    max_length: usize,
    k: &K,
    budget: &Budget,
) -> Result<Resolution<K::Elem>> {
    m.validate()?;
    match m.kind {
        PresentationKind::Submodule => resolve_submodule(&m.ambient, &m.columns, max_length, k, budget),
        PresentationKind::Cokernel => {
            let p = m.prune(k);
            let inner = resolve_submodule(&p.ambient, &p.columns, max_length, k, budget)?;
            let mut betti = BettiTable::default();
            for &s in &p.ambient.shifts {
                betti.add(0, s, 1);
            }
            for ((i, j), n) in &inner.betti.entries {
                betti.add(i + 1, *j, *n);
            }
            if betti.pd().is_some_and(|pd| pd > max_length) {
                return Err(Error::Internal("resolution longer than the allowed length".into()));
            }
            let mut modules = alloc::vec![FreeModule::new(p.ambient.nvars, p.ambient.shifts.clone())];
            modules.extend(inner.modules);
            let mut maps = alloc::vec![Vec::new()];
            maps.extend(inner.maps);
            Ok(Resolution { nvars: p.ambient.nvars, modules, maps, betti })
        }
    }
}

/// Degree of the module generated by `gens` in degree `d`, via a Gröbner basis.
pub fn hilbert_function_from_gens<K: Field>(
    fm: &FreeModule,
    gens: &[Vector<K::Elem>],
    degrees: core::ops::RangeInclusive<i32>,
    k: &K,
    budget: &Budget,
) -> Result<Vec<usize>> {
    let gb = crate::groebner::groebner_basis(fm, gens, k, budget)?;
    Ok(degrees.map(|d| gb.dim_in_degree(d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rat, Rationals};
    use crate::poly::Poly;
    use alloc::vec;

    fn var(i: usize) -> Poly<Rat> {
        Poly::var(i, &Rationals)
    }

    #[test]
    fn koszul_betti() {
        let k = Rationals;
        let fm = FreeModule::new(3, vec![0]);
        let gens: Vec<_> = (0..3).map(|i| fm.from_polys(&[var(i)], &k)).collect();
        let r = resolve_submodule(&fm, &gens, 3, &k, &Budget::unlimited()).unwrap();
        // the ideal (x,y,z) has pd 2 with Betti (3,3,1)
        assert_eq!(r.pd(), Some(2));
        assert_eq!((r.betti.rank(0), r.betti.rank(1), r.betti.rank(2)), (3, 3, 1));
        assert_eq!(r.betti.degrees(2), vec![3]);
    }

    #[test]
    fn free_module_pd_zero() {
        let k = Rationals;
        let fm = FreeModule::new(2, vec![1, 2]);
        let gens = vec![fm.unit(0, &k), fm.unit(1, &k)];
        let r = resolve_submodule(&fm, &gens, 2, &k, &Budget::unlimited()).unwrap();
        assert_eq!(r.pd(), Some(0));
        assert_eq!(r.betti.degrees(0), vec![1, 2]);
    }

    #[test]
    fn cokernel_with_unit_entry() {
        // S^2 / <(1, x), (0, y)> ≅ S/(y) after pruning
        let k = Rationals;
        let fm = FreeModule::new(2, vec![1, 0]);
        let c1 = fm.from_polys(&[Poly::one(&k), var(0)], &k);
        let c2 = fm.from_polys(&[Poly::zero(), var(1)], &k);
        let p = GradedModulePresentation::cokernel(fm, vec![c1, c2]);
        let r = minimal_free_resolution(&p, 2, &k, &Budget::unlimited()).unwrap();
        assert_eq!(r.betti.triples(), vec![(0, 0, 1), (1, 1, 1)]);
    }
}
