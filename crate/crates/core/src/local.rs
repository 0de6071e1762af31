//! Local freeness: freeness of the localizations `(A_X, m_X)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::Result;
use crate::field::{Field, Rat};
use crate::lattice::{intersection_lattice, Flat, Lattice};
use crate::logmod::is_free;
use crate::multi::{rank2_exponents, MultiArrangement};

/// Verdict for one localization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatVerdict {
    pub hyperplanes: Vec<usize>,
    pub codim: usize,
    pub free: bool,
    pub exponents: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFreeness {
    pub flats: Vec<FlatVerdict>,
    pub free: bool,
}

/// Freeness results keyed by canonical essentialized arrangement.
#[derive(Clone, Debug, Default)]
pub struct FreenessCache {
    map: BTreeMap<(usize, Vec<(Vec<Rat>, u32)>), Option<Vec<u32>>>,
}

impl FreenessCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Exponents if free, `None` if not free.
    pub fn exponents<K: Field>(&mut self, ma: &MultiArrangement, k: &K, budget: &Budget) -> Result<Option<Vec<u32>>> {
        let key = ma.canonical_key();
        if let Some(v) = self.map.get(&key) {
            return Ok(v.clone());
        }
        let (e, _) = ma.essentialize();
        let v = if e.dim() <= 2 { Some(rank2_exponents(&e, k)?) } else { is_free(&e, k, budget)?.exponents };
        self.map.insert(key, v.clone());
        Ok(v)
    }
}

fn check_flats<K: Field>(
    ma: &MultiArrangement,
    lat: &Lattice,
    keep: impl Fn(&Flat) -> bool,
    local: impl Fn(&Flat) -> MultiArrangement,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<LocalFreeness> {
    let top = ma.arr.rank();
    let mut flats = Vec::new();
    let mut all = true;
    for f in &lat.flats {
        if f.codim == 0 || f.codim >= top || !keep(f) {
            continue;
        }
        budget.check()?;
        let exps = cache.exponents(&local(f), k, budget)?;
        let free = exps.is_some();
        all &= free;
        flats.push(FlatVerdict { hyperplanes: f.hyperplanes.clone(), codim: f.codim, free, exponents: exps });
    }
    Ok(LocalFreeness { flats, free: all })
}

/// Checks `(A_X, m_X)` for every flat `X ⊆ H` other than the centre.
pub fn locally_free_along<K: Field>(
    ma: &MultiArrangement,
    h: usize,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<LocalFreeness> {
    let lat = intersection_lattice(&ma.arr)?;
    check_flats(ma, &lat, |f| f.contains_hyperplane(h), |f| ma.localize(f), cache, k, budget)
}

/// Local freeness of `(A, m - δ_H)` along `H`: the localizations at flats of
/// `A` inside `H`, with `H` dropped when its multiplicity reaches zero.
pub fn locally_free_along_deleted<K: Field>(
    ma: &MultiArrangement,
    h: usize,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<LocalFreeness> {
    let lat = intersection_lattice(&ma.arr)?;
    let local = |f: &Flat| {
        let (m, _) = ma.localize(f).minus_delta(f.hyperplanes.iter().position(|&x| x == h).expect("H contains X"));
        m
    };
    check_flats(ma, &lat, |f| f.contains_hyperplane(h), local, cache, k, budget)
}

/// Checks every localization at a flat other than the centre.
pub fn locally_free<K: Field>(
    ma: &MultiArrangement,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<LocalFreeness> {
    let lat = intersection_lattice(&ma.arr)?;
    check_flats(ma, &lat, |_| true, |f| ma.localize(f), cache, k, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::field::Rationals;

    #[test]
    fn generic_is_locally_free_but_cone_is_not() {
        let k = Rationals;
        let b = Budget::unlimited();
        let mut c = FreenessCache::new();
        let g = MultiArrangement::simple(
            Arrangement::from_ints(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1]])
                .unwrap(),
        );
        assert!(locally_free(&g, &mut c, &k, &b).unwrap().free);
        // cone of x y z (x+y+z): the generic plane arrangement is a localization
        let cone = MultiArrangement::simple(
            Arrangement::from_ints(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 0], &[0, 0, 0, 1]])
                .unwrap(),
        );
        assert!(!locally_free(&cone, &mut c, &k, &b).unwrap().free);
        // but it is locally free along x + w = 0 once that plane is added
        let one = Rat::from_int(1);
        let zero = Rat::from_int(0);
        let a = MultiArrangement::simple(cone.arr.add(&[one.clone(), zero.clone(), zero, one]).unwrap());
        let lf = locally_free_along_deleted(&a, 5, &mut c, &k, &b).unwrap();
        assert!(lf.free, "{lf:?}");
        assert!(!locally_free(&a, &mut c, &k, &b).unwrap().free);
    }
}
