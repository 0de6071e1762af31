//! Multiarrangements, restriction multiplicities, rank-2 exponents and the
//! characteristic polynomial of a multiarrangement.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::arrangement::{form_in, Arrangement, ArrangementFile};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::hilbert::divide_by_one_minus_q;
use crate::lattice::{CharPoly, Flat};
use crate::logmod::{self, Variant};
use crate::poly::Poly;

/// A pair `(A, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiArrangement {
    pub arr: Arrangement,
    pub mult: Vec<u32>,
}

impl MultiArrangement {
    pub fn new(arr: Arrangement, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != arr.len() {
            return Err(Error::InvalidMultiplicity(format!("{} values for {} hyperplanes", mult.len(), arr.len())));
        }
        if let Some(i) = mult.iter().position(|&m| m == 0) {
            return Err(Error::InvalidMultiplicity(format!("hyperplane {i} has multiplicity 0")));
        }
        Ok(MultiArrangement { arr, mult })
    }

    pub fn simple(arr: Arrangement) -> Self {
        let mult = vec![1; arr.len()];
        MultiArrangement { arr, mult }
    }

    pub fn from_file(f: &ArrangementFile) -> Result<Self> {
        let arr = Arrangement::new(f.dim, f.hyperplanes.clone(), f.field)?.with_labels(f.labels.clone())?;
        let mult = f.multiplicities.clone().unwrap_or_else(|| vec![1; arr.len()]);
        MultiArrangement::new(arr, mult)
    }

    pub fn to_file(&self) -> ArrangementFile {
        let m = if self.is_simple() { None } else { Some(self.mult.as_slice()) };
        self.arr.to_file(m)
    }

    pub fn dim(&self) -> usize {
        self.arr.dim()
    }

    pub fn len(&self) -> usize {
        self.arr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arr.is_empty()
    }

    /// `|m| = deg Q(A, m)`.
    pub fn size(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m == 1)
    }

    /// `(A, m - δ_H)`: lowers `m(H)` by one, removing `H` when it reaches zero.
    /// Also returns the index of `H` in the result, if it survives.
    pub fn minus_delta(&self, h: usize) -> (MultiArrangement, Option<usize>) {
        if self.mult[h] > 1 {
            let mut m = self.clone();
            m.mult[h] -= 1;
            (m, Some(h))
        } else {
            let arr = self.arr.delete(h);
            let mult = self.mult.iter().enumerate().filter(|(i, _)| *i != h).map(|(_, &v)| v).collect();
            (MultiArrangement { arr, mult }, None)
        }
    }

    /// `(A_X, m_X)` in the ambient space.
    pub fn localize(&self, flat: &Flat) -> MultiArrangement {
        self.sub(&flat.hyperplanes)
    }

    pub fn sub(&self, idx: &[usize]) -> MultiArrangement {
        MultiArrangement { arr: self.arr.subarrangement(idx), mult: idx.iter().map(|&i| self.mult[i]).collect() }
    }

    pub fn essentialize(&self) -> (MultiArrangement, usize) {
        let (a, t) = self.arr.essentialize();
        (MultiArrangement { arr: a, mult: self.mult.clone() }, t)
    }

    pub fn adapted_to(&self, h: usize) -> MultiArrangement {
        MultiArrangement { arr: self.arr.adapted_to(h), mult: self.mult.clone() }
    }

    /// Key identifying the essentialization up to reordering of hyperplanes.
    pub fn canonical_key(&self) -> (usize, Vec<(Vec<Rat>, u32)>) {
        let (e, _) = self.essentialize();
        let mut v: Vec<(Vec<Rat>, u32)> = e.arr.forms().iter().cloned().zip(e.mult.iter().copied()).collect();
        v.sort();
        (e.dim(), v)
    }

    /// Defining polynomial `Q(A, m)` over `k`.
    pub fn defining_poly<K: Field>(&self, k: &K) -> Result<Poly<K::Elem>> {
        let mut q = Poly::one(k);
        for (i, f) in self.arr.forms().iter().enumerate() {
            let l = Poly::linear(&form_in(f, k)?, k);
            q = q.mul(&l.pow(self.mult[i], k), k);
        }
        Ok(q)
    }
}

/// Ziegler restriction `(A^H, m^H)` of a simple arrangement.
pub fn ziegler_multiplicity(a: &Arrangement, h: usize) -> Result<MultiArrangement> {
    let r = a.restrict(h)?;
    let mut mult = vec![0u32; r.arrangement.len()];
    for j in r.image.iter().flatten() {
        mult[*j] += 1;
    }
    MultiArrangement::new(r.arrangement, mult)
}

/// Exponents of a multiarrangement whose essentialization has rank at most 2.
///
/// The lowest degree derivation is found degree by degree; the second one
/// lives in degree `|m| - d_1`, and the pair is checked with Saito's
/// determinant criterion.
pub fn rank2_exponents<K: Field>(ma: &MultiArrangement, k: &K) -> Result<Vec<u32>> {
    let (e, _) = ma.essentialize();
    match e.dim() {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![e.size()]),
        2 => {}
        r => return Err(Error::RankTooLarge(r)),
    }
    let total = e.size();
    let conds = logmod::degreewise_conditions(&e, 1, Variant::Derivation, k)?;
    let mut d1 = None;
    let mut theta1 = None;
    for d in 0..=total {
        let b = crate::graded::graded_piece(&conds, d, k);
        if let Some(t) = b.into_iter().next() {
            d1 = Some(d);
            theta1 = Some(t);
            break;
        }
    }
    let (d1, theta1) = match (d1, theta1) {
        (Some(d), Some(t)) => (d, t),
        _ => return Err(Error::Internal("no derivation up to degree |m|".into())),
    };
    let d2 = total - d1;
    let q = e.defining_poly(k)?;
    for theta2 in crate::graded::graded_piece(&conds, d2, k) {
        let det = theta1[0].mul(&theta2[1], k).sub(&theta1[1].mul(&theta2[0], k), k);
        if !det.is_zero() && det.div_exact(&q, k).is_some_and(|c| c.is_constant()) {
            let mut v = vec![d1, d2];
            v.sort_unstable();
            return Ok(v);
        }
    }
    Err(Error::Internal("Saito criterion failed for a rank-2 multiarrangement".into()))
}

/// Euler multiplicity `(A^H, m^*)`.
pub fn euler_multiplicity<K: Field>(ma: &MultiArrangement, h: usize, k: &K) -> Result<MultiArrangement> {
    let r = ma.arr.restrict(h)?;
    let mut mstar = Vec::with_capacity(r.arrangement.len());
    for x in 0..r.arrangement.len() {
        let idx: Vec<usize> = (0..ma.len()).filter(|&i| i == h || r.image[i] == Some(x)).collect();
        let local = ma.sub(&idx);
        let hl = idx.iter().position(|&i| i == h).expect("H is in A_X");
        mstar.push(euler_value(&local, hl, k)?);
    }
    MultiArrangement::new(r.arrangement, mstar)
}

/// `m^*(X)` for a rank-2 localization containing `H`: the element shared by
/// `exp(A_X, m_X)` and `exp(A_X, m_X - δ_H)`, found by multiset subtraction.
fn euler_value<K: Field>(local: &MultiArrangement, h: usize, k: &K) -> Result<u32> {
    let e1 = rank2_exponents(local, k)?;
    let (minus, _) = local.minus_delta(h);
    let mut e2 = rank2_exponents(&minus, k)?;
    // pad to two entries: a rank-1 localization has the exponent 0 on the trivial factor
    let mut e1 = pad2(e1);
    e2 = pad2(e2);
    e1.sort_unstable();
    e2.sort_unstable();
    // exp(m - δ_H) = (d1 - 1, d2) as multisets; d2 is the common element
    for (i, &a) in e1.iter().enumerate() {
        let other = e1[1 - i];
        let mut cand = vec![a.wrapping_sub(1), other];
        cand.sort_unstable();
        if a >= 1 && cand == e2 {
            return Ok(other);
        }
    }
    Err(Error::Internal(format!("no Euler pairing between {e1:?} and {e2:?}")))
}

fn pad2(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() < 2 {
        v.push(0);
    }
    v
}

/// Characteristic polynomial of `(A, m)` from the Hilbert series of the
/// modules `D^p(A, m)`.
///
/// With `ψ(t, q) = Σ_p H(D^p; q) (t(q-1) - 1)^p`, the polynomial is
/// `χ(t) = (-1)^ℓ ψ(t, 1)`. Writing `H(D^p; q) = N_p(q) / (1-q)^ℓ`, the
/// coefficient of `t^k` in `ψ` is `(-1)^k R_k(q) / (1-q)^{ℓ-k}` with
/// `R_k = Σ_p (-1)^{p-k} C(p,k) N_p`; the division is exact.
pub fn multi_char_poly<K: Field>(ma: &MultiArrangement, k: &K, budget: &Budget) -> Result<CharPoly> {
    let l = ma.dim();
    let mut nums: Vec<BTreeMap<i32, i64>> = Vec::with_capacity(l + 1);
    for p in 0..=l {
        let m = logmod::log_module(ma, p, Variant::Derivation, k, budget)?;
        let res = crate::resolution::resolve_submodule(&m.ambient, &m.gens, l + 1, k, budget)?;
        nums.push(res.betti.hilbert_series(l).numerator);
    }
    char_poly_from_numerators(l, &nums)
}

pub(crate) fn char_poly_from_numerators(l: usize, nums: &[BTreeMap<i32, i64>]) -> Result<CharPoly> {
    let to_vec = |m: &BTreeMap<i32, i64>| -> Result<Vec<i128>> {
        if m.keys().any(|&j| j < 0) {
            return Err(Error::Internal("negative degree in a derivation module".into()));
        }
        let top = m.keys().max().copied().unwrap_or(0) as usize;
        let mut v = vec![0i128; top + 1];
        for (j, c) in m {
            v[*j as usize] += *c as i128;
        }
        Ok(v)
    };
    let polys: Vec<Vec<i128>> = nums.iter().map(to_vec).collect::<Result<_>>()?;
    let mut coeffs = vec![0i64; l + 1];
    for kk in 0..=l {
        let mut r: Vec<i128> = Vec::new();
        for (p, np) in polys.iter().enumerate().skip(kk) {
            let c = crate::hilbert::binom(p as i64, kk as i64) * if (p - kk) % 2 == 0 { 1 } else { -1 };
            if r.len() < np.len() {
                r.resize(np.len(), 0);
            }
            for (i, x) in np.iter().enumerate() {
                r[i] += c * x;
            }
        }
        let q = divide_by_one_minus_q(&r, l - kk)
            .ok_or_else(|| Error::Internal(format!("R_{kk} not divisible by (1-q)^{}", l - kk)))?;
        let at_one: i128 = q.iter().sum();
        let sign = if (l + kk).is_multiple_of(2) { 1 } else { -1 };
        coeffs[kk] = i64::try_from(sign * at_one).map_err(|_| Error::Internal("coefficient overflow".into()))?;
    }
    Ok(CharPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ma(forms: &[&[i64]], m: &[u32]) -> MultiArrangement {
        let a = Arrangement::from_ints(forms[0].len(), forms).unwrap();
        MultiArrangement::new(a, m.to_vec()).unwrap()
    }

    #[test]
    fn rank2_examples() {
        let k = Rationals;
        assert_eq!(rank2_exponents(&ma(&[&[1, 0], &[0, 1], &[1, -1]], &[1, 1, 1]), &k).unwrap(), vec![1, 2]);
        assert_eq!(rank2_exponents(&ma(&[&[1, 0], &[0, 1], &[1, -1]], &[2, 2, 2]), &k).unwrap(), vec![3, 3]);
        assert_eq!(rank2_exponents(&ma(&[&[1, 0], &[0, 1]], &[5, 1]), &k).unwrap(), vec![1, 5]);
    }

    #[test]
    fn ziegler_collisions() {
        // xy(x-y)z, H: x = 0; y and x-y collide
        let a = Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1]]).unwrap();
        let z = ziegler_multiplicity(&a, 0).unwrap();
        assert_eq!(z.len(), 2);
        let mut m = z.mult.clone();
        m.sort();
        assert_eq!(m, vec![1, 2]);
        assert_eq!(z.size(), 3);
    }

    #[test]
    fn euler_multiplicity_of_a2_double() {
        // x^2 y^2 (x-y)^2 with H = x: exp (3,3), after dropping one on x: (2,3)
        let k = Rationals;
        let m = ma(&[&[1, 0], &[0, 1], &[1, -1]], &[2, 2, 2]);
        let e = euler_multiplicity(&m, 0, &k).unwrap();
        assert_eq!(e.mult, vec![3]);
    }

    #[test]
    fn char_poly_boolean_multi() {
        let k = Rationals;
        let m = ma(&[&[1, 0], &[0, 1]], &[2, 2]);
        let chi = multi_char_poly(&m, &k, &Budget::unlimited()).unwrap();
        assert_eq!(chi, CharPoly::from_roots(&[2, 2]));
    }
}
