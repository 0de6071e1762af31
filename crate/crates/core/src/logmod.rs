//! Logarithmic derivation modules `D^p(A, m)` and logarithmic forms `Ω^p(A, m)`.
//!
//! Both are computed as submodules of `S^{C(ℓ,p)}`, with coordinates indexed
//! by the `p`-subsets of `{0..ℓ-1}` in lexicographic order. A derivation
//! `θ = Σ θ_I ∂_I` has polynomial degree; a form `ω = f / Q(A, m)` is stored
//! through its numerator `f`, with every basis vector placed in degree `-|m|`
//! so that vector degrees are form degrees.
//!
//! Membership conditions are linear in the coordinates modulo a power of
//! each defining form. The module of solutions is obtained by row reducing
//! the constant coefficient matrix and computing syzygies of the remaining
//! block against the moduli.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::arrangement::{form_in, subsets};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{Constraint, LinearConditions};
use crate::groebner::{groebner_basis, syzygies_with_shifts, FreeModule, Vector};
use crate::linalg::rref_with_transform;
use crate::multi::MultiArrangement;
use crate::poly::Poly;
use crate::resolution::{resolve_submodule, BettiTable, GradedModulePresentation, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// `D^p(A, m)`.
    Derivation,
    /// `D^p_H(A, m)`: derivations with `θ(α_H, ...) = 0` for the given index.
    DerivationVanishing(usize),
    /// `Ω^p(A, m)`, obtained from `D^{ℓ-p}` through the Hodge star.
    Form,
    /// `Ω^p(A, m)` from its own wedge conditions (independent route).
    FormDirect,
}

/// A computed logarithmic module.
#[derive(Clone, Debug)]
pub struct LogModule<E> {
    pub p: usize,
    pub variant: Variant,
    /// Index subsets labelling the coordinates.
    pub coords: Vec<Vec<usize>>,
    pub ambient: FreeModule,
    pub gens: Vec<Vector<E>>,
}

impl<E: Clone + PartialEq + core::fmt::Debug + Send + Sync + 'static> LogModule<E> {
    pub fn presentation(&self) -> GradedModulePresentation<E> {
        GradedModulePresentation::submodule(self.ambient.clone(), self.gens.clone())
    }
}

/// Sign of the shuffle permutation putting `a` before `b` (disjoint sets).
pub fn shuffle_sign(a: &[usize], b: &[usize]) -> i64 {
    let inv: usize = a.iter().map(|&x| b.iter().filter(|&&y| y < x).count()).sum();
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed<K: Field>(x: &K::Elem, sign: i64, k: &K) -> K::Elem {
    if sign < 0 {
        k.neg(x)
    } else {
        x.clone()
    }
}

/// Rows (over `p`-subsets) of the functionals `θ ↦ θ(α, x_{j_2}, ..., x_{j_p})`
/// for `(p-1)`-subsets `J`; with `all = false` only those avoiding the pivot.
pub fn contraction_rows<K: Field>(alpha: &[K::Elem], p: usize, all: bool, k: &K) -> Vec<Vec<K::Elem>> {
    let l = alpha.len();
    if p == 0 {
        return Vec::new();
    }
    let coords = subsets(l, p);
    let pivot = alpha.iter().position(|c| !k.is_zero(c)).expect("nonzero form");
    let mut rows = Vec::new();
    for j in subsets(l, p - 1) {
        if !all && j.contains(&pivot) {
            continue;
        }
        let row: Vec<K::Elem> = coords
            .iter()
            .map(|i| {
                if !j.iter().all(|x| i.contains(x)) {
                    return k.zero();
                }
                let extra = i.iter().position(|x| !j.contains(x)).expect("one extra index");
                let s = if extra % 2 == 0 { 1 } else { -1 };
                signed(&alpha[i[extra]], s, k)
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Rows (over `p`-subsets) of the components of `dα ∧ f` on `(p+1)`-subsets
/// `K`; with `all = false` only those containing the pivot.
pub fn wedge_rows<K: Field>(alpha: &[K::Elem], p: usize, all: bool, k: &K) -> Vec<Vec<K::Elem>> {
    let l = alpha.len();
    if p >= l {
        return Vec::new();
    }
    let coords = subsets(l, p);
    let pivot = alpha.iter().position(|c| !k.is_zero(c)).expect("nonzero form");
    let mut rows = Vec::new();
    for kk in subsets(l, p + 1) {
        if !all && !kk.contains(&pivot) {
            continue;
        }
        let row: Vec<K::Elem> = coords
            .iter()
            .map(|i| {
                if !i.iter().all(|x| kk.contains(x)) {
                    return k.zero();
                }
                let pos = kk.iter().position(|x| !i.contains(x)).expect("one extra index");
                let s = if pos % 2 == 0 { 1 } else { -1 };
                signed(&alpha[kk[pos]], s, k)
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Generators of `{θ ∈ S^n : c_r · θ ∈ (g_r) for every row r}` with all
/// coordinates in degree 0. A zero modulus imposes exact vanishing.
pub fn kernel_module<K: Field>(
    nvars: usize,
    n: usize,
    rows: &[(Vec<K::Elem>, Poly<K::Elem>)],
    k: &K,
    budget: &Budget,
) -> Result<Vec<Vector<K::Elem>>> {
    let out_fm = FreeModule::new(nvars, vec![0; n]);
    let c: Vec<Vec<K::Elem>> = rows.iter().map(|r| r.0.clone()).collect();
    let (red, e, piv) = rref_with_transform(&c, n, k);
    let rank = piv.len();
    let rr = rows.len();
    let mut gens = Vec::new();
    for f in (0..n).filter(|c| !piv.contains(c)) {
        let mut t = vec![(f as u32, crate::poly::Monomial::ONE, k.one())];
        for (i, &p) in piv.iter().enumerate() {
            if !k.is_zero(&red[i][f]) {
                t.push((p as u32, crate::poly::Monomial::ONE, k.neg(&red[i][f])));
            }
        }
        gens.push(out_fm.from_terms(t, k));
    }
    // E·c = red, so the conditions read red·θ = E·(g_r h_r) for some h.
    // The bottom block forces syzygies; the top block then determines θ.
    let nb = rr - rank;
    let fm_b = FreeModule::new(nvars, vec![0; nb]);
    let cols: Vec<Vector<K::Elem>> = (0..rr)
        .map(|col| {
            let g = &rows[col].1;
            let polys: Vec<Poly<K::Elem>> = (rank..rr).map(|i| g.scale(&e[i][col], k)).collect();
            fm_b.from_polys(&polys, k)
        })
        .collect();
    let shifts: Vec<i32> = rows.iter().map(|r| r.1.degree().unwrap_or(0) as i32).collect();
    let (src, syz) = syzygies_with_shifts(&fm_b, &cols, Some(&shifts), k, budget)?;
    for s in syz {
        let sp = src.to_polys(&s, k);
        let h: Vec<Poly<K::Elem>> = sp.iter().zip(rows).map(|(x, r)| x.mul(&r.1, k)).collect();
        let mut theta = vec![Poly::zero(); n];
        for (i, &p) in piv.iter().enumerate() {
            let mut acc = Poly::zero();
            for (col, hc) in h.iter().enumerate() {
                if !k.is_zero(&e[i][col]) && !hc.is_zero() {
                    acc = acc.add(&hc.scale(&e[i][col], k), k);
                }
            }
            theta[p] = acc;
        }
        let v = out_fm.from_polys(&theta, k);
        if !v.is_zero() {
            gens.push(v);
        }
    }
    Ok(gens)
}

fn forms_in<K: Field>(ma: &MultiArrangement, k: &K) -> Result<Vec<Vec<K::Elem>>> {
    let v: Vec<Vec<K::Elem>> = ma.arr.forms().iter().map(|f| form_in(f, k)).collect::<Result<_>>()?;
    for f in &v {
        if f.iter().all(|x| k.is_zero(x)) {
            return Err(Error::NotInvertibleModP { p: k.characteristic() });
        }
    }
    Ok(v)
}

/// Applies the Hodge star `∂_J ↦ sgn(J, J^c) dx_{J^c}` to derivation
/// generators over `q`-subsets, giving numerators over `(ℓ-q)`-subsets.
fn hodge_star<K: Field>(
    l: usize,
    q: usize,
    gens: &[Vector<K::Elem>],
    target: &FreeModule,
    k: &K,
) -> Vec<Vector<K::Elem>> {
    let src = subsets(l, q);
    let dst = subsets(l, l - q);
    let map: Vec<(u32, i64)> = src
        .iter()
        .map(|j| {
            let c: Vec<usize> = (0..l).filter(|x| !j.contains(x)).collect();
            let idx = dst.iter().position(|d| *d == c).expect("complement");
            (idx as u32, shuffle_sign(j, &c))
        })
        .collect();
    gens.iter()
        .map(|g| {
            let t = g
                .terms()
                .iter()
                .map(|(c, m, x)| {
                    let (i, s) = map[*c as usize];
                    (i, *m, signed(x, s, k))
                })
                .collect();
            target.from_terms(t, k)
        })
        .collect()
}

/// Generators of a logarithmic module.
pub fn log_module<K: Field>(
    ma: &MultiArrangement,
    p: usize,
    variant: Variant,
    k: &K,
    budget: &Budget,
) -> Result<LogModule<K::Elem>> {
    let l = ma.dim();
    if p > l {
        return Err(Error::DimensionMismatch { expected: l, found: p });
    }
    let alphas = forms_in(ma, k)?;
    let coords = subsets(l, p);
    let n = coords.len();
    let shift = -(ma.size() as i32);
    match variant {
        Variant::Derivation | Variant::DerivationVanishing(_) => {
            let mut rows = Vec::new();
            for (h, a) in alphas.iter().enumerate() {
                let modulus = match variant {
                    Variant::DerivationVanishing(h0) if h0 == h => Poly::zero(),
                    _ => Poly::linear(a, k).pow(ma.mult[h], k),
                };
                for r in contraction_rows(a, p, false, k) {
                    rows.push((r, modulus.clone()));
                }
            }
            let gens = kernel_module(l, n, &rows, k, budget)?;
            Ok(LogModule { p, variant, coords, ambient: FreeModule::new(l, vec![0; n]), gens })
        }
        Variant::FormDirect => {
            let mut rows = Vec::new();
            for (h, a) in alphas.iter().enumerate() {
                let modulus = Poly::linear(a, k).pow(ma.mult[h], k);
                for r in wedge_rows(a, p, false, k) {
                    rows.push((r, modulus.clone()));
                }
            }
            let gens = kernel_module(l, n, &rows, k, budget)?;
            let ambient = FreeModule::new(l, vec![shift; n]);
            let gens = gens.iter().map(|g| ambient.normalize(g, k)).collect();
            Ok(LogModule { p, variant, coords, ambient, gens })
        }
        Variant::Form => {
            let d = log_module(ma, l - p, Variant::Derivation, k, budget)?;
            let ambient = FreeModule::new(l, vec![shift; n]);
            let gens = hodge_star(l, l - p, &d.gens, &ambient, k);
            Ok(LogModule { p, variant, coords, ambient, gens })
        }
    }
}

/// Linear conditions for the degreewise oracle. Coordinates are the
/// derivation coefficients, or the numerator of a form. All functionals are
/// used, including the redundant ones, so the oracle shares no row selection
/// with [`log_module`].
pub fn degreewise_conditions<K: Field>(
    ma: &MultiArrangement,
    p: usize,
    variant: Variant,
    k: &K,
) -> Result<LinearConditions<K::Elem>> {
    let l = ma.dim();
    let alphas = forms_in(ma, k)?;
    let ncoords = subsets(l, p).len();
    let mut constraints = Vec::new();
    for (h, a) in alphas.iter().enumerate() {
        let rows = match variant {
            Variant::Derivation | Variant::DerivationVanishing(_) => contraction_rows(a, p, true, k),
            Variant::Form | Variant::FormDirect => wedge_rows(a, p, true, k),
        };
        for functional in rows {
            if matches!(variant, Variant::DerivationVanishing(h0) if h0 == h) {
                constraints.push(Constraint::Vanishing { functional });
            } else {
                constraints.push(Constraint::Divisible { functional, form: a.clone(), power: ma.mult[h] });
            }
        }
    }
    Ok(LinearConditions { nvars: l, ncoords, constraints })
}

/// Dimension of the degree-`d` piece by linear algebra only; `d` is a form
/// degree for the form variants.
pub fn degreewise_dimension<K: Field>(
    ma: &MultiArrangement,
    p: usize,
    variant: Variant,
    d: i32,
    k: &K,
) -> Result<usize> {
    let conds = degreewise_conditions(ma, p, variant, k)?;
    let pd = match variant {
        Variant::Form | Variant::FormDirect => d + ma.size() as i32,
        _ => d,
    };
    if pd < 0 {
        return Ok(0);
    }
    Ok(crate::graded::graded_dimension(&conds, pd as u32, k))
}

/// Basis of the degree-`d` piece, coordinates as polynomials.
pub fn degreewise_basis<K: Field>(
    ma: &MultiArrangement,
    p: usize,
    variant: Variant,
    d: i32,
    k: &K,
) -> Result<Vec<Vec<Poly<K::Elem>>>> {
    let conds = degreewise_conditions(ma, p, variant, k)?;
    let pd = match variant {
        Variant::Form | Variant::FormDirect => d + ma.size() as i32,
        _ => d,
    };
    if pd < 0 {
        return Ok(Vec::new());
    }
    Ok(crate::graded::graded_piece(&conds, pd as u32, k))
}

/// Minimal free resolution of a logarithmic module.
pub fn resolve<K: Field>(m: &LogModule<K::Elem>, k: &K, budget: &Budget) -> Result<Resolution<K::Elem>> {
    resolve_submodule(&m.ambient, &m.gens, m.ambient.nvars + 1, k, budget)
}

/// Betti table (in module degrees) and projective dimension.
pub fn betti<K: Field>(
    ma: &MultiArrangement,
    p: usize,
    variant: Variant,
    k: &K,
    budget: &Budget,
) -> Result<BettiTable> {
    let m = log_module(ma, p, variant, k, budget)?;
    Ok(resolve(&m, k, budget)?.betti)
}

/// Determinant of a square matrix of polynomials by Laplace expansion with
/// memoization over column subsets.
pub fn poly_det<K: Field>(m: &[Vec<Poly<K::Elem>>], k: &K) -> Poly<K::Elem> {
    let n = m.len();
    let mut memo: alloc::collections::BTreeMap<u32, Poly<K::Elem>> = alloc::collections::BTreeMap::new();
    fn rec<K: Field>(
        m: &[Vec<Poly<K::Elem>>],
        cols: u32,
        k: &K,
        memo: &mut alloc::collections::BTreeMap<u32, Poly<K::Elem>>,
    ) -> Poly<K::Elem> {
        let n = m.len();
        let used = cols.count_ones() as usize;
        let row = n - used;
        if used == 0 {
            return Poly::one(k);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let _ = row;
        let r = n - cols.count_ones() as usize;
        let mut acc = Poly::zero();
        let mut sign = 1;
        for c in 0..n {
            if cols >> c & 1 == 0 {
                continue;
            }
            if !m[r][c].is_zero() {
                let sub = rec(m, cols & !(1 << c), k, memo);
                let t = m[r][c].mul(&sub, k);
                acc = if sign > 0 { acc.add(&t, k) } else { acc.sub(&t, k) };
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    if n == 0 {
        return Poly::one(k);
    }
    rec(m, (1u32 << n) - 1, k, &mut memo)
}

/// Outcome of the freeness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Freeness {
    pub free: bool,
    /// Sorted exponents when free.
    pub exponents: Option<Vec<u32>>,
    /// Betti table of `D^1(A, m)`.
    pub betti: BettiTable,
}

/// Freeness via the minimal resolution of `D^1`, confirmed by Saito's criterion.
pub fn is_free<K: Field>(ma: &MultiArrangement, k: &K, budget: &Budget) -> Result<Freeness> {
    let l = ma.dim();
    let m = log_module(ma, 1, Variant::Derivation, k, budget)?;
    let res = resolve(&m, k, budget)?;
    let betti = res.betti.clone();
    let pd = betti.pd().unwrap_or(0);
    let mins = &res.maps[0];
    if pd > 0 {
        return Ok(Freeness { free: false, exponents: None, betti });
    }
    if mins.len() != l {
        return Err(Error::Internal(alloc::format!("free D^1 with {} generators in rank {l}", mins.len())));
    }
    let mat: Vec<Vec<Poly<K::Elem>>> = mins.iter().map(|g| m.ambient.to_polys(g, k)).collect();
    let det = poly_det(&mat, k);
    let q = ma.defining_poly(k)?;
    let ok = !det.is_zero() && det.div_exact(&q, k).is_some_and(|c| c.is_constant() && !c.is_zero());
    if !ok {
        return Err(Error::Internal("resolution and Saito criterion disagree".into()));
    }
    let mut exps: Vec<u32> = betti.degrees(0).into_iter().map(|d| d as u32).collect();
    exps.sort_unstable();
    Ok(Freeness { free: true, exponents: Some(exps), betti })
}

/// One entry of a projective dimension profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PdEntry {
    Exact(usize),
    /// Bound from reflexivity, not computed.
    AtMost(usize),
}

impl PdEntry {
    pub fn upper(&self) -> usize {
        match self {
            PdEntry::Exact(v) | PdEntry::AtMost(v) => *v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdProfile {
    /// `pd_S Ω^p(A, m)` for `p = 0..=ℓ`.
    pub entries: Vec<PdEntry>,
    pub tame: bool,
}

/// Projective dimensions of `Ω^p(A, m)` computed through `D^{ℓ-p}`.
///
/// Entries `p = 0, ℓ` are 0 and `p = ℓ-2, ℓ-1` are bounded by `ℓ-2` without
/// computation unless `full` is set.
pub fn pd_profile<K: Field>(ma: &MultiArrangement, full: bool, k: &K, budget: &Budget) -> Result<PdProfile> {
    let l = ma.dim();
    let mut entries = Vec::with_capacity(l + 1);
    for p in 0..=l {
        let shortcut = p == 0 || p == l || p + 2 == l || p + 1 == l;
        if shortcut && !full {
            entries.push(if p == 0 || p == l { PdEntry::Exact(0) } else { PdEntry::AtMost(l.saturating_sub(2)) });
            continue;
        }
        let b = betti(ma, l - p, Variant::Derivation, k, budget)?;
        entries.push(PdEntry::Exact(b.pd().unwrap_or(0)));
    }
    let tame = entries.iter().enumerate().all(|(p, e)| e.upper() <= p);
    Ok(PdProfile { entries, tame })
}

pub fn is_tame<K: Field>(ma: &MultiArrangement, k: &K, budget: &Budget) -> Result<bool> {
    Ok(pd_profile(ma, false, k, budget)?.tame)
}

/// Exterior product of two forms given by coordinates over subsets.
pub fn wedge<K: Field>(
    l: usize,
    a: (&[Poly<K::Elem>], usize),
    b: (&[Poly<K::Elem>], usize),
    k: &K,
) -> Vec<Poly<K::Elem>> {
    let (fa, pa) = a;
    let (fb, pb) = b;
    let sa = subsets(l, pa);
    let sb = subsets(l, pb);
    let out_sets = subsets(l, pa + pb);
    let mut out = vec![Poly::zero(); out_sets.len()];
    for (i, si) in sa.iter().enumerate() {
        if fa[i].is_zero() {
            continue;
        }
        for (j, sj) in sb.iter().enumerate() {
            if fb[j].is_zero() || si.iter().any(|x| sj.contains(x)) {
                continue;
            }
            let mut u: Vec<usize> = si.iter().chain(sj.iter()).copied().collect();
            u.sort_unstable();
            let idx = out_sets.iter().position(|s| *s == u).expect("subset");
            let t = fa[i].mul(&fb[j], k);
            out[idx] = if shuffle_sign(si, sj) > 0 { out[idx].add(&t, k) } else { out[idx].sub(&t, k) };
        }
    }
    out
}

/// Per-degree comparison of `∧^p Ω^1(A, m)` with `Ω^p(A, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeReport {
    pub p: usize,
    /// `(form degree, dim of wedge image, dim of Ω^p)`.
    pub degrees: Vec<(i32, usize, usize)>,
    pub equal: bool,
}

pub fn wedge_equals_omega_check<K: Field>(
    ma: &MultiArrangement,
    p: usize,
    degrees: core::ops::RangeInclusive<i32>,
    k: &K,
    budget: &Budget,
) -> Result<WedgeReport> {
    let l = ma.dim();
    let omega1 = log_module(ma, 1, Variant::Form, k, budget)?;
    let omega_p = log_module(ma, p, Variant::Form, k, budget)?;
    let res = resolve(&omega1, k, budget)?;
    let gens1: Vec<Vec<Poly<K::Elem>>> = res.maps[0].iter().map(|g| omega1.ambient.to_polys(g, k)).collect();
    let q = ma.defining_poly(k)?;
    // numerator of ω_1 ∧ ... ∧ ω_p is (f_1 ∧ ... ∧ f_p) / Q^{p-1}
    let mut wedges: Vec<Vector<K::Elem>> = Vec::new();
    let qp = q.pow(p.saturating_sub(1) as u32, k);
    for choice in subsets(gens1.len(), p) {
        let mut acc: Vec<Poly<K::Elem>> = vec![Poly::one(k)];
        let mut deg = 0;
        for &c in &choice {
            acc = wedge(l, (&acc, deg), (&gens1[c], 1), k);
            deg += 1;
        }
        let num: Vec<Poly<K::Elem>> = acc
            .iter()
            .map(|f| f.div_exact(&qp, k).ok_or_else(|| Error::Internal("wedge numerator not divisible".into())))
            .collect::<Result<_>>()?;
        let v = omega_p.ambient.from_polys(&num, k);
        if !v.is_zero() {
            wedges.push(v);
        }
    }
    let gw = groebner_basis(&omega_p.ambient, &wedges, k, budget)?;
    let go = groebner_basis(&omega_p.ambient, &omega_p.gens, k, budget)?;
    let mut rows = Vec::new();
    let mut equal = true;
    for d in degrees {
        let (a, b) = (gw.dim_in_degree(d), go.dim_in_degree(d));
        equal &= a == b;
        rows.push((d, a, b));
    }
    Ok(WedgeReport { p, degrees: rows, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::field::Rationals;

    fn simple(forms: &[&[i64]]) -> MultiArrangement {
        MultiArrangement::simple(Arrangement::from_ints(forms[0].len(), forms).unwrap())
    }

    #[test]
    fn boolean_is_free() {
        let k = Rationals;
        let a = simple(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let f = is_free(&a, &k, &Budget::unlimited()).unwrap();
        assert!(f.free);
        assert_eq!(f.exponents, Some(vec![1, 1, 1]));
    }

    #[test]
    fn generic_plane_arrangement_not_free() {
        let k = Rationals;
        let a = simple(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let f = is_free(&a, &k, &Budget::unlimited()).unwrap();
        assert!(!f.free);
        assert_eq!(f.betti.pd(), Some(1));
        assert_eq!(degreewise_dimension(&a, 1, Variant::Derivation, 1, &k).unwrap(), 1);
    }

    #[test]
    fn top_modules() {
        let k = Rationals;
        let a = simple(&[&[1, 0], &[0, 1], &[1, 1]]);
        let b = Budget::unlimited();
        // D^ℓ = S·Q, D^0 = S, Ω^ℓ = S·(1/Q) dx
        assert_eq!(betti(&a, 2, Variant::Derivation, &k, &b).unwrap().triples(), vec![(0, 3, 1)]);
        assert_eq!(betti(&a, 0, Variant::Derivation, &k, &b).unwrap().triples(), vec![(0, 0, 1)]);
        assert_eq!(betti(&a, 2, Variant::Form, &k, &b).unwrap().triples(), vec![(0, -3, 1)]);
        assert_eq!(betti(&a, 0, Variant::Form, &k, &b).unwrap().triples(), vec![(0, 0, 1)]);
    }
}
