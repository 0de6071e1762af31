//! Degreewise verification of the Euler, C- and Ziegler sequences.
//!
//! All computations happen in coordinates adapted to `H` (`y_0 = α_H`), so
//! reduction modulo `α_H` is setting `y_0 = 0`. Modules of forms are handled
//! through numerators: `ω = f / Q` with `f` a vector over `p`-subsets.
//! For each degree the report lists the dimensions of the left, middle and
//! target pieces and the rank of the right map; exactness in the middle is
//! `rank = dim middle - dim left` together with the left piece mapping to zero.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::arrangement::subsets;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, FreeModule, GroebnerBasis, Vector};
use crate::linalg;
use crate::logmod::{log_module, Variant};
use crate::multi::{euler_multiplicity, ziegler_multiplicity, MultiArrangement};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SequenceKind {
    Euler,
    C,
    Ziegler,
}

/// Dimensions in one degree. `degree` is the form degree of the middle term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: i32,
    pub left: usize,
    pub middle: usize,
    pub image: usize,
    pub target: usize,
    pub exact_middle: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub kind: SequenceKind,
    pub hyperplane: usize,
    pub p: usize,
    pub rows: Vec<DegreeRow>,
    /// Left map lands in the middle module, right map lands in the target.
    pub well_defined: bool,
    /// Injective on the left and exact in the middle in every checked degree.
    pub exact: bool,
    /// Surjective in every checked degree.
    pub surjective: bool,
    /// Degrees (middle term) where the right map is not onto.
    pub cokernel_degrees: Vec<i32>,
    /// The polynomial `C̄` in coordinates of `H` (Euler and C-sequences).
    pub c_bar: Option<String>,
    pub c_bar_degree: Option<u32>,
}

/// Shared setup for a hyperplane: adapted coordinates and restriction data.
struct Frame<K: Field> {
    b: MultiArrangement,
    h: usize,
    l: usize,
    restricted: MultiArrangement,
    c_bar: Poly<K::Elem>,
}

fn frame<K: Field>(ma: &MultiArrangement, h: usize, k: &K) -> Result<Frame<K>> {
    let l = ma.dim();
    if l < 2 {
        return Err(Error::Hypothesis("restriction needs dimension at least 2".into()));
    }
    if h >= ma.len() {
        return Err(Error::HyperplaneNotFound);
    }
    let b = ma.adapted_to(h);
    let restricted = euler_multiplicity(&b, h, k)?;
    // C̄ = bar(Π_{L ≠ H} α_L^{m(L)}) / Q(A^H, m*)
    let mut prod = Poly::one(k);
    for (i, f) in b.arr.forms().iter().enumerate() {
        if i == h {
            continue;
        }
        let lin = Poly::linear(&crate::arrangement::form_in(f, k)?, k).restrict_var(0);
        prod = prod.mul(&lin.pow(b.mult[i], k), k);
    }
    let qstar = restricted.defining_poly(k)?;
    let c_bar = prod
        .div_exact(&qstar, k)
        .ok_or_else(|| Error::Internal("Q(A^H, m*) does not divide the restricted product".into()))?;
    Ok(Frame { b, h, l, restricted, c_bar })
}

/// Numerator module of `Ω^p(ma)` with its Gröbner basis.
fn numerators<K: Field>(
    ma: &MultiArrangement,
    p: usize,
    k: &K,
    budget: &Budget,
) -> Result<(FreeModule, Vec<Vector<K::Elem>>, GroebnerBasis<K::Elem>)> {
    let m = log_module(ma, p, Variant::Form, k, budget)?;
    let gb = groebner_basis(&m.ambient, &m.gens, k, budget)?;
    Ok((m.ambient, m.gens, gb))
}

/// Empty module placeholder for `Ω^p` with `p` outside `0..=ℓ`.
fn zero_module<E: Clone + PartialEq + core::fmt::Debug + Send + Sync + 'static>(
    nvars: usize,
) -> (FreeModule, GroebnerBasis<E>) {
    let fm = FreeModule::new(nvars, Vec::new());
    (fm.clone(), GroebnerBasis { module: fm, elems: Vec::new(), minimal: Vec::new() })
}

/// Rank of a family of polynomial vectors.
fn rank_of<K: Field>(vs: &[Vec<Poly<K::Elem>>], k: &K) -> usize {
    linalg::rank(&flatten(vs, k).0, k)
}

/// Index of `I ∖ {0}` shifted down by one among `(|I|-1)`-subsets of `ℓ-1`, or
/// of `I` shifted when `0 ∉ I`.
fn shifted_index(i: &[usize], l: usize) -> usize {
    let j: Vec<usize> = i.iter().filter(|&&x| x != 0).map(|x| x - 1).collect();
    subsets(l - 1, j.len()).iter().position(|s| *s == j).expect("subset")
}

struct Rows {
    rows: Vec<DegreeRow>,
    well_defined: bool,
}

impl Rows {
    fn new() -> Self {
        Rows { rows: Vec::new(), well_defined: true }
    }

    fn finish(self, kind: SequenceKind, h: usize, p: usize, c_bar: Option<(String, u32)>) -> SequenceReport {
        let exact = self.rows.iter().all(|r| r.exact_middle);
        let surjective = self.rows.iter().all(|r| r.surjective);
        let cokernel_degrees = self.rows.iter().filter(|r| !r.surjective).map(|r| r.degree).collect();
        let (c, d) = match c_bar {
            Some((c, d)) => (Some(c), Some(d)),
            None => (None, None),
        };
        SequenceReport {
            kind,
            hyperplane: h,
            p,
            rows: self.rows,
            well_defined: self.well_defined,
            exact,
            surjective,
            cokernel_degrees,
            c_bar: c,
            c_bar_degree: d,
        }
    }
}

fn c_bar_info<K: Field>(f: &Frame<K>, k: &K) -> (String, u32) {
    let names = crate::poly::var_names(f.l - 1);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    (f.c_bar.display(&refs, k), f.c_bar.degree().unwrap_or(0))
}

/// `0 → Ω^p(A,m)[-1] → Ω^p(A,m-δ_H) → Ω^p(A^H,m*)`, numerator degrees `0..=d_max`
/// of the middle term.
pub fn euler_sequence<K: Field>(
    ma: &MultiArrangement,
    h: usize,
    p: usize,
    d_max: u32,
    k: &K,
    budget: &Budget,
) -> Result<SequenceReport> {
    let f = frame(ma, h, k)?;
    let l = f.l;
    let (minus, _) = f.b.minus_delta(f.h);
    let mh = f.b.mult[f.h];
    let (_, gens1, gb1) = numerators(&f.b, p, k, budget)?;
    let (fm2, _, gb2) = numerators(&minus, p, k, budget)?;
    let (fmt, gbt) = if p < l {
        let (fm, _, gb) = numerators(&f.restricted, p, k, budget)?;
        (fm, gb)
    } else {
        zero_module(l - 1)
    };
    let mut out = Rows::new();
    // Ω^p(A,m) ⊆ Ω^p(A,m-δ_H) on numerators
    out.well_defined &= gens1.iter().all(|g| gb2.contains(&fm2.normalize(g, k), k));
    let coords = subsets(l, p);
    let target_n = subsets(l - 1, p).len();
    let map = |v: &Vector<K::Elem>| -> Result<Vec<Poly<K::Elem>>> {
        let polys = fm2.to_polys(v, k);
        let mut img = vec![Poly::zero(); target_n];
        for (idx, i) in coords.iter().enumerate() {
            if i.contains(&0) || polys[idx].is_zero() {
                continue;
            }
            let g = polys[idx]
                .div_var_pow(0, (mh - 1) as u16)
                .ok_or_else(|| Error::Internal("Euler map: missing power of α_H".into()))?
                .restrict_var(0);
            img[shifted_index(i, l)] = if g.is_zero() {
                g
            } else {
                g.div_exact(&f.c_bar, k).ok_or_else(|| Error::Internal("Euler map: C̄ does not divide".into()))?
            };
        }
        Ok(img)
    };
    let shift2 = -(minus.size() as i32);
    for n in 0..=d_max as i32 {
        budget.check()?;
        let deg = n + shift2;
        let mid = gb2.basis_in_degree(deg, k);
        let left = gb1.dim_in_degree(deg - 1);
        let imgs: Vec<Vec<Poly<K::Elem>>> = mid.iter().map(&map).collect::<Result<_>>()?;
        let rank = rank_of(&imgs, k);
        // left piece goes to zero
        let left_zero = gb1
            .basis_in_degree(deg - 1, k)
            .iter()
            .map(&map)
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|v| v.iter().all(|p| p.is_zero()));
        for im in &imgs {
            let v = fmt.from_polys(im, k);
            if !v.is_zero() && !gbt.contains(&v, k) {
                out.well_defined = false;
            }
        }
        let target = gbt.dim_in_degree(deg);
        out.rows.push(DegreeRow {
            degree: deg,
            left,
            middle: mid.len(),
            image: rank,
            target,
            exact_middle: left_zero && rank + left == mid.len(),
            surjective: rank == target,
        });
    }
    Ok(out.finish(SequenceKind::Euler, h, p, Some(c_bar_info(&f, k))))
}

/// `0 → Ω^p(A,m-δ_H) → Ω^p(A,m) → (Ω^{p-1}(A^H,m*)/C̄)[m(H)]`. The right map
/// sends `ω` to the numerators `bar f_I` with `0 ∈ I`; being well defined
/// means these lie in the numerator module of `Ω^{p-1}(A^H, m*)`.
pub fn c_sequence<K: Field>(
    ma: &MultiArrangement,
    h: usize,
    p: usize,
    d_max: u32,
    k: &K,
    budget: &Budget,
) -> Result<SequenceReport> {
    let f = frame(ma, h, k)?;
    let l = f.l;
    let (minus, _) = f.b.minus_delta(f.h);
    let (_, gens1, gb1) = numerators(&minus, p, k, budget)?;
    let (fm2, _, gb2) = numerators(&f.b, p, k, budget)?;
    let (fmt, gbt) = if p >= 1 && p - 1 < l {
        let (fm, _, gb) = numerators(&f.restricted, p - 1, k, budget)?;
        (fm, gb)
    } else {
        zero_module(l - 1)
    };
    let y0 = Poly::var(0, k);
    let mut out = Rows::new();
    out.well_defined &= gens1.iter().all(|g| gb2.contains(&fm2.mul_poly(g, &y0, k), k));
    let coords = subsets(l, p);
    let target_n = if p >= 1 { subsets(l - 1, p - 1).len() } else { 0 };
    let map = |v: &Vector<K::Elem>| -> Vec<Poly<K::Elem>> {
        let polys = fm2.to_polys(v, k);
        let mut img = vec![Poly::zero(); target_n];
        for (idx, i) in coords.iter().enumerate() {
            if i.contains(&0) {
                img[shifted_index(i, l)] = polys[idx].restrict_var(0);
            }
        }
        img
    };
    let shift2 = -(f.b.size() as i32);
    let tshift = -(f.restricted.size() as i32);
    for n in 0..=d_max as i32 {
        budget.check()?;
        let deg = n + shift2;
        let mid = gb2.basis_in_degree(deg, k);
        let lower = gb1.basis_in_degree(deg, k);
        let left_zero = lower.iter().map(|v| map(&fm2.mul_poly(v, &y0, k))).all(|v| v.iter().all(|p| p.is_zero()));
        let imgs: Vec<Vec<Poly<K::Elem>>> = mid.iter().map(&map).collect();
        let rank = rank_of(&imgs, k);
        for im in &imgs {
            let v = fmt.from_polys(im, k);
            if !v.is_zero() && !gbt.contains(&v, k) {
                out.well_defined = false;
            }
        }
        let target = gbt.dim_in_degree(n + tshift);
        out.rows.push(DegreeRow {
            degree: deg,
            left: lower.len(),
            middle: mid.len(),
            image: rank,
            target,
            exact_middle: left_zero && rank + lower.len() == mid.len(),
            surjective: rank == target,
        });
    }
    Ok(out.finish(SequenceKind::C, h, p, Some(c_bar_info(&f, k))))
}

/// `Ω^p(A) ∧ dα_H/α_H` as numerator vectors over `(p+1)`-subsets, given by
/// the coordinates `f_J / y_0` for `0 ∉ J`.
fn wedge_dlog<K: Field>(polys: &[Poly<K::Elem>], l: usize, p: usize) -> Result<Vec<Poly<K::Elem>>> {
    let coords = subsets(l, p);
    let mut out = vec![Poly::zero(); subsets(l - 1, p).len()];
    for (idx, j) in coords.iter().enumerate() {
        if j.contains(&0) || polys[idx].is_zero() {
            continue;
        }
        out[shifted_index(j, l)] =
            polys[idx].div_var_pow(0, 1).ok_or_else(|| Error::Internal("log form not divisible along H".into()))?;
    }
    Ok(out)
}

/// `0 → (Ω^p(A) ∧ dα_H/α_H)[-1] → Ω^p(A) ∧ dα_H/α_H → Ω^p(A^H, m^H)` for a
/// simple arrangement.
pub fn ziegler_sequence<K: Field>(
    ma: &MultiArrangement,
    h: usize,
    p: usize,
    d_max: u32,
    k: &K,
    budget: &Budget,
) -> Result<SequenceReport> {
    if !ma.is_simple() {
        return Err(Error::Hypothesis("the Ziegler sequence needs a simple arrangement".into()));
    }
    let l = ma.dim();
    if l < 2 {
        return Err(Error::Hypothesis("restriction needs dimension at least 2".into()));
    }
    let b = ma.adapted_to(h);
    let z = ziegler_multiplicity(&b.arr, h)?;
    let (fm, _, gb) = numerators(&b, p, k, budget)?;
    let (fmt, gbt) = if p < l {
        let (fm, _, gb) = numerators(&z, p, k, budget)?;
        (fm, gb)
    } else {
        zero_module(l - 1)
    };
    let shift = -(b.size() as i32);
    let tshift = -(z.size() as i32);
    let piece = |n: i32| -> Result<Vec<Vec<Poly<K::Elem>>>> {
        gb.basis_in_degree(n + shift, k).iter().map(|v| wedge_dlog::<K>(&fm.to_polys(v, k), l, p)).collect()
    };
    let mut out = Rows::new();
    let mut prev = 0usize;
    for n in 0..=d_max as i32 {
        budget.check()?;
        let w = piece(n)?;
        let dim_w = rank_of(&w, k);
        let imgs: Vec<Vec<Poly<K::Elem>>> = w.iter().map(|v| v.iter().map(|q| q.restrict_var(0)).collect()).collect();
        let rank = rank_of(&imgs, k);
        for im in &imgs {
            let v = fmt.from_polys(im, k);
            if !v.is_zero() && !gbt.contains(&v, k) {
                out.well_defined = false;
            }
        }
        let target = gbt.dim_in_degree(n - 1 + tshift);
        // the left piece is y_0 times the previous degree; it maps to zero trivially
        out.rows.push(DegreeRow {
            degree: n - 1 + shift,
            left: prev,
            middle: dim_w,
            image: rank,
            target,
            exact_middle: rank + prev == dim_w,
            surjective: rank == target,
        });
        prev = dim_w;
    }
    let _ = fmt;
    Ok(out.finish(SequenceKind::Ziegler, h, p, None))
}

/// Contraction `ι_{θ_E}` of a `q`-form numerator, over `(q-1)`-subsets.
fn contract_euler<K: Field>(f: &[Poly<K::Elem>], l: usize, q: usize, k: &K) -> Vec<Poly<K::Elem>> {
    let src = subsets(l, q);
    let dst = subsets(l, q - 1);
    let mut out = vec![Poly::zero(); dst.len()];
    for (idx, i) in src.iter().enumerate() {
        if f[idx].is_zero() {
            continue;
        }
        for (pos, &v) in i.iter().enumerate() {
            let j: Vec<usize> = i.iter().copied().filter(|&x| x != v).collect();
            let t = dst.iter().position(|s| *s == j).expect("subset");
            let term = f[idx].mul(&Poly::var(v, k), k);
            out[t] = if pos % 2 == 0 { out[t].add(&term, k) } else { out[t].sub(&term, k) };
        }
    }
    out
}

/// Numerator of `dα_H/α_H ∧ ω` over `(q+1)`-subsets of all `ℓ` coordinates.
fn dlog_wedge<K: Field>(g: &[Poly<K::Elem>], l: usize, q: usize) -> Result<Vec<Poly<K::Elem>>> {
    let src = subsets(l, q);
    let dst = subsets(l, q + 1);
    let mut out = vec![Poly::zero(); dst.len()];
    for (idx, j) in src.iter().enumerate() {
        if j.contains(&0) || g[idx].is_zero() {
            continue;
        }
        let mut kk = vec![0];
        kk.extend_from_slice(j);
        let t = dst.iter().position(|s| *s == kk).expect("subset");
        out[t] = g[idx].div_var_pow(0, 1).ok_or_else(|| Error::Internal("log form not divisible along H".into()))?;
    }
    Ok(out)
}

/// Flattens vectors of polynomials into dense rows over a common column set.
fn flatten<K: Field>(vs: &[Vec<Poly<K::Elem>>], k: &K) -> (Vec<Vec<K::Elem>>, usize) {
    let mut cols: BTreeMap<(usize, crate::poly::Monomial), usize> = BTreeMap::new();
    for v in vs {
        for (c, p) in v.iter().enumerate() {
            for (m, _) in p.terms() {
                let n = cols.len();
                cols.entry((c, *m)).or_insert(n);
            }
        }
    }
    let rows = vs
        .iter()
        .map(|v| {
            let mut r = vec![k.zero(); cols.len()];
            for (c, p) in v.iter().enumerate() {
                for (m, x) in p.terms() {
                    r[cols[&(c, *m)]] = x.clone();
                }
            }
            r
        })
        .collect();
    (rows, cols.len())
}

/// Basis of `Ω^q_0(A)` in one degree: forms of the given basis annihilated
/// by contraction with the Euler derivation.
fn euler_kernel<K: Field>(basis: &[Vec<Poly<K::Elem>>], l: usize, q: usize, k: &K) -> Vec<Vec<Poly<K::Elem>>> {
    if q == 0 {
        return basis.to_vec();
    }
    let imgs: Vec<Vec<Poly<K::Elem>>> = basis.iter().map(|f| contract_euler(f, l, q, k)).collect();
    let (rows, ncols) = flatten(&imgs, k);
    // columns of the map are the basis elements
    let mut m = vec![vec![k.zero(); basis.len()]; ncols];
    for (j, r) in rows.iter().enumerate() {
        for (i, x) in r.iter().enumerate() {
            m[i][j] = x.clone();
        }
    }
    linalg::nullspace(&m, basis.len(), k)
        .into_iter()
        .map(|c| {
            let mut acc = vec![Poly::zero(); basis[0].len()];
            for (b, x) in basis.iter().zip(&c) {
                if k.is_zero(x) {
                    continue;
                }
                for (a, p) in acc.iter_mut().zip(b) {
                    *a = a.add(&p.scale(x, k), k);
                }
            }
            acc
        })
        .collect()
}

/// One degree of the splitting `Ω^p(A) = Ω^p_0(A) ⊕ dα_H/α_H ∧ Ω^{p-1}_0(A)`
/// for a simple arrangement, with `Ω_0` the kernel of contraction by `θ_E`.
/// Since `dx_i` has degree 0 here, `dα_H/α_H` has degree -1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRow {
    pub degree: i32,
    pub total: usize,
    pub kernel_part: usize,
    pub dlog_part: usize,
    /// Rank of the union of both parts.
    pub span: usize,
}

impl DecompositionRow {
    pub fn holds(&self) -> bool {
        self.total == self.kernel_part + self.dlog_part && self.span == self.total
    }
}

pub fn decomposition_check<K: Field>(
    ma: &MultiArrangement,
    h: usize,
    p: usize,
    d_max: u32,
    k: &K,
    budget: &Budget,
) -> Result<Vec<DecompositionRow>> {
    let l = ma.dim();
    if p > l || h >= ma.len() {
        return Err(Error::Hypothesis("form degree or hyperplane out of range".into()));
    }
    let b = ma.adapted_to(h);
    let shift = -(b.size() as i32);
    let (fmp, _, gbp) = numerators(&b, p, k, budget)?;
    let lower = if p > 0 { Some(numerators(&b, p - 1, k, budget)?) } else { None };
    let mut out = Vec::new();
    for n in 0..=d_max as i32 {
        budget.check()?;
        let deg = n + shift;
        let top: Vec<Vec<Poly<K::Elem>>> = gbp.basis_in_degree(deg, k).iter().map(|v| fmp.to_polys(v, k)).collect();
        let kernel = euler_kernel(&top, l, p, k);
        let dlog: Vec<Vec<Poly<K::Elem>>> = match &lower {
            Some((fm, _, gb)) => {
                let basis: Vec<Vec<Poly<K::Elem>>> =
                    gb.basis_in_degree(deg + 1, k).iter().map(|v| fm.to_polys(v, k)).collect();
                euler_kernel(&basis, l, p - 1, k).iter().map(|g| dlog_wedge::<K>(g, l, p - 1)).collect::<Result<_>>()?
            }
            None => Vec::new(),
        };
        let dlog_rank = rank_of(&dlog, k);
        let mut both = kernel.clone();
        both.extend(dlog.iter().cloned());
        out.push(DecompositionRow {
            degree: deg,
            total: top.len(),
            kernel_part: kernel.len(),
            dlog_part: dlog_rank,
            span: rank_of(&both, k),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::field::Rationals;
    use alloc::vec;

    fn simple(forms: &[&[i64]]) -> MultiArrangement {
        MultiArrangement::simple(Arrangement::from_ints(3, forms).unwrap())
    }

    #[test]
    fn boolean_sequences_are_short_exact() {
        let k = Rationals;
        let b = Budget::unlimited();
        let a = simple(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        for p in 0..=3 {
            let e = euler_sequence(&a, 0, p, 5, &k, &b).unwrap();
            let c = c_sequence(&a, 0, p, 5, &k, &b).unwrap();
            let z = ziegler_sequence(&a, 0, p, 5, &k, &b).unwrap();
            for r in [&e, &c, &z] {
                assert!(r.well_defined && r.exact && r.surjective, "{r:?}");
                assert!(r.cokernel_degrees.is_empty());
            }
        }
    }

    #[test]
    fn generic_plane_euler_sequence_is_not_right_exact() {
        // local freeness fails at the origin, so only left exactness survives
        let k = Rationals;
        let b = Budget::unlimited();
        let a = simple(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let e = euler_sequence(&a, 0, 1, 6, &k, &b).unwrap();
        assert!(e.well_defined && e.exact);
        assert!(!e.surjective);
        assert!(!e.cokernel_degrees.is_empty());
    }

    #[test]
    fn c_sequence_with_multiplicities() {
        let k = Rationals;
        let b = Budget::unlimited();
        let arr = Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let a = MultiArrangement::new(arr, vec![2, 1, 3, 1, 2]).unwrap();
        for h in 0..a.len() {
            for p in 0..=3 {
                let c = c_sequence(&a, h, p, a.size() + 2, &k, &b).unwrap();
                assert!(c.well_defined && c.exact, "h={h} p={p}");
            }
        }
    }

    #[test]
    fn euler_kernel_decomposition() {
        let k = Rationals;
        let b = Budget::unlimited();
        let a = simple(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        for p in 1..=3 {
            let rows = decomposition_check(&a, 3, p, 6, &k, &b).unwrap();
            assert!(!rows.is_empty());
            assert!(rows.iter().all(DecompositionRow::holds), "p={p}: {rows:?}");
        }
    }
}
