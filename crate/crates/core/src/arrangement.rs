//! Central hyperplane arrangements given by normalized linear forms.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldTag, PrimeField, Rat, Rationals};
use crate::linalg;
use crate::poly::MAX_VARS;

/// Arithmetic on rational representatives according to a [`FieldTag`]:
/// plain rationals, or reduced residues for `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TagField(pub FieldTag);

impl TagField {
    fn reduce(&self, a: Rat) -> Rat {
        match self.0 {
            FieldTag::Rational => a,
            FieldTag::Prime(p) => Rat::from_int(a.mod_p(p).expect("integral residue") as i64),
        }
    }
}

impl Field for TagField {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::ZERO
    }
    fn one(&self) -> Rat {
        Rat::ONE
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(a.add(b))
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(a.sub(b))
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(a.mul(b))
    }
    fn neg(&self, a: &Rat) -> Rat {
        self.reduce(a.neg())
    }
    fn inv(&self, a: &Rat) -> Result<Rat> {
        match self.0 {
            FieldTag::Rational => a.recip(),
            FieldTag::Prime(p) => {
                let k = PrimeField::new(p)?;
                let x = k.from_rat(a)?;
                Ok(Rat::from_int(k.inv(&x)? as i64))
            }
        }
    }
    fn from_i64(&self, n: i64) -> Rat {
        self.reduce(Rat::from_int(n))
    }
    fn from_rat(&self, q: &Rat) -> Result<Rat> {
        match self.0 {
            FieldTag::Rational => Ok(q.clone()),
            FieldTag::Prime(p) => Ok(Rat::from_int(q.mod_p(p)? as i64)),
        }
    }
    fn to_rat(&self, a: &Rat) -> Rat {
        a.clone()
    }
    fn characteristic(&self) -> u64 {
        match self.0 {
            FieldTag::Rational => 0,
            FieldTag::Prime(p) => p,
        }
    }
}

/// Scales a nonzero vector so its first nonzero entry is one.
pub fn normalize_form(v: &[Rat], tag: FieldTag) -> Option<Vec<Rat>> {
    let k = TagField(tag);
    let v: Vec<Rat> = v.iter().map(|x| k.from_rat(x)).collect::<Result<_>>().ok()?;
    let p = v.iter().position(|x| !x.is_zero())?;
    let inv = k.inv(&v[p]).ok()?;
    Some(v.iter().map(|x| k.mul(x, &inv)).collect())
}

/// File format for arrangements; rationals are integers or `"a/b"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub dim: usize,
    #[serde(default = "default_field")]
    pub field: FieldTag,
    pub hyperplanes: Vec<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn default_field() -> FieldTag {
    FieldTag::Rational
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<Vec<Rat>>,
    field: FieldTag,
    labels: Option<Vec<String>>,
    essential: bool,
}

/// Result of restricting onto a hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub arrangement: Arrangement,
    /// For every hyperplane of the original arrangement, the index of its
    /// trace in the restriction; `None` for the restricting hyperplane.
    pub image: Vec<Option<usize>>,
    pub hyperplane: usize,
    /// Coordinate eliminated on the hyperplane.
    pub pivot: usize,
}

impl Arrangement {
    /// Validates and normalizes; proportional forms are rejected.
    pub fn new(dim: usize, forms: Vec<Vec<Rat>>, field: FieldTag) -> Result<Arrangement> {
        if dim > MAX_VARS {
            return Err(Error::TooManyVariables(dim));
        }
        if let FieldTag::Prime(p) = field {
            PrimeField::new(p)?;
        }
        let mut out: Vec<Vec<Rat>> = Vec::with_capacity(forms.len());
        for (i, f) in forms.iter().enumerate() {
            if f.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.len() });
            }
            let n = normalize_form(f, field).ok_or(Error::ZeroForm(i))?;
            if let Some(j) = out.iter().position(|g| *g == n) {
                return Err(Error::ProportionalForms(j, i));
            }
            out.push(n);
        }
        let mut a = Arrangement { dim, forms: out, field, labels: None, essential: false };
        a.essential = a.rank() == dim;
        Ok(a)
    }

    pub fn from_ints(dim: usize, forms: &[&[i64]]) -> Result<Arrangement> {
        let f = forms.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
        Arrangement::new(dim, f, FieldTag::Rational)
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<Arrangement> {
        if let Some(l) = &labels {
            if l.len() != self.forms.len() {
                return Err(Error::DimensionMismatch { expected: self.forms.len(), found: l.len() });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn empty(dim: usize, field: FieldTag) -> Arrangement {
        Arrangement { dim, forms: Vec::new(), field, labels: None, essential: dim == 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn len(&self) -> usize {
        self.forms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
    pub fn forms(&self) -> &[Vec<Rat>] {
        &self.forms
    }
    pub fn form(&self, i: usize) -> &[Rat] {
        &self.forms[i]
    }
    pub fn field(&self) -> FieldTag {
        self.field
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
    pub fn is_essential(&self) -> bool {
        self.essential
    }
    pub fn tag_field(&self) -> TagField {
        TagField(self.field)
    }

    /// Index of a hyperplane given by a (not necessarily normalized) form.
    pub fn index_of(&self, form: &[Rat]) -> Option<usize> {
        let n = normalize_form(form, self.field)?;
        self.forms.iter().position(|f| *f == n)
    }

    pub fn rank_of(&self, idx: &[usize]) -> usize {
        if idx.is_empty() {
            return 0;
        }
        let m: Vec<Vec<Rat>> = idx.iter().map(|&i| self.forms[i].clone()).collect();
        linalg::rank(&m, &self.tag_field())
    }

    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.len()).collect();
        self.rank_of(&all)
    }

    /// Sub-arrangement on the given hyperplane indices (same ambient space).
    pub fn subarrangement(&self, idx: &[usize]) -> Arrangement {
        let forms: Vec<Vec<Rat>> = idx.iter().map(|&i| self.forms[i].clone()).collect();
        let labels = self.labels.as_ref().map(|l| idx.iter().map(|&i| l[i].clone()).collect());
        let mut a = Arrangement { dim: self.dim, forms, field: self.field, labels, essential: false };
        a.essential = a.rank() == a.dim;
        a
    }

    pub fn delete(&self, h: usize) -> Arrangement {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| i != h).collect();
        self.subarrangement(&idx)
    }

    /// Adds a hyperplane; fails if it is already present.
    pub fn add(&self, form: &[Rat]) -> Result<Arrangement> {
        let mut f = self.forms.clone();
        f.push(form.to_vec());
        Arrangement::new(self.dim, f, self.field)
    }

    /// Restriction onto hyperplane `h`, in coordinates `x_j (j ≠ pivot)` of H.
    pub fn restrict(&self, h: usize) -> Result<Restriction> {
        if h >= self.len() {
            return Err(Error::HyperplaneNotFound);
        }
        let k = self.tag_field();
        let alpha = &self.forms[h];
        let pivot = alpha.iter().position(|x| !x.is_zero()).expect("nonzero form");
        let mut forms: Vec<Vec<Rat>> = Vec::new();
        let mut image = vec![None; self.len()];
        for (i, l) in self.forms.iter().enumerate() {
            if i == h {
                continue;
            }
            let bar: Vec<Rat> =
                (0..self.dim).filter(|&j| j != pivot).map(|j| k.sub(&l[j], &k.mul(&l[pivot], &alpha[j]))).collect();
            let n = normalize_form(&bar, self.field).ok_or(Error::Internal("trace vanished".into()))?;
            let j = match forms.iter().position(|f| *f == n) {
                Some(j) => j,
                None => {
                    forms.push(n);
                    forms.len() - 1
                }
            };
            image[i] = Some(j);
        }
        let mut a = Arrangement { dim: self.dim - 1, forms, field: self.field, labels: None, essential: false };
        a.essential = a.rank() == a.dim;
        Ok(Restriction { arrangement: a, image, hyperplane: h, pivot })
    }

    /// Coordinates in which hyperplane `h` becomes the first coordinate
    /// hyperplane: `y_0 = α_H` and `y_1.. = x_j (j ≠ pivot)`. Setting
    /// `y_0 = 0` recovers [`Arrangement::restrict`]. Hyperplane order is kept.
    pub fn adapted_to(&self, h: usize) -> Arrangement {
        let k = self.tag_field();
        let alpha = &self.forms[h];
        let pivot = alpha.iter().position(|x| !x.is_zero()).expect("nonzero form");
        let forms = self
            .forms
            .iter()
            .map(|l| {
                let mut v = vec![l[pivot].clone()];
                v.extend((0..self.dim).filter(|&j| j != pivot).map(|j| k.sub(&l[j], &k.mul(&l[pivot], &alpha[j]))));
                normalize_form(&v, self.field).expect("nonzero")
            })
            .collect();
        let mut a =
            Arrangement { dim: self.dim, forms, field: self.field, labels: self.labels.clone(), essential: false };
        a.essential = self.essential;
        a
    }

    /// Quotient by the centre: returns the essential arrangement in
    /// `rank` variables and the dimension of the trivial factor.
    pub fn essentialize(&self) -> (Arrangement, usize) {
        let k = self.tag_field();
        let mut m: Vec<Vec<Rat>> = self.forms.clone();
        let piv = linalg::rref(&mut m, &k);
        let r = piv.len();
        // Writing each form in the basis of the reduced rows: the coordinates
        // are its entries in the pivot columns.
        let forms = self.forms.iter().map(|f| {
            let v: Vec<Rat> = piv.iter().map(|&p| f[p].clone()).collect();
            normalize_form(&v, self.field).expect("nonzero")
        });
        let forms: Vec<Vec<Rat>> = forms.collect();
        let labels = self.labels.clone();
        (Arrangement { dim: r, forms, field: self.field, labels, essential: true }, self.dim - r)
    }

    /// Product arrangement in complementary coordinates.
    pub fn product(&self, o: &Arrangement) -> Result<Arrangement> {
        if self.field != o.field {
            return Err(Error::Internal("product of arrangements over different fields".into()));
        }
        let dim = self.dim + o.dim;
        let mut forms = Vec::new();
        for f in &self.forms {
            let mut v = f.clone();
            v.extend(core::iter::repeat_n(Rat::ZERO, o.dim));
            forms.push(v);
        }
        for f in &o.forms {
            let mut v = vec![Rat::ZERO; self.dim];
            v.extend(f.iter().cloned());
            forms.push(v);
        }
        Arrangement::new(dim, forms, self.field)
    }

    /// Cone of an affine arrangement `{a·x = b}`: homogenizes with a new last
    /// coordinate `z` and adds the hyperplane at infinity `z = 0` last.
    pub fn cone(dim: usize, affine: &[(Vec<Rat>, Rat)], field: FieldTag) -> Result<Arrangement> {
        let mut forms = Vec::with_capacity(affine.len() + 1);
        for (a, b) in affine {
            if a.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: a.len() });
            }
            let mut v = a.clone();
            v.push(b.neg());
            forms.push(v);
        }
        let mut z = vec![Rat::ZERO; dim + 1];
        z[dim] = Rat::ONE;
        forms.push(z);
        Arrangement::new(dim + 1, forms, field)
    }

    /// Every set of at most `ℓ-1` hyperplanes is linearly independent.
    pub fn is_generic(&self) -> bool {
        let k = self.len().min(self.dim.saturating_sub(1));
        if k == 0 {
            return true;
        }
        let mut ok = true;
        for_each_subset(self.len(), k, &mut |s| {
            if ok && self.rank_of(s) < k {
                ok = false;
            }
        });
        ok
    }

    /// Connected components of the underlying matroid (loops cannot occur).
    ///
    /// Uses the fundamental circuits with respect to the basis chosen by row
    /// reduction: two elements lie in one component exactly when the graph
    /// joining each non-basis element to the basis elements of its
    /// fundamental circuit connects them.
    pub fn matroid_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        if n == 0 {
            return Vec::new();
        }
        let k = self.tag_field();
        // greedy basis in index order
        let mut basis: Vec<usize> = Vec::new();
        for i in 0..n {
            let mut t = basis.clone();
            t.push(i);
            if self.rank_of(&t) == t.len() {
                basis.push(i);
            }
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        // coordinates of each form in the basis: solve B^T c = f
        let r = basis.len();
        for e in (0..n).filter(|i| !basis.contains(i)) {
            // augmented system with columns = basis forms, rhs = e
            let rows: Vec<Vec<Rat>> = (0..self.dim)
                .map(|j| {
                    let mut row: Vec<Rat> = basis.iter().map(|&b| self.forms[b][j].clone()).collect();
                    row.push(self.forms[e][j].clone());
                    row
                })
                .collect();
            let mut m = rows;
            let piv = linalg::rref(&mut m, &k);
            for (ri, &p) in piv.iter().enumerate() {
                if p < r && !m[ri][r].is_zero() {
                    let (a, b) = (find(&mut parent, e), find(&mut parent, basis[p]));
                    parent[a] = b;
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            comps.entry(root).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = comps.into_values().collect();
        out.sort();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.matroid_components().len() <= 1
    }

    /// Exhaustive search for a rank-additive 2-partition (reducibility witness).
    pub fn is_irreducible_exhaustive(&self) -> bool {
        let n = self.len();
        if n <= 1 {
            return true;
        }
        let total = self.rank();
        // subsets containing element 0, excluding the full set
        for mask in 0u64..(1u64 << (n - 1)) {
            let a: Vec<usize> = core::iter::once(0).chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
            if a.len() == n {
                continue;
            }
            let b: Vec<usize> = (0..n).filter(|i| !a.contains(i)).collect();
            if self.rank_of(&a) + self.rank_of(&b) == total {
                return false;
            }
        }
        true
    }

    /// Defining polynomial rendered with variable names `x1, x2, ...`.
    pub fn display_form(&self, i: usize) -> String {
        let names = crate::poly::var_names(self.dim);
        let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        crate::poly::Poly::linear(&self.forms[i], &self.tag_field()).display(&names, &self.tag_field())
    }

    pub fn to_file(&self, mult: Option<&[u32]>) -> ArrangementFile {
        ArrangementFile {
            dim: self.dim,
            field: self.field,
            hyperplanes: self.forms.clone(),
            multiplicities: mult.map(|m| m.to_vec()),
            labels: self.labels.clone(),
        }
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(n, k, &mut |s| out.push(s.to_vec()));
    out
}

/// Converts a rational linear form into field elements.
pub fn form_in<K: Field>(f: &[Rat], k: &K) -> Result<Vec<K::Elem>> {
    f.iter().map(|x| k.from_rat(x)).collect()
}

/// Rank of a set of rational vectors over the rationals.
pub fn rational_rank(rows: &[Vec<Rat>]) -> usize {
    linalg::rank(&rows.to_vec(), &Rationals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rejects_proportional() {
        let e = Arrangement::from_ints(2, &[&[1, 0], &[2, 0]]).unwrap_err();
        assert_eq!(e, Error::ProportionalForms(0, 1));
        assert!(matches!(Arrangement::from_ints(2, &[&[0, 0]]), Err(Error::ZeroForm(0))));
        assert!(Arrangement::from_ints(2, &[&[1, 0, 0]]).is_err());
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(5, 5).len(), 1);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn restriction_of_boolean() {
        let a = Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let r = a.restrict(2).unwrap();
        assert_eq!(r.arrangement, Arrangement::from_ints(2, &[&[1, 0], &[0, 1]]).unwrap());
        assert_eq!(r.image, vec![Some(0), Some(1), None]);
    }

    #[test]
    fn cone_and_product() {
        let c = Arrangement::cone(1, &[(vec![Rat::ONE], Rat::ZERO), (vec![Rat::ONE], Rat::ONE)], FieldTag::Rational)
            .unwrap();
        assert_eq!(c, Arrangement::from_ints(2, &[&[1, 0], &[1, -1], &[0, 1]]).unwrap());
        let b1 = Arrangement::from_ints(1, &[&[1]]).unwrap();
        assert_eq!(b1.product(&b1).unwrap(), Arrangement::from_ints(2, &[&[1, 0], &[0, 1]]).unwrap());
    }

    #[test]
    fn flags() {
        let g = Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        assert!(g.is_generic() && g.is_irreducible() && g.is_irreducible_exhaustive());
        let b = Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(b.is_generic());
        assert!(!b.is_irreducible() && !b.is_irreducible_exhaustive());
        assert_eq!(b.matroid_components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn essentialize_rank_two_localization() {
        // three hyperplanes through a common codimension-2 flat in K^5
        let a = Arrangement::from_ints(5, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[1, 1, 0, 0, 0]]).unwrap();
        let (e, t) = a.essentialize();
        assert_eq!((e.dim(), t, e.len()), (2, 3, 3));
        assert!(e.is_essential());
    }
}
