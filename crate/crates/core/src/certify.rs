//! Tameness and freeness certificates.
//!
//! A [`Certificate`] is a tree of rule applications. Each node names a rule,
//! the arrangement it is applied to, the hyperplane if the rule needs one,
//! the sub-certificates for its premises and the evidence computed for its
//! remaining hypotheses. [`Certifier::certify_tame`] searches for such a tree,
//! [`verify_certificate`] re-derives every node from scratch.
//!
//! All rank conditions refer to the rank of the arrangement, so a target and
//! its essentialization behave the same way.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{for_each_subset, ArrangementFile};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::lattice::characteristic_polynomial;
use crate::local::{locally_free, locally_free_along, locally_free_along_deleted, FlatVerdict, FreenessCache};
use crate::logmod::{betti, pd_profile, Variant};
use crate::multi::{euler_multiplicity, multi_char_poly, rank2_exponents, ziegler_multiplicity, MultiArrangement};
use crate::sequences::SequenceKind;

type Key = (usize, Vec<(Vec<Rat>, u32)>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "ADD_I")]
    AddI,
    #[serde(rename = "ADD_II")]
    AddII,
    #[serde(rename = "RESTRICT")]
    Restrict,
    #[serde(rename = "DELETE")]
    Delete,
    #[serde(rename = "FREE_PAIR_DELETE")]
    FreePairDelete,
    #[serde(rename = "ZIEGLER_REST")]
    ZieglerRest,
    #[serde(rename = "YOSHINAGA_4")]
    Yoshinaga4,
    #[serde(rename = "YOSHINAGA_5")]
    Yoshinaga5,
    #[serde(rename = "EQUIV_5")]
    Equiv5,
    #[serde(rename = "GENERIC_MULTI")]
    GenericMulti,
    #[serde(rename = "GENERIC_ADD")]
    GenericAdd,
    #[serde(rename = "MS_LOCALLY_FREE")]
    MsLocallyFree,
    #[serde(rename = "LOW_RANK")]
    LowRank,
    #[serde(rename = "RANK2_FREE")]
    Rank2Free,
    #[serde(rename = "VERIFIED_FREE")]
    VerifiedFree,
    #[serde(rename = "EMPTY")]
    Empty,
}

impl RuleId {
    pub const ALL: [RuleId; 16] = [
        RuleId::AddI,
        RuleId::AddII,
        RuleId::Restrict,
        RuleId::Delete,
        RuleId::FreePairDelete,
        RuleId::ZieglerRest,
        RuleId::Yoshinaga4,
        RuleId::Yoshinaga5,
        RuleId::Equiv5,
        RuleId::GenericMulti,
        RuleId::GenericAdd,
        RuleId::MsLocallyFree,
        RuleId::LowRank,
        RuleId::Rank2Free,
        RuleId::VerifiedFree,
        RuleId::Empty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::AddI => "ADD_I",
            RuleId::AddII => "ADD_II",
            RuleId::Restrict => "RESTRICT",
            RuleId::Delete => "DELETE",
            RuleId::FreePairDelete => "FREE_PAIR_DELETE",
            RuleId::ZieglerRest => "ZIEGLER_REST",
            RuleId::Yoshinaga4 => "YOSHINAGA_4",
            RuleId::Yoshinaga5 => "YOSHINAGA_5",
            RuleId::Equiv5 => "EQUIV_5",
            RuleId::GenericMulti => "GENERIC_MULTI",
            RuleId::GenericAdd => "GENERIC_ADD",
            RuleId::MsLocallyFree => "MS_LOCALLY_FREE",
            RuleId::LowRank => "LOW_RANK",
            RuleId::Rank2Free => "RANK2_FREE",
            RuleId::VerifiedFree => "VERIFIED_FREE",
            RuleId::Empty => "EMPTY",
        }
    }

    pub fn parse(s: &str) -> Option<RuleId> {
        RuleId::ALL.iter().copied().find(|r| r.name().eq_ignore_ascii_case(s))
    }

    /// Admissible ranks of the target, inclusive.
    pub fn rank_range(self) -> (usize, usize) {
        match self {
            RuleId::LowRank => (0, 3),
            RuleId::Rank2Free => (0, 2),
            RuleId::Yoshinaga4 => (4, 4),
            RuleId::Yoshinaga5 | RuleId::Equiv5 => (5, usize::MAX),
            _ => (0, usize::MAX),
        }
    }

    pub fn needs_hyperplane(self) -> bool {
        matches!(
            self,
            RuleId::AddI
                | RuleId::AddII
                | RuleId::Restrict
                | RuleId::Delete
                | RuleId::FreePairDelete
                | RuleId::ZieglerRest
                | RuleId::Yoshinaga4
                | RuleId::Yoshinaga5
                | RuleId::Equiv5
                | RuleId::GenericAdd
        )
    }

    /// Rules stated for simple arrangements only.
    pub fn simple_only(self) -> bool {
        matches!(
            self,
            RuleId::ZieglerRest | RuleId::Yoshinaga4 | RuleId::Yoshinaga5 | RuleId::Equiv5 | RuleId::GenericAdd
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Tame,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub property: Property,
    pub arrangement: ArrangementFile,
}

/// Which pair a local freeness check is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subject {
    /// `(A, m)`
    #[serde(rename = "target")]
    Target,
    /// `(A, m - δ_H)`
    #[serde(rename = "deleted")]
    Deleted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCheck {
    pub subject: Subject,
    /// `None` for local freeness at every flat.
    pub along: Option<usize>,
    pub free: bool,
    pub flats: Vec<FlatVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<usize>,
    #[serde(default)]
    pub flats_checked: Vec<LocalCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u32>>,
    /// `pd Ω^1` of the object named by the rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd_omega1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generic: Option<bool>,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub conclusion: Vec<Claim>,
    pub rule: RuleId,
    pub target: ArrangementFile,
    #[serde(default)]
    pub premises: Vec<Certificate>,
    pub evidence: Evidence,
}

impl Certificate {
    /// Whether some conclusion of this node states `property` for `ma`.
    pub fn concludes(&self, property: Property, ma: &MultiArrangement) -> bool {
        let key = ma.canonical_key();
        self.conclusion.iter().any(|c| {
            c.property == property
                && MultiArrangement::from_file(&c.arrangement).is_ok_and(|m| m.canonical_key() == key)
        })
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Certificate::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Certificate::depth).max().unwrap_or(0)
    }

    /// Every node in depth-first order.
    pub fn nodes(&self) -> Vec<&Certificate> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(c) = stack.pop() {
            out.push(c);
            stack.extend(c.premises.iter().rev());
        }
        out
    }
}

enum Extra {
    None,
    GenericIrreducible,
    GenericHyperplane,
    VerifiedFree,
    Rank2,
    Empty,
    /// `pd Ω^1` of the given pair must be at most the bound.
    PdOmega1(MultiArrangement, usize),
}

struct Template {
    premises: Vec<(Property, MultiArrangement)>,
    local: Vec<Option<Subject>>,
    extra: Extra,
    conclusions: Vec<(Property, MultiArrangement)>,
}

fn refuse<T>(msg: String) -> Result<T> {
    Err(Error::Hypothesis(msg))
}

fn mode<K: Field>(k: &K) -> String {
    match k.characteristic() {
        0 => "exact".into(),
        p => format!("fp:{p}"),
    }
}

fn template<K: Field>(rule: RuleId, a: &MultiArrangement, h: Option<usize>, k: &K) -> Result<Template> {
    use Property::{Free, Tame};
    let l = a.arr.rank();
    let (lo, hi) = rule.rank_range();
    if l < lo || l > hi {
        return refuse(format!("{rule} does not apply in rank {l}"));
    }
    if rule.simple_only() && !a.is_simple() {
        return refuse(format!("{rule} needs a simple arrangement"));
    }
    let h = match (rule.needs_hyperplane(), h) {
        (true, Some(h)) if h < a.len() => Some(h),
        (true, _) => return refuse(format!("{rule} needs a hyperplane of the target")),
        (false, Some(_)) => return refuse(format!("{rule} takes no hyperplane")),
        (false, None) => None,
    };
    let minus = || h.map(|h| a.minus_delta(h).0).expect("hyperplane");
    let euler = || euler_multiplicity(a, h.expect("hyperplane"), k);
    let zieg = || ziegler_multiplicity(&a.arr, h.expect("hyperplane"));
    let t = |premises, local, extra, conclusions| Template { premises, local, extra, conclusions };
    use Subject::{Deleted, Target};
    Ok(match rule {
        RuleId::AddI => t(
            alloc::vec![(Tame, minus())],
            alloc::vec![Some(Target), Some(Deleted)],
            Extra::None,
            alloc::vec![(Tame, a.clone()), (Tame, euler()?)],
        ),
        RuleId::AddII => t(
            alloc::vec![(Tame, euler()?), (Tame, minus())],
            alloc::vec![Some(Deleted)],
            Extra::None,
            alloc::vec![(Tame, a.clone())],
        ),
        RuleId::Restrict => t(
            alloc::vec![(Tame, a.clone()), (Tame, minus())],
            alloc::vec![Some(Target)],
            Extra::None,
            alloc::vec![(Tame, euler()?)],
        ),
        RuleId::Delete => t(
            alloc::vec![(Tame, a.clone()), (Free, euler()?)],
            alloc::vec![Some(Target)],
            Extra::None,
            alloc::vec![(Tame, minus())],
        ),
        RuleId::FreePairDelete => t(
            alloc::vec![(Free, a.clone()), (Free, euler()?)],
            alloc::vec![],
            Extra::None,
            alloc::vec![(Tame, minus())],
        ),
        RuleId::ZieglerRest => {
            t(alloc::vec![(Tame, a.clone())], alloc::vec![Some(Target)], Extra::None, alloc::vec![(Tame, zieg()?)])
        }
        // the restriction has rank 3 and is tame without a premise
        RuleId::Yoshinaga4 => {
            t(alloc::vec![(Tame, minus())], alloc::vec![Some(Deleted)], Extra::None, alloc::vec![(Tame, a.clone())])
        }
        RuleId::Yoshinaga5 => {
            t(alloc::vec![(Tame, zieg()?)], alloc::vec![Some(Target)], Extra::None, alloc::vec![(Tame, a.clone())])
        }
        RuleId::Equiv5 => {
            let z = zieg()?;
            t(
                alloc::vec![],
                alloc::vec![Some(Target)],
                Extra::PdOmega1(z.clone(), 1),
                alloc::vec![(Tame, a.clone()), (Tame, z)],
            )
        }
        RuleId::GenericMulti => {
            t(alloc::vec![], alloc::vec![], Extra::GenericIrreducible, alloc::vec![(Tame, a.clone())])
        }
        RuleId::GenericAdd => {
            t(alloc::vec![(Tame, minus())], alloc::vec![], Extra::GenericHyperplane, alloc::vec![(Tame, a.clone())])
        }
        RuleId::MsLocallyFree => {
            t(alloc::vec![], alloc::vec![None], Extra::PdOmega1(a.clone(), 1), alloc::vec![(Tame, a.clone())])
        }
        RuleId::LowRank => t(alloc::vec![], alloc::vec![], Extra::None, alloc::vec![(Tame, a.clone())]),
        RuleId::Rank2Free => {
            t(alloc::vec![], alloc::vec![], Extra::Rank2, alloc::vec![(Free, a.clone()), (Tame, a.clone())])
        }
        RuleId::VerifiedFree => {
            t(alloc::vec![], alloc::vec![], Extra::VerifiedFree, alloc::vec![(Free, a.clone()), (Tame, a.clone())])
        }
        RuleId::Empty => {
            t(alloc::vec![], alloc::vec![], Extra::Empty, alloc::vec![(Free, a.clone()), (Tame, a.clone())])
        }
    })
}

/// `pd_S Ω^p` of a pair in its ambient space.
///
/// Computed on the essentialization `E` through `D^{r-p}`; a trivial factor of
/// dimension `t` gives `Ω^p = ⊕_i Ω^i(E) ⊗ ∧^{p-i}`, so the value is the
/// maximum over `p - t ≤ i ≤ p`.
pub fn pd_omega<K: Field>(ma: &MultiArrangement, p: usize, k: &K, budget: &Budget) -> Result<usize> {
    let (e, t) = ma.essentialize();
    let r = e.dim();
    let mut pd = 0;
    for i in p.saturating_sub(t)..=p.min(r) {
        if i > 0 && i < r {
            pd = pd.max(betti(&e, r - i, Variant::Derivation, k, budget)?.pd().unwrap_or(0));
        }
    }
    Ok(pd)
}

/// Every set of at most `r - 1` hyperplanes is independent, `r` the rank.
pub fn is_generic_in_rank(ma: &MultiArrangement) -> bool {
    ma.essentialize().0.arr.is_generic()
}

/// `H` is generic with respect to `A∖H`: with `r` the rank of `A`, any `r - 2`
/// hyperplanes of `A∖H` together with `H` span a space of rank `r - 1`.
pub fn is_generic_hyperplane(ma: &MultiArrangement, h: usize) -> bool {
    let r = ma.arr.rank();
    if r < 2 {
        return false;
    }
    let rest: Vec<usize> = (0..ma.len()).filter(|&i| i != h).collect();
    let mut ok = true;
    for_each_subset(rest.len(), r - 2, &mut |s| {
        if ok {
            let mut idx: Vec<usize> = s.iter().map(|&i| rest[i]).collect();
            idx.push(h);
            ok = ma.arr.rank_of(&idx) == r - 1;
        }
    });
    ok
}

fn evidence<K: Field>(
    rule: RuleId,
    t: &Template,
    a: &MultiArrangement,
    h: Option<usize>,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<Evidence> {
    let mut ev = Evidence {
        rank: a.arr.rank(),
        hyperplane: h,
        flats_checked: Vec::new(),
        exponents: None,
        pd_omega1: None,
        generic: None,
        mode: mode(k),
    };
    match &t.extra {
        Extra::None => {}
        Extra::Empty => {
            if !a.is_empty() {
                return refuse("arrangement is not empty".into());
            }
            ev.exponents = Some(Vec::new());
        }
        Extra::Rank2 => {
            ev.exponents = Some(rank2_exponents(&a.essentialize().0, k)?);
        }
        Extra::VerifiedFree => match cache.exponents(a, k, budget)? {
            Some(e) => ev.exponents = Some(e),
            None => return refuse("arrangement is not free".into()),
        },
        Extra::GenericIrreducible => {
            let g = is_generic_in_rank(a);
            ev.generic = Some(g);
            if !g {
                return refuse("arrangement is not generic".into());
            }
            if !a.arr.is_irreducible() {
                return refuse("arrangement is reducible".into());
            }
        }
        Extra::GenericHyperplane => {
            let g = is_generic_hyperplane(a, h.expect("hyperplane"));
            ev.generic = Some(g);
            if !g {
                return refuse("hyperplane is not generic".into());
            }
        }
        Extra::PdOmega1(..) => {}
    }
    for s in &t.local {
        let lf = match (s, h) {
            (None, _) => locally_free(a, cache, k, budget)?,
            (Some(Subject::Target), Some(h)) => locally_free_along(a, h, cache, k, budget)?,
            (Some(Subject::Deleted), Some(h)) => locally_free_along_deleted(a, h, cache, k, budget)?,
            (Some(_), None) => return Err(Error::Internal("local check without hyperplane".into())),
        };
        let free = lf.free;
        ev.flats_checked.push(LocalCheck {
            subject: s.unwrap_or(Subject::Target),
            along: s.and(h),
            free,
            flats: lf.flats,
        });
        if !free {
            return refuse(format!("{rule}: local freeness fails"));
        }
    }
    // the expensive check last
    if let Extra::PdOmega1(m, bound) = &t.extra {
        let pd = pd_omega(m, 1, k, budget)?;
        ev.pd_omega1 = Some(pd);
        if pd > *bound {
            return refuse(format!("pd of the first log forms is {pd}"));
        }
    }
    Ok(ev)
}

fn discharged(t: &Template, premises: &[Certificate]) -> Result<()> {
    for (p, m) in &t.premises {
        if !premises.iter().any(|c| c.concludes(*p, m)) {
            return refuse(format!("no premise concludes {p:?} for a required pair"));
        }
    }
    Ok(())
}

fn build(
    rule: RuleId,
    a: &MultiArrangement,
    t: Template,
    premises: Vec<Certificate>,
    evidence: Evidence,
) -> Certificate {
    Certificate {
        conclusion: t.conclusions.iter().map(|(p, m)| Claim { property: *p, arrangement: m.to_file() }).collect(),
        rule,
        target: a.to_file(),
        premises,
        evidence,
    }
}

/// Result of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    /// Premise indices leading from the root to the first failing node.
    pub path: Vec<usize>,
    pub reason: Option<String>,
}

/// Re-checks every node: rank range, hypotheses, premises, recorded evidence
/// and conclusions. Budget exhaustion is returned as an error.
pub fn verify_certificate<K: Field>(c: &Certificate, k: &K, budget: &Budget) -> Result<Verification> {
    let mut cache = FreenessCache::new();
    let mut path = Vec::new();
    match verify_node(c, &mut path, &mut cache, k, budget) {
        Ok(()) => Ok(Verification { ok: true, path: Vec::new(), reason: None }),
        Err(Error::BudgetExceeded) => Err(Error::BudgetExceeded),
        Err(e) => Ok(Verification { ok: false, path, reason: Some(format!("{e}")) }),
    }
}

fn verify_node<K: Field>(
    c: &Certificate,
    path: &mut Vec<usize>,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<()> {
    let a = MultiArrangement::from_file(&c.target)?;
    let t = template(c.rule, &a, c.evidence.hyperplane, k)?;
    discharged(&t, &c.premises)?;
    let ev = evidence(c.rule, &t, &a, c.evidence.hyperplane, cache, k, budget)?;
    let same = ev.rank == c.evidence.rank
        && ev.flats_checked == c.evidence.flats_checked
        && ev.exponents == c.evidence.exponents
        && ev.pd_omega1 == c.evidence.pd_omega1
        && ev.generic == c.evidence.generic;
    if !same {
        return refuse("recorded evidence differs from recomputation".into());
    }
    if c.conclusion.len() != t.conclusions.len() {
        return refuse("conclusions do not match the rule".into());
    }
    for (claim, (p, m)) in c.conclusion.iter().zip(&t.conclusions) {
        let got = MultiArrangement::from_file(&claim.arrangement)?;
        if claim.property != *p || got.canonical_key() != m.canonical_key() {
            return refuse("conclusions do not match the rule".into());
        }
    }
    for (i, p) in c.premises.iter().enumerate() {
        path.push(i);
        verify_node(p, path, cache, k, budget)?;
        path.pop();
    }
    Ok(())
}

/// Outcome of a certificate search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Search {
    Certified { certificate: Box<Certificate> },
    Undecided { reason: String },
}

enum Memo {
    Found(Certificate),
    /// No certificate of at most this depth exists.
    Failed(usize),
}

/// Rule application and certificate search sharing one freeness cache.
pub struct Certifier<'a, K: Field> {
    k: &'a K,
    budget: &'a Budget,
    pub cache: FreenessCache,
    memo: BTreeMap<Key, Memo>,
    free_memo: BTreeMap<Key, Option<Certificate>>,
    /// Deepest derivation tried by [`Certifier::certify_tame`].
    pub max_depth: usize,
}

const LEAVES: [RuleId; 4] = [RuleId::Empty, RuleId::LowRank, RuleId::GenericMulti, RuleId::VerifiedFree];
const STEPS: [RuleId; 4] = [RuleId::AddII, RuleId::Yoshinaga5, RuleId::GenericAdd, RuleId::AddI];

impl<'a, K: Field> Certifier<'a, K> {
    pub fn new(k: &'a K, budget: &'a Budget) -> Self {
        Certifier {
            k,
            budget,
            cache: FreenessCache::new(),
            memo: BTreeMap::new(),
            free_memo: BTreeMap::new(),
            max_depth: 6,
        }
    }

    /// Applies one rule, checking every hypothesis. Refusals are
    /// [`Error::Hypothesis`].
    pub fn apply_rule(
        &mut self,
        rule: RuleId,
        target: &MultiArrangement,
        h: Option<usize>,
        premises: Vec<Certificate>,
    ) -> Result<Certificate> {
        let t = template(rule, target, h, self.k)?;
        discharged(&t, &premises)?;
        let ev = evidence(rule, &t, target, h, &mut self.cache, self.k, self.budget)?;
        Ok(build(rule, target, t, premises, ev))
    }

    fn attempt(
        &mut self,
        rule: RuleId,
        a: &MultiArrangement,
        h: Option<usize>,
        depth: usize,
    ) -> Result<Option<Certificate>> {
        let t = match template(rule, a, h, self.k) {
            Ok(t) => t,
            Err(Error::Hypothesis(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        // hypotheses first: they are cheaper than the premises
        let ev = match evidence(rule, &t, a, h, &mut self.cache, self.k, self.budget) {
            Ok(ev) => ev,
            Err(Error::Hypothesis(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut premises = Vec::with_capacity(t.premises.len());
        for (p, m) in &t.premises {
            let c = match p {
                Property::Tame => self.search(m, depth.saturating_sub(1))?,
                Property::Free => self.certify_free(m)?,
            };
            match c {
                Some(c) => premises.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(build(rule, a, t, premises, ev)))
    }

    /// Certificate of freeness from the axioms, if the pair is free.
    pub fn certify_free(&mut self, ma: &MultiArrangement) -> Result<Option<Certificate>> {
        let key = ma.canonical_key();
        if let Some(c) = self.free_memo.get(&key) {
            return Ok(c.clone());
        }
        let mut found = None;
        for rule in [RuleId::Empty, RuleId::Rank2Free, RuleId::VerifiedFree] {
            if let Some(c) = self.attempt(rule, ma, None, 0)? {
                found = Some(c);
                break;
            }
        }
        self.free_memo.insert(key, found.clone());
        Ok(found)
    }

    /// Hyperplanes in search order: small restrictions first, then those
    /// whose deletion is generic.
    fn hyperplane_order(&self, a: &MultiArrangement) -> Vec<usize> {
        let mut hs: Vec<(usize, bool, usize)> = (0..a.len())
            .map(|h| {
                let n = a.arr.restrict(h).map(|r| r.arrangement.len()).unwrap_or(usize::MAX);
                let g = is_generic_in_rank(&a.minus_delta(h).0);
                (n, !g, h)
            })
            .collect();
        hs.sort_unstable();
        hs.into_iter().map(|x| x.2).collect()
    }

    fn search(&mut self, a: &MultiArrangement, depth: usize) -> Result<Option<Certificate>> {
        let key = a.canonical_key();
        match self.memo.get(&key) {
            Some(Memo::Found(c)) => return Ok(Some(c.clone())),
            Some(Memo::Failed(d)) if *d >= depth => return Ok(None),
            _ => {}
        }
        self.budget.check()?;
        let mut found = None;
        for rule in LEAVES {
            if let Some(c) = self.attempt(rule, a, None, 0)? {
                found = Some(c);
                break;
            }
        }
        if found.is_none() && depth > 0 {
            let order = self.hyperplane_order(a);
            'rules: for rule in STEPS {
                for &h in &order {
                    if let Some(c) = self.attempt(rule, a, Some(h), depth)? {
                        found = Some(c);
                        break 'rules;
                    }
                }
            }
        }
        match &found {
            Some(c) => self.memo.insert(key, Memo::Found(c.clone())),
            None => self.memo.insert(key, Memo::Failed(depth)),
        };
        Ok(found)
    }

    /// Iterative deepening over the rule catalogue, with the global local
    /// freeness rule as a last resort.
    pub fn certify_tame(&mut self, a: &MultiArrangement) -> Result<Search> {
        let run = |s: &mut Self| -> Result<Option<Certificate>> {
            for d in 0..=s.max_depth {
                if let Some(c) = s.search(a, d)? {
                    return Ok(Some(c));
                }
            }
            s.attempt(RuleId::MsLocallyFree, a, None, 0)
        };
        match run(self) {
            Ok(Some(c)) => Ok(Search::Certified { certificate: Box::new(c) }),
            Ok(None) => Ok(Search::Undecided { reason: "no rule applies".into() }),
            Err(Error::BudgetExceeded) => Ok(Search::Undecided { reason: "budget exhausted".into() }),
            Err(e) => Err(e),
        }
    }
}

/// Local condition used by the inductive tameness recursion.
pub trait LocalPredicate {
    /// The condition for `A` along `H`, or for `A∖H` along `H` when `deleted`.
    fn holds(&mut self, a: &MultiArrangement, h: usize, deleted: bool) -> Result<bool>;
}

/// Plain local freeness.
pub struct PlainLocalFreeness<'a, K: Field> {
    pub k: &'a K,
    pub budget: &'a Budget,
    pub cache: FreenessCache,
}

impl<'a, K: Field> PlainLocalFreeness<'a, K> {
    pub fn new(k: &'a K, budget: &'a Budget) -> Self {
        PlainLocalFreeness { k, budget, cache: FreenessCache::new() }
    }
}

impl<K: Field> LocalPredicate for PlainLocalFreeness<'_, K> {
    fn holds(&mut self, a: &MultiArrangement, h: usize, deleted: bool) -> Result<bool> {
        let lf = if deleted {
            locally_free_along_deleted(a, h, &mut self.cache, self.k, self.budget)?
        } else {
            locally_free_along(a, h, &mut self.cache, self.k, self.budget)?
        };
        Ok(lf.free)
    }
}

/// Placeholder for stair freeness, which is not implemented.
pub struct StairFreeness;

impl LocalPredicate for StairFreeness {
    fn holds(&mut self, _: &MultiArrangement, _: usize, _: bool) -> Result<bool> {
        Err(Error::Hypothesis("stair freeness is not implemented".into()))
    }
}

/// Why an arrangement belongs to the inductively tame class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ItWitness {
    Empty,
    LowRank,
    /// `A` and `A∖H` both satisfy the predicate along `H`.
    Deletion {
        hyperplane: usize,
        deletion: Box<ItWitness>,
    },
    /// `A∖L` satisfies the predicate along `L` and `A^L` is a member.
    Restriction {
        hyperplane: usize,
        deletion: Box<ItWitness>,
        restriction: Box<ItWitness>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItVerdict {
    pub member: bool,
    pub witness: Option<ItWitness>,
    /// Distinct arrangements visited.
    pub visited: usize,
}

/// Membership in the inductively tame class of a simple arrangement.
pub fn inductively_tame(a: &MultiArrangement, pred: &mut dyn LocalPredicate, budget: &Budget) -> Result<ItVerdict> {
    if !a.is_simple() {
        return Err(Error::InvalidMultiplicity("inductive tameness is defined for simple arrangements".into()));
    }
    let mut memo = BTreeMap::new();
    let w = it_rec(a, pred, budget, &mut memo)?;
    Ok(ItVerdict { member: w.is_some(), witness: w, visited: memo.len() })
}

fn it_rec(
    a: &MultiArrangement,
    pred: &mut dyn LocalPredicate,
    budget: &Budget,
    memo: &mut BTreeMap<Key, Option<ItWitness>>,
) -> Result<Option<ItWitness>> {
    if a.is_empty() {
        return Ok(Some(ItWitness::Empty));
    }
    if a.arr.rank() <= 3 {
        return Ok(Some(ItWitness::LowRank));
    }
    let key = a.canonical_key();
    if let Some(w) = memo.get(&key) {
        return Ok(w.clone());
    }
    budget.check()?;
    let mut found = None;
    for h in 0..a.len() {
        if !pred.holds(a, h, true)? {
            continue;
        }
        let del = MultiArrangement::simple(a.arr.delete(h));
        let Some(dw) = it_rec(&del, pred, budget, memo)? else { continue };
        if pred.holds(a, h, false)? {
            found = Some(ItWitness::Deletion { hyperplane: h, deletion: Box::new(dw) });
            break;
        }
        let res = MultiArrangement::simple(a.arr.restrict(h)?.arrangement);
        if let Some(rw) = it_rec(&res, pred, budget, memo)? {
            found = Some(ItWitness::Restriction { hyperplane: h, deletion: Box::new(dw), restriction: Box::new(rw) });
            break;
        }
    }
    memo.insert(key, found.clone());
    Ok(found)
}

/// Comparison of `b_i^0` (from `χ(A; t) / (t - 1)`) with `σ_i` (from the
/// Ziegler restriction), both read off the coefficient of `t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiInequality {
    /// `None` when the hypotheses were checked and hold.
    pub skipped: Option<String>,
    pub b0: Vec<i64>,
    pub sigma: Vec<i64>,
    /// `b_i^0 ≥ σ_i ≥ 0` for all `i`.
    pub holds: bool,
    pub equal: bool,
}

pub fn betti_inequality_check<K: Field>(
    a: &MultiArrangement,
    h: usize,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<BettiInequality> {
    if !a.is_simple() {
        return Err(Error::InvalidMultiplicity("the Betti inequality is stated for simple arrangements".into()));
    }
    let (e, _) = a.essentialize();
    let mut skipped = None;
    if !locally_free_along(&e, h, cache, k, budget)?.free {
        skipped = Some("not locally free along H".into());
    } else if !pd_profile(&e, false, k, budget)?.tame {
        skipped = Some("not tame".into());
    }
    let chi = characteristic_polynomial(&e.arr)?;
    let chi0 = chi.reduced().ok_or_else(|| Error::Internal("χ(1) ≠ 0".into()))?;
    let sigma_poly = multi_char_poly(&ziegler_multiplicity(&e.arr, h)?, k, budget)?;
    let d = e.dim() - 1;
    let unsign = |c: i64, i: usize| if (d - i).is_multiple_of(2) { c } else { -c };
    let b0: Vec<i64> = (0..=d).map(|i| unsign(chi0.coeff(i), i)).collect();
    let sigma: Vec<i64> = (0..=d).map(|i| unsign(sigma_poly.coeff(i), i)).collect();
    let holds = b0.iter().zip(&sigma).all(|(b, s)| b >= s && *s >= 0);
    let equal = b0 == sigma;
    Ok(BettiInequality { skipped, b0, sigma, holds, equal })
}

/// The four conditions of the rank-5 equivalence for `A` and `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equiv5Report {
    pub locally_free: bool,
    pub tame: bool,
    pub pd_omega1: usize,
    pub ziegler_tame: bool,
    pub ziegler_pd_omega1: usize,
    /// All four conditions have the same truth value.
    pub agree: bool,
}

pub fn equiv5_check<K: Field>(
    a: &MultiArrangement,
    h: usize,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<Equiv5Report> {
    if !a.is_simple() || a.arr.rank() < 5 {
        return Err(Error::Hypothesis("needs a simple arrangement of rank at least 5".into()));
    }
    let (e, _) = a.essentialize();
    let locally_free = locally_free_along(&e, h, cache, k, budget)?.free;
    let z = ziegler_multiplicity(&e.arr, h)?;
    let tame = pd_profile(&e, false, k, budget)?.tame;
    let pd_omega1 = pd_omega(&e, 1, k, budget)?;
    let ziegler_tame = pd_profile(&z.essentialize().0, false, k, budget)?.tame;
    let ziegler_pd_omega1 = pd_omega(&z, 1, k, budget)?;
    let v = [tame, pd_omega1 <= 1, ziegler_tame, ziegler_pd_omega1 <= 1];
    let agree = v.iter().all(|&x| x == v[0]);
    Ok(Equiv5Report { locally_free, tame, pd_omega1, ziegler_tame, ziegler_pd_omega1, agree })
}

/// Transfer of a projective dimension bound to the Ziegler restriction:
/// `None` when the hypotheses (`0 < pd Ω^p(A) < ℓ - 2`, local freeness
/// along `H`) fail, otherwise `(pd Ω^p(A), pd Ω^{p-1}, pd Ω^p of (A^H, m^H))`.
pub fn ziegler_transfer<K: Field>(
    a: &MultiArrangement,
    h: usize,
    p: usize,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<Option<(usize, usize, usize)>> {
    let (e, _) = a.essentialize();
    let l = e.dim();
    if !e.is_simple() || p == 0 || p >= l {
        return Ok(None);
    }
    let bound = pd_omega(&e, p, k, budget)?;
    if bound == 0 || bound + 2 >= l || !locally_free_along(&e, h, cache, k, budget)?.free {
        return Ok(None);
    }
    let z = ziegler_multiplicity(&e.arr, h)?;
    Ok(Some((bound, pd_omega(&z, p - 1, k, budget)?, pd_omega(&z, p, k, budget)?)))
}

/// Whether the hypotheses that force the right map of a sequence to be onto
/// hold: `pd Ω^p < ℓ - 2` and local freeness along `H` for the Euler sequence
/// (of `(A, m)`) and the C-sequence (of `(A, m - δ_H)`), freeness of `A` for
/// the Ziegler sequence.
pub fn right_exactness_expected<K: Field>(
    kind: SequenceKind,
    ma: &MultiArrangement,
    h: usize,
    p: usize,
    cache: &mut FreenessCache,
    k: &K,
    budget: &Budget,
) -> Result<bool> {
    let l = ma.dim();
    Ok(match kind {
        // local freeness first: its localizations are smaller than the pair
        SequenceKind::Euler => {
            l > 2 && locally_free_along(ma, h, cache, k, budget)?.free && pd_omega(ma, p, k, budget)? + 2 < l
        }
        SequenceKind::C => {
            l > 2
                && locally_free_along_deleted(ma, h, cache, k, budget)?.free
                && pd_omega(&ma.minus_delta(h).0, p, k, budget)? + 2 < l
        }
        SequenceKind::Ziegler => cache.exponents(ma, k, budget)?.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::field::{PrimeField, Rationals};

    fn simple(dim: usize, forms: &[&[i64]]) -> MultiArrangement {
        MultiArrangement::simple(Arrangement::from_ints(dim, forms).unwrap())
    }

    fn ex163() -> MultiArrangement {
        simple(
            5,
            &[
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
                &[0, 0, 1, 0, 0],
                &[0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 1],
                &[1, 1, 1, 1, 1],
                &[1, 1, 1, 0, 0],
            ],
        )
    }

    #[test]
    fn rule_names_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(RuleId::parse(r.name()), Some(r));
            let s = serde_json::to_string(&r).unwrap();
            assert_eq!(s, format!("\"{}\"", r.name()));
        }
    }

    #[test]
    fn low_rank_is_immediate() {
        let k = Rationals;
        let b = Budget::unlimited();
        let mut c = Certifier::new(&k, &b);
        let a = simple(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let Search::Certified { certificate } = c.certify_tame(&a).unwrap() else { panic!() };
        assert_eq!(certificate.rule, RuleId::LowRank);
        assert!(verify_certificate(&certificate, &k, &b).unwrap().ok);
    }

    #[test]
    fn ex163_add_ii() {
        let k = PrimeField::new(32003).unwrap();
        let b = Budget::unlimited();
        let a = ex163();
        let mut c = Certifier::new(&k, &b);
        let Search::Certified { certificate } = c.certify_tame(&a).unwrap() else { panic!() };
        assert_eq!(certificate.rule, RuleId::AddII);
        assert_eq!(certificate.evidence.hyperplane, Some(6));
        let rules: Vec<RuleId> = certificate.premises.iter().map(|p| p.rule).collect();
        assert_eq!(rules, [RuleId::VerifiedFree, RuleId::GenericMulti]);
        assert!(verify_certificate(&certificate, &k, &b).unwrap().ok);
    }

    #[test]
    fn yoshinaga_5_refused_in_rank_4() {
        let k = Rationals;
        let b = Budget::unlimited();
        let a = simple(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1]]);
        let mut c = Certifier::new(&k, &b);
        let z = ziegler_multiplicity(&a.arr, 0).unwrap();
        let prem = c.apply_rule(RuleId::LowRank, &z, None, Vec::new()).unwrap();
        let e = c.apply_rule(RuleId::Yoshinaga5, &a, Some(0), alloc::vec![prem.clone()]);
        assert!(matches!(e, Err(Error::Hypothesis(_))));
        // a forged node fails verification
        let forged = Certificate {
            conclusion: alloc::vec![Claim { property: Property::Tame, arrangement: a.to_file() }],
            rule: RuleId::Yoshinaga5,
            target: a.to_file(),
            premises: alloc::vec![prem],
            evidence: Evidence {
                rank: 4,
                hyperplane: Some(0),
                flats_checked: Vec::new(),
                exponents: None,
                pd_omega1: None,
                generic: None,
                mode: "exact".into(),
            },
        };
        let v = verify_certificate(&forged, &k, &b).unwrap();
        assert!(!v.ok);
        assert!(v.path.is_empty());
    }

    #[test]
    fn forged_freeness_premise_is_rejected() {
        let k = Rationals;
        let b = Budget::unlimited();
        // generic, not free, rank 4
        let g = simple(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1]]);
        let forged = Certificate {
            conclusion: alloc::vec![
                Claim { property: Property::Free, arrangement: g.to_file() },
                Claim { property: Property::Tame, arrangement: g.to_file() }
            ],
            rule: RuleId::VerifiedFree,
            target: g.to_file(),
            premises: Vec::new(),
            evidence: Evidence {
                rank: 4,
                hyperplane: None,
                flats_checked: Vec::new(),
                exponents: Some(alloc::vec![1, 1, 1, 2]),
                pd_omega1: None,
                generic: None,
                mode: "exact".into(),
            },
        };
        let v = verify_certificate(&forged, &k, &b).unwrap();
        assert!(!v.ok);
    }

    #[test]
    fn inductive_tameness_of_ex163() {
        let k = PrimeField::new(32003).unwrap();
        let b = Budget::unlimited();
        let mut pred = PlainLocalFreeness::new(&k, &b);
        let v = inductively_tame(&ex163(), &mut pred, &b).unwrap();
        assert!(v.member);
        assert!(inductively_tame(&ex163(), &mut StairFreeness, &b).is_err());
    }

    #[test]
    fn boolean_betti_equality() {
        let k = Rationals;
        let b = Budget::unlimited();
        let a = simple(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let mut cache = FreenessCache::new();
        let r = betti_inequality_check(&a, 0, &mut cache, &k, &b).unwrap();
        assert!(r.skipped.is_none());
        assert!(r.holds && r.equal, "{r:?}");
    }
}
