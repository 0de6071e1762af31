//! Invariant suite over a directory of arrangement files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tamearr_core::certify::{
    betti_inequality_check, equiv5_check, inductively_tame, pd_omega, right_exactness_expected, verify_certificate,
    ziegler_transfer, Certifier, PlainLocalFreeness, Search,
};
use tamearr_core::lattice::{characteristic_polynomial, intersection_lattice, CharPoly};
use tamearr_core::local::FreenessCache;
use tamearr_core::logmod::{betti, is_free, pd_profile, Variant};
use tamearr_core::multi::{multi_char_poly, MultiArrangement};
use tamearr_core::sequences::{c_sequence, euler_sequence, ziegler_sequence};
use tamearr_core::{Budget, Error, Field, Result};

use crate::commands::load_arrangement;
use crate::options::FieldChoice;
use crate::with_field;

/// Properties checked on every instance, in report order.
pub const PROPERTIES: [&str; 10] = [
    "soundness",
    "identification",
    "monotonicity",
    "sequences",
    "chi_mobius",
    "chi_free",
    "equiv5",
    "betti_inequality",
    "ziegler_transfer",
    "it_sound",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub property: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub file: String,
    pub input_error: Option<String>,
    pub rows: Vec<Row>,
}

impl InstanceReport {
    pub fn failed(&self) -> bool {
        self.input_error.is_some() || self.rows.iter().any(|r| r.outcome == Outcome::Fail)
    }

    pub fn row(&self, property: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.property == property)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub field: String,
    pub instances: Vec<InstanceReport>,
}

impl CorpusReport {
    pub fn failed(&self) -> bool {
        self.instances.iter().any(InstanceReport::failed)
    }

    /// One line per instance with a column per property.
    pub fn table(&self) -> String {
        let width = self.instances.iter().map(|i| i.file.len()).max().unwrap_or(4).max(4);
        let mut s = format!("{:width$}", "file");
        for p in PROPERTIES {
            s.push_str(&format!("  {p}"));
        }
        s.push('\n');
        for inst in &self.instances {
            s.push_str(&format!("{:width$}", inst.file));
            if let Some(e) = &inst.input_error {
                s.push_str(&format!("  input error: {e}\n"));
                continue;
            }
            for p in PROPERTIES {
                let mark = match inst.row(p).map(|r| r.outcome) {
                    Some(Outcome::Pass) => "pass",
                    Some(Outcome::Fail) => "FAIL",
                    Some(Outcome::Skip) | None => "-",
                    Some(Outcome::Undecided) => "?",
                };
                s.push_str(&format!("  {mark:>w$}", w = p.len()));
            }
            s.push('\n');
        }
        s
    }
}

/// Limits of the suite.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Wall clock budget for each property of each instance.
    pub budget_ms: Option<u64>,
    /// Sequences are checked up to numerator degree `|m| + dmax_extra`.
    pub dmax_extra: u32,
    /// Sequences are skipped above this ambient dimension.
    pub sequences_max_dim: usize,
    /// Sequences are skipped above this total multiplicity.
    pub sequences_max_size: u32,
    /// Restricts the suite to these properties.
    pub only: Option<Vec<String>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { budget_ms: None, dmax_extra: 2, sequences_max_dim: 4, sequences_max_size: 10, only: None }
    }
}

fn budget(ms: Option<u64>) -> Budget {
    match ms {
        None => Budget::unlimited(),
        Some(ms) => {
            let deadline = std::time::Instant::now() + std::time::Duration::from_millis(ms);
            Budget::unlimited().interrupt(move || std::time::Instant::now() >= deadline)
        }
    }
}

type Check = Result<(Outcome, String)>;

fn pass(detail: impl Into<String>) -> Check {
    Ok((Outcome::Pass, detail.into()))
}

fn skip(detail: impl Into<String>) -> Check {
    Ok((Outcome::Skip, detail.into()))
}

fn verdict(ok: bool, detail: impl Into<String>) -> Check {
    Ok((if ok { Outcome::Pass } else { Outcome::Fail }, detail.into()))
}

fn soundness<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    let mut c = Certifier::new(k, b);
    let cert = match c.certify_tame(ma)? {
        Search::Certified { certificate } => certificate,
        Search::Undecided { reason } => {
            let tame = pd_profile(&ma.essentialize().0, false, k, b)?.tame;
            return skip(format!("no certificate ({reason}); direct computation says tame = {tame}"));
        }
    };
    let v = verify_certificate(&cert, k, b)?;
    if !v.ok {
        return verdict(false, format!("certificate rejected: {:?}", v.reason));
    }
    let mut seen = BTreeMap::new();
    for node in cert.nodes() {
        for claim in &node.conclusion {
            let m = MultiArrangement::from_file(&claim.arrangement)?;
            let key = m.canonical_key();
            if seen.contains_key(&key) {
                continue;
            }
            let tame = pd_profile(&m.essentialize().0, false, k, b)?.tame;
            seen.insert(key, tame);
            if !tame {
                return verdict(false, format!("{} concludes tameness of a non-tame arrangement", node.rule));
            }
        }
    }
    pass(format!("{} certificate, {} nodes", cert.rule, cert.size()))
}

fn identification<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    let (e, _) = ma.essentialize();
    let l = e.dim();
    for p in 0..=l {
        let form = betti(&e, p, Variant::Form, k, b)?.pd().unwrap_or(0);
        let der = betti(&e, l - p, Variant::Derivation, k, b)?.pd().unwrap_or(0);
        if form != der {
            return verdict(false, format!("p = {p}: pd Ω^p = {form}, pd D^(ℓ-p) = {der}"));
        }
    }
    pass(format!("p = 0..={l}"))
}

fn monotonicity<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    let (e, _) = ma.essentialize();
    let l = e.dim();
    let lat = intersection_lattice(&e.arr)?;
    let whole: Vec<usize> = (0..=l).map(|p| pd_omega(&e, p, k, b)).collect::<Result<_>>()?;
    let mut memo: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    let mut checked = 0;
    for f in lat.flats.iter().filter(|f| f.codim > 1 && f.codim < l) {
        let local = e.localize(f);
        let key = local.canonical_key();
        if !memo.contains_key(&key) {
            let v = (0..=l).map(|p| pd_omega(&local, p, k, b)).collect::<Result<_>>()?;
            memo.insert(key.clone(), v);
        }
        let v = &memo[&key];
        checked += 1;
        if let Some(p) = (0..=l).find(|&p| v[p] > whole[p]) {
            return verdict(false, format!("flat {:?}, p = {p}: {} > {}", f.hyperplanes, v[p], whole[p]));
        }
    }
    pass(format!("{checked} flats"))
}

fn sequences<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget, o: &SuiteOptions) -> Check {
    if ma.dim() > o.sequences_max_dim {
        return skip(format!("dimension above {}", o.sequences_max_dim));
    }
    if ma.size() > o.sequences_max_size {
        return skip(format!("|m| above {}", o.sequences_max_size));
    }
    let d_max = ma.size() + o.dmax_extra;
    let mut cache = FreenessCache::new();
    let (mut n, mut onto) = (0, 0);
    for h in 0..ma.len() {
        for p in 0..=ma.dim() {
            let mut reps = vec![euler_sequence(ma, h, p, d_max, k, b)?, c_sequence(ma, h, p, d_max, k, b)?];
            if ma.is_simple() {
                reps.push(ziegler_sequence(ma, h, p, d_max, k, b)?);
            }
            for r in reps {
                n += 1;
                if !(r.well_defined && r.exact) {
                    return verdict(false, format!("{:?} H={h} p={p} is not exact", r.kind));
                }
                if right_exactness_expected(r.kind, ma, h, p, &mut cache, k, b)? {
                    onto += 1;
                    if !r.surjective {
                        return verdict(false, format!("{:?} H={h} p={p} is not onto", r.kind));
                    }
                }
            }
        }
    }
    pass(format!("{n} sequences exact, {onto} onto as predicted"))
}

fn chi_mobius<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    if !ma.is_simple() {
        return skip("not simple");
    }
    let m = characteristic_polynomial(&ma.arr)?;
    let c = multi_char_poly(ma, k, b)?;
    verdict(m == c, format!("χ = {}", m.display()))
}

fn chi_free<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    let Some(exps) = is_free(ma, k, b)?.exponents else { return skip("not free") };
    let roots: Vec<i64> = exps.iter().map(|&d| d as i64).collect();
    let c = multi_char_poly(ma, k, b)?;
    verdict(c == CharPoly::from_roots(&roots), format!("exponents {exps:?}"))
}

fn equiv5<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    if !ma.is_simple() || ma.arr.rank() < 5 {
        return skip("needs a simple arrangement of rank at least 5");
    }
    let mut cache = FreenessCache::new();
    let mut used = 0;
    for h in 0..ma.len() {
        let r = equiv5_check(ma, h, &mut cache, k, b)?;
        if !r.locally_free {
            continue;
        }
        used += 1;
        if !r.agree {
            return verdict(false, format!("H={h}: {r:?}"));
        }
    }
    if used == 0 {
        return skip("not locally free along any hyperplane");
    }
    pass(format!("{used} hyperplanes"))
}

fn betti_inequality<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    if !ma.is_simple() {
        return skip("not simple");
    }
    let free = is_free(ma, k, b)?.free;
    let mut cache = FreenessCache::new();
    let mut used = 0;
    for h in 0..ma.len() {
        let r = betti_inequality_check(ma, h, &mut cache, k, b)?;
        if r.skipped.is_some() {
            continue;
        }
        used += 1;
        if !r.holds || (free && !r.equal) {
            return verdict(false, format!("H={h}: b0 = {:?}, σ = {:?}", r.b0, r.sigma));
        }
    }
    if used == 0 {
        return skip("hypotheses fail for every hyperplane");
    }
    pass(format!("{used} hyperplanes{}", if free { ", equality" } else { "" }))
}

fn transfer<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    if !ma.is_simple() || ma.arr.rank() < 4 {
        return skip("needs a simple arrangement of rank at least 4");
    }
    let mut cache = FreenessCache::new();
    let mut used = 0;
    for h in 0..ma.len() {
        for p in 1..ma.dim() {
            if let Some((bound, lo, hi)) = ziegler_transfer(ma, h, p, &mut cache, k, b)? {
                used += 1;
                if lo > bound || hi > bound {
                    return verdict(false, format!("H={h} p={p}: bound {bound}, restriction {lo}, {hi}"));
                }
            }
        }
    }
    if used == 0 {
        return skip("hypotheses fail everywhere");
    }
    pass(format!("{used} pairs"))
}

fn it_sound<K: Field>(ma: &MultiArrangement, k: &K, b: &Budget) -> Check {
    if !ma.is_simple() {
        return skip("not simple");
    }
    let mut pred = PlainLocalFreeness::new(k, b);
    if !inductively_tame(ma, &mut pred, b)?.member {
        return skip("not a member");
    }
    let tame = pd_profile(&ma.essentialize().0, false, k, b)?.tame;
    verdict(tame, format!("member, tame = {tame}"))
}

/// Runs every property on one arrangement.
pub fn check_instance<K: Field>(ma: &MultiArrangement, k: &K, o: &SuiteOptions) -> Vec<Row> {
    PROPERTIES
        .iter()
        .filter(|p| o.only.as_ref().is_none_or(|only| only.iter().any(|q| q == *p)))
        .map(|&name| {
            let b = budget(o.budget_ms);
            let r = match name {
                "soundness" => soundness(ma, k, &b),
                "identification" => identification(ma, k, &b),
                "monotonicity" => monotonicity(ma, k, &b),
                "sequences" => sequences(ma, k, &b, o),
                "chi_mobius" => chi_mobius(ma, k, &b),
                "chi_free" => chi_free(ma, k, &b),
                "equiv5" => equiv5(ma, k, &b),
                "betti_inequality" => betti_inequality(ma, k, &b),
                "ziegler_transfer" => transfer(ma, k, &b),
                "it_sound" => it_sound(ma, k, &b),
                _ => unreachable!(),
            };
            let (outcome, detail) = match r {
                Ok(x) => x,
                Err(Error::BudgetExceeded) => (Outcome::Undecided, "budget exhausted".into()),
                Err(e) => (Outcome::Fail, e.to_string()),
            };
            Row { property: name.into(), outcome, detail }
        })
        .collect()
}

/// Top-level `*.json` files of a directory, sorted by name.
pub fn instance_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    Ok(v)
}

pub fn run_corpus(dir: &Path, field: FieldChoice, o: &SuiteOptions) -> std::io::Result<CorpusReport> {
    let files = instance_files(dir)?;
    let instances = files
        .par_iter()
        .map(|path| {
            let file = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            match load_arrangement(path) {
                Err(e) => InstanceReport { file, input_error: Some(format!("{e:?}")), rows: Vec::new() },
                Ok(ma) => {
                    let rows = with_field!(field, k => check_instance(&ma, k, o));
                    InstanceReport { file, input_error: None, rows }
                }
            }
        })
        .collect();
    Ok(CorpusReport { field: field.label(), instances })
}
