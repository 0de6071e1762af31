//! Single-arrangement commands and report emission.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tamearr_core::arrangement::ArrangementFile;
use tamearr_core::certify::{
    betti_inequality_check, inductively_tame, right_exactness_expected, verify_certificate, Certificate, Certifier,
    PlainLocalFreeness, Search,
};
use tamearr_core::lattice::{characteristic_polynomial, intersection_lattice};
use tamearr_core::local::FreenessCache;
use tamearr_core::logmod::{is_free, pd_profile};
use tamearr_core::multi::{euler_multiplicity, multi_char_poly, ziegler_multiplicity, MultiArrangement};
use tamearr_core::sequences::{c_sequence, euler_sequence, ziegler_sequence, SequenceKind};
use tamearr_core::{Budget, Error, Field};

use crate::cache::Cache;
use crate::options::{Command, Options};
use crate::with_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Decided,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub field: String,
    pub status: Status,
    pub result: Value,
    pub summary: Vec<String>,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Undecided(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Undecided(_) => 2,
            Failure::Input(_) | Failure::Internal(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded => Failure::Undecided("budget exhausted".into()),
            Error::Internal(m) => Failure::Internal(m),
            Error::DivisionByZero | Error::NotInvertibleModP { .. } => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Reads an arrangement file, or the arrangement inside a report produced by
/// `restrict`, `ziegler` or `euler`.
pub fn load_arrangement(path: &Path) -> Result<MultiArrangement, Failure> {
    let raw = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&raw).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let v = match v.get("result").and_then(|r| r.get("arrangement")) {
        Some(inner) => inner.clone(),
        None => v,
    };
    let f: ArrangementFile =
        serde_json::from_value(v).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    MultiArrangement::from_file(&f).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Lattice { .. } => "lattice",
        Command::Chi { .. } => "chi",
        Command::Free { .. } => "free",
        Command::Tame { .. } => "tame",
        Command::Certify { .. } => "certify",
        Command::Verify { .. } => "verify",
        Command::Restrict { .. } => "restrict",
        Command::Ziegler { .. } => "ziegler",
        Command::Euler { .. } => "euler",
        Command::Sequences { .. } => "sequences",
        Command::BettiCheck { .. } => "betti-check",
        Command::ItClass { .. } => "it-class",
        Command::Corpus { .. } => "corpus",
    }
}

fn input_path(cmd: &Command) -> &Path {
    match cmd {
        Command::Lattice { file }
        | Command::Chi { file }
        | Command::Free { file }
        | Command::Tame { file }
        | Command::Certify { file }
        | Command::Restrict { file }
        | Command::Ziegler { file }
        | Command::Euler { file }
        | Command::Sequences { file, .. }
        | Command::BettiCheck { file }
        | Command::ItClass { file } => file,
        Command::Verify { certificate } => certificate,
        Command::Corpus { dir } => dir,
    }
}

fn cacheable(cmd: &Command) -> bool {
    matches!(
        cmd,
        Command::Chi { .. }
            | Command::Free { .. }
            | Command::Tame { .. }
            | Command::Certify { .. }
            | Command::Sequences { .. }
            | Command::BettiCheck { .. }
            | Command::ItClass { .. }
    )
}

fn exps(e: &[u32]) -> String {
    let v: Vec<String> = e.iter().map(u32::to_string).collect();
    format!("({})", v.join(", "))
}

type Computed = (Status, Value, Vec<String>);

fn need_h(h: Option<usize>) -> Result<usize, Failure> {
    h.ok_or_else(|| Failure::Input("this command needs --hyperplane".into()))
}

fn compute<K: Field>(
    cmd: &Command,
    ma: &MultiArrangement,
    h: Option<usize>,
    opts: &Options,
    k: &K,
    budget: &Budget,
) -> Result<Computed, Failure> {
    let decided = |v: Value, s: Vec<String>| Ok((Status::Decided, v, s));
    match cmd {
        Command::Lattice { .. } => {
            let lat = intersection_lattice(&ma.arr)?;
            let chi = lat.characteristic_polynomial();
            let flats: Vec<Value> = lat
                .flats
                .iter()
                .zip(&lat.mobius)
                .map(|(f, mu)| json!({"hyperplanes": f.hyperplanes, "codim": f.codim, "mobius": mu}))
                .collect();
            let sizes = lat.stratum_sizes();
            decided(
                json!({"strata": sizes, "flats": flats, "chi": chi.coeffs}),
                vec![format!("flats by codimension: {sizes:?}"), format!("χ(t) = {}", chi.display())],
            )
        }
        Command::Chi { .. } => {
            let (chi, method) = if ma.is_simple() {
                (characteristic_polynomial(&ma.arr)?, "mobius")
            } else {
                (multi_char_poly(ma, k, budget)?, "modules")
            };
            decided(
                json!({"chi": chi.coeffs, "display": chi.display(), "method": method}),
                vec![format!("χ(t) = {}", chi.display())],
            )
        }
        Command::Free { .. } => {
            let f = is_free(ma, k, budget)?;
            let line = match &f.exponents {
                Some(e) => format!("free with exponents {}", exps(e)),
                None => format!("not free; pd D^1 = {}", f.betti.pd().unwrap_or(0)),
            };
            decided(json!({"free": f.free, "exponents": f.exponents, "betti": f.betti.triples()}), vec![line])
        }
        Command::Certify { .. } => {
            let mut c = Certifier::new(k, budget);
            match c.certify_tame(ma)? {
                Search::Certified { certificate } => {
                    let line = format!("tame: {} certificate with {} nodes", certificate.rule, certificate.size());
                    decided(json!({"certified": true, "certificate": certificate}), vec![line])
                }
                Search::Undecided { reason } => Ok((
                    Status::Undecided,
                    json!({"certified": false, "reason": reason}),
                    vec![format!("undecided: {reason}")],
                )),
            }
        }
        Command::Tame { .. } => {
            let mut c = Certifier::new(k, budget);
            if let Search::Certified { certificate } = c.certify_tame(ma)? {
                let line = format!("tame (by {} certificate)", certificate.rule);
                return decided(json!({"tame": true, "method": "certificate", "certificate": certificate}), vec![line]);
            }
            let (e, _) = ma.essentialize();
            let prof = pd_profile(&e, false, k, budget)?;
            let pds: Vec<usize> = prof.entries.iter().map(|x| x.upper()).collect();
            let line =
                format!("{} (direct computation, pd Ω^p ≤ {pds:?})", if prof.tame { "tame" } else { "not tame" });
            decided(json!({"tame": prof.tame, "method": "direct", "pd": prof.entries}), vec![line])
        }
        Command::Verify { .. } => unreachable!("handled by the caller"),
        Command::Restrict { .. } => {
            let r = ma.arr.restrict(need_h(h)?)?;
            let out = MultiArrangement::simple(r.arrangement);
            let line = format!("{} hyperplanes in dimension {}", out.len(), out.dim());
            decided(json!({"arrangement": out.to_file(), "image": r.image}), vec![line])
        }
        Command::Ziegler { .. } => {
            let z = ziegler_multiplicity(&ma.arr, need_h(h)?)?;
            decided(json!({"arrangement": z.to_file()}), vec![format!("multiplicities {:?}", z.mult)])
        }
        Command::Euler { .. } => {
            let e = euler_multiplicity(ma, need_h(h)?, k)?;
            decided(json!({"arrangement": e.to_file()}), vec![format!("multiplicities {:?}", e.mult)])
        }
        Command::Sequences { p, .. } => {
            let d_max = opts.dmax.unwrap_or(ma.size() + 2);
            let hs: Vec<usize> = match h {
                Some(h) => vec![h],
                None => (0..ma.len()).collect(),
            };
            let ps: Vec<usize> = match p {
                Some(p) if *p > ma.dim() => return Err(Failure::Input(format!("p = {p} exceeds ℓ = {}", ma.dim()))),
                Some(p) => vec![*p],
                None => (0..=ma.dim()).collect(),
            };
            let mut cache = FreenessCache::new();
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            let mut ok = true;
            for &h in &hs {
                for &p in &ps {
                    let mut reps =
                        vec![euler_sequence(ma, h, p, d_max, k, budget)?, c_sequence(ma, h, p, d_max, k, budget)?];
                    if ma.is_simple() {
                        reps.push(ziegler_sequence(ma, h, p, d_max, k, budget)?);
                    }
                    for r in reps {
                        let expected = right_exactness_expected(r.kind, ma, h, p, &mut cache, k, budget)?;
                        let good = r.well_defined && r.exact && (!expected || r.surjective);
                        ok &= good;
                        lines.push(format!(
                            "{:?} H={h} p={p}: {}{}{}",
                            r.kind,
                            if r.well_defined && r.exact { "exact" } else { "NOT EXACT" },
                            if r.surjective { ", onto" } else { ", not onto" },
                            if expected && !r.surjective { " (expected onto)" } else { "" }
                        ));
                        rows.push(json!({"report": r, "right_exactness_expected": expected, "ok": good}));
                    }
                }
            }
            let kinds: Vec<SequenceKind> = if ma.is_simple() {
                vec![SequenceKind::Euler, SequenceKind::C, SequenceKind::Ziegler]
            } else {
                vec![SequenceKind::Euler, SequenceKind::C]
            };
            decided(json!({"d_max": d_max, "kinds": kinds, "ok": ok, "sequences": rows}), lines)
        }
        Command::BettiCheck { .. } => {
            if !ma.is_simple() {
                return Err(Failure::Input("betti-check needs a simple arrangement".into()));
            }
            let hs: Vec<usize> = match h {
                Some(h) => vec![h],
                None => (0..ma.len()).collect(),
            };
            let mut cache = FreenessCache::new();
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for h in hs {
                let r = betti_inequality_check(ma, h, &mut cache, k, budget)?;
                lines.push(match &r.skipped {
                    Some(why) => format!("H={h}: skipped ({why})"),
                    None => format!(
                        "H={h}: b0 = {:?}, σ = {:?}, {}",
                        r.b0,
                        r.sigma,
                        if r.holds { "holds" } else { "VIOLATED" }
                    ),
                });
                rows.push(json!({"hyperplane": h, "check": r}));
            }
            decided(Value::Array(rows), lines)
        }
        Command::ItClass { .. } => {
            if !ma.is_simple() {
                return Err(Failure::Input("it-class needs a simple arrangement".into()));
            }
            let mut pred = PlainLocalFreeness::new(k, budget);
            let v = inductively_tame(ma, &mut pred, budget)?;
            let line = format!("{} the inductively tame class", if v.member { "in" } else { "not in" });
            decided(serde_json::to_value(&v).expect("serializable"), vec![line])
        }
        Command::Corpus { .. } => unreachable!("handled by the caller"),
    }
}

fn verify_file(path: &Path, opts: &Options) -> Result<Computed, Failure> {
    let raw = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&raw).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    // accept a bare certificate or a certify/tame report
    let inner = v.get("result").and_then(|r| r.get("certificate")).cloned().unwrap_or(v);
    let c: Certificate =
        serde_json::from_value(inner).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let budget = opts.budget();
    let ver = with_field!(opts.field, k => verify_certificate(&c, k, &budget))?;
    let line = match &ver.reason {
        None => "certificate verified".to_string(),
        Some(r) => format!("certificate rejected at node {:?}: {r}", ver.path),
    };
    Ok((Status::Decided, serde_json::to_value(&ver).expect("serializable"), vec![line]))
}

/// Runs one single-arrangement command and returns its report.
pub fn execute(cmd: &Command, opts: &Options) -> Result<Report, Failure> {
    let path = input_path(cmd);
    let (status, result, summary) = if let Command::Verify { certificate } = cmd {
        verify_file(certificate, opts)?
    } else {
        let ma = load_arrangement(path)?;
        let h = opts.hyperplane_index(&ma).map_err(Failure::Input)?;
        let key = if let Command::Sequences { p, .. } = cmd {
            format!("{:?}|{:?}|{:?}", opts.dmax, h, p)
        } else {
            format!("{h:?}")
        };
        let cache = opts.cache.as_ref().filter(|_| cacheable(cmd)).map(Cache::new);
        let ckey = Cache::key(&[
            name(cmd),
            &opts.field.label(),
            &serde_json::to_string(&ma.to_file()).expect("serializable"),
            &key,
        ]);
        let hit: Option<(Status, Value, Vec<String>)> = cache.as_ref().and_then(|c| c.get(&ckey));
        match hit {
            Some(r) => r,
            None => {
                let budget = opts.budget();
                let r = with_field!(opts.field, k => compute(cmd, &ma, h, opts, k, &budget))?;
                if let (Some(c), Status::Decided) = (&cache, r.0) {
                    // a failed write only costs a recomputation later
                    let _ = c.put(&ckey, &r);
                }
                r
            }
        }
    };
    Ok(Report {
        command: name(cmd).into(),
        input: path.display().to_string(),
        field: opts.field.label(),
        status,
        result,
        summary,
    })
}
