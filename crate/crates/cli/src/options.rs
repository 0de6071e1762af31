//! Command line surface and validated analysis options.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tamearr_core::field::{PrimeField, Rat};
use tamearr_core::multi::MultiArrangement;
use tamearr_core::Budget;

/// Prime used by `--mode fast` when no field is given.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Parser, Debug)]
#[command(name = "tamearr", version, about = "Freeness and tameness of hyperplane multiarrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: RawOptions,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Intersection lattice: flats by codimension and Möbius values.
    Lattice { file: PathBuf },
    /// Characteristic polynomial (Möbius for simple input, module-theoretic otherwise).
    Chi { file: PathBuf },
    /// Freeness and exponents.
    Free { file: PathBuf },
    /// Tameness: a certificate if one is found, otherwise the direct computation.
    Tame { file: PathBuf },
    /// Search for a tameness certificate.
    Certify { file: PathBuf },
    /// Re-check a certificate file.
    Verify { certificate: PathBuf },
    /// Restriction `A^H` as an arrangement file.
    Restrict { file: PathBuf },
    /// Ziegler restriction `(A^H, m^H)`.
    Ziegler { file: PathBuf },
    /// Euler restriction `(A^H, m*)`.
    Euler { file: PathBuf },
    /// Degreewise check of the Euler, C- and Ziegler sequences.
    Sequences {
        file: PathBuf,
        /// Form degree; all of `0..=ℓ` when omitted.
        #[arg(long)]
        p: Option<usize>,
    },
    /// Betti number inequalities against the Ziegler restriction.
    BettiCheck { file: PathBuf },
    /// Membership in the inductively tame class.
    ItClass { file: PathBuf },
    /// Run the invariant suite on every `*.json` file of a directory.
    Corpus { dir: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Rational arithmetic.
    Exact,
    /// Arithmetic modulo a prime; results carry the prime.
    Fast,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RawOptions {
    /// `Q` or `Fp:<prime>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true)]
    pub mode: Option<Mode>,
    /// Wall clock budget per computation.
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    /// Highest numerator degree checked by `sequences` (default `|m| + 2`).
    #[arg(long, global = true)]
    pub dmax: Option<u32>,
    /// Hyperplane by index or by comma separated coefficients.
    #[arg(long, global = true)]
    pub hyperplane: Option<String>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory of the content-addressed result cache.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,
}

/// Field chosen for a run.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

impl FieldChoice {
    pub fn label(self) -> String {
        match self {
            FieldChoice::Rational => "Q".into(),
            FieldChoice::Prime(p) => format!("Fp:{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub field: FieldChoice,
    pub budget_ms: Option<u64>,
    pub dmax: Option<u32>,
    pub hyperplane: Option<String>,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub json: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            field: FieldChoice::Rational,
            budget_ms: None,
            dmax: None,
            hyperplane: None,
            out: None,
            cache: None,
            json: false,
        }
    }
}

impl RawOptions {
    pub fn validate(&self) -> Result<Options, String> {
        let given = match self.field.as_deref() {
            None => None,
            Some("Q") | Some("q") => Some(FieldChoice::Rational),
            Some(s) => {
                let p = s
                    .strip_prefix("Fp:")
                    .or_else(|| s.strip_prefix("fp:"))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| format!("unknown field `{s}`, expected Q or Fp:<prime>"))?;
                PrimeField::new(p).map_err(|e| e.to_string())?;
                Some(FieldChoice::Prime(p))
            }
        };
        let field = match (self.mode, given) {
            (Some(Mode::Exact), Some(FieldChoice::Prime(_))) => return Err("--mode exact needs the field Q".into()),
            (Some(Mode::Fast), None | Some(FieldChoice::Rational)) => FieldChoice::Prime(DEFAULT_PRIME),
            (_, Some(f)) => f,
            (_, None) => FieldChoice::Rational,
        };
        if self.budget_ms == Some(0) {
            return Err("--budget-ms must be positive".into());
        }
        Ok(Options {
            field,
            budget_ms: self.budget_ms,
            dmax: self.dmax,
            hyperplane: self.hyperplane.clone(),
            out: self.out.clone(),
            cache: self.cache.clone(),
            json: self.json,
        })
    }
}

impl Options {
    /// A fresh budget; the clock starts now.
    pub fn budget(&self) -> Budget {
        match self.budget_ms {
            None => Budget::unlimited(),
            Some(ms) => {
                let deadline = Instant::now() + Duration::from_millis(ms);
                Budget::unlimited().interrupt(move || Instant::now() >= deadline)
            }
        }
    }

    /// Resolves `--hyperplane` against an arrangement.
    pub fn hyperplane_index(&self, ma: &MultiArrangement) -> Result<Option<usize>, String> {
        let Some(s) = self.hyperplane.as_deref() else { return Ok(None) };
        if let Ok(i) = s.trim().parse::<usize>() {
            return if i < ma.len() { Ok(Some(i)) } else { Err(format!("hyperplane index {i} out of range")) };
        }
        let form: Vec<Rat> = s
            .split(',')
            .map(|t| t.trim().parse::<Rat>().map_err(|e| format!("bad coefficient `{t}`: {e}")))
            .collect::<Result<_, _>>()?;
        if form.len() != ma.dim() {
            return Err(format!("hyperplane has {} coefficients, expected {}", form.len(), ma.dim()));
        }
        ma.arr.index_of(&form).map(Some).ok_or_else(|| format!("`{s}` is not a hyperplane of the arrangement"))
    }
}

/// Evaluates `$body` with `$k` bound to the field selected by `$choice`.
#[macro_export]
macro_rules! with_field {
    ($choice:expr, $k:ident => $body:expr) => {
        match $choice {
            $crate::options::FieldChoice::Rational => {
                let $k = &::tamearr_core::field::Rationals;
                $body
            }
            $crate::options::FieldChoice::Prime(p) => {
                let $k = &::tamearr_core::field::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}
