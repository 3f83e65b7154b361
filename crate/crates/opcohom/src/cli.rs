//! Command-line driver. Exit codes: 0 success or property holds, 1 property
//! fails, 2 malformed input or I/O error, 3 cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use opcohom_core::algebra::validate_action;
use opcohom_core::classify::verify_omega;
use opcohom_core::cochain::is_cocycle3;
use opcohom_core::crossed::{build_crossed_product, verify_crossed_product};
use opcohom_core::factorset::{
    are_cohomologous_factor_sets, factor_set_from_cocycle, induce_cocycle, strictify, validate_factor_set,
};
use opcohom_core::grcat::{build_gr_category, GrCategory};
use opcohom_core::homology::{compute_h3, Method, DEFAULT_CAP};
use opcohom_core::{Error, Report};
use serde::Serialize;
use serde_json::Value;

use crate::doc::{self, DocError, DocResult};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Snf,
    Enum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "opcohom", version, about = "Equivariant H³, factor sets and crossed products at desk scale")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[arg(long, global = true, value_enum, default_value = "snf")]
    pub method: MethodArg,
    /// Enumeration cap (candidate tables, cocycles or classes)
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Validate a group, module, category or factor set document
    Validate {
        file: PathBuf,
        /// Check F¹ = id as a premise instead of deriving it
        #[arg(long)]
        assume_condition_i: bool,
    },
    /// Compute H³_Γ(Π, A) of a module
    H3 { module: PathBuf },
    /// Check the cocycle conditions for a 3-cochain
    CocycleCheck { module: PathBuf, cochain: PathBuf },
    /// Build the enough strict factor set of a 3-cocycle
    FactorsetBuild { module: PathBuf, cochain: PathBuf },
    /// Induce the 3-cocycle of an enough strict factor set
    FactorsetInduce { factor_set: PathBuf },
    /// Replace a factor set by an enough strict one
    FactorsetStrictify { factor_set: PathBuf },
    /// Search for a witness that two factor sets are cohomologous
    Cohomologous { first: PathBuf, second: PathBuf },
    /// Build and verify the crossed product of a factor set
    CrossedVerify { factor_set: PathBuf },
    /// Check the classification bijection over a base category (ξ ≡ 0 when
    /// no category document is given)
    Classify { module: PathBuf, base: Option<PathBuf> },
}

/// What a verb produces: a document to print and an exit code.
struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn new<T: Serialize>(doc: &T, text: String, code: i32) -> Self {
        Self { json: serde_json::to_value(doc).expect("documents serialize"), text, code }
    }

    fn report(r: &Report) -> Self {
        let d = doc::report_to_doc(r);
        let code = if r.passed() { EXIT_OK } else { EXIT_PROPERTY };
        Self::new(&d, render::report(&d), code)
    }

    fn error(kind: &str, message: String, code: i32) -> Self {
        let d = doc::ErrorDoc { error: kind.into(), message };
        Self::new(&d, render::error(&d), code)
    }
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Doc(PathBuf, DocError),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn outcome(self) -> Outcome {
        match self {
            Failure::Io(p, e) => Outcome::error("io", format!("{}: {e}", p.display()), EXIT_MALFORMED),
            Failure::Doc(_, DocError::Core(Error::CapExceeded(c))) | Failure::Core(Error::CapExceeded(c)) => {
                Outcome::error("cap_exceeded", format!("enumeration cap {c} exceeded"), EXIT_CAP)
            }
            Failure::Doc(p, e) => Outcome::error("malformed_input", format!("{}: {e}", p.display()), EXIT_MALFORMED),
            Failure::Core(e) => Outcome::error("invalid_input", e.to_string(), EXIT_MALFORMED),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load<T, F>(path: &Path, convert: F) -> Result<T, Failure>
where
    F: FnOnce(&str) -> DocResult<T>,
{
    convert(&read(path)?).map_err(|e| Failure::Doc(path.to_path_buf(), e))
}

fn load_module(path: &Path) -> Result<opcohom_core::algebra::EquivariantModule, Failure> {
    load(path, |s| doc::module_from_doc(&doc::parse(s)?))
}

fn load_factor_set(path: &Path) -> Result<opcohom_core::factorset::FactorSet, Failure> {
    load(path, |s| doc::factor_set_from_doc(&doc::parse(s)?))
}

/// Parses `argv` (program name first), runs the verb and writes the report to
/// `out`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let outcome = dispatch(&cli).unwrap_or_else(Failure::outcome);
    let body = match cli.output {
        Output::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).expect("values serialize");
            s.push('\n');
            s
        }
        Output::Text => outcome.text,
    };
    match out.write_all(body.as_bytes()) {
        Ok(()) => outcome.code,
        Err(_) => EXIT_MALFORMED,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let method = match cli.method {
        MethodArg::Snf => Method::Snf,
        MethodArg::Enum => Method::Enum,
    };
    match &cli.verb {
        Verb::Validate { file, assume_condition_i } => validate(file, *assume_condition_i),
        Verb::H3 { module } => {
            let em = load_module(module)?;
            let d = doc::h3_to_doc(&compute_h3(&em, method, cli.cap)?);
            Ok(Outcome::new(&d, render::h3(&d), EXIT_OK))
        }
        Verb::CocycleCheck { module, cochain } => {
            let em = load_module(module)?;
            let h = load(cochain, |s| doc::cochain3_from_doc(&em, &doc::parse(s)?))?;
            Ok(Outcome::report(&is_cocycle3(&em, &h)))
        }
        Verb::FactorsetBuild { module, cochain } => {
            let em = load_module(module)?;
            let h = load(cochain, |s| doc::cochain3_from_doc(&em, &doc::parse(s)?))?;
            let r = is_cocycle3(&em, &h);
            if !r.passed() {
                return Ok(Outcome::report(&r));
            }
            let base = build_gr_category(em.base.clone(), h.ppp.clone())?;
            let d = doc::factor_set_to_doc(&factor_set_from_cocycle(&base, &em, &h)?);
            Ok(Outcome::new(&d, render::factor_set(&d), EXIT_OK))
        }
        Verb::FactorsetInduce { factor_set } => {
            let fs = load_factor_set(factor_set)?;
            let r = validate_factor_set(&fs, false);
            if !r.passed() {
                return Ok(Outcome::report(&r));
            }
            match induce_cocycle(&fs) {
                Ok(h) => {
                    let d = doc::cochain3_to_doc(&h);
                    Ok(Outcome::new(&d, render::cochain3(&d), EXIT_OK))
                }
                Err(e @ Error::NotEnoughStrict(_)) => Ok(Outcome::error("not_enough_strict", e.to_string(), EXIT_PROPERTY)),
                Err(e) => Err(e.into()),
            }
        }
        Verb::FactorsetStrictify { factor_set } => {
            let fs = load_factor_set(factor_set)?;
            let r = validate_factor_set(&fs, false);
            if !r.passed() {
                return Ok(Outcome::report(&r));
            }
            let (g, w) = strictify(&fs);
            let d = doc::StrictifyDoc { factor_set: doc::factor_set_to_doc(&g), witness: doc::witness_to_doc(&w, fs.m()) };
            Ok(Outcome::new(&d, render::strictify(&d), EXIT_OK))
        }
        Verb::Cohomologous { first, second } => {
            let fs1 = load_factor_set(first)?;
            let fs2 = load_factor_set(second)?;
            for fs in [&fs1, &fs2] {
                let r = validate_factor_set(fs, false);
                if !r.passed() {
                    return Ok(Outcome::report(&r));
                }
            }
            let w = are_cohomologous_factor_sets(&fs1, &fs2)?;
            let d = doc::CohomologousDoc {
                cohomologous: w.is_some(),
                witness: w.map(|w| doc::witness_to_doc(&w, fs1.m())),
            };
            let code = if d.cohomologous { EXIT_OK } else { EXIT_PROPERTY };
            Ok(Outcome::new(&d, render::cohomologous(&d), code))
        }
        Verb::CrossedVerify { factor_set } => {
            let fs = load_factor_set(factor_set)?;
            match build_crossed_product(fs) {
                Ok(d) => Ok(Outcome::report(&verify_crossed_product(&d))),
                Err(e @ Error::NotEnoughStrict(_)) => Ok(Outcome::error("not_enough_strict", e.to_string(), EXIT_PROPERTY)),
                Err(e) => Err(e.into()),
            }
        }
        Verb::Classify { module, base } => {
            let em = load_module(module)?;
            let base = match base {
                Some(p) => load(p, |s| doc::category_from_doc(&doc::parse(s)?))?,
                None => GrCategory::strict(em.base.clone()),
            };
            let r = verify_omega(&em, &base, cli.cap)?;
            let d = doc::classification_to_doc(&r);
            let code = if r.bijection_verified && r.checks.passed() { EXIT_OK } else { EXIT_PROPERTY };
            Ok(Outcome::new(&d, render::classification(&d), code))
        }
    }
}

/// Witness indices carried by an algebraic validation error.
fn error_witness(e: &Error) -> Vec<usize> {
    match *e {
        Error::NotSquare { row, .. } => vec![row],
        Error::NotClosed { row, col, .. } => vec![row, col],
        Error::NoInverse(i) | Error::NotBijective(i) => vec![i],
        Error::NotAssociative(a, b, c) | Error::NotNormalized(a, b, c) | Error::NotEquivariant(a, b, c) => vec![a, b, c],
        Error::NotACocycle(a, b, c, d) => vec![a, b, c, d],
        Error::MapShape { actor } => vec![actor],
        Error::NotHomomorphic { actor, a, b } => vec![actor, a, b],
        Error::NotAnAction(s, t) => vec![s, t],
        Error::IdentityActsNontrivially => vec![0],
        _ => Vec::new(),
    }
}

/// Records `res` as the check `name`. Algebraic failures become failing
/// checks; shape and parse failures abort.
fn stage<T>(r: &mut Report, name: &str, res: DocResult<T>) -> DocResult<Option<T>> {
    match res {
        Ok(v) => {
            r.push(name, None);
            Ok(Some(v))
        }
        Err(DocError::Core(e)) => {
            r.push(name, Some(error_witness(&e)));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn validate(path: &Path, assume: bool) -> Result<Outcome, Failure> {
    let text = read(path)?;
    let r = validate_document(&text, assume).map_err(|e| Failure::Doc(path.to_path_buf(), e))?;
    Ok(Outcome::report(&r))
}

/// Checks for any document kind, recognised by its keys.
pub fn validate_document(text: &str, assume: bool) -> DocResult<Report> {
    let value: Value = doc::parse(text)?;
    let has = |k: &str| value.get(k).is_some();
    let mut r = Report::new();
    if has("table") {
        let g: doc::GroupDoc = serde_json::from_value(value)?;
        stage(&mut r, "group", doc::group_from_doc(&g))?;
    } else if has("phi") {
        let d: doc::FactorSetDoc = serde_json::from_value(value)?;
        let parts = [
            stage(&mut r, "pi_group", doc::group_from_doc(&d.pi))?.is_some(),
            stage(&mut r, "gamma_group", doc::group_from_doc(&d.gamma))?.is_some(),
            stage(&mut r, "a_invariant_factors", doc::abelian_from_doc(&d.a))?.is_some(),
        ];
        if parts.iter().all(|&ok| ok) {
            let cat = doc::CategoryDoc { pi: d.pi.clone(), a: d.a.clone(), pi_on_a: d.pi_on_a.clone(), xi: d.xi.clone() };
            if stage(&mut r, "base_category", doc::category_from_doc(&cat))?.is_some() {
                r.extend(validate_factor_set(&doc::factor_set_from_doc(&d)?, assume));
            }
        }
    } else if has("xi") {
        let d: doc::CategoryDoc = serde_json::from_value(value)?;
        let pi = stage(&mut r, "pi_group", doc::group_from_doc(&d.pi))?;
        let a = stage(&mut r, "a_invariant_factors", doc::abelian_from_doc(&d.a))?;
        if let (Some(pi), Some(a)) = (pi, a) {
            let maps = doc::action_maps(&d.pi_on_a, &pi, "pi_on_a")?;
            if stage(&mut r, "pi_on_a", validate_action(&pi, &a, maps).map_err(DocError::from))?.is_some() {
                stage(&mut r, "xi_cocycle", doc::category_from_doc(&d))?;
            }
        }
    } else {
        let d: doc::ModuleDoc = serde_json::from_value(value)?;
        let pi = stage(&mut r, "pi_group", doc::group_from_doc(&d.pi))?;
        let gamma = stage(&mut r, "gamma_group", doc::group_from_doc(&d.gamma))?;
        let a = stage(&mut r, "a_invariant_factors", doc::abelian_from_doc(&d.a))?;
        if let (Some(pi), Some(gamma), Some(a)) = (pi, gamma, a) {
            let actions = [
                ("pi_on_a", validate_action(&pi, &a, doc::action_maps(&d.pi_on_a, &pi, "pi_on_a")?)),
                ("gamma_on_pi", validate_action(&gamma, &pi, doc::action_maps(&d.gamma_on_pi, &gamma, "gamma_on_pi")?)),
                ("gamma_on_a", validate_action(&gamma, &a, doc::action_maps(&d.gamma_on_a, &gamma, "gamma_on_a")?)),
            ];
            let mut all = true;
            for (name, res) in actions {
                all &= stage(&mut r, name, res.map_err(DocError::from))?.is_some();
            }
            if all {
                stage(&mut r, "equivariance", doc::module_from_doc(&d))?;
            }
        }
    }
    Ok(r)
}
