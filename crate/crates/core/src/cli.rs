//! The `spres` command line: generate, check, decompose and measure JSON artifacts.
//!
//! Exit codes: `0` pass or success, `1` scientific failure (a check failed,
//! no canonical form exists), `2` usage, I/O or format error. Reports go to
//! stdout as a single JSON line; diagnostics go to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{self, Criterion, DecomposeOptions, DECOMP_TOL, DEFAULT_MAX_PARTIES};
use crate::error::Error;
use crate::json::{self, MapDocument};
use crate::random::{random_hermitian, seeded_rng};
use crate::schmidt::{k_operator_norm, k_vector_norm, schmidt_decompose, AltMaxConfig};
use crate::superop::{canonical_map, haar_unitary, CanonicalForm, Flag, PreserverMap, Sign};
use crate::tensor::DimProfile;

#[derive(Debug, Parser)]
#[command(
    name = "spres",
    version,
    about = "Spectrum and spectral-radius preservers on tensor-product spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a canonical form, Haar unitary, certificate list or random Hermitian matrix.
    Gen(GenArgs),
    /// Sample-check a map for spectrum, radius or global-form preservation.
    Check(CheckArgs),
    /// Search for λ U (f_1 ⊗ ... ⊗ f_m)(·) U* representing a map.
    Decompose(DecomposeArgs),
    /// ‖w‖_k of a vector, or |||C|||_k of an operator with --op.
    Norm(NormArgs),
    /// Schmidt decomposition of a vector in C^m ⊗ C^n.
    Schmidt(SchmidtArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Canonical,
    Unitary,
    Certificate,
    RandomHermitian,
}

#[derive(Debug, Args)]
struct GenArgs {
    kind: GenKind,
    /// Comma-separated factor dimensions (canonical, certificate).
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Matrix size (unitary, random-hermitian).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Overall sign of a canonical form.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    sign: i64,
    /// Comma-separated `id` / `t` per factor (canonical; default all `id`).
    #[arg(long, value_delimiter = ',')]
    flags: Option<Vec<String>>,
    /// Output file, written atomically; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckMode {
    Spectrum,
    Radius,
    Global,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CriterionArg {
    Spectrum,
    Radius,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Spectrum => Criterion::Spectrum,
            CriterionArg::Radius => Criterion::Radius,
        }
    }
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Preserver map or canonical form JSON.
    map: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    #[arg(long, value_enum, default_value_t = CheckMode::Spectrum)]
    mode: CheckMode,
    /// Invariant used by `--mode global`.
    #[arg(long, value_enum, default_value_t = CriterionArg::Spectrum)]
    criterion: CriterionArg,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    map: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    #[arg(long, value_enum, default_value_t = CriterionArg::Spectrum)]
    mode: CriterionArg,
    #[arg(long, default_value_t = DECOMP_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_PARTIES)]
    max_parties: usize,
}

#[derive(Debug, Args)]
struct NormArgs {
    /// Vector JSON, or matrix JSON with --op.
    input: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    op: bool,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 200)]
    iterations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct SchmidtArgs {
    input: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Lib(Error::Format { .. }) => "format",
            Failure::Lib(_) => "error",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome = std::result::Result<(Option<Value>, i32), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
                emit_error(stdout, &usage(rendered.lines().next().unwrap_or("invalid arguments")));
            }
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => gen(&a),
        Command::Check(a) => check(&a),
        Command::Decompose(a) => decompose(&a),
        Command::Norm(a) => norm(&a),
        Command::Schmidt(a) => schmidt(&a),
    };
    match outcome {
        Ok((report, code)) => {
            if let Some(report) = report {
                if stdout.write_all(json::to_json_string(&report).as_bytes()).is_err() {
                    return 2;
                }
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "spres: {}", f.message());
            emit_error(stdout, &f);
            2
        }
    }
}

fn emit_error(stdout: &mut dyn Write, f: &Failure) {
    let mut body = json!({ "kind": f.kind(), "message": f.message() });
    if let Failure::Lib(Error::Format { field, .. }) = f {
        body["field"] = json!(field);
    }
    let _ = stdout.write_all(json::to_json_string(&json!({ "error": body })).as_bytes());
}

fn profile(dims: &[usize]) -> Result<DimProfile, Failure> {
    DimProfile::new(dims.to_vec()).map_err(|e| usage(format!("--dims: {e}")))
}

fn positive_tol(tol: f64) -> Result<f64, Failure> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(usage(format!("--tol must be positive and finite, got {tol}")))
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(json::parse(&text, &path.display().to_string())?)
}

fn load_map(path: &Path, profile: &DimProfile) -> Result<PreserverMap, Failure> {
    let phi = match json::map_document_from_value(&read_json(path)?)? {
        MapDocument::Map(phi) => phi,
        MapDocument::Canonical(form) => {
            if form.profile() != profile {
                return Err(usage(format!(
                    "--dims {:?} differ from the canonical form's dims {:?}",
                    profile.dims(),
                    form.profile().dims()
                )));
            }
            canonical_map(&form)?
        }
    };
    if phi.dim() != profile.total() {
        return Err(usage(format!(
            "map acts on H_{} but --dims {:?} give total dimension {}",
            phi.dim(),
            profile.dims(),
            profile.total()
        )));
    }
    Ok(phi)
}

fn write_atomically(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(text.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn gen(a: &GenArgs) -> Outcome {
    let size = |what: &str| -> Result<usize, Failure> {
        match (a.n, &a.dims) {
            (Some(n), _) if n >= 1 => Ok(n),
            (Some(_), _) => Err(usage("--n must be at least 1")),
            (None, Some(d)) => Ok(profile(d)?.total()),
            (None, None) => Err(usage(format!("gen {what} needs --n or --dims"))),
        }
    };
    let need_dims = |what: &str| -> Result<DimProfile, Failure> {
        profile(
            a.dims
                .as_deref()
                .ok_or_else(|| usage(format!("gen {what} needs --dims")))?,
        )
    };
    let value = match a.kind {
        GenKind::Canonical => {
            let p = need_dims("canonical")?;
            let sign = Sign::from_int(a.sign).ok_or_else(|| usage("--sign must be 1 or -1"))?;
            let flags = match &a.flags {
                None => vec![Flag::Identity; p.parties()],
                Some(list) => list
                    .iter()
                    .map(|s| Flag::parse(s).ok_or_else(|| usage(format!("--flags: `{s}` is not `id` or `t`"))))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            if flags.len() != p.parties() {
                return Err(usage(format!(
                    "--flags has {} entries for {} factors",
                    flags.len(),
                    p.parties()
                )));
            }
            json::canonical_to_value(&CanonicalForm::random(&p, sign, flags, a.seed)?)
        }
        GenKind::Unitary => json::matrix_to_value(&haar_unitary(size("unitary")?, a.seed)),
        GenKind::RandomHermitian => {
            let h = random_hermitian(size("random-hermitian")?, &mut seeded_rng(a.seed, 0));
            json::matrix_to_value(h.matrix())
        }
        GenKind::Certificate => {
            let p = need_dims("certificate")?;
            let certs = analysis::certificate_matrices(&p).map_err(|e| usage(format!("--dims: {e}")))?;
            json!({
                "dims": p.dims(),
                "certificates": certs.iter().map(|c| json::matrix_to_value(c.matrix())).collect::<Vec<_>>(),
            })
        }
    };
    match &a.out {
        Some(path) => {
            write_atomically(path, &json::to_json_string(&value))?;
            Ok((None, 0))
        }
        None => Ok((Some(value), 0)),
    }
}

fn check(a: &CheckArgs) -> Outcome {
    let p = profile(&a.dims)?;
    let tol = positive_tol(a.tol)?;
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    if matches!(a.mode, CheckMode::Global) && p.parties() < 2 {
        return Err(usage("--mode global needs at least two factors in --dims"));
    }
    let phi = load_map(&a.map, &p)?;
    let (report, label) = match a.mode {
        CheckMode::Spectrum => (
            analysis::check_spectrum_preservation(&phi, &p, a.samples, a.seed, tol)?,
            "spectrum",
        ),
        CheckMode::Radius => (
            analysis::check_radius_preservation(&phi, &p, a.samples, a.seed, tol)?,
            "radius",
        ),
        CheckMode::Global => (
            analysis::check_global_form(&phi, &p, a.samples, a.seed, tol, a.criterion.into())?,
            "global",
        ),
    };
    let code = if report.passed() { 0 } else { 1 };
    Ok((Some(json::check_report_to_value(&report, label)), code))
}

fn decompose(a: &DecomposeArgs) -> Outcome {
    let p = profile(&a.dims)?;
    let tol = positive_tol(a.tol)?;
    if p.parties() > a.max_parties {
        return Err(usage(format!(
            "{} factors exceed --max-parties {} (the search visits 2^m flag vectors)",
            p.parties(),
            a.max_parties
        )));
    }
    let phi = load_map(&a.map, &p)?;
    let options = DecomposeOptions {
        tol,
        max_parties: a.max_parties,
    };
    let result = analysis::decompose_canonical(&phi, &p, a.mode.into(), &options)?;
    let code = if result.is_success() { 0 } else { 1 };
    Ok((Some(json::decomposition_to_value(&result)), code))
}

fn bipartite(m: usize, n: usize, k: Option<usize>) -> Result<(), Failure> {
    if m == 0 || n == 0 {
        return Err(usage("--m and --n must be at least 1"));
    }
    if let Some(k) = k {
        if k == 0 || k > m.min(n) {
            return Err(usage(format!("--k must lie in 1..={}, got {k}", m.min(n))));
        }
    }
    Ok(())
}

fn norm(a: &NormArgs) -> Outcome {
    bipartite(a.m, a.n, Some(a.k))?;
    if a.restarts == 0 || a.iterations == 0 {
        return Err(usage("--restarts and --iterations must be at least 1"));
    }
    let doc = read_json(&a.input)?;
    if a.op {
        let c = json::matrix_from_value(&doc, "")?;
        if c.rows() != a.m * a.n || !c.is_square() {
            return Err(usage(format!(
                "operator is {}x{}, expected {} x {} for --m {} --n {}",
                c.rows(),
                c.cols(),
                a.m * a.n,
                a.m * a.n,
                a.m,
                a.n
            )));
        }
        let config = AltMaxConfig {
            restarts: a.restarts,
            iterations: a.iterations,
            seed: a.seed,
            ..AltMaxConfig::default()
        };
        let estimate = k_operator_norm(&c, a.m, a.n, a.k, &config)?;
        Ok((Some(json::operator_norm_to_value(&estimate, a.m, a.n, a.k)), 0))
    } else {
        let w = json::vector_from_value(&doc, "")?;
        if w.len() != a.m * a.n {
            return Err(usage(format!(
                "vector has length {}, expected m n = {}",
                w.len(),
                a.m * a.n
            )));
        }
        let value = k_vector_norm(&w, a.m, a.n, a.k)?;
        Ok((Some(json::vector_norm_to_value(value, a.m, a.n, a.k)), 0))
    }
}

fn schmidt(a: &SchmidtArgs) -> Outcome {
    bipartite(a.m, a.n, None)?;
    let w = json::vector_from_value(&read_json(&a.input)?, "")?;
    if w.len() != a.m * a.n {
        return Err(usage(format!(
            "vector has length {}, expected m n = {}",
            w.len(),
            a.m * a.n
        )));
    }
    let s = schmidt_decompose(&w, a.m, a.n)?;
    Ok((Some(json::schmidt_to_value(&s, a.m, a.n)), 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("spres").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_certificate_to_stdout() {
        let (code, out, _) = call(&["gen", "certificate", "--dims", "2,2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let c0 = json::matrix_from_value(&v["certificates"][0], "").unwrap();
        assert_eq!(c0.rows(), 4);
        assert_eq!(c0[(0, 3)].re, 1.0);
        assert_eq!(c0.trace().re, 2.0);
    }

    #[test]
    fn usage_errors_exit_two_with_json() {
        for args in [
            vec!["gen", "certificate", "--dims", "1,2"],
            vec!["gen", "unitary"],
            vec!["gen", "canonical", "--dims", "2,2", "--sign", "3"],
            vec!["gen", "canonical", "--dims", "2,2", "--flags", "id"],
            vec!["check", "/nonexistent.json", "--dims", "2,2"],
            vec!["bogus"],
        ] {
            let (code, out, err) = call(&args);
            assert_eq!(code, 2, "{args:?}");
            assert!(!err.is_empty());
            let v: Value = serde_json::from_str(&out).unwrap();
            assert!(v["error"]["message"].is_string(), "{args:?}");
        }
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("decompose"));
    }

    #[test]
    fn negative_sign_parses() {
        let (code, out, _) = call(&["gen", "canonical", "--dims", "2,2", "--sign", "-1", "--flags", "t,id"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["sign"], json!(-1));
        assert_eq!(v["flags"], json!(["t", "id"]));
    }
}
