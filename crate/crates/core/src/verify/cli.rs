//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 invalid input,
//! I/O failure or guard violation. Errors are reported on stderr as a JSON
//! object `{"error": kind, "message": text}`.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};
use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::algebra::scalar::{format_rational, Rational};
use crate::bethe::{simultaneous_spectrum, SpectrumOptions};
use crate::rep::character::{graded_character_cell, graded_character_weyl, q_pochhammer, QSeries};
use crate::rep::partition::Partition;
use crate::rep::spec::ProblemSpec;
use crate::schubert::fiber::{family_for, fiber_from_spectrum, FiberMode};
use crate::schubert::normalize::{normalize_fuchsian_data, FuchsianData};
use crate::schubert::operator::{membership, monic_wronskian};
use crate::verify::problem::{Mode, ProblemFile};
use crate::verify::result::{FiberRecord, ResultDocument, SpectrumRecord, TOOL};
use crate::verify::suites::{
    suite_characters, suite_correspondence, suite_identities, suite_identities_all, Check, Report,
    CORRESPONDENCE_TOL,
};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = TOOL, version, about = "Bethe spectra and Wronski fibers for gl_N Gaudin models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct Output {
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cache directory; documents are stored under the SHA-256 of the input.
    #[arg(long)]
    results_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Joint spectrum of the Bethe algebra for a problem file.
    Spectrum {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Spectrum plus the corresponding points of the Schubert cell.
    Fiber {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Both sides of the character identity for one partition.
    Characters {
        #[arg(long = "N")]
        n_gl: usize,
        /// Comma separated parts, e.g. `2,1`.
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run a check suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long = "N")]
        n_gl: Option<usize>,
        #[arg(long = "n")]
        n: Option<usize>,
        /// Problem files for the correspondence suite (repeatable).
        #[arg(long)]
        file: Vec<PathBuf>,
        /// Worker threads across independent problem files.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Normalize Fuchsian data `(M, b)` to a problem file.
    Normalize {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Identities,
    Characters,
    Correspondence,
    All,
}

fn error_kind(e: &Error) -> (&'static str, i32) {
    match e {
        Error::CheckFailed(_) => ("check-failed", 1),
        Error::NonGeneric(_) => ("non-generic", 1),
        Error::NotJointEigenvector(_) => ("not-joint-eigenvector", 1),
        Error::Numerical(_) => ("numerical", 1),
        Error::Io(_) => ("io", 2),
        Error::GuardExceeded(_) => ("guard-exceeded", 2),
        _ => ("invalid-input", 2),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string() }));
            return 2;
        }
    };
    match run(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let (kind, code) = error_kind(&e);
            eprintln!("{}", json!({ "error": kind, "message": e.to_string() }));
            code
        }
    }
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Spectrum { file, output } => {
            let input = ProblemFile::read(&file)?;
            cached(&output, "spectrum", &input, || problem_document("spectrum", &input))
        }
        Command::Fiber { file, output } => {
            let input = ProblemFile::read(&file)?;
            cached(&output, "fiber", &input, || problem_document("fiber", &input))
        }
        Command::Characters { n_gl, lambda, max_degree, output } => {
            let lam = Partition::new(&lambda, n_gl)?;
            let doc = characters_document(&lam, max_degree)?;
            let passed = doc["passed"].as_bool().unwrap_or(false);
            emit(&output, &serde_json::to_string_pretty(&doc).expect("serializable"))?;
            Ok(passed)
        }
        Command::Verify { suite, n_gl, n, file, jobs, seed, max_degree, output } => {
            let reports = verify(suite, n_gl, n, &file, jobs, seed, max_degree)?;
            let passed = reports.iter().all(Report::passed);
            for r in &reports {
                info!("suite {}: {} checks, {}", r.suite, r.checks.len(), if r.passed() { "passed" } else { "FAILED" });
            }
            let doc = json!({ "tool": TOOL, "version": env!("CARGO_PKG_VERSION"), "passed": passed, "reports": reports });
            emit(&output, &serde_json::to_string_pretty(&doc).expect("serializable"))?;
            Ok(passed)
        }
        Command::Normalize { file, output } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let data: FuchsianData =
                serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("malformed data file: {e}")))?;
            let out = normalize_fuchsian_data(&data)?;
            let doc = json!({
                "tool": TOOL,
                "version": env!("CARGO_PKG_VERSION"),
                "problem": out.spec.as_ref().map(problem_file_of),
                "empty": out.spec.is_none(),
                "empty_reason": out.empty_reason,
                "shifts": out.shifts,
                "transcript": out.transcript,
            });
            emit(&output, &serde_json::to_string_pretty(&doc).expect("serializable"))?;
            Ok(true)
        }
    }
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

/// Content address of a problem: SHA-256 of the command, tool version and
/// the canonical JSON of the input.
pub fn cache_key(command: &str, input: &ProblemFile) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0]);
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update([0]);
    h.update(serde_json::to_vec(input).expect("serializable"));
    hex::encode(h.finalize())
}

fn cached(output: &Output, command: &str, input: &ProblemFile, make: impl FnOnce() -> Result<ResultDocument>) -> Result<bool> {
    let path = output.results_dir.as_ref().map(|d| d.join(format!("{}.json", cache_key(command, input))));
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        debug!("cache hit {}", p.display());
        let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        let doc: ResultDocument =
            serde_json::from_str(&text).map_err(|e| Error::Io(format!("corrupt cache entry {}: {e}", p.display())))?;
        emit(output, &doc.to_json())?;
        return Ok(doc.passed());
    }
    let doc = make()?;
    let text = doc.to_json();
    if let Some(p) = &path {
        write_cache(p, &text)?;
    }
    emit(output, &text)?;
    Ok(doc.passed())
}

fn write_cache(p: &Path, text: &str) -> Result<()> {
    if let Some(dir) = p.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

/// The `spectrum` and `fiber` documents.
pub fn problem_document(command: &str, input: &ProblemFile) -> Result<ResultDocument> {
    let spec = input.to_spec()?;
    let mode = input.fiber_mode();
    let opts = input.spectrum_options();
    let mut doc = ResultDocument::new(command, input);
    let fam = family_for(&spec, mode)?;
    doc.space_dim = fam.dim;
    if input.mode == Mode::Exact {
        doc.checks.push(Check::exact("commutativity", fam.check_commutative()));
    }
    let spectrum = simultaneous_spectrum(&fam, &opts)?;
    doc.spectrum = spectrum.iter().map(SpectrumRecord::from_entry).collect();
    let total: usize = spectrum.iter().map(|e| e.multiplicity).sum();
    doc.checks.push(Check::flag("multiplicity sum", total == fam.dim, format!("{total} vs {}", fam.dim)));
    let lines: Vec<usize> = spectrum.iter().map(|e| e.eigenline_dim).collect();
    doc.checks.push(Check::flag("eigenline uniqueness", lines.iter().all(|&l| l == 1), format!("{lines:?}")));
    if command == "fiber" {
        let fiber = fiber_from_spectrum(&spec, fam.dim, spectrum, opts.tol)?;
        let q = spec.q_poly().to_complex();
        let scale = q.max_abs().max(1.0);
        for (k, p) in fiber.points.iter().enumerate() {
            let w = monic_wronskian(&p.point)?;
            let dev = (0..=spec.n()).map(|j| (w.coeff(j) - q.coeff(j)).norm()).fold(0.0, f64::max) / scale;
            doc.checks.push(Check::within(format!("point {k}: Wronskian"), dev, CORRESPONDENCE_TOL, ""));
            if mode == FiberMode::IrreducibleTensor {
                let m = membership(&p.point, &spec, CORRESPONDENCE_TOL)?;
                doc.checks.push(Check::flag(format!("point {k}: membership"), m.member, m.reason.unwrap_or_default()));
            }
            doc.fiber.push(FiberRecord::from_point(p, &spec.points, opts.tol)?);
        }
    }
    Ok(doc)
}

fn series_json(s: &QSeries) -> Vec<String> {
    s.coeffs().iter().map(format_rational).collect()
}

fn characters_document(lam: &Partition, trunc: usize) -> Result<serde_json::Value> {
    let n = lam.size();
    let weyl = graded_character_weyl(lam, trunc);
    let lhs = weyl.div(&q_pochhammer(n, trunc))?;
    let cell = graded_character_cell(lam, lam.get(0) + lam.n_parts(), trunc)?;
    let rhs = QSeries::monomial(lam.n_statistic(), trunc).mul(&cell);
    let diff = lhs.first_difference(&rhs);
    Ok(json!({
        "tool": TOOL,
        "version": env!("CARGO_PKG_VERSION"),
        "N": lam.n_parts(),
        "lambda": lam.parts(),
        "max_degree": trunc,
        "weyl_singular": series_json(&weyl),
        "cell": series_json(&cell),
        "lhs": series_json(&lhs),
        "rhs": series_json(&rhs),
        "shift": lam.n_statistic(),
        "dimension": format_rational(&weyl.value_at_one()),
        "first_difference": diff,
        "passed": diff.is_none(),
    }))
}

/// Problems run by `verify --suite all` in addition to any files given.
pub fn bundled_problems() -> Vec<(ProblemSpec, FiberMode)> {
    let p = |v: &[usize]| Partition::new(v, 2).expect("partition");
    let r = |k: i64| Rational::from_integer(k.into());
    vec![
        (
            ProblemSpec::new_tensor(2, vec![p(&[1]); 3], p(&[2, 1]), vec![r(0), r(1), r(2)]).expect("spec"),
            FiberMode::IrreducibleTensor,
        ),
        (ProblemSpec::new_weyl(2, p(&[2, 1]), vec![r(0)], vec![3]).expect("spec"), FiberMode::Weyl),
        (
            ProblemSpec::new_tensor(2, vec![p(&[1]); 2], p(&[1, 1]), vec![r(1), r(-1)]).expect("spec"),
            FiberMode::IrreducibleTensor,
        ),
    ]
}

fn verify(
    suite: Suite,
    n_gl: Option<usize>,
    n: Option<usize>,
    files: &[PathBuf],
    jobs: usize,
    seed: u64,
    max_degree: usize,
) -> Result<Vec<Report>> {
    let mut reports = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        reports.push(match (n_gl, n) {
            (Some(ng), Some(n)) => {
                if ng > 3 || n > 4 {
                    return Err(Error::GuardExceeded("identity suite is bounded by N ≤ 3, n ≤ 4".into()));
                }
                let pts: Vec<Rational> = (0..n as i64).map(|k| Rational::from_integer(k.into())).collect();
                suite_identities(ng, &pts)?
            }
            _ => suite_identities_all(n_gl.unwrap_or(3), n.unwrap_or(4), seed)?,
        });
    }
    if matches!(suite, Suite::Characters | Suite::All) {
        let ns: Vec<usize> = match n_gl {
            Some(k) => vec![k],
            None => vec![1, 2, 3],
        };
        let mut r = Report::new("characters");
        for k in ns {
            r.checks.extend(suite_characters(k, n.unwrap_or(6), max_degree)?.checks);
        }
        reports.push(r);
    }
    if matches!(suite, Suite::Correspondence | Suite::All) {
        if suite == Suite::Correspondence && files.is_empty() {
            return Err(Error::InvalidInput("the correspondence suite needs --file".into()));
        }
        let mut problems: Vec<(String, ProblemSpec, FiberMode, SpectrumOptions)> = Vec::new();
        for f in files {
            let input = ProblemFile::read(f)?;
            problems.push((f.display().to_string(), input.to_spec()?, input.fiber_mode(), input.spectrum_options()));
        }
        if suite == Suite::All {
            for (k, (spec, mode)) in bundled_problems().into_iter().enumerate() {
                problems.push((format!("bundled problem {k}"), spec, mode, SpectrumOptions::default()));
            }
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        let results: Vec<Result<Report>> = pool.install(|| {
            problems
                .par_iter()
                .map(|(name, spec, mode, opts)| {
                    let mut r = suite_correspondence(spec, *mode, opts)?;
                    r.suite = format!("correspondence: {name}");
                    Ok(r)
                })
                .collect()
        });
        for r in results {
            reports.push(r?);
        }
    }
    Ok(reports)
}

/// A normalized problem as a problem file.
pub fn problem_file_of(spec: &ProblemSpec) -> ProblemFile {
    ProblemFile {
        n_gl: spec.n_gl,
        lambda_list: Some(spec.lambda_list.iter().map(|p| p.parts().to_vec()).collect()),
        lambda: spec.lambda.parts().to_vec(),
        points: spec.points.iter().map(format_rational).collect(),
        mults: None,
        a: None,
        module: None,
        mode: Mode::default(),
        seed: 7,
        tol: None,
        max_q_degree: None,
    }
}
