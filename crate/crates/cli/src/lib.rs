//! Batch front end: reads presentation files, runs a pipeline, and prints a
//! text, structured or LaTeX report.
//!
//! Exit status: 0 on success, 1 when a check fails or the input is
//! rejected, 2 when a computation bound is exceeded, 3 on I/O or parse
//! errors.

pub mod cache;
pub mod latex;
pub mod bundled;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vstar_core::hopf::PresentationFile;
use vstar_core::psi::CohomologyGeneratorSet;
use vstar_core::{Error, GroebnerConfig};

use crate::cache::{Cache, Lookup};
use crate::bundled::{first_difference, JobStatus, ReproduceDoc, Status};
use crate::report::{Bounds, Document};

pub const CACHE_ENV: &str = "VSTAR_CACHE_DIR";

/// Sorted keys, two-space indentation, trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "vstar", version, about = "Graded one-parameter subgroups and cohomology of graded group schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Height r of the one-parameter subgroups (at least the height of the input).
    #[arg(short = 'r', long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub height: Option<u32>,
    /// Internal weight bound: certificate weight for embed and vr, resolution
    /// cutoff for cohomology, evidence degree for psi-match.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    pub max_weight: Option<i64>,
    /// Most S-pairs a single Gröbner basis computation may process.
    #[arg(long, global = true, default_value_t = GroebnerConfig::default().max_pairs as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_spairs: u64,
    /// Largest weight of an S-pair considered.
    #[arg(long, global = true, default_value_t = GroebnerConfig::default().max_weight,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub groebner_weight: u32,
    /// Resolution depth N for cohomology.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub depth: Option<u32>,
    /// Largest total degree of a candidate image monomial in psi-match.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub matcher_bound: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Hopf algebra axioms and report height and classification.
    Validate { input: PathBuf },
    /// Embed into GL_I through a finite subcomodule.
    Embed { input: PathBuf },
    /// Compute the bigraded ring of V*_r and its F-isomorphic reduction.
    Vr { input: PathBuf },
    /// Bigraded cohomology dimensions through a minimal resolution.
    Cohomology { input: PathBuf },
    /// Match cohomology generators against the reduced ring of V*_r.
    PsiMatch {
        input: PathBuf,
        /// Cohomology generator set (JSON).
        #[arg(long)]
        cohomology: PathBuf,
        /// Use `generator=image` instead of the matched images.
        #[arg(long = "assign", value_parser = parse_assignment)]
        assign: Vec<(String, String)>,
    },
    /// Run the bundled examples and compare against the stored outputs.
    ReproducePaper {
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Write every structured output here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Overwrite the stored outputs with the current ones.
        #[arg(long)]
        bless: bool,
    },
}

fn parse_assignment(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(g, f)| (g.trim().to_string(), f.trim().to_string()))
        .ok_or_else(|| format!("expected generator=image, got `{s}`"))
}

/// A fully resolved job: the command, its inputs and the bounds it runs
/// under.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: String,
    pub input: Option<PathBuf>,
    pub bounds: Bounds,
    pub format: Format,
    pub cache: Cache,
}

impl JobConfig {
    pub fn new(command: &str, input: Option<PathBuf>, options: &Options) -> Self {
        let dir = if options.no_cache { None } else { options.cache_dir.clone() };
        JobConfig {
            command: command.into(),
            input,
            bounds: Bounds {
                max_spairs: options.max_spairs as usize,
                groebner_weight: options.groebner_weight,
                height: options.height,
                max_weight: options.max_weight,
                depth: options.depth,
                matcher_bound: options.matcher_bound,
            },
            format: options.format,
            cache: Cache::new(dir),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UnknownIdentifier(_) => 3,
            Error::BoundExceeded { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 3,
            message: e.to_string(),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let src = fs::read_to_string(path)
        .map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })?;
    serde_json::from_str(&src)
        .map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })
}

fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Text => doc.text(),
        Format::Structured => canonical_json(doc),
        Format::Latex => doc.latex(),
    }
}

#[derive(Serialize)]
struct CacheKey<'a, T: Serialize> {
    version: &'a str,
    command: &'a str,
    bounds: &'a Bounds,
    inputs: T,
}

fn cached(
    cfg: &JobConfig,
    inputs: impl Serialize,
    stderr: &mut String,
    compute: impl FnOnce() -> Result<Document, Failure>,
) -> Result<Document, Failure> {
    let key = Cache::key(&CacheKey {
        version: env!("CARGO_PKG_VERSION"),
        command: &cfg.command,
        bounds: &cfg.bounds,
        inputs,
    });
    let (doc, lookup) = cfg.cache.get_or_compute(&key, compute)?;
    match lookup {
        Lookup::Hit => stderr.push_str(&format!("cache hit {key}\n")),
        Lookup::Miss => stderr.push_str(&format!("cache miss {key}\n")),
        Lookup::Corrupt => stderr.push_str(&format!("cache entry {key} unreadable, recomputed\n")),
        Lookup::Disabled => {}
    }
    Ok(doc)
}

fn execute(command: &Command, cfg: &JobConfig, stderr: &mut String) -> Result<(i32, String), Failure> {
    let input = || -> Result<PresentationFile, Failure> { read_json(cfg.input.as_ref().unwrap()) };
    let b = &cfg.bounds;
    let doc = match command {
        Command::Validate { .. } => {
            let f = input()?;
            cached(cfg, &f, stderr, || Ok(Document::Validate(report::validate(&f, b)?)))?
        }
        Command::Embed { .. } => {
            let f = input()?;
            cached(cfg, &f, stderr, || Ok(Document::Embed(report::embed(&f, b)?)))?
        }
        Command::Vr { .. } => {
            let f = input()?;
            cached(cfg, &f, stderr, || Ok(Document::Vr(report::vr(&f, b)?)))?
        }
        Command::Cohomology { .. } => {
            let f = input()?;
            cached(cfg, &f, stderr, || Ok(Document::Cohomology(report::cohomology(&f, b)?)))?
        }
        Command::PsiMatch { cohomology, assign, .. } => {
            let f = input()?;
            let h: CohomologyGeneratorSet = read_json(cohomology)?;
            let assign = (!assign.is_empty()).then_some(assign.as_slice());
            cached(cfg, (&f, &h, assign), stderr, || {
                Ok(Document::Psi(report::psi(&f, &h, assign, b)?))
            })?
        }
        Command::ReproducePaper { golden_dir, out_dir, bless } => {
            return reproduce(cfg, golden_dir.as_deref(), out_dir.as_deref(), *bless, stderr);
        }
    };
    let code = if doc.passed() { 0 } else { 1 };
    Ok((code, render(&doc, cfg.format)))
}

fn reproduce(
    cfg: &JobConfig,
    golden: Option<&Path>,
    out_dir: Option<&Path>,
    bless: bool,
    stderr: &mut String,
) -> Result<(i32, String), Failure> {
    let golden = golden.map(Path::to_path_buf).unwrap_or_else(bundled::golden_dir);
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
    }
    if bless {
        fs::create_dir_all(&golden)?;
    }
    let mut statuses = Vec::new();
    for (name, job) in bundled::jobs() {
        let job_cfg = JobConfig {
            command: format!("reproduce-paper/{name}"),
            ..cfg.clone()
        };
        let result = cached(&job_cfg, name, stderr, || Ok(job.run(&cfg.bounds)?));
        let actual = match result {
            Ok(doc) => canonical_json(&doc),
            Err(e) => {
                statuses.push(JobStatus {
                    name: name.into(),
                    status: Status::Failed,
                    detail: Some(e.message),
                });
                continue;
            }
        };
        if let Some(dir) = out_dir {
            fs::write(dir.join(format!("{name}.json")), &actual)?;
        }
        let path = golden.join(format!("{name}.json"));
        let (status, detail) = if bless {
            fs::write(&path, &actual)?;
            (Status::Blessed, None)
        } else {
            match fs::read_to_string(&path) {
                Err(_) => (Status::Missing, Some(path.display().to_string())),
                Ok(expected) => match first_difference(&expected, &actual) {
                    None => (Status::Match, None),
                    Some(d) => (Status::Differs, Some(d)),
                },
            }
        };
        statuses.push(JobStatus {
            name: name.into(),
            status,
            detail,
        });
    }
    let passed = statuses
        .iter()
        .all(|s| matches!(s.status, Status::Match | Status::Blessed));
    let doc = ReproduceDoc {
        bounds: cfg.bounds.clone(),
        jobs: statuses,
        passed,
    };
    let out = match cfg.format {
        Format::Structured => canonical_json(&doc),
        _ => doc.text(),
    };
    Ok((if passed { 0 } else { 1 }, out))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (name, input) = match &cli.command {
        Command::Validate { input } => ("validate", Some(input)),
        Command::Embed { input } => ("embed", Some(input)),
        Command::Vr { input } => ("vr", Some(input)),
        Command::Cohomology { input } => ("cohomology", Some(input)),
        Command::PsiMatch { input, .. } => ("psi-match", Some(input)),
        Command::ReproducePaper { .. } => ("reproduce-paper", None),
    };
    let cfg = JobConfig::new(name, input.cloned(), &cli.options);
    let mut stderr = String::new();
    match execute(&cli.command, &cfg, &mut stderr) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr },
        Err(f) => {
            stderr.push_str(&format!("error: {}\n", f.message));
            Outcome {
                code: f.code,
                stdout: String::new(),
                stderr,
            }
        }
    }
}
