//! Argument parsing and command dispatch for the `quadcert` binary.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadcert_core::field::{Field, FieldKind, PrimeField, DEFAULT_PRIME};
use quadcert_core::quadspace::{quadric_basis, SamplingPolicy};
use quadcert_core::varieties::VarietyRep;
use quadcert_core::verifier::{
    assemble, run_checked, suites, ScenarioResult, ScenarioSpec, VerificationReport, VerifyConfig,
};
use quadcert_core::CoreError;

use crate::construct::ConstructSpec;
use crate::formats::{basis_doc, report_csv, report_json, report_text, variety_from_json, variety_to_json, AnyVariety};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CERTIFICATION: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "quadcert", version, about = "Exact a2 computation and certification for projective varieties")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// `rational`, `prime` or `prime:<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Accept primes below 2^30.
    #[arg(long, global = true)]
    pub allow_small_prime: bool,
    /// Defaults to $QC_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a variety from a spec file and write its JSON document.
    Construct { spec: PathBuf },
    /// Compute a2 of a variety file.
    A2 {
        variety: PathBuf,
        #[arg(long)]
        emit_basis: bool,
    },
    /// Run a scenario suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: Option<String>,
    #[arg(long, conflicts_with = "suite")]
    pub all: bool,
    /// Codimension range, e.g. `2..6` or `4`.
    #[arg(long = "c")]
    pub c_range: Option<String>,
    /// Scroll type, e.g. `1,2`.
    #[arg(long = "type")]
    pub scroll_type: Option<String>,
    #[arg(long)]
    pub sweep: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Certification(String),
    Other(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Certification(_) => EXIT_CERTIFICATION,
            CliError::Other(_) => EXIT_FAIL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(s) | CliError::Certification(s) | CliError::Other(s) => s,
        }
    }
}

impl From<crate::formats::FormatError> for CliError {
    fn from(e: crate::formats::FormatError) -> Self {
        CliError::Other(e.to_string())
    }
}

fn from_core(e: CoreError) -> CliError {
    match e {
        CoreError::SpuriousQuadric { .. }
        | CoreError::RetriesExhausted(_)
        | CoreError::Inconsistent(_)
        | CoreError::Unsupported(_) => CliError::Certification(e.to_string()),
        other => CliError::Other(other.to_string()),
    }
}

/// Parses `2..6`, `2..=6` or `4` into an inclusive range.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad range `{s}`"));
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    let r = match s.split_once("..") {
        Some((lo, hi)) => num(lo)?..=num(hi.strip_prefix('=').unwrap_or(hi))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(bad());
    }
    Ok(r)
}

pub fn parse_type(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad scroll type `{s}`"))))
        .collect()
}

impl GlobalOpts {
    fn seed(&self) -> Result<u64, CliError> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var("QC_SEED") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("QC_SEED `{v}` is not an unsigned integer"))),
            Err(_) => Ok(0),
        }
    }

    fn checked_prime(&self, p: u64) -> Result<u64, CliError> {
        let r = if self.allow_small_prime {
            PrimeField::with_override(p)
        } else {
            PrimeField::new(p)
        };
        r.map(|f| f.modulus()).map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Field from `--field` and `--prime`; prime 2147483647 by default.
    fn field_kind(&self) -> Result<FieldKind, CliError> {
        let kind = match self.field.as_deref() {
            None | Some("prime") => FieldKind::Prime(self.prime.unwrap_or(DEFAULT_PRIME)),
            Some(s) => {
                let k = s.parse::<FieldKind>().map_err(|e| CliError::Usage(e.to_string()))?;
                if let (FieldKind::Prime(p), Some(q)) = (k, self.prime) {
                    if p != q {
                        return Err(CliError::Usage(format!("--field {s} conflicts with --prime {q}")));
                    }
                }
                if k == FieldKind::Rationals && self.prime.is_some() {
                    return Err(CliError::Usage("--prime given with --field rational".into()));
                }
                k
            }
        };
        match kind {
            FieldKind::Prime(p) => Ok(FieldKind::Prime(self.checked_prime(p)?)),
            k => Ok(k),
        }
    }
}

fn emit(global: &GlobalOpts, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match &global.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Other(format!("{}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Other(e.to_string())),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

fn cmd_construct(global: &GlobalOpts, spec: &Path, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let spec = ConstructSpec::from_json(&read(spec)?)?;
    let v = spec.build(global.field_kind()?, global.seed()?)?;
    emit(global, stdout, &variety_to_json(&v)?)?;
    let (n, c, d, g) = v.invariants();
    let g = g.map_or("?".to_string(), |g| g.to_string());
    let line = format!("{} over {}: n={n} c={c} d={d} g={g}\n", spec.tag, v.field_kind());
    // keep stdout pure JSON when no output file is given
    let sink: &mut dyn Write = if global.out.is_some() { stdout } else { stderr };
    let _ = sink.write_all(line.as_bytes());
    Ok(EXIT_OK)
}

fn a2_output<F: Field>(v: &VarietyRep<F>, global: &GlobalOpts, emit_basis: bool) -> Result<String, CliError> {
    let b = quadric_basis(v, &SamplingPolicy::default(), global.seed()?).map_err(from_core)?;
    Ok(match global.format {
        OutputFormat::Json => serde_json::to_string_pretty(&basis_doc(&b, emit_basis)).map_err(|e| CliError::Other(e.to_string()))? + "\n",
        OutputFormat::Csv => format!("a2,certification\n{},{}\n", b.a2, b.certification.name()),
        OutputFormat::Text => {
            let mut s = format!("a2 {}\ncertification {}\n", b.a2, b.certification.name());
            if emit_basis {
                for q in &b.quadrics {
                    s.push_str(&q.to_string());
                    s.push('\n');
                }
            }
            s
        }
    })
}

fn cmd_a2(global: &GlobalOpts, path: &Path, emit_basis: bool, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let v = variety_from_json(&read(path)?)?;
    let out = match &v {
        AnyVariety::Rational(v) => a2_output(v, global, emit_basis)?,
        AnyVariety::Prime(v) => a2_output(v, global, emit_basis)?,
    };
    emit(global, stdout, &out)?;
    Ok(EXIT_OK)
}

/// Scenario list for a suite name and the verify flags.
pub fn select_specs(name: &str, args: &VerifyArgs) -> Result<Vec<ScenarioSpec>, CliError> {
    let canon = suites::canonical(name).ok_or_else(|| {
        CliError::Usage(format!("unknown suite `{name}`; known: {}", suites::NAMES.join(", ")))
    })?;
    let range = args.c_range.as_deref().map(parse_range).transpose()?;
    let ty = args.scroll_type.as_deref().map(parse_type).transpose()?;
    let at_least = |r: &RangeInclusive<usize>, min: usize| {
        if *r.start() < min {
            Err(CliError::Usage(format!("suite {canon} needs c >= {min}")))
        } else {
            Ok(())
        }
    };
    let specs = match canon {
        "castelnuovo" => match (&range, &ty) {
            (None, None) => suites::castelnuovo(2..=6),
            (r, t) => {
                let mut v = Vec::new();
                if let Some(r) = r {
                    at_least(r, 1)?;
                    v.extend(r.clone().map(|c| ScenarioSpec::CastelnuovoCurve { c }));
                }
                if let Some(t) = t {
                    v.push(ScenarioSpec::CastelnuovoScroll { scroll_type: t.clone() });
                }
                v
            }
        },
        "fano" => {
            let r = range.unwrap_or(3..=5);
            at_least(&r, 2)?;
            suites::fano(r)
        }
        "curve-witnesses" => {
            let r = range.unwrap_or(4..=5);
            at_least(&r, 4)?;
            suites::curve_witnesses(r)
        }
        "two-normality" => {
            let r = range.unwrap_or(3..=5);
            at_least(&r, 1)?;
            suites::two_normality(r)
        }
        "divisor-difference" => {
            let types = ty.map_or_else(|| vec![vec![1, 2], vec![1, 1, 1]], |t| vec![t]);
            if args.sweep {
                suites::divisor_sweep(&types, 1..=3, -3..=3)
            } else {
                suites::divisor_difference_examples()
                    .into_iter()
                    .filter(|s| matches!(s, ScenarioSpec::DivisorDifference { scroll_type, .. } if types.contains(scroll_type)))
                    .collect()
            }
        }
        "maxreg-baselocus" => {
            let r = range.unwrap_or(4..=5);
            at_least(&r, 4)?;
            suites::maxreg_baselocus(r)
        }
        "gamma-on-curve" => {
            let r = range.unwrap_or(4..=4);
            at_least(&r, 3)?;
            r.flat_map(suites::gamma_on_curve).collect()
        }
        other => suites::default_specs(other).unwrap_or_default(),
    };
    if specs.is_empty() {
        return Err(CliError::Usage(format!("no scenarios selected for {canon}")));
    }
    Ok(specs)
}

/// Runs scenarios on `jobs` threads; the result order follows `specs`.
pub fn run_parallel(specs: &[ScenarioSpec], cfg: &VerifyConfig, jobs: usize) -> Vec<(ScenarioResult, bool)> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<(ScenarioResult, bool)>>> = specs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, specs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= specs.len() {
                    break;
                }
                let r = run_checked(&specs[i], cfg);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every scenario ran"))
        .collect()
}

fn cmd_verify(global: &GlobalOpts, args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let prime = match global.field_kind()? {
        FieldKind::Prime(p) => p,
        FieldKind::Rationals => {
            return Err(CliError::Usage("verify runs over prime fields; drop --field rational".into()))
        }
    };
    let (label, specs) = if args.all {
        let mut specs: Vec<ScenarioSpec> = Vec::new();
        for n in suites::NAMES {
            for s in select_specs(n, args)? {
                if !specs.contains(&s) {
                    specs.push(s);
                }
            }
        }
        ("all".to_string(), specs)
    } else {
        let name = args
            .suite
            .as_deref()
            .ok_or_else(|| CliError::Usage("name a suite or pass --all".into()))?;
        let canon = suites::canonical(name).unwrap_or(name);
        (canon.to_string(), select_specs(name, args)?)
    };
    let cfg = VerifyConfig::new(prime, global.seed()?).map_err(|e| CliError::Usage(e.to_string()))?;
    let jobs = args.jobs.unwrap_or(specs.len());
    let report = assemble(&label, &cfg, run_parallel(&specs, &cfg, jobs));
    emit(global, stdout, &render_report(&report, global.format)?)?;
    Ok(report.exit_code())
}

pub fn render_report(r: &VerificationReport, format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Json => report_json(r)?,
        OutputFormat::Csv => report_csv(r)?,
        OutputFormat::Text => report_text(r),
    })
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Construct { spec } => cmd_construct(&cli.global, spec, stdout, stderr),
        Command::A2 { variety, emit_basis } => cmd_a2(&cli.global, variety, *emit_basis, stdout),
        Command::Verify(args) => cmd_verify(&cli.global, args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "quadcert: {}", e.message());
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6").unwrap(), 2..=6);
        assert_eq!(parse_range("2..=6").unwrap(), 2..=6);
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert!(parse_range("6..2").is_err());
        assert!(parse_range("x").is_err());
        assert_eq!(parse_type("1, 2").unwrap(), vec![1, 2]);
    }

    fn args(c: Option<&str>, ty: Option<&str>, sweep: bool) -> VerifyArgs {
        VerifyArgs {
            suite: None,
            all: false,
            c_range: c.map(Into::into),
            scroll_type: ty.map(Into::into),
            sweep,
            jobs: None,
        }
    }

    #[test]
    fn selection() {
        assert_eq!(select_specs("castelnuovo", &args(Some("2..6"), None, false)).unwrap().len(), 5);
        assert_eq!(select_specs("castelnuovo", &args(None, None, false)).unwrap().len(), 8);
        assert_eq!(select_specs("theorem-1-3", &args(Some("4"), None, false)).unwrap().len(), 3);
        assert!(select_specs("theorem-1-3", &args(Some("3"), None, false)).is_err());
        let sweep = select_specs("divisor-difference", &args(None, Some("1,2"), true)).unwrap();
        assert!(sweep.iter().all(|s| matches!(s, ScenarioSpec::DivisorDifference { scroll_type, .. } if scroll_type == &[1, 2])));
        assert!(select_specs("nope", &args(None, None, false)).is_err());
    }
}
