//! The `polmod` command line.

// Ring dispatch expands one body per ring type; some are `Copy`, some not.
#![allow(clippy::clone_on_copy)]

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::check::{run_checks, CheckConfig};
use crate::embedding::{
    build_embedding, verify_certificate, BuildConfig, CertificateJson, EmbeddingCertificate, ModuleDescriptor,
    SequenceModule,
};
use crate::error::{Error, ExceedsCap, Result};
use crate::l1::{format_rational, kernel_membership, l1_norm, parse_rational, quotient_map, L1Vector, SequenceWeights};
use crate::norm::{quotient_norm, DiscreteNorm, NormBall, NormConvention, RingNorm, TermNorm};
use crate::pid::{distinguish_primes, factor_ideal, prime_embedding, PidIdeal};
use crate::ring::{
    EuclideanDomain, Integers, PolyGf, PolyQuotient, Presentation, PrincipalIdealRing, Rationals, Ring,
    RingDescriptor, WeightConfig, Zmod,
};
use crate::witnesses::{chi_prefix, erdos_escape_witness, independence_check, RankField, RationalEnumeration};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_BUILD: i32 = 3;
pub const EXIT_PROPERTY: i32 = 4;

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "POLMOD_THREADS";

#[derive(Debug, Parser)]
#[command(name = "polmod", version, about = "Proper norms, l1 modules and certified embeddings over countable rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norms of ring elements with a minimal witness term.
    Norm(NormArgs),
    /// All elements of norm at most the radius.
    Ball(BallArgs),
    /// Quotient norms `min |r + i|` over an ideal.
    Qnorm(QnormArgs),
    /// Sequence-module arithmetic.
    #[command(subcommand)]
    L1(L1Command),
    /// Ideal factorization and the induced maps.
    #[command(subcommand)]
    Pid(PidCommand),
    /// Runs the embedding builder on a JSON configuration.
    Build(BuildArgs),
    /// Replays a certificate written by `build`.
    Verify(VerifyArgs),
    /// Characteristic vectors of rational cuts.
    Chi(ChiArgs),
    /// An element escaping a given neighbourhood past a prefix.
    ErdosWitness(ErdosArgs),
    /// Norm axioms, l1 laws and ideal arithmetic on a ball.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DocFormat {
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerationArg {
    Height,
    CalkinWilf,
}

impl From<EnumerationArg> for RationalEnumeration {
    fn from(e: EnumerationArg) -> Self {
        match e {
            EnumerationArg::Height => RationalEnumeration::Height,
            EnumerationArg::CalkinWilf => RationalEnumeration::CalkinWilf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Term,
    Discrete,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// `Z`, `Q`, `Zmod6`, `GF5`, `PolyGF2`, `PolyGF2/(x^2+x+1)` or the JSON form.
    #[arg(long)]
    pub ring: RingDescriptor,
    /// Weight table as JSON, e.g. `{"scale": 2, "overrides": {"3": 2}}`.
    #[arg(long)]
    pub weights: Option<String>,
}

impl RingArgs {
    fn weight_config(&self) -> Result<Option<WeightConfig>> {
        self.weights
            .as_deref()
            .map(|s| serde_json::from_str(s).map_err(|e| Error::Config(format!("--weights: {e}"))))
            .transpose()
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, default_value_t = 64)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub header: bool,
    #[arg(required = true, allow_hyphen_values = true)]
    pub elements: Vec<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BallArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub radius: u64,
    /// Add a column with a minimal witness term in prefix notation.
    #[arg(long)]
    pub witnesses: bool,
    #[arg(long)]
    pub header: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct QnormArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Generator of the ideal.
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: String,
    #[arg(long, default_value_t = 64)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub header: bool,
    #[arg(required = true, allow_hyphen_values = true)]
    pub elements: Vec<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Vectors are written `k:r,k:r,…` (e.g. `0:3,2:-1/2`) or as JSON entry
/// lists `[[0,"3"],[2,"-1/2"]]`.
#[derive(Debug, Subcommand)]
pub enum L1Command {
    /// `Σ |r_k| / k!`.
    Norm {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, default_value_t = 64)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    Add {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    Scale {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        scalar: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    /// Coordinatewise reduction modulo an ideal.
    Quot {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
}

#[derive(Debug, Subcommand)]
pub enum PidCommand {
    /// Splits `I = 𝔭·s` with the least prime divisor.
    Factor {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    /// Maps a vector over `R/𝔭` into `R/I` by multiplying with `s`.
    Embed {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    /// An annihilator obstruction separating two prime ideals.
    Distinguish {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        #[arg(long, allow_hyphen_values = true)]
        second: String,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// JSON build configuration.
    #[arg(long)]
    pub config: PathBuf,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub certificate: PathBuf,
    /// Replay bound overriding the certificate's `verify_bound`.
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long, value_enum, default_value_t = DocFormat::Pretty)]
    pub format: DocFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct ChiArgs {
    #[command(subcommand)]
    pub command: Option<ChiCommand>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, value_enum, default_value_t = EnumerationArg::Height)]
    pub enumeration: EnumerationArg,
    #[arg(long, value_enum, default_value_t = DocFormat::Json)]
    pub format: DocFormat,
}

#[derive(Debug, Subcommand)]
pub enum ChiCommand {
    /// Rank of the prefix matrix of several characteristic vectors.
    Independence {
        /// Comma-separated distinct rationals.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long)]
        window: usize,
        #[arg(long, value_enum, default_value_t = EnumerationArg::Height)]
        enumeration: EnumerationArg,
        /// `q` for the rationals or a prime `p`.
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
}

#[derive(Debug, Args)]
pub struct ErdosArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Comma-separated prefix `r_0,…,r_{n-1}`; empty for `n = 0`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub prefix: String,
    #[arg(long)]
    pub eps: String,
    #[arg(long, default_value_t = 256)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = DocFormat::Json)]
    pub format: DocFormat,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub radius: u64,
    #[arg(long, value_enum, default_value_t = NormArg::Term)]
    pub norm: NormArg,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = DocFormat::Json)]
    pub format: DocFormat,
}

/// What a command produced: text for standard output and an exit code.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
    pub output: Option<PathBuf>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK, output: None }
    }

    fn to(mut self, output: &Option<PathBuf>) -> Self {
        self.output = output.clone();
        self
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ExceedsCap { .. } | Error::CoordinateExceedsCap { .. } => EXIT_CAP,
        Error::Construction(_) | Error::InconsistentFactor(_) => EXIT_BUILD,
        Error::WindowTooSmall { .. } => EXIT_PROPERTY,
        _ => EXIT_CONFIG,
    }
}

/// Applies `POLMOD_THREADS` to the global worker pool.
pub fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Config(format!("{THREADS_VAR}: {e}")))
}

/// Parses arguments, runs the command and writes its output; returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{rendered}") } else { write!(stderr, "{rendered}") };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(stderr, "error: {e}");
        return exit_code(&e);
    }
    match run(&cli.command) {
        Ok(outcome) => {
            let written = match &outcome.output {
                Some(path) => std::fs::write(path, &outcome.text)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display()))),
                None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| Error::Config(e.to_string())),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_CONFIG;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

macro_rules! with_ring {
    ($desc:expr, |$ring:ident| $body:expr) => {
        match $desc {
            RingDescriptor::Z => {
                let $ring = Integers;
                $body
            }
            RingDescriptor::Q => {
                let $ring = Rationals;
                $body
            }
            RingDescriptor::Zmod(n) => {
                let $ring = Zmod::new(*n)?;
                $body
            }
            RingDescriptor::GF(p) => {
                let $ring = Zmod::prime_field(*p)?;
                $body
            }
            RingDescriptor::PolyGF(p) => {
                let $ring = PolyGf::new(*p)?;
                $body
            }
            RingDescriptor::PolyGFQuotient { p, modulus } => {
                let $ring = poly_quotient(*p, modulus)?;
                $body
            }
        }
    };
}

macro_rules! with_euclidean {
    ($desc:expr, |$ring:ident| $body:expr) => {
        match $desc {
            RingDescriptor::Z => {
                let $ring = Integers;
                $body
            }
            RingDescriptor::PolyGF(p) => {
                let $ring = PolyGf::new(*p)?;
                $body
            }
            other => Err(Error::Unsupported(format!("{other} is not a Euclidean domain with quotients"))),
        }
    };
}

fn poly_quotient(p: u64, modulus: &str) -> Result<PolyQuotient> {
    let base = PolyGf::new(p)?;
    PolyQuotient::new(p, &base.decode(modulus)?)
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Norm(a) => with_ring!(&a.ring.ring, |ring| cmd_norm(ring, a)),
        Command::Ball(a) => with_ring!(&a.ring.ring, |ring| cmd_ball(ring, a)),
        Command::Qnorm(a) => with_ring!(&a.ring.ring, |ring| cmd_qnorm(ring, a)),
        Command::L1(c) => cmd_l1(c),
        Command::Pid(c) => cmd_pid(c),
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Chi(a) => cmd_chi(a),
        Command::ErdosWitness(a) => with_ring!(&a.ring.ring, |ring| cmd_erdos(ring, a)),
        Command::Check(a) => with_ring!(&a.ring.ring, |ring| cmd_check(ring, a)),
    }
}

fn cap_error<R: Ring>(ring: &R, r: &R::Elem, e: ExceedsCap) -> Error {
    Error::ExceedsCap { element: ring.encode(r), cap: e.cap }
}

fn render<T: Serialize>(value: &T, format: DocFormat) -> String {
    let mut s = match format {
        DocFormat::Json => serde_json::to_string(value),
        DocFormat::Pretty => serde_json::to_string_pretty(value),
    }
    .expect("output values serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Rows of string cells rendered as CSV, a JSON array of objects, or
/// aligned columns.
fn render_table(columns: &[&str], rows: &[Vec<String>], format: TableFormat, header: bool) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            if header {
                out.push_str(&columns.join(","));
                out.push('\n');
            }
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        TableFormat::Json => {
            let objects: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|row| columns.iter().zip(row).map(|(c, v)| (c.to_string(), json!(v))).collect())
                .collect();
            out = serde_json::to_string_pretty(&objects).expect("tables serialize");
            out.push('\n');
        }
        TableFormat::Pretty => {
            let widths: Vec<usize> = (0..columns.len())
                .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([columns[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(columns.to_vec()));
            for row in rows {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}

fn presentation<R: Ring>(ring: R, args: &RingArgs) -> Result<Presentation<R>> {
    Presentation::with_weights(ring, args.weight_config()?.as_ref())
}

fn cmd_norm<R: Ring>(ring: R, a: &NormArgs) -> Result<Outcome> {
    let mut ball = NormBall::new(presentation(ring.clone(), &a.ring)?);
    let mut rows = Vec::with_capacity(a.elements.len());
    for s in &a.elements {
        let r = ring.decode(s)?;
        while ball.entry(&r).is_none() {
            if ball.radius() >= a.cap {
                return Err(cap_error(&ring, &r, ExceedsCap { cap: a.cap }));
            }
            ball.grow_one();
        }
        let entry = ball.entry(&r).expect("found above");
        rows.push(vec![ring.encode(&r), entry.norm.to_string(), entry.witness.to_prefix(&ring)]);
    }
    let text = render_table(&["element", "norm", "witness"], &rows, a.format, a.header);
    Ok(Outcome::ok(text).to(&a.out.output))
}

fn cmd_ball<R: Ring>(ring: R, a: &BallArgs) -> Result<Outcome> {
    let mut ball = NormBall::new(presentation(ring.clone(), &a.ring)?);
    ball.grow_to(a.radius);
    let mut rows = Vec::with_capacity(ball.len());
    for j in 0..=a.radius {
        for r in ball.level(j) {
            let mut row = vec![ring.encode(r), j.to_string()];
            if a.witnesses {
                row.push(ball.entry(r).expect("levels list ball elements").witness.to_prefix(&ring));
            }
            rows.push(row);
        }
    }
    let columns: &[&str] = if a.witnesses { &["element", "norm", "witness"] } else { &["element", "norm"] };
    Ok(Outcome::ok(render_table(columns, &rows, a.format, a.header)).to(&a.out.output))
}

fn cmd_qnorm<R: PrincipalIdealRing>(ring: R, a: &QnormArgs) -> Result<Outcome> {
    let p = presentation(ring.clone(), &a.ring)?;
    let ideal = PidIdeal::parse(ring.clone(), &a.ideal)?;
    let mut rows = Vec::with_capacity(a.elements.len());
    for s in &a.elements {
        let r = ring.decode(s)?;
        let v = quotient_norm(&p, &ideal, &r, a.cap).map_err(|e| cap_error(&ring, &r, e))?;
        rows.push(vec![ring.encode(&r), ideal.to_string(), v.to_string()]);
    }
    let text = render_table(&["element", "ideal", "quotient_norm"], &rows, a.format, a.header);
    Ok(Outcome::ok(text).to(&a.out.output))
}

/// Parses `k:r,k:r` or a JSON list of `[k, "r"]` pairs.
pub fn parse_vector<R: Ring>(ring: &R, s: &str) -> Result<L1Vector<R>> {
    let t = s.trim();
    if t.starts_with('[') {
        let entries: Vec<(usize, String)> =
            serde_json::from_str(t).map_err(|e| Error::Config(format!("vector {s:?}: {e}")))?;
        let decoded = entries
            .iter()
            .map(|(k, r)| Ok((*k, ring.decode(r)?)))
            .collect::<Result<Vec<_>>>()?;
        return L1Vector::from_entries(ring.clone(), decoded);
    }
    let mut entries = Vec::new();
    for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, r) = part
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("vector entry {part:?} is not of the form k:r")))?;
        let k: usize = k.trim().parse().map_err(|_| Error::Config(format!("bad index in {part:?}")))?;
        entries.push((k, ring.decode(r.trim())?));
    }
    L1Vector::from_entries(ring.clone(), entries)
}

fn term_norm<R: Ring>(ring: R, args: &RingArgs, cap: u64) -> Result<TermNorm<R>> {
    Ok(TermNorm::new(presentation(ring, args)?, cap))
}

fn cmd_l1(c: &L1Command) -> Result<Outcome> {
    match c {
        L1Command::Norm { ring, vector, cap, format } => with_ring!(&ring.ring, |r| {
            let v = parse_vector(&r, vector)?;
            let norm = term_norm(r.clone(), ring, *cap)?;
            let value = l1_norm(&v, &norm, &SequenceWeights::Factorial)?;
            Ok(Outcome::ok(render(&json!({"vector": v.to_json(), "norm": format_rational(&value)}), *format)))
        }),
        L1Command::Add { ring, left, right, format } => with_ring!(&ring.ring, |r| {
            let sum = parse_vector(&r, left)?.add(&parse_vector(&r, right)?)?;
            Ok(Outcome::ok(render(&sum.to_json(), *format)))
        }),
        L1Command::Scale { ring, scalar, vector, format } => with_ring!(&ring.ring, |r| {
            let s = r.decode(scalar)?;
            let scaled = parse_vector(&r, vector)?.scale(&s);
            Ok(Outcome::ok(render(&scaled.to_json(), *format)))
        }),
        L1Command::Quot { ring, ideal, vector, format } => with_euclidean!(&ring.ring, |r| {
            let i = PidIdeal::parse(r.clone(), ideal)?;
            let v = parse_vector(&r, vector)?;
            let image = quotient_map(&v, &i)?;
            let doc = json!({
                "ideal": i.to_string(),
                "image": image.to_json(),
                "in_kernel": kernel_membership(&v, &i),
            });
            Ok(Outcome::ok(render(&doc, *format)))
        }),
    }
}

fn cmd_pid(c: &PidCommand) -> Result<Outcome> {
    match c {
        PidCommand::Factor { ring, ideal, format } => with_euclidean!(&ring.ring, |r| {
            let f = factor_ideal(&PidIdeal::parse(r, ideal)?)?;
            Ok(Outcome::ok(render(&f.to_json(), *format)))
        }),
        PidCommand::Embed { ring, ideal, vector, format } => with_euclidean!(&ring.ring, |r| {
            pid_embed(r, ideal, vector, *format)
        }),
        PidCommand::Distinguish { ring, first, second, format } => with_euclidean!(&ring.ring, |r| {
            let p = PidIdeal::parse(r.clone(), first)?;
            let q = PidIdeal::parse(r, second)?;
            let d = distinguish_primes(&p, &q)?;
            Ok(Outcome::ok(render(&d.to_json(&p, &q), *format)))
        }),
    }
}

fn pid_embed<R: EuclideanDomain>(ring: R, ideal: &str, vector: &str, format: DocFormat) -> Result<Outcome> {
    let f = factor_ideal(&PidIdeal::parse(ring.clone(), ideal)?)?;
    let source = ring.quotient_by(f.prime().generator())?;
    let v = parse_vector(&source, vector)?;
    let image = prime_embedding(&f, &v)?;
    let doc = json!({"factor": f.to_json(), "source": v.to_json(), "image": image.to_json()});
    Ok(Outcome::ok(render(&doc, format)))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn cmd_build(a: &BuildArgs) -> Result<Outcome> {
    let config: BuildConfig = serde_json::from_str(&read_file(&a.config)?)
        .map_err(|e| Error::Config(format!("{}: {e}", a.config.display())))?;
    config.validate()?;
    with_ring!(&config.module.ring, |ring| {
        let module = SequenceModule::new(ring, config.module.clone(), config.submodule.clone())?;
        let cert = build_embedding(&module, &config)?;
        Ok(Outcome::ok(cert.to_json().to_pretty() + "\n").to(&a.out.output))
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let json = CertificateJson::parse(&read_file(&a.certificate)?)?;
    let descriptor: ModuleDescriptor = json.header.module.clone();
    with_ring!(&descriptor.ring, |ring| {
        let module = SequenceModule::new(ring.clone(), descriptor.clone(), json.header.submodule.clone())?;
        let mut cert = EmbeddingCertificate::from_json(ring, &json)?;
        if let Some(b) = a.bound {
            if b == 0 {
                return Err(Error::Config("--bound must be positive".into()));
            }
            cert.verify_bound = b;
        }
        let report = verify_certificate(&module, &cert)?;
        let text = match a.format {
            DocFormat::Pretty => format!("{report}\n"),
            DocFormat::Json => render(&json!({"passed": report.passed(), "report": report}), DocFormat::Json),
        };
        let code = if report.passed() { EXIT_OK } else { EXIT_BUILD };
        Ok(Outcome { text, code, output: a.out.output.clone() })
    })
}

fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(parse_rational).collect()
}

fn cmd_chi(a: &ChiArgs) -> Result<Outcome> {
    match &a.command {
        Some(ChiCommand::Independence { params, window, enumeration, field, format }) => {
            let params = parse_rational_list(params)?;
            let field = match field.trim() {
                "q" | "Q" => RankField::Rationals,
                p => RankField::Prime(
                    p.parse().map_err(|_| Error::Config(format!("--field must be q or a prime, got {p:?}")))?,
                ),
            };
            let cert = independence_check(&params, *window, (*enumeration).into(), field)?;
            let doc = json!({"independent": cert.rank == params.len(), "certificate": cert});
            let code = if cert.rank == params.len() { EXIT_OK } else { EXIT_PROPERTY };
            Ok(Outcome { text: render(&doc, *format), code, output: None })
        }
        None => {
            let x = a.x.as_deref().ok_or_else(|| Error::Config("chi needs --x".into()))?;
            let window = a.window.ok_or_else(|| Error::Config("chi needs --window".into()))?;
            let chi = chi_prefix(&parse_rational(x)?, window, a.enumeration.into(), 1);
            let doc = json!({
                "x": format_rational(&chi.x),
                "window": window,
                "enumeration": chi.enumeration,
                "bits": chi.bit_string(),
                "support": chi.support().collect::<Vec<_>>(),
                "tail_bound": format_rational(&chi.tail_bound),
            });
            Ok(Outcome::ok(render(&doc, a.format)))
        }
    }
}

fn cmd_erdos<R: Ring>(ring: R, a: &ErdosArgs) -> Result<Outcome> {
    let norm = term_norm(ring.clone(), &a.ring, a.cap)?;
    let prefix = a
        .prefix
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| ring.decode(p))
        .collect::<Result<Vec<_>>>()?;
    let eps = parse_rational(&a.eps)?;
    let (_, witness) = erdos_escape_witness(&norm, &prefix, &eps)?;
    Ok(Outcome::ok(render(&witness, a.format)))
}

fn cmd_check<R: PrincipalIdealRing>(ring: R, a: &CheckArgs) -> Result<Outcome> {
    let norm: Box<dyn RingNorm<R>> = match a.norm {
        NormArg::Term => Box::new(term_norm(ring.clone(), &a.ring, a.radius.saturating_mul(a.radius).max(a.radius))?),
        NormArg::Discrete => {
            if a.ring.weights.is_some() {
                return Err(Error::Config("the discrete norm takes no weight table".into()));
            }
            Box::new(DiscreteNorm::new(ring.clone())?)
        }
    };
    let convention = match a.norm {
        NormArg::Term => NormConvention::Term,
        NormArg::Discrete => NormConvention::Discrete,
    };
    let mut config = CheckConfig::new(a.radius);
    config.samples = a.samples;
    config.seed = a.seed;
    let report = run_checks(norm.as_ref(), &config).map_err(|e| Error::ExceedsCap {
        element: format!("an element of the radius-{} ball of {}", a.radius, ring.descriptor()),
        cap: e.cap,
    })?;
    let doc = json!({"ring": ring.descriptor().to_string(), "norm": convention, "report": report});
    let code = if report.passed { EXIT_OK } else { EXIT_PROPERTY };
    Ok(Outcome { text: render(&doc, a.format), code, output: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(std::iter::once("polmod").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn norm_table() {
        let (code, out, _) = run_args(&["norm", "--ring", "Z", "--header", "4", "-3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "element,norm,witness\n4,5,4\n-3,4,-3\n");
    }

    #[test]
    fn ball_csv() {
        let (code, out, _) = run_args(&["ball", "--ring", "Zmod6", "--radius", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0,0\n1,2\n5,2\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["norm", "--ring", "Zmod1", "3"]).0, EXIT_CONFIG);
        assert_eq!(run_args(&["norm", "--ring", "W", "3"]).0, EXIT_CONFIG);
        assert_eq!(run_args(&["bogus"]).0, EXIT_CONFIG);
        assert_eq!(run_args(&["norm", "--ring", "Z", "--cap", "5", "100"]).0, EXIT_CAP);
        assert_eq!(run_args(&["check", "--ring", "Z", "--radius", "5", "--samples", "50"]).0, EXIT_OK);
    }

    #[test]
    fn vectors_parse() {
        let v = parse_vector(&Rationals, "0:3, 2:-1/2").unwrap();
        assert_eq!(v, parse_vector(&Rationals, r#"[[0,"3"],[2,"-1/2"]]"#).unwrap());
        assert!(parse_vector(&Integers, "0:1,0:2").is_err());
    }

    #[test]
    fn pid_commands() {
        let (code, out, _) = run_args(&["pid", "factor", "--ring", "Z", "--ideal", "12"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""prime":"(2)""#), "{out}");
        let (code, out, _) = run_args(&["pid", "embed", "--ring", "Z", "--ideal", "12", "--vector", "0:1"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""image":{"entries":[[0,"6"]],"ring":{"Zmod":12}}"#), "{out}");
        assert_eq!(run_args(&["pid", "factor", "--ring", "Q", "--ideal", "2"]).0, EXIT_CONFIG);
    }
}
