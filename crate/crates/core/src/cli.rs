//! Batch command-line front end. Each job is a command, a JSON payload and
//! options; the output is a text, JSON or CSV report plus an exit status.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decomposition::{
    check_skeleton_homology, check_spherical_pair, decompose_capped, hyperbolicity_verdict, inertness_verdict,
    skeleton_from_homology, CohomologyRingInput, HomologyDataInput,
};
use crate::error::{Error, Result};
use crate::graded::{CoefficientRing, Field, GradedGroup, PowerSeries};
use crate::hypotheses;
use crate::space::{homology, loop_series, poincare_series, CappedComplexSpec, SpaceExpr};
use crate::splitting::{james_split_half_smash, summand_counts};
use crate::tensor::{loop_homology_presentation, quotient_dims};
use crate::verify::{verify_half_smash, verify_with_presentation};

pub const DEFAULT_TRUNC: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Homology,
    Series,
    LoopSeries,
    Decompose,
    LoopHomology,
    Inertness,
    Hyperbolicity,
    CheckPair,
    Skeleton,
    Split,
    Verify,
}

impl CommandName {
    fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .expect("unit variant")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

fn default_trunc() -> usize {
    DEFAULT_TRUNC
}

fn default_field() -> String {
    "q".to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobOptions {
    #[serde(default = "default_trunc")]
    pub trunc: usize,
    /// `q`, `z`, `fp:<p>` or `zloc:<p,...>` (the listed primes inverted).
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap_degree: Option<usize>,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions {
            trunc: DEFAULT_TRUNC,
            field: default_field(),
            format: Format::Text,
            cap_degree: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobDocument {
    pub command: CommandName,
    pub payload: Value,
    #[serde(default)]
    pub options: JobOptions,
}

/// Result of one job. `json` is the canonical report; `text` and `csv` are
/// renderings of it.
#[derive(Debug, Clone, PartialEq)]
pub struct JobOutcome {
    pub exit_code: i32,
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
}

impl JobOutcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json value") + "\n",
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone().unwrap_or_else(|| self.text.clone()),
        }
    }
}

fn parse<T: serde::de::DeserializeOwned>(payload: &Value) -> Result<T> {
    serde_json::from_value(payload.clone()).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn field_of(options: &JobOptions) -> Result<(CoefficientRing, Option<Field>)> {
    let ring: CoefficientRing = options.field.parse()?;
    let field = ring.as_field();
    Ok((ring, field))
}

/// Field homology is stored as free ranks; its text names the field instead
/// of `Z`. Other rings use the canonical form.
fn homology_text(h: &GradedGroup, ring: &CoefficientRing) -> String {
    let name = match ring.require_field() {
        Ok(Field::Rationals) => "Q".to_string(),
        Ok(Field::Prime(p)) => format!("F_{p}"),
        Err(_) => return h.to_string(),
    };
    h.degrees()
        .filter(|(_, g)| !g.free.is_zero())
        .map(|(d, g)| if g.free.is_one() { format!("{d}: {name}") } else { format!("{d}: {name}^{}", g.free) })
        .collect::<Vec<_>>()
        .join("\n")
}

fn series_csv(s: &PowerSeries) -> String {
    let mut out = String::from("degree,coefficient\n");
    for (d, c) in s.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{d},{c}");
    }
    out
}

/// Payload for `split`.
#[derive(Debug, Deserialize)]
struct SplitPayload {
    #[serde(rename = "A", alias = "a")]
    a: SpaceExpr,
    m: u32,
    nm: u32,
}

/// Payload for the half-smash form of `verify`.
#[derive(Debug, Deserialize)]
struct HalfSmashPayload {
    #[serde(rename = "A", alias = "a")]
    a: SpaceExpr,
    #[serde(rename = "B", alias = "b")]
    b: SpaceExpr,
    #[serde(rename = "Y", alias = "y")]
    y: SpaceExpr,
}

#[derive(Debug, Deserialize)]
struct KPayload {
    k: i64,
}

/// What a command produced before wrapping: report, text, csv, exit code.
struct Produced {
    result: Value,
    text: String,
    csv: Option<String>,
    exit_code: i32,
}

impl Produced {
    fn ok(result: Value, text: String) -> Self {
        Produced {
            result,
            text,
            csv: None,
            exit_code: 0,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn dispatch(job: &JobDocument) -> Result<Produced> {
    let opts = &job.options;
    let n = opts.trunc;
    if n == 0 {
        return Err(Error::Validation("truncation must be at least 1".into()));
    }
    let (ring, field) = field_of(opts)?;
    let need_field = || field.ok_or_else(|| Error::UnsupportedCoefficient(format!("{ring} is not a field")));
    let p = &job.payload;
    Ok(match job.command {
        CommandName::Homology => {
            let e: SpaceExpr = parse(p)?;
            let h = homology(&e, &ring, n)?;
            let text = format!("H_*({e}; {ring}) through degree {n}\n{}\n", homology_text(&h, &ring));
            Produced::ok(json!({ "space": e, "homology": h }), text)
        }
        CommandName::Series | CommandName::LoopSeries => {
            let e: SpaceExpr = parse(p)?;
            let f = need_field()?;
            let (s, label) = if job.command == CommandName::Series {
                (poincare_series(&e, f, n)?, format!("P({e}; {f})"))
            } else {
                (loop_series(&e, f, n)?, format!("P(Ω{e}; {f})"))
            };
            let csv = series_csv(&s);
            Produced::ok(json!({ "space": e, "series": s }), format!("{label} = {s}\n")).with_csv(csv)
        }
        CommandName::Decompose => {
            let spec: CappedComplexSpec = parse(p)?;
            let r = decompose_capped(&spec)?;
            let mut text = format!("{}\n", r.statement);
            if let Some(f) = &r.fiber_normalized {
                let _ = writeln!(text, "fiber normalizes to {f}");
            }
            let _ = writeln!(text, "hypotheses: {}", list(&r.hypotheses_used));
            for note in &r.notes {
                let _ = writeln!(text, "note: {note}");
            }
            Produced::ok(to_value(&r), text)
        }
        CommandName::LoopHomology => {
            let spec: CappedComplexSpec = parse(p)?;
            let f = need_field()?;
            let pres = loop_homology_presentation(&spec, f)?;
            let dims = quotient_dims(&pres, n, opts.cap_degree)?;
            let gens: Vec<String> = pres.generators().iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
            let rels: Vec<String> = pres.relations().iter().map(ToString::to_string).collect();
            let text = format!(
                "H_*(ΩX; {f}) = T({}) / ({})\ndimensions: {dims}\n",
                gens.join(", "),
                rels.join(", ")
            );
            let hyps = [
                hypotheses::DIMENSION_RANGE,
                hypotheses::WHITEHEAD_COMPONENT,
                hypotheses::UNIT_COEFFICIENT,
                hypotheses::SKELETON_CO_H,
                if spec.omega.is_some() { hypotheses::OMEGA_SUPPLIED } else { hypotheses::OMEGA_ZERO },
            ];
            let csv = series_csv(&dims);
            Produced::ok(
                json!({ "presentation": pres, "dims": dims, "hypotheses_used": hyps }),
                text,
            )
            .with_csv(csv)
        }
        CommandName::Inertness => {
            let KPayload { k } = parse(p)?;
            let v = inertness_verdict(k);
            let mut text = if v.inert {
                format!("k = {k}: the top cell attachment is inert\n")
            } else {
                format!("k = {k}: not inert; not locally inert at {}\n", v.non_inert_primes)
            };
            for note in &v.notes {
                let _ = writeln!(text, "note: {note}");
            }
            Produced::ok(to_value(&v), text)
        }
        CommandName::Hyperbolicity => {
            let KPayload { k } = parse(p)?;
            let v = hyperbolicity_verdict(k);
            let text = format!(
                "k = {k}\nrationally hyperbolic: {}\nhyperbolic at: {}\ncokernel rational growth: {}\ncokernel growth at: {}\n",
                if v.rational_hyperbolic { "claimed" } else { "not claimed" },
                v.torsion_claims,
                if v.cokernel_rational { "claimed" } else { "not claimed" },
                v.cokernel_claims
            );
            Produced::ok(to_value(&v), text)
        }
        CommandName::CheckPair => {
            let input: CohomologyRingInput = parse(p)?;
            let r = check_spherical_pair(&input)?;
            let primes: Vec<String> = r.decomposition.excluded_primes.iter().map(|e| e.prime.to_string()).collect();
            let text = format!(
                "m = {}, <a ∪ b, [X]> = {}, quotient by k = {}\nexcluded primes: {}\n{}\n",
                r.m,
                r.pairing,
                r.pairing_over_k,
                list(&primes),
                r.decomposition.statement
            );
            let mut v = to_value(&r);
            v["hypotheses_used"] = to_value(&r.decomposition.hypotheses_used);
            Produced::ok(v, text)
        }
        CommandName::Skeleton => {
            let hd: HomologyDataInput = parse(p)?;
            let r = skeleton_from_homology(&hd)?;
            let check = check_skeleton_homology(&hd, &r)?;
            let primes: Vec<String> = r.excluded_primes.iter().map(|e| e.prime.to_string()).collect();
            let mut text = format!("C = {}\nexcluded primes: {}\n", r.c, list(&primes));
            if check.matches {
                text.push_str("homology of S^m ∨ S^{n-m} ∨ C matches the input\n");
            } else {
                let _ = write!(
                    text,
                    "homology mismatch\ninput:\n{}\nS^m ∨ S^(n-m) ∨ C:\n{}\n",
                    check.expected, check.actual
                );
            }
            let mut v = to_value(&r);
            v["homology_check"] = to_value(&check);
            Produced {
                result: v,
                text,
                csv: None,
                exit_code: if check.matches { 0 } else { 2 },
            }
        }
        CommandName::Split => {
            let SplitPayload { a, m, nm } = parse(p)?;
            let t = james_split_half_smash(&a, m, nm, n)?;
            let counts = summand_counts(&t);
            let mut text = format!("{a} ⋊ Ω(S^{m} × S^{nm}) through degree {n}\n");
            for (d, s, mult) in t.rows() {
                let _ = writeln!(text, "{d}: {s} x{mult}");
            }
            Produced::ok(json!({ "table": t, "counts": counts, "hypotheses_used": [] }), text).with_csv(t.to_csv())
        }
        CommandName::Verify => {
            if p.get("Y").is_some() || p.get("y").is_some() {
                let hs: HalfSmashPayload = parse(p)?;
                let ok = verify_half_smash(&hs.a, &hs.b, &hs.y, &ring, n)?;
                let text = format!(
                    "({} ∨ {}) ⋊ {}: {}\n",
                    hs.a,
                    hs.b,
                    hs.y,
                    if ok { "PASS" } else { "FAIL" }
                );
                return Ok(Produced {
                    result: json!({ "status": if ok { "pass" } else { "fail" }, "hypotheses_used": [] }),
                    text,
                    csv: None,
                    exit_code: if ok { 0 } else { 2 },
                });
            }
            let spec: CappedComplexSpec = parse(p)?;
            let f = need_field()?;
            let pres = loop_homology_presentation(&spec, f)?;
            let r = verify_with_presentation(&spec, &pres, n, opts.cap_degree)?;
            let mut text = match r.first_mismatch_degree {
                None => "PASS\n".to_string(),
                Some(d) => format!("FAIL at degree {d}\n"),
            };
            let _ = write!(text, "path A: {}\npath B: {}\n", r.path_a, r.path_b);
            let mut csv = String::from("degree,path_a,path_b\n");
            for d in 0..=n {
                let _ = writeln!(csv, "{d},{},{}", r.path_a.coeff(d), r.path_b.coeff(d));
            }
            Produced {
                exit_code: if r.passed() { 0 } else { 2 },
                result: to_value(&r),
                text,
                csv: Some(csv),
            }
        }
    })
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "message": e.to_string(), "exit_code": e.exit_code() });
    if let Error::Hypothesis { hypothesis, detail } = e {
        v["hypothesis"] = json!(hypothesis);
        v["description"] = json!(hypotheses::describe(hypothesis));
        v["detail"] = json!(detail);
    }
    v
}

/// Runs one job. Failures become outcomes with a nonzero exit code.
pub fn run_job(job: &JobDocument) -> JobOutcome {
    let command = job.command.name();
    let head = json!({
        "command": command,
        "trunc": job.options.trunc,
        "field": job.options.field,
    });
    match dispatch(job) {
        Ok(p) => {
            let mut v = head;
            v["status"] = json!(if p.exit_code == 0 { "ok" } else { "verification-failure" });
            v["hypotheses_used"] = p.result.get("hypotheses_used").cloned().unwrap_or_else(|| json!([]));
            v["result"] = p.result;
            JobOutcome {
                exit_code: p.exit_code,
                json: v,
                text: p.text,
                csv: p.csv,
            }
        }
        Err(e) => {
            let mut v = head;
            v["status"] = json!("error");
            v["hypotheses_used"] = json!([]);
            v["error"] = error_json(&e);
            let mut text = format!("error: {e}\n");
            if let Error::Hypothesis { hypothesis, .. } = &e {
                let _ = writeln!(text, "hypothesis: {}", hypotheses::describe(hypothesis));
            }
            JobOutcome {
                exit_code: e.exit_code(),
                json: v,
                text,
                csv: None,
            }
        }
    }
}

/// Runs a batch concurrently; results keep the input order.
pub fn run_batch(jobs: &[JobDocument]) -> Vec<JobOutcome> {
    jobs.par_iter().map(run_job).collect()
}

#[derive(Debug, Parser)]
#[command(name = "spherepair", version, about = "Homology, loop-space series and decompositions of capped complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Truncation degree.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNC)]
    pub trunc: usize,
    /// Coefficients: q, z, fp:<p>, or zloc:<p,...> (Z with the listed primes inverted).
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// JSON array of job documents.
    #[arg(long)]
    pub batch: Option<PathBuf>,
    /// Highest degree the tensor-algebra engine may compute.
    #[arg(long, global = true)]
    pub cap_degree: Option<usize>,
    /// Adds a generation time to JSON reports; output is otherwise deterministic.
    #[arg(long, global = true)]
    pub timestamps: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homology groups of a space expression.
    Homology { input: String },
    /// Poincaré series of a space expression.
    Series { input: String },
    /// Poincaré series of the loop space.
    LoopSeries { input: String },
    /// Loop-space splitting of a capped complex.
    Decompose { input: String },
    /// Presentation and dimensions of loop-space homology.
    LoopHomology { input: String },
    /// Inertness verdict for the coefficient k.
    Inertness {
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Hyperbolicity claims for the coefficient k.
    Hyperbolicity {
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Check a spherical pair in cohomology-ring data.
    CheckPair { input: String },
    /// Complement C from homology data.
    Skeleton { input: String },
    /// James splitting of A ⋊ Ω(S^m × S^nm).
    Split { input: String },
    /// Cross-check a decomposition or a half-smash splitting.
    Verify { input: String },
}

/// `-` reads stdin; text starting with `{`, `[` or `"` is inline JSON;
/// anything else is a path.
fn read_input(input: &str) -> Result<Value> {
    let trimmed = input.trim_start();
    let text = if input == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Parse(format!("stdin: {e}")))?
    } else if trimmed.starts_with(['{', '[', '"']) {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|e| Error::Parse(format!("{input}: {e}")))?
    };
    parse_text(&text)
}

fn job_from(cli: &Cli, command: &Command) -> Result<JobDocument> {
    use CommandName as C;
    let (name, payload) = match command {
        Command::Homology { input } => (C::Homology, read_input(input)?),
        Command::Series { input } => (C::Series, read_input(input)?),
        Command::LoopSeries { input } => (C::LoopSeries, read_input(input)?),
        Command::Decompose { input } => (C::Decompose, read_input(input)?),
        Command::LoopHomology { input } => (C::LoopHomology, read_input(input)?),
        Command::Inertness { k } => (C::Inertness, json!({ "k": k })),
        Command::Hyperbolicity { k } => (C::Hyperbolicity, json!({ "k": k })),
        Command::CheckPair { input } => (C::CheckPair, read_input(input)?),
        Command::Skeleton { input } => (C::Skeleton, read_input(input)?),
        Command::Split { input } => (C::Split, read_input(input)?),
        Command::Verify { input } => (C::Verify, read_input(input)?),
    };
    Ok(JobDocument {
        command: name,
        payload,
        options: JobOptions {
            trunc: cli.trunc,
            field: cli.field.clone(),
            format: cli.format,
            cap_degree: cli.cap_degree,
        },
    })
}

fn stamp(outcome: &mut JobOutcome) {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    outcome.json["generated_at_unix"] = json!(secs);
}

/// Parses arguments, runs the job or batch, writes the report and returns
/// the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let (outcomes, formats): (Vec<JobOutcome>, Vec<Format>) = match (&cli.batch, &cli.command) {
        (Some(path), _) => {
            let jobs = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
                .and_then(|t| parse_text(&t))
                .and_then(|v| parse::<Vec<JobDocument>>(&v));
            match jobs {
                Ok(jobs) => {
                    let formats = jobs.iter().map(|j| j.options.format).collect();
                    (run_batch(&jobs), formats)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return e.exit_code();
                }
            }
        }
        (None, Some(command)) => match job_from(&cli, command) {
            Ok(job) => (vec![run_job(&job)], vec![cli.format]),
            Err(e) => {
                eprintln!("error: {e}");
                return e.exit_code();
            }
        },
        (None, None) => {
            eprintln!("error: give a command or --batch FILE (see --help)");
            return 1;
        }
    };
    let mut outcomes = outcomes;
    if cli.timestamps {
        outcomes.iter_mut().for_each(stamp);
    }
    if cli.batch.is_some() && cli.format == Format::Json {
        let all: Vec<&Value> = outcomes.iter().map(|o| &o.json).collect();
        println!("{}", serde_json::to_string_pretty(&all).expect("json values"));
    } else {
        for (o, f) in outcomes.iter().zip(formats) {
            let f = if cli.batch.is_some() { f } else { cli.format };
            let out = o.render(f);
            if o.exit_code != 0 && o.json.get("error").is_some() && f != Format::Json {
                eprint!("{out}");
            } else {
                print!("{out}");
            }
        }
    }
    outcomes.iter().map(|o| o.exit_code).max().unwrap_or(0)
}
