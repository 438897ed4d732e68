mod render;
mod repro;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mfd_forge::codes::{construct, CodeArtifact, ConstructOptions, FerrersCode};
use mfd_forge::ferrers::{DiagramProfile, FerrersDiagram};
use mfd_forge::verify::{default_cap, is_mfd, VerifyError, VerifyOptions, CAP_ENV};
use mfd_forge::Gf;

const EXIT_VERIFY_FAILED: u8 = 2;
const EXIT_CAP_EXCEEDED: u8 = 3;

/// Construct and verify maximum Ferrers diagram rank-metric codes.
#[derive(Parser, Debug)]
#[command(name = "mfd-forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class membership, heights, adjoint and the nu tables of a diagram.
    Analyze(AnalyzeArgs),
    /// Build a code for (diagram, d) and write it as text or a JSON artifact.
    Construct(ConstructArgs),
    /// Check support, dimension and minimum rank of a code.
    Verify(VerifyArgs),
    /// Run a pinned reference scenario and compare with embedded data.
    Repro(ReproArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Column counts, e.g. "0,1,1,4,5".
    #[arg(long)]
    diagram: FerrersDiagram,
    /// Distances to tabulate: "3", "2-5" or "2,4"; all of 1..=n when omitted.
    #[arg(long)]
    d: Option<String>,
    /// Characteristics for heights and p-classes.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    primes: Vec<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CodeSpec {
    #[arg(long)]
    diagram: FerrersDiagram,
    #[arg(long)]
    d: usize,
    /// Scalar field as "p^e", e.g. "5^1".
    #[arg(long)]
    field: String,
    /// Ascending coefficients of the extension modulus over F_p, e.g. "3,4,0,0,0,1".
    #[arg(long)]
    modulus: Option<String>,
    /// Compatible basis as exponents of the modulus root, e.g. "0,2968,1531,1556,1566".
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    spec: CodeSpec,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A code artifact written by `construct --format json`.
    #[arg(long, conflicts_with_all = ["diagram", "d", "field", "modulus", "basis"])]
    code: Option<PathBuf>,
    #[arg(long, requires_all = ["d", "field"])]
    diagram: Option<FerrersDiagram>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long)]
    basis: Option<String>,
    /// Largest number of nonzero codewords to enumerate.
    #[arg(long, env = CAP_ENV)]
    cap: Option<u64>,
    /// Sample this many random codewords when the cap is exceeded. Without it,
    /// exceeding the cap is an error.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ReproArgs {
    /// One of fer5-nu, nu-table, f5-compatible-basis, f2-n8-phi, f5-mfd-d4, f2-ut-d4, mds-ex17, or all.
    id: String,
    #[command(flatten)]
    output: Output,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| t.trim().parse::<T>().map_err(|_| anyhow::anyhow!("{what}: entry {} ({t:?}) is not a number", i + 1)))
        .collect()
}

fn parse_field(s: &str) -> Result<Gf> {
    let (p, e) = match s.split_once('^') {
        Some((p, e)) => (p.trim(), e.trim()),
        None => (s.trim(), "1"),
    };
    let p: u32 = p.parse().with_context(|| format!("field {s:?}: bad characteristic"))?;
    let e: usize = e.parse().with_context(|| format!("field {s:?}: bad exponent"))?;
    Ok(Gf::new(p, e, None)?)
}

fn parse_distances(s: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
                out.extend(a..=b);
            }
            None => out.push(part.parse().with_context(|| format!("distance {part:?}"))?),
        }
    }
    if let Some(&bad) = out.iter().find(|&&d| d == 0 || d > n) {
        bail!("distance {bad} not in 1..={n}");
    }
    Ok(out)
}

fn build(spec: &CodeSpec) -> Result<FerrersCode> {
    let field = parse_field(&spec.field)?;
    let opts = ConstructOptions {
        modulus: spec.modulus.as_deref().map(|m| parse_list(m, "modulus")).transpose()?,
        basis_exponents: spec.basis.as_deref().map(|b| parse_list(b, "basis")).transpose()?,
    };
    Ok(construct(&spec.diagram, spec.d, &field, &opts)?)
}

fn emit(output: &Output, text: impl FnOnce() -> String, json: impl FnOnce() -> Result<String>) -> Result<()> {
    let mut body = match output.format {
        Format::Text => text(),
        Format::Json => json()?,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &output.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn analyze(a: AnalyzeArgs) -> Result<u8> {
    let n = a.diagram.order();
    let distances = match &a.d {
        Some(s) => parse_distances(s, n)?,
        None => (1..=n).collect(),
    };
    let profile = DiagramProfile::new(&a.diagram, &a.primes, &distances)?;
    emit(&a.output, || render::profile(&profile), || Ok(serde_json::to_string_pretty(&profile)?))?;
    Ok(0)
}

fn construct_cmd(a: ConstructArgs) -> Result<u8> {
    let code = build(&a.spec)?;
    emit(&a.output, || render::code(&code), || Ok(serde_json::to_string_pretty(&code.to_artifact())?))?;
    Ok(0)
}

fn verify_cmd(a: VerifyArgs) -> Result<u8> {
    let code = match (&a.code, &a.diagram) {
        (Some(path), _) => {
            let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let art: CodeArtifact =
                serde_json::from_str(&raw).with_context(|| format!("{} is not a code artifact", path.display()))?;
            FerrersCode::from_artifact(&art)?
        }
        (None, Some(diagram)) => build(&CodeSpec {
            diagram: diagram.clone(),
            d: a.d.expect("required by clap"),
            field: a.field.clone().expect("required by clap"),
            modulus: a.modulus.clone(),
            basis: a.basis.clone(),
        })?,
        (None, None) => bail!("give either --code FILE or --diagram with --d and --field"),
    };
    let opts = VerifyOptions {
        cap: a.cap.unwrap_or_else(default_cap),
        sample_on_cap: a.trials.is_some(),
        trials: a.trials.unwrap_or(1),
        seed: a.seed,
    };
    let report = match is_mfd(&code, &code.diagram, code.d, &opts) {
        Ok(r) => r,
        Err(e @ VerifyError::CapExceeded { .. }) => {
            eprintln!("error: {e}");
            return Ok(EXIT_CAP_EXCEEDED);
        }
        Err(e) => return Err(e.into()),
    };
    emit(&a.output, || render::report(&report, &code.field), || Ok(serde_json::to_string_pretty(&report)?))?;
    Ok(if report.passed { 0 } else { EXIT_VERIFY_FAILED })
}

fn repro_cmd(a: ReproArgs) -> Result<u8> {
    let ids: Vec<&str> = if a.id == "all" { repro::IDS.to_vec() } else { vec![a.id.as_str()] };
    let outcomes = ids.iter().map(|id| repro::run(id)).collect::<Result<Vec<_>>>()?;
    let all_passed = outcomes.iter().all(|o| o.passed);
    emit(
        &a.output,
        || {
            let mut s = String::new();
            for o in &outcomes {
                s.push_str(&format!("{}  {}\n", if o.passed { "PASS" } else { "FAIL" }, o.id));
                for line in &o.lines {
                    for l in line.lines() {
                        s.push_str(&format!("    {l}\n"));
                    }
                }
            }
            s
        },
        || Ok(serde_json::to_string_pretty(&outcomes)?),
    )?;
    Ok(if all_passed { 0 } else { EXIT_VERIFY_FAILED })
}

fn main() -> ExitCode {
    // usage errors exit 1; clap's default of 2 would read as a failed verification
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Construct(a) => construct_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Repro(a) => repro_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
