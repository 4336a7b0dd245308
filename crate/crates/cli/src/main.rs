mod document;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use rayon::prelude::*;

use document::{config_doc, output, Arithmetic, BatchEntry, InputDocument, Number, OutputDocument};
use fourps_core::algorithm::{decide, AlgorithmConfig, Verdict};
use fourps_core::canonical::{normalize, ParabolicTriple};
use fourps_core::moebius::Matrix;
use fourps_core::oracle::{cross_validate_report, OracleConfig, ENUMERATION_CAP};
use fourps_core::scalar::parse_rational;
use fourps_core::{Approx, Rational, Scalar};

const EXIT_DISCRETE: u8 = 0;
const EXIT_NOT_FREE: u8 = 1;
const EXIT_UNDETERMINED: u8 = 2;
const EXIT_INPUT: u8 = 64;

/// Decide whether three parabolic elements of PSL(2,R) generate a free discrete
/// group, that is a four-punctured sphere group.
#[derive(Debug, Parser)]
#[command(name = "fourps", version, allow_negative_numbers = true)]
struct Cli {
    /// JSON input document.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["triple", "batch"])]
    input: Option<PathBuf>,
    /// Normal-form coordinates, as integers, decimals or p/q.
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], conflicts_with = "batch")]
    triple: Option<Vec<String>>,
    /// JSON array of input documents, decided in parallel.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long = "max-iters")]
    max_iters: Option<u64>,
    #[arg(long, value_enum)]
    arith: Option<Arithmetic>,
    /// Comparison band of the approximate backend.
    #[arg(long)]
    tolerance: Option<String>,
    /// Write a figure of the final configuration.
    #[arg(long, value_name = "PATH", conflicts_with = "batch")]
    svg: Option<PathBuf>,
    /// Re-check the verdict with the brute-force oracles.
    #[arg(long)]
    oracle_check: bool,
    /// Word length searched by --oracle-check.
    #[arg(long, default_value_t = 8)]
    max_word_len: usize,
    /// Compact JSON output.
    #[arg(long)]
    compact: bool,
}

struct Decided {
    doc: OutputDocument,
    svg: Option<String>,
    code: u8,
}

struct Options {
    oracle: Option<usize>,
    svg: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fourps: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    if cli.max_word_len == 0 || cli.max_word_len > ENUMERATION_CAP {
        bail!("--max-word-len must lie in 1..={ENUMERATION_CAP}");
    }
    let opts = Options { oracle: cli.oracle_check.then_some(cli.max_word_len), svg: cli.svg.is_some() };
    if let Some(path) = &cli.batch {
        return run_batch(cli, path, &opts);
    }
    let mut input = match (&cli.input, &cli.triple) {
        (Some(path), _) => read_json::<InputDocument>(path)?,
        (None, Some(t)) => {
            InputDocument { triple: Some([0, 1, 2].map(|i| Number::Text(t[i].clone()))), ..InputDocument::default() }
        }
        (None, None) => bail!("one of --input, --triple or --batch is required"),
    };
    apply_overrides(cli, &mut input);
    let decided = decide_document(&input, &opts)?;
    if let (Some(path), Some(svg)) = (&cli.svg, &decided.svg) {
        std::fs::write(path, svg).with_context(|| format!("cannot write {}", path.display()))?;
    }
    print_json(&decided.doc, cli.compact)?;
    Ok(decided.code)
}

fn run_batch(cli: &Cli, path: &Path, opts: &Options) -> Result<u8> {
    let mut inputs: Vec<InputDocument> = read_json(path)?;
    for input in &mut inputs {
        apply_overrides(cli, input);
    }
    let results: Vec<Result<Decided>> = inputs.par_iter().map(|i| decide_document(i, opts)).collect();
    let mut worst = EXIT_DISCRETE;
    let mut docs = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(d) => {
                worst = worst.max(d.code);
                docs.push(BatchEntry::Decided(Box::new(d.doc)));
            }
            Err(e) => {
                eprintln!("fourps: batch entry {i}: {e:#}");
                worst = EXIT_INPUT;
                docs.push(BatchEntry::Failed { error: format!("{e:#}") });
            }
        }
    }
    print_json(&docs, cli.compact)?;
    Ok(worst)
}

/// Command-line flags win over the document.
fn apply_overrides(cli: &Cli, input: &mut InputDocument) {
    if let Some(e) = &cli.epsilon {
        input.epsilon = Some(Number::Text(e.clone()));
    }
    if let Some(d) = &cli.delta {
        input.delta = Some(Number::Text(d.clone()));
    }
    if let Some(n) = cli.max_iters {
        input.max_iterations = Some(n);
    }
    if let Some(a) = cli.arith {
        input.arithmetic = Some(a);
    }
    if let Some(t) = &cli.tolerance {
        input.tolerance = Some(Number::Text(t.clone()));
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

fn print_json<T: serde::Serialize>(v: &T, compact: bool) -> Result<()> {
    let text = if compact { serde_json::to_string(v)? } else { serde_json::to_string_pretty(v)? };
    println!("{text}");
    Ok(())
}

fn rational(n: &Number, what: &str) -> Result<Rational> {
    parse_rational(&n.text()).with_context(|| format!("bad {what}"))
}

fn decide_document(input: &InputDocument, opts: &Options) -> Result<Decided> {
    match input.arithmetic.unwrap_or_default() {
        Arithmetic::Exact => {
            if input.tolerance.is_some() {
                bail!("tolerance only applies to approximate arithmetic");
            }
            decide_with::<Rational>(input, opts, |q| q.clone(), None)
        }
        Arithmetic::Approx => {
            let tol = match &input.tolerance {
                Some(t) => rational(t, "tolerance")?.to_f64(),
                None => 1e-12,
            };
            if !(tol.is_finite() && tol >= 0.0) {
                bail!("tolerance must be a nonnegative number");
            }
            decide_with::<Approx>(input, opts, |q| Approx::new(q.to_f64(), tol), Some(tol))
        }
    }
}

fn decide_with<S: Scalar>(
    input: &InputDocument,
    opts: &Options,
    lift: impl Fn(&Rational) -> S,
    tolerance: Option<f64>,
) -> Result<Decided> {
    let num = |n: &Number, what: &str| rational(n, what).map(|q| lift(&q));
    let defaults = AlgorithmConfig::<S>::default();
    let epsilon = input.epsilon.as_ref().map(|e| num(e, "epsilon")).transpose()?.unwrap_or(defaults.epsilon);
    let delta = input.delta.as_ref().map(|d| num(d, "delta")).transpose()?.unwrap_or(defaults.delta);
    let cfg = AlgorithmConfig::new(epsilon, delta, input.max_iterations.unwrap_or(defaults.max_iterations))?;

    let (start, norm) = match (&input.triple, &input.matrices) {
        (Some(_), Some(_)) => bail!("give either a triple or matrices, not both"),
        (None, None) => bail!("input needs a triple or matrices"),
        (Some([x, y, z]), None) => (ParabolicTriple::new(num(x, "x")?, num(y, "y")?, num(z, "z")?)?, None),
        (None, Some(ms)) => {
            let mut raw = Vec::with_capacity(3);
            for (i, [a, b, c, d]) in ms.iter().enumerate() {
                let what = format!("matrix {}", i + 1);
                let m = Matrix::new(num(a, &what)?, num(b, &what)?, num(c, &what)?, num(d, &what)?)
                    .map_err(|e| anyhow!("{what}: {e}"))?;
                raw.push(m);
            }
            let raw: [Matrix<S>; 3] = raw.try_into().map_err(|_| anyhow!("expected three matrices"))?;
            let n = normalize(&raw)?;
            (n.triple.clone(), Some(n))
        }
    };

    let d = decide(&start, &cfg);
    let oracle = opts.oracle.map(|len| {
        let oc = OracleConfig { max_word_len: len, ..OracleConfig::default() };
        (cross_validate_report(&start, &d, &oc), len)
    });
    let mut code = match d.verdict {
        Verdict::Discrete { .. } => EXIT_DISCRETE,
        Verdict::EllipticWitness { .. } | Verdict::Degenerate { .. } => EXIT_NOT_FREE,
        Verdict::Undetermined { .. } => EXIT_UNDETERMINED,
    };
    if matches!(&oracle, Some((cv, _)) if !cv.consistent) {
        code = EXIT_UNDETERMINED;
    }
    let config_used = config_doc(&cfg, input.arithmetic.unwrap_or_default(), tolerance);
    let doc = output(norm.as_ref(), &start, &d, config_used, oracle.as_ref().map(|(cv, len)| (cv, *len)));
    let svg = opts.svg.then(|| svg::render(&start, &d));
    Ok(Decided { doc, svg, code })
}
