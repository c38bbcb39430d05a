//! `qa3`: classify 3-braid closures, check cubiquity, and run the
//! acceptance suite from the shell.
//!
//! Exit codes: 0 when everything was classified, 2 when some verdict is
//! UNKNOWN (or chi-sliceness undetermined), 3 on bad input.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use qa3::braid::{
    alexander_fox, closure_components, fox_milnor_test, integer_poly_factor, BraidDescriptor,
    BraidWord, Orientation,
};
use qa3::cubiquity::{is_cubiquitous, CubiquityReport, QbStatus};
use qa3::embeddings::{enumerate_embeddings_bounded, Embedding};
use qa3::lattice::{gram_form, lens_d_invariants, rational_string, LensSpace, Matrix};
use qa3::pipeline::verify::verify_paper;
use qa3::pipeline::{
    batch_enumerate, classify, to_csv_row, to_json, BatchSpec, ChiSlice, ClassificationReport,
    CSV_HEADER,
};
use qa3::strings::{parse_string, Fraction};

const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qa3",
    version,
    about = "Rational balls and chi-sliceness for quasi-alternating 3-braid closures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one closure, given by twist and string or by a raw word.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
        /// Comma separated entries, e.g. 3,2,2,2,2
        #[arg(long)]
        string: Option<String>,
        /// Raw braid word, e.g. "1 2 -1" or "(s1 s2)^3"
        #[arg(long, conflicts_with_all = ["t", "string"])]
        word: Option<String>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Lossy: drops the verdict evidence.
        #[arg(long)]
        csv: bool,
    },
    /// Cubiquity of the column lattice of a square integer matrix, read as
    /// whitespace separated rows or a JSON array of rows.
    Cubiquity {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// All embeddings of the plumbing form into the standard lattice.
    Embeddings {
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long)]
        string: String,
        #[arg(long, default_value_t = 12)]
        max_rank: usize,
    },
    /// d-invariants of the lens space L(p,q), indexed 0..p.
    Dinv {
        /// p/q
        #[arg(long)]
        lens: String,
    },
    /// Alexander polynomial of a closure with chosen component orientations.
    Alexander {
        #[arg(long)]
        word: String,
        /// One sign per component, e.g. +,-,+ (default: all +)
        #[arg(long)]
        orientation: Option<String>,
    },
    /// Classify every canonical string up to a length, as JSON lines.
    Batch {
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        t_set: String,
        #[arg(long, default_value_t = 6)]
        cap: i64,
        /// 0 uses the global pool.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Lossy CSV instead of JSON lines.
        #[arg(long)]
        csv: bool,
    },
    /// Run every acceptance check and print one line per criterion.
    VerifyPaper,
}

fn unresolved(r: &ClassificationReport) -> bool {
    r.qb4
        .as_ref()
        .is_some_and(|v| v.status == QbStatus::Unknown)
        || r.chi_slice == ChiSlice::Undetermined
}

fn parse_matrix(text: &str) -> Result<Matrix> {
    let m: Matrix = if text.trim_start().starts_with('[') {
        serde_json::from_str(text).context("matrix JSON")?
    } else {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|x| !x.is_empty())
                    .map(str::parse)
                    .collect()
            })
            .collect::<std::result::Result<_, _>>()
            .context("matrix entries must be integers")?
    };
    if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
        bail!("matrix must be square and nonempty");
    }
    Ok(m)
}

#[derive(Serialize)]
struct EmbeddingRow<'a> {
    #[serde(flatten)]
    embedding: &'a Embedding,
    cubiquitous: bool,
}

#[derive(Serialize)]
struct AlexanderReport {
    orientation: String,
    alexander: String,
    factors: Vec<(String, usize)>,
    content: i128,
    fox_milnor: Option<bool>,
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Classify {
            t,
            string,
            word,
            json: _,
            csv,
        } => {
            let descriptor = match (t, string, word) {
                (_, _, Some(w)) => BraidDescriptor::Raw {
                    word: w.parse::<BraidWord>()?,
                },
                (Some(t), Some(s), None) => BraidDescriptor::Family {
                    t,
                    a: parse_string(&s)?,
                },
                _ => bail!("give --t and --string, or --word"),
            };
            let report = classify(&descriptor)?;
            if csv {
                println!("{CSV_HEADER}");
                println!("{}", to_csv_row(&report));
            } else {
                println!("{}", to_json(&report));
            }
            Ok(if unresolved(&report) { EXIT_UNKNOWN } else { 0 })
        }
        Command::Cubiquity { matrix } => {
            let text = fs::read_to_string(&matrix)
                .with_context(|| format!("reading {}", matrix.display()))?;
            let report: CubiquityReport = is_cubiquitous(&parse_matrix(&text)?)?;
            emit(&report)?;
            Ok(0)
        }
        Command::Embeddings {
            t,
            string,
            max_rank,
        } => {
            let q = gram_form(t, &parse_string(&string)?)?;
            let embs = enumerate_embeddings_bounded(&q, max_rank)?;
            let mut rows = Vec::new();
            for e in &embs {
                rows.push(EmbeddingRow {
                    embedding: e,
                    cubiquitous: is_cubiquitous(&e.b)?.cubiquitous,
                });
            }
            emit(&rows)?;
            Ok(0)
        }
        Command::Dinv { lens } => {
            let f: Fraction = lens.parse()?;
            let table = lens_d_invariants(LensSpace::new(f.p, f.q)?);
            let d: Vec<String> = table.iter().map(rational_string).collect();
            emit(&serde_json::json!({ "p": f.p, "q": f.q, "d": d }))?;
            Ok(0)
        }
        Command::Alexander { word, orientation } => {
            let w: BraidWord = word.parse()?;
            let o = match orientation {
                Some(s) => s.parse::<Orientation>()?,
                None => Orientation::natural(closure_components(&w)),
            };
            let poly = alexander_fox(&w, &o)?;
            let (factors, content, fox_milnor) = if poly.is_zero() {
                (Vec::new(), 0, None)
            } else {
                let f = integer_poly_factor(&poly)?;
                let grouped = f
                    .grouped()
                    .into_iter()
                    .map(|(g, m)| (g.to_string(), m))
                    .collect();
                (grouped, f.content, Some(fox_milnor_test(&poly)?))
            };
            emit(&AlexanderReport {
                orientation: o.to_string(),
                alexander: poly.to_string(),
                factors,
                content,
                fox_milnor,
            })?;
            Ok(0)
        }
        Command::Batch {
            max_len,
            t_set,
            cap,
            threads,
            output,
            csv,
        } => {
            let t_set = t_set
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .context("--t-set must be comma separated integers")?;
            let spec = BatchSpec {
                max_len,
                t_set,
                cap,
                threads,
            };
            let reports =
                batch_enumerate(&spec).context("batch rejected before any output was written")?;
            let sink: Box<dyn Write> = match &output {
                Some(p) => Box::new(
                    fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
                ),
                None => Box::new(io::stdout().lock()),
            };
            let mut out = BufWriter::new(sink);
            if csv {
                writeln!(out, "{CSV_HEADER}")?;
            }
            for r in &reports {
                writeln!(out, "{}", if csv { to_csv_row(r) } else { to_json(r) })?;
            }
            out.flush()?;
            Ok(if reports.iter().any(unresolved) {
                EXIT_UNKNOWN
            } else {
                0
            })
        }
        Command::VerifyPaper => {
            let results = verify_paper();
            for r in &results {
                println!("{}", r.line());
            }
            Ok(if results.iter().any(|r| r.regression()) {
                1
            } else {
                0
            })
        }
    }
}

fn init_pool() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("QA3_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    init_pool();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
