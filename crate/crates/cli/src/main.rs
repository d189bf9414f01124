use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use smalldoubling::abelian::{parse_lattice_set, AbelianMode};
use smalldoubling::cert::{
    certify_classify, certify_construct, certify_dim, certify_laws, certify_match, certify_square,
    certify_verify, validate_certificate, Certificate, CERT_VERSION,
};
use smalldoubling::nonabelian::Law;
use smalldoubling::product::make_subset;
use smalldoubling::search::verify::{Corpus, TheoremId};
use smalldoubling::search::{default_workers, enumerate_small_doubling, EnumerationTask, Normalization};
use smalldoubling::{Error, FiniteSubset, GroupSpec};

#[derive(Parser)]
#[command(name = "smalldoubling", version, about = "Small-doubling sets in ordered groups")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Square set and doubling report of {"group": G, "set": [...]}.
    Square { input: Option<PathBuf> },
    /// Structure of a lattice set under a small-doubling hypothesis.
    Classify {
        input: Option<PathBuf>,
        #[arg(long, default_value = "3k3", value_parser = ["3k3", "3k2", "ck"])]
        mode: String,
        /// Generator bound for --mode ck.
        #[arg(long)]
        c: Option<u32>,
    },
    /// Rank, Freiman dimension and the dimension inequalities of a lattice set.
    Dim { input: Option<PathBuf> },
    /// Young form of a set with |S^2| = 3|S| - 2.
    Match { input: Option<PathBuf> },
    /// The set of size k with |S^2| = 4k - 5 in Z x F2.
    Construct {
        #[arg(long)]
        k: usize,
    },
    /// Stream the sets of an enumeration task or corpus as JSON lines.
    Enumerate {
        input: Option<PathBuf>,
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Run one theorem's checks over a corpus.
    Verify {
        #[arg(long)]
        theorem: String,
        input: Option<PathBuf>,
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Check a group law on words over {"group": G, "generators": [...]}.
    Laws {
        input: Option<PathBuf>,
        #[arg(long, default_value = "metabelian", value_parser = ["metabelian", "class2", "abelian"])]
        law: String,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-check a certificate by recomputing it.
    Validate { input: Option<PathBuf> },
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

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_json(path: &Option<PathBuf>) -> Result<Value, Failure> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed JSON: {e}")))
}

/// A bare list or an object with "set"; the group defaults to the lattice
/// of the points' dimension.
fn read_set(v: &Value) -> Result<FiniteSubset, Failure> {
    let raw = v.get("set").unwrap_or(v);
    let group = match v.get("group") {
        Some(g) => serde_json::from_value::<GroupSpec>(g.clone()).map_err(Error::from)?,
        None => {
            let pts = parse_lattice_set(raw)?;
            GroupSpec::lattice(pts.first().map_or(1, Vec::len))
        }
    };
    Ok(make_subset(&group, group.parse_elements(raw)?)?)
}

fn workers(parallel: Option<usize>) -> usize {
    parallel.unwrap_or_else(default_workers).max(1)
}

fn emit(out: &mut impl Write, v: &Value, pretty: bool) -> Result<(), Failure> {
    let s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .map_err(Error::from)?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn finish(out: &mut impl Write, c: &Certificate, start: Instant, pretty: bool) -> Result<u8, Failure> {
    emit(out, &c.envelope(start.elapsed().as_millis() as u64), pretty)?;
    Ok(c.exit_code() as u8)
}

fn enumerate(v: &Value, w: usize, out: &mut impl Write) -> Result<u8, Failure> {
    let tasks = if v.get("ball").is_some() {
        vec![EnumerationTask::from_json(v)?]
    } else {
        let corpus = Corpus::from_json(v)?;
        let mut tasks = Vec::new();
        for b in &corpus.balls {
            for k in corpus.k.0..=corpus.k.1 {
                tasks.push(EnumerationTask {
                    ball: b.clone(),
                    k,
                    bound: corpus.bound,
                    normalize: corpus.normalize.unwrap_or(Normalization::None),
                });
            }
        }
        tasks
    };
    for (ti, task) in tasks.iter().enumerate() {
        let (table, e) = enumerate_small_doubling(task, w)?;
        for i in 0..e.len() {
            let mut line = e.json_line(&table, i);
            line["version"] = json!(CERT_VERSION);
            line["task"] = json!(ti);
            emit(out, &line, false)?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let start = Instant::now();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let pretty = cli.pretty;
    match cli.command {
        Command::Square { input } => {
            let s = read_set(&read_json(&input)?)?;
            finish(&mut out, &certify_square(&s)?, start, pretty)
        }
        Command::Classify { input, mode, c } => {
            let mode = match (mode.as_str(), c) {
                ("ck", Some(c)) => AbelianMode::CK(c),
                ("ck", None) => return Err(Failure::Usage("--mode ck needs --c N".into())),
                (m, _) => AbelianMode::parse(m)?,
            };
            let v = read_json(&input)?;
            let pts = parse_lattice_set(v.get("set").unwrap_or(&v))?;
            finish(&mut out, &certify_classify(&pts, mode)?, start, pretty)
        }
        Command::Dim { input } => {
            let v = read_json(&input)?;
            let pts = parse_lattice_set(v.get("set").unwrap_or(&v))?;
            finish(&mut out, &certify_dim(&pts)?, start, pretty)
        }
        Command::Match { input } => {
            let s = read_set(&read_json(&input)?)?;
            finish(&mut out, &certify_match(&s)?, start, pretty)
        }
        Command::Construct { k } => finish(&mut out, &certify_construct(k)?, start, pretty),
        Command::Enumerate { input, parallel } => enumerate(&read_json(&input)?, workers(parallel), &mut out),
        Command::Verify {
            theorem,
            input,
            parallel,
        } => {
            let theorem = TheoremId::parse(&theorem)?;
            let corpus = Corpus::from_json(&read_json(&input)?)?;
            let (c, runtime_ms) = certify_verify(theorem, &corpus, workers(parallel))?;
            emit(&mut out, &c.envelope(runtime_ms), pretty)?;
            Ok(c.exit_code() as u8)
        }
        Command::Laws {
            input,
            law,
            radius,
            samples,
            seed,
        } => {
            let v = read_json(&input)?;
            let group: GroupSpec = serde_json::from_value(
                v.get("group")
                    .cloned()
                    .ok_or_else(|| Failure::Usage("input lacks group".into()))?,
            )
            .map_err(Error::from)?;
            let gens = match v.get("generators") {
                Some(g) => group.parse_elements(g)?,
                None => group.standard_generators(),
            };
            let c = certify_laws(&group, &gens, Law::parse(&law)?, radius, samples, seed)?;
            finish(&mut out, &c, start, pretty)
        }
        Command::Validate { input } => {
            let valid = validate_certificate(&read_json(&input)?)?;
            emit(&mut out, &json!({"version": CERT_VERSION, "valid": valid}), pretty)?;
            Ok(if valid { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            eprintln!("error: {}", msg.lines().next().unwrap_or("usage error").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            ExitCode::from(match e {
                e if e.is_undecided() => 3,
                Error::Counterexample(_) => 1,
                _ => 2,
            })
        }
    }
}
