use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use baumslag::counterexample::{self, CounterexampleConfig};
use baumslag::geometry::{embed_normal_form, embed_path, emit_svg, SvgOptions};
use baumslag::group::{group_equal, GroupWord};
use baumslag::semigroup::{equal, multiply, normalize};
use baumslag::synth::{parse_generators, synthesize_auto, verify, AutomaticStructure, SynthConfig};
use baumslag::{BsParams, Error, SgWord, DEFAULT_STATE_BUDGET};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

/// Baumslag-Solitar semigroups: word problems, plane embedding and automatic structures.
#[derive(Parser)]
#[command(name = "bs", version)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Cap on automaton states and searches; overrides BS_STATE_BUDGET.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word in S(m,n).
    Normalize {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        word: String,
    },
    /// Normal form of the product of two words.
    Multiply {
        #[command(flatten)]
        params: Params,
        u: String,
        v: String,
    },
    /// Equality in S(m,n).
    Equal {
        #[command(flatten)]
        params: Params,
        u: String,
        v: String,
    },
    /// Equality in G(m,n); `X` and `Y` are inverses.
    GroupEqual {
        #[command(flatten)]
        params: Params,
        u: String,
        v: String,
    },
    /// Plane embedding of paths; requires m > n.
    Embed {
        #[command(flatten)]
        params: Params,
        /// Word to trace; repeat to overlay several.
        #[arg(long = "path", required = true)]
        paths: Vec<String>,
        /// Write an SVG drawing here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print exact coordinates even when writing SVG.
        #[arg(long)]
        json: bool,
    },
    /// Build and verify an automatic structure (right for m > n, left for m < n).
    Synth {
        #[command(flatten)]
        params: Params,
        /// One word per line, optionally `name = word`; `#` starts a comment.
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8)]
        verify_bound: usize,
        #[arg(long, default_value_t = 12)]
        lambda_max: usize,
        #[arg(long)]
        lambda_start: Option<usize>,
        /// Also write Graphviz files for the language and every multiplier.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Re-verify a structure file.
    Verify {
        structure: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Check the facts behind the non-automatic subsemigroup of S(m,m).
    Counterexample {
        #[arg(long, default_value_t = 6)]
        alpha_max: u64,
        #[arg(long, default_value_t = 6)]
        search_bound: usize,
        #[arg(long, default_value_t = 4)]
        grid: u64,
    },
}

const EXIT_UNVERIFIED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => EXIT_BUDGET,
            Error::Unverified(_) => EXIT_UNVERIFIED,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into() }
}

type Outcome = Result<(Value, u8), Failure>;

fn params(p: Params) -> Result<BsParams, Failure> {
    Ok(BsParams::new(p.m, p.n)?)
}

fn word(s: &str) -> Result<SgWord, Failure> {
    Ok(s.parse()?)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
}

fn budget(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("BS_STATE_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| invalid(format!("BS_STATE_BUDGET must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_STATE_BUDGET),
    }
}

fn run(cli: Cli) -> Outcome {
    let budget = budget(cli.budget)?;
    match cli.command {
        Command::Normalize { params: pp, word: w } => Ok((normalize(&word(&w)?, params(pp)?).to_json(), 0)),
        Command::Multiply { params: pp, u, v } => {
            let p = params(pp)?;
            let product = multiply(&normalize(&word(&u)?, p), &normalize(&word(&v)?, p), p);
            Ok((product.to_json(), 0))
        }
        Command::Equal { params: pp, u, v } => Ok((json!({"equal": equal(&word(&u)?, &word(&v)?, params(pp)?)}), 0)),
        Command::GroupEqual { params: pp, u, v } => {
            let (u, v): (GroupWord, GroupWord) = (u.parse()?, v.parse()?);
            Ok((json!({"equal": group_equal(&u, &v, params(pp)?)}), 0))
        }
        Command::Embed { params: pp, paths, svg, json } => {
            let p = params(pp)?;
            let words = paths.iter().map(|w| word(w)).collect::<Result<Vec<_>, _>>()?;
            let mut out = serde_json::Map::new();
            if let Some(file) = &svg {
                write(file, &emit_svg(&words, p, &SvgOptions::default())?)?;
                out.insert("svg".into(), json!(file.display().to_string()));
            }
            if json || svg.is_none() {
                let mut traced = Vec::new();
                for w in &words {
                    let points = embed_path(w, p)?;
                    let end = embed_normal_form(&normalize(w, p), p)?;
                    traced.push(json!({
                        "word": w.to_string(),
                        "points": points.iter().map(|q| q.to_json()).collect::<Vec<_>>(),
                        "end": end.to_json(),
                    }));
                }
                out.insert("paths".into(), Value::Array(traced));
            }
            Ok((Value::Object(out), 0))
        }
        Command::Synth { params: pp, gens, out, verify_bound, lambda_max, lambda_start, dot_dir } => {
            let p = params(pp)?;
            let generators = parse_generators(&read(&gens)?)?;
            let config = SynthConfig { lambda_max, lambda_start, bound: verify_bound, budget };
            let (s, report) = synthesize_auto(&generators, p, &config)?;
            write(&out, &serde_json::to_string_pretty(&s.to_json()).expect("JSON values serialize"))?;
            if let Some(dir) = &dot_dir {
                std::fs::create_dir_all(dir).map_err(|e| invalid(format!("cannot create {}: {e}", dir.display())))?;
                for (stem, dot) in s.to_dot() {
                    write(&dir.join(format!("{stem}.dot")), &dot)?;
                }
            }
            Ok((
                json!({
                    "structure": out.display().to_string(),
                    "handedness": s.handedness,
                    "lambda": s.lambda,
                    "language_states": s.language.states(),
                    "multiplier_states": s.multipliers.iter().map(|(k, d)| (k.clone(), json!(d.states()))).collect::<serde_json::Map<_, _>>(),
                    "report": report,
                }),
                0,
            ))
        }
        Command::Verify { structure, bound } => {
            let text = read(&structure)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", structure.display())))?;
            let s = AutomaticStructure::from_json(&v)?;
            let report = verify(&s, bound, budget)?;
            let holds = report.holds();
            let mut out = serde_json::to_value(&report).expect("report serializes");
            out["holds"] = json!(holds);
            Ok((out, if holds { 0 } else { EXIT_UNVERIFIED }))
        }
        Command::Counterexample { alpha_max, search_bound, grid } => {
            let config = CounterexampleConfig { alpha_max, search_bound, grid, budget };
            let report = counterexample::run(&config)?;
            let code = if report.passed { 0 } else { EXIT_UNVERIFIED };
            Ok((serde_json::to_value(&report).expect("report serializes"), code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match run(cli) {
        Ok((value, code)) => {
            let text = if pretty { serde_json::to_string_pretty(&value) } else { serde_json::to_string(&value) };
            // A closed pipe on stdout is not an error for the caller.
            let _ = writeln!(std::io::stdout(), "{}", text.expect("JSON values serialize"));
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("bs: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
