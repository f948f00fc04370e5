use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use signed_ties::connectivity::blocks;
use signed_ties::decide::{lovasz_three_edges, LovaszOutcome, NoCycleReason};
use signed_ties::gadget::Gadget;
use signed_ties::gen::{generate, GenSpec, Recipe};
use signed_ties::io::{certificate_from_json, certificate_to_json, format_graph, read_graph};
use signed_ties::oracle::{enumerate_common_cycles, DEFAULT_BUDGET};
use signed_ties::{
    decide_tied_with, is_balanced, verify_certificate, BalanceResult, Cycle, DecideOptions, EdgeId, Error,
    SignedGraph, Verdict, VerdictKind,
};

/// Decide whether two edges of a signed graph are tied.
#[derive(Parser)]
#[command(name = "sgt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    e1: usize,
    #[arg(long)]
    e2: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide tied/untied, optionally writing a certificate.
    Decide {
        file: PathBuf,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "OUT")]
        certificate: Option<PathBuf>,
        /// Print the witness cycles of an untied pair.
        #[arg(long)]
        witness: bool,
    },
    /// Report balance with a vertex signing or a negative cycle.
    Balance { file: PathBuf },
    /// List the blocks and cut vertices.
    Blocks { file: PathBuf },
    /// Enumerate all cycles through both edges.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        pair: Pair,
        /// Search node budget; defaults to $SG_BUDGET or 1000000.
        #[arg(long)]
        budget: Option<u64>,
        /// List the cycles as well.
        #[arg(long)]
        list: bool,
    },
    /// Whether three edges of a simple 3-connected graph lie on a cycle.
    Lovasz {
        file: PathBuf,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        e3: usize,
    },
    /// Generate graphs.
    Gen {
        #[command(subcommand)]
        spec: GenCommand,
        /// Output file, or a directory when several graphs are produced.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file against a graph.
    Verify { file: PathBuf, certificate: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        p_neg: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A wheel plus random chords.
    ThreeConnected {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0.5)]
        p_neg: f64,
        #[arg(long)]
        simple: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// One representative per switching class of every small graph.
    Exhaustive {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        simple: bool,
        #[arg(long)]
        dedup: bool,
    },
    /// A tied instance built from a recipe (JSON file) or a random one.
    Composed {
        #[arg(long)]
        recipe: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Gadget { name: Gadget },
}

/// Exit status 2 with a message.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("sgt: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Decide {
            file,
            pair,
            certificate,
            witness,
        } => decide(&file, pair, certificate.as_deref(), witness),
        Command::Balance { file } => balance(&read_graph(file)?),
        Command::Blocks { file } => block_report(&read_graph(file)?),
        Command::Oracle {
            file,
            pair,
            budget,
            list,
        } => oracle(&read_graph(file)?, pair, budget, list),
        Command::Lovasz { file, pair, e3 } => {
            let g = read_graph(file)?;
            let line = match lovasz_three_edges(&g, EdgeId(pair.e1), EdgeId(pair.e2), EdgeId(e3))? {
                LovaszOutcome::CycleExists => "CYCLE".to_string(),
                LovaszOutcome::NoCycle(NoCycleReason::CommonVertex(v)) => format!("NO_CYCLE common_vertex={v}"),
                LovaszOutcome::NoCycle(NoCycleReason::Disconnecting) => "NO_CYCLE disconnecting".to_string(),
            };
            println!("{line}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { spec, out } => gen(spec, out.as_deref()),
        Command::Verify { file, certificate } => {
            let g = read_graph(file)?;
            let text = fs::read_to_string(&certificate).map_err(Error::from)?;
            let cert = certificate_from_json(&text)?;
            match verify_certificate(&g, cert.e1, cert.e2, &cert.verdict) {
                Ok(()) => {
                    println!("OK");
                    Ok(ExitCode::SUCCESS)
                }
                Err(reason) => {
                    println!("INVALID {reason}");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn budget_or_env(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("SG_BUDGET") {
        Ok(v) => v.parse().map_err(|_| Failure(format!("SG_BUDGET must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn edge_list(c: &Cycle) -> String {
    list(c.edge_set())
}

fn list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn decide(file: &Path, pair: Pair, certificate: Option<&Path>, witness: bool) -> Outcome {
    let g = read_graph(file)?;
    let (e1, e2) = (EdgeId(pair.e1), EdgeId(pair.e2));
    let options = DecideOptions {
        witness_budget: budget_or_env(None)?,
        ..DecideOptions::default()
    };
    let verdict = decide_tied_with(&g, e1, e2, &options)?;
    println!("{}", verdict.kind());
    if witness {
        match &verdict {
            Verdict::Untied { witness: Some(w) } => {
                println!("positive={}", edge_list(&w.positive));
                println!("negative={}", edge_list(&w.negative));
            }
            Verdict::Untied { witness: None } => println!("witness search exhausted"),
            Verdict::Tied { certificate, .. } => {
                if let Some(c) = &certificate.sample {
                    println!("sample={}", edge_list(c));
                }
            }
            Verdict::TiedVacuous { .. } => {}
        }
    }
    if let Some(out) = certificate {
        fs::write(out, certificate_to_json(e1, e2, &verdict)?).map_err(Error::from)?;
    }
    Ok(match verdict.kind() {
        VerdictKind::Untied => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

fn balance(g: &SignedGraph) -> Outcome {
    match is_balanced(g) {
        BalanceResult::Balanced(theta) => println!("BALANCED signing={}", list(&theta.theta)),
        BalanceResult::Unbalanced(c) => println!("UNBALANCED witness={}", edge_list(&c)),
    }
    Ok(ExitCode::SUCCESS)
}

fn block_report(g: &SignedGraph) -> Outcome {
    let tree = blocks(g);
    println!("blocks={} cut_vertices={}", tree.blocks.len(), list(&tree.cut_vertices));
    for (i, b) in tree.blocks.iter().enumerate() {
        println!("block {i} edges={}", list(b));
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(g: &SignedGraph, pair: Pair, budget: Option<u64>, show: bool) -> Outcome {
    let r = enumerate_common_cycles(g, EdgeId(pair.e1), EdgeId(pair.e2), budget_or_env(budget)?)?;
    println!(
        "cycles={} pos={} neg={} complete={}",
        r.cycles.len(),
        r.positive_count,
        r.negative_count,
        r.complete
    );
    if show {
        for c in &r.cycles {
            println!("{} {}", c.sign(g), edge_list(c));
        }
    }
    let untied = r.positive_count > 0 && r.negative_count > 0;
    Ok(if untied { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn gen(command: GenCommand, out: Option<&Path>) -> Outcome {
    let spec = match command {
        GenCommand::Random { n, m, p_neg, seed } => GenSpec::Random { n, m, p_neg, seed },
        GenCommand::ThreeConnected {
            n,
            extra,
            p_neg,
            simple,
            seed,
        } => GenSpec::Random3Connected {
            n,
            extra_edges: extra,
            p_neg,
            simple,
            seed,
        },
        GenCommand::Exhaustive {
            n_max,
            m_max,
            simple,
            dedup,
        } => GenSpec::Exhaustive {
            n_max,
            m_max,
            simple,
            dedup_isomorphic: dedup,
        },
        GenCommand::Composed { recipe, seed } => {
            let recipe = match recipe {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(Error::from)?;
                    Some(serde_json::from_str::<Recipe>(&text).map_err(Error::from)?)
                }
                None => None,
            };
            GenSpec::ComposedTied { recipe, seed }
        }
        GenCommand::Gadget { name } => GenSpec::Gadget { gadget: name },
    };
    let graphs = generate(&spec)?;
    let render = |i: usize| {
        let item = &graphs[i];
        let mut text = String::new();
        if let Some((e1, e2)) = item.pair {
            text.push_str(&format!("# e1={e1} e2={e2}\n"));
        }
        text + &format_graph(&item.graph)
    };
    match out {
        Some(dir) if graphs.len() != 1 => {
            fs::create_dir_all(dir).map_err(Error::from)?;
            for i in 0..graphs.len() {
                fs::write(dir.join(format!("g{i:05}.sg")), render(i)).map_err(Error::from)?;
            }
            println!("wrote {} graphs to {}", graphs.len(), dir.display());
        }
        Some(file) => fs::write(file, render(0)).map_err(Error::from)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            for i in 0..graphs.len() {
                let sep = if i > 0 { "\n" } else { "" };
                // a closed pipe ends the listing early
                if write!(stdout, "{sep}{}", render(i)).is_err() {
                    break;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
