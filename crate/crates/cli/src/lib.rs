//! The `tangle` command line.
//!
//! [`run`] executes one command and returns its exit status and output, so
//! the binary and the tests share a single code path. Exit status is 0 on
//! success, 2 when arguments, fractions or words fail to parse, and 1 on a
//! domain error.

use std::fmt::Write as _;
use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use tangle_core::session::{self, LogEntry, Role};
use tangle_core::{
    braid_to_moves, braid_to_psl2, central_power, invariant_of_word, moves_to_braid, positivize, positivize_moves,
    shortest_untangle, solution_blocks, solution_chain, untangle_moves, word_to_psl2, BraidWord, MoveWord, ProjRat,
    StopPolicy,
};

#[derive(Debug, Parser)]
#[command(name = "tangle", version, about = "Exact engine for Conway's rational tangle trick")]
pub struct Cli {
    /// Print a single JSON object instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariant reached from the untangle by a move word, e.g. "TTRT"
    Invariant { moves: String },
    /// Positive move word taking a fraction back to 0
    Solve { fraction: String },
    /// Move-by-move untangling trace of a fraction
    Steps { fraction: String },
    /// Shortest untangling word, by breadth-first search
    Shortest {
        fraction: String,
        #[arg(long, default_value_t = 20)]
        max: usize,
    },
    /// Braid words over a = σ₁, b = σ₂, A, B (inverses)
    Braid {
        #[command(subcommand)]
        op: BraidOp,
    },
    /// Move words over T, R and inverses T', R'
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// A complete scripted performance with a seeded random caller
    Simulate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        tangle_len: usize,
        /// Fewest caller moves before the assistant may call stop
        #[arg(long, default_value_t = StopPolicy::default().min_caller_moves)]
        min_stop: usize,
    },
    /// Serve the session API over HTTP
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        persist: Option<PathBuf>,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
        /// Allowed browser origin for CORS (any when omitted)
        #[arg(long)]
        cors_origin: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BraidOp {
    /// Image in PSL₂(ℤ)
    Mat { word: String },
    /// Translation to a move word (σ₁ ↦ T, σ₂ ↦ RTR)
    Moves { word: String },
    /// Inverse-free word equal modulo the center
    Positivize { word: String },
    /// k when the braid is Δ^(2k), otherwise not central
    Central { word: String },
}

#[derive(Debug, Subcommand)]
pub enum WordOp {
    /// Free reduction
    Reduce { moves: String },
    /// Image in PSL₂(ℤ)
    Mat { moves: String },
    /// Positive word with the same PSL₂(ℤ) image
    Positivize { moves: String },
    /// Translation to a braid word (T ↦ σ₁, R ↦ σ₁σ₂σ₁)
    Braid { moves: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Parse(String),
    Domain(String),
}

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
}

fn fraction(s: &str) -> Result<ProjRat, Failure> {
    s.parse().map_err(|e| Failure::Parse(format!("{e}")))
}

fn moves(s: &str) -> Result<MoveWord, Failure> {
    s.parse().map_err(|e| Failure::Parse(format!("invalid move word {s:?}: {e}")))
}

fn braid(s: &str) -> Result<BraidWord, Failure> {
    s.parse().map_err(|e| Failure::Parse(format!("invalid braid word {s:?}: {e}")))
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let stdout = if cli.json { format!("{}\n", out.json) } else { out.text };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Parse(m) => (2, m),
                Failure::Domain(m) => (1, m),
            };
            let stdout = if cli.json { format!("{}\n", json!({ "error": msg })) } else { String::new() };
            Outcome { code, stdout, stderr: format!("error: {msg}\n") }
        }
    }
}

fn execute(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Invariant { moves: m } => {
            let w = moves(m)?;
            let x = invariant_of_word(&w);
            Ok(Output { text: format!("{x}\n"), json: json!({ "moves": w.to_string(), "invariant": x.to_string() }) })
        }
        Command::Solve { fraction: f } => {
            let x = fraction(f)?;
            let w = untangle_moves(&x);
            Ok(Output {
                text: format!("{w}\n"),
                json: json!({ "fraction": x.to_string(), "moves": w.to_string(), "length": w.len() }),
            })
        }
        Command::Steps { fraction: f } => steps(&fraction(f)?),
        Command::Shortest { fraction: f, max } => {
            let x = fraction(f)?;
            let w = shortest_untangle(&x, *max)
                .ok_or_else(|| Failure::Domain(format!("no positive word of length <= {max} takes {x} to 0")))?;
            Ok(Output {
                text: format!("{w}\n"),
                json: json!({ "fraction": x.to_string(), "moves": w.to_string(), "length": w.len() }),
            })
        }
        Command::Braid { op } => braid_op(op),
        Command::Word { op } => word_op(op),
        Command::Simulate { seed, tangle_len, min_stop } => simulate(*seed, *tangle_len, *min_stop),
        Command::Serve { port, persist, bind, cors_origin } => serve(bind, *port, persist.clone(), cors_origin.clone()),
    }
}

fn steps(x: &ProjRat) -> Result<Output, Failure> {
    let chain = solution_chain(x);
    let blocks = solution_blocks(x);
    let mut text = format!("{x}\n");
    for s in &chain {
        writeln!(text, "{} {}", s.letter, s.value).unwrap();
    }
    let mut arrows = x.to_string();
    for b in &blocks {
        write!(arrows, " -{b}-> {}", b.value).unwrap();
    }
    writeln!(text, "{arrows}").unwrap();
    let json = json!({
        "start": x.to_string(),
        "moves": chain.iter().map(|s| s.letter.to_string()).collect::<String>(),
        "steps": chain.iter().map(|s| json!({ "move": s.letter.to_string(), "value": s.value.to_string() })).collect::<Vec<_>>(),
        "blocks": blocks.iter().map(|b| json!({ "label": b.to_string(), "value": b.value.to_string() })).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}

fn braid_op(op: &BraidOp) -> Result<Output, Failure> {
    let word_out = |input: &BraidWord, label: &str, out: String| Output {
        text: format!("{out}\n"),
        json: json!({ "braid": input.to_string(), label: out }),
    };
    match op {
        BraidOp::Mat { word } => {
            let b = braid(word)?;
            Ok(word_out(&b, "matrix", braid_to_psl2(&b).to_string()))
        }
        BraidOp::Moves { word } => {
            let b = braid(word)?;
            Ok(word_out(&b, "moves", braid_to_moves(&b).to_string()))
        }
        BraidOp::Positivize { word } => {
            let b = braid(word)?;
            Ok(word_out(&b, "positive", positivize(&b).to_string()))
        }
        BraidOp::Central { word } => {
            let b = braid(word)?;
            let k = central_power(&b).map_err(|e| Failure::Domain(e.to_string()))?;
            let text = match k {
                Some(k) => format!("{k}\n"),
                None => "not central\n".to_string(),
            };
            Ok(Output { text, json: json!({ "braid": b.to_string(), "centralPower": k }) })
        }
    }
}

fn word_op(op: &WordOp) -> Result<Output, Failure> {
    let (input, label, out) = match op {
        WordOp::Reduce { moves: m } => {
            let w = moves(m)?;
            let r = w.free_reduce().to_string();
            (w, "reduced", r)
        }
        WordOp::Mat { moves: m } => {
            let w = moves(m)?;
            let r = word_to_psl2(&w).to_string();
            (w, "matrix", r)
        }
        WordOp::Positivize { moves: m } => {
            let w = moves(m)?;
            let r = positivize_moves(&w).to_string();
            (w, "positive", r)
        }
        WordOp::Braid { moves: m } => {
            let w = moves(m)?;
            let r = moves_to_braid(&w).to_string();
            (w, "braid", r)
        }
    };
    Ok(Output { text: format!("{out}\n"), json: json!({ "moves": input.to_string(), label: out }) })
}

fn simulate(seed: u64, tangle_len: usize, min_stop: usize) -> Result<Output, Failure> {
    let s = session::simulate(seed, tangle_len, StopPolicy { min_caller_moves: min_stop })
        .map_err(|e| Failure::Domain(e.to_string()))?;
    let revealed = s.revealed().cloned().unwrap_or_else(ProjRat::zero);
    let mut text = format!("session {} (seed {seed})\n", s.id());
    let line = |text: &mut String, e: &LogEntry| {
        writeln!(text, "{:<9} {} {}", e.role.to_string(), e.letter, e.invariant).unwrap()
    };
    let (called, untangled): (Vec<_>, Vec<_>) = s.move_log().iter().partition(|e| e.role == Role::Caller);
    for e in &called {
        line(&mut text, e);
    }
    writeln!(text, "assistant reveals {revealed}").unwrap();
    for e in &untangled {
        line(&mut text, e);
    }
    writeln!(text, "solved after {} magician moves", untangled.len()).unwrap();
    let json = json!({
        "seed": seed,
        "called": called.iter().map(|e| e.letter.to_string()).collect::<String>(),
        "revealed": revealed.to_string(),
        "untangled": untangled.iter().map(|e| e.letter.to_string()).collect::<String>(),
        "snapshot": s.snapshot(Role::Assistant),
    });
    Ok(Output { text, json })
}

fn serve(bind: &str, port: u16, persist: Option<PathBuf>, cors_origin: Option<String>) -> Result<Output, Failure> {
    let addr: SocketAddr =
        format!("{bind}:{port}").parse().map_err(|_| Failure::Parse(format!("invalid bind address {bind:?}")))?;
    let _ = tracing_subscriber::fmt().try_init();
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Domain(e.to_string()))?;
    let config = tangle_service::ServiceConfig { persist, cors_origin };
    runtime.block_on(tangle_service::serve(addr, config)).map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(Output { text: String::new(), json: json!({ "stopped": true }) })
}
