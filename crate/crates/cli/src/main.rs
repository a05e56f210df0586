use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use navrel::automata::ConditionAutomaton;
use navrel::constructions::{automaton_to_expr, expr_to_automaton, remove_identity_transitions};
use navrel::eval::{
    check_equivalence, evaluate, EquivVerdict, OracleConfig, OracleError, Semantics, DEFAULT_CEILING,
};
use navrel::expr::{parse, parse_in, Expr, Fragment};
use navrel::graph::{enumerate, instance_count, standard_alphabet, Bound, Graph, GraphClass};
use navrel::lattice::{separation_witness, subsumes, LatticeQuery};
use navrel::rewrite::{default_certificate_config, rewrite, Pipeline, RewriteError};

/// Appends a line to the output buffer; writing to a `String` cannot fail.
macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

/// Overrides the oracle's instance ceiling.
const CEILING_VAR: &str = "NAVREL_CEILING";

#[derive(Parser)]
#[command(name = "navrel", version, about = "Downward navigational queries on trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Path,
    Boolean,
}

impl From<Mode> for Semantics {
    fn from(m: Mode) -> Semantics {
        match m {
            Mode::Path => Semantics::Path,
            Mode::Boolean => Semantics::Boolean,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized expression and the operators it uses.
    Parse {
        #[arg(short, long)]
        expr: String,
        /// Labels `E` expands to, comma-separated.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Evaluate an expression on a graph file.
    Eval {
        #[arg(short, long)]
        expr: String,
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Translate an expression to a condition automaton (JSON, or DOT).
    ToAutomaton {
        #[arg(short, long)]
        expr: String,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        dot: bool,
        /// Remove ID transitions first.
        #[arg(long)]
        identity_free: bool,
    },
    /// Translate an automaton file back to an expression.
    ToExpr {
        #[arg(short, long)]
        automaton: PathBuf,
    },
    /// Run a rewriting pipeline; the output is certified unless `--no-certify`.
    Rewrite {
        #[arg(short, long)]
        expr: String,
        #[arg(long)]
        pipeline: Pipeline,
        #[arg(long, overrides_with = "no_certify")]
        certify: bool,
        #[arg(long)]
        no_certify: bool,
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long)]
        labels: Option<usize>,
    },
    /// Bounded equivalence check; exit code 1 on a counterexample.
    Equiv {
        #[arg(long = "e1")]
        e1: String,
        #[arg(long = "e2")]
        e2: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        class: GraphClass,
        #[arg(long)]
        max_nodes: usize,
        #[arg(long, default_value_t = 2)]
        labels: usize,
        #[arg(long, default_value_t = 5)]
        max_edges: usize,
        /// Extra random instances beyond the exhaustive bound.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Whether every query of `f1` is expressible in `f2`.
    Subsumes {
        #[arg(long)]
        f1: Fragment,
        #[arg(long)]
        f2: Fragment,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        class: GraphClass,
    },
    /// A query separating `f1` from `f2`, with its behavior check.
    Witness {
        #[arg(long)]
        f1: Fragment,
        #[arg(long)]
        f2: Fragment,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        class: GraphClass,
    },
    /// Print every graph of a class up to a bound, one JSON object per line.
    Enumerate {
        #[arg(long)]
        class: GraphClass,
        #[arg(long)]
        max_nodes: usize,
        #[arg(long, default_value_t = 1)]
        labels: usize,
        #[arg(long, default_value_t = 5)]
        max_edges: usize,
    },
}

enum Failure {
    Usage(String),
    Ceiling(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Ceiling(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Ceiling(m) => m,
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        match e {
            OracleError::Ceiling { .. } => Failure::Ceiling(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Failure {
        match e {
            RewriteError::Oracle(o) => o.into(),
            _ => usage(e),
        }
    }
}

fn ceiling() -> Result<u128, Failure> {
    match std::env::var(CEILING_VAR) {
        Ok(v) => v.parse().map_err(|_| usage(format!("{CEILING_VAR} must be a number, got `{v}`"))),
        Err(_) => Ok(DEFAULT_CEILING),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_expr(text: &str, alphabet: Option<&[String]>) -> Result<Expr, Failure> {
    match alphabet {
        Some(ab) => parse_in(text, ab),
        None => parse(text),
    }
    .map_err(usage)
}

fn split_alphabet(s: &Option<String>) -> Option<Vec<String>> {
    s.as_ref()
        .map(|s| s.split(',').map(|l| l.trim().to_string()).filter(|l| !l.is_empty()).collect())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn verdict_code(v: &EquivVerdict) -> u8 {
    if v.is_equivalent() {
        0
    } else {
        1
    }
}

fn run(cli: Cli, out: &mut String) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse { expr, alphabet } => {
            let e = parse_expr(&expr, split_alphabet(&alphabet).as_deref())?;
            say!(out, "{e}");
            say!(out, "{}", e.operators_used());
        }
        Command::Eval { expr, graph, json } => {
            let g = Graph::from_json(&read(&graph)?).map_err(usage)?;
            let e = parse_expr(&expr, Some(g.labels()))?;
            let pairs = g.pairs_named(&evaluate(&e, &g).map_err(usage)?);
            if json {
                say!(out, "{}", pretty(&json!(pairs)));
            } else {
                let items: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
                say!(out, "{{{}}}", items.join(", "));
            }
        }
        Command::ToAutomaton {
            expr,
            alphabet,
            dot,
            identity_free,
        } => {
            let ab = split_alphabet(&alphabet);
            let e = parse_expr(&expr, ab.as_deref())?;
            let mut a = expr_to_automaton(&e).map_err(usage)?;
            if let Some(ab) = &ab {
                a.extend_alphabet(ab);
            }
            if identity_free {
                a = remove_identity_transitions(&a).trim().renumbered("q");
            }
            say!(out, "{}", if dot { a.to_dot() } else { a.to_json() });
        }
        Command::ToExpr { automaton } => {
            let a = ConditionAutomaton::from_json(&read(&automaton)?).map_err(usage)?;
            say!(out, "{}", automaton_to_expr(&a));
        }
        Command::Rewrite {
            expr,
            pipeline,
            certify: _,
            no_certify,
            max_nodes,
            labels,
        } => {
            let e = parse_expr(&expr, None)?;
            let certify = if no_certify {
                None
            } else {
                let mut config = default_certificate_config(pipeline);
                if let Some(n) = max_nodes {
                    config.bound.max_nodes = n;
                }
                if let Some(l) = labels {
                    config.bound.labels = l;
                }
                config.ceiling = ceiling()?;
                Some(config)
            };
            let report = rewrite(&e, pipeline, certify)?;
            say!(out, "{}", report.to_json());
            return Ok(report.certificate.as_ref().map_or(0, verdict_code));
        }
        Command::Equiv {
            e1,
            e2,
            mode,
            class,
            max_nodes,
            labels,
            max_edges,
            random,
            seed,
        } => {
            if max_nodes == 0 || labels == 0 {
                return Err(usage("bounds must be positive"));
            }
            let mut config = OracleConfig::new(class, Bound::new(max_nodes, labels).with_max_edges(max_edges));
            config.random_instances = random;
            config.seed = seed;
            config.ceiling = ceiling()?;
            let ab = if class.is_unlabeled() {
                standard_alphabet(1)
            } else {
                standard_alphabet(labels)
            };
            let (x, y) = (parse_expr(&e1, Some(&ab))?, parse_expr(&e2, Some(&ab))?);
            let v = check_equivalence(&x, &y, mode.into(), &config)?;
            say!(out, "{}", pretty(&serde_json::to_value(&v).expect("verdict serializes")));
            return Ok(verdict_code(&v));
        }
        Command::Subsumes { f1, f2, mode, class } => {
            let q = LatticeQuery::new(f1, f2, mode.into(), class);
            let holds = subsumes(&q).map_err(usage)?;
            say!(out, "{}", pretty(&json!({ "query": q, "subsumes": holds })));
        }
        Command::Witness { f1, f2, mode, class } => {
            let q = LatticeQuery::new(f1, f2, mode.into(), class);
            if subsumes(&q).map_err(usage)? {
                return Err(usage(format!("L{f1} is subsumed by L{f2} here; there is nothing to separate")));
            }
            let report = match separation_witness(f1, f2, mode.into(), class) {
                Some(w) => {
                    let outcome = w.run_check();
                    json!({ "query": q, "witness": w, "outcome": outcome })
                }
                None => json!({ "query": q, "witness": null }),
            };
            say!(out, "{}", pretty(&report));
        }
        Command::Enumerate {
            class,
            max_nodes,
            labels,
            max_edges,
        } => {
            let labels = if class.is_unlabeled() { 1 } else { labels };
            let bound = Bound::new(max_nodes, labels).with_max_edges(max_edges);
            let count = instance_count(class, labels, bound);
            let limit = ceiling()?;
            if count > limit {
                return Err(OracleError::Ceiling { count, ceiling: limit }.into());
            }
            for g in enumerate(class, &standard_alphabet(labels), bound) {
                say!(out, "{}", g.to_json());
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // a closed pipe on the reader's side is not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("navrel: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
