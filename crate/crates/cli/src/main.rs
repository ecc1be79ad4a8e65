use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use causal_explain::{
    build_skeleton, common_orientations, count_extensions, d_separated_names, explain,
    extend_to_dag, markov_equivalent, parse_ci, parse_graph, parse_knowledge, phase1,
    verify::exhaustive_mismatch, verify_explanation, witness_extensions, write_ci, write_dot,
    BackgroundKnowledge, Check, Dag, DependencyModel, ExplainError, ForbiddenSemantics, Generation,
    Options, Pdag, SearchMode,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "causal-explain", version)]
#[command(about = "Find DAGs that entail exactly a list of conditional independences")]
struct Cli {
    /// Output format for graphs
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Search {
    Exhaustive,
    Neighborhood,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    /// Listed statements and local Markov statements
    Local,
    /// Also compare every statement for graphs within --cap vertices
    Auto,
    /// Always compare every statement; fail above --cap vertices
    Exhaustive,
}

#[derive(Args)]
struct ModelInput {
    /// Independence statements, one per line
    #[arg(long)]
    ci: PathBuf,

    /// Comma-separated vertex list; overrides the vertices named in files
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,

    /// Separating-set search
    #[arg(long, value_enum, default_value_t = Search::Exhaustive)]
    search: Search,
}

#[derive(Args)]
struct KnowledgeInput {
    /// Required and forbidden edges
    #[arg(long)]
    bk: Option<PathBuf>,

    /// Only check forbidden edges instead of orienting them away
    #[arg(long)]
    paper_literal: bool,
}

#[derive(Args)]
struct CheckInput {
    #[arg(long, value_enum, default_value_t = CheckMode::Auto)]
    check: CheckMode,

    /// Vertex cap for the statement-by-statement comparison
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Adjacencies and separating sets
    Skeleton {
        #[command(flatten)]
        model: ModelInput,
    },
    /// Skeleton with unshielded colliders oriented
    Pattern {
        #[command(flatten)]
        model: ModelInput,
    },
    /// Orientations shared by every explanation
    Orient {
        #[command(flatten)]
        model: ModelInput,
        #[command(flatten)]
        knowledge: KnowledgeInput,
        #[command(flatten)]
        check: CheckInput,
    },
    /// Extend a maximally oriented graph to a DAG
    Extend {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Check that a DAG explains a model
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ci: PathBuf,
        #[command(flatten)]
        check: CheckInput,
    },
    /// Find a DAG explaining a model
    Explain {
        #[command(flatten)]
        model: ModelInput,
        #[command(flatten)]
        knowledge: KnowledgeInput,
        #[command(flatten)]
        check: CheckInput,
    },
    /// Number of DAG extensions of a maximally oriented graph
    Count {
        #[arg(long)]
        graph: PathBuf,
        /// Most undirected edges enumerated together
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Two extensions orienting an undirected edge each way
    Witness {
        #[arg(long)]
        graph: PathBuf,
        a: String,
        b: String,
    },
    /// d-separation query: A B [| S...], sets comma-separated
    Dsep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(num_args = 2.., allow_hyphen_values = true)]
        query: Vec<String>,
    },
    /// Markov equivalence of two DAGs
    Equiv { first: PathBuf, second: PathBuf },
    /// Independence statements entailed by a DAG
    Fromdag {
        #[arg(long)]
        graph: PathBuf,
        /// All disjoint vertex sets instead of single vertices
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
}

/// What went wrong, by exit status.
enum Failure {
    /// Exit 1 with `false` on stdout.
    False,
    /// Exit 1 with a reason on stderr.
    Negative(String),
    /// Exit 2: bad input.
    Usage(String),
}

type Outcome = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Pdag, Failure> {
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_dag(path: &Path) -> Result<Dag, Failure> {
    Dag::try_from(load_graph(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<DependencyModel, Failure> {
    parse_ci(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_knowledge(k: &KnowledgeInput) -> Result<BackgroundKnowledge, Failure> {
    match &k.bk {
        None => Ok(BackgroundKnowledge::new()),
        Some(path) => {
            parse_knowledge(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
    }
}

fn vertices(input: &ModelInput, m: &DependencyModel, k: &BackgroundKnowledge) -> Vec<String> {
    match &input.vars {
        Some(vars) => vars.iter().map(|v| v.trim().to_string()).collect(),
        None => m
            .vertices()
            .into_iter()
            .chain(k.vertices())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    }
}

fn search(s: Search) -> SearchMode {
    match s {
        Search::Exhaustive => SearchMode::Exhaustive,
        Search::Neighborhood => SearchMode::Neighborhood,
    }
}

fn check(c: &CheckInput) -> Check {
    let cap = c.cap as usize;
    match c.check {
        CheckMode::Local => Check::Local,
        CheckMode::Auto => Check::Auto { cap },
        CheckMode::Exhaustive => Check::Exhaustive { cap },
    }
}

fn options(model: &ModelInput, knowledge: &KnowledgeInput, c: &CheckInput) -> Options {
    Options {
        search: search(model.search),
        forbidden: if knowledge.paper_literal {
            ForbiddenSemantics::CheckOnly
        } else {
            ForbiddenSemantics::Orient
        },
        check: check(c),
    }
}

fn render(g: &Pdag, format: Format) -> String {
    match format {
        Format::Text => g.to_string(),
        Format::Dot => write_dot(g),
    }
}

fn explain_failure(e: ExplainError) -> Failure {
    match e {
        ExplainError::Input(msg) => Failure::Usage(msg),
        ExplainError::NoExplanation { phase, reason } => {
            Failure::Negative(format!("NO_EXPLANATION ({phase}): {reason}"))
        }
    }
}

fn answer(holds: bool) -> Outcome {
    if holds {
        Ok("true\n".into())
    } else {
        Err(Failure::False)
    }
}

/// Splits `A B | S` into vertex names. Sets are comma-separated; the bar
/// is optional, and without it every token after the second joins `S`.
fn dsep_query(tokens: &[String]) -> Result<[Vec<String>; 3], Failure> {
    let joined = tokens.join(" ");
    let (head, tail) = joined.split_once('|').unwrap_or((&joined, ""));
    let head: Vec<&str> = head.split_whitespace().collect();
    let (sides, extra) = match head.as_slice() {
        [a, b, rest @ ..] if tail.is_empty() || rest.is_empty() => ([*a, *b], rest.join(",")),
        _ => return Err(usage("dsep expects: A B [| S]")),
    };
    let names = |t: &str| -> Vec<String> {
        t.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect()
    };
    Ok([
        names(sides[0]),
        names(sides[1]),
        names(&format!("{extra},{tail}")),
    ])
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Skeleton { model } => {
            let m = load_model(&model.ci)?;
            let vars = vertices(&model, &m, &BackgroundKnowledge::new());
            let (g, seps) = build_skeleton(&m, &vars, search(model.search)).map_err(usage)?;
            let mut out = render(&g, format);
            if let Format::Text = format {
                for line in seps.describe(&g).lines() {
                    writeln!(out, "# sep {line}").unwrap();
                }
            }
            Ok(out)
        }
        Command::Pattern { model } => {
            let m = load_model(&model.ci)?;
            let vars = vertices(&model, &m, &BackgroundKnowledge::new());
            match phase1(&m, &vars, search(model.search)) {
                Ok(g) => Ok(render(&g, format)),
                Err(e @ causal_explain::DiscoveryError::ConflictingColliders { .. }) => {
                    Err(Failure::Negative(format!("NO_EXPLANATION (pattern): {e}")))
                }
                Err(e) => Err(usage(e)),
            }
        }
        Command::Orient {
            model,
            knowledge,
            check,
        } => {
            let m = load_model(&model.ci)?;
            let k = load_knowledge(&knowledge)?;
            let vars = vertices(&model, &m, &k);
            let opts = options(&model, &knowledge, &check);
            let g = common_orientations(&m, &vars, &k, &opts).map_err(explain_failure)?;
            Ok(render(&g, format))
        }
        Command::Extend { graph } => {
            let g = load_graph(&graph)?;
            let d = extend_to_dag(&g).map_err(|e| Failure::Negative(format!("FAIL: {e}")))?;
            Ok(render(&d, format))
        }
        Command::Verify {
            graph,
            ci,
            check: c,
        } => {
            let g = load_graph(&graph)?;
            let m = load_model(&ci)?;
            let local = verify_explanation(&g, &m).map_err(usage)?;
            if let Some(f) = local.failure {
                return Err(Failure::Negative(format!("FAIL: {f}")));
            }
            let dag = Dag::try_from(g).expect("verified acyclic");
            let cap = match check(&c) {
                Check::Local => None,
                Check::Auto { cap } => (dag.n() <= cap).then_some(cap),
                Check::Exhaustive { cap } => Some(cap),
            };
            if let Some(cap) = cap {
                if let Some(f) = exhaustive_mismatch(&dag, &m, cap).map_err(usage)? {
                    return Err(Failure::Negative(format!("FAIL: {f}")));
                }
            }
            Ok("PASS\n".into())
        }
        Command::Explain {
            model,
            knowledge,
            check,
        } => {
            let m = load_model(&model.ci)?;
            let k = load_knowledge(&knowledge)?;
            let vars = vertices(&model, &m, &k);
            let opts = options(&model, &knowledge, &check);
            let d = explain(&m, &vars, &k, &opts).map_err(explain_failure)?;
            Ok(render(&d, format))
        }
        Command::Count { graph, cap } => {
            let g = load_graph(&graph)?;
            let n = count_extensions(&g, cap as usize).map_err(usage)?;
            Ok(format!("{n}\n"))
        }
        Command::Witness { graph, a, b } => {
            let g = load_graph(&graph)?;
            let (fwd, back) = witness_extensions(&g, &a, &b).map_err(|e| match e {
                causal_explain::ChordalError::NoWitness(..) => {
                    Failure::Negative(format!("FAIL: {e}"))
                }
                other => usage(other),
            })?;
            Ok(match format {
                Format::Text => format!("# {a} -> {b}\n{fwd}# {b} -> {a}\n{back}"),
                Format::Dot => format!("{}{}", write_dot(&fwd), write_dot(&back)),
            })
        }
        Command::Dsep { graph, query } => {
            let g = load_dag(&graph)?;
            let [a, b, s] = dsep_query(&query)?;
            fn refs(v: &[String]) -> Vec<&str> {
                v.iter().map(String::as_str).collect()
            }
            answer(d_separated_names(&g, &refs(&a), &refs(&b), &refs(&s)).map_err(usage)?)
        }
        Command::Equiv { first, second } => {
            let (g1, g2) = (load_dag(&first)?, load_dag(&second)?);
            answer(markov_equivalent(&g1, &g2).map_err(usage)?)
        }
        Command::Fromdag { graph, full, cap } => {
            let g = load_dag(&graph)?;
            let mode = if full {
                Generation::Full { cap: cap as usize }
            } else {
                Generation::Pairwise
            };
            let m = DependencyModel::from_dag(&g, mode).map_err(usage)?;
            Ok(write_ci(&m))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::False) => {
            println!("false");
            ExitCode::from(1)
        }
        Err(Failure::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
