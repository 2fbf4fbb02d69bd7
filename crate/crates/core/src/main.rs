use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use evcom::crosscheck::render_word;
use evcom::identity::parse_rational;
use evcom::oracle::{EquivalenceGraph, OracleOptions, ScalarMode, DEFAULT_MAX_DEGREE};
use evcom::perm::{format_perm, parse_perm, Notation};
use evcom::report::{analyze, AnalyzeError, AnalyzeOptions};
use evcom::saturation::{lift, SaturationOptions};
use evcom::verify::{render_table, run_all, VerifyOptions};
use evcom::{Error, Permutation, TwoTermIdentity};

#[derive(Parser)]
#[command(
    name = "evcom",
    version,
    about = "Eventual commutativity of algebras with a two-term identity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Saturate an identity and report its degree of eventual commutativity or nilpotency.
    Analyze {
        /// One-line form such as "[3,2,1]" or cycles such as "(1 3)".
        #[arg(long)]
        sigma: String,
        /// Degree; required with cycle notation.
        #[arg(long)]
        n: Option<usize>,
        /// Scalar as an integer or p/q.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        oracle_max_k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "on")]
        seed_latyshev: Switch,
    },
    /// Show the lifted identities T_i(sigma).
    Lift {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        n: Option<usize>,
        /// Single index in 0..=n+1; all of them when omitted.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Query the brute-force consequence graph in one degree.
    Oracle {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        k: usize,
        /// Pairs "a;b" of permutations of size k.
        #[arg(long)]
        query: Vec<String>,
        /// Work with scalars modulo this prime instead of over the rationals.
        #[arg(long)]
        prime: Option<u64>,
        /// Permit k = 9.
        #[arg(long)]
        allow_nine: bool,
    },
    /// Run the reproduction suite and print a pass/fail table.
    VerifyPaper {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        skip_oracle: bool,
    },
}

enum Failure {
    Usage(String),
    Resource(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn flag_error(flag: &str, e: Error) -> Failure {
    Failure::Usage(format!("--{flag}: {e}"))
}

fn parse_sigma(sigma: &str, n: Option<usize>) -> Result<Permutation, Failure> {
    parse_perm(sigma, n).map_err(|e| flag_error("sigma", e))
}

fn parse_identity(sigma: &str, n: Option<usize>, q: &str) -> Result<TwoTermIdentity, Failure> {
    let sigma = parse_sigma(sigma, n)?;
    let q = parse_rational(q).map_err(|e| flag_error("q", e))?;
    TwoTermIdentity::new(sigma, q).map_err(|e| flag_error("q", e))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze {
            sigma,
            n,
            q,
            max_degree,
            oracle_max_k,
            format,
            seed_latyshev,
        } => {
            let identity = parse_identity(&sigma, n, &q)?;
            let options = AnalyzeOptions {
                saturation: SaturationOptions {
                    max_degree,
                    seed_latyshev: matches!(seed_latyshev, Switch::On),
                    ..SaturationOptions::default()
                },
                oracle_max_k,
                ..AnalyzeOptions::default()
            };
            let print = |doc: &evcom::report::AnalysisDocument| match format {
                Format::Text => print!("{}", doc.to_text()),
                Format::Json => println!("{}", doc.to_json()),
            };
            match analyze(&identity, &options) {
                Ok(doc) => {
                    print(&doc);
                    if doc.oracle_disagrees() {
                        return Err(Failure::Usage(
                            "oracle disagrees with the saturated groups".into(),
                        ));
                    }
                    Ok(())
                }
                Err(AnalyzeError::Resource { error, partial }) => {
                    print(&partial);
                    Err(Failure::Resource(error.to_string()))
                }
                Err(AnalyzeError::Failed(e)) => Err(e.into()),
            }
        }
        Command::Lift { sigma, n, i } => {
            let sigma = parse_sigma(&sigma, n)?;
            let m = sigma.size();
            let indices: Vec<usize> = match i {
                Some(i) => vec![i],
                None => (0..=m + 1).collect(),
            };
            println!(
                "sigma = {sigma}: {} - {}",
                render_word(&(1..=m).collect::<Vec<_>>()),
                render_word(&sigma.images())
            );
            for i in indices {
                let tau = lift(&sigma, i).map_err(|e| flag_error("i", e))?;
                println!(
                    "T_{i}: {} = {}  {} - {}",
                    format_perm(&tau, Notation::OneLine),
                    format_perm(&tau, Notation::Cycles),
                    render_word(&(1..=m + 1).collect::<Vec<_>>()),
                    render_word(&tau.images())
                );
            }
            Ok(())
        }
        Command::Oracle {
            sigma,
            n,
            q,
            k,
            query,
            prime,
            allow_nine,
        } => {
            let identity = parse_identity(&sigma, n, &q)?;
            let options = OracleOptions {
                scalars: prime.map_or(ScalarMode::Rational, ScalarMode::Prime),
                allow_degree_nine: allow_nine,
            };
            let graph = EquivalenceGraph::build(&identity, k, &options)?;
            if query.is_empty() {
                println!("{}", graph.census());
                return Ok(());
            }
            for pair in &query {
                let (a, b) = pair.split_once(';').ok_or_else(|| {
                    Failure::Usage(format!("--query: expected \"a;b\", got \"{pair}\""))
                })?;
                let a = parse_perm(a.trim(), Some(k)).map_err(|e| flag_error("query", e))?;
                let b = parse_perm(b.trim(), Some(k)).map_err(|e| flag_error("query", e))?;
                println!("{a} ~ {b}: {}", graph.equivalent(&a, &b)?);
            }
            Ok(())
        }
        Command::VerifyPaper { max_n, skip_oracle } => {
            let results = run_all(&VerifyOptions {
                max_n,
                skip_oracle,
                ..VerifyOptions::default()
            });
            print!("{}", render_table(&results));
            for r in &results {
                println!("{}", r.summary());
            }
            if results.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Resource(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
