mod commands;

use std::io::Read;
use std::process::ExitCode;

use ck_spectra::{Error, Graph, Multiplicity};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "ck-spectra",
    version,
    about = "Ideal structure and prime/primitive spectra of graph C*-algebras"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Print explanatory notes.
    #[arg(short, long, global = true)]
    verbose: bool,

    /// Maximum vertex count for operations that scan all vertex subsets
    /// (at most 30).
    #[arg(long, global = true)]
    limit: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A graph file in `.gcg` format, or `-` for standard input.
#[derive(Args, Debug)]
struct Input {
    file: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex classes, Conditions (K) and (L), directedness and separation.
    Check(Input),
    /// Maximal tails, clusters and finite-return vertices.
    Tails(Input),
    /// Admissible pairs with their prime/primitive classification.
    Ideals(Input),
    /// The quotient graph E \ (H, S).
    Quotient {
        /// Comma-separated vertices of H.
        #[arg(long = "H", value_delimiter = ',')]
        h: Vec<String>,
        /// Comma-separated vertices of S.
        #[arg(long = "S", value_delimiter = ',')]
        s: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// The prime ideal space.
    Spec {
        #[arg(long, value_enum, default_value_t = SideArg::Ideal)]
        side: SideArg,
        #[command(flatten)]
        input: Input,
    },
    /// The primitive ideal space.
    Prim {
        #[arg(long, value_enum, default_value_t = SideArg::Ideal)]
        side: SideArg,
        #[command(flatten)]
        input: Input,
    },
    /// Closure of a set of points, computed on every side.
    Closure {
        /// Comma-separated point labels as printed by `spec`, e.g. T4,FR(x).
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        /// Close in the primitive space instead of the prime space.
        #[arg(long)]
        prim: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Run every consistency check; exit 1 on a counterexample.
    Verify {
        #[arg(long, default_value_t = 12)]
        exhaustive_limit: usize,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        input: Input,
    },
    /// Generate a graph in `.gcg` format.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Convert a graph to JSON or Graphviz DOT.
    Export {
        #[arg(long, conflicts_with = "dot", required_unless_present = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Graph,
    Ideal,
    Refined,
}

impl From<SideArg> for ck_spectra::Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Graph => ck_spectra::Side::GraphSide,
            SideArg::Ideal => ck_spectra::Side::IdealSide,
            SideArg::Refined => ck_spectra::Side::RefinedGraphSide,
        }
    }
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// The seven-vertex running example.
    Fixture,
    /// The subset graph on the nonempty subsets of a set.
    Ea {
        /// Comma-separated elements (at most 4).
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        /// Bundle multiplicity: a positive integer or `inf`.
        #[arg(long, default_value = "inf")]
        mult: Multiplicity,
    },
    /// A seeded random graph, repaired to satisfy Condition (K).
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0.3)]
        omega_prob: f64,
        /// Skip the Condition (K) repair pass.
        #[arg(long)]
        no_repair: bool,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Engine(Error),
    /// A bad argument that is not a graph error, e.g. an unknown point label.
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            CliError::Usage(_) => 3,
            CliError::Engine(e) => match e {
                Error::VerificationFailure(_) => 1,
                Error::Parse(_) => 2,
                Error::SizeLimitExceeded { .. } => 4,
                _ => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) | CliError::Usage(m) => m.clone(),
            CliError::Engine(e) => e.to_string(),
        }
    }
}

fn read_graph(input: &Input, limit: Option<usize>) -> Result<Graph, CliError> {
    let text = if input.file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.file)
            .map_err(|e| CliError::Io(format!("{}: {e}", input.file)))?
    };
    let g = ck_spectra::parse_graph(&text).map_err(|e| {
        let name = if input.file == "-" {
            "<stdin>"
        } else {
            &input.file
        };
        CliError::Io(format!("{name}:{e}"))
    })?;
    Ok(match limit {
        Some(l) => g.with_enumeration_limit(l),
        None => g,
    })
}

fn run(cli: &Cli) -> Result<commands::Output, CliError> {
    let ctx = commands::Context {
        verbose: cli.verbose,
    };
    let graph = |input: &Input| read_graph(input, cli.limit);
    match &cli.command {
        Command::Check(i) => commands::check(&ctx, &graph(i)?),
        Command::Tails(i) => commands::tails(&ctx, &graph(i)?),
        Command::Ideals(i) => commands::ideals(&ctx, &graph(i)?),
        Command::Quotient { h, s, input } => commands::quotient(&ctx, &graph(input)?, h, s),
        Command::Spec { side, input } => {
            commands::space(&ctx, &graph(input)?, false, (*side).into())
        }
        Command::Prim { side, input } => {
            commands::space(&ctx, &graph(input)?, true, (*side).into())
        }
        Command::Closure {
            points,
            prim,
            input,
        } => commands::closure(&ctx, &graph(input)?, points, *prim),
        Command::Verify {
            exhaustive_limit,
            samples,
            seed,
            input,
        } => {
            let opts = ck_spectra::VerifyOptions {
                exhaustive_limit: *exhaustive_limit,
                samples: *samples,
                seed: *seed,
                ..Default::default()
            };
            commands::verify(&ctx, &graph(input)?, &opts)
        }
        Command::Gen { what } => match what {
            GenCommand::Fixture => commands::gen(ck_spectra::generators::running_example().graph),
            GenCommand::Ea { set, mult } => {
                let names: Vec<&str> = set.iter().map(String::as_str).collect();
                commands::gen(ck_spectra::generators::ea_graph(&names, *mult)?)
            }
            GenCommand::Random {
                seed,
                vertices,
                density,
                omega_prob,
                no_repair,
            } => {
                for (name, p) in [("density", density), ("omega-prob", omega_prob)] {
                    if !(0.0..=1.0).contains(p) {
                        return Err(CliError::Usage(format!("--{name} must lie in [0, 1]")));
                    }
                }
                let params = ck_spectra::generators::RandomGraphParams {
                    vertices: *vertices,
                    density: *density,
                    omega_prob: *omega_prob,
                    repair: !no_repair,
                };
                commands::gen(ck_spectra::generators::random_graph(*seed, params)?)
            }
        },
        Command::Export { json, input, .. } => commands::export(&graph(input)?, *json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                ),
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
