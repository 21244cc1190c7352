mod bench;
mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{CliError, Output};

#[derive(Parser)]
#[command(name = "cvform", version, about = "Confluent Vandermonde forms: evaluation, ribbons, bases")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a form to a polynomial.
    Eval {
        form: String,
        /// List the signed row-blocks of the expansion.
        #[arg(long)]
        trace: bool,
    },
    /// Show zero removal, the decoding table and every row-block.
    Expand { form: String },
    /// Type, standard permutation and degree of a form.
    Type { form: String },
    /// Class and ribbon of a regular form.
    Class { form: String },
    /// Describe the ribbon of a class, or list ribbons with --n.
    Ribbon {
        class: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Standard tableaux on the ribbon of a class.
    Tableaux {
        class: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Generate the standard basis.
    Basis {
        n: usize,
        #[arg(long)]
        degree: Option<i64>,
        /// Reading order, a permutation of 1..N such as "4 3 2 1".
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// Counting series.
    Count {
        n: usize,
        #[arg(value_enum)]
        what: commands::CountKind,
        /// Restrict the generating function to one power of q, e.g. "q^16".
        #[arg(long)]
        at: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        n: usize,
        #[arg(value_enum)]
        suite: verify::Suite,
        /// Random samples where a suite cannot be exhaustive.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        degree: Option<i64>,
        /// Rank on leading row-blocks only.
        #[arg(long)]
        leading: bool,
    },
    /// Flip a standard tableau (JSON) or standard form.
    Flip { input: String },
    /// Compare term counts and timings of the naive and block strategies.
    Bench {
        /// Forms to measure; random regular forms when omitted.
        forms: Vec<String>,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = bench::Strategy::Both)]
        strategy: bench::Strategy,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Eval { form, trace } => commands::eval(&form, trace),
        Command::Expand { form } => commands::expand(&form),
        Command::Type { form } => commands::type_of(&form),
        Command::Class { form } => commands::class(&form),
        Command::Ribbon { class, n, degree } => commands::ribbon(class.as_deref(), n, degree),
        Command::Tableaux { class, count_only } => commands::tableaux(&class, count_only),
        Command::Basis {
            n,
            degree,
            order,
            count_only,
        } => commands::basis(n, degree, order.as_deref(), count_only),
        Command::Count { n, what, at } => commands::count(n, what, at.as_deref()),
        Command::Verify {
            n,
            suite,
            samples,
            seed,
            degree,
            leading,
        } => verify::run(n, suite, samples, seed, degree, leading),
        Command::Flip { input } => commands::flip(&input),
        Command::Bench {
            forms,
            n_max,
            samples,
            seed,
            strategy,
        } => bench::run(&forms, n_max, samples, seed, strategy),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            print!("{}", out.render(format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
