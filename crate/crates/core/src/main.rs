use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qtopo::cli::{self, Format, Settings};

#[derive(Parser)]
#[command(name = "qtopo", version, about = "Quantum-topology invariants from the command line")]
struct Args {
    #[arg(long, value_enum, default_value = "machine", global = true)]
    format: FormatArg,

    /// Largest genus accepted by symplectic and cobordism verbs.
    #[arg(long, default_value_t = cli::DEFAULT_MAX_GENUS, global = true)]
    max_genus: usize,

    /// Seed for the `verify` suites.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Script with one command per line; stdin when neither this nor a verb is given.
    #[arg(long)]
    file: Option<std::path::PathBuf>,

    #[command(subcommand)]
    verb: Option<Verb>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Machine,
    Text,
}

/// Each verb takes the rest of its command line in the script grammar.
#[derive(Subcommand)]
enum Verb {
    /// Evaluate a factorial series at a root of unity: `level= n= fs=[..]`.
    HabiroEval { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Expansion in powers of (1-q): `level= fs=[..]`.
    HabiroTaylor { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Coordinates of a diagram combination modulo AS and IHX.
    DiagramReduce { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Weight of a diagram or series of a combination: `data= diagram=` or `data= <comb>`.
    Weight { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Whether a truncated combination is group-like.
    Grouplike { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Bracket of two tree combinations: `g= <trees> | <trees>`.
    TreeBracket { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Moyal product of two observables: `order= <poly> | <poly>`.
    Moyal { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Compose cobordisms or twist words separated by `|`.
    CobCompose { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Homology cobordism, cylinder and Torelli predicates.
    CobCheck { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
    /// Run a randomized verification suite.
    Verify { #[arg(trailing_var_arg = true, allow_hyphen_values = true)] rest: Vec<String> },
}

impl Verb {
    fn line(&self) -> String {
        let (name, rest) = match self {
            Verb::HabiroEval { rest } => ("habiro-eval", rest),
            Verb::HabiroTaylor { rest } => ("habiro-taylor", rest),
            Verb::DiagramReduce { rest } => ("diagram-reduce", rest),
            Verb::Weight { rest } => ("weight", rest),
            Verb::Grouplike { rest } => ("grouplike", rest),
            Verb::TreeBracket { rest } => ("tree-bracket", rest),
            Verb::Moyal { rest } => ("moyal", rest),
            Verb::CobCompose { rest } => ("cob-compose", rest),
            Verb::CobCheck { rest } => ("cob-check", rest),
            Verb::Verify { rest } => ("verify", rest),
        };
        std::iter::once(name.to_string()).chain(rest.iter().cloned()).collect::<Vec<_>>().join(" ")
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut settings = Settings {
        format: match args.format {
            FormatArg::Machine => Format::Machine,
            FormatArg::Text => Format::Text,
        },
        max_genus: args.max_genus,
        ..Settings::default()
    };
    if let Some(seed) = args.seed {
        settings.verify.seed = seed;
    }
    let script = match (&args.verb, &args.file) {
        (Some(v), None) => Ok(v.line()),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        (None, None) => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("stdin: {e}"))
        }
        (Some(_), Some(_)) => Err("give either a verb or --file, not both".to_string()),
    };
    let script = match script {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = cli::run_script(&script, &settings, &mut std::io::stdout().lock());
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(cli::exit_code(&result) as u8)
}
