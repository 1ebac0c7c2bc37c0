use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sologic::stock::DEFAULT_SEED;
use sologic::workbench::commands::{self, Direction, Outcome};
use sologic::workbench::examples::{ExamplesConfig, StockLevel};
use sologic::workbench::report::Format;
use sologic::workbench::search::{SearchBounds, Semantics};

#[derive(Parser)]
#[command(name = "sologic", version, about = "Second-order logic workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first-order coding of an L2-pure formula.
    Encode { formula: String },
    /// Print the reverse coding of an L1-pure formula.
    Decode { formula: String },
    /// Check a proof file.
    CheckProof { file: PathBuf },
    /// Translate a proof file between the two languages.
    TranslateProof {
        file: PathBuf,
        #[arg(long, default_value = "down", value_parser = parse::<Direction>)]
        direction: Direction,
    },
    /// Evaluate a formula in a classical model file.
    Eval {
        model: PathBuf,
        formula: String,
        interp: Option<String>,
    },
    /// Force a formula at a point of a Kripke model file.
    Force {
        model: PathBuf,
        point: String,
        formula: String,
        interp: Option<String>,
    },
    /// Search for a finite countermodel.
    Countermodel {
        formula: String,
        /// Comma-separated `points=, domain=, arity=, families=, time=`.
        #[arg(long, default_value = "", value_parser = parse::<SearchBounds>)]
        bounds: SearchBounds,
        #[arg(long, default_value = "kripke", value_parser = parse::<Semantics>)]
        semantics: Semantics,
        /// Only consider full models.
        #[arg(long)]
        full_only: bool,
        #[arg(long, default_value = "text", value_parser = parse::<Format>)]
        format: Format,
    },
    /// Run the worked examples and bounded lemma checks.
    PaperExamples {
        #[arg(long, default_value = "text", value_parser = parse::<Format>)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// `empty`, `default` or `full`.
        #[arg(long, default_value = "default", value_parser = parse::<StockLevel>)]
        stock: StockLevel,
        /// Kripke model file replacing the two-point Peirce model.
        #[arg(long)]
        peirce_model: Option<PathBuf>,
    },
}

fn parse<T: std::str::FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Encode { formula } => commands::encode(&formula),
        Command::Decode { formula } => commands::decode(&formula),
        Command::CheckProof { file } => commands::check_proof(&file),
        Command::TranslateProof { file, direction } => commands::translate_proof(&file, direction),
        Command::Eval { model, formula, interp } => commands::eval(&model, &formula, interp.as_deref()),
        Command::Force {
            model,
            point,
            formula,
            interp,
        } => commands::force(&model, &point, &formula, interp.as_deref()),
        Command::Countermodel {
            formula,
            bounds,
            semantics,
            full_only,
            format,
        } => commands::countermodel(&formula, &bounds, semantics, full_only, format),
        Command::PaperExamples {
            format,
            seed,
            stock,
            peirce_model,
        } => {
            let peirce_model = match peirce_model.map(|p| commands::load_peirce_model(&p)).transpose() {
                Ok(m) => m,
                Err(o) => return o,
            };
            let cfg = ExamplesConfig {
                level: stock,
                seed,
                peirce_model,
            };
            commands::examples(&cfg, format)
        }
    }
}

fn main() -> ExitCode {
    let out = run(Cli::parse().command);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
