use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact computations with shuffle bases and power sums of quasisymmetric
/// functions.
#[derive(Parser, Debug)]
#[command(name = "qsym", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ShuffleCharacter,
    Qps,
    Antipode,
    ThetaEigen,
    Integrality,
    FgRoundtrip,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print P_α (or X_α with --shuffle) in the monomial basis.
    Expand {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        comp: String,
        /// Expand the shuffle basis element X_α instead of P_α.
        #[arg(long)]
        shuffle: bool,
    },
    /// Rewrite M_α, or an element of M, in the shuffle basis.
    Convert {
        #[arg(long)]
        basis: String,
        #[arg(long, conflicts_with = "element", required_unless_present = "element")]
        comp: Option<String>,
        /// An element of M in text form, e.g. `M[2,1] + 1/3 M[3]`.
        #[arg(long)]
        element: Option<String>,
    },
    /// Change-of-basis matrix in degree n: row α holds X_α in M.
    Table {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        degree: usize,
        /// Row α holds M_α in the shuffle basis instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Run a verification suite; exits 2 on failure.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Shuffle basis under test; for theta-eigen, the even-part character.
        #[arg(long, default_value = "type2")]
        basis: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// Θ applied to M_α or to an element of M.
    Theta {
        #[arg(long, conflicts_with = "element", required_unless_present = "element")]
        comp: Option<String>,
        #[arg(long)]
        element: Option<String>,
    },
    /// Values of exp(ξ) on M_α for |α| ≤ degree.
    Exp {
        /// One of eta, counit, or any functional vanishing at the empty composition.
        #[arg(long, default_value = "eta")]
        functional: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// Values of log(ζ) on M_α for |α| ≤ degree.
    Log {
        #[arg(long, default_value = "zeta")]
        functional: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// The universal map to QSym for an element of M, a graph or a poset.
    Phi {
        #[arg(long, group = "input")]
        element: Option<String>,
        /// Graph as `n; u-v,...`; uses the character "no edges".
        #[arg(long, group = "input")]
        graph: Option<String>,
        /// Poset as `n; u<v,...`; uses the all-ones character.
        #[arg(long, group = "input")]
        poset: Option<String>,
        /// Character on QSym used with --element.
        #[arg(long, default_value = "zeta")]
        functional: String,
    },
    /// The universal map to the shuffle algebra for an element of M.
    Psi {
        #[arg(long)]
        element: String,
        #[arg(long, default_value = "eta")]
        functional: String,
    },
    /// Infinitesimal character of a graph, computed two ways.
    DemoGraph {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "type1")]
        basis: String,
    },
    /// η(K_P) against the unique-minimum indicator of a poset.
    DemoPoset {
        #[arg(long)]
        poset: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, status) = match commands::run(&cli.command, cli.common.format) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(status)
}
