//! `qbf`: fusion rules, central weights, quantum-group norms and CB regions
//! from the command line. Output is JSON unless a subcommand offers another
//! format. Exit status is 0 on success, 1 on invalid input and 2 when a
//! checked mathematical property or oracle fails.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qbf",
    version,
    about = "Weight-lattice, fusion and quantum-group norm computations"
)]
struct Cli {
    /// Significant decimal digits for real-valued output.
    #[arg(long, global = true, env = "QBF_PRECISION", default_value_t = 50)]
    precision: u32,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct TypeArg {
    /// Lie type, e.g. `A2`, `G2` or `A1xB2`.
    #[arg(long = "type", value_name = "TYPE")]
    lie_type: String,
}

#[derive(Args, Debug, Clone)]
struct HeightArg {
    /// Truncation height (largest coordinate in the fundamental-weight basis).
    #[arg(long)]
    height: i64,

    /// Allow heights above the per-type cap.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose V(λ)⊗V(μ) into irreducibles.
    Fusion {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        /// Also compare against the character-product decomposition.
        #[arg(long)]
        check: bool,
    },
    /// Dominant weight multiplicities of V(μ).
    Character {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        mu: String,
        /// List every weight, not only dominant ones.
        #[arg(long)]
        full: bool,
    },
    /// Check Z1, Z2 and symmetry for a central weight up to a height.
    VerifyWeight {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, value_enum)]
        kind: WeightKind,
        /// Parameter of the `beta` and `lst` families.
        #[arg(long)]
        beta: Option<f64>,
        /// JSON table `[{"mu":[..],"w":..}, ..]` for `--kind table`.
        #[arg(long)]
        table: Option<PathBuf>,
        #[command(flatten)]
        height: HeightArg,
    },
    /// Norm exponent of l⁻(u^μ) on V(λ) by the closed form and the R-matrix.
    Norm {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        /// Evaluate q^exponent at this q.
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Decide CB extendability for every λ up to a height.
    CbRegion {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        height: HeightArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Brute-force the sup ratio up to this height and check it agrees.
        #[arg(long)]
        scan_height: Option<i64>,
    },
    /// Numeric U_q(sl₂) check of the norm formula on V(mϖ)⊗V(nϖ).
    OracleSl2 {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Allow m or n above 8.
        #[arg(long)]
        force: bool,
    },
    /// Check c(ν)^½ ≤ c(λ)^½ + c(μ)^½ over fusion triples up to a height.
    CasimirCheck {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        height: HeightArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum WeightKind {
    Beta,
    Lst,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    Closed,
    Rmatrix,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Table,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            eprintln!("{line} (see `qbf --help`)");
            return ExitCode::from(1);
        }
    };
    let outcome = match commands::run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(anyhow::Error::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(anyhow::Error::from)
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if outcome.violation {
        eprintln!("violation: {}", outcome.summary);
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
