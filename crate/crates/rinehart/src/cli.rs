use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, CliError, CmdResult};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "rinehart", version, about = "Exact Lie-Rinehart and Poisson algebra checks")]
pub struct Cli {
    #[command(flatten)]
    output: Output,
    /// Add wall-clock timing to the report (makes output non-deterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Output {
    /// Emit the JSON report (default).
    #[arg(long, global = true)]
    json: bool,
    /// Emit the text rendering of the report.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify every declaration (or one, with --name).
    Check {
        file: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        name: Option<String>,
    },
    /// Tautological (or Poisson) bracket of two expressions.
    Bracket {
        file: String,
        left: String,
        right: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Recover a presentation from its tautological Poisson algebra.
    Reconstruct {
        file: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Assemble the total algebra of an extension.
    BuildExtension {
        file: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Curvature of the canonical connection on the total algebra.
    Curvature {
        file: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Recover extension data from the total algebra.
    ReconstructExtension {
        file: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Execute the `run` declarations of a file.
    Run {
        file: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Built-in demonstrations.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Gram matrix of a point, or a factorization of a given matrix.
    Hilbert {
        #[arg(long)]
        s: usize,
        #[arg(long, required_unless_present = "gram")]
        l: Option<usize>,
        /// Comma-separated coordinates `q_1, …, q_l`, each block of length s.
        #[arg(long, conflicts_with = "gram", allow_hyphen_values = true)]
        point: Option<String>,
        /// Symmetric matrix, rows separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        gram: Option<String>,
    },
    /// Momentum matrix at a point `q_1, p_1, …, q_l, p_l`.
    Momentum {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// Quadratic invariants of l copies of T*R^s and their sp(l) closure.
    DualPair {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
    },
    /// Angular momentum on T*R^3.
    So3R3,
    /// Reductive pairs and the invariant gap.
    Homogeneous {
        #[arg(long, value_enum)]
        preset: HomogeneousPreset,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HomogeneousPreset {
    So3So2,
    GxgSo3,
    UpperTriangular,
}

impl HomogeneousPreset {
    fn as_str(self) -> &'static str {
        match self {
            HomogeneousPreset::So3So2 => "so3-so2",
            HomogeneousPreset::GxgSo3 => "gxg-so3",
            HomogeneousPreset::UpperTriangular => "upper-triangular",
        }
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(command: Command) -> CmdResult<Report> {
    match command {
        Command::Check { file, seed, name } => commands::check(&commands::load(&file)?, name.as_deref(), seed),
        Command::Bracket { file, left, right, name } => {
            commands::bracket(&commands::load(&file)?, name.as_deref(), &left, &right)
        }
        Command::Reconstruct { file, name } => commands::reconstruct(&commands::load(&file)?, name.as_deref()),
        Command::BuildExtension { file, name } => {
            commands::build_extension(&commands::load(&file)?, name.as_deref())
        }
        Command::Curvature { file, name } => commands::curvature(&commands::load(&file)?, name.as_deref()),
        Command::ReconstructExtension { file, name } => {
            commands::reconstruct_ext(&commands::load(&file)?, name.as_deref())
        }
        Command::Run { file, seed } => commands::run(&commands::load(&file)?, seed),
        Command::Demo { demo } => match demo {
            Demo::DualPair { s, l } => commands::demo_dual_pair(s, l),
            Demo::So3R3 => commands::demo_so3_r3(),
            Demo::Homogeneous { preset, degree } => commands::demo_homogeneous(preset.as_str(), degree),
        },
        Command::Hilbert { s, l, point, gram } => match (point, gram, l) {
            (_, Some(g), _) => commands::hilbert_gram(s, &g),
            (Some(p), None, Some(l)) => commands::hilbert_point(s, l, &p),
            _ => Err(CliError::Usage("`hilbert` needs --l with --point, or --gram".into())),
        },
        Command::Momentum { s, l, point } => commands::momentum_point(s, l, &point),
    }
}

/// Runs one command line. Exit code 0 means every verdict passed, 1 that
/// some check failed or was infeasible, 2 a usage, input or engine error.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    match dispatch(cli.command) {
        Ok(mut report) => {
            if cli.timing {
                report.elapsed_ms = Some(start.elapsed().as_millis());
            }
            let stdout = if cli.output.text { report.render_text() } else { report.render_json() };
            Outcome {
                code: report.exit_code(),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
    }
}
