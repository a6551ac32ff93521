//! `mondef`: build, verify and deform equivariant spectral triples.
//!
//! Exit codes: 0 all checks pass, 1 usage or I/O error, 2 a mathematical
//! check failed, 3 the input violates a constraint (e.g. a rejected partner
//! matrix).

mod error;
mod fusion;
mod io;
mod output;
mod podles;
mod report;
mod twist;

use clap::{Args, Parser, Subcommand, ValueEnum};
use error::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "mondef", version, about = "Monoidal deformation of equivariant spectral triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension and fusion tables of SU_q(2) or A_o(F)
    Fusion(FusionArgs),
    /// Run the finite Hopf algebra suite for a dual 2-cocycle
    Twist(TwistArgs),
    /// The truncated Podleś sphere triple
    #[command(subcommand)]
    Podles(PodlesArgs),
    /// Seeded randomized checks
    Report(ReportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct FusionArgs {
    /// Classical dimension of the fundamental representation
    #[arg(long)]
    pub m: Option<u32>,
    /// Deformation parameter; adds quantum dimensions
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub max_k: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TwistArgs {
    /// Hopf algebra file: structure tensors or `{"group": [orders]}`
    #[arg(long)]
    pub hopf: PathBuf,
    /// Cocycle file: `{"sigma": ..}` or `{"bicharacter": ..}`
    #[arg(long)]
    pub cocycle: PathBuf,
    /// Equivariant triple file, `{"toy": [orders]}`
    #[arg(long)]
    pub triple: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SphereArgs {
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, default_value = "1/2")]
    pub t: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub c1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c2: String,
    /// Truncation level, a half-odd integer
    #[arg(long, default_value = "5/2")]
    pub n: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sphere: SphereArgs,
    /// Tolerance for the float checks
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Also compare commutator norms at N and N+1
    #[arg(long)]
    pub stabilization: bool,
    #[arg(long, default_value_t = 1e-6)]
    pub stabilization_tol: f64,
}

#[derive(Args, Debug)]
pub struct DeformArgs {
    #[command(flatten)]
    pub sphere: SphereArgs,
    /// Partner matrix file
    #[arg(long = "F", value_name = "FILE")]
    pub f: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the deformed spectrum table as CSV here
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum PodlesArgs {
    /// Build the truncated triple and emit it as JSON
    Build(SphereArgs),
    /// Relations, triple axioms, equivariance and the R-volume identity
    Verify(VerifyArgs),
    /// Deform along a free orthogonal partner of SU_q(2)
    Deform(DeformArgs),
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u32,
    #[arg(long, default_value_t = 6)]
    pub cocycle_trials: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

fn run(cli: &Cli) -> Result<Verdict, CliError> {
    match &cli.command {
        Command::Fusion(a) => fusion::run(a),
        Command::Twist(a) => twist::run(a),
        Command::Podles(a) => podles::run(a),
        Command::Report(a) => report::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(2),
        Err(e) => {
            if let CliError::Constraint { report, .. } = &e {
                print!("{}", output::json_string(report));
            }
            eprintln!("mondef: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
