//! doobpc: construct, verify, decode and analyze additive 1-perfect codes
//! in Doob graphs.
//!
//! Exit status: 0 on success or a true verdict, 1 on a false verdict
//! (verification failed, matrix not quasi-cyclic), 2 on usage, I/O or
//! parse errors.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use doob_codes::analysis::{quasi_cyclic_permutation, weight3_last_part, AnalysisError, DecoderTable};
use doob_codes::construct::{
    admissible_params, alt_d707, base_d814, build_admissible, quasi_cyclic, ConstructError,
};
use doob_codes::format::{parse_matrix, write_matrix};
use doob_codes::galois::RingContext;
use doob_codes::matrix::CheckMatrix;
use doob_codes::space::Vertex;

#[derive(Parser)]
#[command(
    name = "doobpc",
    version,
    about = "Additive 1-perfect codes in Doob graphs: construction, verification, decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the admissible (m, nprime, npp) triples for given gamma and delta
    Params {
        /// Even extension parameter gamma >= 0
        #[arg(long)]
        gamma: u32,
        /// Ring degree delta >= 2
        #[arg(long)]
        delta: u32,
    },
    /// Build a check matrix, verify it and write it as a DOOBPC file
    #[command(group(
        ArgGroup::new("source").required(true).args(["preset", "gamma"])
    ))]
    Construct {
        /// Named matrix: d814, d707-qc, d707-alt, d155-qc or d2667-qc
        #[arg(long, conflicts_with_all = ["gamma", "delta", "npp"])]
        preset: Option<String>,
        /// Extension parameter gamma (even, >= 0)
        #[arg(long, requires = "delta", requires = "npp")]
        gamma: Option<u32>,
        /// Ring degree delta (odd, >= 3 for built-in constructions)
        #[arg(long, requires = "gamma")]
        delta: Option<u32>,
        /// Number npp of single Z4 coordinates in the target shape
        #[arg(long, requires = "gamma")]
        npp: Option<u64>,
        /// Output file path
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Verify that a DOOBPC file defines a 1-perfect code
    Verify {
        /// DOOBPC file to check
        path: PathBuf,
    },
    /// Decode a received word to the nearest codeword
    Decode {
        /// DOOBPC file holding a verified 1-perfect matrix
        path: PathBuf,
        /// Received word in vertex text form, e.g. 0123|01|032
        word: String,
    },
    /// Structure reports on a verified matrix
    #[command(group(
        ArgGroup::new("mode").required(true).args(["weight3", "cyclic"])
    ))]
    Analyze {
        /// DOOBPC file holding a verified 1-perfect matrix
        path: PathBuf,
        /// Count weight-3 codewords supported on the last part
        #[arg(long)]
        weight3: bool,
        /// Report the column cycles induced by multiplication by xi
        #[arg(long)]
        cyclic: bool,
    },
}

/// Line to stdout; on a closed pipe (e.g. piped into `head`) exit quietly
/// with the conventional SIGPIPE status instead of panicking.
macro_rules! emit {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(141);
        }
    }};
}

/// Error that aborts the run with exit status 2.
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> UsageError {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, UsageError> {
    match command {
        Command::Params { gamma, delta } => {
            for p in admissible_params(gamma, delta) {
                emit!("{p}");
            }
            Ok(true)
        }
        Command::Construct { preset, gamma, delta, npp, output } => {
            let matrix = match preset {
                Some(name) => preset_matrix(&name)?,
                None => {
                    let (gamma, delta, npp) = (
                        gamma.expect("required by the source group"),
                        delta.ok_or_else(|| UsageError("--delta is required".into()))?,
                        npp.ok_or_else(|| UsageError("--npp is required".into()))?,
                    );
                    build_admissible(gamma, delta, npp).map_err(construct_error)?
                }
            };
            let report = matrix.verify_perfect();
            if !report.is_perfect {
                return Err(UsageError(format!(
                    "internal error: constructed matrix failed verification\n{report}"
                )));
            }
            fs::write(&output, write_matrix(&matrix))
                .map_err(|e| UsageError(format!("{}: {e}", output.display())))?;
            emit!("rows={} {}", matrix.rows(), matrix.shape());
            emit!("subgroup={}", report.subgroup_size);
            emit!("wrote {}", output.display());
            Ok(true)
        }
        Command::Verify { path } => {
            let matrix = load_matrix(&path)?;
            let report = matrix.verify_perfect();
            emit!("{report}");
            Ok(report.is_perfect)
        }
        Command::Decode { path, word } => {
            let matrix = load_matrix(&path)?;
            if !matrix.verify_perfect().is_perfect {
                emit!("perfect: false");
                return Ok(false);
            }
            let received = Vertex::parse_for_shape(&word, matrix.shape())?;
            let decoder = DecoderTable::new(&matrix).expect("matrix verified above");
            emit!("{}", decoder.decode(&received));
            Ok(true)
        }
        Command::Analyze { path, weight3, cyclic } => {
            let matrix = load_matrix(&path)?;
            if !matrix.verify_perfect().is_perfect {
                emit!("perfect: false");
                return Ok(false);
            }
            if weight3 {
                let counts = weight3_last_part(&matrix);
                emit!("order2={} order4={}", counts.order2, counts.order4);
                return Ok(true);
            }
            debug_assert!(cyclic, "clap enforces exactly one mode");
            if matrix.shape().nprime != 0 {
                return Err(UsageError(format!(
                    "the cyclic report needs nprime = 0, got {}",
                    matrix.shape()
                )));
            }
            let ring = RingContext::preset(matrix.rows())?;
            match quasi_cyclic_permutation(&matrix, &ring) {
                Ok(cycles) => {
                    print_cycles(&cycles);
                    Ok(true)
                }
                Err(AnalysisError::NotQuasiCyclic(_)) => {
                    emit!("not quasi-cyclic");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn preset_matrix(name: &str) -> Result<CheckMatrix, UsageError> {
    match name {
        "d814" => Ok(base_d814()),
        "d707-qc" => quasi_cyclic(3).map_err(construct_error),
        "d707-alt" => Ok(alt_d707()),
        "d155-qc" => quasi_cyclic(5).map_err(construct_error),
        "d2667-qc" => quasi_cyclic(7).map_err(construct_error),
        other => Err(UsageError(format!(
            "unknown preset '{other}'; expected d814, d707-qc, d707-alt, d155-qc or d2667-qc"
        ))),
    }
}

fn construct_error(e: ConstructError) -> UsageError {
    match e {
        ConstructError::UnsupportedDelta(d) => UsageError(format!(
            "delta = {d} has no built-in construction; supported values are odd delta >= 3"
        )),
        other => UsageError(other.to_string()),
    }
}

fn load_matrix(path: &PathBuf) -> Result<CheckMatrix, UsageError> {
    let text =
        fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn print_cycles(cycles: &[Vec<usize>]) {
    let len = cycles.first().map_or(0, |c| c.len());
    if cycles.iter().all(|c| c.len() == len) {
        emit!("{} cycles of length {}", cycles.len(), len);
    } else {
        let lens: Vec<String> = cycles.iter().map(|c| c.len().to_string()).collect();
        emit!("{} cycles of lengths {}", cycles.len(), lens.join(","));
    }
}
