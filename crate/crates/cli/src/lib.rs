//! Subcommand front end for the `tantheta` binary.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 certificate hypotheses
//! not satisfied, 3 sweep found bound violations.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::Value;
use tantheta::certify::{
    aposteriori_oracle, apriori_oracle, canonical_counterexample, certify_aposteriori, certify_apriori,
    CertifyError,
};
use tantheta::ensemble::{run_sweep, EnsembleError};
use tantheta::io::{
    input_digest, read_matrix_market, read_sweep_config, to_canonical_json, write_matrix_market, write_report,
    write_sweep_csv, Certificate, CertificateReport, IoError, OracleSection,
};
use tantheta::linalg::{principal_angles, HermitianMatrix, LinalgError, OrthonormalFrame};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESES_FAILED: i32 = 2;
pub const EXIT_VIOLATIONS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tantheta", version, about = "Residual-based tan θ certificates for Hermitian eigenspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify span(Q₁) from the spectra of the compressions of A.
    Apriori {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        frame: PathBuf,
        /// Attach the exact-eigendecomposition check.
        #[arg(long)]
        oracle: bool,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify span(Q₁) given an interval holding the complementary eigenvalues.
    Aposteriori {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        frame: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        interior_lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        interior_hi: f64,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Principal angles between two frames, as JSON.
    Angles {
        #[arg(long)]
        frame_a: PathBuf,
        #[arg(long)]
        frame_b: PathBuf,
    },
    /// Oracle-checked sweep over synthetic instances.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the 3x3 instance that meets the admissibility boundary.
    Counterexample {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            Self::Io(e) => e.code(),
            Self::Linalg(e) => e.code(),
            Self::Certify(e) => e.code(),
            Self::Ensemble(e) => e.code(),
            Self::Write { .. } => "IO_ERROR",
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            // Help and version go to stdout, usage errors to stderr.
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}: {e}", e.code());
            EXIT_INPUT_ERROR
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Apriori {
            matrix,
            frame,
            oracle,
            out,
        } => {
            let (a, q1) = load_pair(&matrix, &frame)?;
            let cert = certify_apriori(&a, &q1)?;
            let section = if oracle {
                Some(OracleSection::from_apriori(&apriori_oracle(&a, &q1, &cert)?, &cert))
            } else {
                None
            };
            emit_report(CertificateReport::new(input_digest(&a, &q1), Certificate::Apriori(cert), section), out)
        }
        Command::Aposteriori {
            matrix,
            frame,
            interior_lo,
            interior_hi,
            oracle,
            out,
        } => {
            let (a, q1) = load_pair(&matrix, &frame)?;
            let cert = certify_aposteriori(&a, &q1, interior_lo, interior_hi)?;
            let section = if oracle {
                Some(OracleSection::from_aposteriori(&aposteriori_oracle(&a, &q1, &cert)?, &cert))
            } else {
                None
            };
            emit_report(
                CertificateReport::new(input_digest(&a, &q1), Certificate::Aposteriori(cert), section),
                out,
            )
        }
        Command::Angles { frame_a, frame_b } => {
            let u = OrthonormalFrame::new(read_matrix_market(&frame_a)?)?;
            let v = OrthonormalFrame::new(read_matrix_market(&frame_b)?)?;
            let angles = principal_angles(&u, &v)?;
            let value = serde_json::to_value(&angles).expect("angle set serializes");
            print!("{}", to_canonical_json(&value));
            Ok(EXIT_OK)
        }
        Command::Sweep { config, out } => {
            let config = read_sweep_config(&config)?;
            let result = run_sweep(&config.cases()?)?;
            let file = File::create(&out).map_err(|source| CliError::Write {
                path: out.clone(),
                source,
            })?;
            let mut writer = BufWriter::new(file);
            write_sweep_csv(&result, &mut writer)?;
            writer.flush().map_err(|source| CliError::Write { path: out, source })?;

            let mut summary = serde_json::to_value(&result).expect("sweep result serializes");
            if let Value::Object(map) = &mut summary {
                map.remove("records");
            }
            print!("{}", to_canonical_json(&summary));
            Ok(if result.violations == 0 { EXIT_OK } else { EXIT_VIOLATIONS })
        }
        Command::Counterexample { out } => {
            fs::create_dir_all(&out).map_err(|source| CliError::Write {
                path: out.clone(),
                source,
            })?;
            let (a, q1) = canonical_counterexample();
            write_matrix_market(out.join("A.mtx"), a.as_matrix())?;
            write_matrix_market(out.join("Q1.mtx"), q1.as_matrix())?;
            let cert = certify_apriori(&a, &q1)?;
            let section = OracleSection::from_apriori(&apriori_oracle(&a, &q1, &cert)?, &cert);
            let report = CertificateReport::new(input_digest(&a, &q1), Certificate::Apriori(cert), Some(section));
            write_report(&report, out.join("report.json"))?;
            println!("wrote A.mtx, Q1.mtx and report.json to {}", out.display());
            Ok(EXIT_OK)
        }
    }
}

fn load_pair(matrix: &Path, frame: &Path) -> Result<(HermitianMatrix, OrthonormalFrame), CliError> {
    let a = HermitianMatrix::new(read_matrix_market(matrix)?)?;
    let q1 = OrthonormalFrame::new(read_matrix_market(frame)?)?;
    Ok((a, q1))
}

fn emit_report(report: CertificateReport, out: Option<PathBuf>) -> Result<i32, CliError> {
    match out {
        Some(path) => write_report(&report, path)?,
        None => print!("{}", report.to_json()),
    }
    Ok(if report.certificate.valid() {
        EXIT_OK
    } else {
        EXIT_HYPOTHESES_FAILED
    })
}
