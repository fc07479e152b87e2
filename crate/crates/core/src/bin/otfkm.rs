use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use otfkm::bundle::WitnessPair;
use otfkm::error::Error;
use otfkm::verify::classify::{table_json, table_markdown};
use otfkm::verify::{
    classification_table, run_classify, run_sample, run_verify, run_witness, RunConfig, SampleKind, Tolerances,
    VerificationReport, DEFAULT_SAMPLES,
};

/// Certification and classification for OT-FKM focal submanifolds.
#[derive(Parser)]
#[command(name = "otfkm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace, definiteness, homotopy class, cross-section and extension data.
    Classify(Common),
    /// Run the numerical and exact check suite.
    Verify(Common),
    /// Minimum of |A + B| for a registered witness pair.
    Witness {
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        common: Common,
    },
    /// Classification table over a range of k.
    Report {
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Inclusive range `a..b`, or a single k.
        #[arg(long, default_value = "2..12")]
        k: String,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit seeded sample points as JSON.
    Sample {
        /// sphere | equator | basepoint | m-plus
        #[arg(long, default_value = "equator")]
        kind: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    /// Flip one sign in the last Clifford operator.
    #[arg(long)]
    inject_fault: bool,
    /// Record wall time per check (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args)]
struct TolArgs {
    #[arg(long)]
    tol_orthogonality: Option<f64>,
    #[arg(long)]
    tol_determinant: Option<f64>,
    #[arg(long)]
    tol_consistency: Option<f64>,
    #[arg(long)]
    tol_projected: Option<f64>,
    #[arg(long)]
    tol_embedding: Option<f64>,
    #[arg(long)]
    tol_membership: Option<f64>,
    #[arg(long)]
    tol_fkm: Option<f64>,
    #[arg(long)]
    tol_cartan_munzner: Option<f64>,
    #[arg(long)]
    tol_laplacian: Option<f64>,
    #[arg(long)]
    tol_gradient_fd: Option<f64>,
    #[arg(long)]
    tol_octonion: Option<f64>,
    #[arg(long)]
    tol_cohomogeneity: Option<f64>,
    #[arg(long)]
    tol_witness: Option<f64>,
}

impl TolArgs {
    fn apply(&self, mut t: Tolerances) -> Tolerances {
        let set = |dst: &mut f64, src: Option<f64>| {
            if let Some(v) = src {
                *dst = v;
            }
        };
        set(&mut t.orthogonality, self.tol_orthogonality);
        set(&mut t.determinant, self.tol_determinant);
        set(&mut t.consistency, self.tol_consistency);
        set(&mut t.projected, self.tol_projected);
        set(&mut t.embedding, self.tol_embedding);
        set(&mut t.membership, self.tol_membership);
        set(&mut t.fkm, self.tol_fkm);
        set(&mut t.cartan_munzner, self.tol_cartan_munzner);
        set(&mut t.laplacian, self.tol_laplacian);
        set(&mut t.gradient_fd, self.tol_gradient_fd);
        set(&mut t.octonion, self.tol_octonion);
        set(&mut t.cohomogeneity, self.tol_cohomogeneity);
        set(&mut t.witness, self.tol_witness);
        t
    }
}

impl Common {
    fn config(&self, default_k: usize, default_p: usize) -> RunConfig {
        let mut cfg = RunConfig::new(self.m, self.k.unwrap_or(default_k), self.p.unwrap_or(default_p))
            .with_samples(self.samples)
            .with_seed(self.seed);
        cfg.tolerances = self.tol.apply(cfg.tolerances);
        cfg.inject_fault = self.inject_fault;
        cfg.timings = self.timings;
        cfg
    }
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(report: &VerificationReport, common: &Common) -> Result<(), Failure> {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    emit(&text, common.out.as_ref())?;
    if report.all_pass() {
        Ok(())
    } else {
        for c in report.failing() {
            eprintln!("FAILED {}: residual {:e}", c.id, c.residual);
        }
        Err(Failure::Checks)
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad k range '{s}', expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a < 2 || b < a {
        return Err(bad());
    }
    Ok(a..=b)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify(common) => {
            let report = run_classify(&common.config(2, 0))?;
            finish(&report, &common)
        }
        Command::Verify(common) => {
            let report = run_verify(&common.config(3, 0), common.jobs)?;
            finish(&report, &common)
        }
        Command::Witness { pair, common } => {
            let pair: WitnessPair = pair.parse()?;
            let (dk, dp) = pair.default_params();
            let report = run_witness(pair, &common.config(dk, dp), common.jobs)?;
            finish(&report, &common)
        }
        Command::Report { m, k, format, out } => {
            let ks = parse_range(&k)?;
            let rows = classification_table(m, ks.clone())?;
            let text = match format {
                Format::Json => table_json(m, &ks, &rows),
                Format::Md => table_markdown(&rows),
            };
            emit(&text, out.as_ref())?;
            if rows.iter().all(|r| r.consistent()) {
                Ok(())
            } else {
                eprintln!("FAILED: inconsistent rows in the classification table");
                Err(Failure::Checks)
            }
        }
        Command::Sample { kind, common } => {
            let kind: SampleKind = kind.parse()?;
            let set = run_sample(&common.config(3, 0), kind)?;
            let mut text = serde_json::to_string(&set).map_err(|e| Failure::Usage(e.to_string()))?;
            text.push('\n');
            emit(&text, common.out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
