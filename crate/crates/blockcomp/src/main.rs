use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use blockcomp::asp::{write_csv, AspParams};
use blockcomp::config::{ModelFile, Overrides, Problem};
use blockcomp::qasm::emit_qasm;
use blockcomp::run::{compile_problem, verify, Options};
use blockcomp::CliError;
use blockcomp_core::export::LoweringStyle;
use blockcomp_core::pipeline::{CompressionPath, Target};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Compress Trotter circuits of free-fermionic spin chains.
#[derive(Parser)]
#[command(name = "blockcomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a model and write the square circuit as QASM plus a stats record.
    Compile(CompileArgs),
    /// Check the compressed circuit against the uncompressed Trotter product.
    Verify(VerifyArgs),
    /// Print the stats record of the compressed circuit.
    Stats(ModelArgs),
    /// Run adiabatic state preparation and write magnetization snapshots as CSV.
    Asp(AspArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Auto,
    Td,
    Ti,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Rotations,
    Cnot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Native,
    Tfxy,
}

#[derive(Args)]
struct ModelArgs {
    /// TOML model file.
    model: PathBuf,
    /// Override `n` from the file.
    #[arg(long)]
    n: Option<usize>,
    /// Override `dt` from the file.
    #[arg(long)]
    dt: Option<f64>,
    /// Override `steps` from the file.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    path: PathArg,
    #[arg(long, value_enum, default_value = "cnot")]
    style: StyleArg,
    /// Lower to the model's own blocks or embed everything in TFXY blocks.
    #[arg(long, value_enum, default_value = "native")]
    target: TargetArg,
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Compile one circuit per time, covering `[0, t]` each, instead of `steps`.
    #[arg(long, value_delimiter = ',')]
    times: Vec<f64>,
    /// QASM output; with `--times`, `_<k>` is inserted before the extension.
    #[arg(long)]
    out_qasm: Option<PathBuf>,
    /// Stats output, one JSON record per line.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Add a stray block to the compressed circuit.
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Args)]
struct AspArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    h: f64,
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    jp: f64,
    /// Ramp duration.
    #[arg(long, default_value_t = 30.0)]
    ramp: f64,
    /// Hold time after the ramp.
    #[arg(long, default_value_t = 10.0)]
    tail: f64,
    #[arg(long, default_value_t = 0.05)]
    dt: f64,
    /// Snapshot spacing.
    #[arg(long, default_value_t = 0.5)]
    snap: f64,
    /// CSV output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-snapshot stats, one JSON record per line.
    #[arg(long)]
    stats: Option<PathBuf>,
}

impl ModelArgs {
    fn problem(&self) -> Result<Problem, CliError> {
        let o = Overrides { n: self.n, dt: self.dt, steps: self.steps };
        ModelFile::load(&self.model)?.resolve(&o)
    }

    fn options(&self) -> Options {
        Options {
            path: match self.path {
                PathArg::Auto => CompressionPath::Auto,
                PathArg::Td => CompressionPath::TimeDependent,
                PathArg::Ti => CompressionPath::TimeIndependent,
            },
            style: match self.style {
                StyleArg::Rotations => LoweringStyle::Rotations,
                StyleArg::Cnot => LoweringStyle::Cnot,
            },
            target: match self.target {
                TargetArg::Native => Target::Native,
                TargetArg::Tfxy => Target::Tfxy,
            },
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn indexed(path: &Path, k: usize) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{k}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{k}"),
    };
    path.with_file_name(name)
}

fn compile_cmd(a: &CompileArgs) -> Result<(), CliError> {
    let base = a.model.problem()?;
    let opts = a.model.options();
    let runs: Vec<Problem> = if a.times.is_empty() {
        vec![base]
    } else {
        a.times
            .iter()
            .map(|&t| {
                if !(t.is_finite() && t > 0.0) {
                    return Err(CliError::Config(format!("`times` entry {t} must be positive")));
                }
                let steps = ((t / base.dt) + 1e-9).floor().max(1.0) as usize;
                base.schedule.validate(&base.model, base.dt, steps)?;
                Ok(Problem { steps, ..base.clone() })
            })
            .collect::<Result<_, _>>()?
    };
    let mut stats = String::new();
    for (k, p) in runs.iter().enumerate() {
        let out = compile_problem(p, opts)?;
        if let Some(q) = &a.out_qasm {
            let path = if a.times.is_empty() { q.clone() } else { indexed(q, k) };
            write(&path, &emit_qasm(&out.gates))?;
        }
        stats.push_str(&out.stats.to_line());
    }
    match &a.stats {
        Some(path) => write(path, &stats),
        None => {
            print!("{stats}");
            Ok(())
        }
    }
}

fn verify_cmd(a: &VerifyArgs) -> Result<(), CliError> {
    let p = a.model.problem()?;
    let report = verify(&p, a.model.options(), a.trials.max(1), a.seed, a.corrupt)?;
    let worst = report.max();
    println!("trials {} max distance {worst:.3e} tolerance {:.1e}", report.distances.len(), a.tol);
    if worst <= a.tol {
        Ok(())
    } else {
        Err(CliError::Tolerance { distance: worst, tol: a.tol })
    }
}

fn stats_cmd(a: &ModelArgs) -> Result<(), CliError> {
    let out = compile_problem(&a.problem()?, a.options())?;
    print!("{}", out.stats.to_line());
    Ok(())
}

fn asp_cmd(a: &AspArgs) -> Result<(), CliError> {
    let params = AspParams { n: a.n, h: a.h, jp: a.jp, ramp: a.ramp, tail: a.tail, dt: a.dt, snap: a.snap };
    let snaps = params.run()?;
    match &a.out {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            write_csv(f, &snaps)?;
        }
        None => write_csv(std::io::stdout().lock(), &snaps)?,
    }
    if let Some(path) = &a.stats {
        let mut lines = String::new();
        for s in &snaps {
            lines.push_str(&format!(
                "{{\"t\":{},\"steps\":{},\"cnots\":{},\"rotations\":{},\"depth\":{},\"gates\":{}}}\n",
                s.t, s.steps, s.gates.cnots, s.gates.two_qubit_rotations, s.gates.depth, s.gates.gates
            ));
        }
        write(path, &lines)?;
    }
    if let Some(last) = snaps.last() {
        eprintln!(
            "final m {:.6} target {:.6} deviation {:.3e}",
            last.m_compressed,
            last.m_target,
            (last.m_compressed - last.m_target).abs()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Compile(a) => compile_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Asp(a) => asp_cmd(a),
    };
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
