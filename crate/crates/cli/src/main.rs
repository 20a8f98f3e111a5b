//! `eacq`: validate, analyse, decode, simulate and transform EACQ codes.
//!
//! Exit status is 0 on success, 1 when the input is well-formed but the operation fails
//! (bad code file, uncorrectable set, infeasible transform), 2 on usage errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eacq::catalog;
use eacq::correction::{self, DecodeTable, DistanceOptions, Strategy};
use eacq::simulator::{self, ChannelSpec, RunSummary};
use eacq::{parse_code_file, EacqCode, PauliOp};

#[derive(Parser, Debug)]
#[command(
    name = "eacq",
    version,
    about = "Entanglement-assisted classically enhanced quantum codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and build a code file, then print its bracket and dimension checks.
    Validate { file: PathBuf },
    /// Print the S_Q and S_C generators as Pauli strings.
    Info(CodeArg),
    /// Minimum distance search.
    Distance {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        max_weight: usize,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Build and write a lookup decoder for every error of weight at most T.
    Table {
        #[command(flatten)]
        code: CodeArg,
        #[arg(short = 't', long = "weight")]
        t: usize,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Depolarizing-noise trials; one CSV row per probability.
    Simulate {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        table: PathBuf,
        /// May be repeated.
        #[arg(long = "p", required = true)]
        p: Vec<f64>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Emit a transformed code file.
    Transform {
        #[command(flatten)]
        code: CodeArg,
        #[command(flatten)]
        how: TransformArg,
    },
    /// List built-in codes.
    Catalog,
}

#[derive(Args, Debug)]
struct CodeArg {
    /// A code file or `catalog:<name>`.
    code: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct TransformArg {
    /// Move I radical generators and J symplectic pairs into the classical stabilizer.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    enhance: Option<Vec<usize>>,
    /// Fold S_C into the quantum stabilizer, leaving an EAQECC with c = 0.
    #[arg(long)]
    strip: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Auto,
    Enumerate,
    Collision,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Enumerate => Strategy::Enumerate,
            StrategyArg::Collision => Strategy::Collision,
        }
    }
}

/// Failure of a well-formed command.
#[derive(Debug)]
struct Failure(String);

impl From<eacq::Error> for Failure {
    fn from(e: eacq::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_code(source: &str) -> Result<EacqCode, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return catalog::by_name(name).map(|c| c.code).ok_or_else(|| {
            Failure(format!(
                "unknown catalog code {name:?}; available: {}",
                catalog::names().join(", ")
            ))
        });
    }
    let path = Path::new(source);
    let text = read_file(path)?;
    parse_code_file(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn check_line(out: &mut impl Write, label: &str, lhs: usize, rhs: usize) -> io::Result<bool> {
    let ok = lhs == rhs;
    writeln!(
        out,
        "  {label:<34} {lhs} = {rhs}  {}",
        if ok { "ok" } else { "FAILED" }
    )?;
    Ok(ok)
}

fn validate(out: &mut impl Write, file: &Path) -> Outcome {
    let code = load_code(&file.to_string_lossy())?;
    let gs = code.g_quantum().gram_schmidt()?;
    writeln!(out, "{}", code.params())?;
    writeln!(
        out,
        "  s = {}  e = {}  c1 = {}  c2 = {}",
        code.s(),
        code.e(),
        code.c1(),
        code.c2()
    )?;
    let mut ok = true;
    ok &= check_line(
        out,
        "n = q + s + e",
        code.n(),
        code.q() + code.s() + code.e(),
    )?;
    ok &= check_line(out, "c = c1 + 2 c2", code.c(), code.c1() + 2 * code.c2())?;
    ok &= check_line(
        out,
        "S_Q generators = s + 2e - c",
        code.g_quantum().nrows(),
        code.s() + 2 * code.e() - code.c(),
    )?;
    ok &= check_line(
        out,
        "S_Q isotropic part = s - c1",
        gs.s(),
        code.s() - code.c1(),
    )?;
    ok &= check_line(
        out,
        "S_Q symplectic pairs = e - c2",
        gs.e(),
        code.e() - code.c2(),
    )?;
    ok &= check_line(
        out,
        "S_C generators = c",
        code.classical_readout_gens().nrows(),
        code.c(),
    )?;
    if ok {
        Ok(())
    } else {
        Err(Failure("dimension checks failed".into()))
    }
}

fn info(out: &mut impl Write, source: &str) -> Outcome {
    let code = load_code(source)?;
    let named = source.strip_prefix("catalog:").and_then(catalog::by_name);
    match &named {
        Some(n) => writeln!(out, "{}  {}", n.name, n.params)?,
        None => writeln!(out, "{}", code.params())?,
    }
    writeln!(out, "fingerprint {}", code.fingerprint())?;
    writeln!(out, "S_Q")?;
    for (j, g) in code.g_quantum().rows().iter().enumerate() {
        writeln!(
            out,
            "  g{:<3} {}",
            j + 1,
            PauliOp::from_symplectic(g.clone())
        )?;
    }
    writeln!(out, "S_C")?;
    for (j, g) in code.classical_readout_gens().rows().iter().enumerate() {
        writeln!(
            out,
            "  g'{:<2} {}",
            j + 1,
            PauliOp::from_symplectic(g.clone())
        )?;
    }
    let (lz, lx) = code.logical_operators();
    if code.q() > 0 {
        writeln!(out, "logical")?;
        for (k, (z, x)) in lz.rows().iter().zip(lx.rows()).enumerate() {
            writeln!(
                out,
                "  Z{:<3} {}\n  X{:<3} {}",
                k + 1,
                PauliOp::from_symplectic(z.clone()),
                k + 1,
                PauliOp::from_symplectic(x.clone())
            )?;
        }
    }
    Ok(())
}

fn distance(
    out: &mut impl Write,
    source: &str,
    max_weight: usize,
    threads: Option<usize>,
    strategy: StrategyArg,
) -> Outcome {
    let code = load_code(source)?;
    let mut opts = DistanceOptions::new(max_weight).strategy(strategy.into());
    if let Some(t) = threads {
        opts = opts.threads(t);
    }
    let report = correction::distance_with(&code, &opts)?;
    writeln!(out, "{report}")?;
    if let Some(w) = &report.witness {
        writeln!(out, "witness {}", PauliOp::from_symplectic(w.clone()))?;
    }
    Ok(())
}

fn table(out: &mut impl Write, source: &str, t: usize, output: &Path) -> Outcome {
    let code = load_code(source)?;
    let table = correction::build_decoder(&code, t)?;
    fs::write(output, table.to_text())
        .map_err(|e| Failure(format!("{}: {e}", output.display())))?;
    writeln!(
        out,
        "{} syndromes written to {}",
        table.len(),
        output.display()
    )?;
    Ok(())
}

fn simulate(
    out: &mut impl Write,
    source: &str,
    table: &Path,
    ps: &[f64],
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Outcome {
    let code = load_code(source)?;
    let table = DecodeTable::from_text(&read_file(table)?)
        .map_err(|e| Failure(format!("{}: {e}", table.display())))?;
    writeln!(out, "{}", RunSummary::CSV_HEADER)?;
    for &p in ps {
        let ch = ChannelSpec::depolarizing(p, seed)?;
        let summary = match threads {
            Some(t) => simulator::run_trials_threaded(&code, &table, &ch, trials, t)?,
            None => simulator::run_trials(&code, &table, &ch, trials)?,
        };
        writeln!(out, "{}", summary.csv_row())?;
    }
    Ok(())
}

fn transform(out: &mut impl Write, source: &str, how: &TransformArg) -> Outcome {
    let code = load_code(source)?;
    let result = match (&how.enhance, how.strip) {
        (Some(ij), _) => code.enhance(ij[0], ij[1])?,
        (None, true) => code.strip(),
        (None, false) => unreachable!("clap requires one of --enhance or --strip"),
    };
    write!(out, "{}", result.to_file_string())?;
    Ok(())
}

fn list_catalog(out: &mut impl Write) -> Outcome {
    for c in catalog::all() {
        writeln!(
            out,
            "{:<16} {:<18} {}",
            c.name,
            c.params.to_string(),
            c.notes
        )?;
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut impl Write) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(out, &file),
        Command::Info(c) => info(out, &c.code),
        Command::Distance {
            code,
            max_weight,
            threads,
            strategy,
        } => distance(out, &code.code, max_weight, threads, strategy),
        Command::Table { code, t, output } => table(out, &code.code, t, &output),
        Command::Simulate {
            code,
            table,
            p,
            trials,
            seed,
            threads,
        } => simulate(out, &code.code, &table, &p, trials, seed, threads),
        Command::Transform { code, how } => transform(out, &code.code, &how),
        Command::Catalog => list_catalog(out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
