use clap::{Parser, Subcommand, ValueEnum};
use iota_forge::commands::{
    cmd_dual, cmd_invariants, cmd_root_conn, cmd_root_subroot, cmd_surgery, cmd_tensor,
    cmd_validate, KnotInput,
};
use iota_forge::report::ReportFormat;
use iota_forge::CliError;
use iota_forge_core::SearchMode;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact invariants of ι-complexes over F₂[U]: validation, group
/// operations, connected homology reports, graded roots, and negative
/// surgeries on L-space knots.
#[derive(Parser)]
#[command(name = "iota-forge", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Greedy,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exhaustive => SearchMode::Exhaustive,
            ModeArg::Greedy => SearchMode::Greedy,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a complex file and check every ι-complex invariant.
    Validate {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Full pipeline: validate, reduce, correction terms, connected
    /// homology, ω.
    Invariants {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Include stage timings in the report (breaks byte-stability).
        #[arg(long)]
        timings: bool,
        /// Also cross-check homology against the U-truncation oracle at
        /// this level before reporting.
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Tensor product (connected sum) of complex files.
    Tensor {
        paths: Vec<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Dual (orientation reversal) of a complex file.
    Dual {
        path: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Invariants of −n surgery on an L-space knot, via the truncated
    /// mapping cone.
    Surgery {
        /// Torus knot "2,q".
        #[arg(long, conflicts_with_all = ["staircase", "vseq"])]
        torus: Option<String>,
        /// Staircase step lengths "s1,s2,...".
        #[arg(long, conflicts_with = "vseq")]
        staircase: Option<String>,
        /// V-sequence "v0,v1,...".
        #[arg(long)]
        vseq: Option<String>,
        /// Surgery framing; must be a negative integer −n.
        #[arg(long, allow_hyphen_values = true)]
        framing: i64,
        /// Override the truncation parameter N.
        #[arg(long)]
        truncation: Option<i64>,
        /// Write the surgery graded root to this path.
        #[arg(long)]
        emit_root: Option<PathBuf>,
        /// Write the realized ι-complex to this path.
        #[arg(long)]
        emit_complex: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        timings: bool,
    },
    /// Graded-root operations.
    Root {
        #[command(subcommand)]
        action: RootCmd,
    },
}

#[derive(Subcommand)]
enum RootCmd {
    /// Write the monotone subroot of a symmetric graded root.
    Subroot {
        path: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Connected homology of a symmetric graded root (cross-checked
    /// against the realized complex).
    Conn {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        timings: bool,
    },
}

fn parse_u64_list(s: &str, what: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Parse(format!("bad {what} entry {p:?}")))
        })
        .collect()
}

fn knot_input(
    torus: Option<String>,
    staircase: Option<String>,
    vseq: Option<String>,
) -> Result<KnotInput, CliError> {
    match (torus, staircase, vseq) {
        (Some(t), None, None) => {
            let parts = parse_u64_list(&t, "torus")?;
            if parts.len() != 2 {
                return Err(CliError::Parse("--torus expects \"p,q\"".into()));
            }
            Ok(KnotInput::Torus(parts[0], parts[1]))
        }
        (None, Some(s), None) => Ok(KnotInput::Staircase(parse_u64_list(&s, "staircase")?)),
        (None, None, Some(v)) => Ok(KnotInput::VSeq(parse_u64_list(&v, "vseq")?)),
        _ => Err(CliError::Parse(
            "exactly one of --torus, --staircase, --vseq is required".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<iota_forge::commands::CmdOutput, CliError> {
    match cli.cmd {
        Cmd::Validate { path, format } => cmd_validate(&path, format.into()),
        Cmd::Invariants {
            path,
            mode,
            seed,
            format,
            timings,
            truncation,
        } => cmd_invariants(&path, mode.into(), seed, format.into(), timings, truncation),
        Cmd::Tensor { paths, out } => cmd_tensor(&paths, &out),
        Cmd::Dual { path, out } => cmd_dual(&path, &out),
        Cmd::Surgery {
            torus,
            staircase,
            vseq,
            framing,
            truncation,
            emit_root,
            emit_complex,
            mode,
            seed,
            format,
            timings,
        } => {
            let input = knot_input(torus, staircase, vseq)?;
            cmd_surgery(
                input,
                framing,
                truncation,
                emit_root.as_deref(),
                emit_complex.as_deref(),
                mode.into(),
                seed,
                format.into(),
                timings,
            )
        }
        Cmd::Root { action } => match action {
            RootCmd::Subroot { path, out } => cmd_root_subroot(&path, &out),
            RootCmd::Conn {
                path,
                mode,
                seed,
                format,
                timings,
            } => cmd_root_conn(&path, mode.into(), seed, format.into(), timings),
        },
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("IOTA_FORGE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(u8::try_from(out.exit).unwrap_or(1))
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(1))
        }
    }
}
