use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use funnelgroup::limitset::{DEFAULT_RESOLUTION, DEFAULT_STATE_DEPTH};
use funnelgroup_cli::commands::{
    self, DepthRequest, DimensionArgs, LimitSetArgs, Method, RenderArgs, VerifyArgs, DEFAULT_DEPTH,
    DEFAULT_FREENESS_DEPTH,
};
use funnelgroup_cli::input::{self, LoadedInput};
use funnelgroup_cli::CliError;

/// Fuchsian Schottky groups from symmetric semicircle configurations.
///
/// Exit codes: 0 success, 1 check or estimation failure, 2 input error.
/// FUNNELGROUP_WORD_CAP overrides the per-layer word cap (default 1000000).
#[derive(Parser)]
#[command(name = "funnelgroup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupInput {
    /// Configuration file: {"rank", "intervals", "tolerance"?, "reversing"?}
    config: Option<PathBuf>,
    /// Explicit generators instead: {"generators": [[a, b, c, d], ...], "tolerance"?}
    #[arg(long, value_name = "FILE", conflicts_with = "config")]
    raw_generators: Option<PathBuf>,
}

impl GroupInput {
    fn load(&self) -> Result<LoadedInput, CliError> {
        input::load(self.config.as_deref(), self.raw_generators.as_deref())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodFlag {
    Pressure,
    Boxcount,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Ping-pong, hyperbolicity and freeness checks plus classification.
    Verify {
        #[command(flatten)]
        input: GroupInput,
        /// Word length for the hyperbolicity sample [default: 6]
        #[arg(long)]
        depth: Option<usize>,
        /// Word length for the freeness check [default: 8]
        #[arg(long)]
        freeness_depth: Option<usize>,
        /// Report file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nested-cell refinement of the limit set.
    Limitset {
        #[command(flatten)]
        input: GroupInput,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Also draw the configuration, cells and limit points
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical exponent by spectral pressure and by box counting.
    Dimension {
        #[command(flatten)]
        input: GroupInput,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodFlag,
        /// Deepest refinement layer for box counting
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: f64,
        /// Word length of the transfer-operator states
        #[arg(long, default_value_t = DEFAULT_STATE_DEPTH)]
        state_depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Genus, funnels and the classical funnel options for a rank.
    Topology {
        config: Option<PathBuf>,
        #[arg(long)]
        rank: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pants decomposition counts, gluing graph and collars.
    Pants {
        config: Option<PathBuf>,
        #[arg(long)]
        rank: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG of the semicircles with the nested cell geodesics.
    Render {
        #[command(flatten)]
        input: GroupInput,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Output SVG file (stdout when neither --svg nor --out is given)
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, conflicts_with = "svg")]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify {
            input,
            depth,
            freeness_depth,
            out,
        } => commands::verify(VerifyArgs {
            input: &input.load()?,
            depth: DepthRequest::from_flag(depth, DEFAULT_DEPTH),
            freeness_depth: DepthRequest::from_flag(freeness_depth, DEFAULT_FREENESS_DEPTH),
            out: out.as_deref(),
        }),
        Command::Limitset {
            input,
            depth,
            svg,
            out,
        } => commands::limitset(LimitSetArgs {
            input: &input.load()?,
            depth,
            svg: svg.as_deref(),
            out: out.as_deref(),
        }),
        Command::Dimension {
            input,
            method,
            depth,
            resolution,
            state_depth,
            out,
        } => commands::dimension(DimensionArgs {
            input: &input.load()?,
            method: match method {
                MethodFlag::Pressure => Method::Pressure,
                MethodFlag::Boxcount => Method::BoxCount,
                MethodFlag::Both => Method::Both,
            },
            depth,
            resolution,
            state_depth,
            out: out.as_deref(),
        }),
        Command::Topology { config, rank, out } => {
            let loaded = config.as_deref().map(input::load_config).transpose()?;
            commands::topology(rank, loaded.as_ref(), out.as_deref())
        }
        Command::Pants { config, rank, out } => {
            let loaded = config.as_deref().map(input::load_config).transpose()?;
            commands::pants(rank, loaded.as_ref(), out.as_deref())
        }
        Command::Render {
            input,
            depth,
            svg,
            out,
        } => commands::render(RenderArgs {
            input: &input.load()?,
            depth,
            out: svg.as_deref().or(out.as_deref()),
        }),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
