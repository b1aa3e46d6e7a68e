use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kscrypt",
    version,
    about = "Quantum-logic analysis and key-distribution simulation",
    long_about = "Quantum-logic analysis and key-distribution simulation.\n\n\
        A logic SOURCE is either a catalog name (see `kscrypt catalog`) or the path of a \
        JSON logic document. Every stochastic command requires --seed; identical \
        arguments produce identical output."
)]
pub struct Cli {
    /// Worker threads; 1 runs everything on the calling thread. Results do
    /// not depend on this setting.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in logics.
    Catalog,
    /// Two-valued states, partition logics and urn models.
    #[command(subcommand)]
    Logic(LogicCommand),
    /// Kochen-Specker analysis.
    #[command(subcommand)]
    Ks(KsCommand),
    /// Vector realizations.
    #[command(subcommand)]
    Realize(RealizeCommand),
    /// Key-distribution and Bell-test simulations.
    #[command(subcommand)]
    Protocol(ProtocolCommand),
    /// Random bit generation and post-processing.
    #[command(subcommand)]
    Random(RandomCommand),
}

#[derive(Debug, Subcommand)]
pub enum LogicCommand {
    /// Enumerate all two-valued states.
    States { source: String },
    /// Print the partition logic (states numbered from 1).
    Partition { source: String },
    /// Print the ball types of the urn model.
    Balls { source: String },
    /// Write the logic as a JSON document.
    Export {
        source: String,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum KsCommand {
    /// Decide whether the logic admits a two-valued state.
    Verify {
        source: String,
        /// Also run the parity argument on these context indices
        /// (comma-separated; no value means all contexts).
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        parity_subset: Option<Vec<usize>>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RealizeCommand {
    /// Search numerically for a faithful real realization.
    Search {
        source: String,
        /// Dimension of the vectors (default: the largest context size).
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
        /// Smallest admissible angle between distinct atoms, degrees.
        #[arg(long, default_value_t = 1.0)]
        min_angle_deg: f64,
        #[arg(long, default_value_t = 4000)]
        max_iterations: usize,
    },
    /// Check the document's integer rays against its contexts.
    Check {
        source: String,
        /// Angular tolerance in degrees; 0 checks exactly.
        #[arg(long, default_value_t = 0.0)]
        tolerance_deg: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolKind {
    /// BB84 with chocolate balls (classical urn).
    #[value(name = "bb84-choc")]
    Bb84Choc,
    /// BB84 on qubits.
    #[value(name = "bb84-q")]
    Bb84Q,
    /// The Kochen-Specker protected protocol.
    Ks,
    /// Ekert/CHSH with a classical pair source.
    #[value(name = "ekert-c")]
    EkertC,
    /// Ekert/CHSH with singlet pairs.
    #[value(name = "ekert-q")]
    EkertQ,
}

#[derive(Debug, Subcommand)]
pub enum ProtocolCommand {
    /// Run one simulated session and print its statistics.
    Run(ProtocolArgs),
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    pub kind: ProtocolKind,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// none, intercept-random, intercept-fixed:N or omniscient.
    #[arg(long, default_value = "none")]
    pub eve: String,
    /// Write the per-round transcript as CSV.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    /// Share of sifted rounds disclosed for checking (ks).
    #[arg(long, default_value_t = 0.1)]
    pub reveal_fraction: f64,
    /// Logic with rays supplying the bases (ks).
    #[arg(long, default_value = "cabello18")]
    pub logic: String,
    /// Context indices forming the basis family (ks; default all).
    #[arg(long, value_delimiter = ',')]
    pub bases: Option<Vec<usize>>,
    /// Exact expectation values instead of sampling (ekert-c, ekert-q).
    #[arg(long)]
    pub exact: bool,
    /// Measurement angles a,a',b,b' in radians (ekert-q).
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub angles: Option<Vec<f64>>,
    /// Colors read for a,a',b,b' (ekert-c).
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub colors: Option<Vec<usize>>,
    /// Classical pair source (ekert-c).
    #[arg(long, value_enum, default_value_t = PairKind::AntiCorrelated)]
    pub pairs: PairKind,
    /// Omit the key strings from the output.
    #[arg(long)]
    pub no_keys: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    AntiCorrelated,
    Correlated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum StreamFormat {
    /// Digits, whitespace ignored on input; one line on output.
    #[default]
    Ascii,
    /// One byte per symbol.
    Raw,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Read from this file instead of standard input.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StreamFormat::Ascii)]
    pub format: StreamFormat,
}

#[derive(Debug, Subcommand)]
pub enum RandomCommand {
    /// Bits from spin-3/2 measurements grouped as {+3/2,+1/2} -> 0, rest -> 1.
    Spin32 {
        #[arg(long)]
        bits: usize,
        #[arg(long)]
        seed: u64,
        /// Tilt of the measurement axis, radians.
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        theta: f64,
        /// Emit the four-valued outcomes instead of grouped bits.
        #[arg(long)]
        symbols: bool,
        #[arg(long, value_enum, default_value_t = StreamFormat::Ascii)]
        format: StreamFormat,
    },
    /// Bits from spin-1/2 "up" measured perpendicularly.
    Coin {
        #[arg(long)]
        bits: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StreamFormat::Ascii)]
        format: StreamFormat,
    },
    /// Map a symbol stream to bits.
    Group {
        #[arg(long)]
        alphabet: usize,
        /// Bit for each symbol, e.g. 0,0,1,1.
        #[arg(long, value_delimiter = ',', conflicts_with = "keep", required_unless_present = "keep")]
        map: Option<Vec<u8>>,
        /// One or two symbols to keep; others are dropped.
        #[arg(long, value_delimiter = ',')]
        keep: Option<Vec<u8>>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Von Neumann extraction.
    Extract {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Descriptive statistics of a bit stream (JSON).
    Stats {
        #[command(flatten)]
        input: InputArgs,
    },
}
