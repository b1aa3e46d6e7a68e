//! Monte-Carlo engines for key distribution and Bell-type experiments.
//!
//! Every engine splits its rounds into chunks of
//! [`ROUNDS_PER_CHUNK`](crate::exec::ROUNDS_PER_CHUNK); chunk `i` draws from
//! `RandomSource::new(seed).split(i)` and chunk results are concatenated in
//! chunk order. Statistics therefore depend only on the seed and the round
//! count, never on the [`Execution`](crate::Execution) mode.

mod bb84;
mod ekert;
mod ks;
mod urn;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use bb84::{run_bb84_chocolate, run_bb84_quantum, BB84_BASES};
pub use ekert::{
    run_ekert_classical, run_ekert_classical_exact, run_ekert_quantum, run_ekert_quantum_exact,
    ChshAngles, ChshSetting, ChshSettings, ChshStats,
};
pub use ks::{ks_sift, run_ks_protocol, KsProtocolConfig};
pub use urn::{PairSource, UrnModel};

use crate::logic::LogicError;
use crate::quantum::QuantumError;
use crate::realization::RealizationError;
use crate::Execution;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error("the omniscient eavesdropper only applies to classical (urn) protocols")]
    OmniscientOnQuantum,
    #[error("eavesdropper basis {basis} does not exist ({available} bases)")]
    EveBasis { basis: usize, available: usize },
    #[error("unknown eavesdropper strategy {0:?}")]
    UnknownEve(String),
    #[error("invalid urn: {0}")]
    Urn(String),
    #[error("invalid pair source: {0}")]
    PairSource(String),
    #[error("invalid setting: {0}")]
    Setting(String),
    #[error("invalid basis family: {0}")]
    BasisFamily(String),
    #[error("reveal fraction {0} is outside [0, 1]")]
    RevealFraction(f64),
    #[error("atom {atom} is not in context {context}")]
    AtomNotInContext { atom: usize, context: usize },
    #[error("context {0} does not exist")]
    ContextIndex(usize),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// What the eavesdropper does to each round.
///
/// Text form (used by the CLI): `none`, `intercept-random`,
/// `intercept-fixed:N`, `omniscient`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EveStrategy {
    #[default]
    None,
    /// Measure (or read) in a uniformly random basis, then resend.
    InterceptResendRandomBasis,
    /// Measure (or read) always in the given basis, then resend.
    InterceptResendFixedBasis(usize),
    /// Reads every color of a classical ball without disturbing it.
    OmniscientClassical,
}

impl fmt::Display for EveStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EveStrategy::None => f.write_str("none"),
            EveStrategy::InterceptResendRandomBasis => f.write_str("intercept-random"),
            EveStrategy::InterceptResendFixedBasis(b) => write!(f, "intercept-fixed:{b}"),
            EveStrategy::OmniscientClassical => f.write_str("omniscient"),
        }
    }
}

impl FromStr for EveStrategy {
    type Err = ProtocolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(EveStrategy::None),
            "intercept-random" => Ok(EveStrategy::InterceptResendRandomBasis),
            "omniscient" => Ok(EveStrategy::OmniscientClassical),
            _ => s
                .strip_prefix("intercept-fixed:")
                .and_then(|n| n.parse().ok())
                .map(EveStrategy::InterceptResendFixedBasis)
                .ok_or_else(|| ProtocolError::UnknownEve(s.to_string())),
        }
    }
}

impl Serialize for EveStrategy {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Summary of one key-distribution session.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionStats {
    pub rounds: usize,
    /// Rounds surviving sifting (including any revealed for checking).
    pub sifted: usize,
    /// Sifted rounds disclosed for error estimation and removed from the keys.
    pub revealed: usize,
    /// Mismatch fraction of `alice_key` against `bob_key` (0 when empty).
    pub qber: f64,
    /// Mismatch fraction on the revealed sample, if anything was revealed.
    pub sample_qber: Option<f64>,
    /// Fraction of sifted rounds in which the eavesdropper's guess equals
    /// Alice's symbol; 0 without an eavesdropper.
    pub eve_agreement: f64,
    pub alice_key: Vec<u8>,
    pub bob_key: Vec<u8>,
}

impl SessionStats {
    pub fn sift_rate(&self) -> f64 {
        ratio(self.sifted, self.rounds)
    }

    pub fn key_mismatches(&self) -> usize {
        self.alice_key
            .iter()
            .zip(&self.bob_key)
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// One simulated round. For urn protocols `sent` is the ball index and
/// `outcome` the symbol Bob read; for quantum protocols they are the state
/// and outcome indices (atoms for the Kochen-Specker protocol).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranscriptRow {
    pub round: usize,
    pub alice_basis: usize,
    pub sent: usize,
    pub bob_basis: usize,
    pub outcome: usize,
    pub kept: bool,
    pub symbol_a: Option<u8>,
    pub symbol_b: Option<u8>,
}

/// Statistics plus the per-round transcript when it was requested.
#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub stats: SessionStats,
    pub transcript: Option<Vec<TranscriptRow>>,
}

/// Settings shared by the key-distribution engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub rounds: usize,
    pub seed: u64,
    pub eve: EveStrategy,
    pub execution: Execution,
    pub transcript: bool,
}

impl RunOptions {
    pub fn new(rounds: usize, seed: u64) -> Self {
        RunOptions {
            rounds,
            seed,
            eve: EveStrategy::None,
            execution: Execution::default(),
            transcript: false,
        }
    }

    pub fn with_eve(mut self, eve: EveStrategy) -> Self {
        self.eve = eve;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_transcript(mut self, transcript: bool) -> Self {
        self.transcript = transcript;
        self
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Per-chunk accumulator; chunks are merged by concatenation in order.
#[derive(Default)]
struct Tally {
    rows: Vec<TranscriptRow>,
    sifted: usize,
    eve_agree: usize,
    revealed: usize,
    revealed_mismatch: usize,
    alice_key: Vec<u8>,
    bob_key: Vec<u8>,
}

impl Tally {
    fn merge(tallies: Vec<Tally>, rounds: usize, keep_rows: bool) -> Session {
        let mut total = Tally::default();
        for t in tallies {
            total.rows.extend(t.rows);
            total.sifted += t.sifted;
            total.eve_agree += t.eve_agree;
            total.revealed += t.revealed;
            total.revealed_mismatch += t.revealed_mismatch;
            total.alice_key.extend(t.alice_key);
            total.bob_key.extend(t.bob_key);
        }
        let mismatches = total
            .alice_key
            .iter()
            .zip(&total.bob_key)
            .filter(|(a, b)| a != b)
            .count();
        let stats = SessionStats {
            rounds,
            sifted: total.sifted,
            revealed: total.revealed,
            qber: ratio(mismatches, total.alice_key.len()),
            sample_qber: (total.revealed > 0)
                .then(|| ratio(total.revealed_mismatch, total.revealed)),
            eve_agreement: ratio(total.eve_agree, total.sifted),
            alice_key: total.alice_key,
            bob_key: total.bob_key,
        };
        Session {
            stats,
            transcript: keep_rows.then_some(total.rows),
        }
    }
}
