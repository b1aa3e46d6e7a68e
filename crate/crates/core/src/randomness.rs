//! Symbol streams to bit streams: grouping, von Neumann extraction and
//! descriptive statistics.
//!
//! Bits are stored one per byte with values 0 and 1.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;
use thiserror::Error;

use crate::quantum::{measure, spin32_basis, spin_half_basis, PureState};
use crate::{Execution, RandomSource};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandomnessError {
    #[error("symbol {symbol} at position {position} is outside the alphabet of size {alphabet}")]
    SymbolOutOfRange {
        position: usize,
        symbol: u8,
        alphabet: usize,
    },
    #[error("alphabet size must be between 1 and 256, got {0}")]
    Alphabet(usize),
    #[error("identification map has {found} entries for an alphabet of size {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("identification map sends symbol {symbol} to {bit}, not a bit")]
    NotABit { symbol: usize, bit: u8 },
    #[error("keep-set must hold one or two distinct symbols")]
    KeepSet,
    #[error("keep-set symbol {symbol} is outside the alphabet of size {alphabet}")]
    KeepSymbol { symbol: u8, alphabet: usize },
}

/// Symbols in `0..alphabet`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolStream {
    alphabet: usize,
    symbols: Vec<u8>,
}

impl SymbolStream {
    pub fn new(alphabet: usize, symbols: Vec<u8>) -> Result<Self, RandomnessError> {
        if alphabet == 0 || alphabet > 256 {
            return Err(RandomnessError::Alphabet(alphabet));
        }
        if let Some((position, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s as usize >= alphabet)
        {
            return Err(RandomnessError::SymbolOutOfRange {
                position,
                symbol,
                alphabet,
            });
        }
        Ok(SymbolStream { alphabet, symbols })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// How symbols become bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupingRule {
    /// `map[s]` is the bit for symbol `s`; the map must cover the alphabet.
    Identify(Vec<u8>),
    /// Keeps only the listed symbols and drops the rest. A kept symbol
    /// becomes its rank in the sorted keep-set, so `{2}` yields zeros and
    /// `{1, 3}` maps 1 to 0 and 3 to 1.
    Keep(Vec<u8>),
}

impl GroupingRule {
    /// `{+3/2, +1/2} -> 0`, `{-1/2, -3/2} -> 1` for spin-3/2 outcomes.
    pub fn spin32_halves() -> Self {
        GroupingRule::Identify(vec![0, 0, 1, 1])
    }

    fn table(&self, alphabet: usize) -> Result<Vec<Option<u8>>, RandomnessError> {
        match self {
            GroupingRule::Identify(map) => {
                if map.len() != alphabet {
                    return Err(RandomnessError::MapLength {
                        expected: alphabet,
                        found: map.len(),
                    });
                }
                if let Some((symbol, &bit)) = map.iter().enumerate().find(|(_, &b)| b > 1) {
                    return Err(RandomnessError::NotABit { symbol, bit });
                }
                Ok(map.iter().map(|&b| Some(b)).collect())
            }
            GroupingRule::Keep(keep) => {
                let mut sorted = keep.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.is_empty() || sorted.len() > 2 || sorted.len() != keep.len() {
                    return Err(RandomnessError::KeepSet);
                }
                if let Some(&symbol) = sorted.iter().find(|&&s| s as usize >= alphabet) {
                    return Err(RandomnessError::KeepSymbol { symbol, alphabet });
                }
                let mut table = vec![None; alphabet];
                for (rank, &s) in sorted.iter().enumerate() {
                    table[s as usize] = Some(rank as u8);
                }
                Ok(table)
            }
        }
    }
}

/// Applies `rule` symbol by symbol, keeping the order of survivors.
pub fn map_outcomes_to_bits(
    stream: &SymbolStream,
    rule: &GroupingRule,
) -> Result<Vec<u8>, RandomnessError> {
    let table = rule.table(stream.alphabet)?;
    Ok(stream
        .symbols
        .iter()
        .filter_map(|&s| table[s as usize])
        .collect())
}

/// Von Neumann's extractor: reads disjoint pairs, `01 -> 0`, `10 -> 1`,
/// and drops `00` and `11`. A trailing odd bit is ignored.
pub fn von_neumann_extract(bits: &[u8]) -> Vec<u8> {
    bits.chunks_exact(2)
        .filter(|p| p[0] != p[1])
        .map(|p| p[0])
        .collect()
}

/// Descriptive statistics of a bit stream. Nothing is tested or enforced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BitStats {
    pub len: usize,
    pub ones: usize,
    /// Fraction of ones (0 for an empty stream).
    pub frequency: f64,
    /// Number of maximal blocks of equal bits.
    pub runs: usize,
    pub longest_run: usize,
}

pub fn bit_stats(bits: &[u8]) -> BitStats {
    let ones = bits.iter().filter(|&&b| b != 0).count();
    let mut runs = 0;
    let mut longest_run = 0;
    let mut current = 0;
    for (i, &b) in bits.iter().enumerate() {
        if i > 0 && bits[i - 1] == b {
            current += 1;
        } else {
            runs += 1;
            current = 1;
        }
        longest_run = longest_run.max(current);
    }
    BitStats {
        len: bits.len(),
        ones,
        frequency: if bits.is_empty() {
            0.0
        } else {
            ones as f64 / bits.len() as f64
        },
        runs,
        longest_run,
    }
}

/// Outcomes of measuring the spin-3/2 `m = +3/2` state along an axis tilted
/// by `theta`; symbols 0..3 stand for `m = +3/2, +1/2, -1/2, -3/2`.
///
/// Draws are chunked like the protocol engines, so the stream depends only
/// on `(count, theta, seed)`.
pub fn spin32_symbols(count: usize, theta: f64, seed: u64, execution: Execution) -> SymbolStream {
    let basis = spin32_basis(theta);
    let state = PureState::basis_vector(4, 0);
    let root = RandomSource::new(seed);
    let chunks = execution.map_chunks(count, |chunk, _, len| {
        let mut rng = root.split(chunk as u64);
        (0..len)
            .map(|_| measure(&state, &basis, &mut rng).expect("4-dimensional").outcome as u8)
            .collect::<Vec<u8>>()
    });
    SymbolStream {
        alphabet: 4,
        symbols: chunks.concat(),
    }
}

/// Balanced bits from spin-3/2 outcomes at a perpendicular tilt, grouped
/// with [`GroupingRule::spin32_halves`].
pub fn spin32_bits(count: usize, seed: u64, execution: Execution) -> Vec<u8> {
    map_outcomes_to_bits(
        &spin32_symbols(count, FRAC_PI_2, seed, execution),
        &GroupingRule::spin32_halves(),
    )
    .expect("the rule covers the 4-symbol alphabet")
}

/// Quantum coin: spin-1/2 up along z measured along x.
pub fn quantum_coin_bits(count: usize, seed: u64, execution: Execution) -> Vec<u8> {
    let basis = spin_half_basis(FRAC_PI_2);
    let state = PureState::basis_vector(2, 0);
    let root = RandomSource::new(seed);
    execution
        .map_chunks(count, |chunk, _, len| {
            let mut rng = root.split(chunk as u64);
            (0..len)
                .map(|_| measure(&state, &basis, &mut rng).expect("2-dimensional").outcome as u8)
                .collect::<Vec<u8>>()
        })
        .concat()
}
