use serde::Serialize;

use super::{PairSource, ProtocolError};
use crate::quantum::{sample_singlet_pair, singlet_correlation};
use crate::{Execution, RandomSource};

/// One party's measurement setting on a classical ball: which color to
/// read and the `±1` value assigned to each symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChshSetting {
    pub color: usize,
    pub signs: Vec<i8>,
}

impl ChshSetting {
    pub fn new(color: usize, signs: Vec<i8>) -> Result<Self, ProtocolError> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(ProtocolError::Setting("signs must be +1 or -1".into()));
        }
        Ok(ChshSetting { color, signs })
    }

    /// Reads `color` with symbol 0 as `+1` and symbol 1 as `-1`.
    pub fn binary(color: usize) -> Self {
        ChshSetting {
            color,
            signs: vec![1, -1],
        }
    }

    fn value(&self, ball: &[usize]) -> f64 {
        f64::from(self.signs[ball[self.color]])
    }
}

/// Alice's settings `a, a'` and Bob's `b, b'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChshSettings {
    pub a: ChshSetting,
    pub a_prime: ChshSetting,
    pub b: ChshSetting,
    pub b_prime: ChshSetting,
}

impl ChshSettings {
    /// Alice and Bob each read color 0 or color 1 with the plain mapping.
    pub fn standard() -> Self {
        ChshSettings {
            a: ChshSetting::binary(0),
            a_prime: ChshSetting::binary(1),
            b: ChshSetting::binary(0),
            b_prime: ChshSetting::binary(1),
        }
    }

    fn alice(&self) -> [&ChshSetting; 2] {
        [&self.a, &self.a_prime]
    }

    fn bob(&self) -> [&ChshSetting; 2] {
        [&self.b, &self.b_prime]
    }

    fn check(&self, source: &PairSource) -> Result<(), ProtocolError> {
        let alphabet = source.alphabet();
        for s in self.alice().into_iter().chain(self.bob()) {
            if s.color >= source.colors() {
                return Err(ProtocolError::Setting(format!(
                    "color {} does not exist ({} colors)",
                    s.color,
                    source.colors()
                )));
            }
            if s.signs.len() < alphabet {
                return Err(ProtocolError::Setting(format!(
                    "{} signs given for {alphabet} symbols",
                    s.signs.len()
                )));
            }
        }
        Ok(())
    }
}

/// Measurement angles (radians) for the singlet experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshAngles {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl ChshAngles {
    /// `(0, pi/2, pi/4, 3 pi/4)`, where the singlet reaches `|S| = 2 sqrt 2`.
    pub fn optimal() -> Self {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
        ChshAngles {
            a: 0.0,
            a_prime: FRAC_PI_2,
            b: FRAC_PI_4,
            b_prime: 3.0 * FRAC_PI_4,
        }
    }

    fn alice(&self) -> [f64; 2] {
        [self.a, self.a_prime]
    }

    fn bob(&self) -> [f64; 2] {
        [self.b, self.b_prime]
    }
}

/// Correlations in the order `E(a,b), E(a,b'), E(a',b), E(a',b')` and
/// `S = E(a,b) - E(a,b') + E(a',b) + E(a',b')`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChshStats {
    /// 0 for exact expectations.
    pub rounds: usize,
    /// Rounds spent on each setting pair (zero for exact expectations).
    pub counts: [usize; 4],
    pub correlations: [f64; 4],
    pub s: f64,
}

impl ChshStats {
    fn from_correlations(rounds: usize, counts: [usize; 4], e: [f64; 4]) -> Self {
        ChshStats {
            rounds,
            counts,
            correlations: e,
            s: e[0] - e[1] + e[2] + e[3],
        }
    }

    /// Merges per-chunk `(counts, product sums)` in chunk order.
    fn from_sums(rounds: usize, chunks: Vec<([usize; 4], [f64; 4])>) -> Self {
        let mut counts = [0; 4];
        let mut sums = [0.0; 4];
        for (c, s) in chunks {
            for k in 0..4 {
                counts[k] += c[k];
                sums[k] += s[k];
            }
        }
        let e = std::array::from_fn(|k| if counts[k] == 0 { 0.0 } else { sums[k] / counts[k] as f64 });
        ChshStats::from_correlations(rounds, counts, e)
    }
}

/// Samples the classical "singlet": each round a pair is drawn from
/// `source`, Alice reads the left ball with a random one of her settings
/// and Bob the right ball with a random one of his.
pub fn run_ekert_classical(
    source: &PairSource,
    settings: &ChshSettings,
    rounds: usize,
    seed: u64,
    execution: Execution,
) -> Result<ChshStats, ProtocolError> {
    settings.check(source)?;
    let root = RandomSource::new(seed);
    let chunks = execution.map_chunks(rounds, |chunk, _, len| {
        let mut rng = root.split(chunk as u64);
        let mut counts = [0; 4];
        let mut sums = [0.0; 4];
        for _ in 0..len {
            let (left, right) = &source.pairs()[rng.categorical(source.weights())];
            let i = rng.index(2);
            let j = rng.index(2);
            let k = 2 * i + j;
            counts[k] += 1;
            sums[k] += settings.alice()[i].value(&left.0) * settings.bob()[j].value(&right.0);
        }
        (counts, sums)
    });
    Ok(ChshStats::from_sums(rounds, chunks))
}

/// Exact expectations `E(x, y) = sum_pairs w * x(left) * y(right)`.
pub fn run_ekert_classical_exact(
    source: &PairSource,
    settings: &ChshSettings,
) -> Result<ChshStats, ProtocolError> {
    settings.check(source)?;
    let e = std::array::from_fn(|k| {
        let (x, y) = (settings.alice()[k / 2], settings.bob()[k % 2]);
        source
            .pairs()
            .iter()
            .zip(source.weights())
            .map(|((l, r), w)| w * x.value(&l.0) * y.value(&r.0))
            .sum()
    });
    Ok(ChshStats::from_correlations(0, [0; 4], e))
}

/// Samples singlet pairs with randomly chosen settings on each side.
pub fn run_ekert_quantum(angles: &ChshAngles, rounds: usize, seed: u64, execution: Execution) -> ChshStats {
    let root = RandomSource::new(seed);
    let chunks = execution.map_chunks(rounds, |chunk, _, len| {
        let mut rng = root.split(chunk as u64);
        let mut counts = [0; 4];
        let mut sums = [0.0; 4];
        for _ in 0..len {
            let i = rng.index(2);
            let j = rng.index(2);
            let (x, y) = sample_singlet_pair(angles.alice()[i], angles.bob()[j], &mut rng);
            counts[2 * i + j] += 1;
            sums[2 * i + j] += f64::from(x * y);
        }
        (counts, sums)
    });
    ChshStats::from_sums(rounds, chunks)
}

/// Exact singlet expectations `-cos(x - y)`.
pub fn run_ekert_quantum_exact(angles: &ChshAngles) -> ChshStats {
    let e = std::array::from_fn(|k| singlet_correlation(angles.alice()[k / 2], angles.bob()[k % 2]));
    ChshStats::from_correlations(0, [0; 4], e)
}
