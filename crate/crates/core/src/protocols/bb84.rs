use super::{ProtocolError, RunOptions, Session, Tally, TranscriptRow, UrnModel};
use super::EveStrategy;
use crate::quantum::{measure, MeasurementBasis, PureState};
use crate::realization::Ray;
use crate::RandomSource;

/// Integer rays of the two conjugate qubit bases: `z = {(1,0), (0,1)}` and
/// `x = {(1,1), (1,-1)}`.
pub const BB84_BASES: [[[i64; 2]; 2]; 2] = [[[1, 0], [0, 1]], [[1, 1], [1, -1]]];

fn eve_color(eve: EveStrategy, colors: usize, rng: &mut RandomSource) -> Option<usize> {
    match eve {
        EveStrategy::InterceptResendRandomBasis => Some(rng.index(colors)),
        EveStrategy::InterceptResendFixedBasis(c) => Some(c),
        EveStrategy::None | EveStrategy::OmniscientClassical => None,
    }
}

fn check_fixed_basis(eve: EveStrategy, available: usize) -> Result<(), ProtocolError> {
    match eve {
        EveStrategy::InterceptResendFixedBasis(basis) if basis >= available => {
            Err(ProtocolError::EveBasis { basis, available })
        }
        _ => Ok(()),
    }
}

/// BB84 with chocolate balls.
///
/// Each round Alice draws a ball from `urn` and a random color; Bob picks
/// his own random color and reads that color's symbol off the same ball.
/// Rounds with equal colors are kept and the symbols are the key.
/// Eavesdroppers read the ball before Bob without changing it: the
/// intercepting strategies read one color (random or fixed) and guess that
/// symbol; the omniscient one reads all colors and learns every sifted
/// symbol.
pub fn run_bb84_chocolate(urn: &UrnModel, opts: &RunOptions) -> Result<Session, ProtocolError> {
    let colors = urn.colors();
    check_fixed_basis(opts.eve, colors)?;
    let root = RandomSource::new(opts.seed);
    let tallies = opts.execution.map_chunks(opts.rounds, |chunk, start, len| {
        let mut rng = root.split(chunk as u64);
        let mut t = Tally::default();
        for round in start..start + len {
            let ball_index = rng.categorical(urn.weights());
            let ball = &urn.ball_types()[ball_index];
            let alice_color = rng.index(colors);
            let eve_guess = match opts.eve {
                EveStrategy::OmniscientClassical => None,
                eve => eve_color(eve, colors, &mut rng).map(|c| ball.symbol(c) as u8),
            };
            let bob_color = rng.index(colors);
            let outcome = ball.symbol(bob_color) as u8;
            let kept = alice_color == bob_color;
            let symbol_a = ball.symbol(alice_color) as u8;
            if kept {
                t.sifted += 1;
                let learned = match opts.eve {
                    // Reading every color, she knows the sifted symbol once
                    // the colors are announced.
                    EveStrategy::OmniscientClassical => Some(symbol_a),
                    _ => eve_guess,
                };
                if learned == Some(symbol_a) {
                    t.eve_agree += 1;
                }
                t.alice_key.push(symbol_a);
                t.bob_key.push(outcome);
            }
            if opts.transcript {
                t.rows.push(TranscriptRow {
                    round,
                    alice_basis: alice_color,
                    sent: ball_index,
                    bob_basis: bob_color,
                    outcome: outcome as usize,
                    kept,
                    symbol_a: kept.then_some(symbol_a),
                    symbol_b: kept.then_some(outcome),
                });
            }
        }
        t
    });
    Ok(Tally::merge(tallies, opts.rounds, opts.transcript))
}

fn bb84_bases() -> [MeasurementBasis; 2] {
    BB84_BASES.map(|rays| {
        let rays: Vec<Ray> = rays
            .iter()
            .map(|r| Ray::new(r.to_vec()).expect("nonzero rays"))
            .collect();
        MeasurementBasis::from_rays(&rays).expect("orthogonal rays")
    })
}

/// Textbook BB84 on qubits.
///
/// Alice sends a random state of a random basis (`z` or `x`); Bob measures
/// in a random basis; rounds with equal bases are kept with the state and
/// outcome indices as key bits. An intercept-resend eavesdropper measures
/// in her basis and forwards her post-measurement state; her guess is her
/// outcome. The omniscient classical reader has no quantum counterpart and
/// is rejected.
pub fn run_bb84_quantum(opts: &RunOptions) -> Result<Session, ProtocolError> {
    if opts.eve == EveStrategy::OmniscientClassical {
        return Err(ProtocolError::OmniscientOnQuantum);
    }
    check_fixed_basis(opts.eve, 2)?;
    let bases = bb84_bases();
    let root = RandomSource::new(opts.seed);
    let tallies = opts.execution.map_chunks(opts.rounds, |chunk, start, len| {
        let mut rng = root.split(chunk as u64);
        let mut t = Tally::default();
        for round in start..start + len {
            let alice_basis = rng.index(2);
            let bit = rng.index(2);
            let mut state: PureState = bases[alice_basis].vector(bit).clone();
            let mut eve_guess = None;
            if let Some(eb) = eve_color(opts.eve, 2, &mut rng) {
                let m = measure(&state, &bases[eb], &mut rng).expect("qubit dimensions");
                eve_guess = Some(m.outcome as u8);
                state = m.post_state;
            }
            let bob_basis = rng.index(2);
            let outcome = measure(&state, &bases[bob_basis], &mut rng)
                .expect("qubit dimensions")
                .outcome as u8;
            let kept = alice_basis == bob_basis;
            if kept {
                t.sifted += 1;
                if eve_guess == Some(bit as u8) {
                    t.eve_agree += 1;
                }
                t.alice_key.push(bit as u8);
                t.bob_key.push(outcome);
            }
            if opts.transcript {
                t.rows.push(TranscriptRow {
                    round,
                    alice_basis,
                    sent: bit,
                    bob_basis,
                    outcome: outcome as usize,
                    kept,
                    symbol_a: kept.then_some(bit as u8),
                    symbol_b: kept.then_some(outcome),
                });
            }
        }
        t
    });
    Ok(Tally::merge(tallies, opts.rounds, opts.transcript))
}
