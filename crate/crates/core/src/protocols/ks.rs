use super::{EveStrategy, ProtocolError, RunOptions, Session, Tally, TranscriptRow};
use crate::logic::{AtomId, OrthoLogic};
use crate::quantum::{measure, MeasurementBasis, PureState};
use crate::realization::{catalog, check_realization, Ray};
use crate::RandomSource;

/// Configuration of the Kochen-Specker protected protocol.
///
/// Each basis of the family is a context of `logic`; its measurement
/// vectors are the context's rays in stored atom order, so the key symbol
/// of an outcome is its position in the context.
#[derive(Debug, Clone, PartialEq)]
pub struct KsProtocolConfig {
    pub logic: OrthoLogic,
    pub rays: Vec<Ray>,
    /// Context indices Alice and Bob choose from.
    pub bases: Vec<usize>,
    /// Probability that a sifted round is disclosed for checking.
    pub reveal_fraction: f64,
    pub options: RunOptions,
}

impl KsProtocolConfig {
    /// Uses every context of `logic` as a basis and reveals 10% of the
    /// sifted rounds.
    pub fn new(logic: OrthoLogic, rays: Vec<Ray>, options: RunOptions) -> Self {
        let bases = (0..logic.context_count()).collect();
        KsProtocolConfig {
            logic,
            rays,
            bases,
            reveal_fraction: 0.1,
            options,
        }
    }

    /// The nine bases of `cabello18`.
    pub fn cabello18(options: RunOptions) -> Self {
        let entry = catalog("cabello18").expect("cabello18 is in the catalog");
        KsProtocolConfig::new(entry.logic, entry.rays.expect("cabello18 has rays"), options)
    }

    /// A catalog logic with rays, using all of its contexts.
    pub fn from_catalog(name: &str, options: RunOptions) -> Option<Self> {
        let entry = catalog(name)?;
        Some(KsProtocolConfig::new(entry.logic, entry.rays?, options))
    }

    pub fn with_bases(mut self, bases: Vec<usize>) -> Self {
        self.bases = bases;
        self
    }

    pub fn with_reveal_fraction(mut self, reveal_fraction: f64) -> Self {
        self.reveal_fraction = reveal_fraction;
        self
    }

    /// Checks the configuration and builds one measurement basis per entry
    /// of the family.
    fn measurement_bases(&self) -> Result<Vec<MeasurementBasis>, ProtocolError> {
        if !(0.0..=1.0).contains(&self.reveal_fraction) {
            return Err(ProtocolError::RevealFraction(self.reveal_fraction));
        }
        if self.bases.is_empty() {
            return Err(ProtocolError::BasisFamily("no bases".into()));
        }
        if let Some(&c) = self.bases.iter().find(|&&c| c >= self.logic.context_count()) {
            return Err(ProtocolError::ContextIndex(c));
        }
        let report = check_realization(&self.logic, &self.rays, 0.0)?;
        if !report.ok {
            return Err(ProtocolError::BasisFamily(
                "rays do not realize the logic".into(),
            ));
        }
        let dim = self.rays[0].dim();
        if let Some(&c) = self
            .bases
            .iter()
            .find(|&&c| self.logic.context(c).len() != dim)
        {
            return Err(ProtocolError::BasisFamily(format!(
                "context {c} has {} atoms but the rays live in dimension {dim}",
                self.logic.context(c).len()
            )));
        }
        if let EveStrategy::InterceptResendFixedBasis(basis) = self.options.eve {
            if basis >= self.bases.len() {
                return Err(ProtocolError::EveBasis {
                    basis,
                    available: self.bases.len(),
                });
            }
        }
        if self.options.eve == EveStrategy::OmniscientClassical {
            return Err(ProtocolError::OmniscientOnQuantum);
        }
        self.bases
            .iter()
            .map(|&c| {
                let rays: Vec<Ray> = self.logic.context(c).iter().map(|&a| self.rays[a].clone()).collect();
                Ok(MeasurementBasis::from_rays(&rays)?)
            })
            .collect()
    }
}

fn position(logic: &OrthoLogic, context: usize, atom: AtomId) -> Result<usize, ProtocolError> {
    if context >= logic.context_count() {
        return Err(ProtocolError::ContextIndex(context));
    }
    logic
        .position_in(context, atom)
        .ok_or(ProtocolError::AtomNotInContext { atom, context })
}

/// Alice's and Bob's symbols for a kept round, `None` for a discarded one.
fn sift_pair(
    alice_basis: usize,
    sent: AtomId,
    bob_basis: usize,
    outcome: AtomId,
    logic: &OrthoLogic,
) -> Result<Option<(u8, u8)>, ProtocolError> {
    let sent_pos = position(logic, alice_basis, sent)?;
    let outcome_pos = position(logic, bob_basis, outcome)?;
    if alice_basis == bob_basis {
        return Ok(Some((sent_pos as u8, outcome_pos as u8)));
    }
    if sent == outcome {
        // Both contexts contain the atom: it is the interlinking observable.
        let symbol = if alice_basis < bob_basis { sent_pos } else { outcome_pos };
        return Ok(Some((symbol as u8, symbol as u8)));
    }
    Ok(None)
}

/// The sifting rule.
///
/// Rounds measured in the same context are kept, with Bob's outcome
/// position in the context as the symbol. Rounds in different contexts are
/// kept only when Alice sent an atom the two contexts share and Bob's
/// outcome is that atom; the symbol is then the atom's position in the
/// lower-numbered of the two contexts. Everything else is discarded.
pub fn ks_sift(
    alice_basis: usize,
    alice_sent_atom: AtomId,
    bob_basis: usize,
    bob_outcome_atom: AtomId,
    logic: &OrthoLogic,
) -> Result<Option<u8>, ProtocolError> {
    Ok(sift_pair(alice_basis, alice_sent_atom, bob_basis, bob_outcome_atom, logic)?
        .map(|(_, bob)| bob))
}

/// Runs the protocol: Alice prepares a random state of a random basis of
/// the family, Bob measures in an independent random basis, rounds are
/// sifted with [`ks_sift`], and each sifted round is revealed for checking
/// with probability `reveal_fraction`. Unrevealed sifted symbols form the
/// keys.
///
/// An intercept-resend eavesdropper measures in a basis of the family and
/// forwards her post-measurement state; she agrees with Alice when her
/// outcome is the atom Alice sent.
pub fn run_ks_protocol(cfg: &KsProtocolConfig) -> Result<Session, ProtocolError> {
    let bases = cfg.measurement_bases()?;
    let opts = &cfg.options;
    let family = cfg.bases.len();
    let arity = cfg.rays[0].dim();
    let root = RandomSource::new(opts.seed);
    let tallies = opts.execution.map_chunks(opts.rounds, |chunk, start, len| {
        let mut rng = root.split(chunk as u64);
        let mut t = Tally::default();
        for round in start..start + len {
            let a = rng.index(family);
            let k = rng.index(arity);
            let alice_ctx = cfg.bases[a];
            let sent = cfg.logic.context(alice_ctx)[k];
            let mut state: PureState = bases[a].vector(k).clone();
            let mut eve_atom = None;
            let eve_basis = match opts.eve {
                EveStrategy::InterceptResendRandomBasis => Some(rng.index(family)),
                EveStrategy::InterceptResendFixedBasis(e) => Some(e),
                _ => None,
            };
            if let Some(e) = eve_basis {
                let m = measure(&state, &bases[e], &mut rng).expect("dimensions checked");
                eve_atom = Some(cfg.logic.context(cfg.bases[e])[m.outcome]);
                state = m.post_state;
            }
            let b = rng.index(family);
            let bob_ctx = cfg.bases[b];
            let out_pos = measure(&state, &bases[b], &mut rng)
                .expect("dimensions checked")
                .outcome;
            let outcome = cfg.logic.context(bob_ctx)[out_pos];
            let sifted = sift_pair(alice_ctx, sent, bob_ctx, outcome, &cfg.logic)
                .expect("atoms come from their contexts");
            if let Some((sa, sb)) = sifted {
                t.sifted += 1;
                if eve_atom == Some(sent) {
                    t.eve_agree += 1;
                }
                if rng.bernoulli(cfg.reveal_fraction) {
                    t.revealed += 1;
                    if sa != sb {
                        t.revealed_mismatch += 1;
                    }
                } else {
                    t.alice_key.push(sa);
                    t.bob_key.push(sb);
                }
            }
            if opts.transcript {
                t.rows.push(TranscriptRow {
                    round,
                    alice_basis: alice_ctx,
                    sent,
                    bob_basis: bob_ctx,
                    outcome,
                    kept: sifted.is_some(),
                    symbol_a: sifted.map(|s| s.0),
                    symbol_b: sifted.map(|s| s.1),
                });
            }
        }
        t
    });
    Ok(Tally::merge(tallies, opts.rounds, opts.transcript))
}
