use std::fs::File;
use std::io::Write;
use std::path::Path;

use kscrypt::protocols::{
    run_bb84_chocolate, run_bb84_quantum, run_ekert_classical, run_ekert_classical_exact,
    run_ekert_quantum, run_ekert_quantum_exact, run_ks_protocol, ChshAngles, ChshSetting,
    ChshSettings, ChshStats, EveStrategy, KsProtocolConfig, PairSource, RunOptions, Session,
    SessionStats, TranscriptRow, UrnModel,
};
use kscrypt::Execution;
use serde::Serialize;

use super::{emit_json, resolve};
use crate::args::{PairKind, ProtocolArgs, ProtocolKind};
use crate::error::{CliError, CliResult};

fn protocol_name(kind: ProtocolKind) -> &'static str {
    match kind {
        ProtocolKind::Bb84Choc => "bb84-choc",
        ProtocolKind::Bb84Q => "bb84-q",
        ProtocolKind::Ks => "ks",
        ProtocolKind::EkertC => "ekert-c",
        ProtocolKind::EkertQ => "ekert-q",
    }
}

fn digits(symbols: &[u8]) -> String {
    symbols.iter().map(|&s| char::from(b'0' + s)).collect()
}

#[derive(Serialize)]
struct SessionReport {
    protocol: &'static str,
    seed: u64,
    eve: EveStrategy,
    rounds: usize,
    sifted: usize,
    sift_rate: f64,
    revealed: usize,
    qber: f64,
    sample_qber: Option<f64>,
    eve_agreement: f64,
    key_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    alice_key: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bob_key: Option<String>,
}

impl SessionReport {
    fn new(kind: ProtocolKind, seed: u64, eve: EveStrategy, s: &SessionStats, keys: bool) -> Self {
        SessionReport {
            protocol: protocol_name(kind),
            seed,
            eve,
            rounds: s.rounds,
            sifted: s.sifted,
            sift_rate: s.sift_rate(),
            revealed: s.revealed,
            qber: s.qber,
            sample_qber: s.sample_qber,
            eve_agreement: s.eve_agreement,
            key_length: s.alice_key.len(),
            alice_key: keys.then(|| digits(&s.alice_key)),
            bob_key: keys.then(|| digits(&s.bob_key)),
        }
    }
}

#[derive(Serialize)]
struct ChshReport {
    protocol: &'static str,
    exact: bool,
    seed: Option<u64>,
    #[serde(flatten)]
    stats: ChshStats,
    s_abs: f64,
    classical_bound: f64,
    tsirelson_bound: f64,
}

fn write_transcript(path: &Path, rows: &[TranscriptRow]) -> CliResult {
    let file = File::create(path)
        .map_err(|e| CliError::failure(format!("cannot create {}: {e}", path.display())))?;
    let mut w = csv::Writer::from_writer(file);
    for row in rows {
        w.serialize(row).map_err(CliError::failure)?;
    }
    w.flush().map_err(CliError::failure)
}

fn required<T>(value: Option<T>, flag: &str, kind: ProtocolKind) -> CliResult<T> {
    value.ok_or_else(|| {
        CliError::usage(format!("{flag} is required for `protocol run {}`", protocol_name(kind)))
    })
}

pub fn run(args: ProtocolArgs, exec: Execution, out: &mut dyn Write) -> CliResult {
    let kind = args.kind;
    let eve: EveStrategy = args.eve.parse().map_err(CliError::usage)?;
    match kind {
        ProtocolKind::EkertC | ProtocolKind::EkertQ => run_chsh(args, eve, exec, out),
        _ => {
            let rounds = required(args.rounds, "--rounds", kind)?;
            let seed = required(args.seed, "--seed", kind)?;
            let opts = RunOptions::new(rounds, seed)
                .with_eve(eve)
                .with_execution(exec)
                .with_transcript(args.transcript.is_some());
            let session: Session = match kind {
                ProtocolKind::Bb84Choc => run_bb84_chocolate(&UrnModel::bb84(), &opts),
                ProtocolKind::Bb84Q => run_bb84_quantum(&opts),
                _ => {
                    let doc = resolve(&args.logic)?;
                    let rays = doc.rays.ok_or_else(|| {
                        CliError::usage(format!("{} has no rays to prepare states from", args.logic))
                    })?;
                    let mut cfg = KsProtocolConfig::new(doc.logic, rays, opts)
                        .with_reveal_fraction(args.reveal_fraction);
                    if let Some(bases) = args.bases {
                        cfg = cfg.with_bases(bases);
                    }
                    run_ks_protocol(&cfg)
                }
            }
            .map_err(CliError::usage)?;
            if let (Some(path), Some(rows)) = (&args.transcript, &session.transcript) {
                write_transcript(path, rows)?;
            }
            emit_json(
                out,
                &SessionReport::new(kind, seed, eve, &session.stats, !args.no_keys),
            )
        }
    }
}

fn run_chsh(args: ProtocolArgs, eve: EveStrategy, exec: Execution, out: &mut dyn Write) -> CliResult {
    let kind = args.kind;
    if eve != EveStrategy::None {
        return Err(CliError::usage("--eve is not supported for Ekert runs"));
    }
    if args.transcript.is_some() {
        return Err(CliError::usage("--transcript is not supported for Ekert runs"));
    }
    let sampled = if args.exact {
        None
    } else {
        Some((required(args.rounds, "--rounds", kind)?, required(args.seed, "--seed", kind)?))
    };
    let stats = if kind == ProtocolKind::EkertC {
        let source = match args.pairs {
            PairKind::AntiCorrelated => PairSource::anti_correlated(),
            PairKind::Correlated => PairSource::correlated(),
        };
        let settings = match args.colors {
            Some(c) => ChshSettings {
                a: ChshSetting::binary(c[0]),
                a_prime: ChshSetting::binary(c[1]),
                b: ChshSetting::binary(c[2]),
                b_prime: ChshSetting::binary(c[3]),
            },
            None => ChshSettings::standard(),
        };
        match sampled {
            None => run_ekert_classical_exact(&source, &settings),
            Some((rounds, seed)) => run_ekert_classical(&source, &settings, rounds, seed, exec),
        }
        .map_err(CliError::usage)?
    } else {
        let angles = match args.angles {
            Some(a) => ChshAngles {
                a: a[0],
                a_prime: a[1],
                b: a[2],
                b_prime: a[3],
            },
            None => ChshAngles::optimal(),
        };
        match sampled {
            None => run_ekert_quantum_exact(&angles),
            Some((rounds, seed)) => run_ekert_quantum(&angles, rounds, seed, exec),
        }
    };
    emit_json(
        out,
        &ChshReport {
            protocol: protocol_name(kind),
            exact: args.exact,
            seed: sampled.map(|(_, seed)| seed),
            s_abs: stats.s.abs(),
            stats,
            classical_bound: 2.0,
            tsirelson_bound: 2.0 * std::f64::consts::SQRT_2,
        },
    )
}
