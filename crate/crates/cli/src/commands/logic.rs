use std::io::Write;

use kscrypt::logic::{
    ball_types, build_partition_logic, classify_state_set, enumerate_two_valued_states_with,
    parity_obstruction, LogicError, OrthoLogic,
};
use kscrypt::realization::{catalog, catalog_names};
use kscrypt::Execution;
use serde::Serialize;

use super::{emit_json, resolve};
use crate::args::{KsCommand, LogicCommand};
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct CatalogItem {
    name: &'static str,
    atoms: usize,
    contexts: usize,
    dim: Option<usize>,
    description: &'static str,
}

pub fn list_catalog(out: &mut dyn Write) -> CliResult {
    let items: Vec<CatalogItem> = catalog_names()
        .iter()
        .map(|name| {
            let e = catalog(name).expect("listed names resolve");
            CatalogItem {
                name: e.name,
                atoms: e.logic.atom_count(),
                contexts: e.logic.context_count(),
                dim: e.dim(),
                description: e.description,
            }
        })
        .collect();
    emit_json(out, &items)
}

#[derive(Serialize)]
struct StatesReport<'a> {
    source: &'a str,
    atoms: usize,
    contexts: usize,
    count: usize,
    unital: bool,
    separating: bool,
    /// True atoms of each state, zero-based, in canonical order.
    states: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct PartitionReport<'a> {
    source: &'a str,
    states: usize,
    /// One partition of `1..=states` per context, blocks in atom order.
    partitions: Vec<Vec<Vec<usize>>>,
    /// The atom of each block.
    block_atoms: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct BallsReport<'a> {
    source: &'a str,
    colors: usize,
    ball_types: Vec<String>,
}

fn needs_states(err: LogicError) -> CliError {
    match err {
        LogicError::NoStates | LogicError::NotUnital { .. } => CliError::failure(err),
        other => CliError::usage(other),
    }
}

pub fn run(cmd: LogicCommand, exec: Execution, out: &mut dyn Write) -> CliResult {
    match cmd {
        LogicCommand::States { source } => {
            let logic = resolve(&source)?.logic;
            let states = enumerate_two_valued_states_with(&logic, exec);
            let class = classify_state_set(&logic, &states).map_err(CliError::failure)?;
            emit_json(
                out,
                &StatesReport {
                    source: &source,
                    atoms: logic.atom_count(),
                    contexts: logic.context_count(),
                    count: class.count,
                    unital: class.unital,
                    separating: class.separating,
                    states: states.iter().map(|s| s.true_atoms()).collect(),
                },
            )
        }
        LogicCommand::Partition { source } => {
            let logic = resolve(&source)?.logic;
            let pl = build_partition_logic(&logic).map_err(needs_states)?;
            emit_json(
                out,
                &PartitionReport {
                    source: &source,
                    states: pl.state_count(),
                    partitions: pl.one_based(),
                    block_atoms: pl.block_atoms().to_vec(),
                },
            )
        }
        LogicCommand::Balls { source } => {
            let logic = resolve(&source)?.logic;
            let pl = build_partition_logic(&logic).map_err(needs_states)?;
            emit_json(
                out,
                &BallsReport {
                    source: &source,
                    colors: logic.context_count(),
                    ball_types: ball_types(&pl).iter().map(ToString::to_string).collect(),
                },
            )
        }
        LogicCommand::Export { source, output } => {
            let doc = resolve(&source)?;
            match output {
                Some(path) => doc.save(&path).map_err(CliError::failure),
                None => writeln!(out, "{}", doc.to_json()).map_err(CliError::failure),
            }
        }
    }
}

#[derive(Serialize)]
struct ParityReport {
    contexts: Vec<usize>,
    obstruction: bool,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    source: &'a str,
    atoms: usize,
    contexts: usize,
    two_valued_states: usize,
    /// No two-valued state exists.
    kochen_specker: bool,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    parity: Option<ParityReport>,
}

fn verify<'a>(
    logic: &OrthoLogic,
    source: &'a str,
    parity: Option<Vec<usize>>,
    exec: Execution,
) -> CliResult<VerifyReport<'a>> {
    let count = enumerate_two_valued_states_with(logic, exec).len();
    let parity = match parity {
        None => None,
        Some(mut subset) => {
            if subset.is_empty() {
                subset = (0..logic.context_count()).collect();
            }
            let obstruction = parity_obstruction(logic, &subset).map_err(CliError::usage)?;
            Some(ParityReport {
                contexts: subset,
                obstruction,
            })
        }
    };
    let message = match count {
        0 => "no two-valued state exists".to_string(),
        1 => "1 two-valued state exists".to_string(),
        n => format!("{n} two-valued states exist"),
    };
    Ok(VerifyReport {
        source,
        atoms: logic.atom_count(),
        contexts: logic.context_count(),
        two_valued_states: count,
        kochen_specker: count == 0,
        message,
        parity,
    })
}

pub fn run_ks(cmd: KsCommand, exec: Execution, out: &mut dyn Write) -> CliResult {
    match cmd {
        KsCommand::Verify {
            source,
            parity_subset,
        } => {
            let doc = resolve(&source)?;
            emit_json(out, &verify(&doc.logic, &source, parity_subset, exec)?)
        }
    }
}
