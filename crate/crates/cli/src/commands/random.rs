use std::fs;
use std::io::{Read, Write};

use kscrypt::randomness::{
    bit_stats, map_outcomes_to_bits, quantum_coin_bits, spin32_symbols,
    von_neumann_extract, GroupingRule, SymbolStream,
};
use kscrypt::Execution;

use super::emit_json;
use crate::args::{InputArgs, RandomCommand, StreamFormat};
use crate::error::{CliError, CliResult};

fn read_input(input: &InputArgs) -> CliResult<Vec<u8>> {
    let bytes = match &input.input {
        Some(path) => fs::read(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError::usage(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    match input.format {
        StreamFormat::Raw => Ok(bytes),
        StreamFormat::Ascii => bytes
            .iter()
            .filter(|b| !b.is_ascii_whitespace())
            .map(|&b| {
                if b.is_ascii_digit() {
                    Ok(b - b'0')
                } else {
                    Err(CliError::usage(format!(
                        "unexpected character {:?} in ascii input",
                        char::from(b)
                    )))
                }
            })
            .collect(),
    }
}

fn read_bits(input: &InputArgs) -> CliResult<Vec<u8>> {
    let bits = read_input(input)?;
    SymbolStream::new(2, bits)
        .map(|s| s.symbols().to_vec())
        .map_err(CliError::usage)
}

fn write_stream(out: &mut dyn Write, symbols: &[u8], format: StreamFormat) -> CliResult {
    match format {
        StreamFormat::Raw => out.write_all(symbols),
        StreamFormat::Ascii => {
            let line: String = symbols
                .iter()
                .map(|&s| char::from_digit(u32::from(s), 10).expect("single-digit symbol"))
                .collect();
            writeln!(out, "{line}")
        }
    }
    .map_err(CliError::failure)
}

pub fn run(cmd: RandomCommand, exec: Execution, out: &mut dyn Write) -> CliResult {
    match cmd {
        RandomCommand::Spin32 {
            bits,
            seed,
            theta,
            symbols,
            format,
        } => {
            let stream = spin32_symbols(bits, theta, seed, exec);
            if symbols {
                write_stream(out, stream.symbols(), format)
            } else {
                let grouped = map_outcomes_to_bits(&stream, &GroupingRule::spin32_halves())
                    .map_err(CliError::usage)?;
                write_stream(out, &grouped, format)
            }
        }
        RandomCommand::Coin { bits, seed, format } => {
            write_stream(out, &quantum_coin_bits(bits, seed, exec), format)
        }
        RandomCommand::Group {
            alphabet,
            map,
            keep,
            input,
        } => {
            let stream = SymbolStream::new(alphabet, read_input(&input)?).map_err(CliError::usage)?;
            let rule = match (map, keep) {
                (Some(map), _) => GroupingRule::Identify(map),
                (None, Some(keep)) => GroupingRule::Keep(keep),
                (None, None) => return Err(CliError::usage("one of --map or --keep is required")),
            };
            let bits = map_outcomes_to_bits(&stream, &rule).map_err(CliError::usage)?;
            write_stream(out, &bits, input.format)
        }
        RandomCommand::Extract { input } => {
            let bits = read_bits(&input)?;
            write_stream(out, &von_neumann_extract(&bits), input.format)
        }
        RandomCommand::Stats { input } => emit_json(out, &bit_stats(&read_bits(&input)?)),
    }
}
