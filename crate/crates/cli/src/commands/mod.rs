use std::io::Write;

use kscrypt::logic_file::{LogicDocument, LogicFileError};
use kscrypt::Execution;
use serde::Serialize;

use crate::args::{Command, ProtocolCommand};
use crate::error::{CliError, CliResult};

mod logic;
mod protocol;
mod random;
mod realize;

pub(crate) fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> CliResult {
    let text = serde_json::to_string_pretty(value).map_err(CliError::failure)?;
    writeln!(out, "{text}").map_err(CliError::failure)
}

pub(crate) fn resolve(source: &str) -> CliResult<LogicDocument> {
    LogicDocument::resolve(source).map_err(|e| match e {
        LogicFileError::UnknownSource(_) => CliError::usage(e),
        other => CliError::usage(format!("{source}: {other}")),
    })
}

pub fn run(command: Command, exec: Execution, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Catalog => logic::list_catalog(out),
        Command::Logic(cmd) => logic::run(cmd, exec, out),
        Command::Ks(cmd) => logic::run_ks(cmd, exec, out),
        Command::Realize(cmd) => realize::run(cmd, exec, out),
        Command::Protocol(ProtocolCommand::Run(args)) => protocol::run(args, exec, out),
        Command::Random(cmd) => random::run(cmd, exec, out),
    }
}
