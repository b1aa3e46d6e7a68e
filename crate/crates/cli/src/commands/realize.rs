use std::io::Write;

use kscrypt::realization::{check_realization, search_realization, RealizationReport, SearchConfig};
use kscrypt::Execution;
use serde::Serialize;

use super::{emit_json, resolve};
use crate::args::RealizeCommand;
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct SearchReport<'a> {
    source: &'a str,
    dim: usize,
    restarts: usize,
    seed: u64,
    found: bool,
    residual: f64,
    min_pair_angle_deg: f64,
    penalty: f64,
    restart: usize,
    vectors: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct CheckReport<'a> {
    source: &'a str,
    #[serde(flatten)]
    report: RealizationReport,
}

pub fn run(cmd: RealizeCommand, exec: Execution, out: &mut dyn Write) -> CliResult {
    match cmd {
        RealizeCommand::Search {
            source,
            dim,
            restarts,
            seed,
            min_angle_deg,
            max_iterations,
        } => {
            let logic = resolve(&source)?.logic;
            if !(0.0..90.0).contains(&min_angle_deg) {
                return Err(CliError::usage("--min-angle-deg must lie in [0, 90)"));
            }
            if restarts == 0 {
                return Err(CliError::usage("--restarts must be at least 1"));
            }
            let dim = dim.unwrap_or_else(|| logic.max_arity());
            let config = SearchConfig {
                min_angle: min_angle_deg.to_radians(),
                max_iterations,
                execution: exec,
                ..SearchConfig::new(dim, restarts, seed)
            };
            let r = search_realization(&logic, &config).map_err(CliError::usage)?;
            emit_json(
                out,
                &SearchReport {
                    source: &source,
                    dim,
                    restarts,
                    seed,
                    found: r.found,
                    residual: r.residual,
                    min_pair_angle_deg: r.min_pair_angle.to_degrees(),
                    penalty: r.penalty,
                    restart: r.restart,
                    vectors: r.vectors,
                },
            )
        }
        RealizeCommand::Check {
            source,
            tolerance_deg,
        } => {
            let doc = resolve(&source)?;
            let rays = doc
                .rays
                .ok_or_else(|| CliError::usage(format!("{source} has no rays")))?;
            if !(0.0..90.0).contains(&tolerance_deg) {
                return Err(CliError::usage("--tolerance-deg must lie in [0, 90)"));
            }
            let report = check_realization(&doc.logic, &rays, tolerance_deg.to_radians())
                .map_err(CliError::usage)?;
            let ok = report.ok;
            emit_json(out, &CheckReport { source: &source, report })?;
            if ok {
                Ok(())
            } else {
                Err(CliError::failure("the rays do not realize the logic"))
            }
        }
    }
}
