//! File formats, output formatting and subcommands behind the `threetangle` binary.

pub mod args;
pub mod commands;
pub mod error;
pub mod matrix_io;
pub mod output;

pub use args::{Command, RunConfig};
pub use error::{CliError, CliResult};

/// Text to print and, for `ckw`, an error to report after printing it.
pub fn run(cfg: &RunConfig) -> CliResult<(String, Option<CliError>)> {
    use commands::*;
    let text = match &cfg.command {
        Command::Table1 { n_list } => cmd_table1(n_list)?,
        Command::Curves {
            n,
            p_points,
            phi_points,
            argmin: false,
        } => cmd_curves(*n, *p_points, *phi_points)?,
        Command::Curves {
            n,
            p_points,
            phi_points,
            argmin: true,
        } => cmd_curves_argmin(*n, *p_points, *phi_points)?,
        Command::Ckw { n, p_points } => {
            let out = cmd_ckw(*n, *p_points)?;
            return Ok((out.csv, out.violation));
        }
        Command::Tangle { p, n } => cmd_tangle(*p, *n)?,
        Command::Decompose { p, n } => cmd_decompose(*p, *n)?,
        Command::Vanishing { input, n, tol } => cmd_vanishing(&matrix_io::read_density(input)?, *n, *tol)?,
        Command::Oracle { input, m, restarts, seed } => cmd_oracle(&matrix_io::read_density(input)?, *m, *restarts, *seed)?,
    };
    Ok((text, None))
}
