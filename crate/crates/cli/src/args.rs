use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::DEFAULT_N_LIST;

#[derive(Debug, Parser)]
#[command(name = "threetangle", version, about = "Three-tangle of the GHZ / W / flipped-W mixture family")]
pub struct RunConfig {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Region boundaries p0, p1, p*, and the concurrence-vanishing point for each n.
    Table1 {
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = DEFAULT_N_LIST)]
        n_list: Vec<f64>,
    },
    /// Characteristic-curve minimum, closed-form tangle and envelope as CSV.
    Curves {
        #[arg(long)]
        n: f64,
        #[arg(long, default_value_t = 401)]
        p_points: usize,
        #[arg(long, default_value_t = 64)]
        phi_points: usize,
        /// Emit the minimising phases instead of the comparison columns.
        #[arg(long)]
        argmin: bool,
    },
    /// One-tangle, squared concurrences and three-tangle along the family as CSV.
    Ckw {
        #[arg(long)]
        n: f64,
        #[arg(long, default_value_t = 1001)]
        p_points: usize,
    },
    /// Three-tangle of rho(p, (1-p)/n) and its region.
    Tangle {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: f64,
    },
    /// An optimal decomposition of rho(p, (1-p)/n).
    Decompose {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: f64,
    },
    /// Whether a state lies in the zero-tangle polytope for n.
    Vanishing {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        n: f64,
        #[arg(long, default_value_t = threetangle_core::bloch::DEFAULT_MEMBERSHIP_TOL)]
        tol: f64,
    },
    /// Numerical upper bound on the three-tangle of an arbitrary state of rank <= 4.
    Oracle {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}
