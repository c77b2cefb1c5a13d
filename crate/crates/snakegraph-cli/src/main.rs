use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use snakegraph_cli::{
    cmd_count, cmd_expand, cmd_flip, cmd_fpoly, cmd_gvec, cmd_matchings, cmd_verify,
};

/// Exact Laurent expansions of cluster variables from triangulated
/// unpunctured surfaces, via perfect matchings of snake graphs.
#[derive(Parser)]
#[command(name = "snakegraph", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the cluster variable of an arc by summing over perfect
    /// matchings of its snake graph
    Expand {
        surface: PathBuf,
        arc: PathBuf,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
        /// Include the per-matching term table
        #[arg(long)]
        terms: bool,
    },
    /// Expand via qualifying unions of tiles instead of matchings;
    /// the result is identical to `expand`
    SubgraphExpand {
        surface: PathBuf,
        arc: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        terms: bool,
    },
    /// List all perfect matchings with weights, coefficient monomials and
    /// height vectors
    Matchings {
        surface: PathBuf,
        arc: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The F-polynomial of the arc (cluster variables set to 1)
    Fpoly {
        surface: PathBuf,
        arc: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The g-vector of the arc
    Gvec {
        surface: PathBuf,
        arc: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Count the perfect matchings without listing them
    Count { surface: PathBuf, arc: PathBuf },
    /// Recompute the expansion independently through flip search and seed
    /// mutation, and compare
    Verify {
        surface: PathBuf,
        arc: PathBuf,
        /// Flip search depth bound (default: crossings + 4)
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Flip an interior arc of the triangulation
    Flip {
        surface: PathBuf,
        /// Interior arc label to flip
        label: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Expand {
            surface,
            arc,
            json,
            terms,
        } => cmd_expand(&surface, &arc, json, terms, false),
        Command::SubgraphExpand {
            surface,
            arc,
            json,
            terms,
        } => cmd_expand(&surface, &arc, json, terms, true),
        Command::Matchings { surface, arc, json } => cmd_matchings(&surface, &arc, json),
        Command::Fpoly { surface, arc, json } => cmd_fpoly(&surface, &arc, json),
        Command::Gvec { surface, arc, json } => cmd_gvec(&surface, &arc, json),
        Command::Count { surface, arc } => cmd_count(&surface, &arc),
        Command::Verify {
            surface,
            arc,
            max_depth,
            json,
        } => cmd_verify(&surface, &arc, max_depth, json),
        Command::Flip {
            surface,
            label,
            json,
        } => cmd_flip(&surface, label, json),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
