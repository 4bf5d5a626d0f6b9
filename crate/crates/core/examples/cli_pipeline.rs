// SPDX-License-Identifier: MIT OR Apache-2.0

//! The command layer driven from code: synthesize decade-10 and decade-100
//! bundles, run RSA and H4 on each, then collect everything into a report
//! that includes the decade-100 / decade-10 advantage ratio. Every step
//! goes through `cli::execute`, so the files written are the same ones the
//! `cpgeom` binary would produce.
//!
//! Usage:
//!   cargo run --release --example cli_pipeline -- --permutations 2000 --keep

use std::path::PathBuf;

use clap::Parser;
use cpgeom::cli::{execute, Command, RunConfig};

#[derive(Parser)]
#[command(about = "synth -> rsa/h4 -> report through the command layer")]
struct Args {
    #[arg(long, default_value_t = 2_000)]
    permutations: usize,

    #[arg(long, default_value_t = 13)]
    layers: usize,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output directory (defaults to a fresh temp dir)
    #[arg(long)]
    dir: Option<PathBuf>,

    /// Leave the files in place
    #[arg(long)]
    keep: bool,
}

fn main() -> cpgeom::Result<()> {
    let args = Args::parse();
    let dir = args
        .dir
        .clone()
        .unwrap_or_else(|| std::env::temp_dir().join(format!("cpgeom-pipeline-{}", std::process::id())));
    std::fs::create_dir_all(&dir).map_err(|e| cpgeom::Error::io(&dir, e))?;

    let base = |command: Command| {
        let mut c = RunConfig::new(command);
        c.seed = args.seed;
        c.permutations = args.permutations;
        c
    };

    let mut documents = Vec::new();
    // a larger boost at 100 mimics the stronger three-digit discontinuity
    for (condition, boost) in [("decade_10", 0.6), ("decade_100", 1.2)] {
        // ── synth ──
        let bundle = dir.join(format!("{condition}.cpb"));
        let mut synth = base(Command::Synth);
        synth.condition = condition.into();
        synth.lambda_true = boost;
        synth.n_layers = args.layers;
        synth.out = Some(bundle.clone());
        println!("{}", execute(&synth)?.summary);

        // ── analyses ──
        for command in [Command::Rsa, Command::H4] {
            let out = dir.join(format!("{condition}-{}.json", command.name()));
            let mut cfg = base(command);
            cfg.inputs = vec![bundle.clone()];
            cfg.out = Some(out.clone());
            let summary = execute(&cfg)?.summary;
            println!("{condition} {}: {}", command.name(), summary.lines().last().unwrap_or(""));
            documents.push(out);
        }
    }

    // ── report ──
    let mut report = base(Command::Report);
    report.inputs = documents;
    report.out = Some(dir.join("report.json"));
    println!("\n{}", execute(&report)?.summary);

    if args.keep {
        println!("\nfiles in {}", dir.display());
    } else {
        std::fs::remove_dir_all(&dir).map_err(|e| cpgeom::Error::io(&dir, e))?;
    }
    Ok(())
}
