// SPDX-License-Identifier: MIT OR Apache-2.0

//! Counterbalanced identification: write a trials file with two framings and
//! an order-dependent position bias, read it back, and fit a logistic curve
//! per framing.
//!
//! Usage:
//!   cargo run --release --example identification_curves -- --slope 6.3 --bias 1.5

use clap::Parser;
use cpgeom::data::{read_trials, write_trials, Order, StimulusSet, TrialRecord};
use cpgeom::paradigms::run_identification;

#[derive(Parser)]
struct Args {
    /// Logistic slope in log-value units
    #[arg(long, default_value_t = 6.3)]
    slope: f64,

    /// Logit added to whichever option is presented first
    #[arg(long, default_value_t = 1.5)]
    bias: f64,

    /// Crossover of the shifted framing
    #[arg(long, default_value_t = 11.0)]
    shifted_crossover: f64,
}

fn main() -> cpgeom::Result<()> {
    let args = Args::parse();
    let stimuli = StimulusSet::decade_10();
    let dir = std::env::temp_dir().join(format!("cpgeom-ident-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| cpgeom::Error::io(&dir, e))?;
    let path = dir.join("identification.csv");

    let mut trials = Vec::new();
    for (framing, x0) in [("plain", 10.0), ("shifted", args.shifted_crossover)] {
        for &v in stimuli.values() {
            let drive = args.slope * (v - x0) / x0;
            for order in [Order::AB, Order::BA] {
                // AB lists category a first, BA lists category b first.
                let bias = match order {
                    Order::AB => -args.bias,
                    Order::BA => args.bias,
                };
                trials.push(TrialRecord::new(&stimuli, v, v, order, 0.0, drive + bias)?.with_framing(framing));
            }
        }
    }
    write_trials(&path, &trials)?;
    let trials = read_trials(&path, &stimuli)?;
    let result = run_identification(&trials, &stimuli)?;

    println!("{:<8}  {:>9}  {:>6}  {:>5}  boundary", "framing", "crossover", "slope", "R²");
    for f in &result.framings {
        let fit = f.fit.as_ref().expect("enough values to fit");
        println!(
            "{:<8}  {:>9}  {:>6.2}  {:>5.3}  {}",
            f.framing,
            f.crossover.map_or("none".into(), |x| format!("{x:.2}")),
            fit.slope,
            fit.r2,
            f.boundary_hit
        );
    }
    for d in &result.crossover_deltas {
        if let Some(steps) = d.delta_steps {
            println!("{} vs {}: crossovers {steps:.2} steps apart", d.framing_a, d.framing_b);
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
