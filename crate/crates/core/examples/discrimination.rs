// SPDX-License-Identifier: MIT OR Apache-2.0

//! Confidence-based discrimination on generated trials: cross-boundary pairs
//! get extra |Δlogit|, optionally only at large log distances.
//!
//! Usage:
//!   cargo run --release --example discrimination -- --boost 0.6

use clap::Parser;
use cpgeom::data::{Order, StimulusSet, TrialRecord};
use cpgeom::paradigms::run_discrimination;
use cpgeom::stats::rng::stream_rng;
use rand_distr::{Distribution, Normal};

#[derive(Parser)]
struct Args {
    /// Confidence added to cross-boundary pairs
    #[arg(long, default_value_t = 0.6)]
    boost: f64,

    /// Only boost pairs more than 0.2 apart in log value
    #[arg(long)]
    far_only: bool,

    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn main() -> cpgeom::Result<()> {
    let args = Args::parse();
    let stimuli = StimulusSet::decade_10();
    let values = stimuli.values();
    let noise = Normal::new(0.0, 0.45).expect("valid sd");
    let mut rng = stream_rng(args.seed, 0);

    let mut trials = Vec::new();
    for (i, &a) in values.iter().enumerate() {
        // Pairs up to four steps apart, so cross and within pairs overlap in
        // log distance.
        for &b in values.iter().skip(i + 1).take(4) {
            for order in [Order::AB, Order::BA, Order::AB, Order::BA] {
                let cross = stimuli.is_cross(a, b);
                let far = (b / a).ln() > 0.2;
                let boost = if cross && (far || !args.far_only) { args.boost } else { 0.0 };
                let conf = (1.0 + boost + noise.sample(&mut rng)).max(0.0);
                trials.push(TrialRecord::new(&stimuli, a, b, order, conf, 0.0)?);
            }
        }
    }
    let r = run_discrimination(&trials)?;
    println!(
        "cross {:.3} (n={})  within {:.3} (n={})  ΔConf {:+.3}  d {:.2}  MW p {:.2e}",
        r.conf_cross, r.n_cross, r.conf_within, r.n_within, r.delta_conf, r.cohens_d, r.mw_p
    );
    println!("{:>3}  {:>7}  {:>8}  {:>8}", "bin", "n c/w", "ΔConf", "p");
    for b in &r.bins {
        println!(
            "{:>3}  {:>3}/{:<3}  {:>8}  {:>8}{}",
            b.bin,
            b.n_cross,
            b.n_within,
            b.delta_conf.map_or("-".into(), |d| format!("{d:+.3}")),
            b.mw_p.map_or("-".into(), |p| format!("{p:.3}")),
            if b.significant { "  *" } else { "" }
        );
    }
    println!("sig levels {}/{}", r.sig_bins, r.bins.len());
    Ok(())
}
