// SPDX-License-Identifier: MIT OR Apache-2.0

//! Precision gradient: plant a boundary step twice as long as the others and
//! recover the ratio, then check that a no-boundary control stays near 1.
//!
//! Usage:
//!   cargo run --release --example precision_gradient -- --ratio 2.0 --sigma 0.001

use clap::Parser;
use cpgeom::data::StimulusSet;
use cpgeom::geometry::Metric;
use cpgeom::paradigms::{primary_layers, run_precision};
use cpgeom::synth::{generate, ArcSpacing, SynthSpec};

#[derive(Parser)]
struct Args {
    /// Planted boundary-step ratio
    #[arg(long, default_value_t = 2.0)]
    ratio: f64,

    #[arg(long, default_value_t = 0.001)]
    sigma: f64,

    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn main() -> cpgeom::Result<()> {
    let args = Args::parse();

    let base = SynthSpec::new(StimulusSet::decade_10())
        .spacing(ArcSpacing::Linear)
        .sigma(args.sigma)
        .seed(args.seed);
    let lambda = base.boost_for_step_ratio(args.ratio)?;
    let planted = generate(&base.lambda(lambda))?;
    let profile = run_precision(&planted, Metric::Euclidean, &primary_layers(planted.n_layers()))?;
    let ratios: Vec<f64> = profile.iter().map(|p| p.boundary_ratio).collect();
    println!("planted ratio {:.2} (λ = {lambda:.4})", args.ratio);
    let first = &profile[0];
    println!("layer {} precision 1/d:", first.layer);
    for (i, p) in first.precision.iter().enumerate() {
        let mark = if i == first.boundary_pair { "  <- boundary" } else { "" };
        println!("  {:>3} -> {:<3} {p:>8.2}{mark}", 4 + i, 5 + i);
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, f64::MIN), |(a, b), &r| (a.min(r), b.max(r)));
    println!("boundary ratio mean {:.3}, range {lo:.3}-{hi:.3}\n", mean(&ratios));

    let control = generate(&SynthSpec::new(StimulusSet::control_15()).sigma(args.sigma).seed(args.seed))?;
    let profile = run_precision(&control, Metric::Euclidean, &primary_layers(control.n_layers()))?;
    let ratios: Vec<f64> = profile.iter().map(|p| p.boundary_ratio).collect();
    println!("control (11-19, no boundary): ratio at 14->15 mean {:.3}", mean(&ratios));
    Ok(())
}
