// SPDX-License-Identifier: MIT OR Apache-2.0

//! Local manifold rotation around the boundary, and the boundary step
//! compared with ordinary steps pooled over layers.
//!
//! Usage:
//!   cargo run --release --example manifold_phase_reset -- --lambda-true 1.0

use clap::Parser;
use cpgeom::data::StimulusSet;
use cpgeom::geometry::{compute_centroids, Metric};
use cpgeom::paradigms::{manifold_profile, phase_reset, primary_layers, DEFAULT_E7_WINDOW};
use cpgeom::synth::{generate, ArcSpacing, SynthSpec};

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 1.0)]
    lambda_true: f64,

    #[arg(long, default_value_t = 0.001)]
    sigma: f64,

    #[arg(long, default_value_t = DEFAULT_E7_WINDOW)]
    window: usize,

    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn main() -> cpgeom::Result<()> {
    let args = Args::parse();
    let stimuli = StimulusSet::decade_10();
    let bundle = generate(
        &SynthSpec::new(stimuli.clone())
            .lambda(args.lambda_true)
            .sigma(args.sigma)
            .seed(args.seed),
    )?;
    let layers = primary_layers(bundle.n_layers());
    let centroids = layers
        .iter()
        .map(|&l| compute_centroids(&bundle, l))
        .collect::<cpgeom::Result<Vec<_>>>()?;

    // ── rotation ────────────────────────────────────────────────────────
    let profile = manifold_profile(&centroids[0], &stimuli, args.window)?;
    println!("layer {} rotation, window {}:", profile.layer, profile.window);
    for (p, a) in profile.positions.iter().zip(&profile.angles) {
        let mark = if Some(*p) == profile.boundary_position { "  <- boundary" } else { "" };
        println!("  at {:>2}: {a:>5.1}°{mark}", stimuli.values()[*p]);
    }
    let mut at_boundary = Vec::new();
    let mut clear = Vec::new();
    for c in &centroids {
        let p = manifold_profile(c, &stimuli, args.window)?;
        at_boundary.extend(p.boundary_angle);
        clear.extend(p.max_clear_angle);
    }
    let min_b = at_boundary.iter().copied().fold(f64::MAX, f64::min);
    let max_c = clear.iter().copied().fold(f64::MIN, f64::max);
    println!("all layers: boundary ≥ {min_b:.1}°, elsewhere ≤ {max_c:.1}°\n");

    // ── phase reset ─────────────────────────────────────────────────────
    let r = phase_reset(&centroids, &stimuli, Metric::Euclidean, 0)?;
    println!(
        "log-spaced arc: boundary/other step ratio {:.2} (MW p {:.2e}, {} vs {} steps)",
        r.ratio, r.mw_p, r.n_boundary, r.n_other
    );

    let base = SynthSpec::new(stimuli.clone())
        .spacing(ArcSpacing::Linear)
        .sigma(args.sigma)
        .seed(args.seed);
    let doubled = generate(&base.clone().lambda(base.boost_for_step_ratio(2.0)?))?;
    let centroids = layers
        .iter()
        .map(|&l| compute_centroids(&doubled, l))
        .collect::<cpgeom::Result<Vec<_>>>()?;
    let r = phase_reset(&centroids, &stimuli, Metric::Euclidean, 0)?;
    println!("planted 2x step: ratio {:.2} (MW p {:.2e})", r.ratio, r.mw_p);
    Ok(())
}
