// SPDX-License-Identifier: MIT OR Apache-2.0

//! Nonce stimuli have ranks but no magnitudes, so the continuous baseline
//! is ordinal position. Runs RSA on a planted nonce bundle and reports the
//! CP advantage over that baseline.
//!
//! Usage:
//!   cargo run --release --example nonce_ordinal_baseline -- --lambda-true 0.5

use clap::Parser;
use cpgeom::data::StimulusSet;
use cpgeom::geometry::{theoretical_rdm, TheoreticalKind, TheoreticalRdmSpec};
use cpgeom::paradigms::{primary_layers, reference_kind, run_rsa, RsaOptions};
use cpgeom::synth::{generate, ArcSpacing, SynthSpec};

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 0.5)]
    lambda_true: f64,

    #[arg(long, default_value_t = 0.05)]
    sigma: f64,

    #[arg(long, default_value_t = 2_000)]
    permutations: usize,
}

fn main() -> cpgeom::Result<()> {
    let args = Args::parse();
    let stimuli = StimulusSet::nonce("nonce");
    println!("reference model: {}", reference_kind(&stimuli).name());

    let ordinal = theoretical_rdm(&stimuli, &TheoreticalRdmSpec::new(TheoreticalKind::OrdinalContinuous))?;
    println!("ordinal template, first row: {:?}", &ordinal.entries()[..6]);

    let spec = SynthSpec::new(stimuli.clone())
        .layers(9)
        .spacing(ArcSpacing::Linear)
        .lambda(args.lambda_true)
        .sigma(args.sigma);
    let bundle = generate(&spec)?;
    let mut opts = RsaOptions::standard(&stimuli, primary_layers(bundle.n_layers()));
    opts.n_permutations = args.permutations;
    let run = run_rsa(&bundle, &opts)?;
    for l in &run.layers {
        println!(
            "layer {}: ρ_ordinal {:.4}  ρ_cp {:.4}  Δρ {:+.4}",
            l.layer, l.rho_by_model["ordinal_continuous"], l.rho_by_model["cp_additive"], l.cp_advantage
        );
    }
    println!("{}", run.summary_line().replace("Cont", "Ordinal"));
    Ok(())
}
