// SPDX-License-Identifier: MIT OR Apache-2.0

//! Category direction from a ridge probe, patch vectors at four doses with
//! random-direction controls, and the specificity analysis of a Δconfidence
//! table such as a patching run would return.
//!
//! Usage:
//!   cargo run --release --example probe_patch_vectors -- --layer 5

use std::io::Write;

use clap::Parser;
use cpgeom::data::StimulusSet;
use cpgeom::fitting::RidgeOptions;
use cpgeom::paradigms::{
    build_patch_vectors, read_patch_effects, run_probe, summarize_patch_effects, DEFAULT_ALPHAS,
    DEFAULT_RANDOM_CONTROLS,
};
use cpgeom::synth::{generate, SynthSpec};

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 5)]
    layer: usize,

    #[arg(long, default_value_t = 1.0)]
    ridge_penalty: f64,

    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn main() -> cpgeom::Result<()> {
    let args = Args::parse();
    let bundle = generate(&SynthSpec::new(StimulusSet::decade_10()).lambda(1.0).sigma(0.05).seed(args.seed))?;
    let opts = RidgeOptions {
        penalty: args.ridge_penalty,
        ..RidgeOptions::default()
    };
    let probe = run_probe(&bundle, &[args.layer], opts)?.remove(0);
    let p = &probe.probe;
    println!(
        "layer {}: accuracy {:.2}, ‖w‖ {:.3}, |cos(w, PC1)| {:.3}, ρ(PC1, category) {:.3}",
        p.layer, p.train_accuracy, p.weight_norm, probe.validity.probe_pc1_cosine, probe.validity.pc1_category_rho
    );

    let set = build_patch_vectors(p, &DEFAULT_ALPHAS, DEFAULT_RANDOM_CONTROLS, args.seed)?;
    for (alpha, delta) in set.alpha_levels.iter().zip(&set.category_deltas) {
        let norm = dot(delta, delta).sqrt();
        // Score shift of the linear probe: w · delta = α‖w‖².
        println!("α {alpha:.2}: ‖δ‖ {norm:.4}, probe score shift {:+.4}", dot(&p.weights, delta));
    }

    // A toy effect table: the category direction moves confidence in
    // proportion to α, random directions barely at all.
    let dir = std::env::temp_dir().join(format!("cpgeom-patch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| cpgeom::Error::io(&dir, e))?;
    let path = dir.join("effects.csv");
    let mut f = std::fs::File::create(&path).map_err(|e| cpgeom::Error::io(&path, e))?;
    let mut rows = String::from("layer,alpha,direction,delta_conf\n");
    for (a, randoms) in set.alpha_levels.iter().zip(&set.random_deltas) {
        rows += &format!("{},{a},category,{}\n", set.layer, 0.621 * a);
        for k in 0..randoms.len() {
            let effect = if k % 2 == 0 { 0.00886 } else { -0.00886 } * a;
            rows += &format!("{},{a},random_{k},{effect}\n", set.layer);
        }
    }
    f.write_all(rows.as_bytes()).map_err(|e| cpgeom::Error::io(&path, e))?;
    drop(f);

    for s in summarize_patch_effects(&read_patch_effects(&path)?)? {
        println!(
            "layer {}: category {:?}, specificity at α=1 {:.1}x, monotonic {}",
            s.layer,
            s.category_effect.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>(),
            s.specificity.unwrap_or(f64::NAN),
            s.monotonic
        );
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
