// SPDX-License-Identifier: MIT OR Apache-2.0

//! The bundle file: build one by hand the way an extractor would, write
//! it, read it back, and show what validation rejects.
//!
//! Usage:
//!   cargo run --release --example bundle_io

use cpgeom::data::{read_bundle, write_bundle, BundleRole, HiddenStateBundle, StimulusSet, RSA_SENTENCES};
use cpgeom::geometry::compute_centroids;

fn main() -> cpgeom::Result<()> {
    let stimuli = StimulusSet::decade_10();
    let (layers, sentences, dim) = (2, 4, 8);
    let n = stimuli.len();
    // [layer][stimulus][sentence][dim], little-endian f32 on disk.
    let tensor: Vec<f32> = (0..layers * n * sentences * dim)
        .map(|i| ((i % 97) as f32 - 48.0) / 16.0)
        .collect();
    let bundle = HiddenStateBundle::new(
        "toy-model",
        stimuli,
        BundleRole::Rsa,
        layers,
        sentences,
        dim,
        RSA_SENTENCES.to_vec(),
        tensor,
    )?
    .with_token_position("last_number_token");

    let dir = std::env::temp_dir().join(format!("cpgeom-bundle-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| cpgeom::Error::io(&dir, e))?;
    let path = dir.join("toy.cpb");
    write_bundle(&bundle, &path)?;
    let back = read_bundle(&path)?;
    assert_eq!(back.tensor(), bundle.tensor());

    let header = serde_json::to_string_pretty(&back.header()).expect("header serializes");
    println!("{header}");
    let c = compute_centroids(&back, 1)?;
    println!("layer 1 centroid of stimulus 4: {:?}", &c.vectors()[0][..4]);

    // Truncated payload and NaN are both rejected.
    let mut bytes = std::fs::read(&path).map_err(|e| cpgeom::Error::io(&path, e))?;
    bytes.truncate(bytes.len() - 4);
    match HiddenStateBundle::from_bytes(&bytes) {
        Err(e) => println!("short payload: {}: {e}", e.name()),
        Ok(_) => unreachable!("truncated bundle accepted"),
    }
    let mut tensor = bundle.tensor().to_vec();
    tensor[3] = f32::NAN;
    let bad = HiddenStateBundle::new("toy-model", StimulusSet::decade_10(), BundleRole::Rsa, layers, sentences, dim, RSA_SENTENCES.to_vec(), tensor);
    if let Err(e) = bad {
        println!("NaN payload: {}: {e}", e.name());
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
