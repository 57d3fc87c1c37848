//! Generates a small synthetic line/space dataset with injected defects.
//!
//! ```text
//! cargo run --example generate_dataset -- [OUT_DIR] [COUNT] [SEED]
//! ```
//!
//! Defaults: `OUT_DIR=target/demo/synth`, `COUNT=12`, `SEED=7`. Writes
//! `images/*.png`, `annotations/*.txt`, and `manifest.json` under `OUT_DIR`,
//! then prints the per-category defect totals.

use semdefect::synthgen::{generate_dataset, SynthSpec};
use semdefect::Split;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out: PathBuf = args
        .next()
        .unwrap_or_else(|| "target/demo/synth".into())
        .into();
    let count: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(12);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);

    let mut spec = SynthSpec::default_adi(256, seed);
    spec.defects_per_image = (1, 3);
    let manifest = generate_dataset(&spec, count, &out, Split::Train)?;

    println!(
        "wrote {} images at {}px to {}",
        manifest.entries.len(),
        manifest.resolution,
        out.display()
    );
    let totals = manifest.category_totals(&out)?;
    println!("defect totals by category:");
    for (name, count) in manifest.categories.names().iter().zip(&totals) {
        println!("  {name:>14}  {count}");
    }
    Ok(())
}
