//! Synthetic line/space inspection imagery with injected, labelled defects.
//!
//! The generator is the desk-scale stand-in for a proprietary fab dataset:
//! vertical lines at a configurable pitch and critical dimension (CD), edge
//! roughness as a bounded mean-reverting random walk, per-pixel Gaussian or
//! mean-centred Gamma sensor noise, and parametric pixel-edit defect
//! morphologies. Every output is a pure function of `(spec, seed)`; images
//! generated in parallel are bit-identical to a serial run because each image
//! owns a derived seed.

mod defects;
mod noise;
mod pattern;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::core::{write_annotations, BBox, CategorySet, Sample, SourceMeta};
use crate::error::Error;
use crate::manifest::{DatasetManifest, ManifestEntry, Split};
use crate::seeds::{domains, split_seed};
use crate::Result;

pub use defects::inject_defect;
pub use noise::apply_noise;
pub use pattern::{render_pattern, render_pattern_with_geometry, PatternGeometry};

/// Whether lines image brighter or darker than the spaces between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinePolarity {
    BrightLines,
    DarkLines,
}

/// Sensor noise model applied after defect injection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseModel {
    /// Zero-mean additive Gaussian noise; `sigma = 0` is the identity.
    Gaussian { sigma: f32 },
    /// Additive Gamma noise, mean-centred by subtracting `shape * scale`.
    Gamma { shape: f32, scale: f32 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::Gaussian { sigma } => {
                if !sigma.is_finite() || sigma < 0.0 {
                    return Err(Error::Config(format!("gaussian sigma must be >= 0, got {sigma}")));
                }
            }
            NoiseModel::Gamma { shape, scale } => {
                if !shape.is_finite() || shape <= 0.0 || !scale.is_finite() || scale <= 0.0 {
                    return Err(Error::Config(format!(
                        "gamma noise needs shape > 0 and scale > 0, got shape={shape} scale={scale}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Full description of one synthetic dataset flavor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthSpec {
    /// Square image side in pixels.
    pub resolution: u32,
    /// Line-to-line period in pixels.
    pub pitch_px: u32,
    /// Line width (critical dimension) in pixels.
    pub cd_px: u32,
    #[serde(default = "default_polarity")]
    pub line_polarity: LinePolarity,
    /// Stationary standard deviation of the line-edge random walk, pixels.
    pub edge_roughness_sigma: f32,
    pub noise_model: NoiseModel,
    /// Intensity of line pixels, in [0,1].
    pub base_line_level: f32,
    /// Intensity of space pixels, in [0,1].
    pub base_space_level: f32,
    /// Category vocabulary for injected defects.
    #[serde(default = "CategorySet::adi")]
    pub categories: CategorySet,
    /// Sampling weights per category name; normalized to sum 1.
    pub defect_mix: BTreeMap<String, f64>,
    /// Inclusive range of defect instances per image; (1,1) = single defect.
    #[serde(default = "default_defects_per_image")]
    pub defects_per_image: (u32, u32),
    /// Process tag recorded in sample provenance ("base", or a shifted
    /// condition name).
    #[serde(default = "default_process")]
    pub process: String,
    /// Master seed; per-image seeds are split from it.
    pub seed: u64,
}

fn default_polarity() -> LinePolarity {
    LinePolarity::BrightLines
}

fn default_defects_per_image() -> (u32, u32) {
    (1, 1)
}

fn default_process() -> String {
    "base".into()
}

impl SynthSpec {
    /// A ready-to-use bright-line spec at the given resolution, ADI category
    /// set, uniform defect mix — the configuration the examples and smoke
    /// tests build on.
    pub fn default_adi(resolution: u32, seed: u64) -> Self {
        let categories = CategorySet::adi();
        let defect_mix = categories
            .names()
            .iter()
            .map(|n| (n.clone(), 1.0))
            .collect();
        SynthSpec {
            resolution,
            pitch_px: 16,
            cd_px: 8,
            line_polarity: LinePolarity::BrightLines,
            edge_roughness_sigma: 0.6,
            noise_model: NoiseModel::Gamma {
                shape: 2.0,
                scale: 0.02,
            },
            base_line_level: 0.78,
            base_space_level: 0.22,
            categories,
            defect_mix,
            defects_per_image: (1, 1),
            process: "base".into(),
            seed,
        }
    }

    /// Checks every invariant; all generator entry points call this first.
    pub fn validate(&self) -> Result<()> {
        let r = self.resolution;
        if r < 32 {
            return Err(Error::Config(format!("resolution {r} too small (minimum 32)")));
        }
        if !(self.cd_px > 0 && self.cd_px < self.pitch_px && self.pitch_px < r / 4) {
            return Err(Error::Config(format!(
                "need 0 < cd ({}) < pitch ({}) < resolution/4 ({})",
                self.cd_px,
                self.pitch_px,
                r / 4
            )));
        }
        if !self.edge_roughness_sigma.is_finite()
            || self.edge_roughness_sigma < 0.0
            || self.edge_roughness_sigma >= self.cd_px as f32 / 2.0
        {
            return Err(Error::Config(format!(
                "edge_roughness_sigma {} must be in [0, cd/2)",
                self.edge_roughness_sigma
            )));
        }
        for (name, v) in [("base_line_level", self.base_line_level), ("base_space_level", self.base_space_level)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} {v} outside [0,1]")));
            }
        }
        match self.line_polarity {
            LinePolarity::BrightLines if self.base_line_level <= self.base_space_level => {
                return Err(Error::Config(
                    "bright_lines requires base_line_level > base_space_level".into(),
                ))
            }
            LinePolarity::DarkLines if self.base_line_level >= self.base_space_level => {
                return Err(Error::Config(
                    "dark_lines requires base_line_level < base_space_level".into(),
                ))
            }
            _ => {}
        }
        self.noise_model.validate()?;
        if self.defect_mix.is_empty() {
            return Err(Error::Config("defect_mix must not be empty".into()));
        }
        let mut total = 0.0;
        for (name, w) in &self.defect_mix {
            if self.categories.id_of(name).is_none() {
                return Err(Error::Config(format!(
                    "defect_mix category {name:?} not in the category set"
                )));
            }
            if !w.is_finite() || *w < 0.0 {
                return Err(Error::Config(format!("defect_mix weight for {name:?} must be >= 0")));
            }
            total += w;
        }
        if total <= 0.0 {
            return Err(Error::Config("defect_mix weights sum to zero".into()));
        }
        let (lo, hi) = self.defects_per_image;
        if lo < 1 || lo > hi {
            return Err(Error::Config(format!(
                "defects_per_image ({lo},{hi}) must satisfy 1 <= min <= max"
            )));
        }
        Ok(())
    }

    /// Draws a category id from the normalized defect mix.
    fn sample_category(&self, rng: &mut impl Rng) -> u32 {
        let total: f64 = self.defect_mix.values().sum();
        let mut u = rng.random::<f64>() * total;
        let mut last = 0;
        for (name, w) in &self.defect_mix {
            let id = self.categories.id_of(name).expect("validated");
            last = id;
            if u < *w {
                return id;
            }
            u -= w;
        }
        last
    }
}

/// Multiplicative shift of a base spec: a process condition the training set
/// never saw. `*_scale = 1.0` leaves the corresponding field untouched;
/// `contrast_scale` pulls both intensity levels toward their midpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessCondition {
    pub name: String,
    #[serde(default = "default_scale")]
    pub pitch_scale: f32,
    #[serde(default = "default_scale")]
    pub cd_scale: f32,
    #[serde(default = "default_scale")]
    pub contrast_scale: f32,
}

fn default_scale() -> f32 {
    1.0
}

impl ProcessCondition {
    /// Applies the shift, producing a validated spec tagged with the
    /// condition name.
    pub fn apply(&self, base: &SynthSpec) -> Result<SynthSpec> {
        let mut spec = base.clone();
        spec.pitch_px = ((base.pitch_px as f32 * self.pitch_scale).round() as u32).max(2);
        spec.cd_px = ((base.cd_px as f32 * self.cd_scale).round() as u32).max(1);
        let mid = (base.base_line_level + base.base_space_level) / 2.0;
        let half = (base.base_line_level - base.base_space_level) / 2.0;
        spec.base_line_level = (mid + half * self.contrast_scale).clamp(0.0, 1.0);
        spec.base_space_level = (mid - half * self.contrast_scale).clamp(0.0, 1.0);
        spec.process = self.name.clone();
        spec.validate()?;
        Ok(spec)
    }
}

/// Renders one complete sample: pattern, defects, then noise.
///
/// `image_seed` is the already-split per-image seed (see
/// [`crate::seeds::split_seed`]).
pub fn generate_sample(spec: &SynthSpec, image_seed: u64) -> Result<Sample> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(image_seed);
    let (mut img, geometry) = render_pattern_with_geometry(spec, &mut rng)?;
    let (lo, hi) = spec.defects_per_image;
    let n_defects = if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    };
    let mut boxes: Vec<BBox> = Vec::with_capacity(n_defects as usize);
    for _ in 0..n_defects {
        let id = spec.sample_category(&mut rng);
        let category = spec.categories.get(id).expect("mix keys validated");
        let (edited, bbox) = inject_defect(&img, &boxes, &category, &geometry, &mut rng)?;
        img = edited;
        boxes.push(bbox);
    }
    let img = apply_noise(&img, &spec.noise_model, &mut rng)?;
    Ok(Sample::new(
        img,
        boxes,
        SourceMeta {
            seed: image_seed,
            process: spec.process.clone(),
            resolution: spec.resolution,
            lineage: vec![],
        },
    ))
}

/// Generates `n_images` samples into `out_dir` and writes the manifest.
///
/// Layout: `out_dir/images/img_NNNNNN.png`, `out_dir/annotations/
/// img_NNNNNN.txt`, `out_dir/manifest.json`. Rerunning with the same spec
/// overwrites byte-identically.
pub fn generate_dataset(
    spec: &SynthSpec,
    n_images: usize,
    out_dir: impl AsRef<Path>,
    split: Split,
) -> Result<DatasetManifest> {
    spec.validate()?;
    let out_dir = out_dir.as_ref();
    let images_dir = out_dir.join("images");
    let ann_dir = out_dir.join("annotations");
    if n_images > 0 {
        std::fs::create_dir_all(&images_dir).map_err(|e| Error::io(&images_dir, e))?;
        std::fs::create_dir_all(&ann_dir).map_err(|e| Error::io(&ann_dir, e))?;
    } else {
        std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    }

    let entries: Vec<ManifestEntry> = (0..n_images)
        .into_par_iter()
        .map(|i| -> Result<ManifestEntry> {
            let image_seed = split_seed(spec.seed, domains::SYNTH + i as u64);
            let sample = generate_sample(spec, image_seed)?;
            let stem = format!("img_{i:06}");
            let image_rel = PathBuf::from("images").join(format!("{stem}.png"));
            let ann_rel = PathBuf::from("annotations").join(format!("{stem}.txt"));
            sample.image.save_png(out_dir.join(&image_rel))?;
            write_annotations(out_dir.join(&ann_rel), &sample.boxes)?;
            Ok(ManifestEntry {
                image: image_rel,
                annotation: ann_rel,
                meta: sample.meta,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut manifest = DatasetManifest::new(split, spec.categories.clone(), spec.resolution, spec.seed);
    manifest.generator = Some(serde_json::to_value(spec)?);
    manifest.entries = entries;
    manifest.save(out_dir)?;
    Ok(manifest)
}
