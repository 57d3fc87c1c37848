//! Desk-scale defect detection for line/space wafer imagery, with a
//! super-resolution auxiliary branch.
//!
//! The crate covers the full loop from raw data to scored detections:
//!
//! 1. [`synthgen`] renders synthetic line/space inspection images and injects
//!    labelled defects (micro-bridges, gaps, bridges, line collapses, probable
//!    gaps, and the post-etch equivalents).
//! 2. [`augment`] rebalances scarce defect classes with bounding-box-aware
//!    augmentation ops and an exact per-class budget planner.
//! 3. [`datasetprep`] builds high-/low-resolution training pairs by block-mean
//!    downscaling along a resolution chain (e.g. 1024 -> 512 -> 256 -> 128).
//! 4. [`model`] is a compact anchor-free detector whose backbone feeds both a
//!    detection head and a super-resolution decoder; the joint loss couples
//!    detection quality to sub-pixel reconstruction.
//! 5. [`trainer`] runs seed-deterministic training loops (baseline and
//!    SR-assisted with round-robin multi-scale interleaving).
//! 6. [`evaluator`] scores checkpoints with greedy-matched mAP@IoU0.5, NMS,
//!    zero-shot process-shift evaluation, upscale-then-detect comparisons, and
//!    an imaging-throughput report.
//!
//! The primary interface is the `examples/` directory (one runnable example
//! per capability — `cargo run --release --example generate_dataset`, etc.);
//! the `semdefect` binary wraps the same library calls behind subcommands for
//! scripted use.
//!
//! Images are 8-bit grayscale PNG on disk and `[0,1]` float rasters in
//! memory. Boxes are axis-aligned, center/size, normalized to `[0,1]`, so
//! annotations survive every resolution change untouched.

pub mod augment;
pub mod config;
pub mod core;
pub mod datasetprep;
pub mod error;
pub mod evaluator;
pub mod manifest;
pub mod model;
pub mod runner;
pub mod seeds;
pub mod synthgen;
pub mod trainer;

pub use crate::core::{
    greedy_match, iou, rescale_boxes, BBox, CategorySet, DefectCategory, Detection, GrayImage,
    Sample,
};
pub use crate::error::Error;
pub use crate::manifest::{DatasetManifest, ManifestEntry, Split};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
