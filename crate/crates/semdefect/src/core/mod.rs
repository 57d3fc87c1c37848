//! Shared geometry, image, and annotation types plus the matching/IoU
//! primitives every other module consumes.
//!
//! Everything here is a pure function on immutable values; all of it is safe
//! to call from any number of concurrent workers.

mod annot;
mod bbox;
mod category;
mod image;
mod matching;
mod sample;

pub use annot::{read_annotations, write_annotations};
pub use bbox::{iou, BBox, Detection};
pub use category::{CategorySet, DefectCategory};
pub use image::GrayImage;
pub use matching::{greedy_match, rescale_boxes};
pub use sample::{Sample, SourceMeta};
