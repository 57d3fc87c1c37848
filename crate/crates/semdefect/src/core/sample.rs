//! Annotated image with provenance.

use serde::{Deserialize, Serialize};

use super::bbox::BBox;
use super::image::GrayImage;
use crate::Result;

/// Where a sample came from: the per-image seed, a process tag (base or a
/// shifted condition name), the render resolution, and the ordered list of
/// augmentation ops applied after generation (empty for originals).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct SourceMeta {
    pub seed: u64,
    pub process: String,
    pub resolution: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineage: Vec<String>,
}

/// An image plus its defect boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub image: GrayImage,
    pub boxes: Vec<BBox>,
    pub meta: SourceMeta,
}

impl Sample {
    pub fn new(image: GrayImage, boxes: Vec<BBox>, meta: SourceMeta) -> Self {
        Sample { image, boxes, meta }
    }

    /// Re-checks every stored box against the box invariants (sizes positive,
    /// extents inside the unit square). Image invariants are enforced by
    /// [`GrayImage`] construction.
    pub fn validate(&self) -> Result<()> {
        for b in &self.boxes {
            BBox::new(b.category, b.cx, b.cy, b.w, b.h)?;
        }
        Ok(())
    }

    /// Instance count per category id, as a dense vector of length
    /// `num_categories`.
    pub fn category_counts(&self, num_categories: usize) -> Vec<usize> {
        let mut counts = vec![0usize; num_categories];
        for b in &self.boxes {
            if let Some(c) = counts.get_mut(b.category as usize) {
                *c += 1;
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_counts_are_dense() {
        let img = GrayImage::constant(8, 8, 0.5).unwrap();
        let boxes = vec![
            BBox::new(0, 0.3, 0.3, 0.1, 0.1).unwrap(),
            BBox::new(2, 0.7, 0.7, 0.1, 0.1).unwrap(),
            BBox::new(2, 0.5, 0.5, 0.1, 0.1).unwrap(),
        ];
        let s = Sample::new(img, boxes, SourceMeta::default());
        assert_eq!(s.category_counts(5), vec![1, 0, 2, 0, 0]);
        s.validate().unwrap();
    }
}
