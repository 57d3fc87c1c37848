//! Normalized bounding boxes and scored detections.
//!
//! Boxes use the center/size convention with all four values normalized to
//! `[0,1]`, which makes annotations resolution-invariant: the same box
//! describes the same defect at every stage of a downscaling chain.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Axis-aligned defect bounding box, normalized center/size.
///
/// `category` is the id of a [`super::DefectCategory`] in the active
/// [`super::CategorySet`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub category: u32,
    pub cx: f32,
    pub cy: f32,
    pub w: f32,
    pub h: f32,
}

impl BBox {
    /// Builds a box, validating positivity and that the extent stays inside
    /// the unit square (tolerance 1e-6 for round-tripped text).
    pub fn new(category: u32, cx: f32, cy: f32, w: f32, h: f32) -> Result<Self> {
        const TOL: f32 = 1e-6;
        let b = BBox { category, cx, cy, w, h };
        for v in [cx, cy, w, h] {
            if !v.is_finite() {
                return Err(Error::Data(format!("non-finite box field in {b:?}")));
            }
        }
        if w <= 0.0 || h <= 0.0 {
            return Err(Error::Data(format!("box must have positive size: {b:?}")));
        }
        if b.x1() < -TOL || b.x2() > 1.0 + TOL || b.y1() < -TOL || b.y2() > 1.0 + TOL {
            return Err(Error::Data(format!("box extent outside unit square: {b:?}")));
        }
        Ok(b)
    }

    /// Builds a box from corner coordinates, clipping them to the unit square
    /// first. Errors when the clipped box is empty.
    pub fn from_corners(category: u32, x1: f32, y1: f32, x2: f32, y2: f32) -> Result<Self> {
        let (x1, x2) = (x1.clamp(0.0, 1.0), x2.clamp(0.0, 1.0));
        let (y1, y2) = (y1.clamp(0.0, 1.0), y2.clamp(0.0, 1.0));
        if x2 <= x1 || y2 <= y1 {
            return Err(Error::Data(format!(
                "clipped box is empty: ({x1},{y1})-({x2},{y2})"
            )));
        }
        BBox::new(category, (x1 + x2) / 2.0, (y1 + y2) / 2.0, x2 - x1, y2 - y1)
    }

    pub fn x1(&self) -> f32 {
        self.cx - self.w / 2.0
    }

    pub fn x2(&self) -> f32 {
        self.cx + self.w / 2.0
    }

    pub fn y1(&self) -> f32 {
        self.cy - self.h / 2.0
    }

    pub fn y2(&self) -> f32 {
        self.cy + self.h / 2.0
    }

    /// Normalized area.
    pub fn area(&self) -> f32 {
        self.w * self.h
    }

    /// Pixel-space corners `(x1, y1, x2, y2)` when rendered at `width_px` x
    /// `height_px`.
    pub fn to_pixel_rect(&self, height_px: u32, width_px: u32) -> (f32, f32, f32, f32) {
        (
            self.x1() * width_px as f32,
            self.y1() * height_px as f32,
            self.x2() * width_px as f32,
            self.y2() * height_px as f32,
        )
    }
}

/// A box with a confidence score, as produced by the detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    #[serde(rename = "box")]
    pub bbox: BBox,
    pub confidence: f32,
}

impl Detection {
    pub fn new(bbox: BBox, confidence: f32) -> Result<Self> {
        if !(0.0..=1.0).contains(&confidence) || !confidence.is_finite() {
            return Err(Error::Data(format!(
                "confidence {confidence} outside [0,1]"
            )));
        }
        Ok(Detection { bbox, confidence })
    }
}

/// Intersection-over-union of two axis-aligned boxes. Symmetric, in `[0,1]`,
/// 0 for disjoint boxes, and category-blind (callers filter by category).
pub fn iou(a: &BBox, b: &BBox) -> f32 {
    let iw = (a.x2().min(b.x2()) - a.x1().max(b.x1())).max(0.0);
    let ih = (a.y2().min(b.y2()) - a.y1().max(b.y1())).max(0.0);
    let inter = iw * ih;
    if inter <= 0.0 {
        return 0.0;
    }
    let union = a.area() + b.area() - inter;
    inter / union
}
