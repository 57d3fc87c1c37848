//! Parametric defect injection.
//!
//! Each morphology is a localized pixel edit tied to the pattern geometry:
//! bridges connect neighboring lines through a space, gaps break a line,
//! probable gaps thin one, line collapses displace a long stretch of a line
//! onto its neighbor, dark spots stamp a dark ellipse. Edits never touch a
//! pixel outside the returned bounding box, and placements retry until the
//! new box overlaps no existing box by more than IoU 0.1.

use rand::Rng;

use super::pattern::PatternGeometry;
use crate::core::{iou, BBox, DefectCategory, GrayImage};
use crate::error::Error;
use crate::Result;

/// Maximum placement attempts before giving up.
const RETRY_BUDGET: usize = 50;

/// Maximum IoU a new defect box may have with any existing box.
const MAX_OVERLAP: f32 = 0.1;

/// The rendering rule behind a category name. Category sets are free-form;
/// names map onto the five line/space morphologies (the after-etch names
/// alias their geometric equivalents).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Morphology {
    Bridge,
    MicroBridge,
    Gap,
    ProbableGap,
    LineCollapse,
    DarkSpot,
}

impl Morphology {
    fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "bridge" => Morphology::Bridge,
            "micro_bridge" => Morphology::MicroBridge,
            "gap" | "break" => Morphology::Gap,
            "probable_gap" => Morphology::ProbableGap,
            "line_collapse" | "pattern_collapse" => Morphology::LineCollapse,
            "dark_spot" => Morphology::DarkSpot,
            other => {
                return Err(Error::Config(format!(
                    "no defect morphology defined for category {other:?}"
                )))
            }
        })
    }
}

/// Integer pixel rectangle, `x1..x2` by `y1..y2`, half-open.
#[derive(Debug, Clone, Copy, PartialEq)]
struct PxRect {
    x1: u32,
    y1: u32,
    x2: u32,
    y2: u32,
}

impl PxRect {
    fn union(self, other: PxRect) -> PxRect {
        PxRect {
            x1: self.x1.min(other.x1),
            y1: self.y1.min(other.y1),
            x2: self.x2.max(other.x2),
            y2: self.y2.max(other.y2),
        }
    }

    fn to_bbox(self, category: u32, res: u32) -> Result<BBox> {
        let s = res as f32;
        BBox::from_corners(
            category,
            self.x1 as f32 / s,
            self.y1 as f32 / s,
            self.x2 as f32 / s,
            self.y2 as f32 / s,
        )
    }
}

fn fill_rect(img: &mut GrayImage, rect: PxRect, level: f32) {
    let data = img.pixels_mut();
    for y in rect.y1..rect.y2 {
        for x in rect.x1..rect.x2 {
            data[[y as usize, x as usize]] = level;
        }
    }
}

/// Injects one defect of the given category, returning the edited image and
/// the new normalized box. Fails after a bounded number of attempts when no
/// placement clears the overlap limit against `boxes_so_far`.
pub fn inject_defect(
    img: &GrayImage,
    boxes_so_far: &[BBox],
    category: &DefectCategory,
    geometry: &PatternGeometry,
    rng: &mut impl Rng,
) -> Result<(GrayImage, BBox)> {
    let morph = Morphology::from_name(&category.name)?;
    for _ in 0..RETRY_BUDGET {
        let Some(rects) = propose(morph, geometry, rng) else {
            continue;
        };
        let bounds = rects
            .iter()
            .map(|(r, _)| *r)
            .reduce(PxRect::union)
            .expect("at least one rect");
        let bbox = bounds.to_bbox(category.id, geometry.resolution)?;
        if boxes_so_far.iter().any(|b| iou(b, &bbox) > MAX_OVERLAP) {
            continue;
        }
        let mut out = img.clone();
        for (rect, fill) in rects {
            match fill {
                FillShape::Rect(level) => fill_rect(&mut out, rect, level),
                FillShape::Ellipse(level) => fill_ellipse(&mut out, rect, level),
            }
        }
        return Ok((out, bbox));
    }
    Err(Error::Data(format!(
        "no non-overlapping placement found for {:?} after {RETRY_BUDGET} attempts",
        category.name
    )))
}

/// How to paint one proposed rectangle.
#[derive(Debug, Clone, Copy)]
enum FillShape {
    Rect(f32),
    Ellipse(f32),
}

/// Picks y0 such that `[y0, y0 + h)` stays `edge` px inside an image of the
/// given height, or `None` when the band does not fit.
fn pick_y(rng: &mut impl Rng, height: u32, h: u32, edge: u32) -> Option<u32> {
    let max_y0 = height.checked_sub(h + edge)?;
    if max_y0 < edge {
        return None;
    }
    Some(rng.random_range(edge..=max_y0))
}

/// Proposes the pixel edits for one defect attempt: a list of (rect, fill)
/// pairs. Returns `None` when the random placement fell outside the image
/// (counts as a retry).
fn propose(
    morph: Morphology,
    g: &PatternGeometry,
    rng: &mut impl Rng,
) -> Option<Vec<(PxRect, FillShape)>> {
    let res = g.resolution;
    let cd = g.cd;
    let m = g.rough_margin;
    let space = g.space_width();

    // Lines with enough clearance for the widest edit this morphology makes.
    let side_margin = m + space + cd + 2;
    let lines = g.interior_lines(side_margin);
    if lines.is_empty() {
        return None;
    }
    let k = lines[rng.random_range(0..lines.len())];
    let x0 = g.line_left(k); // nominal left edge, f64 pixels
    let xl = x0.round() as i64; // integer left edge
    let clampi = |v: i64| -> u32 { v.clamp(0, res as i64) as u32 };

    let rects: Vec<(PxRect, FillShape)> = match morph {
        Morphology::Bridge => {
            // Full connector across the space right of line k.
            let h = rng.random_range(cd + 2..=2 * cd + 2);
            let y0 = pick_y(rng, res, h, 2)?;
            let rect = PxRect {
                x1: clampi(xl + cd as i64 - m as i64),
                x2: clampi(xl + g.pitch as i64 + m as i64),
                y1: y0,
                y2: y0 + h,
            };
            vec![(rect, FillShape::Rect(g.line_level))]
        }
        Morphology::MicroBridge => {
            // Thin stub out of line k's right edge, at most cd wide.
            let h = rng.random_range(1..=2u32.max(cd / 4));
            let w_lo = (cd / 2).max(3).min(cd);
            let width = rng.random_range(w_lo..=cd);
            let y0 = pick_y(rng, res, h, 2)?;
            let x1 = xl + cd as i64 - m as i64;
            let rect = PxRect {
                x1: clampi(x1),
                x2: clampi(x1 + width as i64),
                y1: y0,
                y2: y0 + h,
            };
            vec![(rect, FillShape::Rect(g.line_level))]
        }
        Morphology::Gap => {
            // Full break of line k.
            let h = rng.random_range(cd..=2 * cd);
            let y0 = pick_y(rng, res, h, 2)?;
            let rect = PxRect {
                x1: clampi(xl - m as i64),
                x2: clampi(xl + (cd + m) as i64),
                y1: y0,
                y2: y0 + h,
            };
            vec![(rect, FillShape::Rect(g.space_level))]
        }
        Morphology::ProbableGap => {
            // Partial thinning: intensity between line and space level.
            let h = rng.random_range((cd / 2).max(2)..=cd.max(3));
            let y0 = pick_y(rng, res, h, 2)?;
            let u = 0.35 + 0.25 * rng.random::<f32>();
            let level = g.space_level + u * (g.line_level - g.space_level);
            let rect = PxRect {
                x1: clampi(xl - m as i64),
                x2: clampi(xl + (cd + m) as i64),
                y1: y0,
                y2: y0 + h,
            };
            vec![(rect, FillShape::Rect(level))]
        }
        Morphology::LineCollapse => {
            // Long stretch of line k erased and re-drawn shifted onto a
            // neighbor.
            let h_min = 8 * cd;
            let h_max = (12 * cd).min(res.saturating_sub(4));
            if h_min > h_max {
                return None;
            }
            let h = rng.random_range(h_min..=h_max);
            let y0 = pick_y(rng, res, h, 2)?;
            let dir: i64 = if rng.random::<bool>() { 1 } else { -1 };
            let shift = rng.random_range((space * 6 / 10).max(1)..=space) as i64;
            let erase = PxRect {
                x1: clampi(xl - m as i64),
                x2: clampi(xl + (cd + m) as i64),
                y1: y0,
                y2: y0 + h,
            };
            let draw = PxRect {
                x1: clampi(xl + dir * shift),
                x2: clampi(xl + dir * shift + cd as i64),
                y1: y0,
                y2: y0 + h,
            };
            vec![
                (erase, FillShape::Rect(g.space_level)),
                (draw, FillShape::Rect(g.line_level)),
            ]
        }
        Morphology::DarkSpot => {
            // Dark ellipse centered on line k.
            let r_lo = (cd / 2).max(2);
            let rx = rng.random_range(r_lo..=cd.max(r_lo));
            let ry = rng.random_range(r_lo..=(3 * cd / 2).max(r_lo));
            let ycen = pick_y(rng, res, 2 * ry, 2)? + ry;
            let xcen = xl + cd as i64 / 2;
            let level = 0.5 * g.line_level.min(g.space_level);
            let rect = PxRect {
                x1: clampi(xcen - rx as i64),
                x2: clampi(xcen + rx as i64),
                y1: ycen - ry,
                y2: ycen + ry,
            };
            vec![(rect, FillShape::Ellipse(level))]
        }
    };
    Some(rects)
}

fn fill_ellipse(img: &mut GrayImage, rect: PxRect, level: f32) {
    let cx = (rect.x1 + rect.x2) as f32 / 2.0;
    let cy = (rect.y1 + rect.y2) as f32 / 2.0;
    let rx = (rect.x2 - rect.x1) as f32 / 2.0;
    let ry = (rect.y2 - rect.y1) as f32 / 2.0;
    let data = img.pixels_mut();
    for y in rect.y1..rect.y2 {
        for x in rect.x1..rect.x2 {
            let dx = (x as f32 + 0.5 - cx) / rx;
            let dy = (y as f32 + 0.5 - cy) / ry;
            if dx * dx + dy * dy <= 1.0 {
                data[[y as usize, x as usize]] = level;
            }
        }
    }
}
