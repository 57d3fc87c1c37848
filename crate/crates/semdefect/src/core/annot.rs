//! Plain-text annotation files.
//!
//! One line per box, `category_id cx cy w h`, space-separated, six fractional
//! digits. The format is the on-disk twin of [`BBox`] and round-trips within
//! text precision (5e-7 per field).

use std::fmt::Write as _;
use std::path::Path;

use super::bbox::BBox;
use crate::error::Error;
use crate::Result;

/// Serializes boxes to the annotation text format.
pub fn annotations_to_string(boxes: &[BBox]) -> String {
    let mut out = String::new();
    for b in boxes {
        writeln!(
            out,
            "{} {:.6} {:.6} {:.6} {:.6}",
            b.category, b.cx, b.cy, b.w, b.h
        )
        .expect("string write cannot fail");
    }
    out
}

/// Writes one annotation file (overwrites).
pub fn write_annotations(path: impl AsRef<Path>, boxes: &[BBox]) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, annotations_to_string(boxes)).map_err(|e| Error::io(path, e))
}

/// Parses annotation text; `num_categories` bounds the category ids.
pub fn annotations_from_str(text: &str, num_categories: u32) -> Result<Vec<BBox>> {
    let mut boxes = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::Data(format!(
                "annotation line {}: expected 5 fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse =
            |s: &str| -> Result<f32> {
                s.parse::<f32>().map_err(|_| {
                    Error::Data(format!("annotation line {}: bad number {s:?}", lineno + 1))
                })
            };
        let category: u32 = fields[0].parse().map_err(|_| {
            Error::Data(format!(
                "annotation line {}: bad category id {:?}",
                lineno + 1,
                fields[0]
            ))
        })?;
        if category >= num_categories {
            return Err(Error::Data(format!(
                "annotation line {}: category id {category} out of range (set has {num_categories})",
                lineno + 1
            )));
        }
        boxes.push(BBox::new(
            category,
            parse(fields[1])?,
            parse(fields[2])?,
            parse(fields[3])?,
            parse(fields[4])?,
        )?);
    }
    Ok(boxes)
}

/// Reads one annotation file.
pub fn read_annotations(path: impl AsRef<Path>, num_categories: u32) -> Result<Vec<BBox>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    annotations_from_str(&text, num_categories)
}
