//! Single-channel raster, the universal pixel carrier.
//!
//! Pixels are `f32` intensities in `[0,1]` held row-major in an
//! `ndarray::Array2` indexed `[row, col]`. On disk images are 8-bit grayscale
//! PNG; the quantization convention is `round(p * 255)` out and `v / 255` in.

use std::path::Path;

use ndarray::Array2;

use crate::error::Error;
use crate::Result;

/// Minimum side length for a valid image.
pub const MIN_SIDE: usize = 8;

/// Grayscale image with intensities in `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    data: Array2<f32>,
}

impl GrayImage {
    /// Wraps a pixel array, validating the size and intensity invariants.
    pub fn new(data: Array2<f32>) -> Result<Self> {
        let (h, w) = data.dim();
        if h < MIN_SIDE || w < MIN_SIDE {
            return Err(Error::Data(format!(
                "image {h}x{w} smaller than minimum side {MIN_SIDE}"
            )));
        }
        if let Some(bad) = data.iter().find(|p| !p.is_finite() || **p < 0.0 || **p > 1.0) {
            return Err(Error::Data(format!("pixel intensity {bad} outside [0,1]")));
        }
        Ok(GrayImage { data })
    }

    /// Constant-intensity image.
    pub fn constant(height: usize, width: usize, value: f32) -> Result<Self> {
        GrayImage::new(Array2::from_elem((height, width), value))
    }

    /// Builds each pixel from `(row, col)`.
    pub fn from_fn(height: usize, width: usize, f: impl Fn(usize, usize) -> f32) -> Result<Self> {
        GrayImage::new(Array2::from_shape_fn((height, width), |(y, x)| f(y, x)))
    }

    pub fn height(&self) -> usize {
        self.data.nrows()
    }

    pub fn width(&self) -> usize {
        self.data.ncols()
    }

    /// Read-only pixel view, `[row, col]`.
    pub fn pixels(&self) -> &Array2<f32> {
        &self.data
    }

    /// Mutable pixel access for in-crate editing ops. Callers are responsible
    /// for re-establishing the `[0,1]` invariant (use [`GrayImage::clip`]).
    pub(crate) fn pixels_mut(&mut self) -> &mut Array2<f32> {
        &mut self.data
    }

    pub fn get(&self, y: usize, x: usize) -> f32 {
        self.data[[y, x]]
    }

    /// Clamps every pixel back into `[0,1]`.
    pub(crate) fn clip(&mut self) {
        self.data.mapv_inplace(|p| p.clamp(0.0, 1.0));
    }

    /// Mean intensity.
    pub fn mean(&self) -> f32 {
        self.data.mean().unwrap_or(0.0)
    }

    /// Quantizes to 8-bit, row-major.
    pub fn to_u8(&self) -> Vec<u8> {
        self.data
            .iter()
            .map(|p| (p * 255.0).round().clamp(0.0, 255.0) as u8)
            .collect()
    }

    /// Builds an image from 8-bit pixels.
    pub fn from_u8(height: usize, width: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != height * width {
            return Err(Error::Data(format!(
                "byte count {} does not match {height}x{width}",
                bytes.len()
            )));
        }
        let data = Array2::from_shape_vec(
            (height, width),
            bytes.iter().map(|&v| v as f32 / 255.0).collect(),
        )
        .expect("shape just checked");
        GrayImage::new(data)
    }

    /// Writes an 8-bit grayscale PNG.
    pub fn save_png(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let buf = self.to_u8();
        image::save_buffer(
            path,
            &buf,
            self.width() as u32,
            self.height() as u32,
            image::ColorType::L8,
        )
        .map_err(|e| Error::image(path, e))
    }

    /// Loads an 8-bit grayscale PNG (other color types are converted).
    pub fn load_png(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let img = image::open(path).map_err(|e| Error::image(path, e))?.into_luma8();
        GrayImage::from_u8(img.height() as usize, img.width() as usize, img.as_raw())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_and_out_of_range() {
        assert!(GrayImage::new(Array2::zeros((4, 4))).is_err());
        assert!(GrayImage::new(Array2::from_elem((8, 8), 1.5)).is_err());
        assert!(GrayImage::new(Array2::from_elem((8, 8), -0.1)).is_err());
        assert!(GrayImage::new(Array2::from_elem((8, 8), f32::NAN)).is_err());
        assert!(GrayImage::new(Array2::from_elem((8, 8), 0.5)).is_ok());
    }

    #[test]
    fn quantization_round_trips_8bit_values() {
        let img = GrayImage::from_fn(8, 8, |y, x| ((y * 8 + x) as f32) / 255.0).unwrap();
        let bytes = img.to_u8();
        let back = GrayImage::from_u8(8, 8, &bytes).unwrap();
        assert_eq!(img.pixels(), back.pixels());
    }

    #[test]
    fn png_round_trip_is_exact_for_8bit_data() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.png");
        let img = GrayImage::from_fn(16, 12, |y, x| ((y * 16 + x) % 256) as f32 / 255.0).unwrap();
        img.save_png(&path).unwrap();
        let back = GrayImage::load_png(&path).unwrap();
        assert_eq!(back.height(), 16);
        assert_eq!(back.width(), 12);
        assert_eq!(img.pixels(), back.pixels());
    }

    #[test]
    fn mean_of_known_image() {
        let img = GrayImage::from_fn(8, 8, |y, _| if y < 4 { 0.0 } else { 1.0 }).unwrap();
        assert!((img.mean() - 0.5).abs() < 1e-7);
    }
}
