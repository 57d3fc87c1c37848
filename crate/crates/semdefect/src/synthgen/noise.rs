//! Detector noise applied after pattern rendering and defect injection.

use rand::Rng;
use rand_distr::{Distribution, Gamma, Normal};

use super::NoiseModel;
use crate::core::GrayImage;
use crate::error::Error;
use crate::Result;

/// Applies the configured noise model pixel-wise and clips back to `[0, 1]`.
///
/// Gaussian noise adds zero-mean samples, so `sigma = 0` is an exact identity.
/// Gamma noise models signal-independent shot-like speckle: a draw from
/// `Gamma(shape, scale)` recentred by its mean `shape * scale`, so the
/// expected image is unchanged.
pub fn apply_noise(img: &GrayImage, model: &NoiseModel, rng: &mut impl Rng) -> Result<GrayImage> {
    model.validate()?;
    match model {
        NoiseModel::Gaussian { sigma } => {
            if *sigma == 0.0 {
                return Ok(img.clone());
            }
            let dist = Normal::new(0.0f64, *sigma as f64)
                .map_err(|e| Error::Config(format!("gaussian noise: {e}")))?;
            let mut out = img.clone();
            for p in out.pixels_mut().iter_mut() {
                *p = (*p + dist.sample(rng) as f32).clamp(0.0, 1.0);
            }
            Ok(out)
        }
        NoiseModel::Gamma { shape, scale } => {
            let dist = Gamma::new(*shape as f64, *scale as f64)
                .map_err(|e| Error::Config(format!("gamma noise: {e}")))?;
            let mean = shape * scale;
            let mut out = img.clone();
            for p in out.pixels_mut().iter_mut() {
                *p = (*p + dist.sample(rng) as f32 - mean).clamp(0.0, 1.0);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn flat(level: f32) -> GrayImage {
        GrayImage::constant(64, 64, level).unwrap()
    }

    #[test]
    fn zero_sigma_gaussian_is_identity() {
        let img = flat(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = apply_noise(&img, &NoiseModel::Gaussian { sigma: 0.0 }, &mut rng).unwrap();
        assert_eq!(img.pixels(), out.pixels());
    }

    #[test]
    fn gaussian_noise_roughly_preserves_mean() {
        let img = flat(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let out = apply_noise(&img, &NoiseModel::Gaussian { sigma: 0.05 }, &mut rng).unwrap();
        assert!((out.mean() - 0.5).abs() < 0.01, "mean drifted to {}", out.mean());
        assert!(out.pixels().iter().any(|&p| p != 0.5), "no noise applied");
    }

    #[test]
    fn gamma_noise_is_mean_centred() {
        let img = flat(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let model = NoiseModel::Gamma { shape: 2.0, scale: 0.02 };
        let out = apply_noise(&img, &model, &mut rng).unwrap();
        assert!((out.mean() - 0.5).abs() < 0.01, "mean drifted to {}", out.mean());
        // Recentred gamma is skewed: some samples must fall below the mean.
        assert!(out.pixels().iter().any(|&p| p < 0.5));
        assert!(out.pixels().iter().any(|&p| p > 0.5));
    }

    #[test]
    fn output_stays_in_unit_range() {
        for level in [0.0, 1.0] {
            let img = flat(level);
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            let out =
                apply_noise(&img, &NoiseModel::Gaussian { sigma: 0.5 }, &mut rng).unwrap();
            assert!(out.pixels().iter().all(|&p| (0.0..=1.0).contains(&p)));
        }
    }

    #[test]
    fn same_seed_same_noise() {
        let img = flat(0.3);
        let model = NoiseModel::Gamma { shape: 2.0, scale: 0.02 };
        let a = apply_noise(&img, &model, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = apply_noise(&img, &model, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a.pixels(), b.pixels());
    }
}
