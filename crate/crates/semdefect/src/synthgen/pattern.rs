//! Line/space pattern rendering.
//!
//! Lines are vertical. Each line's two edges follow independent bounded
//! mean-reverting random walks down the rows (an AR(1) process with
//! stationary standard deviation `edge_roughness_sigma`, hard-clamped so
//! lines never vanish). A per-image random phase shifts the whole pattern
//! horizontally.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{LinePolarity, SynthSpec};
use crate::core::GrayImage;
use crate::Result;

/// Mean-reversion factor of the edge walk; stationary std equals the
/// configured sigma.
const EDGE_AR1_RHO: f64 = 0.9;

/// Pattern placement facts the defect injector needs: where lines sit and
/// which intensities mean "line" and "space".
#[derive(Debug, Clone, PartialEq)]
pub struct PatternGeometry {
    pub resolution: u32,
    pub pitch: u32,
    pub cd: u32,
    /// Horizontal position of line 0's nominal left edge, in pixels.
    pub phase: f64,
    pub line_level: f32,
    pub space_level: f32,
    pub polarity: LinePolarity,
    /// Horizontal safety margin covering edge roughness: `ceil(3 sigma) + 1`.
    pub rough_margin: u32,
}

impl PatternGeometry {
    /// Nominal left edge of line `k`, pixels.
    pub fn line_left(&self, k: i64) -> f64 {
        self.phase + self.pitch as f64 * k as f64
    }

    /// Width of the space between two lines, pixels.
    pub fn space_width(&self) -> u32 {
        self.pitch - self.cd
    }

    /// Indices of lines lying at least `margin` px inside the image on both
    /// sides.
    pub fn interior_lines(&self, margin: u32) -> Vec<i64> {
        let w = self.resolution as f64;
        let mut ks = Vec::new();
        let mut k = -1i64;
        while self.line_left(k) < w {
            let left = self.line_left(k);
            let right = left + self.cd as f64;
            if left >= margin as f64 && right <= w - margin as f64 {
                ks.push(k);
            }
            k += 1;
        }
        ks
    }
}

/// Renders the noiseless pattern, also returning its geometry. The rng must
/// be the per-image stream; rendering consumes the phase draw and the edge
/// walks in a fixed order.
pub fn render_pattern_with_geometry(
    spec: &SynthSpec,
    rng: &mut impl Rng,
) -> Result<(GrayImage, PatternGeometry)> {
    spec.validate()?;
    let res = spec.resolution as usize;
    let pitch = spec.pitch_px as f64;
    let cd = spec.cd_px as f64;
    let sigma = spec.edge_roughness_sigma as f64;

    let phase: f64 = rng.random::<f64>() * pitch;
    let geometry = PatternGeometry {
        resolution: spec.resolution,
        pitch: spec.pitch_px,
        cd: spec.cd_px,
        phase,
        line_level: spec.base_line_level,
        space_level: spec.base_space_level,
        polarity: spec.line_polarity,
        rough_margin: (3.0 * sigma).ceil() as u32 + 1,
    };

    let mut data = ndarray::Array2::from_elem((res, res), spec.base_space_level);

    // Clamp bound keeps every line at least one pixel wide.
    let clamp = if sigma > 0.0 {
        (3.0 * sigma).min(cd / 2.0 - 0.5)
    } else {
        0.0
    };
    let step = Normal::new(0.0, sigma * (1.0 - EDGE_AR1_RHO * EDGE_AR1_RHO).sqrt())
        .expect("finite std");
    let init = Normal::new(0.0, sigma).expect("finite std");

    // Lines whose span could touch the canvas.
    let k_lo = ((0.0 - phase) / pitch).floor() as i64 - 1;
    let k_hi = ((res as f64 - phase) / pitch).ceil() as i64 + 1;
    for k in k_lo..=k_hi {
        let x0 = geometry.line_left(k);
        // Independent walks for the left and right edge of this line.
        let mut dl = 0.0f64;
        let mut dr = 0.0f64;
        if sigma > 0.0 {
            dl = init.sample(rng).clamp(-clamp, clamp);
            dr = init.sample(rng).clamp(-clamp, clamp);
        }
        for y in 0..res {
            if sigma > 0.0 && y > 0 {
                dl = (EDGE_AR1_RHO * dl + step.sample(rng)).clamp(-clamp, clamp);
                dr = (EDGE_AR1_RHO * dr + step.sample(rng)).clamp(-clamp, clamp);
            }
            let left = x0 + dl;
            let right = x0 + cd + dr;
            // Pixels whose center x+0.5 lies in [left, right).
            let x_start = (left - 0.5).ceil().max(0.0) as usize;
            let x_end = ((right - 0.5).ceil().max(0.0) as usize).min(res);
            for x in x_start..x_end {
                data[[y, x]] = spec.base_line_level;
            }
        }
    }

    Ok((GrayImage::new(data)?, geometry))
}

/// Renders the noiseless pattern for a spec, seeding the stream from
/// `spec.seed`.
pub fn render_pattern(spec: &SynthSpec) -> Result<GrayImage> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(spec.seed);
    render_pattern_with_geometry(spec, &mut rng).map(|(img, _)| img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthgen::NoiseModel;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn smooth_spec(seed: u64) -> SynthSpec {
        let mut spec = SynthSpec::default_adi(512, seed);
        spec.pitch_px = 32;
        spec.cd_px = 16;
        spec.edge_roughness_sigma = 0.0;
        spec.noise_model = NoiseModel::Gaussian { sigma: 0.0 };
        spec
    }

    #[test]
    fn zero_roughness_is_exactly_bimodal() {
        let spec = smooth_spec(1);
        let img = render_pattern(&spec).unwrap();
        for &p in img.pixels() {
            assert!(
                p == spec.base_line_level || p == spec.base_space_level,
                "unexpected intensity {p}"
            );
        }
    }

    #[test]
    fn same_seed_renders_bit_identical() {
        let mut spec = smooth_spec(2);
        spec.edge_roughness_sigma = 0.8;
        let a = render_pattern(&spec).unwrap();
        let b = render_pattern(&spec).unwrap();
        assert_eq!(a.pixels(), b.pixels());
    }

    #[test]
    fn period_count_and_line_fraction() {
        // pitch 32, cd 16, resolution 512: 16 periods, half the pixels line.
        let spec = smooth_spec(3);
        let img = render_pattern(&spec).unwrap();
        let mid = (spec.base_line_level + spec.base_space_level) / 2.0;
        let col_mean: Vec<f32> = (0..512)
            .map(|x| (0..512).map(|y| img.get(y, x)).sum::<f32>() / 512.0)
            .collect();
        // Count space->line transitions around the circular column profile.
        let mut periods = 0;
        for x in 0..512 {
            let prev = col_mean[(x + 511) % 512] > mid;
            let here = col_mean[x] > mid;
            if here && !prev {
                periods += 1;
            }
        }
        assert_eq!(periods, 16);
        let line_frac = img.pixels().iter().filter(|&&p| p > mid).count() as f64
            / (512.0 * 512.0);
        assert!((line_frac - 0.5).abs() < 1e-9, "line fraction {line_frac}");
    }

    #[test]
    fn line_fraction_tracks_duty_cycle_under_roughness() {
        let mut spec = smooth_spec(4);
        spec.cd_px = 8; // duty cycle 0.25
        spec.edge_roughness_sigma = 0.8;
        let img = render_pattern(&spec).unwrap();
        let mid = (spec.base_line_level + spec.base_space_level) / 2.0;
        let line_frac = img.pixels().iter().filter(|&&p| p > mid).count() as f64
            / (512.0 * 512.0);
        let tol = 2.0 * spec.edge_roughness_sigma as f64 / spec.pitch_px as f64;
        assert!(
            (line_frac - 0.25).abs() <= tol,
            "line fraction {line_frac} vs duty 0.25 (tol {tol})"
        );
    }

    #[test]
    fn dark_polarity_inverts_levels() {
        let mut spec = smooth_spec(5);
        spec.line_polarity = LinePolarity::DarkLines;
        spec.base_line_level = 0.2;
        spec.base_space_level = 0.8;
        let img = render_pattern(&spec).unwrap();
        // More space pixels than line pixels at duty cycle 0.5 is a wash, so
        // check the histogram has both levels present.
        let lines = img.pixels().iter().filter(|&&p| p == 0.2).count();
        let spaces = img.pixels().iter().filter(|&&p| p == 0.8).count();
        assert_eq!(lines + spaces, 512 * 512);
        assert!(lines > 0 && spaces > 0);
    }

    #[test]
    fn interior_lines_respect_margins() {
        let spec = smooth_spec(6);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (_, geom) = render_pattern_with_geometry(&spec, &mut rng).unwrap();
        for k in geom.interior_lines(8) {
            let left = geom.line_left(k);
            assert!(left >= 8.0);
            assert!(left + spec.cd_px as f64 <= 512.0 - 8.0);
        }
    }
}
