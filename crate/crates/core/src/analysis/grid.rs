use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{BlochError, Result};

/// Polar sampling of the disk: rings at `radii`, each with `angles_per_ring`
/// equally spaced points. A ring of radius zero is the single point 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiskGrid {
    pub radii: Vec<f64>,
    pub angles_per_ring: usize,
    pub refinement_rounds: usize,
}

impl DiskGrid {
    pub const DEFAULT_RINGS: usize = 20;
    pub const DEFAULT_ANGLES: usize = 512;
    pub const DEFAULT_REFINE: usize = 3;

    pub fn new(radii: Vec<f64>, angles_per_ring: usize, refinement_rounds: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(BlochError::InvalidInput("grid needs at least one radius".into()));
        }
        if angles_per_ring == 0 {
            return Err(BlochError::InvalidInput("angles_per_ring must be positive".into()));
        }
        if radii.iter().any(|r| !(0.0..1.0).contains(r)) {
            return Err(BlochError::InvalidInput("radii must lie in [0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BlochError::InvalidInput("radii must be strictly increasing".into()));
        }
        Ok(Self {
            radii,
            angles_per_ring,
            refinement_rounds,
        })
    }

    /// The origin plus rings at `1 - 2^{-k}` for `k = 1..=rings`.
    pub fn geometric(rings: usize, angles_per_ring: usize, refinement_rounds: usize) -> Result<Self> {
        if rings == 0 || rings > 50 {
            return Err(BlochError::InvalidInput("rings must be in 1..=50".into()));
        }
        let radii = std::iter::once(0.0)
            .chain((1..=rings).map(|k| 1.0 - 0.5f64.powi(k as i32)))
            .collect();
        Self::new(radii, angles_per_ring, refinement_rounds)
    }

    pub fn ring_len(&self, ring: usize) -> usize {
        if self.radii[ring] == 0.0 {
            1
        } else {
            self.angles_per_ring
        }
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.angles_per_ring as f64
    }

    pub fn point(&self, ring: usize, j: usize) -> Complex64 {
        Complex64::from_polar(self.radii[ring], self.angle(j))
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.radii.len()).flat_map(move |ring| (0..self.ring_len(ring)).map(move |j| self.point(ring, j)))
    }

    pub fn len(&self) -> usize {
        (0..self.radii.len()).map(|r| self.ring_len(r)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Same rings at a different angular resolution.
    pub fn with_angles(&self, angles_per_ring: usize) -> Self {
        Self {
            angles_per_ring,
            ..self.clone()
        }
    }
}

/// `n` deterministic points spread evenly over `|z| <= r_max` (golden-angle spiral).
pub fn sunflower_points(n: usize, r_max: f64) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| Complex64::from_polar(r_max * ((k as f64 + 0.5) / n as f64).sqrt(), golden * k as f64))
        .collect()
}

impl Default for DiskGrid {
    fn default() -> Self {
        Self::geometric(Self::DEFAULT_RINGS, Self::DEFAULT_ANGLES, Self::DEFAULT_REFINE)
            .expect("default grid parameters are valid")
    }
}
