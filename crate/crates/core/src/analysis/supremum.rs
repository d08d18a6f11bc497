//! Boundary-aware supremum search over the disk.
//!
//! A polar grid whose rings crowd toward the boundary is evaluated in full,
//! then the best few grid maxima are polished by coordinate-wise
//! golden-section search in radius and angle. The incumbent is never
//! discarded, so stage values only go up.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::DiskGrid;
use crate::error::{BlochError, Result};

/// Number of grid maxima that get local refinement.
pub const REFINED_CANDIDATES: usize = 5;

/// Relative gap between the last two stages below which a search counts as converged.
pub const CONVERGENCE_RTOL: f64 = 1e-6;

const GOLDEN_MAX_ITERS: usize = 90;
const GOLDEN_WIDTH_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupremumEstimate {
    pub value: f64,
    #[serde(with = "crate::wire::cpx")]
    pub witness: Complex64,
    #[serde(rename = "stages")]
    pub stage_values: Vec<f64>,
    pub converged: bool,
    /// Maximum of the integrand on each grid ring, innermost first.
    #[serde(skip)]
    pub ring_maxima: Vec<f64>,
}

impl SupremumEstimate {
    /// True when the ring maxima stop growing over the last `window` rings.
    pub fn rings_stabilized(&self, window: usize) -> bool {
        rings_stabilized(&self.ring_maxima, window)
    }
}

/// Growth of the last `window` ring maxima is within 1e-3 relative.
pub fn rings_stabilized(ring_maxima: &[f64], window: usize) -> bool {
    if window < 2 || ring_maxima.len() < window {
        return false;
    }
    let tail = &ring_maxima[ring_maxima.len() - window..];
    let start = tail[0];
    let peak = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    peak.is_finite() && peak - start <= 1e-3 * start.abs() + 1e-12
}

fn checked<F>(integrand: &F, z: Complex64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<f64> + Sync,
{
    let v = integrand(z)?;
    if !v.is_finite() {
        return Err(BlochError::NumericalOverflow(format!(
            "integrand is not finite ({v}) at z = {z}"
        )));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    r: f64,
    theta: f64,
    value: f64,
    r_lo: f64,
    r_hi: f64,
    dtheta: f64,
}

impl Candidate {
    fn point(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    fn refine<F>(&mut self, integrand: &F) -> Result<()>
    where
        F: Fn(Complex64) -> Result<f64> + Sync,
    {
        let theta = self.theta;
        let (r, v) = golden_max(
            |r| checked(integrand, Complex64::from_polar(r, theta)),
            self.r_lo,
            self.r_hi,
            self.r,
            self.value,
        )?;
        self.r = r;
        self.value = v;
        if r > 0.0 {
            let (t, v) = golden_max(
                |t| checked(integrand, Complex64::from_polar(r, t)),
                theta - self.dtheta,
                theta + self.dtheta,
                theta,
                self.value,
            )?;
            self.theta = t;
            self.value = v;
        }
        Ok(())
    }
}

/// Golden-section maximization on `[lo, hi]` that also remembers the
/// incumbent `(x0, v0)`; returns the best point seen.
fn golden_max<G>(g: G, mut lo: f64, mut hi: f64, x0: f64, v0: f64) -> Result<(f64, f64)>
where
    G: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut best = (x0, v0);
    let keep = |x: f64, v: f64, best: &mut (f64, f64)| {
        if v > best.1 {
            *best = (x, v);
        }
    };
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = g(c)?;
    let mut fd = g(d)?;
    keep(c, fc, &mut best);
    keep(d, fd, &mut best);
    for _ in 0..GOLDEN_MAX_ITERS {
        if hi - lo <= GOLDEN_WIDTH_TOL {
            break;
        }
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = g(c)?;
            keep(c, fc, &mut best);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = g(d)?;
            keep(d, fd, &mut best);
        }
    }
    Ok(best)
}

fn are_neighbors(grid: &DiskGrid, a: (usize, usize), b: (usize, usize)) -> bool {
    if a.0.abs_diff(b.0) > 1 {
        return false;
    }
    if grid.ring_len(a.0) == 1 || grid.ring_len(b.0) == 1 {
        return true;
    }
    let n = grid.angles_per_ring;
    let d = a.1.abs_diff(b.1);
    d.min(n - d) <= 1
}

/// Estimates `sup_{z in D} integrand(z)` on `grid`, then refines.
///
/// The integrand must be nonnegative and pure. Any non-finite value aborts
/// with `NumericalOverflow`.
pub fn sup_over_disk<F>(integrand: F, grid: &DiskGrid) -> Result<SupremumEstimate>
where
    F: Fn(Complex64) -> Result<f64> + Sync,
{
    let rings: Vec<Vec<f64>> = (0..grid.radii.len())
        .into_par_iter()
        .map(|ring| {
            (0..grid.ring_len(ring))
                .map(|j| checked(&integrand, grid.point(ring, j)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let ring_maxima: Vec<f64> = rings
        .iter()
        .map(|vals| vals.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .collect();

    let mut ranked: Vec<(usize, usize, f64)> = rings
        .iter()
        .enumerate()
        .flat_map(|(ring, vals)| vals.iter().enumerate().map(move |(j, &v)| (ring, j, v)))
        .collect();
    ranked.sort_by(|a, b| b.2.total_cmp(&a.2));

    let mut picked: Vec<(usize, usize, f64)> = Vec::with_capacity(REFINED_CANDIDATES);
    for &cand in &ranked {
        if picked.len() == REFINED_CANDIDATES {
            break;
        }
        if picked.iter().all(|p| !are_neighbors(grid, (p.0, p.1), (cand.0, cand.1))) {
            picked.push(cand);
        }
    }

    let (top_ring, top_j, top_value) = ranked[0];
    let mut value = top_value;
    let mut witness = grid.point(top_ring, top_j);
    let mut stage_values = vec![value];

    let dtheta = std::f64::consts::TAU / grid.angles_per_ring as f64;
    let mut candidates: Vec<Candidate> = picked
        .iter()
        .map(|&(ring, j, v)| {
            let r = grid.radii[ring];
            let r_lo = if ring > 0 { grid.radii[ring - 1] } else { 0.0 };
            let r_hi = grid.radii.get(ring + 1).copied().unwrap_or((r + 1.0) / 2.0);
            let theta = if grid.ring_len(ring) == 1 {
                // The origin: search outward along the best direction of the next ring.
                rings
                    .get(ring + 1)
                    .map(|vals| {
                        let jmax = vals
                            .iter()
                            .enumerate()
                            .max_by(|a, b| a.1.total_cmp(b.1))
                            .map_or(0, |(k, _)| k);
                        grid.angle(jmax)
                    })
                    .unwrap_or(0.0)
            } else {
                grid.angle(j)
            };
            Candidate {
                r,
                theta,
                value: v,
                r_lo,
                r_hi,
                dtheta,
            }
        })
        .collect();

    for _ in 0..grid.refinement_rounds {
        candidates
            .par_iter_mut()
            .map(|c| c.refine(&integrand))
            .collect::<Result<Vec<()>>>()?;
        if let Some(best) = candidates.iter().max_by(|a, b| a.value.total_cmp(&b.value)) {
            if best.value > value {
                value = best.value;
                witness = best.point();
            }
        }
        stage_values.push(value);
    }

    let converged = match stage_values.as_slice() {
        [.., prev, last] => last - prev < CONVERGENCE_RTOL * last.abs().max(f64::MIN_POSITIVE),
        _ => false,
    };

    Ok(SupremumEstimate {
        value,
        witness,
        stage_values,
        converged,
        ring_maxima,
    })
}
