//! Bloch seminorm and norm, sup norm, and the pointwise inequalities built on them.

use num_complex::Complex64;
use serde::Serialize;

use super::{sup_over_disk, DiskGrid, SupremumEstimate};
use crate::error::{BlochError, Result};
use crate::function::{AnalyticFn, ComplexPoint};

/// `|phi(z)|` at or above this is treated as having reached the boundary.
pub const BOUNDARY_GUARD: f64 = 1.0 - 1e-12;

fn origin() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `(1 - |z|^2) |f'(z)|`
pub fn seminorm_integrand(f: &AnalyticFn, z: ComplexPoint) -> Result<f64> {
    Ok((1.0 - z.norm_sqr()) * f.eval_with_derivative(z)?.derivative.norm())
}

/// `beta_f = sup (1 - |z|^2) |f'(z)|`
pub fn bloch_seminorm(f: &AnalyticFn, grid: &DiskGrid) -> Result<SupremumEstimate> {
    sup_over_disk(|z| seminorm_integrand(f, z), grid)
}

/// `|f(0)| + beta_f`
pub fn bloch_norm(f: &AnalyticFn, grid: &DiskGrid) -> Result<f64> {
    Ok(f.eval(origin())?.norm() + bloch_seminorm(f, grid)?.value)
}

pub fn sup_norm(f: &AnalyticFn, grid: &DiskGrid) -> Result<SupremumEstimate> {
    sup_over_disk(|z| Ok(f.eval(z)?.norm()), grid)
}

/// `‖f‖_∞`, exact when the tree determines it (inner functions, constants
/// and their scalings), otherwise the grid estimate.
pub fn sup_norm_value(f: &AnalyticFn, grid: &DiskGrid) -> Result<f64> {
    match f.exact_sup_norm() {
        Some(v) => Ok(v),
        None => Ok(sup_norm(f, grid)?.value),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LittleBlochReport {
    /// Ring maxima of the seminorm integrand at `r = 1 - 2^{-k}`, `k = 4..=20`.
    pub tail_values: Vec<f64>,
    pub trending_to_zero: bool,
}

/// Evidence for `(1 - |z|^2)|f'(z)| -> 0` as `|z| -> 1`.
///
/// Trending means the ring maxima are non-increasing over the last five
/// rings and the last one is below 5% of the first.
pub fn little_bloch_check(f: &AnalyticFn) -> Result<LittleBlochReport> {
    let angles = DiskGrid::DEFAULT_ANGLES;
    let tail_values = (4..=20)
        .map(|k| {
            let r = 1.0 - 0.5f64.powi(k);
            (0..angles).try_fold(0.0f64, |m, j| {
                let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / angles as f64);
                Ok(m.max(seminorm_integrand(f, z)?))
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    let first = tail_values[0];
    let last = *tail_values.last().expect("nonempty tail");
    let vanishing = tail_values.iter().all(|v| *v <= 1e-12);
    let decreasing = tail_values[tail_values.len() - 5..].windows(2).all(|w| w[1] <= w[0]);
    Ok(LittleBlochReport {
        trending_to_zero: vanishing || (decreasing && last < 0.05 * first),
        tail_values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    /// Largest `lhs - rhs` over the sample; `<= 0` means the inequality held everywhere.
    pub max_violation: f64,
    #[serde(with = "crate::wire::cpx")]
    pub witness: ComplexPoint,
}

fn max_violation<I>(zs: &[ComplexPoint], mut violation: I) -> Result<ViolationReport>
where
    I: FnMut(ComplexPoint) -> Result<f64>,
{
    if zs.is_empty() {
        return Err(BlochError::Precondition("need at least one sample point".into()));
    }
    let mut report = ViolationReport {
        max_violation: f64::NEG_INFINITY,
        witness: zs[0],
    };
    for &z in zs {
        let v = violation(z)?;
        if v > report.max_violation {
            report.max_violation = v;
            report.witness = z;
        }
    }
    Ok(report)
}

/// `|f(z)| <= |f(0)| + 1/2 beta_f log((1+|z|)/(1-|z|))` at each sample point.
pub fn growth_bound_check(f: &AnalyticFn, zs: &[ComplexPoint], grid: &DiskGrid) -> Result<ViolationReport> {
    let beta = bloch_seminorm(f, grid)?.value;
    let at_origin = f.eval(origin())?.norm();
    max_violation(zs, |z| {
        let bound = at_origin + beta * z.norm().atanh();
        Ok(f.eval(z)?.norm() - bound)
    })
}

/// Scaled Schwarz–Pick: `(1-|z|^2)|psi'(z)|/M <= 1 - |psi(z)|^2/M^2` with `M = ‖psi‖_∞`.
pub fn schwarz_pick_check(psi: &AnalyticFn, zs: &[ComplexPoint], grid: &DiskGrid) -> Result<ViolationReport> {
    let m = sup_norm_value(psi, grid)?;
    if !(m > 0.0) {
        return Err(BlochError::Precondition(format!("sup norm must be positive, got {m}")));
    }
    max_violation(zs, |z| {
        let p = psi.eval_with_derivative(z)?;
        let lhs = (1.0 - z.norm_sqr()) * p.derivative.norm() / m;
        let rhs = 1.0 - p.value.norm_sqr() / (m * m);
        Ok(lhs - rhs)
    })
}

fn guarded_modulus(phi_value: ComplexPoint, z: ComplexPoint) -> Result<f64> {
    let m = phi_value.norm();
    if !(m < BOUNDARY_GUARD) {
        return Err(BlochError::NumericalOverflow(format!(
            "|phi(z)| = {m} reached the boundary guard at z = {z}"
        )));
    }
    Ok(m)
}

/// `sup (1-|z|^2)/(1-|phi(z)|^2) |psi(z)| |phi'(z)|`; with `psi = 1` this is `tau_phi`.
pub fn tau_infty(psi: &AnalyticFn, phi: &AnalyticFn, grid: &DiskGrid) -> Result<SupremumEstimate> {
    sup_over_disk(
        |z| {
            let p = phi.eval_with_derivative(z)?;
            guarded_modulus(p.value, z)?;
            let ratio = (1.0 - z.norm_sqr()) / (1.0 - p.value.norm_sqr());
            Ok(ratio * psi.eval(z)?.norm() * p.derivative.norm())
        },
        grid,
    )
}

/// `sup 1/2 (1-|z|^2) |psi'(z)| log((1+|phi(z)|)/(1-|phi(z)|))`; with
/// `phi = id` this is `sigma_psi`.
pub fn sigma_infty(psi: &AnalyticFn, phi: &AnalyticFn, grid: &DiskGrid) -> Result<SupremumEstimate> {
    sup_over_disk(
        |z| {
            let m = guarded_modulus(phi.eval(z)?, z)?;
            let dpsi = psi.eval_with_derivative(z)?.derivative;
            Ok((1.0 - z.norm_sqr()) * dpsi.norm() * m.atanh())
        },
        grid,
    )
}
