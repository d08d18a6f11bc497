//! The built-in verification catalogue run by `blochkit verify-suite`.
//!
//! Each check is a closed-form or property statement evaluated on a fixed
//! catalogue plus seeded random draws, so a given seed always gives the same
//! table.

use std::f64::consts::{FRAC_PI_3, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    bloch_norm, bloch_seminorm, growth_bound_check, schwarz_pick_check, sigma_infty, DiskGrid,
};
use crate::error::Result;
use crate::function::{AnalyticFn, ComplexPoint};
use crate::isometry::{mult_isometry_check, power_norm_bound, power_norm_check};
use crate::operators::{
    composition_bounds, empirical_norm_lower, mult_bounds, wco_bounds, OperatorSpec, TestFamily,
};
use crate::spectra::{
    eigenfunction_check, mult_spectrum, mult_spectrum_membership, resolvent_det_formula, resolvent_matrix,
    rotation_comp_spectrum, rotation_resolvent_solve, weighted_iso_spectrum, IsometricSymbol, RotationSpec,
    SpectrumResult, MEMBERSHIP_MARGIN,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn run_check(name: &str, body: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Uniform point of `|z| < r_max`.
pub fn random_disk_point(rng: &mut ChaCha8Rng, r_max: f64) -> ComplexPoint {
    Complex64::from_polar(r_max * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

/// Blaschke product with a zero at the origin and 1 to 3 further zeros of modulus at most 0.9.
pub fn random_origin_blaschke(rng: &mut ChaCha8Rng) -> Result<AnalyticFn> {
    let extra = rng.gen_range(1..=3);
    let zeros = std::iter::once(c(0.0, 0.0))
        .chain((0..extra).map(|_| random_disk_point(rng, 0.9)))
        .collect();
    AnalyticFn::blaschke(zeros, unit(rng.gen_range(0.0..TAU)))
}

/// Runs every check with the given grid and seed.
pub fn run(grid: &DiskGrid, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        run_check("logtest_norm", || logtest_norm(grid)),
        run_check("automorphism_norm", || automorphism_norm(grid)),
        run_check("power_bound", || power_bound(grid, &mut rng)),
        run_check("norm_sandwich", || norm_sandwich(grid)),
        run_check("degeneracy_consistency", || degeneracy(grid)),
        run_check("isometry_characterization", || isometry_characterization(grid)),
        run_check("rotation_spectra", || rotation_spectra(grid, &mut rng)),
        run_check("multiplication_spectra", || multiplication_spectra(grid)),
        run_check("weighted_spectra", || weighted_spectra(grid, &mut rng)),
        run_check("inequality_suites", || inequality_suites(grid, &mut rng)),
    ]
}

fn logtest_norm(grid: &DiskGrid) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for theta in [0.0, FRAC_PI_3, 2.1] {
        worst = worst.max((bloch_norm(&AnalyticFn::log_test(theta)?, grid)? - 1.0).abs());
    }
    Ok((worst <= 1e-3, format!("max |norm - 1| = {worst:.3e}")))
}

fn automorphism_norm(grid: &DiskGrid) -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst = 0.0f64;
    for a in [c(0.3, 0.0), c(0.5, 0.2), c(0.0, 0.85)] {
        let psi = AnalyticFn::automorphism(unit(0.7), a)?;
        let err = (bloch_norm(&psi, grid)? - (1.0 + a.norm())).abs();
        worst = worst.max(err);
        let sigma = sigma_infty(&psi, &AnalyticFn::identity(), grid)?.value;
        ok &= err <= 1e-3 && sigma >= a.norm().atanh() - 1e-6 && a.norm().atanh() > a.norm();
    }
    Ok((ok, format!("max |norm - (1+|a|)| = {worst:.3e}")))
}

fn power_bound(grid: &DiskGrid, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let below_one = (2..=64).map(power_norm_bound).collect::<Result<Vec<_>>>()?.iter().all(|b| *b < 1.0);
    let id = power_norm_check(&AnalyticFn::identity(), 10, grid)?;
    let eq_err = id.per_n.iter().map(|e| (e.beta - e.bound).abs()).fold(0.0, f64::max);
    let symbols = (0..10).map(|_| random_origin_blaschke(rng)).collect::<Result<Vec<_>>>()?;
    let within = symbols
        .par_iter()
        .map(|psi| Ok(power_norm_check(psi, 6, grid)?.all_within))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok((
        below_one && eq_err <= 1e-6 && within,
        format!("b(n) < 1: {below_one}; max |beta(z^n) - b(n)| = {eq_err:.3e}; random products within: {within}"),
    ))
}

/// `(psi, phi)` pairs covering constants, automorphisms, Blaschke products,
/// rotations and contractions.
pub fn sandwich_catalogue() -> Result<Vec<(AnalyticFn, AnalyticFn)>> {
    let id = AnalyticFn::identity();
    let one = AnalyticFn::constant(1.0)?;
    let half_id = AnalyticFn::scale(c(0.5, 0.0), &id);
    let contraction = AnalyticFn::polynomial(vec![c(0.2, 0.1), c(0.5, 0.0)])?;
    Ok(vec![
        (one.clone(), id.clone()),
        (AnalyticFn::constant(unit(1.3))?, id.clone()),
        (one.clone(), half_id.clone()),
        (one.clone(), AnalyticFn::automorphism(c(1.0, 0.0), c(0.3, 0.0))?),
        (one.clone(), AnalyticFn::rotation(unit(2.0))?),
        (id.clone(), id.clone()),
        (AnalyticFn::automorphism(unit(0.4), c(0.5, 0.0))?, id.clone()),
        (AnalyticFn::blaschke(vec![c(0.0, 0.0), c(0.5, 0.0)], c(1.0, 0.0))?, half_id.clone()),
        (AnalyticFn::constant(0.5)?, AnalyticFn::automorphism(c(1.0, 0.0), c(0.0, 0.6))?),
        (AnalyticFn::polynomial(vec![c(0.2, 0.0), c(0.3, 0.0)])?, AnalyticFn::rotation(unit(-0.9))?),
        (AnalyticFn::monomial(2)?, contraction),
        (
            AnalyticFn::blaschke(vec![c(0.3, 0.0), c(0.0, -0.4)], c(1.0, 0.0))?,
            AnalyticFn::automorphism(c(-1.0, 0.0), c(0.2, 0.1))?,
        ),
        (AnalyticFn::constant(2.0)?, AnalyticFn::constant(0.9)?),
    ])
}

fn norm_sandwich(grid: &DiskGrid) -> Result<(bool, String)> {
    let cat = sandwich_catalogue()?;
    let rows = cat
        .par_iter()
        .map(|(psi, phi)| {
            let b = wco_bounds(psi, phi, grid)?;
            let op = OperatorSpec::weighted(psi.clone(), phi.clone(), grid)?;
            let best = empirical_norm_lower(&op, &TestFamily::default_for(phi, grid)?, grid)?.best;
            Ok(b.lower <= best + 1e-6 && best <= b.upper + 1e-6)
        })
        .collect::<Result<Vec<bool>>>()?;
    let failures = rows.iter().filter(|ok| !**ok).count();
    Ok((failures == 0, format!("{} pairs, {failures} violations", rows.len())))
}

fn degeneracy(grid: &DiskGrid) -> Result<(bool, String)> {
    let one = AnalyticFn::constant(1.0)?;
    let id = AnalyticFn::identity();
    let mut worst = 0.0f64;
    for phi in [
        AnalyticFn::scale(c(0.5, 0.0), &id),
        AnalyticFn::automorphism(c(1.0, 0.0), c(0.3, 0.4))?,
        AnalyticFn::polynomial(vec![c(0.1, 0.0), c(0.0, 0.6)])?,
    ] {
        let w = wco_bounds(&one, &phi, grid)?;
        let r = composition_bounds(&phi, grid)?;
        worst = worst.max((w.lower - r.lower).abs()).max((w.upper - r.upper).abs());
    }
    for psi in [
        AnalyticFn::automorphism(c(1.0, 0.0), c(0.5, 0.0))?,
        AnalyticFn::monomial(2)?,
        AnalyticFn::polynomial(vec![c(0.3, 0.0), c(0.2, 0.2)])?,
    ] {
        let w = wco_bounds(&psi, &id, grid)?;
        let m = mult_bounds(&psi, grid)?;
        worst = worst
            .max((w.upper - m.upper).abs())
            .max((w.lower.max(w.components.tau) - m.lower).abs());
    }
    Ok((worst <= 1e-12, format!("max deviation = {worst:.3e}")))
}

/// Thirty multiplication symbols; exactly the first eight are unimodular constants.
pub fn isometry_catalogue() -> Result<Vec<AnalyticFn>> {
    let id = AnalyticFn::identity();
    let i = AnalyticFn::constant(c(0.0, 1.0))?;
    let mut out = vec![
        AnalyticFn::constant(1.0)?,
        AnalyticFn::constant(-1.0)?,
        AnalyticFn::constant(unit(std::f64::consts::PI / 7.0))?,
        AnalyticFn::constant(unit(2.5))?,
        AnalyticFn::multiply(&i, &AnalyticFn::constant(c(0.0, -1.0))?),
        AnalyticFn::scale(unit(0.3), &AnalyticFn::constant(unit(-1.1))?),
        AnalyticFn::add(&AnalyticFn::add(&id, &i), &AnalyticFn::scale(c(-1.0, 0.0), &id)),
        AnalyticFn::blaschke(vec![], unit(4.0))?,
    ];
    out.extend([
        AnalyticFn::constant(0.5)?,
        AnalyticFn::constant(2.0)?,
        AnalyticFn::constant(0.0)?,
        AnalyticFn::constant(c(0.6, 0.6))?,
        AnalyticFn::scale(c(0.5, 0.0), &AnalyticFn::constant(unit(1.0))?),
        id.clone(),
        AnalyticFn::monomial(2)?,
        AnalyticFn::monomial(3)?,
        AnalyticFn::rotation(unit(0.8))?,
        AnalyticFn::automorphism(c(1.0, 0.0), c(0.5, 0.0))?,
        AnalyticFn::automorphism(unit(1.0), c(0.2, -0.3))?,
        AnalyticFn::blaschke(vec![c(0.0, 0.0), c(0.5, 0.0)], c(1.0, 0.0))?,
        AnalyticFn::blaschke(vec![c(0.3, 0.3), c(-0.4, 0.1)], unit(2.0))?,
        AnalyticFn::polynomial(vec![c(1.0, 0.0), c(0.2, 0.0)])?,
        AnalyticFn::polynomial(vec![c(0.0, 0.0), c(0.5, 0.0), c(0.25, 0.0)])?,
        AnalyticFn::log_test(0.0)?,
        AnalyticFn::add(&AnalyticFn::constant(1.0)?, &AnalyticFn::scale(c(0.1, 0.0), &id)),
        AnalyticFn::scale(c(0.5, 0.0), &AnalyticFn::automorphism(c(1.0, 0.0), c(0.0, 0.7))?),
        AnalyticFn::multiply(&id, &AnalyticFn::automorphism(c(1.0, 0.0), c(0.6, 0.0))?),
        AnalyticFn::compose(&AnalyticFn::monomial(2)?, &AnalyticFn::automorphism(c(1.0, 0.0), c(0.3, 0.0))?),
        AnalyticFn::constant(unit(0.2) * (1.0 + 1e-9))?,
        AnalyticFn::add(&AnalyticFn::constant(unit(0.9))?, &AnalyticFn::scale(c(1e-3, 0.0), &id)),
    ]);
    Ok(out)
}

fn isometry_characterization(grid: &DiskGrid) -> Result<(bool, String)> {
    let cat = isometry_catalogue()?;
    let verdicts = cat
        .par_iter()
        .map(|psi| mult_isometry_check(psi, grid))
        .collect::<Result<Vec<_>>>()?;
    let accepted: Vec<usize> = (0..cat.len()).filter(|&k| verdicts[k].is_isometry).collect();
    let exact = accepted == (0..8).collect::<Vec<_>>();
    let drift_ok = accepted
        .iter()
        .all(|&k| verdicts[k].evidence.get("family_drift").is_some_and(|d| *d <= 1e-6));
    let square_evidence = [13usize, 14]
        .iter()
        .all(|&k| verdicts[k].evidence.get("norm_psi_squared").is_some_and(|v| *v < 1.0));
    Ok((
        exact && drift_ok && square_evidence,
        format!(
            "{} symbols, accepted {:?}; drift ok: {drift_ok}; ‖psi^2‖_B < 1 for z, z^2: {square_evidence}",
            cat.len(),
            accepted
        ),
    ))
}

fn rotation_spectra(grid: &DiskGrid, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let fifth = RotationSpec::rational(1, 5)?;
    let SpectrumResult::FiniteSet { points } = rotation_comp_spectrum(&fifth) else {
        return Ok((false, "fifth roots did not give a finite set".into()));
    };
    let mut eig = 0.0f64;
    for (k, p) in points.iter().enumerate() {
        let e = eigenfunction_check(&fifth, k as u32 + 1, grid)?;
        eig = eig.max(e.residual).max((e.eigenvalue - p).norm());
    }

    let mut det_err = 0.0f64;
    for n in 2..=12usize {
        for _ in 0..20 {
            let mu = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let m = resolvent_matrix(n, mu)?;
            let f = resolvent_det_formula(n, mu);
            det_err = det_err.max((m.det - f).norm() / f.norm());
        }
    }

    let gs = [
        AnalyticFn::constant(1.0)?,
        AnalyticFn::identity(),
        AnalyticFn::monomial(2)?,
        AnalyticFn::log_test(0.0)?,
    ];
    let mut jobs = Vec::new();
    for n in 1..=8u64 {
        let zeta = RotationSpec::rational(1, n as i64 as u64)?;
        for _ in 0..5 {
            let mu = loop {
                let mu = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                if (mu.powu(n as u32) - 1.0).norm() > 0.1 {
                    break mu;
                }
            };
            for g in &gs {
                jobs.push((zeta, mu, g.clone()));
            }
        }
    }
    let res = jobs
        .par_iter()
        .map(|(zeta, mu, g)| Ok(rotation_resolvent_solve(zeta, *mu, g)?.residual))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok((
        points.len() == 5 && eig < 1e-12 && det_err <= 1e-10 && res < 1e-8,
        format!("eigen residual {eig:.2e}; det rel err {det_err:.2e}; resolvent residual {res:.2e}"),
    ))
}

fn multiplication_spectra(grid: &DiskGrid) -> Result<(bool, String)> {
    let eta = unit(0.9);
    let diam = mult_spectrum(&AnalyticFn::constant(eta)?, grid)?.diameter().unwrap_or(f64::INFINITY);
    let out = mult_spectrum_membership(&AnalyticFn::identity(), c(2.0, 0.0), grid, MEMBERSHIP_MARGIN)?;
    let inside = mult_spectrum_membership(&AnalyticFn::identity(), c(0.5, 0.0), grid, MEMBERSHIP_MARGIN)?;
    let ok = diam < 1e-14
        && !out.in_spectrum
        && out.resolvent_verified
        && out.resolvent_residual.is_some_and(|r| r <= 1e-10)
        && inside.in_spectrum;
    Ok((
        ok,
        format!(
            "constant cloud diameter {diam:.1e}; lambda=2 out with residual {:?}; lambda=0.5 in: {}",
            out.resolvent_residual, inside.in_spectrum
        ),
    ))
}

fn weighted_spectra(grid: &DiskGrid, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut shape_ok = true;
    for _ in 0..5 {
        let eta = unit(rng.gen_range(0.0..TAU));
        for q in [1u64, 2, 3, 4, 6] {
            let zeta = RotationSpec::rational(1, q)?;
            let w = weighted_iso_spectrum(eta, &IsometricSymbol::Rotation(zeta), grid)?;
            match (w, rotation_comp_spectrum(&zeta)) {
                (SpectrumResult::FiniteSet { points: a }, SpectrumResult::FiniteSet { points: b }) if a.len() == b.len() => {
                    for (x, y) in a.iter().zip(&b) {
                        worst = worst.max((x - eta * y).norm());
                    }
                }
                _ => shape_ok = false,
            }
        }
    }
    Ok((shape_ok && worst <= 1e-12, format!("max pointwise deviation {worst:.2e}")))
}

/// Ten functions with a structurally exact sup norm.
pub fn inequality_catalogue() -> Result<Vec<AnalyticFn>> {
    let id = AnalyticFn::identity();
    Ok(vec![
        id.clone(),
        AnalyticFn::monomial(3)?,
        AnalyticFn::automorphism(c(1.0, 0.0), c(0.4, 0.2))?,
        AnalyticFn::automorphism(unit(2.0), c(-0.7, 0.1))?,
        AnalyticFn::blaschke(vec![c(0.0, 0.0), c(0.5, 0.5)], c(1.0, 0.0))?,
        AnalyticFn::blaschke(vec![c(0.2, -0.3), c(-0.6, 0.0), c(0.1, 0.8)], unit(0.5))?,
        AnalyticFn::scale(c(0.5, 0.0), &AnalyticFn::automorphism(c(1.0, 0.0), c(0.3, 0.0))?),
        AnalyticFn::constant(c(0.3, -0.2))?,
        AnalyticFn::scale(c(0.0, 0.7), &AnalyticFn::blaschke(vec![c(0.4, 0.0)], c(1.0, 0.0))?),
        AnalyticFn::multiply(&id, &AnalyticFn::automorphism(c(1.0, 0.0), c(0.0, 0.5))?),
    ])
}

/// One of every node kind, for derivative checks.
pub fn variant_catalogue() -> Result<Vec<(&'static str, AnalyticFn)>> {
    let id = AnalyticFn::identity();
    let aut = AnalyticFn::automorphism(unit(0.3), c(0.2, -0.4))?;
    let lt = AnalyticFn::log_test(0.7)?;
    Ok(vec![
        ("const", AnalyticFn::constant(c(0.3, 0.4))?),
        ("identity", id.clone()),
        ("monomial", AnalyticFn::monomial(5)?),
        ("polynomial", AnalyticFn::polynomial(vec![c(1.0, 0.0), c(-0.5, 0.2), c(0.0, 0.3), c(0.25, 0.0)])?),
        ("automorphism", aut.clone()),
        ("blaschke", AnalyticFn::blaschke(vec![c(0.5, 0.1), c(-0.3, 0.6), c(0.0, 0.0)], unit(1.2))?),
        ("logtest", lt.clone()),
        ("sum", AnalyticFn::add(&lt, &aut)),
        ("product", AnalyticFn::multiply(&lt, &AnalyticFn::monomial(2)?)),
        ("scale", AnalyticFn::scale(c(-1.5, 0.5), &lt)),
        ("compose", AnalyticFn::compose(&lt, &aut)),
        ("reciprocal_shift", AnalyticFn::reciprocal_shift_unchecked(&aut, c(1.5, 0.5))),
    ])
}

/// Largest `|f'(z) - D_h f(z)| / max(1, |f'(z)|)` over both finite-difference axes.
pub fn derivative_mismatch(f: &AnalyticFn, z: ComplexPoint, h: f64) -> Result<f64> {
    let d = f.eval_with_derivative(z)?.derivative;
    let dx = (f.eval(z + h)? - f.eval(z - h)?) / (2.0 * h);
    let dy = (f.eval(z + c(0.0, h))? - f.eval(z - c(0.0, h))?) / c(0.0, 2.0 * h);
    Ok((d - dx).norm().max((d - dy).norm()) / d.norm().max(1.0))
}

fn inequality_suites(grid: &DiskGrid, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let zs: Vec<ComplexPoint> = (0..10_000).map(|_| random_disk_point(rng, 1.0 - 1e-9)).collect();
    let fns = inequality_catalogue()?;
    let viol = fns
        .par_iter()
        .map(|f| {
            let sp = schwarz_pick_check(f, &zs, grid)?.max_violation;
            let gb = growth_bound_check(f, &zs, grid)?.max_violation;
            Ok(sp.max(gb))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let fd_points: Vec<ComplexPoint> = (0..1000).map(|_| random_disk_point(rng, 0.9)).collect();
    let mut fd = 0.0f64;
    for (_, f) in variant_catalogue()? {
        for z in &fd_points {
            fd = fd.max(derivative_mismatch(&f, *z, 1e-6)?);
        }
    }
    // beta is needed by the growth bound; make sure the catalogue is nontrivial
    let nontrivial = bloch_seminorm(&fns[0], grid)?.value > 0.0;
    Ok((
        viol <= 1e-9 && fd <= 1e-5 && nontrivial,
        format!("max violation {viol:.2e}; max derivative mismatch {fd:.2e}"),
    ))
}
