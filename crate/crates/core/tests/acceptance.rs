//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.
//!
//! Reference values are computed here, independently of the library: closed
//! forms evaluated directly, dense one-dimensional maximization for calculus
//! suprema, and hand-written finite differences.

use std::f64::consts::{FRAC_PI_3, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use blochkit::analysis::{bloch_norm, bloch_seminorm, sigma_infty, sup_norm, tau_infty, DiskGrid};
use blochkit::isometry::{mult_isometry_check, power_norm_bound, power_norm_check};
use blochkit::operators::{empirical_norm_lower, mult_bounds, wco_bounds, wco_lower_bound, wco_upper_bound, OperatorSpec, TestFamily};
use blochkit::spectra::{
    eigenfunction_check, mult_spectrum, mult_spectrum_membership, resolvent_matrix, rotation_comp_spectrum,
    rotation_resolvent_solve, weighted_iso_spectrum, IsometricSymbol, RotationSpec, SpectrumResult,
};
use blochkit::AnalyticFn;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

type Outcome = Result<(bool, String), String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit(t: f64) -> Complex64 {
    c(t.cos(), t.sin())
}

/// `½ log((1+x)/(1-x))` written out, not via `atanh`.
fn half_log(x: f64) -> f64 {
    0.5 * ((1.0 + x) / (1.0 - x)).ln()
}

/// Maximum of a unimodal-ish function on `[lo, hi]`: dense sampling then
/// ternary search around the best sample.
fn max_1d(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let n = 100_000;
    let step = (hi - lo) / n as f64;
    let (mut best_x, mut best) = (lo, f(lo));
    for k in 0..=n {
        let x = lo + step * k as f64;
        let v = f(x);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let (mut a, mut b) = ((best_x - step).max(lo), (best_x + step).min(hi));
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if f(m1) < f(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    best.max(f(0.5 * (a + b)))
}

fn random_point(rng: &mut ChaCha20Rng, r_max: f64) -> Complex64 {
    let r = r_max * rng.gen::<f64>().sqrt();
    let t = rng.gen::<f64>() * TAU;
    c(r * t.cos(), r * t.sin())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1(g: &DiskGrid) -> Outcome {
    let mut worst = 0.0f64;
    for theta in [0.0, FRAC_PI_3, 2.1] {
        let n = bloch_norm(&AnalyticFn::log_test(theta).map_err(err)?, g).map_err(err)?;
        worst = worst.max((n - 1.0).abs());
    }
    Ok((worst <= 1e-3, format!("max |‖L_θ‖_B − 1| = {worst:.2e} (tol 1e-3)")))
}

fn criterion_2(g: &DiskGrid) -> Outcome {
    let eta = unit(-2.3);
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut margin = f64::INFINITY;
    for a in [c(0.3, 0.0), c(0.5, 0.2), c(0.0, 0.85)] {
        let psi = AnalyticFn::automorphism(eta, a).map_err(err)?;
        let norm = bloch_norm(&psi, g).map_err(err)?;
        worst = worst.max((norm - (a.norm() + 1.0)).abs());
        let sigma = sigma_infty(&psi, &AnalyticFn::identity(), g).map_err(err)?.value;
        let lb = half_log(a.norm());
        margin = margin.min(sigma - (lb - 1e-6));
        ok &= (norm - (a.norm() + 1.0)).abs() <= 1e-3 && sigma >= lb - 1e-6 && lb > a.norm();
    }
    Ok((ok, format!("max |‖ψ‖_B − (1+|a|)| = {worst:.2e}; min σ − (½log − 1e-6) = {margin:.2e}")))
}

fn criterion_3(g: &DiskGrid) -> Outcome {
    // calculus oracle: β(z^n) = max_r n r^{n-1} (1 - r²)
    let mut below_one = true;
    for n in 2..=64u32 {
        below_one &= power_norm_bound(n).map_err(err)? < 1.0;
    }
    let mut eq = 0.0f64;
    let mut closed_vs_calc = 0.0f64;
    for n in 2..=10u32 {
        let nf = n as f64;
        let oracle = max_1d(|r| nf * r.powi(n as i32 - 1) * (1.0 - r * r), 0.0, 1.0);
        let beta = bloch_seminorm(&AnalyticFn::monomial(n).map_err(err)?, g).map_err(err)?.value;
        eq = eq.max((beta - oracle).abs());
        closed_vs_calc = closed_vs_calc.max((power_norm_bound(n).map_err(err)? - oracle).abs());
    }
    let mut rng = ChaCha20Rng::seed_from_u64(0xB10C);
    let mut within = true;
    let mut worst_gap = f64::NEG_INFINITY;
    for _ in 0..10 {
        let k = rng.gen_range(1..=3);
        let mut zeros = vec![c(0.0, 0.0)];
        zeros.extend((0..k).map(|_| random_point(&mut rng, 0.9)));
        let psi = AnalyticFn::blaschke(zeros, unit(rng.gen::<f64>() * TAU)).map_err(err)?;
        let report = power_norm_check(&psi, 6, g).map_err(err)?;
        for e in &report.per_n {
            let b = power_norm_bound(e.n).map_err(err)?;
            worst_gap = worst_gap.max(e.beta - b);
            within &= e.beta <= b + 1e-6;
        }
    }
    Ok((
        below_one && eq <= 1e-6 && closed_vs_calc <= 1e-9 && within,
        format!(
            "b(n)<1 for n≤64: {below_one}; max |β(zⁿ) − oracle| = {eq:.2e}; closed form vs oracle {closed_vs_calc:.1e}; max β(ψⁿ) − b(n) = {worst_gap:.3} over 10 random products"
        ),
    ))
}

fn criterion_4(g: &DiskGrid) -> Outcome {
    let id = AnalyticFn::identity();
    let one = AnalyticFn::constant(1.0).map_err(err)?;
    let pairs: Vec<(AnalyticFn, AnalyticFn)> = vec![
        (one.clone(), id.clone()),
        (AnalyticFn::constant(unit(0.5)).map_err(err)?, id.clone()),
        (AnalyticFn::constant(c(0.7, 0.0)).map_err(err)?, AnalyticFn::scale(c(0.0, 0.6), &id)),
        (one.clone(), AnalyticFn::automorphism(c(1.0, 0.0), c(-0.5, 0.3)).map_err(err)?),
        (one.clone(), AnalyticFn::rotation(unit(1.0)).map_err(err)?),
        (id.clone(), AnalyticFn::scale(c(0.5, 0.0), &id)),
        (AnalyticFn::automorphism(unit(2.0), c(0.0, 0.4)).map_err(err)?, id.clone()),
        (
            AnalyticFn::blaschke(vec![c(0.0, 0.0), c(-0.3, 0.5)], c(1.0, 0.0)).map_err(err)?,
            AnalyticFn::rotation(unit(-2.0)).map_err(err)?,
        ),
        (
            AnalyticFn::polynomial(vec![c(0.5, 0.0), c(0.0, 0.25)]).map_err(err)?,
            AnalyticFn::automorphism(c(-1.0, 0.0), c(0.4, 0.0)).map_err(err)?,
        ),
        (AnalyticFn::monomial(3).map_err(err)?, AnalyticFn::polynomial(vec![c(0.1, -0.2), c(0.6, 0.0)]).map_err(err)?),
        (
            AnalyticFn::blaschke(vec![c(0.5, 0.0), c(0.0, 0.5)], unit(0.3)).map_err(err)?,
            AnalyticFn::blaschke(vec![c(0.0, 0.0), c(0.2, 0.2)], c(1.0, 0.0)).map_err(err)?,
        ),
        (AnalyticFn::constant(1.5).map_err(err)?, AnalyticFn::constant(c(0.0, 0.8)).map_err(err)?),
        (AnalyticFn::scale(c(0.3, 0.0), &id), AnalyticFn::automorphism(c(1.0, 0.0), c(0.7, 0.0)).map_err(err)?),
    ];
    let mut worst_low = f64::NEG_INFINITY;
    let mut worst_up = f64::NEG_INFINITY;
    for (psi, phi) in &pairs {
        let lower = wco_lower_bound(psi, phi, g).map_err(err)?;
        let upper = wco_upper_bound(psi, phi, g).map_err(err)?;
        let op = OperatorSpec::weighted(psi.clone(), phi.clone(), g).map_err(err)?;
        let fam = TestFamily::default_for(phi, g).map_err(err)?;
        let best = empirical_norm_lower(&op, &fam, g).map_err(err)?.best;
        worst_low = worst_low.max(lower - best);
        worst_up = worst_up.max(best - upper);
    }
    Ok((
        worst_low <= 1e-6 && worst_up <= 1e-6,
        format!(
            "{} pairs; max(lower − best) = {worst_low:.2e}, max(best − upper) = {worst_up:.2e} (slack 1e-6)",
            pairs.len()
        ),
    ))
}

fn criterion_5(g: &DiskGrid) -> Outcome {
    let one = AnalyticFn::constant(1.0).map_err(err)?;
    let id = AnalyticFn::identity();
    let mut worst = 0.0f64;
    for phi in [
        AnalyticFn::automorphism(c(1.0, 0.0), c(0.2, -0.6)).map_err(err)?,
        AnalyticFn::scale(c(0.0, 0.7), &id),
        AnalyticFn::polynomial(vec![c(-0.3, 0.0), c(0.4, 0.1), c(0.1, 0.0)]).map_err(err)?,
    ] {
        // composition-operator formulas: max{1, L}, max{1, L + τ_φ}
        let l = half_log(phi.eval(c(0.0, 0.0)).map_err(err)?.norm());
        let tau = tau_infty(&one, &phi, g).map_err(err)?.value;
        let b = wco_bounds(&one, &phi, g).map_err(err)?;
        worst = worst.max((b.lower - 1f64.max(l)).abs()).max((b.upper - 1f64.max(l + tau)).abs());
    }
    for psi in [
        AnalyticFn::automorphism(unit(0.2), c(0.6, 0.0)).map_err(err)?,
        AnalyticFn::polynomial(vec![c(0.0, 0.0), c(0.4, 0.0), c(0.3, 0.3)]).map_err(err)?,
        AnalyticFn::blaschke(vec![c(0.1, 0.5)], c(1.0, 0.0)).map_err(err)?,
    ] {
        // multiplication-operator formulas: max{‖ψ‖_B, ‖ψ‖_∞}, max{‖ψ‖_B, ‖ψ‖_∞ + σ_ψ}
        let bn = bloch_norm(&psi, g).map_err(err)?;
        let sup = sup_norm(&psi, g).map_err(err)?.value;
        let sigma = sigma_infty(&psi, &id, g).map_err(err)?.value;
        let w = wco_bounds(&psi, &id, g).map_err(err)?;
        let m = mult_bounds(&psi, g).map_err(err)?;
        worst = worst
            .max((w.upper - bn.max(sup + sigma)).abs())
            .max((m.upper - bn.max(sup + sigma)).abs())
            .max((m.lower - bn.max(sup)).abs())
            .max((w.lower.max(w.components.tau) - bn.max(sup)).abs());
    }
    Ok((worst <= 1e-12, format!("max deviation from the degenerate formulas = {worst:.2e} (tol 1e-12)")))
}

fn criterion_6(g: &DiskGrid) -> Outcome {
    let id = AnalyticFn::identity();
    let z2 = AnalyticFn::monomial(2).map_err(err)?;
    let mut cat: Vec<(AnalyticFn, bool)> = Vec::new();
    for t in [0.0, PI / 7.0, 1.0, 2.0, PI, -0.5, 4.4] {
        cat.push((AnalyticFn::constant(unit(t)).map_err(err)?, true));
    }
    // unimodular constants hidden in larger trees
    cat.push((AnalyticFn::multiply(&AnalyticFn::constant(unit(0.4)).map_err(err)?, &AnalyticFn::constant(unit(0.6)).map_err(err)?), true));
    cat.push((
        AnalyticFn::add(&AnalyticFn::add(&z2, &AnalyticFn::constant(c(0.0, -1.0)).map_err(err)?), &AnalyticFn::scale(c(-1.0, 0.0), &z2)),
        true,
    ));
    for v in [c(0.0, 0.0), c(0.5, 0.0), c(0.0, 1.5), c(0.99, 0.0), c(3.0, 4.0)] {
        cat.push((AnalyticFn::constant(v).map_err(err)?, false));
    }
    let non_constant = vec![
        id.clone(),
        z2.clone(),
        AnalyticFn::monomial(4).map_err(err)?,
        AnalyticFn::rotation(unit(1.7)).map_err(err)?,
        AnalyticFn::automorphism(c(1.0, 0.0), c(0.3, 0.0)).map_err(err)?,
        AnalyticFn::automorphism(unit(2.5), c(-0.1, 0.6)).map_err(err)?,
        AnalyticFn::blaschke(vec![c(0.0, 0.0), c(0.3, -0.3)], c(1.0, 0.0)).map_err(err)?,
        AnalyticFn::blaschke(vec![c(0.5, 0.5), c(-0.5, 0.2), c(0.1, 0.0)], unit(1.0)).map_err(err)?,
        AnalyticFn::polynomial(vec![c(0.8, 0.0), c(0.1, 0.0)]).map_err(err)?,
        AnalyticFn::polynomial(vec![c(0.0, 1.0), c(0.0, 0.0), c(0.05, 0.0)]).map_err(err)?,
        AnalyticFn::log_test(1.0).map_err(err)?,
        AnalyticFn::scale(c(0.5, 0.0), &id),
        AnalyticFn::add(&AnalyticFn::constant(unit(0.3)).map_err(err)?, &AnalyticFn::scale(c(0.01, 0.0), &z2)),
        AnalyticFn::multiply(&id, &AnalyticFn::automorphism(c(1.0, 0.0), c(0.5, 0.5)).map_err(err)?),
        AnalyticFn::compose(&z2, &AnalyticFn::automorphism(c(1.0, 0.0), c(0.0, 0.3)).map_err(err)?),
        AnalyticFn::scale(unit(0.9), &AnalyticFn::blaschke(vec![c(0.2, 0.0)], c(1.0, 0.0)).map_err(err)?),
    ];
    for f in non_constant {
        cat.push((f, false));
    }
    if cat.len() != 30 {
        return Err(format!("catalogue has {} symbols, expected 30", cat.len()));
    }
    let mut mismatches = 0;
    let mut worst_drift = 0.0f64;
    let fam = TestFamily::default_for(&id, g).map_err(err)?;
    for (psi, expected) in &cat {
        let v = mult_isometry_check(psi, g).map_err(err)?;
        if v.is_isometry != *expected {
            mismatches += 1;
        }
        if v.is_isometry {
            // recompute ‖M_ψ f‖_B against ‖f‖_B here rather than trusting the verdict's evidence
            let op = OperatorSpec::multiplication(psi.clone());
            for f in fam.members() {
                let lhs = bloch_norm(&blochkit::operators::apply(&op, f), g).map_err(err)?;
                let rhs = bloch_norm(f, g).map_err(err)?;
                worst_drift = worst_drift.max((lhs - rhs).abs());
            }
        }
    }
    let mut square_evidence = true;
    for psi in [id.clone(), z2.clone()] {
        let v = mult_isometry_check(&psi, g).map_err(err)?;
        square_evidence &= !v.is_isometry && v.evidence.get("norm_psi_squared").is_some_and(|s| *s < 1.0);
    }
    Ok((
        mismatches == 0 && worst_drift <= 1e-6 && square_evidence,
        format!("30 symbols, {mismatches} misclassified; accepted max |‖M_ψ f‖ − ‖f‖| = {worst_drift:.1e}; ‖ψ²‖_B < 1 for z, z²: {square_evidence}"),
    ))
}

fn criterion_7(g: &DiskGrid) -> Outcome {
    let zeta = RotationSpec::rational(1, 5).map_err(err)?;
    let SpectrumResult::FiniteSet { points } = rotation_comp_spectrum(&zeta) else {
        return Ok((false, "expected a finite set".into()));
    };
    let mut set_err = 0.0f64;
    let mut eig = 0.0f64;
    for (k, p) in points.iter().enumerate() {
        let k = k as u32 + 1;
        set_err = set_err.max((p - unit(TAU * k as f64 / 5.0)).norm());
        let e = eigenfunction_check(&zeta, k, g).map_err(err)?;
        eig = eig.max(e.residual);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(0x5EC7);
    let mut det_err = 0.0f64;
    for n in 2..=12usize {
        for _ in 0..20 {
            let mu = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let mut pow = c(1.0, 0.0);
            for _ in 0..n {
                pow *= mu;
            }
            let expected = if n % 2 == 0 { pow - 1.0 } else { 1.0 - pow };
            let m = resolvent_matrix(n, mu).map_err(err)?;
            det_err = det_err.max((m.det - expected).norm() / expected.norm());
        }
    }
    let gs = [
        AnalyticFn::constant(1.0).map_err(err)?,
        AnalyticFn::identity(),
        AnalyticFn::monomial(2).map_err(err)?,
        AnalyticFn::log_test(0.0).map_err(err)?,
    ];
    let mut res = 0.0f64;
    let check_pts: Vec<Complex64> = (0..200).map(|_| random_point(&mut rng, 0.95)).collect();
    for n in 1..=8u64 {
        let zeta = RotationSpec::rational(1, n).map_err(err)?;
        let z1 = unit(TAU / n as f64);
        for _ in 0..5 {
            let mu = loop {
                let mu = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                if (mu.powu(n as u32) - 1.0).norm() > 0.1 {
                    break mu;
                }
            };
            for gf in &gs {
                let s = rotation_resolvent_solve(&zeta, mu, gf).map_err(err)?;
                res = res.max(s.residual);
                for z in &check_pts {
                    let lhs = s.solution.eval(z1 * z).map_err(err)? - mu * s.solution.eval(*z).map_err(err)?;
                    res = res.max((lhs - gf.eval(*z).map_err(err)?).norm());
                }
            }
        }
    }
    Ok((
        points.len() == 5 && set_err < 1e-12 && eig < 1e-12 && det_err <= 1e-10 && res < 1e-8,
        format!("fifth roots err {set_err:.1e}, eigen residual {eig:.1e}; det rel err {det_err:.1e}; resolvent residual {res:.1e}"),
    ))
}

fn criterion_8(g: &DiskGrid) -> Outcome {
    let eta = unit(2.2);
    let SpectrumResult::RangeClosure { samples, .. } = mult_spectrum(&AnalyticFn::constant(eta).map_err(err)?, g).map_err(err)? else {
        return Ok((false, "expected a sample cloud".into()));
    };
    let mut diam = 0.0f64;
    for a in &samples {
        diam = diam.max((a - samples[0]).norm() * 2.0);
    }
    let id = AnalyticFn::identity();
    let out = mult_spectrum_membership(&id, c(2.0, 0.0), g, 1e-3).map_err(err)?;
    let mut resid = f64::INFINITY;
    if let Some(r) = &out.resolvent {
        resid = 0.0;
        let golden = PI * (3.0 - 5f64.sqrt());
        for k in 0..200 {
            let z = Complex64::from_polar(0.995 * ((k as f64 + 0.5) / 200.0).sqrt(), golden * k as f64);
            resid = resid.max(((z - 2.0) * r.eval(z).map_err(err)? - 1.0).norm());
        }
    }
    let inside = mult_spectrum_membership(&id, c(0.5, 0.0), g, 1e-3).map_err(err)?;
    Ok((
        diam < 1e-14 && !out.in_spectrum && out.resolvent_verified && resid <= 1e-10 && inside.in_spectrum,
        format!(
            "constant cloud diameter ≤ {diam:.1e}; λ=2 out of spectrum, resolvent residual {resid:.1e}; λ=0.5 in spectrum: {}",
            inside.in_spectrum
        ),
    ))
}

fn criterion_9(g: &DiskGrid) -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(0x9);
    let mut worst = 0.0f64;
    let mut shape = true;
    for _ in 0..5 {
        let eta = unit(rng.gen::<f64>() * TAU);
        for q in [1u64, 2, 3, 4, 6] {
            let zeta = RotationSpec::rational(1, q).map_err(err)?;
            match weighted_iso_spectrum(eta, &IsometricSymbol::Rotation(zeta), g).map_err(err)? {
                SpectrumResult::FiniteSet { points } if points.len() == q as usize => {
                    for (k, p) in points.iter().enumerate() {
                        let expected = eta * unit(TAU * (k as f64 + 1.0) / q as f64);
                        worst = worst.max((p - expected).norm());
                    }
                }
                _ => shape = false,
            }
        }
    }
    Ok((shape && worst <= 1e-12, format!("max |σ(W) − η·ζᵏ| = {worst:.1e} over 5 η × orders {{1,2,3,4,6}}")))
}

fn criterion_10(g: &DiskGrid) -> Outcome {
    let id = AnalyticFn::identity();
    // (function, exact sup norm)
    let cat: Vec<(AnalyticFn, f64)> = vec![
        (id.clone(), 1.0),
        (AnalyticFn::monomial(4).map_err(err)?, 1.0),
        (AnalyticFn::automorphism(c(1.0, 0.0), c(0.6, 0.0)).map_err(err)?, 1.0),
        (AnalyticFn::automorphism(unit(1.0), c(-0.2, 0.75)).map_err(err)?, 1.0),
        (AnalyticFn::blaschke(vec![c(0.0, 0.0), c(0.7, 0.1)], c(1.0, 0.0)).map_err(err)?, 1.0),
        (AnalyticFn::blaschke(vec![c(0.3, 0.3), c(-0.5, -0.5), c(0.9, 0.0)], unit(3.0)).map_err(err)?, 1.0),
        (AnalyticFn::scale(c(0.4, 0.3), &AnalyticFn::automorphism(c(1.0, 0.0), c(0.5, 0.0)).map_err(err)?), 0.5),
        (AnalyticFn::constant(c(-0.6, 0.1)).map_err(err)?, (0.37f64).sqrt()),
        (AnalyticFn::scale(c(2.0, 0.0), &AnalyticFn::monomial(2).map_err(err)?), 2.0),
        (AnalyticFn::multiply(&AnalyticFn::monomial(2).map_err(err)?, &AnalyticFn::automorphism(c(1.0, 0.0), c(0.0, -0.4)).map_err(err)?), 1.0),
    ];
    let mut rng = ChaCha20Rng::seed_from_u64(0x10);
    let zs: Vec<Complex64> = (0..10_000).map(|_| random_point(&mut rng, 1.0 - 1e-9)).collect();
    let mut sp = 0.0f64;
    let mut gb = 0.0f64;
    for (f, m) in &cat {
        let f0 = f.eval(c(0.0, 0.0)).map_err(err)?.norm();
        let beta = bloch_seminorm(f, g).map_err(err)?.value;
        let lib_sp = blochkit::analysis::schwarz_pick_check(f, &zs, g).map_err(err)?.max_violation;
        let lib_gb = blochkit::analysis::growth_bound_check(f, &zs, g).map_err(err)?.max_violation;
        sp = sp.max(lib_sp);
        gb = gb.max(lib_gb);
        for z in &zs {
            let p = f.eval_with_derivative(*z).map_err(err)?;
            let lhs = (1.0 - z.norm_sqr()) * p.derivative.norm() / m;
            let rhs = 1.0 - p.value.norm_sqr() / (m * m);
            sp = sp.max(lhs - rhs);
            gb = gb.max(p.value.norm() - (f0 + beta * half_log(z.norm())));
        }
    }
    let lt = AnalyticFn::log_test(0.4).map_err(err)?;
    let aut = AnalyticFn::automorphism(unit(1.0), c(0.3, 0.3)).map_err(err)?;
    let variants: Vec<AnalyticFn> = vec![
        AnalyticFn::constant(c(1.0, -2.0)).map_err(err)?,
        id.clone(),
        AnalyticFn::monomial(7).map_err(err)?,
        AnalyticFn::polynomial(vec![c(0.1, 0.0), c(0.0, 2.0), c(-1.0, 0.5)]).map_err(err)?,
        aut.clone(),
        AnalyticFn::blaschke(vec![c(0.2, 0.2), c(-0.7, 0.0)], unit(0.4)).map_err(err)?,
        lt.clone(),
        AnalyticFn::add(&lt, &id),
        AnalyticFn::multiply(&aut, &lt),
        AnalyticFn::scale(c(0.0, 3.0), &aut),
        AnalyticFn::compose(&lt, &aut),
        AnalyticFn::from_json(r#"{"kind":"reciprocal_shift","inner":{"kind":"identity"},"lambda":[1.2,-0.4]}"#).map_err(err)?,
    ];
    let pts: Vec<Complex64> = (0..1000).map(|_| random_point(&mut rng, 0.9)).collect();
    let h = 1e-6;
    let mut fd = 0.0f64;
    for f in &variants {
        for z in &pts {
            let d = f.eval_with_derivative(*z).map_err(err)?.derivative;
            let dx = (f.eval(z + h).map_err(err)? - f.eval(z - h).map_err(err)?) / (2.0 * h);
            let dy = (f.eval(z + c(0.0, h)).map_err(err)? - f.eval(z - c(0.0, h)).map_err(err)?) / c(0.0, 2.0 * h);
            fd = fd.max((d - dx).norm().max((d - dy).norm()) / d.norm().max(1.0));
        }
    }
    Ok((
        sp <= 1e-9 && gb <= 1e-9 && fd <= 1e-5,
        format!("Schwarz–Pick max violation {sp:.1e}; growth-bound max violation {gb:.1e}; derivative vs central difference {fd:.1e} over 12 node kinds"),
    ))
}

type Criterion = fn(&DiskGrid) -> Outcome;

fn main() -> ExitCode {
    let grid = DiskGrid::default();
    let criteria: [(&str, Criterion); 10] = [
        ("log test function norm", criterion_1),
        ("automorphism norm and sigma", criterion_2),
        ("power bound", criterion_3),
        ("norm sandwich", criterion_4),
        ("degeneracy consistency", criterion_5),
        ("isometry characterization", criterion_6),
        ("rotation spectra", criterion_7),
        ("multiplication spectra", criterion_8),
        ("weighted spectra", criterion_9),
        ("inequality suites", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = f(&grid).unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {}  [{:.2}s]",
            k + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/10 passed in {:.1}s",
        10 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
