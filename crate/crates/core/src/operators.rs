//! Multiplication, composition and weighted composition operators on the
//! Bloch space: construction, boundedness evidence, and norm bounds.
//!
//! All three operators are handled as `W_{psi,phi} f = psi * (f ∘ phi)`;
//! multiplication fixes `phi = id` and composition fixes `psi = 1`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    bloch_norm, sigma_infty, sup_norm, sup_over_disk, tau_infty, DiskGrid, SupremumEstimate, BOUNDARY_GUARD,
};
use crate::error::{BlochError, Result};
use crate::function::{is_self_map, AnalyticFn, ComplexPoint};

/// Ring window used to judge whether a ring statistic has stopped growing.
pub const STABILIZATION_WINDOW: usize = 5;

/// Required closeness of each test-family member's Bloch norm to one.
pub const FAMILY_NORM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Multiplication,
    Composition,
    Weighted,
}

/// `W_{psi,phi}`, with the degenerate slots filled for the special kinds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorSpec {
    kind: OperatorKind,
    psi: AnalyticFn,
    phi: AnalyticFn,
}

fn one() -> AnalyticFn {
    AnalyticFn::constant(1.0).expect("1 is finite")
}

fn origin() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn require_self_map(phi: &AnalyticFn, grid: &DiskGrid) -> Result<()> {
    let report = is_self_map(phi, grid);
    if !report.ok {
        return Err(BlochError::Precondition(format!(
            "phi is not a self-map of the disk: |phi({})| = {}",
            report.witness, report.max_modulus
        )));
    }
    Ok(())
}

impl OperatorSpec {
    /// `M_psi`
    pub fn multiplication(psi: AnalyticFn) -> Self {
        Self {
            kind: OperatorKind::Multiplication,
            psi,
            phi: AnalyticFn::identity(),
        }
    }

    /// `C_phi`; `phi` must map the grid into the disk.
    pub fn composition(phi: AnalyticFn, grid: &DiskGrid) -> Result<Self> {
        require_self_map(&phi, grid)?;
        Ok(Self {
            kind: OperatorKind::Composition,
            psi: one(),
            phi,
        })
    }

    pub fn weighted(psi: AnalyticFn, phi: AnalyticFn, grid: &DiskGrid) -> Result<Self> {
        require_self_map(&phi, grid)?;
        Ok(Self {
            kind: OperatorKind::Weighted,
            psi,
            phi,
        })
    }

    /// Builds the operator of the given kind from whichever slots it uses.
    pub fn from_parts(
        kind: OperatorKind,
        psi: Option<AnalyticFn>,
        phi: Option<AnalyticFn>,
        grid: &DiskGrid,
    ) -> Result<Self> {
        let missing = |slot: &str| BlochError::InvalidInput(format!("{kind:?} operator needs `{slot}`"));
        match kind {
            OperatorKind::Multiplication => {
                if phi.is_some() {
                    return Err(BlochError::InvalidInput("multiplication operators take no `phi`".into()));
                }
                Ok(Self::multiplication(psi.ok_or_else(|| missing("psi"))?))
            }
            OperatorKind::Composition => {
                if psi.is_some() {
                    return Err(BlochError::InvalidInput("composition operators take no `psi`".into()));
                }
                Self::composition(phi.ok_or_else(|| missing("phi"))?, grid)
            }
            OperatorKind::Weighted => Self::weighted(
                psi.ok_or_else(|| missing("psi"))?,
                phi.ok_or_else(|| missing("phi"))?,
                grid,
            ),
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn psi(&self) -> &AnalyticFn {
        &self.psi
    }

    pub fn phi(&self) -> &AnalyticFn {
        &self.phi
    }
}

/// `psi * (f ∘ phi)`
pub fn apply(op: &OperatorSpec, f: &AnalyticFn) -> AnalyticFn {
    AnalyticFn::multiply(&op.psi, &AnalyticFn::compose(f, &op.phi))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BrownShieldsReport {
    /// `max |psi'(z)| (1-|z|) log(1/(1-|z|))`
    pub sup_stat: f64,
    pub sup_norm: f64,
    pub boundedness_plausible: bool,
}

/// Evidence (not a decision) for `M_psi` being bounded: `psi` looks bounded
/// and the growth statistic stops increasing toward the boundary.
pub fn brown_shields_check(psi: &AnalyticFn, grid: &DiskGrid) -> Result<BrownShieldsReport> {
    let stat = sup_over_disk(
        |z| {
            let gap = 1.0 - z.norm();
            let weight = if gap < 1.0 { gap * -gap.ln() } else { 0.0 };
            Ok(psi.eval_with_derivative(z)?.derivative.norm() * weight)
        },
        grid,
    )?;
    let sup = sup_norm(psi, grid)?;
    Ok(BrownShieldsReport {
        sup_stat: stat.value,
        sup_norm: sup.value,
        boundedness_plausible: stat.rings_stabilized(STABILIZATION_WINDOW)
            && sup.rings_stabilized(STABILIZATION_WINDOW),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OhnoZhaoReport {
    pub cond1: SupremumEstimate,
    pub cond2: SupremumEstimate,
    pub bounded_plausible: bool,
}

/// The two suprema whose finiteness characterizes bounded `W_{psi,phi}`.
pub fn ohno_zhao_check(psi: &AnalyticFn, phi: &AnalyticFn, grid: &DiskGrid) -> Result<OhnoZhaoReport> {
    let cond1 = sup_over_disk(
        |z| {
            let w = phi.eval(z)?;
            if !(w.norm() < BOUNDARY_GUARD) {
                return Err(BlochError::NumericalOverflow(format!(
                    "|phi(z)| = {} reached the boundary guard at z = {z}",
                    w.norm()
                )));
            }
            let dpsi = psi.eval_with_derivative(z)?.derivative;
            Ok((1.0 - z.norm_sqr()) * dpsi.norm() * (2.0 / (1.0 - w.norm_sqr())).ln())
        },
        grid,
    )?;
    let cond2 = tau_infty(psi, phi, grid)?;
    let bounded_plausible =
        cond1.rings_stabilized(STABILIZATION_WINDOW) && cond2.rings_stabilized(STABILIZATION_WINDOW);
    Ok(OhnoZhaoReport {
        cond1,
        cond2,
        bounded_plausible,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormComponents {
    pub bloch_norm_psi: f64,
    pub sup_norm_psi: f64,
    pub tau: f64,
    pub sigma: f64,
    /// `1/2 |psi(0)| log((1+|phi(0)|)/(1-|phi(0)|))`
    pub log_term: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormBounds {
    pub lower: f64,
    pub upper: f64,
    pub components: NormComponents,
    /// For `M_psi` with `psi(0) = 0`: `[‖psi‖_∞, ‖psi‖_∞ + sigma_psi]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin_fixed: Option<[f64; 2]>,
}

/// `1/2 |psi(0)| log((1+|phi(0)|)/(1-|phi(0)|))`, from exact evaluations at 0.
pub fn log_term(psi: &AnalyticFn, phi: &AnalyticFn) -> Result<f64> {
    let w = phi.eval(origin())?.norm();
    Ok(psi.eval(origin())?.norm() * w.atanh())
}

/// Both sides of the weighted-composition norm sandwich:
/// `max{‖psi‖_B, L} <= ‖W‖ <= max{‖psi‖_B, L + tau + sigma}` with `L` the log term.
pub fn wco_bounds(psi: &AnalyticFn, phi: &AnalyticFn, grid: &DiskGrid) -> Result<NormBounds> {
    let oz = ohno_zhao_check(psi, phi, grid)?;
    if !oz.bounded_plausible {
        return Err(BlochError::Precondition(
            "(psi, phi) does not look like a bounded weighted composition operator".into(),
        ));
    }
    let components = NormComponents {
        bloch_norm_psi: bloch_norm(psi, grid)?,
        sup_norm_psi: sup_norm(psi, grid)?.value,
        tau: oz.cond2.value,
        sigma: sigma_infty(psi, phi, grid)?.value,
        log_term: log_term(psi, phi)?,
    };
    Ok(NormBounds {
        lower: components.bloch_norm_psi.max(components.log_term),
        upper: components
            .bloch_norm_psi
            .max(components.log_term + components.tau + components.sigma),
        components,
        origin_fixed: None,
    })
}

pub fn wco_upper_bound(psi: &AnalyticFn, phi: &AnalyticFn, grid: &DiskGrid) -> Result<f64> {
    Ok(wco_bounds(psi, phi, grid)?.upper)
}

pub fn wco_lower_bound(psi: &AnalyticFn, phi: &AnalyticFn, grid: &DiskGrid) -> Result<f64> {
    Ok(bloch_norm(psi, grid)?.max(log_term(psi, phi)?))
}

/// Norm bounds for `C_phi` in the classical form
/// `max{1, L} <= ‖C_phi‖ <= max{1, L + tau_phi}`, `L = 1/2 log((1+|phi(0)|)/(1-|phi(0)|))`.
pub fn composition_bounds(phi: &AnalyticFn, grid: &DiskGrid) -> Result<NormBounds> {
    let l = phi.eval(origin())?.norm().atanh();
    let tau_phi = tau_infty(&one(), phi, grid)?.value;
    Ok(NormBounds {
        lower: 1f64.max(l),
        upper: 1f64.max(l + tau_phi),
        components: NormComponents {
            bloch_norm_psi: 1.0,
            sup_norm_psi: 1.0,
            tau: tau_phi,
            sigma: 0.0,
            log_term: l,
        },
        origin_fixed: None,
    })
}

/// `max{‖psi‖_B, ‖psi‖_∞} <= ‖M_psi‖ <= max{‖psi‖_B, ‖psi‖_∞ + sigma_psi}`.
pub fn mult_bounds(psi: &AnalyticFn, grid: &DiskGrid) -> Result<NormBounds> {
    let bs = brown_shields_check(psi, grid)?;
    if !bs.boundedness_plausible {
        return Err(BlochError::Precondition(
            "psi does not look like a bounded multiplier".into(),
        ));
    }
    let bloch = bloch_norm(psi, grid)?;
    let sup = sup_norm(psi, grid)?.value;
    let sigma = sigma_infty(psi, &AnalyticFn::identity(), grid)?.value;
    let fixes_origin = psi.eval(origin())?.norm() <= 1e-12;
    Ok(NormBounds {
        lower: bloch.max(sup),
        upper: bloch.max(sup + sigma),
        components: NormComponents {
            bloch_norm_psi: bloch,
            sup_norm_psi: sup,
            tau: sup,
            sigma,
            log_term: 0.0,
        },
        origin_fixed: fixes_origin.then_some([sup, sup + sigma]),
    })
}

/// Test functions of Bloch norm one.
#[derive(Debug, Clone)]
pub struct TestFamily {
    members: Vec<AnalyticFn>,
}

impl TestFamily {
    /// Verifies `‖f‖_B = 1 ± 1e-6` for every member.
    pub fn new(members: Vec<AnalyticFn>, grid: &DiskGrid) -> Result<Self> {
        if members.is_empty() {
            return Err(BlochError::InvalidInput("test family is empty".into()));
        }
        let norms = members
            .par_iter()
            .map(|f| bloch_norm(f, grid))
            .collect::<Result<Vec<f64>>>()?;
        for (f, n) in members.iter().zip(&norms) {
            if (n - 1.0).abs() > FAMILY_NORM_TOL {
                return Err(BlochError::InvalidInput(format!(
                    "test function {f} has Bloch norm {n}, not 1"
                )));
            }
        }
        Ok(Self { members })
    }

    /// `1`; log tests aligned with `arg phi(0)` and at 8 uniform angles;
    /// `z^n/‖z^n‖_B` for `n in {1,2,3,5,8}`; four automorphisms scaled to norm one.
    pub fn default_for(phi: &AnalyticFn, grid: &DiskGrid) -> Result<Self> {
        let mut members = vec![one()];
        let w = phi.eval(origin())?;
        if w.norm() > 0.0 {
            members.push(AnalyticFn::log_test(w.arg())?);
        }
        for k in 0..8 {
            members.push(AnalyticFn::log_test(std::f64::consts::FRAC_PI_4 * k as f64)?);
        }
        for n in [1u32, 2, 3, 5, 8] {
            let zn = AnalyticFn::monomial(n)?;
            let norm = bloch_norm(&zn, grid)?;
            members.push(AnalyticFn::scale(Complex64::new(1.0 / norm, 0.0), &zn));
        }
        for k in 0..4 {
            let a = Complex64::from_polar(0.5, std::f64::consts::FRAC_PI_2 * k as f64);
            let aut = AnalyticFn::automorphism(Complex64::new(1.0, 0.0), a)?;
            members.push(AnalyticFn::scale(Complex64::new(1.0 / (1.0 + a.norm()), 0.0), &aut));
        }
        Self::new(members, grid)
    }

    pub fn members(&self) -> &[AnalyticFn] {
        &self.members
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalNorm {
    /// `max_f ‖op f‖_B` over the family; a lower bound for `‖op‖`.
    pub best: f64,
    pub argmax_member: usize,
    pub argmax_label: String,
    pub per_member: Vec<f64>,
}

pub fn empirical_norm_lower(op: &OperatorSpec, family: &TestFamily, grid: &DiskGrid) -> Result<EmpiricalNorm> {
    let per_member = family
        .members
        .par_iter()
        .map(|f| bloch_norm(&apply(op, f), grid))
        .collect::<Result<Vec<f64>>>()?;
    let (argmax_member, best) = per_member
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc });
    Ok(EmpiricalNorm {
        best,
        argmax_member,
        argmax_label: family.members[argmax_member].to_string(),
        per_member,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultNormProbe {
    pub bloch_norm: f64,
    pub sup_norm: f64,
    pub sigma: f64,
    /// `‖psi‖_B <= ‖psi‖_∞ + sigma_psi` held numerically (1e-9 slack).
    pub holds: bool,
}

/// Records the triple behind the open inequality `‖psi‖_B <= ‖psi‖_∞ + sigma_psi`.
/// A `holds = false` result flags a candidate counterexample; nothing is concluded.
pub fn mult_norm_probe(psi: &AnalyticFn, grid: &DiskGrid) -> Result<MultNormProbe> {
    let bloch = bloch_norm(psi, grid)?;
    let sup = sup_norm(psi, grid)?.value;
    let sigma = sigma_infty(psi, &AnalyticFn::identity(), grid)?.value;
    Ok(MultNormProbe {
        bloch_norm: bloch,
        sup_norm: sup,
        sigma,
        holds: bloch <= sup + sigma + 1e-9,
    })
}

/// `arg phi(0)` for aligning a log test function; `None` when `phi(0) = 0`.
pub fn origin_direction(phi: &AnalyticFn) -> Result<Option<f64>> {
    let w: ComplexPoint = phi.eval(origin())?;
    Ok((w.norm() > 0.0).then(|| w.arg()))
}
