//! Isometric multiplication and composition operators, the power-norm bound
//! for origin-fixing symbols, and thin Blaschke constructions.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::analysis::{bloch_norm, bloch_seminorm, sup_norm_value, sunflower_points, DiskGrid};
use crate::error::{BlochError, Result};
use crate::function::{is_self_map, AnalyticFn, ComplexPoint, Node, UNIMODULAR_TOL};
use crate::operators::{apply, OperatorSpec, TestFamily};

/// Tolerance for `‖M f‖_B = ‖f‖_B` over the test family.
pub const NORM_DRIFT_TOL: f64 = 1e-6;

/// Accepted band for `beta_phi = 1`; the estimator approaches from below.
pub const BETA_BAND: (f64, f64) = (1.0 - 1e-3, 1.0 + 1e-6);

const CONSTANCY_POINTS: usize = 64;
const CONSTANCY_TOL: f64 = 1e-12;
const ORIGIN_TOL: f64 = 1e-12;
const SUP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryReason {
    UnimodularConstant,
    NotConstant,
    ConstantWrongModulus,
    OriginFixedAndZero,
    SeminormBelowOne,
    NormDrift,
    /// Composition symbol fixes 0 and has Bloch seminorm one.
    OriginFixedUnitSeminorm,
    OriginNotFixed,
    SeminormNotOne,
    NotSelfMap,
}

impl IsometryReason {
    pub fn accepts(self) -> bool {
        matches!(self, Self::UnimodularConstant | Self::OriginFixedUnitSeminorm)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsometryVerdict {
    pub is_isometry: bool,
    pub reason: IsometryReason,
    pub evidence: BTreeMap<String, f64>,
}

impl IsometryVerdict {
    fn new(reason: IsometryReason, evidence: BTreeMap<String, f64>) -> Self {
        Self {
            is_isometry: reason.accepts(),
            reason,
            evidence,
        }
    }
}

/// Ratios `‖op f‖_B / ‖f‖_B` over a family; evidence only, no verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsometryProbe {
    pub ratios: Vec<f64>,
    pub max_deviation: f64,
}

pub fn isometry_probe(op: &OperatorSpec, family: &TestFamily, grid: &DiskGrid) -> Result<IsometryProbe> {
    let ratios = family
        .members()
        .par_iter()
        .map(|f| Ok(bloch_norm(&apply(op, f), grid)? / bloch_norm(f, grid)?))
        .collect::<Result<Vec<f64>>>()?;
    let max_deviation = ratios.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    Ok(IsometryProbe { ratios, max_deviation })
}

/// The constant value of `psi`: structural first, else agreement on 64 points to 1e-12.
pub fn detect_constant(psi: &AnalyticFn) -> Result<Option<ComplexPoint>> {
    if let Some(c) = psi.constant_value() {
        return Ok(Some(c));
    }
    let c0 = psi.eval(Complex64::new(0.0, 0.0))?;
    for z in sunflower_points(CONSTANCY_POINTS, 0.95) {
        if (psi.eval(z)? - c0).norm() > CONSTANCY_TOL {
            return Ok(None);
        }
    }
    Ok(Some(c0))
}

/// `M_psi` is an isometry exactly for unimodular constants.
pub fn mult_isometry_check(psi: &AnalyticFn, grid: &DiskGrid) -> Result<IsometryVerdict> {
    let id = AnalyticFn::identity();
    let mut ev = BTreeMap::new();
    if let Some(c) = detect_constant(psi)? {
        ev.insert("constant_modulus".into(), c.norm());
        if (c.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Ok(IsometryVerdict::new(IsometryReason::ConstantWrongModulus, ev));
        }
        let family = TestFamily::default_for(&id, grid)?;
        let probe = isometry_probe(&OperatorSpec::multiplication(psi.clone()), &family, grid)?;
        ev.insert("family_drift".into(), probe.max_deviation);
        let reason = if probe.max_deviation > NORM_DRIFT_TOL {
            IsometryReason::NormDrift
        } else {
            IsometryReason::UnimodularConstant
        };
        return Ok(IsometryVerdict::new(reason, ev));
    }

    let norm_one = bloch_norm(psi, grid)?;
    let norm_sq = bloch_norm(&AnalyticFn::multiply(psi, psi), grid)?;
    let norm_z = bloch_norm(&AnalyticFn::multiply(psi, &id), grid)?;
    let at_origin = psi.eval(Complex64::new(0.0, 0.0))?.norm();
    ev.insert("norm_M_psi_one".into(), norm_one);
    ev.insert("norm_psi_squared".into(), norm_sq);
    ev.insert("norm_M_psi_z".into(), norm_z);
    ev.insert("sup_norm".into(), sup_norm_value(psi, grid)?);
    ev.insert("psi_at_origin_modulus".into(), at_origin);

    let reason = if (norm_one - 1.0).abs() > NORM_DRIFT_TOL {
        IsometryReason::NormDrift
    } else if norm_sq < 1.0 - NORM_DRIFT_TOL {
        IsometryReason::SeminormBelowOne
    } else if at_origin <= ORIGIN_TOL {
        IsometryReason::OriginFixedAndZero
    } else {
        IsometryReason::NotConstant
    };
    Ok(IsometryVerdict::new(reason, ev))
}

/// `b(n) = (2n/(n+1)) ((n-1)/(n+1))^{(n-1)/2}`, the exact Bloch seminorm of `z^n`.
pub fn power_norm_bound(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(BlochError::Domain(format!("power bound needs n >= 2, got {n}")));
    }
    let n = n as f64;
    Ok(2.0 * n / (n + 1.0) * ((n - 1.0) / (n + 1.0)).powf((n - 1.0) / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerNormEntry {
    pub n: u32,
    pub beta: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerNormReport {
    pub per_n: Vec<PowerNormEntry>,
    pub all_within: bool,
}

/// `beta_{psi^n} <= b(n) + 1e-6` for `n = 2..=n_max`, for `psi(0) = 0`, `‖psi‖_∞ <= 1`.
pub fn power_norm_check(psi: &AnalyticFn, n_max: u32, grid: &DiskGrid) -> Result<PowerNormReport> {
    if n_max < 2 {
        return Err(BlochError::Domain(format!("n_max must be at least 2, got {n_max}")));
    }
    let at_origin = psi.eval(Complex64::new(0.0, 0.0))?.norm();
    if at_origin > ORIGIN_TOL {
        return Err(BlochError::Precondition(format!("psi(0) must vanish, |psi(0)| = {at_origin}")));
    }
    let sup = sup_norm_value(psi, grid)?;
    if sup > 1.0 + SUP_SLACK {
        return Err(BlochError::Precondition(format!("psi must be bounded by 1, sup = {sup}")));
    }
    let per_n = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            Ok(PowerNormEntry {
                n,
                beta: bloch_seminorm(&AnalyticFn::power(psi, n)?, grid)?.value,
                bound: power_norm_bound(n)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_within = per_n.iter().all(|e| e.beta <= e.bound + 1e-6);
    Ok(PowerNormReport { per_n, all_within })
}

/// `C_phi` is an isometry exactly when `phi(0) = 0` and `beta_phi = 1`.
pub fn comp_isometry_check(phi: &AnalyticFn, grid: &DiskGrid) -> Result<IsometryVerdict> {
    let mut ev = BTreeMap::new();
    let sm = is_self_map(phi, grid);
    ev.insert("self_map_max_modulus".into(), sm.max_modulus);
    if !sm.ok {
        return Ok(IsometryVerdict::new(IsometryReason::NotSelfMap, ev));
    }
    let at_origin = phi.eval(Complex64::new(0.0, 0.0))?.norm();
    let beta = bloch_seminorm(phi, grid)?.value;
    ev.insert("phi_at_origin_modulus".into(), at_origin);
    ev.insert("beta_phi".into(), beta);
    let op = OperatorSpec::composition(phi.clone(), grid)?;
    let family = TestFamily::default_for(phi, grid)?;
    ev.insert("family_drift".into(), isometry_probe(&op, &family, grid)?.max_deviation);

    let reason = if at_origin > ORIGIN_TOL {
        IsometryReason::OriginNotFixed
    } else if !(BETA_BAND.0..=BETA_BAND.1).contains(&beta) {
        IsometryReason::SeminormNotOne
    } else {
        IsometryReason::OriginFixedUnitSeminorm
    };
    Ok(IsometryVerdict::new(reason, ev))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZerosLemmaBranch {
    /// `psi` is constant and `g(z) = z psi(z)` is a rotation.
    Constant,
    /// `psi` is a Blaschke product; its zeros are listed.
    BlaschkeZeros,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSeminorm {
    #[serde(with = "crate::wire::cpx")]
    pub zero: ComplexPoint,
    /// `(1-|a|^2) |psi'(a)|`
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZerosLemmaReport {
    pub g_norm: f64,
    pub psi_zero_at_origin: bool,
    pub branch: ZerosLemmaBranch,
    /// Sorted by decreasing value.
    pub near_extremal_zeros: Vec<ZeroSeminorm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_seminorm_at_zeros: Option<f64>,
    pub note: String,
}

/// For `g(z) = z psi(z)` with `‖g‖_B = 1`: either `psi` is constant or the
/// hyperbolic derivative of `psi` at its zeros approaches one. Finite
/// Blaschke products are the only symbols whose zeros are listed.
pub fn zeros_lemma_experiment(psi: &AnalyticFn, grid: &DiskGrid) -> Result<ZerosLemmaReport> {
    let sup = sup_norm_value(psi, grid)?;
    if sup > 1.0 + SUP_SLACK {
        return Err(BlochError::Precondition(format!("psi must be bounded by 1, sup = {sup}")));
    }
    let g = AnalyticFn::multiply(&AnalyticFn::identity(), psi);
    let g_norm = bloch_norm(&g, grid)?;
    let psi_zero_at_origin = psi.eval(Complex64::new(0.0, 0.0))?.norm() <= ORIGIN_TOL;
    let mut report = ZerosLemmaReport {
        g_norm,
        psi_zero_at_origin,
        branch: ZerosLemmaBranch::Inapplicable,
        near_extremal_zeros: Vec::new(),
        max_seminorm_at_zeros: None,
        note: String::new(),
    };
    if (g_norm - 1.0).abs() > 1e-3 {
        report.note = format!("‖z psi‖_B = {g_norm} is not 1; the hypothesis fails");
        return Ok(report);
    }
    if detect_constant(psi)?.is_some() {
        report.branch = ZerosLemmaBranch::Constant;
        report.note = "psi is constant, so z psi is a rotation".into();
        return Ok(report);
    }
    let zeros = match psi.node() {
        Node::Blaschke { zeros, .. } if !zeros.is_empty() => zeros.clone(),
        _ => {
            report.note = "psi is not a finite Blaschke product; zeros are not listed".into();
            return Ok(report);
        }
    };
    let mut listed = zeros
        .par_iter()
        .map(|a| {
            Ok(ZeroSeminorm {
                zero: *a,
                value: (1.0 - a.norm_sqr()) * psi.eval_with_derivative(*a)?.derivative.norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    listed.sort_by(|a, b| b.value.total_cmp(&a.value));
    report.max_seminorm_at_zeros = listed.first().map(|z| z.value);
    report.branch = ZerosLemmaBranch::BlaschkeZeros;
    report.note = format!("{} zeros listed; finite truncation, no limit is asserted", listed.len());
    report.near_extremal_zeros = listed;
    Ok(report)
}

/// A finite Blaschke product with zeros `0` and `(1 - d_j) e^{i angle}`,
/// `d_1 = 0.1`, `d_{j+1} = growth d_j`, together with the separation product
/// `p_j = prod_{k != j} |(a_j - a_k)/(1 - conj(a_j) a_k)|` at every zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinBlaschkeSpec {
    pub zeros: Vec<ComplexPoint>,
    pub eta: ComplexPoint,
    pub target_beta: f64,
    pub separation_products: Vec<f64>,
}

impl ThinBlaschkeSpec {
    pub fn to_function(&self) -> Result<AnalyticFn> {
        AnalyticFn::blaschke(self.zeros.clone(), self.eta)
    }

    pub fn min_separation(&self) -> f64 {
        self.separation_products.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

impl Serialize for ThinBlaschkeSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let zeros: Vec<[f64; 2]> = self.zeros.iter().map(|z| crate::wire::to_pair(*z)).collect();
        let mut st = s.serialize_struct("ThinBlaschkeSpec", 4)?;
        st.serialize_field("kind", "blaschke")?;
        st.serialize_field("zeros", &zeros)?;
        st.serialize_field("eta", &crate::wire::to_pair(self.eta))?;
        st.serialize_field("separation_products", &self.separation_products)?;
        st.end()
    }
}

/// `count` zeros on one ray. Separation products use the gaps `d = 1 - |a|`
/// directly: `|a_j - a_k| = |d_k - d_j|` and `|1 - a_j a_k| = d_j + d_k - d_j d_k`.
pub fn build_thin_blaschke(count: usize, ray_angle: f64, growth: f64) -> Result<ThinBlaschkeSpec> {
    if count < 2 {
        return Err(BlochError::Domain(format!("a thin Blaschke product needs at least 2 zeros, got {count}")));
    }
    if !(growth > 0.0 && growth < 1.0) {
        return Err(BlochError::Domain(format!("growth must lie in (0, 1), got {growth}")));
    }
    if !ray_angle.is_finite() {
        return Err(BlochError::Domain("ray angle must be finite".into()));
    }
    let gaps: Vec<f64> = std::iter::once(1.0)
        .chain(std::iter::successors(Some(0.1), |d| Some(d * growth)).take(count - 1))
        .collect();
    if gaps.iter().any(|d| !(1.0 - d < 1.0)) {
        return Err(BlochError::Domain(format!(
            "growth {growth} with {count} zeros puts a zero on the circle in floating point"
        )));
    }
    let dir = Complex64::from_polar(1.0, ray_angle);
    let zeros: Vec<ComplexPoint> = gaps.iter().map(|d| dir * (1.0 - d)).collect();
    let separation_products = (0..count)
        .into_par_iter()
        .map(|j| {
            let dj = gaps[j];
            gaps.iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &dk)| (dk - dj).abs() / (dj + dk - dj * dk))
                .product()
        })
        .collect();
    Ok(ThinBlaschkeSpec {
        zeros,
        eta: Complex64::new(1.0, 0.0),
        target_beta: 1.0,
        separation_products,
    })
}
