//! Spectra of multiplication operators, of composition operators induced by
//! isometric symbols, and of their unimodular multiples; resolvent
//! construction and verification.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::analysis::{sunflower_points, DiskGrid};
use crate::error::{BlochError, Result};
use crate::function::{AnalyticFn, ComplexPoint, POLE_TOL, UNIMODULAR_TOL};
use crate::isometry::comp_isometry_check;
use crate::operators::brown_shields_check;

/// Default separation required between `lambda` and the sampled range.
pub const MEMBERSHIP_MARGIN: f64 = 1e-3;

/// `|mu^n - 1|` below this makes the rotation resolvent system singular.
pub const SINGULAR_CUTOFF: f64 = 1e-12;

/// Number of verification points for resolvent identities.
pub const VERIFY_POINTS: usize = 200;

/// Radius of the verification disk.
pub const VERIFY_RADIUS: f64 = 0.99;

const NEWTON_STARTS: usize = 5;
const NEWTON_ITERS: usize = 40;

/// A unimodular `zeta`, declared rational (`e^{2 pi i p/q}`) or irrational
/// (`e^{i angle}`, infinite order). The order is never inferred from floats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RotationWire")]
pub enum RotationSpec {
    /// `0 <= p < q`, `gcd(p, q) = 1`.
    Rational { p: u64, q: u64 },
    Irrational { angle: f64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RotationWire {
    #[serde(default)]
    kind: Option<String>,
    p: Option<i64>,
    q: Option<u64>,
    angle: Option<f64>,
}

impl TryFrom<RotationWire> for RotationSpec {
    type Error = BlochError;

    fn try_from(w: RotationWire) -> Result<Self> {
        match (w.kind.as_deref(), w.p, w.q, w.angle) {
            (None | Some("rotation") | Some("rational"), Some(p), Some(q), None) => Self::rational(p, q),
            (None | Some("rotation") | Some("irrational"), None, None, Some(angle)) => Self::irrational(angle),
            _ => Err(BlochError::InvalidInput(
                "rotation needs either {p, q} or {angle}".into(),
            )),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RotationSpec {
    /// `e^{2 pi i p/q}`, stored with `p` reduced mod `q` and in lowest terms.
    pub fn rational(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(BlochError::InvalidInput("rotation denominator q must be positive".into()));
        }
        let p = p.rem_euclid(q as i64) as u64;
        let g = gcd(p, q);
        Ok(Self::Rational { p: p / g, q: q / g })
    }

    pub fn irrational(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(BlochError::InvalidInput("rotation angle must be finite".into()));
        }
        Ok(Self::Irrational { angle })
    }

    pub fn zeta(&self) -> ComplexPoint {
        self.power(1)
    }

    /// `zeta^k`, with the rational exponent reduced mod `q` before the exponential.
    pub fn power(&self, k: u64) -> ComplexPoint {
        match *self {
            Self::Rational { p, q } => {
                let m = ((p as u128 * k as u128) % q as u128) as f64;
                Complex64::from_polar(1.0, TAU * m / q as f64)
            }
            Self::Irrational { angle } => Complex64::from_polar(1.0, angle * k as f64),
        }
    }

    /// `z -> zeta^k z`
    pub fn map_power(&self, k: u64) -> AnalyticFn {
        AnalyticFn::rotation(self.power(k)).expect("powers of a rotation are unimodular")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => s.serialize_u64(*n),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

pub fn order_of(zeta: &RotationSpec) -> Order {
    match zeta {
        RotationSpec::Rational { q, .. } => Order::Finite(*q),
        RotationSpec::Irrational { .. } => Order::Infinite,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SpectrumResult {
    FiniteSet {
        #[serde(with = "crate::wire::cpx_vec")]
        points: Vec<ComplexPoint>,
    },
    UnitCircle,
    ClosedUnitDisk,
    /// Sampled image of the disk; not a certified region.
    RangeClosure {
        #[serde(with = "crate::wire::cpx_vec")]
        samples: Vec<ComplexPoint>,
        #[serde(with = "crate::wire::cpx_vec")]
        boundary_samples: Vec<ComplexPoint>,
    },
}

impl SpectrumResult {
    /// Largest distance between two points of a finite set or sample cloud.
    pub fn diameter(&self) -> Option<f64> {
        let pts = match self {
            Self::FiniteSet { points } => points,
            Self::RangeClosure { samples, .. } => samples,
            _ => return None,
        };
        Some(
            pts.par_iter()
                .map(|a| pts.iter().map(|b| (a - b).norm()).fold(0.0, f64::max))
                .reduce(|| 0.0, f64::max),
        )
    }
}

/// `sigma(M_psi)` as the image cloud of the grid; the outermost ring is
/// reported separately as the boundary approximation.
pub fn mult_spectrum(psi: &AnalyticFn, grid: &DiskGrid) -> Result<SpectrumResult> {
    if !brown_shields_check(psi, grid)?.boundedness_plausible {
        return Err(BlochError::Precondition("psi does not look like a bounded multiplier".into()));
    }
    let points: Vec<ComplexPoint> = grid.points().collect();
    let samples = points.par_iter().map(|z| psi.eval(*z)).collect::<Result<Vec<_>>>()?;
    let outer = grid.radii.len() - 1;
    let boundary_samples = (0..grid.ring_len(outer))
        .into_par_iter()
        .map(|j| psi.eval(grid.point(outer, j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumResult::RangeClosure {
        samples,
        boundary_samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeDistance {
    pub distance: f64,
    #[serde(with = "crate::wire::cpx")]
    pub witness: ComplexPoint,
}

/// `inf |psi(z) - lambda|` estimated from the grid, then polished by damped
/// Newton steps on `psi(z) = lambda` from the closest samples.
///
/// Every reported distance is attained at an interior point, so it bounds the
/// true infimum from above.
pub fn range_distance(psi: &AnalyticFn, lambda: ComplexPoint, grid: &DiskGrid) -> Result<RangeDistance> {
    let points: Vec<ComplexPoint> = grid.points().collect();
    let dists = points
        .par_iter()
        .map(|z| Ok((psi.eval(*z)? - lambda).norm()))
        .collect::<Result<Vec<f64>>>()?;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| dists[a].total_cmp(&dists[b]));

    let polished = order
        .par_iter()
        .take(NEWTON_STARTS)
        .map(|&k| newton_polish(psi, lambda, points[k], dists[k]))
        .collect::<Result<Vec<(ComplexPoint, f64)>>>()?;
    let (witness, distance) = polished
        .into_iter()
        .fold((points[order[0]], dists[order[0]]), |best, c| if c.1 < best.1 { c } else { best });
    Ok(RangeDistance { distance, witness })
}

fn newton_polish(psi: &AnalyticFn, lambda: ComplexPoint, z0: ComplexPoint, d0: f64) -> Result<(ComplexPoint, f64)> {
    let (mut z, mut d) = (z0, d0);
    for _ in 0..NEWTON_ITERS {
        let pair = psi.eval_with_derivative(z)?;
        if pair.derivative.norm() == 0.0 || d == 0.0 {
            break;
        }
        let step = (pair.value - lambda) / pair.derivative;
        let mut t = 1.0;
        let mut moved = false;
        while t > 1e-6 {
            let cand = z - step * t;
            if cand.norm() < 1.0 - 1e-15 {
                let dc = (psi.eval(cand)? - lambda).norm();
                if dc < d {
                    z = cand;
                    d = dc;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
    }
    Ok((z, d))
}

/// `1/(inner - lambda)`, built only when `lambda` is farther than `margin`
/// (and at least the pole tolerance) from the sampled range of `inner`.
pub fn reciprocal_shift(inner: &AnalyticFn, lambda: ComplexPoint, grid: &DiskGrid, margin: f64) -> Result<AnalyticFn> {
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(BlochError::InvalidInput(format!("lambda must be finite, got {lambda}")));
    }
    let rd = range_distance(inner, lambda, grid)?;
    if rd.distance <= margin.max(POLE_TOL) {
        return Err(BlochError::InvalidInput(format!(
            "lambda = {lambda} is within {} of the range (attained near z = {})",
            rd.distance, rd.witness
        )));
    }
    Ok(AnalyticFn::reciprocal_shift_unchecked(inner, lambda))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub in_spectrum: bool,
    pub distance: f64,
    #[serde(with = "crate::wire::cpx")]
    pub witness: ComplexPoint,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolvent: Option<AnalyticFn>,
    /// `max |(psi - lambda) g - 1|` over the verification points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolvent_residual: Option<f64>,
    pub resolvent_verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolvent_bounded_plausible: Option<bool>,
}

/// Decides `lambda in sigma(M_psi)` up to `margin` and, when it is not,
/// builds and checks the resolvent symbol `1/(psi - lambda)`.
pub fn mult_spectrum_membership(
    psi: &AnalyticFn,
    lambda: ComplexPoint,
    grid: &DiskGrid,
    margin: f64,
) -> Result<MembershipReport> {
    let rd = range_distance(psi, lambda, grid)?;
    let mut report = MembershipReport {
        in_spectrum: rd.distance <= margin,
        distance: rd.distance,
        witness: rd.witness,
        margin,
        resolvent: None,
        resolvent_residual: None,
        resolvent_verified: false,
        resolvent_bounded_plausible: None,
    };
    if report.in_spectrum {
        return Ok(report);
    }
    let g = AnalyticFn::reciprocal_shift_unchecked(psi, lambda);
    let residual = sunflower_points(VERIFY_POINTS, VERIFY_RADIUS)
        .par_iter()
        .map(|z| Ok(((psi.eval(*z)? - lambda) * g.eval(*z)? - 1.0).norm()))
        .collect::<Result<Vec<f64>>>();
    let residual = match residual {
        Ok(r) => r.into_iter().fold(0.0, f64::max),
        Err(BlochError::Pole { .. }) => {
            report.in_spectrum = true;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let bounded = match brown_shields_check(&g, grid) {
        Ok(bs) => bs.boundedness_plausible,
        Err(BlochError::Pole { .. }) => {
            report.in_spectrum = true;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.resolvent_verified = residual <= 1e-10 && bounded;
    report.resolvent_residual = Some(residual);
    report.resolvent_bounded_plausible = Some(bounded);
    report.resolvent = Some(g);
    Ok(report)
}

/// `{zeta^k : k = 1..n}` for finite order `n`, the unit circle otherwise.
pub fn rotation_comp_spectrum(zeta: &RotationSpec) -> SpectrumResult {
    match order_of(zeta) {
        Order::Finite(n) => SpectrumResult::FiniteSet {
            points: (1..=n).map(|k| zeta.power(k)).collect(),
        },
        Order::Infinite => SpectrumResult::UnitCircle,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonRotationSpectrum {
    pub spectrum: SpectrumResult,
    pub note: String,
}

/// `sigma(C_phi)` is the closed disk when `C_phi` is an isometry but `phi`
/// is not a rotation (the operator is not onto).
pub fn nonrotation_comp_spectrum(phi: &AnalyticFn, grid: &DiskGrid) -> Result<NonRotationSpectrum> {
    if let Some(zeta) = phi.as_rotation() {
        return Err(BlochError::Precondition(format!(
            "phi is the rotation z -> ({zeta}) z; use the rotation spectrum"
        )));
    }
    let verdict = comp_isometry_check(phi, grid)?;
    if !verdict.is_isometry {
        return Err(BlochError::Precondition(format!(
            "phi does not induce an isometry ({:?})",
            verdict.reason
        )));
    }
    let note = match phi.structural_zeros() {
        Some(zs) if zs.len() >= 2 => format!(
            "phi has zeros {} and {}; h(z) = z - {} has no preimage under C_phi, so C_phi is not onto",
            zs[0], zs[1], zs[0]
        ),
        _ => "C_phi is an isometry that is not onto; its spectrum fills the closed disk".to_string(),
    };
    Ok(NonRotationSpectrum {
        spectrum: SpectrumResult::ClosedUnitDisk,
        note,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolventMatrix {
    pub matrix: DMatrix<Complex64>,
    pub det: ComplexPoint,
}

impl Serialize for ResolventMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<[f64; 2]>> = self
            .matrix
            .row_iter()
            .map(|r| r.iter().map(|c| crate::wire::to_pair(*c)).collect())
            .collect();
        let mut st = s.serialize_struct("ResolventMatrix", 2)?;
        st.serialize_field("matrix", &rows)?;
        st.serialize_field("det", &crate::wire::to_pair(self.det))?;
        st.end()
    }
}

/// `(-1)^n (mu^n - 1)`
pub fn resolvent_det_formula(n: usize, mu: ComplexPoint) -> ComplexPoint {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * (mu.powu(n as u32) - 1.0)
}

/// `A = P - mu I`, with `P` the cyclic shift (ones on the superdiagonal and
/// in the bottom-left corner). For `n = 1`, `A = [1 - mu]`.
///
/// The determinant comes from an LU factorization and must agree with
/// `(-1)^n (mu^n - 1)` to 1e-10 relative.
pub fn resolvent_matrix(n: usize, mu: ComplexPoint) -> Result<ResolventMatrix> {
    if n == 0 {
        return Err(BlochError::Domain("resolvent matrix order must be at least 1".into()));
    }
    if !(mu.re.is_finite() && mu.im.is_finite()) {
        return Err(BlochError::InvalidInput(format!("mu must be finite, got {mu}")));
    }
    let gap = (mu.powu(n as u32) - 1.0).norm();
    if gap < SINGULAR_CUTOFF {
        return Err(BlochError::SingularMatrix { n, gap });
    }
    let mut a = DMatrix::from_diagonal_element(n, n, -mu);
    for j in 0..n {
        a[(j, (j + 1) % n)] += Complex64::new(1.0, 0.0);
    }
    let det = a.clone().lu().determinant();
    let expected = resolvent_det_formula(n, mu);
    if (det - expected).norm() > 1e-10 * expected.norm() {
        return Err(BlochError::NumericalOverflow(format!(
            "LU determinant {det} disagrees with (-1)^n (mu^n - 1) = {expected}"
        )));
    }
    Ok(ResolventMatrix { matrix: a, det })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolventSolve {
    pub n: u64,
    #[serde(with = "crate::wire::cpx")]
    pub mu: ComplexPoint,
    #[serde(with = "crate::wire::cpx")]
    pub matrix_det: ComplexPoint,
    /// `f = sum_j coefficients[j] * g(zeta^j z)`
    #[serde(with = "crate::wire::cpx_vec")]
    pub coefficients: Vec<ComplexPoint>,
    pub solution: AnalyticFn,
    /// `max |f(zeta z) - mu f(z) - g(z)|` over the verification points.
    pub residual: f64,
}

/// Solves `f(zeta z) - mu f(z) = g(z)` for a rotation of finite order `n`.
///
/// Writing `x_j = f(zeta^{j-1} z)` turns the equation into the cyclic system
/// `A x = b` with `b_j = g(zeta^{j-1} z)`, so `f = x_1` is the first row of
/// `A^{-1}` applied to `b`.
pub fn rotation_resolvent_solve(zeta: &RotationSpec, mu: ComplexPoint, g: &AnalyticFn) -> Result<ResolventSolve> {
    let n = match order_of(zeta) {
        Order::Finite(n) => n,
        Order::Infinite => {
            return Err(BlochError::Precondition(
                "the resolvent system needs a rotation of finite order".into(),
            ))
        }
    };
    let (coefficients, matrix_det) = if n == 1 {
        let gap = (mu - 1.0).norm();
        if gap < SINGULAR_CUTOFF {
            return Err(BlochError::SingularMatrix { n: 1, gap });
        }
        (vec![1.0 / (1.0 - mu)], 1.0 - mu)
    } else {
        let rm = resolvent_matrix(n as usize, mu)?;
        let mut e1 = nalgebra::DVector::<Complex64>::zeros(n as usize);
        e1[0] = Complex64::new(1.0, 0.0);
        let row = rm
            .matrix
            .transpose()
            .lu()
            .solve(&e1)
            .ok_or(BlochError::SingularMatrix { n: n as usize, gap: 0.0 })?;
        (row.iter().copied().collect(), rm.det)
    };

    let solution = coefficients
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let term = if j == 0 {
                g.clone()
            } else {
                AnalyticFn::compose(g, &zeta.map_power(j as u64))
            };
            AnalyticFn::scale(*c, &term)
        })
        .reduce(|acc, t| AnalyticFn::add(&acc, &t))
        .expect("at least one term");

    let phi = zeta.map_power(1);
    let residual = sunflower_points(VERIFY_POINTS, VERIFY_RADIUS)
        .par_iter()
        .map(|z| {
            let lhs = solution.eval(phi.eval(*z)?)? - mu * solution.eval(*z)?;
            Ok((lhs - g.eval(*z)?).norm())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    Ok(ResolventSolve {
        n,
        mu,
        matrix_det,
        coefficients,
        solution,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenReport {
    #[serde(with = "crate::wire::cpx")]
    pub eigenvalue: ComplexPoint,
    pub residual: f64,
}

/// `max |(C_phi z^k)(z) - zeta^k z^k|` over the grid, `phi(z) = zeta z`.
pub fn eigenfunction_check(zeta: &RotationSpec, k: u32, grid: &DiskGrid) -> Result<EigenReport> {
    let f = if k == 0 {
        AnalyticFn::constant(1.0)?
    } else {
        AnalyticFn::monomial(k)?
    };
    let eigenvalue = zeta.power(k as u64);
    let cf = AnalyticFn::compose(&f, &zeta.map_power(1));
    let points: Vec<ComplexPoint> = grid.points().collect();
    let residual = points
        .par_iter()
        .map(|z| Ok((cf.eval(*z)? - eigenvalue * f.eval(*z)?).norm()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(EigenReport { eigenvalue, residual })
}

/// The composition symbol of an isometric weighted composition operator.
#[derive(Debug, Clone)]
pub enum IsometricSymbol {
    Rotation(RotationSpec),
    NonRotation(AnalyticFn),
}

/// `sigma(eta C_phi) = eta * sigma(C_phi)` for unimodular `eta`.
pub fn weighted_iso_spectrum(eta: ComplexPoint, symbol: &IsometricSymbol, grid: &DiskGrid) -> Result<SpectrumResult> {
    if !(eta.norm() - 1.0).abs().le(&UNIMODULAR_TOL) {
        return Err(BlochError::Domain(format!("eta must be unimodular, got |eta| = {}", eta.norm())));
    }
    Ok(match symbol {
        IsometricSymbol::Rotation(zeta) => match rotation_comp_spectrum(zeta) {
            SpectrumResult::FiniteSet { points } => SpectrumResult::FiniteSet {
                points: points.into_iter().map(|p| eta * p).collect(),
            },
            other => other,
        },
        IsometricSymbol::NonRotation(phi) => nonrotation_comp_spectrum(phi, grid)?.spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::build_thin_blaschke;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rotation_spec_normalization() {
        assert_eq!(RotationSpec::rational(2, 8).unwrap(), RotationSpec::Rational { p: 1, q: 4 });
        assert_eq!(RotationSpec::rational(-1, 4).unwrap(), RotationSpec::Rational { p: 3, q: 4 });
        assert_eq!(RotationSpec::rational(0, 7).unwrap(), RotationSpec::Rational { p: 0, q: 1 });
        assert!(RotationSpec::rational(1, 0).is_err());
        assert!(RotationSpec::irrational(f64::NAN).is_err());
        assert_eq!(order_of(&RotationSpec::rational(1, 4).unwrap()), Order::Finite(4));
        assert_eq!(order_of(&RotationSpec::rational(0, 1).unwrap()), Order::Finite(1));
        assert_eq!(order_of(&RotationSpec::irrational(1.0).unwrap()), Order::Infinite);
    }

    #[test]
    fn rotation_spec_json() {
        let r: RotationSpec = serde_json::from_str(r#"{"kind":"rotation","p":1,"q":4}"#).unwrap();
        assert_eq!(r, RotationSpec::Rational { p: 1, q: 4 });
        let r: RotationSpec = serde_json::from_str(r#"{"kind":"rotation","angle":1.0}"#).unwrap();
        assert_eq!(r, RotationSpec::Irrational { angle: 1.0 });
        assert!(serde_json::from_str::<RotationSpec>(r#"{"p":1,"q":4,"angle":1.0}"#).is_err());
        let back: RotationSpec = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn quarter_turn_spectrum() {
        let s = rotation_comp_spectrum(&RotationSpec::rational(1, 4).unwrap());
        let SpectrumResult::FiniteSet { points } = s else { panic!() };
        let expected = [c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0), c(1.0, 0.0)];
        for (p, e) in points.iter().zip(expected) {
            assert!((p - e).norm() < 1e-15);
        }
        assert_eq!(
            rotation_comp_spectrum(&RotationSpec::rational(0, 1).unwrap()),
            SpectrumResult::FiniteSet { points: vec![c(1.0, 0.0)] }
        );
        assert_eq!(
            rotation_comp_spectrum(&RotationSpec::irrational(1.0).unwrap()),
            SpectrumResult::UnitCircle
        );
        let json = serde_json::to_string(&SpectrumResult::UnitCircle).unwrap();
        assert_eq!(json, r#"{"variant":"unit_circle"}"#);
    }

    #[test]
    fn resolvent_matrix_examples() {
        let m = resolvent_matrix(2, c(2.0, 0.0)).unwrap();
        assert!((m.det - c(3.0, 0.0)).norm() < 1e-12);
        let m = resolvent_matrix(4, c(0.0, 0.5)).unwrap();
        assert!((m.det - c(-0.9375, 0.0)).norm() < 1e-12);
        let m = resolvent_matrix(1, c(0.5, 0.0)).unwrap();
        assert!((m.det - c(0.5, 0.0)).norm() < 1e-15);
        assert!(matches!(
            resolvent_matrix(3, c(1.0, 0.0)),
            Err(BlochError::SingularMatrix { n: 3, .. })
        ));
        assert!(resolvent_matrix(0, c(0.5, 0.0)).is_err());
    }

    #[test]
    fn resolvent_solve_examples() {
        let half = RotationSpec::rational(1, 2).unwrap();
        let s = rotation_resolvent_solve(&half, c(3.0, 0.0), &AnalyticFn::identity()).unwrap();
        assert!(s.residual < 1e-12);
        for z in sunflower_points(50, 0.9) {
            assert!((s.solution.eval(z).unwrap() + z / 4.0).norm() < 1e-14);
        }
        let quarter = RotationSpec::rational(1, 4).unwrap();
        let mu = c(0.5, 0.0);
        let s = rotation_resolvent_solve(&quarter, mu, &AnalyticFn::monomial(1).unwrap()).unwrap();
        assert!(s.residual < 1e-10);
        for z in sunflower_points(50, 0.9) {
            assert!((s.solution.eval(z).unwrap() - z / (c(0.0, 1.0) - mu)).norm() < 1e-12);
        }
        for zeta in [RotationSpec::rational(0, 1).unwrap(), RotationSpec::rational(2, 5).unwrap()] {
            let s = rotation_resolvent_solve(&zeta, c(0.2, 0.7), &AnalyticFn::constant(c(1.5, -1.0)).unwrap()).unwrap();
            assert!(s.residual < 1e-12);
            let expect = c(1.5, -1.0) / (1.0 - c(0.2, 0.7));
            assert!((s.solution.eval(c(0.3, 0.1)).unwrap() - expect).norm() < 1e-12);
        }
        assert!(matches!(
            rotation_resolvent_solve(&quarter, c(0.0, 1.0), &AnalyticFn::identity()),
            Err(BlochError::SingularMatrix { .. })
        ));
        assert!(rotation_resolvent_solve(&RotationSpec::irrational(1.0).unwrap(), mu, &AnalyticFn::identity()).is_err());
    }

    #[test]
    fn eigenfunctions() {
        let g = DiskGrid::default();
        let quarter = RotationSpec::rational(1, 4).unwrap();
        let e = eigenfunction_check(&quarter, 0, &g).unwrap();
        assert_eq!((e.eigenvalue, e.residual), (c(1.0, 0.0), 0.0));
        let e = eigenfunction_check(&quarter, 2, &g).unwrap();
        assert!((e.eigenvalue + 1.0).norm() < 1e-15 && e.residual < 1e-14);
        let fifth = RotationSpec::rational(1, 5).unwrap();
        let e = eigenfunction_check(&fifth, 5, &g).unwrap();
        assert_eq!(e.eigenvalue, c(1.0, 0.0));
        assert!(e.residual < 1e-14);
    }

    #[test]
    fn multiplication_spectrum_examples() {
        let g = DiskGrid::default();
        let eta = Complex64::from_polar(1.0, 0.4);
        let s = mult_spectrum(&AnalyticFn::constant(eta).unwrap(), &g).unwrap();
        assert!(s.diameter().unwrap() < 1e-14);

        let r = mult_spectrum_membership(&AnalyticFn::identity(), c(2.0, 0.0), &g, MEMBERSHIP_MARGIN).unwrap();
        assert!(!r.in_spectrum && r.resolvent_verified);
        assert!(r.resolvent_residual.unwrap() <= 1e-10);
        assert!((r.distance - 1.0).abs() < 1e-6);
        let r = mult_spectrum_membership(&AnalyticFn::identity(), c(0.5, 0.0), &g, MEMBERSHIP_MARGIN).unwrap();
        assert!(r.in_spectrum && r.resolvent.is_none());
        let k = AnalyticFn::constant(eta).unwrap();
        assert!(mult_spectrum_membership(&k, eta, &g, MEMBERSHIP_MARGIN).unwrap().in_spectrum);
        assert!(!mult_spectrum_membership(&k, -eta, &g, MEMBERSHIP_MARGIN).unwrap().in_spectrum);
        // off-grid interior values are still found
        let sq = AnalyticFn::monomial(2).unwrap();
        let r = mult_spectrum_membership(&sq, c(0.3217, -0.4411), &g, MEMBERSHIP_MARGIN).unwrap();
        assert!(r.in_spectrum && r.distance < 1e-12);
        assert!(mult_spectrum(&AnalyticFn::log_test(0.0).unwrap(), &g).is_err());
    }

    #[test]
    fn reciprocal_shift_is_checked() {
        let g = DiskGrid::default();
        assert!(reciprocal_shift(&AnalyticFn::identity(), c(0.5, 0.0), &g, 0.0).is_err());
        let f = reciprocal_shift(&AnalyticFn::identity(), c(2.0, 0.0), &g, 0.0).unwrap();
        assert!((f.eval(c(0.5, 0.0)).unwrap() + 1.0 / 1.5).norm() < 1e-15);
    }

    #[test]
    fn weighted_spectra() {
        let g = DiskGrid::default();
        let eta = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let s = weighted_iso_spectrum(eta, &IsometricSymbol::Rotation(RotationSpec::rational(0, 1).unwrap()), &g).unwrap();
        assert_eq!(s, SpectrumResult::FiniteSet { points: vec![eta] });
        let s = weighted_iso_spectrum(c(-1.0, 0.0), &IsometricSymbol::Rotation(RotationSpec::rational(1, 4).unwrap()), &g).unwrap();
        let SpectrumResult::FiniteSet { points } = s else { panic!() };
        for (p, e) in points.iter().zip([c(0.0, -1.0), c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]) {
            assert!((p - e).norm() < 1e-15);
        }
        let s = weighted_iso_spectrum(eta, &IsometricSymbol::Rotation(RotationSpec::irrational(2.0).unwrap()), &g).unwrap();
        assert_eq!(s, SpectrumResult::UnitCircle);
        assert!(weighted_iso_spectrum(c(0.5, 0.0), &IsometricSymbol::Rotation(RotationSpec::rational(0, 1).unwrap()), &g).is_err());
    }

    #[test]
    fn nonrotation_spectrum() {
        let g = DiskGrid::default();
        let thin = build_thin_blaschke(3, 0.0, 2.5e-4).unwrap().to_function().unwrap();
        let s = nonrotation_comp_spectrum(&thin, &g).unwrap();
        assert_eq!(s.spectrum, SpectrumResult::ClosedUnitDisk);
        assert!(s.note.contains("h(z)"));
        let rot = AnalyticFn::rotation(Complex64::from_polar(1.0, 0.3)).unwrap();
        assert!(matches!(nonrotation_comp_spectrum(&rot, &g), Err(BlochError::Precondition(_))));
        let half = AnalyticFn::scale(c(0.5, 0.0), &AnalyticFn::identity());
        assert!(matches!(nonrotation_comp_spectrum(&half, &g), Err(BlochError::Precondition(_))));
    }
}
