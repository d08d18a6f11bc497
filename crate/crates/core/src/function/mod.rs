//! Analytic functions on the unit disk as immutable expression trees.
//!
//! Every tree evaluates exactly at a point and carries an exact first
//! derivative obtained by structural differentiation (sum, product, chain and
//! quotient rules). Trees are never simplified, so a function always
//! evaluates along the same arithmetic path it was built with.

mod json;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::DiskGrid;
use crate::error::{BlochError, Result};

pub use json::FnSpec;

/// Points of the disk and values in the plane.
pub type ComplexPoint = Complex64;

/// Tolerance for "modulus one" on rotation factors and unimodular constants.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// A `ReciprocalShift` denominator smaller than this is a pole.
pub const POLE_TOL: f64 = 1e-14;

/// Value and exact first derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPair {
    pub value: ComplexPoint,
    pub derivative: ComplexPoint,
}

impl EvalPair {
    fn new(value: ComplexPoint, derivative: ComplexPoint) -> Self {
        Self { value, derivative }
    }
}

/// One node of the expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(ComplexPoint),
    Identity,
    Monomial(u32),
    /// Coefficients in increasing degree.
    Polynomial(Vec<ComplexPoint>),
    /// `z -> eta (a - z) / (1 - conj(a) z)`
    Automorphism { eta: ComplexPoint, a: ComplexPoint },
    /// `z -> eta * prod_k (a_k - z) / (1 - conj(a_k) z)`
    Blaschke { zeros: Vec<ComplexPoint>, eta: ComplexPoint },
    /// `z -> 1/2 Log((1 + e^{-i theta} z) / (1 - e^{-i theta} z))`
    LogTest { theta: f64 },
    Sum(AnalyticFn, AnalyticFn),
    Product(AnalyticFn, AnalyticFn),
    Scale(ComplexPoint, AnalyticFn),
    Compose { outer: AnalyticFn, inner: AnalyticFn },
    /// `z -> 1 / (inner(z) - lambda)`
    ReciprocalShift { inner: AnalyticFn, lambda: ComplexPoint },
}

/// An analytic function on the disk. Cheap to clone; shares its tree.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FnSpec", into = "FnSpec")]
pub struct AnalyticFn(Arc<Node>);

fn finite(c: ComplexPoint, what: &str) -> Result<ComplexPoint> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(BlochError::InvalidInput(format!("{what} must be finite, got {c}")))
    }
}

fn unimodular(eta: ComplexPoint, what: &str) -> Result<ComplexPoint> {
    finite(eta, what)?;
    if (eta.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(BlochError::InvalidInput(format!(
            "{what} must have modulus 1 (got |{what}| = {})",
            eta.norm()
        )));
    }
    Ok(eta)
}

fn interior(a: ComplexPoint, what: &str) -> Result<ComplexPoint> {
    finite(a, what)?;
    if a.norm() >= 1.0 {
        return Err(BlochError::InvalidInput(format!(
            "{what} must lie in the open unit disk (got |{what}| = {})",
            a.norm()
        )));
    }
    Ok(a)
}

fn check_disk(z: ComplexPoint) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm_sqr() >= 1.0 {
        return Err(BlochError::Domain(format!("point {z} is not in the open unit disk")));
    }
    Ok(())
}

impl AnalyticFn {
    fn wrap(node: Node) -> Self {
        AnalyticFn(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(c: impl Into<ComplexPoint>) -> Result<Self> {
        Ok(Self::wrap(Node::Const(finite(c.into(), "constant")?)))
    }

    pub fn identity() -> Self {
        Self::wrap(Node::Identity)
    }

    pub fn monomial(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(BlochError::InvalidInput("monomial degree must be positive".into()));
        }
        Ok(Self::wrap(Node::Monomial(n)))
    }

    pub fn polynomial(coeffs: Vec<ComplexPoint>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(BlochError::InvalidInput("polynomial needs at least one coefficient".into()));
        }
        for c in &coeffs {
            finite(*c, "polynomial coefficient")?;
        }
        Ok(Self::wrap(Node::Polynomial(coeffs)))
    }

    pub fn automorphism(eta: ComplexPoint, a: ComplexPoint) -> Result<Self> {
        let eta = unimodular(eta, "eta")?;
        let a = interior(a, "a")?;
        Ok(Self::wrap(Node::Automorphism { eta, a }))
    }

    pub fn blaschke(zeros: Vec<ComplexPoint>, eta: ComplexPoint) -> Result<Self> {
        let eta = unimodular(eta, "eta")?;
        for a in &zeros {
            interior(*a, "Blaschke zero")?;
        }
        Ok(Self::wrap(Node::Blaschke { zeros, eta }))
    }

    pub fn log_test(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(BlochError::InvalidInput("theta must be finite".into()));
        }
        Ok(Self::wrap(Node::LogTest { theta }))
    }

    /// `z -> zeta z` with `|zeta| = 1`.
    pub fn rotation(zeta: ComplexPoint) -> Result<Self> {
        let zeta = unimodular(zeta, "zeta")?;
        Ok(Self::scale(zeta, &Self::identity()))
    }

    pub fn add(f: &AnalyticFn, g: &AnalyticFn) -> Self {
        Self::wrap(Node::Sum(f.clone(), g.clone()))
    }

    pub fn multiply(f: &AnalyticFn, g: &AnalyticFn) -> Self {
        Self::wrap(Node::Product(f.clone(), g.clone()))
    }

    pub fn scale(c: ComplexPoint, f: &AnalyticFn) -> Self {
        Self::wrap(Node::Scale(c, f.clone()))
    }

    /// `outer ∘ inner`
    pub fn compose(outer: &AnalyticFn, inner: &AnalyticFn) -> Self {
        Self::wrap(Node::Compose {
            outer: outer.clone(),
            inner: inner.clone(),
        })
    }

    /// `f^n` as an n-fold product tree (`n >= 1`).
    pub fn power(f: &AnalyticFn, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(BlochError::InvalidInput("power must be at least 1".into()));
        }
        let mut acc = f.clone();
        for _ in 1..n {
            acc = Self::multiply(f, &acc);
        }
        Ok(acc)
    }

    /// Unchecked constructor; callers must have separated `lambda` from the
    /// range of `inner` (see `spectra::reciprocal_shift`).
    pub(crate) fn reciprocal_shift_unchecked(inner: &AnalyticFn, lambda: ComplexPoint) -> Self {
        Self::wrap(Node::ReciprocalShift {
            inner: inner.clone(),
            lambda,
        })
    }

    /// Value at `z`. Fails with `Domain` unless `|z| < 1`.
    pub fn eval(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        check_disk(z)?;
        self.value_at(z)
    }

    /// Value and exact derivative at `z`.
    pub fn eval_with_derivative(&self, z: ComplexPoint) -> Result<EvalPair> {
        check_disk(z)?;
        self.pair_at(z)
    }

    fn value_at(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match self.node() {
            Node::Const(c) => *c,
            Node::Identity => z,
            Node::Monomial(n) => z.powu(*n),
            Node::Polynomial(coeffs) => coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c),
            Node::Automorphism { eta, a } => eta * (a - z) / (one - a.conj() * z),
            Node::Blaschke { zeros, eta } => zeros
                .iter()
                .fold(*eta, |acc, a| acc * ((a - z) / (one - a.conj() * z))),
            Node::LogTest { theta } => {
                let w = Complex64::from_polar(1.0, -theta) * z;
                log_ratio(w)?
            }
            Node::Sum(f, g) => f.value_at(z)? + g.value_at(z)?,
            Node::Product(f, g) => f.value_at(z)? * g.value_at(z)?,
            Node::Scale(c, f) => c * f.value_at(z)?,
            Node::Compose { outer, inner } => {
                let w = inner.value_at(z)?;
                check_composition(w)?;
                outer.value_at(w)?
            }
            Node::ReciprocalShift { inner, lambda } => {
                let v = inner.value_at(z)?;
                one / shifted(v, *lambda)?
            }
        })
    }

    fn pair_at(&self, z: ComplexPoint) -> Result<EvalPair> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Ok(match self.node() {
            Node::Const(c) => EvalPair::new(*c, zero),
            Node::Identity => EvalPair::new(z, one),
            Node::Monomial(n) => EvalPair::new(z.powu(*n), f64::from(*n) * z.powu(n - 1)),
            Node::Polynomial(coeffs) => {
                // Horner on (p, p').
                let (p, dp) = coeffs.iter().rev().fold((zero, zero), |(p, dp), c| (p * z + c, dp * z + p));
                EvalPair::new(p, dp)
            }
            Node::Automorphism { eta, a } => {
                let den = one - a.conj() * z;
                let value = eta * (a - z) / den;
                let derivative = eta * (a.norm_sqr() - 1.0) / (den * den);
                EvalPair::new(value, derivative)
            }
            Node::Blaschke { zeros, eta } => {
                let (p, dp) = zeros.iter().fold((*eta, zero), |(p, dp), a| {
                    let den = one - a.conj() * z;
                    let factor = (a - z) / den;
                    let dfactor = (a.norm_sqr() - 1.0) / (den * den);
                    (p * factor, dp * factor + p * dfactor)
                });
                EvalPair::new(p, dp)
            }
            Node::LogTest { theta } => {
                let rot = Complex64::from_polar(1.0, -theta);
                let w = rot * z;
                EvalPair::new(log_ratio(w)?, rot / (one - w * w))
            }
            Node::Sum(f, g) => {
                let (a, b) = (f.pair_at(z)?, g.pair_at(z)?);
                EvalPair::new(a.value + b.value, a.derivative + b.derivative)
            }
            Node::Product(f, g) => {
                let (a, b) = (f.pair_at(z)?, g.pair_at(z)?);
                EvalPair::new(a.value * b.value, a.derivative * b.value + a.value * b.derivative)
            }
            Node::Scale(c, f) => {
                let a = f.pair_at(z)?;
                EvalPair::new(c * a.value, c * a.derivative)
            }
            Node::Compose { outer, inner } => {
                let i = inner.pair_at(z)?;
                check_composition(i.value)?;
                let o = outer.pair_at(i.value)?;
                EvalPair::new(o.value, o.derivative * i.derivative)
            }
            Node::ReciprocalShift { inner, lambda } => {
                let i = inner.pair_at(z)?;
                let d = shifted(i.value, *lambda)?;
                EvalPair::new(one / d, -i.derivative / (d * d))
            }
        })
    }

    /// The constant value when the tree is constant by construction.
    pub fn constant_value(&self) -> Option<ComplexPoint> {
        match self.node() {
            Node::Const(c) => Some(*c),
            Node::Polynomial(coeffs) => coeffs[1..]
                .iter()
                .all(|c| *c == Complex64::new(0.0, 0.0))
                .then_some(coeffs[0]),
            Node::Blaschke { zeros, eta } if zeros.is_empty() => Some(*eta),
            Node::Sum(f, g) => Some(f.constant_value()? + g.constant_value()?),
            Node::Product(f, g) => Some(f.constant_value()? * g.constant_value()?),
            Node::Scale(c, f) => Some(c * f.constant_value()?),
            Node::Compose { outer, inner } => match outer.constant_value() {
                Some(c) => Some(c),
                None => {
                    let w = inner.constant_value()?;
                    outer.eval(w).ok()
                }
            },
            Node::ReciprocalShift { inner, lambda } => {
                let d = inner.constant_value()? - lambda;
                (d.norm() > POLE_TOL).then(|| 1.0 / d)
            }
            _ => None,
        }
    }

    /// Inner in the structural sense: a product/composition of automorphisms,
    /// finite Blaschke products, monomials and unimodular constants. Such a
    /// function has sup norm exactly one.
    pub fn is_inner(&self) -> bool {
        match self.node() {
            Node::Identity | Node::Monomial(_) | Node::Automorphism { .. } | Node::Blaschke { .. } => true,
            Node::Const(c) => (c.norm() - 1.0).abs() <= UNIMODULAR_TOL,
            Node::Product(f, g) => f.is_inner() && g.is_inner(),
            Node::Scale(c, f) => (c.norm() - 1.0).abs() <= UNIMODULAR_TOL && f.is_inner(),
            Node::Compose { outer, inner } => outer.is_inner() && inner.is_inner(),
            _ => false,
        }
    }

    /// `‖f‖_∞` when it follows from the tree structure alone.
    pub fn exact_sup_norm(&self) -> Option<f64> {
        if self.is_inner() {
            return Some(1.0);
        }
        match self.node() {
            Node::Const(c) => Some(c.norm()),
            Node::Scale(c, f) => Some(c.norm() * f.exact_sup_norm()?),
            _ => None,
        }
    }

    /// `Some(zeta)` when the tree is structurally `z -> zeta z` with `|zeta| = 1`.
    pub fn as_rotation(&self) -> Option<ComplexPoint> {
        let zeta = match self.node() {
            Node::Identity | Node::Monomial(1) => Complex64::new(1.0, 0.0),
            Node::Scale(c, f) => c * f.as_rotation()?,
            Node::Polynomial(coeffs) => {
                let zero = Complex64::new(0.0, 0.0);
                if coeffs.len() < 2 || coeffs[0] != zero || coeffs[2..].iter().any(|c| *c != zero) {
                    return None;
                }
                coeffs[1]
            }
            Node::Automorphism { eta, a } if a.norm() == 0.0 => -eta,
            Node::Blaschke { zeros, eta } if zeros.len() == 1 && zeros[0].norm() == 0.0 => -eta,
            _ => return None,
        };
        ((zeta.norm() - 1.0).abs() <= UNIMODULAR_TOL).then_some(zeta)
    }

    /// Zeros known from the top-level node (Blaschke products and automorphisms).
    pub fn structural_zeros(&self) -> Option<Vec<ComplexPoint>> {
        match self.node() {
            Node::Blaschke { zeros, .. } => Some(zeros.clone()),
            Node::Automorphism { a, .. } => Some(vec![*a]),
            _ => None,
        }
    }
}

fn log_ratio(w: ComplexPoint) -> Result<ComplexPoint> {
    let one = Complex64::new(1.0, 0.0);
    let q = (one + w) / (one - w);
    // Re q > 0 for |w| < 1, so the principal branch never sees its cut.
    if !(q.re > 0.0) {
        return Err(BlochError::Domain(format!(
            "log test argument {q} left the right half-plane"
        )));
    }
    Ok(0.5 * q.ln())
}

fn check_composition(w: ComplexPoint) -> Result<()> {
    if !(w.re.is_finite() && w.im.is_finite()) || w.norm_sqr() >= 1.0 {
        return Err(BlochError::Domain(format!(
            "inner function value {w} left the open unit disk"
        )));
    }
    Ok(())
}

fn shifted(v: ComplexPoint, lambda: ComplexPoint) -> Result<ComplexPoint> {
    let d = v - lambda;
    if d.norm() < POLE_TOL {
        return Err(BlochError::Pole {
            value: v,
            lambda,
            tol: POLE_TOL,
        });
    }
    Ok(d)
}

/// Free-function forms of the combinators.
pub fn add(f: &AnalyticFn, g: &AnalyticFn) -> AnalyticFn {
    AnalyticFn::add(f, g)
}

pub fn multiply(f: &AnalyticFn, g: &AnalyticFn) -> AnalyticFn {
    AnalyticFn::multiply(f, g)
}

pub fn scale(c: ComplexPoint, f: &AnalyticFn) -> AnalyticFn {
    AnalyticFn::scale(c, f)
}

pub fn compose(outer: &AnalyticFn, inner: &AnalyticFn) -> AnalyticFn {
    AnalyticFn::compose(outer, inner)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfMapReport {
    pub max_modulus: f64,
    #[serde(with = "crate::wire::cpx")]
    pub witness: ComplexPoint,
    pub ok: bool,
}

/// Checks `max |phi| < 1` over the grid. Evaluation failures count as
/// leaving the disk.
pub fn is_self_map(phi: &AnalyticFn, grid: &DiskGrid) -> SelfMapReport {
    let mut report = SelfMapReport {
        max_modulus: f64::NEG_INFINITY,
        witness: Complex64::new(0.0, 0.0),
        ok: false,
    };
    for z in grid.points() {
        let m = phi.eval(z).map(|w| w.norm()).unwrap_or(f64::INFINITY);
        let m = if m.is_nan() { f64::INFINITY } else { m };
        if m > report.max_modulus {
            report.max_modulus = m;
            report.witness = z;
        }
    }
    report.ok = report.max_modulus < 1.0;
    report
}

impl fmt::Debug for AnalyticFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnalyticFn({self})")
    }
}

struct C(ComplexPoint);

impl fmt::Display for C {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else {
            write!(f, "({}{:+}i)", self.0.re, self.0.im)
        }
    }
}

impl fmt::Display for AnalyticFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(c) => write!(f, "{}", C(*c)),
            Node::Identity => write!(f, "z"),
            Node::Monomial(n) => write!(f, "z^{n}"),
            Node::Polynomial(coeffs) => {
                write!(f, "poly[")?;
                for (k, c) in coeffs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", C(*c))?;
                }
                write!(f, "]")
            }
            Node::Automorphism { eta, a } => write!(f, "aut(eta={}, a={})", C(*eta), C(*a)),
            Node::Blaschke { zeros, eta } => {
                write!(f, "blaschke(eta={}, zeros=[", C(*eta))?;
                for (k, a) in zeros.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", C(*a))?;
                }
                write!(f, "])")
            }
            Node::LogTest { theta } => write!(f, "logtest({theta})"),
            Node::Sum(a, b) => write!(f, "({a} + {b})"),
            Node::Product(a, b) => write!(f, "({a} * {b})"),
            Node::Scale(c, a) => write!(f, "{}*{a}", C(*c)),
            Node::Compose { outer, inner } => write!(f, "{outer}∘{inner}"),
            Node::ReciprocalShift { inner, lambda } => write!(f, "1/({inner} - {})", C(*lambda)),
        }
    }
}
