//! JSON ingestion format for function trees.
//!
//! Tagged-union objects keyed by `kind`; complex numbers are `[re, im]`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{AnalyticFn, Node};
use crate::analysis::DiskGrid;
use crate::error::{BlochError, Result};
use crate::wire::{from_pair, to_pair};

/// Wire form of [`AnalyticFn`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FnSpec {
    Const {
        #[serde(alias = "value")]
        c: [f64; 2],
    },
    Identity,
    Monomial {
        n: u32,
    },
    Polynomial {
        coeffs: Vec<[f64; 2]>,
    },
    Automorphism {
        eta: [f64; 2],
        a: [f64; 2],
    },
    Blaschke {
        zeros: Vec<[f64; 2]>,
        eta: [f64; 2],
    },
    #[serde(rename = "logtest")]
    LogTest {
        theta: f64,
    },
    /// Input-only shorthand for `z -> zeta z`; either `p/q` (turns) or `angle` (radians).
    Rotation {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        angle: Option<f64>,
    },
    Sum {
        lhs: Box<FnSpec>,
        rhs: Box<FnSpec>,
    },
    Product {
        lhs: Box<FnSpec>,
        rhs: Box<FnSpec>,
    },
    Scale {
        c: [f64; 2],
        inner: Box<FnSpec>,
    },
    Compose {
        outer: Box<FnSpec>,
        inner: Box<FnSpec>,
    },
    ReciprocalShift {
        inner: Box<FnSpec>,
        lambda: [f64; 2],
    },
}

impl From<AnalyticFn> for FnSpec {
    fn from(f: AnalyticFn) -> Self {
        let b = |g: &AnalyticFn| Box::new(FnSpec::from(g.clone()));
        match f.node() {
            Node::Const(c) => FnSpec::Const { c: to_pair(*c) },
            Node::Identity => FnSpec::Identity,
            Node::Monomial(n) => FnSpec::Monomial { n: *n },
            Node::Polynomial(coeffs) => FnSpec::Polynomial {
                coeffs: coeffs.iter().copied().map(to_pair).collect(),
            },
            Node::Automorphism { eta, a } => FnSpec::Automorphism {
                eta: to_pair(*eta),
                a: to_pair(*a),
            },
            Node::Blaschke { zeros, eta } => FnSpec::Blaschke {
                zeros: zeros.iter().copied().map(to_pair).collect(),
                eta: to_pair(*eta),
            },
            Node::LogTest { theta } => FnSpec::LogTest { theta: *theta },
            Node::Sum(l, r) => FnSpec::Sum { lhs: b(l), rhs: b(r) },
            Node::Product(l, r) => FnSpec::Product { lhs: b(l), rhs: b(r) },
            Node::Scale(c, inner) => FnSpec::Scale {
                c: to_pair(*c),
                inner: b(inner),
            },
            Node::Compose { outer, inner } => FnSpec::Compose {
                outer: b(outer),
                inner: b(inner),
            },
            Node::ReciprocalShift { inner, lambda } => FnSpec::ReciprocalShift {
                inner: b(inner),
                lambda: to_pair(*lambda),
            },
        }
    }
}

impl TryFrom<FnSpec> for AnalyticFn {
    type Error = BlochError;

    fn try_from(spec: FnSpec) -> Result<Self> {
        let build = |s: Box<FnSpec>| AnalyticFn::try_from(*s);
        Ok(match spec {
            FnSpec::Const { c } => AnalyticFn::constant(from_pair(c))?,
            FnSpec::Identity => AnalyticFn::identity(),
            FnSpec::Monomial { n } => AnalyticFn::monomial(n)?,
            FnSpec::Polynomial { coeffs } => AnalyticFn::polynomial(coeffs.into_iter().map(from_pair).collect())?,
            FnSpec::Automorphism { eta, a } => AnalyticFn::automorphism(from_pair(eta), from_pair(a))?,
            FnSpec::Blaschke { zeros, eta } => {
                AnalyticFn::blaschke(zeros.into_iter().map(from_pair).collect(), from_pair(eta))?
            }
            FnSpec::LogTest { theta } => AnalyticFn::log_test(theta)?,
            FnSpec::Rotation { p, q, angle } => AnalyticFn::rotation(rotation_factor(p, q, angle)?)?,
            FnSpec::Sum { lhs, rhs } => AnalyticFn::add(&build(lhs)?, &build(rhs)?),
            FnSpec::Product { lhs, rhs } => AnalyticFn::multiply(&build(lhs)?, &build(rhs)?),
            FnSpec::Scale { c, inner } => {
                let c = from_pair(c);
                if !(c.re.is_finite() && c.im.is_finite()) {
                    return Err(BlochError::InvalidInput("scale factor must be finite".into()));
                }
                AnalyticFn::scale(c, &build(inner)?)
            }
            FnSpec::Compose { outer, inner } => AnalyticFn::compose(&build(outer)?, &build(inner)?),
            FnSpec::ReciprocalShift { inner, lambda } => {
                crate::spectra::reciprocal_shift(&build(inner)?, from_pair(lambda), &DiskGrid::default(), 0.0)?
            }
        })
    }
}

fn rotation_factor(p: Option<i64>, q: Option<u64>, angle: Option<f64>) -> Result<Complex64> {
    match (p, q, angle) {
        (Some(p), Some(q), None) if q > 0 => Ok(Complex64::from_polar(1.0, TAU * p as f64 / q as f64)),
        (None, None, Some(angle)) if angle.is_finite() => Ok(Complex64::from_polar(1.0, angle)),
        _ => Err(BlochError::InvalidInput(
            "rotation needs either p and q (q > 0) or a finite angle".into(),
        )),
    }
}

impl AnalyticFn {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function trees always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| BlochError::InvalidInput(e.to_string()))
    }
}
