use std::path::Path;

use blochkit::analysis::{bloch_seminorm, little_bloch_check, sup_norm, LittleBlochReport};
use blochkit::isometry::{comp_isometry_check, detect_constant, isometry_probe, mult_isometry_check, IsometryProbe, IsometryVerdict};
use blochkit::operators::{composition_bounds, empirical_norm_lower, mult_bounds, wco_bounds, EmpiricalNorm};
use blochkit::spectra::{
    mult_spectrum, mult_spectrum_membership, nonrotation_comp_spectrum, resolvent_matrix, rotation_comp_spectrum,
    rotation_resolvent_solve, weighted_iso_spectrum, IsometricSymbol, MembershipReport, Order, ResolventMatrix,
    ResolventSolve, RotationSpec, SpectrumResult, MEMBERSHIP_MARGIN,
};
use blochkit::suite::{self, CheckResult};
use blochkit::{AnalyticFn, BlochError, ComplexPoint, DiskGrid, NormBounds, OperatorKind, OperatorSpec, SupremumEstimate, TestFamily};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::output::{emit, Report};
use crate::{Command, Common, JobError};

/// Operator input. `phi` stays raw so that a composition spectrum can read
/// it as a declared rotation instead of a function.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorInput {
    kind: OperatorKind,
    #[serde(default)]
    psi: Option<AnalyticFn>,
    #[serde(default)]
    phi: Option<Value>,
    /// Spectrum membership query for multiplication operators.
    #[serde(default, with = "opt_cpx")]
    lambda: Option<ComplexPoint>,
}

mod opt_cpx {
    use blochkit::ComplexPoint;
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ComplexPoint>, D::Error> {
        Ok(Option::<[f64; 2]>::deserialize(d)?.map(|p| ComplexPoint::new(p[0], p[1])))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ResolventInput {
    zeta: RotationSpec,
    mu: [f64; 2],
    g: AnalyticFn,
}

impl OperatorInput {
    fn phi_fn(&self) -> Result<Option<AnalyticFn>, JobError> {
        self.phi
            .as_ref()
            .map(|v| serde_json::from_value(v.clone()).map_err(|e| JobError::Input(format!("phi: {e}"))))
            .transpose()
    }

    /// `phi` as a declared rotation when it is tagged `rotation`, `rational` or `irrational`.
    fn phi_rotation(&self) -> Result<Option<RotationSpec>, JobError> {
        let Some(v) = &self.phi else { return Ok(None) };
        match v.get("kind").and_then(Value::as_str) {
            Some("rotation" | "rational" | "irrational") => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| JobError::Input(format!("phi: {e}"))),
            _ => Ok(None),
        }
    }

    fn operator(&self, grid: &DiskGrid) -> Result<OperatorSpec, JobError> {
        Ok(OperatorSpec::from_parts(self.kind, self.psi.clone(), self.phi_fn()?, grid)?)
    }

    fn reject_lambda(&self, command: Command) -> Result<(), JobError> {
        match self.lambda {
            Some(_) if command != Command::Spectrum || self.kind != OperatorKind::Multiplication => Err(JobError::Input(
                "`lambda` is only accepted by spectrum on a multiplication operator".into(),
            )),
            _ => Ok(()),
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, JobError> {
    let path = path.ok_or_else(|| JobError::Input("this command needs --input <file.json>".into()))?;
    std::fs::read_to_string(path).map_err(|e| JobError::Io(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, JobError> {
    // library validation inside deserialization (|eta| != 1, ...) surfaces here too
    serde_json::from_str(text).map_err(|e| JobError::Input(format!("input: {e}")))
}

#[derive(Serialize)]
struct NormBody {
    bloch_norm: f64,
    value_at_origin: f64,
    seminorm: SupremumEstimate,
    sup_norm: SupremumEstimate,
    little_bloch: LittleBlochReport,
}

#[derive(Serialize)]
struct BoundsBody {
    kind: OperatorKind,
    bounds: NormBounds,
    empirical: EmpiricalNorm,
}

#[derive(Serialize)]
#[serde(untagged)]
enum IsometryBody {
    Verdict(IsometryVerdict),
    Probe { is_isometry: Option<bool>, note: &'static str, probe: IsometryProbe },
}

#[derive(Serialize)]
struct SpectrumBody {
    #[serde(flatten)]
    spectrum: SpectrumResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    membership: Option<MembershipReport>,
}

#[derive(Serialize)]
struct ResolventBody {
    zeta: RotationSpec,
    matrix: ResolventMatrix,
    solve: ResolventSolve,
}

#[derive(Serialize)]
struct SuiteBody {
    passed: bool,
    checks: Vec<CheckResult>,
}

/// Runs one job; `Ok(false)` means the job finished but a check failed.
pub fn run(command: Command, common: &Common) -> Result<bool, JobError> {
    let grid = DiskGrid::geometric(common.rings, common.angles, common.refine)
        .map_err(|e| JobError::Input(format!("grid: {e}")))?;
    let input = match command {
        Command::VerifySuite => None,
        _ => Some(read_input(common.input.as_deref())?),
    };
    let text = input.as_deref().unwrap_or_default();
    let mut passed = true;
    let body = match command {
        Command::Norm => {
            let f: AnalyticFn = parse(text)?;
            to_value(norm(&f, &grid)?)?
        }
        Command::Bounds => {
            let op_in: OperatorInput = parse(text)?;
            op_in.reject_lambda(command)?;
            to_value(bounds(&op_in, &grid)?)?
        }
        Command::CheckIsometry => {
            let op_in: OperatorInput = parse(text)?;
            op_in.reject_lambda(command)?;
            to_value(check_isometry(&op_in, &grid)?)?
        }
        Command::Spectrum => {
            let op_in: OperatorInput = parse(text)?;
            op_in.reject_lambda(command)?;
            to_value(spectrum(&op_in, &grid)?)?
        }
        Command::Resolvent => {
            let r: ResolventInput = parse(text)?;
            to_value(resolvent(&r)?)?
        }
        Command::VerifySuite => {
            let checks = suite::run(&grid, common.seed);
            passed = checks.iter().all(|c| c.passed);
            to_value(SuiteBody { passed, checks })?
        }
    };
    let report = Report {
        command: command.name(),
        version: blochkit::VERSION,
        grid: &grid,
        seed: common.seed,
        body,
    };
    emit(&report, common.format, common.output.as_deref())?;
    Ok(passed)
}

fn to_value<T: Serialize>(body: T) -> Result<Value, JobError> {
    serde_json::to_value(body).map_err(|e| JobError::Io(e.to_string()))
}

fn norm(f: &AnalyticFn, grid: &DiskGrid) -> Result<NormBody, BlochError> {
    let seminorm = bloch_seminorm(f, grid)?;
    let value_at_origin = f.eval(ComplexPoint::new(0.0, 0.0))?.norm();
    Ok(NormBody {
        bloch_norm: value_at_origin + seminorm.value,
        value_at_origin,
        seminorm,
        sup_norm: sup_norm(f, grid)?,
        little_bloch: little_bloch_check(f)?,
    })
}

fn bounds(op_in: &OperatorInput, grid: &DiskGrid) -> Result<BoundsBody, JobError> {
    let op = op_in.operator(grid)?;
    let bounds = match op.kind() {
        OperatorKind::Multiplication => mult_bounds(op.psi(), grid)?,
        OperatorKind::Composition => composition_bounds(op.phi(), grid)?,
        OperatorKind::Weighted => wco_bounds(op.psi(), op.phi(), grid)?,
    };
    let family = TestFamily::default_for(op.phi(), grid)?;
    let empirical = empirical_norm_lower(&op, &family, grid)?;
    Ok(BoundsBody { kind: op.kind(), bounds, empirical })
}

fn check_isometry(op_in: &OperatorInput, grid: &DiskGrid) -> Result<IsometryBody, JobError> {
    let op = op_in.operator(grid)?;
    match op.kind() {
        OperatorKind::Multiplication => Ok(IsometryBody::Verdict(mult_isometry_check(op.psi(), grid)?)),
        OperatorKind::Composition => Ok(IsometryBody::Verdict(comp_isometry_check(op.phi(), grid)?)),
        OperatorKind::Weighted => {
            // eta * C_phi with |eta| = 1 is an isometry exactly when C_phi is
            let unimodular = detect_constant(op.psi())?.filter(|c| (c.norm() - 1.0).abs() <= 1e-12);
            if unimodular.is_some() {
                return Ok(IsometryBody::Verdict(comp_isometry_check(op.phi(), grid)?));
            }
            let family = TestFamily::default_for(op.phi(), grid)?;
            Ok(IsometryBody::Probe {
                is_isometry: None,
                note: "weight is not a unimodular constant; only norm ratios over the test family are reported",
                probe: isometry_probe(&op, &family, grid)?,
            })
        }
    }
}

fn spectrum(op_in: &OperatorInput, grid: &DiskGrid) -> Result<SpectrumBody, JobError> {
    let plain = |spectrum| SpectrumBody { spectrum, note: None, membership: None };
    match op_in.kind {
        OperatorKind::Multiplication => {
            let op = op_in.operator(grid)?;
            let spectrum = mult_spectrum(op.psi(), grid)?;
            let membership = op_in
                .lambda
                .map(|l| mult_spectrum_membership(op.psi(), l, grid, MEMBERSHIP_MARGIN))
                .transpose()?;
            Ok(SpectrumBody { spectrum, note: None, membership })
        }
        OperatorKind::Composition => {
            if op_in.psi.is_some() {
                return Err(JobError::Input("composition operators take no `psi`".into()));
            }
            if let Some(zeta) = op_in.phi_rotation()? {
                return Ok(plain(rotation_comp_spectrum(&zeta)));
            }
            let phi = op_in.phi_fn()?.ok_or_else(|| JobError::Input("composition operator needs `phi`".into()))?;
            let r = nonrotation_comp_spectrum(&phi, grid)?;
            Ok(SpectrumBody { spectrum: r.spectrum, note: Some(r.note), membership: None })
        }
        OperatorKind::Weighted => {
            let psi = op_in.psi.as_ref().ok_or_else(|| JobError::Input("weighted operator needs `psi`".into()))?;
            let eta = detect_constant(psi)?.ok_or_else(|| {
                BlochError::Precondition("weighted spectra need a constant unimodular weight psi = eta".into())
            })?;
            let symbol = match op_in.phi_rotation()? {
                Some(zeta) => IsometricSymbol::Rotation(zeta),
                None => IsometricSymbol::NonRotation(
                    op_in.phi_fn()?.ok_or_else(|| JobError::Input("weighted operator needs `phi`".into()))?,
                ),
            };
            Ok(plain(weighted_iso_spectrum(eta, &symbol, grid)?))
        }
    }
}

fn resolvent(r: &ResolventInput) -> Result<ResolventBody, BlochError> {
    let mu = ComplexPoint::new(r.mu[0], r.mu[1]);
    let n = match blochkit::spectra::order_of(&r.zeta) {
        Order::Finite(n) => n as usize,
        Order::Infinite => {
            return Err(BlochError::Precondition("the resolvent system needs a rotation of finite order".into()))
        }
    };
    Ok(ResolventBody {
        zeta: r.zeta,
        matrix: resolvent_matrix(n, mu)?,
        solve: rotation_resolvent_solve(&r.zeta, mu, &r.g)?,
    })
}
