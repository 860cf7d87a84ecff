//! Convergence experiments along height-controlled families and the
//! closed-form identity verification suite.

mod zeta;

pub use zeta::zeta;

use crate::laurent::LaurentPoly;
use crate::measures::{
    self, circle_measure, mahler1_exact, torus_qmc, MeasureEstimate, MeasureKind, Method,
    QmcConfig, DEFAULT_PANEL_TOL, DEFAULT_ROOT_TOL,
};
use crate::torushom::{BoydHeight, TorusHom};
use crate::{Error, Result};
use std::sync::OnceLock;

/// Which family of homomorphisms drives the limit: vectors (`T -> T^n`)
/// or matrices with a fixed number of source variables (`T^m -> T^n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Vector,
    Matrix { target_vars: usize },
}

/// Parameters for the inner measure computations of an experiment.
#[derive(Clone, Debug)]
pub struct InnerParams {
    pub root_tol: f64,
    pub panel_tol: f64,
    pub qmc: QmcConfig,
}

impl Default for InnerParams {
    fn default() -> Self {
        Self {
            root_tol: DEFAULT_ROOT_TOL,
            panel_tol: DEFAULT_PANEL_TOL,
            qmc: QmcConfig::default(),
        }
    }
}

/// A convergence study: evaluate the substituted measure along the base-`b`
/// family for every `b` in the schedule and compare against a reference.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub kind: MeasureKind,
    pub polys: Vec<LaurentPoly>,
    pub family: Family,
    pub b_schedule: Vec<u64>,
    pub reference: Option<f64>,
    pub params: InnerParams,
}

/// One step of a convergence experiment. `estimate` is `None` when the
/// substitution collapsed a polynomial to zero and the step was skipped
/// (possible only for small `b`).
#[derive(Clone, Debug)]
pub struct ConvergenceRecord {
    pub b: u64,
    pub mu: BoydHeight,
    pub target_vars: usize,
    pub estimate: Option<MeasureEstimate>,
    pub reference: Option<f64>,
    pub deviation: Option<f64>,
}

impl ConvergenceRecord {
    pub fn skipped(&self) -> bool {
        self.estimate.is_none()
    }
}

/// Runs a convergence experiment. Every emitted record's family matrix is
/// re-verified to have Boyd height exactly `Finite(b)`; vector families use
/// the exact or circle inner measures, matrix families integrate by QMC.
pub fn run_convergence(spec: &ExperimentSpec) -> Result<Vec<ConvergenceRecord>> {
    let nvars = measures::validate_inputs(&spec.kind, &spec.polys)?;
    if nvars < 2 {
        return Err(Error::InvalidConfig(
            "convergence experiments need polynomials in at least 2 variables \
             so the family heights are finite"
                .into(),
        ));
    }
    if spec.b_schedule.is_empty() || !spec.b_schedule.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidConfig(
            "b_schedule must be nonempty and strictly increasing".into(),
        ));
    }
    let target_vars = match spec.family {
        Family::Vector => 1,
        Family::Matrix { target_vars } => {
            if target_vars < 2 {
                return Err(Error::InvalidConfig(
                    "matrix families need at least 2 target variables".into(),
                ));
            }
            target_vars
        }
    };

    let mut records = Vec::with_capacity(spec.b_schedule.len());
    for &b in &spec.b_schedule {
        let family = TorusHom::base_b_family(nvars, target_vars, b);
        let mu = family.boyd_height().height;
        assert_eq!(
            mu,
            BoydHeight::Finite(b),
            "family matrix height must certify to Finite(b)"
        );
        let substituted: Vec<LaurentPoly> = spec
            .polys
            .iter()
            .map(|p| p.substitute(&family))
            .collect::<Result<_>>()?;
        if substituted.iter().any(LaurentPoly::is_zero) {
            records.push(ConvergenceRecord {
                b,
                mu,
                target_vars,
                estimate: None,
                reference: spec.reference,
                deviation: None,
            });
            continue;
        }
        let estimate = match spec.family {
            Family::Vector => match spec.kind {
                MeasureKind::Classic => mahler1_exact(&substituted[0], spec.params.root_tol)?,
                MeasureKind::Max(_) | MeasureKind::Prod(_) => {
                    circle_measure(&spec.kind, &substituted, spec.params.panel_tol)?
                }
            },
            Family::Matrix { .. } => torus_qmc(&spec.kind, &substituted, &spec.params.qmc)?,
        };
        let deviation = spec.reference.map(|r| (estimate.value - r).abs());
        records.push(ConvergenceRecord {
            b,
            mu,
            target_vars,
            estimate: Some(estimate),
            reference: spec.reference,
            deviation,
        });
    }
    if records.iter().all(ConvergenceRecord::skipped) {
        return Err(Error::AllStepsSkipped);
    }
    Ok(records)
}

/// The matrix-family specialization of [`run_convergence`].
pub fn matrix_convergence(spec: &ExperimentSpec) -> Result<Vec<ConvergenceRecord>> {
    if !matches!(spec.family, Family::Matrix { .. }) {
        return Err(Error::InvalidConfig(
            "matrix_convergence requires a matrix family".into(),
        ));
    }
    run_convergence(spec)
}

/// Reference constants for the identity suite, computed once at 12 digits.
struct RefConstants {
    zeta2: f64,
    zeta3: f64,
    zeta5: f64,
}

fn constants() -> &'static RefConstants {
    static CELL: OnceLock<RefConstants> = OnceLock::new();
    CELL.get_or_init(|| RefConstants {
        zeta2: zeta(2, 12),
        zeta3: zeta(3, 12),
        zeta5: zeta(5, 12),
    })
}

/// One closed-form identity to verify.
#[derive(Clone, Debug)]
pub struct IdentityCase {
    pub name: &'static str,
    pub kind: MeasureKind,
    pub polys: Vec<LaurentPoly>,
    pub reference: f64,
    pub tolerance: f64,
    pub method: Method,
    /// Quick 1-D cases suitable for a fast verification pass.
    pub fast: bool,
}

/// Result row of the identity suite.
#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub name: String,
    pub computed: f64,
    pub error_estimate: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// The known zeta-value identities, each paired with the evaluation method
/// and tolerance that suit it. References come from [`zeta`], never from
/// hard-coded decimal literals.
pub fn identity_cases() -> Vec<IdentityCase> {
    let c = constants();
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let parse = |t: &str, n: usize| LaurentPoly::parse(t, Some(n)).unwrap();
    vec![
        IdentityCase {
            name: "prod-zm1-cubed",
            kind: MeasureKind::Prod(3),
            polys: vec![parse("Z1-1", 1), parse("Z1-1", 1), parse("Z1-1", 1)],
            reference: -1.5 * c.zeta3,
            tolerance: 1e-4,
            method: Method::CircleQuadrature {
                panel_tol: DEFAULT_PANEL_TOL,
            },
            fast: true,
        },
        IdentityCase {
            name: "classic-linear-3-bl",
            kind: MeasureKind::Classic,
            polys: vec![parse("Z1+Z2+Z3+1", 3)],
            reference: 7.0 / (2.0 * pi2) * c.zeta3,
            tolerance: 1e-2,
            method: Method::BoydLawtonLimit {
                b: 50,
                root_tol: DEFAULT_ROOT_TOL,
                panel_tol: DEFAULT_PANEL_TOL,
            },
            fast: true,
        },
        IdentityCase {
            name: "classic-linear-3-qmc",
            kind: MeasureKind::Classic,
            polys: vec![parse("Z1+Z2+Z3+1", 3)],
            reference: 7.0 / (2.0 * pi2) * c.zeta3,
            tolerance: 2e-2,
            method: Method::TorusQmc(QmcConfig {
                samples: 1 << 22,
                shifts: 8,
                seed: 2001,
                clip: 1e-300,
            }),
            fast: false,
        },
        IdentityCase {
            name: "prod-shift-2-qmc",
            kind: MeasureKind::Prod(3),
            polys: vec![
                parse("Z1+Z2+2", 2),
                parse("Z1+Z2+2", 2),
                parse("Z1+Z2+2", 2),
            ],
            reference: 4.5 * c.zeta2 * std::f64::consts::LN_2 - 3.75 * c.zeta3,
            tolerance: 3e-2,
            method: Method::TorusQmc(QmcConfig {
                samples: 1 << 22,
                shifts: 8,
                seed: 2002,
                clip: 1e-300,
            }),
            fast: false,
        },
        IdentityCase {
            name: "max-4-linear",
            kind: MeasureKind::Max(4),
            polys: vec![
                parse("Z1+1", 4),
                parse("Z2+1", 4),
                parse("Z3+1", 4),
                parse("Z4+1", 4),
            ],
            reference: 9.0 / pi2 * c.zeta3 - 93.0 / (2.0 * pi2 * pi2) * c.zeta5,
            tolerance: 2e-2,
            method: Method::BoydLawtonLimit {
                b: 20,
                root_tol: DEFAULT_ROOT_TOL,
                panel_tol: DEFAULT_PANEL_TOL,
            },
            fast: false,
        },
    ]
}

pub fn run_identity_case(case: &IdentityCase) -> Result<IdentityOutcome> {
    let estimate = measures::measure(&case.kind, &case.polys, &case.method)?;
    let passed = (estimate.value - case.reference).abs() <= case.tolerance;
    Ok(IdentityOutcome {
        name: case.name.to_owned(),
        computed: estimate.value,
        error_estimate: estimate.error_estimate,
        reference: case.reference,
        tolerance: case.tolerance,
        passed,
    })
}

/// Runs every identity case and reports per-case pass/fail; failures are
/// report entries, not errors.
pub fn identity_suite() -> Result<Vec<IdentityOutcome>> {
    identity_cases().iter().map(run_identity_case).collect()
}
