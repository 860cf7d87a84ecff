//! The measure integrators: `m_n`, `m_{n,max}`, and `m_{n,prod}`.
//!
//! One-variable classic measures are exact through Jensen's formula; other
//! one-variable measures use singularity-aware circle quadrature; higher
//! tori use randomly-shifted quasi-Monte Carlo. `boyd_lawton_estimate`
//! reduces an `n`-torus measure to a single-variable one along the
//! base-`b` vector family.

mod circle;
mod gauss;
mod qmc;
mod roots;

pub use circle::circle_measure;
pub use qmc::{torus_qmc, QmcConfig};

use crate::laurent::{unit_exp, LaurentPoly};
use crate::torushom::{BoydHeight, TorusHom};
use crate::{Error, Result};
use num::complex::Complex64;
use std::fmt;

/// Which measure to compute; `Max` and `Prod` carry the number of input
/// polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    Classic,
    Max(usize),
    Prod(usize),
}

impl MeasureKind {
    pub fn arity(&self) -> usize {
        match self {
            MeasureKind::Classic => 1,
            MeasureKind::Max(k) | MeasureKind::Prod(k) => *k,
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureKind::Classic => write!(f, "classic"),
            MeasureKind::Max(k) => write!(f, "max({k})"),
            MeasureKind::Prod(k) => write!(f, "prod({k})"),
        }
    }
}

/// How a measure value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodTag {
    JensenExact,
    CircleQuadrature,
    TorusQmc,
    BoydLawtonLimit,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MethodTag::JensenExact => "jensen",
            MethodTag::CircleQuadrature => "circle",
            MethodTag::TorusQmc => "qmc",
            MethodTag::BoydLawtonLimit => "boyd-lawton",
        };
        write!(f, "{name}")
    }
}

/// Method parameters actually used, recorded alongside every estimate.
#[derive(Clone, Debug, PartialEq)]
pub enum MethodDetail {
    Jensen {
        degree: usize,
        max_residual: f64,
        root_tol: f64,
    },
    Circle {
        panels: usize,
        panel_tol: f64,
    },
    Qmc {
        samples: u64,
        shifts: u32,
        seed: u64,
        clip: f64,
    },
    BoydLawton {
        b: u64,
        mu: BoydHeight,
        inner: Box<MethodDetail>,
    },
}

/// A computed measure value with an empirical error estimate.
///
/// `error_estimate` is zero only for the exact Jensen route (up to the
/// root-finder tolerance recorded in the detail); elsewhere it is an
/// empirical spread, never a certified bound.
#[derive(Clone, Debug)]
pub struct MeasureEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub method: MethodTag,
    pub detail: MethodDetail,
}

/// Method selector for the [`measure`] dispatcher.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    JensenExact { root_tol: f64 },
    CircleQuadrature { panel_tol: f64 },
    TorusQmc(QmcConfig),
    BoydLawtonLimit { b: u64, root_tol: f64, panel_tol: f64 },
}

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_PANEL_TOL: f64 = 1e-8;
const ROOT_MAX_ITER: u32 = 500;

/// Checks the kind/polynomial pairing and returns the common variable count.
pub(crate) fn validate_inputs(kind: &MeasureKind, polys: &[LaurentPoly]) -> Result<usize> {
    let expected = kind.arity();
    if expected == 0 {
        return Err(Error::InvalidConfig(
            "max/prod measures need at least one polynomial".into(),
        ));
    }
    if polys.len() != expected {
        return Err(Error::KindMismatch {
            kind: kind.to_string(),
            expected,
            got: polys.len(),
        });
    }
    let nvars = polys[0].nvars();
    for p in polys {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if p.nvars() != nvars {
            return Err(Error::DimensionMismatch(format!(
                "polynomials mix {} and {} variables",
                nvars,
                p.nvars()
            )));
        }
    }
    Ok(nvars)
}

/// Pointwise combination of the per-polynomial logs for each kind. With a
/// single polynomial, max and prod reduce to the classic integrand
/// bit-for-bit.
pub(crate) fn combine_logs(kind: &MeasureKind, logs: &[f64]) -> f64 {
    match kind {
        MeasureKind::Classic => logs[0],
        MeasureKind::Max(_) => logs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        MeasureKind::Prod(_) => logs.iter().product(),
    }
}

/// Float-only view of a polynomial for the integrator hot loops.
pub(crate) struct PolyEvaluator {
    terms: Vec<(Vec<i64>, Complex64)>,
}

impl PolyEvaluator {
    pub(crate) fn new(p: &LaurentPoly) -> Self {
        Self {
            terms: p
                .terms()
                .map(|(e, c)| (e.to_vec(), c.to_complex()))
                .collect(),
        }
    }

    /// `log |P|` at the angle vector, clamped below at `floor`.
    pub(crate) fn ln_abs(&self, angles: &[f64], floor: f64) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, coeff) in &self.terms {
            let mut phase = 0.0;
            for (e, t) in exps.iter().zip(angles) {
                phase += *e as f64 * t;
            }
            acc += coeff * unit_exp(phase);
        }
        let norm = acc.norm();
        if norm > 0.0 {
            norm.ln().max(floor)
        } else {
            floor
        }
    }
}

/// Exact single-variable Mahler measure by Jensen's formula:
/// `log|lead| + sum of log|root|` over roots outside the unit disk. Roots
/// are certified to `root_tol`; the estimate's error field is zero.
pub fn mahler1_exact(p: &LaurentPoly, root_tol: f64) -> Result<MeasureEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.nvars() != 1 {
        return Err(Error::InapplicableMethod(format!(
            "method requires 1 variable, got {}",
            p.nvars()
        )));
    }
    if !root_tol.is_finite() || root_tol <= 0.0 {
        return Err(Error::InvalidConfig("root_tol must be positive".into()));
    }
    let (coeffs, _) = p.dense_univariate()?;
    let degree = coeffs.len() - 1;
    let (value, max_residual) = if degree == 0 {
        (coeffs[0].norm().ln(), 0.0)
    } else {
        let (outcome, residual) = roots::find_certified_roots(&coeffs, ROOT_MAX_ITER, root_tol)?;
        let mut value = coeffs[degree].norm().ln();
        for root in &outcome.roots {
            let modulus = root.norm();
            if modulus > 1.0 {
                value += modulus.ln();
            }
        }
        (value, residual)
    };
    Ok(MeasureEstimate {
        value,
        error_estimate: 0.0,
        method: MethodTag::JensenExact,
        detail: MethodDetail::Jensen {
            degree,
            max_residual,
            root_tol,
        },
    })
}

/// Reduces an `n`-variable measure to one variable along the vector family
/// `r = (1, b, ..., b^{n-1})` and evaluates it exactly (classic) or by
/// circle quadrature (max/prod). Substitution that collapses a polynomial
/// to zero signals that `b` is below the non-vanishing bound.
pub fn boyd_lawton_estimate(
    kind: &MeasureKind,
    polys: &[LaurentPoly],
    b: u64,
    root_tol: f64,
    panel_tol: f64,
) -> Result<MeasureEstimate> {
    let nvars = validate_inputs(kind, polys)?;
    if b < 2 {
        return Err(Error::InvalidConfig(
            "family parameter b must be at least 2".into(),
        ));
    }
    let family = TorusHom::base_b_family(nvars, 1, b);
    let substituted: Vec<LaurentPoly> = polys
        .iter()
        .map(|p| p.substitute(&family))
        .collect::<Result<_>>()?;
    if substituted.iter().any(LaurentPoly::is_zero) {
        return Err(Error::ZeroSubstitution { b });
    }
    let mu = family.boyd_height().height;
    let inner = match kind {
        MeasureKind::Classic => mahler1_exact(&substituted[0], root_tol)?,
        MeasureKind::Max(_) | MeasureKind::Prod(_) => {
            circle_measure(kind, &substituted, panel_tol)?
        }
    };
    Ok(MeasureEstimate {
        value: inner.value,
        error_estimate: inner.error_estimate,
        method: MethodTag::BoydLawtonLimit,
        detail: MethodDetail::BoydLawton {
            b,
            mu,
            inner: Box::new(inner.detail),
        },
    })
}

/// Dispatches to the integrator selected by `method`, after checking it
/// applies to the kind and variable count.
pub fn measure(kind: &MeasureKind, polys: &[LaurentPoly], method: &Method) -> Result<MeasureEstimate> {
    let nvars = validate_inputs(kind, polys)?;
    match method {
        Method::JensenExact { root_tol } => {
            if !matches!(kind, MeasureKind::Classic) {
                return Err(Error::InapplicableMethod(
                    "jensen evaluation applies to the classic kind only".into(),
                ));
            }
            if nvars != 1 {
                return Err(Error::InapplicableMethod(format!(
                    "method requires 1 variable, got {nvars}"
                )));
            }
            mahler1_exact(&polys[0], *root_tol)
        }
        Method::CircleQuadrature { panel_tol } => circle_measure(kind, polys, *panel_tol),
        Method::TorusQmc(cfg) => torus_qmc(kind, polys, cfg),
        Method::BoydLawtonLimit {
            b,
            root_tol,
            panel_tol,
        } => boyd_lawton_estimate(kind, polys, *b, *root_tol, *panel_tol),
    }
}
