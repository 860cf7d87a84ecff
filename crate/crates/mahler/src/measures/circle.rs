//! Singularity-aware quadrature of measure integrands on the unit circle.
//!
//! Roots of the input polynomials lying on (within 1e-6 of) the circle are
//! log singularities of the integrand, so the circle is split into panels
//! at those angles. Each panel is integrated by adaptive bisection with a
//! fixed Gauss-Legendre rule; bisection toward a panel endpoint is exactly
//! geometric refinement with ratio 0.5, floored at panel width 1e-12.

use super::gauss;
use super::roots::find_roots;
use super::{combine_logs, MeasureKind, PolyEvaluator};
use crate::laurent::LaurentPoly;
use crate::measures::{MeasureEstimate, MethodDetail, MethodTag};
use crate::Result;

/// Roots this close to the unit circle (in modulus) split the domain.
const ON_CIRCLE_TOL: f64 = 1e-6;
/// Bisection floor; below this width a panel is accepted as-is.
const MIN_PANEL_WIDTH: f64 = 1e-12;
const ROOT_MAX_ITER: u32 = 500;
/// Stand-in for log|P| should a quadrature node hit an exact float zero
/// (roughly the log of the smallest subnormal).
const LOG_FLOOR: f64 = -745.0;

pub fn circle_measure(
    kind: &MeasureKind,
    polys: &[LaurentPoly],
    panel_tol: f64,
) -> Result<MeasureEstimate> {
    let nvars = super::validate_inputs(kind, polys)?;
    if nvars != 1 {
        return Err(crate::Error::InapplicableMethod(format!(
            "circle quadrature requires 1 variable, got {nvars}"
        )));
    }
    if !panel_tol.is_finite() || panel_tol <= 0.0 {
        return Err(crate::Error::InvalidConfig(
            "panel_tol must be positive".into(),
        ));
    }

    let mut angles: Vec<f64> = Vec::new();
    for poly in polys {
        // The removed monomial factor has modulus 1 on the circle.
        let (coeffs, _) = poly.dense_univariate()?;
        if coeffs.len() == 1 {
            continue;
        }
        let outcome = find_roots(&coeffs, ROOT_MAX_ITER)?;
        for root in &outcome.roots {
            if (root.norm() - 1.0).abs() < ON_CIRCLE_TOL {
                angles.push(root.arg().rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU);
            }
        }
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if let (Some(first), Some(last)) = (angles.first().copied(), angles.last().copied()) {
        if angles.len() > 1 && (first + 1.0 - last).abs() < 1e-12 {
            angles.pop();
        }
    }

    let evaluators: Vec<PolyEvaluator> = polys.iter().map(PolyEvaluator::new).collect();
    let mut logs = vec![0.0f64; evaluators.len()];
    let mut integrand = move |t: f64| {
        for (slot, ev) in logs.iter_mut().zip(&evaluators) {
            *slot = ev.ln_abs(&[t], LOG_FLOOR);
        }
        combine_logs(kind, &logs)
    };

    // Panels between consecutive singular angles, wrapping once around the
    // circle; the integrand is periodic, so panels may extend past 1.
    let panels: Vec<(f64, f64)> = if angles.is_empty() {
        vec![(0.0, 1.0)]
    } else if angles.len() == 1 {
        vec![(angles[0], angles[0] + 1.0)]
    } else {
        let mut p: Vec<(f64, f64)> = angles.windows(2).map(|w| (w[0], w[1])).collect();
        p.push((angles[angles.len() - 1], angles[0] + 1.0));
        p
    };

    let rule = gauss::rule(15);
    let mut value = 0.0;
    let mut error = 0.0;
    for &(lo, hi) in &panels {
        let whole = rule.integrate(lo, hi, &mut integrand);
        let (v, e) = bisect(&rule, &mut integrand, lo, hi, whole, panel_tol / (hi - lo));
        value += v;
        error += e;
    }

    Ok(MeasureEstimate {
        value,
        error_estimate: error,
        method: MethodTag::CircleQuadrature,
        detail: MethodDetail::Circle {
            panels: panels.len(),
            panel_tol,
        },
    })
}

/// Adaptive bisection: accept a subinterval when one more refinement moves
/// the estimate by less than its width share of the tolerance, or when the
/// width floor is reached. Returns the panel value and the summed deltas of
/// the accepted leaves (the panel's contribution to the error estimate).
fn bisect(
    rule: &gauss::GaussLegendre,
    f: &mut impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    whole: f64,
    tol_density: f64,
) -> (f64, f64) {
    let mid = 0.5 * (lo + hi);
    let left = rule.integrate(lo, mid, f);
    let right = rule.integrate(mid, hi, f);
    let refined = left + right;
    let delta = (refined - whole).abs();
    let width = hi - lo;
    if delta <= tol_density * width || width <= MIN_PANEL_WIDTH {
        return (refined, delta);
    }
    let (lv, le) = bisect(rule, f, lo, mid, left, tol_density);
    let (rv, re) = bisect(rule, f, mid, hi, right, tol_density);
    (lv + rv, le + re)
}
