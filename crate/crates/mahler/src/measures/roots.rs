//! Polynomial root finding for the measure integrators.
//!
//! Dense coefficients in ascending order with nonzero constant and leading
//! terms. Linear, quadratic, and binomial inputs take closed forms; the
//! general path is Ehrlich-Aberth simultaneous iteration with initial
//! guesses from the Newton polygon (upper convex hull of `(k, ln|c_k|)`).
//! Every evaluation switches to the reversed polynomial outside the unit
//! disk so that high degrees cannot overflow.

use crate::{Error, Result};
use num::complex::Complex64;

pub struct RootsOutcome {
    pub roots: Vec<Complex64>,
    pub iterations: u32,
}

/// Convergence threshold on the Aberth correction, relative to the root.
const CORRECTION_TOL: f64 = 1e-14;

pub fn find_roots(coeffs: &[Complex64], max_iter: u32) -> Result<RootsOutcome> {
    let degree = coeffs.len() - 1;
    assert!(
        coeffs[degree].norm() > 0.0 && (degree == 0 || coeffs[0].norm() > 0.0),
        "caller must strip zero leading/constant coefficients"
    );
    if degree == 0 {
        return Ok(RootsOutcome {
            roots: Vec::new(),
            iterations: 0,
        });
    }
    if degree == 1 {
        return Ok(RootsOutcome {
            roots: vec![-coeffs[0] / coeffs[1]],
            iterations: 0,
        });
    }
    let nonzero = coeffs.iter().filter(|c| c.norm() > 0.0).count();
    if nonzero == 2 {
        // c_d z^d + c_0: the d-th roots of -c_0/c_d.
        let target = -coeffs[0] / coeffs[degree];
        let radius = target.norm().powf(1.0 / degree as f64);
        let base = target.arg() / degree as f64;
        let step = std::f64::consts::TAU / degree as f64;
        let roots = (0..degree)
            .map(|j| Complex64::from_polar(radius, base + step * j as f64))
            .collect();
        return Ok(RootsOutcome {
            roots,
            iterations: 0,
        });
    }
    if degree == 2 {
        return Ok(RootsOutcome {
            roots: quadratic_roots(coeffs[0], coeffs[1], coeffs[2]),
            iterations: 0,
        });
    }
    aberth(coeffs, max_iter)
}

/// Numerically stable quadratic formula (citardauq for the small root).
fn quadratic_roots(c0: Complex64, c1: Complex64, c2: Complex64) -> Vec<Complex64> {
    let disc = (c1 * c1 - 4.0 * c0 * c2).sqrt();
    // Pick the sign that avoids cancellation in c1 +- disc.
    let q = if (c1 + disc).norm() >= (c1 - disc).norm() {
        -0.5 * (c1 + disc)
    } else {
        -0.5 * (c1 - disc)
    };
    vec![q / c2, c0 / q]
}

struct Evaluator<'a> {
    coeffs: &'a [Complex64],
    reversed: Vec<Complex64>,
    degree: usize,
}

impl<'a> Evaluator<'a> {
    fn new(coeffs: &'a [Complex64]) -> Self {
        Self {
            coeffs,
            reversed: coeffs.iter().rev().copied().collect(),
            degree: coeffs.len() - 1,
        }
    }

    /// Newton ratio `p(z)/p'(z)`, overflow-safe for |z| > 1 through the
    /// identity `p(z) = z^d q(1/z)` with `q` the reversed polynomial:
    /// `p/p' = z q(w) / (d q(w) - w q'(w))` at `w = 1/z`.
    fn newton_ratio(&self, z: Complex64) -> Complex64 {
        if z.norm_sqr() <= 1.0 {
            let (p, dp) = horner_with_derivative(self.coeffs, z);
            p / dp
        } else {
            let w = z.finv();
            let (q, dq) = horner_with_derivative(&self.reversed, w);
            z * q / (self.degree as f64 * q - w * dq)
        }
    }

    /// `ln |p(z)|`, computed on whichever side of the circle is safe.
    fn ln_abs(&self, z: Complex64) -> f64 {
        if z.norm_sqr() <= 1.0 {
            let (p, _) = horner_with_derivative(self.coeffs, z);
            ln_norm(p)
        } else {
            let w = z.finv();
            let (q, _) = horner_with_derivative(&self.reversed, w);
            ln_norm(q) + self.degree as f64 * z.norm().ln()
        }
    }
}

fn ln_norm(v: Complex64) -> f64 {
    let n = v.norm();
    if n == 0.0 {
        f64::NEG_INFINITY
    } else {
        n.ln()
    }
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn aberth(coeffs: &[Complex64], max_iter: u32) -> Result<RootsOutcome> {
    let degree = coeffs.len() - 1;
    let eval = Evaluator::new(coeffs);
    let mut z = initial_guesses(coeffs);
    let mut settled = vec![false; degree];

    for iter in 1..=max_iter {
        let mut all_settled = true;
        for i in 0..degree {
            if settled[i] {
                continue;
            }
            let newton = eval.newton_ratio(z[i]);
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let diff = z[i] - zj;
                    if diff.norm_sqr() > 0.0 {
                        repulsion += diff.finv();
                    }
                }
            }
            let correction = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            let correction = if correction.is_finite() {
                correction
            } else {
                newton
            };
            if correction.is_finite() {
                z[i] -= correction;
                if correction.norm() <= CORRECTION_TOL * (1.0 + z[i].norm()) {
                    settled[i] = true;
                } else {
                    all_settled = false;
                }
            } else {
                // Degenerate configuration: nudge deterministically.
                let kick = Complex64::new(1e-3, 2e-3) * (1.0 + z[i].norm());
                z[i] += kick;
                all_settled = false;
            }
        }
        if all_settled {
            return Ok(RootsOutcome {
                roots: z,
                iterations: iter,
            });
        }
    }
    // Let the caller decide via the certified residual whether the partial
    // result is usable.
    Ok(RootsOutcome {
        roots: z,
        iterations: max_iter,
    })
}

/// Newton-polygon initial guesses: for each upper-hull segment from
/// exponent `k1` to `k2`, place `k2 - k1` guesses on the circle of radius
/// `|c_{k1}/c_{k2}|^{1/(k2-k1)}`, rotated per segment to break symmetry.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let mut guesses = Vec::with_capacity(coeffs.len() - 1);
    for (seg, pair) in hull.windows(2).enumerate() {
        let (k1, y1) = pair[0];
        let (k2, y2) = pair[1];
        let count = k2 - k1;
        let radius = ((y1 - y2) / count as f64).exp();
        let rotation = 0.41 * (seg as f64 + 1.0);
        for j in 0..count {
            let angle =
                std::f64::consts::TAU * (j as f64 + 0.5) / count as f64 + rotation;
            guesses.push(Complex64::from_polar(radius, angle));
        }
    }
    guesses
}

fn cross(a: (usize, f64), b: (usize, f64), c: (usize, f64)) -> f64 {
    (b.0 as f64 - a.0 as f64) * (c.1 - a.1) - (b.1 - a.1) * (c.0 as f64 - a.0 as f64)
}

/// Certified per-root error estimate: `|p(a_i)| / (|lead| prod |a_i - a_j|)`
/// evaluated in log space, maximized over the roots. For well-separated
/// roots this approximates the distance to the nearest true root.
pub fn certified_max_residual(coeffs: &[Complex64], roots: &[Complex64]) -> f64 {
    let degree = roots.len();
    if degree == 0 {
        return 0.0;
    }
    let eval = Evaluator::new(coeffs);
    let ln_lead = coeffs[degree].norm().ln();
    let mut worst = 0.0f64;
    for (i, zi) in roots.iter().enumerate() {
        let ln_p = eval.ln_abs(*zi);
        let mut ln_sep = 0.0;
        let mut coincident = false;
        for (j, zj) in roots.iter().enumerate() {
            if j != i {
                let d = (zi - zj).norm();
                if d == 0.0 {
                    coincident = true;
                    break;
                }
                ln_sep += d.ln();
            }
        }
        let residual = if coincident {
            f64::INFINITY
        } else {
            (ln_p - ln_lead - ln_sep).exp()
        };
        worst = worst.max(residual);
    }
    worst
}

/// Runs the solver and certifies the result against `root_tol`.
pub fn find_certified_roots(
    coeffs: &[Complex64],
    max_iter: u32,
    root_tol: f64,
) -> Result<(RootsOutcome, f64)> {
    let outcome = find_roots(coeffs, max_iter)?;
    let residual = certified_max_residual(coeffs, &outcome.roots);
    if residual > root_tol {
        return Err(Error::RootFinding {
            worst_residual: residual,
            iterations: outcome.iterations,
        });
    }
    Ok((outcome, residual))
}
