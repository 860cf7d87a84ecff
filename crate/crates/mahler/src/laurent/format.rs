//! Canonical text rendering, the inverse of the parser.

use super::{GaussianRational, LaurentPoly};
use num::{BigRational, One, Signed, Zero};
use std::cmp::Ordering;

/// Canonical term order: exponent vectors compared coordinate by coordinate
/// under the exponent ordering `0 < 1 < -1 < 2 < -2 < ...`, largest first.
/// This puts `Z1` before `Z2`, `Z1^-1` before `Z1`, and variables before
/// constants, matching the order the rest of the tooling expects.
pub(crate) fn canonical_order(a: &[i64], b: &[i64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let kx = (x.unsigned_abs(), *x < 0);
        let ky = (y.unsigned_abs(), *y < 0);
        match kx.cmp(&ky) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

pub(super) fn format(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_owned();
    }
    let mut terms: Vec<(&[i64], &GaussianRational)> = p.terms().collect();
    terms.sort_by(|a, b| canonical_order(a.0, b.0));

    let mut out = String::new();
    for (i, (exps, coeff)) in terms.iter().enumerate() {
        let (negative, magnitude) = split_sign(coeff);
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&render_term(exps, &magnitude, negative && i == 0));
    }
    out
}

/// Splits the coefficient into a printable sign and magnitude. Mixed
/// complex coefficients are always rendered with a positive leading sign;
/// their component signs live inside the parentheses.
fn split_sign(c: &GaussianRational) -> (bool, GaussianRational) {
    if c.im().is_zero() {
        if c.re().is_negative() {
            return (true, GaussianRational::new(-c.re().clone(), BigRational::zero()));
        }
    } else if c.re().is_zero() && c.im().is_negative() {
        return (true, GaussianRational::new(BigRational::zero(), -c.im().clone()));
    }
    (false, c.clone())
}

fn render_term(exps: &[i64], magnitude: &GaussianRational, force_coeff: bool) -> String {
    let factors: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, e)| {
            if *e == 1 {
                format!("Z{}", i + 1)
            } else {
                format!("Z{}^{}", i + 1, e)
            }
        })
        .collect();

    if factors.is_empty() {
        return coeff_string(magnitude);
    }
    if magnitude.is_one() && !force_coeff {
        return factors.join("*");
    }
    format!("{}*{}", coeff_string(magnitude), factors.join("*"))
}

fn coeff_string(c: &GaussianRational) -> String {
    let (re, im) = (c.re(), c.im());
    if im.is_zero() {
        ratio_string(re)
    } else if re.is_zero() {
        format!("{}i", ratio_string(im))
    } else {
        let im_sign = if im.is_negative() { '-' } else { '+' };
        format!(
            "({}{}{}i)",
            ratio_string(re),
            im_sign,
            ratio_string(&im.abs())
        )
    }
}

fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
