//! Exact sparse Laurent polynomials in `n` variables.
//!
//! A polynomial is a map from exponent vectors in `Z^n` to nonzero
//! Gaussian-rational coefficients. The zero polynomial is the empty map; it
//! is a legal value here (power substitution can produce it) and is rejected
//! only by the measure-level operations.

mod coeff;
mod format;
mod parser;

pub use coeff::GaussianRational;

use crate::torushom::TorusHom;
use crate::{Error, Result};
use num::complex::Complex64;
use num::{BigInt, ToPrimitive};
use std::collections::BTreeMap;

/// A point of the torus `T^n`, stored as angle coordinates.
///
/// The angle vector `t` represents `(e^{2*pi*i*t_1}, ..., e^{2*pi*i*t_n})`.
/// Storing angles rather than complex coordinates keeps `|z_i| = 1` exact
/// and turns the homomorphism action into a mod-1 linear map.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    angles: Vec<f64>,
}

impl TorusPoint {
    /// Builds a torus point, reducing every angle into `[0, 1)`.
    pub fn new(angles: Vec<f64>) -> Self {
        let angles = angles.into_iter().map(|a| a.rem_euclid(1.0)).collect();
        Self { angles }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }
}

/// A sparse Laurent polynomial with exact Gaussian-rational coefficients.
///
/// Invariants: every stored coefficient is nonzero and every exponent vector
/// has length `nvars`. All operations are pure; values can be shared freely
/// across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, GaussianRational>,
}

impl LaurentPoly {
    /// The zero polynomial in `nvars` variables (empty term map).
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "nvars must be positive");
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from raw terms, combining like exponents exactly
    /// and dropping terms whose coefficients cancel to zero.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, GaussianRational)>,
    ) -> Result<Self> {
        assert!(nvars >= 1, "nvars must be positive");
        let mut map: BTreeMap<Vec<i64>, GaussianRational> = BTreeMap::new();
        for (exps, coeff) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector has length {}, polynomial has {} variables",
                    exps.len(),
                    nvars
                )));
            }
            let entry = map.entry(exps).or_insert_with(GaussianRational::zero);
            *entry = entry.clone() + coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { nvars, terms: map })
    }

    /// Convenience constructor for a single monomial `c * Z^e`.
    pub fn monomial(nvars: usize, exps: Vec<i64>, coeff: GaussianRational) -> Result<Self> {
        Self::from_terms(nvars, [(exps, coeff)])
    }

    /// Parses the ASCII polynomial grammar; see the crate README for the
    /// grammar. With `expected_nvars` absent, the variable count is the
    /// largest index mentioned (1 for a constant).
    pub fn parse(text: &str, expected_nvars: Option<usize>) -> Result<Self> {
        parser::parse(text, expected_nvars)
    }

    /// Canonical text form; `parse(format(P))` reproduces `P` exactly.
    pub fn format(&self) -> String {
        format::format(self)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(exponent vector, coefficient)` pairs in map order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Evaluates the polynomial at a torus point in floating point.
    pub fn evaluate(&self, t: &TorusPoint) -> Result<Complex64> {
        if t.dim() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "torus point has dimension {}, polynomial has {} variables",
                t.dim(),
                self.nvars
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, coeff) in &self.terms {
            let mut phase = 0.0;
            for (e, a) in exps.iter().zip(t.angles()) {
                phase += *e as f64 * a;
            }
            acc += coeff.to_complex() * unit_exp(phase);
        }
        Ok(acc)
    }

    /// Power substitution `P^(A)`: each exponent `e` maps to `A^T e`, with
    /// colliding exponents summed exactly. The result lives in `A.cols()`
    /// variables and may be the zero polynomial; callers that cannot accept
    /// zero must check `is_zero`.
    pub fn substitute(&self, a: &TorusHom) -> Result<LaurentPoly> {
        if a.rows() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, polynomial has {} variables",
                a.rows(),
                self.nvars
            )));
        }
        let m = a.cols();
        let mut map: BTreeMap<Vec<i64>, GaussianRational> = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let mut new_exps = Vec::with_capacity(m);
            for j in 0..m {
                let mut acc = BigInt::from(0);
                for (i, e) in exps.iter().enumerate() {
                    acc += a.entry(i, j) * BigInt::from(*e);
                }
                new_exps.push(
                    acc.to_i64()
                        .expect("substituted exponent exceeds the i64 range"),
                );
            }
            let entry = map.entry(new_exps).or_insert_with(GaussianRational::zero);
            *entry = entry.clone() + coeff.clone();
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            nvars: m,
            terms: map,
        })
    }

    /// Factors `P = Z^{-k} * Q` with `k >= 0` componentwise and `Q` an
    /// ordinary polynomial: `k_i = max(0, -min exponent of Z_i)`. On the
    /// torus `|P| = |Q|` pointwise.
    pub fn strip_monomial(&self) -> Result<(Vec<i64>, LaurentPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut min_exps = vec![i64::MAX; self.nvars];
        for exps in self.terms.keys() {
            for (m, e) in min_exps.iter_mut().zip(exps) {
                *m = (*m).min(*e);
            }
        }
        let k: Vec<i64> = min_exps.iter().map(|m| (-m).max(0)).collect();
        let terms = self.terms.iter().map(|(exps, coeff)| {
            let shifted: Vec<i64> = exps.iter().zip(&k).map(|(e, ki)| e + ki).collect();
            (shifted, coeff.clone())
        });
        let q = LaurentPoly::from_terms(self.nvars, terms.collect::<Vec<_>>())?;
        Ok((k, q))
    }

    /// Exact convolution product.
    pub fn multiply(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "factors have {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        let mut map: BTreeMap<Vec<i64>, GaussianRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca.clone() * cb.clone();
                let entry = map.entry(exps).or_insert_with(GaussianRational::zero);
                *entry = entry.clone() + prod;
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: map,
        })
    }

    /// Re-embeds the polynomial into a ring with more variables (the extra
    /// variables simply do not occur). Used to put polynomial lists over a
    /// common variable count.
    pub fn with_nvars(&self, nvars: usize) -> Result<LaurentPoly> {
        if nvars < self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "cannot shrink a {}-variable polynomial to {} variables",
                self.nvars, nvars
            )));
        }
        if nvars == self.nvars {
            return Ok(self.clone());
        }
        let terms = self.terms.iter().map(|(exps, coeff)| {
            let mut e = exps.clone();
            e.resize(nvars, 0);
            (e, coeff.clone())
        });
        LaurentPoly::from_terms(nvars, terms.collect::<Vec<_>>())
    }

    /// Dense coefficient vector for a one-variable polynomial after shifting
    /// the minimum exponent to zero. Returns `(coeffs, shift)` with
    /// `coeffs[0] != 0` and `coeffs.last() != 0`; the shift is the minimum
    /// exponent that was removed (its monomial has modulus 1 on the circle).
    pub fn dense_univariate(&self) -> Result<(Vec<Complex64>, i64)> {
        if self.nvars != 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected 1 variable, got {}",
                self.nvars
            )));
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let min = *self.terms.keys().next().unwrap().first().unwrap();
        let max = *self.terms.keys().next_back().unwrap().first().unwrap();
        let degree = (max - min) as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        for (exps, coeff) in &self.terms {
            coeffs[(exps[0] - min) as usize] = coeff.to_complex();
        }
        Ok((coeffs, min))
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format())
    }
}

/// `e^{2*pi*i*x}` with the argument reduced before trigonometry so that
/// large multiples of the period do not lose phase accuracy.
pub(crate) fn unit_exp(x: f64) -> Complex64 {
    let theta = std::f64::consts::TAU * (x - x.round());
    Complex64::new(theta.cos(), theta.sin())
}
