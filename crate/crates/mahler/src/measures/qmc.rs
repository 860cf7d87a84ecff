//! Randomly-shifted Kronecker (rank-1) integration on `[0,1)^n`.
//!
//! The point set is `x_j = frac(j * alpha + shift)` with per-dimension
//! irrational multipliers `alpha_i = frac(sqrt(p))` over distinct small
//! primes chosen by the seed. Each of the independent random shifts gives
//! one estimate; the mean is the reported value and the sample standard
//! deviation over shifts is the (empirical, not certified) error bar.
//!
//! Results are bit-identical for a fixed config regardless of thread
//! count: samples are summed in fixed-size chunks and the chunk sums are
//! reduced in index order.

use super::{combine_logs, validate_inputs, MeasureEstimate, MeasureKind, MethodDetail, MethodTag, PolyEvaluator};
use crate::laurent::LaurentPoly;
use crate::{Error, Result};
use rayon::prelude::*;

/// Parameters of the randomized lattice rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QmcConfig {
    /// Lattice points per shift (at least 1024).
    pub samples: u64,
    /// Independent random shifts (at least 2, for the error bar).
    pub shifts: u32,
    /// Seed for both the multipliers and the shifts.
    pub seed: u64,
    /// Lower clamp applied to every |P_i| before the log; guards exact
    /// zeros hit by a sample. The induced bias is bounded by the measure
    /// of `{|P| < clip}` times `|log clip|`, negligible at the default.
    pub clip: f64,
}

impl Default for QmcConfig {
    fn default() -> Self {
        Self {
            samples: 1 << 16,
            shifts: 8,
            seed: 1,
            clip: 1e-300,
        }
    }
}

const CHUNK: u64 = 8192;

pub fn torus_qmc(
    kind: &MeasureKind,
    polys: &[LaurentPoly],
    cfg: &QmcConfig,
) -> Result<MeasureEstimate> {
    let nvars = validate_inputs(kind, polys)?;
    if cfg.samples < 1024 {
        return Err(Error::InvalidConfig("samples must be at least 1024".into()));
    }
    if cfg.shifts < 2 {
        return Err(Error::InvalidConfig(
            "shifts must be at least 2 to form an error estimate".into(),
        ));
    }
    if !(cfg.clip > 0.0 && cfg.clip < 1.0) {
        return Err(Error::InvalidConfig("clip must lie in (0, 1)".into()));
    }

    let mut rng = SplitMix64::new(cfg.seed);
    let alphas = kronecker_multipliers(nvars, &mut rng)?;
    let shift_vectors: Vec<Vec<f64>> = (0..cfg.shifts)
        .map(|_| (0..nvars).map(|_| rng.next_f64()).collect())
        .collect();
    let ln_clip = cfg.clip.ln();
    let evaluators: Vec<PolyEvaluator> = polys.iter().map(PolyEvaluator::new).collect();

    let mut shift_means = Vec::with_capacity(cfg.shifts as usize);
    for shift in &shift_vectors {
        let chunks = cfg.samples.div_ceil(CHUNK);
        let sums: Vec<f64> = (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let start = chunk * CHUNK;
                let end = (start + CHUNK).min(cfg.samples);
                let mut point = vec![0.0f64; nvars];
                let mut logs = vec![0.0f64; evaluators.len()];
                let mut acc = 0.0;
                for j in start..end {
                    for ((x, alpha), delta) in point.iter_mut().zip(&alphas).zip(shift) {
                        *x = (j as f64).mul_add(*alpha, *delta).fract();
                    }
                    for (slot, ev) in logs.iter_mut().zip(&evaluators) {
                        *slot = ev.ln_abs(&point, ln_clip);
                    }
                    acc += combine_logs(kind, &logs);
                }
                acc
            })
            .collect();
        shift_means.push(sums.iter().sum::<f64>() / cfg.samples as f64);
    }

    let value = shift_means.iter().sum::<f64>() / shift_means.len() as f64;
    let variance = shift_means
        .iter()
        .map(|m| (m - value) * (m - value))
        .sum::<f64>()
        / (shift_means.len() - 1) as f64;

    Ok(MeasureEstimate {
        value,
        error_estimate: variance.sqrt(),
        method: MethodTag::TorusQmc,
        detail: MethodDetail::Qmc {
            samples: cfg.samples,
            shifts: cfg.shifts,
            seed: cfg.seed,
            clip: cfg.clip,
        },
    })
}

const PRIMES: [u64; 64] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
    307, 311,
];

/// Seed-keyed choice of distinct primes; `frac(sqrt(p))` over distinct
/// primes gives jointly irrational, well-distributed multipliers.
fn kronecker_multipliers(n: usize, rng: &mut SplitMix64) -> Result<Vec<f64>> {
    if n > PRIMES.len() {
        return Err(Error::InvalidConfig(format!(
            "lattice generator supports at most {} dimensions",
            PRIMES.len()
        )));
    }
    let mut indices: Vec<usize> = (0..PRIMES.len()).collect();
    for i in (1..indices.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        indices.swap(i, j);
    }
    Ok(indices[..n]
        .iter()
        .map(|&i| (PRIMES[i] as f64).sqrt().fract())
        .collect())
}

pub(crate) struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
