//! Integer matrices as continuous homomorphisms between tori.
//!
//! An `n x m` integer matrix `A` induces the homomorphism
//! `q_A: T^m -> T^n` acting on angle coordinates as `t -> A t mod 1`.
//! Composition of homomorphisms is matrix multiplication.
//!
//! The Boyd height of `q_A` is the minimum infinity norm of a nonzero
//! integer **row** vector `v` with `v * A = 0`, or infinite when no such
//! annihilator exists (equivalently: `A` has full row rank, equivalently
//! `q_A` is surjective). Note the convention: annihilators multiply from
//! the left as row vectors; part of the literature uses the transposed
//! convention with column vectors on the right.

use crate::laurent::TorusPoint;
use crate::{Error, Result};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;

/// The Boyd height of a homomorphism: a positive integer or infinite.
///
/// The derived order ranks `Finite(v)` by value with `Infinite` above
/// every finite height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoydHeight {
    Finite(u64),
    Infinite,
}

impl BoydHeight {
    pub fn is_infinite(&self) -> bool {
        matches!(self, BoydHeight::Infinite)
    }

    pub fn finite_value(&self) -> Option<u64> {
        match self {
            BoydHeight::Finite(v) => Some(*v),
            BoydHeight::Infinite => None,
        }
    }
}

impl fmt::Display for BoydHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoydHeight::Finite(v) => write!(f, "{v}"),
            BoydHeight::Infinite => write!(f, "infinite"),
        }
    }
}

/// A Boyd height together with a minimal annihilator witness.
///
/// For finite heights the witness `v` satisfies `v * A = 0` exactly and
/// realizes the minimum infinity norm; it is the first hit in a fixed
/// deterministic enumeration order, so identical inputs produce identical
/// witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightResult {
    pub height: BoydHeight,
    pub witness: Option<Vec<i64>>,
}

/// The factorization `r = D * r_plus` of an integer vector into a `+-1`
/// diagonal matrix and a componentwise-nonnegative vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSplit {
    /// Diagonal entries of `D`; `-1` exactly where the input was negative.
    pub diag: Vec<i64>,
    /// Componentwise absolute values of the input.
    pub r_plus: Vec<i64>,
}

impl SignSplit {
    /// The diagonal matrix `D` as a square homomorphism.
    pub fn diag_hom(&self) -> TorusHom {
        let n = self.diag.len();
        let mut entries = vec![BigInt::zero(); n * n];
        for (i, d) in self.diag.iter().enumerate() {
            entries[i * n + i] = BigInt::from(*d);
        }
        TorusHom::new(n, n, entries).expect("square diagonal matrix is well formed")
    }
}

/// Factors `r = D * r_plus`; zero components take `+1` by convention.
pub fn sign_split(r: &[i64]) -> SignSplit {
    SignSplit {
        diag: r.iter().map(|x| if *x < 0 { -1 } else { 1 }).collect(),
        r_plus: r.iter().map(|x| x.abs()).collect(),
    }
}

/// An integer matrix viewed as a continuous homomorphism `T^m -> T^n`
/// (`n` rows, `m` columns). Entries are exact arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusHom {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl TorusHom {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(
                "matrix dimensions must be positive".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|x| BigInt::from(*x)))
            .collect();
        Self::new(r, c, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        Self::new(n, n, entries).expect("identity matrix is well formed")
    }

    /// The column vector `r` as a homomorphism `T -> T^n`.
    pub fn column(r: &[i64]) -> Result<Self> {
        Self::new(r.len(), 1, r.iter().map(|x| BigInt::from(*x)).collect())
    }

    /// The `n x m` matrix whose every column is `(1, b, b^2, ..., b^{n-1})`.
    /// Its Boyd height is exactly `b` when `n >= 2` and infinite for `n = 1`.
    pub fn base_b_family(n: usize, m: usize, b: u64) -> Self {
        assert!(n >= 1 && m >= 1 && b >= 1);
        let mut entries = Vec::with_capacity(n * m);
        let mut power = BigInt::one();
        for _ in 0..n {
            for _ in 0..m {
                entries.push(power.clone());
            }
            power *= BigInt::from(b);
        }
        Self::new(n, m, entries).expect("family matrix is well formed")
    }

    /// Parses the matrix text format: rows separated by `;`, entries by `,`,
    /// e.g. `"1,1;4,4;16,16"` for a 3x2 matrix. Vectors are single-column
    /// matrices such as `"1;4;16"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut offset = 0usize;
        for row_text in text.split(';') {
            let mut row = Vec::new();
            let mut entry_offset = offset;
            for entry_text in row_text.split(',') {
                let trimmed = entry_text.trim();
                let pos = entry_offset + (entry_text.len() - entry_text.trim_start().len());
                let value: BigInt = trimmed.parse().map_err(|_| Error::Parse {
                    position: pos,
                    message: format!("expected an integer matrix entry, got {trimmed:?}"),
                })?;
                row.push(value);
                entry_offset += entry_text.len() + 1;
            }
            rows.push(row);
            offset += row_text.len() + 1;
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse {
                position: 0,
                message: "matrix rows have differing lengths".into(),
            });
        }
        Self::new(rows.len(), cols, rows.into_iter().flatten().collect())
    }

    /// The inverse of [`TorusHom::parse`].
    pub fn format(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    /// Largest absolute entry.
    pub fn norm_inf(&self) -> BigInt {
        self.entries
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Matrix product: `compose(A, B)` represents `q_A . q_B`.
    pub fn compose(&self, other: &TorusHom) -> Result<TorusHom> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.entry(i, k) * other.entry(k, j);
                }
                entries.push(acc);
            }
        }
        TorusHom::new(self.rows, other.cols, entries)
    }

    /// The angle action of `q_A`: component `i` of the image is
    /// `sum_j a_ij t_j mod 1`.
    pub fn apply(&self, t: &TorusPoint) -> Result<TorusPoint> {
        if t.dim() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "torus point has dimension {}, homomorphism expects {}",
                t.dim(),
                self.cols
            )));
        }
        let angles = (0..self.rows)
            .map(|i| {
                let mut acc = 0.0;
                for (j, a) in t.angles().iter().enumerate() {
                    acc += self.entry(i, j).to_f64().unwrap_or(f64::NAN) * a;
                }
                acc
            })
            .collect();
        Ok(TorusPoint::new(angles))
    }

    /// Rank over the rationals, computed by exact fraction-free elimination.
    pub fn integer_rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut rank = 0usize;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|r| !m[*r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Whether `q_A: T^m -> T^n` is onto; equivalent to rank `n`.
    pub fn is_surjective(&self) -> bool {
        self.integer_rank() == self.rows
    }

    /// Exact Boyd height with a minimal annihilator witness.
    ///
    /// Full row rank means no annihilator exists and the height is infinite.
    /// Otherwise exact elimination produces one integer annihilator whose
    /// infinity norm bounds the search, and iterative deepening over
    /// infinity-norm shells returns the first (deterministic) minimal hit.
    pub fn boyd_height(&self) -> HeightResult {
        if self.integer_rank() == self.rows {
            return HeightResult {
                height: BoydHeight::Infinite,
                witness: None,
            };
        }
        let kernel = self
            .rational_left_kernel_vector()
            .expect("rank-deficient matrix has a left kernel vector");
        let ceiling = kernel
            .iter()
            .map(|x| x.abs())
            .max()
            .expect("kernel vector is nonempty")
            .to_u64()
            .expect("annihilator search ceiling exceeds u64");
        let witness = self
            .annihilator_within(ceiling)
            .expect("an annihilator exists within the elimination ceiling");
        let value = witness.iter().map(|x| x.unsigned_abs()).max().unwrap();
        HeightResult {
            height: BoydHeight::Finite(value),
            witness: Some(witness),
        }
    }

    /// Finds a nonzero integer `v` with `v * A = 0` and `||v||_inf <= cap`
    /// of minimal infinity norm, if one exists. Shells are scanned in
    /// increasing norm; within a shell, coordinates run through
    /// `0, 1, -1, 2, -2, ...` lexicographically, which fixes the witness.
    pub fn annihilator_within(&self, cap: u64) -> Option<Vec<i64>> {
        let cap = i64::try_from(cap).expect("shell cap exceeds i64");
        // Column-major copies; the i64 fast path covers every realistic input.
        let small: Option<Vec<Vec<i64>>> = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.entry(i, j).to_i64())
                    .collect::<Option<Vec<i64>>>()
            })
            .collect();
        let big: Vec<Vec<BigInt>> = if small.is_none() {
            (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.entry(i, j).clone()).collect())
                .collect()
        } else {
            Vec::new()
        };

        let annihilates = |v: &[i64]| -> bool {
            if let Some(cols) = &small {
                cols.iter().all(|col| {
                    let mut acc: i128 = 0;
                    for (a, x) in col.iter().zip(v) {
                        acc += *a as i128 * *x as i128;
                    }
                    acc == 0
                })
            } else {
                big.iter().all(|col| {
                    let mut acc = BigInt::zero();
                    for (a, x) in col.iter().zip(v) {
                        acc += a * BigInt::from(*x);
                    }
                    acc.is_zero()
                })
            }
        };

        let mut v = vec![0i64; self.rows];
        for shell in 1..=cap {
            if enumerate_shell(&mut v, 0, shell, false, &annihilates) {
                return Some(v);
            }
        }
        None
    }
}

/// Depth-first walk of the shell `||v||_inf = shell` in the fixed coordinate
/// order `0, 1, -1, 2, -2, ...`. Returns true (leaving the hit in `v`) as
/// soon as the predicate accepts.
fn enumerate_shell(
    v: &mut [i64],
    depth: usize,
    shell: i64,
    on_surface: bool,
    accept: &impl Fn(&[i64]) -> bool,
) -> bool {
    if depth == v.len() {
        return on_surface && accept(v);
    }
    for idx in 0..2 * shell + 1 {
        // 0, 1, -1, 2, -2, ...
        let value = if idx % 2 == 1 { (idx + 1) / 2 } else { -idx / 2 };
        if depth + 1 == v.len() && !on_surface && value.abs() != shell {
            continue;
        }
        v[depth] = value;
        if enumerate_shell(v, depth + 1, shell, on_surface || value.abs() == shell, accept) {
            return true;
        }
    }
    false
}

impl TorusHom {
    /// One nonzero rational left-kernel vector with denominators cleared,
    /// reduced by the gcd of its entries. Requires rank < rows.
    fn rational_left_kernel_vector(&self) -> Option<Vec<BigInt>> {
        let n = self.rows;
        let m = self.cols;
        // Row-reduce the transpose: solutions of A^T x = 0 are the left
        // annihilators of A.
        let mut t: Vec<Vec<BigRational>> = (0..m)
            .map(|j| {
                (0..n)
                    .map(|i| BigRational::from_integer(self.entry(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0usize;
        for col in 0..n {
            let Some(p) = (row..m).find(|r| !t[*r][col].is_zero()) else {
                continue;
            };
            t.swap(row, p);
            let inv = t[row][col].recip();
            for cell in t[row][col..].iter_mut() {
                *cell = &*cell * &inv;
            }
            for r in 0..m {
                if r != row && !t[r][col].is_zero() {
                    let factor = t[r][col].clone();
                    let pivot_row: Vec<BigRational> = t[row][col..].to_vec();
                    for (cell, pivot) in t[r][col..].iter_mut().zip(&pivot_row) {
                        *cell = &*cell - &factor * pivot;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|(_, c)| *c).collect();
        let free = (0..n).find(|c| !pivot_cols.contains(c))?;
        let mut x = vec![BigRational::zero(); n];
        x[free] = BigRational::one();
        for (r, c) in &pivots {
            x[*c] = -t[*r][free].clone();
        }
        // Clear denominators and divide out the content.
        let lcm = x
            .iter()
            .fold(BigInt::one(), |acc, xi| num::integer::lcm(acc, xi.denom().clone()));
        let mut ints: Vec<BigInt> = x
            .iter()
            .map(|xi| xi.numer() * (&lcm / xi.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, xi| num::integer::gcd(acc, xi.clone()));
        if !gcd.is_zero() && !gcd.is_one() {
            for xi in &mut ints {
                *xi = &*xi / &gcd;
            }
        }
        Some(ints)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(rows: &[Vec<i64>]) -> TorusHom {
        TorusHom::from_rows(rows).unwrap()
    }

    /// Independent brute-force oracle: scan the full infinity-norm ball up
    /// to `cap` in increasing norm and return the smallest annihilator norm.
    fn brute_force_height(a: &TorusHom, cap: i64) -> Option<u64> {
        let n = a.rows();
        let mut best: Option<u64> = None;
        let mut v = vec![0i64; n];
        fn walk(
            v: &mut Vec<i64>,
            depth: usize,
            cap: i64,
            a: &TorusHom,
            best: &mut Option<u64>,
        ) {
            if depth == v.len() {
                if v.iter().all(|x| *x == 0) {
                    return;
                }
                let ok = (0..a.cols()).all(|j| {
                    let mut acc = BigInt::zero();
                    for (i, x) in v.iter().enumerate() {
                        acc += a.entry(i, j) * BigInt::from(*x);
                    }
                    acc.is_zero()
                });
                if ok {
                    let norm = v.iter().map(|x| x.unsigned_abs()).max().unwrap();
                    if best.is_none_or(|b| norm < b) {
                        *best = Some(norm);
                    }
                }
                return;
            }
            for x in -cap..=cap {
                v[depth] = x;
                walk(v, depth + 1, cap, a, best);
            }
        }
        walk(&mut v, 0, cap, a, &mut best);
        best
    }

    #[test]
    fn compose_matches_examples() {
        let b = hom(&[vec![1], vec![-1]]);
        assert_eq!(TorusHom::identity(2).compose(&b).unwrap(), b);

        let a = hom(&[vec![1, 1]]);
        assert_eq!(a.compose(&b).unwrap(), hom(&[vec![0]]));

        let a = hom(&[vec![2, 0], vec![0, 3]]);
        let b = hom(&[vec![1], vec![1]]);
        assert_eq!(a.compose(&b).unwrap(), hom(&[vec![2], vec![3]]));
    }

    #[test]
    fn apply_reduces_mod_one() {
        let t = TorusPoint::new(vec![0.25, 0.5]);
        let id = TorusHom::identity(2);
        assert_eq!(id.apply(&t).unwrap().angles(), t.angles());

        let a = hom(&[vec![2]]);
        let image = a.apply(&TorusPoint::new(vec![0.75])).unwrap();
        assert!((image.angles()[0] - 0.5).abs() < 1e-15);

        let a = hom(&[vec![1, 1]]);
        let image = a.apply(&TorusPoint::new(vec![0.5, 0.75])).unwrap();
        assert!((image.angles()[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn rank_and_surjectivity() {
        assert_eq!(TorusHom::identity(3).integer_rank(), 3);
        assert_eq!(hom(&[vec![1, 2], vec![2, 4]]).integer_rank(), 1);
        assert_eq!(TorusHom::base_b_family(3, 5, 7).integer_rank(), 1);

        assert!(TorusHom::identity(2).is_surjective());
        assert!(hom(&[vec![1, 1]]).is_surjective());
        assert!(!hom(&[vec![2], vec![3]]).is_surjective());
    }

    #[test]
    fn height_examples() {
        let r = TorusHom::column(&[1, 2]).unwrap();
        let result = r.boyd_height();
        assert_eq!(result.height, BoydHeight::Finite(2));
        assert_eq!(result.witness.as_deref(), Some(&[2, -1][..]));
        assert_eq!(brute_force_height(&r, 3), Some(2));

        let r = TorusHom::column(&[3, 0]).unwrap();
        assert_eq!(r.boyd_height().height, BoydHeight::Finite(1));

        let a = TorusHom::base_b_family(3, 2, 4);
        assert_eq!(a.boyd_height().height, BoydHeight::Finite(4));

        assert_eq!(TorusHom::identity(2).boyd_height().height, BoydHeight::Infinite);
    }

    #[test]
    fn base_b_family_shapes() {
        assert_eq!(
            TorusHom::base_b_family(2, 1, 5),
            TorusHom::column(&[1, 5]).unwrap()
        );
        assert_eq!(
            TorusHom::base_b_family(3, 2, 2),
            hom(&[vec![1, 1], vec![2, 2], vec![4, 4]])
        );
        let wide = TorusHom::base_b_family(1, 3, 9);
        assert_eq!(wide, hom(&[vec![1, 1, 1]]));
        assert_eq!(wide.boyd_height().height, BoydHeight::Infinite);
    }

    #[test]
    fn sign_split_examples() {
        let s = sign_split(&[-3, 2]);
        assert_eq!(s.diag, vec![-1, 1]);
        assert_eq!(s.r_plus, vec![3, 2]);

        let s = sign_split(&[0, -5]);
        assert_eq!(s.diag, vec![1, -1]);
        assert_eq!(s.r_plus, vec![0, 5]);

        let s = sign_split(&[4, 7]);
        assert_eq!(s.diag, vec![1, 1]);
        assert_eq!(s.r_plus, vec![4, 7]);
        assert_eq!(s.diag_hom(), TorusHom::identity(2));
    }

    #[test]
    fn witnesses_are_valid_annihilators() {
        let cases = [
            TorusHom::column(&[1, 2]).unwrap(),
            TorusHom::column(&[5, -3, 2]).unwrap(),
            TorusHom::base_b_family(3, 2, 3),
            hom(&[vec![2, 4], vec![1, 2], vec![0, 0]]),
        ];
        for a in cases {
            let result = a.boyd_height();
            let BoydHeight::Finite(value) = result.height else {
                panic!("expected finite height");
            };
            let v = result.witness.unwrap();
            assert_eq!(v.iter().map(|x| x.unsigned_abs()).max().unwrap(), value);
            for j in 0..a.cols() {
                let mut acc = BigInt::zero();
                for (i, x) in v.iter().enumerate() {
                    acc += a.entry(i, j) * BigInt::from(*x);
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn zero_component_rule() {
        for r in [vec![0, 7], vec![4, 0, -9], vec![0, 0, 3, 5]] {
            let h = TorusHom::column(&r).unwrap().boyd_height();
            assert_eq!(h.height, BoydHeight::Finite(1));
        }
    }

    #[test]
    fn height_invariant_under_sign_flips() {
        for r in [vec![1, 2], vec![-7, 11], vec![3, -4, 5], vec![-2, -3, -5, 7]] {
            let split = sign_split(&r);
            let h1 = TorusHom::column(&r).unwrap().boyd_height().height;
            let h2 = TorusHom::column(&split.r_plus).unwrap().boyd_height().height;
            assert_eq!(h1, h2);
        }
    }

    #[test]
    fn height_invariant_under_diagonal_sign_matrices() {
        // v -> vD is a norm-preserving bijection of annihilators, so
        // mu(D A) = mu(A) for any +-1 diagonal D.
        let matrices = [
            hom(&[vec![1, 2], vec![2, 4]]),
            hom(&[vec![3, 1], vec![-2, 5], vec![1, 6]]),
            TorusHom::base_b_family(3, 2, 4),
        ];
        let diags: [&[i64]; 3] = [&[-1, 1], &[1, -1], &[-1, -1]];
        for a in &matrices {
            let h = a.boyd_height().height;
            for d in diags {
                if d.len() != a.rows() {
                    continue;
                }
                let flipped = sign_split(d).diag_hom().compose(a).unwrap();
                assert_eq!(flipped.boyd_height().height, h);
            }
        }
        let d3 = TorusHom::from_rows(&[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]).unwrap();
        for a in &matrices {
            if a.rows() == 3 {
                let flipped = d3.compose(a).unwrap();
                assert_eq!(flipped.boyd_height().height, a.boyd_height().height);
            }
        }
    }

    #[test]
    fn infinite_height_iff_full_row_rank() {
        let cases = [
            TorusHom::identity(2),
            hom(&[vec![1, 1]]),
            hom(&[vec![2], vec![3]]),
            hom(&[vec![1, 2, 0], vec![0, 1, 5]]),
            hom(&[vec![1, 2], vec![2, 4]]),
            TorusHom::base_b_family(4, 2, 3),
        ];
        for a in cases {
            let infinite = a.boyd_height().height == BoydHeight::Infinite;
            assert_eq!(infinite, a.integer_rank() == a.rows());
            assert_eq!(infinite, a.is_surjective());
        }
    }

    #[test]
    fn matrix_text_round_trip() {
        let a = TorusHom::parse("1,1;4,4;16,16").unwrap();
        assert_eq!(a, TorusHom::base_b_family(3, 2, 4));
        assert_eq!(a.format(), "1,1;4,4;16,16");

        let v = TorusHom::parse("1;4;16").unwrap();
        assert_eq!(v.rows(), 3);
        assert_eq!(v.cols(), 1);

        assert!(TorusHom::parse("1,x;2,3").is_err());
        assert!(TorusHom::parse("1,2;3").is_err());
    }

    #[test]
    fn heights_cross_checked_against_brute_force() {
        // Low-rank constructions guarantee finite heights.
        let cases = [
            hom(&[vec![2, -1], vec![4, -2]]),
            hom(&[vec![1, 3, 2], vec![2, 6, 4]]),
            hom(&[vec![3], vec![5], vec![7]]),
            hom(&[vec![1, 0], vec![0, 1], vec![1, 1]]),
            hom(&[vec![6, 2], vec![3, 1], vec![-6, -2]]),
        ];
        for a in cases {
            let got = a.boyd_height();
            let BoydHeight::Finite(value) = got.height else {
                panic!("expected finite height");
            };
            assert_eq!(brute_force_height(&a, value as i64), Some(value));
        }
    }
}
