//! Integer linear algebra over `Z^n`: unimodular matrices, the
//! last-row subgroup used for conjugation, Hermite normal forms with
//! transforms, saturated kernels of radical functionals, basis completion,
//! and exact interior lattice points of simplicial cones.
//!
//! Everything here is exact. Floating point appears only as a search
//! heuristic inside [`cone_interior_lattice_point`]; every candidate it
//! proposes is accepted or rejected by exact sign computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::radical::{coordinate_signs, RadicalSum};
use crate::scalar::{ExactScalar, Rational, ScalarError, Sign};

/// Errors from lattice computations.
#[derive(Debug, Error)]
pub enum LinearError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix rows must all have length {want}, found one of length {got}")]
    RaggedRows { want: usize, got: usize },
    #[error("matrix has determinant {determinant}, expected +1 or -1")]
    NotUnimodular { determinant: String },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("last row must have {want} entries for dimension {n}, got {got}")]
    LastRowLength { n: usize, want: usize, got: usize },
    #[error("vector does not lie in the lattice spanned by the basis")]
    OutsideLattice,
    #[error("vector is not primitive in the lattice (coordinate gcd {gcd})")]
    NotPrimitive { gcd: String },
    #[error("basis rows are linearly dependent")]
    DependentBasis,
    #[error("cone generators are linearly dependent")]
    DegenerateCone,
    #[error("no interior lattice point found below scale {cap}")]
    ConeSearchExhausted { cap: u64 },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn check_rectangular(rows: &[Vec<BigInt>]) -> Result<usize, LinearError> {
    let want = rows.first().map(|r| r.len()).unwrap_or(0);
    for row in rows {
        if row.len() != want {
            return Err(LinearError::RaggedRows {
                want,
                got: row.len(),
            });
        }
    }
    Ok(want)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn bareiss_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Row Hermite form with transform: returns `(h, u)` with `u * a = h`,
/// `u` unimodular, pivots of `h` positive and entries above each pivot
/// reduced into `[0, pivot)`.
pub(crate) fn hnf_with_transform(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut r = 0usize;
    for col in 0..cols {
        if r == m {
            break;
        }
        loop {
            // Pick the row with the smallest nonzero |entry| as the pivot.
            let pivot = (r..m)
                .filter(|&i| !h[i][col].is_zero())
                .min_by_key(|&i| h[i][col].magnitude().clone());
            let Some(pivot) = pivot else {
                break;
            };
            h.swap(r, pivot);
            u.swap(r, pivot);
            let mut cleared = true;
            for i in r + 1..m {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[r][col]);
                row_subtract(&mut h, i, r, &q);
                row_subtract(&mut u, i, r, &q);
                if !h[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if !h[r][col].is_zero() {
            if h[r][col].is_negative() {
                negate_row(&mut h, r);
                negate_row(&mut u, r);
            }
            for i in 0..r {
                let q = h[i][col].div_floor(&h[r][col]);
                if !q.is_zero() {
                    row_subtract(&mut h, i, r, &q);
                    row_subtract(&mut u, i, r, &q);
                }
            }
            r += 1;
        }
    }
    (h, u)
}

fn row_subtract(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m[target].len() {
        let delta = q * &m[source][j];
        m[target][j] -= delta;
    }
}

fn negate_row(m: &mut [Vec<BigInt>], row: usize) {
    for entry in &mut m[row] {
        *entry = -std::mem::take(entry);
    }
}

/// Canonical Hermite basis of the sublattice generated by the given rows.
/// Two generating sets span the same sublattice exactly when their
/// canonical bases are equal.
pub fn canonical_sublattice_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (h, _) = hnf_with_transform(rows);
    h.into_iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// A square integer matrix with determinant `+1` or `-1`, i.e. an
/// automorphism of the lattice `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl UnimodularMatrix {
    /// Validates squareness and `det = +-1`.
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, LinearError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinearError::ZeroDimension);
        }
        let cols = check_rectangular(&rows)?;
        if cols != n {
            return Err(LinearError::NotSquare { rows: n, cols });
        }
        let det = bareiss_determinant(&rows);
        if det.magnitude() != &BigInt::one().magnitude().clone() {
            return Err(LinearError::NotUnimodular {
                determinant: det.to_string(),
            });
        }
        Ok(UnimodularMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMatrix {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    /// The transvection `I + c * E_{ij}` (`i != j`), an elementary
    /// generator of the automorphism group.
    pub fn elementary_transvection(n: usize, i: usize, j: usize, c: BigInt) -> Self {
        assert!(i < n && j < n && i != j, "transvection needs i != j in range");
        let mut m = UnimodularMatrix::identity(n);
        m.rows[i][j] = c;
        m
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        UnimodularMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect())
                .collect(),
        }
    }

    /// Exact inverse. The Hermite form of a unimodular matrix is the
    /// identity, so the accumulated transform is the inverse.
    pub fn inverse(&self) -> Self {
        let (h, u) = hnf_with_transform(&self.rows);
        debug_assert!(
            h.iter().enumerate().all(|(i, row)| row
                .iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })),
            "Hermite form of a unimodular matrix must be the identity"
        );
        UnimodularMatrix { rows: u }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinearError> {
        let n = self.n();
        if other.n() != n {
            return Err(LinearError::DimensionMismatch {
                left: n,
                right: other.n(),
            });
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| &self.rows[i][k] * &other.rows[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(UnimodularMatrix { rows })
    }

    /// Matrix times column vector.
    pub fn apply(&self, w: &[BigInt]) -> Result<Vec<BigInt>, LinearError> {
        if w.len() != self.n() {
            return Err(LinearError::DimensionMismatch {
                left: self.n(),
                right: w.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// An automorphism that fixes the first `n - 1` coordinates and adds an
/// integer combination of them to the last: identity block on top, last
/// row `(a_1, ..., a_{n-1}, 1)`. These form an abelian subgroup
/// isomorphic to `Z^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LnMatrix {
    n: usize,
    last_row: Vec<BigInt>,
}

impl LnMatrix {
    /// `last_row` holds the `n - 1` off-diagonal entries of the bottom row.
    pub fn new(n: usize, last_row: Vec<BigInt>) -> Result<Self, LinearError> {
        if n == 0 {
            return Err(LinearError::ZeroDimension);
        }
        if last_row.len() != n - 1 {
            return Err(LinearError::LastRowLength {
                n,
                want: n - 1,
                got: last_row.len(),
            });
        }
        Ok(LnMatrix { n, last_row })
    }

    pub fn identity(n: usize) -> Self {
        LnMatrix {
            n,
            last_row: vec![BigInt::zero(); n.saturating_sub(1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn last_row(&self) -> &[BigInt] {
        &self.last_row
    }

    pub fn is_identity(&self) -> bool {
        self.last_row.iter().all(|a| a.is_zero())
    }

    /// Group inverse; the subgroup is abelian and inversion negates the
    /// off-diagonal entries.
    pub fn inverse(&self) -> Self {
        LnMatrix {
            n: self.n,
            last_row: self.last_row.iter().map(|a| -a).collect(),
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self, LinearError> {
        if self.n != other.n {
            return Err(LinearError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(LnMatrix {
            n: self.n,
            last_row: self
                .last_row
                .iter()
                .zip(&other.last_row)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn to_unimodular(&self) -> UnimodularMatrix {
        let mut m = UnimodularMatrix::identity(self.n);
        for (j, a) in self.last_row.iter().enumerate() {
            m.rows[self.n - 1][j] = a.clone();
        }
        m
    }
}

/// Transports a defining functional along the automorphism `a`: the
/// image order of a functional `v` is defined by `(a^{-1})^T v`, so that
/// `<new, a w> = <v, w>` for every lattice vector `w`.
pub fn transform_functional(
    v: &[ExactScalar],
    a: &UnimodularMatrix,
) -> Result<Vec<ExactScalar>, LinearError> {
    if v.len() != a.n() {
        return Err(LinearError::DimensionMismatch {
            left: v.len(),
            right: a.n(),
        });
    }
    let inv = a.inverse();
    // ((a^{-1})^T v)_i = sum_j inv[j][i] * v_j
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = ExactScalar::zero(v[0].basis().clone());
        for (j, vj) in v.iter().enumerate() {
            acc = acc.add(&vj.scale_int(inv.entry(j, i)))?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Saturated kernel in `Z^n` of the listed functionals, as a canonical
/// Hermite basis (empty for a trivial kernel).
///
/// A radical-valued equation `<v, w> = 0` splits into one rational
/// equation per basis radical (the radicals are linearly independent
/// over the rationals), and clearing denominators leaves an integer
/// system whose kernel is computed through a Hermite transform.
pub fn kernel_sublattice(
    vectors: &[Vec<ExactScalar>],
    n: usize,
) -> Result<Vec<Vec<BigInt>>, LinearError> {
    if n == 0 {
        return Err(LinearError::ZeroDimension);
    }
    let mut equations: Vec<Vec<BigInt>> = Vec::new();
    for v in vectors {
        if v.len() != n {
            return Err(LinearError::DimensionMismatch {
                left: v.len(),
                right: n,
            });
        }
        let coords = v[0].basis().count() + 1;
        for k in 0..coords {
            let row_rat: Vec<&Rational> = v.iter().map(|s| &s.coeffs()[k]).collect();
            if row_rat.iter().all(|q| q.is_zero()) {
                continue;
            }
            let lcm = row_rat
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            equations.push(
                row_rat
                    .iter()
                    .map(|q| q.numer() * (&lcm / q.denom()))
                    .collect(),
            );
        }
    }
    if equations.is_empty() {
        return Ok(UnimodularMatrix::identity(n).rows().to_vec());
    }
    // Kernel of E: transpose, reduce, and keep the transform rows that map
    // to zero rows; those rows are a basis of the saturated kernel.
    let transposed: Vec<Vec<BigInt>> = (0..n)
        .map(|i| equations.iter().map(|row| row[i].clone()).collect())
        .collect();
    let (h, u) = hnf_with_transform(&transposed);
    let kernel: Vec<Vec<BigInt>> = h
        .iter()
        .zip(u)
        .filter(|(hrow, _)| hrow.iter().all(|x| x.is_zero()))
        .map(|(_, urow)| urow)
        .collect();
    Ok(canonical_sublattice_basis(&kernel))
}

fn gcd_of(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Solves `x * a = b` over the rationals for a full-row-rank `a`
/// (unknowns `x` are row coordinates). Distinguishes an inconsistent
/// system (`b` outside the rational row span) from dependent rows of `a`.
fn solve_row_coordinates(a: &[Vec<BigInt>], b: &[BigInt]) -> Result<Vec<Rational>, LinearError> {
    let k = a.len();
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    debug_assert_eq!(b.len(), n);
    // Augmented system a^T x^T = b^T: n equations, k unknowns.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..k)
                .map(|j| Rational::from_integer(a[j][i].clone()))
                .collect();
            row.push(Rational::from_integer(b[i].clone()));
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..k {
        let Some(p) = (row..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in &mut m[row] {
            *x *= &inv;
        }
        for i in 0..n {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=k {
                    let delta = &f * &m[row][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    // Inconsistent if a zero row has a nonzero right-hand side.
    for i in row..n {
        if !m[i][k].is_zero() {
            return Err(LinearError::OutsideLattice);
        }
    }
    if pivots.len() < k {
        return Err(LinearError::DependentBasis);
    }
    let mut x = vec![Rational::zero(); k];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][k].clone();
    }
    Ok(x)
}

/// Rewrites `basis` (rows spanning a sublattice) into a new basis of the
/// same sublattice whose final row is `preferred`. Requires `preferred`
/// to be a primitive vector of the sublattice.
pub fn complete_basis_with_last(
    basis: &[Vec<BigInt>],
    preferred: &[BigInt],
) -> Result<Vec<Vec<BigInt>>, LinearError> {
    let k = basis.len();
    if k == 0 {
        return Err(LinearError::ZeroDimension);
    }
    let n = check_rectangular(basis)?;
    if preferred.len() != n {
        return Err(LinearError::DimensionMismatch {
            left: preferred.len(),
            right: n,
        });
    }
    let coords = solve_row_coordinates(basis, preferred)?;
    let mut c: Vec<BigInt> = Vec::with_capacity(k);
    for q in &coords {
        if !q.is_integer() {
            return Err(LinearError::OutsideLattice);
        }
        c.push(q.to_integer());
    }
    let g = gcd_of(&c);
    if !g.is_one() {
        return Err(LinearError::NotPrimitive {
            gcd: g.to_string(),
        });
    }
    // Build a unimodular matrix whose last row is c: reduce c as a column
    // to (1, 0, ..., 0)^T by a transform w, so c is the first column of
    // w^{-1} and the first row of its transpose; then rotate that row to
    // the bottom.
    let column: Vec<Vec<BigInt>> = c.iter().map(|x| vec![x.clone()]).collect();
    let (h, w) = hnf_with_transform(&column);
    debug_assert!(h[0][0].is_one());
    let w = UnimodularMatrix { rows: w };
    let vt = w.inverse().transpose();
    let mut rows: Vec<Vec<BigInt>> = vt.rows().to_vec();
    rows.rotate_left(1);
    debug_assert_eq!(rows[k - 1], c);
    let new_basis: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|urow| {
            (0..n)
                .map(|j| urow.iter().zip(basis).map(|(u, b)| u * &b[j]).sum())
                .collect()
        })
        .collect();
    Ok(new_basis)
}

fn invert_f64(mut m: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| {
            m[a][col]
                .abs()
                .partial_cmp(&m[b][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for i in 0..n {
            if i != col {
                let f = m[i][col];
                if f != 0.0 {
                    for j in 0..n {
                        m[i][j] -= f * m[col][j];
                        inv[i][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Offsets of the sup-norm ball of the given radius, ordered by shell
/// and then lexicographically, so searches are deterministic.
fn sup_ball_offsets(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut current = vec![-radius; n];
    loop {
        out.push(current.clone());
        let mut i = n;
        loop {
            if i == 0 {
                let mut offsets = out;
                offsets.sort_by_key(|d| {
                    (
                        d.iter().map(|x| x.abs()).max().unwrap_or(0),
                        d.clone(),
                    )
                });
                return offsets;
            }
            i -= 1;
            if current[i] < radius {
                current[i] += 1;
                for x in &mut current[i + 1..] {
                    *x = -radius;
                }
                break;
            }
        }
    }
}

/// Finds an integer lattice point in the interior of the simplicial cone
/// spanned by `generators` (as columns): a point all of whose
/// coordinates in the generator basis are strictly positive.
///
/// The search direction is the generator sum scaled by a doubling factor;
/// around each scaled center a small sup-norm ball is scanned in a
/// deterministic order. Floating point only sizes the scan; acceptance is
/// by exact Cramer signs. Termination: the open ball around the scaled
/// sum with radius proportional to the scale stays in the cone, so once
/// the scale beats `sqrt(n)/2` over the inradius the rounded center
/// itself is accepted.
pub fn cone_interior_lattice_point(
    generators: &[Vec<ExactScalar>],
) -> Result<Vec<BigInt>, LinearError> {
    let n = generators.len();
    if n == 0 {
        return Err(LinearError::ZeroDimension);
    }
    for g in generators {
        if g.len() != n {
            return Err(LinearError::DimensionMismatch {
                left: g.len(),
                right: n,
            });
        }
    }
    let cols: Vec<Vec<RadicalSum>> = generators
        .iter()
        .map(|g| g.iter().map(RadicalSum::from_scalar).collect())
        .collect();
    let approx: Vec<Vec<f64>> = generators
        .iter()
        .map(|g| g.iter().map(|s| s.to_f64()).collect())
        .collect();
    // Columns of g_mat are the generators.
    let g_mat: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| approx[j][i]).collect())
        .collect();
    // Inradius around the generator sum: the sum has all coordinates 1 in
    // the generator basis, and coordinate j decays with rate
    // ||row_j(G^{-1})||, so the largest safe ball has radius
    // min_j 1 / ||row_j||. Halve it to absorb float error.
    let rho = match invert_f64(g_mat) {
        Some(inv) => inv
            .iter()
            .map(|row| {
                let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 0.0 {
                    1.0 / norm
                } else {
                    f64::INFINITY
                }
            })
            .fold(f64::INFINITY, f64::min)
            * 0.5,
        None => 0.0,
    };
    let sum: Vec<f64> = (0..n)
        .map(|i| approx.iter().map(|g| g[i]).sum())
        .collect();
    const LAMBDA_CAP: u64 = 1 << 32;
    let mut lambda: u64 = 1;
    while lambda <= LAMBDA_CAP {
        let center: Vec<i64> = sum
            .iter()
            .map(|x| (x * lambda as f64).round() as i64)
            .collect();
        let radius = ((lambda as f64 * rho).ceil() as i64).clamp(1, 4);
        for offset in sup_ball_offsets(n, radius) {
            let z: Vec<BigInt> = center
                .iter()
                .zip(&offset)
                .map(|(c, d)| BigInt::from(c + d))
                .collect();
            match coordinate_signs(&cols, &z) {
                None => return Err(LinearError::DegenerateCone),
                Some(signs) => {
                    if signs.iter().all(|&s| s == Sign::Positive) {
                        return Ok(z);
                    }
                }
            }
        }
        lambda *= 2;
    }
    Err(LinearError::ConeSearchExhausted { cap: LAMBDA_CAP })
}
