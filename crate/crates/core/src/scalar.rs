//! Exact scalars: the rational span of `1, sqrt(d_1), ..., sqrt(d_r)` for a
//! fixed list of distinct squarefree radicands, with certified sign
//! determination by interval refinement.
//!
//! The span is closed under addition and rational scaling but not under
//! multiplication (`sqrt(2) * sqrt(3)` leaves it), so no general product is
//! offered. Everything downstream is linear in the defining data, which is
//! exactly what these scalars support: addition, rational scaling, and
//! integer-weighted inner products.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number; every coefficient in the crate is
/// one of these, stored normalized (coprime, positive denominator).
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("scalar bases differ: {left} vs {right}")]
    BasisMismatch { left: String, right: String },
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid radicand {value}: {reason}")]
    InvalidRadicand { value: u64, reason: String },
    #[error("coefficient list has {got} entries, basis needs {want}")]
    CoefficientCount { got: usize, want: usize },
    #[error("cannot parse rational from {text:?}")]
    ParseRational { text: String },
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn of_rational(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        };
        f.write_str(word)
    }
}

/// Strictly increasing list of squarefree integers `>= 2`. Fixing one of
/// these fixes the scalar basis `{1, sqrt(d_1), ..., sqrt(d_r)}`; distinct
/// squarefree radicands make that basis linearly independent over the
/// rationals, so a scalar is zero exactly when all its coefficients are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Radicands {
    values: Vec<u64>,
}

fn is_squarefree(mut d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d % p == 0 {
            d /= p;
            if d % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl Radicands {
    pub fn new(values: Vec<u64>) -> Result<Arc<Self>, ScalarError> {
        for (i, &d) in values.iter().enumerate() {
            if d < 2 {
                return Err(ScalarError::InvalidRadicand {
                    value: d,
                    reason: "must be at least 2".into(),
                });
            }
            if !is_squarefree(d) {
                return Err(ScalarError::InvalidRadicand {
                    value: d,
                    reason: "must be squarefree".into(),
                });
            }
            if i > 0 && values[i - 1] >= d {
                return Err(ScalarError::InvalidRadicand {
                    value: d,
                    reason: "radicands must be strictly increasing".into(),
                });
            }
        }
        Ok(Arc::new(Radicands { values }))
    }

    /// The purely rational basis `{1}`.
    pub fn rationals() -> Arc<Self> {
        Arc::new(Radicands { values: Vec::new() })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of radicands `r`; scalars over this basis carry `r + 1`
    /// coefficients.
    pub fn count(&self) -> usize {
        self.values.len()
    }

    /// Smallest common refinement of two bases (sorted union).
    pub fn merge(a: &Arc<Self>, b: &Arc<Self>) -> Arc<Self> {
        if a == b {
            return Arc::clone(a);
        }
        let mut merged: Vec<u64> = a.values.iter().chain(b.values.iter()).copied().collect();
        merged.sort_unstable();
        merged.dedup();
        Arc::new(Radicands { values: merged })
    }
}

impl fmt::Display for Radicands {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(")?;
        for (i, d) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "sqrt {d}")?;
        }
        write!(f, ")")
    }
}

/// Dyadic enclosure of `sqrt(m)` with denominator `2^bits`: returns
/// `(lo, hi)` with `lo < sqrt(m) < hi` and `hi - lo = 2^-bits`. Both bounds
/// are strict because `m` is never a perfect square where this is used.
pub(crate) fn sqrt_enclosure(m: &BigUint, bits: u32) -> (Rational, Rational) {
    let shifted = m << (2 * bits as usize);
    let s = shifted.sqrt();
    let denom = BigInt::one() << bits as usize;
    let lo = Rational::new(BigInt::from(s.clone()), denom.clone());
    let hi = Rational::new(BigInt::from(s + BigUint::one()), denom);
    (lo, hi)
}

/// One enclosure round in machine words, for integer coefficients `n_i`.
/// With `s = isqrt(d << 2 bits)` the scaled value `2^bits (n_0 + sum n_i
/// sqrt(d_i))` lies strictly between the sums obtained by substituting
/// `s` or `s + 1` for each `sqrt(d_i) 2^bits` (oriented by the sign of
/// `n_i`), so a bound clear of zero decides the sign. Returns the outer
/// `None` when the inputs exceed the machine-word budget, and the inner
/// `None` when this precision is inconclusive.
fn enclosure_sign_machine(
    ints: &[BigInt],
    radicands: &[u64],
    bits: u32,
) -> Option<Option<Sign>> {
    if bits > 32 {
        return None;
    }
    let unit = 1i128 << bits;
    let mut lo = i128::from(ints[0].to_i64()?).checked_mul(unit)?;
    let mut hi = lo;
    for (n, &d) in ints[1..].iter().zip(radicands) {
        if n.is_zero() {
            continue;
        }
        let n = i128::from(n.to_i64()?);
        let s = (u128::from(d) << (2 * bits)).sqrt() as i128;
        let (down, up) = if n > 0 { (s, s + 1) } else { (s + 1, s) };
        lo = lo.checked_add(n.checked_mul(down)?)?;
        hi = hi.checked_add(n.checked_mul(up)?)?;
    }
    Some(if lo > 0 {
        Some(Sign::Positive)
    } else if hi < 0 {
        Some(Sign::Negative)
    } else {
        None
    })
}

/// The same enclosure round in arbitrary precision, for coefficients or
/// precisions beyond what `enclosure_sign_machine` accepts.
fn enclosure_sign_big(ints: &[BigInt], radicands: &[u64], bits: u32) -> Option<Sign> {
    let mut lo: BigInt = &ints[0] << bits;
    let mut hi = lo.clone();
    for (n, &d) in ints[1..].iter().zip(radicands) {
        if n.is_zero() {
            continue;
        }
        let s = BigInt::from((BigUint::from(d) << (2 * bits as usize)).sqrt());
        if n.is_positive() {
            lo += n * &s;
            hi += n * (&s + 1);
        } else {
            lo += n * (&s + 1);
            hi += n * &s;
        }
    }
    if lo.is_positive() {
        Some(Sign::Positive)
    } else if hi.is_negative() {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// Element of the rational span of `{1, sqrt(d_1), ..., sqrt(d_r)}`.
/// Immutable once built; all operations return fresh values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    basis: Arc<Radicands>,
    coeffs: Vec<Rational>,
}

impl ExactScalar {
    /// Builds a scalar from its coefficient list `(q_0, q_1, ..., q_r)`
    /// meaning `q_0 + q_1 sqrt(d_1) + ... + q_r sqrt(d_r)`.
    pub fn new(basis: Arc<Radicands>, coeffs: Vec<Rational>) -> Result<Self, ScalarError> {
        let want = basis.count() + 1;
        if coeffs.len() != want {
            return Err(ScalarError::CoefficientCount {
                got: coeffs.len(),
                want,
            });
        }
        Ok(ExactScalar { basis, coeffs })
    }

    pub fn zero(basis: Arc<Radicands>) -> Self {
        let coeffs = vec![Rational::zero(); basis.count() + 1];
        ExactScalar { basis, coeffs }
    }

    pub fn from_rational(basis: Arc<Radicands>, q: Rational) -> Self {
        let mut s = ExactScalar::zero(basis);
        s.coeffs[0] = q;
        s
    }

    pub fn from_integer(basis: Arc<Radicands>, n: impl Into<BigInt>) -> Self {
        ExactScalar::from_rational(basis, Rational::from_integer(n.into()))
    }

    /// The basis element `sqrt(d)`; `d` must be one of the radicands.
    pub fn radical(basis: Arc<Radicands>, d: u64) -> Result<Self, ScalarError> {
        let pos = basis
            .values()
            .iter()
            .position(|&v| v == d)
            .ok_or(ScalarError::InvalidRadicand {
                value: d,
                reason: "not a radicand of this basis".into(),
            })?;
        let mut s = ExactScalar::zero(basis);
        s.coeffs[pos + 1] = Rational::one();
        Ok(s)
    }

    pub fn basis(&self) -> &Arc<Radicands> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rational_part(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// True when every radical coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    fn check_basis(&self, other: &Self) -> Result<(), ScalarError> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(ScalarError::BasisMismatch {
                left: self.basis.to_string(),
                right: other.basis.to_string(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_basis(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_basis(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplication by a rational; the only product the span supports.
    pub fn scale(&self, q: &Rational) -> Self {
        ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&Rational::from_integer(n.clone()))
    }

    /// Re-expresses the scalar over a superset basis.
    pub fn with_basis(&self, basis: &Arc<Radicands>) -> Result<Self, ScalarError> {
        if &self.basis == basis {
            return Ok(self.clone());
        }
        let mut out = ExactScalar::zero(Arc::clone(basis));
        out.coeffs[0] = self.coeffs[0].clone();
        for (i, &d) in self.basis.values().iter().enumerate() {
            if self.coeffs[i + 1].is_zero() {
                continue;
            }
            let pos = basis
                .values()
                .iter()
                .position(|&v| v == d)
                .ok_or(ScalarError::BasisMismatch {
                    left: self.basis.to_string(),
                    right: basis.to_string(),
                })?;
            out.coeffs[pos + 1] = self.coeffs[i + 1].clone();
        }
        Ok(out)
    }

    /// Exact sign. Decided by refining dyadic enclosures of each radical
    /// until the enclosure of the whole sum excludes zero; linear
    /// independence of the basis guarantees a nonzero value eventually
    /// separates, so the loop terminates.
    pub fn sign(&self) -> Sign {
        self.sign_with_rounds().0
    }

    /// Sign together with the number of refinement rounds used; the counter
    /// exists so tests can observe how hard a comparison was. Precision
    /// doubles each round, starting from denominator `2^16`.
    pub fn sign_with_rounds(&self) -> (Sign, u32) {
        if self.is_zero() {
            return (Sign::Zero, 0);
        }
        if self.is_rational() {
            return (Sign::of_rational(&self.coeffs[0]), 0);
        }
        // Clear denominators once: with `L` their least common multiple,
        // `q_0 + sum q_i sqrt(d_i)` and `L q_0 + sum L q_i sqrt(d_i)` have
        // the same sign, and integer enclosures are far cheaper to refine
        // than rational ones.
        let mut scale = BigInt::one();
        for q in &self.coeffs {
            if !q.denom().is_one() {
                scale = scale.lcm(q.denom());
            }
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|q| {
                if scale.is_one() {
                    q.numer().clone()
                } else {
                    q.numer() * (&scale / q.denom())
                }
            })
            .collect();
        let radicands = self.basis.values();
        let mut bits = 16u32;
        let mut rounds = 0u32;
        loop {
            rounds += 1;
            let decided = enclosure_sign_machine(&ints, radicands, bits)
                .unwrap_or_else(|| enclosure_sign_big(&ints, radicands, bits));
            if let Some(sign) = decided {
                return (sign, rounds);
            }
            bits *= 2;
        }
    }

    /// Floating-point approximation; used only for search heuristics, never
    /// for decisions.
    pub fn to_f64(&self) -> f64 {
        let mut acc = self.coeffs[0].to_f64().unwrap_or(f64::NAN);
        for (i, &d) in self.basis.values().iter().enumerate() {
            let q = self.coeffs[i + 1].to_f64().unwrap_or(f64::NAN);
            acc += q * (d as f64).sqrt();
        }
        acc
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}*sqrt({})", self.basis.values()[i - 1])?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Integer-weighted sum `sum_i w_i v_i`; the workhorse behind classifying a
/// lattice vector against a defining functional.
pub fn inner_product(v: &[ExactScalar], w: &[BigInt]) -> Result<ExactScalar, ScalarError> {
    if v.is_empty() {
        return Err(ScalarError::LengthMismatch {
            left: 0,
            right: w.len(),
        });
    }
    if v.len() != w.len() {
        return Err(ScalarError::LengthMismatch {
            left: v.len(),
            right: w.len(),
        });
    }
    let first = &v[0];
    // Accumulate coefficientwise and skip zero terms: defining functionals
    // are sparse (typically one nonzero coefficient per coordinate), and
    // this loop runs once per lattice point of every ball scan.
    let mut coeffs = vec![Rational::zero(); first.basis.count() + 1];
    for (vi, wi) in v.iter().zip(w) {
        first.check_basis(vi)?;
        if wi.is_zero() {
            continue;
        }
        let weight = Rational::from_integer(wi.clone());
        for (acc, c) in coeffs.iter_mut().zip(&vi.coeffs) {
            if !c.is_zero() {
                *acc += c * &weight;
            }
        }
    }
    Ok(ExactScalar {
        basis: Arc::clone(&first.basis),
        coeffs,
    })
}

/// Parses `"p/q"` or `"n"` into a rational.
pub fn rational_from_str(text: &str) -> Result<Rational, ScalarError> {
    let parse_int = |s: &str| -> Result<BigInt, ScalarError> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| ScalarError::ParseRational { text: text.into() })
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let numer = parse_int(n)?;
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(ScalarError::ParseRational { text: text.into() });
            }
            Ok(Rational::new(numer, denom))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}
