//! Condensation samples: conjugates of a lexicographic order that stay
//! inside a prescribed basic neighborhood of it.
//!
//! The base orders here have a rank-3 kernel ordered by a single
//! functional `(alpha, beta, gamma)` with independent irrational
//! leading coordinates, and two group elements `g`, `h` whose
//! conjugation shifts the last kernel coordinate by multiples of
//! `alpha` and `beta`. Powers `g^{k m} h^{t n}` then perturb the
//! functional by `-nm (k alpha + t beta) e_last`; choosing the pair
//! `(k, t)` with a small negative combination keeps every neighborhood
//! vector positive while producing a genuinely different order. Distinct
//! pairs produce distinct orders, so the construction can be repeated
//! against a growing family of neighborhoods.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::groups::{
    convex_series, Element, GroupDescriptor, GroupError, LexGroupOrder, TriangularElement,
};
use crate::linear::UnimodularMatrix;
use crate::order::LatticeOrder;
use crate::scalar::{inner_product, ExactScalar, Radicands, Rational, Sign};

use super::ProbeError;

/// A finite set of nonzero lattice vectors, all positive for some base
/// order; together they cut out a basic neighborhood of that order.
#[derive(Debug, Clone)]
pub struct NeighborhoodSpec {
    elements: Vec<Vec<BigInt>>,
}

impl NeighborhoodSpec {
    pub fn new(elements: Vec<Vec<BigInt>>) -> Result<Self, ProbeError> {
        if elements.is_empty() {
            return Err(ProbeError::EmptyNeighborhood);
        }
        Ok(NeighborhoodSpec { elements })
    }

    /// The positive vectors of `order` in the Euclidean ball of the
    /// given radius, in lexicographic order.
    pub fn norm_ball(order: &LatticeOrder, radius: u32) -> Result<Self, ProbeError> {
        let n = order.rank();
        let r = i64::from(radius);
        let mut elements = Vec::new();
        let mut current = vec![-r; n];
        'outer: loop {
            let norm2: i64 = current.iter().map(|&x| x * x).sum();
            if norm2 <= r * r && current.iter().any(|&x| x != 0) {
                let w: Vec<BigInt> = current.iter().map(|&x| BigInt::from(x)).collect();
                if order.classify(&w)? == Sign::Positive {
                    elements.push(w);
                }
            }
            let mut place = n;
            loop {
                if place == 0 {
                    break 'outer;
                }
                place -= 1;
                if current[place] < r {
                    current[place] += 1;
                    for slot in current.iter_mut().skip(place + 1) {
                        *slot = -r;
                    }
                    break;
                }
            }
        }
        NeighborhoodSpec::new(elements)
    }

    pub fn elements(&self) -> &[Vec<BigInt>] {
        &self.elements
    }
}

/// The largest dyadic step `2^-j` such that perturbing the functional
/// `v` by anything in `(0, 2^-j]` along the last coordinate keeps every
/// neighborhood vector strictly positive. `None` means the neighborhood
/// imposes no constraint (no vector descends in the last coordinate), so
/// arbitrarily large perturbations are safe.
pub(crate) fn epsilon_bound(
    v: &[ExactScalar],
    neighborhood: &NeighborhoodSpec,
) -> Result<Option<Rational>, ProbeError> {
    let n = v.len();
    let mut constraints: Vec<(ExactScalar, BigInt)> = Vec::new();
    for (index, u) in neighborhood.elements().iter().enumerate() {
        if u.len() != n {
            return Err(ProbeError::DimensionMismatch { want: n, got: u.len() });
        }
        let value = inner_product(v, u)?;
        if value.sign() != Sign::Positive {
            return Err(ProbeError::NeighborhoodNotInterior { index });
        }
        let last = &u[n - 1];
        if last.sign() == num_bigint::Sign::Minus {
            constraints.push((value, last.clone()));
        }
    }
    if constraints.is_empty() {
        return Ok(None);
    }
    let basis = v[n - 1].basis().clone();
    for j in 0..=512u32 {
        let eps = Rational::new(BigInt::from(1), BigInt::from(1) << j);
        let mut admissible = true;
        for (value, last) in &constraints {
            let step = ExactScalar::from_rational(
                basis.clone(),
                &eps * Rational::from_integer(last.clone()),
            );
            if value.add(&step)?.sign() != Sign::Positive {
                admissible = false;
                break;
            }
        }
        if admissible {
            return Ok(Some(eps));
        }
    }
    Err(ProbeError::EpsilonSearchFailed)
}

/// The first integer pair `(k, t)`, both coordinates nonzero, with
/// `k alpha + t beta` strictly negative and — when a bound `c` is given
/// — strictly above `-c`. Pairs are scanned by growing sup-norm shell,
/// each shell ordered by `(|k| + |t|, k, t)`; `excluded` pairs (and
/// their negations) are skipped. Returns the pair and how many
/// candidates were inspected.
pub(crate) fn find_pair(
    alpha: &ExactScalar,
    beta: &ExactScalar,
    bound: Option<&Rational>,
    excluded: &BTreeSet<(i64, i64)>,
) -> Result<(i64, i64, u64), ProbeError> {
    const SHELL_CAP: i64 = 4096;
    let af = alpha.to_f64();
    let bf = beta.to_f64();
    let cf = bound.map(|c| c.to_f64().unwrap_or(0.0));
    let mut examined: u64 = 0;
    for s in 1..=SHELL_CAP {
        // Excluded pairs (or negations) that lie on this shell; almost
        // always empty, which lets the inner loop skip membership tests
        // on its millions of candidates.
        let mut banned: Vec<(i64, i64)> = Vec::new();
        for &(k, t) in excluded {
            for &(bk, bt) in &[(k, t), (-k, -t)] {
                if bk.abs().max(bt.abs()) == s {
                    banned.push((bk, bt));
                }
            }
        }
        // The shell `max(|k|, |t|) = s` in (|k| + |t|, k, t) order,
        // generated arithmetically: for each taxicab length the off-axis
        // coordinate is fixed up to sign, leaving at most eight points,
        // listed here already sorted by (k, t).
        for o in 1..=s {
            let (points, count) = if o == s {
                ([(-s, -s), (-s, s), (s, -s), (s, s), (0, 0), (0, 0), (0, 0), (0, 0)], 4)
            } else {
                (
                    [
                        (-s, -o),
                        (-s, o),
                        (-o, -s),
                        (-o, s),
                        (o, -s),
                        (o, s),
                        (s, -o),
                        (s, o),
                    ],
                    8,
                )
            };
            for &(k, t) in &points[..count] {
                if !banned.is_empty() && banned.contains(&(k, t)) {
                    continue;
                }
                examined += 1;
                // Float screen with a margin far above the rounding error
                // of two products and a sum; anything not clearly rejected
                // is settled exactly.
                let vf = k as f64 * af + t as f64 * bf;
                let margin = 1e-9 * (1.0 + k.abs() as f64 + t.abs() as f64);
                if vf > margin {
                    continue;
                }
                if let Some(c) = cf {
                    if vf + c < -margin {
                        continue;
                    }
                }
                let value = alpha
                    .scale_int(&BigInt::from(k))
                    .add(&beta.scale_int(&BigInt::from(t)))?;
                if value.sign() != Sign::Negative {
                    continue;
                }
                if let Some(c) = bound {
                    let shifted = value
                        .add(&ExactScalar::from_rational(value.basis().clone(), c.clone()))?;
                    if shifted.sign() != Sign::Positive {
                        continue;
                    }
                }
                return Ok((k, t, examined));
            }
        }
    }
    Err(ProbeError::PairSearchExhausted {
        shells: SHELL_CAP as u64,
    })
}

/// One verified condensation step.
#[derive(Debug, Clone)]
pub struct CondensationSample {
    pub base: LexGroupOrder,
    pub conjugator: Element,
    pub neighborhood: NeighborhoodSpec,
    pub transported: LexGroupOrder,
    pub k0: i64,
    pub t0: i64,
    /// The dyadic perturbation budget the neighborhood allowed; `None`
    /// when it imposed no constraint.
    pub epsilon: Option<Rational>,
    pub pairs_examined: u64,
}

/// Reads off the shift of an elementary kernel shear `I + value * E` at
/// `(row, 2)`, rejecting any other matrix shape.
fn shear_shift(matrix: &UnimodularMatrix, row: usize, which: &str) -> Result<i64, ProbeError> {
    let reject = || ProbeError::ShiftShape {
        which: which.to_string(),
    };
    if matrix.n() != 3 {
        return Err(reject());
    }
    let mut shift = BigInt::zero();
    for i in 0..3 {
        for j in 0..3 {
            let entry = matrix.entry(i, j);
            if i == j {
                if *entry != BigInt::from(1) {
                    return Err(reject());
                }
            } else if (i, j) == (row, 2) {
                shift = entry.clone();
            } else if !entry.is_zero() {
                return Err(reject());
            }
        }
    }
    if shift.is_zero() {
        return Err(reject());
    }
    shift.to_i64().ok_or(ProbeError::ShiftTooLarge)
}

/// A conjugate of `base` that differs from it as an order while keeping
/// every vector of `neighborhood` positive in the kernel.
///
/// `g` and `h` must act on the kernel as elementary shears `I + n E13`
/// and `I + m E23`; the conjugator is `g^{k0 m} h^{t0 n}` for the first
/// admissible pair `(k0, t0)` not ruled out by `excluded`.
pub fn condensation_certificate(
    base: &LexGroupOrder,
    g: &Element,
    h: &Element,
    neighborhood: &NeighborhoodSpec,
    excluded: &BTreeSet<(i64, i64)>,
) -> Result<CondensationSample, ProbeError> {
    let kernel = base.kernel_order();
    if kernel.rank() != 3 || kernel.vectors().len() != 1 {
        return Err(ProbeError::KernelOrderShape);
    }
    if !kernel.is_total() {
        // A single total functional on a rank-3 lattice has no integer
        // relations among its coordinates — exactly the independence the
        // pair construction needs.
        return Err(ProbeError::DependentSpectrum);
    }
    let shift_g = shear_shift(&base.kernel_conjugation_matrix(g)?, 0, "g")?;
    let shift_h = shear_shift(&base.kernel_conjugation_matrix(h)?, 1, "h")?;
    let v = &kernel.vectors()[0];
    let epsilon = epsilon_bound(v, neighborhood)?;
    let nm = shift_g.checked_mul(shift_h).ok_or(ProbeError::ShiftTooLarge)?;
    let bound = epsilon
        .as_ref()
        .map(|e| e / Rational::from_integer(BigInt::from(nm.abs())));
    let (mut k0, mut t0, pairs_examined) = find_pair(&v[0], &v[1], bound.as_ref(), excluded)?;
    if nm < 0 {
        // The perturbation is -nm (k0 alpha + t0 beta); flip the pair so
        // it stays positive and below the budget.
        k0 = -k0;
        t0 = -t0;
    }
    let exp_g = k0.checked_mul(shift_h).ok_or(ProbeError::ShiftTooLarge)?;
    let exp_h = t0.checked_mul(shift_g).ok_or(ProbeError::ShiftTooLarge)?;
    let conjugator = g.pow(exp_g).mul(&h.pow(exp_h))?;
    let transported = base.conjugate(&conjugator)?;
    for (index, u) in neighborhood.elements().iter().enumerate() {
        if transported.kernel_order().classify(u)? != Sign::Positive {
            return Err(ProbeError::InternalVerification {
                detail: format!("neighborhood vector {index} left the positive cone after transport"),
            });
        }
    }
    if transported.orders_equal(base) {
        return Err(ProbeError::InternalVerification {
            detail: "the conjugate order coincides with the base order".to_string(),
        });
    }
    Ok(CondensationSample {
        base: base.clone(),
        conjugator,
        neighborhood: neighborhood.clone(),
        transported,
        k0,
        t0,
        epsilon,
        pairs_examined,
    })
}

/// Repeated condensation of the standard base order on `N` against the
/// growing family of norm-ball neighborhoods of radius `1..=count`. The
/// samples reuse no pair, and the resulting conjugate orders are
/// verified pairwise distinct.
pub fn condensation_sequence(
    base: &LexGroupOrder,
    count: usize,
) -> Result<Vec<CondensationSample>, ProbeError> {
    if *base.descriptor() != GroupDescriptor::NGroup {
        return Err(ProbeError::WrongGroup {
            got: base.descriptor().to_string(),
        });
    }
    let generators = base.descriptor().generators()?;
    let pick = |name: &str| -> Element {
        generators
            .iter()
            .find(|(label, _)| label == name)
            .map(|(_, element)| element.clone())
            .expect("the N generator list contains b1 and b2")
    };
    let g = pick("b1");
    let h = pick("b2");
    let mut excluded: BTreeSet<(i64, i64)> = BTreeSet::new();
    let mut samples: Vec<CondensationSample> = Vec::with_capacity(count);
    for radius in 1..=count {
        let neighborhood = NeighborhoodSpec::norm_ball(base.kernel_order(), radius as u32)?;
        let sample = condensation_certificate(base, &g, &h, &neighborhood, &excluded)?;
        excluded.insert((sample.k0, sample.t0));
        samples.push(sample);
    }
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            if samples[i].transported.orders_equal(&samples[j].transported) {
                return Err(ProbeError::InternalVerification {
                    detail: format!("conjugate orders {i} and {j} coincide"),
                });
            }
        }
    }
    Ok(samples)
}

/// Builds the standard lexicographic order on the unitriangular group of
/// size `k` — radical kernel functional `(sqrt 2, sqrt 3, 1)` on the
/// bottom-row block, coordinatewise orders above — and runs one
/// condensation step against the norm ball of the given radius.
///
/// Sizes below 4 have too little room: rank 1 and the size-2 and size-3
/// groups admit no such sample, and sizes below 2 are not groups of this
/// shape at all.
pub fn lift_and_condense(
    k: usize,
    ball_radius: u32,
) -> Result<(LexGroupOrder, CondensationSample), ProbeError> {
    if k < 2 {
        return Err(ProbeError::Group(GroupError::InvalidSize { size: k }));
    }
    if k < 4 {
        return Err(ProbeError::SmoothTriangular { k });
    }
    let descriptor = GroupDescriptor::Triangular { k };
    let chain = convex_series(&descriptor)?;
    let rationals = Radicands::rationals();
    let radical_basis = Radicands::new(vec![2, 3])?;
    let mut factors = Vec::with_capacity(chain.levels.len());
    for level in chain.levels.iter().rev() {
        let order = match level.rank {
            3 => LatticeOrder::new(
                3,
                vec![vec![
                    ExactScalar::radical(radical_basis.clone(), 2)?,
                    ExactScalar::radical(radical_basis.clone(), 3)?,
                    ExactScalar::from_integer(radical_basis.clone(), 1),
                ]],
            )?,
            2 => LatticeOrder::new(
                2,
                vec![
                    vec![
                        ExactScalar::from_integer(rationals.clone(), 1),
                        ExactScalar::from_integer(rationals.clone(), 0),
                    ],
                    vec![
                        ExactScalar::from_integer(rationals.clone(), 0),
                        ExactScalar::from_integer(rationals.clone(), 1),
                    ],
                ],
            )?,
            _ => LatticeOrder::new(
                1,
                vec![vec![ExactScalar::from_integer(rationals.clone(), 1)]],
            )?,
        };
        factors.push(order);
    }
    let order = LexGroupOrder::new(descriptor, factors)?;
    let g = Element::Triangular(TriangularElement::generator(k, 3, 1)?);
    let h = Element::Triangular(TriangularElement::generator(k, 3, 2)?);
    let neighborhood = NeighborhoodSpec::norm_ball(order.kernel_order(), ball_radius)?;
    let sample = condensation_certificate(&order, &g, &h, &neighborhood, &BTreeSet::new())?;
    Ok((order, sample))
}
