//! Finite checks of the order axioms: trichotomy on inverses and
//! closure of the positive cone under the group operation.
//!
//! The checks are exhaustive over a ball — Euclidean for lattice
//! orders, word-metric for group orders — and report every violation
//! they see, so a deliberately corrupted classification is caught and
//! localized rather than merely suspected.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::groups::LexGroupOrder;
use crate::order::LatticeOrder;
use crate::scalar::Sign;

use super::ProbeError;

/// A concrete counterexample to one of the order axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `point` and its negation do not classify as an opposite pair.
    Trichotomy {
        point: Vec<BigInt>,
        forward: Sign,
        backward: Sign,
    },
    /// Two positive vectors whose sum is not positive.
    Closure {
        left: Vec<BigInt>,
        right: Vec<BigInt>,
        sum_sign: Sign,
    },
    /// A group element and its inverse do not classify as an opposite
    /// pair; elements are shown in canonical-key form.
    LexTrichotomy {
        element: String,
        forward: Sign,
        backward: Sign,
    },
    /// Two positive group elements whose product is not positive.
    LexClosure {
        left: String,
        right: String,
        product_sign: Sign,
    },
}

/// Outcome of an exhaustive axiom check over a ball.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub radius: u32,
    /// Nonidentity points inspected.
    pub points: usize,
    /// Closure pairs inspected.
    pub pairs: u64,
    pub violations: Vec<AxiomViolation>,
}

/// Checks trichotomy and cone closure for a lattice order over the
/// Euclidean ball of the given radius.
///
/// `flips` lists vectors whose classification is deliberately negated
/// (exact matches only) — a control hook proving the check can detect a
/// corrupted cone. Partial orders are allowed: a vector and its negation
/// may both classify as zero, but a total order must separate every
/// nonzero vector.
pub fn axiom_check(
    order: &LatticeOrder,
    radius: u32,
    flips: &[Vec<BigInt>],
) -> Result<AxiomReport, ProbeError> {
    let n = order.rank();
    let r = i64::from(radius);
    let mut ball: Vec<Vec<i64>> = Vec::new();
    let mut current = vec![-r; n];
    'outer: loop {
        let norm2: i64 = current.iter().map(|&x| x * x).sum();
        if norm2 <= r * r && current.iter().any(|&x| x != 0) {
            ball.push(current.clone());
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
    let mut memo: HashMap<Vec<i64>, Sign> = HashMap::new();
    let mut classify = |w: &[i64]| -> Result<Sign, ProbeError> {
        if let Some(sign) = memo.get(w) {
            return Ok(*sign);
        }
        let vector: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        let mut sign = order.classify(&vector)?;
        if flips.contains(&vector) {
            sign = sign.negate();
        }
        memo.insert(w.to_vec(), sign);
        Ok(sign)
    };
    let mut violations = Vec::new();
    let mut positives: Vec<Vec<i64>> = Vec::new();
    for w in &ball {
        let forward = classify(w)?;
        let negated: Vec<i64> = w.iter().map(|&x| -x).collect();
        let backward = classify(&negated)?;
        let separated = forward != Sign::Zero || !order.is_total();
        if forward != backward.negate() || !separated {
            violations.push(AxiomViolation::Trichotomy {
                point: w.iter().map(|&x| BigInt::from(x)).collect(),
                forward,
                backward,
            });
        }
        if forward == Sign::Positive {
            positives.push(w.clone());
        }
    }
    let mut pairs: u64 = 0;
    for i in 0..positives.len() {
        for j in i..positives.len() {
            pairs += 1;
            let sum: Vec<i64> = positives[i]
                .iter()
                .zip(&positives[j])
                .map(|(&a, &b)| a + b)
                .collect();
            let sum_sign = classify(&sum)?;
            if sum_sign != Sign::Positive {
                violations.push(AxiomViolation::Closure {
                    left: positives[i].iter().map(|&x| BigInt::from(x)).collect(),
                    right: positives[j].iter().map(|&x| BigInt::from(x)).collect(),
                    sum_sign,
                });
            }
        }
    }
    Ok(AxiomReport {
        radius,
        points: ball.len(),
        pairs,
        violations,
    })
}

/// Checks trichotomy and cone closure for a group order over the word
/// ball of the given radius. Products of two positive elements are
/// classified wherever they land, including outside the ball; pairs are
/// ordered, since the groups are noncommutative.
pub fn axiom_check_lex(
    order: &LexGroupOrder,
    word_radius: usize,
) -> Result<AxiomReport, ProbeError> {
    let ball = order.descriptor().word_ball(word_radius, None)?;
    let mut memo: HashMap<String, Sign> = HashMap::new();
    let mut violations = Vec::new();
    let mut positives = Vec::new();
    let mut points = 0usize;
    for g in &ball {
        if g.is_identity() {
            continue;
        }
        points += 1;
        let key = g.canonical_key();
        let forward = match memo.get(&key) {
            Some(sign) => *sign,
            None => {
                let sign = order.classify(g)?;
                memo.insert(key.clone(), sign);
                sign
            }
        };
        let backward = order.classify(&g.inverse())?;
        if forward != backward.negate() {
            violations.push(AxiomViolation::LexTrichotomy {
                element: key,
                forward,
                backward,
            });
        }
        if forward == Sign::Positive {
            positives.push(g.clone());
        }
    }
    let mut pairs: u64 = 0;
    for left in &positives {
        for right in &positives {
            pairs += 1;
            let product = left.mul(right)?;
            let product_sign = order.classify(&product)?;
            if product_sign != Sign::Positive {
                violations.push(AxiomViolation::LexClosure {
                    left: left.canonical_key(),
                    right: right.canonical_key(),
                    product_sign,
                });
            }
        }
    }
    Ok(AxiomReport {
        radius: word_radius as u32,
        points,
        pairs,
        violations,
    })
}
