//! Witness sets certifying that an order is isolated in its `L_n` orbit.
//!
//! `L_n` is the abelian family of unimodular shears that fix the first
//! `n - 1` coordinates and add an integer combination of them to the
//! last one. A witness against a shear `A` is a lattice vector that the
//! base order classifies positive but the transported order does not;
//! a finite witness set whose basic neighborhood meets the orbit only
//! in the base order certifies isolation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linear::{complete_basis_with_last, cone_interior_lattice_point, LnMatrix};
use crate::order::LatticeOrder;
use crate::scalar::{inner_product, ExactScalar, Sign};

use super::ProbeError;

/// What the box verification observed for one shear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// The shear transports the order to itself.
    Fixed,
    /// The witness at this index is positive for the base order but not
    /// for the transported one.
    Excluded { witness: usize },
}

/// One verified shear of the exhaustive box check.
#[derive(Debug, Clone)]
pub struct LnVerification {
    pub last_row: Vec<BigInt>,
    pub outcome: VerifyOutcome,
}

/// Which conjugator family the certificate covers.
#[derive(Debug, Clone)]
pub struct CertificateScope {
    pub rank: usize,
    pub note: String,
}

/// A witness set for isolation of `base` in its `L_n` orbit, together
/// with an exhaustive verification log over a finite box of shears.
#[derive(Debug, Clone)]
pub struct DiscretenessCertificate {
    pub base: LatticeOrder,
    pub witnesses: Vec<Vec<BigInt>>,
    pub scope: CertificateScope,
    pub verification_box: i64,
    pub log: Vec<LnVerification>,
}

fn unit_vector(n: usize, index: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); n];
    e[index] = BigInt::one();
    e
}

/// A lattice vector positive for the functional `v` but negative for its
/// transport along the shear `a` — and, by the sign structure of the
/// construction, for the transport along every shear whose last row has
/// the same signs as `a`.
///
/// Requires `a != I` and a nonzero last coordinate of `v`. The cone
/// spanned by `w_i = sgn(a_i) (x_n e_i - x_i e_n)` together with the
/// image `A(w_{i0})` of the first sheared generator lies in the closed
/// positive half-space of `v` and strictly inside the negative side of
/// the transported functional; its interior lattice point is the
/// witness. Both defining signs are verified exactly before returning.
pub fn separating_witness(v: &[ExactScalar], a: &LnMatrix) -> Result<Vec<BigInt>, ProbeError> {
    let n = a.n();
    if v.len() != n {
        return Err(ProbeError::DimensionMismatch { want: n, got: v.len() });
    }
    if a.is_identity() {
        return Err(ProbeError::IdentityConjugator);
    }
    let last_sign = v[n - 1].sign();
    if last_sign == Sign::Zero {
        return Err(ProbeError::LastCoordinateZero);
    }
    if last_sign == Sign::Negative {
        // -I is not a shear, so reduce by hand: a witness for -v works
        // for v after negation, since both inner products flip sign.
        let negated: Vec<ExactScalar> = v.iter().map(|s| s.neg()).collect();
        let w = separating_witness(&negated, a)?;
        return Ok(w.iter().map(|x| -x).collect());
    }
    let x_n = &v[n - 1];
    let basis = x_n.basis().clone();
    let mut generators: Vec<Vec<ExactScalar>> = Vec::with_capacity(n);
    let mut first_sheared: Option<usize> = None;
    for (i, a_i) in a.last_row().iter().enumerate() {
        // w_i = sgn(a_i) (x_n e_i - x_i e_n), with sgn(0) taken as +1;
        // every w_i is orthogonal to v.
        let mut w: Vec<ExactScalar> = (0..n).map(|_| ExactScalar::zero(basis.clone())).collect();
        let flip = a_i.sign() == num_bigint::Sign::Minus;
        w[i] = if flip { x_n.neg() } else { x_n.clone() };
        let x_i = v[i].with_basis(&basis)?;
        w[n - 1] = if flip { x_i.clone() } else { x_i.neg() };
        if first_sheared.is_none() && !a_i.is_zero() {
            first_sheared = Some(i);
        }
        generators.push(w);
    }
    let i0 = first_sheared.expect("a non-identity shear has a nonzero last-row entry");
    // A(w_{i0}) = w_{i0} + |a_{i0}| x_n e_n sits strictly on the positive
    // side of v; adding it to the generators makes the cone full-dimensional.
    let mut image = generators[i0].clone();
    let bump = x_n.scale_int(&a.last_row()[i0].abs());
    image[n - 1] = image[n - 1].add(&bump)?;
    generators.push(image);
    let witness = cone_interior_lattice_point(&generators)?;
    // Exact post-check of both defining signs.
    let base_sign = inner_product(v, &witness)?.sign();
    let transported = crate::linear::transform_functional(v, &a.to_unimodular())?;
    let moved_sign = inner_product(&transported, &witness)?.sign();
    if base_sign != Sign::Positive || moved_sign != Sign::Negative {
        return Err(ProbeError::InternalVerification {
            detail: format!(
                "witness signs were {base_sign:?}/{moved_sign:?}, expected Positive/Negative"
            ),
        });
    }
    Ok(witness)
}

/// Lex enumeration of the nonzero sign patterns in `{-1, 0, 1}^{n-1}`.
fn sign_patterns(n: usize) -> Vec<Vec<BigInt>> {
    let len = n - 1;
    let mut patterns = Vec::new();
    let mut current = vec![-1i64; len];
    loop {
        if current.iter().any(|&x| x != 0) {
            patterns.push(current.iter().map(|&x| BigInt::from(x)).collect());
        }
        // Advance odometer in lex order over {-1, 0, 1}.
        let mut place = len;
        loop {
            if place == 0 {
                return patterns;
            }
            place -= 1;
            if current[place] < 1 {
                current[place] += 1;
                for slot in current.iter_mut().skip(place + 1) {
                    *slot = -1;
                }
                break;
            }
        }
    }
}

/// One witness per nonzero sign pattern of a shear's last row. Each
/// witness excludes every shear sharing its pattern, so together they
/// exclude all of `L_n` away from the identity.
fn sign_pattern_witnesses(v: &[ExactScalar]) -> Result<Vec<Vec<BigInt>>, ProbeError> {
    let n = v.len();
    sign_patterns(n)
        .into_iter()
        .map(|pattern| {
            let shear = LnMatrix::new(n, pattern)?;
            separating_witness(v, &shear)
        })
        .collect()
}

/// Lex enumeration of all nonzero last rows with entries in `[-bound, bound]`.
fn box_rows(n: usize, bound: i64) -> Vec<Vec<BigInt>> {
    let len = n - 1;
    let mut rows = Vec::new();
    let mut current = vec![-bound; len];
    if len == 0 {
        return rows;
    }
    loop {
        if current.iter().any(|&x| x != 0) {
            rows.push(current.iter().map(|&x| BigInt::from(x)).collect());
        }
        let mut place = len;
        loop {
            if place == 0 {
                return rows;
            }
            place -= 1;
            if current[place] < bound {
                current[place] += 1;
                for slot in current.iter_mut().skip(place + 1) {
                    *slot = -bound;
                }
                break;
            }
        }
    }
}

/// Checks every nonidentity shear in the box against the witness set:
/// each must either fix the order or fail to keep some witness positive.
fn verify_box_log(
    order: &LatticeOrder,
    witnesses: &[Vec<BigInt>],
    bound: i64,
) -> Result<Vec<LnVerification>, ProbeError> {
    let n = order.rank();
    for (index, witness) in witnesses.iter().enumerate() {
        if order.classify(witness)? != Sign::Positive {
            return Err(ProbeError::InternalVerification {
                detail: format!("witness {index} is not positive for the base order"),
            });
        }
    }
    let mut log = Vec::new();
    for last_row in box_rows(n, bound) {
        let shear = LnMatrix::new(n, last_row.clone())?;
        let moved = order.act(&shear.to_unimodular())?;
        let outcome = if moved.orders_equal(order) {
            VerifyOutcome::Fixed
        } else {
            let excluding = witnesses
                .iter()
                .position(|w| matches!(moved.classify(w), Ok(s) if s != Sign::Positive));
            match excluding {
                Some(witness) => VerifyOutcome::Excluded { witness },
                None => {
                    return Err(ProbeError::InternalVerification {
                        detail: format!(
                            "no witness excludes the shear with last row {last_row:?}"
                        ),
                    })
                }
            }
        };
        log.push(LnVerification { last_row, outcome });
    }
    Ok(log)
}

/// Witness set for a single functional whose last coordinate is nonzero,
/// with an exhaustive verification log over the box `[-bound, bound]`.
pub fn discreteness_witness_set(
    v: &[ExactScalar],
    bound: i64,
) -> Result<DiscretenessCertificate, ProbeError> {
    if v.is_empty() {
        return Err(ProbeError::DimensionMismatch { want: 1, got: 0 });
    }
    if bound < 1 {
        return Err(ProbeError::InvalidBox { got: bound });
    }
    let n = v.len();
    let base = LatticeOrder::new_partial(n, vec![v.to_vec()])?;
    if n == 1 {
        return Ok(DiscretenessCertificate {
            base,
            witnesses: Vec::new(),
            scope: CertificateScope {
                rank: 1,
                note: "the shear family on rank 1 is trivial".to_string(),
            },
            verification_box: bound,
            log: Vec::new(),
        });
    }
    if v[n - 1].sign() == Sign::Zero {
        return Err(ProbeError::LastCoordinateZero);
    }
    let witnesses = sign_pattern_witnesses(v)?;
    let log = verify_box_log(&base, &witnesses, bound)?;
    Ok(DiscretenessCertificate {
        base,
        witnesses,
        scope: CertificateScope {
            rank: n,
            note: "leading functional has nonzero last coordinate; every nonidentity shear is excluded".to_string(),
        },
        verification_box: bound,
        log,
    })
}

/// Isolation certificate for an arbitrary order under the shear family.
///
/// When the leading functional keeps a nonzero last coordinate, the sign
/// pattern witnesses already separate everything. Otherwise the leading
/// functional is fixed by every shear, its kernel sublattice is
/// invariant, and the probe recurses on the restriction: a shear moves
/// the order exactly when the induced shear on the kernel (in any basis
/// ending with the last coordinate vector) moves the restricted order,
/// and the restricted witnesses embed back into the kernel unchanged.
/// No additional vectors are needed to pin the recursion together: the
/// leading level of any transported order agrees with the base by
/// construction, so disagreement always happens inside the invariant
/// kernel, where the lifted witnesses live.
pub fn ln_smoothness_probe(
    order: &LatticeOrder,
    bound: i64,
) -> Result<DiscretenessCertificate, ProbeError> {
    if bound < 1 {
        return Err(ProbeError::InvalidBox { got: bound });
    }
    let n = order.rank();
    if n == 1 {
        return Ok(DiscretenessCertificate {
            base: order.clone(),
            witnesses: Vec::new(),
            scope: CertificateScope {
                rank: 1,
                note: "the shear family on rank 1 is trivial".to_string(),
            },
            verification_box: bound,
            log: Vec::new(),
        });
    }
    let v0 = &order.vectors()[0];
    if v0[n - 1].sign() != Sign::Zero {
        let witnesses = sign_pattern_witnesses(v0)?;
        let log = verify_box_log(order, &witnesses, bound)?;
        return Ok(DiscretenessCertificate {
            base: order.clone(),
            witnesses,
            scope: CertificateScope {
                rank: n,
                note: "leading functional has nonzero last coordinate; every nonidentity shear is excluded".to_string(),
            },
            verification_box: bound,
            log,
        });
    }
    // Leading functional is fixed by the whole family. Restrict to its
    // kernel with e_n as the final basis vector, so the induced maps
    // form the shear family one rank down.
    let kernel = &order.chain()[0];
    let completed = complete_basis_with_last(kernel, &unit_vector(n, n - 1))?;
    let restricted = order.restrict(&completed)?;
    let sub = ln_smoothness_probe(&restricted, bound)?;
    let witnesses: Vec<Vec<BigInt>> = sub
        .witnesses
        .iter()
        .map(|w| {
            let mut lifted = vec![BigInt::zero(); n];
            for (coeff, row) in w.iter().zip(&completed) {
                for (slot, entry) in lifted.iter_mut().zip(row) {
                    *slot += coeff * entry;
                }
            }
            lifted
        })
        .collect();
    let log = verify_box_log(order, &witnesses, bound)?;
    Ok(DiscretenessCertificate {
        base: order.clone(),
        witnesses,
        scope: CertificateScope {
            rank: n,
            note: format!(
                "leading functional is fixed by every shear; recursed into its rank-{} kernel ({})",
                restricted.rank(),
                sub.scope.note
            ),
        },
        verification_box: bound,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Radicands;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn functional(values: &[i64]) -> Vec<ExactScalar> {
        let basis = Radicands::rationals();
        values
            .iter()
            .map(|&x| ExactScalar::from_integer(basis.clone(), x))
            .collect()
    }

    #[test]
    fn witness_for_unit_shear_is_frozen() {
        let v = functional(&[1, 1]);
        let up = LnMatrix::new(2, vec![BigInt::one()]).unwrap();
        assert_eq!(separating_witness(&v, &up).unwrap(), ints(&[2, -1]));
        let down = LnMatrix::new(2, vec![BigInt::from(-1)]).unwrap();
        assert_eq!(separating_witness(&v, &down).unwrap(), ints(&[-2, 3]));
    }

    #[test]
    fn witness_respects_negated_leading_functional() {
        let v = functional(&[1, -1]);
        let up = LnMatrix::new(2, vec![BigInt::one()]).unwrap();
        let w = separating_witness(&v, &up).unwrap();
        // Defining signs hold exactly.
        assert_eq!(
            inner_product(&v, &w).unwrap().sign(),
            Sign::Positive
        );
        let moved = crate::linear::transform_functional(&v, &up.to_unimodular()).unwrap();
        assert_eq!(inner_product(&moved, &w).unwrap().sign(), Sign::Negative);
    }

    #[test]
    fn witness_preconditions() {
        let v = functional(&[1, 1]);
        let id = LnMatrix::identity(2);
        assert!(matches!(
            separating_witness(&v, &id),
            Err(ProbeError::IdentityConjugator)
        ));
        let fixed = functional(&[1, 0]);
        let up = LnMatrix::new(2, vec![BigInt::one()]).unwrap();
        assert!(matches!(
            separating_witness(&fixed, &up),
            Err(ProbeError::LastCoordinateZero)
        ));
    }

    #[test]
    fn pattern_witnesses_cover_a_wide_shear_range() {
        let v = functional(&[1, 1]);
        let cert = discreteness_witness_set(&v, 3).unwrap();
        assert_eq!(cert.witnesses, vec![ints(&[-2, 3]), ints(&[2, -1])]);
        assert_eq!(cert.log.len(), 6);
        assert!(cert
            .log
            .iter()
            .all(|entry| matches!(entry.outcome, VerifyOutcome::Excluded { .. })));
        // The same pair excludes shears far outside the box.
        for a in [-50i64, -17, 9, 50] {
            let shear = LnMatrix::new(2, vec![BigInt::from(a)]).unwrap();
            let moved = cert.base.act(&shear.to_unimodular()).unwrap();
            assert!(cert
                .witnesses
                .iter()
                .any(|w| moved.classify(w).unwrap() != Sign::Positive));
        }
    }

    #[test]
    fn radical_functional_certificate() {
        let basis = Radicands::new(vec![2, 3]).unwrap();
        let v = vec![
            ExactScalar::radical(basis.clone(), 2).unwrap(),
            ExactScalar::radical(basis.clone(), 3).unwrap(),
            ExactScalar::from_integer(basis.clone(), 1),
        ];
        let cert = discreteness_witness_set(&v, 2).unwrap();
        assert_eq!(cert.witnesses.len(), 8);
        assert_eq!(cert.log.len(), 24);
    }

    #[test]
    fn probe_recurses_when_leading_functional_is_fixed() {
        // [(1,0), (0,1)] on Z^2: every shear fixes the whole order.
        let basis = Radicands::rationals();
        let order = LatticeOrder::new(
            2,
            vec![
                vec![
                    ExactScalar::from_integer(basis.clone(), 1),
                    ExactScalar::from_integer(basis.clone(), 0),
                ],
                vec![
                    ExactScalar::from_integer(basis.clone(), 0),
                    ExactScalar::from_integer(basis.clone(), 1),
                ],
            ],
        )
        .unwrap();
        let cert = ln_smoothness_probe(&order, 3).unwrap();
        assert!(cert.witnesses.is_empty());
        assert_eq!(cert.log.len(), 6);
        assert!(cert
            .log
            .iter()
            .all(|entry| entry.outcome == VerifyOutcome::Fixed));
    }

    #[test]
    fn probe_lifts_witnesses_from_the_kernel() {
        // [(1,1,0), (0,0,1)]: shears with a1 = a2 fix the order, all
        // others are excluded by lifted witnesses.
        let basis = Radicands::rationals();
        let order = LatticeOrder::new_partial(
            3,
            vec![
                vec![
                    ExactScalar::from_integer(basis.clone(), 1),
                    ExactScalar::from_integer(basis.clone(), 1),
                    ExactScalar::from_integer(basis.clone(), 0),
                ],
                vec![
                    ExactScalar::from_integer(basis.clone(), 0),
                    ExactScalar::from_integer(basis.clone(), 0),
                    ExactScalar::from_integer(basis.clone(), 1),
                ],
            ],
        )
        .unwrap();
        let cert = ln_smoothness_probe(&order, 3).unwrap();
        assert_eq!(cert.witnesses.len(), 2);
        for w in &cert.witnesses {
            // Lifted witnesses live in the kernel of (1, 1, 0).
            assert_eq!(&w[0] + &w[1], BigInt::zero());
        }
        let fixed = cert
            .log
            .iter()
            .filter(|e| e.outcome == VerifyOutcome::Fixed)
            .count();
        // a1 = a2 != 0 happens 6 times in the box [-3, 3]^2.
        assert_eq!(fixed, 6);
        assert_eq!(cert.log.len(), 48);
    }
}
