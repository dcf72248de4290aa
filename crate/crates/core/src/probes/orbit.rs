//! Enumeration of the distinct conjugates of a lexicographic order over
//! a word ball.

use std::collections::BTreeSet;

use crate::groups::{Element, LexGroupOrder};

use super::ProbeError;

/// One distinct conjugate, with a shortest-found conjugating element.
#[derive(Debug, Clone)]
pub struct OrbitEntry {
    pub conjugator: Element,
    pub order: LexGroupOrder,
}

/// The distinct conjugates of a base order under all conjugators of
/// word length at most `radius`.
#[derive(Debug, Clone)]
pub struct OrbitListing {
    pub radius: usize,
    pub entries: Vec<OrbitEntry>,
}

/// Conjugates the base order by every element of the word ball and
/// keeps one representative per distinct resulting order. The ball is
/// breadth-first, so each kept conjugator has minimal word length for
/// its order. Conjugators that fail to preserve the convex chain (only
/// possible in the larger triangular groups) abort the enumeration.
pub fn orbit_enumerate(
    base: &LexGroupOrder,
    radius: usize,
    generators: Option<&[String]>,
) -> Result<OrbitListing, ProbeError> {
    let ball = base.descriptor().word_ball(radius, generators)?;
    let mut seen_actions: BTreeSet<String> = BTreeSet::new();
    let mut entries: Vec<OrbitEntry> = Vec::new();
    for conjugator in ball {
        // Elements acting identically on the kernel produce the same
        // conjugate; skipping them avoids most order comparisons.
        let matrix = base.kernel_conjugation_matrix(&conjugator)?;
        let key = matrix
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";");
        if !seen_actions.insert(key) {
            continue;
        }
        let order = base.conjugate(&conjugator)?;
        if entries.iter().any(|entry| entry.order.orders_equal(&order)) {
            continue;
        }
        entries.push(OrbitEntry { conjugator, order });
    }
    Ok(OrbitListing { radius, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupDescriptor;
    use crate::order::LatticeOrder;
    use crate::scalar::{ExactScalar, Radicands};

    fn h3_order(kernel_vectors: Vec<Vec<i64>>) -> LexGroupOrder {
        let basis = Radicands::rationals();
        let scalars = |row: &Vec<i64>| {
            row.iter()
                .map(|&x| ExactScalar::from_integer(basis.clone(), x))
                .collect::<Vec<_>>()
        };
        let kernel =
            LatticeOrder::new_partial(2, kernel_vectors.iter().map(scalars).collect()).unwrap();
        let quotient =
            LatticeOrder::new(1, vec![vec![ExactScalar::from_integer(basis.clone(), 1)]]).unwrap();
        LexGroupOrder::new(GroupDescriptor::Heisenberg { n: 1 }, vec![quotient, kernel]).unwrap()
    }

    #[test]
    fn y_powers_move_the_diagonal_order() {
        let base = h3_order(vec![vec![1, 1]]);
        let filter = vec!["y1".to_string()];
        let listing = orbit_enumerate(&base, 5, Some(&filter)).unwrap();
        // Conjugation by y^k shifts the kernel functional to (1 - k, 1):
        // eleven distinct orders for k in [-5, 5].
        assert_eq!(listing.entries.len(), 11);
        assert!(listing.entries[0].conjugator.is_identity());
        assert!(listing.entries[0].order.orders_equal(&base));
    }

    #[test]
    fn coordinatewise_kernel_order_is_conjugation_invariant() {
        let base = h3_order(vec![vec![1, 0], vec![0, 1]]);
        let listing = orbit_enumerate(&base, 2, None).unwrap();
        assert_eq!(listing.entries.len(), 1);
        assert!(listing.entries[0].conjugator.is_identity());
    }
}
