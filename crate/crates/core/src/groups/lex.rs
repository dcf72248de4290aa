//! Convex chains and lexicographic orders on the supported groups.
//!
//! Each group family carries a fixed subnormal chain with free abelian
//! factors. An order on the group is assembled from one lattice order
//! per factor: an element is positive when its coordinate vector at the
//! topmost level where it is nonzero is classified positive by that
//! level's factor order. Conjugation moves such an order to another one
//! of the same shape, changing only the kernel (bottom) factor — for
//! the matrix groups this is checked, not assumed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linear::UnimodularMatrix;
use crate::order::LatticeOrder;
use crate::scalar::Sign;

use super::heisenberg::HeisenbergElement;
use super::ngroup::NElement;
use super::triangular::TriangularElement;
use super::GroupError;

/// Identifies one of the supported group families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    /// The Heisenberg group `H_{2n+1}`.
    Heisenberg { n: usize },
    /// The rank-5 group `N = <b1, b2> x| <a1, a2, a3>`.
    NGroup,
    /// The lower unitriangular group `N_k`.
    Triangular { k: usize },
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupDescriptor::Heisenberg { n } => write!(f, "heisenberg n={n}"),
            GroupDescriptor::NGroup => write!(f, "N"),
            GroupDescriptor::Triangular { k } => write!(f, "triangular k={k}"),
        }
    }
}

/// One abelian factor of a convex chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLevel {
    pub rank: usize,
    pub label: String,
    /// Generator names whose images form the coordinate basis, in
    /// coordinate order.
    pub generators: Vec<String>,
    /// Matrix positions (1-indexed row, column) carrying the
    /// coordinates; empty for the normal-form groups.
    pub positions: Vec<(usize, usize)>,
}

/// A subnormal chain with free abelian factors, listed bottom-up:
/// `levels[0]` is the kernel factor at the bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDescription {
    pub descriptor: GroupDescriptor,
    pub levels: Vec<ChainLevel>,
}

/// The canonical convex chain of a group family.
///
/// * `Heisenberg { n }`: `{1} < <x_1..x_n, z> < H`, factors of ranks
///   `n + 1` and `n`.
/// * `NGroup`: `{1} < <a1, a2, a3> < N`, factors of ranks 3 and 2.
/// * `Triangular { k }`: for `k <= 4` the whole bottom row forms the
///   kernel factor and each higher row forms one level; from `k = 5` on
///   the chain continues with one cyclic level per entry of each new
///   bottom row, appended bottom-up. Coordinates of a level are its
///   matrix positions in lexicographic order.
pub fn convex_series(descriptor: &GroupDescriptor) -> Result<ChainDescription, GroupError> {
    let levels = match descriptor {
        GroupDescriptor::Heisenberg { n } => {
            if *n == 0 {
                return Err(GroupError::InvalidSize { size: 0 });
            }
            let mut kernel_gens: Vec<String> = (1..=*n).map(|i| format!("x{i}")).collect();
            kernel_gens.push("z".to_string());
            vec![
                ChainLevel {
                    rank: n + 1,
                    label: "kernel <x, z>".to_string(),
                    generators: kernel_gens,
                    positions: Vec::new(),
                },
                ChainLevel {
                    rank: *n,
                    label: "quotient <y>".to_string(),
                    generators: (1..=*n).map(|i| format!("y{i}")).collect(),
                    positions: Vec::new(),
                },
            ]
        }
        GroupDescriptor::NGroup => vec![
            ChainLevel {
                rank: 3,
                label: "kernel <a1, a2, a3>".to_string(),
                generators: vec!["a1".into(), "a2".into(), "a3".into()],
                positions: Vec::new(),
            },
            ChainLevel {
                rank: 2,
                label: "quotient <b1, b2>".to_string(),
                generators: vec!["b1".into(), "b2".into()],
                positions: Vec::new(),
            },
        ],
        GroupDescriptor::Triangular { k } => {
            if *k < 2 {
                return Err(GroupError::InvalidSize { size: *k });
            }
            let block = k.min(&4);
            let mut levels: Vec<ChainLevel> = Vec::new();
            // Whole-row levels for the core group of size up to 4.
            for row in (2..=*block).rev() {
                levels.push(row_level(row, 1..row));
            }
            // Each further embedding step adds its bottom-row entries as
            // cyclic levels, appended bottom-up.
            for row in 5..=*k {
                for col in 1..row {
                    levels.push(row_level(row, col..col + 1));
                }
            }
            levels
        }
    };
    Ok(ChainDescription {
        descriptor: descriptor.clone(),
        levels,
    })
}

fn row_level(row: usize, cols: std::ops::Range<usize>) -> ChainLevel {
    let positions: Vec<(usize, usize)> = cols.map(|col| (row, col)).collect();
    let generators = positions
        .iter()
        .map(|&(i, j)| format!("e{i}{j}"))
        .collect();
    let label = if positions.len() == 1 {
        format!("entry ({row},{})", positions[0].1)
    } else {
        format!("row {row} block")
    };
    ChainLevel {
        rank: positions.len(),
        label,
        generators,
        positions,
    }
}

/// Element of one of the supported groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Heisenberg(HeisenbergElement),
    N(NElement),
    Triangular(TriangularElement),
}

impl Element {
    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            Element::Heisenberg(g) => GroupDescriptor::Heisenberg { n: g.n() },
            Element::N(_) => GroupDescriptor::NGroup,
            Element::Triangular(g) => GroupDescriptor::Triangular { k: g.size() },
        }
    }

    pub fn mul(&self, other: &Element) -> Result<Element, GroupError> {
        match (self, other) {
            (Element::Heisenberg(g), Element::Heisenberg(h)) => {
                Ok(Element::Heisenberg(g.mul(h)?))
            }
            (Element::N(g), Element::N(h)) => Ok(Element::N(g.mul(h))),
            (Element::Triangular(g), Element::Triangular(h)) => {
                Ok(Element::Triangular(g.mul(h)?))
            }
            _ => Err(GroupError::GroupMismatch {
                left: self.descriptor().to_string(),
                right: other.descriptor().to_string(),
            }),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Heisenberg(g) => Element::Heisenberg(g.inverse()),
            Element::N(g) => Element::N(g.inverse()),
            Element::Triangular(g) => Element::Triangular(g.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Heisenberg(g) => g.is_identity(),
            Element::N(g) => g.is_identity(),
            Element::Triangular(g) => g.is_identity(),
        }
    }

    /// `g^e` by binary exponentiation; negative exponents go through the
    /// inverse.
    pub fn pow(&self, e: i64) -> Element {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut exponent = e.unsigned_abs();
        let mut result = match self {
            Element::Heisenberg(g) => Element::Heisenberg(HeisenbergElement::identity(g.n())),
            Element::N(_) => Element::N(NElement::identity()),
            Element::Triangular(g) => Element::Triangular(
                TriangularElement::identity(g.size()).expect("size validated on construction"),
            ),
        };
        let mut square = base;
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = result.mul(&square).expect("same group");
            }
            exponent >>= 1;
            if exponent > 0 {
                square = square.mul(&square).expect("same group");
            }
        }
        result
    }

    /// A stable dedup key: the normal-form exponents (or matrix entries)
    /// rendered as text.
    pub fn canonical_key(&self) -> String {
        match self {
            Element::Heisenberg(g) => {
                let join = |v: &[BigInt]| {
                    v.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                format!("h{};{};{};{}", g.n(), join(g.b()), join(g.a()), g.c())
            }
            Element::N(g) => format!(
                "n;{},{};{},{},{}",
                g.m1(),
                g.m2(),
                g.k()[0],
                g.k()[1],
                g.k()[2]
            ),
            Element::Triangular(g) => {
                let mut parts = vec![format!("t{}", g.size())];
                for i in 2..=g.size() {
                    for j in 1..i {
                        parts.push(g.entry(i, j).to_string());
                    }
                }
                parts.join(";")
            }
        }
    }
}

impl GroupDescriptor {
    pub fn identity(&self) -> Result<Element, GroupError> {
        match self {
            GroupDescriptor::Heisenberg { n } => {
                if *n == 0 {
                    return Err(GroupError::InvalidSize { size: 0 });
                }
                Ok(Element::Heisenberg(HeisenbergElement::identity(*n)))
            }
            GroupDescriptor::NGroup => Ok(Element::N(NElement::identity())),
            GroupDescriptor::Triangular { k } => {
                Ok(Element::Triangular(TriangularElement::identity(*k)?))
            }
        }
    }

    /// Named generators in canonical order.
    pub fn generators(&self) -> Result<Vec<(String, Element)>, GroupError> {
        match self {
            GroupDescriptor::Heisenberg { n } => {
                if *n == 0 {
                    return Err(GroupError::InvalidSize { size: 0 });
                }
                let mut gens = Vec::new();
                for i in 0..*n {
                    let mut a = vec![BigInt::zero(); *n];
                    a[i] = BigInt::one();
                    gens.push((
                        format!("x{}", i + 1),
                        Element::Heisenberg(HeisenbergElement::new(
                            *n,
                            vec![BigInt::zero(); *n],
                            a,
                            BigInt::zero(),
                        )?),
                    ));
                }
                for i in 0..*n {
                    let mut b = vec![BigInt::zero(); *n];
                    b[i] = BigInt::one();
                    gens.push((
                        format!("y{}", i + 1),
                        Element::Heisenberg(HeisenbergElement::new(
                            *n,
                            b,
                            vec![BigInt::zero(); *n],
                            BigInt::zero(),
                        )?),
                    ));
                }
                gens.push((
                    "z".to_string(),
                    Element::Heisenberg(HeisenbergElement::new(
                        *n,
                        vec![BigInt::zero(); *n],
                        vec![BigInt::zero(); *n],
                        BigInt::one(),
                    )?),
                ));
                Ok(gens)
            }
            GroupDescriptor::NGroup => {
                let unit = |m1: i64, m2: i64, k1: i64, k2: i64, k3: i64| {
                    Element::N(NElement::new(
                        BigInt::from(m1),
                        BigInt::from(m2),
                        BigInt::from(k1),
                        BigInt::from(k2),
                        BigInt::from(k3),
                    ))
                };
                Ok(vec![
                    ("b1".to_string(), unit(1, 0, 0, 0, 0)),
                    ("b2".to_string(), unit(0, 1, 0, 0, 0)),
                    ("a1".to_string(), unit(0, 0, 1, 0, 0)),
                    ("a2".to_string(), unit(0, 0, 0, 1, 0)),
                    ("a3".to_string(), unit(0, 0, 0, 0, 1)),
                ])
            }
            GroupDescriptor::Triangular { k } => {
                let mut gens = Vec::new();
                for i in 2..=*k {
                    for j in 1..i {
                        gens.push((
                            format!("e{i}{j}"),
                            Element::Triangular(TriangularElement::generator(*k, i, j)?),
                        ));
                    }
                }
                Ok(gens)
            }
        }
    }

    /// All elements of word length at most `radius` over the (optionally
    /// restricted) symmetric generating set, in breadth-first discovery
    /// order starting with the identity.
    pub fn word_ball(
        &self,
        radius: usize,
        filter: Option<&[String]>,
    ) -> Result<Vec<Element>, GroupError> {
        let named = self.generators()?;
        let selected: Vec<Element> = match filter {
            None => named.iter().map(|(_, g)| g.clone()).collect(),
            Some(names) => {
                let mut out = Vec::new();
                for name in names {
                    let found = named
                        .iter()
                        .find(|(n, _)| n == name)
                        .ok_or_else(|| GroupError::UnknownGenerator { name: name.clone() })?;
                    out.push(found.1.clone());
                }
                out
            }
        };
        let mut steps: Vec<Element> = Vec::new();
        for g in &selected {
            steps.push(g.clone());
            steps.push(g.inverse());
        }
        let identity = self.identity()?;
        let mut seen: BTreeSet<String> = BTreeSet::new();
        seen.insert(identity.canonical_key());
        let mut ball = vec![identity.clone()];
        let mut frontier = vec![identity];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &steps {
                    let h = g.mul(s)?;
                    if seen.insert(h.canonical_key()) {
                        ball.push(h.clone());
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        Ok(ball)
    }
}

/// A lexicographic order on a group, assembled from one lattice order
/// per convex-chain factor.
#[derive(Debug, Clone)]
pub struct LexGroupOrder {
    descriptor: GroupDescriptor,
    chain: ChainDescription,
    /// Top-down: `factors[0]` decides first, the last factor lives on
    /// the kernel subgroup.
    factors: Vec<LatticeOrder>,
}

impl LexGroupOrder {
    /// `factors` are listed top-down (classification order). Factor
    /// orders may be partial; elements their level cannot separate
    /// classify as `Zero`.
    pub fn new(
        descriptor: GroupDescriptor,
        factors: Vec<LatticeOrder>,
    ) -> Result<Self, GroupError> {
        let chain = convex_series(&descriptor)?;
        if factors.len() != chain.levels.len() {
            return Err(GroupError::FactorCount {
                want: chain.levels.len(),
                got: factors.len(),
            });
        }
        for (index, factor) in factors.iter().enumerate() {
            let level = &chain.levels[chain.levels.len() - 1 - index];
            if factor.rank() != level.rank {
                return Err(GroupError::FactorRank {
                    index,
                    want: level.rank,
                    got: factor.rank(),
                });
            }
        }
        Ok(LexGroupOrder {
            descriptor,
            chain,
            factors,
        })
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn chain(&self) -> &ChainDescription {
        &self.chain
    }

    /// Factor orders, top-down.
    pub fn factors(&self) -> &[LatticeOrder] {
        &self.factors
    }

    /// The bottom (kernel) factor order.
    pub fn kernel_order(&self) -> &LatticeOrder {
        self.factors.last().expect("chain has at least one level")
    }

    /// Coordinate vectors of `g` at each level, top-down. The vector at
    /// a given level is the factor image of `g` provided all higher
    /// vectors vanish — exactly the situation in which `classify`
    /// consults it.
    pub fn level_coordinates(&self, g: &Element) -> Result<Vec<Vec<BigInt>>, GroupError> {
        self.check_descriptor(g)?;
        match g {
            Element::Heisenberg(h) => {
                let mut kernel = h.a().to_vec();
                kernel.push(h.c().clone());
                Ok(vec![h.quotient_coordinates(), kernel])
            }
            Element::N(n) => Ok(vec![
                n.quotient_coordinates(),
                n.k().iter().map(|&x| x.clone()).collect(),
            ]),
            Element::Triangular(t) => Ok(self
                .chain
                .levels
                .iter()
                .rev()
                .map(|level| {
                    level
                        .positions
                        .iter()
                        .map(|&(i, j)| t.entry(i, j).clone())
                        .collect()
                })
                .collect()),
        }
    }

    /// Sign of `g`: the factor verdict at the topmost level with a
    /// nonzero coordinate vector. A `Zero` verdict from a partial factor
    /// is returned as is — lower levels cannot overrule it.
    pub fn classify(&self, g: &Element) -> Result<Sign, GroupError> {
        Ok(self.classify_with_level(g)?.0)
    }

    /// Like [`classify`](Self::classify), also reporting the deciding
    /// level as a top-down factor index.
    pub fn classify_with_level(&self, g: &Element) -> Result<(Sign, Option<usize>), GroupError> {
        let coords = self.level_coordinates(g)?;
        for (index, (vector, factor)) in coords.iter().zip(&self.factors).enumerate() {
            if vector.iter().any(|x| !x.is_zero()) {
                return Ok((factor.classify(vector)?, Some(index)));
            }
        }
        Ok((Sign::Zero, None))
    }

    /// The conjugation action on kernel coordinates: `g^{-1} h g` has
    /// kernel coordinates `M * coords(h)` for kernel elements `h`. For
    /// triangular groups this also verifies that conjugation by `g`
    /// fixes every factor above the kernel (it always does for the
    /// normal-form groups).
    pub fn kernel_conjugation_matrix(&self, g: &Element) -> Result<UnimodularMatrix, GroupError> {
        self.check_descriptor(g)?;
        match g {
            Element::Heisenberg(h) => Ok(h.conj_representation().to_unimodular()),
            Element::N(n) => Ok(n.conj_representation()),
            Element::Triangular(t) => self.triangular_conjugation(t),
        }
    }

    /// The conjugate order `g^{-1} P g`: same factors above the kernel,
    /// kernel factor transported along the conjugation matrix.
    pub fn conjugate(&self, g: &Element) -> Result<LexGroupOrder, GroupError> {
        let matrix = self.kernel_conjugation_matrix(g)?;
        let mut factors = self.factors.clone();
        let kernel = factors.last_mut().expect("chain has at least one level");
        *kernel = kernel.act(&matrix)?;
        Ok(LexGroupOrder {
            descriptor: self.descriptor.clone(),
            chain: self.chain.clone(),
            factors,
        })
    }

    /// Semantic equality: same group, and every factor pair classifies
    /// its level identically.
    pub fn orders_equal(&self, other: &LexGroupOrder) -> bool {
        self.descriptor == other.descriptor
            && self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| a.orders_equal(b))
    }

    fn check_descriptor(&self, g: &Element) -> Result<(), GroupError> {
        let got = g.descriptor();
        if got != self.descriptor {
            return Err(GroupError::DescriptorMismatch {
                want: self.descriptor.to_string(),
                got: got.to_string(),
            });
        }
        Ok(())
    }

    /// Conjugation matrix on the kernel level of a triangular group,
    /// with the series checks: every generator above the kernel must
    /// conjugate to itself modulo strictly lower levels, and kernel
    /// generators must stay inside the kernel subgroup.
    fn triangular_conjugation(
        &self,
        g: &TriangularElement,
    ) -> Result<UnimodularMatrix, GroupError> {
        let levels = &self.chain.levels;
        let size = g.size();
        let ginv = g.inverse();
        for (li, level) in levels.iter().enumerate().skip(1) {
            for (pi, &(i, j)) in level.positions.iter().enumerate() {
                let t = TriangularElement::generator(size, i, j)?;
                let s = ginv.mul(&t)?.mul(g)?;
                for (lj, upper) in levels.iter().enumerate().skip(li) {
                    for (pj, &(i2, j2)) in upper.positions.iter().enumerate() {
                        let expected = if lj == li && pj == pi {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        };
                        if *s.entry(i2, j2) != expected {
                            return Err(GroupError::SeriesNotFixed {
                                generator: level.generators[pi].clone(),
                            });
                        }
                    }
                }
            }
        }
        let kernel = &levels[0];
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        for (pi, &(i, j)) in kernel.positions.iter().enumerate() {
            let t = TriangularElement::generator(size, i, j)?;
            let s = ginv.mul(&t)?.mul(g)?;
            for upper in levels.iter().skip(1) {
                for &(i2, j2) in &upper.positions {
                    if !s.entry(i2, j2).is_zero() {
                        return Err(GroupError::SeriesNotFixed {
                            generator: kernel.generators[pi].clone(),
                        });
                    }
                }
            }
            columns.push(
                kernel
                    .positions
                    .iter()
                    .map(|&(i2, j2)| s.entry(i2, j2).clone())
                    .collect(),
            );
        }
        let rank = kernel.positions.len();
        let rows: Vec<Vec<BigInt>> = (0..rank)
            .map(|r| (0..rank).map(|c| columns[c][r].clone()).collect())
            .collect();
        Ok(UnimodularMatrix::new(rows)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ExactScalar, Radicands};

    fn int_order(rank: usize, rows: &[&[i64]], partial: bool) -> LatticeOrder {
        let basis = Radicands::rationals();
        let vectors = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| ExactScalar::from_integer(basis.clone(), x))
                    .collect()
            })
            .collect();
        if partial {
            LatticeOrder::new_partial(rank, vectors).unwrap()
        } else {
            LatticeOrder::new(rank, vectors).unwrap()
        }
    }

    fn h3_order() -> LexGroupOrder {
        LexGroupOrder::new(
            GroupDescriptor::Heisenberg { n: 1 },
            vec![
                int_order(1, &[&[1]], false),
                int_order(2, &[&[1, 1]], true),
            ],
        )
        .unwrap()
    }

    #[test]
    fn chain_shapes() {
        let h = convex_series(&GroupDescriptor::Heisenberg { n: 2 }).unwrap();
        assert_eq!(
            h.levels.iter().map(|l| l.rank).collect::<Vec<_>>(),
            vec![3, 2]
        );
        let n = convex_series(&GroupDescriptor::NGroup).unwrap();
        assert_eq!(
            n.levels.iter().map(|l| l.rank).collect::<Vec<_>>(),
            vec![3, 2]
        );
        let t4 = convex_series(&GroupDescriptor::Triangular { k: 4 }).unwrap();
        assert_eq!(
            t4.levels.iter().map(|l| l.rank).collect::<Vec<_>>(),
            vec![3, 2, 1]
        );
        assert_eq!(t4.levels[0].positions, vec![(4, 1), (4, 2), (4, 3)]);
        let t6 = convex_series(&GroupDescriptor::Triangular { k: 6 }).unwrap();
        assert_eq!(
            t6.levels.iter().map(|l| l.rank).collect::<Vec<_>>(),
            vec![3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
        );
        assert_eq!(t6.levels[3].positions, vec![(5, 1)]);
        assert_eq!(t6.levels.last().unwrap().positions, vec![(6, 5)]);
    }

    #[test]
    fn lex_classification_descends_levels() {
        let order = h3_order();
        let gens = GroupDescriptor::Heisenberg { n: 1 }.generators().unwrap();
        let x = &gens[0].1;
        let y = &gens[1].1;
        let z = &gens[2].1;
        assert_eq!(order.classify(y).unwrap(), Sign::Positive);
        assert_eq!(order.classify(&y.inverse()).unwrap(), Sign::Negative);
        assert_eq!(order.classify(x).unwrap(), Sign::Positive);
        assert_eq!(order.classify(z).unwrap(), Sign::Positive);
        // x z^{-1} has kernel coordinates (1, -1), unseparated by (1, 1).
        let unseparated = x.mul(&z.inverse()).unwrap();
        assert_eq!(order.classify(&unseparated).unwrap(), Sign::Zero);
        let (_, level) = order.classify_with_level(x).unwrap();
        assert_eq!(level, Some(1));
    }

    #[test]
    fn conjugating_heisenberg_shifts_kernel_functional() {
        let order = h3_order();
        let gens = GroupDescriptor::Heisenberg { n: 1 }.generators().unwrap();
        let y = &gens[1].1;
        let conj = order.conjugate(y).unwrap();
        // Kernel functional (1, 1) becomes (0, 1).
        let v = &conj.kernel_order().vectors()[0];
        assert!(v[0].is_zero());
        assert_eq!(v[1].sign(), Sign::Positive);
        // Conjugating by z does nothing.
        let z = &gens[2].1;
        assert!(order.conjugate(z).unwrap().orders_equal(&order));
        assert!(!conj.orders_equal(&order));
    }

    #[test]
    fn triangular_conjugation_checks_series() {
        let radicals = Radicands::new(vec![2, 3]).unwrap();
        let kernel = LatticeOrder::new(
            3,
            vec![vec![
                ExactScalar::radical(radicals.clone(), 2).unwrap(),
                ExactScalar::radical(radicals.clone(), 3).unwrap(),
                ExactScalar::from_integer(radicals.clone(), 1),
            ]],
        )
        .unwrap();
        let order = LexGroupOrder::new(
            GroupDescriptor::Triangular { k: 4 },
            vec![
                int_order(1, &[&[1]], false),
                int_order(2, &[&[1, 0], &[0, 1]], false),
                kernel,
            ],
        )
        .unwrap();
        // Crossing shears: conjugation by e21 moves e32 into e31 and is
        // rejected.
        let e21 = Element::Triangular(TriangularElement::generator(4, 2, 1).unwrap());
        assert!(matches!(
            order.conjugate(&e21),
            Err(GroupError::SeriesNotFixed { .. })
        ));
        // Conjugation by e31 is an elementary shear of the kernel level
        // coordinates ((4,1), (4,2), (4,3)).
        let e31 = Element::Triangular(TriangularElement::generator(4, 3, 1).unwrap());
        let m = order.kernel_conjugation_matrix(&e31).unwrap();
        assert_eq!(
            m.rows(),
            &[
                vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)],
                vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)],
            ]
        );
        let e32 = Element::Triangular(TriangularElement::generator(4, 3, 2).unwrap());
        let m = order.kernel_conjugation_matrix(&e32).unwrap();
        assert_eq!(
            m.rows(),
            &[
                vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)],
                vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)],
            ]
        );
        // Kernel letters act trivially.
        let e41 = Element::Triangular(TriangularElement::generator(4, 4, 1).unwrap());
        assert!(order.conjugate(&e41).unwrap().orders_equal(&order));
    }

    #[test]
    fn word_ball_respects_filter_and_radius() {
        let descriptor = GroupDescriptor::Heisenberg { n: 1 };
        let filter = vec!["y1".to_string()];
        let ball = descriptor.word_ball(2, Some(&filter)).unwrap();
        assert_eq!(ball.len(), 5);
        assert!(ball[0].is_identity());
        let full = descriptor.word_ball(1, None).unwrap();
        // Identity plus both signs of three generators.
        assert_eq!(full.len(), 7);
        assert!(matches!(
            descriptor.word_ball(1, Some(&["q".to_string()])),
            Err(GroupError::UnknownGenerator { .. })
        ));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let gens = GroupDescriptor::NGroup.generators().unwrap();
        let g = gens[0].1.mul(&gens[4].1).unwrap();
        let mut acc = GroupDescriptor::NGroup.identity().unwrap();
        for _ in 0..7 {
            acc = acc.mul(&g).unwrap();
        }
        assert_eq!(g.pow(7), acc);
        assert_eq!(g.pow(-7), acc.inverse());
        assert!(g.pow(0).is_identity());
    }
}
