//! Finite groups given by Cayley tables, finite abelian groups in
//! invariant-factor form, automorphism actions and equivariant modules.
//!
//! Elements are plain indices. Every group has its identity at index 0, and
//! all downstream enumeration walks elements in increasing index order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group stored as its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and returns the group with its identity at
    /// index 0.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        validate_group_with_relabeling(rows).map(|(g, _)| g)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// ℤ/n with element i standing for the residue i.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        Self { order: n, table, inverse }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }
}

/// `validate_group`: checks closure, identity, inverses and associativity, in
/// that order, reporting the first witness of each in the labels of the input.
/// If the identity is not at index 0, labels 0 and e are swapped; the second
/// component maps old labels to new ones.
pub fn validate_group_with_relabeling(rows: &[Vec<usize>]) -> Result<(FiniteGroup, Vec<usize>)> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { row, len: r.len(), expected: n });
        }
    }
    for (row, r) in rows.iter().enumerate() {
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::NotClosed { row, col, value });
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|j| rows[e][j] == j && rows[j][e] == j))
        .ok_or(Error::NoIdentity)?;
    let mut inverse = vec![0; n];
    for i in 0..n {
        inverse[i] = (0..n)
            .find(|&j| rows[i][j] == e && rows[j][i] == e)
            .ok_or(Error::NoInverse(i))?;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rows[rows[i][j]][k] != rows[i][rows[j][k]] {
                    return Err(Error::NotAssociative(i, j, k));
                }
            }
        }
    }

    let relabel: Vec<usize> = (0..n)
        .map(|i| if i == e { 0 } else if i == 0 { e } else { i })
        .collect();
    // relabel is an involution, so it is its own inverse
    let mut table = vec![0; n * n];
    let mut inv = vec![0; n];
    for i in 0..n {
        inv[relabel[i]] = relabel[inverse[i]];
        for j in 0..n {
            table[relabel[i] * n + relabel[j]] = relabel[rows[i][j]];
        }
    }
    Ok((FiniteGroup { order: n, table, inverse: inv }, relabel))
}

pub fn validate_group(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
    FiniteGroup::from_table(rows)
}

/// ⊕ ℤ/dᵢ with d₁ | d₂ | … . Elements are indexed in mixed radix with the
/// first coordinate most significant, so index order is lexicographic order
/// on coordinate tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
}

/// Upper bound on |A|; the add table is |A|² entries.
pub const MAX_ABELIAN_ORDER: usize = 1 << 12;

impl FiniteAbelianGroup {
    pub fn new(factors: &[u64]) -> Result<Self> {
        let ok = factors.iter().all(|&d| d >= 2)
            && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(Error::BadInvariantFactors(factors.to_vec()));
        }
        let order = factors.iter().map(|&d| d as u128).product::<u128>();
        if order > MAX_ABELIAN_ORDER as u128 {
            return Err(Error::GroupTooLarge(order));
        }
        let order = order as usize;
        let mut g = Self { factors: factors.to_vec(), order, add: Vec::new(), neg: Vec::new() };
        let coords: Vec<Vec<u64>> = (0..order).map(|i| g.coords(i)).collect();
        g.add = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let sum: Vec<u64> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .zip(&g.factors)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                g.add[a * order + b] = g.index(&sum);
            }
        }
        g.neg = (0..order)
            .map(|a| (0..order).find(|&b| g.add[a * order + b] == 0).unwrap())
            .collect();
        Ok(g)
    }

    pub fn cyclic(d: u64) -> Self {
        Self::new(&[d]).expect("cyclic group")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (c, &d) in out.iter_mut().zip(&self.factors).rev() {
            *c = index as u64 % d;
            index /= d as usize;
        }
        out
    }

    /// Index of the element with these coordinates, reduced mod each factor.
    pub fn index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + (c % d) as usize)
    }

    /// Index from signed coordinates.
    pub fn index_signed(&self, coords: &[i64]) -> usize {
        let reduced: Vec<u64> = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect();
        self.index(&reduced)
    }

    /// Coordinates are in range for the given tuple.
    pub fn contains(&self, coords: &[u64]) -> bool {
        coords.len() == self.factors.len() && coords.iter().zip(&self.factors).all(|(c, d)| c < d)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// c·a for any integer c.
    pub fn scale(&self, c: i64, a: usize) -> usize {
        let coords: Vec<i64> = self
            .coords(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| ((x as i128 * c as i128).rem_euclid(d as i128)) as i64)
            .collect();
        self.index_signed(&coords)
    }

    /// Exponent (largest invariant factor, 1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Element with a single 1 in coordinate `j`.
    pub fn basis(&self, j: usize) -> usize {
        let mut c = vec![0; self.rank()];
        c[j] = 1;
        self.index(&c)
    }

    /// Integer matrix M with `coords(α(a)) ≡ M · coords(a)` for an
    /// automorphism α given as an element table. Row-major, rank × rank.
    pub fn automorphism_matrix(&self, table: &[usize]) -> Vec<i64> {
        let k = self.rank();
        let mut m = vec![0i64; k * k];
        for j in 0..k {
            let img = self.coords(table[self.basis(j)]);
            for i in 0..k {
                m[i * k + j] = img[i] as i64;
            }
        }
        m
    }
}

/// The binary operation an action must respect.
pub trait Carrier {
    fn size(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
}

impl Carrier for FiniteGroup {
    fn size(&self) -> usize {
        self.order
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }
}

impl Carrier for FiniteAbelianGroup {
    fn size(&self) -> usize {
        self.order
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.add(a, b)
    }
}

/// A left action by automorphisms: `maps[σ][c]` is σ·c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutAction {
    maps: Vec<Vec<usize>>,
}

impl AutAction {
    pub fn trivial(actor_order: usize, carrier_size: usize) -> Self {
        Self { maps: vec![(0..carrier_size).collect(); actor_order] }
    }

    #[inline]
    pub fn apply(&self, actor: usize, c: usize) -> usize {
        self.maps[actor][c]
    }

    pub fn map(&self, actor: usize) -> &[usize] {
        &self.maps[actor]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn is_trivial(&self) -> bool {
        self.maps.iter().all(|m| m.iter().enumerate().all(|(i, &v)| i == v))
    }
}

/// `validate_action`: shape, bijectivity, homomorphism, identity and action
/// laws, first witness of each.
pub fn validate_action<C: Carrier + ?Sized>(
    actor: &FiniteGroup,
    carrier: &C,
    maps: Vec<Vec<usize>>,
) -> Result<AutAction> {
    let n = carrier.size();
    if maps.len() != actor.order() {
        return Err(Error::WrongMapCount { expected: actor.order(), found: maps.len() });
    }
    for (s, m) in maps.iter().enumerate() {
        if m.len() != n || m.iter().any(|&v| v >= n) {
            return Err(Error::MapShape { actor: s });
        }
    }
    for (s, m) in maps.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in m {
            if core::mem::replace(&mut seen[v], true) {
                return Err(Error::NotBijective(s));
            }
        }
    }
    for (s, m) in maps.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                if m[carrier.op(a, b)] != carrier.op(m[a], m[b]) {
                    return Err(Error::NotHomomorphic { actor: s, a, b });
                }
            }
        }
    }
    if maps[FiniteGroup::IDENTITY].iter().enumerate().any(|(i, &v)| i != v) {
        return Err(Error::IdentityActsNontrivially);
    }
    for s in actor.elements() {
        for t in actor.elements() {
            let st = actor.mul(s, t);
            if (0..n).any(|c| maps[s][maps[t][c]] != maps[st][c]) {
                return Err(Error::NotAnAction(s, t));
            }
        }
    }
    Ok(AutAction { maps })
}

/// A Π-module: the data a Gr-category of type (Π, A) is built on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiModule {
    pub pi: FiniteGroup,
    pub a: FiniteAbelianGroup,
    pub pi_on_a: AutAction,
}

impl PiModule {
    pub fn new(pi: FiniteGroup, a: FiniteAbelianGroup, pi_on_a: Vec<Vec<usize>>) -> Result<Self> {
        let pi_on_a = validate_action(&pi, &a, pi_on_a)?;
        Ok(Self { pi, a, pi_on_a })
    }

    pub fn trivial_action(pi: FiniteGroup, a: FiniteAbelianGroup) -> Self {
        let pi_on_a = AutAction::trivial(pi.order(), a.order());
        Self { pi, a, pi_on_a }
    }

    /// x·a
    #[inline]
    pub fn act(&self, x: usize, a: usize) -> usize {
        self.pi_on_a.apply(x, a)
    }
}

/// A Π-module A with compatible Γ-actions on Π and on A:
/// σ(x·a) = (σx)·(σa).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantModule {
    pub base: PiModule,
    pub gamma: FiniteGroup,
    pub gamma_on_pi: AutAction,
    pub gamma_on_a: AutAction,
}

impl EquivariantModule {
    /// `validate_equivariant_module` over already validated parts.
    pub fn new(
        base: PiModule,
        gamma: FiniteGroup,
        gamma_on_pi: AutAction,
        gamma_on_a: AutAction,
    ) -> Result<Self> {
        let em = Self { base, gamma, gamma_on_pi, gamma_on_a };
        em.check_shapes()?;
        if let Some((s, x, a)) = em.equivariance_failure() {
            return Err(Error::NotEquivariant(s, x, a));
        }
        Ok(em)
    }

    /// Validates all six parts from raw tables.
    pub fn from_parts(
        pi: FiniteGroup,
        gamma: FiniteGroup,
        a: FiniteAbelianGroup,
        pi_on_a: Vec<Vec<usize>>,
        gamma_on_pi: Vec<Vec<usize>>,
        gamma_on_a: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let gp = validate_action(&gamma, &pi, gamma_on_pi)?;
        let ga = validate_action(&gamma, &a, gamma_on_a)?;
        let base = PiModule::new(pi, a, pi_on_a)?;
        Self::new(base, gamma, gp, ga)
    }

    /// All actions trivial.
    pub fn trivial(pi: FiniteGroup, gamma: FiniteGroup, a: FiniteAbelianGroup) -> Self {
        let gp = AutAction::trivial(gamma.order(), pi.order());
        let ga = AutAction::trivial(gamma.order(), a.order());
        let base = PiModule::trivial_action(pi, a);
        Self { base, gamma, gamma_on_pi: gp, gamma_on_a: ga }
    }

    fn check_shapes(&self) -> Result<()> {
        let (n, m, k) = (self.pi().order(), self.gamma.order(), self.a().order());
        let ok = self.gamma_on_pi.maps.len() == m
            && self.gamma_on_a.maps.len() == m
            && self.gamma_on_pi.maps.iter().all(|r| r.len() == n)
            && self.gamma_on_a.maps.iter().all(|r| r.len() == k)
            && self.base.pi_on_a.maps.len() == n;
        if ok {
            Ok(())
        } else {
            Err(Error::Shape("action dimensions do not match the groups".into()))
        }
    }

    /// First (σ, x, a) with σ(x·a) ≠ (σx)·(σa), in lexicographic order.
    pub fn equivariance_failure(&self) -> Option<(usize, usize, usize)> {
        for s in self.gamma.elements() {
            for x in self.pi().elements() {
                for a in 0..self.a().order() {
                    let lhs = self.ga(s, self.act(x, a));
                    let rhs = self.act(self.gp(s, x), self.ga(s, a));
                    if lhs != rhs {
                        return Some((s, x, a));
                    }
                }
            }
        }
        None
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.base.pi
    }

    pub fn a(&self) -> &FiniteAbelianGroup {
        &self.base.a
    }

    /// x·a
    #[inline]
    pub fn act(&self, x: usize, a: usize) -> usize {
        self.base.act(x, a)
    }

    /// σx
    #[inline]
    pub fn gp(&self, s: usize, x: usize) -> usize {
        self.gamma_on_pi.apply(s, x)
    }

    /// σa
    #[inline]
    pub fn ga(&self, s: usize, a: usize) -> usize {
        self.gamma_on_a.apply(s, a)
    }
}

/// `validate_equivariant_module` from raw parts.
pub fn validate_equivariant_module(
    pi: FiniteGroup,
    gamma: FiniteGroup,
    a: FiniteAbelianGroup,
    pi_on_a: Vec<Vec<usize>>,
    gamma_on_pi: Vec<Vec<usize>>,
    gamma_on_a: Vec<Vec<usize>>,
) -> Result<EquivariantModule> {
    EquivariantModule::from_parts(pi, gamma, a, pi_on_a, gamma_on_pi, gamma_on_a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn negation(a: &FiniteAbelianGroup) -> Vec<usize> {
        (0..a.order()).map(|x| a.neg(x)).collect()
    }

    #[test]
    fn trivial_and_order_two() {
        let g = validate_group(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let z2 = validate_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2, FiniteGroup::cyclic(2));
    }

    #[test]
    fn missing_inverse_is_reported() {
        assert_eq!(validate_group(&[vec![0, 1], vec![1, 1]]), Err(Error::NoInverse(1)));
    }

    #[test]
    fn group_errors() {
        assert_eq!(validate_group(&[]), Err(Error::EmptyTable));
        assert!(matches!(validate_group(&[vec![0, 1], vec![1]]), Err(Error::NotSquare { row: 1, .. })));
        assert_eq!(
            validate_group(&[vec![0, 2], vec![1, 0]]),
            Err(Error::NotClosed { row: 0, col: 1, value: 2 })
        );
        assert_eq!(validate_group(&[vec![1, 0], vec![1, 0]]), Err(Error::NoIdentity));
        // a quasigroup-ish loop of order 5 with identity but not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(validate_group(&loop5), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn identity_is_relabeled_to_zero() {
        // ℤ/2 with identity at label 1
        let (g, relabel) = validate_group_with_relabeling(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(relabel, vec![1, 0]);
        assert_eq!(g, FiniteGroup::cyclic(2));
        // ℤ/3 with identity at label 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let (g, _) = validate_group_with_relabeling(&rows).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn rows_are_permutations() {
        let g = FiniteGroup::cyclic(5);
        for r in g.rows() {
            let mut s = r.clone();
            s.sort();
            assert_eq!(s, (0..5).collect::<Vec<_>>());
        }
    }

    #[test]
    fn abelian_group_arithmetic() {
        let a = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        assert_eq!(a.order(), 4);
        let x = a.index(&[1, 0]);
        let y = a.index(&[1, 1]);
        assert_eq!(a.coords(a.add(x, y)), vec![0, 1]);
        assert_eq!(a.scale(3, a.index(&[1, 1])), a.index(&[1, 1]));
        assert!(FiniteAbelianGroup::new(&[2, 3]).is_err());
        assert!(FiniteAbelianGroup::new(&[1]).is_err());
        let trivial = FiniteAbelianGroup::new(&[]).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn automorphism_matrix_of_negation() {
        let a = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        let m = a.automorphism_matrix(&negation(&a));
        assert_eq!(m, vec![1, 0, 0, 3]);
    }

    #[test]
    fn actions() {
        let z2 = FiniteGroup::cyclic(2);
        let a3 = FiniteAbelianGroup::cyclic(3);
        assert!(validate_action(&z2, &a3, vec![vec![0, 1, 2]; 2]).is_ok());
        assert!(validate_action(&z2, &a3, vec![vec![0, 1, 2], negation(&a3)]).is_ok());
        assert_eq!(
            validate_action(&z2, &a3, vec![vec![0, 1, 2], vec![0, 1, 1]]),
            Err(Error::NotBijective(1))
        );
        assert_eq!(
            validate_action(&z2, &a3, vec![vec![0, 1, 2], vec![1, 0, 2]]),
            Err(Error::NotHomomorphic { actor: 1, a: 0, b: 0 })
        );
        assert_eq!(
            validate_action(&z2, &a3, vec![negation(&a3), negation(&a3)]),
            Err(Error::IdentityActsNontrivially)
        );
        // ℤ/3 acting on ℤ/3 with generator sending a ↦ −a: s∘s ≠ s²
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(
            validate_action(&z3, &a3, vec![vec![0, 1, 2], negation(&a3), negation(&a3)]),
            Err(Error::NotAnAction(1, 1))
        );
        assert!(matches!(
            validate_action(&z2, &a3, vec![vec![0, 1, 2]]),
            Err(Error::WrongMapCount { .. })
        ));
    }

    #[test]
    fn equivariant_modules() {
        let z2 = FiniteGroup::cyclic(2);
        let a3 = FiniteAbelianGroup::cyclic(3);
        let neg = negation(&a3);
        let id3 = vec![0, 1, 2];
        // Π negates, Γ trivial
        assert!(validate_equivariant_module(
            z2.clone(),
            FiniteGroup::trivial(),
            a3.clone(),
            vec![id3.clone(), neg.clone()],
            vec![vec![0, 1]],
            vec![id3.clone()],
        )
        .is_ok());
        // Π negates, Γ negates A and fixes Π
        assert!(validate_equivariant_module(
            z2.clone(),
            z2.clone(),
            a3.clone(),
            vec![id3.clone(), neg.clone()],
            vec![vec![0, 1], vec![0, 1]],
            vec![id3.clone(), neg.clone()],
        )
        .is_ok());
        let z3 = FiniteGroup::cyclic(3);
        let a2x = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        // Π = ℤ/3 acting on (ℤ/2)² by the order-3 automorphism, Γ = ℤ/2
        // inverting Π but acting trivially on A: σ(x·a) = x·a, (σx)·a = x⁻¹·a.
        let rot: Vec<usize> = {
            // (a, b) ↦ (b, a + b)
            (0..4)
                .map(|i| {
                    let c = a2x.coords(i);
                    a2x.index(&[c[1], (c[0] + c[1]) % 2])
                })
                .collect()
        };
        let rot2: Vec<usize> = rot.iter().map(|&i| rot[i]).collect();
        let err = validate_equivariant_module(
            z3.clone(),
            z2.clone(),
            a2x.clone(),
            vec![(0..4).collect(), rot.clone(), rot2.clone()],
            vec![vec![0, 1, 2], vec![0, 2, 1]],
            vec![(0..4).collect(), (0..4).collect()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotEquivariant(1, 1, _)));
    }
}
