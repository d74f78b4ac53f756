//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group `Z^r x Z/d_1 x ... x Z/d_k` (with `d_1 | d_2 | ... | d_k`, all
//! `d_i >= 2`) is generated by the canonical generating set: the `r` free
//! generators first, then the `k` torsion generators. Elements and
//! homomorphism matrices are always written in these coordinates.

mod hom;
mod matrix;
mod parse;
mod smith;

use std::fmt;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::seeded;

pub use hom::{cokernel, Cokernel, GroupHom};
pub use matrix::IntMatrix;
pub use parse::parse_group;
pub use smith::{smith_normal_form, SmithForm};

/// Free coordinates of random elements are drawn from `[-FREE_SPAN, FREE_SPAN]`.
pub const FREE_SPAN: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

/// An element in canonical coordinates. Torsion entries are reduced into
/// `[0, d_i)`. The derived order is the lexicographic order on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElem {
    pub fn free_part(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Free coordinates followed by torsion coordinates.
    pub fn coords(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Result<Self> {
        Self::from_moduli(0, &[n.into()])
    }

    /// Builds a group from invariant factors that already form a valid chain.
    pub fn from_invariants(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if let Some(d) = torsion.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::Modulus(d.clone()));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidArgument(format!(
                "invariant factors {torsion:?} do not form a divisibility chain"
            )));
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    /// `Z^free_rank x Z/m_1 x ... x Z/m_k` for arbitrary moduli `m_i >= 2`,
    /// normalized to invariant-factor form.
    pub fn from_moduli(free_rank: usize, moduli: &[BigInt]) -> Result<Self> {
        if let Some(m) = moduli.iter().find(|m| **m < BigInt::from(2)) {
            return Err(Error::Modulus(m.clone()));
        }
        let snf = smith_normal_form(&IntMatrix::diag(moduli));
        let torsion = snf.invariants().into_iter().filter(|d| !d.is_one()).collect();
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Size of the canonical generating set.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the `i`-th canonical generator; zero stands for infinite order.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    /// Relation matrix: one column `d_i e_{r+i}` per torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.ngens(), self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            m[(self.free_rank + i, i)] = d.clone();
        }
        m
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    pub fn generator(&self, i: usize) -> GroupElem {
        let mut c = vec![BigInt::zero(); self.ngens()];
        c[i] = BigInt::one();
        self.from_coords(&c).expect("generator index in range")
    }

    /// Element with the given coordinates, reducing torsion entries.
    pub fn elem(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElem> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(Error::GroupMismatch {
                elem: format!("{free:?}|{torsion:?}"),
                group: self.to_string(),
            });
        }
        let torsion = torsion.iter().zip(&self.torsion).map(|(t, d)| t.mod_floor(d)).collect();
        Ok(GroupElem { free, torsion })
    }

    pub fn elem_i64(&self, free: &[i64], torsion: &[i64]) -> Result<GroupElem> {
        self.elem(
            free.iter().map(|&x| x.into()).collect(),
            torsion.iter().map(|&x| x.into()).collect(),
        )
    }

    pub fn from_coords(&self, coords: &[BigInt]) -> Result<GroupElem> {
        if coords.len() != self.ngens() {
            return Err(Error::GroupMismatch {
                elem: format!("{coords:?}"),
                group: self.to_string(),
            });
        }
        let (free, torsion) = coords.split_at(self.free_rank);
        self.elem(free.to_vec(), torsion.to_vec())
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        g.free.len() == self.free_rank
            && g.torsion.len() == self.torsion.len()
            && g.torsion.iter().zip(&self.torsion).all(|(t, d)| !t.is_negative() && t < d)
    }

    fn check(&self, g: &GroupElem) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch { elem: g.to_string(), group: self.to_string() })
        }
    }

    pub fn add(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem> {
        self.check(g)?;
        self.check(h)?;
        let free = g.free.iter().zip(&h.free).map(|(a, b)| a + b).collect();
        let torsion = g.torsion.iter().zip(&h.torsion).map(|(a, b)| a + b).collect();
        self.elem(free, torsion)
    }

    pub fn neg(&self, g: &GroupElem) -> Result<GroupElem> {
        self.check(g)?;
        self.elem(g.free.iter().map(|a| -a).collect(), g.torsion.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem> {
        self.add(g, &self.neg(h)?)
    }

    pub fn scale(&self, k: &BigInt, g: &GroupElem) -> Result<GroupElem> {
        self.check(g)?;
        self.elem(g.free.iter().map(|a| a * k).collect(), g.torsion.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self, g: &GroupElem) -> Result<bool> {
        self.check(g)?;
        Ok(g.is_zero())
    }

    /// Uniform on torsion coordinates; free coordinates in `[-FREE_SPAN, FREE_SPAN]`.
    pub fn random_elem(&self, seed: u64) -> GroupElem {
        self.random_elem_with(&mut seeded::stream(seed, 0))
    }

    pub fn random_elem_with<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElem {
        let free = (0..self.free_rank).map(|_| BigInt::from(rng.gen_range(-FREE_SPAN..=FREE_SPAN))).collect();
        let torsion = self.torsion.iter().map(|d| rng.gen_bigint_range(&BigInt::zero(), d)).collect();
        GroupElem { free, torsion }
    }

    /// All elements in coordinate order, for finite groups of order at most `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<GroupElem>> {
        let order = self.order()?;
        if order > BigInt::from(limit) {
            return None;
        }
        let mut out = vec![self.zero()];
        for (i, d) in self.torsion.iter().enumerate() {
            let mut next = Vec::new();
            for g in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut h = g.clone();
                    h.torsion[i] = k.clone();
                    next.push(h);
                    k += 1;
                }
            }
            out = next;
        }
        out.sort();
        Some(out)
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", terms.join(" x "))
    }
}

impl std::str::FromStr for FGAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z4() -> FGAbelianGroup {
        FGAbelianGroup::cyclic(4).unwrap()
    }

    #[test]
    fn identity_law_in_z4() {
        let g = z4();
        for k in 0..4 {
            let x = g.elem_i64(&[], &[k]).unwrap();
            assert_eq!(g.add(&g.zero(), &x).unwrap(), x);
        }
    }

    #[test]
    fn modular_reduction_in_z4() {
        let g = z4();
        let three = g.elem_i64(&[], &[3]).unwrap();
        let two = g.elem_i64(&[], &[2]).unwrap();
        assert_eq!(g.add(&three, &two).unwrap(), g.elem_i64(&[], &[1]).unwrap());
    }

    #[test]
    fn componentwise_negation() {
        let g = parse_group("Z x Z/4").unwrap();
        let x = g.elem_i64(&[1], &[3]).unwrap();
        assert_eq!(g.neg(&x).unwrap(), g.elem_i64(&[-1], &[1]).unwrap());
    }

    #[test]
    fn mismatch_is_reported() {
        let g = z4();
        let h = parse_group("Z").unwrap();
        assert!(matches!(g.add(&g.zero(), &h.zero()), Err(Error::GroupMismatch { .. })));
        let unreduced = GroupElem { free: vec![], torsion: vec![BigInt::from(7)] };
        assert!(g.add(&unreduced, &g.zero()).is_err());
        assert!(g.is_zero(&h.generator(0)).is_err());
    }

    #[test]
    fn from_invariants_validates_chain() {
        assert!(FGAbelianGroup::from_invariants(0, vec![2.into(), 3.into()]).is_err());
        assert!(FGAbelianGroup::from_invariants(0, vec![1.into()]).is_err());
        assert!(FGAbelianGroup::from_invariants(1, vec![2.into(), 4.into()]).is_ok());
    }

    #[test]
    fn random_elem_is_deterministic() {
        let g = parse_group("Z^2 x Z/4").unwrap();
        assert_eq!(g.random_elem(9), g.random_elem(9));
        assert!(g.contains(&g.random_elem(9)));
    }

    #[test]
    fn element_enumeration() {
        let g = parse_group("Z/2 x Z/2").unwrap();
        let els = g.elements(100).unwrap();
        assert_eq!(els.len(), 4);
        assert!(parse_group("Z").unwrap().elements(100).is_none());
        assert_eq!(FGAbelianGroup::trivial().elements(1).unwrap(), vec![FGAbelianGroup::trivial().zero()]);
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "Z", "Z^2 x Z/4", "Z/2 x Z/2", "Z/6"] {
            assert_eq!(parse_group(s).unwrap().to_string(), s);
        }
    }

    fn shapes() -> Vec<FGAbelianGroup> {
        ["0", "Z/2", "Z/6", "Z", "Z^2 x Z/4", "Z/2 x Z/2", "Z x Z/3 x Z/9"]
            .iter()
            .map(|s| parse_group(s).unwrap())
            .collect()
    }

    #[test]
    fn group_axioms_on_random_triples() {
        for g in shapes() {
            let mut rng = seeded::named(11, &g.to_string());
            for _ in 0..1000 {
                let a = g.random_elem_with(&mut rng);
                let b = g.random_elem_with(&mut rng);
                let c = g.random_elem_with(&mut rng);
                let ab_c = g.add(&g.add(&a, &b).unwrap(), &c).unwrap();
                let a_bc = g.add(&a, &g.add(&b, &c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                assert_eq!(g.add(&a, &g.zero()).unwrap(), a);
                assert!(g.add(&a, &g.neg(&a).unwrap()).unwrap().is_zero());
                assert_eq!(g.add(&a, &b).unwrap(), g.add(&b, &a).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn scale_matches_repeated_addition(k in 0i64..12, t in 0i64..36) {
            let g = parse_group("Z x Z/3 x Z/12").unwrap();
            let x = g.elem_i64(&[t - 18], &[t, t + 1]).unwrap();
            let mut acc = g.zero();
            for _ in 0..k {
                acc = g.add(&acc, &x).unwrap();
            }
            prop_assert_eq!(g.scale(&BigInt::from(k), &x).unwrap(), acc);
        }
    }
}
