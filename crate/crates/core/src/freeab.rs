//! Free abelian groups `q(F(P))` with finite support over a basis `P`.
//!
//! Elements are stored as a map from basis index to nonzero exponent, so
//! structural equality coincides with equality of group elements. The
//! submonoid `F(P)` consists of the elements with nonnegative exponents.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeAbelian<B: Ord> {
    exps: BTreeMap<B, BigInt>,
}

impl<B: Ord> Default for FreeAbelian<B> {
    fn default() -> Self {
        FreeAbelian { exps: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> FreeAbelian<B> {
    /// The neutral element (empty support).
    pub fn one() -> Self {
        Self::default()
    }

    pub fn basis(p: B) -> Self {
        Self::power(p, BigInt::one())
    }

    pub fn power(p: B, e: impl Into<BigInt>) -> Self {
        Self::from_pairs([(p, e.into())])
    }

    /// Sums exponents of repeated keys and drops zeros.
    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (B, E)>,
        E: Into<BigInt>,
    {
        let mut exps: BTreeMap<B, BigInt> = BTreeMap::new();
        for (p, e) in pairs {
            *exps.entry(p).or_default() += e.into();
        }
        exps.retain(|_, e| !e.is_zero());
        FreeAbelian { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// True when every exponent is nonnegative, i.e. the element lies in `F(P)`.
    pub fn is_nonnegative(&self) -> bool {
        self.exps.values().all(|e| !e.is_negative())
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &BigInt)> {
        self.exps.iter()
    }

    pub fn supp(&self) -> BTreeSet<B> {
        self.exps.keys().cloned().collect()
    }

    pub fn val(&self, p: &B) -> BigInt {
        self.exps.get(p).cloned().unwrap_or_default()
    }

    /// Sum of all exponents.
    pub fn degree(&self) -> BigInt {
        self.exps.values().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (p, e) in &other.exps {
            *exps.entry(p.clone()).or_default() += e;
        }
        exps.retain(|_, e| !e.is_zero());
        FreeAbelian { exps }
    }

    pub fn inv(&self) -> Self {
        FreeAbelian { exps: self.exps.iter().map(|(p, e)| (p.clone(), -e)).collect() }
    }

    /// `self * other^{-1}`
    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::one();
        }
        FreeAbelian { exps: self.exps.iter().map(|(p, e)| (p.clone(), e * k)).collect() }
    }

    /// Exponent-wise minimum over the union of supports.
    pub fn gcd(&self, other: &Self) -> Self {
        let keys: BTreeSet<&B> = self.exps.keys().chain(other.exps.keys()).collect();
        Self::from_pairs(keys.into_iter().map(|p| {
            let (a, b) = (self.val(p), other.val(p));
            (p.clone(), a.min(b))
        }))
    }

    /// `self | other` in the divisibility order: every exponent of `self` is
    /// at most the corresponding exponent of `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().all(|(p, e)| *e <= other.val(p))
            && other.exps.iter().all(|(p, e)| self.exps.contains_key(p) || !e.is_negative())
    }

    /// Relabels the basis through a bijection.
    pub fn map_basis<C: Ord + Clone>(&self, f: impl Fn(&B) -> C) -> FreeAbelian<C> {
        FreeAbelian::from_pairs(self.exps.iter().map(|(p, e)| (f(p), e.clone())))
    }

    /// Largest support element under `order`.
    pub fn max_supp_by(&self, order: impl Fn(&B, &B) -> Ordering) -> Option<&B> {
        self.exps.keys().max_by(|a, b| order(a, b))
    }
}

/// Lexicographic order on `q(F(P))` induced by a total order on the basis:
/// `c > 1` iff the exponent at the largest support element of `c` is
/// positive, and `a` is compared with `b` through the sign of `b^{-1} a`.
pub fn lex_compare<B: Ord + Clone>(
    a: &FreeAbelian<B>,
    b: &FreeAbelian<B>,
    base_order: impl Fn(&B, &B) -> Ordering,
) -> Ordering {
    let c = a.div(b);
    match c.max_supp_by(base_order) {
        None => Ordering::Equal,
        Some(top) => c.val(top).sign_ordering(),
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for FreeAbelian<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(p, e)| if e.is_one() { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}
