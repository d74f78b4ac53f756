//! Group algebras `K[q(H)]` over an exact field with the automorphism
//! `φ` induced by `τ` (identity on coefficients by default).

mod field;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rand::Rng;

pub use field::{Field, Fp, Rational};

use crate::construct::orbit_order_compare;
use crate::error::{Error, Result};
use crate::freeab::lex_compare;
use crate::krull::{finite_orbit_up_to, tau_star, tau_star_pow, Divisor, KrullMonoidSpec};

/// Finite sum `Σ λ_g g` with `g ∈ q(H)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElem<F: Field> {
    terms: BTreeMap<Divisor, F>,
}

impl<F: Field> Default for GroupAlgebraElem<F> {
    fn default() -> Self {
        GroupAlgebraElem { terms: BTreeMap::new() }
    }
}

impl<F: Field> GroupAlgebraElem<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), Divisor::one())
    }

    pub fn monomial(c: F, g: Divisor) -> Self {
        Self::from_terms_unchecked([(g, c)])
    }

    /// Builds an element, rejecting supports outside `q(H)`.
    pub fn try_from_terms<I>(spec: &KrullMonoidSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Divisor, F)>,
    {
        let f = Self::from_terms_unchecked(terms);
        if let Some(bad) = f.terms.keys().find(|g| !spec.class_sum(g).is_zero()) {
            return Err(Error::NotInQuotient(bad.to_string()));
        }
        Ok(f)
    }

    fn from_terms_unchecked<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Divisor, F)>,
    {
        let mut out: BTreeMap<Divisor, F> = BTreeMap::new();
        for (g, c) in terms {
            let entry = out.entry(g).or_insert_with(F::zero);
            *entry = entry.add(&c);
        }
        out.retain(|_, c| !c.is_zero());
        GroupAlgebraElem { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Units of `K[G]` are exactly the nonzero single terms.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Divisor, &F)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Divisor> {
        self.terms.keys()
    }

    pub fn coeff(&self, g: &Divisor) -> F {
        self.terms.get(g).cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms_unchecked(self.terms.iter().map(|(g, a)| (g.clone(), a.mul(c))))
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        ga_add(self, &other.neg())
    }

    /// Relabels supports and transforms coefficients; the result of two
    /// distinct supports mapping to one is summed.
    pub fn map(&self, support: impl Fn(&Divisor) -> Divisor, coeff: impl Fn(&F) -> F) -> Self {
        Self::from_terms_unchecked(self.terms.iter().map(|(g, c)| (support(g), coeff(c))))
    }
}

impl<F: Field> fmt::Display for GroupAlgebraElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| match (g.is_one(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => g.to_string(),
                (false, false) => format!("{c}*{g}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn ga_add<F: Field>(f: &GroupAlgebraElem<F>, g: &GroupAlgebraElem<F>) -> GroupAlgebraElem<F> {
    GroupAlgebraElem::from_terms_unchecked(f.terms.iter().chain(&g.terms).map(|(s, c)| (s.clone(), c.clone())))
}

/// Convolution product.
pub fn ga_mul<F: Field>(f: &GroupAlgebraElem<F>, g: &GroupAlgebraElem<F>) -> GroupAlgebraElem<F> {
    GroupAlgebraElem::from_terms_unchecked(
        f.terms
            .iter()
            .flat_map(|(a, x)| g.terms.iter().map(move |(b, y)| (a.mul(b), x.mul(y)))),
    )
}

/// Smallest support element under the quotient order.
pub fn min_support<F: Field>(f: &GroupAlgebraElem<F>) -> Option<&Divisor> {
    f.terms.keys().min_by(|a, b| lex_compare(a, b, orbit_order_compare))
}

/// `u⁻¹ f` with `u = λ g`, `g` the least support element and `λ` its
/// coefficient; the unique generator of `f·K[G]` of the form `1 + f′` with
/// `supp(f′) > 1`.
pub fn normed_generator<F: Field>(f: &GroupAlgebraElem<F>) -> Result<GroupAlgebraElem<F>> {
    let g = min_support(f).ok_or(Error::ZeroElement)?;
    let lambda = f.terms[g].inv().expect("stored coefficients are nonzero");
    let g_inv = g.inv();
    Ok(f.map(|s| s.mul(&g_inv), |c| c.mul(&lambda)))
}

/// `φ(f)` with `σ = id`.
pub fn phi_apply<F: Field>(spec: &KrullMonoidSpec, f: &GroupAlgebraElem<F>) -> GroupAlgebraElem<F> {
    phi_apply_with(spec, f, F::clone)
}

/// `φ(Σ λ_g g) = Σ σ(λ_g) τ_*(g)`.
pub fn phi_apply_with<F: Field>(
    spec: &KrullMonoidSpec,
    f: &GroupAlgebraElem<F>,
    sigma: impl Fn(&F) -> F,
) -> GroupAlgebraElem<F> {
    f.map(|g| tau_star(spec, g), sigma)
}

pub fn phi_pow<F: Field>(spec: &KrullMonoidSpec, f: &GroupAlgebraElem<F>, k: i64) -> GroupAlgebraElem<F> {
    f.map(|g| tau_star_pow(spec, g, k), F::clone)
}

/// Whether `φ(f K[G]) ≠ f K[G]`, decided by comparing normed generators.
pub fn principal_ideal_moved<F: Field>(spec: &KrullMonoidSpec, f: &GroupAlgebraElem<F>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    if f.is_unit() {
        return Err(Error::Unit(f.to_string()));
    }
    Ok(normed_generator(&phi_apply(spec, f))? != normed_generator(f)?)
}

/// `Σ_{k<L} φ^k(f)` where `L` is the lcm of the periods of all primes in the
/// support, provided every period is at most `bound`. The result is fixed by
/// `φ`; `None` if some prime has no period within the bound.
pub fn orbit_symmetrize<F: Field>(
    spec: &KrullMonoidSpec,
    f: &GroupAlgebraElem<F>,
    bound: u64,
) -> Option<GroupAlgebraElem<F>> {
    let mut period = 1u64;
    for g in f.support() {
        for (p, _) in g.iter() {
            period = period.lcm(&finite_orbit_up_to(spec, p, bound)?);
            if period > bound {
                return None;
            }
        }
    }
    Some((0..period as i64).fold(GroupAlgebraElem::zero(), |acc, k| ga_add(&acc, &phi_pow(spec, f, k))))
}

/// A random element with up to `max_terms` terms, coefficients in `[-5, 5]`.
pub fn random_elem_with<F: Field, R: Rng + ?Sized>(
    spec: &KrullMonoidSpec,
    rng: &mut R,
    max_terms: usize,
) -> GroupAlgebraElem<F> {
    let n = rng.gen_range(0..=max_terms);
    GroupAlgebraElem::from_terms_unchecked((0..n).map(|_| {
        let c = loop {
            let c = F::from_i64(rng.gen_range(-5..=5));
            if !c.is_zero() {
                break c;
            }
        };
        (spec.random_quotient_with(rng), c)
    }))
}

/// Like [`random_elem_with`] but never zero and never a unit.
pub fn random_nonunit_with<F: Field, R: Rng + ?Sized>(
    spec: &KrullMonoidSpec,
    rng: &mut R,
    max_terms: usize,
) -> GroupAlgebraElem<F> {
    loop {
        let f = random_elem_with(spec, rng, max_terms.max(2));
        if f.len() >= 2 {
            return f;
        }
    }
}

pub fn random_unit_with<F: Field, R: Rng + ?Sized>(spec: &KrullMonoidSpec, rng: &mut R) -> GroupAlgebraElem<F> {
    loop {
        let c = F::from_i64(rng.gen_range(-9..=9));
        if !c.is_zero() {
            return GroupAlgebraElem::monomial(c, spec.random_quotient_with(rng));
        }
    }
}

/// Whether `f` has the shape `1 + f′` with every support element of `f′`
/// greater than 1.
pub fn is_normed<F: Field>(f: &GroupAlgebraElem<F>) -> bool {
    f.coeff(&Divisor::one()).is_one()
        && f
            .support()
            .all(|g| g.is_one() || lex_compare(g, &Divisor::one(), orbit_order_compare) == Ordering::Greater)
}
