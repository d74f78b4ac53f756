//! Krull monoids presented by a divisor theory `H = ψ⁻¹(0) ⊂ F(P)`.
//!
//! The divisorial prime ideals `X(H)` are identified with the basis `P`, so a
//! divisorial fractional ideal is a [`Divisor`] (an element of `q(F(P))`),
//! the divisorial product is exponent addition and containment of ideals is
//! reverse divisibility of divisors.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::abelian::{FGAbelianGroup, GroupElem};
use crate::error::{Error, Result};
use crate::freeab::FreeAbelian;
use crate::seeded;

/// Shifts of sampled primes are drawn from `[-SHIFT_SPAN, SHIFT_SPAN]`.
pub const SHIFT_SPAN: i64 = 4096;

/// A prime divisor `(orbit, shift, class)`. The derived order compares the
/// orbit identifier `(orbit, class)` first and the shift last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime {
    pub orbit: u32,
    pub class: GroupElem,
    pub shift: i64,
}

impl Prime {
    pub fn new(orbit: u32, shift: i64, class: GroupElem) -> Self {
        Prime { orbit, class, shift }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p[{},{};{}]", self.orbit, self.shift, self.class)
    }
}

/// Element of `q(F(P))`: a divisorial fractional ideal in prime coordinates.
pub type Divisor = FreeAbelian<Prime>;

/// The permutation of `P` used as the monoid automorphism. Every variant
/// preserves orbit and class and moves only the shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Automorphism {
    /// `n ↦ n + 1`; no finite orbits.
    Shift,
    /// Fixes every prime.
    Identity,
    /// Cycles the shifts `km, km+1, ..., km+k-1` with period `k`.
    Cycle(u32),
}

impl Automorphism {
    pub fn parse(s: &str) -> Result<Option<Self>> {
        match s {
            "none" => Ok(None),
            "identity" => Ok(Some(Automorphism::Identity)),
            _ => {
                let k = s
                    .strip_prefix("cycle:")
                    .and_then(|k| k.parse::<u32>().ok())
                    .filter(|k| *k >= 1)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown adversarial mode {s:?}")))?;
                Ok(Some(Automorphism::Cycle(k)))
            }
        }
    }

    fn shift_pow(self, n: i64, k: i64) -> i64 {
        match self {
            Automorphism::Shift => n + k,
            Automorphism::Identity => n,
            Automorphism::Cycle(period) => {
                let period = i64::from(period);
                let r = n.mod_floor(&period);
                n - r + (r + k).mod_floor(&period)
            }
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automorphism::Shift => write!(f, "shift"),
            Automorphism::Identity => write!(f, "identity"),
            Automorphism::Cycle(k) => write!(f, "cycle:{k}"),
        }
    }
}

/// Prime basis `P = {0..orbit_count} x Z x G` with class map `ψ(i, n, g) = g`
/// and an automorphism acting on the shift coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrullMonoidSpec {
    class_group: FGAbelianGroup,
    orbit_count: u32,
    automorphism: Automorphism,
}

impl KrullMonoidSpec {
    pub fn new(class_group: FGAbelianGroup, orbit_count: u32, automorphism: Automorphism) -> Result<Self> {
        if orbit_count == 0 {
            return Err(Error::InvalidArgument("orbit count must be at least 1".into()));
        }
        if automorphism == Automorphism::Cycle(0) {
            return Err(Error::InvalidArgument("cycle length must be at least 1".into()));
        }
        Ok(KrullMonoidSpec { class_group, orbit_count, automorphism })
    }

    /// Same basis and class map with a different automorphism.
    pub fn with_automorphism(&self, automorphism: Automorphism) -> Result<Self> {
        Self::new(self.class_group.clone(), self.orbit_count, automorphism)
    }

    pub fn class_group(&self) -> &FGAbelianGroup {
        &self.class_group
    }

    pub fn orbit_count(&self) -> u32 {
        self.orbit_count
    }

    pub fn automorphism(&self) -> Automorphism {
        self.automorphism
    }

    pub fn contains_prime(&self, p: &Prime) -> bool {
        p.orbit < self.orbit_count && self.class_group.contains(&p.class)
    }

    pub fn cls<'a>(&self, p: &'a Prime) -> &'a GroupElem {
        &p.class
    }

    pub fn tau(&self, p: &Prime) -> Prime {
        self.tau_pow(p, 1)
    }

    pub fn tau_inv(&self, p: &Prime) -> Prime {
        self.tau_pow(p, -1)
    }

    pub fn tau_pow(&self, p: &Prime, k: i64) -> Prime {
        Prime { shift: self.automorphism.shift_pow(p.shift, k), ..p.clone() }
    }

    pub fn base_order(&self, p: &Prime, q: &Prime) -> Ordering {
        crate::construct::orbit_order_compare(p, q)
    }

    /// `Σ val_p(a) · cls(p)`.
    pub fn class_sum(&self, a: &Divisor) -> GroupElem {
        let g = &self.class_group;
        a.iter().fold(g.zero(), |acc, (p, e)| {
            let term = g.scale(e, &p.class).expect("prime class lies in the class group");
            g.add(&acc, &term).expect("same group")
        })
    }

    pub fn random_prime_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Prime {
        Prime {
            orbit: rng.gen_range(0..self.orbit_count),
            class: self.class_group.random_elem_with(rng),
            shift: rng.gen_range(-SHIFT_SPAN..=SHIFT_SPAN),
        }
    }

    /// `count` pairwise distinct primes, deterministic in `seed`.
    pub fn enumerate(&self, count: usize, seed: u64) -> Vec<Prime> {
        self.enumerate_with(count, &mut seeded::named(seed, "enumerate"))
    }

    pub fn enumerate_with<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Vec<Prime> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let p = self.random_prime_with(rng);
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        out
    }

    /// `count` pairwise distinct primes of class `g`.
    pub fn primes_in_class(&self, g: &GroupElem, count: usize, seed: u64) -> Result<Vec<Prime>> {
        if !self.class_group.contains(g) {
            return Err(Error::GroupMismatch { elem: g.to_string(), group: self.class_group.to_string() });
        }
        let mut rng = seeded::named(seed, "primes_in_class");
        let span = SHIFT_SPAN.max(count as i64);
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let p = Prime {
                orbit: rng.gen_range(0..self.orbit_count),
                class: g.clone(),
                shift: rng.gen_range(-span..=span),
            };
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// A divisor built from up to five primes, some of them on the orbit of
    /// the first one so that `a` and `τ(a)` overlap.
    pub fn random_divisor_with<R: Rng + ?Sized>(&self, rng: &mut R, nonnegative: bool) -> Divisor {
        let k = rng.gen_range(0..=5);
        let base = self.random_prime_with(rng);
        let pairs: Vec<(Prime, i64)> = (0..k)
            .map(|i| {
                let p = if i == 0 {
                    base.clone()
                } else if rng.gen_bool(0.5) {
                    self.tau_pow(&base, rng.gen_range(-3..=3))
                } else {
                    self.random_prime_with(rng)
                };
                let e = if nonnegative {
                    rng.gen_range(1..=3)
                } else {
                    let m = rng.gen_range(1..=3);
                    if rng.gen_bool(0.5) { m } else { -m }
                };
                (p, e)
            })
            .collect();
        Divisor::from_pairs(pairs)
    }

    fn compensate<R: Rng + ?Sized>(&self, rng: &mut R, a: Divisor) -> Divisor {
        let s = self.class_sum(&a);
        if s.is_zero() {
            return a;
        }
        let g = self.class_group.neg(&s).expect("class sum lies in the group");
        let fix = Prime {
            orbit: rng.gen_range(0..self.orbit_count),
            class: g,
            shift: rng.gen_range(-SHIFT_SPAN..=SHIFT_SPAN),
        };
        a.mul(&Divisor::basis(fix))
    }

    /// A nonunit of `H`: nonnegative, class sum zero, nonempty support.
    pub fn random_member_with<R: Rng + ?Sized>(&self, rng: &mut R) -> MonoidElem {
        loop {
            let a = self.random_divisor_with(rng, true);
            if a.is_one() {
                continue;
            }
            let m = self.compensate(rng, a);
            return MonoidElem::new(self, m).expect("compensated divisor is a member");
        }
    }

    /// An element of the quotient group `q(H)` (class sum zero).
    pub fn random_quotient_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Divisor {
        let a = self.random_divisor_with(rng, false);
        self.compensate(rng, a)
    }

    /// Sample-scale checks of the structural invariants of a spec.
    pub fn check_invariants(&self, samples: usize, seed: u64) -> Vec<InvariantCheck> {
        let primes = self.enumerate(samples, seed);
        let mut checks = Vec::new();

        let bad = primes.iter().find(|p| self.tau_inv(&self.tau(p)) != **p || self.tau(&self.tau_inv(p)) != **p);
        checks.push(InvariantCheck::new("tau_inverse", bad.map(ToString::to_string)));

        let bad = primes.iter().find(|p| self.cls(&self.tau(p)) != self.cls(p));
        checks.push(InvariantCheck::new("class_preserving", bad.map(ToString::to_string)));

        let distinct: BTreeSet<&Prime> = primes.iter().collect();
        let bad = (distinct.len() != primes.len()).then(|| "enumerate repeated an index".to_string());
        checks.push(InvariantCheck::new("enumerate_distinct", bad));

        let bad = primes.iter().find(|p| !self.contains_prime(p));
        checks.push(InvariantCheck::new("primes_in_basis", bad.map(ToString::to_string)));

        let classes = self.class_group.elements(4096).unwrap_or_else(|| {
            let mut rng = seeded::named(seed, "surjectivity");
            (0..samples).map(|_| self.class_group.random_elem_with(&mut rng)).collect()
        });
        let bad = classes.iter().find(|g| {
            !matches!(self.primes_in_class(g, 1, seed), Ok(ps) if ps.len() == 1 && self.cls(&ps[0]) == *g)
        });
        checks.push(InvariantCheck::new("class_surjective", bad.map(|g| format!("no prime in class {g}"))));
        checks
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

impl InvariantCheck {
    fn new(name: &'static str, witness: Option<String>) -> Self {
        InvariantCheck { name, passed: witness.is_none(), witness }
    }
}

/// An element of `H`: nonnegative exponents, class sum zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElem(Divisor);

impl MonoidElem {
    pub fn new(spec: &KrullMonoidSpec, a: Divisor) -> Result<Self> {
        if is_member(spec, &a) {
            Ok(MonoidElem(a))
        } else {
            Err(Error::NotInQuotient(a.to_string()))
        }
    }

    pub fn divisor(&self) -> &Divisor {
        &self.0
    }

    pub fn into_divisor(self) -> Divisor {
        self.0
    }
}

pub fn is_member(spec: &KrullMonoidSpec, a: &Divisor) -> bool {
    a.is_nonnegative() && spec.class_sum(a).is_zero()
}

/// The divisorial ideal `(X)_v` generated by finitely many elements of
/// `q(H)`; under the divisor theory it is the gcd of their divisors.
pub fn v_ideal_of(spec: &KrullMonoidSpec, generators: &[Divisor]) -> Result<Divisor> {
    let (first, rest) = generators.split_first().ok_or(Error::EmptySet)?;
    if let Some(bad) = generators.iter().find(|a| !spec.class_sum(a).is_zero()) {
        return Err(Error::NotInQuotient(bad.to_string()));
    }
    Ok(rest.iter().fold(first.clone(), |acc, a| acc.gcd(a)))
}

pub fn v_product(a: &Divisor, b: &Divisor) -> Divisor {
    a.mul(b)
}

pub fn ideal_class(spec: &KrullMonoidSpec, a: &Divisor) -> GroupElem {
    spec.class_sum(a)
}

pub fn tau_star(spec: &KrullMonoidSpec, a: &Divisor) -> Divisor {
    a.map_basis(|p| spec.tau(p))
}

pub fn tau_star_inv(spec: &KrullMonoidSpec, a: &Divisor) -> Divisor {
    a.map_basis(|p| spec.tau_inv(p))
}

pub fn tau_star_pow(spec: &KrullMonoidSpec, a: &Divisor, k: i64) -> Divisor {
    a.map_basis(|p| spec.tau_pow(p, k))
}

/// Ideal containment `a ⊂ b`, i.e. `b | a` as divisors.
pub fn ideal_contained(a: &Divisor, b: &Divisor) -> bool {
    b.divides(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    Equal,
    Moved,
    /// `τ(a) ⊊ a`; carries `b` with `τ(a) = a ·_v b`. Never produced for
    /// divisorial ideals; kept so the suites can report a counterexample.
    ProperContainment(Divisor),
}

pub fn stability_check(spec: &KrullMonoidSpec, a: &Divisor) -> Stability {
    let image = tau_star(spec, a);
    if image == *a {
        Stability::Equal
    } else if ideal_contained(&image, a) {
        Stability::ProperContainment(image.div(a))
    } else {
        Stability::Moved
    }
}

/// Least `n` in `[1, bound]` with `τⁿ(p) = p`.
pub fn finite_orbit_up_to(spec: &KrullMonoidSpec, p: &Prime, bound: u64) -> Option<u64> {
    // τ never changes orbit or class, so iterating the shift suffices
    let step = |n: i64| spec.automorphism.shift_pow(n, 1);
    let mut shift = step(p.shift);
    for n in 1..=bound {
        if shift == p.shift {
            return Some(n);
        }
        shift = step(shift);
    }
    None
}

/// Whether `{τ(p) | p ∈ X} = X`.
pub fn fixed_prime_set_check(spec: &KrullMonoidSpec, set: &BTreeSet<Prime>) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let image: BTreeSet<Prime> = set.iter().map(|p| spec.tau(p)).collect();
    Ok(image == *set)
}

/// Forward orbit of `p` if it closes up within `bound` steps, otherwise a
/// segment `p, τ(p), ..., τ^{len-1}(p)`.
fn orbit_candidate(spec: &KrullMonoidSpec, p: &Prime, bound: u64, len: usize) -> Vec<Prime> {
    let n = finite_orbit_up_to(spec, p, bound).map_or(len, |n| n as usize);
    (0..n as i64).map(|k| spec.tau_pow(p, k)).collect()
}

/// Outcome of the three sampled searches behind τ-v-simplicity: a fixed
/// nontrivial divisorial ideal, a fixed nonempty finite set of primes and a
/// prime with a finite orbit. A τ-v-simple spec yields none of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicitySearch {
    pub fixed_ideal: Option<Divisor>,
    pub fixed_prime_set: Option<BTreeSet<Prime>>,
    pub finite_orbit: Option<(Prime, u64)>,
    pub samples: usize,
    pub bound: u64,
}

impl SimplicitySearch {
    pub fn verdicts(&self) -> [bool; 3] {
        [self.fixed_ideal.is_none(), self.fixed_prime_set.is_none(), self.finite_orbit.is_none()]
    }

    pub fn agree(&self) -> bool {
        let v = self.verdicts();
        v[0] == v[1] && v[1] == v[2]
    }
}

pub fn search_fixed_ideal(spec: &KrullMonoidSpec, bound: u64, samples: usize, seed: u64) -> Option<Divisor> {
    let mut rng = seeded::named(seed, "fixed_ideal");
    (0..samples).find_map(|_| {
        let p = spec.random_prime_with(&mut rng);
        let candidate = if rng.gen_bool(0.75) {
            let e: i64 = rng.gen_range(1..=3);
            let orbit = orbit_candidate(spec, &p, bound, rng.gen_range(1..=8));
            Divisor::from_pairs(orbit.into_iter().map(|q| (q, e)))
        } else {
            spec.random_divisor_with(&mut rng, true)
        };
        (!candidate.is_one() && tau_star(spec, &candidate) == candidate).then_some(candidate)
    })
}

pub fn search_fixed_prime_set(
    spec: &KrullMonoidSpec,
    bound: u64,
    samples: usize,
    seed: u64,
) -> Option<BTreeSet<Prime>> {
    let mut rng = seeded::named(seed, "fixed_prime_set");
    (0..samples).find_map(|_| {
        let p = spec.random_prime_with(&mut rng);
        let mut set: BTreeSet<Prime> = orbit_candidate(spec, &p, bound, rng.gen_range(1..=8)).into_iter().collect();
        if rng.gen_bool(0.25) {
            set.insert(spec.random_prime_with(&mut rng));
        }
        fixed_prime_set_check(spec, &set).expect("candidate is nonempty").then_some(set)
    })
}

pub fn search_finite_orbit(spec: &KrullMonoidSpec, bound: u64, samples: usize, seed: u64) -> Option<(Prime, u64)> {
    spec.enumerate_with(samples, &mut seeded::named(seed, "finite_orbit"))
        .into_iter()
        .find_map(|p| finite_orbit_up_to(spec, &p, bound).map(|n| (p, n)))
}

pub fn simplicity_search(spec: &KrullMonoidSpec, bound: u64, samples: usize, seed: u64) -> SimplicitySearch {
    SimplicitySearch {
        fixed_ideal: search_fixed_ideal(spec, bound, samples, seed),
        fixed_prime_set: search_fixed_prime_set(spec, bound, samples, seed),
        finite_orbit: search_finite_orbit(spec, bound, samples, seed),
        samples,
        bound,
    }
}

/// Sum of exponents as a quick invariant of `τ_*`.
pub fn divisor_degree(a: &Divisor) -> BigInt {
    a.iter().map(|(_, e)| e.clone()).fold(BigInt::zero(), |x, y| x + y)
}
