//! The shift realization of a class group and the orders it carries.

use std::cmp::Ordering;

use crate::abelian::FGAbelianGroup;
use crate::error::{Error, Result};
use crate::freeab::lex_compare;
use crate::krull::{is_member, Automorphism, Divisor, KrullMonoidSpec, Prime};
use crate::seeded;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationParams {
    pub group: FGAbelianGroup,
    pub orbit_count: u32,
}

impl RealizationParams {
    pub fn new(group: FGAbelianGroup, orbit_count: u32) -> Result<Self> {
        if orbit_count == 0 {
            return Err(Error::InvalidArgument("orbit count must be at least 1".into()));
        }
        Ok(RealizationParams { group, orbit_count })
    }
}

/// `P = {0..orbit_count} x Z x G`, `cls(i, n, g) = g`, `τ(i, n, g) = (i, n+1, g)`.
pub fn build_realization(params: &RealizationParams) -> KrullMonoidSpec {
    KrullMonoidSpec::new(params.group.clone(), params.orbit_count, Automorphism::Shift)
        .expect("validated parameters")
}

/// Orbit identifier `(i, g)` first, shift last. The shift automorphism is
/// strictly increasing for this order.
pub fn orbit_order_compare(p: &Prime, q: &Prime) -> Ordering {
    p.orbit
        .cmp(&q.orbit)
        .then_with(|| p.class.cmp(&q.class))
        .then_with(|| p.shift.cmp(&q.shift))
}

/// Lexicographic order on `q(H)` induced by [`orbit_order_compare`].
pub fn quotient_order_compare(spec: &KrullMonoidSpec, a: &Divisor, b: &Divisor) -> Result<Ordering> {
    for x in [a, b] {
        if !spec.class_sum(x).is_zero() {
            return Err(Error::NotInQuotient(x.to_string()));
        }
    }
    Ok(lex_compare(a, b, orbit_order_compare))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorWitness {
    pub prime: Prime,
    pub first: Divisor,
    pub second: Divisor,
    pub gcd: Divisor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorTheoryReport {
    pub passed: bool,
    pub samples: usize,
    pub witnesses: Vec<DivisorWitness>,
    pub failure: Option<String>,
}

/// For each sampled prime `p`, two members `p·q`, `p·q′` whose gcd is `p`.
pub fn verify_divisor_theory(spec: &KrullMonoidSpec, sample_count: usize, seed: u64) -> DivisorTheoryReport {
    let primes = spec.enumerate_with(sample_count, &mut seeded::named(seed, "divisor_theory"));
    let g = spec.class_group();
    let mut witnesses = Vec::with_capacity(primes.len());
    let mut failure = None;
    for (k, p) in primes.iter().enumerate() {
        let target = g.neg(&p.class).expect("prime class lies in the group");
        let candidates = spec
            .primes_in_class(&target, 3, seed.wrapping_add(k as u64))
            .expect("class lies in the group");
        let mut partners = candidates.into_iter().filter(|q| q != p);
        let (Some(q), Some(r)) = (partners.next(), partners.next()) else {
            failure = Some(format!("no two complements for {p}"));
            break;
        };
        let first = Divisor::from_pairs([(p.clone(), 1), (q, 1)]);
        let second = Divisor::from_pairs([(p.clone(), 1), (r, 1)]);
        let gcd = first.gcd(&second);
        let ok = is_member(spec, &first) && is_member(spec, &second) && gcd == Divisor::basis(p.clone());
        if !ok && failure.is_none() {
            failure = Some(format!("gcd({first}, {second}) = {gcd}, expected {p}"));
        }
        witnesses.push(DivisorWitness { prime: p.clone(), first, second, gcd });
    }
    DivisorTheoryReport { passed: failure.is_none(), samples: sample_count, witnesses, failure }
}
