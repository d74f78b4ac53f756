//! Named verification suites. Each runs a fixed battery of seeded checks
//! against a spec and reports a verdict with witnesses on failure.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::construct::{orbit_order_compare, quotient_order_compare, verify_divisor_theory};
use crate::error::{Error, Result};
use crate::galg::{self, ga_add, ga_mul, is_normed, normed_generator, phi_apply, GroupAlgebraElem, Rational};
use crate::krull::{
    ideal_class, search_finite_orbit, search_fixed_prime_set, simplicity_search, stability_check, tau_star,
    tau_star_inv, v_product, Automorphism, Divisor, KrullMonoidSpec, Stability,
};
use crate::seeded;
use crate::skew::{random_skew_with, sample_moved_check, simplicity_certificate, skew_add, skew_mul, SkewLaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    ClassInvariance,
    DivisorTheory,
    Equivalence,
    FixedSet,
    GroupAlgebra,
    NormedGenerator,
    Orbit,
    Order,
    Simplicity,
    SkewRelation,
    SpecInvariants,
    Stability,
}

impl Suite {
    /// All suites, sorted by name.
    pub const ALL: [Suite; 12] = [
        Suite::ClassInvariance,
        Suite::DivisorTheory,
        Suite::Equivalence,
        Suite::FixedSet,
        Suite::GroupAlgebra,
        Suite::NormedGenerator,
        Suite::Orbit,
        Suite::Order,
        Suite::Simplicity,
        Suite::SkewRelation,
        Suite::SpecInvariants,
        Suite::Stability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClassInvariance => "class-invariance",
            Suite::DivisorTheory => "divisor-theory",
            Suite::Equivalence => "equivalence",
            Suite::FixedSet => "fixed-set",
            Suite::GroupAlgebra => "group-algebra",
            Suite::NormedGenerator => "normed-generator",
            Suite::Orbit => "orbit",
            Suite::Order => "order",
            Suite::Simplicity => "simplicity",
            Suite::SkewRelation => "skew-relation",
            Suite::SpecInvariants => "spec-invariants",
            Suite::Stability => "stability",
        }
    }

    /// Suites whose checks must fail when the automorphism has finite orbits.
    pub fn detects_finite_orbits(self) -> bool {
        matches!(
            self,
            Suite::Orbit | Suite::FixedSet | Suite::Order | Suite::NormedGenerator | Suite::Simplicity
        )
    }

    pub fn expected(self, automorphism: Automorphism) -> Verdict {
        if automorphism != Automorphism::Shift && self.detects_finite_orbits() {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub verdict: Verdict,
    pub expected: Verdict,
    pub samples: usize,
    pub detail: String,
    pub witnesses: Vec<String>,
}

impl SuiteResult {
    pub fn matches_expectation(&self) -> bool {
        self.verdict == self.expected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub bound: u64,
    pub samples: usize,
    pub seed: u64,
}

struct Outcome {
    detail: String,
    witnesses: Vec<String>,
}

impl Outcome {
    fn new(detail: impl Into<String>) -> Self {
        Outcome { detail: detail.into(), witnesses: Vec::new() }
    }

    fn witness(&mut self, w: impl Into<String>) {
        if self.witnesses.len() < 5 {
            self.witnesses.push(w.into());
        }
    }
}

pub fn run_suite(suite: Suite, spec: &KrullMonoidSpec, params: SuiteParams) -> SuiteResult {
    let seed = seeded::named(params.seed, suite.name()).gen::<u64>();
    let p = SuiteParams { seed, ..params };
    let outcome = match suite {
        Suite::ClassInvariance => class_invariance(spec, p),
        Suite::DivisorTheory => divisor_theory(spec, p),
        Suite::Equivalence => equivalence(spec, p),
        Suite::FixedSet => fixed_set(spec, p),
        Suite::GroupAlgebra => group_algebra(spec, p),
        Suite::NormedGenerator => normed_generator_suite(spec, p),
        Suite::Orbit => orbit(spec, p),
        Suite::Order => order(spec, p),
        Suite::Simplicity => simplicity(spec, p),
        Suite::SkewRelation => skew_relation(spec, p),
        Suite::SpecInvariants => spec_invariants(spec, p),
        Suite::Stability => stability(spec, p),
    };
    SuiteResult {
        name: suite.name(),
        verdict: if outcome.witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail },
        expected: suite.expected(spec.automorphism()),
        samples: params.samples,
        detail: outcome.detail,
        witnesses: outcome.witnesses,
    }
}

/// Runs suites on scoped worker threads; results come back in input order.
pub fn run_suites(suites: &[Suite], spec: &KrullMonoidSpec, params: SuiteParams) -> Vec<(SuiteResult, f64)> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                scope.spawn(move || {
                    let start = std::time::Instant::now();
                    let r = run_suite(suite, spec, params);
                    (r, start.elapsed().as_secs_f64() * 1000.0)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

fn stability(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let mut rng = seeded::stream(p.seed, 0);
    let (mut equal, mut moved) = (0, 0);
    let mut out = Outcome::new("");
    for _ in 0..p.samples {
        let a = spec.random_divisor_with(&mut rng, false);
        match stability_check(spec, &a) {
            Stability::Equal => equal += 1,
            Stability::Moved => moved += 1,
            Stability::ProperContainment(b) => out.witness(format!("τ({a}) = ({a})·({b}) is properly contained")),
        }
    }
    out.detail = format!("{} divisors: {equal} fixed, {moved} moved, no proper containment", p.samples);
    out
}

fn orbit(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let mut out = Outcome::new(format!("{} primes checked for periods up to {}", p.samples, p.bound));
    if let Some((q, n)) = search_finite_orbit(spec, p.bound, p.samples, p.seed) {
        out.witness(format!("{q} has period {n}"));
    }
    out
}

fn fixed_set(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let mut out = Outcome::new(format!("{} finite prime sets checked", p.samples));
    if let Some(x) = search_fixed_prime_set(spec, p.bound, p.samples, p.seed) {
        let items: Vec<String> = x.iter().map(ToString::to_string).collect();
        out.witness(format!("τ fixes {{{}}}", items.join(", ")));
    }
    out
}

fn equivalence(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let s = simplicity_search(spec, p.bound, p.samples, p.seed);
    let label = |none: bool| if none { "none found" } else { "found" };
    let [ideal, set, orbit] = s.verdicts();
    let mut out = Outcome::new(format!(
        "fixed ideal: {}; fixed prime set: {}; finite orbit: {}",
        label(ideal),
        label(set),
        label(orbit)
    ));
    if !s.agree() {
        out.witness(format!("checks disagree: {s:?}"));
    }
    out
}

fn order(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let mut rng = seeded::stream(p.seed, 0);
    let mut out = Outcome::new(format!(
        "{n} triples, {n} primes, {n} members, {n} positive quotient elements",
        n = p.samples
    ));
    for _ in 0..p.samples {
        let (a, b, c) = (spec.random_prime_with(&mut rng), spec.random_prime_with(&mut rng), spec.random_prime_with(&mut rng));
        let ab = orbit_order_compare(&a, &b);
        if ab != orbit_order_compare(&b, &a).reverse() || (ab == Ordering::Equal) != (a == b) {
            out.witness(format!("order not antisymmetric on {a}, {b}"));
        }
        if ab != Ordering::Greater && orbit_order_compare(&b, &c) != Ordering::Greater && orbit_order_compare(&a, &c) == Ordering::Greater {
            out.witness(format!("order not transitive on {a}, {b}, {c}"));
        }
    }
    for q in spec.enumerate_with(p.samples, &mut rng) {
        if orbit_order_compare(&spec.tau(&q), &q) != Ordering::Greater {
            out.witness(format!("τ({q}) = {} is not above {q}", spec.tau(&q)));
        }
    }
    let one = Divisor::one();
    for _ in 0..p.samples {
        let m = spec.random_member_with(&mut rng);
        if quotient_order_compare(spec, m.divisor(), &one) != Ok(Ordering::Greater) {
            out.witness(format!("member {} is not above 1", m.divisor()));
        }
    }
    let mut positives = 0;
    while positives < p.samples {
        let a = spec.random_quotient_with(&mut rng);
        if quotient_order_compare(spec, &a, &one) != Ok(Ordering::Greater) {
            continue;
        }
        positives += 1;
        let image = tau_star(spec, &a);
        if quotient_order_compare(spec, &image, &a) != Ok(Ordering::Greater) {
            out.witness(format!("τ({a}) = {image} is not above {a}"));
        }
    }
    out
}

fn normed_generator_suite(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let mut rng = seeded::stream(p.seed, 0);
    let mut out = Outcome::new("");
    for _ in 0..p.samples {
        let f: GroupAlgebraElem<Rational> = galg::random_nonunit_with(spec, &mut rng, 4);
        let u: GroupAlgebraElem<Rational> = galg::random_unit_with(spec, &mut rng);
        let n = normed_generator(&f).expect("nonzero");
        if !is_normed(&n) || normed_generator(&ga_mul(&u, &f)).as_ref() != Ok(&n) {
            out.witness(format!("normed generator of ({f}) is not unit invariant"));
        }
    }
    let (tested, unmoved) = sample_moved_check(spec, p.bound, p.samples, p.seed);
    if let Some(f) = unmoved {
        out.witness(format!("φ fixes the principal ideal of ({f})"));
    }
    out.detail = format!("{} unit multiples, {tested} nonunit principal ideals", p.samples);
    out
}

fn group_algebra(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let mut rng = seeded::stream(p.seed, 0);
    let mut out = Outcome::new(format!("{} random triples over Q", p.samples));
    for _ in 0..p.samples {
        let a: GroupAlgebraElem<Rational> = galg::random_elem_with(spec, &mut rng, 3);
        let b: GroupAlgebraElem<Rational> = galg::random_elem_with(spec, &mut rng, 3);
        let c: GroupAlgebraElem<Rational> = galg::random_elem_with(spec, &mut rng, 3);
        let ab = ga_mul(&a, &b);
        if ga_mul(&ab, &c) != ga_mul(&a, &ga_mul(&b, &c)) || ab != ga_mul(&b, &a) {
            out.witness(format!("multiplication law fails on ({a}), ({b}), ({c})"));
        }
        if ga_mul(&a, &ga_add(&b, &c)) != ga_add(&ab, &ga_mul(&a, &c)) {
            out.witness(format!("distributivity fails on ({a}), ({b}), ({c})"));
        }
        if !a.is_zero() && !b.is_zero() && (ab.is_zero() || (ab.is_one() && !a.is_unit())) {
            out.witness(format!("({a})·({b}) = {ab}"));
        }
        if phi_apply(spec, &ab) != ga_mul(&phi_apply(spec, &a), &phi_apply(spec, &b))
            || phi_apply(spec, &ga_add(&a, &b)) != ga_add(&phi_apply(spec, &a), &phi_apply(spec, &b))
        {
            out.witness(format!("φ is not a ring map on ({a}), ({b})"));
        }
    }
    out
}

fn skew_relation(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    type S = SkewLaurentPoly<Rational>;
    let mut rng = seeded::stream(p.seed, 0);
    let mut out = Outcome::new(format!(
        "relation for n in [-5, 5] on {n} coefficients, {n} triples, {n} nonzero pairs",
        n = p.samples
    ));
    for _ in 0..p.samples {
        let a: GroupAlgebraElem<Rational> = galg::random_elem_with(spec, &mut rng, 3);
        for n in -5..=5 {
            let lhs = skew_mul(spec, &S::constant(a.clone()), &S::x_pow(n));
            if lhs != S::monomial(n, galg::phi_pow(spec, &a, n)) {
                out.witness(format!("a·x^{n} ≠ x^{n}·σ^{n}(a) for a = {a}"));
            }
        }
    }
    for _ in 0..p.samples {
        let f: S = random_skew_with(spec, &mut rng);
        let g: S = random_skew_with(spec, &mut rng);
        let h: S = random_skew_with(spec, &mut rng);
        if skew_mul(spec, &skew_mul(spec, &f, &g), &h) != skew_mul(spec, &f, &skew_mul(spec, &g, &h)) {
            out.witness(format!("associativity fails on {f}; {g}; {h}"));
        }
        if skew_mul(spec, &f, &skew_add(&g, &h)) != skew_add(&skew_mul(spec, &f, &g), &skew_mul(spec, &f, &h))
            || skew_mul(spec, &skew_add(&f, &g), &h) != skew_add(&skew_mul(spec, &f, &h), &skew_mul(spec, &g, &h))
        {
            out.witness(format!("distributivity fails on {f}; {g}; {h}"));
        }
    }
    let mut pairs = 0;
    while pairs < p.samples {
        let f: S = random_skew_with(spec, &mut rng);
        let g: S = random_skew_with(spec, &mut rng);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        pairs += 1;
        if skew_mul(spec, &f, &g).is_zero() {
            out.witness(format!("zero divisors {f}; {g}"));
        }
    }
    if skew_mul(spec, &S::x(), &S::x_inv()) != S::one() {
        out.witness("x·x⁻¹ ≠ 1");
    }
    out
}

fn class_invariance(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let mut rng = seeded::stream(p.seed, 0);
    let cg = spec.class_group();
    let mut out = Outcome::new(format!("{} random divisor pairs", p.samples));
    for _ in 0..p.samples {
        let a = spec.random_divisor_with(&mut rng, false);
        let b = spec.random_divisor_with(&mut rng, false);
        let ab = v_product(&a, &b);
        if ideal_class(spec, &tau_star(spec, &a)) != ideal_class(spec, &a) {
            out.witness(format!("τ changes the class of {a}"));
        }
        if cg.add(&ideal_class(spec, &a), &ideal_class(spec, &b)).as_ref() != Ok(&ideal_class(spec, &ab)) {
            out.witness(format!("class map not additive on {a}, {b}"));
        }
        if tau_star(spec, &ab) != v_product(&tau_star(spec, &a), &tau_star(spec, &b))
            || tau_star(spec, &tau_star_inv(spec, &a)) != a
        {
            out.witness(format!("τ_* is not an automorphism on {a}, {b}"));
        }
    }
    out
}

fn divisor_theory(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let r = verify_divisor_theory(spec, p.samples, p.seed);
    let mut out = Outcome::new(format!("{} primes each with two members of gcd p", r.witnesses.len()));
    if let Some(f) = r.failure {
        out.witness(f);
    }
    out
}

fn spec_invariants(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let checks = spec.check_invariants(p.samples, p.seed);
    let names: Vec<&str> = checks.iter().map(|c| c.name).collect();
    let mut out = Outcome::new(names.join(", "));
    for c in checks.into_iter().filter(|c| !c.passed) {
        out.witness(format!("{}: {}", c.name, c.witness.unwrap_or_default()));
    }
    out
}

fn simplicity(spec: &KrullMonoidSpec, p: SuiteParams) -> Outcome {
    let cert = simplicity_certificate(spec, p.bound, p.samples, p.seed);
    let mut out = Outcome::new(cert.scale());
    for c in cert.checks.iter().filter(|c| !c.passed) {
        out.witness(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
    }
    out
}
