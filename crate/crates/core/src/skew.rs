//! Skew Laurent polynomials `T = R[x, x⁻¹; σ]` over `R = K[q(H)]` with
//! `σ = φ`, sampled simplicity certificates and the class group of `T`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::abelian::{cokernel, FGAbelianGroup, GroupElem, GroupHom};
use crate::error::{Error, Result};
use crate::galg::{self, ga_add, ga_mul, phi_pow, principal_ideal_moved, Field, GroupAlgebraElem, Rational};
use crate::krull::{search_finite_orbit, search_fixed_prime_set, KrullMonoidSpec};
use crate::seeded;

/// `Σ xᵐ·a_m`, x-powers on the left; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewLaurentPoly<F: Field> {
    coeffs: BTreeMap<i64, GroupAlgebraElem<F>>,
}

impl<F: Field> Default for SkewLaurentPoly<F> {
    fn default() -> Self {
        SkewLaurentPoly { coeffs: BTreeMap::new() }
    }
}

impl<F: Field> SkewLaurentPoly<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, GroupAlgebraElem::one())
    }

    /// `xᵐ·a`
    pub fn monomial(m: i64, a: GroupAlgebraElem<F>) -> Self {
        Self::from_terms([(m, a)])
    }

    pub fn constant(a: GroupAlgebraElem<F>) -> Self {
        Self::monomial(0, a)
    }

    pub fn x() -> Self {
        Self::monomial(1, GroupAlgebraElem::one())
    }

    pub fn x_inv() -> Self {
        Self::monomial(-1, GroupAlgebraElem::one())
    }

    pub fn x_pow(n: i64) -> Self {
        Self::monomial(n, GroupAlgebraElem::one())
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, GroupAlgebraElem<F>)>,
    {
        let mut coeffs: BTreeMap<i64, GroupAlgebraElem<F>> = BTreeMap::new();
        for (m, a) in terms {
            let entry = coeffs.entry(m).or_default();
            *entry = ga_add(entry, &a);
        }
        coeffs.retain(|_, a| !a.is_zero());
        SkewLaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: i64) -> GroupAlgebraElem<F> {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GroupAlgebraElem<F>)> {
        self.coeffs.iter().map(|(m, a)| (*m, a))
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(m, a)| (*m, a.neg())))
    }
}

impl<F: Field> fmt::Display for SkewLaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, a)| match m {
                0 => format!("({a})"),
                1 => format!("x·({a})"),
                _ => format!("x^{m}·({a})"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn skew_add<F: Field>(f: &SkewLaurentPoly<F>, g: &SkewLaurentPoly<F>) -> SkewLaurentPoly<F> {
    SkewLaurentPoly::from_terms(f.coeffs.iter().chain(&g.coeffs).map(|(m, a)| (*m, a.clone())))
}

/// `(xᵐ·a)(xⁿ·b) = x^{m+n}·σⁿ(a)·b`, extended bilinearly.
pub fn skew_mul<F: Field>(spec: &KrullMonoidSpec, f: &SkewLaurentPoly<F>, g: &SkewLaurentPoly<F>) -> SkewLaurentPoly<F> {
    SkewLaurentPoly::from_terms(f.coeffs.iter().flat_map(|(m, a)| {
        g.coeffs
            .iter()
            .map(move |(n, b)| (m + n, ga_mul(&phi_pow(spec, a, *n), b)))
    }))
}

pub fn random_skew_with<F: Field, R: Rng + ?Sized>(spec: &KrullMonoidSpec, rng: &mut R) -> SkewLaurentPoly<F> {
    let k = rng.gen_range(0..=3);
    SkewLaurentPoly::from_terms(
        (0..k)
            .map(|_| (rng.gen_range(-3..=3), galg::random_elem_with(spec, rng, 3)))
            .collect::<Vec<_>>(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub name: &'static str,
    pub passed: bool,
    pub evidence: String,
    pub witness: Option<String>,
}

/// Verdicts of the sampled checks for simplicity of `T`. A pass means no
/// counterexample was found at the recorded scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityCertificate {
    pub seed: u64,
    pub bound: u64,
    pub samples: usize,
    pub checks: Vec<CertificateCheck>,
}

impl SimplicityCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn scale(&self) -> String {
        format!("no counterexample at bound {} with {} samples (seed {})", self.bound, self.samples, self.seed)
    }
}

/// Sampled nonunits of `Q[q(H)]`, together with orbit sums of each one
/// whenever all primes involved have a period within `bound`.
pub fn sample_moved_check(
    spec: &KrullMonoidSpec,
    bound: u64,
    samples: usize,
    seed: u64,
) -> (usize, Option<GroupAlgebraElem<Rational>>) {
    let mut rng = seeded::named(seed, "principal_ideal_moved");
    let mut tested = 0;
    for _ in 0..samples {
        let f: GroupAlgebraElem<Rational> = galg::random_nonunit_with(spec, &mut rng, 4);
        let candidates = std::iter::once(f.clone()).chain(galg::orbit_symmetrize(spec, &f, bound));
        for c in candidates {
            if c.len() < 2 {
                continue;
            }
            tested += 1;
            if !principal_ideal_moved(spec, &c).expect("nonzero nonunit") {
                return (tested, Some(c));
            }
        }
    }
    (tested, None)
}

pub fn simplicity_certificate(spec: &KrullMonoidSpec, bound: u64, samples: usize, seed: u64) -> SimplicityCertificate {
    let mut checks = Vec::new();

    let orbit = search_finite_orbit(spec, bound, samples, seed);
    checks.push(CertificateCheck {
        name: "no_finite_orbit",
        passed: orbit.is_none(),
        evidence: format!("{samples} primes, periods up to {bound}"),
        witness: orbit.map(|(p, n)| format!("{p} has period {n}")),
    });

    let fixed = search_fixed_prime_set(spec, bound, samples, seed);
    checks.push(CertificateCheck {
        name: "no_fixed_prime_set",
        passed: fixed.is_none(),
        evidence: format!("{samples} finite prime sets"),
        witness: fixed.map(|x| format!("{{{}}}", x.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))),
    });

    let (tested, unmoved) = sample_moved_check(spec, bound, samples, seed);
    checks.push(CertificateCheck {
        name: "principal_ideal_moved",
        passed: unmoved.is_none(),
        evidence: format!("{tested} nonunit algebra elements"),
        witness: unmoved.map(|f| format!("φ fixes ({f})")),
    });

    let sampled = spec.enumerate_with(samples, &mut seeded::named(seed, "automorphism_order"));
    let period = (1..=bound as i64).find(|&n| sampled.iter().all(|p| spec.tau_pow(p, n) == *p));
    checks.push(CertificateCheck {
        name: "automorphism_infinite_order",
        passed: period.is_none(),
        evidence: format!("powers 1..={bound} on {samples} primes"),
        witness: period.map(|n| format!("σ^{n} fixes every sampled prime")),
    });

    SimplicityCertificate { seed, bound, samples, checks }
}

/// `C / <killed>` with its projection.
pub fn nagata_quotient(c: &FGAbelianGroup, killed: &[GroupElem]) -> Result<(FGAbelianGroup, GroupHom)> {
    let inclusion = GroupHom::from_images(c, killed)?;
    let coker = cokernel(&inclusion);
    Ok((coker.group, coker.projection))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupPipelineResult {
    pub input_group: FGAbelianGroup,
    pub killed_subgroup_gens: Vec<GroupElem>,
    pub sigma_star: GroupHom,
    pub result: FGAbelianGroup,
    /// Composite projection `C → C/A → G(T)`.
    pub beta: GroupHom,
}

impl ClassGroupPipelineResult {
    pub fn beta_on_primes(&self, class: &GroupElem) -> Result<GroupElem> {
        self.beta.apply(class)
    }
}

/// `G(T) = coker(id − σ̄)` where `σ̄` is induced by `sigma_star` on `C/A`.
pub fn class_group_of_skew_extension(
    c: &FGAbelianGroup,
    sigma_star: &GroupHom,
    killed: &[GroupElem],
) -> Result<ClassGroupPipelineResult> {
    if sigma_star.source() != c || sigma_star.target() != c {
        return Err(Error::NotAHomomorphism(format!("sigma_star is not an endomorphism of {c}")));
    }
    let (quotient, p1) = nagata_quotient(c, killed)?;
    for a in killed {
        if !p1.apply(&sigma_star.apply(a)?)?.is_zero() {
            return Err(Error::UnstableSubgroup(format!("image of {a} leaves the killed subgroup")));
        }
    }
    let lift = cokernel(&GroupHom::from_images(c, killed)?).section;
    let induced = GroupHom::new(quotient.clone(), quotient.clone(), &(p1.matrix() * sigma_star.matrix()) * &lift)?;
    let difference = GroupHom::identity(&quotient).sub(&induced)?;
    let g_t = cokernel(&difference);
    let beta = p1.then(&g_t.projection)?;
    Ok(ClassGroupPipelineResult {
        input_group: c.clone(),
        killed_subgroup_gens: killed.to_vec(),
        sigma_star: sigma_star.clone(),
        result: g_t.group,
        beta,
    })
}
