//! End-to-end realization and verification runs, and the JSON report they
//! produce.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::Serialize;

use crate::abelian::{parse_group, FGAbelianGroup, GroupElem, GroupHom};
use crate::construct::{build_realization, RealizationParams};
use crate::error::Result;
use crate::krull::{Automorphism, KrullMonoidSpec};
use crate::seeded;
use crate::skew::{class_group_of_skew_extension, simplicity_certificate, CertificateCheck, SimplicityCertificate};
use crate::suites::{run_suites, Suite, SuiteParams, SuiteResult, Verdict};

pub const SCHEMA_VERSION: &str = "krull-forge-report/1";

/// Number of example primes kept per tallied class.
const TALLY_EXAMPLES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub group: String,
    pub orbits: u32,
    pub bound: u64,
    pub samples: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(group: impl Into<String>) -> Self {
        RunConfig { group: group.into(), orbits: 1, bound: 1000, samples: 200, seed: 0 }
    }

    fn params(&self) -> SuiteParams {
        SuiteParams { bound: self.bound, samples: self.samples, seed: self.seed }
    }

    fn spec(&self) -> Result<(FGAbelianGroup, KrullMonoidSpec)> {
        let group = parse_group(&self.group)?;
        let spec = build_realization(&RealizationParams::new(group.clone(), self.orbits)?);
        Ok((group, spec))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: InputEcho,
    pub spec: SpecSummary,
    pub suites: Vec<SuiteResult>,
    pub certificate: Option<CertificateSummary>,
    pub class_group: Option<ClassGroupSummary>,
    pub prime_tallies: Vec<PrimeTally>,
    pub verdict: Verdict,
    pub timings: Timings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub group: String,
    pub orbits: u32,
    pub bound: u64,
    pub samples: usize,
    pub seed: u64,
    pub adversarial: String,
    pub suites: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub display: String,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl From<&FGAbelianGroup> for GroupSummary {
    fn from(g: &FGAbelianGroup) -> Self {
        GroupSummary {
            display: g.to_string(),
            free_rank: g.free_rank(),
            torsion: g.torsion().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecSummary {
    pub class_group: GroupSummary,
    pub orbit_count: u32,
    pub automorphism: String,
}

impl From<&KrullMonoidSpec> for SpecSummary {
    fn from(s: &KrullMonoidSpec) -> Self {
        SpecSummary {
            class_group: s.class_group().into(),
            orbit_count: s.orbit_count(),
            automorphism: s.automorphism().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub passed: bool,
    pub scale: String,
    pub seed: u64,
    pub bound: u64,
    pub samples: usize,
    pub checks: Vec<CertificateCheck>,
}

impl From<SimplicityCertificate> for CertificateSummary {
    fn from(c: SimplicityCertificate) -> Self {
        CertificateSummary { passed: c.passed(), scale: c.scale(), seed: c.seed, bound: c.bound, samples: c.samples, checks: c.checks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroupSummary {
    pub requested: GroupSummary,
    pub computed: GroupSummary,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeTally {
    pub class: String,
    pub image: String,
    pub distinct_primes: usize,
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub total_ms: f64,
    pub suites_ms: BTreeMap<&'static str, f64>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON value without the timings block.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timings");
        }
        v
    }

    pub fn result_group(&self) -> Option<&GroupSummary> {
        self.class_group.as_ref().map(|c| &c.computed)
    }
}

/// Up to `n` distinct classes: all of a small finite group in canonical
/// order, otherwise zero followed by seeded random classes.
fn tally_classes(g: &FGAbelianGroup, n: usize, seed: u64) -> Vec<GroupElem> {
    if let Some(all) = g.elements(4096) {
        return all.into_iter().take(n).collect();
    }
    let mut rng = seeded::named(seed, "tally_classes");
    let mut seen = BTreeSet::new();
    let mut out = vec![g.zero()];
    seen.insert(g.zero());
    while out.len() < n {
        let e = g.random_elem_with(&mut rng);
        if seen.insert(e.clone()) {
            out.push(e);
        }
    }
    out
}

fn tally(spec: &KrullMonoidSpec, beta: &GroupHom, classes: &[GroupElem], config: &RunConfig) -> Result<Vec<PrimeTally>> {
    classes
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let primes = spec.primes_in_class(g, config.samples, config.seed.wrapping_add(k as u64))?;
            let distinct: BTreeSet<_> = primes.iter().filter(|p| p.class == *g).collect();
            Ok(PrimeTally {
                class: g.to_string(),
                image: beta.apply(g)?.to_string(),
                distinct_primes: distinct.len(),
                examples: primes.iter().take(TALLY_EXAMPLES).map(ToString::to_string).collect(),
            })
        })
        .collect()
}

/// Builds the shift realization of the requested group, runs every suite and
/// the simplicity certificate, and computes the class group of the skew
/// Laurent extension with trivial induced action and nothing killed.
pub fn full_pipeline(config: &RunConfig) -> Result<PipelineReport> {
    let start = Instant::now();
    let (group, spec) = config.spec()?;

    let results = run_suites(&Suite::ALL, &spec, config.params());
    let cert = simplicity_certificate(&spec, config.bound, config.samples, config.seed);
    let sequence = class_group_of_skew_extension(&group, &GroupHom::identity(&group), &[])?;
    let isomorphic = sequence.result == group;

    let order = group.order();
    let n = order.map_or(5, |o| usize::try_from(o).unwrap_or(5).min(5));
    let classes = tally_classes(&group, n, config.seed);
    let prime_tallies = tally(&spec, &sequence.beta, &classes, config)?;

    let passed = results.iter().all(|(r, _)| r.verdict == Verdict::Pass)
        && cert.passed()
        && isomorphic
        && prime_tallies.iter().all(|t| t.distinct_primes >= config.samples);

    let suites_ms = results.iter().map(|(r, ms)| (r.name, *ms)).collect();
    Ok(PipelineReport {
        schema: SCHEMA_VERSION,
        command: "realize",
        input: InputEcho {
            group: config.group.clone(),
            orbits: config.orbits,
            bound: config.bound,
            samples: config.samples,
            seed: config.seed,
            adversarial: "none".into(),
            suites: Suite::ALL.iter().map(|s| s.name()).collect(),
        },
        spec: (&spec).into(),
        suites: results.into_iter().map(|(r, _)| r).collect(),
        certificate: Some(cert.into()),
        class_group: Some(ClassGroupSummary { requested: (&group).into(), computed: (&sequence.result).into(), isomorphic }),
        prime_tallies,
        verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        timings: Timings { total_ms: start.elapsed().as_secs_f64() * 1000.0, suites_ms },
    })
}

/// Runs the named suites, optionally on an adversarial variant of the
/// realization. The verdict is `pass` when every suite matches its
/// expectation: adversarial automorphisms must be caught by the suites that
/// look for finite orbits.
pub fn verify(config: &RunConfig, suites: &[Suite], adversarial: Option<Automorphism>) -> Result<PipelineReport> {
    let start = Instant::now();
    let (_, spec) = config.spec()?;
    let spec = match adversarial {
        Some(a) => spec.with_automorphism(a)?,
        None => spec,
    };
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let results = run_suites(&suites, &spec, config.params());
    let passed = results.iter().all(|(r, _)| r.matches_expectation());
    let suites_ms = results.iter().map(|(r, ms)| (r.name, *ms)).collect();
    Ok(PipelineReport {
        schema: SCHEMA_VERSION,
        command: "verify",
        input: InputEcho {
            group: config.group.clone(),
            orbits: config.orbits,
            bound: config.bound,
            samples: config.samples,
            seed: config.seed,
            adversarial: adversarial.map_or_else(|| "none".to_string(), |a| a.to_string()),
            suites: suites.iter().map(|s| s.name()).collect(),
        },
        spec: (&spec).into(),
        suites: results.into_iter().map(|(r, _)| r).collect(),
        certificate: None,
        class_group: None,
        prime_tallies: Vec::new(),
        verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        timings: Timings { total_ms: start.elapsed().as_secs_f64() * 1000.0, suites_ms },
    })
}
