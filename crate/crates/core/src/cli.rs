//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 when a suite or the realization fails, 2 on malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::abelian::{parse_group, GroupHom};
use crate::construct::{build_realization, RealizationParams};
use crate::galg::{ga_add, normed_generator, principal_ideal_moved, GroupAlgebraElem, Rational};
use crate::krull::{tau_star, v_ideal_of, v_product, Automorphism, Divisor, Prime};
use crate::pipeline::{full_pipeline, verify, PipelineReport, RunConfig};
use crate::skew::{class_group_of_skew_extension, skew_mul, SkewLaurentPoly};
use crate::suites::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "krull-forge", version, about = "Realize abelian groups as class groups of skew Laurent extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full realization pipeline for a group
    Realize(RealizeArgs),
    /// Run individual verification suites
    Verify(VerifyArgs),
    /// Print a worked example
    Demo(DemoArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Number of prime orbits per class
    #[arg(long, default_value_t = 1)]
    orbits: u32,
    /// Bound on orbit periods and automorphism powers
    #[arg(long, default_value_t = 1000)]
    bound: u64,
    /// Sample count per check
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RealizeArgs {
    /// Group spec such as "Z^2 x Z/4"
    #[arg(long)]
    group: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name or "all"
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value = "Z/2")]
    group: String,
    /// none, identity or cycle:<k>
    #[arg(long, default_value = "none")]
    adversarial: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DemoArgs {
    #[arg(long, default_value = "Z/2")]
    group: String,
}

impl Common {
    fn config(&self, group: &str) -> RunConfig {
        RunConfig { group: group.to_string(), orbits: self.orbits, bound: self.bound, samples: self.samples, seed: self.seed }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Realize(a) => realize(&a, out),
        Command::Verify(a) => verify_cmd(&a, out),
        Command::Demo(a) => demo(&a, out),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type CmdResult = std::result::Result<i32, (i32, String)>;

fn usage(e: impl std::fmt::Display) -> (i32, String) {
    (EXIT_USAGE, e.to_string())
}

fn io_failure(e: std::io::Error) -> (i32, String) {
    (EXIT_FAILED, e.to_string())
}

fn write_json(path: &Option<PathBuf>, report: &PipelineReport) -> std::result::Result<(), (i32, String)> {
    if let Some(path) = path {
        std::fs::write(path, report.to_json() + "\n")
            .map_err(|e| (EXIT_FAILED, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_suites(report: &PipelineReport, out: &mut dyn Write) -> std::io::Result<()> {
    for s in &report.suites {
        let tag = if s.matches_expectation() { "" } else { "  MISMATCH" };
        writeln!(out, "  {:<18} {:<5} (expected {}){tag}  {}", s.name, s.verdict.to_string(), s.expected, s.detail)?;
        for w in &s.witnesses {
            writeln!(out, "      witness: {w}")?;
        }
    }
    Ok(())
}

fn realize(a: &RealizeArgs, out: &mut dyn Write) -> CmdResult {
    let config = a.common.config(&a.group);
    let report = full_pipeline(&config).map_err(usage)?;
    write_json(&a.common.json, &report)?;
    (|| -> std::io::Result<()> {
        writeln!(
            out,
            "realize {}: orbits {}, bound {}, samples {}, seed {}",
            report.spec.class_group.display, config.orbits, config.bound, config.samples, config.seed
        )?;
        print_suites(&report, out)?;
        if let Some(c) = &report.certificate {
            writeln!(out, "simplicity certificate: {} ({})", if c.passed { "pass" } else { "fail" }, c.scale)?;
        }
        for t in &report.prime_tallies {
            writeln!(out, "class {}: {} distinct primes, image {}", t.class, t.distinct_primes, t.image)?;
        }
        if let Some(cg) = &report.class_group {
            let iso = if cg.isomorphic { "isomorphic to" } else { "NOT isomorphic to" };
            writeln!(out, "G(T) = {} ({iso} {})", cg.computed.display, cg.requested.display)?;
        }
        writeln!(out, "verdict: {}", report.verdict)
    })()
    .map_err(io_failure)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().map_err(usage)?]
    };
    let adversarial = Automorphism::parse(&a.adversarial).map_err(usage)?;
    let config = a.common.config(&a.group);
    let report = verify(&config, &suites, adversarial).map_err(usage)?;
    write_json(&a.common.json, &report)?;
    (|| -> std::io::Result<()> {
        writeln!(
            out,
            "verify {} with automorphism {}: bound {}, samples {}, seed {}",
            report.spec.class_group.display, report.spec.automorphism, config.bound, config.samples, config.seed
        )?;
        print_suites(&report, out)?;
        writeln!(out, "verdict: {}", report.verdict)
    })()
    .map_err(io_failure)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn demo(a: &DemoArgs, out: &mut dyn Write) -> CmdResult {
    let group = parse_group(&a.group).map_err(usage)?;
    let spec = build_realization(&RealizationParams::new(group.clone(), 1).map_err(usage)?);
    let mut lines = Vec::new();

    lines.push(format!("class group G = {group}"));
    lines.push("primes p[i,n;g] lie in orbit i, at shift n, in class g; τ moves n to n+1".to_string());

    // p in class g, q and q' in class -g, so p·q and p·q' lie in H
    let g = if group.is_trivial() { group.zero() } else { group.generator(0) };
    let minus_g = group.neg(&g).map_err(usage)?;
    let p = Prime::new(0, 0, g);
    let q = Prime::new(0, 1, minus_g.clone());
    let q2 = Prime::new(0, 2, minus_g);
    lines.push("sample primes:".to_string());
    for x in [&p, &q, &q2] {
        lines.push(format!("  {x}  τ -> {}", spec.tau(x)));
    }

    let a_div = Divisor::basis(p.clone()).mul(&Divisor::basis(q));
    let b_div = Divisor::basis(p).mul(&Divisor::basis(q2));
    lines.push("members of H (nonnegative, class sum 0):".to_string());
    lines.push(format!("  a = {a_div}"));
    lines.push(format!("  b = {b_div}"));
    lines.push(format!("divisorial product a·b = {}", v_product(&a_div, &b_div)));
    let ideal = v_ideal_of(&spec, &[a_div.clone(), b_div.clone()]).expect("members lie in the quotient group");
    lines.push(format!("divisorial ideal (a, b)_v = {ideal}"));
    lines.push(format!("τ(a) = {}", tau_star(&spec, &a_div)));

    let f: GroupAlgebraElem<Rational> = ga_add(
        &GroupAlgebraElem::monomial(Rational::from_integer(3.into()), a_div.clone()),
        &GroupAlgebraElem::monomial(Rational::from_integer((-2).into()), b_div.clone()),
    );
    let n = normed_generator(&f).expect("nonzero");
    lines.push(format!("f = {f}"));
    lines.push(format!("normed generator of f: {n}"));
    let moved = principal_ideal_moved(&spec, &f).expect("nonunit");
    lines.push(format!("φ moves the principal ideal fK[G]: {moved}"));

    let ca = f;
    let cb = GroupAlgebraElem::monomial(Rational::from_integer(1.into()), a_div.clone());
    let product = skew_mul(&spec, &SkewLaurentPoly::monomial(1, ca.clone()), &SkewLaurentPoly::monomial(1, cb.clone()));
    lines.push(format!("skew product (x·({ca}))·(x·({cb})) = {product}"));

    let sequence = class_group_of_skew_extension(&group, &GroupHom::identity(&group), &[]).map_err(usage)?;
    if group.is_trivial() {
        lines.push("the class group is trivial: every divisorial ideal of H is principal".to_string());
    }
    lines.push(format!("τ acts trivially on classes, so G(T) = coker(id - id) = {}", sequence.result));
    lines.push(format!("G(T) = {}", sequence.result));

    for l in lines {
        writeln!(out, "{l}").map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("krull-forge").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["realize", "--group", "Z/2", "--samples", "20"]).0, 0);
        assert_eq!(run_str(&["realize", "--group", "Z/one"]).0, 2);
        assert_eq!(run_str(&["realize"]).0, 2);
        assert_eq!(run_str(&["realize", "--group", "Z", "--samples", "x"]).0, 2);
        assert_eq!(run_str(&["realize", "--group", "Z", "--orbits", "0"]).0, 2);
        assert_eq!(run_str(&["verify", "--suite", "bogus"]).0, 2);
        assert_eq!(run_str(&["verify", "--adversarial", "cycle:0"]).0, 2);
        assert_eq!(run_str(&["verify", "--suite", "orbit", "--adversarial", "identity"]).0, 0);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn demo_transcripts() {
        let (code, out, _) = run_str(&["demo"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().last().unwrap(), "G(T) = Z/2");
        let (_, out, _) = run_str(&["demo", "--group", "Z"]);
        assert_eq!(out.lines().last().unwrap(), "G(T) = Z");
        let (_, out, _) = run_str(&["demo", "--group", "0"]);
        assert!(out.contains("trivial"));
        assert_eq!(out.lines().last().unwrap(), "G(T) = 0");
        assert_eq!(run_str(&["demo"]).1, run_str(&["demo"]).1);
        assert_eq!(run_str(&["demo", "--group", "Q"]).0, 2);
    }
}
