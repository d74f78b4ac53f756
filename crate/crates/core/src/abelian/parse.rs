//! Group-spec grammar:
//!
//! ```text
//! spec := "0" | term ("x" term)*
//! term := "Z" | "Z^" <int >= 1> | "Z/" <int >= 2>
//! ```
//!
//! Whitespace around terms is ignored. The result is normalized to
//! invariant-factor form, so `Z/2 x Z/3` parses to `Z/6`.

use num_bigint::BigInt;

use super::FGAbelianGroup;
use crate::error::{Error, Result};

pub fn parse_group(spec: &str) -> Result<FGAbelianGroup> {
    let fail = |reason: String| Error::Parse { spec: spec.to_string(), reason };
    let s = spec.trim();
    if s == "0" {
        return Ok(FGAbelianGroup::trivial());
    }
    if s.is_empty() {
        return Err(fail("empty spec".into()));
    }

    let mut free_rank = 0usize;
    let mut moduli = Vec::new();
    for term in s.split('x').map(str::trim) {
        if term == "Z" {
            free_rank += 1;
        } else if let Some(exp) = term.strip_prefix("Z^") {
            let r: usize = digits(exp)
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| fail(format!("bad exponent in term {term:?}")))?;
            if r == 0 {
                return Err(fail(format!("exponent must be at least 1 in term {term:?}")));
            }
            free_rank += r;
        } else if let Some(m) = term.strip_prefix("Z/") {
            let m: BigInt = digits(m)
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| fail(format!("bad modulus in term {term:?}")))?;
            if m < BigInt::from(2) {
                return Err(Error::Modulus(m));
            }
            moduli.push(m);
        } else {
            return Err(fail(format!("unrecognized term {term:?}")));
        }
    }
    FGAbelianGroup::from_moduli(free_rank, &moduli)
}

fn digits(s: &str) -> Option<&str> {
    (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then_some(s)
}
