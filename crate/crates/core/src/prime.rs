use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A rational prime, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::pre(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p - 1`, the modulus governing gluing of layers at this prime.
    pub fn pm1(self) -> u64 {
        self.0 - 1
    }

    /// Whether `p - 1` divides `k - l` and `k >= l`.
    pub fn divides_gap(self, k: u64, l: u64) -> bool {
        k >= l && (k - l).is_multiple_of(self.pm1())
    }

    /// Whether `p - 1` divides the (signed) difference of `a` and `b`.
    pub fn congruent(self, a: u64, b: u64) -> bool {
        a.abs_diff(b).is_multiple_of(self.pm1())
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Prime> {
        let p = s
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::pre(format!("`{s}` is not an integer")))?;
        Prime::new(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Parses a comma separated list such as `2,3,5`, sorted and deduplicated.
pub fn parse_prime_list(s: &str) -> Result<Vec<Prime>> {
    let mut out = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Prime>>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::pre("empty prime list"));
    }
    Ok(out)
}

/// All primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<Prime> {
    (2..=bound).filter(|&n| is_prime(n)).map(Prime).collect()
}
