//! The spectrum of compact `d`-excisive functors with integral
//! Eilenberg-MacLane coefficients.
//!
//! Points are pairs `([k], 𝔭)` with `𝔭 ∈ Spec Z`; there is no gluing. Base
//! change along the unit embeds this spectrum into the sphere-coefficient one,
//! sending `(p)` to the height-`∞` point and `(0)` to the rational point.

use std::fmt;

use crate::balmer::BalmerPrime;
use crate::error::{Error, Result};
use crate::natinf::{Finite, Infinity, NatInf};
use crate::poset::{Poset, RankDir, SpectrumPoint};
use crate::prime::Prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HzPrime {
    layer: u32,
    residue: Option<Prime>,
}

impl HzPrime {
    pub fn new(layer: u32, residue: Option<Prime>) -> Result<Self> {
        if layer == 0 {
            return Err(Error::pre("layers start at 1"));
        }
        Ok(HzPrime { layer, residue })
    }

    pub fn layer(&self) -> u32 {
        self.layer
    }

    /// The prime `p` of `(p)`, or `None` for `(0)`.
    pub fn residue(&self) -> Option<Prime> {
        self.residue
    }
}

impl fmt::Display for HzPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residue {
            None => write!(f, "hz({}|0)", self.layer),
            Some(p) => write!(f, "hz({}|{})", self.layer, p),
        }
    }
}

impl SpectrumPoint for HzPrime {
    fn label(&self) -> String {
        self.to_string()
    }
    fn layer(&self) -> u32 {
        self.layer
    }
    fn characteristic(&self) -> u64 {
        self.residue.map_or(0, Prime::get)
    }
    fn height(&self) -> Option<NatInf> {
        None
    }
}

/// `a ⊆ b`.
pub fn hz_leq(a: &HzPrime, b: &HzPrime) -> bool {
    match (a.residue, b.residue) {
        (Some(p), q) if q.is_none_or(|q| q == p) => p.divides_gap(a.layer.into(), b.layer.into()),
        (None, None) => a.layer == b.layer,
        _ => false,
    }
}

pub fn hz_base_change(a: &HzPrime) -> BalmerPrime {
    let point = match a.residue {
        Some(p) => BalmerPrime::at(a.layer, p, Infinity),
        None => BalmerPrime::new(a.layer, None, Finite(1)),
    };
    point.expect("layers of HZ points are positive")
}

pub fn hz_points(d: u32, primes: &[Prime]) -> Result<Vec<HzPrime>> {
    if d == 0 {
        return Err(Error::pre("d must be at least 1"));
    }
    let mut pts = Vec::new();
    for k in 1..=d {
        pts.push(HzPrime::new(k, None)?);
        for &p in primes {
            pts.push(HzPrime::new(k, Some(p))?);
        }
    }
    pts.sort();
    pts.dedup();
    Ok(pts)
}

pub fn hz_poset(d: u32, primes: &[Prime]) -> Result<Poset<HzPrime>> {
    Ok(Poset::from_relation(hz_points(d, primes)?, hz_leq))
}

/// The `(·, p)` slice: `[d]` ordered by `k ≤_p l` iff `p - 1 | k - l ≥ 0`.
pub fn hz_slice_poset(d: u32, p: Prime) -> Result<Poset<HzPrime>> {
    let pts = hz_points(d, &[p])?
        .into_iter()
        .filter(|x| x.residue.is_some())
        .collect();
    Ok(Poset::from_relation(pts, hz_leq))
}

/// Hasse diagram with smaller ideals drawn above larger ones.
pub fn hz_dot(poset: &Poset<HzPrime>) -> String {
    poset.to_dot("hz", RankDir::TopToBottom)
}

/// Whether `y` satisfies the two closure properties describing the subsets
/// that classify thick ideals:
/// `(l, 0) ∈ Y ⟹ (k, p) ∈ Y` and `(l, p) ∈ Y ⟹ (k, p) ∈ Y`
/// for every `p` in `primes` with `p - 1 | k - l ≥ 0`.
pub fn hz_admissible_subset(y: &[HzPrime], d: u32, primes: &[Prime]) -> Result<bool> {
    for x in y {
        if x.layer > d || x.residue.is_some_and(|p| !primes.contains(&p)) {
            return Err(Error::pre(format!("{x} is outside [{d}] × Spec Z|primes")));
        }
    }
    let has = |k: u32, r: Option<Prime>| y.iter().any(|x| x.layer == k && x.residue == r);
    for x in y {
        let l = u64::from(x.layer);
        let targets: &[Prime] = match x.residue {
            None => primes,
            Some(ref p) => std::slice::from_ref(p),
        };
        for &p in targets {
            for k in 1..=d {
                if p.divides_gap(k.into(), l) && !has(k, Some(p)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
