//! Prime ideals of `A(d)`: the preimages `𝔭([i], p)` of `(p) ⊂ Z` under the
//! ghost components `φ_i`.
//!
//! For a prime `p`, layers `i` and `j` give the same ideal exactly when
//! `p - 1` divides `i - j`; points store the least layer of their class.
//! The `𝔭([i], 0)` are the minimal primes, the `𝔭([i], p)` the maximal ones.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::burnside::{BurnsidePresentation, RingElement};
use crate::error::{Error, Result};
use crate::natinf::NatInf;
use crate::poset::{Poset, SpectrumPoint};
use crate::prime::Prime;

/// A point `𝔭([i], p)` of `Spec A(d)`, `p` a prime or `None` for `(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZariskiPrime {
    layer: u32,
    char: Option<Prime>,
}

impl ZariskiPrime {
    /// `𝔭([i], p)` in canonical form. `layer` must be positive.
    pub fn new(layer: u32, char: Option<Prime>) -> Result<Self> {
        if layer == 0 {
            return Err(Error::pre("layers start at 1"));
        }
        let layer = match char {
            None => layer,
            Some(p) => ((u64::from(layer) - 1) % p.pm1()) as u32 + 1,
        };
        Ok(ZariskiPrime { layer, char })
    }

    pub fn rational(layer: u32) -> Result<Self> {
        Self::new(layer, None)
    }

    pub fn modular(layer: u32, p: Prime) -> Result<Self> {
        Self::new(layer, Some(p))
    }

    /// The least layer in the gluing class.
    pub fn layer(&self) -> u32 {
        self.layer
    }

    pub fn char(&self) -> Option<Prime> {
        self.char
    }
}

impl fmt::Display for ZariskiPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.char {
            None => write!(f, "z({}|0)", self.layer),
            Some(p) => write!(f, "z({}|{})", self.layer, p),
        }
    }
}

impl SpectrumPoint for ZariskiPrime {
    fn label(&self) -> String {
        self.to_string()
    }
    fn layer(&self) -> u32 {
        self.layer
    }
    fn characteristic(&self) -> u64 {
        self.char.map_or(0, Prime::get)
    }
    fn height(&self) -> Option<NatInf> {
        None
    }
}

/// Equality of ideals, from the raw data `(i, p)` and `(j, q)`.
pub fn z_equal_raw(i: u32, p: Option<Prime>, j: u32, q: Option<Prime>) -> bool {
    match (p, q) {
        (None, None) => i == j,
        (Some(p), Some(q)) => p == q && p.congruent(u64::from(i), u64::from(j)),
        _ => false,
    }
}

pub fn z_equal(a: &ZariskiPrime, b: &ZariskiPrime) -> bool {
    z_equal_raw(a.layer, a.char, b.layer, b.char)
}

/// `a ⊆ b` as ideals of `A(d)`.
pub fn z_leq(a: &ZariskiPrime, b: &ZariskiPrime) -> bool {
    if z_equal(a, b) {
        return true;
    }
    match (a.char, b.char) {
        (None, Some(q)) => z_equal_raw(a.layer, Some(q), b.layer, Some(q)),
        _ => false,
    }
}

/// Whether `a` lies in the ideal `q`, i.e. `φ_i(a) ≡ 0` modulo the characteristic.
pub fn z_membership(
    pres: &BurnsidePresentation,
    a: &RingElement,
    q: &ZariskiPrime,
) -> Result<bool> {
    if q.layer as usize > pres.d() {
        return Err(Error::pre(format!("{q} is not a prime of A({})", pres.d())));
    }
    let value = pres.ghost_component(a, q.layer as usize)?;
    Ok(match q.char {
        None => value.is_zero(),
        Some(p) => value.is_multiple_of(&p.get().into()),
    })
}

/// All canonical points of `Spec A(d)` over the given primes.
pub fn z_points(d: u32, primes: &[Prime]) -> Result<Vec<ZariskiPrime>> {
    if d == 0 {
        return Err(Error::pre("d must be at least 1"));
    }
    if primes.is_empty() {
        return Err(Error::pre("prime set must be non-empty"));
    }
    let mut pts = Vec::new();
    for i in 1..=d {
        pts.push(ZariskiPrime::rational(i)?);
        for &p in primes {
            pts.push(ZariskiPrime::modular(i, p)?);
        }
    }
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// `Spec A(d)` restricted to `primes`, ordered by inclusion.
pub fn z_poset(d: u32, primes: &[Prime]) -> Result<Poset<ZariskiPrime>> {
    Ok(Poset::from_relation(z_points(d, primes)?, z_leq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::primes_up_to;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn zp(i: u32, q: u64) -> ZariskiPrime {
        ZariskiPrime::modular(i, p(q)).unwrap()
    }

    fn z0(i: u32) -> ZariskiPrime {
        ZariskiPrime::rational(i).unwrap()
    }

    #[test]
    fn gluing() {
        assert!(z_equal(&zp(1, 2), &zp(3, 2)));
        assert_eq!(zp(3, 2), zp(1, 2));
        assert!(!z_equal(&zp(1, 3), &zp(2, 3)));
        assert!(!z_equal(&z0(1), &z0(2)));
        assert!(!z_equal(&zp(1, 3), &zp(1, 5)));
        assert_eq!(zp(5, 3).layer(), 1);
        assert_eq!(zp(4, 3).layer(), 2);
    }

    #[test]
    fn inclusions() {
        assert!(z_leq(&z0(2), &zp(2, 5)));
        assert!(z_leq(&z0(1), &zp(3, 2)));
        assert!(!z_leq(&zp(3, 5), &z0(1)));
        assert!(!z_leq(&z0(1), &zp(2, 3)));
        assert!(!z_leq(&z0(1), &z0(2)));
    }

    #[test]
    fn membership_examples() {
        let pres = BurnsidePresentation::new(3).unwrap();
        // x_3 - 6
        let a = RingElement::from_ints(&[-6, 0, 1]);
        assert!(z_membership(&pres, &a, &z0(3)).unwrap());
        for q in [z0(1), z0(2), z0(3), zp(1, 2), zp(2, 3), zp(3, 5)] {
            assert!(!z_membership(&pres, &RingElement::one(3), &q).unwrap());
        }
        for (i, q) in [(1, 2), (2, 3), (3, 5), (3, 7)] {
            let pa = RingElement::integer(3, q as i64);
            assert!(z_membership(&pres, &pa, &zp(i, q)).unwrap());
        }
    }

    #[test]
    fn rank_three_posets() {
        let two = z_poset(3, &[p(2)]).unwrap();
        assert_eq!(two.minimal().len(), 3);
        assert_eq!(two.maximal().len(), 1);
        assert_eq!(two.covers().len(), 3);

        let three = z_poset(3, &[p(3)]).unwrap();
        assert_eq!(three.minimal().len(), 3);
        assert_eq!(three.maximal().len(), 2);

        let many = z_poset(3, &[p(2), p(3), p(5)]).unwrap();
        assert_eq!(many.minimal().len(), 3);
        assert_eq!(many.maximal().len(), 1 + 2 + 3);
    }

    #[test]
    fn rank_one_is_spec_z() {
        let ps = [p(2), p(3), p(7)];
        let poset = z_poset(1, &ps).unwrap();
        assert_eq!(poset.len(), 4);
        assert_eq!(poset.minimal(), vec![poset.index_of(&z0(1)).unwrap()]);
        assert_eq!(poset.covers().len(), 3);
    }

    #[test]
    fn order_axioms_and_krull_dimension() {
        let primes = primes_up_to(13);
        for d in 1..=8 {
            let poset = z_poset(d, &primes).unwrap();
            assert!(poset.check_partial_order().is_none(), "d = {d}");
            assert!(poset.height() <= 1);
            for a in poset.points() {
                for b in poset.points() {
                    assert_eq!(z_equal(a, b), a == b);
                }
            }
        }
    }

    fn element(d: usize) -> impl Strategy<Value = RingElement> {
        proptest::collection::vec(-30i64..=30, d).prop_map(|v| RingElement::from_ints(&v))
    }

    proptest! {
        #[test]
        fn glued_primes_have_the_same_members(a in element(6), qi in 0usize..4) {
            let pres = BurnsidePresentation::new(6).unwrap();
            let q = p([2, 3, 5, 7][qi]);
            for i in 1..=6u32 {
                for j in 1..=6u32 {
                    if q.congruent(i.into(), j.into()) {
                        let raw_i = ZariskiPrime { layer: i, char: Some(q) };
                        let raw_j = ZariskiPrime { layer: j, char: Some(q) };
                        prop_assert_eq!(
                            z_membership(&pres, &a, &raw_i).unwrap(),
                            z_membership(&pres, &a, &raw_j).unwrap()
                        );
                    }
                }
            }
        }

        #[test]
        fn membership_is_prime(a in element(5), b in element(5)) {
            let pres = BurnsidePresentation::new(5).unwrap();
            let ab = pres.multiply(&a, &b).unwrap();
            for q in z_points(5, &[p(2), p(3), p(5), p(7)]).unwrap() {
                let lhs = z_membership(&pres, &ab, &q).unwrap();
                let rhs = z_membership(&pres, &a, &q).unwrap() || z_membership(&pres, &b, &q).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
