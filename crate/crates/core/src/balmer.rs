//! The Balmer spectrum of compact `d`-excisive functors, as a truncated poset.
//!
//! Points are `P([k], p, h)`: layer `k ∈ [d]`, prime `p`, chromatic height
//! `h ∈ {1, 2, ..., ∞}`. The height-1 point of a layer does not depend on the
//! prime and is stored with no characteristic. Inclusion between points is
//! decided by [`b_leq`] from the geometric blueshift numbers `δ_p`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::combinat::{self, delta_unchecked};
use crate::error::{Error, Result};
use crate::natinf::{Finite, Infinity, NatInf};
use crate::poset::{Poset, RankDir, SpectrumPoint};
use crate::prime::Prime;
use crate::zariski::ZariskiPrime;

/// A canonical point `P([k], p, h)`.
///
/// The derived order sorts by layer, then characteristic (rational first),
/// then height, which is the node order used for every export.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BalmerPrime {
    layer: u32,
    char: Option<Prime>,
    height: NatInf,
}

impl BalmerPrime {
    /// Builds the canonical form. At height 1 the characteristic is dropped;
    /// above it a prime is required.
    pub fn new(layer: u32, char: Option<Prime>, height: NatInf) -> Result<Self> {
        if layer == 0 {
            return Err(Error::pre("layers start at 1"));
        }
        match (height, char) {
            (Finite(0), _) => Err(Error::pre("chromatic heights start at 1")),
            (Finite(1), _) => Ok(BalmerPrime {
                layer,
                char: None,
                height,
            }),
            (_, None) => Err(Error::pre(format!(
                "height {height} needs a prime characteristic"
            ))),
            (_, Some(p)) => Ok(BalmerPrime {
                layer,
                char: Some(p),
                height,
            }),
        }
    }

    /// The rational point `P([k], 0, 1)`.
    pub fn rational(layer: u32) -> Result<Self> {
        Self::new(layer, None, Finite(1))
    }

    /// `P([k], p, h)`; collapses to the rational point when `h = 1`.
    pub fn at(layer: u32, p: Prime, height: NatInf) -> Result<Self> {
        Self::new(layer, Some(p), height)
    }

    pub fn layer(&self) -> u32 {
        self.layer
    }

    /// `None` exactly for the height-1 points.
    pub fn char(&self) -> Option<Prime> {
        self.char
    }

    pub fn height(&self) -> NatInf {
        self.height
    }

    pub fn is_finite_height(&self) -> bool {
        self.height.is_finite()
    }
}

impl fmt::Display for BalmerPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.char {
            None => write!(f, "P({}|*,{})", self.layer, self.height),
            Some(p) => write!(f, "P({}|{},{})", self.layer, p, self.height),
        }
    }
}

impl Serialize for BalmerPrime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl SpectrumPoint for BalmerPrime {
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
        Some(self.height)
    }
}

pub fn b_equal(a: &BalmerPrime, b: &BalmerPrime) -> bool {
    a == b
}

/// `a ⊆ b`.
///
/// With `a = P([k], p, h')` and `b = P([l], q, h)` this holds iff
/// `p - 1 | k - l ≥ 0`, `h' ≥ h + δ_p(k, l)`, and `p = q` whenever `h > 1`.
/// A rational `a` is only contained in the rational point of its own layer,
/// whichever prime is used to test the divisibility condition.
pub fn b_leq(a: &BalmerPrime, b: &BalmerPrime) -> bool {
    let Some(p) = a.char else {
        return b.height == Finite(1) && a.layer == b.layer;
    };
    if b.char.is_some_and(|q| q != p) {
        return false;
    }
    let (k, l) = (u64::from(a.layer), u64::from(b.layer));
    if !p.divides_gap(k, l) {
        return false;
    }
    a.height >= b.height + delta_unchecked(p, k, l)
}

/// The comparison map to `Spec A(d)`.
pub fn rho(a: &BalmerPrime) -> ZariskiPrime {
    ZariskiPrime::new(a.layer, a.char).expect("layers of canonical points are positive")
}

/// Height of the Tate construction from layer `k` to layer `l` at height `h`:
/// 1 when a strict `p`-power partition of `k` into `l` parts exists, else `h`.
pub fn tate_blueshift(p: Prime, k: u64, l: u64, h: u64) -> Result<NatInf> {
    if l == 0 || k < l {
        return Err(Error::pre(format!("need k ≥ l ≥ 1, got k = {k}, l = {l}")));
    }
    if h == 0 {
        return Err(Error::pre("height must be at least 1"));
    }
    if k > l && combinat::ppp_exists(p, k, l) {
        Ok(Finite(1))
    } else {
        Ok(Finite(h))
    }
}

/// `δ_p(k, l)`, defined only when `p - 1 | k - l ≥ 0`.
pub fn geometric_blueshift(p: Prime, k: u64, l: u64) -> Result<NatInf> {
    if !p.divides_gap(k, l) {
        return Err(Error::pre(format!(
            "geometric blueshift needs {} | {k} - {l} ≥ 0",
            p.pm1()
        )));
    }
    combinat::delta_p(p, k, l)
}

/// A finite piece of the spectrum: all canonical points of layers `1..=d`
/// over `primes` with height at most `hmax`, plus optionally the `∞` points.
#[derive(Debug, Clone)]
pub struct SpectrumTruncation {
    d: u32,
    primes: Vec<Prime>,
    hmax: u64,
    include_infinity: bool,
    poset: Poset<BalmerPrime>,
}

impl SpectrumTruncation {
    pub fn new(d: u32, primes: &[Prime], hmax: u64, include_infinity: bool) -> Result<Self> {
        if d == 0 {
            return Err(Error::pre("d must be at least 1"));
        }
        if hmax == 0 {
            return Err(Error::pre("Hmax must be at least 1"));
        }
        let mut primes = primes.to_vec();
        primes.sort();
        primes.dedup();
        let mut points = Vec::new();
        for k in 1..=d {
            points.push(BalmerPrime::rational(k)?);
            for &p in &primes {
                for h in 2..=hmax {
                    points.push(BalmerPrime::at(k, p, Finite(h))?);
                }
                if include_infinity {
                    points.push(BalmerPrime::at(k, p, Infinity)?);
                }
            }
        }
        Ok(SpectrumTruncation {
            d,
            primes,
            hmax,
            include_infinity,
            poset: Poset::from_relation(points, b_leq),
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn hmax(&self) -> u64 {
        self.hmax
    }

    pub fn include_infinity(&self) -> bool {
        self.include_infinity
    }

    /// `d (1 + |primes| (hmax - 1) + |primes| [include_infinity])`.
    pub fn expected_len(&self) -> usize {
        let n = self.primes.len() as u64;
        let per_layer = 1 + n * (self.hmax - 1) + n * u64::from(self.include_infinity);
        (u64::from(self.d) * per_layer) as usize
    }

    pub fn points(&self) -> &[BalmerPrime] {
        self.poset.points()
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn poset(&self) -> &Poset<BalmerPrime> {
        &self.poset
    }

    pub fn index_of(&self, p: &BalmerPrime) -> Option<usize> {
        self.poset.index_of(p)
    }

    pub fn contains(&self, p: &BalmerPrime) -> bool {
        self.index_of(p).is_some()
    }

    /// The inclusion relation by index, read from the precomputed matrix.
    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.poset.leq_idx(a, b)
    }

    /// Hasse diagram with smaller ideals drawn above larger ones.
    pub fn to_dot(&self) -> String {
        self.poset.to_dot("balmer", RankDir::TopToBottom)
    }
}

pub fn b_truncation(
    d: u32,
    primes: &[Prime],
    hmax: u64,
    include_infinity: bool,
) -> Result<SpectrumTruncation> {
    SpectrumTruncation::new(d, primes, hmax, include_infinity)
}

/// Points of `truncation` in layers `k..=d`: the support of the `k`-th
/// representable generator. It is a closed, i.e. downward-closed, set.
pub fn generator_support(truncation: &SpectrumTruncation, k: u32) -> Result<Vec<BalmerPrime>> {
    if k == 0 || k > truncation.d {
        return Err(Error::pre(format!(
            "generator index {k} outside 1..={}",
            truncation.d
        )));
    }
    Ok(truncation
        .points()
        .iter()
        .filter(|p| p.layer >= k)
        .copied()
        .collect())
}

/// Checks that `P_m([k], p, h) ↦ P_d([k], p, h)` embeds the `m`-truncation
/// into the `d`-truncation as an order-embedding onto the open complement of
/// the support of generator `m + 1`.
pub fn open_embedding_check(
    m: u32,
    d: u32,
    primes: &[Prime],
    hmax: u64,
    include_infinity: bool,
) -> Result<bool> {
    if m == 0 || m > d {
        return Err(Error::pre(format!("need 1 ≤ m ≤ d, got m = {m}, d = {d}")));
    }
    let small = b_truncation(m, primes, hmax, include_infinity)?;
    let big = b_truncation(d, primes, hmax, include_infinity)?;

    let mut image = Vec::with_capacity(small.len());
    for p in small.points() {
        match big.index_of(p) {
            Some(i) => image.push(i),
            None => return Ok(false),
        }
    }
    for (a, &ia) in image.iter().enumerate() {
        for (b, &ib) in image.iter().enumerate() {
            if small.leq_idx(a, b) != big.leq_idx(ia, ib) {
                return Ok(false);
            }
        }
    }

    let closed = if m == d {
        Vec::new()
    } else {
        generator_support(&big, m + 1)?
    };
    let mut complement: Vec<usize> = (0..big.len())
        .filter(|&i| !closed.contains(&big.points()[i]))
        .collect();
    let mut sorted_image = image.clone();
    sorted_image.sort_unstable();
    complement.sort_unstable();
    if sorted_image != complement {
        return Ok(false);
    }
    // open sets are closed upward under inclusion
    let is_open = image
        .iter()
        .all(|&a| (0..big.len()).all(|b| !big.leq_idx(a, b) || image.contains(&b)));
    Ok(is_open)
}

/// The two points compared by [`smith_holds`].
pub fn smith_points(
    p: Prime,
    k: u32,
    l: u32,
    n: NatInf,
    h: NatInf,
) -> Result<(BalmerPrime, BalmerPrime)> {
    Ok((
        BalmerPrime::at(k, p, n.succ())?,
        BalmerPrime::at(l, p, h.succ())?,
    ))
}

/// Whether vanishing of `K(p, n)` on `∂_k` forces vanishing of `K(p, h)` on `∂_l`,
/// i.e. `P([k], p, n+1) ⊆ P([l], p, h+1)`.
pub fn smith_holds(d: u32, p: Prime, k: u32, l: u32, n: NatInf, h: NatInf) -> Result<bool> {
    if k == 0 || l == 0 || k > d || l > d {
        return Err(Error::pre(format!("layers {k}, {l} must lie in 1..={d}")));
    }
    let (a, b) = smith_points(p, k, l, n, h)?;
    Ok(b_leq(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::primes_up_to;
    use crate::zariski::z_leq;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn bp(k: u32, q: u64, h: u64) -> BalmerPrime {
        BalmerPrime::at(k, p(q), Finite(h)).unwrap()
    }

    fn binf(k: u32, q: u64) -> BalmerPrime {
        BalmerPrime::at(k, p(q), Infinity).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert!(b_equal(&bp(2, 2, 1), &bp(2, 3, 1)));
        assert!(!b_equal(&bp(2, 2, 3), &bp(2, 3, 3)));
        assert!(!b_equal(&bp(1, 2, 4), &bp(2, 2, 4)));
        assert_eq!(bp(2, 5, 1).char(), None);
        assert!(BalmerPrime::new(1, None, Finite(2)).is_err());
        assert!(BalmerPrime::new(0, None, Finite(1)).is_err());
        assert!(BalmerPrime::at(1, p(2), Finite(0)).is_err());
        assert_eq!(bp(3, 2, 1).to_string(), "P(3|*,1)");
        assert_eq!(binf(2, 5).to_string(), "P(2|5,inf)");
        assert_eq!(bp(1, 3, 4).to_string(), "P(1|3,4)");
    }

    #[test]
    fn inclusion_examples() {
        for h in 1..8 {
            assert!(b_leq(&bp(4, 2, h + 1), &bp(2, 2, h)));
            assert!(!b_leq(&bp(4, 2, h), &bp(2, 2, h)));
            assert!(b_leq(&bp(3, 2, h + 2), &bp(1, 2, h)));
            assert!(!b_leq(&bp(3, 2, h + 1), &bp(1, 2, h)));
        }
        for n in 1..8 {
            assert!(!b_leq(&bp(2, 3, n), &binf(2, 3)));
        }
        assert!(b_leq(&binf(2, 3), &binf(2, 3)));
        assert!(b_leq(&binf(4, 3), &binf(2, 3)));
        assert!(b_leq(&binf(3, 2), &bp(1, 5, 1)));
        assert!(!b_leq(&bp(2, 2, 3), &bp(2, 3, 2)));
        assert!(b_leq(&bp(2, 2, 3), &bp(2, 3, 1)));
        assert!(!b_leq(&bp(2, 2, 1), &bp(1, 2, 1)));
        assert!(!b_leq(&bp(1, 2, 1), &bp(1, 2, 2)));
    }

    #[test]
    fn comparison_map() {
        assert_eq!(rho(&binf(3, 2)), ZariskiPrime::modular(1, p(2)).unwrap());
        assert_eq!(rho(&bp(2, 7, 1)), ZariskiPrime::rational(2).unwrap());
        assert_eq!(rho(&bp(2, 3, 5)), ZariskiPrime::modular(2, p(3)).unwrap());
    }

    #[test]
    fn blueshift_numbers() {
        for h in 1..6 {
            assert_eq!(tate_blueshift(p(2), 4, 2, h).unwrap(), Finite(1));
            assert_eq!(tate_blueshift(p(2), 3, 1, h).unwrap(), Finite(h));
            assert_eq!(tate_blueshift(p(5), 6, 2, h).unwrap(), Finite(1));
            assert_eq!(tate_blueshift(p(3), 4, 4, h).unwrap(), Finite(h));
        }
        assert!(tate_blueshift(p(2), 1, 2, 1).is_err());
        for l in 1..10 {
            assert_eq!(geometric_blueshift(p(3), l, l).unwrap(), Finite(0));
        }
        assert_eq!(geometric_blueshift(p(2), 4, 2).unwrap(), Finite(1));
        assert_eq!(geometric_blueshift(p(2), 3, 1).unwrap(), Finite(2));
        assert!(geometric_blueshift(p(3), 4, 1).is_err());
    }

    #[test]
    fn blueshift_is_tate_sum_along_shortest_chain() {
        for q in [2, 3, 5, 7] {
            let q = p(q);
            for k in 1..=20 {
                for l in 1..=k {
                    if !q.divides_gap(k, l) {
                        continue;
                    }
                    let chain = combinat::shortest_partition_chain(q, k, l)
                        .unwrap()
                        .unwrap();
                    let total = chain
                        .windows(2)
                        .map(|w| tate_blueshift(q, w[0], w[1], 5).unwrap())
                        .fold(Finite(0), |a, b| a + b);
                    assert_eq!(
                        total,
                        geometric_blueshift(q, k, l).unwrap(),
                        "p={q} k={k} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn truncation_sizes() {
        let t = b_truncation(1, &[p(2)], 3, true).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.poset().covers().len(), 3);
        assert_eq!(t.poset().height(), 3);

        for d in 1..=4 {
            for hmax in 1..=4 {
                for inf in [false, true] {
                    let t = b_truncation(d, &[p(2), p(3), p(5)], hmax, inf).unwrap();
                    assert_eq!(t.len(), t.expected_len());
                }
            }
        }
        assert!(b_truncation(2, &[p(2)], 0, true).is_err());
    }

    #[test]
    fn rank_two_at_two_shifts_by_one() {
        let t = b_truncation(2, &[p(2)], 5, true).unwrap();
        for h in 1..5 {
            assert!(b_leq(&bp(2, 2, h + 1), &bp(1, 2, h)));
            assert!(!b_leq(&bp(2, 2, h), &bp(1, 2, h)));
        }
        assert!(t.poset().check_partial_order().is_none());
    }

    #[test]
    fn order_properties_on_small_truncations() {
        let primes = primes_up_to(7);
        for d in 1..=4 {
            let t = b_truncation(d, &primes, 4, true).unwrap();
            assert!(t.poset().check_partial_order().is_none());
            for (a, b) in t.poset().relation() {
                let (pa, pb) = (t.points()[a], t.points()[b]);
                assert!(pa.layer() >= pb.layer());
                assert!(pa.height() >= pb.height());
                assert!(z_leq(&rho(&pb), &rho(&pa)));
            }
        }
    }

    #[test]
    fn supports_are_closed() {
        let t = b_truncation(4, &[p(2), p(3)], 3, true).unwrap();
        assert_eq!(generator_support(&t, 1).unwrap().len(), t.len());
        let top = generator_support(&t, 4).unwrap();
        assert!(top.iter().all(|q| q.layer() == 4));
        assert_eq!(top.len(), t.len() / 4);
        for k in 1..=4 {
            let s = generator_support(&t, k).unwrap();
            for q in t.points() {
                for member in &s {
                    if b_leq(q, member) {
                        assert!(s.contains(q));
                    }
                }
            }
        }
        assert!(generator_support(&t, 5).is_err());
    }

    #[test]
    fn open_embeddings() {
        assert!(open_embedding_check(3, 3, &[p(2)], 3, true).unwrap());
        assert!(open_embedding_check(1, 3, &[p(2), p(3)], 3, true).unwrap());
        assert!(open_embedding_check(2, 4, &[p(2), p(3)], 4, true).unwrap());
        assert!(open_embedding_check(0, 3, &[p(2)], 3, true).is_err());
    }

    #[test]
    fn smith_examples() {
        let two = p(2);
        for h in 0..6 {
            let hh = Finite(h);
            assert!(smith_holds(4, two, 2, 2, hh, hh).unwrap());
            assert!(smith_holds(4, two, 4, 2, Finite(h + 1), hh).unwrap());
            assert!(!smith_holds(3, two, 3, 1, Finite(h + 1), hh).unwrap());
            assert!(smith_holds(3, two, 3, 1, Finite(h + 2), hh).unwrap());
        }
        assert!(smith_holds(3, two, 3, 1, Infinity, Finite(4)).unwrap());
        assert!(smith_holds(3, two, 4, 1, Finite(1), Finite(1)).is_err());
    }
}
