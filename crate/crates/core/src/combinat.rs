//! Exact counting: binomials, Stirling numbers, surjections, good-subset
//! counts, and the p-power partition machinery behind the p-distance.

use std::cell::RefCell;
use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::natinf::{Finite, Infinity, NatInf};
use crate::prime::Prime;

/// Largest `i * j` for which [`mu_brute`] will walk every subset of `[i] x [j]`.
pub const MU_BRUTE_CELLS: u64 = 20;

/// Largest `k` accepted by the partition enumerator and the chain search.
pub const PARTITION_BUDGET: u64 = 64;

/// Memo tables for the basic counting functions.
///
/// Rows are appended on demand and never rewritten. The cache is `!Sync`;
/// each thread gets its own through the free functions below.
#[derive(Debug, Default)]
pub struct CountCache {
    binomial: RefCell<Vec<Vec<BigInt>>>,
    stirling2: RefCell<Vec<Vec<BigInt>>>,
    stirling1: RefCell<Vec<Vec<BigInt>>>,
    factorial: RefCell<Vec<BigInt>>,
}

impl CountCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn binomial(&self, n: u64, k: u64) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let n = n as usize;
        let mut rows = self.binomial.borrow_mut();
        while rows.len() <= n {
            let next = match rows.last() {
                None => vec![BigInt::one()],
                Some(prev) => {
                    let m = prev.len();
                    let mut row = Vec::with_capacity(m + 1);
                    row.push(BigInt::one());
                    for t in 1..m {
                        row.push(&prev[t - 1] + &prev[t]);
                    }
                    row.push(BigInt::one());
                    row
                }
            };
            rows.push(next);
        }
        rows[n][k as usize].clone()
    }

    /// Stirling numbers of the second kind `S(n, k)`.
    pub fn stirling2(&self, n: u64, k: u64) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let n = n as usize;
        let mut rows = self.stirling2.borrow_mut();
        while rows.len() <= n {
            let next = match rows.last() {
                None => vec![BigInt::one()],
                Some(prev) => {
                    let m = prev.len();
                    let mut row = vec![BigInt::zero(); m + 1];
                    for t in 1..=m {
                        let carry = if t < m { &prev[t] * t } else { BigInt::zero() };
                        row[t] = &prev[t - 1] + carry;
                    }
                    row
                }
            };
            rows.push(next);
        }
        rows[n][k as usize].clone()
    }

    /// Signed Stirling numbers of the first kind `s(n, k)`.
    pub fn stirling1(&self, n: u64, k: u64) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let n = n as usize;
        let mut rows = self.stirling1.borrow_mut();
        while rows.len() <= n {
            let next = match rows.last() {
                None => vec![BigInt::one()],
                Some(prev) => {
                    // s(m, t) = s(m-1, t-1) - (m-1) s(m-1, t)
                    let m = prev.len();
                    let mut row = vec![BigInt::zero(); m + 1];
                    for t in 1..=m {
                        let carry = if t < m {
                            &prev[t] * (m - 1)
                        } else {
                            BigInt::zero()
                        };
                        row[t] = &prev[t - 1] - carry;
                    }
                    row
                }
            };
            rows.push(next);
        }
        rows[n][k as usize].clone()
    }

    pub fn factorial(&self, n: u64) -> BigInt {
        let n = n as usize;
        let mut table = self.factorial.borrow_mut();
        if table.is_empty() {
            table.push(BigInt::one());
        }
        while table.len() <= n {
            let m = table.len();
            let next = &table[m - 1] * m;
            table.push(next);
        }
        table[n].clone()
    }

    /// Number of surjections `[i] -> [j]` by inclusion-exclusion.
    pub fn surjections(&self, i: u64, j: u64) -> BigInt {
        if j > i {
            return BigInt::zero();
        }
        let mut total = BigInt::zero();
        for s in 0..=j {
            let term = self.binomial(j, s) * BigInt::from(j - s).pow(i as u32);
            if s % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// Good-subset counts via the double alternating sum over deleted rows and columns.
    pub fn mu_incl_excl(&self, i: u64, j: u64, k: u64) -> BigInt {
        let mut total = BigInt::zero();
        for s in 0..=i {
            for t in 0..=j {
                let cells = (i - s) * (j - t);
                if cells < k {
                    continue;
                }
                let term = self.binomial(cells, k) * self.binomial(i, s) * self.binomial(j, t);
                if (s + t) % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
        }
        total
    }

    /// Good-subset counts through the surjection matrix and its inverse
    /// `M^{-1}_{km} = s(k, m) / k!`, summed over exact rationals.
    pub fn mu_stirling(&self, i: u64, j: u64, k: u64) -> Result<BigInt> {
        let mut total = BigRational::zero();
        let k_fact = self.factorial(k);
        for m in i.max(j)..=k {
            let col_i = self.factorial(i) * self.stirling2(m, i);
            let col_j = self.factorial(j) * self.stirling2(m, j);
            let inv = BigRational::new(self.stirling1(k, m), k_fact.clone());
            total += BigRational::from_integer(col_i * col_j) * inv;
        }
        if !total.is_integer() {
            return Err(Error::Internal(format!(
                "Stirling route produced the non-integer {total} for mu({i},{j},{k})"
            )));
        }
        Ok(total.to_integer())
    }
}

thread_local! {
    static CACHE: CountCache = CountCache::new();
}

fn with_cache<T>(f: impl FnOnce(&CountCache) -> T) -> T {
    CACHE.with(f)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    with_cache(|c| c.binomial(n, k))
}

pub fn stirling2(n: u64, k: u64) -> BigInt {
    with_cache(|c| c.stirling2(n, k))
}

pub fn stirling1(n: u64, k: u64) -> BigInt {
    with_cache(|c| c.stirling1(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    with_cache(|c| c.factorial(n))
}

/// `|surj(i, j)|`; zero when `j > i`.
pub fn surjections(i: u64, j: u64) -> BigInt {
    with_cache(|c| c.surjections(i, j))
}

fn check_positive(args: &[(&str, u64)]) -> Result<()> {
    for (name, v) in args {
        if *v == 0 {
            return Err(Error::pre(format!("{name} must be at least 1")));
        }
    }
    Ok(())
}

/// Counts of good subsets of `[i] x [j]` by cardinality, by visiting every
/// subset. Index `k` of the result holds the count for size `k`.
pub fn mu_brute_profile(i: u64, j: u64) -> Result<Vec<BigInt>> {
    check_positive(&[("i", i), ("j", j)])?;
    let cells = i * j;
    if cells > MU_BRUTE_CELLS {
        return Err(Error::budget(
            "mu_brute",
            format!("i*j = {cells} > {MU_BRUTE_CELLS}; use the summation formulas"),
        ));
    }
    let (i, j) = (i as usize, j as usize);
    // cell (r, c) is bit r*j + c
    let row_masks: Vec<u32> = (0..i).map(|r| ((1u32 << j) - 1) << (r * j)).collect();
    let col_masks: Vec<u32> = (0..j)
        .map(|c| (0..i).fold(0u32, |m, r| m | 1 << (r * j + c)))
        .collect();
    let mut counts = vec![0u64; cells as usize + 1];
    for u in 0u32..(1u32 << cells) {
        if row_masks.iter().all(|m| u & m != 0) && col_masks.iter().all(|m| u & m != 0) {
            counts[u.count_ones() as usize] += 1;
        }
    }
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Number of `k`-element subsets of `[i] x [j]` projecting onto both factors,
/// by exhaustive enumeration.
pub fn mu_brute(i: u64, j: u64, k: u64) -> Result<BigInt> {
    check_positive(&[("k", k)])?;
    let profile = mu_brute_profile(i, j)?;
    Ok(profile.get(k as usize).cloned().unwrap_or_default())
}

pub fn mu_incl_excl(i: u64, j: u64, k: u64) -> Result<BigInt> {
    check_positive(&[("i", i), ("j", j), ("k", k)])?;
    Ok(with_cache(|c| c.mu_incl_excl(i, j, k)))
}

pub fn mu_stirling(i: u64, j: u64, k: u64) -> Result<BigInt> {
    check_positive(&[("i", i), ("j", j), ("k", k)])?;
    with_cache(|c| c.mu_stirling(i, j, k))
}

/// Which formula to use for good-subset counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuMethod {
    Brute,
    InclExcl,
    Stirling,
}

impl MuMethod {
    pub const ALL: [MuMethod; 3] = [MuMethod::Brute, MuMethod::InclExcl, MuMethod::Stirling];

    pub fn eval(self, i: u64, j: u64, k: u64) -> Result<BigInt> {
        match self {
            MuMethod::Brute => mu_brute(i, j, k),
            MuMethod::InclExcl => mu_incl_excl(i, j, k),
            MuMethod::Stirling => mu_stirling(i, j, k),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MuMethod::Brute => "brute",
            MuMethod::InclExcl => "incl-excl",
            MuMethod::Stirling => "stirling",
        }
    }
}

/// Sum of the base-`p` digits of `k`.
pub fn digit_sum(k: u64, p: Prime) -> u64 {
    let p = p.get();
    let mut k = k;
    let mut s = 0;
    while k > 0 {
        s += k % p;
        k /= p;
    }
    s
}

/// Whether `k` is a sum of exactly `l` powers of `p` (with `p^0 = 1` allowed).
pub fn ppp_exists(p: Prime, k: u64, l: u64) -> bool {
    l >= 1 && p.divides_gap(k, l) && l >= digit_sum(k, p)
}

/// A multiset of positive integers, stored with parts in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::pre("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_p_power(&self, p: Prime) -> bool {
        self.parts.iter().all(|&x| {
            let mut x = x;
            while x % p.get() == 0 {
                x /= p.get();
            }
            x == 1
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Every way of writing `k` as a sum of `l` powers of `p`, by recursion over
/// non-increasing exponents. Serves as the oracle for [`ppp_exists`].
pub fn ppp_enumerate(p: Prime, k: u64, l: u64) -> Result<Vec<Partition>> {
    if k > PARTITION_BUDGET {
        return Err(Error::budget(
            "ppp_enumerate",
            format!("k = {k} > {PARTITION_BUDGET}"),
        ));
    }
    let mut powers = vec![1u64];
    while let Some(next) = powers.last().unwrap().checked_mul(p.get()) {
        if next > k {
            break;
        }
        powers.push(next);
    }
    powers.reverse();

    fn go(
        powers: &[u64],
        remaining: u64,
        slots: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Partition>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
            }
            return;
        }
        // each slot holds at least 1, at most the largest power left
        if remaining < slots || remaining > slots * powers[0] {
            return;
        }
        for (idx, &q) in powers.iter().enumerate() {
            if q <= remaining {
                current.push(q);
                go(&powers[idx..], remaining - q, slots - 1, current, out);
                current.pop();
            }
        }
    }

    let mut out = Vec::new();
    if l >= 1 {
        go(&powers, k, l, &mut Vec::new(), &mut out);
    }
    Ok(out)
}

/// The p-distance between layers `k >= l`, from the closed form in terms of
/// divisibility by `p - 1` and the base-`p` digit sum of `k`. Always one of
/// `0, 1, 2, ∞`.
pub fn delta_p(p: Prime, k: u64, l: u64) -> Result<NatInf> {
    if l == 0 || k < l {
        return Err(Error::pre(format!(
            "delta_p needs k >= l >= 1, got k={k}, l={l}"
        )));
    }
    Ok(delta_unchecked(p, k, l))
}

/// [`delta_p`] without the `k >= l` check; `∞` when `k < l`.
pub(crate) fn delta_unchecked(p: Prime, k: u64, l: u64) -> NatInf {
    if k == l {
        Finite(0)
    } else if !p.divides_gap(k, l) {
        Infinity
    } else if l >= digit_sum(k, p) {
        Finite(1)
    } else {
        Finite(2)
    }
}

/// Shortest chain `k = l_s > ... > l_0 = l` in which each step admits a
/// p-power partition, found by breadth-first search over `{l, ..., k}`.
///
/// Returns the chain from `k` down to `l` (just `[k]` when `k == l`), or
/// `None` when `l` is unreachable.
pub fn shortest_partition_chain(p: Prime, k: u64, l: u64) -> Result<Option<Vec<u64>>> {
    if l == 0 || k < l {
        return Err(Error::pre(format!(
            "chain search needs k >= l >= 1, got k={k}, l={l}"
        )));
    }
    if k > PARTITION_BUDGET {
        return Err(Error::budget(
            "delta_p_brute",
            format!("k = {k} > {PARTITION_BUDGET}"),
        ));
    }
    let span = (k - l + 1) as usize;
    let idx = |v: u64| (v - l) as usize;
    let mut parent: Vec<Option<u64>> = vec![None; span];
    let mut seen = vec![false; span];
    seen[idx(k)] = true;
    let mut queue = VecDeque::from([k]);
    while let Some(a) = queue.pop_front() {
        if a == l {
            break;
        }
        for b in l..a {
            if !seen[idx(b)] && !ppp_enumerate(p, a, b)?.is_empty() {
                seen[idx(b)] = true;
                parent[idx(b)] = Some(a);
                queue.push_back(b);
            }
        }
    }
    if !seen[idx(l)] {
        return Ok(None);
    }
    let mut chain = vec![l];
    let mut cur = l;
    while let Some(up) = parent[idx(cur)] {
        chain.push(up);
        cur = up;
    }
    chain.reverse();
    Ok(Some(chain))
}

/// The p-distance by explicit shortest-chain search; the oracle for [`delta_p`].
pub fn delta_p_brute(p: Prime, k: u64, l: u64) -> Result<NatInf> {
    Ok(match shortest_partition_chain(p, k, l)? {
        Some(chain) => Finite(chain.len() as u64 - 1),
        None => Infinity,
    })
}

/// Convenience for tests and reports.
pub fn to_u64(x: &BigInt) -> Option<u64> {
    if x.is_negative() {
        None
    } else {
        x.to_u64()
    }
}
