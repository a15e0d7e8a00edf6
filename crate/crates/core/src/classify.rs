//! Thick tensor-ideals through their classifying functions.
//!
//! An ideal corresponds to a function `f : [d] × primes → ℕ∞` with
//! `f(k, p) ≤ δ_p(k, l) + f(l, p)` whenever `p - 1 | k - l ≥ 0`, and with
//! `f(k, p) = 0` for one prime only if it vanishes for all. The matching
//! Thomason subset is `Y_f = {P([k], p, m) : m > f(k, p)}`.
//!
//! # Truncations
//!
//! A [`SpectrumTruncation`] with cutoff `Hmax` and `∞` points sees a subset
//! `Y` only through its points of height `≤ Hmax` and `∞`. Finite values
//! `f(k, p) < Hmax` and the value `∞` are recovered exactly. A value
//! `≥ Hmax` leaves only the `∞` point in its column and cannot be told apart
//! from larger values, so such functions and subsets are reported as
//! [`Error::NotRepresentable`].

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::balmer::{b_leq, BalmerPrime, SpectrumTruncation};
use crate::combinat::delta_unchecked;
use crate::error::{Error, Result};
use crate::natinf::{Finite, Infinity, NatInf};
use crate::prime::Prime;

/// Default cap on the size of the value space searched by
/// [`enumerate_p_admissible`].
pub const ENUM_BUDGET: u64 = 10_000_000;

/// First pair `(k, l)` at which `f(k) ≤ δ_p(k, l) + f(l)` fails. Layers are
/// 1-based; `values[k - 1]` is `f(k)`.
///
/// Both [`is_p_admissible`] and [`AdmissibleFunction::is_admissible`] decide
/// the inequality through this function.
pub fn p_admissible_violation(values: &[NatInf], p: Prime) -> Option<(u64, u64)> {
    let d = values.len() as u64;
    (1..=d)
        .flat_map(|k| (1..=k).map(move |l| (k, l)))
        .filter(|&(k, l)| p.divides_gap(k, l))
        .find(|&(k, l)| {
            values[(k - 1) as usize] > delta_unchecked(p, k, l) + values[(l - 1) as usize]
        })
}

pub fn is_p_admissible(values: &[NatInf], p: Prime, d: usize) -> Result<bool> {
    if values.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: values.len(),
        });
    }
    Ok(p_admissible_violation(values, p).is_none())
}

fn format_values(values: &[NatInf]) -> String {
    let inner: Vec<String> = values.iter().map(NatInf::to_string).collect();
    format!("({})", inner.join(", "))
}

/// A validated `p`-admissible function on `[d]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PAdmissibleFunction {
    p: Prime,
    values: Vec<NatInf>,
}

impl PAdmissibleFunction {
    pub fn new(p: Prime, values: Vec<NatInf>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::pre("a function on [d] needs d ≥ 1"));
        }
        if let Some((k, l)) = p_admissible_violation(&values, p) {
            return Err(Error::NotAdmissible(format!(
                "{} fails f({k}) ≤ δ_{p}({k},{l}) + f({l})",
                format_values(&values)
            )));
        }
        Ok(PAdmissibleFunction { p, values })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn d(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[NatInf] {
        &self.values
    }

    /// `f(k)` for `1 ≤ k ≤ d`.
    pub fn get(&self, k: u32) -> NatInf {
        self.values[k as usize - 1]
    }
}

impl fmt::Display for PAdmissibleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_values(&self.values))
    }
}

/// A function `[d] × primes → ℕ∞`, not necessarily admissible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibleFunction {
    d: u32,
    primes: Vec<Prime>,
    /// `columns[i][k - 1] = f(k, primes[i])`.
    columns: Vec<Vec<NatInf>>,
}

impl AdmissibleFunction {
    /// Builds from one column of values per prime; `primes` must be strictly
    /// increasing.
    pub fn from_columns(d: u32, primes: Vec<Prime>, columns: Vec<Vec<NatInf>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::pre("d must be at least 1"));
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::pre("primes must be strictly increasing"));
        }
        if columns.len() != primes.len() {
            return Err(Error::DimensionMismatch {
                expected: primes.len(),
                got: columns.len(),
            });
        }
        if let Some(c) = columns.iter().find(|c| c.len() != d as usize) {
            return Err(Error::DimensionMismatch {
                expected: d as usize,
                got: c.len(),
            });
        }
        Ok(AdmissibleFunction { d, primes, columns })
    }

    pub fn constant(d: u32, primes: &[Prime], value: NatInf) -> Result<Self> {
        let mut primes = primes.to_vec();
        primes.sort();
        primes.dedup();
        let columns = vec![vec![value; d as usize]; primes.len()];
        Self::from_columns(d, primes, columns)
    }

    /// The single-prime function with the values of `f`.
    pub fn from_p_admissible(f: &PAdmissibleFunction) -> Self {
        AdmissibleFunction {
            d: f.d() as u32,
            primes: vec![f.p()],
            columns: vec![f.values().to_vec()],
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn column(&self, p: Prime) -> Option<&[NatInf]> {
        let i = self.primes.binary_search(&p).ok()?;
        Some(&self.columns[i])
    }

    pub fn get(&self, k: u32, p: Prime) -> Option<NatInf> {
        let column = self.column(p)?;
        column.get((k as usize).checked_sub(1)?).copied()
    }

    /// The first failed condition, described in words.
    pub fn admissibility_violation(&self) -> Option<String> {
        for (&p, column) in self.primes.iter().zip(&self.columns) {
            if let Some((k, l)) = p_admissible_violation(column, p) {
                return Some(format!("f({k},{p}) > δ_{p}({k},{l}) + f({l},{p})"));
            }
        }
        for k in 0..self.d as usize {
            let zeros = self.columns.iter().filter(|c| c[k] == Finite(0)).count();
            if zeros != 0 && zeros != self.columns.len() {
                return Some(format!(
                    "f({},·) vanishes at some but not all primes",
                    k + 1
                ));
            }
        }
        None
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility_violation().is_none()
    }

    /// The `p`-column as a [`PAdmissibleFunction`], if it is one.
    pub fn restrict(&self, p: Prime) -> Result<PAdmissibleFunction> {
        let column = self
            .column(p)
            .ok_or_else(|| Error::pre(format!("{p} is not in the prime set")))?;
        PAdmissibleFunction::new(p, column.to_vec())
    }

    /// `self ≤ other` at every point of the common domain.
    pub fn pointwise_le(&self, other: &AdmissibleFunction) -> bool {
        self.d == other.d
            && self.primes == other.primes
            && self
                .columns
                .iter()
                .zip(&other.columns)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x <= y))
    }
}

/// A subset of a truncation that is closed under specialization and whose
/// every member lies below a member of finite height.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ThomasonSubset {
    points: Vec<BalmerPrime>,
}

impl ThomasonSubset {
    /// Validates `points` against `truncation`.
    pub fn new(
        points: impl IntoIterator<Item = BalmerPrime>,
        truncation: &SpectrumTruncation,
    ) -> Result<Self> {
        let points: BTreeSet<BalmerPrime> = points.into_iter().collect();
        check_thomason(&points, truncation)?;
        Ok(ThomasonSubset {
            points: points.into_iter().collect(),
        })
    }

    pub fn empty() -> Self {
        ThomasonSubset { points: Vec::new() }
    }

    /// Members in canonical point order.
    pub fn points(&self) -> &[BalmerPrime] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &BalmerPrime) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &ThomasonSubset) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }
}

fn check_thomason(points: &BTreeSet<BalmerPrime>, truncation: &SpectrumTruncation) -> Result<()> {
    if let Some(stray) = points.iter().find(|p| !truncation.contains(p)) {
        return Err(Error::pre(format!(
            "{stray} is not a point of the truncation"
        )));
    }
    for member in points {
        if let Some(missing) = truncation
            .points()
            .iter()
            .find(|q| b_leq(q, member) && !points.contains(q))
        {
            return Err(Error::IllFormedThomason {
                reason: format!("not closed under specialization: lies in {member}"),
                witness: missing.to_string(),
            });
        }
    }
    for member in points.iter().filter(|p| !p.is_finite_height()) {
        let supported = points
            .iter()
            .any(|q| q.is_finite_height() && b_leq(member, q));
        if !supported {
            return Err(Error::IllFormedThomason {
                reason: "infinite-height point not below any finite-height member".into(),
                witness: member.to_string(),
            });
        }
    }
    Ok(())
}

fn check_domain(f: &AdmissibleFunction, truncation: &SpectrumTruncation) -> Result<()> {
    if f.d() != truncation.d() {
        return Err(Error::DimensionMismatch {
            expected: truncation.d() as usize,
            got: f.d() as usize,
        });
    }
    if f.primes() != truncation.primes() {
        return Err(Error::pre(
            "function and truncation use different prime sets",
        ));
    }
    if f.primes().is_empty() {
        return Err(Error::pre("classification needs at least one prime"));
    }
    if !truncation.include_infinity() {
        return Err(Error::pre(
            "classification needs a truncation with ∞ points",
        ));
    }
    Ok(())
}

/// `Y_f = {P([k], p, m) : m > f(k, p)}` inside `truncation`.
pub fn thomason_from_function(
    f: &AdmissibleFunction,
    truncation: &SpectrumTruncation,
) -> Result<ThomasonSubset> {
    check_domain(f, truncation)?;
    if let Some(why) = f.admissibility_violation() {
        return Err(Error::NotAdmissible(why));
    }
    let hmax = truncation.hmax();
    for (&p, column) in f.primes().iter().zip(&f.columns) {
        if let Some(k) = column
            .iter()
            .position(|&v| v >= Finite(hmax) && v.is_finite())
        {
            return Err(Error::NotRepresentable(format!(
                "f({},{p}) = {} is not below Hmax = {hmax}",
                k + 1,
                column[k]
            )));
        }
    }
    let points = truncation
        .points()
        .iter()
        .copied()
        .filter(|q| match q.char() {
            Some(p) => q.height() > f.get(q.layer(), p).unwrap_or(Infinity),
            None => f.get(q.layer(), f.primes()[0]) == Some(Finite(0)),
        });
    ThomasonSubset::new(points, truncation)
        .map_err(|e| Error::Internal(format!("Y_f failed validation: {e}")))
}

/// Reads off `f(k, p) = min{m - 1 : P([k], p, m) ∈ Y}`, `∞` for an empty column.
pub fn function_from_thomason(
    y: &ThomasonSubset,
    truncation: &SpectrumTruncation,
) -> Result<AdmissibleFunction> {
    let points: BTreeSet<BalmerPrime> = y.points().iter().copied().collect();
    check_thomason(&points, truncation)?;
    let d = truncation.d();
    let primes = truncation.primes().to_vec();
    if primes.is_empty() {
        return Err(Error::pre("classification needs at least one prime"));
    }
    let mut columns = Vec::with_capacity(primes.len());
    for &p in &primes {
        let mut column = Vec::with_capacity(d as usize);
        for k in 1..=d {
            let min_height = points
                .iter()
                .filter(|q| q.layer() == k && q.char().is_none_or(|c| c == p))
                .map(BalmerPrime::height)
                .min();
            let value = match min_height {
                None => Infinity,
                Some(Infinity) => {
                    return Err(Error::NotRepresentable(format!(
                        "column ({k},{p}) meets the subset only at height ∞"
                    )))
                }
                Some(m) => m.pred().expect("heights are positive"),
            };
            column.push(value);
        }
        columns.push(column);
    }
    let f = AdmissibleFunction::from_columns(d, primes, columns)?;
    if let Some(why) = f.admissibility_violation() {
        return Err(Error::Internal(format!(
            "specialization-closed subset gave a non-admissible function: {why}"
        )));
    }
    Ok(f)
}

/// The union of the closures of finite-height `seeds` in `truncation`.
pub fn thomason_union_closure(
    seeds: &[BalmerPrime],
    truncation: &SpectrumTruncation,
) -> Result<ThomasonSubset> {
    for s in seeds {
        if !s.is_finite_height() {
            return Err(Error::pre(format!(
                "seed {s} has infinite height; its closure is not Thomason"
            )));
        }
        if !truncation.contains(s) {
            return Err(Error::pre(format!(
                "seed {s} is not a point of the truncation"
            )));
        }
    }
    let points = truncation
        .points()
        .iter()
        .copied()
        .filter(|q| seeds.iter().any(|s| b_leq(q, s)));
    ThomasonSubset::new(points, truncation)
}

/// Size of the value space `{0, ..., hmax, ∞}^d`, if it fits in a `u64`.
pub fn p_admissible_search_space(d: u32, hmax: u64) -> Option<u64> {
    hmax.checked_add(2)?.checked_pow(d)
}

/// Every `p`-admissible function on `[d]` with values in `{0, ..., hmax, ∞}`,
/// in lexicographic order of value vectors.
pub fn enumerate_p_admissible(d: u32, p: Prime, hmax: u64) -> Result<Vec<PAdmissibleFunction>> {
    enumerate_p_admissible_with_budget(d, p, hmax, ENUM_BUDGET)
}

pub fn enumerate_p_admissible_with_budget(
    d: u32,
    p: Prime,
    hmax: u64,
    budget: u64,
) -> Result<Vec<PAdmissibleFunction>> {
    let mut out = Vec::new();
    walk_p_admissible(d, p, hmax, budget, &mut |values| {
        out.push(PAdmissibleFunction {
            p,
            values: values.to_vec(),
        })
    })?;
    Ok(out)
}

/// Number of functions [`enumerate_p_admissible`] would return.
pub fn count_p_admissible(d: u32, p: Prime, hmax: u64, budget: u64) -> Result<u64> {
    let mut count = 0u64;
    walk_p_admissible(d, p, hmax, budget, &mut |_| count += 1)?;
    Ok(count)
}

fn walk_p_admissible(
    d: u32,
    p: Prime,
    hmax: u64,
    budget: u64,
    visit: &mut dyn FnMut(&[NatInf]),
) -> Result<()> {
    if d == 0 {
        return Err(Error::pre("d must be at least 1"));
    }
    match p_admissible_search_space(d, hmax) {
        Some(size) if size <= budget => {}
        _ => {
            return Err(Error::budget(
                "enumerate_p_admissible",
                format!("({hmax}+2)^{d} exceeds {budget}"),
            ))
        }
    }
    let alphabet: Vec<NatInf> = (0..=hmax).map(Finite).chain([Infinity]).collect();
    let mut values = Vec::with_capacity(d as usize);
    extend(&alphabet, d as usize, p, &mut values, visit);
    Ok(())
}

fn extend(
    alphabet: &[NatInf],
    d: usize,
    p: Prime,
    values: &mut Vec<NatInf>,
    visit: &mut dyn FnMut(&[NatInf]),
) {
    if values.len() == d {
        visit(values);
        return;
    }
    let k = values.len() as u64 + 1;
    for &v in alphabet {
        // constraints f(k) ≤ δ_p(k, l) + f(l) with l < k
        let fits = (1..k)
            .filter(|&l| p.divides_gap(k, l))
            .all(|l| v <= delta_unchecked(p, k, l) + values[(l - 1) as usize]);
        if fits {
            values.push(v);
            extend(alphabet, d, p, values, visit);
            values.pop();
        }
    }
}
