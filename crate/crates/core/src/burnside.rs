//! The Goodwillie-Burnside ring `A(d)`.
//!
//! `A(d)` is free abelian on `x_1, ..., x_d`, with `x_i x_j = Σ_l μ(i,j,l) x_l`
//! for `l ≤ d`. The ghost map `φ` sends `x_j` to the column
//! `(|surj(1,j)|, ..., |surj(d,j)|)` of the lower triangular matrix `M` and is
//! an injective ring map into `Z^d` with cokernel `⊕ Z/i!`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::{self, CountCache};
use crate::decimal;
use crate::error::{Error, Result};
use crate::snf;

/// Largest `d` for which [`BurnsidePresentation::new`] builds a table.
pub const MAX_RANK: usize = 16;

/// Seed used by [`ghost_is_hom_check`] unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_a11d;

/// Structure constants and ghost matrix of `A(d)`.
#[derive(Debug, Clone)]
pub struct BurnsidePresentation {
    d: usize,
    /// `mu[(i-1)*d*d + (j-1)*d + (l-1)]`, truncated at `l ≤ d`.
    mu: Vec<BigInt>,
    ghost: Vec<Vec<BigInt>>,
    ghost_inv: Vec<Vec<BigRational>>,
}

/// An element `Σ c_i x_i` of `A(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RingElement {
    #[serde(serialize_with = "decimal::many")]
    coeffs: Vec<BigInt>,
}

/// An element of the ghost ring `Z^d`, with componentwise operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GhostVector(#[serde(serialize_with = "decimal::many")] pub Vec<BigInt>);

impl RingElement {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        RingElement { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        RingElement {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(d: usize) -> Self {
        RingElement {
            coeffs: vec![BigInt::zero(); d],
        }
    }

    /// The basis element `x_i`, `1 ≤ i ≤ d`.
    pub fn basis(d: usize, i: usize) -> Self {
        assert!((1..=d).contains(&i), "basis index {i} outside 1..={d}");
        let mut e = Self::zero(d);
        e.coeffs[i - 1] = BigInt::one();
        e
    }

    /// The unit `x_1`.
    pub fn one(d: usize) -> Self {
        Self::basis(d, 1)
    }

    /// The integer `n` as `n x_1`.
    pub fn integer(d: usize, n: i64) -> Self {
        let mut e = Self::zero(d);
        e.coeffs[0] = BigInt::from(n);
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        same_dim(self.dim(), other.dim())?;
        Ok(RingElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        same_dim(self.dim(), other.dim())?;
        Ok(RingElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigInt) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

/// Formats as `2 x2 + 4 x3`, or `0`.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "x{}", idx + 1)?;
            } else {
                write!(f, "{mag} x{}", idx + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl GhostVector {
    pub fn hadamard(&self, other: &GhostVector) -> Result<GhostVector> {
        same_dim(self.0.len(), other.0.len())?;
        Ok(GhostVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect(),
        ))
    }
}

fn same_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

impl BurnsidePresentation {
    /// Builds the structure constants (inclusion-exclusion route), the ghost
    /// matrix and its exact inverse for `1 ≤ d ≤ 16`.
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::pre("d must be at least 1"));
        }
        if d > MAX_RANK {
            return Err(Error::budget("present", format!("d = {d} > {MAX_RANK}")));
        }
        let cache = CountCache::new();
        let mut mu = Vec::with_capacity(d * d * d);
        for i in 1..=d as u64 {
            for j in 1..=d as u64 {
                for l in 1..=d as u64 {
                    mu.push(cache.mu_incl_excl(i, j, l));
                }
            }
        }
        let ghost: Vec<Vec<BigInt>> = (1..=d as u64)
            .map(|i| (1..=d as u64).map(|j| cache.surjections(i, j)).collect())
            .collect();
        // M^{-1}_{ij} = s(i, j) / i!
        let ghost_inv = (1..=d as u64)
            .map(|i| {
                let denom = cache.factorial(i);
                (1..=d as u64)
                    .map(|j| BigRational::new(cache.stirling1(i, j), denom.clone()))
                    .collect()
            })
            .collect();
        Ok(BurnsidePresentation {
            d,
            mu,
            ghost,
            ghost_inv,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `μ(i, j, l)` for `1 ≤ i, j, l ≤ d`.
    pub fn mu(&self, i: usize, j: usize, l: usize) -> &BigInt {
        let d = self.d;
        &self.mu[(i - 1) * d * d + (j - 1) * d + (l - 1)]
    }

    /// The ghost matrix, `M[i-1][j-1] = |surj(i, j)|`.
    pub fn ghost_matrix(&self) -> &[Vec<BigInt>] {
        &self.ghost
    }

    pub fn ghost_inverse(&self) -> &[Vec<BigRational>] {
        &self.ghost_inv
    }

    /// `x_i x_j` in `A(d)`.
    pub fn basis_product(&self, i: usize, j: usize) -> RingElement {
        RingElement {
            coeffs: (1..=self.d).map(|l| self.mu(i, j, l).clone()).collect(),
        }
    }

    /// `x_i x_j` without truncation: coefficients of `x_l` for `1 ≤ l ≤ ij`,
    /// i.e. the sizes of good subsets before any vanishing above `d`.
    pub fn untruncated_product(&self, i: usize, j: usize) -> Vec<BigInt> {
        let cache = CountCache::new();
        (1..=(i * j) as u64)
            .map(|l| cache.mu_incl_excl(i as u64, j as u64, l))
            .collect()
    }

    fn check(&self, a: &RingElement) -> Result<()> {
        same_dim(self.d, a.dim())
    }

    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        let d = self.d;
        let mut out = vec![BigInt::zero(); d];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (l, slot) in out.iter_mut().enumerate() {
                    let c = self.mu(i + 1, j + 1, l + 1);
                    if !c.is_zero() {
                        *slot += &ab * c;
                    }
                }
            }
        }
        Ok(RingElement { coeffs: out })
    }

    /// `φ(a) = M · coeffs`; component `i` is `φ_i(a)`.
    pub fn ghost(&self, a: &RingElement) -> Result<GhostVector> {
        self.check(a)?;
        Ok(GhostVector(
            self.ghost
                .iter()
                .map(|row| row.iter().zip(&a.coeffs).map(|(m, c)| m * c).sum())
                .collect(),
        ))
    }

    /// `φ_i(a)` for a single layer `1 ≤ i ≤ d`.
    pub fn ghost_component(&self, a: &RingElement, i: usize) -> Result<BigInt> {
        self.check(a)?;
        Ok(self.ghost[i - 1]
            .iter()
            .zip(&a.coeffs)
            .map(|(m, c)| m * c)
            .sum())
    }

    /// Inverts the ghost map over `Q`. `None` when the vector is not in the image.
    pub fn unghost(&self, v: &GhostVector) -> Result<Option<RingElement>> {
        same_dim(self.d, v.0.len())?;
        let mut coeffs = Vec::with_capacity(self.d);
        for row in &self.ghost_inv {
            let x: BigRational = row
                .iter()
                .zip(&v.0)
                .map(|(m, c)| m * BigRational::from_integer(c.clone()))
                .sum();
            if !x.is_integer() {
                return Ok(None);
            }
            coeffs.push(x.to_integer());
        }
        Ok(Some(RingElement { coeffs }))
    }
}

/// Outcome of [`ghost_is_hom_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub d: usize,
    pub seed: u64,
    pub trials: usize,
    pub holds: bool,
    /// First pair `(a, b)` with `φ(ab) ≠ φ(a)φ(b)`, if any.
    pub counterexample: Option<(RingElement, RingElement)>,
}

/// Checks `φ(ab) = φ(a) ⊙ φ(b)` on every basis pair and on `trials` random
/// pairs with coefficients in `[-9, 9]`, drawn from a seeded ChaCha stream.
pub fn ghost_is_hom_check(d: usize, trials: usize, seed: u64) -> Result<HomCheck> {
    if d > 8 {
        return Err(Error::budget("ghost_is_hom_check", format!("d = {d} > 8")));
    }
    let pres = BurnsidePresentation::new(d)?;
    let mut pairs: Vec<(RingElement, RingElement)> = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            pairs.push((RingElement::basis(d, i), RingElement::basis(d, j)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| {
        RingElement::from_coeffs(
            (0..d)
                .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                .collect(),
        )
    };
    for _ in 0..trials {
        let a = random(&mut rng);
        let b = random(&mut rng);
        pairs.push((a, b));
    }
    let mut counterexample = None;
    for (a, b) in pairs {
        let lhs = pres.ghost(&pres.multiply(&a, &b)?)?;
        let rhs = pres.ghost(&a)?.hadamard(&pres.ghost(&b)?)?;
        if lhs != rhs {
            counterexample = Some((a, b));
            break;
        }
    }
    Ok(HomCheck {
        d,
        seed,
        trials,
        holds: counterexample.is_none(),
        counterexample,
    })
}

/// Cokernel of the ghost map, compared against `⊕_{i ≤ d} Z/i!`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CokernelReport {
    pub d: usize,
    /// Smith normal form diagonal of `M`.
    #[serde(serialize_with = "decimal::many")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(serialize_with = "decimal::one")]
    pub determinant: BigInt,
    /// `∏ i!`.
    #[serde(serialize_with = "decimal::one")]
    pub expected_determinant: BigInt,
    /// Whether the prime-power cyclic factors agree with those of `⊕ Z/i!`.
    pub matches_factorials: bool,
}

/// Invariant factors of the ghost matrix.
pub fn cokernel_invariants(d: usize) -> Result<Vec<BigInt>> {
    let pres = BurnsidePresentation::new(d)?;
    Ok(snf::smith_diagonal(pres.ghost_matrix()))
}

pub fn cokernel_report(d: usize) -> Result<CokernelReport> {
    let pres = BurnsidePresentation::new(d)?;
    let invariant_factors = snf::smith_diagonal(pres.ghost_matrix());
    let determinant = snf::determinant(pres.ghost_matrix());
    let factorials: Vec<BigInt> = (1..=d as u64).map(combinat::factorial).collect();
    let expected_determinant: BigInt = factorials.iter().product();
    let matches_factorials =
        snf::primary_decomposition(&invariant_factors) == snf::primary_decomposition(&factorials);
    Ok(CokernelReport {
        d,
        invariant_factors,
        determinant,
        expected_determinant,
        matches_factorials,
    })
}

/// First failing triple of an axiom sweep, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub d: usize,
    pub triples_checked: usize,
    pub associative: bool,
    pub commutative: bool,
    pub unital: bool,
    pub failure: Option<String>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.associative && self.commutative && self.unital
    }
}

/// Associativity over every basis triple, commutativity over every pair,
/// and `x_1` acting as the identity.
pub fn ring_axioms(d: usize) -> Result<AxiomReport> {
    let pres = BurnsidePresentation::new(d)?;
    let basis: Vec<RingElement> = (1..=d).map(|i| RingElement::basis(d, i)).collect();
    let mut report = AxiomReport {
        d,
        triples_checked: 0,
        associative: true,
        commutative: true,
        unital: true,
        failure: None,
    };
    let one = RingElement::one(d);
    for (i, xi) in basis.iter().enumerate() {
        if pres.multiply(&one, xi)? != *xi {
            report.unital = false;
            report
                .failure
                .get_or_insert(format!("x1*x{} != x{}", i + 1, i + 1));
        }
        for (j, xj) in basis.iter().enumerate() {
            let ij = pres.multiply(xi, xj)?;
            if ij != pres.multiply(xj, xi)? {
                report.commutative = false;
                report.failure.get_or_insert(format!(
                    "x{}*x{} != x{}*x{}",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                ));
            }
            for (k, xk) in basis.iter().enumerate() {
                report.triples_checked += 1;
                let left = pres.multiply(&ij, xk)?;
                let right = pres.multiply(xi, &pres.multiply(xj, xk)?)?;
                if left != right {
                    report.associative = false;
                    report.failure.get_or_insert(format!(
                        "(x{a}*x{b})*x{c} != x{a}*(x{b}*x{c})",
                        a = i + 1,
                        b = j + 1,
                        c = k + 1
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Whether reducing every basis monomial `x_a x_b x_c` through the defining
/// relations is independent of bracketing, for `d ≤ 6`.
pub fn quotient_presentation_check(d: usize) -> Result<bool> {
    if d > 6 {
        return Err(Error::budget(
            "quotient_presentation_check",
            format!("d = {d} > 6"),
        ));
    }
    let report = ring_axioms(d)?;
    Ok(report.associative && report.unital)
}
