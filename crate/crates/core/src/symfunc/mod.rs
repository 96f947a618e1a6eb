//! Symmetric Laurent polynomials in `x_1, ..., x_r` over an exact coefficient
//! ring, stored in the monomial basis with an overall power of `|x| = x_1⋯x_r`.

mod bases;
mod inner;
mod kernels;
pub(crate) mod laurent;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Coefficient, JsonCoefficient};
use crate::partitions::Partition;

pub use bases::{
    alternant_coefficient, kostka_row, monomial_sym, newton_p, schur, schur_coefficient_by_alternation, schur_laurent,
    to_p_basis, to_schur_basis, to_schur_basis_by_alternation,
};
pub use inner::{ct_inner, principal_specialize, star};
pub use kernels::{cauchy_r, diagonal_product_kernel};
pub use render::{render_combination, CoeffDisplay};

/// `|x|^{-twist} Σ_ξ c_ξ m_ξ(x_1, ..., x_r)`.
///
/// Canonical form: `twist ≥ 0`, and when `twist > 0` some key has last part 0.
/// The zero function has twist 0.
#[derive(Clone, PartialEq, Debug)]
pub struct SymmetricFunction<C> {
    rank: usize,
    twist: i64,
    terms: BTreeMap<Partition, C>,
}

/// Index `(λ, ℓ)` of `s_{λ,ℓ} = |x|^ℓ s_λ` with `λ` padded to the rank and last part 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SchurIndex {
    pub lambda: Partition,
    pub ell: i64,
}

impl SchurIndex {
    pub fn new(lambda: Partition, ell: i64) -> Result<Self> {
        if lambda.last() != 0 {
            return Err(Error::NonzeroLastPart(lambda.parts().to_vec()));
        }
        Ok(SchurIndex { lambda, ell })
    }

    /// `ξ ∈ Par(r)` read as `s_ξ = |x|^{ξ_r} s_{ξ - ξ_r}`.
    pub fn from_partition(xi: &Partition) -> Self {
        let (lambda, k) = xi.strip_columns();
        SchurIndex { lambda, ell: k as i64 }
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// `x`-degree `|λ| + ℓ r`.
    pub fn degree(&self) -> i64 {
        self.lambda.size() as i64 + self.ell * self.rank() as i64
    }
}

impl fmt::Display for SchurIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.lambda.parts();
        let shown = &p[..p.len().saturating_sub(1).max(1)];
        let s: Vec<String> = shown.iter().map(|x| x.to_string()).collect();
        write!(f, "({}),{}", s.join(","), self.ell)
    }
}

impl<C: Coefficient> SymmetricFunction<C> {
    pub fn zero(rank: usize) -> Self {
        SymmetricFunction {
            rank,
            twist: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: C) -> Self {
        Self::from_terms(rank, 0, [(Partition::zero(rank), c)])
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, C::one())
    }

    /// `|x|^k` for any integer `k`.
    pub fn det_power(rank: usize, k: i64) -> Self {
        Self::one(rank).times_det_power(k)
    }

    /// Builds `|x|^{-twist} Σ c m_ξ`, summing repeated keys and dropping zeros.
    ///
    /// Panics if a key does not have length `rank`.
    pub fn from_terms<I: IntoIterator<Item = (Partition, C)>>(rank: usize, twist: i64, it: I) -> Self {
        let mut terms: BTreeMap<Partition, C> = BTreeMap::new();
        for (k, c) in it {
            assert_eq!(k.len(), rank, "monomial key {k} has wrong length for rank {rank}");
            match terms.get_mut(&k) {
                Some(v) => *v = v.add(&c),
                None => {
                    terms.insert(k, c);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let mut f = SymmetricFunction { rank, twist, terms };
        f.canonicalize();
        f
    }

    fn canonicalize(&mut self) {
        if self.terms.is_empty() {
            self.twist = 0;
            return;
        }
        if self.twist < 0 {
            let k = (-self.twist) as u32;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(p, c)| (p.shifted_up(k), c))
                .collect();
            self.twist = 0;
        }
        if self.twist > 0 {
            let min_last = self.terms.keys().map(|p| p.last()).min().unwrap_or(0);
            let k = (self.twist as u64).min(min_last as u64) as u32;
            if k > 0 {
                self.terms = std::mem::take(&mut self.terms)
                    .into_iter()
                    .map(|(p, c)| (p.shifted_down(k), c))
                    .collect();
                self.twist -= k as i64;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn terms(&self) -> &BTreeMap<Partition, C> {
        &self.terms
    }

    pub fn coeff(&self, xi: &Partition) -> C {
        self.terms.get(xi).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.twist == 0
    }

    /// Total `x`-degree of the monomial-basis key `ξ`.
    pub fn key_degree(&self, xi: &Partition) -> i64 {
        xi.size() as i64 - self.twist * self.rank as i64
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|k| self.key_degree(k)).collect()
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous(&self, d: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| self.key_degree(k) == d)
            .map(|(k, c)| (k.clone(), c.clone()));
        Self::from_terms(self.rank, self.twist, terms)
    }

    /// Drops all components of degree above `d`.
    pub fn truncate_degree(&self, d: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| self.key_degree(k) <= d)
            .map(|(k, c)| (k.clone(), c.clone()));
        Self::from_terms(self.rank, self.twist, terms)
    }

    pub fn times_det_power(&self, k: i64) -> Self {
        Self::from_terms(self.rank, self.twist - k, self.terms.clone())
    }

    /// Re-expresses the terms with the given twist (`≥` the canonical one).
    fn terms_at_twist(&self, twist: i64) -> impl Iterator<Item = (Partition, C)> + '_ {
        debug_assert!(twist >= self.twist);
        let k = (twist - self.twist) as u32;
        self.terms.iter().map(move |(p, c)| (p.shifted_up(k), c.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let t = self.twist.max(other.twist);
        let terms: Vec<_> = self.terms_at_twist(t).chain(other.terms_at_twist(t)).collect();
        Self::from_terms(self.rank, t, terms)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(
            self.rank,
            self.twist,
            self.terms.iter().map(|(k, v)| (k.clone(), v.mul(c))),
        )
    }

    pub fn map_coeffs<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> SymmetricFunction<D> {
        SymmetricFunction::from_terms(self.rank, self.twist, self.terms.iter().map(|(k, v)| (k.clone(), f(v))))
    }

    /// Product, by expanding both factors' orbits and keeping the dominant
    /// exponent vectors of the sums.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut acc: BTreeMap<Partition, C> = BTreeMap::new();
        let other_orbits: Vec<(Vec<Vec<u32>>, &C)> = other.terms.iter().map(|(k, c)| (k.orbit(), c)).collect();
        for (alpha, a) in &self.terms {
            let orbit_a = alpha.orbit();
            for (orbit_b, b) in &other_orbits {
                let ab = a.mul(b);
                let mut counts: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
                for g in &orbit_a {
                    for h in orbit_b.iter() {
                        let s: Vec<u32> = g.iter().zip(h).map(|(x, y)| x + y).collect();
                        if s.windows(2).all(|w| w[0] >= w[1]) {
                            *counts.entry(s).or_insert(0) += 1;
                        }
                    }
                }
                for (s, n) in counts {
                    let key = Partition::new(s).expect("dominant by construction");
                    let term = ab.scale(&BigInt::from(n));
                    match acc.get_mut(&key) {
                        Some(v) => *v = v.add(&term),
                        None => {
                            acc.insert(key, term);
                        }
                    }
                }
            }
        }
        Ok(Self::from_terms(self.rank, self.twist + other.twist, acc))
    }

    /// Monomial coefficients re-keyed at twist zero, or an error for Laurent input.
    pub fn polynomial_terms(&self) -> Result<&BTreeMap<Partition, C>> {
        if self.twist != 0 {
            return Err(Error::NotPolynomial(self.twist));
        }
        Ok(&self.terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct SymJson {
    rank: usize,
    twist: i64,
    terms: Vec<TermJson>,
}

impl<C: Coefficient + JsonCoefficient> Serialize for SymmetricFunction<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymJson {
            rank: self.rank,
            twist: self.twist,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(k, c)| TermJson {
                    partition: k.clone(),
                    coeff: c.to_json(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coefficient + JsonCoefficient> Deserialize<'de> for SymmetricFunction<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SymJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            if t.partition.len() != raw.rank {
                return Err(serde::de::Error::custom(format!(
                    "partition {} does not have length {}",
                    t.partition, raw.rank
                )));
            }
            terms.push((t.partition, C::from_json(&t.coeff).map_err(serde::de::Error::custom)?));
        }
        Ok(SymmetricFunction::from_terms(raw.rank, raw.twist, terms))
    }
}
