use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::Poly;
use crate::macdonald::eta_coeffs;
use crate::partitions::{weight_to_partition, DominantWeight};

/// Graded multiplicities `[M[k] : V(μ)]`; only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedCharacter {
    rank: usize,
    mults: BTreeMap<(DominantWeight, u32), BigInt>,
}

/// One JSON row of a character.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CharacterRow {
    pub weight: Vec<u32>,
    pub grade: u32,
    pub mult: u64,
}

impl GradedCharacter {
    pub fn new(rank: usize) -> Self {
        GradedCharacter {
            rank,
            mults: BTreeMap::new(),
        }
    }

    /// Adds `mult` copies of `V(weight)` in grade `grade`; rejects negative totals.
    pub fn add(&mut self, weight: DominantWeight, grade: u32, mult: BigInt) -> Result<()> {
        if weight.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, weight.rank()));
        }
        let key = (weight, grade);
        let total = self.mults.get(&key).cloned().unwrap_or_default() + mult;
        if total.is_negative() {
            return Err(Error::NegativeMultiplicity(format!(
                "{} in grade {}: {total}",
                key.0, key.1
            )));
        }
        if total.is_zero() {
            self.mults.remove(&key);
        } else {
            self.mults.insert(key, total);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mults(&self) -> &BTreeMap<(DominantWeight, u32), BigInt> {
        &self.mults
    }

    pub fn mult(&self, weight: &DominantWeight, grade: u32) -> BigInt {
        self.mults.get(&(weight.clone(), grade)).cloned().unwrap_or_default()
    }

    /// Entries of one grade.
    pub fn grade_slice(&self, grade: u32) -> BTreeMap<DominantWeight, BigInt> {
        self.mults
            .iter()
            .filter(|((_, k), _)| *k == grade)
            .map(|((w, _), m)| (w.clone(), m.clone()))
            .collect()
    }

    /// `Σ mult · dim V(μ) · q^k`.
    pub fn hilbert_polynomial(&self) -> Poly {
        self.mults.iter().fold(Poly::zero(), |acc, ((w, k), m)| {
            acc + Poly::monomial(m * w.dimension(), *k as usize)
        })
    }

    /// Rows by grade, then by weight with the largest partition first.
    pub fn rows(&self) -> Vec<CharacterRow> {
        let mut keys: Vec<_> = self.mults.iter().collect();
        keys.sort_by_key(|((w, k), _)| (*k, Reverse(w.to_partition())));
        keys.into_iter()
            .map(|((w, k), m)| CharacterRow {
                weight: w.coords().to_vec(),
                grade: *k,
                mult: m.to_u64().expect("multiplicity fits in u64"),
            })
            .collect()
    }
}

/// One line per entry: `(w_1,...,w_{r-1},k): mult`.
impl fmt::Display for GradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .rows()
            .iter()
            .map(|row| {
                let mut c: Vec<String> = row.weight.iter().map(|x| x.to_string()).collect();
                c.push(row.grade.to_string());
                format!("({}): {}", c.join(","), row.mult)
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

impl Serialize for GradedCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl GradedCharacter {
    /// Rebuilds a character from its JSON rows.
    pub fn from_rows(rank: usize, rows: Vec<CharacterRow>) -> Result<Self> {
        let mut ch = GradedCharacter::new(rank);
        for row in rows {
            ch.add(DominantWeight::new(row.weight), row.grade, BigInt::from(row.mult))?;
        }
        Ok(ch)
    }
}

/// `[W_loc(λ,0)[k] : V(μ)] = [q^k] Σ_ℓ η^{ξ(λ)}_{ξ(μ),ℓ}(q)`.
pub fn local_weyl_character(lw: &DominantWeight, rank: usize) -> Result<GradedCharacter> {
    let mu = weight_to_partition(lw, rank)?;
    let eta = eta_coeffs(&mu, rank)?;
    let mut ch = GradedCharacter::new(rank);
    for (idx, poly) in &eta.coeffs {
        let weight = DominantWeight::from_partition(&idx.lambda)?;
        for (k, c) in poly.coeffs().iter().enumerate() {
            if c.is_negative() {
                return Err(Error::NegativeMultiplicity(format!("η^{mu} at s_{{{idx}}}: {poly}")));
            }
            if !c.is_zero() {
                ch.add(weight.clone(), k as u32, c.clone())?;
            }
        }
    }
    Ok(ch)
}
