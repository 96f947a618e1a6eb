//! Partitions of fixed length, dominance order, and the dictionary between
//! dominant weights of `sl_r` and partitions with at most `r - 1` parts.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing tuple of nonnegative integers, padded with zeros to a
/// fixed length.
///
/// The derived `Ord` is lexicographic, which on partitions of equal size is a
/// total order refining dominance.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary exponents into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn zero(len: usize) -> Self {
        Partition(vec![0; len])
    }

    /// The one-row partition `(n, 0, ..., 0)`.
    pub fn row(n: u32, len: usize) -> Self {
        let mut parts = vec![0; len];
        if len > 0 {
            parts[0] = n;
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn num_parts(&self) -> usize {
        self.0.iter().take_while(|&&p| p > 0).count()
    }

    pub fn last(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Nonzero parts only.
    pub fn nonzero_parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied().filter(|&p| p > 0)
    }

    /// Pads with zeros (or drops trailing zeros) to length `len`.
    pub fn padded(&self, len: usize) -> Result<Self> {
        if self.num_parts() > len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: self.num_parts(),
            });
        }
        let mut parts = self.0.clone();
        parts.resize(len, 0);
        Ok(Partition(parts))
    }

    /// Adds `k` to every part; multiplication of a Schur or monomial function by `|x|^k`.
    pub fn shifted_up(&self, k: u32) -> Self {
        Partition(self.0.iter().map(|p| p + k).collect())
    }

    /// Subtracts `k` from every part. `k` must not exceed the last part.
    pub fn shifted_down(&self, k: u32) -> Self {
        debug_assert!(k <= self.last());
        Partition(self.0.iter().map(|p| p - k).collect())
    }

    /// Splits `ξ` into `(ξ - ξ_r, ξ_r)`.
    pub fn strip_columns(&self) -> (Self, u32) {
        let k = self.last();
        (self.shifted_down(k), k)
    }

    /// `(n_1, n_2, ...)` where `n_i` counts parts equal to `i`; index 0 unused.
    pub fn multiplicities(&self) -> Vec<u32> {
        let max = self.0.first().copied().unwrap_or(0) as usize;
        let mut n = vec![0u32; max + 1];
        for p in self.nonzero_parts() {
            n[p as usize] += 1;
        }
        n
    }

    /// `∏ i^{n_i} n_i!` over nonzero part values.
    pub fn z_factor(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, &n) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=n {
                z *= BigInt::from(i) * BigInt::from(k);
            }
        }
        z
    }

    /// Number of distinct rearrangements of the padded tuple.
    pub fn orbit_size(&self) -> BigInt {
        let mut total = factorial(self.len() as u32);
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            total /= factorial((j - i) as u32);
            i = j;
        }
        total
    }

    /// Partial-sum dominance. `None` means incomparable.
    pub fn dominance_cmp(&self, other: &Partition) -> Result<Option<Ordering>> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let (mut sa, mut sb) = (0u64, 0u64);
        let (mut le, mut ge) = (true, true);
        for (a, b) in self.0.iter().zip(&other.0) {
            sa += *a as u64;
            sb += *b as u64;
            le &= sa <= sb;
            ge &= sa >= sb;
        }
        Ok(match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        })
    }

    /// `self ≤ other` in dominance.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        Ok(matches!(
            self.dominance_cmp(other)?,
            Some(Ordering::Less) | Some(Ordering::Equal)
        ))
    }

    /// Distinct permutations of the parts, as exponent vectors.
    pub fn orbit(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<u32> = self.0.clone();
        v.sort_unstable();
        let mut out = vec![v.clone()];
        while next_permutation(&mut v) {
            out.push(v.clone());
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Lexicographic successor in place; false once the last permutation is reached.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All partitions of `total` with at most `max_parts` parts, padded to
/// `max_parts`, in decreasing lexicographic order.
pub fn enumerate_partitions(max_parts: usize, total: u32) -> Vec<Partition> {
    assert!(max_parts >= 1, "max_parts must be positive");
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(max_parts);
    fill(max_parts, total, total, &mut cur, &mut out);
    out
}

fn fill(slots: usize, remaining: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if slots == 0 {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
        }
        return;
    }
    // the remaining slots can hold at most slots * cap
    if (remaining as u64) > (slots as u64) * (cap as u64) {
        return;
    }
    let hi = remaining.min(cap);
    let lo = remaining.div_ceil(slots as u32);
    for p in (lo..=hi).rev() {
        cur.push(p);
        fill(slots - 1, remaining - p, p, cur, out);
        cur.pop();
    }
}

/// All partitions with at most `max_parts` parts and size at most `max_size`,
/// by size then decreasing lex.
pub fn partitions_up_to(max_parts: usize, max_size: u32) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(|d| enumerate_partitions(max_parts, d))
        .collect()
}

/// A dominant weight `Σ λ_i ω_i` of `sl_r`, stored as its `r - 1` coordinates
/// on the fundamental weights.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct DominantWeight {
    #[serde(rename = "fundamental")]
    coords: Vec<u32>,
}

impl DominantWeight {
    pub fn new(coords: Vec<u32>) -> Self {
        DominantWeight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        DominantWeight {
            coords: vec![0; rank - 1],
        }
    }

    /// `ω_i` (1-based) for `sl_rank`.
    pub fn fundamental(i: usize, rank: usize) -> Self {
        let mut coords = vec![0; rank - 1];
        coords[i - 1] = 1;
        DominantWeight { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// `r` for `sl_r`.
    pub fn rank(&self) -> usize {
        self.coords.len() + 1
    }

    /// `ξ_j = Σ_{i ≥ j} λ_i`, padded to length `r` (last part zero).
    pub fn to_partition(&self) -> Partition {
        let mut parts = vec![0u32; self.coords.len() + 1];
        let mut acc = 0;
        for j in (0..self.coords.len()).rev() {
            acc += self.coords[j];
            parts[j] = acc;
        }
        Partition(parts)
    }

    /// Inverse of [`DominantWeight::to_partition`]; the partition carries `r` parts.
    pub fn from_partition(xi: &Partition) -> Result<Self> {
        if xi.last() != 0 {
            return Err(Error::NonzeroLastPart(xi.parts().to_vec()));
        }
        let coords = xi.parts().windows(2).map(|w| w[0] - w[1]).collect();
        Ok(DominantWeight { coords })
    }

    /// Weyl dimension formula `∏_{i<j} (ξ_i - ξ_j + j - i)/(j - i)`.
    pub fn dimension(&self) -> BigInt {
        weyl_dimension(&self.to_partition())
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", c.join(","))
    }
}

/// `weight_to_partition` for `sl_r`.
pub fn weight_to_partition(w: &DominantWeight, r: usize) -> Result<Partition> {
    if w.coords().len() + 1 != r {
        return Err(Error::LengthMismatch {
            expected: r - 1,
            got: w.coords().len(),
        });
    }
    Ok(w.to_partition())
}

pub fn partition_to_weight(xi: &Partition) -> Result<DominantWeight> {
    DominantWeight::from_partition(xi)
}

/// `s_ξ(1, ..., 1)` in `ξ.len()` variables by the product formula.
pub fn weyl_dimension(xi: &Partition) -> BigInt {
    let p = xi.parts();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            num *= BigInt::from(p[i] as i64 - p[j] as i64 + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    num / den
}

/// Number of partitions of `n` into at most `k` parts, by the recurrence
/// `p(n, k) = p(n, k - 1) + p(n - k, k)`.
pub fn count_partitions(n: u32, k: usize) -> u64 {
    let n = n as usize;
    let mut table = vec![vec![0u64; k + 1]; n + 1];
    for row in table.iter_mut().take(1) {
        row.iter_mut().for_each(|c| *c = 1);
    }
    for m in 1..=n {
        for j in 1..=k {
            table[m][j] = table[m][j - 1] + if m >= j { table[m - j][j] } else { 0 };
        }
    }
    table[n][k]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(2, 2), vec![p(&[2, 0]), p(&[1, 1])]);
        assert_eq!(enumerate_partitions(3, 0), vec![p(&[0, 0, 0])]);
        assert_eq!(enumerate_partitions(2, 3), vec![p(&[3, 0]), p(&[2, 1])]);
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(p(&[1, 1]).dominance_cmp(&p(&[2, 0])).unwrap(), Some(Ordering::Less));
        assert!(!p(&[2, 0]).dominated_by(&p(&[1, 1])).unwrap());
        assert_eq!(p(&[4, 1, 1]).dominance_cmp(&p(&[3, 3, 0])).unwrap(), None);
        assert!(p(&[2, 0]).dominance_cmp(&p(&[2, 1])).is_err());
    }

    #[test]
    fn z_factor_examples() {
        assert_eq!(p(&[2, 1]).z_factor(), BigInt::from(2));
        assert_eq!(p(&[1, 1]).z_factor(), BigInt::from(2));
        assert_eq!(p(&[2, 2]).z_factor(), BigInt::from(8));
        assert_eq!(p(&[0, 0]).z_factor(), BigInt::from(1));
    }

    #[test]
    fn weight_dictionary() {
        let w = DominantWeight::new(vec![1, 1]);
        assert_eq!(weight_to_partition(&w, 3).unwrap(), p(&[2, 1, 0]));
        assert_eq!(DominantWeight::zero(3).to_partition(), p(&[0, 0, 0]));
        assert_eq!(DominantWeight::new(vec![3]).to_partition(), p(&[3, 0]));
        assert!(partition_to_weight(&p(&[2, 1])).is_err());
        assert!(weight_to_partition(&w, 2).is_err());
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(p(&[1, 1]).orbit_size(), BigInt::from(1));
        assert_eq!(p(&[2, 1, 0]).orbit_size(), BigInt::from(6));
        assert_eq!(p(&[2, 0, 0]).orbit().len(), 3);
    }

    #[test]
    fn serde_roundtrip() {
        let x = p(&[2, 1, 0]);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[2,1,0]");
        let w = DominantWeight::new(vec![1, 1]);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"fundamental":[1,1]}"#);
        let back: Partition = serde_json::from_str("[2,1,0]").unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn weyl_dimension_values() {
        assert_eq!(weyl_dimension(&p(&[2, 1, 0])), BigInt::from(8));
        assert_eq!(weyl_dimension(&p(&[1, 0])), BigInt::from(2));
    }
}
