use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gram::{orthogonalize_degree, scale_factor, DegreeBlock, Specialization};
use super::ipoly::Ring;
use crate::error::{Error, Result};
use crate::exactalg::{pochhammer_finite, Coefficient, Poly, QSeries, RationalFunction};
use crate::partitions::Partition;
use crate::symfunc::SymmetricFunction;

/// `q`-Whittaker polynomials `P_ξ(x_1, ..., x_r; q, 0)` for all `ξ ∈ Par(r)`
/// with `|ξ| ≤ max_size`, and their norms `⟨P_ξ, P_ξ⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QWhittakerTable {
    rank: usize,
    max_size: u32,
    specialization: Specialization,
    #[serde(with = "keyed")]
    entries: BTreeMap<Partition, SymmetricFunction<RationalFunction>>,
    #[serde(with = "keyed")]
    norms: BTreeMap<Partition, RationalFunction>,
}

/// The same polynomials with coefficients known modulo `q^{order+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QWhittakerSeriesTable {
    rank: usize,
    max_size: u32,
    order: usize,
    #[serde(with = "keyed")]
    entries: BTreeMap<Partition, SymmetricFunction<QSeries>>,
}

/// Maps keyed by partitions serialize as JSON objects keyed by `"[2,1,0]"`.
mod keyed {
    use super::*;
    use serde::de::DeserializeOwned;
    use serde::{Deserializer, Serializer};

    pub fn serialize<V: Serialize, S: Serializer>(
        m: &BTreeMap<Partition, V>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let out: BTreeMap<String, &V> = m.iter().map(|(k, v)| (k.to_string(), v)).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, V: DeserializeOwned, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<Partition, V>, D::Error> {
        let raw = BTreeMap::<String, V>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let p: Partition = serde_json::from_str(&k).map_err(serde::de::Error::custom)?;
                Ok((p, v))
            })
            .collect()
    }
}

/// `∏_{i=1}^r (q;q)_{ξ_i - ξ_{i+1}}` with `ξ_{r+1} = 0`.
pub fn norm_closed_form(xi: &Partition) -> Poly {
    let p = xi.parts();
    (0..p.len()).fold(Poly::one(), |acc, i| {
        let next = p.get(i + 1).copied().unwrap_or(0);
        acc * pochhammer_finite(1, (p[i] - next) as usize)
    })
}

fn block_entries<C: Coefficient>(
    rank: usize,
    block: &DegreeBlock,
    conv: impl Fn(&super::ipoly::IPoly) -> C,
) -> Vec<(Partition, SymmetricFunction<C>)> {
    block
        .rows
        .iter()
        .enumerate()
        .map(|(k, xi)| {
            let mut terms = vec![(xi.clone(), conv(&super::ipoly::IPoly::constant(1)))];
            for j in k + 1..block.rows.len() {
                if !block.coeffs[k][j].is_zero() {
                    terms.push((block.rows[j].clone(), conv(&block.coeffs[k][j])));
                }
            }
            (xi.clone(), SymmetricFunction::from_terms(rank, 0, terms))
        })
        .collect()
}

impl QWhittakerTable {
    pub fn build(rank: usize, max_size: u32, specialization: Specialization) -> Result<Self> {
        let empty = QWhittakerTable {
            rank,
            max_size: 0,
            specialization,
            entries: BTreeMap::new(),
            norms: BTreeMap::new(),
        };
        empty.with_degrees(0..=max_size)
    }

    /// A table reaching `max_size`, sharing all degrees already computed.
    pub fn extend_to(&self, max_size: u32) -> Result<Self> {
        if max_size <= self.max_size && !self.entries.is_empty() {
            return Ok(self.clone());
        }
        let start = if self.entries.is_empty() { 0 } else { self.max_size + 1 };
        self.with_degrees(start..=max_size)
    }

    fn with_degrees(&self, degrees: std::ops::RangeInclusive<u32>) -> Result<Self> {
        if self.rank == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        let ring = Ring { precision: None };
        let spec = self.specialization;
        let rank = self.rank;
        let blocks = degrees
            .clone()
            .into_par_iter()
            .map(|d| Ok((d, orthogonalize_degree(rank, d, ring, spec)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = self.clone();
        for (d, block) in blocks {
            let qq = scale_factor(d, ring, spec)?.to_poly();
            for (k, (xi, entry)) in block_entries(rank, &block, |c| RationalFunction::from_poly(c.to_poly()))
                .into_iter()
                .enumerate()
            {
                let norm = RationalFunction::new(qq.clone(), block.pivots[k].to_poly())?;
                out.norms.insert(xi.clone(), norm);
                out.entries.insert(xi, entry);
            }
        }
        out.max_size = out.max_size.max(*degrees.end());
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_size(&self) -> u32 {
        self.max_size
    }

    pub fn specialization(&self) -> Specialization {
        self.specialization
    }

    pub fn entries(&self) -> &BTreeMap<Partition, SymmetricFunction<RationalFunction>> {
        &self.entries
    }

    pub fn norms(&self) -> &BTreeMap<Partition, RationalFunction> {
        &self.norms
    }

    fn check(&self, xi: &Partition) -> Result<()> {
        if xi.len() != self.rank {
            return Err(Error::LengthMismatch {
                expected: self.rank,
                got: xi.len(),
            });
        }
        if xi.size() > self.max_size {
            return Err(Error::TableTooSmall {
                rank: self.rank,
                have: self.max_size,
                need: xi.size(),
            });
        }
        Ok(())
    }

    pub fn entry(&self, xi: &Partition) -> Result<&SymmetricFunction<RationalFunction>> {
        self.check(xi)?;
        Ok(&self.entries[xi])
    }

    pub fn norm(&self, xi: &Partition) -> Result<&RationalFunction> {
        self.check(xi)?;
        Ok(&self.norms[xi])
    }
}

impl QWhittakerSeriesTable {
    pub fn build(rank: usize, max_size: u32, order: usize) -> Result<Self> {
        let ring = Ring {
            precision: Some(order + 1),
        };
        let blocks = (0..=max_size)
            .into_par_iter()
            .map(|d| orthogonalize_degree(rank, d, ring, Specialization::Generic))
            .collect::<Result<Vec<_>>>()?;
        let mut entries = BTreeMap::new();
        for block in &blocks {
            let conv = |c: &super::ipoly::IPoly| QSeries::from_poly(&c.to_poly(), order);
            entries.extend(block_entries(rank, block, conv));
        }
        Ok(QWhittakerSeriesTable {
            rank,
            max_size,
            order,
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_size(&self) -> u32 {
        self.max_size
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &BTreeMap<Partition, SymmetricFunction<QSeries>> {
        &self.entries
    }

    pub fn entry(&self, xi: &Partition) -> Result<&SymmetricFunction<QSeries>> {
        if xi.len() != self.rank {
            return Err(Error::LengthMismatch {
                expected: self.rank,
                got: xi.len(),
            });
        }
        self.entries.get(xi).ok_or(Error::TableTooSmall {
            rank: self.rank,
            have: self.max_size,
            need: xi.size(),
        })
    }
}

type ExactKey = (usize, Specialization);
type SeriesKey = (usize, usize);

fn exact_cache() -> &'static Mutex<HashMap<ExactKey, Arc<QWhittakerTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<ExactKey, Arc<QWhittakerTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn series_cache() -> &'static Mutex<HashMap<SeriesKey, Arc<QWhittakerSeriesTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<SeriesKey, Arc<QWhittakerSeriesTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The process-wide exact table for `(rank, specialization)`, extended on demand.
pub fn cached_table(rank: usize, max_size: u32, specialization: Specialization) -> Result<Arc<QWhittakerTable>> {
    let key = (rank, specialization);
    let existing = exact_cache().lock().unwrap().get(&key).cloned();
    if let Some(t) = &existing {
        if t.max_size() >= max_size {
            return Ok(t.clone());
        }
    }
    let table = match existing {
        Some(t) => t.extend_to(max_size)?,
        None => QWhittakerTable::build(rank, max_size, specialization)?,
    };
    let table = Arc::new(table);
    let mut cache = exact_cache().lock().unwrap();
    let keep = cache.get(&key).is_none_or(|t| t.max_size() < table.max_size());
    if keep {
        cache.insert(key, table.clone());
    }
    Ok(table)
}

/// The process-wide truncated table for `(rank, order)`.
pub fn cached_series_table(rank: usize, max_size: u32, order: usize) -> Result<Arc<QWhittakerSeriesTable>> {
    let key = (rank, order);
    if let Some(t) = series_cache().lock().unwrap().get(&key) {
        if t.max_size() >= max_size {
            return Ok(t.clone());
        }
    }
    let table = Arc::new(QWhittakerSeriesTable::build(rank, max_size, order)?);
    let mut cache = series_cache().lock().unwrap();
    let keep = cache.get(&key).is_none_or(|t| t.max_size() < table.max_size());
    if keep {
        cache.insert(key, table.clone());
    }
    Ok(table)
}

/// Makes a previously built exact table the process-wide one for its key,
/// unless a larger one is already present.
pub fn install_table(table: QWhittakerTable) -> Arc<QWhittakerTable> {
    let key = (table.rank(), table.specialization());
    let mut cache = exact_cache().lock().unwrap();
    match cache.get(&key) {
        Some(t) if t.max_size() >= table.max_size() => t.clone(),
        _ => {
            let table = Arc::new(table);
            cache.insert(key, table.clone());
            table
        }
    }
}

/// As [`install_table`], for truncated tables.
pub fn install_series_table(table: QWhittakerSeriesTable) -> Arc<QWhittakerSeriesTable> {
    let key = (table.rank(), table.order());
    let mut cache = series_cache().lock().unwrap();
    match cache.get(&key) {
        Some(t) if t.max_size() >= table.max_size() => t.clone(),
        _ => {
            let table = Arc::new(table);
            cache.insert(key, table.clone());
            table
        }
    }
}

/// Builds the exact `q`-Whittaker table for `Par(r)` through `max_size`.
pub fn qwhittaker(rank: usize, max_size: u32) -> Result<QWhittakerTable> {
    QWhittakerTable::build(rank, max_size, Specialization::Generic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn rf(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_i64s(c))
    }

    #[test]
    fn small_entries() {
        let t = qwhittaker(2, 2).unwrap();
        let one = RationalFunction::one();
        assert_eq!(
            t.entry(&p(&[1, 0])).unwrap(),
            &SymmetricFunction::from_terms(2, 0, [(p(&[1, 0]), one.clone())])
        );
        assert_eq!(
            t.entry(&p(&[1, 1])).unwrap(),
            &SymmetricFunction::from_terms(2, 0, [(p(&[1, 1]), one.clone())])
        );
        let want = SymmetricFunction::from_terms(2, 0, [(p(&[2, 0]), one), (p(&[1, 1]), rf(&[1, 1]))]);
        assert_eq!(t.entry(&p(&[2, 0])).unwrap(), &want);
        assert!(matches!(t.entry(&p(&[3, 0])), Err(Error::TableTooSmall { .. })));
    }

    #[test]
    fn norms_match_closed_form() {
        let t = qwhittaker(3, 4).unwrap();
        for (xi, n) in t.norms() {
            assert_eq!(n, &RationalFunction::from_poly(norm_closed_form(xi)), "{xi}");
        }
        assert_eq!(norm_closed_form(&p(&[2, 0])), Poly::from_i64s(&[1, -1, -1, 1]));
        assert_eq!(norm_closed_form(&p(&[1, 1])), Poly::from_i64s(&[1, -1]));
        assert_eq!(norm_closed_form(&p(&[0, 0])), Poly::one());
    }

    #[test]
    fn extension_agrees_with_direct_build() {
        let small = qwhittaker(2, 3).unwrap();
        let grown = small.extend_to(5).unwrap();
        assert_eq!(grown, qwhittaker(2, 5).unwrap());
    }

    #[test]
    fn series_table_is_truncation_of_exact() {
        let exact = qwhittaker(3, 6).unwrap();
        let series = QWhittakerSeriesTable::build(3, 6, 2).unwrap();
        for (xi, e) in exact.entries() {
            let want = e.map_coeffs(|c| QSeries::from_poly(c.as_polynomial().unwrap(), 2));
            assert_eq!(series.entry(xi).unwrap(), &want);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = qwhittaker(2, 2).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains(r#""[2,0]""#));
        let back: QWhittakerTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
