//! Schur expansions `P_μ(x;q,0) = Σ η^μ_{λ,ℓ}(q) s_{λ,ℓ}` for `μ` with last part 0.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::gram::Specialization;
use super::table::{cached_series_table, cached_table};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, QSeries};
use crate::partitions::Partition;
use crate::symfunc::{render_combination, to_schur_basis, SchurIndex};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EtaTable {
    pub mu: Partition,
    #[serde(with = "as_rows")]
    pub coeffs: BTreeMap<SchurIndex, Poly>,
}

/// JSON objects need string keys, so the map is written as `[{index, coeff}]`.
mod as_rows {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row {
        index: SchurIndex,
        coeff: Poly,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<SchurIndex, Poly>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row> = m
            .iter()
            .map(|(k, v)| Row {
                index: k.clone(),
                coeff: v.clone(),
            })
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<SchurIndex, Poly>, D::Error> {
        Ok(Vec::<Row>::deserialize(d)?
            .into_iter()
            .map(|r| (r.index, r.coeff))
            .collect())
    }
}

impl EtaTable {
    /// True when every coefficient of every `η` is a nonnegative integer.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(Poly::is_nonnegative)
    }

    /// `Σ_ℓ η^μ_{λ,ℓ}` for the given `λ` (a single `ℓ` contributes, by degree).
    pub fn summed_over_ell(&self, lambda: &Partition) -> Poly {
        self.coeffs
            .iter()
            .filter(|(idx, _)| &idx.lambda == lambda)
            .fold(Poly::zero(), |acc, (_, c)| acc + c.clone())
    }
}

/// `s[(2),0] + q·s[(0),1]`, largest `λ` first.
impl fmt::Display for EtaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by_key(|(idx, _)| (Reverse(idx.lambda.clone()), idx.ell));
        f.write_str(&render_combination(
            terms.into_iter().map(|(idx, c)| (format!("s[{idx}]"), c)),
        ))
    }
}

fn check_mu(mu: &Partition, rank: usize) -> Result<()> {
    if mu.len() != rank {
        return Err(Error::LengthMismatch {
            expected: rank,
            got: mu.len(),
        });
    }
    if mu.last() != 0 {
        return Err(Error::NonzeroLastPart(mu.parts().to_vec()));
    }
    Ok(())
}

/// Exact `η^μ`; `mu` must have length `rank` and last part 0.
pub fn eta_coeffs(mu: &Partition, rank: usize) -> Result<EtaTable> {
    check_mu(mu, rank)?;
    let table = cached_table(rank, mu.size(), Specialization::Generic)?;
    let expansion = to_schur_basis(table.entry(mu)?)?;
    let coeffs = expansion
        .into_iter()
        .map(|(idx, c)| {
            let p = c
                .as_polynomial()
                .cloned()
                .ok_or_else(|| Error::NonPolynomialCoefficient(format!("η^{mu} at s_{{{idx}}} is {c}")))?;
            Ok((idx, p))
        })
        .collect::<Result<_>>()?;
    Ok(EtaTable { mu: mu.clone(), coeffs })
}

/// `η^μ` through `q^order`, from the truncated table.
pub fn eta_series(mu: &Partition, rank: usize, order: usize) -> Result<BTreeMap<SchurIndex, QSeries>> {
    check_mu(mu, rank)?;
    let table = cached_series_table(rank, mu.size(), order)?;
    to_schur_basis(table.entry(mu)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::to_schur_basis_by_alternation;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn idx(v: &[u32], ell: i64) -> SchurIndex {
        SchurIndex::new(p(v), ell).unwrap()
    }

    #[test]
    fn small_tables() {
        let e = eta_coeffs(&p(&[2, 0]), 2).unwrap();
        let want = BTreeMap::from([
            (idx(&[2, 0], 0), Poly::one()),
            (idx(&[0, 0], 1), Poly::from_i64s(&[0, 1])),
        ]);
        assert_eq!(e.coeffs, want);
        assert_eq!(e.to_string(), "s[(2),0] + q·s[(0),1]");
        assert_eq!(
            eta_coeffs(&p(&[1, 0]), 2).unwrap().coeffs,
            BTreeMap::from([(idx(&[1, 0], 0), Poly::one())])
        );
        assert_eq!(
            eta_coeffs(&p(&[0, 0]), 2).unwrap().coeffs,
            BTreeMap::from([(idx(&[0, 0], 0), Poly::one())])
        );
        assert!(matches!(eta_coeffs(&p(&[1, 1]), 2), Err(Error::NonzeroLastPart(_))));
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<EtaTable>(&json).unwrap(), e);
    }

    #[test]
    fn rank_three_is_nonnegative_and_matches_alternation() {
        let table = cached_table(3, 6, Specialization::Generic).unwrap();
        for (mu, entry) in table.entries() {
            if mu.last() != 0 {
                continue;
            }
            let e = eta_coeffs(mu, 3).unwrap();
            assert!(e.is_nonnegative(), "{mu}");
            let alt = to_schur_basis_by_alternation(entry);
            assert_eq!(alt.len(), e.coeffs.len());
            for (k, v) in alt {
                assert_eq!(v.as_polynomial(), Some(&e.coeffs[&k]));
            }
        }
    }

    #[test]
    fn series_version_truncates_exact_version() {
        let mu = p(&[3, 1, 0]);
        let exact = eta_coeffs(&mu, 3).unwrap();
        let series = eta_series(&mu, 3, 2).unwrap();
        for (k, v) in &exact.coeffs {
            let got = series.get(k).cloned().unwrap_or_else(|| QSeries::zero_to(2));
            assert_eq!(got, QSeries::from_poly(v, 2));
        }
    }
}
