//! The `t = 0` Macdonald scalar product on `Λ_r`, computed from power sums.
//!
//! On the full ring `⟨p_μ, p_ν⟩ = δ_{μν} z_μ ∏_i (1 - q^{μ_i})`. Restricting to
//! `r` variables kills `m_ν` with more than `r` parts; the product `Λ_r`
//! inherits is the one on the orthogonal complement of that kernel. Its Gram
//! matrix on `{m_κ : κ ∈ Par(r)}` is `M^{-1}` with
//! `M_{κψ} = Σ_μ T_{μκ} T_{μψ} / ⟨p_μ, p_μ⟩`, where `T_{μκ} = [m_κ] p_μ`
//! and `μ` runs over all partitions of the degree. When the degree is at most
//! `r` this is the plain power-sum formula.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::gram::Specialization;
use crate::error::{Error, Result};
use crate::exactalg::{Coefficient, Poly, RationalFunction};
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfunc::{monomial_sym, SymmetricFunction};

/// The partitions `κ` of one degree and the Gram matrix of the `m_κ`.
pub type InducedGram = (Vec<Partition>, Vec<Vec<RationalFunction>>);

type Gram = Arc<InducedGram>;
type GramKey = (usize, u32, Specialization);

fn gram_cache() -> &'static Mutex<HashMap<GramKey, Gram>> {
    static CACHE: OnceLock<Mutex<HashMap<GramKey, Gram>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `p_μ` in `rank` variables for a partition `μ` of any length.
fn power_sum_in_rank(mu: &Partition, rank: usize) -> SymmetricFunction<RationalFunction> {
    mu.nonzero_parts().fold(SymmetricFunction::one(rank), |acc, j| {
        acc.multiply(&monomial_sym(&Partition::row(j, rank)))
            .expect("equal ranks")
    })
}

/// `⟨p_μ, p_μ⟩`.
fn power_sum_norm(mu: &Partition, spec: Specialization) -> RationalFunction {
    let z = RationalFunction::from_bigint(&mu.z_factor());
    match spec {
        Specialization::AtZero => z,
        Specialization::Generic => mu.nonzero_parts().fold(z, |acc, m| {
            acc.mul(&RationalFunction::from_poly(Poly::one_minus_q_pow(m as usize)))
        }),
    }
}

fn invert(mut a: Vec<Vec<RationalFunction>>) -> Result<Vec<Vec<RationalFunction>>> {
    let n = a.len();
    let mut inv: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::Singular("induced Gram matrix".into()))?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&p);
            inv[col][j] = inv[col][j].mul(&p);
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                a[i][j] = a[i][j].sub(&f.mul(&a[col][j]));
                inv[i][j] = inv[i][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Ok(inv)
}

/// Gram matrix of `{m_κ : κ ∈ Par(r), |κ| = d}` (decreasing lex order).
pub fn induced_gram(rank: usize, d: u32, spec: Specialization) -> Result<Gram> {
    let key = (rank, d, spec);
    if let Some(g) = gram_cache().lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let rows = enumerate_partitions(rank, d);
    let n = rows.len();
    let index: HashMap<&Partition, usize> = rows.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut m = vec![vec![RationalFunction::zero(); n]; n];
    for mu in enumerate_partitions(d.max(1) as usize, d) {
        let t = power_sum_in_rank(&mu, rank);
        let w = power_sum_norm(&mu, spec).inv()?;
        let entries: Vec<(usize, &RationalFunction)> = t.terms().iter().map(|(k, c)| (index[k], c)).collect();
        for &(i, a) in &entries {
            for &(j, b) in &entries {
                m[i][j] = m[i][j].add(&a.mul(b).mul(&w));
            }
        }
    }
    let g = Arc::new((rows, invert(m)?));
    gram_cache().lock().unwrap().insert(key, g.clone());
    Ok(g)
}

/// `⟨f, g⟩_{q,0}` on `Λ_r`.
pub fn scalar_qw(
    f: &SymmetricFunction<RationalFunction>,
    g: &SymmetricFunction<RationalFunction>,
) -> Result<RationalFunction> {
    scalar_qw_at(f, g, Specialization::Generic)
}

/// `⟨f, g⟩` for the chosen specialization of the scalar product.
pub fn scalar_qw_at(
    f: &SymmetricFunction<RationalFunction>,
    g: &SymmetricFunction<RationalFunction>,
    spec: Specialization,
) -> Result<RationalFunction> {
    if f.rank() != g.rank() {
        return Err(Error::RankMismatch(f.rank(), g.rank()));
    }
    let (ft, gt) = (f.polynomial_terms()?, g.polynomial_terms()?);
    let r = f.rank();
    let mut acc = RationalFunction::zero();
    let mut degrees: Vec<u32> = ft.keys().map(|k| k.size()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        if !gt.keys().any(|k| k.size() == d) {
            continue;
        }
        let gram = induced_gram(r, d, spec)?;
        let (rows, mat) = (&gram.0, &gram.1);
        for (i, ki) in rows.iter().enumerate() {
            let Some(a) = ft.get(ki) else { continue };
            for (j, kj) in rows.iter().enumerate() {
                if let Some(b) = gt.get(kj) {
                    acc = acc.add(&a.mul(&mat[i][j]).mul(b));
                }
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::newton_p;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn rf(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_i64s(c))
    }

    #[test]
    fn power_sum_examples() {
        let p1 = newton_p::<RationalFunction>(&p(&[1]));
        assert_eq!(scalar_qw(&p1, &p1).unwrap(), rf(&[1, -1]));
        let p2 = newton_p::<RationalFunction>(&p(&[2, 0]));
        let p11 = newton_p::<RationalFunction>(&p(&[1, 1]));
        assert_eq!(scalar_qw(&p2, &p11).unwrap(), RationalFunction::zero());
        assert_eq!(scalar_qw(&p11, &p11).unwrap(), rf(&[2, -4, 2]));
    }

    #[test]
    fn monomial_gram_in_degree_two() {
        let m20 = monomial_sym::<RationalFunction>(&p(&[2, 0]));
        let m11 = monomial_sym::<RationalFunction>(&p(&[1, 1]));
        assert_eq!(scalar_qw(&m20, &m11).unwrap(), rf(&[-1, 0, 1]));
        assert_eq!(scalar_qw(&m11, &m11).unwrap(), rf(&[1, -1]));
    }
}
