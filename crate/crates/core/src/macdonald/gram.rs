//! Gram–Schmidt for the `t = 0` scalar product on `Λ_r`, one degree at a time.
//!
//! The induced `m`-Gram matrix on `Λ_r` is the inverse of
//! `A_{κψ} = [x^ψ] ∏_j g_{κ_j}` with `g_n = Σ_{|a|=n} x^a / ∏_i (q;q)_{a_i}`.
//! Orthogonalising `m_ξ` in increasing lex order is the same as the `LDLᵀ`
//! factorisation of `A` pivoted in decreasing lex order. With
//! `B = (q;q)_d A = [d; κ]_q · [x^ψ] ∏_j G_{κ_j}`, where
//! `G_n = Σ_{|a|=n} [n; a]_q x^a`, every quantity stays in `Z[q]`:
//! `P_κ = m_κ + Σ_{ψ <lex κ} (B'_{κψ}/π_κ) m_ψ` and `⟨P_κ, P_κ⟩ = (q;q)_d / π_κ`,
//! where `B'` is the partially eliminated matrix and `π_κ = B'_{κκ}`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ipoly::{IPoly, Ring};
use crate::error::{Error, Result};
use crate::exactalg::{pochhammer_finite, q_multinomial};
use crate::partitions::{enumerate_partitions, Partition};

/// Which scalar product the construction orthogonalises against.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Specialization {
    /// The `t = 0` Macdonald product with `q` an indeterminate.
    Generic,
    /// The same product at `q = 0`, i.e. the Hall product.
    AtZero,
}

/// Result of orthogonalising one homogeneous degree.
pub(crate) struct DegreeBlock {
    /// `Par(r)` of this size in decreasing lex order.
    pub rows: Vec<Partition>,
    /// `π_κ`, so that `⟨P_κ, P_κ⟩ = (q;q)_d / π_κ`.
    pub pivots: Vec<IPoly>,
    /// `coeffs[k][j]` is the coefficient of `m_{rows[j]}` in `P_{rows[k]}`, `j > k`.
    pub coeffs: Vec<Vec<IPoly>>,
}

/// Compositions of `n` into `parts` nonnegative entries.
fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=n).rev() {
            cur.push(a);
            go(n - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

struct Multinomials {
    ring: Ring,
    spec: Specialization,
    cache: HashMap<Vec<u32>, IPoly>,
}

impl Multinomials {
    /// `[Σa; a]_q`, or 1 at `q = 0`.
    fn get(&mut self, a: &[u32]) -> Result<IPoly> {
        if self.spec == Specialization::AtZero {
            return Ok(IPoly::constant(1));
        }
        let mut key: Vec<u32> = a.iter().copied().filter(|&x| x > 0).collect();
        key.sort_unstable();
        if let Some(p) = self.cache.get(&key) {
            return Ok(p.clone());
        }
        let parts: Vec<usize> = key.iter().map(|&x| x as usize).collect();
        let p = self.ring.lift(&q_multinomial(&parts))?;
        self.cache.insert(key, p.clone());
        Ok(p)
    }
}

/// Row `κ` of `B`, evaluated at every `ψ` in `rows`.
fn b_row(kappa: &Partition, rows: &[Partition], ring: Ring, spec: Specialization) -> Result<Vec<IPoly>> {
    let r = kappa.len();
    let mut mult = Multinomials {
        ring,
        spec,
        cache: HashMap::new(),
    };
    let parts: Vec<u32> = kappa.nonzero_parts().collect();
    let Some((&last, init)) = parts.split_last() else {
        // degree 0: B = (q;q)_0 · 1
        return Ok(vec![IPoly::constant(1)]);
    };
    let mut cur: HashMap<Vec<u32>, IPoly> = HashMap::from([(vec![0; r], IPoly::constant(1))]);
    for &n in init {
        let mut next: HashMap<Vec<u32>, IPoly> = HashMap::new();
        let comps = compositions(n, r);
        let weights = comps.iter().map(|a| mult.get(a)).collect::<Result<Vec<_>>>()?;
        for (e, c) in &cur {
            for (a, w) in comps.iter().zip(&weights) {
                let key: Vec<u32> = e.iter().zip(a).map(|(x, y)| x + y).collect();
                let t = ring.mul(c, w)?;
                ring.add_assign(next.entry(key).or_default(), &t)?;
            }
        }
        cur = next;
    }
    let comps = compositions(last, r);
    let weights = comps.iter().map(|a| mult.get(a)).collect::<Result<Vec<_>>>()?;
    let scale = mult.get(kappa.parts())?;
    let mut row = Vec::with_capacity(rows.len());
    for psi in rows {
        let mut acc = IPoly::zero();
        for (a, w) in comps.iter().zip(&weights) {
            if a.iter().zip(psi.parts()).any(|(x, y)| x > y) {
                continue;
            }
            let key: Vec<u32> = psi.parts().iter().zip(a).map(|(y, x)| y - x).collect();
            if let Some(c) = cur.get(&key) {
                let t = ring.mul(c, w)?;
                ring.add_assign(&mut acc, &t)?;
            }
        }
        row.push(ring.mul(&acc, &scale)?);
    }
    Ok(row)
}

/// The scaled dual Gram matrix `B` for degree `d`, rows in decreasing lex order.
pub(crate) fn dual_gram_matrix(
    rank: usize,
    d: u32,
    ring: Ring,
    spec: Specialization,
) -> Result<(Vec<Partition>, Vec<Vec<IPoly>>)> {
    let rows = enumerate_partitions(rank, d);
    let b = rows
        .par_iter()
        .map(|kappa| b_row(kappa, &rows, ring, spec))
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, b))
}

/// `(q;q)_d`, or 1 at `q = 0`.
pub(crate) fn scale_factor(d: u32, ring: Ring, spec: Specialization) -> Result<IPoly> {
    match spec {
        Specialization::AtZero => Ok(IPoly::constant(1)),
        Specialization::Generic => ring.lift(&pochhammer_finite(1, d as usize)),
    }
}

pub(crate) fn orthogonalize_degree(rank: usize, d: u32, ring: Ring, spec: Specialization) -> Result<DegreeBlock> {
    let (rows, mut b) = dual_gram_matrix(rank, d, ring, spec)?;
    let n = rows.len();
    let mut pivots = Vec::with_capacity(n);
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = b[k][k].clone();
        if pivot.is_zero() {
            return Err(Error::ZeroNorm(rows[k].parts().to_vec()));
        }
        let mut lrow = vec![IPoly::zero(); n];
        for j in k + 1..n {
            lrow[j] = ring.div_exact(&b[k][j], &pivot)?.ok_or_else(|| {
                Error::NonPolynomialCoefficient(format!(
                    "coefficient of m{} in P{} is not a polynomial",
                    rows[j], rows[k]
                ))
            })?;
        }
        let (head, tail) = b.split_at_mut(k + 1);
        let pivot_row = &head[k];
        tail.par_iter_mut()
            .enumerate()
            .try_for_each(|(off, row)| -> Result<()> {
                let i = k + 1 + off;
                let l = &lrow[i];
                if l.is_zero() {
                    return Ok(());
                }
                for j in i..n {
                    ring.sub_mul_assign(&mut row[j], l, &pivot_row[j])?;
                }
                Ok(())
            })?;
        pivots.push(pivot);
        coeffs.push(lrow);
    }
    Ok(DegreeBlock { rows, pivots, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn ip(v: &[i128]) -> IPoly {
        IPoly::new(v.to_vec())
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(4, 3).len(), 15);
    }

    #[test]
    fn rank_two_degree_two() {
        let ring = Ring { precision: None };
        let block = orthogonalize_degree(2, 2, ring, Specialization::Generic).unwrap();
        assert_eq!(block.rows, vec![p(&[2, 0]), p(&[1, 1])]);
        // P_(2,0) = m_(2,0) + (1+q) m_(1,1)
        assert_eq!(block.coeffs[0][1], ip(&[1, 1]));
        // π = 1 for (2,0): norm (q;q)_2
        assert_eq!(block.pivots[0], ip(&[1]));
    }

    #[test]
    fn rank_two_degree_three() {
        let ring = Ring { precision: None };
        let block = orthogonalize_degree(2, 3, ring, Specialization::Generic).unwrap();
        assert_eq!(block.rows, vec![p(&[3, 0]), p(&[2, 1])]);
        assert_eq!(block.coeffs[0][1], ip(&[1, 1, 1]));
    }

    #[test]
    fn hall_product_gives_kostka_numbers() {
        let ring = Ring { precision: None };
        let block = orthogonalize_degree(3, 3, ring, Specialization::AtZero).unwrap();
        // s_(2,1,0) = m_(2,1,0) + 2 m_(1,1,1)
        assert_eq!(block.rows[1], p(&[2, 1, 0]));
        assert_eq!(block.coeffs[1][2], ip(&[2]));
        assert!(block.pivots.iter().all(|x| *x == ip(&[1])));
    }
}
