use num_bigint::BigInt;
use num_integer::binomial;

use super::SymmetricFunction;
use crate::exactalg::Coefficient;
use crate::partitions::partitions_up_to;

/// `∏_i F(x_i) · G(x_1⋯x_r)` through total degree `max_degree`, where
/// `F = Σ f_k x^k` and `G = Σ g_k y^k`. Missing coefficients are zero.
///
/// The coefficient of `m_ξ` is `Σ_{k ≤ ξ_r} g_k ∏_i f_{ξ_i - k}`.
pub fn diagonal_product_kernel<C: Coefficient>(rank: usize, max_degree: u32, f: &[C], g: &[C]) -> SymmetricFunction<C> {
    let zero = C::zero();
    let at = |v: &[C], k: u32| v.get(k as usize).cloned().unwrap_or_else(|| zero.clone());
    let terms = partitions_up_to(rank, max_degree).into_iter().map(|xi| {
        let mut c = C::zero();
        for k in 0..=xi.last() {
            let gk = at(g, k);
            if gk.is_zero() {
                continue;
            }
            let prod = xi.parts().iter().fold(gk, |acc, &a| acc.mul(&at(f, a - k)));
            c = c.add(&prod);
        }
        (xi, c)
    });
    SymmetricFunction::from_terms(rank, 0, terms.collect::<Vec<_>>())
}

/// `R_r = ∏_i (1 - x_i)^{-r}`, or `R'_r = (1 - x_1⋯x_r) R_r` when `primed`,
/// through total degree `max_degree`.
pub fn cauchy_r<C: Coefficient>(rank: usize, max_degree: u32, primed: bool) -> SymmetricFunction<C> {
    // [x^k] (1-x)^{-r} = C(k+r-1, r-1)
    let f: Vec<C> = (0..=max_degree as u64)
        .map(|k| {
            C::from_bigint(&binomial(
                BigInt::from(k + rank as u64 - 1),
                BigInt::from(rank as u64 - 1),
            ))
        })
        .collect();
    let g: Vec<C> = if primed {
        vec![C::one(), C::from_int(-1)]
    } else {
        vec![C::one()]
    };
    diagonal_product_kernel(rank, max_degree, &f, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use num_rational::BigRational;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rank_one_is_geometric() {
        let r = cauchy_r::<BigRational>(1, 2, false);
        assert_eq!(r.terms().len(), 3);
        assert!(r.terms().values().all(|c| *c == int(1)));
    }

    #[test]
    fn degree_one_component() {
        let r = cauchy_r::<BigRational>(2, 3, false);
        assert_eq!(r.coeff(&p(&[1, 0])), int(2));
        assert_eq!(r.coeff(&p(&[1, 1])), int(4));
        let rp = cauchy_r::<BigRational>(2, 3, true);
        assert_eq!(rp.coeff(&p(&[1, 1])), int(3));
    }
}
