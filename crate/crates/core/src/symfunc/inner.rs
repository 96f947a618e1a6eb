use std::collections::BTreeSet;

use super::laurent::{weyl_denominator, Laurent};
use super::SymmetricFunction;
use crate::error::{Error, Result};
use crate::exactalg::Coefficient;
use crate::partitions::{factorial, Partition};

/// `f*(x) = f(1/x)`.
pub fn star<C: Coefficient>(f: &SymmetricFunction<C>) -> SymmetricFunction<C> {
    let r = f.rank();
    let top = f.terms().keys().map(|k| k.parts()[0]).max().unwrap_or(0);
    // m_ξ(1/x) = |x|^{-T} m_{T - reverse(ξ)}
    let terms = f.terms().iter().map(|(xi, c)| {
        let parts: Vec<u32> = xi.parts().iter().rev().map(|&a| top - a).collect();
        (Partition::new(parts).expect("reversal of a partition"), c.clone())
    });
    SymmetricFunction::from_terms(r, top as i64 - f.twist(), terms)
}

/// Value at `x_1 = ⋯ = x_r = 1`.
pub fn principal_specialize<C: Coefficient>(f: &SymmetricFunction<C>) -> C {
    f.terms()
        .iter()
        .fold(C::zero(), |acc, (xi, c)| acc.add(&c.scale(&xi.orbit_size())))
}

/// `(1/r!) CT[f g* ∏_{i≠j}(1 - x_i/x_j)]` by dense Laurent expansion.
pub fn ct_inner<C: Coefficient>(f: &SymmetricFunction<C>, g: &SymmetricFunction<C>) -> Result<C> {
    if f.rank() != g.rank() {
        return Err(Error::RankMismatch(f.rank(), g.rank()));
    }
    let r = f.rank();
    // the pairing is zero across different degrees
    let common: BTreeSet<i64> = f.degrees().intersection(&g.degrees()).copied().collect();
    if common.is_empty() {
        return Ok(C::zero());
    }
    let restrict = |h: &SymmetricFunction<C>| {
        let terms = h
            .terms()
            .iter()
            .filter(|(k, _)| common.contains(&h.key_degree(k)))
            .map(|(k, c)| (k.clone(), c.clone()));
        SymmetricFunction::from_terms(r, h.twist(), terms)
    };
    let fe = Laurent::expand(&restrict(f));
    let ge = Laurent::expand(&restrict(g)).invert();
    let delta = weyl_denominator(r);
    let delta = Laurent::<C> {
        rank: r,
        terms: delta
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), C::from_bigint(&c.to_integer())))
            .collect(),
    };
    let h = ge.mul(&delta);
    let mut acc = C::zero();
    for (e, c) in &fe.terms {
        let neg: Vec<i32> = e.iter().map(|a| -a).collect();
        if let Some(d) = h.terms.get(&neg) {
            acc = acc.add(&c.mul(d));
        }
    }
    Ok(acc.div_bigint(&factorial(r as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{monomial_sym, schur, schur_laurent, SchurIndex};
    use num_rational::BigRational;

    type Sf = SymmetricFunction<BigRational>;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    #[test]
    fn star_examples() {
        let m = monomial_sym::<BigRational>(&p(&[1, 0]));
        let s = star(&m);
        assert_eq!(s, Sf::from_terms(2, 1, [(p(&[1, 0]), one())]));
        assert_eq!(star(&Sf::one(2)), Sf::one(2));
        assert_eq!(star(&Sf::det_power(2, 1)), Sf::det_power(2, -1));
        assert_eq!(star(&s), m);
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(
            principal_specialize(&schur::<BigRational>(&p(&[2, 1, 0])).unwrap()),
            BigRational::from_integer(8.into())
        );
        assert_eq!(
            principal_specialize(&schur::<BigRational>(&p(&[1, 0])).unwrap()),
            BigRational::from_integer(2.into())
        );
        assert_eq!(principal_specialize(&monomial_sym::<BigRational>(&p(&[1, 1]))), one());
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(ct_inner(&Sf::one(2), &Sf::one(2)).unwrap(), one());
        let s1 = schur::<BigRational>(&p(&[1, 0])).unwrap();
        assert_eq!(ct_inner(&s1, &s1).unwrap(), one());
        let s01 = schur_laurent::<BigRational>(&SchurIndex::new(p(&[0, 0]), 1).unwrap()).unwrap();
        assert_eq!(ct_inner(&s1, &s01).unwrap(), BigRational::from_integer(0.into()));
        assert_eq!(ct_inner(&s01, &s01).unwrap(), one());
    }
}
