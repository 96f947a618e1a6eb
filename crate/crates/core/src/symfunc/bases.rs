//! The monomial, power-sum and Schur bases and conversions between them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::laurent::{divide_by_difference, Exponent};
use super::{SchurIndex, SymmetricFunction};
use crate::error::{Error, Result};
use crate::exactalg::Coefficient;
use crate::partitions::{enumerate_partitions, Partition};

type Row = Arc<BTreeMap<Partition, BigInt>>;

fn kostka_cache() -> &'static Mutex<HashMap<Partition, Row>> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, Row>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn power_cache() -> &'static Mutex<HashMap<Partition, Row>> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, Row>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn monomial_sym<C: Coefficient>(xi: &Partition) -> SymmetricFunction<C> {
    SymmetricFunction::from_terms(xi.len(), 0, [(xi.clone(), C::one())])
}

/// All permutations of `0..n` with their signs.
pub(crate) fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        out.push((perm.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        if !crate::partitions::next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Monomial coefficients `K_{ξψ}` of `s_ξ` over dominant `ψ`, from the bialternant
/// `a_{ξ+δ} / a_δ`.
pub fn kostka_row(xi: &Partition) -> Result<Arc<BTreeMap<Partition, BigInt>>> {
    if let Some(row) = kostka_cache().lock().unwrap().get(xi) {
        return Ok(row.clone());
    }
    let r = xi.len();
    let shifted: Vec<i32> = xi
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &a)| a as i32 + (r - 1 - i) as i32)
        .collect();
    let mut alt: HashMap<Exponent, BigInt> = HashMap::new();
    for (perm, sign) in signed_permutations(r) {
        let e: Exponent = perm.iter().map(|&p| shifted[p]).collect();
        alt.insert(e, BigInt::from(sign));
    }
    for i in 0..r {
        for j in i + 1..r {
            alt = divide_by_difference(&alt, i, j)?;
        }
    }
    let row: BTreeMap<Partition, BigInt> = alt
        .into_iter()
        .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
        .map(|(e, c)| (Partition::new(e.into_iter().map(|a| a as u32).collect()).unwrap(), c))
        .collect();
    let row = Arc::new(row);
    kostka_cache().lock().unwrap().insert(xi.clone(), row.clone());
    Ok(row)
}

/// The Schur polynomial `s_ξ(x_1, ..., x_r)` with `r = ξ.len()`.
pub fn schur<C: Coefficient>(xi: &Partition) -> Result<SymmetricFunction<C>> {
    let row = kostka_row(xi)?;
    Ok(SymmetricFunction::from_terms(
        xi.len(),
        0,
        row.iter().map(|(k, c)| (k.clone(), C::from_bigint(c))),
    ))
}

/// `s_{λ,ℓ} = |x|^ℓ s_λ`.
pub fn schur_laurent<C: Coefficient>(idx: &SchurIndex) -> Result<SymmetricFunction<C>> {
    Ok(schur::<C>(&idx.lambda)?.times_det_power(idx.ell))
}

fn power_row(xi: &Partition) -> Row {
    if let Some(row) = power_cache().lock().unwrap().get(xi) {
        return row.clone();
    }
    let r = xi.len();
    let mut acc = SymmetricFunction::<BigRational>::one(r);
    for j in xi.nonzero_parts() {
        acc = acc.multiply(&monomial_sym(&Partition::row(j, r))).expect("equal ranks");
    }
    let row: Row = Arc::new(acc.terms().iter().map(|(k, c)| (k.clone(), c.to_integer())).collect());
    power_cache().lock().unwrap().insert(xi.clone(), row.clone());
    row
}

/// `p_ξ = ∏ p_{ξ_i}` over the nonzero parts, in `r = ξ.len()` variables.
pub fn newton_p<C: Coefficient>(xi: &Partition) -> SymmetricFunction<C> {
    let row = power_row(xi);
    SymmetricFunction::from_terms(xi.len(), 0, row.iter().map(|(k, c)| (k.clone(), C::from_bigint(c))))
}

/// Power-sum expansion of a polynomial `f`.
pub fn to_p_basis<C: Coefficient>(f: &SymmetricFunction<C>) -> Result<BTreeMap<Partition, C>> {
    let terms = f.polynomial_terms()?;
    let r = f.rank();
    let mut rem: BTreeMap<Partition, C> = terms.clone();
    let mut out = BTreeMap::new();
    let mut sizes: Vec<u32> = terms.keys().map(|k| k.size()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for d in sizes {
        // p_ξ = (∏ n_i!) m_ξ + terms strictly above ξ in dominance
        let mut parts = enumerate_partitions(r, d);
        parts.reverse();
        for xi in parts {
            let c = match rem.get(&xi) {
                Some(c) if !c.is_zero() => c.clone(),
                _ => continue,
            };
            let row = power_row(&xi);
            let lead = &row[&xi];
            let coeff = c.div_bigint(lead);
            for (k, v) in row.iter() {
                let e = rem.entry(k.clone()).or_insert_with(C::zero);
                *e = e.sub(&coeff.scale(v));
            }
            out.insert(xi, coeff);
        }
    }
    if rem.values().any(|c| !c.is_zero()) {
        return Err(Error::Singular("power-sum expansion left a remainder".into()));
    }
    Ok(out)
}

/// Schur expansion `Σ c_{λ,ℓ} s_{λ,ℓ}` of a Laurent symmetric function.
pub fn to_schur_basis<C: Coefficient>(f: &SymmetricFunction<C>) -> Result<BTreeMap<SchurIndex, C>> {
    let r = f.rank();
    let mut rem: BTreeMap<Partition, C> = f.terms().clone();
    let mut out = BTreeMap::new();
    let mut sizes: Vec<u32> = rem.keys().map(|k| k.size()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for d in sizes {
        // s_ξ = m_ξ + terms strictly below ξ in lex order
        for xi in enumerate_partitions(r, d) {
            let c = match rem.get(&xi) {
                Some(c) if !c.is_zero() => c.clone(),
                _ => continue,
            };
            let row = kostka_row(&xi)?;
            for (k, v) in row.iter() {
                let e = rem.entry(k.clone()).or_insert_with(C::zero);
                *e = e.sub(&c.scale(v));
            }
            let idx = SchurIndex::from_partition(&xi);
            out.insert(
                SchurIndex {
                    ell: idx.ell - f.twist(),
                    ..idx
                },
                c,
            );
        }
    }
    if rem.values().any(|c| !c.is_zero()) {
        return Err(Error::Singular("Schur expansion left a remainder".into()));
    }
    Ok(out)
}

/// `[s_{λ,ℓ}] f` by the alternant formula `[x^{ν+δ}] a_δ F`, without any
/// Kostka numbers.
pub fn schur_coefficient_by_alternation<C: Coefficient>(f: &SymmetricFunction<C>, idx: &SchurIndex) -> C {
    let shift = idx.ell + f.twist();
    if shift < 0 || idx.lambda.len() != f.rank() {
        return C::zero();
    }
    let nu: Vec<u32> = idx.lambda.parts().iter().map(|&a| a + shift as u32).collect();
    alternant_coefficient(&nu, |key| f.terms().get(key).cloned())
}

/// `[s_ν] F = Σ_σ sgn(σ) [m_{sort(ν + δ - σδ)}] F` for `ν ∈ Par(r)`, reading
/// monomial coefficients through `lookup` (`None` means zero).
pub fn alternant_coefficient<C: Coefficient>(nu: &[u32], lookup: impl Fn(&Partition) -> Option<C>) -> C {
    let r = nu.len();
    let mut acc = C::zero();
    for (perm, sign) in signed_permutations(r) {
        let mut e: Vec<i64> = (0..r)
            .map(|i| nu[i] as i64 + (r - 1 - i) as i64 - (r - 1 - perm[i]) as i64)
            .collect();
        if e.iter().any(|&a| a < 0) {
            continue;
        }
        e.sort_unstable_by(|a, b| b.cmp(a));
        let key = Partition::new(e.into_iter().map(|a| a as u32).collect()).expect("sorted exponent");
        if let Some(c) = lookup(&key) {
            acc = if sign > 0 { acc.add(&c) } else { acc.sub(&c) };
        }
    }
    acc
}

/// Schur expansion through [`schur_coefficient_by_alternation`], cell by cell.
pub fn to_schur_basis_by_alternation<C: Coefficient>(f: &SymmetricFunction<C>) -> BTreeMap<SchurIndex, C> {
    let r = f.rank();
    let mut sizes: Vec<u32> = f.terms().keys().map(|k| k.size()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut out = BTreeMap::new();
    for d in sizes {
        for xi in enumerate_partitions(r, d) {
            let idx = SchurIndex::from_partition(&xi);
            let idx = SchurIndex {
                ell: idx.ell - f.twist(),
                ..idx
            };
            let c = schur_coefficient_by_alternation(f, &idx);
            if !c.is_zero() {
                out.insert(idx, c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type Sf = SymmetricFunction<BigRational>;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn monomials() {
        let m = monomial_sym::<BigRational>(&p(&[1, 0, 0]));
        assert_eq!(m.terms().len(), 1);
        assert_eq!(m.coeff(&p(&[1, 0, 0])), q(1, 1));
    }

    #[test]
    fn power_sums() {
        assert_eq!(newton_p::<BigRational>(&p(&[2, 0])), monomial_sym(&p(&[2, 0])));
        let want = Sf::from_terms(2, 0, [(p(&[2, 0]), q(1, 1)), (p(&[1, 1]), q(2, 1))]);
        assert_eq!(newton_p::<BigRational>(&p(&[1, 1])), want);
        assert_eq!(newton_p::<BigRational>(&p(&[0, 0])), Sf::one(2));
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur::<BigRational>(&p(&[1, 1])).unwrap(), monomial_sym(&p(&[1, 1])));
        let want = Sf::from_terms(2, 0, [(p(&[2, 0]), q(1, 1)), (p(&[1, 1]), q(1, 1))]);
        assert_eq!(schur::<BigRational>(&p(&[2, 0])).unwrap(), want);
        assert_eq!(schur::<BigRational>(&p(&[2, 1])).unwrap(), monomial_sym(&p(&[2, 1])));
        // s_(2,1,0) = m_(2,1,0) + 2 m_(1,1,1)
        let s = schur::<BigRational>(&p(&[2, 1, 0])).unwrap();
        assert_eq!(s.coeff(&p(&[1, 1, 1])), q(2, 1));
        assert_eq!(s.terms().len(), 2);
    }

    #[test]
    fn p_basis_examples() {
        let m11 = monomial_sym::<BigRational>(&p(&[1, 1]));
        let exp = to_p_basis(&m11).unwrap();
        assert_eq!(exp.len(), 2);
        assert_eq!(exp[&p(&[1, 1])], q(1, 2));
        assert_eq!(exp[&p(&[2, 0])], q(-1, 2));
        let laurent = Sf::det_power(2, -1);
        assert!(to_p_basis(&laurent).is_err());
    }

    #[test]
    fn schur_basis_examples() {
        let s20 = schur::<BigRational>(&p(&[2, 0])).unwrap();
        let exp = to_schur_basis(&s20).unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp[&SchurIndex::new(p(&[2, 0]), 0).unwrap()], q(1, 1));

        let p2 = newton_p::<BigRational>(&p(&[2, 0]));
        let exp = to_schur_basis(&p2).unwrap();
        assert_eq!(exp[&SchurIndex::new(p(&[2, 0]), 0).unwrap()], q(1, 1));
        assert_eq!(exp[&SchurIndex::new(p(&[0, 0]), 1).unwrap()], q(-1, 1));
        assert_eq!(exp, to_schur_basis_by_alternation(&p2));
    }

    #[test]
    fn laurent_schur_indices() {
        // |x|^{-1} m_(1,0) = s_{(1),-1}
        let f = Sf::from_terms(2, 1, [(p(&[1, 0]), q(1, 1))]);
        let exp = to_schur_basis(&f).unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp[&SchurIndex::new(p(&[1, 0]), -1).unwrap()], q(1, 1));
        assert_eq!(exp, to_schur_basis_by_alternation(&f));
    }
}
