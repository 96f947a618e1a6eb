//! Dense Laurent polynomials in `r` variables, keyed by exponent vectors.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::SymmetricFunction;
use crate::error::{Error, Result};
use crate::exactalg::Coefficient;

pub(crate) type Exponent = Vec<i32>;

#[derive(Clone, Debug)]
pub(crate) struct Laurent<C> {
    pub rank: usize,
    pub terms: HashMap<Exponent, C>,
}

impl<C: Coefficient> Laurent<C> {
    pub fn new(rank: usize) -> Self {
        Laurent {
            rank,
            terms: HashMap::new(),
        }
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Every monomial of `f`, with the twist applied to the exponents.
    pub fn expand(f: &SymmetricFunction<C>) -> Self {
        let mut out = Laurent::new(f.rank());
        let t = f.twist() as i32;
        for (xi, c) in f.terms() {
            for g in xi.orbit() {
                out.terms.insert(g.iter().map(|&a| a as i32 - t).collect(), c.clone());
            }
        }
        out
    }

    /// `x_i -> 1/x_i`.
    pub fn invert(&self) -> Self {
        Laurent {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|a| -a).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent::new(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    #[cfg(test)]
    pub fn coeff(&self, e: &[i32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }
}

/// `∏_{i≠j} (1 - x_i/x_j)` with integer coefficients.
pub(crate) fn weyl_denominator(rank: usize) -> Laurent<BigRational> {
    let one = BigRational::from_integer(1.into());
    let mut acc = Laurent::new(rank);
    acc.terms.insert(vec![0; rank], one.clone());
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let mut factor = Laurent::new(rank);
            factor.terms.insert(vec![0; rank], one.clone());
            let mut e = vec![0; rank];
            e[i] = 1;
            e[j] = -1;
            factor.terms.insert(e, -one.clone());
            acc = acc.mul(&factor);
        }
    }
    acc
}

/// Divides an integer polynomial (nonnegative exponents) by `x_i - x_j`,
/// returning an error on a nonzero remainder.
pub(crate) fn divide_by_difference(
    f: &HashMap<Exponent, BigInt>,
    i: usize,
    j: usize,
) -> Result<HashMap<Exponent, BigInt>> {
    // group by the remaining exponents and e = a_i + a_j; coefficient list indexed by a_i
    let mut groups: BTreeMap<(Exponent, i32), Vec<BigInt>> = BTreeMap::new();
    for (e, c) in f {
        let mut rest = e.clone();
        rest[i] = 0;
        rest[j] = 0;
        let total = e[i] + e[j];
        let slot = groups
            .entry((rest, total))
            .or_insert_with(|| vec![BigInt::zero(); total as usize + 1]);
        slot[e[i] as usize] += c;
    }
    let mut out = HashMap::new();
    for ((rest, total), c) in groups {
        if total == 0 {
            if c.iter().any(|x| !x.is_zero()) {
                return Err(Error::InexactDivision("alternant is not divisible by x_i - x_j".into()));
            }
            continue;
        }
        let e = total as usize;
        // quotient Σ d_a x_i^a x_j^{e-1-a}
        let mut d = vec![BigInt::zero(); e];
        d[e - 1] = c[e].clone();
        for a in (1..e).rev() {
            d[a - 1] = &c[a] + &d[a];
        }
        if c[0] != -&d[0] {
            return Err(Error::InexactDivision("alternant is not divisible by x_i - x_j".into()));
        }
        for (a, v) in d.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut ex = rest.clone();
            ex[i] = a as i32;
            ex[j] = (e - 1 - a) as i32;
            out.insert(ex, v);
        }
    }
    Ok(out)
}
