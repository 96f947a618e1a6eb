use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{pochhammer_finite, Coefficient, Poly, QSeries, RationalFunction};
use crate::macdonald::{c_coefficients, cached_series_table, cached_table, Specialization};
use crate::partitions::{weight_to_partition, DominantWeight};
use crate::symfunc::principal_specialize;

/// `Σ_k dim M[k] q^k`, either exactly or through a fixed order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum HilbertSeries {
    Exact(RationalFunction),
    Truncated(QSeries),
}

impl HilbertSeries {
    /// The series through `q^order`.
    pub fn to_series(&self, order: usize) -> Result<QSeries> {
        match self {
            HilbertSeries::Exact(f) => crate::exactalg::series_from_ratfunc(f, order),
            HilbertSeries::Truncated(s) => Ok(s.truncate(order)),
        }
    }

    /// True when every known coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        match self {
            HilbertSeries::Exact(f) => f.as_polynomial().is_some_and(Poly::is_nonnegative),
            HilbertSeries::Truncated(s) => s.is_nonnegative_integral(),
        }
    }

    /// Value at `q = 1` of an exact polynomial series.
    pub fn at_one(&self) -> Option<BigInt> {
        match self {
            HilbertSeries::Exact(f) => f.as_polynomial().map(|p| p.eval_int(&BigInt::from(1))),
            HilbertSeries::Truncated(_) => None,
        }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertSeries::Exact(r) => match r.as_polynomial() {
                Some(p) => write!(f, "{}", QSeries::from_poly(p, crate::exactalg::EXACT)),
                None => write!(f, "{r}"),
            },
            HilbertSeries::Truncated(s) => write!(f, "{s}"),
        }
    }
}

/// `∏_i (q;q)_{λ_i}` over the fundamental-weight coordinates.
pub(crate) fn global_denominator(lw: &DominantWeight) -> Poly {
    lw.coords()
        .iter()
        .fold(Poly::one(), |acc, &l| acc * pochhammer_finite(1, l as usize))
}

/// `ℍ(W_loc(λ,0)) = P_λ(1, ..., 1; q, 0)`, a polynomial with nonnegative coefficients.
pub fn hilbert_local(lw: &DominantWeight, rank: usize) -> Result<HilbertSeries> {
    let xi = weight_to_partition(lw, rank)?;
    let table = cached_table(rank, xi.size(), Specialization::Generic)?;
    let value = principal_specialize(table.entry(&xi)?);
    let poly = value
        .as_polynomial()
        .ok_or_else(|| Error::NonPolynomialCoefficient(format!("P_{xi}(1) = {value}")))?;
    if !poly.is_nonnegative() {
        return Err(Error::NegativeMultiplicity(format!("P_{xi}(1) = {poly}")));
    }
    Ok(HilbertSeries::Exact(value))
}

/// `P_λ(1, ..., 1; q, 0)` through `q^order`, from the truncated table.
pub(crate) fn local_series(lw: &DominantWeight, rank: usize, order: usize, table_size: u32) -> Result<QSeries> {
    let xi = weight_to_partition(lw, rank)?;
    let table = cached_series_table(rank, table_size.max(xi.size()), order)?;
    Ok(principal_specialize(table.entry(&xi)?))
}

/// `ℍ(W(λ,0)) = ℍ(W_loc(λ,0)) / ∏_i (q;q)_{λ_i}` through `q^order`.
pub fn hilbert_global(lw: &DominantWeight, rank: usize, order: usize) -> Result<HilbertSeries> {
    let xi = weight_to_partition(lw, rank)?;
    global_series(lw, rank, order, xi.size()).map(HilbertSeries::Truncated)
}

pub(crate) fn global_series(lw: &DominantWeight, rank: usize, order: usize, table_size: u32) -> Result<QSeries> {
    let local = local_series(lw, rank, order, table_size)?;
    let den = QSeries::from_poly(&global_denominator(lw), order).inverse()?;
    Ok(local.mul(&den))
}

/// `ℍ(P(λ,0)) = dim V(λ) / (q;q)_∞^{r²-1}` through `q^order`.
pub fn hilbert_projective(lw: &DominantWeight, rank: usize, order: usize) -> Result<HilbertSeries> {
    weight_to_partition(lw, rank)?;
    let dim = QSeries::new(order, vec![BigRational::from_integer(lw.dimension())]);
    Ok(HilbertSeries::Truncated(c_coefficients(rank, order).mul(&dim)))
}
