use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_q_terms, Poly, RationalFunction};
use crate::error::{Error, Result};

/// Order marker for series that are exact polynomials (no truncation).
pub const EXACT: usize = usize::MAX;

/// Power series in `q` known exactly through `q^order`; terms beyond are
/// unspecified. Trailing zero coefficients are not stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        if order != EXACT {
            coeffs.truncate(order + 1);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QSeries { order, coeffs }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        QSeries::new(
            order,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        )
    }

    pub fn zero_to(order: usize) -> Self {
        QSeries {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one_to(order: usize) -> Self {
        QSeries::new(order, vec![BigRational::one()])
    }

    /// The polynomial `p`, truncated at `order`.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        QSeries::new(order, p.as_rationals())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Coefficient of `q^k`; `None` beyond the known order.
    pub fn coeff(&self, k: usize) -> Option<BigRational> {
        if k > self.order {
            return None;
        }
        Some(self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Known coefficients `q^0 .. q^order` (only meaningful for finite order).
    pub fn coeffs_padded(&self) -> Vec<BigRational> {
        let mut v = self.coeffs.clone();
        if self.order != EXACT {
            v.resize(self.order + 1, BigRational::zero());
        }
        v
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        QSeries::new(order.min(self.order), self.coeffs.clone())
    }

    /// Lowest power with a nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && *c >= BigRational::zero())
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: usize) -> QSeries {
        let order = if self.order == EXACT { EXACT } else { self.order };
        let mut coeffs = vec![BigRational::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        QSeries::new(order, coeffs)
    }

    /// Multiplicative inverse; needs a nonzero constant term and a finite order.
    pub fn inverse(&self) -> Result<QSeries> {
        let c0 = self.coeff(0).unwrap_or_else(BigRational::zero);
        if c0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        if self.order == EXACT {
            if self.coeffs.len() == 1 {
                return Ok(QSeries::new(EXACT, vec![c0.recip()]));
            }
            return Err(Error::InvalidArgument(
                "inverse of a non-constant exact polynomial needs a truncation order".into(),
            ));
        }
        let n = self.order;
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(QSeries::new(n, out))
    }

    pub fn checked_div(&self, other: &QSeries) -> Result<QSeries> {
        let other = if other.is_exact() && !self.is_exact() {
            other.truncate(self.order)
        } else {
            other.clone()
        };
        Ok(super::Coefficient::mul(self, &other.inverse()?))
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs_padded()
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_q_terms(&self.coeffs, true))
    }
}

impl super::Coefficient for QSeries {
    fn zero() -> Self {
        QSeries::zero_to(EXACT)
    }
    fn one() -> Self {
        QSeries::one_to(EXACT)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if order != EXACT && k > order {
                break;
            }
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        QSeries::new(order, out)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return QSeries::zero_to(order);
        }
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if order != EXACT {
            len = len.min(order + 1);
        }
        let mut out = vec![<BigRational as Zero>::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        QSeries::new(order, out)
    }
    fn neg(&self) -> Self {
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn from_bigint(n: &BigInt) -> Self {
        QSeries::new(EXACT, vec![BigRational::from_integer(n.clone())])
    }
    fn div_bigint(&self, n: &BigInt) -> Self {
        assert!(!Zero::is_zero(n), "division by zero");
        let d = BigRational::from_integer(n.clone());
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c / &d).collect(),
        }
    }
    fn scale(&self, n: &BigInt) -> Self {
        let d = BigRational::from_integer(n.clone());
        QSeries::new(self.order, self.coeffs.iter().map(|c| c * &d).collect())
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QSeries", 2)?;
        let order = (self.order != EXACT).then_some(self.order);
        st.serialize_field("order", &order)?;
        let coeffs: Vec<String> = self.coeffs_padded().iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: Option<usize>,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| c.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(QSeries::new(raw.order.unwrap_or(EXACT), coeffs))
    }
}

/// Power-series expansion of `f` through `q^order`.
pub fn series_from_ratfunc(f: &RationalFunction, order: usize) -> Result<QSeries> {
    if f.den().coeff(0).is_zero() {
        return Err(Error::PoleAtZero);
    }
    let num = QSeries::from_poly(f.num(), order);
    let den = QSeries::from_poly(f.den(), order);
    Ok(super::Coefficient::mul(&num, &den.inverse()?))
}
