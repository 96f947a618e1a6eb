use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Poly;
use crate::error::{Error, Result};

/// Element of `Q(q)` stored as `num/den` with `num, den ∈ Z[q]` coprime in
/// `Z[q]` and `den` having positive leading coefficient. Normal forms are
/// unique, so derived equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawRatFunc")]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

#[derive(Deserialize)]
struct RawRatFunc {
    num: Poly,
    den: Poly,
}

impl TryFrom<RawRatFunc> for RationalFunction {
    type Error = Error;
    fn try_from(raw: RawRatFunc) -> Result<Self> {
        RationalFunction::new(raw.num, raw.den)
    }
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == Poly::one()
    }

    /// The polynomial this function equals, if it is one.
    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(super::Coefficient::mul(self, &other.inv()?))
    }

    /// Value at `q = 0`, if the denominator does not vanish there.
    pub fn at_zero(&self) -> Option<num_rational::BigRational> {
        let d = self.den.coeff(0);
        if d.is_zero() {
            None
        } else {
            Some(num_rational::BigRational::new(self.num.coeff(0), d))
        }
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let (mut num, mut den) = if den.is_constant() {
            let d = den.coeff(0);
            let g = num.content().gcd(&d);
            (num.div_exact_int(&g).unwrap(), Poly::constant(d / g))
        } else if num.is_constant() {
            let n = num.coeff(0);
            let g = den.content().gcd(&n);
            (Poly::constant(n / &g), den.div_exact_int(&g).unwrap())
        } else {
            let g = num.gcd(&den);
            if g.is_constant() && g.coeff(0).is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        if den.leading().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl super::Coefficient for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn one() -> Self {
        RationalFunction {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        Self::normalized(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_polynomial() && other.is_polynomial() {
            return RationalFunction {
                num: &self.num * &other.num,
                den: Poly::one(),
            };
        }
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn from_bigint(n: &BigInt) -> Self {
        RationalFunction::from_poly(Poly::constant(n.clone()))
    }
    fn div_bigint(&self, n: &BigInt) -> Self {
        assert!(!Zero::is_zero(n), "division by zero");
        Self::normalized(self.num.clone(), self.den.scale(n))
    }
    fn scale(&self, n: &BigInt) -> Self {
        if self.is_polynomial() {
            return RationalFunction {
                num: self.num.scale(n),
                den: Poly::one(),
            };
        }
        Self::normalized(self.num.scale(n), self.den.clone())
    }
}
