//! Exact coefficient arithmetic: integer polynomials in `q`, the field of
//! rational functions in `q`, truncated `q`-series, and `q`-Pochhammer symbols.

mod pochhammer;
mod poly;
mod ratfunc;
mod series;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use pochhammer::{pochhammer_finite, pochhammer_inf_inverse_pow, q_binomial, q_multinomial};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use series::{series_from_ratfunc, QSeries, EXACT};

/// Exact commutative `Q`-algebra used as the coefficient ring of symmetric
/// functions.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    /// Division by a nonzero integer.
    fn div_bigint(&self, n: &BigInt) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn scale(&self, n: &BigInt) -> Self {
        self.mul(&Self::from_bigint(n))
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn div_bigint(&self, n: &BigInt) -> Self {
        assert!(!Zero::is_zero(n), "division by zero");
        self / BigRational::from_integer(n.clone())
    }
    fn scale(&self, n: &BigInt) -> Self {
        self * BigRational::from_integer(n.clone())
    }
}

/// JSON form of a coefficient inside larger documents.
pub trait JsonCoefficient: Sized {
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self, String>;
}

/// Rationals are written as strings `"p"` or `"p/q"`.
impl JsonCoefficient for BigRational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::String(s) => s.parse().map_err(|e| format!("{e}")),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|k| BigRational::from_integer(k.into()))
                .ok_or_else(|| "integer expected".to_string()),
            _ => Err("rational coefficient expected".into()),
        }
    }
}

macro_rules! serde_json_coefficient {
    ($t:ty) => {
        impl JsonCoefficient for $t {
            fn to_json(&self) -> serde_json::Value {
                serde_json::to_value(self).expect("serializable")
            }
            fn from_json(v: &serde_json::Value) -> Result<Self, String> {
                serde_json::from_value(v.clone()).map_err(|e| e.to_string())
            }
        }
    };
}
serde_json_coefficient!(RationalFunction);
serde_json_coefficient!(QSeries);
serde_json_coefficient!(Poly);

/// Superscript rendering of an exponent.
pub(crate) fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Renders `Σ c_k q^k`, lowest power first. `spaced` puts blanks around signs.
pub(crate) fn format_q_terms(coeffs: &[BigRational], spaced: bool) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if Zero::is_zero(c) {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if spaced {
            out.push_str(if negative { " - " } else { " + " });
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        let var = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q{}", superscript(k)),
        };
        let num = if abs.is_integer() {
            abs.to_integer().to_string()
        } else {
            format!("({abs})")
        };
        if k == 0 {
            out.push_str(&num);
        } else if abs.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&num);
            out.push_str(&var);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
