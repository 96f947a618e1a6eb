use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use std::fmt;

use super::SymmetricFunction;
use crate::exactalg::{format_q_terms, Coefficient, Poly, QSeries, RationalFunction};

/// How a coefficient prints in front of a basis element: a sign and an
/// optional factor (`None` for a unit).
pub trait CoeffDisplay {
    fn signed_factor(&self) -> (bool, Option<String>);
}

fn rational_factor(c: &BigRational) -> (bool, Option<String>) {
    let a = c.abs();
    let body = if a.is_one() {
        None
    } else if a.is_integer() {
        Some(a.to_integer().to_string())
    } else {
        Some(format!("({a})"))
    };
    (c.is_negative(), body)
}

fn series_factor(coeffs: &[BigRational]) -> (bool, Option<String>) {
    let nonzero: Vec<usize> = (0..coeffs.len())
        .filter(|&k| !num_traits::Zero::is_zero(&coeffs[k]))
        .collect();
    if nonzero.len() == 1 {
        let k = nonzero[0];
        let c = &coeffs[k];
        let mut unit = vec![BigRational::from_integer(0.into()); k + 1];
        unit[k] = c.abs();
        let body = format_q_terms(&unit, false);
        return (c.is_negative(), (body != "1").then_some(body));
    }
    (false, Some(format!("({})", format_q_terms(coeffs, false))))
}

impl CoeffDisplay for BigRational {
    fn signed_factor(&self) -> (bool, Option<String>) {
        rational_factor(self)
    }
}

impl CoeffDisplay for BigInt {
    fn signed_factor(&self) -> (bool, Option<String>) {
        rational_factor(&BigRational::from_integer(self.clone()))
    }
}

impl CoeffDisplay for Poly {
    fn signed_factor(&self) -> (bool, Option<String>) {
        series_factor(&self.as_rationals())
    }
}

impl CoeffDisplay for QSeries {
    fn signed_factor(&self) -> (bool, Option<String>) {
        series_factor(&self.coeffs_padded())
    }
}

impl CoeffDisplay for RationalFunction {
    fn signed_factor(&self) -> (bool, Option<String>) {
        match self.as_polynomial() {
            Some(p) => p.signed_factor(),
            None => (
                false,
                Some(format!(
                    "(({})/({}))",
                    self.num().to_compact_string(),
                    self.den().to_compact_string()
                )),
            ),
        }
    }
}

/// Renders `Σ c·label` as `a + c·b - d·e`; an empty sum renders as `0`.
pub fn render_combination<'a, C: CoeffDisplay + 'a, I>(items: I) -> String
where
    I: IntoIterator<Item = (String, &'a C)>,
{
    let mut out = String::new();
    for (label, c) in items {
        let (negative, factor) = c.signed_factor();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if let Some(f) = factor {
            out.push_str(&f);
            out.push('·');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `m[2,0] + (1+q)·m[1,1]`, keys in decreasing lex order, prefixed by
/// `|x|^-t·` when the twist is nonzero.
impl<C: Coefficient + CoeffDisplay> fmt::Display for SymmetricFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = render_combination(self.terms().iter().rev().map(|(k, c)| (format!("m{k}"), c)));
        if self.twist() == 0 {
            f.write_str(&body)
        } else {
            write!(f, "|x|^-{}·({body})", self.twist())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_rendering() {
        let one = RationalFunction::from_poly(Poly::one());
        let lin = RationalFunction::from_poly(Poly::from_i64s(&[1, 1]));
        let s = render_combination([("m[2,0]".to_string(), &one), ("m[1,1]".to_string(), &lin)]);
        assert_eq!(s, "m[2,0] + (1+q)·m[1,1]");
        let q = Poly::from_i64s(&[0, 1]);
        let mq = Poly::from_i64s(&[0, -2]);
        let s = render_combination([("a".to_string(), &q), ("b".to_string(), &mq)]);
        assert_eq!(s, "q·a - 2q·b");
        assert_eq!(render_combination::<Poly, _>(Vec::new()), "0");
    }
}
