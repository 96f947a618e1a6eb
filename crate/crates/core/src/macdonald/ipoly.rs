//! Machine-integer polynomials in `q` for the Gram–Schmidt kernel, optionally
//! reduced modulo `q^K`. Every operation is overflow-checked.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactalg::Poly;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct IPoly(Vec<i128>);

impl IPoly {
    pub fn zero() -> Self {
        IPoly(Vec::new())
    }

    pub fn constant(c: i128) -> Self {
        IPoly::new(vec![c])
    }

    pub fn new(mut v: Vec<i128>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        IPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.0.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// `Z[q]`, or `Z[q]/(q^K)` when `precision = Some(K)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Ring {
    pub precision: Option<usize>,
}

const OVERFLOW: Error = Error::Overflow("Gram-Schmidt polynomial arithmetic");

impl Ring {
    fn reduce(&self, mut v: Vec<i128>) -> IPoly {
        if let Some(k) = self.precision {
            v.truncate(k);
        }
        IPoly::new(v)
    }

    pub fn lift(&self, p: &Poly) -> Result<IPoly> {
        let v = p
            .coeffs()
            .iter()
            .map(|c| c.to_i128().ok_or(OVERFLOW))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.reduce(v))
    }

    pub fn mul(&self, a: &IPoly, b: &IPoly) -> Result<IPoly> {
        if a.is_zero() || b.is_zero() {
            return Ok(IPoly::zero());
        }
        let mut len = a.0.len() + b.0.len() - 1;
        if let Some(k) = self.precision {
            len = len.min(k);
        }
        let mut out = vec![0i128; len];
        for (i, &x) in a.0.iter().enumerate().take(len) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate().take(len - i) {
                let t = x.checked_mul(y).ok_or(OVERFLOW)?;
                out[i + j] = out[i + j].checked_add(t).ok_or(OVERFLOW)?;
            }
        }
        Ok(IPoly::new(out))
    }

    pub fn add_assign(&self, target: &mut IPoly, a: &IPoly) -> Result<()> {
        let mut v = std::mem::take(&mut target.0);
        if v.len() < a.0.len() {
            v.resize(a.0.len(), 0);
        }
        for (i, &x) in a.0.iter().enumerate() {
            v[i] = v[i].checked_add(x).ok_or(OVERFLOW)?;
        }
        *target = self.reduce(v);
        Ok(())
    }

    /// `target -= a * b`.
    pub fn sub_mul_assign(&self, target: &mut IPoly, a: &IPoly, b: &IPoly) -> Result<()> {
        if a.is_zero() || b.is_zero() {
            return Ok(());
        }
        let mut len = a.0.len() + b.0.len() - 1;
        if let Some(k) = self.precision {
            len = len.min(k);
        }
        let mut v = std::mem::take(&mut target.0);
        if v.len() < len {
            v.resize(len, 0);
        }
        for (i, &x) in a.0.iter().enumerate().take(len) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate().take(len - i) {
                let t = x.checked_mul(y).ok_or(OVERFLOW)?;
                v[i + j] = v[i + j].checked_sub(t).ok_or(OVERFLOW)?;
            }
        }
        *target = IPoly::new(v);
        Ok(())
    }

    /// Exact quotient `a / b`; `None` when `b` does not divide `a`.
    ///
    /// Modulo `q^K` the quotient is the power-series quotient, which needs a
    /// unit constant term in `b`; divisibility cannot be confirmed there.
    pub fn div_exact(&self, a: &IPoly, b: &IPoly) -> Result<Option<IPoly>> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_zero() {
            return Ok(Some(IPoly::zero()));
        }
        match self.precision {
            None => Ok(long_division(&a.0, &b.0)?),
            Some(k) => {
                let b0 = b.0[0];
                if b0 != 1 && b0 != -1 {
                    return Err(Error::InexactDivision("divisor is not a unit modulo q".into()));
                }
                let mut out = vec![0i128; k];
                for n in 0..k {
                    let mut acc = a.0.get(n).copied().unwrap_or(0);
                    for j in 1..=n.min(b.0.len() - 1) {
                        let t = b.0[j].checked_mul(out[n - j]).ok_or(OVERFLOW)?;
                        acc = acc.checked_sub(t).ok_or(OVERFLOW)?;
                    }
                    out[n] = acc.checked_mul(b0).ok_or(OVERFLOW)?;
                }
                Ok(Some(IPoly::new(out)))
            }
        }
    }
}

fn long_division(a: &[i128], b: &[i128]) -> Result<Option<IPoly>> {
    if a.len() < b.len() {
        return Ok(None);
    }
    let db = b.len() - 1;
    let lead = b[db];
    let mut rem = a.to_vec();
    let mut quot = vec![0i128; a.len() - db];
    for k in (0..quot.len()).rev() {
        let top = rem[k + db];
        if top == 0 {
            continue;
        }
        if top % lead != 0 {
            return Ok(None);
        }
        let t = top / lead;
        for (i, &c) in b.iter().enumerate() {
            let s = t.checked_mul(c).ok_or(OVERFLOW)?;
            rem[k + i] = rem[k + i].checked_sub(s).ok_or(OVERFLOW)?;
        }
        quot[k] = t;
    }
    if rem.iter().any(|&c| c != 0) {
        return Ok(None);
    }
    Ok(Some(IPoly::new(quot)))
}
