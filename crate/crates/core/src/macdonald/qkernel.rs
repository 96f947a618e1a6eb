//! The kernels `Q = (q|x|;q)_∞ / ∏_i (x_i;q)_∞^r` and
//! `(|x|;q)_∞ / ∏_i (x_i;q)_∞^r = (1 - |x|) Q` as `q`-series in each
//! monomial, and the coefficients `φ`, `ψ` and `c_m` built from them.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactalg::{pochhammer_inf_inverse_pow, Coefficient, QSeries};
use crate::partitions::{partitions_up_to, Partition};
use crate::symfunc::{alternant_coefficient, SchurIndex, SymmetricFunction};

/// One of the two kernels, known through `x`-degree `max_degree` and `q^order`.
///
/// With `F(y) = 1/(y;q)_∞^r = Σ f_k y^k` and `G(y) = Σ g_k y^k` the numerator,
/// the coefficient of `m_ξ` is `Σ_{k ≤ ξ_r} g_k ∏_i f_{ξ_i - k}`.
#[derive(Clone, Debug)]
pub struct KernelSeries {
    rank: usize,
    order: usize,
    max_degree: u32,
    f: Vec<QSeries>,
    g: Vec<QSeries>,
}

/// `1/(q;q)_k` for `k = 0..=n`, through `q^order`.
fn inverse_pochhammers(n: u32, order: usize) -> Result<Vec<QSeries>> {
    let mut out = vec![QSeries::one_to(order)];
    for k in 1..=n as usize {
        let mut factor = vec![BigRational::from_integer(1.into())];
        if k <= order {
            factor.resize(k + 1, BigRational::from_integer(0.into()));
            factor[k] = BigRational::from_integer((-1).into());
        }
        let inv = QSeries::new(order, factor).inverse()?;
        let prev = out.last().expect("nonempty");
        out.push(prev.mul(&inv));
    }
    Ok(out)
}

/// `[y^k] (sy;q)_∞ = (-1)^k q^{k(k-1)/2 + k·s} / (q;q)_k` for `s ∈ {0, 1}`.
fn numerator_coefficients(n: u32, order: usize, shifted: bool, inv: &[QSeries]) -> Vec<QSeries> {
    (0..=n as usize)
        .map(|k| {
            let e = k * k.saturating_sub(1) / 2 + if shifted { k } else { 0 };
            let sign = if k % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
            inv[k].shift(e).scale(&sign).truncate(order)
        })
        .collect()
}

impl KernelSeries {
    fn build(rank: usize, max_degree: u32, order: usize, shifted: bool) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        let inv = inverse_pochhammers(max_degree, order)?;
        // f = r-th convolution power of (1/(q;q)_k)_k
        let mut f = vec![QSeries::zero_to(order); max_degree as usize + 1];
        f[0] = QSeries::one_to(order);
        for _ in 0..rank {
            let mut next = vec![QSeries::zero_to(order); f.len()];
            for (n, slot) in next.iter_mut().enumerate() {
                for k in 0..=n {
                    if !f[n - k].is_zero() {
                        *slot = slot.add(&f[n - k].mul(&inv[k]));
                    }
                }
            }
            f = next;
        }
        let g = numerator_coefficients(max_degree / rank as u32, order, shifted, &inv);
        Ok(KernelSeries {
            rank,
            order,
            max_degree,
            f,
            g,
        })
    }

    /// `Q = (q|x|;q)_∞ / ∏_i (x_i;q)_∞^r`.
    pub fn q_kernel(rank: usize, max_degree: u32, order: usize) -> Result<Self> {
        Self::build(rank, max_degree, order, true)
    }

    /// `(|x|;q)_∞ / ∏_i (x_i;q)_∞^r`.
    pub fn lhs_kernel(rank: usize, max_degree: u32, order: usize) -> Result<Self> {
        Self::build(rank, max_degree, order, false)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Coefficient of `m_ξ`.
    pub fn m_coeff(&self, xi: &Partition) -> Result<QSeries> {
        if xi.len() != self.rank {
            return Err(Error::LengthMismatch {
                expected: self.rank,
                got: xi.len(),
            });
        }
        if xi.size() > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "kernel known through degree {}, asked for {xi}",
                self.max_degree
            )));
        }
        let mut acc = QSeries::zero_to(self.order);
        for k in 0..=xi.last() as usize {
            let prod = xi
                .parts()
                .iter()
                .fold(self.g[k].clone(), |acc, &a| acc.mul(&self.f[a as usize - k]));
            acc = acc.add(&prod);
        }
        Ok(acc)
    }

    /// Coefficient of `s_{λ,ℓ}`; zero for `ℓ < 0`.
    pub fn schur_coeff(&self, idx: &SchurIndex) -> Result<QSeries> {
        if idx.rank() != self.rank {
            return Err(Error::LengthMismatch {
                expected: self.rank,
                got: idx.rank(),
            });
        }
        if idx.ell < 0 {
            return Ok(QSeries::zero_to(self.order));
        }
        if idx.degree() > self.max_degree as i64 {
            return Err(Error::InvalidArgument(format!(
                "kernel known through degree {}, asked for s_{{{idx}}}",
                self.max_degree
            )));
        }
        let nu: Vec<u32> = idx.lambda.parts().iter().map(|&a| a + idx.ell as u32).collect();
        Ok(alternant_coefficient(&nu, |key| self.m_coeff(key).ok()).truncate(self.order))
    }

    /// The kernel through `x`-degree `max_degree` in the monomial basis.
    pub fn to_symmetric(&self) -> SymmetricFunction<QSeries> {
        let terms = partitions_up_to(self.rank, self.max_degree)
            .into_iter()
            .map(|xi| {
                let c = self.m_coeff(&xi).expect("in range");
                (xi, c)
            })
            .collect::<Vec<_>>();
        SymmetricFunction::from_terms(self.rank, 0, terms)
    }
}

/// `Q` through `x`-degree `max_degree` and `q^order`.
pub fn q_kernel(rank: usize, max_degree: u32, order: usize) -> Result<SymmetricFunction<QSeries>> {
    Ok(KernelSeries::q_kernel(rank, max_degree, order)?.to_symmetric())
}

/// `(|x|;q)_∞ / ∏_i (x_i;q)_∞^r` through `x`-degree `max_degree` and `q^order`.
pub fn lhs_kernel(rank: usize, max_degree: u32, order: usize) -> Result<SymmetricFunction<QSeries>> {
    Ok(KernelSeries::lhs_kernel(rank, max_degree, order)?.to_symmetric())
}

fn schur_index(lambda: &Partition, ell: i64, rank: usize) -> Result<SchurIndex> {
    if lambda.len() != rank {
        return Err(Error::LengthMismatch {
            expected: rank,
            got: lambda.len(),
        });
    }
    SchurIndex::new(lambda.clone(), ell)
}

/// `φ_{λ,ℓ} = (s_{λ,ℓ}, Q)` through `q^order`.
pub fn phi(lambda: &Partition, ell: i64, rank: usize, order: usize) -> Result<QSeries> {
    let idx = schur_index(lambda, ell, rank)?;
    if ell < 0 {
        return Ok(QSeries::zero_to(order));
    }
    KernelSeries::q_kernel(rank, idx.degree() as u32, order)?.schur_coeff(&idx)
}

/// `ψ_{λ,ℓ} = φ_{λ,ℓ} - φ_{λ,ℓ-1}`, with `φ_{λ,-1} = 0`.
pub fn psi(lambda: &Partition, ell: i64, rank: usize, order: usize) -> Result<QSeries> {
    Ok(phi(lambda, ell, rank, order)?.sub(&phi(lambda, ell - 1, rank, order)?))
}

/// `Σ c_m q^m = 1/(q;q)_∞^{r²-1}` through `q^order`.
pub fn c_coefficients(rank: usize, order: usize) -> QSeries {
    pochhammer_inf_inverse_pow(rank * rank - 1, order)
}
