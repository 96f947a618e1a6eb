use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Poly, QSeries};

/// `(q^k; q)_m = ∏_{i=0}^{m-1} (1 - q^{k+i})`.
pub fn pochhammer_finite(k: usize, m: usize) -> Poly {
    (0..m).fold(Poly::one(), |acc, i| acc * Poly::one_minus_q_pow(k + i))
}

/// `1/(q;q)_∞^k` through `q^order`.
pub fn pochhammer_inf_inverse_pow(k: usize, order: usize) -> QSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for i in 1..=order {
        for _ in 0..k {
            // divide by (1 - q^i)
            for j in i..=order {
                let prev = c[j - i].clone();
                c[j] += prev;
            }
        }
    }
    QSeries::new(order, c.into_iter().map(BigRational::from_integer).collect())
}

/// Gaussian binomial `[n choose k]_q`; zero outside `0 ≤ k ≤ n`.
pub fn q_binomial(n: usize, k: usize) -> Poly {
    if k > n {
        return Poly::zero();
    }
    // Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k]
    let mut row: Vec<Poly> = vec![Poly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let left = if j >= 1 { row[j - 1].clone() } else { Poly::zero() };
            let right = if j < m { row[j].shift(j) } else { Poly::zero() };
            next.push(left + right);
        }
        row = next;
    }
    row[k].clone()
}

/// `(q;q)_n / ∏ (q;q)_{a_i}` with `n = Σ a_i`.
pub fn q_multinomial(parts: &[usize]) -> Poly {
    let mut total = 0;
    let mut acc = Poly::one();
    for &a in parts {
        total += a;
        acc = acc * q_binomial(total, a);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_examples() {
        assert_eq!(pochhammer_finite(1, 2), Poly::from_i64s(&[1, -1, -1, 1]));
        assert_eq!(pochhammer_finite(1, 0), Poly::one());
        assert_eq!(pochhammer_finite(2, 1), Poly::from_i64s(&[1, 0, -1]));
    }

    /// Truncated product of the factor expansions (1 - q^i)^{-k}, each expanded
    /// by the binomial series.
    fn inverse_pow_oracle(k: i64, order: usize) -> Vec<i64> {
        let mut acc = vec![0i64; order + 1];
        acc[0] = 1;
        for i in 1..=order {
            // (1 - q^i)^{-k} = Σ_j C(k + j - 1, j) q^{ij}
            let mut factor = vec![0i64; order + 1];
            let mut binom = 1i64;
            let mut j = 0usize;
            while i * j <= order {
                factor[i * j] = binom;
                j += 1;
                binom = binom * (k + j as i64 - 1) / j as i64;
            }
            let mut next = vec![0i64; order + 1];
            for a in 0..=order {
                for b in 0..=order - a {
                    next[a + b] += acc[a] * factor[b];
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn inverse_power_examples() {
        let oracle = inverse_pow_oracle(3, 3);
        assert_eq!(oracle, vec![1, 3, 9, 22]);
        assert_eq!(pochhammer_inf_inverse_pow(3, 3), QSeries::from_ints(3, &oracle));
        assert_eq!(
            pochhammer_inf_inverse_pow(1, 5),
            QSeries::from_ints(5, &[1, 1, 2, 3, 5, 7])
        );
        assert_eq!(pochhammer_inf_inverse_pow(0, 7), QSeries::from_ints(7, &[1]));
        assert_eq!(
            pochhammer_inf_inverse_pow(8, 6),
            QSeries::from_ints(6, &inverse_pow_oracle(8, 6))
        );
    }

    #[test]
    fn q_binomials() {
        assert_eq!(q_binomial(3, 1), Poly::from_i64s(&[1, 1, 1]));
        assert_eq!(q_binomial(4, 2), Poly::from_i64s(&[1, 1, 2, 1, 1]));
        assert_eq!(q_multinomial(&[1, 1, 1]), Poly::from_i64s(&[1, 2, 2, 1]));
    }
}
