//! Binomial and Catalan identities behind the nonvanishing of the leading
//! `W_k` coordinate, checked in exact integer arithmetic.
//!
//! Binomials follow the zero-extension convention: `C(n, m) = 0` unless
//! `0 <= m <= n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest weight for which compositions are enumerated.
pub const COMPOSITION_LIMIT: u32 = 24;

pub fn binomial(n: i64, m: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::invalid(format!("binomial C({n}, {m}) needs n >= 0")));
    }
    Ok(binomial_nonneg(n as u64, m))
}

fn binomial_nonneg(n: u64, m: i64) -> BigInt {
    if m < 0 || m as u64 > n {
        return BigInt::zero();
    }
    let m = (m as u64).min(n - m as u64);
    let mut acc = BigInt::one();
    for i in 1..=m {
        acc = acc * BigInt::from(n - m + i) / BigInt::from(i);
    }
    acc
}

/// `C(a, b)` for arbitrary integers, zero when `a < 0`.
fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 {
        BigInt::zero()
    } else {
        binomial_nonneg(a as u64, b)
    }
}

fn sign(even: bool) -> BigInt {
    if even {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `C_i = C(2i, i) / (i + 1)`.
pub fn catalan(i: u32) -> BigInt {
    let (q, r) = binomial_nonneg(2 * i as u64, i as i64).div_rem(&BigInt::from(i + 1));
    debug_assert!(r.is_zero());
    q
}

/// `sum_{i=0}^{s} (-1)^i C_i C(i + 1, s - i)`.
pub fn catalan_alternating_sum(s: u32) -> BigInt {
    (0..=s)
        .map(|i| sign(i % 2 == 0) * catalan(i) * binom(i as i64 + 1, s as i64 - i as i64))
        .sum()
}

/// `C(n + s + 1, m - s) = sum_{j >= s} C(s + 1, j - s) C(n, m - j)`; the sum
/// stops at `j = 2s + 1`.
pub fn binom_convolution_check(n: u32, m: u32, s: u32) -> bool {
    let (n, m, s) = (n as i64, m as i64, s as i64);
    let lhs = binom(n + s + 1, m - s);
    let rhs: BigInt = (s..=2 * s + 1)
        .map(|j| binom(s + 1, j - s) * binom(n, m - j))
        .sum();
    lhs == rhs
}

/// `C(n, m) = sum_{j=0}^{s} (-1)^j C_j C(n + j + 1, m - j)
///   - sum_{j=s+1}^{2s+1} (sum_{i=0}^{s} (-1)^i C_i C(i + 1, j - i)) C(n, m - j)`.
pub fn expression_via_b_check(n: u32, m: u32, s: u32) -> bool {
    let (n, m, s) = (n as i64, m as i64, s as i64);
    let catalans: Vec<BigInt> = (0..=s as u32).map(catalan).collect();
    let first: BigInt = (0..=s)
        .map(|j| sign(j % 2 == 0) * &catalans[j as usize] * binom(n + j + 1, m - j))
        .sum();
    let second: BigInt = (s + 1..=2 * s + 1)
        .map(|j| {
            let b: BigInt = (0..=s)
                .map(|i| sign(i % 2 == 0) * &catalans[i as usize] * binom(i + 1, j - i))
                .sum();
            b * binom(n, m - j)
        })
        .sum();
    binom(n, m) == first - second
}

/// An ordered sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("composition parts must be positive"));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// All compositions of `weight`, via the bit mask of cut positions (bit `i`
/// set means a cut after the `(i + 1)`-th unit). `weight = 0` yields the
/// empty composition.
pub fn compositions(weight: u32) -> impl Iterator<Item = Composition> {
    let masks = if weight == 0 { 1u64 } else { 1u64 << (weight - 1) };
    (0..masks).map(move |mask| {
        let mut parts = Vec::new();
        let mut run = 0;
        for i in 0..weight {
            run += 1;
            if i + 1 == weight || mask >> i & 1 == 1 {
                parts.push(run);
                run = 0;
            }
        }
        Composition { parts }
    })
}

fn check_composition_weight(l: u32) -> Result<()> {
    if l > COMPOSITION_LIMIT {
        return Err(Error::EnumerationLimit {
            nvars: l as usize,
            limit: COMPOSITION_LIMIT as usize,
        });
    }
    Ok(())
}

/// `sum (-1)^t C(l - m_1, m_1 - 1) C(l - m_2, m_2) ... C(l - m_t, m_t)` over
/// compositions `(m_1, ..., m_t)` of `l`.
pub fn composition_sum(l: u32) -> Result<BigInt> {
    if l == 0 {
        return Err(Error::invalid("composition_sum needs l >= 1"));
    }
    check_composition_weight(l)?;
    let li = l as i64;
    Ok(compositions(l)
        .map(|c| {
            let p = c.parts();
            let mut term = sign(p.len() % 2 == 0) * binom(li - p[0] as i64, p[0] as i64 - 1);
            for &m in &p[1..] {
                if term.is_zero() {
                    break;
                }
                term *= binom(li - m as i64, m as i64);
            }
            term
        })
        .sum())
}

/// `(-1)^l C_{l-1}`, the closed form of [`composition_sum`].
pub fn composition_sum_closed_form(l: u32) -> BigInt {
    sign(l.is_multiple_of(2)) * catalan(l - 1)
}

/// Whether `sum (-1)^t C(l - m_1, m_1) ... C(l - m_t, m_t)` over `m_1 >= 0`,
/// `m_2, ..., m_t > 0` with `m_1 + ... + m_t = l - j - 1` vanishes.
pub fn cancellation_check(l: u32, j: u32) -> Result<bool> {
    if l == 0 || j + 2 > l {
        return Err(Error::invalid(format!("cancellation_check needs 0 <= j <= l - 2 (got l={l}, j={j})")));
    }
    let total = l - j - 1;
    check_composition_weight(total)?;
    let li = l as i64;
    let mut sum = BigInt::zero();
    for m1 in 0..=total {
        for rest in compositions(total - m1) {
            let t = 1 + rest.len();
            let mut term = sign(t % 2 == 0) * binom(li - m1 as i64, m1 as i64);
            for &m in rest.parts() {
                term *= binom(li - m as i64, m as i64);
            }
            sum += term;
        }
    }
    Ok(sum.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pascal(n: i64, m: i64) -> i64 {
        if m < 0 || m > n {
            return 0;
        }
        if m == 0 || m == n {
            return 1;
        }
        pascal(n - 1, m - 1) + pascal(n - 1, m)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2).unwrap(), b(10));
        assert_eq!(binomial(3, -1).unwrap(), b(0));
        assert_eq!(binomial(3, 4).unwrap(), b(0));
        assert_eq!(binomial(0, 0).unwrap(), b(1));
        assert!(binomial(-1, 0).is_err());
        for n in 0..14 {
            for m in -2..16 {
                assert_eq!(binomial(n, m).unwrap(), b(pascal(n, m)));
            }
        }
    }

    #[test]
    fn catalan_values_and_recurrence() {
        let first: Vec<BigInt> = (0..5).map(catalan).collect();
        assert_eq!(first, vec![b(1), b(1), b(2), b(5), b(14)]);
        for i in 1..=30u32 {
            assert_eq!(catalan(i) * (i + 1), catalan(i - 1) * 2 * (2 * i - 1));
        }
    }

    #[test]
    fn alternating_sum_examples() {
        assert_eq!(catalan_alternating_sum(0), b(1));
        assert_eq!(catalan_alternating_sum(1), b(0));
        assert_eq!(catalan_alternating_sum(2), b(0));
    }

    #[test]
    fn convolution_examples() {
        assert!(binom_convolution_check(3, 2, 0));
        assert!(binom_convolution_check(5, 0, 2));
        assert!(expression_via_b_check(4, 3, 1));
    }

    #[test]
    fn compositions_enumerate_all() {
        for w in 0..=10u32 {
            let all: Vec<_> = compositions(w).collect();
            assert_eq!(all.len(), if w == 0 { 1 } else { 1 << (w - 1) });
            assert!(all.iter().all(|c| c.weight() == w));
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
        let three: Vec<Vec<u32>> = compositions(3).map(|c| c.parts().to_vec()).collect();
        assert_eq!(three, vec![vec![3], vec![1, 2], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn composition_sum_examples() {
        assert_eq!(composition_sum(1).unwrap(), b(-1));
        assert_eq!(composition_sum(2).unwrap(), b(1));
        assert_eq!(composition_sum(5).unwrap(), b(-14));
        assert!(composition_sum(25).is_err());
    }

    #[test]
    fn cancellation_examples() {
        assert!(cancellation_check(2, 0).unwrap());
        assert!(cancellation_check(5, 1).unwrap());
        assert!(cancellation_check(3, 2).is_err());
    }
}
