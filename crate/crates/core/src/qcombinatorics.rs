//! Exact q-analog counting and the γ-approximations built on it.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// The constant bounding `[n k]_q / q^{k(n-k)}` from above, fixed at 3.48.
pub const GAMMA: f64 = 3.48;

/// [`GAMMA`] as an exact rational, `87/25`.
pub fn gamma_exact() -> BigRational {
    BigRational::new(87.into(), 25.into())
}

pub fn log2_gamma() -> f64 {
    GAMMA.log2()
}

fn pow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// Gaussian binomial coefficient `[n k]_q`, exactly.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // after this step acc = [n i+1]_q, so the division is exact
        acc *= pow(q, n - i) - 1u32;
        acc /= pow(q, i + 1) - 1u32;
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBounds {
    /// `q^{k(n-k)}`.
    pub lower: BigUint,
    /// `log2(γ q^{k(n-k)})`.
    pub upper_log2: f64,
}

/// The sandwich `q^{k(n-k)} <= [n k]_q < γ q^{k(n-k)}`.
pub fn gaussian_bounds(n: u64, k: u64, q: u64) -> GaussianBounds {
    assert!(k <= n, "k must not exceed n");
    let e = k * (n - k);
    GaussianBounds {
        lower: pow(q, e),
        upper_log2: log2_gamma() + e as f64 * (q as f64).log2(),
    }
}

/// Number of `m x n` matrices over `GF(q)` of rank exactly `s`.
pub fn count_matrices_of_rank(m: u64, n: u64, s: u64, q: u64) -> BigUint {
    if s > m.min(n) {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..s {
        let qj = pow(q, j);
        num *= (pow(q, m) - &qj) * (pow(q, n) - &qj);
        den *= pow(q, s) - qj;
    }
    num / den
}

/// `log2(γ q^{(m+n)s - s^2})`, an upper bound on the log of
/// [`count_matrices_of_rank`].
pub fn count_matrices_of_rank_bound_log2(m: u64, n: u64, s: u64, q: u64) -> f64 {
    let e = (m + n) * s - s * s;
    log2_gamma() + e as f64 * (q as f64).log2()
}

/// Ordinary binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `log2` of a big integer, accurate to double precision; `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return x
            .to_u64()
            .expect("fits in 64 bits")
            .to_f64()
            .unwrap()
            .log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("fits in 64 bits");
    (top as f64).log2() + shift as f64
}

/// `log2(a / b)` for positive big integers.
pub fn log2_ratio(a: &BigUint, b: &BigUint) -> f64 {
    log2_big(a) - log2_big(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn small_gaussian_values() {
        assert_eq!(gaussian_binomial(2, 1, 2), big(3));
        assert_eq!(gaussian_binomial(7, 0, 5), big(1));
        assert_eq!(gaussian_binomial(4, 2, 2), big(35));
        assert_eq!(gaussian_binomial(3, 1, 3), big(13));
        assert_eq!(gaussian_binomial(2, 3, 2), big(0));
    }

    #[test]
    fn bounds_examples() {
        let b = gaussian_bounds(4, 2, 2);
        assert_eq!(b.lower, big(16));
        assert!((b.upper_log2.exp2() - 55.68).abs() < 1e-9);
        let b = gaussian_bounds(3, 1, 3);
        assert_eq!(b.lower, big(9));
        assert!((b.upper_log2.exp2() - 31.32).abs() < 1e-9);
    }

    #[test]
    fn rank_counts() {
        assert_eq!(count_matrices_of_rank(2, 2, 2, 2), big(6));
        assert_eq!(count_matrices_of_rank(3, 5, 0, 7), big(1));
        let total: BigUint = (0..=2).map(|s| count_matrices_of_rank(2, 3, s, 2)).sum();
        assert_eq!(total, big(64));
    }

    #[test]
    fn invertible_2x2_by_enumeration() {
        let mut n = 0;
        for bits in 0u32..16 {
            let (a, b, c, d) = (bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1);
            if (a * d + b * c) % 2 == 1 {
                n += 1;
            }
        }
        assert_eq!(big(n), count_matrices_of_rank(2, 2, 2, 2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(2, 3), big(0));
        assert_eq!(binomial(20, 3), big(1140));
    }

    #[test]
    fn log2_of_large_values() {
        assert_eq!(log2_big(&big(1)), 0.0);
        assert_eq!(log2_big(&(BigUint::one() << 200u32)), 200.0);
        let x = pow(3, 100);
        assert!((log2_big(&x) - 100.0 * 3f64.log2()).abs() < 1e-9);
    }
}
