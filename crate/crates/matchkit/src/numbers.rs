//! Exact big-integer combinatorial primitives.

use num::{BigInt, BigRational, BigUint, One, Zero};

/// binom(n, k); zero when k is negative or exceeds n.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from((n as u64) - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// (2n-1)!! — the number of matchings of [2n].
pub fn double_factorial_odd(n: u64) -> BigUint {
    (0..n).fold(BigUint::one(), |acc, i| acc * BigUint::from(2 * i + 1))
}

/// C_n = binom(2n, n) / (n + 1).
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n as i64, n as i64) / BigUint::from(n + 1)
}

/// Fibonacci with phi_1 = phi_2 = 1.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

pub fn rational_from_biguint(u: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(u.clone()))
}

pub fn rational_from_i64(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Converts a nonnegative integral rational back to a BigUint; panics
/// otherwise, which only happens on an internal arithmetic bug.
pub fn biguint_from_rational(r: &BigRational) -> BigUint {
    assert!(r.is_integer(), "expected an integer, got {r}");
    r.to_integer()
        .to_biguint()
        .unwrap_or_else(|| panic!("expected a nonnegative integer, got {r}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), BigUint::from(70u32));
        assert_eq!(binomial(3, 0), BigUint::from(1u32));
        assert_eq!(binomial(1, -1), BigUint::zero());
        assert_eq!(binomial(2, 5), BigUint::zero());
    }

    #[test]
    fn catalans() {
        let first: Vec<u64> = (0..6).map(|n| catalan(n).to_string().parse().unwrap()).collect();
        assert_eq!(first, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(2), BigUint::from(3u32));
        assert_eq!(double_factorial_odd(3), BigUint::from(15u32));
        assert_eq!(double_factorial_odd(0), BigUint::from(1u32));
    }

    #[test]
    fn fibonaccis() {
        let first: Vec<u64> = (1..=8).map(|n| fibonacci(n).to_string().parse().unwrap()).collect();
        assert_eq!(first, vec![1, 1, 2, 3, 5, 8, 13, 21]);
    }
}
