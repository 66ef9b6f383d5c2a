//! Closed-form totals of the connector statistics over all words of a given
//! length, and the alternating floor sums used to derive them.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::word::ConnectorKind;

/// `(k - 1)(n - 1) k^(n - 2)`, and 0 when `n <= 1`.
pub fn kcon_total(n: usize, k: u32) -> BigUint {
    assert!(k >= 1, "alphabet size must be positive");
    if n <= 1 {
        return BigUint::zero();
    }
    BigUint::from(k - 1) * BigUint::from(n - 1) * BigUint::from(k).pow(n - 2)
}

/// `(k + 1)(n - 1) k^(n - 1) / 2` for even `k`, `floor((k + 1) / 2)(n - 1) k^(n - 1)`
/// for odd `k`; 0 when `n <= 1`.
pub fn gkcon_total(n: usize, k: u32) -> BigUint {
    assert!(k >= 1, "alphabet size must be positive");
    if n <= 1 {
        return BigUint::zero();
    }
    let rest = BigUint::from(n - 1) * BigUint::from(k).pow(n - 1);
    if k % 2 == 0 {
        let (half, r) = (BigUint::from(k + 1) * rest).div_rem(&BigUint::from(2u32));
        assert!(r.is_zero(), "k^(n-1) is even for even k");
        half
    } else {
        BigUint::from((k + 1) / 2) * rest
    }
}

pub fn total(n: usize, k: u32, kind: ConnectorKind) -> BigUint {
    match kind {
        ConnectorKind::SumEquals => kcon_total(n, k),
        ConnectorKind::SumGreater => gkcon_total(n, k),
    }
}

/// `(sum_{j=1..k-1} (-1)^(j-1) floor((j+1)/2), sum_{j=1..k-1} (-1)^j floor((j+1)/2))`.
///
/// For even `k` the first equals `k / 2`; for odd `k` the second is 0.
pub fn floor_sum_identity(k: u32) -> (i64, i64) {
    assert!(k >= 1, "alphabet size must be positive");
    let mut first = 0i64;
    for j in 1..i64::from(k) {
        let term = (j + 1) / 2;
        first += if (j - 1) % 2 == 0 { term } else { -term };
    }
    // The second sum is the first with every sign flipped.
    (first, -first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kcon_values() {
        assert_eq!(kcon_total(3, 2), BigUint::from(4u32));
        assert_eq!(kcon_total(4, 3), BigUint::from(54u32));
        assert_eq!(kcon_total(3, 3), BigUint::from(12u32));
        for k in 1..6 {
            assert!(kcon_total(1, k).is_zero());
            assert!(kcon_total(0, k).is_zero());
        }
        assert!(kcon_total(10, 1).is_zero());
    }

    #[test]
    fn gkcon_values() {
        assert_eq!(gkcon_total(2, 2), BigUint::from(3u32));
        assert_eq!(gkcon_total(2, 3), BigUint::from(6u32));
        assert!(gkcon_total(0, 5).is_zero());
        assert_eq!(gkcon_total(4, 1), BigUint::from(3u32));
    }

    #[test]
    fn no_overflow() {
        // 9 * 99 * 10^98 does not fit in any machine integer.
        let t = kcon_total(100, 10);
        assert_eq!(t.to_string(), format!("891{}", "0".repeat(98)));
    }

    #[test]
    fn floor_sums() {
        assert_eq!(floor_sum_identity(4), (2, -2));
        assert_eq!(floor_sum_identity(5).1, 0);
        assert_eq!(floor_sum_identity(1), (0, 0));
    }
}
