//! Domination of a non-spherical triple by a Euclidean one.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DominateError {
    #[error("expected 2 <= k <= l <= m, got ({0}, {1}, {2})")]
    NotOrdered(usize, usize, usize),
    #[error("({0}, {1}, {2}) is spherical: 1/k + 1/l + 1/m > 1")]
    NotNonSpherical(usize, usize, usize),
}

/// Returns a Euclidean triple `(k', l', m')` with `k' ≤ k`, `l' ≤ l`,
/// `m' ≤ m`:
/// `k ≥ 3` gives `(3,3,3)`; `k = 2, l ≥ 4` gives `(2,4,4)`; otherwise
/// `k = 2, l = 3, m ≥ 6` gives `(2,3,6)`.
pub fn dominate(k: usize, l: usize, m: usize) -> Result<(usize, usize, usize), DominateError> {
    if k < 2 || k > l || l > m {
        return Err(DominateError::NotOrdered(k, l, m));
    }
    // 1/k + 1/l + 1/m <= 1  <=>  lm + km + kl <= klm
    let (k2, l2, m2) = (k as u128, l as u128, m as u128);
    if l2 * m2 + k2 * m2 + k2 * l2 > k2 * l2 * m2 {
        return Err(DominateError::NotNonSpherical(k, l, m));
    }
    Ok(if k >= 3 {
        (3, 3, 3)
    } else if l >= 4 {
        (2, 4, 4)
    } else {
        (2, 3, 6)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cases() {
        assert_eq!(dominate(4, 5, 6), Ok((3, 3, 3)));
        assert_eq!(dominate(2, 4, 7), Ok((2, 4, 4)));
        assert_eq!(dominate(2, 3, 6), Ok((2, 3, 6)));
        assert_eq!(dominate(2, 3, 5), Err(DominateError::NotNonSpherical(2, 3, 5)));
        assert_eq!(dominate(3, 2, 6), Err(DominateError::NotOrdered(3, 2, 6)));
    }
}
