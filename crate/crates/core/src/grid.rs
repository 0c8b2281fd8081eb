//! The weight-sum grid `t ∈ {-n, -n+2, ..., n}`.
//!
//! Index `i` counts the `+1` coordinates, so `t = 2i - n`. A `{0,1}` string of
//! Hamming weight `w` (ones map to `-1`) sits at `t = n - 2w`, i.e. `i = n - w`.

use crate::error::{Error, Result};

#[inline]
pub fn weight_sum(n: usize, i: usize) -> i64 {
    2 * i as i64 - n as i64
}

pub fn index(n: usize, t: i64) -> Result<usize> {
    let n_i = n as i64;
    if t < -n_i || t > n_i {
        return Err(Error::OutOfRange { what: "t", value: t, n });
    }
    if (t + n_i) % 2 != 0 {
        return Err(Error::ParityMismatch { n, t });
    }
    Ok(((t + n_i) / 2) as usize)
}

pub fn from_hamming(n: usize, w: usize) -> Result<i64> {
    if w > n {
        return Err(Error::OutOfRange { what: "w", value: w as i64, n });
    }
    Ok(n as i64 - 2 * w as i64)
}

pub fn to_hamming(n: usize, t: i64) -> Result<usize> {
    Ok(n - index(n, t)?)
}

pub fn weight_sums(n: usize) -> impl DoubleEndedIterator<Item = i64> + Clone {
    (0..n + 1).map(move |i| weight_sum(n, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        assert_eq!(weight_sum(4, 0), -4);
        assert_eq!(index(4, 0).unwrap(), 2);
        assert_eq!(from_hamming(5, 0).unwrap(), 5);
        assert_eq!(to_hamming(5, -5).unwrap(), 5);
        assert!(matches!(index(4, 1), Err(Error::ParityMismatch { .. })));
        assert!(matches!(index(4, 6), Err(Error::OutOfRange { .. })));
        assert_eq!(weight_sums(3).collect::<Vec<_>>(), vec![-3, -1, 1, 3]);
    }
}
