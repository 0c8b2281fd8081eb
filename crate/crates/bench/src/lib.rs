//! Shared inputs for the criterion benches.

use symbias::symdist::max_valid_lambda;
use symbias::{LevelProfile, SymmetricDist, SymmetricTest};

/// The single-level profile at level `2k` with the largest valid bias.
pub fn extremal_profile(n: usize, k: usize) -> LevelProfile {
    let lambda = max_valid_lambda(n, 2 * k).unwrap().unwrap();
    SymmetricDist::d_lambda(n, k, lambda).unwrap().profile().clone()
}

/// Threshold at the center of the grid, with the parity of `n`.
pub fn central_threshold(n: usize) -> SymmetricTest {
    SymmetricTest::threshold(n, (n % 2) as i64).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(extremal_profile(16, 2).n(), 16);
        assert_eq!(central_threshold(9).n(), 9);
    }
}
