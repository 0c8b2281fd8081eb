//! Shifted Krawtchouk polynomials `K̄(ℓ, t) = Σ_{|S|=ℓ} z^S` for any
//! `z ∈ {-1,1}^n` with coordinate sum `t`, stored as exact integers, together
//! with certified checks of the upper, lower and entropy bounds on them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::arith::{self, binary_entropy, binomial_row, log2_abs};
use crate::error::{Error, Result};
use crate::grid;
use crate::Rational;

/// Default cap on the cube dimension.
pub const DEFAULT_MAX_N: usize = 256;

/// Dense table of `K̄(ℓ, t)` for one `n`, row `ℓ`, column index `i` with `t = 2i - n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawtchoukTable {
    n: usize,
    values: Vec<BigInt>,
    binomials: Vec<BigInt>,
}

/// Both sides of an exact bound comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

/// Result of the entropy-type upper bounds, evaluated in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyCheck {
    /// `log2 |K̄(ℓ,t)|`, `-inf` when the value is zero.
    pub log2_value: f64,
    /// `(n/2)(1 + H(β) - H(α))`.
    pub entropy_rhs: f64,
    /// `(n/2)(H(β) + t²/n²)`.
    pub relaxed_rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub relaxed_holds: bool,
}

impl KrawtchoukTable {
    /// Builds the table from the generating function
    /// `(1+z)^{(n+t)/2} (1-z)^{(n-t)/2} = Σ_ℓ K̄(ℓ,t) z^ℓ`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_MAX_N)
    }

    pub fn with_cap(n: usize, max_n: usize) -> Result<Self> {
        check_dimension(n, max_n)?;
        let width = n + 1;
        let mut values = vec![BigInt::zero(); width * width];
        let binomials = binomial_row(n);

        // Column i = 0 is (1-z)^n. Each next column multiplies by (1+z)/(1-z).
        let mut column: Vec<BigInt> =
            binomials.iter().enumerate().map(|(l, c)| if l % 2 == 0 { c.clone() } else { -c }).collect();
        for i in 0..width {
            for l in 0..width {
                values[l * width + i] = column[l].clone();
            }
            if i == n {
                break;
            }
            // times (1+z); degree stays n because the quotient below is exact
            let mut raised = vec![BigInt::zero(); width + 1];
            for l in 0..width {
                raised[l] += &column[l];
                raised[l + 1] += &column[l];
            }
            // divided by (1-z): q_l = p_l + q_{l-1}
            let mut acc = BigInt::zero();
            for l in 0..width {
                acc += &raised[l];
                column[l] = acc.clone();
            }
            debug_assert!((acc + &raised[width]).is_zero());
        }
        Ok(KrawtchoukTable { n, values, binomials })
    }

    /// Builds the table from the three-term recurrence
    /// `(ℓ+1) K̄(ℓ+1,t) = t K̄(ℓ,t) - (n-ℓ+1) K̄(ℓ-1,t)`.
    pub fn from_recurrence(n: usize) -> Result<Self> {
        check_dimension(n, DEFAULT_MAX_N)?;
        let width = n + 1;
        let mut values = vec![BigInt::zero(); width * width];
        for i in 0..width {
            let t = BigInt::from(grid::weight_sum(n, i));
            let mut prev = BigInt::one();
            let mut cur = t.clone();
            values[i] = prev.clone();
            if n >= 1 {
                values[width + i] = cur.clone();
            }
            for l in 1..n {
                let next = (&t * &cur - BigInt::from(n - l + 1) * &prev) / BigInt::from(l + 1);
                values[(l + 1) * width + i] = next.clone();
                prev = cur;
                cur = next;
            }
        }
        Ok(KrawtchoukTable { n, values, binomials: binomial_row(n) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K̄(ℓ, t)` by grid index (`t = 2i - n`). Panics when out of range.
    #[inline]
    pub fn at(&self, ell: usize, i: usize) -> &BigInt {
        &self.values[ell * (self.n + 1) + i]
    }

    /// `K̄(ℓ, t)` by weight-sum.
    pub fn get(&self, ell: usize, t: i64) -> Result<&BigInt> {
        self.check_level(ell)?;
        let i = grid::index(self.n, t)?;
        Ok(self.at(ell, i))
    }

    /// Row `ℓ` as a slice over the grid.
    pub fn row(&self, ell: usize) -> &[BigInt] {
        let w = self.n + 1;
        &self.values[ell * w..(ell + 1) * w]
    }

    /// `C(n, ℓ)`.
    pub fn binomial(&self, ell: usize) -> &BigInt {
        &self.binomials[ell]
    }

    pub fn binomials(&self) -> &[BigInt] {
        &self.binomials
    }

    /// Standard Krawtchouk polynomial `K(ℓ, w) = K̄(ℓ, n - 2w)` in Hamming weight.
    pub fn eval_standard(&self, ell: usize, w: usize) -> Result<&BigInt> {
        self.check_level(ell)?;
        let t = grid::from_hamming(self.n, w)?;
        self.get(ell, t)
    }

    /// `K̄(ℓ,t)² ≤ C(n,ℓ)² (ℓ/n + t²/n²)^ℓ`, compared exactly.
    pub fn check_upper_bound(&self, ell: usize, t: i64) -> Result<BoundCertificate> {
        if ell == 0 {
            return Err(Error::OutOfRange { what: "ell", value: 0, n: self.n });
        }
        let value = self.get(ell, t)?;
        let n = self.n as i64;
        let base = Rational::new(BigInt::from(ell as i64 * n + t * t), BigInt::from(n * n));
        let c = Rational::from_integer(self.binomial(ell).clone());
        let rhs = &c * &c * arith::pow(&base, ell);
        let lhs = Rational::from_integer(value * value);
        let holds = lhs <= rhs;
        Ok(BoundCertificate { lhs, rhs, holds })
    }

    /// `K̄(ℓ,t) (2n)^ℓ ≥ C(n,ℓ) t^ℓ` for `2ℓ ≤ n`, `t ≥ 0`, `t² ≥ 4ℓ(n-ℓ)`.
    ///
    /// Returns [`Error::Precondition`] outside that range. Above `n/2` the
    /// inequality can fail (`n = 2, ℓ = 2, t = 0` gives `-1 < 0`).
    pub fn check_lower_bound(&self, ell: usize, t: i64) -> Result<BoundCertificate> {
        let value = self.get(ell, t)?;
        let n = self.n as i64;
        let l = ell as i64;
        if 2 * l > n || t < 0 || t * t < 4 * l * (n - l) {
            return Err(Error::Precondition(format!(
                "lower bound needs 2*ell <= n, t >= 0 and t^2 >= 4*ell*(n-ell); got n={n}, ell={ell}, t={t}"
            )));
        }
        let lhs = value * Pow::pow(BigInt::from(2 * n), ell);
        let rhs = self.binomial(ell) * Pow::pow(BigInt::from(t), ell);
        let holds = lhs >= rhs;
        Ok(BoundCertificate { lhs: Rational::from_integer(lhs), rhs: Rational::from_integer(rhs), holds })
    }

    /// `log2 |K̄(ℓ,t)| ≤ (n/2)(1 + H(β) - H(α)) + slack` with `β = ℓ/n`,
    /// `α = (n - t)/(2n)`, plus the relaxation `(n/2)(H(β) + t²/n²)`.
    pub fn check_entropy_bound(&self, ell: usize, t: i64, slack: f64) -> Result<EntropyCheck> {
        let value = self.get(ell, t)?;
        let n = self.n as f64;
        if ell == 0 || ell >= self.n || t.unsigned_abs() as usize >= self.n {
            return Err(Error::Precondition(format!(
                "entropy bound needs 0 < ell < n and |t| < n; got n={}, ell={ell}, t={t}",
                self.n
            )));
        }
        let beta = ell as f64 / n;
        let alpha = (n - t as f64) / (2.0 * n);
        let log2_value = log2_abs(value);
        let entropy_rhs = n / 2.0 * (1.0 + binary_entropy(beta) - binary_entropy(alpha));
        let tf = t as f64;
        let relaxed_rhs = n / 2.0 * (binary_entropy(beta) + tf * tf / (n * n));
        let vacuous = value.is_zero();
        Ok(EntropyCheck {
            log2_value,
            entropy_rhs,
            relaxed_rhs,
            slack,
            holds: vacuous || log2_value <= entropy_rhs + slack,
            relaxed_holds: vacuous || log2_value <= relaxed_rhs + slack,
        })
    }

    /// `C(n,w) K(ℓ,w) = C(n,ℓ) K(w,ℓ)` in standard (Hamming-weight) form.
    pub fn check_reciprocity(&self, ell: usize, w: usize) -> Result<bool> {
        let left = self.binomial(w) * self.eval_standard(ell, w)?;
        let right = self.binomial(ell) * self.eval_standard(w, ell)?;
        Ok(left == right)
    }

    /// One step of the ratio lower bound in standard form:
    /// `K(i,ℓ+1)·2n > K(i,ℓ)·(n-2i)` whenever `(n-2i)² ≥ 4ℓ(n-ℓ)`, `n > 2i`
    /// and `K(i,ℓ) > 0`. `None` when the hypotheses do not apply.
    pub fn check_ratio_step(&self, i: usize, ell: usize) -> Option<bool> {
        let n = self.n as i64;
        let gap = n - 2 * i as i64;
        let l = ell as i64;
        if i > self.n || ell >= self.n || gap <= 0 || gap * gap < 4 * l * (n - l) {
            return None;
        }
        let here = self.eval_standard(i, ell).ok()?;
        if !here.is_positive() {
            return None;
        }
        let next = self.eval_standard(i, ell + 1).ok()?;
        Some(next * BigInt::from(2 * n) > here * BigInt::from(gap))
    }

    fn check_level(&self, ell: usize) -> Result<()> {
        if ell > self.n {
            return Err(Error::OutOfRange { what: "ell", value: ell as i64, n: self.n });
        }
        Ok(())
    }
}

fn check_dimension(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n > max_n {
        return Err(Error::DimensionTooLarge { n, max: max_n });
    }
    Ok(())
}

/// Shared, lazily built table for `n` (capped at [`DEFAULT_MAX_N`]).
pub fn table(n: usize) -> Result<Arc<KrawtchoukTable>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<KrawtchoukTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Ok(Arc::clone(t));
    }
    let built = Arc::new(KrawtchoukTable::new(n)?);
    let mut guard = cache.lock().unwrap();
    Ok(Arc::clone(guard.entry(n).or_insert(built)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_values() {
        let t6 = KrawtchoukTable::new(6).unwrap();
        assert_eq!(*t6.get(2, 6).unwrap(), big(15));
        let t4 = KrawtchoukTable::new(4).unwrap();
        assert_eq!(*t4.get(2, 0).unwrap(), big(-2));
        let row: Vec<_> = t4.row(2).to_vec();
        assert_eq!(row, vec![big(6), big(0), big(-2), big(0), big(6)]);
        assert_eq!(*t4.eval_standard(2, 2).unwrap(), big(-2));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(KrawtchoukTable::new(0), Err(Error::ZeroDimension));
        assert!(matches!(KrawtchoukTable::with_cap(300, 256), Err(Error::DimensionTooLarge { .. })));
        let t = KrawtchoukTable::new(4).unwrap();
        assert!(t.get(5, 0).is_err());
        assert!(matches!(t.get(1, 1), Err(Error::ParityMismatch { .. })));
        assert!(t.eval_standard(1, 5).is_err());
    }

    #[test]
    fn structural_invariants() {
        for n in 1..=20 {
            let tab = KrawtchoukTable::new(n).unwrap();
            for t in grid::weight_sums(n) {
                assert_eq!(*tab.get(0, t).unwrap(), BigInt::one());
                assert_eq!(*tab.get(1, t).unwrap(), big(t));
                for l in 0..=n {
                    let sign = if l % 2 == 0 { big(1) } else { big(-1) };
                    assert_eq!(*tab.get(l, -t).unwrap(), sign * tab.get(l, t).unwrap());
                }
            }
            for l in 0..=n {
                assert_eq!(*tab.get(l, n as i64).unwrap(), binomial(n, l));
            }
        }
    }

    #[test]
    fn generating_function_matches_recurrence() {
        for n in 1..=64 {
            assert_eq!(KrawtchoukTable::new(n).unwrap(), KrawtchoukTable::from_recurrence(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn upper_bound_examples() {
        let t4 = KrawtchoukTable::new(4).unwrap();
        let cert = t4.check_upper_bound(2, 0).unwrap();
        assert_eq!(cert.lhs, arith::int(4));
        assert_eq!(cert.rhs, arith::int(9));
        assert!(cert.holds);
        for n in [3usize, 10, 17] {
            let tab = KrawtchoukTable::new(n).unwrap();
            for t in grid::weight_sums(n) {
                let c = tab.check_upper_bound(1, t).unwrap();
                assert!(c.holds);
                assert_eq!(c.rhs - c.lhs, arith::int(n as i64));
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        let t16 = KrawtchoukTable::new(16).unwrap();
        let cert = t16.check_lower_bound(1, 8).unwrap();
        assert_eq!(cert.lhs, arith::int(8 * 32));
        assert_eq!(cert.rhs, arith::int(16 * 8));
        assert!(cert.holds);
        let top = t16.check_lower_bound(1, 16).unwrap();
        assert_eq!(top.lhs, arith::int(16 * 32));
        assert!(matches!(t16.check_lower_bound(4, 2), Err(Error::Precondition(_))));
        assert!(matches!(t16.check_lower_bound(1, -16), Err(Error::Precondition(_))));
        assert!(matches!(t16.check_lower_bound(9, 16), Err(Error::Precondition(_))));
    }

    #[test]
    fn entropy_examples() {
        let t4 = KrawtchoukTable::new(4).unwrap();
        let e = t4.check_entropy_bound(2, 0, 1e-6).unwrap();
        assert!((e.log2_value - 1.0).abs() < 1e-12);
        assert!((e.entropy_rhs - 2.0).abs() < 1e-12);
        assert!(e.holds && e.relaxed_holds);
        // balanced string, ℓ = n/2 with ℓ even: |K̄| = C(n/2, n/4) ≤ 2^{n/2}
        for n in [8usize, 16, 32, 64] {
            let tab = KrawtchoukTable::new(n).unwrap();
            let v = tab.get(n / 2, 0).unwrap();
            assert_eq!(v.abs(), binomial(n / 2, n / 4));
            let e = tab.check_entropy_bound(n / 2, 0, 1e-6).unwrap();
            assert!((e.entropy_rhs - n as f64 / 2.0).abs() < 1e-9);
            assert!(e.holds);
        }
        assert!(t4.check_entropy_bound(4, 0, 1e-6).is_err());
        assert!(t4.check_entropy_bound(1, 4, 1e-6).is_err());
        // vanishing value passes vacuously
        let z = t4.check_entropy_bound(1, 0, 1e-6).unwrap();
        assert!(z.log2_value.is_infinite() && z.holds);
    }

    #[test]
    fn reciprocity() {
        let tab = KrawtchoukTable::new(10).unwrap();
        for l in 0..=10 {
            assert!(tab.check_reciprocity(l, l).unwrap());
            assert_eq!(*tab.eval_standard(l, 0).unwrap(), binomial(10, l));
            for w in 0..=10 {
                assert!(tab.check_reciprocity(l, w).unwrap(), "ℓ={l} w={w}");
            }
        }
    }

    #[test]
    fn ratio_step_on_small_grids() {
        for n in 1..=32 {
            let tab = KrawtchoukTable::new(n).unwrap();
            let mut applied = 0;
            for i in 0..=n {
                for l in 0..n {
                    if let Some(ok) = tab.check_ratio_step(i, l) {
                        assert!(ok, "n={n} i={i} ℓ={l}");
                        applied += 1;
                    }
                }
            }
            assert!(applied > 0);
        }
    }

    #[test]
    fn cached_tables_are_shared() {
        let a = table(12).unwrap();
        let b = table(12).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(table(0).is_err());
    }
}
