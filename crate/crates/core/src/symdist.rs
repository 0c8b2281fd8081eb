//! Symmetric distributions on `{-1,1}^n`, kept simultaneously as a weight law
//! (the law of `t = Σ x_i`) and as a level profile (`ε_ℓ = E[x^S]`, `|S| = ℓ`).
//!
//! The two views are related through the Krawtchouk table:
//!
//! ```text
//! P(t) = Bin(t) · Σ_ℓ ε_ℓ K̄(ℓ,t)        ε_ℓ = Σ_t P(t) K̄(ℓ,t) / C(n,ℓ)
//! ```

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, binomial_row, inv_pow2};
use crate::error::{Error, Result};
use crate::grid;
use crate::krawtchouk::{self, KrawtchoukTable};
use crate::Rational;

/// Exact law of the coordinate sum of a symmetric distribution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightPmf {
    n: usize,
    probs: Vec<Rational>,
}

/// Signed parity biases `ε_0 = 1, ε_1, ..., ε_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelProfile {
    n: usize,
    eps: Vec<Rational>,
}

/// A symmetric distribution with both representations kept in sync.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDist {
    pmf: WeightPmf,
    profile: LevelProfile,
}

impl WeightPmf {
    /// Validates nonnegativity and unit mass. `probs[i]` is the mass at `t = 2i - n`.
    pub fn new(n: usize, probs: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if probs.len() != n + 1 {
            return Err(Error::DimensionMismatch(n + 1, probs.len()));
        }
        if let Some((i, p)) = probs.iter().enumerate().find(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidProfile { t: grid::weight_sum(n, i), value: p.clone() });
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::Invalid(format!("probabilities sum to {total}, not 1")));
        }
        Ok(WeightPmf { n, probs })
    }

    /// Builds from `(t, mass)` pairs; unlisted points get zero mass.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (i64, Rational)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut probs = vec![Rational::zero(); n + 1];
        for (t, p) in pairs {
            probs[grid::index(n, t)?] += p;
        }
        Self::new(n, probs)
    }

    /// The binomial law `C(n, (n+t)/2) / 2^n`.
    pub fn binomial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(WeightPmf { n, probs: binomial_probs(n) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn prob(&self, t: i64) -> Result<&Rational> {
        Ok(&self.probs[grid::index(self.n, t)?])
    }

    /// `(t, P(t))` over the whole grid.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.probs.iter().enumerate().map(move |(i, p)| (grid::weight_sum(self.n, i), p))
    }

    /// `Pr[t ≥ θ]`.
    pub fn tail(&self, theta: i64) -> Rational {
        self.iter().filter(|(t, _)| *t >= theta).map(|(_, p)| p.clone()).sum()
    }

    /// `E[t^j]`.
    pub fn moment(&self, j: u32) -> Rational {
        self.iter().map(|(t, p)| p * Rational::from_integer(BigInt::from(t).pow(j))).sum()
    }
}

impl LevelProfile {
    /// Validates `ε_0 = 1` and `|ε_ℓ| ≤ 1`. Validity of the induced law is
    /// checked separately by [`profile_to_pmf`].
    pub fn new(n: usize, eps: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if eps.len() != n + 1 {
            return Err(Error::DimensionMismatch(n + 1, eps.len()));
        }
        if !eps[0].is_one() {
            return Err(Error::Invalid(format!("level-0 bias must be 1, got {}", eps[0])));
        }
        if let Some((l, e)) = eps.iter().enumerate().find(|(_, e)| e.abs() > Rational::one()) {
            return Err(Error::Invalid(format!("|ε_{l}| = |{e}| exceeds 1")));
        }
        Ok(LevelProfile { n, eps })
    }

    /// `ε_0 = 1` and zero elsewhere: the uniform distribution.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut eps = vec![Rational::zero(); n + 1];
        eps[0] = Rational::one();
        Ok(LevelProfile { n, eps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> &[Rational] {
        &self.eps
    }

    pub fn level(&self, ell: usize) -> Result<&Rational> {
        self.eps.get(ell).ok_or(Error::OutOfRange { what: "ell", value: ell as i64, n: self.n })
    }

    /// `max_{ℓ ≥ 1} |ε_ℓ|`.
    pub fn max_bias(&self) -> Rational {
        self.max_bias_over(1..=self.n)
    }

    pub fn max_bias_over(&self, levels: impl IntoIterator<Item = usize>) -> Rational {
        levels.into_iter().filter_map(|l| self.eps.get(l)).map(|e| e.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// True when `ε_ℓ = 0` for every listed level.
    pub fn vanishes_on(&self, levels: impl IntoIterator<Item = usize>) -> bool {
        levels.into_iter().all(|l| self.eps.get(l).is_none_or(Zero::is_zero))
    }
}

/// `P(t) = Bin(t) · Σ_ℓ ε_ℓ K̄(ℓ,t)`; rejects profiles that induce negative mass.
pub fn profile_to_pmf(profile: &LevelProfile) -> Result<WeightPmf> {
    let n = profile.n;
    let table = krawtchouk::table(n)?;
    let probs = raw_profile_to_masses(&table, &profile.eps);
    if let Some((i, p)) = probs.iter().enumerate().find(|(_, p)| p.is_negative()) {
        return Err(Error::InvalidProfile { t: grid::weight_sum(n, i), value: p.clone() });
    }
    Ok(WeightPmf { n, probs })
}

/// `ε_ℓ = Σ_t P(t) K̄(ℓ,t) / C(n,ℓ)`.
pub fn pmf_to_profile(pmf: &WeightPmf) -> LevelProfile {
    let n = pmf.n;
    let table = krawtchouk::table(n).expect("pmf dimension is valid");
    let eps = (0..=n)
        .map(|l| {
            let s: Rational = table
                .row(l)
                .iter()
                .zip(&pmf.probs)
                .filter(|(_, p)| !p.is_zero())
                .map(|(k, p)| p * Rational::from_integer(k.clone()))
                .sum();
            s / Rational::from_integer(table.binomial(l).clone())
        })
        .collect();
    LevelProfile { n, eps }
}

fn raw_profile_to_masses(table: &KrawtchoukTable, eps: &[Rational]) -> Vec<Rational> {
    let n = table.n();
    let bin = binomial_probs(n);
    let active: Vec<usize> = (0..=n).filter(|&l| !eps[l].is_zero()).collect();
    (0..=n)
        .map(|i| {
            let s: Rational = active.iter().map(|&l| &eps[l] * Rational::from_integer(table.at(l, i).clone())).sum();
            &bin[i] * s
        })
        .collect()
}

fn binomial_probs(n: usize) -> Vec<Rational> {
    let scale = inv_pow2(n);
    binomial_row(n).into_iter().map(|c| Rational::from_integer(c) * &scale).collect()
}

impl SymmetricDist {
    pub fn from_pmf(pmf: WeightPmf) -> Self {
        let profile = pmf_to_profile(&pmf);
        SymmetricDist { pmf, profile }
    }

    pub fn from_profile(profile: LevelProfile) -> Result<Self> {
        let pmf = profile_to_pmf(&profile)?;
        Ok(SymmetricDist { pmf, profile })
    }

    /// The uniform distribution; its weight law is `Bin(n, 1/2)` on the grid.
    pub fn binomial(n: usize) -> Result<Self> {
        Ok(SymmetricDist { pmf: WeightPmf::binomial(n)?, profile: LevelProfile::zero(n)? })
    }

    /// `W_t`: uniform over strings with coordinate sum `t`; `ε_ℓ = K̄(ℓ,t)/C(n,ℓ)`.
    pub fn weight_class(n: usize, t: i64) -> Result<Self> {
        let table = krawtchouk::table(n)?;
        let i = grid::index(n, t)?;
        let mut probs = vec![Rational::zero(); n + 1];
        probs[i] = Rational::one();
        let eps = (0..=n).map(|l| Rational::new(table.at(l, i).clone(), table.binomial(l).clone())).collect();
        Ok(SymmetricDist { pmf: WeightPmf { n, probs }, profile: LevelProfile { n, eps } })
    }

    /// Single nonzero level: `ε_level = λ`, every other level `ℓ ≥ 1` zero.
    pub fn single_level(n: usize, level: usize, lambda: Rational) -> Result<Self> {
        if level == 0 || level > n {
            return Err(Error::OutOfRange { what: "level", value: level as i64, n });
        }
        let mut profile = LevelProfile::zero(n)?;
        profile.eps[level] = lambda;
        Self::from_profile(profile)
    }

    /// The level-`2k` family `P(t) = Bin(t)(1 + λ K̄(2k,t))`.
    pub fn d_lambda(n: usize, k: usize, lambda: Rational) -> Result<Self> {
        if k == 0 || 2 * k > n {
            return Err(Error::Precondition(format!("d_lambda needs 1 <= 2k <= n; got n={n}, k={k}")));
        }
        if lambda.is_negative() {
            return Err(Error::Precondition(format!("d_lambda needs λ >= 0; got {lambda}")));
        }
        Self::single_level(n, 2 * k, lambda)
    }

    /// Uniform over `{0,1}` strings whose Hamming weight is `r` mod `m`.
    pub fn mod_weight(n: usize, m: usize, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if m < 2 || r >= m {
            return Err(Error::Precondition(format!("mod_weight needs m >= 2 and 0 <= r < m; got m={m}, r={r}")));
        }
        let row = binomial_row(n);
        let total: BigInt = (0..=n).filter(|w| w % m == r).map(|w| &row[w]).sum();
        if total.is_zero() {
            return Err(Error::EmptySupport);
        }
        let mut probs = vec![Rational::zero(); n + 1];
        for w in (0..=n).filter(|w| w % m == r) {
            probs[n - w] = Rational::new(row[w].clone(), total.clone());
        }
        Ok(Self::from_pmf(WeightPmf { n, probs }))
    }

    pub fn n(&self) -> usize {
        self.pmf.n
    }

    pub fn pmf(&self) -> &WeightPmf {
        &self.pmf
    }

    pub fn profile(&self) -> &LevelProfile {
        &self.profile
    }

    /// Coordinate-wise noise `N_ρ`: level `ℓ` is scaled by `ρ^ℓ`.
    pub fn apply_noise(&self, rho: &Rational) -> Result<Self> {
        if rho.is_negative() || *rho > Rational::one() {
            return Err(Error::Precondition(format!("noise rate must lie in [0,1]; got {rho}")));
        }
        let mut scale = Rational::one();
        let eps = self
            .profile
            .eps
            .iter()
            .map(|e| {
                let v = e * &scale;
                scale = &scale * rho;
                v
            })
            .collect();
        Self::from_profile(LevelProfile { n: self.n(), eps })
    }

    /// Law of the coordinate-wise product of independent samples.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n(), other.n())?;
        let eps = self.profile.eps.iter().zip(&other.profile.eps).map(|(a, b)| a * b).collect();
        Self::from_profile(LevelProfile { n: self.n(), eps })
    }

    /// Law of `Σ z_i x_i` for a fixed `z` with `Σ z = s` and `x` drawn from
    /// `self`, computed class by class from the overlap count of `-1` positions.
    pub fn shifted_weight_law(&self, s: i64) -> Result<WeightPmf> {
        let n = self.n();
        let zi = grid::index(n, s)?;
        let p = n - zi; // minus-ones in z
        let row = binomial_row(n);
        let mut probs = vec![Rational::zero(); n + 1];
        for (xi, mass) in self.pmf.probs.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            let q = n - xi; // minus-ones in x
            let lo = (p + q).saturating_sub(n);
            for j in lo..=p.min(q) {
                let ways = arith::binomial(p, j) * arith::binomial(n - p, q - j);
                if ways.is_zero() {
                    continue;
                }
                let minus = p + q - 2 * j;
                probs[n - minus] += mass * Rational::new(ways, row[q].clone());
            }
        }
        Ok(WeightPmf { n, probs })
    }

    /// `(1/2) Σ_t |P1(t) - P2(t)|`, which for symmetric laws is the cube TV distance.
    pub fn tv_distance(&self, other: &Self) -> Result<Rational> {
        tv_distance(&self.pmf, &other.pmf)
    }

    /// `Pr[Σ x ≥ θ]`.
    pub fn tail(&self, theta: i64) -> Rational {
        self.pmf.tail(theta)
    }
}

pub fn tv_distance(a: &WeightPmf, b: &WeightPmf) -> Result<Rational> {
    check_same_n(a.n, b.n)?;
    let l1: Rational = a.probs.iter().zip(&b.probs).map(|(p, q)| (p - q).abs()).sum();
    Ok(l1 / Rational::from_integer(2.into()))
}

fn check_same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(a, b));
    }
    Ok(())
}

/// Largest `λ` for which the level-`level` single-level profile is valid:
/// `1 / max_t(-K̄(level,t))`, or `None` when the row is never negative.
pub fn max_valid_lambda(n: usize, level: usize) -> Result<Option<Rational>> {
    let table = krawtchouk::table(n)?;
    if level == 0 || level > n {
        return Err(Error::OutOfRange { what: "level", value: level as i64, n });
    }
    Ok(table.row(level).iter().filter(|v| v.is_negative()).map(|v| -v).max().map(|m| Rational::new(BigInt::one(), m)))
}

/// Sufficient condition for validity of `d_lambda(n,k,λ)`:
/// `λ C(n,2k) (10k)^k ≤ n^k`.
pub fn d_lambda_precheck(n: usize, k: usize, lambda: &Rational) -> bool {
    let c = Rational::from_integer(arith::binomial(n, 2 * k));
    let lhs = lambda * c * arith::pow(&arith::int(10 * k as i64), k);
    lhs <= arith::pow(&arith::int(n as i64), k)
}

/// `α = (λ C(n,2k)^{1/2})^{1/k}`, for reporting against the original parameterization.
pub fn alpha_for_lambda(n: usize, k: usize, lambda: &Rational) -> f64 {
    if lambda.is_zero() {
        return 0.0;
    }
    let log2 = arith::log2_abs_rational(lambda) + 0.5 * arith::log2_abs(&arith::binomial(n, 2 * k));
    (log2 / k as f64).exp2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn binomial_examples() {
        let d = SymmetricDist::binomial(2).unwrap();
        assert_eq!(d.pmf().probs(), &[rat(1, 4), rat(1, 2), rat(1, 4)]);
        let d8 = SymmetricDist::binomial(8).unwrap();
        assert_eq!(pmf_to_profile(d8.pmf()), LevelProfile::zero(8).unwrap());
        let d100 = WeightPmf::binomial(100).unwrap();
        assert_eq!(d100.probs().iter().sum::<Rational>(), int(1));
    }

    #[test]
    fn weight_class_examples() {
        let n = 6;
        let top = SymmetricDist::weight_class(n, n as i64).unwrap();
        assert!(top.profile().eps().iter().all(|e| e.is_one()));
        let w = SymmetricDist::weight_class(4, 0).unwrap();
        assert_eq!(*w.profile().level(2).unwrap(), rat(-1, 3));
        for t in grid::weight_sums(9) {
            let w = SymmetricDist::weight_class(9, t).unwrap();
            for l in 0..=9 {
                assert_eq!(w.profile().eps()[l].abs(), w.profile().eps()[9 - l].abs());
            }
            assert_eq!(profile_to_pmf(w.profile()).unwrap(), *w.pmf());
        }
        assert!(matches!(SymmetricDist::weight_class(4, 1), Err(Error::ParityMismatch { .. })));
    }

    #[test]
    fn d_lambda_examples() {
        assert_eq!(SymmetricDist::d_lambda(6, 1, int(0)).unwrap(), SymmetricDist::binomial(6).unwrap());
        let d = SymmetricDist::d_lambda(4, 1, rat(1, 2)).unwrap();
        assert_eq!(d.pmf().probs(), &[rat(1, 4), rat(1, 4), int(0), rat(1, 4), rat(1, 4)]);
        match SymmetricDist::d_lambda(4, 1, rat(3, 5)) {
            Err(Error::InvalidProfile { t, value }) => {
                assert_eq!(t, 0);
                assert_eq!(value, rat(6, 16) * (int(1) - rat(6, 5)));
            }
            other => panic!("expected invalid profile, got {other:?}"),
        }
        assert!(SymmetricDist::d_lambda(4, 3, rat(1, 2)).is_err());
        assert!(SymmetricDist::d_lambda(4, 1, rat(-1, 2)).is_err());
        assert_eq!(max_valid_lambda(4, 2).unwrap(), Some(rat(1, 2)));
    }

    #[test]
    fn precheck_implies_validity() {
        for n in [8usize, 16, 32, 64] {
            for k in 1..=3 {
                if 2 * k > n {
                    continue;
                }
                let lmax = max_valid_lambda(n, 2 * k).unwrap().unwrap();
                for scale in [rat(1, 1000), rat(1, 10), int(1), int(10), int(1000)] {
                    let lambda = &lmax * scale;
                    if d_lambda_precheck(n, k, &lambda) {
                        assert!(SymmetricDist::d_lambda(n, k, lambda).is_ok());
                    }
                }
                let ok = SymmetricDist::d_lambda(n, k, lmax.clone()).unwrap();
                assert!(ok.pmf().probs().iter().any(Zero::is_zero));
                assert!(SymmetricDist::d_lambda(n, k, lmax * rat(1001, 1000)).is_err());
            }
        }
    }

    #[test]
    fn mod_weight_examples() {
        let even = SymmetricDist::mod_weight(7, 2, 0).unwrap();
        assert!(even.profile().level(7).unwrap().is_one());
        let odd = SymmetricDist::mod_weight(7, 2, 1).unwrap();
        assert_eq!(*odd.profile().level(7).unwrap(), int(-1));
        let d = SymmetricDist::mod_weight(30, 3, 0).unwrap();
        let b = d.profile().max_bias_over(1..30);
        assert!(b <= int(1) && b.is_positive());
        // m = n + 1: exactly one Hamming weight qualifies
        let point = SymmetricDist::mod_weight(5, 6, 2).unwrap();
        assert_eq!(*point.pmf().prob(1).unwrap(), int(1));
        assert_eq!(point, SymmetricDist::weight_class(5, 1).unwrap());
        assert!(matches!(SymmetricDist::mod_weight(3, 9, 7), Err(Error::EmptySupport)));
        assert!(SymmetricDist::mod_weight(3, 1, 0).is_err());
    }

    #[test]
    fn noise_examples() {
        let d = SymmetricDist::d_lambda(10, 2, rat(1, 300)).unwrap();
        assert_eq!(d.apply_noise(&int(1)).unwrap(), d);
        assert_eq!(d.apply_noise(&int(0)).unwrap(), SymmetricDist::binomial(10).unwrap());
        let rho = rat(2, 3);
        let expected = SymmetricDist::d_lambda(10, 2, rat(1, 300) * arith::pow(&rho, 4)).unwrap();
        assert_eq!(d.apply_noise(&rho).unwrap(), expected);
        assert!(d.apply_noise(&rat(3, 2)).is_err());
    }

    #[test]
    fn convolve_examples() {
        let d = SymmetricDist::mod_weight(9, 3, 1).unwrap();
        let b = SymmetricDist::binomial(9).unwrap();
        assert_eq!(d.convolve(&b).unwrap(), b);
        let top = SymmetricDist::weight_class(9, 9).unwrap();
        assert_eq!(top.convolve(&d).unwrap(), d);
        assert!(d.convolve(&SymmetricDist::binomial(8).unwrap()).is_err());
    }

    #[test]
    fn shift_examples() {
        let d = SymmetricDist::mod_weight(10, 4, 1).unwrap();
        assert_eq!(d.shifted_weight_law(10).unwrap(), *d.pmf());
        let b = SymmetricDist::binomial(10).unwrap();
        for s in grid::weight_sums(10) {
            assert_eq!(b.shifted_weight_law(s).unwrap(), *b.pmf());
        }
        // all-minus shift reflects the law
        let flipped = d.shifted_weight_law(-10).unwrap();
        for (t, p) in d.pmf().iter() {
            assert_eq!(flipped.prob(-t).unwrap(), p);
        }
        assert!(d.shifted_weight_law(3).is_err());
    }

    #[test]
    fn shift_equals_convolution_with_weight_class() {
        let d = SymmetricDist::d_lambda(12, 2, rat(1, 100)).unwrap();
        for s in grid::weight_sums(12) {
            let w = SymmetricDist::weight_class(12, s).unwrap();
            assert_eq!(d.shifted_weight_law(s).unwrap(), *d.convolve(&w).unwrap().pmf());
        }
    }

    #[test]
    fn tv_and_tail_examples() {
        let d = SymmetricDist::mod_weight(8, 3, 0).unwrap();
        assert_eq!(d.tv_distance(&d).unwrap(), int(0));
        let w0 = SymmetricDist::weight_class(2, 0).unwrap();
        let b2 = SymmetricDist::binomial(2).unwrap();
        assert_eq!(w0.tv_distance(&b2).unwrap(), rat(1, 2));
        assert_eq!(d.tail(-8), int(1));
        assert_eq!(SymmetricDist::binomial(4).unwrap().tail(4), rat(1, 16));

        let (n, k, lambda) = (12usize, 2usize, rat(1, 200));
        let dl = SymmetricDist::d_lambda(n, k, lambda.clone()).unwrap();
        let table = krawtchouk::table(n).unwrap();
        let bin = WeightPmf::binomial(n).unwrap();
        let sum: Rational = (0..=n).map(|i| &bin.probs()[i] * Rational::from_integer(table.at(2 * k, i).abs())).sum();
        let expected = lambda / int(2) * sum;
        assert_eq!(dl.tv_distance(&SymmetricDist::binomial(n).unwrap()).unwrap(), expected);
    }

    #[test]
    fn pmf_validation() {
        assert!(WeightPmf::new(2, vec![rat(1, 2), rat(1, 2)]).is_err());
        assert!(WeightPmf::new(1, vec![rat(3, 2), rat(-1, 2)]).is_err());
        assert!(WeightPmf::new(1, vec![rat(1, 3), rat(1, 3)]).is_err());
        assert!(LevelProfile::new(1, vec![int(1), int(2)]).is_err());
        assert!(LevelProfile::new(1, vec![int(0), int(0)]).is_err());
    }

    #[test]
    fn alpha_report() {
        let a = alpha_for_lambda(16, 1, &rat(1, 120));
        assert!((a - (120f64).sqrt() / 120.0).abs() < 1e-12);
        assert_eq!(alpha_for_lambda(16, 1, &int(0)), 0.0);
    }
}
