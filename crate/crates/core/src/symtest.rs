//! Symmetric tests `f(x) = g(Σ x)` with values in `[-1, 1]`, their level
//! Fourier coefficients `f̂([ℓ])`, smoothing, and exact expectations.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grid;
use crate::krawtchouk;
use crate::symdist::{SymmetricDist, WeightPmf};
use crate::Rational;

/// Weight-class values `g(t)` of a bounded symmetric test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricTest {
    n: usize,
    values: Vec<Rational>,
}

/// Level Fourier coefficients `f̂([ℓ])`, `ℓ = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCoeffs {
    n: usize,
    coeffs: Vec<Rational>,
}

impl SymmetricTest {
    /// `values[i]` is `g(2i - n)`; every value must lie in `[-1, 1]`.
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if values.len() != n + 1 {
            return Err(Error::DimensionMismatch(n + 1, values.len()));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| v.abs() > Rational::one()) {
            return Err(Error::Invalid(format!("test value {v} at t = {} is outside [-1, 1]", grid::weight_sum(n, i))));
        }
        Ok(SymmetricTest { n, values })
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self> {
        Self::new(n, vec![c; n + 1])
    }

    /// `1[t ≥ θ]`.
    pub fn threshold(n: usize, theta: i64) -> Result<Self> {
        Self::from_fn(n, |t| if t >= theta { Rational::one() } else { Rational::zero() })
    }

    /// Indicator of a single weight class.
    pub fn weight_class_indicator(n: usize, t0: i64) -> Result<Self> {
        grid::index(n, t0)?;
        Self::from_fn(n, |t| if t == t0 { Rational::one() } else { Rational::zero() })
    }

    /// `min(1, μ K̄(2k, t))`; fails when some value drops below `-1`.
    pub fn truncated_kraw(n: usize, k: usize, mu: &Rational) -> Result<Self> {
        if k == 0 || 2 * k > n {
            return Err(Error::Precondition(format!("truncated Krawtchouk test needs 1 <= 2k <= n; got n={n}, k={k}")));
        }
        if mu.is_negative() {
            return Err(Error::Precondition(format!("μ must be nonnegative; got {mu}")));
        }
        let raw = kraw_values(n, 2 * k, mu)?;
        let floor = -Rational::one();
        if let Some((i, v)) = raw.iter().enumerate().find(|(_, v)| **v < floor) {
            return Err(Error::UnboundedBelow { t: grid::weight_sum(n, i), value: v.clone() });
        }
        let one = Rational::one();
        let values = raw.into_iter().map(|v| if v > one { one.clone() } else { v }).collect();
        Ok(SymmetricTest { n, values })
    }

    /// `±1`-valued test `sign(P1(t) - P2(t))` (ties go to `+1`); it attains
    /// `E[g(d1)] - E[g(d2)] = Σ_t |P1(t) - P2(t)|`.
    pub fn sign_test(d1: &WeightPmf, d2: &WeightPmf) -> Result<Self> {
        if d1.n() != d2.n() {
            return Err(Error::DimensionMismatch(d1.n(), d2.n()));
        }
        let values = d1
            .probs()
            .iter()
            .zip(d2.probs())
            .map(|(p, q)| if p >= q { Rational::one() } else { -Rational::one() })
            .collect();
        Ok(SymmetricTest { n: d1.n(), values })
    }

    pub fn from_fn(n: usize, mut g: impl FnMut(i64) -> Rational) -> Result<Self> {
        Self::new(n, grid::weight_sums(n).map(&mut g).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, t: i64) -> Result<&Rational> {
        Ok(&self.values[grid::index(self.n, t)?])
    }

    /// `f̂([ℓ]) = Σ_t Bin(t) g(t) K̄(ℓ,t) / C(n,ℓ)`.
    pub fn level_coeffs(&self) -> LevelCoeffs {
        let n = self.n;
        let table = krawtchouk::table(n).expect("test dimension is valid");
        let bin = WeightPmf::binomial(n).expect("n >= 1");
        let weighted: Vec<Rational> = bin.probs().iter().zip(&self.values).map(|(b, g)| b * g).collect();
        let coeffs = (0..=n)
            .map(|l| {
                let s: Rational = table
                    .row(l)
                    .iter()
                    .zip(&weighted)
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(k, w)| w * Rational::from_integer(k.clone()))
                    .sum();
                s / Rational::from_integer(table.binomial(l).clone())
            })
            .collect();
        LevelCoeffs { n, coeffs }
    }

    /// `T_ρ f`, returned in coefficient form: `ρ^ℓ f̂([ℓ])`.
    pub fn smooth(&self, rho: &Rational) -> Result<LevelCoeffs> {
        if rho.is_negative() || *rho > Rational::one() {
            return Err(Error::Precondition(format!("noise rate must lie in [0,1]; got {rho}")));
        }
        let mut c = self.level_coeffs();
        let mut scale = Rational::one();
        for v in c.coeffs.iter_mut() {
            *v = &*v * &scale;
            scale = &scale * rho;
        }
        Ok(c)
    }

    /// `E[g(Σ D)] = Σ_t P(t) g(t)`.
    pub fn expectation(&self, dist: &SymmetricDist) -> Result<Rational> {
        weighted_sum(&self.values, dist.pmf())
    }

    pub fn expectation_pmf(&self, pmf: &WeightPmf) -> Result<Rational> {
        weighted_sum(&self.values, pmf)
    }
}

impl LevelCoeffs {
    pub fn new(n: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if coeffs.len() != n + 1 {
            return Err(Error::DimensionMismatch(n + 1, coeffs.len()));
        }
        Ok(LevelCoeffs { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `f̂([ℓ])² C(n,ℓ) ≤ 1` at every level.
    pub fn satisfies_level_bound(&self) -> bool {
        let table = krawtchouk::table(self.n).expect("valid n");
        self.coeffs
            .iter()
            .enumerate()
            .all(|(l, c)| c * c * Rational::from_integer(table.binomial(l).clone()) <= Rational::one())
    }

    /// `Σ_ℓ C(n,ℓ) f̂([ℓ])² = E[f(U)²]`.
    pub fn parseval_mass(&self) -> Rational {
        let table = krawtchouk::table(self.n).expect("valid n");
        self.coeffs.iter().enumerate().map(|(l, c)| c * c * Rational::from_integer(table.binomial(l).clone())).sum()
    }

    /// Weight-class values `g(t) = Σ_ℓ f̂([ℓ]) K̄(ℓ,t)`.
    pub fn values(&self) -> Vec<Rational> {
        let table = krawtchouk::table(self.n).expect("valid n");
        (0..=self.n)
            .map(|i| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(l, c)| c * Rational::from_integer(table.at(l, i).clone()))
                    .sum()
            })
            .collect()
    }

    /// `E[f(D)] = Σ_ℓ C(n,ℓ) f̂([ℓ]) ε_ℓ(D)`.
    pub fn expectation(&self, dist: &SymmetricDist) -> Result<Rational> {
        if dist.n() != self.n {
            return Err(Error::DimensionMismatch(self.n, dist.n()));
        }
        let table = krawtchouk::table(self.n)?;
        Ok(self
            .coeffs
            .iter()
            .zip(dist.profile().eps())
            .enumerate()
            .filter(|(_, (c, e))| !c.is_zero() && !e.is_zero())
            .map(|(l, (c, e))| c * e * Rational::from_integer(table.binomial(l).clone()))
            .sum())
    }
}

/// `Σ_t P(t) v(t)` for arbitrary (not necessarily bounded) class values.
pub fn weighted_sum(values: &[Rational], pmf: &WeightPmf) -> Result<Rational> {
    if values.len() != pmf.n() + 1 {
        return Err(Error::DimensionMismatch(values.len().saturating_sub(1), pmf.n()));
    }
    Ok(values.iter().zip(pmf.probs()).filter(|(_, p)| !p.is_zero()).map(|(v, p)| v * p).sum())
}

/// Untruncated `μ K̄(level, t)` over the grid.
pub fn kraw_values(n: usize, level: usize, mu: &Rational) -> Result<Vec<Rational>> {
    let table = krawtchouk::table(n)?;
    if level > n {
        return Err(Error::OutOfRange { what: "level", value: level as i64, n });
    }
    Ok(table.row(level).iter().map(|k| mu * Rational::from_integer(k.clone())).collect())
}

/// `Σ_t |P(t) - Bin(t)|`: the largest gap `|E[f(D)] - E[f(U)]|` over
/// symmetric `f` with values in `[-1, 1]`.
pub fn sym_advantage(dist: &SymmetricDist) -> Rational {
    sym_advantage_pmf(dist.pmf())
}

pub fn sym_advantage_pmf(pmf: &WeightPmf) -> Rational {
    let bin = WeightPmf::binomial(pmf.n()).expect("n >= 1");
    pmf.probs().iter().zip(bin.probs()).map(|(p, b)| (p - b).abs()).sum()
}

/// `Σ_t Bin(t) K̄(ℓ,t)²`, which equals `C(n,ℓ)`.
pub fn kraw_second_moment(n: usize, level: usize) -> Result<Rational> {
    let table = krawtchouk::table(n)?;
    let bin = WeightPmf::binomial(n)?;
    Ok(table.row(level).iter().zip(bin.probs()).map(|(k, b)| b * Rational::from_integer(k * k)).sum())
}
