//! Linear programs over weight laws of k-wise uniform distributions.
//!
//! A symmetric distribution is k-wise uniform iff its weight law `P` satisfies
//! `Σ_t P(t) K̄(ℓ,t) = 0` for `ℓ = 1..k`. Averaging any k-wise uniform
//! distribution over coordinate permutations keeps it k-wise uniform and does
//! not change the expectation of a symmetric test, so optimizing a symmetric
//! test over all k-wise uniform distributions on the cube is the same as
//! optimizing over this polytope.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::krawtchouk;
use crate::simplex::{self, StandardForm};
use crate::symdist::{SymmetricDist, WeightPmf};
use crate::symtest::SymmetricTest;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

impl std::str::FromStr for Sense {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Sense::Max),
            "min" => Ok(Sense::Min),
            other => Err(Error::Parse(format!("unknown sense `{other}`"))),
        }
    }
}

/// Optimal value, an optimal weight law and the simplex certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub optimum: Rational,
    pub witness: WeightPmf,
    /// Basic columns of the final tableau.
    pub basis: Vec<usize>,
    /// Multipliers for the constraint rows, in the sense of the original problem.
    pub dual: Vec<Rational>,
    /// Whether the primal and dual certificates verified at solve time.
    pub certified: bool,
}

/// Moment rows `K̄(ℓ, ·)` for `ℓ = 0..=k`; row 0 is the normalization.
pub fn moment_rows(n: usize, k: usize) -> Result<Vec<Vec<Rational>>> {
    if k > n {
        return Err(Error::Precondition(format!("k = {k} exceeds n = {n}")));
    }
    let tab = krawtchouk::table(n)?;
    Ok((0..=k).map(|ell| tab.row(ell).iter().map(|v| Rational::from_integer(v.clone())).collect()).collect())
}

/// Checks that `pmf` lies in the k-wise polytope.
pub fn is_kwise(pmf: &WeightPmf, k: usize) -> Result<bool> {
    let rows = moment_rows(pmf.n(), k)?;
    Ok(pmf.probs().iter().all(|p| !p.is_negative())
        && rows.iter().enumerate().all(|(ell, row)| {
            let s: Rational = row.iter().zip(pmf.probs()).map(|(a, p)| a * p).sum();
            if ell == 0 {
                s.is_one()
            } else {
                s.is_zero()
            }
        }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentLp {
    n: usize,
    k: usize,
    objective: Vec<Rational>,
    sense: Sense,
}

impl MomentLp {
    pub fn new(n: usize, k: usize, objective: Vec<Rational>, sense: Sense) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if k > n {
            return Err(Error::Precondition(format!("k = {k} exceeds n = {n}")));
        }
        if objective.len() != n + 1 {
            return Err(Error::DimensionMismatch(objective.len(), n + 1));
        }
        Ok(MomentLp { n, k, objective, sense })
    }

    pub fn for_test(test: &SymmetricTest, k: usize, sense: Sense) -> Result<Self> {
        Self::new(test.n(), k, test.values().to_vec(), sense)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    fn standard_form(&self) -> Result<StandardForm> {
        let a = moment_rows(self.n, self.k)?;
        let mut b = vec![Rational::zero(); self.k + 1];
        b[0] = Rational::one();
        let c = match self.sense {
            Sense::Max => self.objective.clone(),
            Sense::Min => self.objective.iter().map(|v| -v).collect(),
        };
        Ok(StandardForm { a, b, c })
    }

    pub fn solve(&self) -> Result<LpResult> {
        let lp = self.standard_form()?;
        let sol = simplex::maximize(&lp)?;
        let certified = simplex::certify(&lp, &sol);
        let (optimum, dual) = match self.sense {
            Sense::Max => (sol.value, sol.dual),
            Sense::Min => (-sol.value, sol.dual.into_iter().map(|y| -y).collect()),
        };
        Ok(LpResult { optimum, witness: WeightPmf::new(self.n, sol.x)?, basis: sol.basis, dual, certified })
    }

    /// Re-verifies a result by substitution: the witness is feasible and attains
    /// the optimum, and the multipliers bound every feasible point.
    pub fn verify(&self, res: &LpResult) -> Result<bool> {
        if res.witness.n() != self.n || res.dual.len() != self.k + 1 {
            return Ok(false);
        }
        let rows = moment_rows(self.n, self.k)?;
        let attained: Rational = self.objective.iter().zip(res.witness.probs()).map(|(c, p)| c * p).sum();
        // b·y = y_0 since b = e_0
        let dual_ok = (0..=self.n).all(|i| {
            let s: Rational = rows.iter().zip(&res.dual).map(|(row, y)| &row[i] * y).sum();
            match self.sense {
                Sense::Max => s >= self.objective[i],
                Sense::Min => s <= self.objective[i],
            }
        });
        Ok(is_kwise(&res.witness, self.k)? && attained == res.optimum && res.dual[0] == res.optimum && dual_ok)
    }
}

pub fn optimize(test: &SymmetricTest, k: usize, sense: Sense) -> Result<LpResult> {
    MomentLp::for_test(test, k, sense)?.solve()
}

/// Least total variation distance from `dist` to the k-wise polytope.
///
/// Variables are `P`, `a`, `b ≥ 0` with `P - a + b = Q`, minimizing `(Σa + Σb)/2`.
pub fn min_tv_to_kwise(dist: &SymmetricDist, k: usize) -> Result<LpResult> {
    let n = dist.n();
    let m = n + 1;
    let moments = moment_rows(n, k)?;
    let mut a = Vec::with_capacity(k + 1 + m);
    for row in &moments {
        let mut r = row.clone();
        r.resize(3 * m, Rational::zero());
        a.push(r);
    }
    for i in 0..m {
        let mut r = vec![Rational::zero(); 3 * m];
        r[i] = Rational::one();
        r[m + i] = -Rational::one();
        r[2 * m + i] = Rational::one();
        a.push(r);
    }
    let mut b = vec![Rational::zero(); k + 1];
    b[0] = Rational::one();
    b.extend(dist.pmf().probs().iter().cloned());
    let half = Rational::new(1.into(), 2.into());
    let mut c = vec![Rational::zero(); m];
    c.extend(std::iter::repeat_n(-half, 2 * m));
    let lp = StandardForm { a, b, c };

    let sol = simplex::maximize(&lp)?;
    let certified = simplex::certify(&lp, &sol);
    let witness = WeightPmf::new(n, sol.x[..m].to_vec())?;
    let optimum = -sol.value;
    let certified = certified && crate::symdist::tv_distance(&witness, dist.pmf())? == optimum;
    Ok(LpResult { optimum, witness, basis: sol.basis, dual: sol.dual.into_iter().map(|y| -y).collect(), certified })
}

/// All vertices of the k-wise polytope, by trying every `(k+1)`-subset of the
/// `n+1` weight classes as a basis.
pub fn vertex_enumerate(n: usize, k: usize, max_n: usize) -> Result<Vec<WeightPmf>> {
    if n > max_n {
        return Err(Error::BudgetExceeded { n, max: max_n });
    }
    let rows = moment_rows(n, k)?;
    let mut b = vec![Rational::zero(); k + 1];
    b[0] = Rational::one();
    let mut found = BTreeSet::new();
    for cols in (0..=n).combinations(k + 1) {
        let sub: Vec<Vec<Rational>> = rows.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        let Some(x) = simplex::solve(sub, b.clone()) else { continue };
        if x.iter().any(|v| v.is_negative()) {
            continue;
        }
        let mut probs = vec![Rational::zero(); n + 1];
        for (&j, v) in cols.iter().zip(x) {
            probs[j] = v;
        }
        let pmf = WeightPmf::new(n, probs)?;
        debug_assert!(is_kwise(&pmf, k)?);
        found.insert(pmf);
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::symdist::pmf_to_profile;

    #[test]
    fn zero_wise_is_pointwise_max() {
        let test = SymmetricTest::from_fn(6, |t| rat(t * t - 3 * t, 60)).unwrap();
        let res = optimize(&test, 0, Sense::Max).unwrap();
        assert_eq!(res.optimum, test.values().iter().max().unwrap().clone());
        assert!(res.certified);
        let lo = optimize(&test, 0, Sense::Min).unwrap();
        assert_eq!(lo.optimum, test.values().iter().min().unwrap().clone());
        assert!(MomentLp::for_test(&test, 0, Sense::Min).unwrap().verify(&lo).unwrap());
    }

    #[test]
    fn two_point_polytope() {
        let test = SymmetricTest::weight_class_indicator(2, 2).unwrap();
        let res = optimize(&test, 1, Sense::Max).unwrap();
        assert_eq!(res.optimum, rat(1, 2));
        assert_eq!(res.witness.probs(), &[rat(1, 2), int(0), rat(1, 2)]);
        assert!(MomentLp::for_test(&test, 1, Sense::Max).unwrap().verify(&res).unwrap());
    }

    #[test]
    fn full_order_collapses_to_binomial() {
        let test = SymmetricTest::threshold(7, 1).unwrap();
        let res = optimize(&test, 7, Sense::Max).unwrap();
        let bin = WeightPmf::binomial(7).unwrap();
        assert_eq!(res.witness, bin);
        assert_eq!(res.optimum, test.expectation_pmf(&bin).unwrap());
    }

    #[test]
    fn truncated_kraw_is_nonpositive() {
        for (n, k) in [(12, 1), (12, 2), (16, 2)] {
            let test = SymmetricTest::truncated_kraw(n, k, &rat(1, 200)).unwrap();
            let res = optimize(&test, 2 * k, Sense::Max).unwrap();
            assert!(res.certified);
            assert!(!res.optimum.is_positive(), "n={n} k={k}");
        }
    }

    #[test]
    fn small_vertex_set() {
        let v = vertex_enumerate(2, 1, 12).unwrap();
        let expect: BTreeSet<_> = [
            WeightPmf::new(2, vec![int(0), int(1), int(0)]).unwrap(),
            WeightPmf::new(2, vec![rat(1, 2), int(0), rat(1, 2)]).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(v.into_iter().collect::<BTreeSet<_>>(), expect);
        assert_eq!(vertex_enumerate(13, 1, 12), Err(Error::BudgetExceeded { n: 13, max: 12 }));
    }

    #[test]
    fn lp_matches_vertex_max() {
        for (n, k) in [(6, 1), (8, 2), (9, 3)] {
            let test = SymmetricTest::from_fn(n, |t| rat((t * 7 + 3).rem_euclid(5) - 2, 3)).unwrap();
            let res = optimize(&test, k, Sense::Max).unwrap();
            let best =
                vertex_enumerate(n, k, 12).unwrap().iter().map(|v| test.expectation_pmf(v).unwrap()).max().unwrap();
            assert_eq!(res.optimum, best);
        }
    }

    #[test]
    fn min_tv_zero_iff_low_levels_vanish() {
        let d = SymmetricDist::d_lambda(10, 2, rat(1, 500)).unwrap();
        for k in 0..=6 {
            let res = min_tv_to_kwise(&d, k).unwrap();
            assert!(res.certified);
            assert!(is_kwise(&res.witness, k).unwrap());
            let vanish = pmf_to_profile(d.pmf()).vanishes_on(1..=k);
            assert_eq!(res.optimum.is_zero(), vanish, "k={k}");
        }
    }
}
