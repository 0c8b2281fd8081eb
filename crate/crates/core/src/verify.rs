//! Claim-level harnesses. Each returns a [`VerdictReport`] whose checks can be
//! re-evaluated from the stored sides, plus report-only metrics for bounds
//! with unspecified constants.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{binomial, ceil_sqrt, format_rational, int, pow, to_f64};
use crate::error::{Error, Result};
use crate::grid;
use crate::krawtchouk;
use crate::momentlp::{self, MomentLp, Sense};
use crate::symdist::{self, pmf_to_profile, SymmetricDist, WeightPmf};
use crate::symtest::{self, SymmetricTest};
use crate::Rational;

/// Default slack for comparisons against irrational right-hand sides.
pub const FLOAT_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Exact(Rational),
    Float(f64),
}

impl Quantity {
    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Exact(r) => to_f64(r),
            Quantity::Float(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Quantity::Exact(_))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{}", format_rational(r)),
            Quantity::Float(v) => write!(f, "{v:e}"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Quantity::Exact(r) => s.serialize_str(&format_rational(r)),
            Quantity::Float(v) => s.serialize_f64(*v),
        }
    }
}

impl From<Rational> for Quantity {
    fn from(r: Rational) -> Self {
        Quantity::Exact(r)
    }
}

impl From<f64> for Quantity {
    fn from(v: f64) -> Self {
        Quantity::Float(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "==",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    fn exact(self, l: &Rational, r: &Rational) -> bool {
        match self {
            Relation::Lt => l < r,
            Relation::Le => l <= r,
            Relation::Eq => l == r,
            Relation::Ge => l >= r,
            Relation::Gt => l > r,
        }
    }

    fn float(self, l: f64, r: f64, slack: f64) -> bool {
        match self {
            Relation::Lt => l < r + slack,
            Relation::Le => l <= r + slack,
            Relation::Eq => (l - r).abs() <= slack,
            Relation::Ge => l >= r - slack,
            Relation::Gt => l > r - slack,
        }
    }

    pub fn holds(self, lhs: &Quantity, rhs: &Quantity, slack: f64) -> bool {
        match (lhs, rhs) {
            (Quantity::Exact(l), Quantity::Exact(r)) => self.exact(l, r),
            _ => self.float(lhs.to_f64(), rhs.to_f64(), slack),
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

/// One comparison `lhs relation rhs`; exact unless either side is a float.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: Quantity,
    pub relation: Relation,
    pub rhs: Quantity,
    pub slack: f64,
    pub holds: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        lhs: impl Into<Quantity>,
        relation: Relation,
        rhs: impl Into<Quantity>,
    ) -> Self {
        Self::with_slack(name, lhs, relation, rhs, 0.0)
    }

    pub fn with_slack(
        name: impl Into<String>,
        lhs: impl Into<Quantity>,
        relation: Relation,
        rhs: impl Into<Quantity>,
        slack: f64,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let holds = relation.holds(&lhs, &rhs, slack);
        Check { name: name.into(), lhs, relation, rhs, slack, holds }
    }

    pub fn recompute(&self) -> bool {
        self.relation.holds(&self.lhs, &self.rhs, self.slack)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Param {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: Quantity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub claim: String,
    pub params: Vec<Param>,
    pub checks: Vec<Check>,
    /// Report-only values, never part of the verdict.
    pub report: Vec<Metric>,
    pub notes: Vec<String>,
    /// False when the claim is vacuous at these parameters (e.g. `ρ = 0`).
    pub applicable: bool,
    pub pass: bool,
    #[serde(skip)]
    pub runtime_ms: f64,
}

impl VerdictReport {
    pub fn new(claim: &str) -> Self {
        VerdictReport {
            claim: claim.to_string(),
            params: Vec::new(),
            checks: Vec::new(),
            report: Vec::new(),
            notes: Vec::new(),
            applicable: true,
            pass: true,
            runtime_ms: 0.0,
        }
    }

    pub fn param(mut self, name: &str, value: impl fmt::Display) -> Self {
        self.params.push(Param { name: name.into(), value: value.to_string() });
        self
    }

    pub fn check(&mut self, c: Check) {
        self.pass &= c.holds;
        self.checks.push(c);
    }

    pub fn metric(&mut self, name: &str, value: impl Into<Quantity>) {
        self.report.push(Metric { name: name.into(), value: value.into() });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn recompute_pass(&self) -> bool {
        self.checks.iter().all(Check::recompute)
    }

    /// Exit-code semantics: passing, or not applicable at these parameters.
    pub fn ok(&self) -> bool {
        self.pass || !self.applicable
    }

    pub fn metric_value(&self, name: &str) -> Option<&Quantity> {
        self.report.iter().find(|m| m.name == name).map(|m| &m.value)
    }

    /// Same verdict content, ignoring runtime.
    pub fn same_content(&self, other: &Self) -> bool {
        let strip = |r: &Self| VerdictReport { runtime_ms: 0.0, ..r.clone() };
        strip(self) == strip(other)
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.pass, self.applicable) {
            (true, _) => "PASS",
            (false, false) => "N/A",
            (false, true) => "FAIL",
        };
        let params: Vec<String> = self.params.iter().map(|p| format!("{}={}", p.name, p.value)).collect();
        writeln!(f, "[{status}] {} ({})", self.claim, params.join(", "))?;
        for c in &self.checks {
            let mark = if c.holds { "ok" } else { "FAILED" };
            writeln!(f, "  {}: {} {} {} [{mark}]", c.name, c.lhs, c.relation.symbol(), c.rhs)?;
        }
        for m in &self.report {
            writeln!(f, "  {} = {}", m.name, m.value)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

fn timed(f: impl FnOnce() -> Result<VerdictReport>) -> Result<VerdictReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

fn binom_r(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

fn check_rho(rho: &Rational) -> Result<()> {
    if rho.is_negative() || *rho > Rational::one() {
        return Err(Error::Precondition(format!("noise rate must lie in [0,1]; got {rho}")));
    }
    Ok(())
}

/// `P(t) ≥ Bin(t)(1 + λ C(n,2k) (t/2n)^{2k})` for `d_lambda(n,k,λ)`, given `t² ≥ 4kn`.
pub fn check_ptwise_lb(n: usize, k: usize, lambda: &Rational, t: i64) -> Result<VerdictReport> {
    timed(|| {
        let mut r = VerdictReport::new("ptwise-lb").param("n", n).param("k", k).param("lambda", lambda).param("t", t);
        let d = SymmetricDist::d_lambda(n, k, lambda.clone())?;
        r.check(ptwise_check(&d, n, k, lambda, t)?);
        Ok(r)
    })
}

/// Every `t` on the grid with `t² ≥ 4kn`.
pub fn check_ptwise_lb_sweep(n: usize, k: usize, lambda: &Rational) -> Result<VerdictReport> {
    timed(|| {
        let mut r =
            VerdictReport::new("ptwise-lb").param("n", n).param("k", k).param("lambda", lambda).param("t", "all");
        let d = SymmetricDist::d_lambda(n, k, lambda.clone())?;
        let bound = 4 * k as i64 * n as i64;
        for t in grid::weight_sums(n).filter(|t| t * t >= bound) {
            r.check(ptwise_check(&d, n, k, lambda, t)?);
        }
        Ok(r)
    })
}

fn ptwise_check(d: &SymmetricDist, n: usize, k: usize, lambda: &Rational, t: i64) -> Result<Check> {
    if t * t < 4 * (k * n) as i64 {
        return Err(Error::Precondition(format!("need t^2 >= 4kn; got t = {t}")));
    }
    let bin = WeightPmf::binomial(n)?;
    let frac = Rational::new(t.into(), (2 * n as i64).into());
    let rhs = bin.prob(t)? * (Rational::one() + lambda * binom_r(n, 2 * k) * pow(&frac, 2 * k));
    Ok(Check::new(
        format!("P({t}) >= Bin(t)(1 + lambda C(n,2k) (t/2n)^2k)"),
        d.pmf().prob(t)?.clone(),
        Relation::Ge,
        rhs,
    ))
}

/// Tail gap at `θ = ⌈2√(kn)⌉` between noisy `d_lambda` and the binomial.
pub fn check_thm_sbpn_vs_uniform(n: usize, k: usize, rho: &Rational, lambda: &Rational) -> Result<VerdictReport> {
    timed(|| {
        check_rho(rho)?;
        let mut r =
            VerdictReport::new("sbpn-vs-uniform").param("n", n).param("k", k).param("rho", rho).param("lambda", lambda);
        let theta = ceil_sqrt(4 * (k * n) as u64) as i64;
        let noisy = SymmetricDist::d_lambda(n, k, lambda.clone())?.apply_noise(rho)?;
        let gap = noisy.tail(theta) - WeightPmf::binomial(n)?.tail(theta);
        r.applicable = rho.is_positive() && lambda.is_positive();
        r.check(Check::new("tail gap at theta", gap.clone(), Relation::Gt, Rational::zero()));
        r.metric("theta", int(theta));
        r.metric("gap_float", to_f64(&gap));
        let noisy_lambda = lambda * pow(rho, 2 * k);
        r.metric("noisy_lambda", noisy_lambda.clone());
        let alpha = symdist::alpha_for_lambda(n, k, lambda);
        r.metric("alpha", alpha);
        r.metric("noisy_alpha", alpha * to_f64(rho).powi(2));
        Ok(r)
    })
}

/// Gap between the truncated level-`2k` test under noisy `d_lambda` and its
/// exact maximum over all `2k`-wise uniform distributions.
pub fn check_thm_sbpn_vs_kwise(
    n: usize,
    k: usize,
    rho: &Rational,
    lambda: &Rational,
    mu: &Rational,
) -> Result<VerdictReport> {
    timed(|| {
        check_rho(rho)?;
        let mut r = VerdictReport::new("sbpn-vs-kwise")
            .param("n", n)
            .param("k", k)
            .param("rho", rho)
            .param("lambda", lambda)
            .param("mu", mu);
        let test = SymmetricTest::truncated_kraw(n, k, mu)?;
        let lp = MomentLp::for_test(&test, 2 * k, Sense::Max)?;
        let res = lp.solve()?;
        let noisy = SymmetricDist::d_lambda(n, k, lambda.clone())?.apply_noise(rho)?;
        let e = test.expectation(&noisy)?;
        let gap = &e - &res.optimum;
        r.applicable = rho.is_positive() && lambda.is_positive() && mu.is_positive();
        r.check(Check::new("gap", gap.clone(), Relation::Gt, Rational::zero()));
        r.check(Check::new("LP max over 2k-wise", res.optimum.clone(), Relation::Le, Rational::zero()));
        let verified = lp.verify(&res)? && res.certified;
        r.check(Check::new("LP certificate verified", int(verified as i64), Relation::Eq, int(1)));
        r.metric("expectation", e);
        r.metric("lp_optimum", res.optimum);
        // λμ Σ_t Bin(t) K̄(2k,t)² with noise: the untruncated expectation
        let untrunc = lambda * mu * pow(rho, 2 * k) * symtest::kraw_second_moment(n, 2 * k)?;
        r.metric("untruncated_expectation", untrunc);
        r.metric("gap_float", to_f64(&gap));
        Ok(r)
    })
}

/// `10 (eρ)^{k/2}`
pub fn bipnvssym_bound(k: usize, rho: &Rational) -> f64 {
    10.0 * (E * to_f64(rho)).powf(k as f64 / 2.0)
}

/// Largest smoothed symmetric advantage over every vertex of the `2k`-wise polytope.
pub fn check_thm_bipnvssym_exhaustive(
    n: usize,
    k: usize,
    rho: &Rational,
    max_n: usize,
    slack: f64,
) -> Result<VerdictReport> {
    timed(|| {
        check_rho(rho)?;
        let mut r =
            VerdictReport::new("bipnvssym").param("mode", "exhaustive").param("n", n).param("k", k).param("rho", rho);
        let vertices = momentlp::vertex_enumerate(n, 2 * k, max_n)?;
        let mut best = Rational::zero();
        let mut argmax = 0;
        for (i, v) in vertices.iter().enumerate() {
            let adv = symtest::sym_advantage(&SymmetricDist::from_pmf(v.clone()).apply_noise(rho)?);
            if adv > best {
                best = adv;
                argmax = i;
            }
        }
        r.check(Check::with_slack(
            "max vertex advantage <= 10 (e rho)^(k/2)",
            best.clone(),
            Relation::Le,
            bipnvssym_bound(k, rho),
            slack,
        ));
        r.metric("vertices", int(vertices.len() as i64));
        r.metric("max_advantage_float", to_f64(&best));
        if let Some(v) = vertices.get(argmax) {
            let support: Vec<String> = v.iter().filter(|(_, p)| !p.is_zero()).map(|(t, _)| t.to_string()).collect();
            r.note(format!("maximizing vertex support: {}", support.join(",")));
        }
        Ok(r)
    })
}

/// LP worst case over the `2k`-wise polytope for every threshold and
/// weight-class indicator, smoothed by `T_ρ`.
pub fn check_thm_bipnvssym_family(n: usize, k: usize, rho: &Rational, slack: f64) -> Result<VerdictReport> {
    timed(|| {
        check_rho(rho)?;
        let mut r =
            VerdictReport::new("bipnvssym").param("mode", "family").param("n", n).param("k", k).param("rho", rho);
        let best = bipnvssym_family_max(n, k, rho)?;
        r.check(Check::with_slack(
            "max family advantage <= 10 (e rho)^(k/2)",
            best.clone(),
            Relation::Le,
            bipnvssym_bound(k, rho),
            slack,
        ));
        r.metric("max_advantage_float", to_f64(&best));
        Ok(r)
    })
}

pub fn bipnvssym_family_max(n: usize, k: usize, rho: &Rational) -> Result<Rational> {
    let mut tests = Vec::with_capacity(2 * (n + 1));
    for t in grid::weight_sums(n) {
        tests.push(SymmetricTest::threshold(n, t)?);
        tests.push(SymmetricTest::weight_class_indicator(n, t)?);
    }
    let mut best = Rational::zero();
    for test in &tests {
        let smooth = test.smooth(rho)?;
        let mean = smooth.coeffs()[0].clone();
        let values = smooth.values();
        let hi = MomentLp::new(n, 2 * k, values.clone(), Sense::Max)?.solve()?.optimum;
        let lo = MomentLp::new(n, 2 * k, values, Sense::Min)?.solve()?.optimum;
        for adv in [&hi - &mean, &mean - &lo] {
            if adv > best {
                best = adv;
            }
        }
    }
    Ok(best)
}

/// XOR of two independent symmetric distributions: exact TV to uniform and the
/// levelwise bias product.
pub fn check_thm_sym_xor_sym(d1: &SymmetricDist, d2: &SymmetricDist, k: usize) -> Result<VerdictReport> {
    timed(|| {
        let n = d1.n();
        let mut r = VerdictReport::new("sym-xor-sym").param("n", n).param("k", k);
        let conv = d1.convolve(d2)?;
        let product: Vec<Rational> = d1.profile().eps().iter().zip(d2.profile().eps()).map(|(a, b)| a * b).collect();
        let recovered = pmf_to_profile(conv.pmf());
        let mismatches = recovered.eps().iter().zip(&product).filter(|(a, b)| a != b).count();
        r.check(Check::new("levels where bias != product", int(mismatches as i64), Relation::Eq, int(0)));
        let bin = SymmetricDist::binomial(n)?;
        let tv = conv.tv_distance(&bin)?;
        let tv1 = d1.tv_distance(&bin)?;
        let tv2 = d2.tv_distance(&bin)?;
        r.metric("tv_xor", tv.clone());
        r.metric("tv_first", tv1.clone());
        r.metric("tv_second", tv2.clone());
        r.metric("n_pow_minus_0.3k", (n as f64).powf(-0.3 * k as f64));
        r.metric("tv_xor_le_min_tv", int((tv <= tv1.min(tv2)) as i64));
        r.note("the constant c_k in c_k n^(-0.3k) is unspecified; comparison is report-only");
        Ok(r)
    })
}

pub fn check_thm_sym_xor_sym_lambda(
    n: usize,
    k: usize,
    lambda1: &Rational,
    lambda2: &Rational,
) -> Result<VerdictReport> {
    let d1 = SymmetricDist::d_lambda(n, k, lambda1.clone())?;
    let d2 = SymmetricDist::d_lambda(n, k, lambda2.clone())?;
    let mut r = check_thm_sym_xor_sym(&d1, &d2, k)?;
    r.params.push(Param { name: "lambda1".into(), value: lambda1.to_string() });
    r.params.push(Param { name: "lambda2".into(), value: lambda2.to_string() });
    Ok(r)
}

/// `C((a·max{s,√(kn)}/n)^{k/2} + (e³n/2k)^{k/2} ε)` without the constant `C`.
pub fn shifted_sym_bracket(n: usize, k: usize, s: i64, eps: f64, a: f64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let m = (s.unsigned_abs() as f64).max((kf * nf).sqrt());
    (a * m / nf).powf(kf / 2.0) + (E.powi(3) * nf / (2.0 * kf)).powf(kf / 2.0) * eps
}

/// Largest symmetric-test error after shifting by a string with coordinate sum `s`.
pub fn check_thm_shifted_sym(dist: &SymmetricDist, k: usize, s: i64) -> Result<VerdictReport> {
    timed(|| {
        let n = dist.n();
        let mut r = VerdictReport::new("shifted-sym").param("n", n).param("k", k).param("s", s);
        let direct = dist.shifted_weight_law(s)?;
        let via_conv = dist.convolve(&SymmetricDist::weight_class(n, s)?)?;
        r.check(Check::new(
            "shifted law: overlap count == convolution",
            int((&direct == via_conv.pmf()) as i64),
            Relation::Eq,
            int(1),
        ));
        let error = symtest::sym_advantage_pmf(&direct);
        let eps = to_f64(&dist.profile().max_bias_over(1..=n));
        r.metric("error", error.clone());
        r.metric("error_float", to_f64(&error));
        r.metric("epsilon", eps);
        r.metric("bound_without_C_11", shifted_sym_bracket(n, k, s, eps, 11.0));
        r.metric("bound_without_C_120", shifted_sym_bracket(n, k, s, eps, 120.0));
        r.note("the constant C is unspecified; bound comparison is report-only");
        Ok(r)
    })
}

/// Modular-weight distribution shifted by a `{0,1}` string of weight `w`: the
/// test `1[|x| ≡ ⌊(m+1)/2⌋ mod m]` never fires, yet fires on uniform with
/// probability at least `1/m − δ`.
pub fn check_shifted_sym_lb(n: usize, m: usize, w: usize, delta: &Rational) -> Result<VerdictReport> {
    timed(|| {
        let mut r =
            VerdictReport::new("shifted-sym-lb").param("n", n).param("m", m).param("w", w).param("delta", delta);
        if m < 3 || w + 1 > m / 2 {
            return Err(Error::Precondition(format!("need m >= 3 and w <= floor(m/2) - 1; got m={m}, w={w}")));
        }
        let dist = SymmetricDist::mod_weight(n, m, 0)?;
        let s = grid::from_hamming(n, w)?;
        let shifted = dist.shifted_weight_law(s)?;
        let target = m.div_ceil(2);
        let test = SymmetricTest::from_fn(n, |t| {
            let hw = ((n as i64 - t) / 2) as usize;
            if hw % m == target {
                Rational::one()
            } else {
                Rational::zero()
            }
        })?;
        let on_shift = test.expectation_pmf(&shifted)?;
        let on_uniform = test.expectation_pmf(&WeightPmf::binomial(n)?)?;
        let floor = Rational::new(1.into(), (m as i64).into()) - delta;
        r.check(Check::new("E[f(z.D)]", on_shift, Relation::Eq, Rational::zero()));
        r.check(Check::new("Pr[f(U)=1] >= 1/m - delta", on_uniform.clone(), Relation::Ge, floor));
        r.metric("uniform_deficit", Rational::new(1.into(), (m as i64).into()) - on_uniform);
        r.metric("max_bias", to_f64(&dist.profile().max_bias_over(1..=n)));
        Ok(r)
    })
}

/// `Σ_t Bin(t) |Σ_{ℓ≥1} f̂([ℓ]) ε_ℓ K̄(ℓ,t)|`: the average over shifts `u` of
/// `|E f(u·D) − E f(U)|`.
pub fn bazzi_error(dist: &SymmetricDist, test: &SymmetricTest) -> Result<Rational> {
    let n = dist.n();
    let table = krawtchouk::table(n)?;
    let coeffs = test.level_coeffs();
    let weights: Vec<(usize, Rational)> = coeffs
        .coeffs()
        .iter()
        .zip(dist.profile().eps())
        .enumerate()
        .skip(1)
        .filter(|(_, (c, e))| !c.is_zero() && !e.is_zero())
        .map(|(l, (c, e))| (l, c * e))
        .collect();
    let bin = WeightPmf::binomial(n)?;
    Ok(bin
        .probs()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let inner: Rational =
                weights.iter().map(|(l, w)| w * Rational::from_integer(table.at(*l, i).clone())).sum();
            b * inner.abs()
        })
        .sum())
}

/// Same quantity from shifted weight laws, class by class.
pub fn bazzi_error_by_shifts(dist: &SymmetricDist, test: &SymmetricTest) -> Result<Rational> {
    let n = dist.n();
    let bin = WeightPmf::binomial(n)?;
    let mean = test.expectation_pmf(&bin)?;
    let mut total = Rational::zero();
    for (t, b) in bin.iter() {
        let shifted = dist.shifted_weight_law(t)?;
        total += b * (test.expectation_pmf(&shifted)? - &mean).abs();
    }
    Ok(total)
}

pub fn check_thm_bazzi(dist: &SymmetricDist, k: usize, test: &SymmetricTest, label: &str) -> Result<VerdictReport> {
    timed(|| {
        let n = dist.n();
        let mut r = VerdictReport::new("bazzi").param("n", n).param("k", k).param("test", label);
        if k == 0 || k >= n {
            return Err(Error::Precondition(format!("need 1 <= k < n; got k = {k}")));
        }
        let outer = (1..=k).chain(n - k..=n);
        if !dist.profile().vanishes_on(outer) {
            return Err(Error::Precondition("profile must vanish on levels [1,k] and [n-k,n]".into()));
        }
        let err = bazzi_error(dist, test)?;
        let alt = bazzi_error_by_shifts(dist, test)?;
        r.check(Check::new("error: coefficient route == shift route", alt, Relation::Eq, err.clone()));
        let ratio = Rational::new((k as i64).into(), (n as i64).into());
        let rhs4 = pow(&int(6), 4) * pow(&ratio, k - 1);
        r.check(Check::new("error^4 <= 6^4 (k/n)^(k-1)", pow(&err, 4), Relation::Le, rhs4));
        let (nf, kf) = (n as f64, k as f64);
        r.metric("error", err.clone());
        r.metric("error_float", to_f64(&err));
        r.metric("stated_bound", 6.0 * (kf / nf).powf((kf - 1.0) / 4.0));
        r.metric("proof_bound", 6.0 * (2.0 * kf / (E * nf)).powf((kf - 1.0) / 4.0));
        Ok(r)
    })
}

/// `(e³ρn/K)^{K/2} ε`
pub fn oz_bound(n: usize, order: usize, rho: &Rational, eps: &Rational) -> f64 {
    (E.powi(3) * to_f64(rho) * n as f64 / order as f64).powf(order as f64 / 2.0) * to_f64(eps)
}

/// Exact distance from the noisy distribution to the `order`-wise polytope,
/// against the bound for `(ε, order)`-biased inputs.
pub fn check_lemma_oz(dist: &SymmetricDist, order: usize, rho: &Rational, slack: f64) -> Result<VerdictReport> {
    timed(|| {
        check_rho(rho)?;
        let n = dist.n();
        let mut r = VerdictReport::new("lemma-oz").param("n", n).param("order", order).param("rho", rho);
        if order == 0 {
            return Err(Error::Precondition("order must be positive".into()));
        }
        let eps = dist.profile().max_bias_over(1..=order);
        let noisy = dist.apply_noise(rho)?;
        let res = momentlp::min_tv_to_kwise(&noisy, order)?;
        let bound = oz_bound(n, order, rho, &eps);
        r.check(Check::with_slack("min tv to order-wise", res.optimum.clone(), Relation::Le, bound, slack));
        r.check(Check::new("LP certificate verified", int(res.certified as i64), Relation::Eq, int(1)));
        r.metric("epsilon", eps);
        r.metric("min_tv", res.optimum.clone());
        r.metric("min_tv_float", to_f64(&res.optimum));
        if bound > 0.0 {
            r.metric("ratio", to_f64(&res.optimum) / bound);
        }
        Ok(r)
    })
}

/// Exact `Pr[Bin(blocks, p) ≥ θ]`.
pub fn binomial_tail(blocks: usize, p: &Rational, theta: usize) -> Result<Rational> {
    if p.is_negative() || *p > Rational::one() {
        return Err(Error::Precondition(format!("probability must lie in [0,1]; got {p}")));
    }
    let q = Rational::one() - p;
    Ok((theta..=blocks).map(|j| binom_r(blocks, j) * pow(p, j) * pow(&q, blocks - j)).sum())
}

/// Tails of the block-count statistic under `D` and `U`.
pub fn block_amplify(blocks: usize, p_d: &Rational, p_u: &Rational, theta: usize) -> Result<(Rational, Rational)> {
    Ok((binomial_tail(blocks, p_d, theta)?, binomial_tail(blocks, p_u, theta)?))
}

pub fn check_block_amplify(blocks: usize, p_d: &Rational, p_u: &Rational, theta: usize) -> Result<VerdictReport> {
    timed(|| {
        let mut r = VerdictReport::new("block-amplify")
            .param("blocks", blocks)
            .param("p_d", p_d)
            .param("p_u", p_u)
            .param("theta", theta);
        let (td, tu) = block_amplify(blocks, p_d, p_u, theta)?;
        let gap = &td - &tu;
        r.check(Check::new("tail gap >= 1/3", gap.clone(), Relation::Ge, Rational::new(1.into(), 3.into())));
        r.metric("tail_d", to_f64(&td));
        r.metric("tail_u", to_f64(&tu));
        r.metric("gap", to_f64(&gap));
        Ok(r)
    })
}

/// Claim identifiers accepted by [`run_default`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    PtwiseLb,
    SbpnVsUniform,
    SbpnVsKwise,
    Bipnvssym,
    SymXorSym,
    ShiftedSym,
    ShiftedSymLb,
    Bazzi,
    LemmaOz,
    BlockAmplify,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::PtwiseLb,
        Claim::SbpnVsUniform,
        Claim::SbpnVsKwise,
        Claim::Bipnvssym,
        Claim::SymXorSym,
        Claim::ShiftedSym,
        Claim::ShiftedSymLb,
        Claim::Bazzi,
        Claim::LemmaOz,
        Claim::BlockAmplify,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::PtwiseLb => "ptwise-lb",
            Claim::SbpnVsUniform => "sbpn-vs-uniform",
            Claim::SbpnVsKwise => "sbpn-vs-kwise",
            Claim::Bipnvssym => "bipnvssym",
            Claim::SymXorSym => "sym-xor-sym",
            Claim::ShiftedSym => "shifted-sym",
            Claim::ShiftedSymLb => "shifted-sym-lb",
            Claim::Bazzi => "bazzi",
            Claim::LemmaOz => "lemma-oz",
            Claim::BlockAmplify => "block-amplify",
        }
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| Error::Parse(format!("unknown claim `{s}`")))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Parameters shared by the harnesses; `None` selects the claim's default.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClaimParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub rho: Option<Rational>,
    pub lambda: Option<Rational>,
    pub mu: Option<Rational>,
    pub theta: Option<i64>,
    pub s: Option<i64>,
    pub m: Option<usize>,
    pub max_n: Option<usize>,
    pub slack: Option<f64>,
    /// Sweep every admissible `t` instead of a single value.
    pub t_sweep: bool,
}

fn valid_lambda(n: usize, k: usize, given: &Option<Rational>) -> Result<Rational> {
    match given {
        Some(l) => Ok(l.clone()),
        None => symdist::max_valid_lambda(n, 2 * k)?
            .ok_or_else(|| Error::Precondition("level has no negative values".into())),
    }
}

/// Runs one claim with defaults filled in from `p`.
pub fn run_default(claim: Claim, p: &ClaimParams) -> Result<Vec<VerdictReport>> {
    let one = Rational::one();
    let rho = p.rho.clone().unwrap_or_else(|| one.clone());
    let max_n = p.max_n.unwrap_or(12);
    let slack = p.slack.unwrap_or(FLOAT_SLACK);
    match claim {
        Claim::PtwiseLb => {
            let (n, k) = (p.n.unwrap_or(64), p.k.unwrap_or(2));
            let lambda = valid_lambda(n, k, &p.lambda)?;
            match p.theta {
                Some(t) if !p.t_sweep => Ok(vec![check_ptwise_lb(n, k, &lambda, t)?]),
                _ => Ok(vec![check_ptwise_lb_sweep(n, k, &lambda)?]),
            }
        }
        Claim::SbpnVsUniform => {
            let (n, k) = (p.n.unwrap_or(64), p.k.unwrap_or(2));
            let lambda = valid_lambda(n, k, &p.lambda)?;
            Ok(vec![check_thm_sbpn_vs_uniform(n, k, &rho, &lambda)?])
        }
        Claim::SbpnVsKwise => {
            let (n, k) = (p.n.unwrap_or(32), p.k.unwrap_or(1));
            let lambda = valid_lambda(n, k, &p.lambda)?;
            let mu = p.mu.clone().unwrap_or_else(|| lambda.clone());
            Ok(vec![check_thm_sbpn_vs_kwise(n, k, &rho, &lambda, &mu)?])
        }
        Claim::Bipnvssym => {
            let (n, k) = (p.n.unwrap_or(12), p.k.unwrap_or(2));
            let rho = p.rho.clone().unwrap_or_else(|| Rational::new(1.into(), 16.into()));
            let mut out = vec![check_thm_bipnvssym_family(n, k, &rho, slack)?];
            if n <= max_n {
                out.insert(0, check_thm_bipnvssym_exhaustive(n, k, &rho, max_n, slack)?);
            }
            Ok(out)
        }
        Claim::SymXorSym => {
            let (n, k) = (p.n.unwrap_or(32), p.k.unwrap_or(2));
            let lambda = valid_lambda(n, k, &p.lambda)?;
            Ok(vec![check_thm_sym_xor_sym_lambda(n, k, &lambda, &lambda)?])
        }
        Claim::ShiftedSym => {
            let (n, k) = (p.n.unwrap_or(30), p.k.unwrap_or(2));
            let dist = SymmetricDist::mod_weight(n, p.m.unwrap_or(5), 0)?;
            let s = p.s.unwrap_or(n as i64 - 2);
            Ok(vec![check_thm_shifted_sym(&dist, k, s)?])
        }
        Claim::ShiftedSymLb => {
            let (n, m) = (p.n.unwrap_or(30), p.m.unwrap_or(5));
            let w = match p.s {
                Some(s) => grid::to_hamming(n, s)?,
                None => 1,
            };
            Ok(vec![check_shifted_sym_lb(n, m, w, &Rational::new(1.into(), 10.into()))?])
        }
        Claim::Bazzi => {
            let (n, k) = (p.n.unwrap_or(32), p.k.unwrap_or(5));
            let level = n / 2;
            let lambda = match &p.lambda {
                Some(l) => l.clone(),
                None => symdist::max_valid_lambda(n, level)?.unwrap_or_else(|| one.clone()),
            };
            let dist = SymmetricDist::single_level(n, level, lambda)?;
            let theta = p.theta.unwrap_or(0);
            Ok(vec![
                check_thm_bazzi(&dist, k, &SymmetricTest::threshold(n, theta)?, &format!("threshold({theta})"))?,
                check_thm_bazzi(&dist, k, &SymmetricTest::constant(n, one.clone())?, "constant(1)")?,
            ])
        }
        Claim::LemmaOz => {
            let (n, k) = (p.n.unwrap_or(16), p.k.unwrap_or(2));
            let lambda = valid_lambda(n, k, &p.lambda)?;
            let dist = SymmetricDist::d_lambda(n, k, lambda)?;
            Ok(vec![check_lemma_oz(&dist, k, &rho, slack)?, check_lemma_oz(&dist, 2 * k, &rho, slack)?])
        }
        Claim::BlockAmplify => {
            let blocks = p.n.unwrap_or(100);
            let theta = p.theta.map_or(55, |t| t.max(0) as usize);
            let p_u = Rational::new(1.into(), 2.into());
            let p_d = p.lambda.clone().unwrap_or_else(|| Rational::new(3.into(), 5.into()));
            Ok(vec![check_block_amplify(blocks, &p_d, &p_u, theta)?])
        }
    }
}

pub type Job = Box<dyn Fn() -> Result<VerdictReport> + Send + Sync>;

/// Runs independent harnesses concurrently; results keep the input order.
pub fn run_jobs(jobs: &[Job]) -> Vec<Result<VerdictReport>> {
    jobs.par_iter().map(|job| job()).collect()
}

/// Every claim at its defaults, concurrently.
pub fn run_all(p: &ClaimParams) -> Vec<Result<Vec<VerdictReport>>> {
    Claim::ALL.par_iter().map(|&c| run_default(c, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn ptwise_trivial_lambda() {
        let r = check_ptwise_lb(16, 1, &Rational::zero(), 8).unwrap();
        assert!(r.pass);
        let c = &r.checks[0];
        assert_eq!(c.lhs, c.rhs);
        assert!(check_ptwise_lb(16, 1, &Rational::zero(), 6).is_err());
    }

    #[test]
    fn sbpn_uniform_small() {
        let lam = symdist::max_valid_lambda(16, 2).unwrap().unwrap();
        let r = check_thm_sbpn_vs_uniform(16, 1, &Rational::one(), &lam).unwrap();
        assert!(r.pass, "{r}");
        let z = check_thm_sbpn_vs_uniform(16, 1, &Rational::zero(), &lam).unwrap();
        assert!(!z.applicable && z.checks[0].lhs == Quantity::Exact(Rational::zero()));
        assert!(z.ok());
    }

    #[test]
    fn sbpn_kwise_small() {
        let lam = symdist::max_valid_lambda(16, 2).unwrap().unwrap();
        let r = check_thm_sbpn_vs_kwise(16, 1, &Rational::one(), &lam, &lam).unwrap();
        assert!(r.pass, "{r}");
        assert!(r.recompute_pass());
    }

    #[test]
    fn bipnvssym_modes_agree() {
        let rho = rat(1, 4);
        let ex = check_thm_bipnvssym_exhaustive(8, 1, &rho, 12, FLOAT_SLACK).unwrap();
        let fam = check_thm_bipnvssym_family(8, 1, &rho, FLOAT_SLACK).unwrap();
        assert!(ex.pass && fam.pass);
        assert!(fam.checks[0].lhs.to_f64() <= ex.checks[0].lhs.to_f64() + 1e-12);
        let zero = check_thm_bipnvssym_exhaustive(8, 1, &Rational::zero(), 12, FLOAT_SLACK).unwrap();
        assert_eq!(zero.checks[0].lhs, Quantity::Exact(Rational::zero()));
    }

    #[test]
    fn xor_with_uniform() {
        let d = SymmetricDist::d_lambda(10, 1, rat(1, 100)).unwrap();
        let r = check_thm_sym_xor_sym(&d, &SymmetricDist::binomial(10).unwrap(), 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.metric_value("tv_xor"), Some(&Quantity::Exact(Rational::zero())));
    }

    #[test]
    fn shifted_binomial_is_exact() {
        let r = check_thm_shifted_sym(&SymmetricDist::binomial(12).unwrap(), 2, 4).unwrap();
        assert!(r.pass);
        assert_eq!(r.metric_value("error"), Some(&Quantity::Exact(Rational::zero())));
        assert!(check_thm_shifted_sym(&SymmetricDist::binomial(12).unwrap(), 2, 3).is_err());
    }

    #[test]
    fn bazzi_trivial_cases() {
        let bin = SymmetricDist::binomial(12).unwrap();
        let thr = SymmetricTest::threshold(12, 0).unwrap();
        let r = check_thm_bazzi(&bin, 3, &thr, "threshold(0)").unwrap();
        assert_eq!(r.metric_value("error"), Some(&Quantity::Exact(Rational::zero())));
        let d = SymmetricDist::single_level(12, 6, rat(1, 1000)).unwrap();
        let c = check_thm_bazzi(&d, 3, &SymmetricTest::constant(12, Rational::one()).unwrap(), "c").unwrap();
        assert_eq!(c.metric_value("error"), Some(&Quantity::Exact(Rational::zero())));
        let bad = SymmetricDist::single_level(12, 2, rat(1, 1000)).unwrap();
        assert!(check_thm_bazzi(&bad, 3, &thr, "t").is_err());
    }

    #[test]
    fn oz_zero_noise() {
        let d = SymmetricDist::d_lambda(10, 1, rat(1, 100)).unwrap();
        let r = check_lemma_oz(&d, 2, &Rational::zero(), FLOAT_SLACK).unwrap();
        assert_eq!(r.checks[0].lhs, Quantity::Exact(Rational::zero()));
        assert!(r.pass);
    }

    #[test]
    fn block_amplify_trivial() {
        let p = rat(3, 10);
        assert_eq!(block_amplify(1, &p, &rat(1, 7), 1).unwrap(), (p.clone(), rat(1, 7)));
        let (a, b) = block_amplify(20, &p, &p, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(binomial_tail(5, &rat(1, 2), 0).unwrap(), Rational::one());
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert!("nope".parse::<Claim>().is_err());
    }

    #[test]
    fn parallel_runner_keeps_order() {
        let jobs: Vec<Job> =
            (1..=4).map(|b| Box::new(move || check_block_amplify(b, &rat(1, 2), &rat(1, 2), 1)) as Job).collect();
        let out = run_jobs(&jobs);
        for (b, r) in (1..=4).zip(out) {
            assert_eq!(r.unwrap().params[0].value, b.to_string());
        }
    }
}
