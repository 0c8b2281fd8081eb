//! Elementary symmetric polynomials, the Maclaurin-type bound on them, and
//! attainable tuples certified by exact real-root counting.

use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, pow};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::Rational;

fn binom_r(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealTuple {
    y: Vec<Rational>,
}

impl RealTuple {
    pub fn new(y: Vec<Rational>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(RealTuple { y })
    }

    pub fn from_ints(y: &[i64]) -> Result<Self> {
        Self::new(y.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[Rational] {
        &self.y
    }

    /// `S_0..S_n`, the coefficients of `Π (1 + y_i z)`.
    pub fn elem_syms(&self) -> Vec<Rational> {
        let n = self.y.len();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        for (i, yi) in self.y.iter().enumerate() {
            for l in (1..=i + 1).rev() {
                let add = &e[l - 1] * yi;
                e[l] += add;
            }
        }
        e
    }

    pub fn elem_sym(&self, ell: usize) -> Result<Rational> {
        if ell > self.y.len() {
            return Err(Error::Precondition(format!("level {ell} exceeds length {}", self.y.len())));
        }
        Ok(self.elem_syms().swap_remove(ell))
    }

    pub fn sum(&self) -> Rational {
        self.y.iter().sum()
    }

    pub fn sum_squares(&self) -> Rational {
        self.y.iter().map(|v| v * v).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.y.iter().all(|v| *v == self.y[0])
    }
}

pub fn elem_sym(y: &[Rational], ell: usize) -> Result<Rational> {
    RealTuple::new(y.to_vec())?.elem_sym(ell)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaclaurinCheck {
    /// `S_ℓ²`
    pub lhs: Rational,
    /// `C(n,ℓ)² · (a·Σy²/n + (1-a)·(Σy)²/n²)^ℓ` with `a = (ℓ-1)/(n-1)`
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
}

pub fn check_maclaurin_bound(y: &RealTuple, ell: usize) -> Result<MaclaurinCheck> {
    let n = y.len();
    if n < 2 || ell == 0 || ell > n {
        return Err(Error::Precondition(format!("need n >= 2 and 1 <= level <= n, got n = {n}, level = {ell}")));
    }
    let s = y.elem_sym(ell)?;
    let nr = Rational::from_integer(n.into());
    let a = Rational::new((ell - 1).into(), (n - 1).into());
    let sum = y.sum();
    let base = &a * y.sum_squares() / &nr + (Rational::one() - &a) * &sum * &sum / (&nr * &nr);
    let c = binom_r(n, ell);
    let lhs = &s * &s;
    let rhs = &c * &c * pow(&base, ell);
    Ok(MaclaurinCheck { holds: lhs <= rhs, equality: lhs == rhs, lhs, rhs })
}

/// Newton identity `Σy² = n²s_1² − 2C(n,2)s_2`.
pub fn check_newton_p2(y: &RealTuple) -> Result<bool> {
    let n = y.len();
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    let e = y.elem_syms();
    let s1 = &e[1] / Rational::from_integer(n.into());
    let s2 = &e[2] / binom_r(n, 2);
    let nr = Rational::from_integer(n.into());
    Ok(y.sum_squares() == &nr * &nr * &s1 * &s1 - Rational::from_integer(2.into()) * binom_r(n, 2) * s2)
}

/// `Σ_k (−1)^k C(m,k) s_k z^{m−k}`
pub fn tuple_polynomial(s: &[Rational]) -> Poly {
    let m = s.len().saturating_sub(1);
    let mut coeffs = vec![Rational::zero(); m + 1];
    for (k, sk) in s.iter().enumerate() {
        let v = binom_r(m, k) * sk;
        coeffs[m - k] = if k % 2 == 0 { v } else { -v };
    }
    Poly::new(coeffs)
}

/// Whether every root of a nonzero polynomial is real, counting multiplicity.
pub fn is_real_rooted(poly: &Poly) -> Result<bool> {
    let d = poly.degree().ok_or(Error::ZeroPolynomial)?;
    Ok(poly.real_roots_with_multiplicity() == d)
}

/// A tuple `(s_0 = 1, s_1, ..., s_m)` whose polynomial is real-rooted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttainableTuple {
    s: Vec<Rational>,
}

impl AttainableTuple {
    pub fn certify(s: Vec<Rational>) -> Result<Self> {
        if s.first().is_none_or(|s0| !s0.is_one()) {
            return Err(Error::Invalid("attainable tuples start with s_0 = 1".into()));
        }
        if !is_real_rooted(&tuple_polynomial(&s))? {
            return Err(Error::CertificateFailure);
        }
        Ok(AttainableTuple { s })
    }

    /// Normalized elementary symmetric means `s_k = S_k / C(m,k)` of the roots.
    pub fn from_roots(y: &RealTuple) -> Result<Self> {
        let m = y.len();
        let s = y.elem_syms().into_iter().enumerate().map(|(k, e)| e / binom_r(m, k)).collect();
        Self::certify(s)
    }

    pub fn m(&self) -> usize {
        self.s.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.s
    }

    pub fn polynomial(&self) -> Poly {
        tuple_polynomial(&self.s)
    }

    /// Drops `s_m`; the result's polynomial is the normalized derivative.
    pub fn truncate(&self) -> Result<Self> {
        if self.m() == 0 {
            return Err(Error::Precondition("cannot truncate a tuple with m = 0".into()));
        }
        Self::certify(self.s[..self.m()].to_vec())
    }
}

/// `s_ℓ² ≤ ((ℓ−1)(s_1² − s_2) + s_1²)^ℓ`
pub fn check_tao_bound(s: &AttainableTuple, ell: usize) -> Result<bool> {
    if ell == 0 || ell > s.m() {
        return Err(Error::Precondition(format!("level {ell} outside 1..={}", s.m())));
    }
    let v = s.values();
    let s1sq = &v[1] * &v[1];
    let spread = if ell >= 2 { (&s1sq - &v[2]) * Rational::from_integer((ell - 1).into()) } else { Rational::zero() };
    let base = spread + &s1sq;
    Ok(&v[ell] * &v[ell] <= pow(&base, ell))
}

/// Failure of the Maclaurin-type bound at `ℓ = n` once `Σy²` is replaced by
/// `|Σ_{i<j} y_i y_j|`, for `y ∈ {−1,1}^n` with `Σy = √n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaoCounterexample {
    pub y: RealTuple,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl TaoCounterexample {
    pub fn fails(&self) -> bool {
        self.lhs > self.rhs
    }
}

/// Builds the counterexample when `n` is the square of an even number.
pub fn tao_counterexample(n: usize) -> Option<TaoCounterexample> {
    let r = (1..=n).find(|r| r * r >= n)?;
    if r * r != n || r % 2 != 0 {
        return None;
    }
    let minus = (n - r) / 2;
    let y: Vec<i64> = (0..n).map(|i| if i < minus { -1 } else { 1 }).collect();
    let y = RealTuple::from_ints(&y).ok()?;
    let e = y.elem_syms();
    let s_n = e[n].clone();
    let nr = Rational::from_integer(n.into());
    // at ℓ = n only the first term of the convex combination survives
    let base = e[2].abs() / nr;
    Some(TaoCounterexample { lhs: &s_n * &s_n, rhs: pow(&base, n), y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn elem_sym_examples() {
        let ones = RealTuple::from_ints(&[1; 6]).unwrap();
        for l in 0..=6 {
            assert_eq!(ones.elem_sym(l).unwrap(), binom_r(6, l));
        }
        assert_eq!(elem_sym(&[int(1), int(2)], 2).unwrap(), int(2));
        assert!(elem_sym(&[int(1)], 2).is_err());
    }

    #[test]
    fn maclaurin_equality_cases() {
        let c = RealTuple::new(vec![rat(3, 7); 5]).unwrap();
        for l in 1..=5 {
            assert!(check_maclaurin_bound(&c, l).unwrap().equality);
        }
        let y = RealTuple::from_ints(&[1, 2, -5, 4]).unwrap();
        assert!(check_maclaurin_bound(&y, 1).unwrap().equality);
        let m2 = check_maclaurin_bound(&y, 2).unwrap();
        assert!(m2.holds && !m2.equality);
        // all |y_i| equal also gives equality at ℓ = n
        let pm = RealTuple::from_ints(&[1, -1]).unwrap();
        assert!(check_maclaurin_bound(&pm, 2).unwrap().equality);
    }

    #[test]
    fn newton() {
        assert!(check_newton_p2(&RealTuple::from_ints(&[1, 2]).unwrap()).unwrap());
        assert!(check_newton_p2(&RealTuple::from_ints(&[0, 0, 0]).unwrap()).unwrap());
        assert!(check_newton_p2(&RealTuple::new(vec![rat(1, 3), rat(-5, 2), int(7)]).unwrap()).unwrap());
    }

    #[test]
    fn attainable_and_truncation() {
        let y = RealTuple::from_ints(&[1, 2, 3]).unwrap();
        let s = AttainableTuple::from_roots(&y).unwrap();
        assert_eq!(s.values(), &[int(1), int(2), rat(11, 3), int(6)]);
        assert_eq!(s.polynomial(), Poly::from_roots(y.values()));
        let t = s.truncate().unwrap();
        assert_eq!(t.m(), 2);
        let base = AttainableTuple::from_roots(&RealTuple::from_ints(&[4]).unwrap()).unwrap();
        assert_eq!(base.truncate().unwrap().values(), &[int(1)]);
        for l in 1..=3 {
            assert!(check_tao_bound(&s, l).unwrap());
        }
        let ones = AttainableTuple::from_roots(&RealTuple::from_ints(&[1, 1, 1]).unwrap()).unwrap();
        assert!(check_tao_bound(&ones, 3).unwrap());
        // s = (1, 0, 1) gives z^2 + 1
        assert_eq!(AttainableTuple::certify(vec![int(1), int(0), int(1)]), Err(Error::CertificateFailure));
    }

    #[test]
    fn real_rootedness() {
        assert!(!is_real_rooted(&Poly::new(vec![int(1), int(0), int(1)])).unwrap());
        assert!(is_real_rooted(&Poly::new(vec![int(-1), int(0), int(1)])).unwrap());
        assert!(is_real_rooted(&Poly::from_roots(&[int(1), int(1), int(-3)])).unwrap());
        assert_eq!(is_real_rooted(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn counterexample() {
        let c = tao_counterexample(4).unwrap();
        assert_eq!(c.lhs, int(1));
        assert_eq!(c.rhs, int(0));
        assert!(c.fails());
        assert!(tao_counterexample(16).unwrap().fails());
        assert!(tao_counterexample(9).is_none());
        assert!(tao_counterexample(8).is_none());
    }
}
