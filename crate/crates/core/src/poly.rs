//! Univariate polynomials over the rationals with exact real-root counting.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Coefficients in ascending degree order, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `Π (z - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        let mut p = Poly::constant(Rational::one());
        for r in roots {
            p = p.mul(&Poly::new(vec![-r, Rational::one()]));
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => Poly { coeffs: self.coeffs.iter().map(|c| c / l).collect() },
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = c · Π a_i^i`, returned as `[a_1, a_2, ...]`.
    pub fn square_free_decomposition(&self) -> Vec<Poly> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let c = d.div_rem(&a0).0;
        let mut dd = c.sub(&b.derivative());
        let mut out = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            let nb = b.div_rem(&a).0;
            let nc = dd.div_rem(&a).0;
            dd = nc.sub(&nb.derivative());
            b = nb;
            out.push(a);
        }
        out
    }

    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().unwrap().div_rem(&next).1.neg();
            seq.push(next);
            next = r;
        }
        seq
    }

    /// Number of distinct real roots, from Sturm sign changes at `±∞`.
    pub fn distinct_real_roots(&self) -> usize {
        let seq = self.sturm_sequence();
        let at_pos: Vec<bool> = seq.iter().filter_map(|p| p.leading().map(|l| l.is_positive())).collect();
        let at_neg: Vec<bool> =
            seq.iter().filter_map(|p| p.leading().map(|l| l.is_positive() == (p.degree().unwrap() % 2 == 0))).collect();
        sign_changes(&at_neg) - sign_changes(&at_pos)
    }

    /// Number of real roots counted with multiplicity.
    pub fn real_roots_with_multiplicity(&self) -> usize {
        self.square_free_decomposition().iter().enumerate().map(|(i, a)| (i + 1) * a.distinct_real_roots()).sum()
    }
}

fn sign_changes(signs: &[bool]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        let (q, r) = p(&[5, 0, 3, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q.mul(&p(&[1, 1])).add(&r), p(&[5, 0, 3, 1]));
        assert!(r.degree().unwrap_or(0) == 0);
        assert_eq!(p(&[0, 0, 3]).derivative(), p(&[0, 6]));
        assert_eq!(p(&[1, 2, 3]).eval(&rat(1, 2)), rat(11, 4));
        assert_eq!(p(&[0, 0, 0]), Poly::zero());
        assert_eq!(p(&[1, -2, 1]).to_string(), "z^2 - 2*z + 1");
    }

    #[test]
    fn gcd_and_square_free() {
        let f = Poly::from_roots(&[int(1), int(1), int(1), int(-3), int(2), int(2)]);
        let parts = f.square_free_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], Poly::from_roots(&[int(-3)]));
        assert_eq!(parts[1], Poly::from_roots(&[int(2)]));
        assert_eq!(parts[2], Poly::from_roots(&[int(1)]));
        assert_eq!(f.gcd(&f.derivative()), Poly::from_roots(&[int(1), int(1), int(2)]));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(p(&[1, 0, 1]).distinct_real_roots(), 0);
        assert_eq!(p(&[-1, 0, 1]).distinct_real_roots(), 2);
        let f = Poly::from_roots(&[int(1), int(1), int(-3)]);
        assert_eq!(f.distinct_real_roots(), 2);
        assert_eq!(f.real_roots_with_multiplicity(), 3);
        // (z^2 + 1)(z - 1)^2
        let g = p(&[1, 0, 1]).mul(&Poly::from_roots(&[int(1), int(1)]));
        assert_eq!(g.real_roots_with_multiplicity(), 2);
        let close = Poly::from_roots(&[rat(1, 1000), rat(1, 999), rat(-7, 3)]);
        assert_eq!(close.distinct_real_roots(), 3);
    }
}
