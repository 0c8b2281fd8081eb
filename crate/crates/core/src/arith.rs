//! Exact-arithmetic helpers shared by every module: binomials, rational
//! parsing, and big-number logarithms for the float-only reports.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Row `n` of Pascal's triangle, `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// `2^-n` as an exact rational.
pub fn inv_pow2(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n)
}

pub fn pow(base: &Rational, exp: usize) -> Rational {
    num_traits::pow(base.clone(), exp)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// `log2 |x|`, or `-inf` for zero. Accurate to double precision for any size.
pub fn log2_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mag = x.magnitude();
    let bits = mag.bits();
    if bits <= 64 {
        return mag.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

/// `log2 |r|` for a nonzero rational.
pub fn log2_abs_rational(r: &Rational) -> f64 {
    log2_abs(r.numer()) - log2_abs(r.denom())
}

/// Float view of a rational that may have huge numerator and denominator.
pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    let sign = if r.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
    sign * log2_abs_rational(r).exp2()
}

/// Smallest integer `m >= 0` with `m^2 >= v`.
pub fn ceil_sqrt(v: u64) -> u64 {
    let mut m = (v as f64).sqrt() as u64;
    while m * m < v {
        m += 1;
    }
    while m > 0 && (m - 1) * (m - 1) >= v {
        m -= 1;
    }
    m
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn is_even(v: i64) -> bool {
    v.is_even()
}

/// Binary entropy in bits, with `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_row_matches_binomial() {
        let row = binomial_row(10);
        for (k, c) in row.iter().enumerate() {
            assert_eq!(*c, binomial(10, k));
        }
        assert_eq!(row[5], BigInt::from(252));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" -2/-4 ").unwrap(), rat(1, 2));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn log2_of_huge_integers() {
        let x = BigInt::one() << 1000usize;
        assert!((log2_abs(&x) - 1000.0).abs() < 1e-12);
        let y = BigInt::from(-12345);
        assert!((log2_abs(&y) - 12345f64.log2()).abs() < 1e-12);
        let r = Rational::new(BigInt::one(), BigInt::one() << 2000usize);
        assert!((to_f64(&r) - 0.0).abs() < 1e-300);
        assert!((log2_abs_rational(&r) + 2000.0).abs() < 1e-9);
    }

    #[test]
    fn integer_square_root_ceiling() {
        assert_eq!(ceil_sqrt(512), 23);
        assert_eq!(ceil_sqrt(529), 23);
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
    }
}
