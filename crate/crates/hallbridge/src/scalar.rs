//! Exact arithmetic in the coefficient field Q(v), where v^2 = q for a fixed
//! positive integer q (the order of the ground field).
//!
//! An element is stored as `a + b*v` with `a`, `b` arbitrary-precision
//! rationals, so powers `v^n` are exact for every integer `n` (negative
//! included: `v^-1 = v/q`).  When q happens to be a perfect square, `v` itself
//! is rational and `b` is folded into `a`, keeping representations unique.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Integer square root of `q` if `q` is a perfect square.
fn exact_sqrt(q: u32) -> Option<u32> {
    let r = (q as f64).sqrt().round() as u32;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == q {
            return Some(c);
        }
    }
    None
}

/// An element `a + b*v` of Q(v) with v^2 = q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    q: u32,
}

impl Scalar {
    /// Builds `a + b*v`, folding `b` into `a` when `sqrt(q)` is an integer.
    pub fn new(a: BigRational, b: BigRational, q: u32) -> Self {
        assert!(q >= 2, "ground field order must be at least 2");
        match exact_sqrt(q) {
            Some(s) if !b.is_zero() => {
                let root = BigRational::from_integer(BigInt::from(s));
                Scalar {
                    a: a + b * root,
                    b: BigRational::zero(),
                    q,
                }
            }
            _ => Scalar { a, b, q },
        }
    }

    pub fn zero(q: u32) -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero(), q)
    }

    pub fn one(q: u32) -> Self {
        Scalar::from_int(1, q)
    }

    pub fn from_int(n: i64, q: u32) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
            q,
        )
    }

    pub fn from_u64(n: u64, q: u32) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
            q,
        )
    }

    /// Exact fraction `num/den`.
    pub fn from_ratio(num: i64, den: i64, q: u32) -> Self {
        assert!(den != 0);
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Scalar::new(r, BigRational::zero(), q)
    }

    /// Fraction of two unsigned counts, as used by Hall product coefficients.
    pub fn count_ratio(num: u64, den: u64, q: u32) -> Self {
        assert!(den != 0);
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Scalar::new(r, BigRational::zero(), q)
    }

    /// `v^n` for any integer `n`.  Even powers are rational powers of `q`;
    /// odd powers carry a single factor of `v`.
    pub fn v_pow(n: i64, q: u32) -> Self {
        let qr = BigRational::from_integer(BigInt::from(q));
        // n = 2k + r with r in {0, 1}; v^n = q^k * v^r.
        let k = n.div_euclid(2);
        let r = n.rem_euclid(2);
        let mut qk = BigRational::one();
        let base = if k >= 0 { qr.clone() } else { qr.recip() };
        for _ in 0..k.unsigned_abs() {
            qk *= &base;
        }
        if r == 0 {
            Scalar::new(qk, BigRational::zero(), q)
        } else {
            Scalar::new(BigRational::zero(), qk, q)
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Rational part (coefficient of 1).
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `v`.
    pub fn v_part(&self) -> &BigRational {
        &self.b
    }

    /// Multiplicative inverse: `(a + b*v)^-1 = (a - b*v) / (a^2 - b^2 q)`.
    /// The norm `a^2 - b^2 q` only vanishes for the zero element whenever q is
    /// not a perfect square; the perfect-square case is folded to `b = 0` at
    /// construction time, so the same formula applies.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let qr = BigRational::from_integer(BigInt::from(self.q));
        let norm = &self.a * &self.a - &self.b * &self.b * qr;
        if norm.is_zero() {
            // Unreachable given the folding invariant; kept as a hard guard.
            return Err(Error::Internal("vanishing norm for nonzero scalar".into()));
        }
        Ok(Scalar::new(&self.a / &norm, -(&self.b / &norm), self.q))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale_int(&self, n: i64) -> Scalar {
        let nr = BigRational::from_integer(BigInt::from(n));
        Scalar::new(&self.a * &nr, &self.b * &nr, self.q)
    }

    pub fn scale_u64(&self, n: u64) -> Scalar {
        let nr = BigRational::from_integer(BigInt::from(n));
        Scalar::new(&self.a * &nr, &self.b * &nr, self.q)
    }
}

fn check_same_field(x: &Scalar, y: &Scalar) {
    assert_eq!(x.q, y.q, "scalar arithmetic across different ground fields");
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        check_same_field(self, rhs);
        Scalar::new(&self.a + &rhs.a, &self.b + &rhs.b, self.q)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        check_same_field(self, rhs);
        Scalar::new(&self.a - &rhs.a, &self.b - &rhs.b, self.q)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        check_same_field(self, rhs);
        let qr = BigRational::from_integer(BigInt::from(self.q));
        // (a1 + b1 v)(a2 + b2 v) = a1 a2 + b1 b2 q + (a1 b2 + b1 a2) v
        let a = &self.a * &rhs.a + &self.b * &rhs.b * qr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::new(a, b, self.q)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.a.clone(), -self.b.clone(), self.q)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical form `a + b*v` with reduced fractions, e.g. `3/2 + 1*v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*v", fmt_rational(&self.a), fmt_rational(&self.b))
    }
}
