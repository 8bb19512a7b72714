//! Exact arithmetic in Q and in the quadratic field Q(sqrt p).
//!
//! A [`Scalar`] is `a + b*sqrt(p)` with rational `a`, `b`. The prime `p` is
//! carried by every value so that combining values from different fields is
//! caught; matrix and tuple constructors reject mixed primes up front, the
//! arithmetic operators treat it as a programming error and panic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field Q(sqrt p) for a fixed prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    p: u32,
}

impl Default for QuadField {
    fn default() -> Self {
        QuadField { p: 2 }
    }
}

impl QuadField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(QuadField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_parts(Rational::zero(), Rational::zero(), self.p)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, k: i64) -> Scalar {
        Scalar::from_parts(Rational::from_integer(k.into()), Rational::zero(), self.p)
    }

    pub fn rational(&self, q: Rational) -> Scalar {
        Scalar::from_parts(q, Rational::zero(), self.p)
    }

    /// `num/den` as a rational scalar.
    pub fn frac(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.rational(Rational::new(num.into(), den.into())))
    }

    pub fn scalar(&self, a: Rational, b: Rational) -> Scalar {
        Scalar::from_parts(a, b, self.p)
    }

    /// The prime itself as a scalar.
    pub fn p_scalar(&self) -> Scalar {
        self.int(self.p as i64)
    }

    pub fn sqrt_p(&self) -> Scalar {
        Scalar::from_parts(Rational::zero(), Rational::one(), self.p)
    }

    /// `p^k` for any integer `k`.
    pub fn p_power(&self, k: i32) -> Scalar {
        let base = BigInt::from(self.p).pow(k.unsigned_abs());
        let q = if k >= 0 {
            Rational::from_integer(base)
        } else {
            Rational::new(BigInt::one(), base)
        };
        self.rational(q)
    }

    /// `(sqrt p)^k`, i.e. `p^(k/2)`, exact for every integer `k`.
    pub fn sqrt_p_power(&self, k: i32) -> Scalar {
        if k % 2 == 0 {
            self.p_power(k / 2)
        } else {
            // k = 2m + 1 with floor division keeps m correct for negative k
            let m = k.div_euclid(2);
            let r = self.p_power(m);
            Scalar::from_parts(Rational::zero(), r.a, self.p)
        }
    }

    /// Parses `"n"`, `"n/d"` into a rational.
    pub fn parse_rational(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("cannot parse rational '{s}'"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational::new(num, den))
    }

    /// Parses the serialized pair form `["a", "b"]` meaning `a + b sqrt p`.
    pub fn parse_pair(&self, a: &str, b: &str) -> Result<Scalar> {
        Ok(self.scalar(Self::parse_rational(a)?, Self::parse_rational(b)?))
    }
}

/// `a + b*sqrt(p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    p: u32,
}

impl Scalar {
    fn from_parts(a: Rational, b: Rational, p: u32) -> Self {
        Scalar { a, b, p }
    }

    pub fn field(&self) -> QuadField {
        QuadField { p: self.p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of sqrt p.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    /// Galois conjugate `a - b sqrt p`.
    pub fn conj(&self) -> Scalar {
        Scalar::from_parts(self.a.clone(), -self.b.clone(), self.p)
    }

    /// Field norm `a^2 - p b^2`.
    pub fn norm(&self) -> Rational {
        let p = Rational::from_integer(self.p.into());
        &self.a * &self.a - p * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Scalar::from_parts(self.a.recip(), Rational::zero(), self.p));
        }
        // norm is nonzero because sqrt p is irrational
        let n = self.norm();
        Ok(Scalar::from_parts(&self.a / &n, -(&self.b / &n), self.p))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Scalar> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.one_like();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale_rational(&self, q: &Rational) -> Scalar {
        Scalar::from_parts(&self.a * q, &self.b * q, self.p)
    }

    /// Square root inside Q(sqrt p), when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        let f = self.field();
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(f.rational(r));
            }
            let over_p = &self.a / Rational::from_integer(self.p.into());
            return rational_sqrt(&over_p).map(|r| f.scalar(Rational::zero(), r));
        }
        // (x + y sqrt p)^2 = u + v sqrt p  =>  x^2 = (u +- sqrt(norm)) / 2
        let s = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(2.into());
        for cand in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(x) = rational_sqrt(&cand) {
                let y = &self.b / (&two * &x);
                let root = f.scalar(x, y);
                if &(&root * &root) == self {
                    return Some(root);
                }
            }
        }
        None
    }

    /// Serialized pair `["a_num/a_den", "b_num/b_den"]`, zero written `"0"`.
    pub fn to_pair(&self) -> [String; 2] {
        [fmt_rational(&self.a), fmt_rational(&self.b)]
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.p, other.p,
            "arithmetic between Q(sqrt {}) and Q(sqrt {})",
            self.p, other.p
        );
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_zero() {
        "0".to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt(q.numer())?;
    let d = integer_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt{}", self.b, self.p),
            (false, false) => write!(f, "{} + {}*sqrt{}", self.a, self.b, self.p),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        Scalar::from_parts(&self.a + &rhs.a, &self.b + &rhs.b, self.p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        Scalar::from_parts(&self.a - &rhs.a, &self.b - &rhs.b, self.p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::from_parts(&self.a * &rhs.a, Rational::zero(), self.p);
        }
        let p = Rational::from_integer(self.p.into());
        let a = &self.a * &rhs.a + p * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::from_parts(a, b, self.p)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::from_parts(-self.a.clone(), -self.b.clone(), self.p)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::from_parts(-self.a, -self.b, self.p)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.check_same(rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.check_same(rhs);
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}
