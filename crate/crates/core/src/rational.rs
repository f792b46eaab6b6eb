//! Reduced fractions over arbitrary-precision naturals.
//!
//! [`PositiveRational`] is the value type of the sequence and never holds zero.
//! [`SignedRational`] covers the signed enumeration, 2-adic rational values and
//! the endpoints of brackets.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// Greatest common divisor, with `gcd(0, n) = n`.
pub fn gcd(a: &Natural, b: &Natural) -> Result<Natural> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    Ok(a.gcd(b))
}

pub(crate) fn parse_natural(what: &'static str, text: &str) -> Result<Natural> {
    if text.is_empty() {
        return Err(Error::parse(what, text, "expected decimal digits"));
    }
    if let Some(bad) = text.chars().find(|c| !c.is_ascii_digit()) {
        return Err(Error::parse(
            what,
            text,
            format!("unexpected character {bad:?}"),
        ));
    }
    Ok(text.parse().expect("validated decimal digits"))
}

/// A fraction `num/den` in lowest terms with `num, den >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PositiveRational {
    num: Natural,
    den: Natural,
}

impl PositiveRational {
    /// Builds `p/q` in lowest terms.
    pub fn new(p: Natural, q: Natural) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroComponent("numerator"));
        }
        if q.is_zero() {
            return Err(Error::ZeroComponent("denominator"));
        }
        let g = p.gcd(&q);
        if g.is_one() {
            Ok(Self { num: p, den: q })
        } else {
            Ok(Self {
                num: p / &g,
                den: q / g,
            })
        }
    }

    /// Caller guarantees `p, q >= 1` and `gcd(p, q) = 1`.
    pub(crate) fn from_coprime(num: Natural, den: Natural) -> Self {
        debug_assert!(!num.is_zero() && !den.is_zero());
        debug_assert!(num.gcd(&den).is_one());
        Self { num, den }
    }

    pub fn one() -> Self {
        Self::from_coprime(Natural::one(), Natural::one())
    }

    pub fn integer(n: Natural) -> Result<Self> {
        Self::new(n, Natural::one())
    }

    pub fn numer(&self) -> &Natural {
        &self.num
    }

    pub fn denom(&self) -> &Natural {
        &self.den
    }

    pub fn into_parts(self) -> (Natural, Natural) {
        (self.num, self.den)
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// `den/num`. Already reduced, so no gcd is taken.
    pub fn reciprocal(&self) -> Self {
        Self::from_coprime(self.den.clone(), self.num.clone())
    }

    /// `(num + den)/den`. Reduced because `gcd(num + den, den) = gcd(num, den)`.
    pub fn add_one(&self) -> Self {
        Self::from_coprime(&self.num + &self.den, self.den.clone())
    }

    /// `self + m` for a natural `m`.
    pub fn add_integer(&self, m: &Natural) -> Self {
        Self::from_coprime(&self.num + m * &self.den, self.den.clone())
    }

    pub(crate) fn add_one_in_place(&mut self) {
        self.num += &self.den;
    }

    pub(crate) fn invert_in_place(&mut self) {
        std::mem::swap(&mut self.num, &mut self.den);
    }

    /// Floor of the value.
    pub fn floor(&self) -> Natural {
        &self.num / &self.den
    }
}

impl fmt::Debug for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for PositiveRational {
    type Err = Error;

    /// Accepts `"p/q"` or `"p"`; any sign is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let (p, q) = match text.split_once('/') {
            Some((p, q)) => (
                parse_natural("rational", p)
                    .map_err(|_| Error::parse("rational", s, "bad numerator"))?,
                parse_natural("rational", q)
                    .map_err(|_| Error::parse("rational", s, "bad denominator"))?,
            ),
            None => (
                parse_natural("rational", text)
                    .map_err(|_| Error::parse("rational", s, "expected p/q or p"))?,
                Natural::one(),
            ),
        };
        Self::new(p, q)
    }
}

impl Ord for PositiveRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for PositiveRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &PositiveRational {
    type Output = PositiveRational;

    fn add(self, rhs: Self) -> PositiveRational {
        PositiveRational::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("sum of positives is positive")
    }
}

impl Mul for &PositiveRational {
    type Output = PositiveRational;

    fn mul(self, rhs: Self) -> PositiveRational {
        PositiveRational::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of positives is positive")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// A rational of any sign in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedRational {
    num: BigInt,
    den: Natural,
}

impl SignedRational {
    pub fn new(num: BigInt, den: Natural) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroComponent("denominator"));
        }
        let g = num.magnitude().gcd(&den);
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if g.is_one() {
            Ok(Self { num, den })
        } else {
            let g_signed = BigInt::from(g.clone());
            Ok(Self {
                num: num / g_signed,
                den: den / g,
            })
        }
    }

    pub fn zero() -> Self {
        Self {
            num: BigInt::zero(),
            den: Natural::one(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self {
            num: n.into(),
            den: Natural::one(),
        }
    }

    pub(crate) fn from_coprime(num: BigInt, den: Natural) -> Self {
        debug_assert!(!den.is_zero());
        debug_assert!(num.magnitude().gcd(&den).is_one());
        Self { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &Natural {
        &self.den
    }

    pub fn sign(&self) -> Sign {
        match self.num.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `|self|`, or `None` for zero.
    pub fn magnitude(&self) -> Option<PositiveRational> {
        if self.num.is_zero() {
            None
        } else {
            Some(PositiveRational::from_coprime(
                self.num.magnitude().clone(),
                self.den.clone(),
            ))
        }
    }

    /// The value as a [`PositiveRational`] when it is strictly positive.
    pub fn to_positive(&self) -> Option<PositiveRational> {
        match self.sign() {
            Sign::Positive => self.magnitude(),
            _ => None,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplies by `2^exp` exactly.
    pub fn mul_pow2(&self, exp: i64) -> Self {
        let shift = exp.unsigned_abs() as usize;
        if exp >= 0 {
            Self::new(&self.num << shift, self.den.clone()).expect("denominator unchanged")
        } else {
            Self::new(self.num.clone(), &self.den << shift).expect("nonzero denominator")
        }
    }

    /// Lossy conversion for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let bits = self.den.bits().max(self.num.magnitude().bits()) as i64;
        let shift = (bits - 60).max(0) as usize;
        let n = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (&self.den >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

impl From<PositiveRational> for SignedRational {
    fn from(r: PositiveRational) -> Self {
        Self {
            num: BigInt::from(r.num),
            den: r.den,
        }
    }
}

impl From<&PositiveRational> for SignedRational {
    fn from(r: &PositiveRational) -> Self {
        Self::from(r.clone())
    }
}

impl fmt::Debug for SignedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for SignedRational {
    type Err = Error;

    /// Accepts an optional leading `-` followed by `"p/q"` or `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (p, q) = match body.split_once('/') {
            Some((p, q)) => (
                parse_natural("rational", p)
                    .map_err(|_| Error::parse("rational", s, "bad numerator"))?,
                parse_natural("rational", q)
                    .map_err(|_| Error::parse("rational", s, "bad denominator"))?,
            ),
            None => (
                parse_natural("rational", body)
                    .map_err(|_| Error::parse("rational", s, "expected p/q or p"))?,
                Natural::one(),
            ),
        };
        let num = BigInt::from(p);
        Self::new(if negative { -num } else { num }, q)
    }
}

impl Ord for SignedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * BigInt::from(other.den.clone()))
            .cmp(&(&other.num * BigInt::from(self.den.clone())))
    }
}

impl PartialOrd for SignedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &SignedRational {
    type Output = SignedRational;

    fn neg(self) -> SignedRational {
        SignedRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for SignedRational {
    type Output = SignedRational;

    fn neg(self) -> SignedRational {
        SignedRational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Add for &SignedRational {
    type Output = SignedRational;

    fn add(self, rhs: Self) -> SignedRational {
        let num =
            &self.num * BigInt::from(rhs.den.clone()) + &rhs.num * BigInt::from(self.den.clone());
        SignedRational::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &SignedRational {
    type Output = SignedRational;

    fn sub(self, rhs: Self) -> SignedRational {
        self + &(-rhs)
    }
}

impl Mul for &SignedRational {
    type Output = SignedRational;

    fn mul(self, rhs: Self) -> SignedRational {
        SignedRational::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SignedRational {
            type Output = SignedRational;

            fn $method(self, rhs: Self) -> SignedRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
