//! Binary indices, gap sequences and canonical finite continued fractions.
//!
//! Writing `n = 2^m0 + 2^m1 + ... + 2^mk` with `m0 < m1 < ... < mk`, the gaps are
//! `n0 = m0` and `ni = mi - m(i-1)`. The term `a(n)` is then the continued
//! fraction `[n0; n1, ..., n(k-1), nk + 1]`, and for `k = 0` the integer `n0 + 1`.
//! Between consecutive set bits there are `ni - 1` zeros, for every `i >= 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{parse_natural, Natural, PositiveRational, SignedRational};
use crate::{Error, Result};

/// Largest bit position an index built from gaps may reach.
pub const MAX_INDEX_BITS: u64 = u32::MAX as u64;

/// Exponent gaps `n0, n1, ..., nk` of a binary index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GapSequence {
    gaps: Vec<u64>,
}

impl GapSequence {
    pub fn new(gaps: Vec<u64>) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::EmptyGaps);
        }
        if let Some(position) = gaps.iter().skip(1).position(|&g| g == 0) {
            return Err(Error::InvalidGap {
                position: position + 1,
                value: 0,
            });
        }
        let mut top: u64 = 0;
        for &g in &gaps {
            top = top
                .checked_add(g)
                .filter(|&t| t <= MAX_INDEX_BITS)
                .ok_or_else(|| Error::IndexTooLarge(g.to_string()))?;
        }
        Ok(Self { gaps })
    }

    /// Accepts signed input so that negative gaps are reported, not wrapped.
    pub fn from_signed(gaps: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(gaps.len());
        for (position, &g) in gaps.iter().enumerate() {
            if g < 0 || (position > 0 && g == 0) {
                return Err(Error::InvalidGap {
                    position,
                    value: g.into(),
                });
            }
            out.push(g as u64);
        }
        Self::new(out)
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// `k`, the index of the last gap.
    pub fn last_position(&self) -> usize {
        self.gaps.len() - 1
    }
}

/// Gap sequence of the set bits of `n`, lowest first.
pub fn gaps_from_index(n: &Natural) -> Result<GapSequence> {
    if n.is_zero() {
        return Err(Error::ZeroIndex);
    }
    let mut gaps = Vec::with_capacity(n.count_ones() as usize);
    let mut previous: Option<u64> = None;
    for bit in 0..n.bits() {
        if n.bit(bit) {
            gaps.push(match previous {
                None => bit,
                Some(p) => bit - p,
            });
            previous = Some(bit);
        }
    }
    Ok(GapSequence { gaps })
}

/// `2^n0 + 2^(n0+n1) + ... + 2^(n0+...+nk)`.
pub fn index_from_gaps(g: &GapSequence) -> Natural {
    let mut n = Natural::zero();
    let mut position = 0u64;
    for &gap in &g.gaps {
        position += gap;
        n.set_bit(position, true);
    }
    n
}

/// A finite continued fraction `z + 1/(q1 + 1/(q2 + ... + 1/qm))`.
///
/// Every quotient is at least 1 and a final quotient is at least 2, which makes
/// the representation of each rational unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCF {
    z: BigInt,
    quotients: Vec<Natural>,
}

fn check_quotients(quotients: &[Natural]) -> Result<()> {
    match quotients.iter().position(Zero::is_zero) {
        Some(position) => Err(Error::InvalidQuotient {
            position: position + 1,
            value: "0".into(),
        }),
        None => Ok(()),
    }
}

impl FiniteCF {
    /// Strict constructor: rejects a final quotient of 1.
    pub fn new(z: BigInt, quotients: Vec<Natural>) -> Result<Self> {
        check_quotients(&quotients)?;
        if quotients.last().is_some_and(One::is_one) {
            return Err(Error::NonCanonical);
        }
        Ok(Self { z, quotients })
    }

    /// Folds a final quotient of 1 into its predecessor: `[.., q, 1] = [.., q+1]`.
    pub fn new_lenient(mut z: BigInt, mut quotients: Vec<Natural>) -> Result<Self> {
        check_quotients(&quotients)?;
        if quotients.last().is_some_and(One::is_one) {
            quotients.pop();
            match quotients.last_mut() {
                Some(q) => *q += 1u32,
                None => z += 1,
            }
        }
        Ok(Self { z, quotients })
    }

    pub fn integer(z: impl Into<BigInt>) -> Self {
        Self {
            z: z.into(),
            quotients: Vec::new(),
        }
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    pub fn quotients(&self) -> &[Natural] {
        &self.quotients
    }

    pub fn value(&self) -> SignedRational {
        eval_cf(self)
    }

    /// Parses `"[z; q1, ..., qm]"`, normalizing a trailing 1 instead of rejecting it.
    pub fn parse_lenient(text: &str) -> Result<Self> {
        let (z, quotients) = parse_cf_parts(text)?;
        Self::new_lenient(z, quotients)
    }
}

fn parse_cf_parts(text: &str) -> Result<(BigInt, Vec<Natural>)> {
    let err = |reason: &str| Error::parse("continued fraction", text, reason);
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err("expected [z; q1, ..., qm]"))?;
    let (head, tail) = inner
        .split_once(';')
        .ok_or_else(|| err("missing ';' after leading term"))?;
    let head = head.trim();
    let (negative, digits) = match head.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, head),
    };
    let magnitude =
        parse_natural("continued fraction", digits).map_err(|_| err("bad leading term"))?;
    let z = if negative {
        -BigInt::from(magnitude)
    } else {
        BigInt::from(magnitude)
    };
    let tail = tail.trim();
    let quotients = if tail.is_empty() {
        Vec::new()
    } else {
        tail.split(',')
            .map(|q| parse_natural("continued fraction", q.trim()).map_err(|_| err("bad quotient")))
            .collect::<Result<Vec<_>>>()?
    };
    Ok((z, quotients))
}

impl FromStr for FiniteCF {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (z, quotients) = parse_cf_parts(s)?;
        Self::new(z, quotients)
    }
}

impl fmt::Display for FiniteCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.z)?;
        for (i, q) in self.quotients.iter().enumerate() {
            write!(f, "{}{q}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, "]")
    }
}

/// `[n0; n1, ..., n(k-1), nk + 1]`, or `[n0 + 1;]` when there is a single gap.
pub fn cf_from_gaps(g: &GapSequence) -> FiniteCF {
    let (last, init) = g.gaps.split_last().expect("gap sequence is nonempty");
    if init.is_empty() {
        return FiniteCF::integer(BigInt::from(*last) + 1);
    }
    let mut quotients: Vec<Natural> = init[1..].iter().map(|&n| Natural::from(n)).collect();
    quotients.push(Natural::from(*last) + 1u32);
    FiniteCF {
        z: BigInt::from(init[0]),
        quotients,
    }
}

fn to_gap(q: &Natural) -> Result<u64> {
    q.to_u64()
        .filter(|&g| g <= MAX_INDEX_BITS)
        .ok_or_else(|| Error::IndexTooLarge(q.to_string()))
}

/// Inverse of [`cf_from_gaps`] on continued fractions with a positive value.
pub fn gaps_from_cf(cf: &FiniteCF) -> Result<GapSequence> {
    if cf.z.is_negative() || (cf.z.is_zero() && cf.quotients.is_empty()) {
        return Err(Error::NotPositive(cf.value().to_string()));
    }
    let z = cf.z.magnitude();
    let Some((last, init)) = cf.quotients.split_last() else {
        return GapSequence::new(vec![to_gap(&(z - 1u32))?]);
    };
    if last.is_one() {
        return Err(Error::NonCanonical);
    }
    let mut gaps = Vec::with_capacity(cf.quotients.len() + 1);
    gaps.push(to_gap(z)?);
    for q in init {
        gaps.push(to_gap(q)?);
    }
    gaps.push(to_gap(&(last - 1u32))?);
    GapSequence::new(gaps)
}

/// Continued fraction of `q` by repeated floor-and-reciprocate.
pub fn encode_euclid(q: &PositiveRational) -> FiniteCF {
    let (mut a, mut b) = (q.numer().clone(), q.denom().clone());
    let (z, r) = a.div_rem(&b);
    let mut quotients = Vec::new();
    a = b;
    b = r;
    while !b.is_zero() {
        let (quotient, r) = a.div_rem(&b);
        quotients.push(quotient);
        a = b;
        b = r;
    }
    FiniteCF::new_lenient(BigInt::from(z), quotients).expect("euclid quotients are positive")
}

/// Exact value of a continued fraction, evaluated from the innermost quotient out.
pub fn eval_cf(cf: &FiniteCF) -> SignedRational {
    eval_quotients(&cf.z, &cf.quotients).expect("FiniteCF quotients are positive")
}

/// Like [`eval_cf`] for quotient lists that need not be canonical.
pub fn eval_quotients(z: &BigInt, quotients: &[Natural]) -> Result<SignedRational> {
    check_quotients(quotients)?;
    // Innermost first: value = num/den, starting from the empty tail 1/0.
    let (mut num, mut den) = (Natural::one(), Natural::zero());
    for q in quotients.iter().rev() {
        let next = q * &num + &den;
        den = std::mem::replace(&mut num, next);
    }
    if quotients.is_empty() {
        return Ok(SignedRational::integer(z.clone()));
    }
    let top = z * BigInt::from(num.clone()) + BigInt::from(den);
    // Continuants are coprime, and so is z*num + den with num.
    Ok(SignedRational::from_coprime(top, num))
}

/// A convergent `c_m = p_m / q_m`, the value of the fraction cut after quotient `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub ordinal: usize,
    pub num: BigInt,
    pub den: Natural,
}

impl Convergent {
    pub fn value(&self) -> SignedRational {
        SignedRational::from_coprime(self.num.clone(), self.den.clone())
    }
}

/// Incremental state of the two-term recurrence `p_m = a_m p_(m-1) + p_(m-2)`.
#[derive(Clone, Debug)]
pub struct ConvergentState {
    prev: (BigInt, Natural),
    current: Convergent,
}

impl ConvergentState {
    pub fn new(z: BigInt) -> Self {
        Self {
            prev: (BigInt::one(), Natural::zero()),
            current: Convergent {
                ordinal: 0,
                num: z,
                den: Natural::one(),
            },
        }
    }

    pub fn current(&self) -> &Convergent {
        &self.current
    }

    /// Previous convergent, `None` at ordinal 0.
    pub fn previous(&self) -> Option<Convergent> {
        (self.current.ordinal > 0).then(|| Convergent {
            ordinal: self.current.ordinal - 1,
            num: self.prev.0.clone(),
            den: self.prev.1.clone(),
        })
    }

    pub fn push(&mut self, quotient: &Natural) -> &Convergent {
        let a = BigInt::from(quotient.clone());
        let num = &a * &self.current.num + &self.prev.0;
        let den = quotient * &self.current.den + &self.prev.1;
        let old_num = std::mem::replace(&mut self.current.num, num);
        let old_den = std::mem::replace(&mut self.current.den, den);
        self.prev = (old_num, old_den);
        self.current.ordinal += 1;
        &self.current
    }
}

/// The first `count` convergents `c_0 = z, c_1, ...` of `[z; quotients...]`.
pub fn convergents<I>(z: &BigInt, quotients: I, count: usize) -> Result<Vec<Convergent>>
where
    I: IntoIterator<Item = Natural>,
{
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut state = ConvergentState::new(z.clone());
    let mut out = Vec::with_capacity(count);
    out.push(state.current().clone());
    let mut quotients = quotients.into_iter();
    while out.len() < count {
        let Some(q) = quotients.next() else {
            return Err(Error::StreamExhausted {
                needed: count,
                available: out.len(),
            });
        };
        if q.is_zero() {
            return Err(Error::InvalidQuotient {
                position: out.len(),
                value: q.to_string(),
            });
        }
        out.push(state.push(&q).clone());
    }
    Ok(out)
}
