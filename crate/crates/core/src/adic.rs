//! 2-adic integers as indices of the sequence.
//!
//! A 2-adic integer is a binary numeral that may run on forever to the left.
//! Reading its set bits lowest first gives gaps `n0, n1, n2, ...` exactly as for
//! a natural index, and an infinite gap stream defines the irrational
//! `[n0; n1, n2, ...]`. Those reals are returned as exact brackets between two
//! consecutive convergents, never as floating point.
//!
//! Three forms are supported: finite numerals (natural numbers), eventually
//! periodic numerals (the rational 2-adic integers) written `"(B)S"`, and
//! lazily generated gap streams such as the expansion of `e`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::cf::{self, ConvergentState, GapSequence};
use crate::rational::{Natural, PositiveRational, SignedRational};
use crate::{Error, Result};

/// `|x|_2 = 2^-k` where `2^k` exactly divides `x`; `k` is negative when the
/// reduced denominator is even.
pub fn norm2(x: &SignedRational) -> Result<PositiveRational> {
    if x.is_zero() {
        return Err(Error::ZeroNorm);
    }
    let k = x.numer().trailing_zeros().unwrap_or(0) as i64
        - x.denom().trailing_zeros().unwrap_or(0) as i64;
    let power = Natural::one() << k.unsigned_abs();
    Ok(if k >= 0 {
        PositiveRational::new(Natural::one(), power)
    } else {
        PositiveRational::integer(power)
    }
    .expect("powers of two are positive"))
}

type GapIter = Box<dyn Iterator<Item = u64> + Send>;

/// A named, restartable producer of gaps. Each call to [`GapSource::open`]
/// yields a fresh cursor that replays the same gaps.
#[derive(Clone)]
pub struct GapSource {
    name: String,
    make: Arc<dyn Fn() -> GapIter + Send + Sync>,
}

impl GapSource {
    pub fn new<F, I>(name: impl Into<String>, make: F) -> Self
    where
        F: Fn() -> I + Send + Sync + 'static,
        I: Iterator<Item = u64> + Send + 'static,
    {
        Self {
            name: name.into(),
            make: Arc::new(move || Box::new(make()) as GapIter),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn open(&self) -> GapStream {
        GapStream::new((self.make)())
    }
}

impl fmt::Debug for GapSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GapSource")
            .field("name", &self.name)
            .finish()
    }
}

/// Single-consumer cursor over gaps `n0, n1, ...`, checking `ni >= 1` for
/// `i >= 1` on every pull.
pub struct GapStream {
    inner: GapIter,
    position: usize,
}

impl GapStream {
    pub fn new(inner: impl Iterator<Item = u64> + Send + 'static) -> Self {
        Self {
            inner: Box::new(inner),
            position: 0,
        }
    }

    /// Number of gaps pulled so far.
    pub fn position(&self) -> usize {
        self.position
    }
}

impl Iterator for GapStream {
    type Item = Result<u64>;

    fn next(&mut self) -> Option<Result<u64>> {
        let gap = self.inner.next()?;
        let position = self.position;
        self.position += 1;
        if position > 0 && gap == 0 {
            return Some(Err(Error::InvalidGap { position, value: 0 }));
        }
        Some(Ok(gap))
    }
}

impl fmt::Debug for GapStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GapStream")
            .field("position", &self.position)
            .finish()
    }
}

/// Gaps between set bits of a bit sequence given lowest bit first.
struct BitGaps<I> {
    bits: I,
    next_is_first: bool,
}

impl<I: Iterator<Item = bool>> Iterator for BitGaps<I> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let mut run = 0u64;
        loop {
            if self.bits.next()? {
                let gap = if self.next_is_first { run } else { run + 1 };
                self.next_is_first = false;
                return Some(gap);
            }
            run += 1;
        }
    }
}

/// A nonzero 2-adic integer.
#[derive(Clone, Debug)]
pub enum TwoAdicInteger {
    /// An ordinary natural number `>= 1`.
    Finite(Natural),
    /// The block `period` repeated forever to the left of `suffix`. Both are
    /// written most significant bit first, as in the text form.
    Periodic {
        period: Vec<bool>,
        suffix: Vec<bool>,
    },
    /// Gaps produced on demand.
    Stream(GapSource),
}

impl PartialEq for TwoAdicInteger {
    fn eq(&self, other: &Self) -> bool {
        use TwoAdicInteger::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a == b,
            (
                Periodic {
                    period: p,
                    suffix: s,
                },
                Periodic {
                    period: q,
                    suffix: t,
                },
            ) => p == q && s == t,
            (Stream(a), Stream(b)) => Arc::ptr_eq(&a.make, &b.make),
            _ => false,
        }
    }
}

/// Smallest block whose repetition gives `bits`.
fn least_period(bits: &[bool]) -> &[bool] {
    let len = bits.len();
    (1..=len)
        .filter(|p| len.is_multiple_of(*p))
        .map(|p| &bits[..p])
        .find(|block| bits.chunks(block.len()).all(|c| c == *block))
        .expect("the whole block is a period")
}

fn bits_to_natural(bits: &[bool]) -> Natural {
    bits.iter()
        .fold(Natural::zero(), |acc, &b| (acc << 1u32) + u32::from(b))
}

impl TwoAdicInteger {
    pub fn finite(n: Natural) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::ZeroNumeral);
        }
        Ok(Self::Finite(n))
    }

    /// Builds `(period)suffix` in canonical form: least period, shortest suffix.
    /// A zero period collapses to the finite numeral `suffix`.
    pub fn periodic(period: Vec<bool>, suffix: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::parse("2-adic numeral", "", "empty period"));
        }
        if period.iter().all(|b| !b) {
            return Self::finite(bits_to_natural(&suffix));
        }
        let mut period = least_period(&period).to_vec();
        let mut suffix = suffix;
        // (xB')xS reads the same as (B'x)S.
        while !suffix.is_empty() && suffix[0] == period[0] {
            period.rotate_left(1);
            suffix.remove(0);
        }
        Ok(Self::Periodic { period, suffix })
    }

    pub fn from_source(source: GapSource) -> Self {
        Self::Stream(source)
    }

    /// Bit `i` (weight `2^i`), for finite and periodic forms.
    pub fn bit(&self, i: u64) -> Option<bool> {
        match self {
            Self::Finite(n) => Some(n.bit(i)),
            Self::Periodic { period, suffix } => {
                let s = suffix.len() as u64;
                Some(if i < s {
                    suffix[(s - 1 - i) as usize]
                } else {
                    let l = period.len() as u64;
                    period[(l - 1 - (i - s) % l) as usize]
                })
            }
            Self::Stream(_) => None,
        }
    }

    /// The gaps between set bits, lowest first.
    pub fn gaps(&self) -> GapStream {
        match self {
            Self::Finite(n) => {
                let n = n.clone();
                let len = n.bits();
                GapStream::new(BitGaps {
                    bits: (0..len).map(move |i| n.bit(i)),
                    next_is_first: true,
                })
            }
            Self::Periodic { period, suffix } => {
                let head: Vec<bool> = suffix.iter().rev().copied().collect();
                let cycle: Vec<bool> = period.iter().rev().copied().collect();
                GapStream::new(BitGaps {
                    bits: head.into_iter().chain(cycle.into_iter().cycle()),
                    next_is_first: true,
                })
            }
            Self::Stream(source) => source.open(),
        }
    }

    /// Exact rational value for finite and periodic numerals.
    ///
    /// A period block `B` of `L` bits above a suffix `S` of `s` bits contributes
    /// the geometric series `value(B) * 2^s / (1 - 2^L)`.
    pub fn rational_value(&self) -> Result<SignedRational> {
        match self {
            Self::Finite(n) => Ok(SignedRational::integer(BigInt::from(n.clone()))),
            Self::Periodic { period, suffix } => {
                let s = SignedRational::integer(BigInt::from(bits_to_natural(suffix)));
                let block = BigInt::from(bits_to_natural(period)) << suffix.len();
                let denom: Natural = (Natural::one() << period.len()) - 1u32;
                let tail = SignedRational::new(-block, denom)?;
                Ok(&s + &tail)
            }
            Self::Stream(_) => Err(Error::NotRational),
        }
    }
}

impl fmt::Display for TwoAdicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: &[bool]| {
            v.iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>()
        };
        match self {
            Self::Finite(n) => write!(f, "{}", n.to_str_radix(2)),
            Self::Periodic { period, suffix } => write!(f, "({}){}", bits(period), bits(suffix)),
            Self::Stream(source) => write!(f, "<{}>", source.name),
        }
    }
}

/// Parses `[ "(" bits ")" ] bits?`, most significant bit on the left.
pub fn parse_numeral(text: &str) -> Result<TwoAdicInteger> {
    let err = |reason: &str| Error::parse("2-adic numeral", text, reason);
    let to_bits = |s: &str| -> Result<Vec<bool>> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(err(&format!("illegal character {other:?}"))),
            })
            .collect()
    };
    let t = text.trim();
    if t.is_empty() {
        return Err(err("empty numeral"));
    }
    if let Some(rest) = t.strip_prefix('(') {
        let (period, suffix) = rest.split_once(')').ok_or_else(|| err("unclosed '('"))?;
        if period.is_empty() {
            return Err(err("empty period"));
        }
        TwoAdicInteger::periodic(to_bits(period)?, to_bits(suffix)?)
    } else {
        TwoAdicInteger::finite(bits_to_natural(&to_bits(t)?))
    }
}

impl FromStr for TwoAdicInteger {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_numeral(s)
    }
}

pub fn render(z: &TwoAdicInteger) -> String {
    z.to_string()
}

/// The gap stream of `z`; alias of [`TwoAdicInteger::gaps`].
pub fn gaps_from_twoadic(z: &TwoAdicInteger) -> GapStream {
    z.gaps()
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: SignedRational,
    hi: SignedRational,
}

impl RationalInterval {
    pub fn new(lo: SignedRational, hi: SignedRational) -> Option<Self> {
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn point(v: SignedRational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &SignedRational {
        &self.lo
    }

    pub fn hi(&self) -> &SignedRational {
        &self.hi
    }

    pub fn width(&self) -> SignedRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> SignedRational {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &SignedRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_strictly(&self, x: &SignedRational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn is_within(&self, outer: &RationalInterval) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }
}

fn ordered(a: SignedRational, b: SignedRational) -> RationalInterval {
    if a <= b {
        RationalInterval { lo: a, hi: b }
    } else {
        RationalInterval { lo: b, hi: a }
    }
}

/// Result of walking the gap stream of an index.
enum Walk {
    /// The stream ended: the value is this rational.
    Exact(SignedRational),
    /// Consecutive convergents `c_m`, `c_(m+1)` of an infinite fraction.
    Bracket(RationalInterval),
}

/// Pulls gaps, treating them as quotients `[n0; n1, n2, ...]`, until `stop`
/// accepts a pair of consecutive convergents.
///
/// A gap is only used as a quotient once the following gap has been seen,
/// since the last gap of a finite stream enters the fraction as `nk + 1`.
/// Seeing a further gap also guarantees the value lies strictly between the
/// pair handed to `stop`.
fn walk<F>(z: &TwoAdicInteger, mut stop: F) -> Result<Walk>
where
    F: FnMut(&cf::Convergent, &cf::Convergent) -> bool,
{
    let mut gaps = z.gaps();
    let mut seen = vec![gaps.next().ok_or(Error::ZeroNumeral)??];
    let mut state = ConvergentState::new(BigInt::from(seen[0]));
    loop {
        let Some(next) = gaps.next().transpose()? else {
            let seq = GapSequence::new(seen)?;
            return Ok(Walk::Exact(cf::cf_from_gaps(&seq).value()));
        };
        if seen.len() > 1 {
            state.push(&Natural::from(*seen.last().expect("nonempty")));
            let prev = state.previous().expect("ordinal is positive");
            if stop(&prev, state.current()) {
                return Ok(Walk::Bracket(ordered(
                    prev.value(),
                    state.current().value(),
                )));
            }
        }
        seen.push(next);
    }
}

/// Evaluates `a(z)`.
///
/// A finite numeral, or a stream that ends before the precision is reached,
/// gives the degenerate interval `[v, v]`. Otherwise the
/// result is the first pair of consecutive convergents `c_m, c_(m+1)` with
/// `q_m q_(m+1) >= 2^precision_bits`, so `hi - lo <= 2^-precision_bits`, and
/// the value lies strictly inside.
pub fn eval_real(z: &TwoAdicInteger, precision_bits: u32) -> Result<RationalInterval> {
    if precision_bits == 0 {
        return Err(Error::ZeroPrecision);
    }
    if let TwoAdicInteger::Finite(n) = z {
        return Ok(RationalInterval::point(
            crate::sequence::eval_index(n)?.into(),
        ));
    }
    let target = BigUint::one() << precision_bits;
    let walked = walk(z, |prev, cur| &prev.den * &cur.den >= target)?;
    Ok(match walked {
        Walk::Exact(v) => RationalInterval::point(v),
        Walk::Bracket(interval) => interval,
    })
}

/// The interval between convergents `c_ordinal` and `c_(ordinal+1)` of an
/// infinite `a(z)`, or the exact value when the gaps run out first.
pub fn convergent_bracket(z: &TwoAdicInteger, ordinal: usize) -> Result<RationalInterval> {
    let walked = walk(z, |prev, _| prev.ordinal >= ordinal)?;
    Ok(match walked {
        Walk::Exact(v) => RationalInterval::point(v),
        Walk::Bracket(interval) => interval,
    })
}

/// The natural number made of the lowest `ones_count` set bits of `z`.
pub fn truncate(z: &TwoAdicInteger, ones_count: usize) -> Result<Natural> {
    let mut n = Natural::zero();
    let mut position = 0u64;
    let mut taken = 0usize;
    let mut gaps = z.gaps();
    while taken < ones_count {
        let Some(gap) = gaps.next().transpose()? else {
            return Err(Error::TooFewOnes {
                requested: ones_count,
                available: taken,
            });
        };
        position = position
            .checked_add(gap)
            .filter(|&p| p <= cf::MAX_INDEX_BITS)
            .ok_or_else(|| Error::IndexTooLarge(gap.to_string()))?;
        n.set_bit(position, true);
        taken += 1;
    }
    Ok(n)
}

/// Gaps of `e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]`: `n0 = 2`, and `ni = 2k` when
/// `i = 3k - 1`, otherwise 1.
pub fn euler_e_gaps() -> GapStream {
    euler_e_source().open()
}

fn euler_e_source() -> GapSource {
    GapSource::new("e", || {
        (0u64..).map(|i| match i {
            0 => 2,
            i if i % 3 == 2 => 2 * (i + 1) / 3,
            _ => 1,
        })
    })
}

/// The stream-backed index whose image is `e`.
pub fn euler_e_index() -> TwoAdicInteger {
    TwoAdicInteger::Stream(euler_e_source())
}

/// `...0101010 = -2/3`, whose image is `sqrt 2`.
pub fn sqrt2_index() -> TwoAdicInteger {
    TwoAdicInteger::periodic(vec![false, true], vec![false]).expect("valid numeral")
}

/// `...111 = -1`, whose image is `(sqrt 5 - 1)/2`.
pub fn phi_recip_index() -> TwoAdicInteger {
    TwoAdicInteger::periodic(vec![true], vec![]).expect("valid numeral")
}
