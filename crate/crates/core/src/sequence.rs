//! The sequence `a(n)` over natural indices, its inverse, and the signed
//! enumeration `s(n)` of all rationals.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cf;
use crate::rational::{parse_natural, Natural, PositiveRational, SignedRational};
use crate::{Error, Result};

/// A term of the sequence together with its position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedTerm {
    pub index: Natural,
    pub value: PositiveRational,
}

/// Evaluates `a(n)`.
///
/// The binary digits of `n` are scanned from the most significant one down:
/// each step doubles the index (`a + 1`) and a set bit then moves to the odd
/// successor (`1 / a`). No recursion, so `n` may have any number of bits.
pub fn eval_index(n: &Natural) -> Result<PositiveRational> {
    if n.is_zero() {
        return Err(Error::ZeroIndex);
    }
    let mut value = PositiveRational::one();
    for bit in (0..n.bits() - 1).rev() {
        value.add_one_in_place();
        if n.bit(bit) {
            value.invert_in_place();
        }
    }
    Ok(value)
}

/// The unique `n` with `a(n) = q`, found through the continued-fraction codec.
///
/// Fails only when the integer part of `q` is too large for the index to be
/// materialised.
pub fn locate(q: &PositiveRational) -> Result<Natural> {
    let cf = cf::encode_euclid(q);
    let gaps = cf::gaps_from_cf(&cf)?;
    Ok(cf::index_from_gaps(&gaps))
}

/// `s(1) = 0`, `s(2n) = a(n)`, `s(2n+1) = -a(n)`.
pub fn signed_enum(n: &Natural) -> Result<SignedRational> {
    if n.is_zero() {
        return Err(Error::ZeroIndex);
    }
    if n.is_one() {
        return Ok(SignedRational::zero());
    }
    let half = n >> 1u32;
    let magnitude = SignedRational::from(eval_index(&half)?);
    Ok(if n.bit(0) { -magnitude } else { magnitude })
}

/// Terms `a(1) .. a(count)` in order.
pub fn first_terms(count: usize) -> Vec<IndexedTerm> {
    let mut values: Vec<PositiveRational> = Vec::with_capacity(count);
    for n in 1..=count {
        let value = if n == 1 {
            PositiveRational::one()
        } else if n % 2 == 0 {
            values[n / 2 - 1].add_one()
        } else {
            values[n - 2].reciprocal()
        };
        values.push(value);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, value)| IndexedTerm {
            index: Natural::from(i + 1),
            value,
        })
        .collect()
}

/// Reads an index written in decimal (`"600"`) or binary with a `0b` prefix
/// (`"0b1001011000"`). Zero parses; evaluation rejects it.
pub fn parse_index(text: &str) -> Result<Natural> {
    let text = text.trim();
    if let Some(bits) = text.strip_prefix("0b") {
        if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::parse(
                "index",
                text,
                "expected binary digits after 0b",
            ));
        }
        return Ok(BigUint::parse_bytes(bits.as_bytes(), 2).expect("validated binary digits"));
    }
    parse_natural("index", text)
}
