use num_bigint::BigUint;
use qseq::adic::{
    convergent_bracket, eval_real, parse_numeral, phi_recip_index, sqrt2_index, truncate,
    TwoAdicInteger,
};
use qseq::cf::convergents;
use qseq::sequence::eval_index;
use qseq::{Natural, SignedRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bits_text(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A random numeral "(B)S" with |S| <= 16 and 1 <= |B| <= 8, B not all zero.
fn random_numeral(rng: &mut ChaCha8Rng) -> (Vec<bool>, Vec<bool>) {
    let s_len = rng.gen_range(0..=16);
    let p_len = rng.gen_range(1..=8);
    let suffix: Vec<bool> = (0..s_len).map(|_| rng.gen()).collect();
    let mut period: Vec<bool> = (0..p_len).map(|_| rng.gen()).collect();
    if period.iter().all(|b| !b) {
        let i = rng.gen_range(0..p_len);
        period[i] = true;
    }
    (period, suffix)
}

/// Bits of "(B)S" lowest first, expanded directly from the text.
fn expand(period: &[bool], suffix: &[bool], count: usize) -> Vec<bool> {
    let mut out: Vec<bool> = suffix.iter().rev().copied().collect();
    while out.len() < count {
        out.extend(period.iter().rev());
    }
    out.truncate(count);
    out
}

/// Canonical text by brute force: least period, then least preperiod.
fn canonical_text(period: &[bool], suffix: &[bool]) -> String {
    let bits = expand(period, suffix, 256);
    let valid = |s: usize, l: usize| (s..200).all(|i| bits[i] == bits[i + l]);
    let l = (1..=period.len())
        .find(|&l| valid(suffix.len(), l))
        .unwrap();
    let s = (0..=suffix.len()).find(|&s| valid(s, l)).unwrap();
    let block: Vec<bool> = bits[s..s + l].iter().rev().copied().collect();
    let tail: Vec<bool> = bits[..s].iter().rev().copied().collect();
    format!("({}){}", bits_text(&block), bits_text(&tail))
}

fn random_numerals(seed: u64, count: usize) -> Vec<TwoAdicInteger> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (p, s) = random_numeral(&mut rng);
            parse_numeral(&format!("({}){}", bits_text(&p), bits_text(&s))).unwrap()
        })
        .collect()
}

#[test]
fn numeral_round_trip_against_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let (p, s) = random_numeral(&mut rng);
        let text = format!("({}){}", bits_text(&p), bits_text(&s));
        let z = parse_numeral(&text).unwrap();
        assert_eq!(z.to_string(), canonical_text(&p, &s), "{text}");
        assert_eq!(parse_numeral(&z.to_string()).unwrap(), z);
        let expected = expand(&p, &s, 64);
        for (i, &b) in expected.iter().enumerate() {
            assert_eq!(z.bit(i as u64), Some(b));
        }
    }
}

#[test]
fn rational_value_is_fixed_point_of_its_expansion() {
    // v with bits b0 b1 ... satisfies v = b0 + 2 * (v >> 1) in the 2-adics; for the
    // rational value this means the first 64 bits of v agree with v mod 2^64.
    for z in random_numerals(11, 200) {
        let v = z.rational_value().unwrap();
        let modulus = BigUint::from(1u32) << 64u32;
        // v = num/den with den odd; residue = num * den^-1 mod 2^64.
        let den = v.denom().clone();
        let inv = den.modpow(&((BigUint::from(1u32) << 63u32) - 1u32), &modulus);
        let num = v.numer();
        let num_mod = if num.sign() == num_bigint::Sign::Minus {
            &modulus - (num.magnitude() % &modulus)
        } else {
            num.magnitude() % &modulus
        };
        let residue = (num_mod * inv) % &modulus;
        for i in 0..64u64 {
            assert_eq!(residue.bit(i), z.bit(i).unwrap(), "{z} bit {i}");
        }
    }
}

fn truncation_bracket_check(z: &TwoAdicInteger, max_ones: usize) {
    let reference = eval_real(z, 400).unwrap();
    let target = reference.midpoint();
    let mut previous_width: Option<SignedRational> = None;
    for m in 1..=max_ones {
        let v = SignedRational::from(eval_index(&truncate(z, m).unwrap()).unwrap());
        if m < 2 {
            continue;
        }
        let bracket = convergent_bracket(z, m - 2).unwrap();
        assert!(bracket.contains(&v), "{z}: m = {m}");
        assert!(reference.is_within(&bracket));
        let width = bracket.width();
        assert!((&v - &target).abs() <= width);
        if let Some(w) = &previous_width {
            assert!(width < *w);
        }
        previous_width = Some(width);
    }
}

#[test]
fn truncations_converge_inside_brackets() {
    truncation_bracket_check(&sqrt2_index(), 40);
    truncation_bracket_check(&phi_recip_index(), 40);
    for z in random_numerals(3, 50) {
        truncation_bracket_check(&z, 40);
    }
}

#[test]
fn fibonacci_edge_reaches_golden_reciprocal() {
    let mut f = vec![BigUint::from(0u32), BigUint::from(1u32)];
    for i in 2..=62 {
        let next = &f[i - 1] + &f[i - 2];
        f.push(next);
    }
    for n in 2..=60usize {
        let idx = (Natural::from(1u32) << n) - 1u32;
        assert_eq!(truncate(&phi_recip_index(), n).unwrap(), idx);
        let v = eval_index(&idx).unwrap();
        assert_eq!((v.numer(), v.denom()), (&f[n], &f[n + 1]));
    }
    let v = SignedRational::from(eval_index(&((Natural::from(1u32) << 60u32) - 1u32)).unwrap());
    let mid = eval_real(&phi_recip_index(), 100).unwrap().midpoint();
    assert!((&v - &mid).abs() < SignedRational::integer(1).mul_pow2(-80));
}

#[test]
fn brackets_are_consecutive_convergents_and_nest() {
    let mut all = vec![
        sqrt2_index(),
        phi_recip_index(),
        qseq::adic::euler_e_index(),
    ];
    all.extend(random_numerals(5, 30));
    for z in all {
        let mut outer: Option<qseq::adic::RationalInterval> = None;
        for bits in [8u32, 20, 40, 64, 100] {
            let r = eval_real(&z, bits).unwrap();
            assert!(r.lo() < r.hi());
            assert!(r.width() <= SignedRational::integer(1).mul_pow2(-(bits as i64)));
            let gaps: Vec<u64> = z.gaps().take(200).map(|g| g.unwrap()).collect();
            let cs = convergents(
                &gaps[0].into(),
                gaps[1..].iter().map(|&g| Natural::from(g)),
                gaps.len(),
            )
            .unwrap();
            let values: Vec<SignedRational> = cs.iter().map(|c| c.value()).collect();
            assert!(values
                .windows(2)
                .any(|w| (w[0] == *r.lo() && w[1] == *r.hi())
                    || (w[0] == *r.hi() && w[1] == *r.lo())));
            if let Some(o) = &outer {
                assert!(r.is_within(o));
            }
            outer = Some(r);
        }
    }
}

#[test]
fn finite_numerals_agree_with_sequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..500 {
        let n = Natural::from(rng.gen_range(1u64..u64::MAX));
        let z = TwoAdicInteger::finite(n.clone()).unwrap();
        let r = eval_real(&z, 32).unwrap();
        assert!(r.is_degenerate());
        assert_eq!(r.lo(), &SignedRational::from(eval_index(&n).unwrap()));
        assert_eq!(parse_numeral(&z.to_string()).unwrap(), z);
    }
}
