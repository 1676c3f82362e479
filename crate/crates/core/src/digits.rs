//! Base-`b` digit expansions and the digit statistics built on them.
//!
//! Digits are little-endian throughout: index `i` holds the coefficient of
//! `base^i`. Zero is the empty expansion, so every digit-set predicate holds
//! vacuously for it.
//!
//! Conversion of large naturals to a non-power-of-two base goes through
//! `malachite`, whose divide-and-conquer radix conversion is subquadratic.
//! Everything else here is a single pass over the digits.

use std::str::FromStr;

use malachite_base::num::conversion::traits::Digits;
use malachite_nz::natural::Natural as MalachiteNatural;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// A base-`b` expansion with no most-significant zero digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: u32,
    digits: Vec<u32>,
}

impl DigitString {
    /// Builds an expansion from little-endian digits, dropping high zeros.
    pub fn from_digits(base: u32, mut digits: Vec<u32>) -> Result<Self> {
        check_base(base)?;
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange { digit: d.into(), base: base.into() });
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(DigitString { base, digits })
    }

    pub fn zero(base: u32) -> Result<Self> {
        check_base(base)?;
        Ok(DigitString { base, digits: Vec::new() })
    }

    pub fn from_u64(mut n: u64, base: u32) -> Result<Self> {
        check_base(base)?;
        let b = u64::from(base);
        let mut digits = Vec::new();
        while n > 0 {
            digits.push((n % b) as u32);
            n /= b;
        }
        Ok(DigitString { base, digits })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at position `i`; zero beyond the expansion.
    pub fn digit(&self, i: usize) -> u32 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Reconstructs `Σ digits[i]·base^i`.
    pub fn to_natural(&self) -> Natural {
        if self.digits.is_empty() {
            return Natural::zero();
        }
        if self.base <= 256 {
            let bytes: Vec<u8> = self.digits.iter().map(|&d| d as u8).collect();
            return BigUint::from_radix_le(&bytes, self.base).expect("digits are in range");
        }
        self.digits
            .iter()
            .rev()
            .fold(Natural::zero(), |acc, &d| acc * self.base + d)
    }

    /// Value as `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        let b = u64::from(self.base);
        self.digits
            .iter()
            .rev()
            .try_fold(0u64, |acc, &d| acc.checked_mul(b)?.checked_add(u64::from(d)))
    }

    /// Number of positions holding `digit`.
    pub fn count(&self, digit: u32) -> u64 {
        self.digits.iter().filter(|&&d| d == digit).count() as u64
    }

    /// Whether every digit lies in `allowed` (vacuously true for zero).
    pub fn all_in(&self, allowed: &[u32]) -> bool {
        self.digits.iter().all(|d| allowed.contains(d))
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().map(|&d| u64::from(d)).sum()
    }

    /// Number of low-order zero digits, i.e. the exponent of `base` dividing a
    /// nonzero value. `None` for zero.
    pub fn low_zeros(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d != 0)
    }

    /// Ignoring position 0: whether all higher digits are 0 or 1, and how many
    /// of them are 1. Meaningful for base 3.
    pub fn star01(&self) -> (bool, u64) {
        let higher = self.digits.get(1..).unwrap_or(&[]);
        let ok = higher.iter().all(|&d| d <= 1);
        let ones = higher.iter().filter(|&&d| d == 1).count() as u64;
        (ok, ones)
    }

    /// `self + k`.
    pub fn add_small(&self, k: u64) -> Self {
        let b = u128::from(self.base);
        let mut digits = self.digits.clone();
        let mut carry = u128::from(k);
        let mut i = 0;
        while carry > 0 {
            if i == digits.len() {
                digits.push(0);
            }
            let s = u128::from(digits[i]) + carry;
            digits[i] = (s % b) as u32;
            carry = s / b;
            i += 1;
        }
        DigitString { base: self.base, digits }
    }

    /// `self - k`, or `None` when `k > self`.
    pub fn sub_small(&self, k: u64) -> Option<Self> {
        let b = i128::from(self.base);
        let mut digits = self.digits.clone();
        let mut borrow = i128::from(k);
        let mut i = 0;
        while borrow > 0 {
            if i == digits.len() {
                return None;
            }
            let d = i128::from(digits[i]);
            let low = borrow % b;
            let mut next = borrow / b;
            let mut v = d - low;
            if v < 0 {
                v += b;
                next += 1;
            }
            digits[i] = v as u32;
            borrow = next;
            i += 1;
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Some(DigitString { base: self.base, digits })
    }

    /// Long division by a small divisor: `(self / d, self % d)`.
    pub fn div_small(&self, d: u32) -> (Self, u32) {
        assert!(d > 0, "division by zero");
        let b = u64::from(self.base);
        let d64 = u64::from(d);
        let mut quotient = vec![0u32; self.digits.len()];
        let mut rem = 0u64;
        for (i, &digit) in self.digits.iter().enumerate().rev() {
            let cur = rem * b + u64::from(digit);
            quotient[i] = (cur / d64) as u32;
            rem = cur % d64;
        }
        while quotient.last() == Some(&0) {
            quotient.pop();
        }
        (DigitString { base: self.base, digits: quotient }, rem as u32)
    }

    /// `self mod d`.
    pub fn mod_small(&self, d: u32) -> u32 {
        let b = u64::from(self.base);
        let d64 = u64::from(d);
        self.digits
            .iter()
            .rev()
            .fold(0u64, |rem, &digit| (rem * b + u64::from(digit)) % d64) as u32
    }

    /// Division by `base^places`.
    pub fn shift_down(&self, places: usize) -> Self {
        let digits = self.digits.get(places..).unwrap_or(&[]).to_vec();
        DigitString { base: self.base, digits }
    }
}

impl std::fmt::Display for DigitString {
    /// Writes the digits most significant first, e.g. `(2,1)_3` for 5.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")_{}", self.base)
    }
}

fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidBase(base.into()))
    } else {
        Ok(())
    }
}

fn to_malachite(n: &Natural) -> MalachiteNatural {
    MalachiteNatural::from_owned_limbs_asc(n.to_u64_digits())
}

fn from_malachite(n: &MalachiteNatural) -> Natural {
    let mut words = Vec::with_capacity(2 * n.limb_count() as usize);
    for limb in n.to_limbs_asc() {
        words.push(limb as u32);
        words.push((limb >> 32) as u32);
    }
    BigUint::new(words)
}

/// Base-`base` expansion of `n`.
pub fn expand(n: &Natural, base: u32) -> Result<DigitString> {
    check_base(base)?;
    if let Some(small) = n.to_u64() {
        return DigitString::from_u64(small, base);
    }
    let digits: Vec<u32> = if base.is_power_of_two() && base <= 256 {
        n.to_radix_le(base).into_iter().map(u32::from).collect()
    } else {
        to_malachite(n).to_digits_asc(&base)
    };
    Ok(DigitString { base, digits })
}

fn clean_decimal(s: &str) -> Result<&str> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        let shown: String = s.chars().take(32).collect();
        return Err(Error::InvalidNumber(shown));
    }
    Ok(s)
}

/// Parses an ASCII decimal string (surrounding whitespace allowed).
pub fn parse_decimal(s: &str) -> Result<Natural> {
    let s = clean_decimal(s)?;
    if s.len() <= 19 {
        return Ok(Natural::from(s.parse::<u64>().expect("validated")));
    }
    let m = MalachiteNatural::from_str(s).map_err(|_| Error::InvalidNumber(s.chars().take(32).collect()))?;
    Ok(from_malachite(&m))
}

/// Base-`base` expansion of a decimal string without an intermediate
/// `Natural`; the entry point for huge indices.
pub fn decimal_to_digits(s: &str, base: u32) -> Result<DigitString> {
    check_base(base)?;
    let s = clean_decimal(s)?;
    if s.len() <= 19 {
        return DigitString::from_u64(s.parse::<u64>().expect("validated"), base);
    }
    let m = MalachiteNatural::from_str(s).map_err(|_| Error::InvalidNumber(s.chars().take(32).collect()))?;
    let digits: Vec<u32> = m.to_digits_asc(&base);
    Ok(DigitString { base, digits })
}

/// Number of base-`base` digits of `n` equal to `digit`.
pub fn digit_count(n: &Natural, base: u32, digit: u32) -> Result<u64> {
    check_base(base)?;
    if digit >= base {
        return Err(Error::DigitOutOfRange { digit: digit.into(), base: base.into() });
    }
    Ok(expand(n, base)?.count(digit))
}

/// Largest `e` with `m^e | n`.
pub fn valuation(n: &Natural, m: u32) -> Result<u64> {
    check_base(m)?;
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if m == 2 {
        return Ok(n.trailing_zeros().expect("nonzero"));
    }
    let mut e = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &Natural::from(m));
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Whether every base-`base` digit of `n` lies in `allowed`.
pub fn digits_subset(n: &Natural, base: u32, allowed: &[u32]) -> Result<bool> {
    check_base(base)?;
    if let Some(&d) = allowed.iter().find(|&&d| d >= base) {
        return Err(Error::DigitOutOfRange { digit: d.into(), base: base.into() });
    }
    Ok(expand(n, base)?.all_in(allowed))
}

/// Membership of `n` in T*(01) together with the count of ones above
/// position 0 of its ternary expansion.
pub fn star_predicate_and_count(n: &Natural) -> (bool, u64) {
    expand(n, 3).expect("base 3 is valid").star01()
}

/// Whether adding all `parts` in base `base` is free of carries, i.e. every
/// positionwise digit sum stays below the base.
pub fn carry_free(parts: &[Natural], base: u32) -> Result<bool> {
    check_base(base)?;
    if parts.is_empty() {
        return Err(Error::EmptyParts);
    }
    let expansions = parts
        .iter()
        .map(|p| expand(p, base))
        .collect::<Result<Vec<_>>>()?;
    let width = expansions.iter().map(DigitString::len).max().unwrap_or(0);
    Ok((0..width).all(|i| {
        let column: u64 = expansions.iter().map(|e| u64::from(e.digit(i))).sum();
        column < u64::from(base)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    // Schoolbook addition of all parts, reporting whether any column carried.
    fn carries_schoolbook(parts: &[u64], base: u64) -> bool {
        let mut rest: Vec<u64> = parts.to_vec();
        let mut carry = 0;
        let mut carried = false;
        while rest.iter().any(|&x| x > 0) || carry > 0 {
            let column: u64 = rest.iter().map(|x| x % base).sum::<u64>() + carry;
            carry = column / base;
            if carry > 0 {
                carried = true;
            }
            rest.iter_mut().for_each(|x| *x /= base);
        }
        carried
    }

    #[test]
    fn expand_examples() {
        assert!(expand(&nat(0), 3).unwrap().is_empty());
        assert_eq!(expand(&nat(5), 3).unwrap().digits(), &[2, 1]);
        let e = expand(&nat(2188), 2).unwrap();
        assert_eq!(e.digits(), &[0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(e.count(1), 4);
        assert_eq!(expand(&nat(5), 1), Err(Error::InvalidBase(1)));
    }

    #[test]
    fn digit_count_examples() {
        assert_eq!(digit_count(&nat(4), 3, 1).unwrap(), 2);
        assert_eq!(digit_count(&nat(0), 2, 1).unwrap(), 0);
        assert_eq!(digit_count(&nat(7), 5, 2).unwrap(), 1);
        assert!(matches!(digit_count(&nat(7), 5, 5), Err(Error::DigitOutOfRange { .. })));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&nat(12), 2).unwrap(), 2);
        assert_eq!(valuation(&nat(14), 2).unwrap(), 1);
        assert_eq!(valuation(&nat(8), 2).unwrap(), 3);
        assert_eq!(valuation(&nat(162), 3).unwrap(), 4);
        assert_eq!(valuation(&nat(0), 2), Err(Error::ZeroValuation));
    }

    #[test]
    fn subset_and_star_examples() {
        assert!(digits_subset(&nat(4), 3, &[0, 1]).unwrap());
        assert!(digits_subset(&nat(0), 3, &[0, 2]).unwrap());
        assert!(!digits_subset(&nat(5), 3, &[0, 1]).unwrap());
        assert!(digits_subset(&nat(5), 3, &[0, 3]).is_err());
        assert_eq!(star_predicate_and_count(&nat(5)), (true, 1));
        assert_eq!(star_predicate_and_count(&nat(8)), (false, 0));
        assert_eq!(star_predicate_and_count(&nat(2)), (true, 0));
    }

    #[test]
    fn carry_free_examples() {
        assert!(carry_free(&[nat(1), nat(1)], 3).unwrap());
        assert!(!carry_free(&[nat(2), nat(2)], 3).unwrap());
        assert!(!carry_free(&[nat(1), nat(1), nat(2)], 3).unwrap());
        assert_eq!(carry_free(&[], 3), Err(Error::EmptyParts));
    }

    #[test]
    fn carry_free_matches_schoolbook() {
        for base in [2u32, 3, 5, 7] {
            for a in 0..60u64 {
                for b in 0..60u64 {
                    let fast = carry_free(&[nat(a), nat(b)], base).unwrap();
                    assert_eq!(fast, !carries_schoolbook(&[a, b], base.into()), "{a}+{b} base {base}");
                }
            }
        }
    }

    #[test]
    fn round_trip_exhaustive() {
        for base in [2u32, 3, 5, 7] {
            for n in 0..=100_000u64 {
                let e = expand(&nat(n), base).unwrap();
                assert_eq!(e.to_u64(), Some(n));
                assert_ne!(e.digits().last(), Some(&0));
            }
        }
    }

    #[test]
    fn large_values_through_malachite() {
        let n = Natural::from(3u32).pow(200) * 7u32 + 11u32;
        let e = expand(&n, 3).unwrap();
        assert_eq!(e.to_natural(), n);
        assert_eq!(e.digit(200), 1);
        assert_eq!(e.digit(201), 2);
        let text = n.to_string();
        assert_eq!(parse_decimal(&text).unwrap(), n);
        assert_eq!(decimal_to_digits(&text, 3).unwrap(), e);
        assert_eq!(decimal_to_digits(&text, 2).unwrap(), expand(&n, 2).unwrap());
        assert!(parse_decimal("12a").is_err());
        assert!(parse_decimal("").is_err());
    }

    #[test]
    fn small_arithmetic_on_digits() {
        let e = DigitString::from_u64(26, 3).unwrap();
        assert_eq!(e.add_small(1).to_u64(), Some(27));
        assert_eq!(e.add_small(1000).to_u64(), Some(1026));
        assert!(e.sub_small(26).unwrap().is_zero());
        assert_eq!(e.sub_small(27), None);
        assert_eq!(e.sub_small(8).unwrap().to_u64(), Some(18));
        assert_eq!(e.div_small(2), (DigitString::from_u64(13, 3).unwrap(), 0));
        assert_eq!(e.mod_small(4), 2);
        assert_eq!(e.shift_down(1).to_u64(), Some(8));
        assert_eq!(e.to_string(), "(2,2,2)_3");
    }

    proptest! {
        #[test]
        fn digit_statistics_are_consistent(n in 0u64..1_000_000_000, base in 2u32..12) {
            let e = expand(&nat(n), base).unwrap();
            let nonzero = e.digits().iter().filter(|&&d| d != 0).count() as u64;
            prop_assert_eq!((1..base).map(|j| e.count(j)).sum::<u64>(), nonzero);
            let weighted: u64 = (0..base).map(|j| u64::from(j) * e.count(j)).sum();
            prop_assert_eq!(weighted, e.digit_sum());
            if base == 3 {
                prop_assert_eq!(e.all_in(&[0, 1]), e.count(2) == 0);
            }
        }

        #[test]
        fn small_arithmetic_matches_u64(n in 0u64..1u64 << 40, k in 0u64..100_000, base in 2u32..40, d in 1u32..50) {
            let e = DigitString::from_u64(n, base).unwrap();
            prop_assert_eq!(e.add_small(k).to_u64(), Some(n + k));
            prop_assert_eq!(e.sub_small(k).and_then(|x| x.to_u64()), n.checked_sub(k));
            let (q, r) = e.div_small(d);
            prop_assert_eq!(q.to_u64(), Some(n / u64::from(d)));
            prop_assert_eq!(u64::from(r), n % u64::from(d));
            prop_assert_eq!(u64::from(e.mod_small(d)), n % u64::from(d));
        }

        #[test]
        fn big_round_trip(words in proptest::collection::vec(any::<u32>(), 0..40), base in 2u32..400) {
            let n = BigUint::new(words);
            let e = expand(&n, base).unwrap();
            prop_assert_eq!(e.to_natural(), n);
        }
    }
}
