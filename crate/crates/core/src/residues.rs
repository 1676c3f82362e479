//! Congruence kernels evaluated from the digits of `n` alone.
//!
//! Every kernel reads a [`DigitString`] in the base its congruence is stated
//! in (2 for parities, 3 for the mod-3 results, `p` for the mod-`p` results)
//! and never forms the sequence value. Work is a constant number of passes
//! over the digits.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::digits::{expand, DigitString, Natural};
use crate::error::{Error, Result};
use crate::exact::SequenceId;
use crate::lucas::{check_prime, LucasTable, Residue};

/// The four sequences whose parity and residues mod 3 share one treatment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Motzkin,
    Prefix,
    Riordan,
    Hex,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 4] = [FamilyTag::Motzkin, FamilyTag::Prefix, FamilyTag::Riordan, FamilyTag::Hex];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::Motzkin => "motzkin",
            FamilyTag::Prefix => "prefix",
            FamilyTag::Riordan => "riordan",
            FamilyTag::Hex => "hex",
        }
    }

    pub fn sequence(&self) -> SequenceId {
        match self {
            FamilyTag::Motzkin => SequenceId::Motzkin,
            FamilyTag::Prefix => SequenceId::MotzkinPrefix,
            FamilyTag::Riordan => SequenceId::Riordan,
            FamilyTag::Hex => SequenceId::Hex,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "motzkin" => Ok(FamilyTag::Motzkin),
            "prefix" | "motzkin_prefix" => Ok(FamilyTag::Prefix),
            "riordan" => Ok(FamilyTag::Riordan),
            "hex" => Ok(FamilyTag::Hex),
            other => Err(Error::UnknownSequence(other.to_string())),
        }
    }
}

/// Central or bicentral Eulerian numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EulerianKind {
    Central,
    Bicentral,
}

/// A maximal run of indices `n` with `C_n ≡ 0 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInfo {
    pub length: Natural,
    pub start: Option<Natural>,
    pub end: Option<Natural>,
}

fn need_base(n: &DigitString, base: u32) -> Result<()> {
    if n.base() == base {
        Ok(())
    } else {
        Err(Error::UnsupportedParameters(format!("expected base-{base} digits, got base {}", n.base())))
    }
}

fn residue(value: u64, m: u64) -> Residue {
    Residue::new(value, m).expect("modulus >= 2")
}

fn sign(e: u64) -> Residue {
    Residue::sign_power(e, 3).expect("modulus 3")
}

fn in_t01(n: &DigitString) -> bool {
    n.all_in(&[0, 1])
}

/// `n ∈ 3·T(01) + offset`.
fn in_3t01_plus(n: &DigitString, offset: i64) -> bool {
    let shifted = if offset >= 0 { n.sub_small(offset as u64) } else { Some(n.add_small(offset.unsigned_abs())) };
    match shifted {
        Some(m) => m.digit(0) == 0 && in_t01(&m.shift_down(1)),
        None => false,
    }
}

/// `n ∈ k·c − l` for `k = 2^shift`, on binary digits.
fn in_affine(n: &DigitString, shift: usize, l: u64) -> bool {
    let m = n.add_small(l);
    match m.low_zeros() {
        Some(tz) => tz >= shift && (tz - shift).is_multiple_of(2),
        None => false,
    }
}

/// `ω_2(C_n) = δ(n+1) − 1`, from the binary digits of `n`.
pub fn catalan_omega2(n: &DigitString) -> Result<u64> {
    need_base(n, 2)?;
    Ok(n.add_small(1).count(1) - 1)
}

/// `C_n mod 3` from the ternary digits of `n`.
pub fn catalan_mod3(n: &DigitString) -> Result<Residue> {
    need_base(n, 3)?;
    let (ok, ones) = n.add_small(1).star01();
    Ok(if ok { sign(ones) } else { residue(0, 3) })
}

/// `binom(2n, n) mod p` from the base-`p` digits of `n`: zero unless every
/// digit is at most `p/2`, otherwise the product of `binom(2j, j)` over the
/// digits `j`.
pub fn central_binom_mod_p(n: &DigitString, p: u32) -> Result<Residue> {
    let table = LucasTable::new(p)?;
    need_base(n, p)?;
    let pm = u64::from(p);
    let mut acc = 1 % pm;
    for &j in n.digits() {
        if 2 * u64::from(j) >= pm {
            return Ok(residue(0, pm));
        }
        acc = acc * table.digit_binom(2 * j, j) % pm;
    }
    Ok(residue(acc, pm))
}

/// `T_n mod 3`: 1 on `T(01)`, else 0.
pub fn central_trinomial_mod3(n: &DigitString) -> Result<Residue> {
    need_base(n, 3)?;
    Ok(residue(u64::from(in_t01(n)), 3))
}

/// Parity of a family member from the binary digits of `n`.
pub fn family_parity(family: FamilyTag, n: &DigitString) -> Result<Residue> {
    need_base(n, 2)?;
    let even = match family {
        FamilyTag::Motzkin | FamilyTag::Hex => in_affine(n, 2, 2) || in_affine(n, 2, 1),
        FamilyTag::Prefix | FamilyTag::Riordan => in_affine(n, 1, 1),
    };
    Ok(residue(u64::from(!even), 2))
}

/// A family member mod 3 from the ternary digits of `n`.
pub fn family_mod3(family: FamilyTag, n: &DigitString) -> Result<Residue> {
    need_base(n, 3)?;
    let value = match family {
        FamilyTag::Motzkin => {
            if in_3t01_plus(n, -1) {
                2
            } else if in_3t01_plus(n, 0) || in_3t01_plus(n, -2) {
                1
            } else {
                0
            }
        }
        FamilyTag::Prefix => {
            if in_3t01_plus(n, 0) {
                1
            } else if in_3t01_plus(n, 1) || in_3t01_plus(n, -1) {
                2
            } else {
                0
            }
        }
        FamilyTag::Riordan => u64::from(in_t01(&n.add_small(1))),
        FamilyTag::Hex => {
            let (m, r) = n.div_small(2);
            return if r == 0 { catalan_mod3(&m) } else { Ok(residue(0, 3)) };
        }
    };
    Ok(residue(value, 3))
}

/// `Σ_{k≤n} binom(2k, k) mod 3`.
pub fn partial_sum_mod3(n: &DigitString) -> Result<Residue> {
    need_base(n, 3)?;
    Ok(if in_3t01_plus(n, 0) { sign(n.count(1)) } else { residue(0, 3) })
}

/// `a_n(r, s) mod 3`.
pub fn a_rs_mod3(n: &DigitString, r: u32, s: u32) -> Result<Residue> {
    if r == 0 || s == 0 {
        return Err(Error::UnsupportedParameters(format!("a_rs needs r, s >= 1 (got r={r}, s={s})")));
    }
    need_base(n, 3)?;
    Ok(if s.is_multiple_of(2) {
        sign(n.count(1))
    } else {
        residue(u64::from(n.all_in(&[0, 2])), 3)
    })
}

/// Number of entries of Pascal row `n` not divisible by `p`: the product of
/// `digit + 1` over the base-`p` digits of `n`.
pub fn gould_count(n: &DigitString, p: u32) -> Result<Natural> {
    check_prime(p)?;
    need_base(n, p)?;
    let mut tally = vec![0u64; p as usize];
    for &d in n.digits() {
        tally[d as usize] += 1;
    }
    let mut count = Natural::one();
    for (j, &times) in tally.iter().enumerate().skip(1) {
        if times == 0 {
            continue;
        }
        if j == 1 {
            count <<= times as usize;
        } else {
            count *= num_traits::pow(Natural::from(j as u64 + 1), times as usize);
        }
    }
    Ok(count)
}

/// Whether every entry of Pascal row `n` is nonzero mod `p`, i.e.
/// `n = q·p^k − 1` with `1 <= q < p`: all digits below the top one are `p − 1`.
pub fn gould_all_nonzero(n: &DigitString, p: u32) -> Result<bool> {
    check_prime(p)?;
    need_base(n, p)?;
    let digits = n.digits();
    Ok(match digits.split_last() {
        None => true,
        Some((_, lower)) => lower.iter().all(|&d| d == p - 1),
    })
}

/// Central `A(2n−1, n)` or bicentral `A(2n, n)` Eulerian numbers mod 3.
pub fn eulerian_central_mod3(kind: EulerianKind, n: &DigitString) -> Result<Residue> {
    need_base(n, 3)?;
    if n.is_zero() {
        return Err(Error::OutOfDomain { what: "eulerian_central_mod3", min: 1, n: "0".into() });
    }
    let value = match kind {
        EulerianKind::Central => u64::from(in_t01(&n.sub_small(1).expect("n >= 1"))),
        EulerianKind::Bicentral => {
            if in_3t01_plus(n, 1) {
                1
            } else if in_3t01_plus(n, 0) || in_3t01_plus(n, 2) {
                2
            } else {
                0
            }
        }
    };
    Ok(residue(value, 3))
}

/// The `k`-th block (from 1) of consecutive `n` with `p | C_n`.
///
/// For odd `p` the length is `(p^{ω_q(k) + [p = 3] + 1} − 3)/2` with
/// `q = (p+1)/2`; for `p = 2` it is `2^k − 1`. Endpoints are filled in for
/// `p = 2` and `p = 3`.
pub fn catalan_zero_block(p: u32, k: u64) -> Result<BlockInfo> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::OutOfDomain { what: "catalan_zero_block", min: 1, n: "0".into() });
    }
    if p == 2 {
        let start = Natural::one() << k as usize;
        let length = &start - 1u32;
        let end = (Natural::one() << (k as usize + 1)) - 2u32;
        return Ok(BlockInfo { length, start: Some(start), end: Some(end) });
    }
    let q = u64::from(p.div_ceil(2));
    let mut omega = 0u64;
    let mut rest = k;
    while rest.is_multiple_of(q) {
        rest /= q;
        omega += 1;
    }
    let kron = u64::from(p == 3);
    let power = num_traits::pow(Natural::from(p), (omega + kron + 1) as usize);
    let length = (power - 3u32) / 2u32;
    if p != 3 {
        return Ok(BlockInfo { length, start: None, end: None });
    }
    // a: ternary digits (2, binary digits of k−1); b: a with positions
    // 0..=ω_2(k) raised to 2
    let binary = DigitString::from_u64(k - 1, 2).expect("base 2");
    let mut a_digits = vec![2u32];
    a_digits.extend_from_slice(binary.digits());
    let mut b_digits = a_digits.clone();
    let w2 = k.trailing_zeros() as usize;
    if b_digits.len() < w2 + 1 {
        b_digits.resize(w2 + 1, 0);
    }
    for d in b_digits.iter_mut().take(w2 + 1) {
        *d = 2;
    }
    let a = DigitString::from_digits(3, a_digits).expect("ternary").to_natural();
    let b = DigitString::from_digits(3, b_digits).expect("ternary").to_natural();
    let start = a * 3u32 - 1u32;
    let end = b * 3u32 + 1u32;
    Ok(BlockInfo { length, start: Some(start), end: Some(end) })
}

/// The `i`-th (from 0) index `n` with `binom(2n, n) ≡ class (mod 3)`, by
/// digit construction: the ternary digits of `n` are `n_0` followed by the
/// binary digits of `i`, with `n_0` chosen so that the number of ones is even
/// (class 1) or odd (class 2).
pub fn central_binom_class_term(i: &Natural, class: u32) -> Result<DigitString> {
    if !matches!(class, 1 | 2) {
        return Err(Error::UnsupportedParameters(format!("class must be 1 or 2, got {class}")));
    }
    let binary = expand(i, 2)?;
    let ones_even = binary.count(1) % 2 == 0;
    let n0 = u32::from(ones_even != (class == 1));
    let mut digits = vec![n0];
    digits.extend_from_slice(binary.digits());
    DigitString::from_digits(3, digits)
}

pub const SUPPORTED_KERNELS: &str = "catalan mod 2|3; central_binom mod any prime; \
motzkin, motzkin_prefix, riordan, hex mod 2|3; sym012 mod 2; central_trinomial mod 3; \
partial_sum_cb mod 3; a_rs, delannoy, apery mod 3; eulerian_central, eulerian_bicentral mod 3; \
gould(p) mod any m >= 2";

fn family_of(seq: SequenceId) -> Option<FamilyTag> {
    match seq {
        SequenceId::Motzkin => Some(FamilyTag::Motzkin),
        SequenceId::MotzkinPrefix => Some(FamilyTag::Prefix),
        SequenceId::Riordan => Some(FamilyTag::Riordan),
        SequenceId::Hex => Some(FamilyTag::Hex),
        _ => None,
    }
}

fn unsupported(seq: SequenceId, m: u64) -> Error {
    Error::UnsupportedKernel { seq: seq.to_string(), modulus: m, supported: SUPPORTED_KERNELS.to_string() }
}

/// Base in which the kernel for `seq` mod `m` reads its input.
pub fn kernel_base(seq: SequenceId, m: u64) -> Result<u32> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let base = match (seq, m) {
        (SequenceId::Catalan, 2 | 3) => m as u32,
        (SequenceId::CentralBinom, _) => {
            let p = u32::try_from(m).map_err(|_| unsupported(seq, m))?;
            check_prime(p).map_err(|_| unsupported(seq, m))?;
            p
        }
        (s, 2 | 3) if family_of(s).is_some() => m as u32,
        (SequenceId::Sym012, 2) => 2,
        (
            SequenceId::CentralTrinomial
            | SequenceId::PartialSumCb
            | SequenceId::ARs { .. }
            | SequenceId::Delannoy
            | SequenceId::Apery
            | SequenceId::EulerianCentral
            | SequenceId::EulerianBicentral,
            3,
        ) => 3,
        (SequenceId::Gould { p }, _) => p,
        _ => return Err(unsupported(seq, m)),
    };
    Ok(base)
}

/// `seq(n) mod m` through its digit kernel; `n` must already be written in
/// `kernel_base(seq, m)`.
pub fn fast_residue(seq: SequenceId, n: &DigitString, m: u64) -> Result<Residue> {
    let base = kernel_base(seq, m)?;
    need_base(n, base)?;
    if n.is_zero() && seq.start() > 0 {
        return Err(Error::OutOfDomain { what: seq.name(), min: seq.start(), n: "0".into() });
    }
    match (seq, m) {
        (SequenceId::Catalan, 2) => Ok(residue(u64::from(catalan_omega2(n)? == 0), 2)),
        (SequenceId::Catalan, _) => catalan_mod3(n),
        (SequenceId::CentralBinom, _) => central_binom_mod_p(n, base),
        (SequenceId::Sym012, _) => family_parity(FamilyTag::Motzkin, n),
        (SequenceId::CentralTrinomial, _) => central_trinomial_mod3(n),
        (SequenceId::PartialSumCb, _) => partial_sum_mod3(n),
        (SequenceId::ARs { r, s }, _) => a_rs_mod3(n, r, s),
        (SequenceId::Delannoy, _) => a_rs_mod3(n, 1, 1),
        (SequenceId::Apery, _) => a_rs_mod3(n, 2, 1),
        (SequenceId::EulerianCentral, _) => eulerian_central_mod3(EulerianKind::Central, n),
        (SequenceId::EulerianBicentral, _) => eulerian_central_mod3(EulerianKind::Bicentral, n),
        (SequenceId::Gould { p }, _) => {
            let count = gould_count(n, p)?;
            Residue::of_natural(&count, m)
        }
        (s, 2) => family_parity(family_of(s).expect("checked by kernel_base"), n),
        (s, _) => family_mod3(family_of(s).expect("checked by kernel_base"), n),
    }
}

/// Convenience wrapper expanding `n` into the kernel's base first.
pub fn fast_residue_of(seq: SequenceId, n: &Natural, m: u64) -> Result<Residue> {
    let base = kernel_base(seq, m)?;
    fast_residue(seq, &expand(n, base)?, m)
}

/// `ω_2(C_n)` for any `n`; the exponent of 2 never exceeds the bit length.
pub fn catalan_omega2_of(n: &Natural) -> u64 {
    catalan_omega2(&expand(n, 2).expect("base 2")).expect("base 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{self, Catalans, CentralBinomials, FactorialResidues, HexNumbers, Motzkins};
    use num_bigint::BigUint;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn d(n: u64, base: u32) -> DigitString {
        DigitString::from_u64(n, base).unwrap()
    }

    fn r(n: &BigUint, m: u64) -> u64 {
        Residue::of_natural(n, m).unwrap().value()
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_omega2(&d(7, 2)).unwrap(), 0);
        assert_eq!(catalan_omega2(&d(4, 2)).unwrap(), 1);
        assert_eq!(catalan_omega2(&d(10, 2)).unwrap(), 2);
        assert_eq!(catalan_mod3(&d(2, 3)).unwrap().value(), 2);
        assert_eq!(catalan_mod3(&d(7, 3)).unwrap().value(), 0);
        assert_eq!(catalan_mod3(&d(0, 3)).unwrap().value(), 1);
        assert!(catalan_mod3(&d(7, 2)).is_err());
    }

    #[test]
    fn central_binomial_examples() {
        assert_eq!(central_binom_mod_p(&d(4, 3), 3).unwrap().value(), 1);
        assert_eq!(central_binom_mod_p(&d(7, 5), 5).unwrap().value(), 2);
        assert_eq!(central_binom_mod_p(&d(3, 5), 5).unwrap().value(), 0);
        assert!(central_binom_mod_p(&d(3, 4), 4).is_err());
        assert_eq!(central_trinomial_mod3(&d(3, 3)).unwrap().value(), 1);
        assert_eq!(central_trinomial_mod3(&d(2, 3)).unwrap().value(), 0);
        assert_eq!(central_trinomial_mod3(&d(0, 3)).unwrap().value(), 1);
    }

    #[test]
    fn family_examples() {
        assert_eq!(family_parity(FamilyTag::Motzkin, &d(10, 2)).unwrap().value(), 0);
        assert_eq!(family_parity(FamilyTag::Riordan, &d(5, 2)).unwrap().value(), 0);
        assert_eq!(family_parity(FamilyTag::Hex, &d(4, 2)).unwrap().value(), 1);
        assert_eq!(family_mod3(FamilyTag::Motzkin, &d(7, 3)).unwrap().value(), 1);
        assert_eq!(family_mod3(FamilyTag::Prefix, &d(4, 3)).unwrap().value(), 2);
        assert_eq!(family_mod3(FamilyTag::Hex, &d(4, 3)).unwrap().value(), 2);
    }

    #[test]
    fn remaining_examples() {
        assert_eq!(partial_sum_mod3(&d(0, 3)).unwrap().value(), 1);
        assert_eq!(partial_sum_mod3(&d(3, 3)).unwrap().value(), 2);
        assert_eq!(partial_sum_mod3(&d(1, 3)).unwrap().value(), 0);
        assert_eq!(a_rs_mod3(&d(2, 3), 1, 1).unwrap().value(), 1);
        assert_eq!(a_rs_mod3(&d(1, 3), 1, 2).unwrap().value(), 2);
        assert_eq!(a_rs_mod3(&d(1, 3), 2, 1).unwrap().value(), 0);
        assert!(a_rs_mod3(&d(1, 3), 0, 1).is_err());
        assert_eq!(gould_count(&d(4, 2), 2).unwrap(), Natural::from(2u32));
        assert_eq!(gould_count(&d(3, 2), 2).unwrap(), Natural::from(4u32));
        assert!(gould_all_nonzero(&d(3, 2), 2).unwrap());
        assert_eq!(gould_count(&d(2, 3), 3).unwrap(), Natural::from(3u32));
        assert!(gould_all_nonzero(&d(2, 3), 3).unwrap());
        assert!(!gould_all_nonzero(&d(4, 2), 2).unwrap());
        assert_eq!(eulerian_central_mod3(EulerianKind::Central, &d(2, 3)).unwrap().value(), 1);
        assert_eq!(eulerian_central_mod3(EulerianKind::Central, &d(3, 3)).unwrap().value(), 0);
        assert_eq!(eulerian_central_mod3(EulerianKind::Bicentral, &d(2, 3)).unwrap().value(), 2);
        assert!(eulerian_central_mod3(EulerianKind::Central, &d(0, 3)).is_err());
    }

    #[test]
    fn block_examples() {
        let b = catalan_zero_block(3, 1).unwrap();
        assert_eq!(b.length, Natural::from(3u32));
        assert_eq!(b.start, Some(Natural::from(5u32)));
        assert_eq!(b.end, Some(Natural::from(7u32)));
        assert_eq!(catalan_zero_block(3, 2).unwrap().length, Natural::from(12u32));
        assert_eq!(catalan_zero_block(2, 3).unwrap().length, Natural::from(7u32));
        assert!(catalan_zero_block(3, 0).is_err());
        assert!(catalan_zero_block(9, 1).is_err());
        assert_eq!(catalan_zero_block(5, 1).unwrap().start, None);
    }

    #[test]
    fn kernels_match_exact_values() {
        let limit = 1500usize;
        let cats: Vec<BigUint> = Catalans::new().take(limit + 1).collect();
        let cbs: Vec<BigUint> = CentralBinomials::new().take(limit + 1).collect();
        let motz: Vec<BigUint> = Motzkins::new().take(limit + 1).collect();
        let hexes: Vec<BigUint> = HexNumbers::new().take(limit + 1).collect();
        for n in 0..=limit {
            let nn = n as u64;
            let (b2, b3) = (d(nn, 2), d(nn, 3));
            assert_eq!(catalan_omega2(&b2).unwrap(), cats[n].trailing_zeros().unwrap(), "ω C_{n}");
            assert_eq!(catalan_mod3(&b3).unwrap().value(), r(&cats[n], 3), "C_{n} mod 3");
            for p in [2u32, 3, 5, 7] {
                let got = central_binom_mod_p(&d(nn, p), p).unwrap().value();
                assert_eq!(got, r(&cbs[n], u64::from(p)), "binom(2n,n) mod {p} at {n}");
            }
            assert_eq!(family_parity(FamilyTag::Motzkin, &b2).unwrap().value(), r(&motz[n], 2), "M_{n} mod 2");
            assert_eq!(family_mod3(FamilyTag::Motzkin, &b3).unwrap().value(), r(&motz[n], 3), "M_{n} mod 3");
            assert_eq!(family_parity(FamilyTag::Hex, &b2).unwrap().value(), r(&hexes[n], 2), "H_{n} mod 2");
            assert_eq!(family_mod3(FamilyTag::Hex, &b3).unwrap().value(), r(&hexes[n], 3), "H_{n} mod 3");
        }
    }

    #[test]
    fn a_rs_kernel_matches_modular_oracle() {
        let fr = FactorialResidues::new(3, 1200).unwrap();
        for n in 0..=600usize {
            for (rr, s) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)] {
                assert_eq!(a_rs_mod3(&d(n as u64, 3), rr, s).unwrap().value(), fr.a_rs(n, rr, s), "a_{n}({rr},{s})");
            }
        }
    }

    #[test]
    fn gould_kernel_matches_row_scan() {
        for n in 0..=400u64 {
            for p in [2u32, 3, 5, 7] {
                let scan = exact::gould_row_count(n, p).unwrap();
                let digits = d(n, p);
                assert_eq!(gould_count(&digits, p).unwrap(), scan);
                let full = scan == Natural::from(n + 1);
                assert_eq!(gould_all_nonzero(&digits, p).unwrap(), full, "row {n} mod {p}");
            }
        }
    }

    #[test]
    fn class_terms_follow_filter() {
        let mut ones = Vec::new();
        let mut twos = Vec::new();
        for (n, b) in CentralBinomials::new().take(3000).enumerate() {
            match r(&b, 3) {
                1 => ones.push(n as u64),
                2 => twos.push(n as u64),
                _ => {}
            }
        }
        for (i, &n) in ones.iter().enumerate().take(200) {
            let built = central_binom_class_term(&Natural::from(i as u64), 1).unwrap();
            assert_eq!(built.to_u64(), Some(n));
        }
        for (i, &n) in twos.iter().enumerate().take(200) {
            let built = central_binom_class_term(&Natural::from(i as u64), 2).unwrap();
            assert_eq!(built.to_u64(), Some(n));
        }
    }

    #[test]
    fn dispatcher() {
        let n = Natural::from(10u32);
        assert_eq!(fast_residue_of(SequenceId::Motzkin, &n, 2).unwrap().value(), 0);
        assert_eq!(fast_residue_of(SequenceId::CentralBinom, &Natural::from(7u32), 5).unwrap().value(), 2);
        assert_eq!(fast_residue_of(SequenceId::Catalan, &Natural::from(10u32), 2).unwrap().value(), 0);
        assert_eq!(fast_residue_of(SequenceId::Gould { p: 2 }, &Natural::from(3u32), 3).unwrap().value(), 1);
        assert!(matches!(
            fast_residue_of(SequenceId::Motzkin, &n, 5),
            Err(Error::UnsupportedKernel { .. })
        ));
        assert!(matches!(fast_residue_of(SequenceId::Com, &n, 3), Err(Error::UnsupportedKernel { .. })));
        assert!(fast_residue_of(SequenceId::EulerianCentral, &Natural::zero(), 3).is_err());
        assert!(fast_residue(SequenceId::Catalan, &d(5, 2), 3).is_err());
    }

    proptest! {
        // Kernels agree with Lucas' congruence applied to binom(2n, n).
        #[test]
        fn central_binomial_kernel_is_lucas(n in 0u64..1_000_000_000_000, pi in 0usize..4) {
            let p = [2u32, 3, 5, 7][pi];
            let two_n = Natural::from(2 * n);
            let lucas = crate::lucas::binom_mod(&two_n, &Natural::from(n), p).unwrap().value();
            prop_assert_eq!(central_binom_mod_p(&d(n, p), p).unwrap().value(), lucas);
        }

        // Both ways of deciding ω_2(C_n) = 0 agree: the kernel and the n = 2^h − 1 form.
        #[test]
        fn odd_catalan_iff_mersenne(n in 0u64..u64::MAX / 2) {
            let odd = catalan_omega2(&d(n, 2)).unwrap() == 0;
            prop_assert_eq!(odd, (n + 1).is_power_of_two());
        }
    }
}
