//! Binomial and multinomial coefficients modulo a prime, digit by digit.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::digits::{expand, DigitString, Natural};
use crate::error::{Error, Result};

/// Canonical representative of a residue class: `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` modulo `modulus`.
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Residue { value: value % modulus, modulus })
    }

    /// Canonical residue of a signed value; `-1` becomes `modulus - 1`.
    pub fn from_signed(value: i64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let m = i128::from(modulus);
        let v = i128::from(value).rem_euclid(m) as u64;
        Ok(Residue { value: v, modulus })
    }

    pub fn of_natural(n: &BigUint, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let v = (n % modulus).to_u64().expect("reduced below a u64 modulus");
        Ok(Residue { value: v, modulus })
    }

    pub fn of_signed(n: &BigInt, modulus: u64) -> Result<Self> {
        let r = Self::of_natural(n.magnitude(), modulus)?;
        if n.sign() == Sign::Minus && r.value != 0 {
            Ok(Residue { value: modulus - r.value, modulus })
        } else {
            Ok(r)
        }
    }

    /// `(-1)^e` modulo `modulus`.
    pub fn sign_power(e: u64, modulus: u64) -> Result<Self> {
        Self::from_signed(if e.is_multiple_of(2) { 1 } else { -1 }, modulus)
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Result<Self> {
        Self::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

const CHECKED_PRIME_LIMIT: u32 = 1000;

fn is_small_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Rejects non-primes below 1000 and even numbers above it. Larger odd
/// moduli are taken on trust: the kernels never factor `p`.
pub fn check_prime(p: u32) -> Result<()> {
    let ok = if p < CHECKED_PRIME_LIMIT { is_small_prime(p) } else { p % 2 == 1 };
    if ok {
        Ok(())
    } else {
        Err(Error::NotPrime(p.into()))
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

const TABLE_LIMIT: u32 = 1 << 20;

/// Factorials and inverse factorials modulo `p`, so that every per-digit
/// binomial in Lucas' product is a table lookup.
#[derive(Debug, Clone)]
pub struct LucasTable {
    p: u32,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl LucasTable {
    pub fn new(p: u32) -> Result<Self> {
        check_prime(p)?;
        let pm = u64::from(p);
        let (fact, inv_fact) = if p <= TABLE_LIMIT {
            let mut fact = vec![1u64; p as usize];
            for i in 1..p as usize {
                fact[i] = fact[i - 1] * i as u64 % pm;
            }
            let mut inv_fact = vec![1u64; p as usize];
            inv_fact[p as usize - 1] = pow_mod(fact[p as usize - 1], pm - 2, pm);
            for i in (1..p as usize).rev() {
                inv_fact[i - 1] = inv_fact[i] * i as u64 % pm;
            }
            (fact, inv_fact)
        } else {
            (Vec::new(), Vec::new())
        };
        Ok(LucasTable { p, fact, inv_fact })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    fn factorial(&self, a: u32) -> u64 {
        if self.fact.is_empty() {
            let pm = u64::from(self.p);
            (1..=u64::from(a)).fold(1, |acc, i| acc * i % pm)
        } else {
            self.fact[a as usize]
        }
    }

    fn inverse_factorial(&self, a: u32) -> u64 {
        if self.inv_fact.is_empty() {
            let pm = u64::from(self.p);
            pow_mod(self.factorial(a), pm - 2, pm)
        } else {
            self.inv_fact[a as usize]
        }
    }

    /// `binom(a, b) mod p` for single digits `a, b < p`.
    pub fn digit_binom(&self, a: u32, b: u32) -> u64 {
        if b > a {
            return 0;
        }
        let pm = u64::from(self.p);
        self.factorial(a) * self.inverse_factorial(b) % pm * self.inverse_factorial(a - b) % pm
    }

    /// `n_i! / prod(parts_i!) mod p` for one digit column; zero when the
    /// column does not sum exactly to `n_i` (a carry).
    pub fn digit_multinom(&self, top: u32, parts: &[u32]) -> u64 {
        let sum: u64 = parts.iter().map(|&x| u64::from(x)).sum();
        if sum != u64::from(top) {
            return 0;
        }
        let pm = u64::from(self.p);
        parts
            .iter()
            .fold(self.factorial(top), |acc, &x| acc * self.inverse_factorial(x) % pm)
    }

    /// Lucas' product over two base-`p` expansions.
    pub fn binom_digits(&self, n: &DigitString, k: &DigitString) -> u64 {
        debug_assert_eq!(n.base(), self.p);
        debug_assert_eq!(k.base(), self.p);
        if k.len() > n.len() {
            return 0;
        }
        let pm = u64::from(self.p);
        let mut acc = 1 % pm;
        for i in 0..n.len() {
            let term = self.digit_binom(n.digit(i), k.digit(i));
            if term == 0 {
                return 0;
            }
            acc = acc * term % pm;
        }
        acc
    }

    pub fn binom_u64(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let pm = u64::from(self.p);
        let (mut n, mut k) = (n, k);
        let mut acc = 1 % pm;
        while n > 0 {
            let term = self.digit_binom((n % pm) as u32, (k % pm) as u32);
            if term == 0 {
                return 0;
            }
            acc = acc * term % pm;
            n /= pm;
            k /= pm;
        }
        acc
    }
}

/// `binom(n, k) mod p` by Lucas' congruence; zero when `k > n`.
pub fn binom_mod(n: &Natural, k: &Natural, p: u32) -> Result<Residue> {
    let table = LucasTable::new(p)?;
    let modulus = u64::from(p);
    if k > n {
        return Residue::zero(modulus);
    }
    let value = table.binom_digits(&expand(n, p)?, &expand(k, p)?);
    Residue::new(value, modulus)
}

/// `n! / prod(parts!) mod p`, column by column in base `p`.
pub fn multinom_mod(n: &Natural, parts: &[Natural], p: u32) -> Result<Residue> {
    let table = LucasTable::new(p)?;
    let sum: Natural = parts.iter().sum();
    if &sum != n {
        return Err(Error::PartsSumMismatch { n: n.to_string(), sum: sum.to_string() });
    }
    let modulus = u64::from(p);
    if n.is_zero() {
        return Residue::one(modulus);
    }
    let top = expand(n, p)?;
    let expansions = parts.iter().map(|x| expand(x, p)).collect::<Result<Vec<_>>>()?;
    let width = expansions.iter().map(DigitString::len).max().unwrap_or(0).max(top.len());
    let mut acc = 1u64;
    let mut column = Vec::with_capacity(parts.len());
    for i in 0..width {
        column.clear();
        column.extend(expansions.iter().map(|e| e.digit(i)));
        let term = table.digit_multinom(top.digit(i), &column);
        if term == 0 {
            return Residue::zero(modulus);
        }
        acc = acc * term % modulus;
    }
    Residue::new(acc, modulus)
}
