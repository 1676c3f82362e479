//! The Thue-Morse sequence `t` and its block-length partial sums `c`.
//!
//! `c = (1, 3, 4, 5, 7, 9, 11, 12, ...)` is the increasing sequence of the
//! numbers `(2i+1)·4^j`, so membership is a 2-adic valuation test and works
//! for indices of any size. The inductive generator is kept for streaming
//! prefixes and as a cross-check.

use std::collections::HashSet;

use crate::digits::Natural;
use crate::error::{Error, Result};

/// `t_n`, by unrolling `t_{2m} = t_m`, `t_{2m+1} = 1 - t_m` over the bits of `n`.
pub fn t(n: &Natural) -> u8 {
    let mut bit = 0u8;
    for word in n.iter_u64_digits() {
        let mut w = word;
        while w != 0 {
            bit ^= (w & 1) as u8;
            w >>= 1;
        }
    }
    bit
}

/// `t_n` for machine-sized indices.
pub fn t_u64(mut n: u64) -> u8 {
    let mut bit = 0u8;
    while n > 0 {
        if n & 1 == 1 {
            bit ^= 1;
        }
        n >>= 1;
    }
    bit
}

/// A strictly increasing prefix `(c_0, c_1, ...)` of `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSequence {
    terms: Vec<u64>,
}

impl CSequence {
    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// First `count` terms from the inductive rule: `c_0 = 1`, and
/// `c_{n+1} = c_n + 1` unless `(c_n + 1)/2` is already a term, in which
/// case `c_{n+1} = c_n + 2`.
pub fn c_stream(count: usize) -> CSequence {
    let mut terms = Vec::with_capacity(count);
    let mut seen = HashSet::with_capacity(count);
    if count == 0 {
        return CSequence { terms };
    }
    let mut cur = 1u64;
    terms.push(cur);
    seen.insert(cur);
    while terms.len() < count {
        let cand = cur + 1;
        let half_in_c = cand.is_multiple_of(2) && seen.contains(&(cand / 2));
        cur = if half_in_c { cur + 2 } else { cand };
        terms.push(cur);
        seen.insert(cur);
    }
    CSequence { terms }
}

/// Whether `m` is a term of `c`, i.e. its 2-adic valuation is even.
pub fn in_c(m: &Natural) -> Result<bool> {
    let tz = m.trailing_zeros().ok_or(Error::ZeroMembership)?;
    Ok(tz % 2 == 0)
}

pub fn in_c_u64(m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::ZeroMembership);
    }
    Ok(m.trailing_zeros().is_multiple_of(2))
}

fn check_affine(k: u32, l: i32) -> Result<()> {
    if matches!(k, 2 | 4) && matches!(l, -1 | -2) {
        Ok(())
    } else {
        Err(Error::UnsupportedAffine { k, l })
    }
}

/// Whether `n` lies in `k·c + l` for `k ∈ {2, 4}`, `l ∈ {-1, -2}`.
pub fn in_affine_c(n: &Natural, k: u32, l: i32) -> Result<bool> {
    check_affine(k, l)?;
    let shifted = n + l.unsigned_abs();
    // k is a power of two: divisibility is a trailing-zero count
    let shift = k.trailing_zeros() as u64;
    let tz = shifted.trailing_zeros().expect("shifted is positive");
    if tz < shift {
        return Ok(false);
    }
    Ok((tz - shift).is_multiple_of(2))
}

pub fn in_affine_c_u64(n: u64, k: u32, l: i32) -> Result<bool> {
    check_affine(k, l)?;
    let shifted = n + u64::from(l.unsigned_abs());
    let k = u64::from(k);
    if !shifted.is_multiple_of(k) {
        return Ok(false);
    }
    in_c_u64(shifted / k)
}

/// Number of terms of `c` that are at most `x`: for each `j`, the odd
/// multiples of `4^j` up to `x`.
fn c_count_upto(x: u64) -> u64 {
    let mut total = 0;
    let mut scale = 1u64;
    while scale <= x {
        total += (x / scale).div_ceil(2);
        match scale.checked_mul(4) {
            Some(s) => scale = s,
            None => break,
        }
    }
    total
}

/// `c_k`, by bisection on the counting function.
pub fn c_term(k: u64) -> u64 {
    let (mut lo, mut hi) = (1u64, 2 * k + 2);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if c_count_upto(mid) > k {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Length of block `k` of `t` (blocks numbered from 0), `c_k - c_{k-1}`
/// with `c_{-1} = 0`.
pub fn block_length(k: u64) -> u64 {
    let prev = if k == 0 { 0 } else { c_term(k - 1) };
    c_term(k) - prev
}

/// Maximal runs of equal values in `t_0 .. t_{len-1}`. The final run may be
/// cut short by the window and is dropped.
pub fn scan_blocks(len: u64) -> Vec<u64> {
    let mut runs = Vec::new();
    if len == 0 {
        return runs;
    }
    let mut current = t_u64(0);
    let mut run = 0u64;
    for n in 0..len {
        let bit = t_u64(n);
        if bit == current {
            run += 1;
        } else {
            runs.push(run);
            current = bit;
            run = 1;
        }
    }
    runs
}
