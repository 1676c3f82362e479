//! Exact arbitrary-precision values of every sequence, computed from the
//! defining formulas.
//!
//! The free functions (`catalan`, `motzkin`, ...) evaluate the defining sum or
//! recursion literally and are the ground truth. The streams below them
//! (`Catalans`, `Motzkins`, ...) use faster holonomic recurrences so that
//! range checks over tens of thousands of indices stay cheap; each stream is
//! tested against its defining formula.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::Natural;
use crate::error::{Error, Result};
use crate::lucas::LucasTable;

/// Signed arbitrary-precision integer; the sign is `NoSign` exactly for zero.
pub type SignedBig = BigInt;

/// The sequences with exact oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceId {
    Catalan,
    CentralBinom,
    Motzkin,
    MotzkinPrefix,
    Riordan,
    Sym012,
    Hex,
    CentralTrinomial,
    PartialSumCb,
    ARs { r: u32, s: u32 },
    Delannoy,
    Apery,
    EulerianCentral,
    EulerianBicentral,
    Gould { p: u32 },
    Noncrossing,
    Com,
    DoubleFact,
}

pub const SEQUENCE_NAMES: &[&str] = &[
    "catalan",
    "central_binom",
    "motzkin",
    "motzkin_prefix",
    "riordan",
    "sym012",
    "hex",
    "central_trinomial",
    "partial_sum_cb",
    "a_rs",
    "delannoy",
    "apery",
    "eulerian_central",
    "eulerian_bicentral",
    "gould",
    "noncrossing",
    "com",
    "double_fact",
];

impl SequenceId {
    pub fn name(&self) -> &'static str {
        match self {
            SequenceId::Catalan => "catalan",
            SequenceId::CentralBinom => "central_binom",
            SequenceId::Motzkin => "motzkin",
            SequenceId::MotzkinPrefix => "motzkin_prefix",
            SequenceId::Riordan => "riordan",
            SequenceId::Sym012 => "sym012",
            SequenceId::Hex => "hex",
            SequenceId::CentralTrinomial => "central_trinomial",
            SequenceId::PartialSumCb => "partial_sum_cb",
            SequenceId::ARs { .. } => "a_rs",
            SequenceId::Delannoy => "delannoy",
            SequenceId::Apery => "apery",
            SequenceId::EulerianCentral => "eulerian_central",
            SequenceId::EulerianBicentral => "eulerian_bicentral",
            SequenceId::Gould { .. } => "gould",
            SequenceId::Noncrossing => "noncrossing",
            SequenceId::Com => "com",
            SequenceId::DoubleFact => "double_fact",
        }
    }

    /// Replaces the parameters of the parametrised sequences. `a_rs` needs
    /// positive `r` and `s`; `gould` needs a prime `p`.
    pub fn with_params(self, r: Option<u32>, s: Option<u32>, p: Option<u32>) -> Result<Self> {
        match self {
            SequenceId::ARs { r: r0, s: s0 } => {
                let (r, s) = (r.unwrap_or(r0), s.unwrap_or(s0));
                if r == 0 || s == 0 {
                    return Err(Error::UnsupportedParameters(format!("a_rs needs r, s >= 1 (got r={r}, s={s})")));
                }
                Ok(SequenceId::ARs { r, s })
            }
            SequenceId::Gould { p: p0 } => {
                let p = p.unwrap_or(p0);
                crate::lucas::check_prime(p)?;
                Ok(SequenceId::Gould { p })
            }
            other => Ok(other),
        }
    }

    /// First index at which the sequence is defined.
    pub fn start(&self) -> u64 {
        match self {
            SequenceId::EulerianCentral | SequenceId::EulerianBicentral | SequenceId::Noncrossing | SequenceId::Com => 1,
            _ => 0,
        }
    }

    /// Largest index `value` will evaluate.
    pub fn budget(&self) -> u64 {
        match self {
            SequenceId::Catalan | SequenceId::CentralBinom | SequenceId::DoubleFact => 100_000,
            SequenceId::Motzkin | SequenceId::CentralTrinomial | SequenceId::PartialSumCb => 20_000,
            SequenceId::Noncrossing => 5_000,
            SequenceId::Sym012 => 4_000,
            SequenceId::MotzkinPrefix
            | SequenceId::Riordan
            | SequenceId::Hex
            | SequenceId::ARs { .. }
            | SequenceId::Delannoy
            | SequenceId::Apery => 2_000,
            SequenceId::EulerianCentral | SequenceId::EulerianBicentral => 1_000,
            SequenceId::Com => 300,
            SequenceId::Gould { .. } => 10_000_000,
        }
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n < self.start() {
            return Err(Error::OutOfDomain { what: self.name(), min: self.start(), n: n.to_string() });
        }
        if n > self.budget() {
            return Err(Error::BudgetExceeded { seq: self.name().to_string(), n: n.to_string(), limit: self.budget() });
        }
        Ok(())
    }

    /// Exact value from the defining formula.
    pub fn value(&self, n: u64) -> Result<SignedBig> {
        self.check_index(n)?;
        let v = match *self {
            SequenceId::Catalan => catalan(n),
            SequenceId::CentralBinom => central_binom(n),
            SequenceId::Motzkin => motzkin(n),
            SequenceId::MotzkinPrefix => motzkin_prefix(n),
            SequenceId::Riordan => riordan(n)?,
            SequenceId::Sym012 => sym012(n),
            SequenceId::Hex => hex(n),
            SequenceId::CentralTrinomial => central_trinomial(n),
            SequenceId::PartialSumCb => partial_sum_cb(n),
            SequenceId::ARs { r, s } => a_rs(n, r, s)?,
            SequenceId::Delannoy => a_rs(n, 1, 1)?,
            SequenceId::Apery => a_rs(n, 2, 1)?,
            SequenceId::EulerianCentral => eulerian_central(n)?,
            SequenceId::EulerianBicentral => eulerian_bicentral(n)?,
            SequenceId::Gould { p } => gould_row_count(n, p)?,
            SequenceId::Noncrossing => noncrossing(n)?,
            SequenceId::Com => return com(n),
            SequenceId::DoubleFact => double_fact(n),
        };
        Ok(BigInt::from(v))
    }

    /// Values for `start()..=n_max`, through the fastest exact route: the
    /// recurrence streams where one exists, the defining formula otherwise.
    pub fn table(&self, n_max: u64) -> Result<Vec<SignedBig>> {
        self.check_index(n_max)?;
        let len = (n_max + 1 - self.start()) as usize;
        let naturals: Vec<Natural> = match *self {
            SequenceId::Catalan => Catalans::new().take(len).collect(),
            SequenceId::CentralBinom => CentralBinomials::new().take(len).collect(),
            SequenceId::Motzkin => Motzkins::new().take(len).collect(),
            SequenceId::MotzkinPrefix => MotzkinPrefixes::new().take(len).collect(),
            SequenceId::Riordan => Riordans::new().take(len).collect(),
            SequenceId::Sym012 => Sym012s::new().take(len).collect(),
            SequenceId::Hex => HexNumbers::new().take(len).collect(),
            SequenceId::CentralTrinomial => Trinomials::new().take(len).collect(),
            SequenceId::PartialSumCb => PartialSums::new().take(len).collect(),
            SequenceId::Delannoy => Delannoys::new().take(len).collect(),
            SequenceId::Apery => Aperys::new().take(len).collect(),
            SequenceId::EulerianCentral | SequenceId::EulerianBicentral => {
                let bicentral = matches!(self, SequenceId::EulerianBicentral);
                let mut out = Vec::with_capacity(len);
                for (row_index, row) in EulerianRows::new().enumerate() {
                    let row_n = row_index as u64 + 1;
                    if row_n > 2 * n_max {
                        break;
                    }
                    let wanted = if bicentral { row_n.is_multiple_of(2) } else { row_n % 2 == 1 };
                    if wanted {
                        let n = if bicentral { row_n / 2 } else { row_n.div_ceil(2) };
                        out.push(row[(n - 1) as usize].clone());
                    }
                }
                out
            }
            SequenceId::Com => return Ok(com_table(n_max as usize).into_iter().skip(1).collect()),
            _ => {
                return (self.start()..=n_max).map(|n| self.value(n)).collect();
            }
        };
        Ok(naturals.into_iter().map(BigInt::from).collect())
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceId::ARs { r, s } => write!(f, "a_rs(r={r},s={s})"),
            SequenceId::Gould { p } => write!(f, "gould(p={p})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    /// Parses a sequence name; `a_rs` defaults to `r = s = 1` and `gould` to
    /// `p = 2` until `with_params` says otherwise.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "catalan" => SequenceId::Catalan,
            "central_binom" => SequenceId::CentralBinom,
            "motzkin" => SequenceId::Motzkin,
            "motzkin_prefix" | "prefix" => SequenceId::MotzkinPrefix,
            "riordan" => SequenceId::Riordan,
            "sym012" => SequenceId::Sym012,
            "hex" => SequenceId::Hex,
            "central_trinomial" => SequenceId::CentralTrinomial,
            "partial_sum_cb" => SequenceId::PartialSumCb,
            "a_rs" => SequenceId::ARs { r: 1, s: 1 },
            "delannoy" => SequenceId::Delannoy,
            "apery" => SequenceId::Apery,
            "eulerian_central" => SequenceId::EulerianCentral,
            "eulerian_bicentral" => SequenceId::EulerianBicentral,
            "gould" => SequenceId::Gould { p: 2 },
            "noncrossing" => SequenceId::Noncrossing,
            "com" => SequenceId::Com,
            "double_fact" => SequenceId::DoubleFact,
            other => return Err(Error::UnknownSequence(other.to_string())),
        })
    }
}

fn exact_div(num: &Natural, den: u64, what: &str) -> Natural {
    let (q, r) = num.div_rem(&Natural::from(den));
    assert!(r.is_zero(), "{what}: division by {den} is not exact");
    q
}

/// `binom(n, k)` by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let mut acc = Natural::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C_n = binom(2n, n) / (n+1)`.
pub fn catalan(n: u64) -> Natural {
    exact_div(&central_binom(n), n + 1, "catalan")
}

pub fn central_binom(n: u64) -> Natural {
    binomial(2 * n, n)
}

/// `M_n = Σ_k binom(n, 2k) C_k`.
pub fn motzkin(n: u64) -> Natural {
    let mut sum = Natural::zero();
    let mut choose = Natural::one(); // binom(n, 2k)
    let mut cat = Natural::one(); // C_k
    let mut k = 0u64;
    while 2 * k <= n {
        sum += &choose * &cat;
        if 2 * k + 2 > n {
            break;
        }
        choose *= (n - 2 * k) * (n - 2 * k - 1);
        choose /= (2 * k + 1) * (2 * k + 2);
        cat *= 4 * k + 2;
        cat /= k + 2;
        k += 1;
    }
    sum
}

/// Number of Motzkin prefixes of length `n`: a dynamic program over the
/// current height with up, down and level steps, never going below zero.
pub fn motzkin_prefix(n: u64) -> Natural {
    let n = n as usize;
    let mut ways = vec![Natural::one()];
    for _ in 0..n {
        let mut next = vec![Natural::zero(); ways.len() + 1];
        for (h, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            next[h] += w;
            next[h + 1] += w;
            if h > 0 {
                next[h - 1] += w;
            }
        }
        ways = next;
    }
    ways.iter().sum()
}

/// Riordan numbers from `γ_0 = 1`, `γ_{i+1} = M_i − γ_i`.
pub fn riordan(n: u64) -> Result<Natural> {
    let mut gamma = Natural::one();
    for i in 0..n {
        let m = motzkin(i);
        if m < gamma {
            return Err(Error::Inconsistency(format!("riordan: M_{i} < γ_{i}")));
        }
        gamma = m - gamma;
    }
    Ok(gamma)
}

/// Riordan numbers as the inverse binomial transform of the Catalan
/// numbers, `γ_n = Σ_k (−1)^{n−k} binom(n, k) C_k`. Independent of the
/// Motzkin numbers, so it can witness `M_n = γ_{n+1} + γ_n`.
pub fn riordan_from_catalan(n: u64) -> Natural {
    let mut sum = BigInt::zero();
    let mut choose = Natural::one();
    let mut cat = Natural::one();
    for k in 0..=n {
        let term = BigInt::from(&choose * &cat);
        if (n - k).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        choose = choose * (n - k) / (k + 1);
        cat = cat * (4 * k + 2) / (k + 2);
    }
    sum.to_biguint().expect("riordan numbers are nonnegative")
}

/// Symmetric 0-1-2 trees: `S_0 = 1`, `S_{2m} = S_{2m−1} + M_{m−1}`,
/// `S_{2m+1} = S_{2m}`.
pub fn sym012(n: u64) -> Natural {
    let mut s = Natural::one();
    for i in 1..=n {
        if i % 2 == 0 {
            s += motzkin(i / 2 - 1);
        }
    }
    s
}

/// Symmetric 0-1-2 trees counted along the root's chain of single
/// children: the chain ends in a leaf, or in a node whose two subtrees are
/// mirror images, giving `S_n = 1 + Σ_{i < ⌊n/2⌋} M_i`.
pub fn sym012_spine(n: u64) -> Natural {
    (0..n / 2).map(motzkin).fold(Natural::one(), |acc, m| acc + m)
}

/// Hex trees: the root has no children, one child in any of three
/// positions, or a left and a right child, so
/// `H_n = 3 H_{n−1} + Σ_{i+j=n−2} H_i H_j`.
pub fn hex(n: u64) -> Natural {
    let n = n as usize;
    let mut h: Vec<Natural> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if i == 0 {
            h.push(Natural::one());
            continue;
        }
        let mut v = &h[i - 1] * 3u32;
        if i >= 2 {
            for a in 0..=i - 2 {
                v += &h[a] * &h[i - 2 - a];
            }
        }
        h.push(v);
    }
    h.pop().expect("nonempty")
}

/// `T_n = Σ_k n! / (k! k! (n−2k)!)`.
pub fn central_trinomial(n: u64) -> Natural {
    let mut sum = Natural::zero();
    let mut term = Natural::one();
    let mut k = 0u64;
    while 2 * k <= n {
        sum += &term;
        if 2 * k + 2 > n {
            break;
        }
        term *= (n - 2 * k) * (n - 2 * k - 1);
        term /= (k + 1) * (k + 1);
        k += 1;
    }
    sum
}

/// `Σ_{k=0}^{n} binom(2k, k)`.
pub fn partial_sum_cb(n: u64) -> Natural {
    let mut sum = Natural::zero();
    let mut b = Natural::one();
    for k in 0..=n {
        sum += &b;
        b = b * (2 * (2 * k + 1)) / (k + 1);
    }
    sum
}

/// `a_n(r, s) = Σ_k binom(n, k)^r binom(n+k, k)^s` for `r, s >= 1`.
pub fn a_rs(n: u64, r: u32, s: u32) -> Result<Natural> {
    if r == 0 || s == 0 {
        return Err(Error::UnsupportedParameters(format!("a_rs needs r, s >= 1 (got r={r}, s={s})")));
    }
    let mut sum = Natural::zero();
    let mut lower = Natural::one(); // binom(n, k)
    let mut upper = Natural::one(); // binom(n+k, k)
    for k in 0..=n {
        sum += num_traits::pow(lower.clone(), r as usize) * num_traits::pow(upper.clone(), s as usize);
        lower = lower * (n - k) / (k + 1);
        upper = upper * (n + k + 1) / (k + 1);
    }
    Ok(sum)
}

/// Eulerian number `A(n, k) = Σ_{i=0}^{k} (−1)^i (k−i)^n binom(n+1, i)`
/// for `1 <= k <= n`.
pub fn eulerian(n: u64, k: u64) -> Result<Natural> {
    if k < 1 || k > n {
        return Err(Error::UnsupportedParameters(format!("eulerian needs 1 <= k <= n (got n={n}, k={k})")));
    }
    let mut sum = BigInt::zero();
    let mut choose = Natural::one(); // binom(n+1, i)
    for i in 0..=k {
        let power = num_traits::pow(Natural::from(k - i), n as usize);
        let term = BigInt::from(power * &choose);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        choose = choose * (n + 1 - i) / (i + 1);
    }
    if sum.is_negative() {
        return Err(Error::Inconsistency(format!("eulerian({n},{k}) summed to a negative value")));
    }
    Ok(sum.to_biguint().expect("nonnegative"))
}

/// `E_n = A(2n−1, n)`.
pub fn eulerian_central(n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::OutOfDomain { what: "eulerian_central", min: 1, n: "0".into() });
    }
    eulerian(2 * n - 1, n)
}

/// `A(2n, n)`.
pub fn eulerian_bicentral(n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::OutOfDomain { what: "eulerian_bicentral", min: 1, n: "0".into() });
    }
    eulerian(2 * n, n)
}

/// Entries of row `n` of Pascal's triangle that are nonzero mod `p`,
/// found by scanning the row with Lucas' congruence.
pub fn gould_row_count(n: u64, p: u32) -> Result<Natural> {
    let table = LucasTable::new(p)?;
    let count = (0..=n).filter(|&k| table.binom_u64(n, k) != 0).count();
    Ok(Natural::from(count))
}

/// Noncrossing connected graphs on `n` vertices:
/// `N_n = 1/(n−1) Σ_k binom(3n−3, n+k+1) binom(k, n−2)` for `n >= 2`, and
/// `N_1 = 1`.
pub fn noncrossing(n: u64) -> Result<Natural> {
    match n {
        0 => Err(Error::OutOfDomain { what: "noncrossing", min: 1, n: "0".into() }),
        1 => Ok(Natural::one()),
        _ => {
            let top = 3 * n - 3;
            let mut sum = Natural::zero();
            // binom(k, n−2) vanishes below k = n−2; binom(3n−3, n+k+1) above k = 2n−4
            let first = n - 2;
            let mut term = binomial(top, n + first + 1);
            for k in first..=(2 * n - 4) {
                sum += &term;
                // ratio of consecutive terms of binom(top, n+k+1)·binom(k, n−2)
                term *= (top - n - k - 1) * (k + 1);
                term /= (n + k + 2) * (k + 1 - first);
            }
            let (q, r) = sum.div_rem(&Natural::from(n - 1));
            if !r.is_zero() {
                return Err(Error::Inconsistency(format!("noncrossing({n}): sum not divisible by {}", n - 1)));
            }
            Ok(q)
        }
    }
}

/// Coefficients `[0, g_1, ..., g_{n_max}]` of the compositional inverse `g`
/// of `f(x) = Σ_{m>=1} m! x^m`, i.e. `f(g(x)) = x`.
///
/// `powers[m][j]` holds `[x^j] g^m`. Since `g_1 = 1`, the coefficient of `x^n`
/// in `f(g)` is `g_n` plus terms that only involve `g_1..g_{n−1}`, which
/// fixes `g_n` with integer arithmetic.
pub fn com_table(n_max: usize) -> Vec<SignedBig> {
    let mut g = vec![BigInt::zero(); n_max + 1];
    if n_max == 0 {
        return g;
    }
    g[1] = BigInt::one();
    let mut factorial = vec![BigInt::one(); n_max + 1];
    for m in 1..=n_max {
        factorial[m] = &factorial[m - 1] * m;
    }
    let mut powers = vec![vec![BigInt::zero(); n_max + 1]; n_max + 1];
    powers[1][1] = BigInt::one();
    for n in 2..=n_max {
        let mut rest = BigInt::zero();
        for m in 2..=n {
            let mut c = BigInt::zero();
            for j in 1..=(n - m + 1) {
                if !g[j].is_zero() && !powers[m - 1][n - j].is_zero() {
                    c += &g[j] * &powers[m - 1][n - j];
                }
            }
            rest += &factorial[m] * &c;
            powers[m][n] = c;
        }
        g[n] = -rest;
        powers[1][n] = g[n].clone();
    }
    g
}

/// `Com_n`, the coefficient of `x^n` in the compositional inverse of
/// `Σ n! x^n`.
pub fn com(n: u64) -> Result<SignedBig> {
    if n == 0 {
        return Err(Error::OutOfDomain { what: "com", min: 1, n: "0".into() });
    }
    Ok(com_table(n as usize).swap_remove(n as usize))
}

/// `(2d)!! = (2d−1)(2d−3)···3·1`, with `0!! = 1`.
pub fn double_fact(d: u64) -> Natural {
    (1..=d).fold(Natural::one(), |acc, i| acc * (2 * i - 1))
}

/// Catalan numbers from `C_n = (4n−2)/(n+1) · C_{n−1}`.
#[derive(Debug, Clone)]
pub struct Catalans {
    n: u64,
    cur: Natural,
}

impl Catalans {
    pub fn new() -> Self {
        Catalans { n: 0, cur: Natural::one() }
    }
}

impl Default for Catalans {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Catalans {
    type Item = Natural;

    fn next(&mut self) -> Option<Natural> {
        let out = self.cur.clone();
        self.n += 1;
        let n = self.n;
        self.cur = exact_div(&(&self.cur * (4 * n - 2)), n + 1, "catalan recurrence");
        Some(out)
    }
}

/// `binom(2n, n)` from `binom(2n, n) = 2(2n−1)/n · binom(2n−2, n−1)`.
#[derive(Debug, Clone)]
pub struct CentralBinomials {
    n: u64,
    cur: Natural,
}

impl CentralBinomials {
    pub fn new() -> Self {
        CentralBinomials { n: 0, cur: Natural::one() }
    }
}

impl Default for CentralBinomials {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CentralBinomials {
    type Item = Natural;

    fn next(&mut self) -> Option<Natural> {
        let out = self.cur.clone();
        self.n += 1;
        let n = self.n;
        self.cur = exact_div(&(&self.cur * (2 * (2 * n - 1))), n, "central binomial recurrence");
        Some(out)
    }
}

/// Shared driver for three-term recurrences
/// `den(n)·a_n = c1(n)·a_{n−1} + c2(n)·a_{n−2}` with signed coefficients.
#[derive(Debug, Clone)]
struct ThreeTerm {
    n: u64,
    prev: BigInt,
    cur: BigInt,
    step: fn(u64) -> (i64, i64, i64),
    name: &'static str,
}

impl ThreeTerm {
    fn new(a0: u64, a1: u64, step: fn(u64) -> (i64, i64, i64), name: &'static str) -> Self {
        ThreeTerm { n: 0, prev: BigInt::from(a0), cur: BigInt::from(a1), step, name }
    }
}

impl Iterator for ThreeTerm {
    type Item = Natural;

    fn next(&mut self) -> Option<Natural> {
        let out = self.prev.clone();
        // advance (prev, cur) = (a_n, a_{n+1}) to (a_{n+1}, a_{n+2})
        let m = self.n + 2;
        let (den, c1, c2) = (self.step)(m);
        let num = &self.cur * c1 + &self.prev * c2;
        let (q, r) = num.div_rem(&BigInt::from(den));
        assert!(r.is_zero(), "{}: recurrence division at n={m} is not exact", self.name);
        self.prev = std::mem::replace(&mut self.cur, q);
        self.n += 1;
        Some(out.to_biguint().expect("recurrence produced a negative value"))
    }
}

macro_rules! three_term_stream {
    ($(#[$doc:meta])* $name:ident, $a0:expr, $a1:expr, $step:expr) => {
        $(#[$doc])*
        #[derive(Debug, Clone)]
        pub struct $name(ThreeTerm);

        impl $name {
            pub fn new() -> Self {
                $name(ThreeTerm::new($a0, $a1, $step, stringify!($name)))
            }
        }

        impl Default for $name {
            fn default() -> Self {
                Self::new()
            }
        }

        impl Iterator for $name {
            type Item = Natural;

            fn next(&mut self) -> Option<Natural> {
                self.0.next()
            }
        }
    };
}

three_term_stream!(
    /// Motzkin numbers from `(n+2) M_n = (2n+1) M_{n−1} + 3(n−1) M_{n−2}`.
    Motzkins,
    1,
    1,
    |n| { let n = n as i64; (n + 2, 2 * n + 1, 3 * (n - 1)) }
);

three_term_stream!(
    /// Central trinomial coefficients from `n T_n = (2n−1) T_{n−1} + 3(n−1) T_{n−2}`.
    Trinomials,
    1,
    1,
    |n| { let n = n as i64; (n, 2 * n - 1, 3 * (n - 1)) }
);

three_term_stream!(
    /// Hex tree numbers from `(n+2) H_n = 3(2n+1) H_{n−1} − 5(n−1) H_{n−2}`.
    HexNumbers,
    1,
    3,
    |n| { let n = n as i64; (n + 2, 3 * (2 * n + 1), -5 * (n - 1)) }
);

three_term_stream!(
    /// Central Delannoy numbers from `n D_n = 3(2n−1) D_{n−1} − (n−1) D_{n−2}`.
    Delannoys,
    1,
    3,
    |n| { let n = n as i64; (n, 3 * (2 * n - 1), -(n - 1)) }
);

three_term_stream!(
    /// Apéry numbers `Σ binom(n,k)² binom(n+k,k)` from
    /// `n² A_n = (11n² − 11n + 3) A_{n−1} + (n−1)² A_{n−2}`.
    Aperys,
    1,
    3,
    |n| { let n = n as i64; (n * n, 11 * n * n - 11 * n + 3, (n - 1) * (n - 1)) }
);

/// Riordan numbers driven by a Motzkin stream: `γ_{n+1} = M_n − γ_n`.
#[derive(Debug, Clone)]
pub struct Riordans {
    motzkin: Motzkins,
    cur: Natural,
}

impl Riordans {
    pub fn new() -> Self {
        Riordans { motzkin: Motzkins::new(), cur: Natural::one() }
    }
}

impl Default for Riordans {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Riordans {
    type Item = Natural;

    fn next(&mut self) -> Option<Natural> {
        let m = self.motzkin.next()?;
        let next = BigInt::from(m) - BigInt::from(self.cur.clone());
        let next = next.to_biguint().expect("riordan recursion went negative");
        Some(std::mem::replace(&mut self.cur, next))
    }
}

/// Motzkin prefixes by the last step: a prefix of length `n−1` ending above
/// the axis extends in three ways, one ending on the axis (a Motzkin path)
/// in two, so `P_n = 3 P_{n−1} − M_{n−1}`.
#[derive(Debug, Clone)]
pub struct MotzkinPrefixes {
    motzkin: Motzkins,
    cur: Natural,
}

impl MotzkinPrefixes {
    pub fn new() -> Self {
        MotzkinPrefixes { motzkin: Motzkins::new(), cur: Natural::one() }
    }
}

impl Default for MotzkinPrefixes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for MotzkinPrefixes {
    type Item = Natural;

    fn next(&mut self) -> Option<Natural> {
        let m = self.motzkin.next()?;
        let next = &self.cur * 3u32 - m;
        Some(std::mem::replace(&mut self.cur, next))
    }
}

/// Symmetric 0-1-2 tree counts, pulling one Motzkin number every two steps.
#[derive(Debug, Clone)]
pub struct Sym012s {
    motzkin: Motzkins,
    n: u64,
    cur: Natural,
}

impl Sym012s {
    pub fn new() -> Self {
        Sym012s { motzkin: Motzkins::new(), n: 0, cur: Natural::one() }
    }
}

impl Default for Sym012s {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Sym012s {
    type Item = Natural;

    fn next(&mut self) -> Option<Natural> {
        let out = self.cur.clone();
        self.n += 1;
        if self.n.is_multiple_of(2) {
            self.cur += self.motzkin.next()?;
        }
        Some(out)
    }
}

/// Running sums of the central binomial coefficients.
#[derive(Debug, Clone)]
pub struct PartialSums {
    inner: CentralBinomials,
    sum: Natural,
}

impl PartialSums {
    pub fn new() -> Self {
        PartialSums { inner: CentralBinomials::new(), sum: Natural::zero() }
    }
}

impl Default for PartialSums {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PartialSums {
    type Item = Natural;

    fn next(&mut self) -> Option<Natural> {
        self.sum += self.inner.next()?;
        Some(self.sum.clone())
    }
}

/// Rows `A(n, 1..=n)` of the Eulerian triangle for `n = 1, 2, ...`, from
/// `A(n, k) = k A(n−1, k) + (n−k+1) A(n−1, k−1)`.
#[derive(Debug, Clone)]
pub struct EulerianRows {
    row: Vec<Natural>,
}

impl EulerianRows {
    pub fn new() -> Self {
        EulerianRows { row: Vec::new() }
    }
}

impl Default for EulerianRows {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for EulerianRows {
    type Item = Vec<Natural>;

    fn next(&mut self) -> Option<Vec<Natural>> {
        let n = self.row.len() as u64 + 1;
        let mut next = Vec::with_capacity(n as usize);
        for k in 1..=n {
            let mut v = Natural::zero();
            if let Some(same) = self.row.get(k as usize - 1) {
                v += same * k;
            }
            if k >= 2 {
                v += &self.row[k as usize - 2] * (n - k + 1);
            }
            if n == 1 {
                v = Natural::one();
            }
            next.push(v);
        }
        self.row = next;
        Some(self.row.clone())
    }
}

/// Monotonically growing caches of the Motzkin, Riordan and hex numbers,
/// confined to one evaluation context.
#[derive(Debug, Clone, Default)]
pub struct Memo {
    motzkin: Cached<Motzkins>,
    riordan: Cached<Riordans>,
    hex: Cached<HexNumbers>,
}

#[derive(Debug, Clone, Default)]
struct Cached<I> {
    source: I,
    values: Vec<Natural>,
}

impl<I: Iterator<Item = Natural>> Cached<I> {
    fn get(&mut self, n: usize) -> &Natural {
        while self.values.len() <= n {
            let v = self.source.next().expect("streams are infinite");
            self.values.push(v);
        }
        &self.values[n]
    }
}

impl Memo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn motzkin(&mut self, n: u64) -> &Natural {
        self.motzkin.get(n as usize)
    }

    pub fn riordan(&mut self, n: u64) -> &Natural {
        self.riordan.get(n as usize)
    }

    pub fn hex(&mut self, n: u64) -> &Natural {
        self.hex.get(n as usize)
    }

    /// Number of cached values per table (Motzkin, Riordan, hex).
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.motzkin.values.len(), self.riordan.values.len(), self.hex.values.len())
    }
}

/// Binomial coefficients modulo a prime `p` from factorials with the
/// `p`-part removed: `v_p(n!)` is accumulated one factor at a time, and the
/// unit part of `n!` is kept modulo `p`. This route never looks at base-`p`
/// digits, so it is independent of Lucas' congruence.
#[derive(Debug, Clone)]
pub struct FactorialResidues {
    p: u64,
    unit: Vec<u64>,
    inv_unit: Vec<u64>,
    val: Vec<u64>,
}

impl FactorialResidues {
    pub fn new(p: u32, n_max: usize) -> Result<Self> {
        crate::lucas::check_prime(p)?;
        let pm = u64::from(p);
        let mut unit = vec![1u64; n_max + 1];
        let mut val = vec![0u64; n_max + 1];
        for i in 1..=n_max {
            let mut f = i as u64;
            let mut v = 0;
            while f.is_multiple_of(pm) {
                f /= pm;
                v += 1;
            }
            unit[i] = unit[i - 1] * (f % pm) % pm;
            val[i] = val[i - 1] + v;
        }
        let inv_unit = unit.iter().map(|&u| inverse_mod(u, pm)).collect();
        Ok(FactorialResidues { p: pm, unit, inv_unit, val })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `binom(n, k) mod p`.
    pub fn binom(&self, n: usize, k: usize) -> u64 {
        if k > n {
            return 0;
        }
        if self.val[n] > self.val[k] + self.val[n - k] {
            return 0;
        }
        self.unit[n] * self.inv_unit[k] % self.p * self.inv_unit[n - k] % self.p
    }

    /// `a_n(r, s) mod p` from the defining sum.
    pub fn a_rs(&self, n: usize, r: u32, s: u32) -> u64 {
        let p = self.p;
        (0..=n).fold(0u64, |acc, k| {
            let lower = pow_mod(self.binom(n, k), r.into(), p);
            if lower == 0 {
                return acc;
            }
            let upper = pow_mod(self.binom(n + k, k), s.into(), p);
            (acc + lower * upper) % p
        })
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

fn inverse_mod(u: u64, p: u64) -> u64 {
    pow_mod(u, p - 2, p)
}

/// `n mod m` of a signed value as a canonical `u64`.
pub fn signed_mod(n: &SignedBig, m: u64) -> u64 {
    let r = (n.magnitude() % m).to_u64().expect("reduced");
    if n.sign() == Sign::Minus && r != 0 {
        m - r
    } else {
        r
    }
}

/// Exponent of 2 in a nonzero natural.
pub fn two_adic(n: &BigUint) -> Option<u64> {
    n.trailing_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), n(1));
        assert_eq!(catalan(4), n(14));
        assert_eq!(catalan(10), n(16796));
        assert_eq!(central_binom(0), n(1));
        assert_eq!(central_binom(4), n(70));
        assert_eq!(central_binom(7), n(3432));
    }

    #[test]
    fn catalan_recurrence_matches_formula() {
        for (i, c) in Catalans::new().take(2001).enumerate() {
            assert_eq!(c, catalan(i as u64), "C_{i}");
        }
        for (i, b) in CentralBinomials::new().take(600).enumerate() {
            assert_eq!(b, central_binom(i as u64));
        }
    }

    #[test]
    fn motzkin_family_examples() {
        assert_eq!(motzkin(0), n(1));
        assert_eq!(motzkin(3), n(4));
        assert_eq!(motzkin(10), n(2188));
        assert_eq!(motzkin_prefix(0), n(1));
        assert_eq!(motzkin_prefix(1), n(2));
        assert_eq!(motzkin_prefix(3), n(13));
        assert_eq!(riordan(1).unwrap(), n(0));
        assert_eq!(riordan(4).unwrap(), n(3));
        assert_eq!(riordan(8).unwrap(), n(91));
        assert_eq!(sym012(0), n(1));
        assert_eq!(sym012(2), n(2));
        assert_eq!(sym012(3), n(2));
        assert_eq!(hex(1), n(3));
        assert_eq!(hex(2), n(10));
        assert_eq!(hex(4), n(137));
        assert_eq!(central_trinomial(0), n(1));
        assert_eq!(central_trinomial(2), n(3));
        assert_eq!(central_trinomial(4), n(19));
        assert_eq!(partial_sum_cb(0), n(1));
        assert_eq!(partial_sum_cb(3), n(29));
        assert_eq!(partial_sum_cb(4), n(99));
    }

    #[test]
    fn streams_match_defining_formulas() {
        let motz: Vec<Natural> = Motzkins::new().take(501).collect();
        for (i, m) in motz.iter().enumerate() {
            assert_eq!(*m, motzkin(i as u64), "M_{i}");
        }
        for (i, t) in Trinomials::new().take(400).enumerate() {
            assert_eq!(t, central_trinomial(i as u64), "T_{i}");
        }
        for (i, h) in HexNumbers::new().take(200).enumerate() {
            assert_eq!(h, hex(i as u64), "H_{i}");
        }
        for (i, g) in Riordans::new().take(200).enumerate() {
            assert_eq!(g, riordan(i as u64).unwrap(), "γ_{i}");
            assert_eq!(g, riordan_from_catalan(i as u64));
        }
        for (i, p) in MotzkinPrefixes::new().take(150).enumerate() {
            assert_eq!(p, motzkin_prefix(i as u64), "P_{i}");
        }
        for (i, s) in Sym012s::new().take(300).enumerate() {
            assert_eq!(s, sym012(i as u64), "S_{i}");
            assert_eq!(s, sym012_spine(i as u64));
        }
        for (i, s) in PartialSums::new().take(300).enumerate() {
            assert_eq!(s, partial_sum_cb(i as u64));
        }
    }

    #[test]
    fn a_rs_examples_and_recurrences() {
        assert_eq!(a_rs(2, 1, 1).unwrap(), n(13));
        assert_eq!(a_rs(2, 2, 1).unwrap(), n(19));
        assert_eq!(a_rs(0, 3, 2).unwrap(), n(1));
        assert!(a_rs(3, 0, 1).is_err());
        assert!(a_rs(3, 1, 0).is_err());
        let delannoy: Vec<Natural> = Delannoys::new().take(201).collect();
        let apery: Vec<Natural> = Aperys::new().take(201).collect();
        for i in 0..=200u64 {
            assert_eq!(a_rs(i, 1, 1).unwrap(), delannoy[i as usize], "D_{i}");
            assert_eq!(a_rs(i, 2, 1).unwrap(), apery[i as usize], "A_{i}");
        }
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian(3, 2).unwrap(), n(4));
        assert_eq!(eulerian(4, 2).unwrap(), n(11));
        assert_eq!(eulerian(6, 3).unwrap(), n(302));
        assert!(eulerian(3, 0).is_err());
        assert!(eulerian(3, 4).is_err());
        assert_eq!(eulerian_central(2).unwrap(), n(4));
        assert_eq!(eulerian_central(3).unwrap(), n(66));
        assert_eq!(eulerian_bicentral(2).unwrap(), n(11));
        assert!(eulerian_central(0).is_err());
        for (i, row) in EulerianRows::new().take(80).enumerate() {
            let rn = i as u64 + 1;
            assert_eq!(row.len() as u64, rn);
            for k in 1..=rn {
                assert_eq!(row[k as usize - 1], eulerian(rn, k).unwrap(), "A({rn},{k})");
            }
        }
    }

    // A(n, k) counts permutations of n letters with k−1 descents.
    #[test]
    fn eulerian_counts_permutations() {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        for size in 1..=7usize {
            let mut by_descents = vec![0u64; size];
            for p in permutations(size) {
                let d = p.windows(2).filter(|w| w[0] > w[1]).count();
                by_descents[d] += 1;
            }
            for k in 1..=size {
                assert_eq!(eulerian(size as u64, k as u64).unwrap(), n(by_descents[k - 1]));
            }
        }
    }

    #[test]
    fn gould_and_noncrossing_examples() {
        assert_eq!(gould_row_count(4, 2).unwrap(), n(2));
        assert_eq!(gould_row_count(3, 2).unwrap(), n(4));
        assert_eq!(gould_row_count(2, 3).unwrap(), n(3));
        assert!(gould_row_count(2, 4).is_err());
        assert_eq!(noncrossing(1).unwrap(), n(1));
        assert_eq!(noncrossing(2).unwrap(), n(1));
        assert_eq!(noncrossing(3).unwrap(), n(4));
        assert_eq!(noncrossing(4).unwrap(), n(23));
        assert_eq!(noncrossing(5).unwrap(), n(156));
        assert!(noncrossing(0).is_err());
    }

    #[test]
    fn noncrossing_matches_direct_binomials() {
        for m in 2..=60u64 {
            let sum: Natural = (0..=3 * m).map(|k| binomial(3 * m - 3, m + k + 1) * binomial(k, m - 2)).sum();
            assert_eq!(noncrossing(m).unwrap(), sum / (m - 1), "N_{m}");
        }
    }

    #[test]
    fn gould_scan_matches_exact_rows() {
        for row in 0..120u64 {
            for p in [2u32, 3, 5, 7] {
                let direct = (0..=row).filter(|&k| !(binomial(row, k) % p).is_zero()).count();
                assert_eq!(gould_row_count(row, p).unwrap(), n(direct as u64));
            }
        }
    }

    #[test]
    fn com_examples() {
        assert_eq!(com(1).unwrap(), BigInt::from(1));
        assert_eq!(com(2).unwrap(), BigInt::from(-2));
        assert_eq!(com(4).unwrap(), BigInt::from(-4));
        assert!(com(0).is_err());
        let table = com_table(6);
        let expect = [0i64, 1, -2, 2, -4, -4, -48];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(table[i], BigInt::from(e));
        }
    }

    // Composing f with its inverse truncated at x^n must leave exactly x.
    #[test]
    fn com_is_a_compositional_inverse() {
        let n_max = 25usize;
        let g = com_table(n_max);
        let mut fact = BigInt::one();
        let mut power = vec![BigInt::zero(); n_max + 1];
        power[0] = BigInt::one();
        let mut composed = vec![BigInt::zero(); n_max + 1];
        for m in 1..=n_max {
            fact *= m;
            let mut next = vec![BigInt::zero(); n_max + 1];
            for (i, a) in power.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 1..=(n_max - i) {
                    next[i + j] += a * &g[j];
                }
            }
            power = next;
            for (c, p) in composed.iter_mut().zip(&power) {
                *c += &fact * p;
            }
        }
        for (i, c) in composed.iter().enumerate() {
            let expect = if i == 1 { BigInt::one() } else { BigInt::zero() };
            assert_eq!(*c, expect, "coefficient {i}");
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_fact(0), n(1));
        assert_eq!(double_fact(1), n(1));
        assert_eq!(double_fact(3), n(15));
        assert_eq!(double_fact(6), n(10395));
    }

    #[test]
    fn double_factorial_convolution() {
        for d in 1..=30u64 {
            let rhs: Natural = (1..=d)
                .map(|k| binomial(d + 1, k) * double_fact(k - 1) * double_fact(d - k))
                .sum();
            assert_eq!(double_fact(d) * 2u32, rhs, "d = {d}");
        }
    }

    #[test]
    fn factorial_residues_match_exact() {
        let fr = FactorialResidues::new(3, 800).unwrap();
        for a in 0..=400usize {
            for b in (0..=a).step_by(3) {
                assert_eq!(Natural::from(fr.binom(a, b)), binomial(a as u64, b as u64) % 3u32);
            }
        }
        for i in 0..=120u64 {
            for (r, s) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let exact = a_rs(i, r, s).unwrap() % 3u32;
                assert_eq!(Natural::from(fr.a_rs(i as usize, r, s)), exact, "a_{i}({r},{s})");
            }
        }
    }

    #[test]
    fn memo_grows_monotonically() {
        let mut memo = Memo::new();
        assert_eq!(memo.motzkin(10), &n(2188));
        assert_eq!(memo.sizes().0, 11);
        assert_eq!(memo.motzkin(3), &n(4));
        assert_eq!(memo.sizes().0, 11);
        assert_eq!(memo.riordan(8), &n(91));
        assert_eq!(memo.hex(4), &n(137));
        assert_eq!(memo.hex(300), &hex(300));
    }

    #[test]
    fn sequence_ids() {
        for name in SEQUENCE_NAMES {
            let id: SequenceId = name.parse().unwrap();
            assert_eq!(id.name(), *name);
        }
        assert!("bogus".parse::<SequenceId>().is_err());
        let id: SequenceId = "a_rs".parse().unwrap();
        assert_eq!(id.with_params(Some(2), Some(1), None).unwrap(), SequenceId::ARs { r: 2, s: 1 });
        assert!(id.with_params(Some(0), None, None).is_err());
        assert_eq!(SequenceId::Catalan.value(10).unwrap(), BigInt::from(16796));
        assert_eq!(SequenceId::Motzkin.value(3).unwrap(), BigInt::from(4));
        assert_eq!(SequenceId::Com.value(2).unwrap(), BigInt::from(-2));
        assert!(matches!(SequenceId::Com.value(10_000), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(SequenceId::Noncrossing.value(0), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn tables_agree_with_values() {
        let ids = [
            SequenceId::Catalan,
            SequenceId::CentralBinom,
            SequenceId::Motzkin,
            SequenceId::MotzkinPrefix,
            SequenceId::Riordan,
            SequenceId::Sym012,
            SequenceId::Hex,
            SequenceId::CentralTrinomial,
            SequenceId::PartialSumCb,
            SequenceId::ARs { r: 2, s: 2 },
            SequenceId::Delannoy,
            SequenceId::Apery,
            SequenceId::EulerianCentral,
            SequenceId::EulerianBicentral,
            SequenceId::Gould { p: 3 },
            SequenceId::Noncrossing,
            SequenceId::Com,
            SequenceId::DoubleFact,
        ];
        for id in ids {
            let table = id.table(40).unwrap();
            assert_eq!(table.len() as u64, 41 - id.start(), "{id}");
            for (i, v) in table.iter().enumerate() {
                let idx = i as u64 + id.start();
                assert_eq!(*v, id.value(idx).unwrap(), "{id} at {idx}");
            }
        }
    }

    #[test]
    fn signed_reduction() {
        assert_eq!(signed_mod(&BigInt::from(-4), 3), 2);
        assert_eq!(signed_mod(&BigInt::from(-3), 3), 0);
        assert_eq!(signed_mod(&BigInt::from(7), 4), 3);
    }
}
