//! Range checks of the digit kernels against exact values, identity checks,
//! conjecture scans and the report format shared by all of them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::digits::{DigitString, Natural};
use crate::enumerate::{self, EnumBounds};
use crate::error::{Error, Result};
use crate::exact::{
    self, Catalans, CentralBinomials, FactorialResidues, HexNumbers, MotzkinPrefixes, Motzkins, PartialSums,
    Riordans, Sym012s, Trinomials,
};
use crate::residues::{self, EulerianKind, FamilyTag};
use crate::thue_morse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub check_id: String,
    pub range: (u64, u64),
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
    pub status: Status,
}

#[derive(Serialize)]
struct FailureLine<'a> {
    check: &'a str,
    n: &'a str,
    expected: &'a str,
    actual: &'a str,
    status: Status,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    check: &'a str,
    range: [u64; 2],
    failures: usize,
    status: Status,
}

impl Report {
    fn new(check_id: impl Into<String>, range: (u64, u64), failures: Vec<Failure>, started: Instant) -> Self {
        let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
        Report { check_id: check_id.into(), range, failures, elapsed: started.elapsed(), status }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The failure with the smallest index.
    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    /// One JSON object per failure followed by a summary object. Timing is
    /// left out so the output is reproducible.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            let line = FailureLine {
                check: &self.check_id,
                n: &f.n,
                expected: &f.expected,
                actual: &f.actual,
                status: Status::Fail,
            };
            out.push_str(&serde_json::to_string(&line).expect("serializable"));
            out.push('\n');
        }
        let summary = SummaryLine {
            check: &self.check_id,
            range: [self.range.0, self.range.1],
            failures: self.failures.len(),
            status: self.status,
        };
        out.push_str(&serde_json::to_string(&summary).expect("serializable"));
        out.push('\n');
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            out.push_str(&format!("{}\t{}\t{}\t{}\tfail\n", self.check_id, f.n, f.expected, f.actual));
        }
        out.push_str(&format!(
            "{}\t{}..{}\t-\t{}\t{}\n",
            self.check_id,
            self.range.0,
            self.range.1,
            self.failures.len(),
            self.status
        ));
        out
    }

    pub fn to_summary(&self) -> String {
        let mut line = format!(
            "{} {} [{}, {}] {} failure(s)",
            self.status.to_string().to_uppercase(),
            self.check_id,
            self.range.0,
            self.range.1,
            self.failures.len()
        );
        if let Some(f) = self.first_failure() {
            line.push_str(&format!("; first at n={}: expected {}, got {}", f.n, f.expected, f.actual));
        }
        line.push('\n');
        line
    }
}

/// The kernels that `check_theorem` can drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Theorem {
    CatalanOmega2,
    CatalanMod3,
    CentralBinom(u32),
    CentralTrinomialMod3,
    FamilyParity(FamilyTag),
    FamilyMod3(FamilyTag),
    PartialSumMod3,
    ARs(u32, u32),
    Gould(u32),
    Eulerian(EulerianKind),
}

/// Registered check ids, one per kernel instance.
pub const THEOREM_CHECKS: &[&str] = &[
    "catalan_omega2",
    "catalan_mod3",
    "central_binom_mod2",
    "central_binom_mod3",
    "central_binom_mod5",
    "central_binom_mod7",
    "central_trinomial_mod3",
    "motzkin_parity",
    "prefix_parity",
    "riordan_parity",
    "hex_parity",
    "motzkin_mod3",
    "prefix_mod3",
    "riordan_mod3",
    "hex_mod3",
    "partial_sum_mod3",
    "a_rs_mod3_r1s1",
    "a_rs_mod3_r1s2",
    "a_rs_mod3_r2s1",
    "a_rs_mod3_r2s2",
    "gould_count_p2",
    "gould_count_p3",
    "gould_count_p5",
    "eulerian_central_mod3",
    "eulerian_bicentral_mod3",
];

fn parse_theorem(id: &str) -> Result<Theorem> {
    let unknown = || Error::UnknownCheck(id.to_string());
    let th = match id {
        "catalan_omega2" => Theorem::CatalanOmega2,
        "catalan_mod3" => Theorem::CatalanMod3,
        "central_trinomial_mod3" => Theorem::CentralTrinomialMod3,
        "partial_sum_mod3" => Theorem::PartialSumMod3,
        "eulerian_central_mod3" => Theorem::Eulerian(EulerianKind::Central),
        "eulerian_bicentral_mod3" => Theorem::Eulerian(EulerianKind::Bicentral),
        _ => {
            if let Some(p) = id.strip_prefix("central_binom_mod") {
                let p: u32 = p.parse().map_err(|_| unknown())?;
                crate::lucas::check_prime(p).map_err(|_| unknown())?;
                Theorem::CentralBinom(p)
            } else if let Some(p) = id.strip_prefix("gould_count_p") {
                let p: u32 = p.parse().map_err(|_| unknown())?;
                crate::lucas::check_prime(p).map_err(|_| unknown())?;
                Theorem::Gould(p)
            } else if let Some(rest) = id.strip_prefix("a_rs_mod3_r") {
                let (r, s) = rest.split_once('s').ok_or_else(unknown)?;
                let r: u32 = r.parse().map_err(|_| unknown())?;
                let s: u32 = s.parse().map_err(|_| unknown())?;
                if r == 0 || s == 0 {
                    return Err(unknown());
                }
                Theorem::ARs(r, s)
            } else if let Some(f) = id.strip_suffix("_parity") {
                Theorem::FamilyParity(f.parse().map_err(|_| unknown())?)
            } else if let Some(f) = id.strip_suffix("_mod3") {
                Theorem::FamilyMod3(f.parse().map_err(|_| unknown())?)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(th)
}

/// Whether `id` names a registered or parametrised theorem check.
pub fn is_theorem_check(id: &str) -> bool {
    parse_theorem(id).is_ok()
}

fn residues_of<I: Iterator<Item = Natural>>(values: I, lo: u64, hi: u64, m: u32) -> Vec<String> {
    values
        .skip(lo as usize)
        .take((hi - lo + 1) as usize)
        .map(|v| (v % m).to_string())
        .collect()
}

fn family_stream(f: FamilyTag) -> Box<dyn Iterator<Item = Natural>> {
    match f {
        FamilyTag::Motzkin => Box::new(Motzkins::new()),
        FamilyTag::Prefix => Box::new(MotzkinPrefixes::new()),
        FamilyTag::Riordan => Box::new(Riordans::new()),
        FamilyTag::Hex => Box::new(HexNumbers::new()),
    }
}

/// Entries of Pascal rows `0..=hi` that are nonzero mod `p`, by sweeping the
/// rows with additions mod `p`.
fn pascal_counts(p: u32, hi: u64) -> Vec<u64> {
    let p = p as u8;
    let mut row = vec![1u8];
    let mut counts = Vec::with_capacity(hi as usize + 1);
    for _ in 0..=hi {
        counts.push(row.iter().filter(|&&x| x != 0).count() as u64);
        let mut next = vec![1u8; row.len() + 1];
        for k in 1..row.len() {
            next[k] = (row[k - 1] + row[k]) % p;
        }
        row = next;
    }
    counts
}

/// Central and bicentral Eulerian numbers mod `m` for `n = 1..=hi`, from the
/// triangle recurrence reduced mod `m`.
fn eulerian_residues(kind: EulerianKind, hi: u64, m: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(hi as usize);
    let mut row: Vec<u64> = Vec::new();
    for r in 1..=2 * hi {
        let mut next = vec![0u64; r as usize];
        for k in 1..=r {
            let mut v = 0;
            if let Some(&same) = row.get(k as usize - 1) {
                v += k % m * same;
            }
            if k >= 2 {
                v += (r - k + 1) % m * row[k as usize - 2];
            }
            next[k as usize - 1] = if r == 1 { 1 } else { v % m };
        }
        row = next;
        let wanted = match kind {
            EulerianKind::Central => r % 2 == 1,
            EulerianKind::Bicentral => r % 2 == 0,
        };
        if wanted {
            let n = r.div_ceil(2);
            out.push(row[n as usize - 1]);
        }
    }
    out
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool")
}

fn compare(lo: u64, expected: Vec<String>, actual: Vec<String>) -> Vec<Failure> {
    expected
        .into_iter()
        .zip(actual)
        .enumerate()
        .filter(|(_, (e, a))| e != a)
        .map(|(i, (expected, actual))| Failure { n: (lo + i as u64).to_string(), expected, actual })
        .collect()
}

/// Compares a digit kernel with exact values reduced mod `m` for every
/// `n <= n_max`. The result does not depend on `workers` (0 means the
/// default pool size).
pub fn check_theorem(check_id: &str, n_max: u64, workers: usize) -> Result<Report> {
    let th = parse_theorem(check_id)?;
    let started = Instant::now();
    let lo = if matches!(th, Theorem::Eulerian(_)) { 1 } else { 0 };
    let hi = n_max.max(lo);
    let pool = pool(workers);
    let expected: Vec<String> = match th {
        Theorem::CatalanOmega2 => Catalans::new()
            .take(hi as usize + 1)
            .map(|c| c.trailing_zeros().expect("C_n > 0").to_string())
            .collect(),
        Theorem::CatalanMod3 => residues_of(Catalans::new(), lo, hi, 3),
        Theorem::CentralBinom(p) => residues_of(CentralBinomials::new(), lo, hi, p),
        Theorem::CentralTrinomialMod3 => residues_of(Trinomials::new(), lo, hi, 3),
        Theorem::FamilyParity(f) => residues_of(family_stream(f), lo, hi, 2),
        Theorem::FamilyMod3(f) => residues_of(family_stream(f), lo, hi, 3),
        Theorem::PartialSumMod3 => residues_of(PartialSums::new(), lo, hi, 3),
        Theorem::ARs(r, s) => {
            let fr = FactorialResidues::new(3, 2 * hi as usize)?;
            pool.install(|| (lo..=hi).into_par_iter().map(|n| fr.a_rs(n as usize, r, s).to_string()).collect())
        }
        Theorem::Gould(p) => pascal_counts(p, hi)
            .into_iter()
            .enumerate()
            .map(|(n, c)| format!("{c} {}", c == n as u64 + 1))
            .collect(),
        Theorem::Eulerian(kind) => eulerian_residues(kind, hi, 3).into_iter().map(|v| v.to_string()).collect(),
    };
    let kernel = |n: u64| -> Result<String> {
        Ok(match th {
            Theorem::CatalanOmega2 => residues::catalan_omega2(&DigitString::from_u64(n, 2)?)?.to_string(),
            Theorem::CatalanMod3 => residues::catalan_mod3(&DigitString::from_u64(n, 3)?)?.to_string(),
            Theorem::CentralBinom(p) => residues::central_binom_mod_p(&DigitString::from_u64(n, p)?, p)?.to_string(),
            Theorem::CentralTrinomialMod3 => {
                residues::central_trinomial_mod3(&DigitString::from_u64(n, 3)?)?.to_string()
            }
            Theorem::FamilyParity(f) => residues::family_parity(f, &DigitString::from_u64(n, 2)?)?.to_string(),
            Theorem::FamilyMod3(f) => residues::family_mod3(f, &DigitString::from_u64(n, 3)?)?.to_string(),
            Theorem::PartialSumMod3 => residues::partial_sum_mod3(&DigitString::from_u64(n, 3)?)?.to_string(),
            Theorem::ARs(r, s) => residues::a_rs_mod3(&DigitString::from_u64(n, 3)?, r, s)?.to_string(),
            Theorem::Gould(p) => {
                let digits = DigitString::from_u64(n, p)?;
                let count = residues::gould_count(&digits, p)?;
                format!("{count} {}", residues::gould_all_nonzero(&digits, p)?)
            }
            Theorem::Eulerian(kind) => {
                residues::eulerian_central_mod3(kind, &DigitString::from_u64(n, 3)?)?.to_string()
            }
        })
    };
    let actual: Vec<String> = pool.install(|| (lo..=hi).into_par_iter().map(kernel).collect::<Result<Vec<_>>>())?;
    Ok(Report::new(check_id, (lo, hi), compare(lo, expected, actual), started))
}

/// Conjectures with no proof; only exact values can confirm them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjectureId {
    AmdeberhanMod4,
    AmdeberhanMod8,
    NoncrossingMod3,
    ComCatalanMod3,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 4] = [
        ConjectureId::AmdeberhanMod4,
        ConjectureId::AmdeberhanMod8,
        ConjectureId::NoncrossingMod3,
        ConjectureId::ComCatalanMod3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ConjectureId::AmdeberhanMod4 => "amdeberhan_mod4",
            ConjectureId::AmdeberhanMod8 => "amdeberhan_mod8",
            ConjectureId::NoncrossingMod3 => "noncrossing_mod3",
            ConjectureId::ComCatalanMod3 => "com_catalan_mod3",
        }
    }

    /// Largest `n_max` a scan will accept.
    pub fn budget(&self) -> u64 {
        match self {
            ConjectureId::AmdeberhanMod4 | ConjectureId::AmdeberhanMod8 => 200_000,
            ConjectureId::NoncrossingMod3 => 5_000,
            ConjectureId::ComCatalanMod3 => 300,
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConjectureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConjectureId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// `m = 4^e·u` with `4 ∤ u`; returns `(e, u mod 4)`.
fn strip_fours(mut m: u64) -> (u32, u64) {
    let mut e = 0;
    while m > 0 && m.is_multiple_of(4) {
        m /= 4;
        e += 1;
    }
    (e, m % 4)
}

/// Whether `n = (4i+1)·4^{j+1} − 1` or `n = (4i+3)·4^{j+1} − 2` for some
/// `i, j >= 0`.
pub fn in_amdeberhan_set(n: u64) -> bool {
    let (e1, u1) = strip_fours(n + 1);
    let (e2, u2) = strip_fours(n + 2);
    (e1 >= 1 && u1 == 1) || (e2 >= 1 && u2 == 3)
}

/// Conjectured `N_n mod 3`: 1 when `n` is `3^i` or `2·3^i`, 2 when `n` is
/// `3^i + 3^j` with `i ≠ j`, 0 otherwise.
pub fn noncrossing_mod3_prediction(n: u64) -> u64 {
    let digits = DigitString::from_u64(n, 3).expect("base 3");
    let (ones, twos) = (digits.count(1), digits.count(2));
    match (ones, twos) {
        (1, 0) | (0, 1) => 1,
        (2, 0) => 2,
        _ => 0,
    }
}

/// Scans a conjecture over `n <= n_max`. A counterexample is a failing
/// report, never an error.
pub fn scan_conjecture(c: ConjectureId, n_max: u64) -> Result<Report> {
    if n_max > c.budget() {
        return Err(Error::BudgetExceeded { seq: c.name().to_string(), n: n_max.to_string(), limit: c.budget() });
    }
    let started = Instant::now();
    let mut failures = Vec::new();
    let lo = match c {
        ConjectureId::NoncrossingMod3 | ConjectureId::ComCatalanMod3 => 1,
        _ => 0,
    };
    let hi = n_max.max(lo);
    match c {
        ConjectureId::AmdeberhanMod4 => {
            for (n, m) in Motzkins::new().take(hi as usize + 1).enumerate() {
                let zero = (m % 4u32).is_zero();
                let predicted = in_amdeberhan_set(n as u64);
                if zero != predicted {
                    failures.push(Failure {
                        n: n.to_string(),
                        expected: format!("M_n = 0 mod 4: {predicted}"),
                        actual: format!("M_n = 0 mod 4: {zero}"),
                    });
                }
            }
        }
        ConjectureId::AmdeberhanMod8 => {
            for (n, m) in Motzkins::new().take(hi as usize + 1).enumerate() {
                if (m % 8u32).is_zero() {
                    failures.push(Failure { n: n.to_string(), expected: "nonzero mod 8".into(), actual: "0".into() });
                }
            }
        }
        ConjectureId::NoncrossingMod3 => {
            let values: Vec<Result<u64>> = (lo..=hi)
                .into_par_iter()
                .map(|n| Ok((exact::noncrossing(n)? % 3u32).to_u64().expect("reduced")))
                .collect();
            for (n, v) in (lo..=hi).zip(values) {
                let (actual, expected) = (v?, noncrossing_mod3_prediction(n));
                if actual != expected {
                    failures.push(Failure { n: n.to_string(), expected: expected.to_string(), actual: actual.to_string() });
                }
            }
        }
        ConjectureId::ComCatalanMod3 => {
            let com = exact::com_table(hi as usize);
            for (n, c_prev) in (lo..=hi).zip(Catalans::new()) {
                let actual = exact::signed_mod(&com[n as usize], 3);
                let expected = (c_prev % 3u32).to_u64().expect("reduced");
                if actual != expected {
                    failures.push(Failure { n: n.to_string(), expected: expected.to_string(), actual: actual.to_string() });
                }
            }
        }
    }
    Ok(Report::new(c.name(), (lo, hi), failures, started))
}

/// Index ranges for the identity suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityBounds {
    /// Double factorial convolution, `1 <= d <= double_fact`.
    pub double_fact: u64,
    /// Exact identities among Motzkin, trinomial, Riordan and 0-1-2 tree counts.
    pub exact: u64,
    /// Parity identities.
    pub parity: u64,
    /// Thue-Morse digit-sum formula and block lengths.
    pub thue_morse: u64,
}

impl Default for IdentityBounds {
    fn default() -> Self {
        IdentityBounds { double_fact: 30, exact: 2000, parity: 5000, thue_morse: 100_000 }
    }
}

fn mismatch(n: u64, expected: impl ToString, actual: impl ToString) -> Failure {
    Failure { n: n.to_string(), expected: expected.to_string(), actual: actual.to_string() }
}

/// Evaluates every identity over its range; one report per identity.
pub fn check_identities(bounds: IdentityBounds) -> Vec<Report> {
    let mut reports = Vec::new();

    // 2·(2d)!! = Σ_{k=1}^{d} binom(d+1, k)·(2k−2)!!·(2d−2k)!!
    let started = Instant::now();
    let failures = (1..=bounds.double_fact)
        .filter_map(|d| {
            let lhs = exact::double_fact(d) * 2u32;
            let rhs: Natural = (1..=d)
                .map(|k| exact::binomial(d + 1, k) * exact::double_fact(k - 1) * exact::double_fact(d - k))
                .sum();
            (lhs != rhs).then(|| mismatch(d, lhs, rhs))
        })
        .collect();
    reports.push(Report::new("double_fact_convolution", (1, bounds.double_fact), failures, started));

    // Defining sums, evaluated independently per index.
    let hi = bounds.exact;
    let started_tables = Instant::now();
    let motzkin: Vec<Natural> = (0..=hi + 1).into_par_iter().map(exact::motzkin).collect();
    let trinomial: Vec<Natural> = (0..=hi + 2).into_par_iter().map(exact::central_trinomial).collect();
    let riordan: Vec<Natural> = (0..=hi + 1).into_par_iter().map(exact::riordan_from_catalan).collect();

    // 2M_n = 3T_n + 2T_{n+1} − T_{n+2}
    let started = started_tables;
    let failures = (0..=hi)
        .filter_map(|n| {
            let i = n as usize;
            let lhs = &motzkin[i] * 2u32;
            let rhs = &trinomial[i] * 3u32 + &trinomial[i + 1] * 2u32 - &trinomial[i + 2];
            (lhs != rhs).then(|| mismatch(n, lhs, rhs))
        })
        .collect();
    reports.push(Report::new("motzkin_trinomial", (0, hi), failures, started));

    // M_n = γ_{n+1} + γ_n
    let started = Instant::now();
    let failures = (0..=hi)
        .filter_map(|n| {
            let i = n as usize;
            let rhs = &riordan[i + 1] + &riordan[i];
            (motzkin[i] != rhs).then(|| mismatch(n, &motzkin[i], rhs))
        })
        .collect();
    reports.push(Report::new("motzkin_riordan", (0, hi), failures, started));

    // S_{2n−2} = S_{2n−3} + M_{n−2}, with S from the spine count.
    let started = Instant::now();
    let mut spine = Vec::with_capacity(2 * hi as usize + 2);
    let mut acc = Natural::from(1u32);
    for i in 0..=(2 * hi + 1) {
        if i >= 2 && i % 2 == 0 {
            acc += &motzkin[(i / 2 - 1) as usize];
        }
        spine.push(acc.clone());
    }
    let failures = (2..=hi)
        .filter_map(|n| {
            let lhs = &spine[(2 * n - 2) as usize];
            let rhs = &spine[(2 * n - 3) as usize] + &motzkin[(n - 2) as usize];
            (*lhs != rhs).then(|| mismatch(n, lhs, rhs))
        })
        .collect();
    reports.push(Report::new("sym012_even_step", (2, hi), failures, started));

    // S_{2n+1} = S_{2n}, from the recursion and, where feasible, from listing trees.
    let started = Instant::now();
    let sym: Vec<Natural> = Sym012s::new().take(2 * hi as usize + 2).collect();
    let bounds012 = EnumBounds::default().trees012;
    let mut failures = Vec::new();
    for n in 0..=hi {
        let (even, odd) = (&sym[2 * n as usize], &sym[2 * n as usize + 1]);
        if even != odd {
            failures.push(mismatch(n, even, odd));
        }
        if 2 * n < bounds012 {
            let listed_even = enumerate::trees012(2 * n, true).expect("within bound");
            let listed_odd = enumerate::trees012(2 * n + 1, true).expect("within bound");
            if listed_even != listed_odd || Natural::from(listed_odd) != *odd {
                failures.push(mismatch(n, format!("{even} {even}"), format!("{listed_even} {listed_odd}")));
            }
        }
    }
    reports.push(Report::new("sym012_odd_step", (0, hi), failures, started));

    // M_n ≡ S_n (mod 2)
    let started = Instant::now();
    let ph = bounds.parity;
    let failures = Motzkins::new()
        .zip(Sym012s::new())
        .take(ph as usize + 1)
        .enumerate()
        .filter_map(|(n, (m, s))| {
            let (a, b) = (&m % 2u32, &s % 2u32);
            (a != b).then(|| mismatch(n as u64, a, b))
        })
        .collect();
    reports.push(Report::new("motzkin_sym012_parity", (0, ph), failures, started));

    // S_{2n−2} is even iff n ∉ c
    let started = Instant::now();
    let sym: Vec<u32> = Sym012s::new()
        .take(2 * ph as usize)
        .map(|s| (s % 2u32).to_u32().expect("reduced"))
        .collect();
    let failures = (1..=ph)
        .filter_map(|n| {
            let even = sym[(2 * n - 2) as usize] == 0;
            let outside = !thue_morse::in_c_u64(n).expect("n >= 1");
            (even != outside).then(|| mismatch(n, format!("even: {outside}"), format!("even: {even}")))
        })
        .collect();
    reports.push(Report::new("sym012_parity_c", (1, ph), failures, started));

    // t_n = ρ(δ(n)), against the recursive definition.
    let started = Instant::now();
    let th = bounds.thue_morse;
    let mut t = vec![0u8; th as usize + 1];
    for n in 1..=th as usize {
        t[n] = if n % 2 == 0 { t[n / 2] } else { 1 - t[n / 2] };
    }
    let failures = (0..=th)
        .filter_map(|n| {
            let rho = (BigUint::from(n).count_ones() % 2) as u8;
            (t[n as usize] != rho || thue_morse::t_u64(n) != rho).then(|| mismatch(n, t[n as usize], rho))
        })
        .collect();
    reports.push(Report::new("thue_morse_digit_sum", (0, th), failures, started));

    // Runs of t have lengths c_k − c_{k−1}.
    let started = Instant::now();
    let runs = thue_morse::scan_blocks(th + 1);
    let failures = runs
        .iter()
        .enumerate()
        .filter_map(|(k, &len)| {
            let law = thue_morse::block_length(k as u64);
            (law != len).then(|| mismatch(k as u64, law, len))
        })
        .collect();
    reports.push(Report::new("thue_morse_block_lengths", (0, th), failures, started));

    reports
}

/// Maximal runs `(start, end)` of `true` in `zero[0..]`; a run touching the
/// end of the window is incomplete and left out.
fn complete_runs(zero: &[bool]) -> Vec<(u64, u64)> {
    let mut runs = Vec::new();
    let mut start = None;
    for (i, &z) in zero.iter().enumerate() {
        match (z, start) {
            (true, None) => start = Some(i as u64),
            (false, Some(s)) => {
                runs.push((s, i as u64 - 1));
                start = None;
            }
            _ => {}
        }
    }
    runs
}

/// Compares the zero runs of `C_n mod p` for `n <= scan_limit` with the
/// block formula. For `p = 2` the runs come from the `ω_2` kernel instead of
/// big integers. Missing blocks are reported as failures.
pub fn check_blocks(p: u32, k_max: u64, scan_limit: u64) -> Result<Report> {
    if !matches!(p, 2 | 3 | 5 | 7) {
        return Err(Error::UnsupportedParameters(format!("block checks support p in {{2, 3, 5, 7}}, got {p}")));
    }
    let started = Instant::now();
    let zero: Vec<bool> = if p == 2 {
        (0..=scan_limit)
            .map(|n| residues::catalan_omega2(&DigitString::from_u64(n, 2).expect("base 2")).expect("base 2") > 0)
            .collect()
    } else {
        Catalans::new().take(scan_limit as usize + 1).map(|c| (c % p).is_zero()).collect()
    };
    let runs = complete_runs(&zero);
    let mut failures = Vec::new();
    for k in 1..=k_max {
        let info = residues::catalan_zero_block(p, k)?;
        let Some(&(start, end)) = runs.get(k as usize - 1) else {
            failures.push(Failure {
                n: k.to_string(),
                expected: format!("length {}", info.length),
                actual: format!("incomplete: scan to {scan_limit} found {} complete blocks", runs.len()),
            });
            continue;
        };
        let mut expected = format!("length {}", info.length);
        let mut actual = format!("length {}", end - start + 1);
        if let (Some(s), Some(e)) = (&info.start, &info.end) {
            expected.push_str(&format!(" [{s}, {e}]"));
            actual.push_str(&format!(" [{start}, {end}]"));
        }
        if expected != actual {
            failures.push(Failure { n: k.to_string(), expected, actual });
        }
    }
    Ok(Report::new(format!("catalan_blocks_p{p}"), (1, k_max), failures, started))
}

/// Orbit census invariants for `1 <= n <= n_max`: orbit sizes are powers of
/// two and match the class sizes, they sum to `C_n`, the least exponent is
/// `δ(n+1) − 1` and is attained by exactly `(2d)!!` orbits, and a fixed
/// point exists exactly when `n + 1` is a power of two (and is then unique).
pub fn check_orbits(n_max: u64) -> Result<Report> {
    let bound = EnumBounds::default().binary - 1;
    if n_max > bound {
        return Err(Error::BoundExceeded { what: "check_orbits", n: n_max, bound });
    }
    let started = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let census = enumerate::orbit_census(n)?;
        let mut total = Natural::zero();
        for o in &census.orbits {
            total += &o.size;
            if o.size.count_ones() != 1 {
                failures.push(mismatch(n, "power of two", format!("orbit {} of size {}", o.canonical, o.size)));
            }
            if Natural::from(o.members) != o.size {
                failures.push(mismatch(n, format!("{} members", o.size), format!("{} members", o.members)));
            }
        }
        let catalan = exact::catalan(n);
        if total != catalan {
            failures.push(mismatch(n, format!("total {catalan}"), format!("total {total}")));
        }
        let d = BigUint::from(n + 1).count_ones() - 1;
        let minimal: BTreeMap<u64, u64> = census.by_omega.iter().take(1).map(|(&k, &v)| (k, v)).collect();
        let expected_min = BTreeMap::from([(d, exact::double_fact(d).to_u64().expect("small"))]);
        if minimal != expected_min {
            failures.push(mismatch(n, format!("minimal {expected_min:?}"), format!("minimal {minimal:?}")));
        }
        let fixed = census.orbits.iter().filter(|o| o.size == Natural::from(1u32)).count();
        let expected_fixed = usize::from((n + 1).is_power_of_two());
        if fixed != expected_fixed {
            failures.push(mismatch(n, format!("{expected_fixed} fixed points"), format!("{fixed} fixed points")));
        }
    }
    Ok(Report::new("orbit_census", (1, n_max), failures, started))
}

/// Every registered theorem check at `n_max`, then the identities, block
/// structure and orbit census at their default sizes.
pub fn check_all(n_max: u64, workers: usize) -> Result<Vec<Report>> {
    let mut reports = Vec::new();
    for id in THEOREM_CHECKS {
        reports.push(check_theorem(id, n_max, workers)?);
    }
    reports.extend(check_identities(IdentityBounds::default()));
    reports.push(check_blocks(3, 12, 50_000)?);
    reports.push(check_blocks(5, 4, 50_000)?);
    reports.push(check_blocks(7, 4, 50_000)?);
    reports.push(check_blocks(2, 12, 100_000)?);
    reports.push(check_orbits(11)?);
    Ok(reports)
}
