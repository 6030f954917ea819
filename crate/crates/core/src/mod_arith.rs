//! Periodicity modulo `n` of partial quotients, convergents and leapers.
//!
//! Residues are kept in `[0, n)`; a pair written `(1, -1)` in the usual
//! notation is stored as `(1, n - 1)`.
//!
//! For `theta = e^(1/s)` the leapers `L_j = P_{3j}` obey
//! `L_{-1} = (1, -1)`, `L_0 = (1, 1)`, `L_{j+1} = A_j L_j + L_{j-1}` with
//! `A_j = (2j + 1) * 2s`. For odd `n` with `K = (n - 1)/2` the sequence
//! modulo `n` satisfies `L_{K+j} = L_{K-j}` and `L_{n+j} = (P_j, -Q_j)`.
//! Neither relation holds for even `n` in general: the centre coefficient
//! `A_K = (2K + 1) * 2s` vanishes modulo `n` only when `n` is odd. For even
//! `n` the detected period divides `n`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cf_engine::{CycleEntry, HurwitzianDescriptor};
use crate::error::{Error, Result};

/// A pair of residues modulo some `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModPair {
    pub a: u64,
    pub b: u64,
}

impl ModPair {
    pub fn new(a: u64, b: u64) -> Self {
        Self { a, b }
    }

    /// Reduces an integer pair into `[0, n)`.
    pub fn from_ints(a: i64, b: i64, n: u64) -> Self {
        Self {
            a: reduce_i64(a, n),
            b: reduce_i64(b, n),
        }
    }

    pub fn from_bigints(a: &BigInt, b: &BigInt, n: u64) -> Self {
        let nn = BigInt::from(n);
        let r = |x: &BigInt| x.mod_floor(&nn).to_u64().expect("residue fits");
        Self { a: r(a), b: r(b) }
    }

    pub fn scale(self, g: u64, n: u64) -> Self {
        Self {
            a: mul_mod(self.a, g, n),
            b: mul_mod(self.b, g, n),
        }
    }

    /// `(a, -b)`.
    pub fn star(self, n: u64) -> Self {
        Self {
            a: self.a,
            b: neg_mod(self.b, n),
        }
    }

    pub fn swap(self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    pub fn neg(self, n: u64) -> Self {
        Self {
            a: neg_mod(self.a, n),
            b: neg_mod(self.b, n),
        }
    }

    pub fn reduce(self, n: u64) -> Self {
        Self {
            a: self.a % n,
            b: self.b % n,
        }
    }
}

impl fmt::Display for ModPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Eventually periodic sequence summary.
///
/// The sequence starts at `start_index`; `prefix` holds the
/// `preperiod_len` terms before the period and `entries` one full period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodInfo<T> {
    pub modulus: u64,
    pub start_index: i64,
    pub preperiod_len: usize,
    pub period_len: usize,
    pub prefix: Vec<T>,
    pub entries: Vec<T>,
    pub completely_periodic: bool,
}

impl<T: Clone> PeriodInfo<T> {
    /// Term at sequence index `i`.
    pub fn at(&self, i: i64) -> Option<&T> {
        let off = i.checked_sub(self.start_index)?;
        if off < 0 {
            return None;
        }
        let off = off as usize;
        if off < self.preperiod_len {
            return self.prefix.get(off);
        }
        self.entries.get((off - self.preperiod_len) % self.period_len)
    }

    /// Index of the first periodic term.
    pub fn periodic_start(&self) -> i64 {
        self.start_index + self.preperiod_len as i64
    }
}

/// Summarises `seq[0..]` given that `seq[cycle_start..cycle_start + period]`
/// is a (not necessarily minimal) period that repeats forever. `seq` must hold
/// at least `cycle_start + period` terms.
fn summarise<T: Clone + PartialEq>(
    seq: &[T],
    start_index: i64,
    cycle_start: usize,
    period: usize,
    modulus: u64,
) -> PeriodInfo<T> {
    let window = &seq[cycle_start..cycle_start + period];
    let minimal = divisors(period as u64)
        .into_iter()
        .map(|d| d as usize)
        .find(|&t| (0..period).all(|x| window[x] == window[(x + t) % period]))
        .expect("period itself qualifies");
    let mut start = cycle_start;
    while start > 0 && seq[start - 1] == seq[start - 1 + minimal] {
        start -= 1;
    }
    PeriodInfo {
        modulus,
        start_index,
        preperiod_len: start,
        period_len: minimal,
        prefix: seq[..start].to_vec(),
        entries: seq[start..start + minimal].to_vec(),
        completely_periodic: start == 0,
    }
}

/// Period of `b_i mod n` for `i >= 1`.
pub fn quotient_mod_period(d: &HurwitzianDescriptor, n: u64) -> Result<PeriodInfo<u64>> {
    quotient_mod_period_with_budget(d, n, None)
}

/// Default cap on quotient evaluations: `n * maxdeg! ... ` scaled by the cycle.
fn default_quotient_budget(d: &HurwitzianDescriptor, n: u64) -> u64 {
    let (deg, den) = progression_shape(d);
    let fact: u64 = (1..=deg as u64 + 1).product();
    (d.cycle_len() as u64)
        .saturating_mul(n)
        .saturating_mul(fact)
        .saturating_mul(den)
        .saturating_add(d.preperiod().len() as u64)
}

/// Highest progression degree and lcm of all coefficient denominators.
fn progression_shape(d: &HurwitzianDescriptor) -> (usize, u64) {
    let mut deg = 0;
    let mut den = BigInt::one();
    for e in d.cycle() {
        if let CycleEntry::Progression(p) = e {
            deg = deg.max(p.degree());
            den = den.lcm(&p.denominator_lcm());
        }
    }
    (deg, den.to_u64().unwrap_or(u64::MAX))
}

pub fn quotient_mod_period_with_budget(
    d: &HurwitzianDescriptor,
    n: u64,
    budget: Option<u64>,
) -> Result<PeriodInfo<u64>> {
    check_modulus(n)?;
    let budget = budget.unwrap_or_else(|| default_quotient_budget(d, n));
    let (_, den) = progression_shape(d);
    // f(j + n*den) = f(j) (mod n) for every integer-valued slot, so n*den
    // blocks always form a period of the cycle part.
    let blocks = if d.has_progression() {
        n.checked_mul(den)
    } else {
        Some(1)
    };
    let window = blocks
        .and_then(|b| b.checked_mul(d.cycle_len() as u64))
        .filter(|&w| w.saturating_add(d.preperiod().len() as u64) <= budget)
        .ok_or(Error::BudgetExceeded {
            what: "quotient period",
            budget,
        })? as usize;
    let pre = d.preperiod().len();
    let nn = BigInt::from(n);
    let seq: Vec<u64> = (1..=pre + window)
        .map(|i| d.quotient(i).mod_floor(&nn).to_u64().expect("residue"))
        .collect();
    Ok(summarise(&seq, 1, pre, window, n))
}

/// Period of `P_i mod n` for `i >= 0`.
pub fn convergent_mod_period(d: &HurwitzianDescriptor, n: u64) -> Result<PeriodInfo<ModPair>> {
    convergent_mod_period_with_budget(d, n, None)
}

pub fn convergent_mod_period_with_budget(
    d: &HurwitzianDescriptor,
    n: u64,
    budget: Option<u64>,
) -> Result<PeriodInfo<ModPair>> {
    let quot = quotient_mod_period(d, n)?;
    let seq = convergent_residues_until_repeat(d, n, &quot, budget)?;
    let (seq, cycle_start, period) = seq;
    Ok(summarise(&seq, 0, cycle_start, period, n))
}

/// Runs the convergent recurrence modulo `n` until the state
/// (quotient phase, `P_{i-1}`, `P_i`) repeats. Returns the residues
/// `P_0, P_1, ...` together with the first repeated index and the distance
/// to its repetition.
fn convergent_residues_until_repeat(
    d: &HurwitzianDescriptor,
    n: u64,
    quot: &PeriodInfo<u64>,
    budget: Option<u64>,
) -> Result<(Vec<ModPair>, usize, usize)> {
    let tq = quot.period_len as u64;
    let budget = budget.unwrap_or_else(|| 8u64.saturating_mul(n).saturating_mul(n).saturating_mul(tq));
    // b_{i+1} is periodic once i + 1 >= periodic_start.
    let i0 = (quot.periodic_start() - 1).max(0) as usize;
    let b0 = ModPair::from_bigints(d.b0(), &BigInt::one(), n).a;
    let quotient = |i: usize| -> u64 {
        if i == 0 {
            b0
        } else {
            *quot.at(i as i64).expect("quotient index >= 1")
        }
    };
    let mut seq = Vec::new();
    let (mut prev, mut cur) = (ModPair::new(0, 1 % n), ModPair::new(1 % n, 0));
    let mut seen: HashMap<(u64, ModPair, ModPair), usize> = HashMap::new();
    let mut i = 0usize;
    loop {
        let b = quotient(i);
        let next = ModPair::new(
            (mul_mod(b, cur.a, n) + prev.a) % n,
            (mul_mod(b, cur.b, n) + prev.b) % n,
        );
        prev = cur;
        cur = next;
        seq.push(cur);
        // state at index i: (phase of b_{i+1}, P_{i-1}, P_i)
        if i >= i0 {
            let phase = ((i - i0) as u64) % tq;
            if let Some(&first) = seen.get(&(phase, prev, cur)) {
                seq.pop();
                return Ok((seq, first, i - first));
            }
            if seen.len() as u64 >= budget {
                return Err(Error::BudgetExceeded {
                    what: "convergent period",
                    budget,
                });
            }
            seen.insert((phase, prev, cur), i);
        }
        i += 1;
    }
}

/// `P_0 mod n, ..., P_{count-1} mod n`.
pub fn convergent_residues(d: &HurwitzianDescriptor, n: u64, count: usize) -> Vec<ModPair> {
    let nn = BigInt::from(n);
    let (mut prev, mut cur) = (ModPair::new(0, 1 % n), ModPair::new(1 % n, 0));
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let b = d.quotient(i).mod_floor(&nn).to_u64().expect("residue");
        let next = ModPair::new(
            (mul_mod(b, cur.a, n) + prev.a) % n,
            (mul_mod(b, cur.b, n) + prev.b) % n,
        );
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Leaper recurrence of `e^(1/s)` reduced modulo `n`.
#[derive(Clone, Debug)]
pub struct LeaperState {
    s: u64,
    n: u64,
    /// `k = 2s mod n`
    k: u64,
    j: i64,
    prev: ModPair,
    cur: ModPair,
    multiplications: u64,
}

impl LeaperState {
    /// State at `j = 0`: `(L_{-1}, L_0) = ((1, -1), (1, 1))`.
    pub fn new(s: u64, n: u64) -> Self {
        Self {
            s,
            n,
            k: mul_mod(2, s % n, n),
            j: 0,
            prev: ModPair::from_ints(1, -1, n),
            cur: ModPair::from_ints(1, 1, n),
            multiplications: 0,
        }
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// `K = floor(n/2)`.
    pub fn half(&self) -> u64 {
        self.n / 2
    }

    pub fn index(&self) -> i64 {
        self.j
    }

    pub fn current(&self) -> ModPair {
        self.cur
    }

    pub fn previous(&self) -> ModPair {
        self.prev
    }

    /// Recurrence applications performed so far.
    pub fn multiplications(&self) -> u64 {
        self.multiplications
    }

    /// `A_j mod n`.
    pub fn coefficient(&self, j: i64) -> u64 {
        let odd = reduce_i64(2 * j + 1, self.n);
        mul_mod(odd, self.k, self.n)
    }

    /// Advances to `L_{j+1} = A_j L_j + L_{j-1}`.
    pub fn step(&mut self) -> ModPair {
        let n = self.n;
        let a = self.coefficient(self.j);
        let next = ModPair::new(
            (mul_mod(a, self.cur.a, n) + self.prev.a) % n,
            (mul_mod(a, self.cur.b, n) + self.prev.b) % n,
        );
        self.prev = self.cur;
        self.cur = next;
        self.j += 1;
        self.multiplications += 1;
        next
    }
}

/// `L_j mod n` for `j >= -1`.
pub fn leaper_mod(s: u64, n: u64, j: i64) -> Result<ModPair> {
    check_modulus(n)?;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be >= 1".into()));
    }
    if j < -1 {
        return Err(Error::InvalidParameter(format!("leaper index {j} < -1")));
    }
    let mut st = LeaperState::new(s, n);
    if j == -1 {
        return Ok(st.previous());
    }
    while st.index() < j {
        st.step();
    }
    Ok(st.current())
}

/// Leapers `L_0, ..., L_{count-1}` modulo `n`.
pub fn leaper_sequence(s: u64, n: u64, count: usize) -> Vec<ModPair> {
    let mut st = LeaperState::new(s, n);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(st.current());
        st.step();
    }
    out
}

/// Exact leapers `(P_j, Q_j)` with no reduction.
pub fn leapers_exact(s: u64, count: usize) -> Vec<(BigInt, BigInt)> {
    let k = BigInt::from(2 * s);
    let mut prev = (BigInt::one(), -BigInt::one());
    let mut cur = (BigInt::one(), BigInt::one());
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        out.push(cur.clone());
        let a = BigInt::from(2 * j as u64 + 1) * &k;
        let next = (&a * &cur.0 + &prev.0, &a * &cur.1 + &prev.1);
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// Minimal period of the leapers of `e^(1/s)` modulo `n`, found by direct
/// detection on the state `(j mod n, L_{j-1}, L_j)`.
pub fn leaper_period(s: u64, n: u64) -> Result<PeriodInfo<ModPair>> {
    leaper_period_with_budget(s, n, None)
}

pub fn leaper_period_with_budget(s: u64, n: u64, budget: Option<u64>) -> Result<PeriodInfo<ModPair>> {
    check_modulus(n)?;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be >= 1".into()));
    }
    let budget = budget.unwrap_or_else(|| n.saturating_mul(n).saturating_mul(n).max(64));
    let mut st = LeaperState::new(s, n);
    let init = (st.previous(), st.current());
    let mut seq = vec![st.current()];
    // The recurrence is invertible and A_j has period n in j, so the orbit of
    // the initial state closes after a multiple of n steps.
    loop {
        st.step();
        if st.multiplications() > budget {
            return Err(Error::BudgetExceeded {
                what: "leaper period",
                budget,
            });
        }
        if st.index() as u64 % n == 0 && (st.previous(), st.current()) == init {
            break;
        }
        seq.push(st.current());
    }
    let full = seq.len();
    seq.push(init.1);
    Ok(summarise(&seq, 0, 0, full, n))
}

/// Outcome of checking the two reflection relations over one full period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeaperSymmetry {
    pub s: u64,
    pub n: u64,
    pub period_len: usize,
    /// First `j` in `0..=K` with `L_{K+j} != L_{K-j}`.
    pub centre_mismatch: Option<usize>,
    /// First `j` in one period with `L_{n+j} != (P_j, -Q_j)`.
    pub star_mismatch: Option<usize>,
}

impl LeaperSymmetry {
    pub fn holds(&self) -> bool {
        self.centre_mismatch.is_none() && self.star_mismatch.is_none()
    }
}

pub fn leaper_symmetry(s: u64, n: u64) -> Result<LeaperSymmetry> {
    let period = leaper_period(s, n)?;
    let t = period.period_len;
    let k = (n / 2) as usize;
    let nu = n as usize;
    let seq = leaper_sequence(s, n, nu + t.max(2 * k + 1) + 1);
    let centre_mismatch = (0..=k).find(|&j| seq[k + j] != seq[k - j]);
    let star_mismatch = (0..t).find(|&j| seq[nu + j] != seq[j].star(n));
    Ok(LeaperSymmetry {
        s,
        n,
        period_len: t,
        centre_mismatch,
        star_mismatch,
    })
}

/// `(-1)^j (Q_j, P_j) mod n`, which is the `j`-th leaper of `e^(1/(n-s))`.
pub fn leaper_reflect(s: u64, n: u64, j: i64) -> Result<ModPair> {
    if s == 0 || s >= n {
        return Err(Error::InvalidParameter(format!(
            "reflection needs 1 <= s < n (s = {s}, n = {n})"
        )));
    }
    let l = leaper_mod(s, n, j)?.swap();
    Ok(if j.rem_euclid(2) == 0 { l } else { l.neg(n) })
}

/// An even leaper index proving `Q_index = 0 (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeaperWitness {
    pub index: u64,
    pub modulus: u64,
}

/// Combines even witnesses `j_i = 2 r_i` for coprime moduli into `2r` with
/// `r = r_i (mod n_i)`.
pub fn crt_combine(w1: LeaperWitness, w2: LeaperWitness) -> Result<LeaperWitness> {
    if gcd(w1.modulus, w2.modulus) != 1 {
        return Err(Error::NonCoprimeModuli(w1.modulus, w2.modulus));
    }
    if w1.index % 2 != 0 || w2.index % 2 != 0 {
        return Err(Error::InvalidParameter("witness indices must be even".into()));
    }
    let (r, m) = crt_pair(w1.index / 2, w1.modulus, w2.index / 2, w2.modulus)
        .expect("coprime moduli always combine");
    Ok(LeaperWitness {
        index: 2 * r,
        modulus: m,
    })
}

/// Solves `x = a1 (mod m1)`, `x = a2 (mod m2)`; `None` if incompatible.
/// Returns the least non-negative solution and `lcm(m1, m2)`.
pub fn crt_pair(a1: u64, m1: u64, a2: u64, m2: u64) -> Option<(u64, u64)> {
    let (g, p, _) = ext_gcd(m1 as i128, m2 as i128);
    let (a1, a2) = (a1 as i128 % m1 as i128, a2 as i128 % m2 as i128);
    if (a2 - a1) % g != 0 {
        return None;
    }
    let l = m1 as i128 / g * m2 as i128;
    let step = ((a2 - a1) / g).rem_euclid(m2 as i128 / g) * p.rem_euclid(m2 as i128 / g)
        % (m2 as i128 / g);
    let x = (a1 + m1 as i128 * step).rem_euclid(l);
    Some((x as u64, l as u64))
}

/// Even indices `j` in one period with `Q_j = 0 (mod n)`.
pub fn zero_denominator_indices(s: u64, n: u64) -> Result<Vec<u64>> {
    let period = leaper_period(s, n)?;
    // Scan 2n terms so that both parities appear even when the period is odd.
    let span = (2 * n as usize).max(period.period_len);
    Ok(leaper_sequence(s, n, span)
        .into_iter()
        .enumerate()
        .filter(|(j, l)| j % 2 == 0 && l.b == 0)
        .map(|(j, _)| j as u64)
        .collect())
}

fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("modulus must be >= 2 (got {n})")));
    }
    if n > u32::MAX as u64 {
        return Err(Error::InvalidParameter(format!("modulus {n} too large")));
    }
    Ok(())
}

pub fn reduce_i64(x: i64, n: u64) -> u64 {
    (x as i128).rem_euclid(n as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn neg_mod(a: u64, n: u64) -> u64 {
    (n - a % n) % n
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd((a % n) as i128, n as i128);
    (g == 1).then(|| x.rem_euclid(n as i128) as u64)
}

/// Units modulo `n` in increasing order.
pub fn units(n: u64) -> impl Iterator<Item = u64> {
    (1..n).filter(move |&g| gcd(g, n) == 1)
}

/// Prime-power factorisation `[(p, e, p^e)]` by trial division.
pub fn prime_powers(mut n: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                e += 1;
                q *= p;
            }
            out.push((p, e, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1, n));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Minimal period of a purely periodic window (compares all divisor lengths).
pub fn minimal_period<T: PartialEq>(window: &[T]) -> usize {
    let len = window.len() as u64;
    divisors(len)
        .into_iter()
        .map(|d| d as usize)
        .find(|&t| (0..window.len()).all(|x| window[x] == window[(x + t) % window.len()]))
        .unwrap_or(window.len())
}

/// Keyed view of a periodic table, used by callers that need
/// `residue -> first index` lookups.
pub fn first_occurrences<T: Hash + Eq + Copy>(entries: &[T]) -> HashMap<T, usize> {
    let mut out = HashMap::new();
    for (i, &e) in entries.iter().enumerate() {
        out.entry(e).or_insert(i);
    }
    out
}
