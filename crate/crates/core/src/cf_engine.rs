//! Symbolic Hurwitzian continued fractions.
//!
//! A [`HurwitzianDescriptor`] denotes
//! `[b0; p_1, ..., p_t, (f_1(j), ..., f_R(j)) for j = start_j, start_j + 1, ...]`
//! where each `f_r` is either a constant or an integer-valued polynomial in `j`.
//! From a descriptor we get exact partial quotients and convergents, rational
//! enclosures of the value and of `mu_i`, and the exact limits of `mu_i`
//! along residue classes of the cycle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, ExtRational, RationalInterval};

/// Polynomial in `j` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Self { coeffs }
    }

    /// `slope * j + intercept`.
    pub fn linear(slope: i64, intercept: i64) -> Self {
        Self::new(vec![int(intercept), int(slope)])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("nonempty")
    }

    pub fn eval(&self, j: i64) -> BigRational {
        let x = int(j);
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Every integer above this bound lies beyond all real roots.
    fn root_bound(&self) -> BigRational {
        let lead = self.leading().abs();
        let max = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        max + BigRational::one()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(k == 0 && first) {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({}/{})", mag.numer(), mag.denom())?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "j")?,
                _ => write!(f, "j^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// One slot of the repeating block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleEntry {
    Const(u64),
    Progression(Polynomial),
}

impl CycleEntry {
    pub fn is_progression(&self) -> bool {
        matches!(self, CycleEntry::Progression(_))
    }

    pub fn value(&self, j: i64) -> BigInt {
        match self {
            CycleEntry::Const(c) => BigInt::from(*c),
            CycleEntry::Progression(p) => p.eval(j).to_integer(),
        }
    }
}

impl fmt::Display for CycleEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleEntry::Const(c) => write!(f, "{c}"),
            CycleEntry::Progression(p) => write!(f, "{p}"),
        }
    }
}

/// Parameterised families with known expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinKind {
    /// The base of the natural logarithm.
    E,
    /// `e^(1/s)`, `s >= 2`.
    ExpInv(u64),
    /// `e^(2/k)`, `k >= 1`.
    Exp2Over(u64),
    /// `tanh(1/s)`, `s >= 1`.
    TanhInv(u64),
    /// The golden ratio `[1; 1, 1, ...]`.
    AllOnes,
}

impl BuiltinKind {
    /// Parses a kind name plus optional parameter, e.g. `("exp_inv", Some(3))`.
    pub fn parse(name: &str, param: Option<u64>) -> Result<Self> {
        let need = |p: Option<u64>| {
            p.ok_or_else(|| Error::InvalidParameter(format!("kind {name} requires a parameter")))
        };
        let kind = match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "e" => BuiltinKind::E,
            "exp_inv" | "expinv" => BuiltinKind::ExpInv(need(param)?),
            "exp_2_over" | "exp2over" | "exp2_over" => BuiltinKind::Exp2Over(need(param)?),
            "tanh_inv" | "tanhinv" => BuiltinKind::TanhInv(need(param)?),
            "all_ones" | "allones" | "golden" => BuiltinKind::AllOnes,
            other => return Err(Error::InvalidParameter(format!("unknown kind {other:?}"))),
        };
        Ok(kind)
    }

    /// `Some(s)` when the kind denotes `e^(1/s)` (with `e` itself as `s = 1`).
    pub fn exp_inv_param(&self) -> Option<u64> {
        match *self {
            BuiltinKind::E => Some(1),
            BuiltinKind::ExpInv(s) => Some(s),
            BuiltinKind::Exp2Over(k) if k % 2 == 0 && k > 0 => Some(k / 2),
            _ => None,
        }
    }
}

impl fmt::Display for BuiltinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinKind::E => write!(f, "e"),
            BuiltinKind::ExpInv(s) => write!(f, "exp_inv {s}"),
            BuiltinKind::Exp2Over(k) => write!(f, "exp_2_over {k}"),
            BuiltinKind::TanhInv(s) => write!(f, "tanh_inv {s}"),
            BuiltinKind::AllOnes => write!(f, "all_ones"),
        }
    }
}

impl FromStr for BuiltinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let name = parts
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty kind".into()))?;
        let param = match parts.next() {
            Some(p) => Some(
                p.parse::<u64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad parameter {p:?}")))?,
            ),
            None => None,
        };
        BuiltinKind::parse(name, param)
    }
}

/// Symbolic continued fraction with a periodic block of constants and
/// arithmetic progressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzianDescriptor {
    b0: BigInt,
    preperiod: Vec<u64>,
    cycle: Vec<CycleEntry>,
    start_j: i64,
}

impl HurwitzianDescriptor {
    pub fn new(
        b0: impl Into<BigInt>,
        preperiod: Vec<u64>,
        cycle: Vec<CycleEntry>,
        start_j: i64,
    ) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidDescriptor("cycle must be nonempty".into()));
        }
        if start_j < 0 {
            return Err(Error::InvalidDescriptor("start_j must be >= 0".into()));
        }
        if let Some(pos) = preperiod.iter().position(|&b| b == 0) {
            return Err(Error::InvalidDescriptor(format!(
                "preperiod quotient at position {} is zero",
                pos + 1
            )));
        }
        for (slot, entry) in cycle.iter().enumerate() {
            match entry {
                CycleEntry::Const(0) => {
                    return Err(Error::InvalidDescriptor(format!(
                        "cycle slot {slot} is the constant 0"
                    )))
                }
                CycleEntry::Const(_) => {}
                CycleEntry::Progression(p) => check_progression(p, start_j)
                    .map_err(|msg| Error::InvalidDescriptor(format!("cycle slot {slot}: {msg}")))?,
            }
        }
        Ok(Self {
            b0: b0.into(),
            preperiod,
            cycle,
            start_j,
        })
    }

    pub fn builtin(kind: BuiltinKind) -> Result<Self> {
        builtin_descriptor(kind)
    }

    pub fn b0(&self) -> &BigInt {
        &self.b0
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn cycle(&self) -> &[CycleEntry] {
        &self.cycle
    }

    pub fn start_j(&self) -> i64 {
        self.start_j
    }

    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    pub fn has_progression(&self) -> bool {
        self.cycle.iter().any(CycleEntry::is_progression)
    }

    /// Order-0 descriptors denote quadratic irrationals.
    pub fn is_quadratic(&self) -> bool {
        !self.has_progression()
    }

    /// Cycle slot holding `b_i`, or `None` for `b_0` and preperiod entries.
    pub fn cycle_slot(&self, i: usize) -> Option<usize> {
        let t = self.preperiod.len();
        (i > t).then(|| (i - t - 1) % self.cycle.len())
    }

    /// Cycle slot of `b_i` extended periodically to every index.
    pub fn slot_mod(&self, i: i64) -> usize {
        let t = self.preperiod.len() as i64;
        (i - t - 1).rem_euclid(self.cycle.len() as i64) as usize
    }

    /// Whether `b_i` comes from a progression slot.
    pub fn is_unbounded_at(&self, i: usize) -> bool {
        self.cycle_slot(i)
            .is_some_and(|slot| self.cycle[slot].is_progression())
    }

    /// `b_i`, exact.
    pub fn quotient(&self, i: usize) -> BigInt {
        if i == 0 {
            return self.b0.clone();
        }
        let t = self.preperiod.len();
        if i <= t {
            return BigInt::from(self.preperiod[i - 1]);
        }
        let idx = i - t - 1;
        let r = self.cycle.len();
        let j = self.start_j + (idx / r) as i64;
        self.cycle[idx % r].value(j)
    }

    /// `b_0, b_1, b_2, ...`
    pub fn quotients(&self) -> impl Iterator<Item = BigInt> + '_ {
        (0..).map(move |i| self.quotient(i))
    }

    /// Convergents with index `0, 1, 2, ...`.
    pub fn convergents(&self) -> Convergents<'_> {
        Convergents {
            desc: self,
            next_index: 0,
            prev: (BigInt::zero(), BigInt::one()),
            cur: (BigInt::one(), BigInt::zero()),
        }
    }
}

impl fmt::Display for HurwitzianDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.b0)?;
        for b in &self.preperiod {
            write!(f, " {b},")?;
        }
        write!(f, " (")?;
        for (k, e) in self.cycle.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")_{{j>={}}}]", self.start_j)
    }
}

fn check_progression(p: &Polynomial, start_j: i64) -> std::result::Result<(), String> {
    if p.degree() == 0 {
        return Err("progression must have degree >= 1".into());
    }
    if !p.leading().is_positive() {
        return Err("progression must have a positive leading coefficient".into());
    }
    // Integer on degree+1 consecutive integers implies integer everywhere.
    for j in start_j..start_j + p.degree() as i64 + 2 {
        if !p.eval(j).is_integer() {
            return Err(format!("{p} is not an integer at j = {j}"));
        }
    }
    let bound = p.root_bound().ceil().to_integer();
    let last = bound.to_i64().unwrap_or(i64::MAX).max(start_j) + 1;
    for j in start_j..=last {
        if !p.eval(j).is_positive() {
            return Err(format!("{p} is not positive at j = {j}"));
        }
    }
    Ok(())
}

/// Descriptor of a built-in family.
pub fn builtin_descriptor(kind: BuiltinKind) -> Result<HurwitzianDescriptor> {
    use CycleEntry::{Const, Progression};
    match kind {
        BuiltinKind::E => HurwitzianDescriptor::new(
            2,
            vec![],
            vec![Const(1), Progression(Polynomial::linear(2, 0)), Const(1)],
            1,
        ),
        BuiltinKind::ExpInv(s) => {
            if s < 2 {
                return Err(Error::InvalidParameter(format!(
                    "exp_inv requires s >= 2 (got {s}); use the e descriptor for s = 1"
                )));
            }
            let s = to_i64(s)?;
            HurwitzianDescriptor::new(
                1,
                vec![],
                vec![
                    Progression(Polynomial::linear(2 * s, -(s + 1))),
                    Const(1),
                    Const(1),
                ],
                1,
            )
        }
        BuiltinKind::Exp2Over(k) => match k {
            0 => Err(Error::InvalidParameter("exp_2_over requires k >= 1".into())),
            1 => HurwitzianDescriptor::new(
                7,
                vec![],
                vec![
                    Progression(Polynomial::linear(3, -1)),
                    Const(1),
                    Const(1),
                    Progression(Polynomial::linear(3, 0)),
                    Progression(Polynomial::linear(12, 6)),
                ],
                1,
            ),
            2 => builtin_descriptor(BuiltinKind::E),
            k if k % 2 == 0 => builtin_descriptor(BuiltinKind::ExpInv(k / 2)),
            k => {
                let kk = to_i64(k)?;
                let s = (kk - 1) / 2;
                HurwitzianDescriptor::new(
                    1,
                    vec![],
                    vec![
                        Progression(Polynomial::linear(3 * kk, s)),
                        Progression(Polynomial::linear(12 * kk, 6 * kk)),
                        Progression(Polynomial::linear(3 * kk, 5 * s + 2)),
                        Const(1),
                        Const(1),
                    ],
                    0,
                )
            }
        },
        BuiltinKind::TanhInv(s) => {
            if s < 1 {
                return Err(Error::InvalidParameter("tanh_inv requires s >= 1".into()));
            }
            let s = to_i64(s)?;
            HurwitzianDescriptor::new(
                0,
                vec![],
                vec![Progression(Polynomial::linear(2 * s, -s))],
                1,
            )
        }
        BuiltinKind::AllOnes => HurwitzianDescriptor::new(1, vec![], vec![Const(1)], 0),
    }
}

fn to_i64(x: u64) -> Result<i64> {
    i64::try_from(x)
        .ok()
        .filter(|&v| v < (1 << 40))
        .ok_or_else(|| Error::InvalidParameter(format!("parameter {x} too large")))
}

/// `P_i = (p_i, q_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub index: i64,
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

/// Iterator over `P_0, P_1, ...`.
pub struct Convergents<'a> {
    desc: &'a HurwitzianDescriptor,
    next_index: usize,
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
}

impl Iterator for Convergents<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let b = self.desc.quotient(self.next_index);
        let p = &b * &self.cur.0 + &self.prev.0;
        let q = &b * &self.cur.1 + &self.prev.1;
        self.prev = std::mem::replace(&mut self.cur, (p.clone(), q.clone()));
        let index = self.next_index as i64;
        self.next_index += 1;
        Some(Convergent { index, p, q })
    }
}

pub fn partial_quotient(d: &HurwitzianDescriptor, i: usize) -> BigInt {
    d.quotient(i)
}

/// Exact `P_i` for `i >= -2`.
pub fn convergent(d: &HurwitzianDescriptor, i: i64) -> Result<Convergent> {
    match i {
        i if i < -2 => Err(Error::InvalidParameter(format!("convergent index {i} < -2"))),
        -2 => Ok(Convergent {
            index: -2,
            p: BigInt::zero(),
            q: BigInt::one(),
        }),
        -1 => Ok(Convergent {
            index: -1,
            p: BigInt::one(),
            q: BigInt::zero(),
        }),
        i => Ok(d
            .convergents()
            .nth(i as usize)
            .expect("convergent iterator is infinite")),
    }
}

/// Value of a finite continued fraction `[a_0; a_1, ..., a_k]`.
pub fn finite_cf(quotients: &[BigInt]) -> BigRational {
    let mut iter = quotients.iter().rev();
    let Some(last) = iter.next() else {
        return BigRational::zero();
    };
    iter.fold(BigRational::from_integer(last.clone()), |acc, a| {
        BigRational::from_integer(a.clone()) + acc.recip()
    })
}

/// Encloses the value of the infinite fraction whose quotients are yielded by
/// `quotients` between two consecutive convergents, deepening until the
/// width drops below `2^-bits`.
fn bracket<I: Iterator<Item = BigInt>>(mut quotients: I, bits: u32) -> RationalInterval {
    let scale = BigInt::one() << bits;
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let a0 = quotients.next().expect("infinite quotient stream");
    let (mut p1, mut q1) = (a0, BigInt::one());
    loop {
        let a = quotients.next().expect("infinite quotient stream");
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        // |p2/q2 - p1/q1| = 1/(q1 q2)
        if &q1 * &q2 > scale {
            return RationalInterval::new(
                BigRational::new(p1, q1),
                BigRational::new(p2, q2),
            );
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
}

/// Rational interval containing `theta` with width below `2^-precision`.
pub fn eval_interval(d: &HurwitzianDescriptor, precision: u32) -> RationalInterval {
    bracket(d.quotients(), precision.max(1))
}

/// Enclosure of `mu_i = [b_{i+1}; b_{i+2}, ...] + [0; b_i, ..., b_1]`.
///
/// The backward part is exact (`q_{i-1}/q_i`); the forward tail is
/// bracketed by consecutive truncations.
pub fn mu(d: &HurwitzianDescriptor, i: usize, precision: u32) -> RationalInterval {
    let back = backward_part(d, i);
    let tail = bracket((i + 1..).map(|k| d.quotient(k)), precision.max(1));
    tail.add_scalar(&back)
}

/// `[0; b_i, ..., b_1] = q_{i-1}/q_i`.
fn backward_part(d: &HurwitzianDescriptor, i: usize) -> BigRational {
    if i == 0 {
        return BigRational::zero();
    }
    let mut it = d.convergents().skip(i - 1);
    let prev = it.next().expect("infinite");
    let cur = it.next().expect("infinite");
    BigRational::new(prev.q, cur.q)
}

/// Exact limit of `mu_i` along indices `i` whose quotient `b_i` sits in cycle
/// slot `slot` (so `b_{i+1}` sits in `slot + 1`).
///
/// Progression entries tend to infinity, which truncates both the forward and
/// the backward fraction just before them.
pub fn mu_limit(d: &HurwitzianDescriptor, slot: usize) -> Result<ExtRational> {
    let r = d.cycle_len();
    if !d.has_progression() {
        return Err(Error::NoProgression);
    }
    if slot >= r {
        return Err(Error::InvalidParameter(format!(
            "cycle offset {slot} out of range 0..{r}"
        )));
    }
    let entry = |k: usize| &d.cycle()[k % r];
    let const_value = |e: &CycleEntry| match e {
        CycleEntry::Const(c) => BigInt::from(*c),
        CycleEntry::Progression(_) => unreachable!("checked by caller"),
    };
    if entry(slot + 1).is_progression() {
        return Ok(ExtRational::Infinite);
    }
    let forward: Vec<BigInt> = (slot + 1..)
        .map(entry)
        .take_while(|e| !e.is_progression())
        .map(const_value)
        .collect();
    let mut backward = vec![BigInt::zero()];
    backward.extend(
        (0..r)
            .map(|back| entry(slot + r - back))
            .take_while(|e| !e.is_progression())
            .map(const_value),
    );
    Ok(ExtRational::Finite(finite_cf(&forward) + finite_cf(&backward)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn q(d: &HurwitzianDescriptor, range: std::ops::Range<usize>) -> Vec<i64> {
        range.map(|i| d.quotient(i).to_i64().unwrap()).collect()
    }

    #[test]
    fn e_expansion() {
        let e = builtin_descriptor(BuiltinKind::E).unwrap();
        assert_eq!(q(&e, 0..9), vec![2, 1, 2, 1, 1, 4, 1, 1, 6]);
    }

    #[test]
    fn exp_inv_expansion() {
        let d = builtin_descriptor(BuiltinKind::ExpInv(2)).unwrap();
        assert_eq!(q(&d, 1..5), vec![1, 1, 1, 5]);
        let d = builtin_descriptor(BuiltinKind::ExpInv(5)).unwrap();
        assert_eq!(q(&d, 0..8), vec![1, 4, 1, 1, 14, 1, 1, 24]);
        match &d.cycle()[0] {
            CycleEntry::Progression(p) => assert_eq!(p.to_string(), "10j-6"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exp_inv_one_rejected() {
        assert!(builtin_descriptor(BuiltinKind::ExpInv(1)).is_err());
        assert!(builtin_descriptor(BuiltinKind::ExpInv(0)).is_err());
        assert!(builtin_descriptor(BuiltinKind::Exp2Over(0)).is_err());
        assert!(builtin_descriptor(BuiltinKind::TanhInv(0)).is_err());
    }

    #[test]
    fn exp_two_over_odd_expansion() {
        let d = builtin_descriptor(BuiltinKind::Exp2Over(3)).unwrap();
        assert_eq!(d.start_j(), 0);
        let expected = [
            CycleEntry::Progression(Polynomial::linear(9, 1)),
            CycleEntry::Progression(Polynomial::linear(36, 18)),
            CycleEntry::Progression(Polynomial::linear(9, 7)),
            CycleEntry::Const(1),
            CycleEntry::Const(1),
        ];
        assert_eq!(d.cycle(), &expected);
        assert_eq!(q(&d, 0..11), vec![1, 1, 18, 7, 1, 1, 10, 54, 16, 1, 1]);
    }

    #[test]
    fn even_k_dispatch() {
        assert_eq!(
            builtin_descriptor(BuiltinKind::Exp2Over(2)).unwrap(),
            builtin_descriptor(BuiltinKind::E).unwrap()
        );
        assert_eq!(
            builtin_descriptor(BuiltinKind::Exp2Over(8)).unwrap(),
            builtin_descriptor(BuiltinKind::ExpInv(4)).unwrap()
        );
        let e2 = builtin_descriptor(BuiltinKind::Exp2Over(1)).unwrap();
        assert_eq!(q(&e2, 0..11), vec![7, 2, 1, 1, 3, 18, 5, 1, 1, 6, 30]);
    }

    #[test]
    fn tanh_expansion() {
        let d = builtin_descriptor(BuiltinKind::TanhInv(1)).unwrap();
        assert_eq!(q(&d, 0..4), vec![0, 1, 3, 5]);
        let d = builtin_descriptor(BuiltinKind::TanhInv(3)).unwrap();
        assert_eq!(q(&d, 1..4), vec![3, 9, 15]);
    }

    #[test]
    fn progression_validation() {
        // (j^2 + j)/2 is integer valued.
        let tri = Polynomial::new(vec![int(0), ratio(1, 2), ratio(1, 2)]);
        assert!(HurwitzianDescriptor::new(1, vec![], vec![CycleEntry::Progression(tri)], 1).is_ok());
        let half = Polynomial::new(vec![int(0), ratio(1, 2)]);
        assert!(HurwitzianDescriptor::new(1, vec![], vec![CycleEntry::Progression(half)], 1).is_err());
        let zero_at_one = Polynomial::linear(2, -2);
        assert!(
            HurwitzianDescriptor::new(1, vec![], vec![CycleEntry::Progression(zero_at_one)], 1)
                .is_err()
        );
        let decreasing = Polynomial::linear(-1, 100);
        assert!(
            HurwitzianDescriptor::new(1, vec![], vec![CycleEntry::Progression(decreasing)], 1)
                .is_err()
        );
        assert!(HurwitzianDescriptor::new(1, vec![], vec![], 1).is_err());
        assert!(HurwitzianDescriptor::new(1, vec![0], vec![CycleEntry::Const(1)], 1).is_err());
        assert!(HurwitzianDescriptor::new(1, vec![], vec![CycleEntry::Const(0)], 1).is_err());
        // Negative dip below the root bound is caught.
        let dip = Polynomial::new(vec![int(6), int(-5), int(1)]); // (j-2)(j-3)
        assert!(HurwitzianDescriptor::new(1, vec![], vec![CycleEntry::Progression(dip)], 1).is_err());
    }

    #[test]
    fn e_convergents() {
        let e = builtin_descriptor(BuiltinKind::E).unwrap();
        let c = convergent(&e, 2).unwrap();
        assert_eq!((c.p, c.q), (BigInt::from(8), BigInt::from(3)));
        let c = convergent(&e, 5).unwrap();
        assert_eq!((c.p, c.q), (BigInt::from(87), BigInt::from(32)));
        let c = convergent(&e, -1).unwrap();
        assert_eq!((c.p, c.q), (BigInt::one(), BigInt::zero()));
        assert!(convergent(&e, -3).is_err());
    }

    #[test]
    fn truncation_matches_direct_evaluation() {
        let e = builtin_descriptor(BuiltinKind::E).unwrap();
        for i in 0..12usize {
            let qs: Vec<BigInt> = (0..=i).map(|k| e.quotient(k)).collect();
            assert_eq!(convergent(&e, i as i64).unwrap().value(), finite_cf(&qs));
        }
    }

    #[test]
    fn mu_limits_exp_inv() {
        let d = builtin_descriptor(BuiltinKind::ExpInv(3)).unwrap();
        assert_eq!(mu_limit(&d, 0).unwrap(), ExtRational::Finite(int(2)));
        assert_eq!(mu_limit(&d, 1).unwrap(), ExtRational::Finite(int(2)));
        assert_eq!(mu_limit(&d, 2).unwrap(), ExtRational::Infinite);
        assert!(mu_limit(&d, 3).is_err());
    }

    #[test]
    fn mu_limits_exp_two_over_odd() {
        let d = builtin_descriptor(BuiltinKind::Exp2Over(3)).unwrap();
        let got: Vec<ExtRational> = (0..5).map(|o| mu_limit(&d, o).unwrap()).collect();
        use ExtRational::{Finite as F, Infinite as I};
        assert_eq!(got, vec![I, I, F(int(2)), F(int(2)), I]);
    }

    #[test]
    fn mu_limit_rejects_quadratic() {
        let d = builtin_descriptor(BuiltinKind::AllOnes).unwrap();
        assert_eq!(mu_limit(&d, 0), Err(Error::NoProgression));
    }

    #[test]
    fn mu_limit_longer_const_runs() {
        // [1; (j+1, 2, 3)]: slot 0 -> forward [2;3], backward 0.
        let d = HurwitzianDescriptor::new(
            1,
            vec![],
            vec![
                CycleEntry::Progression(Polynomial::linear(1, 1)),
                CycleEntry::Const(2),
                CycleEntry::Const(3),
            ],
            1,
        )
        .unwrap();
        assert_eq!(mu_limit(&d, 0).unwrap(), ExtRational::Finite(ratio(7, 3)));
        // slot 1: forward [3], backward [0; 2] = 1/2
        assert_eq!(mu_limit(&d, 1).unwrap(), ExtRational::Finite(ratio(7, 2)));
    }

    #[test]
    fn display_descriptor() {
        let d = builtin_descriptor(BuiltinKind::E).unwrap();
        assert_eq!(d.to_string(), "[2; (1, 2j, 1)_{j>=1}]");
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("exp_inv 3".parse::<BuiltinKind>().unwrap(), BuiltinKind::ExpInv(3));
        assert_eq!("exp2over 3".parse::<BuiltinKind>().unwrap(), BuiltinKind::Exp2Over(3));
        assert_eq!("e".parse::<BuiltinKind>().unwrap(), BuiltinKind::E);
        assert!("exp_inv".parse::<BuiltinKind>().is_err());
        assert!("pi".parse::<BuiltinKind>().is_err());
        assert_eq!(BuiltinKind::Exp2Over(6).exp_inv_param(), Some(3));
        assert_eq!(BuiltinKind::Exp2Over(5).exp_inv_param(), None);
    }
}
