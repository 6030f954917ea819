//! Zero decisions, exact values and bounds for `n^2 L(theta, phi)` with
//! `phi = (r*theta + m)/n` in reduced form.
//!
//! Everything is driven by the convergents modulo `n`. A target is matched
//! by `P_i` with multiplier `g` when `g * P_i = (m, -r) (mod n)`. Matches at
//! leaping subscripts (those followed by a progression quotient) force the
//! constant to vanish; matches with `g = 1` elsewhere determine its value.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cf_engine::{builtin_descriptor, mu_limit, BuiltinKind, CycleEntry, HurwitzianDescriptor};
use crate::error::{Error, Result};
use crate::mod_arith::{
    convergent_mod_period_with_budget, crt_pair, inv_mod, leaper_period, mul_mod, neg_mod,
    prime_powers, units, LeaperState, ModPair,
};
use crate::rational::{ratio_string, ExtRational};

/// `phi = (r*theta + m)/n` with `0 <= r, m < n` and `gcd(r, m, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedTarget {
    pub r: u64,
    pub m: u64,
    pub n: u64,
}

impl ReducedTarget {
    /// The residue pair `(m, -r) mod n` that convergents must hit.
    pub fn congruence_target(&self) -> ModPair {
        ModPair::new(self.m, neg_mod(self.r, self.n))
    }
}

impl fmt::Display for ReducedTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}*theta + {})/{}", self.r, self.m, self.n)
    }
}

/// Divides out `gcd(r, m, n)` and reduces `r, m` into `[0, n)`.
pub fn reduce(r: i64, m: i64, n: i64) -> Result<ReducedTarget> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("denominator must be >= 1 (got {n})")));
    }
    let g = r.gcd(&m).gcd(&n);
    let (rr, mm, nn) = (r / g, m / g, n / g);
    if nn == 1 {
        return Err(Error::TrivialTarget { r, m, n });
    }
    if nn > u32::MAX as i64 {
        return Err(Error::InvalidParameter(format!("denominator {nn} too large")));
    }
    Ok(ReducedTarget {
        r: rr.rem_euclid(nn) as u64,
        m: mm.rem_euclid(nn) as u64,
        n: nn as u64,
    })
}

/// Convergent index and unit with `g * P_index = (m, -r) (mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroWitness {
    pub index: u64,
    pub g: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum ZeroDecision {
    Zero { witness: ZeroWitness },
    Nonzero,
}

impl ZeroDecision {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroDecision::Zero { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ApproxResult {
    Zero {
        witness: ZeroWitness,
    },
    /// `n^2 L = 1/M`.
    ExactValue {
        #[serde(rename = "n2L", with = "ratio_string")]
        n2l: BigRational,
        #[serde(rename = "M")]
        m: ExtRational,
        class_offsets: Vec<u64>,
    },
    /// Bounds on `n^2 L`.
    BoundOnly {
        #[serde(with = "opt_ratio")]
        upper: Option<BigRational>,
        #[serde(with = "opt_ratio")]
        lower: Option<BigRational>,
    },
    Unknown {
        reason: String,
    },
}

impl ApproxResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, ApproxResult::Zero { .. })
    }

    /// Exact `n^2 L` when known (zero included).
    pub fn exact_n2l(&self) -> Option<BigRational> {
        match self {
            ApproxResult::Zero { .. } => Some(BigRational::zero()),
            ApproxResult::ExactValue { n2l, .. } => Some(n2l.clone()),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ApproxResult::Zero { .. } => "zero",
            ApproxResult::ExactValue { .. } => "exact_value",
            ApproxResult::BoundOnly { .. } => "bound_only",
            ApproxResult::Unknown { .. } => "unknown",
        }
    }
}

mod opt_ratio {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&crate::rational::ratio_to_string(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| {
            crate::rational::parse_ratio(&s)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
        })
        .transpose()
    }
}

/// Residue class of convergents in one window of the periodic part.
#[derive(Clone, Debug)]
struct ClassInfo {
    /// Largest `mu` limit among offsets with this residue.
    best: ExtRational,
    /// First offset attaining an infinite limit, if any.
    leaping_offset: Option<u64>,
    offsets: Vec<u64>,
}

/// Convergent classes of one descriptor modulo one `n`, reusable across
/// targets with that denominator.
#[derive(Clone, Debug)]
pub struct ConvergentAnalysis {
    n: u64,
    window_start: u64,
    window_len: u64,
    classes: HashMap<ModPair, ClassInfo>,
    shape_ok: bool,
}

impl ConvergentAnalysis {
    pub fn new(d: &HurwitzianDescriptor, n: u64) -> Result<Self> {
        Self::with_budget(d, n, None)
    }

    pub fn with_budget(d: &HurwitzianDescriptor, n: u64, budget: Option<u64>) -> Result<Self> {
        if !d.has_progression() {
            return Err(Error::NoProgression);
        }
        let conv = convergent_mod_period_with_budget(d, n, budget)?;
        let pre = d.preperiod().len() as u64;
        let r = d.cycle_len() as u64;
        // Leaping status and mu limits follow the cycle slots (period R from
        // the end of the preperiod); residues follow the convergent period.
        let window_start = (conv.preperiod_len as u64).max(pre);
        let window_len = (conv.period_len as u64).lcm(&r);
        let limits: Vec<ExtRational> = (0..d.cycle_len())
            .map(|slot| mu_limit(d, slot))
            .collect::<Result<_>>()?;
        let mut classes: HashMap<ModPair, ClassInfo> = HashMap::new();
        for i in window_start..window_start + window_len {
            let residue = *conv.at(i as i64).expect("inside periodic part");
            let lim = &limits[d.slot_mod(i as i64)];
            let c = classes.entry(residue).or_insert_with(|| ClassInfo {
                best: ExtRational::Finite(BigRational::zero()),
                leaping_offset: None,
                offsets: Vec::new(),
            });
            if lim > &c.best {
                c.best = lim.clone();
            }
            if lim.is_infinite() && c.leaping_offset.is_none() {
                c.leaping_offset = Some(i);
            }
            c.offsets.push(i);
        }
        let shape_ok = d
            .cycle()
            .iter()
            .all(|e| matches!(e, CycleEntry::Progression(_) | CycleEntry::Const(1)));
        Ok(Self {
            n,
            window_start,
            window_len,
            classes,
            shape_ok,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// First index and length of the scanned window.
    pub fn window(&self) -> (u64, u64) {
        (self.window_start, self.window_len)
    }

    fn check(&self, t: &ReducedTarget) -> Result<()> {
        if t.n != self.n {
            return Err(Error::InvalidParameter(format!(
                "target denominator {} does not match analysis modulus {}",
                t.n, self.n
            )));
        }
        Ok(())
    }

    /// Class reached by `P` with `g * P = target`, i.e. `P = g^-1 * target`.
    fn class_for(&self, target: ModPair, g: u64) -> Option<&ClassInfo> {
        let inv = inv_mod(g, self.n)?;
        self.classes.get(&target.scale(inv, self.n))
    }

    pub fn is_zero(&self, t: &ReducedTarget) -> Result<ZeroDecision> {
        self.check(t)?;
        let target = t.congruence_target();
        let best = units(self.n)
            .filter_map(|g| {
                self.class_for(target, g)
                    .and_then(|c| c.leaping_offset)
                    .map(|index| ZeroWitness { index, g })
            })
            .min_by_key(|w| (w.index, w.g));
        Ok(match best {
            Some(witness) => ZeroDecision::Zero { witness },
            None => ZeroDecision::Nonzero,
        })
    }

    /// Smallest `g^2 / limsup mu` over multipliers whose class is hit.
    pub fn coarse_upper_bound(&self, t: &ReducedTarget) -> Result<Option<BigRational>> {
        self.check(t)?;
        let target = t.congruence_target();
        Ok(units(self.n)
            .filter_map(|g| {
                let c = self.class_for(target, g)?;
                let g2 = BigRational::from_integer((g * g).into());
                Some(g2 * c.best.recip())
            })
            .min())
    }

    pub fn value(&self, t: &ReducedTarget) -> Result<ApproxResult> {
        if let ZeroDecision::Zero { witness } = self.is_zero(t)? {
            return Ok(ApproxResult::Zero { witness });
        }
        if !self.shape_ok {
            return Ok(ApproxResult::Unknown {
                reason: "cycle has a constant quotient above 1".into(),
            });
        }
        let target = t.congruence_target();
        match self.classes.get(&target) {
            Some(c) => match &c.best {
                ExtRational::Infinite => Err(Error::Inconsistent(format!(
                    "leaping class for {t} missed by the zero decision"
                ))),
                ExtRational::Finite(m) if m.is_one() => Ok(ApproxResult::Unknown {
                    reason: "M = 1".into(),
                }),
                ExtRational::Finite(m) if m < &BigRational::one() => Err(Error::Inconsistent(
                    format!("mu limit {m} below 1 for {t}"),
                )),
                ExtRational::Finite(m) => Ok(ApproxResult::ExactValue {
                    n2l: m.recip(),
                    m: c.best.clone(),
                    class_offsets: c.offsets.clone(),
                }),
            },
            None => Ok(ApproxResult::BoundOnly {
                upper: self.coarse_upper_bound(t)?,
                lower: Some(BigRational::one()),
            }),
        }
    }
}

/// Zero decision by scanning one period of the convergents modulo `n`.
pub fn is_zero(d: &HurwitzianDescriptor, t: &ReducedTarget) -> Result<ZeroDecision> {
    ConvergentAnalysis::new(d, t.n)?.is_zero(t)
}

pub fn value(d: &HurwitzianDescriptor, t: &ReducedTarget) -> Result<ApproxResult> {
    ConvergentAnalysis::new(d, t.n)?.value(t)
}

pub fn coarse_upper_bound(d: &HurwitzianDescriptor, t: &ReducedTarget) -> Result<Option<BigRational>> {
    ConvergentAnalysis::new(d, t.n)?.coarse_upper_bound(t)
}

/// Work done on one prime-power factor by the fast decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorScan {
    pub modulus: u64,
    pub multiplications: u64,
    /// Leaper-index parities (0 or 1) at which a match exists.
    pub parities: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastDecision {
    pub decision: ZeroDecision,
    /// Leaper index `j` of the witness, when zero.
    pub leaper_index: Option<u64>,
    pub factors: Vec<FactorScan>,
    pub multiplications: u64,
}

/// One matching leaper position for a factor: the residue of `j` modulo
/// `period` and the multiplier modulo the factor.
#[derive(Clone, Copy, Debug)]
struct FactorMatch {
    j: u64,
    period: u64,
    g: u64,
}

/// Multiplier `g` with `g * l = target (mod q)`, if one exists.
fn unit_multiplier(l: ModPair, target: ModPair, q: u64) -> Option<u64> {
    let solve = |x: u64, y: u64, tx: u64, ty: u64| {
        let g = mul_mod(tx, inv_mod(x, q)?, q);
        (inv_mod(g, q).is_some() && mul_mod(g, y, q) == ty).then_some(g)
    };
    if inv_mod(l.a, q).is_some() {
        solve(l.a, l.b, target.a, target.b)
    } else if inv_mod(l.b, q).is_some() {
        solve(l.b, l.a, target.b, target.a)
    } else {
        // both entries share a prime with q, which no unit multiple of a
        // reduced target does
        None
    }
}

/// Odd prime power: `K = (q-1)/2` steps give `L_0..L_K`; the rest of the
/// `2q` period is mirrored or starred.
fn scan_odd_factor(s: u64, q: u64, target: ModPair) -> (FactorScan, [Option<FactorMatch>; 2]) {
    let mut st = LeaperState::new(s, q);
    let k = (q - 1) / 2;
    let mut found: [Option<FactorMatch>; 2] = [None, None];
    for j in 0..=k {
        if j > 0 {
            st.step();
        }
        let l = st.current();
        if let Some(g) = unit_multiplier(l, target, q) {
            let p = (j % 2) as usize;
            found[p].get_or_insert(FactorMatch { j, period: 2 * q, g });
        }
        if let Some(g) = unit_multiplier(l.star(q), target, q) {
            let p = ((j + 1) % 2) as usize;
            found[p].get_or_insert(FactorMatch {
                j: q + j,
                period: 2 * q,
                g,
            });
        }
        if found.iter().all(Option::is_some) {
            break;
        }
    }
    let scan = FactorScan {
        modulus: q,
        multiplications: st.multiplications(),
        parities: parities(&found),
    };
    (scan, found)
}

/// Power of two: scan one detected leaper period.
fn scan_two_factor(s: u64, q: u64, target: ModPair) -> Result<(FactorScan, [Option<FactorMatch>; 2])> {
    let period = leaper_period(s, q)?;
    let t = period.period_len as u64;
    let span = t.lcm(&2);
    let mut found: [Option<FactorMatch>; 2] = [None, None];
    for j in 0..span {
        let l = period.entries[(j % t) as usize];
        if let Some(g) = unit_multiplier(l, target, q) {
            found[(j % 2) as usize].get_or_insert(FactorMatch { j, period: span, g });
        }
    }
    let scan = FactorScan {
        modulus: q,
        multiplications: t,
        parities: parities(&found),
    };
    Ok((scan, found))
}

fn parities(found: &[Option<FactorMatch>; 2]) -> Vec<u8> {
    (0..2u8).filter(|&p| found[p as usize].is_some()).collect()
}

/// Zero decision for `theta = e^(1/s)` (`s = 1` meaning `e`) straight from
/// the leaper recurrence, one prime-power factor of `n` at a time.
pub fn fast_is_zero_exp(s: u64, t: &ReducedTarget) -> Result<FastDecision> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be >= 1".into()));
    }
    let target = t.congruence_target();
    let mut factors = Vec::new();
    let mut matches = Vec::new();
    for (p, _, q) in prime_powers(t.n) {
        let tq = target.reduce(q);
        let (scan, found) = if p == 2 {
            scan_two_factor(s, q, tq)?
        } else {
            scan_odd_factor(s, q, tq)
        };
        factors.push((scan, q));
        matches.push(found);
    }
    let multiplications = factors.iter().map(|(f, _)| f.multiplications).sum();
    let combined = (0..2).find_map(|parity| {
        let picks: Option<Vec<FactorMatch>> = matches.iter().map(|f| f[parity]).collect();
        let picks = picks?;
        let (mut j, mut jm) = (parity as u64, 2u64);
        let (mut g, mut gm) = (0u64, 1u64);
        for (pick, (_, q)) in picks.iter().zip(&factors) {
            (j, jm) = crt_pair(j, jm, pick.j, pick.period).expect("parities agree");
            (g, gm) = crt_pair(g, gm, pick.g, *q).expect("coprime factors");
        }
        Some((j, jm, g))
    });
    let factors: Vec<FactorScan> = factors.into_iter().map(|(f, _)| f).collect();
    Ok(match combined {
        Some((j, jm, g)) => {
            // for e the leaper L_j is P_{3j-2}, and L_0 is not a convergent
            let index = if s == 1 {
                let j = if j == 0 { jm } else { j };
                3 * j - 2
            } else {
                3 * j
            };
            FastDecision {
                decision: ZeroDecision::Zero {
                    witness: ZeroWitness { index, g },
                },
                leaper_index: Some(j),
                factors,
                multiplications,
            }
        }
        None => FastDecision {
            decision: ZeroDecision::Nonzero,
            leaper_index: None,
            factors,
            multiplications,
        },
    })
}

/// Descriptor used for `e^(1/s)`, with `s = 1` giving `e`.
pub fn exp_descriptor(s: u64) -> Result<HurwitzianDescriptor> {
    match s {
        0 => Err(Error::InvalidParameter("s must be >= 1".into())),
        1 => builtin_descriptor(BuiltinKind::E),
        _ => builtin_descriptor(BuiltinKind::ExpInv(s)),
    }
}

/// Reduced forms of `g * phi` for `g = 1, ..., n-1`.
pub fn closure_targets(t: &ReducedTarget) -> Vec<ReducedTarget> {
    (1..t.n)
        .map(|g| {
            reduce((g * t.r) as i64, (g * t.m) as i64, t.n as i64)
                .expect("g is not a multiple of n")
        })
        .collect()
}

/// For odd `n`: `(e^(2/(n+1)), m/n)` and `(e^(2/(n-1)), -m*theta/n)`, both of
/// which have constant zero.
pub fn special_zero_families(n: u64, m: u64) -> Result<[(BuiltinKind, ReducedTarget); 2]> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!("n must be odd and >= 3 (got {n})")));
    }
    if m % n == 0 {
        return Err(Error::InvalidParameter(format!("m must not be a multiple of n (got {m})")));
    }
    let first = reduce(0, m as i64, n as i64)?;
    let second = reduce(-(m as i64), 0, n as i64)?;
    Ok([
        (BuiltinKind::Exp2Over(n + 1), first),
        (BuiltinKind::Exp2Over(n - 1), second),
    ])
}

/// All reduced targets with denominator `n`.
pub fn reduced_targets(n: u64) -> impl Iterator<Item = ReducedTarget> {
    (0..n).flat_map(move |r| {
        (0..n)
            .filter(move |&m| r.gcd(&m).gcd(&n) == 1)
            .map(move |m| ReducedTarget { r, m, n })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf_engine::convergent;
    use crate::rational::ratio;

    fn t(r: i64, m: i64, n: i64) -> ReducedTarget {
        reduce(r, m, n).unwrap()
    }

    fn check_witness(d: &HurwitzianDescriptor, t: &ReducedTarget, w: &ZeroWitness) {
        let c = convergent(d, w.index as i64).unwrap();
        let p = ModPair::from_bigints(&c.p, &c.q, t.n).scale(w.g, t.n);
        assert_eq!(p, t.congruence_target(), "{t} {w:?}");
        assert!(d.is_unbounded_at(w.index as usize + 1));
    }

    #[test]
    fn reduction() {
        assert_eq!(t(2, 4, 6), ReducedTarget { r: 1, m: 2, n: 3 });
        assert_eq!(t(0, 1, 2), ReducedTarget { r: 0, m: 1, n: 2 });
        assert_eq!(t(-1, 0, 5), ReducedTarget { r: 4, m: 0, n: 5 });
        assert!(matches!(reduce(0, 2, 2), Err(Error::TrivialTarget { .. })));
        assert!(reduce(1, 1, 0).is_err());
    }

    #[test]
    fn halves_of_exp_inv() {
        for s in 2..=20 {
            let d = exp_descriptor(s).unwrap();
            for target in [t(0, 1, 2), t(1, 0, 2)] {
                assert_eq!(is_zero(&d, &target).unwrap(), ZeroDecision::Nonzero);
                let v = value(&d, &target).unwrap();
                assert_eq!(v.exact_n2l(), Some(ratio(1, 2)), "s={s} {target}");
                assert_eq!(coarse_upper_bound(&d, &target).unwrap(), Some(ratio(1, 2)));
            }
            let half = t(1, 1, 2);
            let ZeroDecision::Zero { witness } = is_zero(&d, &half).unwrap() else {
                panic!("(theta+1)/2 should be zero for s={s}");
            };
            check_witness(&d, &half, &witness);
            assert_eq!(coarse_upper_bound(&d, &half).unwrap(), Some(BigRational::zero()));
        }
    }

    #[test]
    fn exp_two_over_odd_half_target_is_zero() {
        for k in 3..20 {
            let d = builtin_descriptor(BuiltinKind::Exp2Over(k)).unwrap();
            let half = t(1, 1, 2);
            let ZeroDecision::Zero { witness } = is_zero(&d, &half).unwrap() else {
                panic!("k={k}");
            };
            check_witness(&d, &half, &witness);
            for c in closure_targets(&half) {
                assert!(is_zero(&d, &c).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn table_entry() {
        let d = exp_descriptor(12).unwrap();
        let target = t(0, 1, 23);
        assert!(is_zero(&d, &target).unwrap().is_zero());
        let fast = fast_is_zero_exp(12, &target).unwrap();
        assert!(fast.decision.is_zero());
        assert!(fast.multiplications < 12);
        if let ZeroDecision::Zero { witness } = fast.decision {
            check_witness(&d, &target, &witness);
        }
    }

    #[test]
    fn gcd_rule_small() {
        for k in 2..=12u64 {
            let d = builtin_descriptor(BuiltinKind::Exp2Over(k)).unwrap();
            for n in 2..=12u64 {
                if n.gcd(&k) == 1 {
                    continue;
                }
                for target in [t(0, 1, n as i64), t(-1, 0, n as i64)] {
                    assert_eq!(value(&d, &target).unwrap().exact_n2l(), Some(ratio(1, 2)));
                }
            }
        }
    }

    #[test]
    fn fast_agrees_with_scan() {
        for s in 1..=6 {
            let d = exp_descriptor(s).unwrap();
            for n in 2..=30 {
                let a = ConvergentAnalysis::new(&d, n).unwrap();
                for target in reduced_targets(n) {
                    let slow = a.is_zero(&target).unwrap();
                    let fast = fast_is_zero_exp(s, &target).unwrap();
                    assert_eq!(slow.is_zero(), fast.decision.is_zero(), "s={s} {target}");
                    if let ZeroDecision::Zero { witness } = fast.decision {
                        check_witness(&d, &target, &witness);
                    }
                    if let ZeroDecision::Zero { witness } = slow {
                        check_witness(&d, &target, &witness);
                    }
                }
            }
        }
    }

    #[test]
    fn fast_counts_stay_below_half() {
        for s in 1..=12 {
            for n in (3..=49u64).step_by(2) {
                let f = fast_is_zero_exp(s, &t(0, 1, n as i64)).unwrap();
                for scan in &f.factors {
                    assert!(2 * scan.multiplications < scan.modulus, "{scan:?}");
                }
            }
        }
    }

    #[test]
    fn closure_examples() {
        let c = closure_targets(&t(0, 1, 4));
        assert_eq!(c[1], ReducedTarget { r: 0, m: 1, n: 2 });
        assert_eq!(closure_targets(&t(1, 0, 5)).len(), 4);
    }

    #[test]
    fn special_families() {
        for n in (3..=31u64).step_by(2) {
            for m in 1..n {
                for (kind, target) in special_zero_families(n, m).unwrap() {
                    let d = builtin_descriptor(kind).unwrap();
                    assert!(is_zero(&d, &target).unwrap().is_zero(), "{kind} {target}");
                }
            }
        }
        assert!(special_zero_families(4, 1).is_err());
        let [(k, _), _] = special_zero_families(23, 1).unwrap();
        assert_eq!(k, BuiltinKind::Exp2Over(24));
    }

    #[test]
    fn value_shape_guard() {
        let d = HurwitzianDescriptor::new(
            1,
            vec![],
            vec![
                CycleEntry::Progression(crate::cf_engine::Polynomial::linear(1, 1)),
                CycleEntry::Const(2),
                CycleEntry::Const(3),
            ],
            1,
        )
        .unwrap();
        for n in 2..8 {
            for target in reduced_targets(n) {
                match value(&d, &target).unwrap() {
                    ApproxResult::Zero { witness } => check_witness(&d, &target, &witness),
                    ApproxResult::Unknown { .. } => {}
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn quadratic_rejected() {
        let d = builtin_descriptor(BuiltinKind::AllOnes).unwrap();
        assert_eq!(is_zero(&d, &t(0, 1, 2)), Err(Error::NoProgression));
    }

    #[test]
    fn result_json() {
        let v = ApproxResult::ExactValue {
            n2l: ratio(1, 2),
            m: ExtRational::Finite(ratio(2, 1)),
            class_offsets: vec![4, 5],
        };
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"kind":"exact_value","n2L":"1/2","M":"2","class_offsets":[4,5]}"#);
        let back: ApproxResult = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
