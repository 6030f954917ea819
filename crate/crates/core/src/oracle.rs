//! Direct numerical checks of `|q| * ||q*theta - phi||`.
//!
//! Every value is a certified enclosure. Scans over many `q` use a 128-bit
//! fixed-point enclosure of `theta`; single evaluations, and any scan sample
//! the fixed-point path cannot certify, use exact rationals with doubling
//! precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::approx::ReducedTarget;
use crate::cf_engine::{convergent, eval_interval, mu, Convergent, HurwitzianDescriptor};
use crate::error::{Error, Result};
use crate::mod_arith::gcd;
use crate::rational::{int, ratio, round_half_up, RationalInterval};

/// Highest precision tried before giving up.
pub const MAX_PRECISION_BITS: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaInfo {
    pub s: i64,
    /// `|S - r/n| * ||S*theta - phi||`
    pub lambda: RationalInterval,
    /// `|S| * ||S*theta - phi||`
    pub plain: RationalInterval,
    /// Nearest integer to `S*theta - phi`.
    #[serde(with = "bigint_string")]
    pub nearest: BigInt,
    pub precision_bits: u32,
}

impl LambdaInfo {
    /// Enclosure of `n^2 * lambda`.
    pub fn n2_lambda(&self, n: u64) -> RationalInterval {
        self.lambda.scale(&int((n * n) as i64))
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn tolerance(tol: f64) -> Result<BigRational> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive (got {tol})")));
    }
    Ok(BigRational::from_f64(tol).expect("finite"))
}

fn check_target(t: &ReducedTarget) -> Result<()> {
    if t.n < 2 || t.r >= t.n || t.m >= t.n || gcd(gcd(t.r, t.m), t.n) != 1 {
        return Err(Error::InvalidParameter(format!("{t} is not in reduced form")));
    }
    Ok(())
}

/// `S*theta - phi = ((S*n - r)*theta - m)/n` over an enclosure of `theta`.
fn offset_interval(theta: &RationalInterval, t: &ReducedTarget, s: i64) -> RationalInterval {
    let big_n = int(s) * int(t.n as i64) - int(t.r as i64);
    theta
        .scale(&big_n)
        .add_scalar(&-int(t.m as i64))
        .scale(&ratio(1, t.n as i64))
}

/// Certified `lambda(S)`, `|S| * ||S*theta - phi||` and the nearest integer.
pub fn lambda_s(d: &HurwitzianDescriptor, t: &ReducedTarget, s: i64, tol: f64) -> Result<LambdaInfo> {
    check_target(t)?;
    if s == 0 {
        return Err(Error::InvalidParameter("S must be nonzero".into()));
    }
    let tol = tolerance(tol)?;
    let weight = (int(s) - ratio(t.r as i64, t.n as i64)).abs();
    let size_bits = 64 - (s.unsigned_abs() | 1).leading_zeros() + 64 - t.n.leading_zeros();
    let mut bits = (64 + 2 * size_bits).min(MAX_PRECISION_BITS);
    loop {
        let theta = eval_interval(d, bits);
        let x = offset_interval(&theta, t, s);
        let r_lo = round_half_up(x.lo());
        let r_hi = round_half_up(x.hi());
        if r_lo == r_hi {
            let r = BigRational::from_integer(r_lo.clone());
            let dist = x.add_scalar(&-r).abs();
            let lambda = dist.scale(&weight);
            let plain = dist.scale(&int(s.abs()));
            if lambda.width() < tol && plain.width() < tol {
                return Ok(LambdaInfo {
                    s,
                    lambda,
                    plain,
                    nearest: r_lo,
                    precision_bits: bits,
                });
            }
        }
        if bits >= MAX_PRECISION_BITS {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(MAX_PRECISION_BITS);
    }
}

/// `theta` enclosed as `[lo, hi] / 2^bits`.
#[derive(Clone, Debug)]
struct FixedTheta {
    bits: u32,
    lo: i128,
    hi: i128,
}

impl FixedTheta {
    fn new(d: &HurwitzianDescriptor, bits: u32) -> Option<Self> {
        let iv = eval_interval(d, bits + 8);
        let scale = BigInt::one() << bits;
        let lo = (iv.lo() * &scale).floor().to_integer().to_i128()?;
        let hi = (iv.hi() * &scale).ceil().to_integer().to_i128()?;
        Some(Self { bits, lo, hi })
    }

    /// Enclosure of `|q| * ||q*theta - phi||` as numerators over
    /// `n * 2^bits`, or `None` on overflow or when wider than `tol_num`.
    fn plain(&self, t: &ReducedTarget, q: i64, tol_num: i128) -> Option<(i128, i128)> {
        let big_n = (q as i128).checked_mul(t.n as i128)? - t.r as i128;
        let (a, b) = (big_n.checked_mul(self.lo)?, big_n.checked_mul(self.hi)?);
        let shift = (t.m as i128).checked_shl(self.bits)?;
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let (a, b) = (a.checked_sub(shift)?, b.checked_sub(shift)?);
        let den = (t.n as i128).checked_shl(self.bits)?;
        let (dlo, dhi) = distance_interval(a, b, den)?;
        let w = q.unsigned_abs() as i128;
        let (lo, hi) = (dlo.checked_mul(w)?, dhi.checked_mul(w)?);
        (hi - lo < tol_num).then_some((lo, hi))
    }

    fn denominator(&self, t: &ReducedTarget) -> BigInt {
        BigInt::from(t.n) << self.bits
    }
}

/// Distance from `[a, b]` to the nearest multiple of `den`, as an interval.
fn distance_interval(a: i128, b: i128, den: i128) -> Option<(i128, i128)> {
    if b - a >= den / 2 {
        return None;
    }
    let k = a.div_euclid(den);
    let (a, b) = (a - k * den, b - k * den);
    let dist = |x: i128| x.rem_euclid(den).min(den - x.rem_euclid(den));
    let lo = if b >= den { 0 } else { dist(a).min(dist(b)) };
    let half = den / 2;
    let hi = if a <= half && half <= b {
        half
    } else {
        dist(a).max(dist(b))
    };
    Some((lo, hi))
}

/// Minimum of `|q| * ||q*theta - phi||` over `2^exponent <= |q| < 2^(exponent+1)`
/// (capped at `Q_max`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowMin {
    pub exponent: u32,
    pub min: RationalInterval,
    pub argmin_q: i64,
    pub samples: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub q_max: u64,
    pub tolerance: f64,
    pub windows: Vec<WindowMin>,
    pub global_min: RationalInterval,
    pub global_argmin_q: i64,
    /// `envelope[w]`: minimum over all windows from `w` on, the estimate of
    /// the liminf from scale `2^w`.
    pub envelope: Vec<RationalInterval>,
    /// `running_min[w]`: minimum over windows `0..=w`.
    pub running_min: Vec<RationalInterval>,
    /// Samples certified by the exact fallback rather than fixed point.
    pub fallback_samples: u64,
}

impl ScanRecord {
    pub fn window(&self, exponent: u32) -> Option<&WindowMin> {
        self.windows.iter().find(|w| w.exponent == exponent)
    }
}

fn interval_min(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    RationalInterval::new(a.lo().min(b.lo()).clone(), a.hi().min(b.hi()).clone())
}

/// Scans every `q` with `0 < |q| <= Q_max`, both signs.
pub fn liminf_scan(d: &HurwitzianDescriptor, t: &ReducedTarget, q_max: u64, tol: f64) -> Result<ScanRecord> {
    check_target(t)?;
    if q_max < 16 {
        return Err(Error::Precondition(format!("Q_max must be >= 16 (got {q_max})")));
    }
    if q_max > i64::MAX as u64 / 4 {
        return Err(Error::InvalidParameter(format!("Q_max {q_max} too large")));
    }
    let tol_q = tolerance(tol)?;
    let theta_size = eval_interval(d, 8).hi().abs().ceil().to_integer();
    let mag_bits = (128 - ((q_max as u128 + 1) * t.n as u128).leading_zeros())
        + (theta_size.bits() as u32)
        + 2;
    let fixed_bits = 125u32.saturating_sub(mag_bits).min(110);
    let fixed = (fixed_bits >= 16)
        .then(|| FixedTheta::new(d, fixed_bits))
        .flatten();
    // tolerance scaled to numerator units
    let tol_num = fixed.as_ref().and_then(|f| {
        (&tol_q * BigRational::from_integer(f.denominator(t)))
            .floor()
            .to_integer()
            .to_i128()
    });

    let top = 63 - q_max.leading_zeros();
    let mut windows = Vec::with_capacity(top as usize + 1);
    let mut fallback_samples = 0u64;
    for w in 0..=top {
        let start = 1u64 << w;
        let end = ((1u64 << (w + 1)) - 1).min(q_max);
        let mut best_fixed: Option<(i128, i128, i64)> = None;
        let mut best_exact: Option<(RationalInterval, i64)> = None;
        let mut samples = 0u64;
        for abs_q in start..=end {
            for q in [abs_q as i64, -(abs_q as i64)] {
                samples += 1;
                let fast = match (&fixed, tol_num) {
                    (Some(f), Some(tn)) => f.plain(t, q, tn),
                    _ => None,
                };
                match fast {
                    Some((lo, hi)) => {
                        let better = best_fixed.is_none_or(|(blo, _, _)| lo < blo);
                        if better {
                            best_fixed = Some((lo, hi.min(best_fixed.map_or(hi, |b| b.1)), q));
                        } else if let Some(b) = best_fixed.as_mut() {
                            b.1 = b.1.min(hi);
                        }
                    }
                    None => {
                        fallback_samples += 1;
                        let info = lambda_s(d, t, q, tol)?;
                        let better = best_exact
                            .as_ref()
                            .is_none_or(|(b, _)| info.plain.lo() < b.lo());
                        if better {
                            let merged = match &best_exact {
                                Some((b, _)) => interval_min(&info.plain, b),
                                None => info.plain.clone(),
                            };
                            best_exact = Some((merged, q));
                        } else if let Some((b, _)) = best_exact.as_mut() {
                            *b = interval_min(b, &info.plain);
                        }
                    }
                }
            }
        }
        let fixed_iv = match (&fixed, best_fixed) {
            (Some(f), Some((lo, hi, q))) => {
                let den = f.denominator(t);
                Some((
                    RationalInterval::new(
                        BigRational::new(BigInt::from(lo), den.clone()),
                        BigRational::new(BigInt::from(hi), den),
                    ),
                    q,
                ))
            }
            _ => None,
        };
        let (min, argmin_q) = match (fixed_iv, best_exact) {
            (Some((a, qa)), Some((b, qb))) => {
                let q = if a.lo() <= b.lo() { qa } else { qb };
                (interval_min(&a, &b), q)
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!("every window has samples"),
        };
        windows.push(WindowMin {
            exponent: w,
            min,
            argmin_q,
            samples,
        });
    }

    let mut envelope: Vec<RationalInterval> = Vec::with_capacity(windows.len());
    for w in windows.iter().rev() {
        let next = match envelope.last() {
            Some(prev) => interval_min(prev, &w.min),
            None => w.min.clone(),
        };
        envelope.push(next);
    }
    envelope.reverse();
    let mut running_min: Vec<RationalInterval> = Vec::with_capacity(windows.len());
    for w in &windows {
        let next = match running_min.last() {
            Some(prev) => interval_min(prev, &w.min),
            None => w.min.clone(),
        };
        running_min.push(next);
    }
    let (global_min, global_argmin_q) = windows
        .iter()
        .min_by(|a, b| a.min.lo().cmp(b.min.lo()))
        .map(|w| (envelope[0].clone(), w.argmin_q))
        .expect("at least one window");
    Ok(ScanRecord {
        q_max,
        tolerance: tol,
        windows,
        global_min,
        global_argmin_q,
        envelope,
        running_min,
        fallback_samples,
    })
}

/// Which alternative of the small-value classification `S` falls under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "alternative", rename_all = "snake_case")]
pub enum Classification {
    /// `(m + R*n, S*n - r) = g * P_i` and `n^2 lambda(S) = g^2 / mu_i`.
    Convergent {
        i: u64,
        g: i64,
        n2_lambda: RationalInterval,
        g2_over_mu: RationalInterval,
        /// The two enclosures overlap.
        consistent: bool,
    },
    /// `(m + R*n, S*n - r) = g * (d*P_i + P_{i-1})` with `d` in
    /// `{1, b_{i+1} - 1}`, and `n^2 lambda(S) >= g^2 (1 - w)`.
    Intermediate {
        i: u64,
        g: i64,
        d: i64,
        w: RationalInterval,
        /// `w <= [0; b_{i+1}]` and the lower bound holds.
        bound_holds: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallValueReport {
    pub s: i64,
    pub lambda: LambdaInfo,
    pub n2_lambda: RationalInterval,
    pub classification: Classification,
}

/// Widths used for the classification checks.
const CLASSIFY_TOL: f64 = 1e-12;
const MATCH_WIDTH: f64 = 1e-9;

/// Locates `(m + R*n, S*n - r)` among multiples of convergents (or of the
/// intermediate fractions) when `0 < n^2 lambda(S) < 1`.
pub fn classify_small(d: &HurwitzianDescriptor, t: &ReducedTarget, s: i64) -> Result<SmallValueReport> {
    let info = lambda_s(d, t, s, CLASSIFY_TOL)?;
    let n2 = info.n2_lambda(t.n);
    if n2.hi() >= &BigRational::one() {
        return Err(Error::Precondition(format!(
            "n^2 lambda({s}) is not certified below 1 (enclosure {n2})"
        )));
    }
    if !n2.lo().is_positive() {
        return Err(Error::Precondition(format!("n^2 lambda({s}) is not certified positive")));
    }
    let big_m = BigInt::from(t.m) + &info.nearest * BigInt::from(t.n);
    let big_n = BigInt::from(s) * BigInt::from(t.n) - BigInt::from(t.r);
    let abs_n = big_n.abs();
    let width = BigRational::from_f64(MATCH_WIDTH).expect("finite");
    let bits = 64 + 2 * abs_n.bits() as u32;

    let convs: Vec<Convergent> = {
        let mut v = vec![convergent(d, -1)?];
        for c in d.convergents() {
            let stop = c.q > abs_n;
            v.push(c);
            if stop {
                break;
            }
        }
        v
    };
    // convs[k] is P_{k-1}
    let multiple = |p: &BigInt, q: &BigInt| -> Option<BigInt> {
        if q.is_zero() {
            return None;
        }
        let (g, rem) = big_n.div_rem(q);
        (rem.is_zero() && &g * p == big_m).then_some(g)
    };

    for (k, c) in convs.iter().enumerate().skip(1) {
        if c.q > abs_n {
            break;
        }
        if let Some(g) = multiple(&c.p, &c.q) {
            let i = (k - 1) as u64;
            let g2 = BigRational::from_integer(&g * &g);
            let mut mu_iv = mu(d, i as usize, bits);
            let mut extra = 0;
            while mu_iv.width() >= width && extra < 8 {
                extra += 1;
                mu_iv = mu(d, i as usize, bits << extra);
            }
            let g2_over_mu = mu_iv.recip().expect("mu > 1").scale(&g2);
            let consistent = g2_over_mu.intersects(&n2);
            return Ok(SmallValueReport {
                s,
                lambda: info.clone(),
                n2_lambda: n2.clone(),
                classification: Classification::Convergent {
                    i,
                    g: g.to_i64().expect("g fits"),
                    n2_lambda: n2.clone(),
                    g2_over_mu,
                    consistent,
                },
            });
        }
    }

    let half = ratio(1, 2);
    for k in 1..convs.len() {
        let i = k - 1;
        let b_next = d.quotient(i + 1);
        if b_next.is_one() {
            continue;
        }
        let (cur, prev) = (&convs[k], &convs[k - 1]);
        let mut ds = vec![BigInt::one()];
        let last = &b_next - BigInt::one();
        if !last.is_one() {
            ds.push(last);
        }
        for dd in ds {
            let p = &dd * &cur.p + &prev.p;
            let q = &dd * &cur.q + &prev.q;
            if q > abs_n {
                continue;
            }
            let Some(g) = multiple(&p, &q) else { continue };
            if n2.hi() < &half {
                return Err(Error::Inconsistent(format!(
                    "n^2 lambda({s}) < 1/2 but the pair is an intermediate fraction"
                )));
            }
            // w = [0; b_{i+1}, b_{i+2}, ...] for d = 1, else q_i / q_{i+1}
            let w = if dd.is_one() {
                let mu_iv = mu(d, i, bits);
                let back = if i == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(prev.q.clone(), cur.q.clone())
                };
                mu_iv.add_scalar(&-back).recip().expect("tail > 1")
            } else {
                let next = convergent(d, i as i64 + 1)?;
                RationalInterval::point(BigRational::new(cur.q.clone(), next.q))
            };
            let cap = BigRational::new(BigInt::one(), b_next.clone());
            let g2 = BigRational::from_integer(&g * &g);
            let bound_holds = w.hi() <= &cap && n2.hi() >= &(&g2 * (BigRational::one() - w.hi()));
            return Ok(SmallValueReport {
                s,
                lambda: info.clone(),
                n2_lambda: n2.clone(),
                classification: Classification::Intermediate {
                    i: i as u64,
                    g: g.to_i64().expect("g fits"),
                    d: dd.to_i64().expect("d fits"),
                    w,
                    bound_holds,
                },
            });
        }
    }
    Err(Error::Inconsistent(format!(
        "no convergent or intermediate fraction matches ({big_m}, {big_n})"
    )))
}
