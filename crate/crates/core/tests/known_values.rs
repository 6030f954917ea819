//! Published constants checked through the public API, with independent
//! references computed in test code where the value is derived.

use hurwitz_core::approx::{
    exp_descriptor, fast_is_zero_exp, is_zero, reduce, special_zero_families, value,
    ApproxResult, ConvergentAnalysis,
};
use hurwitz_core::cf_engine::{builtin_descriptor, eval_interval, mu_limit, BuiltinKind};
use hurwitz_core::mod_arith::{gcd, quotient_mod_period};
use hurwitz_core::oracle::{lambda_s, liminf_scan};
use hurwitz_core::rational::{ratio, ExtRational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `e^x` for rational `x` by its Taylor series, with a tail bound.
fn exp_series(x: &BigRational, terms: u32) -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 1..=terms {
        sum += &term;
        term = term * x / BigInt::from(k);
    }
    sum
}

#[test]
fn builtins_evaluate_to_the_exponentials() {
    let tol = ratio(1, 1_000_000_000_000);
    for s in 2i64..10 {
        let d = exp_descriptor(s as u64).unwrap();
        let reference = exp_series(&ratio(1, s), 60);
        let iv = eval_interval(&d, 80);
        assert!((iv.midpoint() - &reference).abs() < tol, "s={s}");
    }
    for k in [1i64, 3, 5, 7, 9] {
        let d = builtin_descriptor(BuiltinKind::Exp2Over(k as u64)).unwrap();
        let reference = exp_series(&ratio(2, k), 80);
        let iv = eval_interval(&d, 80);
        assert!((iv.midpoint() - &reference).abs() < tol, "k={k}");
    }
}

#[test]
fn eighth_for_halves() {
    for s in 2..=20 {
        let d = exp_descriptor(s).unwrap();
        for (r, m) in [(0, 1), (1, 0)] {
            let v = value(&d, &reduce(r, m, 2).unwrap()).unwrap();
            assert_eq!(v.exact_n2l(), Some(ratio(1, 2)), "s={s} r={r}");
        }
    }
}

#[test]
fn mu_limits_of_exp_inv_are_two() {
    for s in 2..=12 {
        let d = exp_descriptor(s).unwrap();
        assert_eq!(mu_limit(&d, 0).unwrap(), ExtRational::Finite(ratio(2, 1)));
        assert_eq!(mu_limit(&d, 1).unwrap(), ExtRational::Finite(ratio(2, 1)));
        assert_eq!(mu_limit(&d, 2).unwrap(), ExtRational::Infinite);
    }
}

#[test]
fn quotient_periods_mod_k() {
    for s in 2..15u64 {
        let d = exp_descriptor(s).unwrap();
        let info = quotient_mod_period(&d, 2 * s).unwrap();
        // read from b_0 the period is 1, s-1, 1
        let from_zero: Vec<u64> = std::iter::once(1).chain((1..=5).map(|i| *info.at(i).unwrap())).collect();
        assert_eq!(from_zero, vec![1, s - 1, 1, 1, s - 1, 1]);
    }
}

#[test]
fn gcd_rule_and_dichotomy() {
    for k in 2..=24u64 {
        let d = builtin_descriptor(BuiltinKind::Exp2Over(k)).unwrap();
        for n in 2..=24u64 {
            let a = ConvergentAnalysis::new(&d, n).unwrap();
            for t in [reduce(0, 1, n as i64).unwrap(), reduce(n as i64 - 1, 0, n as i64).unwrap()] {
                let v = a.value(&t).unwrap();
                let x = v.exact_n2l().unwrap_or_else(|| panic!("k={k} n={n} {v:?}"));
                assert!(x.is_zero() || x == ratio(1, 2), "k={k} n={n}");
                if gcd(n, k) != 1 {
                    assert_eq!(x, ratio(1, 2), "k={k} n={n}");
                }
            }
        }
    }
}

#[test]
fn table_rows() {
    let rows: &[(u64, &[u64])] = &[
        (23, &[12]),
        (25, &[13, 23]),
        (29, &[15]),
        (43, &[25]),
        (47, &[11, 17, 33, 43]),
        (49, &[1, 22, 46]),
    ];
    for &(n, ss) in rows {
        let t = reduce(0, 1, n as i64).unwrap();
        for &s in ss {
            let d = exp_descriptor(s).unwrap();
            assert!(is_zero(&d, &t).unwrap().is_zero(), "n={n} s={s}");
            assert!(fast_is_zero_exp(s, &t).unwrap().decision.is_zero());
        }
    }
}

#[test]
fn special_zero_n3() {
    let [(kind, t), _] = special_zero_families(3, 1).unwrap();
    assert_eq!(kind, BuiltinKind::Exp2Over(4));
    let d = builtin_descriptor(kind).unwrap();
    assert!(is_zero(&d, &t).unwrap().is_zero());
}

#[test]
fn lambda_at_three_for_e() {
    let e = builtin_descriptor(BuiltinKind::E).unwrap();
    let info = lambda_s(&e, &reduce(0, 1, 2).unwrap(), 3, 1e-15).unwrap();
    let reference = exp_series(&ratio(1, 1), 60) * BigInt::from(3) - ratio(1, 2);
    let frac = &reference - reference.round();
    let value = frac.abs() * BigInt::from(3);
    assert!((info.plain.midpoint() - value).abs() < ratio(1, 1_000_000_000_000));
}

#[test]
fn value_class_gives_inverse_mu() {
    // S_k = q_j / 2 along a value class: n^2 lambda(S_k) = 1/mu_j
    let d = exp_descriptor(3).unwrap();
    let t = reduce(0, 1, 2).unwrap();
    let ApproxResult::ExactValue { class_offsets, .. } = value(&d, &t).unwrap() else {
        panic!("expected an exact value");
    };
    for &j in &class_offsets {
        for k in 0..3u64 {
            let i = j + 6 * k;
            let c = hurwitz_core::cf_engine::convergent(&d, i as i64).unwrap();
            let s = (&c.q / BigInt::from(2)).to_i64().unwrap();
            let n2 = lambda_s(&d, &t, s, 1e-15).unwrap().n2_lambda(2);
            let inv_mu = hurwitz_core::cf_engine::mu(&d, i as usize, 200).recip().unwrap();
            assert!(n2.intersects(&inv_mu) || (n2.midpoint() - inv_mu.midpoint()).abs() < ratio(1, 1_000_000_000));
        }
    }
}

#[test]
fn scan_consistent_with_eighth() {
    let e = builtin_descriptor(BuiltinKind::E).unwrap();
    let rec = liminf_scan(&e, &reduce(0, 1, 2).unwrap(), 1 << 16, 1e-12).unwrap();
    let tail = rec.envelope[10].lo().to_f64().unwrap();
    assert!((0.12..0.13).contains(&tail), "{tail}");
}
