//! Margin arithmetic cross-checked against an independent fixed-point
//! oracle.
//!
//! The oracle computes every logarithm as a scaled BigInt at 40 decimal
//! digits: ln(a/b) by exact power-of-two range reduction to [1,2) and the
//! atanh series with integer-division terms (each term loses at most one
//! ulp, and the series is summed until terms vanish, so the total error
//! stays below ~1e-36). It shares no code with the double-double path:
//! different number representation, different reduction, different
//! series accumulation.

use cyclesys::bounds::{
    catalog, design_count_bound, dd, euler_phi, BoundClaim, BoundsError, CountKind, Dd,
    FormulaId, MARGIN_ERROR_BOUND,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

// ---------------------------------------------------------------- oracle --

const SCALE_DIGITS: u32 = 40;

fn scale() -> BigInt {
    BigInt::from(10u32).pow(SCALE_DIGITS)
}

/// ln(a/b) * 10^40, a, b >= 1.
fn oracle_ln_ratio(a: u64, b: u64) -> BigInt {
    let mut num = BigUint::from(a);
    let mut den = BigUint::from(b);
    // Pull out powers of two until num/den lands in [1, 2).
    let mut e = 0i64;
    while num >= (&den << 1) {
        den <<= 1;
        e += 1;
    }
    while num < den {
        num <<= 1;
        e -= 1;
    }
    // t = (f-1)/(f+1) = p/q, 0 <= t < 1/3.
    let p = &num - &den;
    let q = num + den;
    let ln_f = atanh_scaled(&p, &q) * 2;
    BigInt::from(e) * oracle_ln2() + ln_f
}

/// atanh(p/q) * 10^40 for 0 <= p/q < 1.
fn atanh_scaled(p: &BigUint, q: &BigUint) -> BigInt {
    if p.is_zero() {
        return BigInt::zero();
    }
    let scale = BigUint::from(10u32).pow(SCALE_DIGITS);
    let mut sum = BigUint::zero();
    let mut pj = p.clone();
    let mut qj = q.clone();
    let p2 = p * p;
    let q2 = q * q;
    let mut j = 1u64;
    loop {
        let term = (&scale * &pj) / (&qj * j);
        if term.is_zero() {
            break;
        }
        sum += term;
        pj *= &p2;
        qj *= &q2;
        j += 2;
    }
    BigInt::from(sum)
}

fn oracle_ln2() -> BigInt {
    // ln 2 = 2 atanh(1/3).
    atanh_scaled(&BigUint::from(1u32), &BigUint::from(3u32)) * 2
}

/// An f64 converted exactly (up to one final ulp of the scale) to the
/// fixed-point grid.
fn f64_scaled(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) =
        if exp_bits == 0 { (frac, -1074i64) } else { (frac | (1 << 52), exp_bits - 1075) };
    let mut v = BigInt::from(mantissa) * scale();
    if exp >= 0 {
        v <<= exp as u32;
    } else {
        v /= BigInt::from(1u32) << (-exp) as u32;
    }
    if negative {
        -v
    } else {
        v
    }
}

fn dd_scaled(x: Dd) -> BigInt {
    f64_scaled(x.hi()) + f64_scaled(x.lo())
}

/// |a - b| within `digits` decimal places of the scaled grid.
fn close(a: &BigInt, b: &BigInt, digits: u32) -> bool {
    (a - b).abs() <= BigInt::from(10u32).pow(SCALE_DIGITS - digits)
}

fn local_phi(mut x: u64) -> u64 {
    let mut result = x;
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            while x.is_multiple_of(p) {
                x /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if x > 1 {
        result -= result / x;
    }
    result
}

/// The claim's margin rebuilt from its published shape, term by term, on
/// the oracle grid.
fn oracle_margin(claim: &BoundClaim, n: u32) -> BigInt {
    let n64 = n as u64;
    let ln2 = oracle_ln2();
    let ln24 = oracle_ln_ratio(24, 1);
    let ln6492 = oracle_ln_ratio(6492, 1000);
    let variant = match claim.id {
        FormulaId::C5Mod1General
        | FormulaId::C5Mod1Residue7
        | FormulaId::C5Mod5Residue28
        | FormulaId::C5Mod5General => ln24 * n64,
        _ => &ln2 * n64,
    };
    let dense28_exp = || match n % 28 {
        3 | 24 => (2 * n64 + 1) / 7,
        5 | 26 => (2 * n64 - 3) / 7,
        _ => panic!("not a dense order"),
    };
    let sequence = match claim.id {
        FormulaId::StsResidue28 | FormulaId::C5Mod5Residue28 | FormulaId::CkModkResidue28 => {
            ln6492 * dense28_exp()
        }
        FormulaId::C5Mod1Residue7 | FormulaId::CkMod1Residue7 => ln6492 * ((2 * n64 - 1) / 7),
        FormulaId::StsGeneral | FormulaId::C5Mod5General | FormulaId::CkModkGeneral => {
            &ln2 * n64 / 3
        }
        FormulaId::C5Mod1General | FormulaId::CkMod1General => &ln2 * n64 / 3 - &ln2,
    };
    let denominator = match claim.id {
        FormulaId::StsResidue28 => oracle_ln_ratio(local_phi(6 * n64 + 3), 1),
        FormulaId::StsGeneral => oracle_ln_ratio(6 * n64 + 2, 1),
        FormulaId::C5Mod1General => oracle_ln_ratio(5 * n64, 1),
        FormulaId::C5Mod1Residue7 => oracle_ln_ratio(10 * n64, 1),
        FormulaId::C5Mod5Residue28 | FormulaId::C5Mod5General => {
            oracle_ln_ratio(local_phi(10 * n64 + 5), 1)
        }
        FormulaId::CkMod1General => oracle_ln_ratio(n64, 1),
        FormulaId::CkMod1Residue7 => oracle_ln_ratio(2 * n64, 1),
        FormulaId::CkModkResidue28 | FormulaId::CkModkGeneral => {
            oracle_ln_ratio(2 * n64 + 1, 1)
        }
    };
    let rhs = oracle_ln_ratio(claim.rhs_milli, 1000) * n64;
    variant + sequence - denominator - rhs
}

// ----------------------------------------------------------------- tests --

#[test]
fn ln2_constant_matches_oracle() {
    assert!(close(&dd_scaled(dd::LN_2), &oracle_ln2(), 30));
}

#[test]
fn dd_ln_matches_oracle_across_magnitudes() {
    for x in [2u64, 3, 5, 7, 10, 24, 1000, 6492, 999_983, 36_028_797_018_963_913] {
        let got = dd_scaled(Dd::ln_u64(x));
        let want = oracle_ln_ratio(x, 1);
        assert!(close(&got, &want, 28), "ln {x}");
    }
    for milli in [2490u64, 3350, 6492, 24000, 29760, 31350, 38400] {
        let got = dd_scaled(Dd::ln_milli(milli));
        let want = oracle_ln_ratio(milli, 1000);
        assert!(close(&got, &want, 28), "ln {milli}/1000");
    }
}

#[test]
fn margins_match_oracle_at_and_past_thresholds() {
    // Five applicable orders per claim starting at its threshold, plus a
    // deep-window sample; double-double must sit within 1e-24 of the
    // oracle, far tighter than the 1e-18 certification allowance.
    for claim in catalog() {
        let mut checked = 0;
        let mut n = claim.threshold;
        while checked < 5 {
            if claim.id.applicable(n) {
                let got = dd_scaled(claim.margin(n).unwrap().value);
                let want = oracle_margin(&claim, n);
                assert!(close(&got, &want, 24), "{} at n = {n}", claim.id);
                checked += 1;
            }
            n += 1;
        }
        let deep = claim.threshold + 911;
        if let Some(n) = (deep..deep + 40).find(|&n| claim.id.applicable(n)) {
            let got = dd_scaled(claim.margin(n).unwrap().value);
            let want = oracle_margin(&claim, n);
            assert!(close(&got, &want, 24), "{} deep at n = {n}", claim.id);
        }
    }
}

#[test]
fn certification_agrees_with_oracle_signs() {
    // Wherever the oracle puts the margin clear of the allowance, the
    // double-double verdict must match it.
    let allowance = f64_scaled(MARGIN_ERROR_BOUND);
    for claim in catalog() {
        let mut seen = 0;
        let mut n = claim.threshold.saturating_sub(60).max(1);
        while seen < 12 {
            if claim.id.applicable(n) {
                let margin = claim.margin(n).unwrap();
                let want = oracle_margin(&claim, n);
                if want > allowance {
                    assert!(margin.certified_positive(), "{} at n = {n}", claim.id);
                }
                if want < -&allowance {
                    assert!(margin.certified_negative(), "{} at n = {n}", claim.id);
                    assert!(!margin.certified_positive(), "{} at n = {n}", claim.id);
                }
                seen += 1;
            }
            n += 1;
        }
    }
}

#[test]
fn all_catalog_thresholds_verify_over_the_default_window() {
    for claim in catalog() {
        let report = claim.verify_threshold(5000);
        assert!(
            report.pass,
            "{} rhs {} threshold {}: first failure {:?}",
            claim.id, claim.rhs_milli, claim.threshold, report.first_failure
        );
        assert!(report.checked > 0);
        assert!(report.min_margin > 0.0);
        assert!(report.first_failure.is_none());
    }
    assert_eq!(catalog().len(), 14);
}

#[test]
fn slopes_are_positive_so_windows_extend() {
    // A verified window plus a positive linear slope is what lets the
    // envelope argument push each claim past its window: the envelope
    // margin is linear-minus-log, so a positive slope eventually wins.
    for claim in catalog() {
        assert!(claim.slope().to_f64() > 0.0, "{}", claim.id);
        // The envelope margin never exceeds the exact margin and agrees
        // exactly when the claim's denominator is already smooth.
        let mut n = claim.threshold;
        let mut seen = 0;
        while seen < 3 {
            if claim.id.applicable(n) {
                let exact = claim.margin(n).unwrap().to_f64();
                let envelope = claim.envelope_margin(n).unwrap().to_f64();
                assert!(envelope <= exact + 1e-18, "{} at n = {n}", claim.id);
                match claim.id {
                    FormulaId::StsResidue28
                    | FormulaId::C5Mod5Residue28
                    | FormulaId::C5Mod5General => {}
                    _ => assert_eq!(envelope, exact, "{} at n = {n}", claim.id),
                }
                seen += 1;
            }
            n += 1;
        }
    }
}

#[test]
fn envelope_margins_step_upward_within_each_residue_class() {
    // Applicability is periodic (mod 28 or mod 7), and within one residue
    // class every term of the envelope margin is linear minus a concave
    // log, so together with a positive per-period step at the window's
    // orders the whole tail of each class stays above its verified floor.
    // (Interleaved classes may dip relative to each other; stepping by the
    // period keeps the comparison inside one class.)
    for claim in catalog() {
        let period = match claim.id {
            FormulaId::C5Mod1General
            | FormulaId::C5Mod1Residue7
            | FormulaId::CkMod1General
            | FormulaId::CkMod1Residue7 => 7,
            _ => 28,
        };
        for n in claim.threshold..claim.threshold + 600 {
            if !claim.id.applicable(n) {
                continue;
            }
            assert!(claim.id.applicable(n + period), "{}: periodicity", claim.id);
            let a = claim.envelope_margin(n).unwrap().to_f64();
            let b = claim.envelope_margin(n + period).unwrap().to_f64();
            assert!(b > a, "{} at n = {} -> {}", claim.id, n, n + period);
        }
    }
}

#[test]
fn margins_gate_on_applicability() {
    let sts_dense = catalog()[0];
    assert_eq!(sts_dense.id, FormulaId::StsResidue28);
    // 4 mod 28 is not a dense residue.
    assert!(matches!(
        sts_dense.margin(448),
        Err(BoundsError::NotApplicable { .. })
    ));
    assert!(sts_dense.id.applicable(451)); // 451 = 3 mod 28
}

#[test]
fn explicit_k_cancels_in_the_modk_margins() {
    let claim = catalog()
        .into_iter()
        .find(|c| c.id == FormulaId::CkModkGeneral)
        .unwrap();
    let n = (claim.threshold..).find(|&n| claim.id.applicable(n)).unwrap();
    let plain = claim.margin(n).unwrap().value;
    for k in [7u64, 11, 13, 31, 101] {
        let with_k = claim.margin_with_explicit_k(n, k).unwrap().value;
        let diff = (plain - with_k).to_f64().abs();
        assert!(diff < 1e-24, "k = {k}: {diff}");
    }
    assert!(matches!(
        claim.margin_with_explicit_k(n, 6),
        Err(BoundsError::BadK { k: 6 })
    ));
    assert!(matches!(
        claim.margin_with_explicit_k(n, 5),
        Err(BoundsError::BadK { k: 5 })
    ));
}

#[test]
fn min_crossings_sit_at_or_before_the_stated_thresholds() {
    for claim in catalog() {
        let limit = claim.threshold + 600;
        let crossing = claim.min_crossing(limit);
        // A stated threshold need not itself be an applicable order (for the
        // mod-28 families most orders are skipped); the promise is only that
        // every applicable order at or past it clears the bound.  So the
        // crossing must sit at or before the first applicable order >= the
        // threshold.
        let first_app = (claim.threshold..)
            .find(|&n| claim.id.applicable(n))
            .unwrap();
        match crossing {
            Some(c) => {
                assert!(
                    c <= first_app,
                    "{} rhs {}: crossing {c} past first applicable {first_app}",
                    claim.id,
                    claim.rhs_milli
                );
                // The crossing really is a sign change: certified positive at
                // c, and the nearest applicable order before it (when one
                // exists) failed certification.
                assert!(claim.margin(c).unwrap().certified_positive());
                if let Some(prev) = (1..c).rev().find(|&n| claim.id.applicable(n)) {
                    assert!(
                        !claim.margin(prev).unwrap().certified_positive(),
                        "{} rhs {}: order {prev} below crossing {c} is already positive",
                        claim.id,
                        claim.rhs_milli
                    );
                }
            }
            None => panic!("{} rhs {}: no crossing within {limit}", claim.id, claim.rhs_milli),
        }
    }
}

#[test]
fn design_count_bounds_match_hand_arithmetic() {
    // v = 11, k = 5: 24 orientations, one sequence, affine order 10.
    assert_eq!(design_count_bound(CountKind::C5Mod1, 1, 0).unwrap(), BigUint::from(3u32));
    // v = 15, k = 5: affine order 8.
    assert_eq!(design_count_bound(CountKind::C5Mod5, 1, 0).unwrap(), BigUint::from(3u32));
    // v = 15, k = 3: 2^2 signs / phi(15) = 8 -> ceil(4/8) = 1.
    assert_eq!(design_count_bound(CountKind::Sts, 2, 0).unwrap(), BigUint::from(1u32));
    // n = 3 is a dense residue: 2^3 * floor(6.492) = 48, phi(21) = 12.
    assert_eq!(design_count_bound(CountKind::Sts, 3, 0).unwrap(), BigUint::from(4u32));
    // k rides along for the mod-k kinds: v = (2*2+1)*7 = 35, phi = 24,
    // 2^2 * 1 = 4 -> ceil(4/24) = 1.
    assert_eq!(design_count_bound(CountKind::CkModk, 2, 7).unwrap(), BigUint::from(1u32));
    assert!(matches!(design_count_bound(CountKind::Sts, 0, 0), Err(BoundsError::BadOrder)));
    assert!(matches!(
        design_count_bound(CountKind::CkMod1, 2, 5),
        Err(BoundsError::BadK { k: 5 })
    ));
    assert!(matches!(
        design_count_bound(CountKind::CkModk, 2, 8),
        Err(BoundsError::BadK { k: 8 })
    ));
}

#[test]
fn phi_is_multiplicative_on_coprime_parts() {
    assert_eq!(euler_phi(1), 1);
    assert_eq!(euler_phi(11), 10);
    assert_eq!(euler_phi(15), 8);
    assert_eq!(euler_phi(21), 12);
    assert_eq!(euler_phi(6 * 446 + 3), euler_phi(3) * euler_phi(19) * euler_phi(47));
    for (a, b) in [(9u64, 25u64), (7, 32), (27, 11)] {
        assert_eq!(euler_phi(a * b), euler_phi(a) * euler_phi(b));
    }
}
