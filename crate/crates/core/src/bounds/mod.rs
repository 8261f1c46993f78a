//! Certified lower-bound arithmetic for counts of pairwise non-isomorphic
//! cyclic k-cycle systems.
//!
//! Each formula compares a counting lower bound (sequence counts times
//! sign/orientation variants, divided by the order of the affine group)
//! against an exponential growth target, and claims the bound wins from a
//! stated threshold on. Margins are computed in the log domain with
//! double-double arithmetic and certified: a margin only counts as
//! positive when it clears a conservative rounding-error허 allowance.
//!
//! Two counting regimes exist per family: residue classes where richer
//! sequence counts are available (n = 3,5,24,26 mod 28 for the split
//! family, n = 4 mod 7 for the plain family) use 6.492^(linear in n);
//! all other orders use 2^(n/3). Real-valued exponents are used (not
//! floored), and denominators follow each claim's stated normalization:
//! the exact totient where the claim needs it, the smooth upper bound
//! where that is what the claim states. With these conventions every
//! shipped threshold verifies across its window.

pub mod dd;

pub use dd::Dd;

use num_bigint::BigUint;
use serde::Serialize;
use std::fmt;

/// Euler's totient by trial division.
pub fn euler_phi(mut x: u64) -> u64 {
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

/// Conservative absolute error allowance for a margin computed in
/// double-double: ~50 operations on magnitudes up to 2e4 accumulate less
/// than 1e-25; this floor leaves seven orders of magnitude of slack.
pub const MARGIN_ERROR_BOUND: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaId {
    /// k=3, dense residues (n = 3,5,24,26 mod 28), denominator phi(6n+3).
    StsResidue28,
    /// k=3, all other orders, denominator 6n+2.
    StsGeneral,
    /// k=5 on 10n+1, general orders, denominator 5n.
    C5Mod1General,
    /// k=5 on 10n+1, n = 4 mod 7, denominator 10n.
    C5Mod1Residue7,
    /// k=5 on 10n+5, dense residues, denominator phi(10n+5).
    C5Mod5Residue28,
    /// k=5 on 10n+5, general orders, denominator phi(10n+5).
    C5Mod5General,
    /// odd k > 5 on 2nk+1, general orders, denominator n (k cancels).
    CkMod1General,
    /// odd k > 5 on 2nk+1, n = 4 mod 7, denominator 2n (k cancels).
    CkMod1Residue7,
    /// odd k > 5 on (2n+1)k, dense residues, denominator 2n+1 (k cancels).
    CkModkResidue28,
    /// odd k > 5 on (2n+1)k, general orders, denominator 2n+1 (k cancels).
    CkModkGeneral,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaId::StsResidue28 => "sts-residue28",
            FormulaId::StsGeneral => "sts-general",
            FormulaId::C5Mod1General => "c5-mod1-general",
            FormulaId::C5Mod1Residue7 => "c5-mod1-residue7",
            FormulaId::C5Mod5Residue28 => "c5-mod5-residue28",
            FormulaId::C5Mod5General => "c5-mod5-general",
            FormulaId::CkMod1General => "ck-mod1-general",
            FormulaId::CkMod1Residue7 => "ck-mod1-residue7",
            FormulaId::CkModkResidue28 => "ck-modk-residue28",
            FormulaId::CkModkGeneral => "ck-modk-general",
        })
    }
}

fn dense28(n: u32) -> bool {
    matches!(n % 28, 3 | 5 | 24 | 26)
}

/// Exponent of 6.492 on the dense mod-28 residues: (2n+1)/7 when
/// n = 3,24 (mod 28), (2n-3)/7 when n = 5,26 (mod 28); always an integer
/// on those residues.
fn dense28_exponent(n: u32) -> u64 {
    match n % 28 {
        3 | 24 => (2 * n as u64 + 1) / 7,
        5 | 26 => (2 * n as u64 - 3) / 7,
        _ => unreachable!("dense28_exponent on a non-dense order"),
    }
}

impl FormulaId {
    pub fn applicable(self, n: u32) -> bool {
        match self {
            FormulaId::StsResidue28 | FormulaId::CkModkResidue28 | FormulaId::C5Mod5Residue28 => {
                n >= 2 && dense28(n)
            }
            FormulaId::StsGeneral | FormulaId::CkModkGeneral | FormulaId::C5Mod5General => {
                n >= 2 && !dense28(n)
            }
            FormulaId::C5Mod1Residue7 | FormulaId::CkMod1Residue7 => n >= 2 && n % 7 == 4,
            FormulaId::C5Mod1General => n >= 1 && n % 7 != 4,
            FormulaId::CkMod1General => n >= 2 && n % 7 != 4,
        }
    }

    fn variant_log(self, n: u32) -> Dd {
        let n = Dd::from_u64(n as u64);
        match self {
            FormulaId::C5Mod1General
            | FormulaId::C5Mod1Residue7
            | FormulaId::C5Mod5Residue28
            | FormulaId::C5Mod5General => n * Dd::ln_u64(24),
            _ => n * dd::LN_2,
        }
    }

    fn sequence_log(self, n: u32) -> Dd {
        match self {
            FormulaId::StsResidue28 | FormulaId::C5Mod5Residue28 | FormulaId::CkModkResidue28 => {
                Dd::from_u64(dense28_exponent(n)) * Dd::ln_milli(6492)
            }
            FormulaId::C5Mod1Residue7 | FormulaId::CkMod1Residue7 => {
                Dd::from_u64((2 * n as u64 - 1) / 7) * Dd::ln_milli(6492)
            }
            FormulaId::StsGeneral | FormulaId::C5Mod5General | FormulaId::CkModkGeneral => {
                Dd::from_u64(n as u64) / Dd::from_u64(3) * dd::LN_2
            }
            FormulaId::C5Mod1General | FormulaId::CkMod1General => {
                (Dd::from_u64(n as u64) / Dd::from_u64(3) - Dd::ONE) * dd::LN_2
            }
        }
    }

    /// ln of the claim's exact denominator at order n.
    fn denominator_log(self, n: u32) -> Dd {
        let n64 = n as u64;
        match self {
            FormulaId::StsResidue28 => Dd::ln_u64(euler_phi(6 * n64 + 3)),
            FormulaId::StsGeneral => Dd::ln_u64(6 * n64 + 2),
            FormulaId::C5Mod1General => Dd::ln_u64(5 * n64),
            FormulaId::C5Mod1Residue7 => Dd::ln_u64(10 * n64),
            FormulaId::C5Mod5Residue28 | FormulaId::C5Mod5General => {
                Dd::ln_u64(euler_phi(10 * n64 + 5))
            }
            FormulaId::CkMod1General => Dd::ln_u64(n64),
            FormulaId::CkMod1Residue7 => Dd::ln_u64(2 * n64),
            FormulaId::CkModkResidue28 | FormulaId::CkModkGeneral => Dd::ln_u64(2 * n64 + 1),
        }
    }

    /// ln of the smooth upper bound on the denominator (replaces exact
    /// totients by the modulus itself); used for the monotone-envelope
    /// argument that margins stay positive past the verified window.
    fn envelope_denominator_log(self, n: u32) -> Dd {
        let n64 = n as u64;
        match self {
            FormulaId::StsResidue28 => Dd::ln_u64(6 * n64 + 3),
            FormulaId::C5Mod5Residue28 | FormulaId::C5Mod5General => Dd::ln_u64(10 * n64 + 5),
            other => other.denominator_log(n),
        }
    }
}

/// One published claim: formula, growth target in thousandths (2490 is
/// 2.49^n), and the threshold from which the claim is stated to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundClaim {
    pub id: FormulaId,
    pub rhs_milli: u64,
    pub threshold: u32,
}

/// All fourteen shipped claims.
pub fn catalog() -> Vec<BoundClaim> {
    vec![
        BoundClaim { id: FormulaId::StsResidue28, rhs_milli: 3350, threshold: 444 },
        BoundClaim { id: FormulaId::StsGeneral, rhs_milli: 2490, threshold: 702 },
        BoundClaim { id: FormulaId::C5Mod1General, rhs_milli: 24000, threshold: 27 },
        BoundClaim { id: FormulaId::C5Mod1General, rhs_milli: 29760, threshold: 570 },
        BoundClaim { id: FormulaId::C5Mod1Residue7, rhs_milli: 31350, threshold: 25 },
        BoundClaim { id: FormulaId::C5Mod1Residue7, rhs_milli: 38400, threshold: 116 },
        BoundClaim { id: FormulaId::C5Mod5Residue28, rhs_milli: 31350, threshold: 25 },
        BoundClaim { id: FormulaId::C5Mod5Residue28, rhs_milli: 38400, threshold: 136 },
        BoundClaim { id: FormulaId::C5Mod5General, rhs_milli: 24000, threshold: 27 },
        BoundClaim { id: FormulaId::C5Mod5General, rhs_milli: 29760, threshold: 570 },
        BoundClaim { id: FormulaId::CkMod1General, rhs_milli: 2490, threshold: 640 },
        BoundClaim { id: FormulaId::CkMod1Residue7, rhs_milli: 3350, threshold: 375 },
        BoundClaim { id: FormulaId::CkModkResidue28, rhs_milli: 3350, threshold: 403 },
        BoundClaim { id: FormulaId::CkModkGeneral, rhs_milli: 2490, threshold: 597 },
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("formula {id} does not apply at order {n}")]
    NotApplicable { id: String, n: u32 },
    #[error("order must be at least 1")]
    BadOrder,
    #[error("k must be odd and at least 7 for this count, got {k}")]
    BadK { k: u64 },
}

/// A log-domain margin with its certification state. `value` is
/// lhs - rhs; the sign is certified only when it clears the rounding
/// allowance.
#[derive(Debug, Clone, Copy)]
pub struct Margin {
    pub n: u32,
    pub value: Dd,
    pub error_bound: f64,
}

impl Margin {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn certified_positive(&self) -> bool {
        self.value.to_f64() > self.error_bound
    }

    pub fn certified_negative(&self) -> bool {
        self.value.to_f64() < -self.error_bound
    }
}

/// Window verification result: every applicable order in
/// [threshold, threshold + window] examined, worst margin reported.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub id: FormulaId,
    pub rhs_milli: u64,
    pub threshold: u32,
    pub window: u32,
    pub checked: usize,
    pub min_margin: f64,
    pub min_margin_n: u32,
    pub pass: bool,
    pub first_failure: Option<u32>,
}

impl BoundClaim {
    fn rhs_log(&self, n: u32) -> Dd {
        Dd::from_u64(n as u64) * Dd::ln_milli(self.rhs_milli)
    }

    /// Log-domain margin lhs - rhs at an applicable order.
    pub fn margin(&self, n: u32) -> Result<Margin, BoundsError> {
        if !self.id.applicable(n) {
            return Err(BoundsError::NotApplicable { id: self.id.to_string(), n });
        }
        let lhs = self.id.variant_log(n) + self.id.sequence_log(n) - self.id.denominator_log(n);
        let value = lhs - self.rhs_log(n);
        Ok(Margin { n, value, error_bound: MARGIN_ERROR_BOUND })
    }

    /// Margin with the smooth denominator envelope instead of the exact
    /// totient; a lower bound on `margin`, linear up to a slowly growing
    /// log term, so consecutive applicable orders step upward past the
    /// threshold. Equals `margin` for claims stated with smooth
    /// denominators.
    pub fn envelope_margin(&self, n: u32) -> Result<Margin, BoundsError> {
        if !self.id.applicable(n) {
            return Err(BoundsError::NotApplicable { id: self.id.to_string(), n });
        }
        let lhs = self.id.variant_log(n) + self.id.sequence_log(n)
            - self.id.envelope_denominator_log(n);
        let value = lhs - self.rhs_log(n);
        Ok(Margin { n, value, error_bound: MARGIN_ERROR_BOUND })
    }

    /// The linear growth coefficient of the margin (log terms excluded):
    /// positive slope is what makes a one-window check meaningful.
    pub fn slope(&self) -> Dd {
        let variant = match self.id {
            FormulaId::C5Mod1General
            | FormulaId::C5Mod1Residue7
            | FormulaId::C5Mod5Residue28
            | FormulaId::C5Mod5General => Dd::ln_u64(24),
            _ => dd::LN_2,
        };
        let sequence = match self.id {
            FormulaId::StsResidue28
            | FormulaId::C5Mod5Residue28
            | FormulaId::CkModkResidue28
            | FormulaId::C5Mod1Residue7
            | FormulaId::CkMod1Residue7 => {
                Dd::from_u64(2) / Dd::from_u64(7) * Dd::ln_milli(6492)
            }
            _ => Dd::ONE / Dd::from_u64(3) * dd::LN_2,
        };
        variant + sequence - Dd::ln_milli(self.rhs_milli)
    }

    /// Check every applicable order in [threshold, threshold + window].
    /// The sweep fans out over rayon; the reduction is a sequential fold
    /// over the ordered results, so reports are deterministic.
    pub fn verify_threshold(&self, window: u32) -> ThresholdReport {
        use rayon::prelude::*;
        let orders: Vec<u32> = (self.threshold..=self.threshold.saturating_add(window))
            .filter(|&n| self.id.applicable(n))
            .collect();
        let margins: Vec<(u32, f64, bool)> = orders
            .par_iter()
            .map(|&n| {
                let m = self.margin(n).expect("applicability checked");
                (n, m.to_f64(), m.certified_positive())
            })
            .collect();
        let checked = margins.len();
        let mut min_margin = f64::INFINITY;
        let mut min_margin_n = self.threshold;
        let mut first_failure = None;
        for &(n, val, certified) in &margins {
            if val < min_margin {
                min_margin = val;
                min_margin_n = n;
            }
            if !certified && first_failure.is_none() {
                first_failure = Some(n);
            }
        }
        ThresholdReport {
            id: self.id,
            rhs_milli: self.rhs_milli,
            threshold: self.threshold,
            window,
            checked,
            min_margin,
            min_margin_n,
            pass: checked > 0 && first_failure.is_none(),
            first_failure,
        }
    }

    /// Least applicable order from which the margin stays certified
    /// positive through `limit`: the first applicable n after the last
    /// non-positive margin in [1, limit]. None when the tail never
    /// stabilizes within the limit.
    pub fn min_crossing(&self, limit: u32) -> Option<u32> {
        let mut last_bad = 0u32;
        let mut any = false;
        for n in 1..=limit {
            if !self.id.applicable(n) {
                continue;
            }
            any = true;
            let m = self.margin(n).expect("applicability checked");
            if !m.certified_positive() {
                last_bad = n;
            }
        }
        if !any {
            return None;
        }
        (last_bad + 1..=limit).find(|&n| self.id.applicable(n))
    }

    /// Margin recomputed with the cycle length carried explicitly on both
    /// sides (it cancels); exposes the cancellation for property tests.
    /// Only meaningful for the CkMod1*/CkModk* formulas.
    pub fn margin_with_explicit_k(&self, n: u32, k: u64) -> Result<Margin, BoundsError> {
        if k < 7 || k.is_multiple_of(2) {
            return Err(BoundsError::BadK { k });
        }
        if !self.id.applicable(n) {
            return Err(BoundsError::NotApplicable { id: self.id.to_string(), n });
        }
        let ln_k = Dd::ln_u64(k);
        let lhs =
            self.id.variant_log(n) + self.id.sequence_log(n) - self.id.denominator_log(n) - ln_k;
        let value = lhs - (self.rhs_log(n) - ln_k);
        Ok(Margin { n, value, error_bound: MARGIN_ERROR_BOUND })
    }
}

/// Which counting bound a design-count query uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountKind {
    Sts,
    C5Mod1,
    C5Mod5,
    CkMod1,
    CkModk,
}

/// Exact integer lower bound on sequence counts: the floored 6.492-power
/// on the dense residues, 2^floor(n/3) otherwise. `split` selects the
/// mod-28 regime (split family) versus mod-7 (plain family).
fn sequence_count_lower_bound(n: u32, split: bool) -> BigUint {
    let dense = if split { dense28(n) } else { n % 7 == 4 };
    if dense {
        let e = if split { dense28_exponent(n) } else { (2 * n as u64 - 1) / 7 };
        let num = BigUint::from(6492u32).pow(e as u32);
        let den = BigUint::from(1000u32).pow(e as u32);
        num / den
    } else {
        BigUint::from(1u32) << (n / 3)
    }
}

/// Exact integer lower bound on pairwise non-isomorphic cyclic systems
/// from the counting argument: variants times sequence count, divided by
/// the affine group order phi(v), rounded up. `k` is consulted only by
/// the CkMod1/CkModk kinds.
pub fn design_count_bound(kind: CountKind, n: u32, k: u64) -> Result<BigUint, BoundsError> {
    if n == 0 {
        return Err(BoundsError::BadOrder);
    }
    let (variants, seq, v): (BigUint, BigUint, u64) = match kind {
        CountKind::Sts => (
            BigUint::from(1u32) << n,
            sequence_count_lower_bound(n, true),
            6 * n as u64 + 3,
        ),
        CountKind::C5Mod1 => (
            BigUint::from(24u32).pow(n),
            sequence_count_lower_bound(n, false),
            10 * n as u64 + 1,
        ),
        CountKind::C5Mod5 => (
            BigUint::from(24u32).pow(n),
            sequence_count_lower_bound(n, true),
            10 * n as u64 + 5,
        ),
        CountKind::CkMod1 => {
            if k < 7 || k.is_multiple_of(2) {
                return Err(BoundsError::BadK { k });
            }
            (
                BigUint::from(1u32) << n,
                sequence_count_lower_bound(n, false),
                2 * n as u64 * k + 1,
            )
        }
        CountKind::CkModk => {
            if k < 7 || k.is_multiple_of(2) {
                return Err(BoundsError::BadK { k });
            }
            (
                BigUint::from(1u32) << n,
                sequence_count_lower_bound(n, true),
                (2 * n as u64 + 1) * k,
            )
        }
    };
    let phi = BigUint::from(euler_phi(v));
    let num = variants * seq;
    Ok((num + &phi - BigUint::from(1u32)) / phi)
}
