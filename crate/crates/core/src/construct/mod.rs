//! Every concrete difference-system construction, funneled through the
//! validator, plus a backtracking fallback that can repair gaps or certify
//! nonexistence by exhaustion.
//!
//! Recipes carry a trust level. Verified recipes validate by construction
//! for every parameter in range: the k=3 family on v = 6n+3 from a split
//! sequence, the k=5 families on v = 10n+1 and 10n+5, the multipartite
//! family F' on v = (2n+1)k together with the rotational short-orbit
//! system for prime k. AsPrinted recipes transcribe formulas that do not
//! survive validation as printed (the v = 2nk+1 vertex lists for odd
//! k > 5, whose even/odd vertex interleavings repeat a difference, and the
//! k = 15 family with its swapped pair of vertices); they are returned as
//! candidates with an attached verdict and are never expandable unless the
//! verdict passes. The validator, not the formula, is ground truth.

mod search;

pub use search::{search_fallback, SearchBudget, SearchOutcome, SearchShape};

use crate::cyclic::{
    gcd, is_difference_system, CoverageReport, Cycle, CyclicError, DifferenceSystem, Zv,
};
use crate::skolem::{self, Family, SkolemKind, SkolemSequence, Validation};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trust {
    Verified,
    AsPrinted,
}

impl fmt::Display for Trust {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trust::Verified => "verified",
            Trust::AsPrinted => "as-printed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecipeId {
    Sts6n3,
    C5Mod1,
    C5Mod5,
    CkMod1Printed,
    CkMultipartiteFprime,
    PrimeShortSystem,
    K15Fprime,
    SearchFallback,
}

impl fmt::Display for RecipeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecipeId::Sts6n3 => "sts-6n+3",
            RecipeId::C5Mod1 => "c5-10n+1",
            RecipeId::C5Mod5 => "c5-10n+5",
            RecipeId::CkMod1Printed => "ck-2nk+1-printed",
            RecipeId::CkMultipartiteFprime => "ck-multipartite-fprime",
            RecipeId::PrimeShortSystem => "prime-short-system",
            RecipeId::K15Fprime => "k15-fprime",
            RecipeId::SearchFallback => "search-fallback",
        })
    }
}

/// A validated difference system together with how it was produced.
#[derive(Debug, Clone)]
pub struct ConstructedSystem {
    pub system: DifferenceSystem,
    pub recipe: RecipeId,
    pub trust: Trust,
}

/// Coverage of a target subset of Z_v - {0}: `missing` are target residues
/// never hit, `duplicated` are residues hit more than once, `outside` are
/// hit residues not in the target at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetCoverage {
    pub missing: Vec<u64>,
    pub duplicated: Vec<u64>,
    pub outside: Vec<u64>,
}

impl SubsetCoverage {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.duplicated.is_empty() && self.outside.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error(transparent)]
    Skolem(#[from] skolem::SkolemError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error("expected a sequence of the {expected} family, got kind {got}")]
    WrongFamily { expected: Family, got: SkolemKind },
    #[error("input sequence fails validation: {0:?}")]
    InvalidSequence(Validation),
    #[error("order {n} is below the minimum {min} for this construction")]
    OrderTooSmall { n: u32, min: u32 },
    #[error("this construction needs an explicit sequence for order {n}")]
    MissingSequence { n: u32 },
    #[error("sequence order {got} does not match the requested order {n}")]
    OrderMismatch { n: u32, got: u32 },
    #[error("invalid search shape: {0}")]
    BadShape(&'static str),
    #[error("k must be odd and at least {min}, got {k}")]
    BadK { k: u64, min: u64 },
    #[error("m must be odd and at least 3, got {m}")]
    BadM { m: u64 },
    #[error("k = {k} is not prime, so the rotational short-orbit system does not apply")]
    NotPrime { k: u64 },
    #[error("k = {k} is a composite prime power; its short-orbit family is out of scope, no system is built")]
    UnsupportedPrimePower { k: u64 },
    #[error("no built-in short-orbit system for composite k = {k}; supply one explicitly")]
    ShortSystemUnavailable { k: u64 },
    #[error("multipartite family misses its coverage target (this is a bug, not a usage error)")]
    MultipartiteCoverage(SubsetCoverage),
    #[error("as-printed candidate failed validation and cannot become a system")]
    CandidateInvalid,
    #[error("(v,k) = ({v},{k}) is not admissible: need odd v >= 3 with v(v-1) = 0 (mod 2k)")]
    Inadmissible { v: u64, k: u64 },
    #[error("search exhausted its budget before completing the k=15 short-orbit complement")]
    ComplementNotFound,
    #[error("search proved no system with the requested shape exists")]
    ProvedNonexistent,
}

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// True for p^a with a >= 2 (composite powers of a single prime).
pub fn is_composite_prime_power(x: u64) -> bool {
    if x < 4 || is_prime(x) {
        return false;
    }
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            let mut y = x;
            while y.is_multiple_of(p) {
                y /= p;
            }
            return y == 1;
        }
        p += 1;
    }
    false
}

/// Admissibility of a cyclic (K_v, C_k)-design's parameters.
pub fn admissible(v: u64, k: u64) -> bool {
    v >= 3
        && v % 2 == 1
        && k >= 3
        && k <= v
        && (v as u128 * (v as u128 - 1)).is_multiple_of(2 * k as u128)
}

fn checked_sequence(
    seq: &SkolemSequence,
    family: Family,
) -> Result<&SkolemSequence, ConstructError> {
    let expected_kind = SkolemKind::for_family(family, seq.order());
    if seq.kind() != expected_kind {
        return Err(ConstructError::WrongFamily { expected: family, got: seq.kind() });
    }
    let verdict = skolem::validate_sequence(seq);
    if !verdict.is_valid() {
        return Err(ConstructError::InvalidSequence(verdict));
    }
    Ok(seq)
}

/// k=3 on v = 6n+3: n triples C_i = (0, i, s_i+i+n) from a split sequence
/// plus the short triple B = (0, 2n+1, 4n+2) of type 3.
pub fn sts_from_split(seq: &SkolemSequence) -> Result<ConstructedSystem, ConstructError> {
    let seq = checked_sequence(seq, Family::Split)?;
    let n = seq.order() as i128;
    let zv = Zv::new((6 * n + 3) as u64)?;
    let mut starters = Vec::with_capacity(seq.order() as usize + 1);
    for i in 1..=n {
        let s = seq.value(i as u32) as i128;
        starters.push(Cycle::new(zv, &[0, i, s + i + n])?);
    }
    starters.push(Cycle::new(zv, &[0, 2 * n + 1, 4 * n + 2])?);
    let system = DifferenceSystem::new(zv, 3, starters)?;
    Ok(ConstructedSystem { system, recipe: RecipeId::Sts6n3, trust: Trust::Verified })
}

/// k=5 on v = 10n+1: pentagons C_i = (0, s_i+i, i, -2n, i+3n) from a pure
/// sequence; a hooked sequence swaps in C'_1 = (0, s_1+1, 1, 5n+1, 2n);
/// n=1 is the fixed pentagon (0,-3,-4,3,-6).
pub fn c5_mod1(n: u32, seq: Option<&SkolemSequence>) -> Result<ConstructedSystem, ConstructError> {
    if n == 0 {
        return Err(ConstructError::OrderTooSmall { n, min: 1 });
    }
    let zv = Zv::new(10 * n as u64 + 1)?;
    let starters = if n == 1 {
        vec![Cycle::new(zv, &[0, -3, -4, 3, -6])?]
    } else {
        let seq = seq.ok_or(ConstructError::MissingSequence { n })?;
        if seq.order() != n {
            return Err(ConstructError::OrderMismatch { n, got: seq.order() });
        }
        let seq = checked_sequence(seq, Family::Skolem)?;
        let n = n as i128;
        let mut out = Vec::with_capacity(seq.order() as usize);
        for i in 1..=n {
            let s = seq.value(i as u32) as i128;
            out.push(Cycle::new(zv, &[0, s + i, i, -2 * n, i + 3 * n])?);
        }
        if seq.kind() == SkolemKind::Hooked {
            let s1 = seq.value(1) as i128;
            out[0] = Cycle::new(zv, &[0, s1 + 1, 1, 5 * n + 1, 2 * n])?;
        }
        out
    };
    let system = DifferenceSystem::new(zv, 5, starters)?;
    Ok(ConstructedSystem { system, recipe: RecipeId::C5Mod1, trust: Trust::Verified })
}

/// One cycle of the multipartite family F' on Z_{km}, m = 2n+1,
/// h = (k-1)/2: subgroup vertices m(j-1)/2 at odd positions, descending
/// m(h - j/2) - i at even positions, and the sequence-dependent closer
/// r_i + (hm - n - 1).
fn multipartite_cycle(
    zv: Zv,
    k: u64,
    m: i128,
    n: i128,
    i: i128,
    r_i: i128,
) -> Result<Cycle, CyclicError> {
    let h = (k as i128 - 1) / 2;
    let mut verts = Vec::with_capacity(k as usize);
    for j in 1..=(k as i128) {
        if j == k as i128 {
            verts.push(r_i + (h * m - n - 1));
        } else if j % 2 == 1 {
            verts.push(m * (j - 1) / 2);
        } else {
            verts.push(m * (h - j / 2) - i);
        }
    }
    Cycle::new(zv, &verts)
}

/// The subset of Z_{km} the multipartite family must cover: everything
/// off the subgroup mZ_{km}.
fn multipartite_coverage(cycles: &[Cycle], v: u64, m: u64) -> SubsetCoverage {
    let mut count = vec![0u32; v as usize];
    for c in cycles {
        for d in c.partial_differences() {
            count[d as usize] += 1;
        }
    }
    let mut missing = Vec::new();
    let mut duplicated = Vec::new();
    let mut outside = Vec::new();
    for x in 1..v {
        let in_target = x % m != 0;
        match (in_target, count[x as usize]) {
            (true, 0) => missing.push(x),
            (true, 1) => {}
            (true, _) => duplicated.push(x),
            (false, 0) => {}
            (false, _) => outside.push(x),
        }
    }
    if count[0] > 0 {
        outside.push(0);
    }
    SubsetCoverage { missing, duplicated, outside }
}

/// The starters of F' for odd k: n type-1 k-cycles over Z_{km} whose
/// partial differences are exactly Z_{km} - mZ_{km}. Errors on coverage
/// failure carry the full report; that would be a transcription bug, not
/// bad input.
pub fn ck_multipartite_fprime(
    seq: &SkolemSequence,
    k: u64,
) -> Result<Vec<Cycle>, ConstructError> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(ConstructError::BadK { k, min: 5 });
    }
    let seq = checked_sequence(seq, Family::Split)?;
    let n = seq.order();
    if n < 2 {
        return Err(ConstructError::OrderTooSmall { n, min: 2 });
    }
    let m = 2 * n as u64 + 1;
    let zv = Zv::new(k * m)?;
    let mut cycles = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let r_i = seq.value(i) as i128;
        cycles.push(multipartite_cycle(zv, k, m as i128, n as i128, i as i128, r_i)?);
    }
    let coverage = multipartite_coverage(&cycles, zv.modulus(), m);
    if !coverage.ok() {
        return Err(ConstructError::MultipartiteCoverage(coverage));
    }
    Ok(cycles)
}

/// For prime k and odd m, the (k-1)/2 rotational cycles
/// (0, jm, 2jm, ..., (k-1)jm), j = 1..(k-1)/2, each of type k with
/// partial differences {+-jm}; together they cover mZ_{km} - {0} exactly.
pub fn prime_short_system(k: u64, m: u64) -> Result<Vec<Cycle>, ConstructError> {
    if !is_prime(k) {
        return Err(ConstructError::NotPrime { k });
    }
    if k < 3 || k.is_multiple_of(2) {
        return Err(ConstructError::BadK { k, min: 3 });
    }
    if m < 3 || m.is_multiple_of(2) {
        return Err(ConstructError::BadM { m });
    }
    let zv = Zv::new(k * m)?;
    let mut cycles = Vec::with_capacity((k as usize - 1) / 2);
    for j in 1..=(k - 1) / 2 {
        let verts: Vec<i128> = (0..k).map(|t| (t as i128) * (j as i128) * (m as i128)).collect();
        let c = Cycle::new(zv, &verts)?;
        debug_assert_eq!(c.cycle_type(), k);
        cycles.push(c);
    }
    Ok(cycles)
}

/// k=5 on v = 10n+5: F' (the h=2 multipartite family) plus the two
/// rotational pentagons (0,m,2m,3m,4m) and (0,2m,4m,m,3m); n=1 is the
/// fixed pentagon (0,-1,1,-6,4) plus the same short pair at m=3.
pub fn c5_mod5(n: u32, seq: Option<&SkolemSequence>) -> Result<ConstructedSystem, ConstructError> {
    if n == 0 {
        return Err(ConstructError::OrderTooSmall { n, min: 1 });
    }
    let m = 2 * n as u64 + 1;
    let zv = Zv::new(5 * m)?;
    let mut starters = if n == 1 {
        vec![Cycle::new(zv, &[0, -1, 1, -6, 4])?]
    } else {
        let seq = seq.ok_or(ConstructError::MissingSequence { n })?;
        if seq.order() != n {
            return Err(ConstructError::OrderMismatch { n, got: seq.order() });
        }
        ck_multipartite_fprime(seq, 5)?
    };
    starters.extend(prime_short_system(5, m)?);
    let system = DifferenceSystem::new(zv, 5, starters)?;
    Ok(ConstructedSystem { system, recipe: RecipeId::C5Mod5, trust: Trust::Verified })
}

/// A candidate built from formulas transcribed as printed, with the
/// verdict attached. `cycles` is populated only when every vertex list is
/// simple; `coverage` only when cycles exist to check.
#[derive(Debug, Clone)]
pub struct PrintedCandidate {
    pub recipe: RecipeId,
    pub trust: Trust,
    pub v: u64,
    pub k: u64,
    pub n: u32,
    /// Vertex lists exactly as the formulas give them, before reduction.
    pub raw: Vec<Vec<i128>>,
    /// Index of the first cycle with a repeated vertex, if any.
    pub first_nonsimple: Option<usize>,
    pub cycles: Vec<Cycle>,
    pub coverage: Option<CoverageReport>,
}

impl PrintedCandidate {
    pub fn simple(&self) -> bool {
        self.first_nonsimple.is_none()
    }

    /// The validator verdict: simple cycles with exact coverage.
    pub fn valid(&self) -> bool {
        self.simple() && self.coverage.as_ref().is_some_and(|c| c.ok())
    }

    /// Promote to a usable system; refused unless the verdict passed.
    pub fn into_system(self) -> Result<ConstructedSystem, ConstructError> {
        if !self.valid() {
            return Err(ConstructError::CandidateInvalid);
        }
        let zv = Zv::new(self.v)?;
        let system = DifferenceSystem::new(zv, self.k as usize, self.cycles)?;
        Ok(ConstructedSystem { system, recipe: self.recipe, trust: self.trust })
    }
}

/// The printed v = 2nk+1 vertex lists for odd k > 5 (b_{i1} = 0,
/// b_{i2} = -s_i, jn/2 at even positions, offset ladders at odd ones, with
/// the hooked replacements A / A' for n = 2,3 (mod 4)). Transcribed
/// exactly and never trusted: the verdict rides along.
pub fn ck_mod1_printed(seq: &SkolemSequence, k: u64) -> Result<PrintedCandidate, ConstructError> {
    if k <= 5 || k.is_multiple_of(2) {
        return Err(ConstructError::BadK { k, min: 7 });
    }
    let seq = checked_sequence(seq, Family::Skolem)?;
    let n = seq.order();
    if n < 2 {
        return Err(ConstructError::OrderTooSmall { n, min: 2 });
    }
    let v = 2 * n as u64 * k + 1;
    let zv = Zv::new(v)?;
    let ki = k as i128;
    let ni = n as i128;
    let eps: i128 = if k % 4 == 1 { -2 } else { 0 };
    let mut raw: Vec<Vec<i128>> = Vec::with_capacity(n as usize);
    for i in 1..=ni {
        let s = seq.value(i as u32) as i128;
        let mut b = Vec::with_capacity(k as usize);
        for j in 1..=ki {
            let val = match j {
                1 => 0,
                2 => -s,
                j if j % 2 == 0 => j * ni / 2,
                j if j <= (ki + 1) / 2 => i + (j - 3) * ni / 2,
                j => i + (ki + j + eps) * ni / 2,
            };
            b.push(val);
        }
        raw.push(b);
    }
    if seq.kind() == SkolemKind::Hooked {
        // Replace B_1 with A (k = 1 mod 4) or A' (k = 3 mod 4).
        let b1 = raw[0].clone();
        let mut a = b1.clone();
        a[0] = 1;
        a[2] = 0;
        if k % 4 == 1 {
            a[(k - 3) as usize] = 5 * ni;
            a[(k - 2) as usize] = (4 - ki) * ni;
            a[(k - 1) as usize] = (ki + 3) * ni / 2 + 1;
        }
        raw[0] = a;
    }
    let mut cycles = Vec::with_capacity(raw.len());
    let mut first_nonsimple = None;
    for (idx, verts) in raw.iter().enumerate() {
        match Cycle::new(zv, verts) {
            Ok(c) => cycles.push(c),
            Err(_) => {
                first_nonsimple = Some(idx);
                break;
            }
        }
    }
    let (cycles, coverage) = if first_nonsimple.is_none() {
        let report = is_difference_system(&cycles, v, k as usize);
        (cycles, Some(report))
    } else {
        (Vec::new(), None)
    };
    Ok(PrintedCandidate {
        recipe: RecipeId::CkMod1Printed,
        trust: Trust::AsPrinted,
        v,
        k,
        n,
        raw,
        first_nonsimple,
        cycles,
        coverage,
    })
}

/// Candidate k=15 family: the multipartite cycles with C_1's vertices
/// 6m-1 and 6m swapped to -5m+1 and 6m-1 (the closer r_1 + (13m-1)/2 is
/// never touched). The swap moves two difference pairs onto the subgroup,
/// so the verdict against the Z_{15m} - mZ_{15m} target rides along and
/// assembly must search out the adjusted short-orbit complement.
#[derive(Debug, Clone)]
pub struct K15Candidate {
    pub n: u32,
    pub m: u64,
    pub v: u64,
    pub cycles: Vec<Cycle>,
    pub coverage: SubsetCoverage,
    pub trust: Trust,
}

impl K15Candidate {
    /// Residues of Z_v - {0} the candidate leaves uncovered; the short
    /// complement must cover exactly these.
    pub fn complement_target(&self) -> Vec<u64> {
        let mut count = vec![0u32; self.v as usize];
        for c in &self.cycles {
            for d in c.partial_differences() {
                count[d as usize] += 1;
            }
        }
        (1..self.v).filter(|&x| count[x as usize] == 0).collect()
    }
}

pub fn k15_fprime(seq: &SkolemSequence) -> Result<K15Candidate, ConstructError> {
    let seq = checked_sequence(seq, Family::Split)?;
    let n = seq.order();
    if n < 2 {
        return Err(ConstructError::OrderTooSmall { n, min: 2 });
    }
    let m = 2 * n as u64 + 1;
    let zv = Zv::new(15 * m)?;
    let mi = m as i128;
    let mut cycles = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let r_i = seq.value(i) as i128;
        let mut c = multipartite_cycle(zv, 15, mi, n as i128, i as i128, r_i)?
            .vertices()
            .to_vec();
        if i == 1 {
            // Printed substitution on C_1 only: 6m-1 -> -5m+1, 6m -> 6m-1.
            let from_a = zv.reduce(6 * mi - 1);
            let from_b = zv.reduce(6 * mi);
            let to_a = zv.reduce(-5 * mi + 1);
            let to_b = zv.reduce(6 * mi - 1);
            for x in c.iter_mut() {
                if *x == from_a {
                    *x = to_a;
                } else if *x == from_b {
                    *x = to_b;
                }
            }
        }
        cycles.push(Cycle::from_residues(zv, c)?);
    }
    let coverage = multipartite_coverage(&cycles, zv.modulus(), m);
    Ok(K15Candidate { n, m, v: zv.modulus(), cycles, coverage, trust: Trust::AsPrinted })
}

/// Full system on v = (2n+1)k: F' plus a short-orbit system covering the
/// subgroup differences. Prime k uses the rotational system; k = 15 uses
/// the swapped candidate plus a searched complement of cycles of type > 1;
/// composite prime powers have no in-scope short family; any other
/// composite k needs `short_system` supplied by the caller.
pub fn assemble_ck_modk(
    seq: &SkolemSequence,
    k: u64,
    short_system: Option<Vec<Cycle>>,
    budget: &SearchBudget,
) -> Result<ConstructedSystem, ConstructError> {
    if k <= 5 || k.is_multiple_of(2) {
        return Err(ConstructError::BadK { k, min: 7 });
    }
    let n = seq.order();
    let m = 2 * n as u64 + 1;
    let v = k * m;
    if is_prime(k) {
        let mut starters = ck_multipartite_fprime(seq, k)?;
        starters.extend(prime_short_system(k, m)?);
        let system = DifferenceSystem::new(Zv::new(v)?, k as usize, starters)?;
        return Ok(ConstructedSystem {
            system,
            recipe: RecipeId::CkMultipartiteFprime,
            trust: Trust::Verified,
        });
    }
    if k == 15 {
        let cand = k15_fprime(seq)?;
        let target = cand.complement_target();
        let mut starters = cand.cycles;
        match short_system {
            Some(extra) => starters.extend(extra),
            None => {
                let g = gcd(k, v);
                let types: Vec<u64> =
                    crate::cyclic::divisors(g).into_iter().filter(|&d| d > 1).collect();
                let shape =
                    SearchShape { allowed_types: Some(types), target: Some(target) };
                match search_fallback(v, k, &shape, budget)? {
                    SearchOutcome::Found { starters: extra, .. } => starters.extend(extra),
                    SearchOutcome::BudgetExhausted { .. } => {
                        return Err(ConstructError::ComplementNotFound)
                    }
                    SearchOutcome::Nonexistent { .. } => {
                        return Err(ConstructError::ProvedNonexistent)
                    }
                }
            }
        }
        let system = DifferenceSystem::new(Zv::new(v)?, k as usize, starters)?;
        return Ok(ConstructedSystem {
            system,
            recipe: RecipeId::K15Fprime,
            trust: Trust::AsPrinted,
        });
    }
    if is_composite_prime_power(k) {
        return Err(ConstructError::UnsupportedPrimePower { k });
    }
    match short_system {
        Some(extra) => {
            let mut starters = ck_multipartite_fprime(seq, k)?;
            starters.extend(extra);
            let system = DifferenceSystem::new(Zv::new(v)?, k as usize, starters)?;
            Ok(ConstructedSystem {
                system,
                recipe: RecipeId::CkMultipartiteFprime,
                trust: Trust::Verified,
            })
        }
        None => Err(ConstructError::ShortSystemUnavailable { k }),
    }
}

/// Wrap a successful full-target search into a constructed system.
pub fn searched_system(
    v: u64,
    k: u64,
    budget: &SearchBudget,
) -> Result<(SearchOutcome, Option<ConstructedSystem>), ConstructError> {
    let shape = SearchShape::default();
    let outcome = search_fallback(v, k, &shape, budget)?;
    let system = match &outcome {
        SearchOutcome::Found { starters, .. } => {
            let system = DifferenceSystem::new(Zv::new(v)?, k as usize, starters.clone())?;
            Some(ConstructedSystem {
                system,
                recipe: RecipeId::SearchFallback,
                trust: Trust::Verified,
            })
        }
        _ => None,
    };
    Ok((outcome, system))
}
