//! Residue arithmetic over Z_v and the cycle/difference-system/cycle-system
//! layer every construction funnels through.
//!
//! A k-cycle C = (c_1, ..., c_k) over Z_v is treated as a subgraph: two
//! vertex lists denote the same cycle when one is a rotation or reflection
//! of the other. The type d of C is the size of its translation stabilizer
//! {z : C + z = C}; d divides gcd(k, v) and the orbit of C under
//! translation has exactly v/d cycles. The partial differences of C are
//! the signed consecutive differences of one period of its vertex list,
//! k/d values and their negatives:
//!
//! ```text
//! dC = +-{ c_{i+1} - c_i : 1 <= i <= k/d }
//! ```
//!
//! (for type d > 1 the (k/d)-th consecutive difference realizes the
//! closing term across the period boundary). A set of starter cycles, each
//! containing 0, is a difference system when the union of their partial
//! differences covers Z_v - {0} exactly once; expanding the orbits of the
//! starters then partitions the edges of K_v into k-cycles.

use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sorted list of divisors.
pub fn divisors(x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            if d != x / d {
                out.push(x / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclicError {
    #[error("modulus {0} is even: designs in scope have odd order")]
    EvenModulus(u64),
    #[error("modulus {0} is too small (need v >= 3)")]
    ModulusTooSmall(u64),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("cycle length {k} exceeds modulus {v}")]
    CycleLongerThanModulus { k: usize, v: u64 },
    #[error("duplicate vertex {0} in cycle")]
    DuplicateVertex(u64),
    #[error("starter cycle {index} does not contain vertex 0")]
    StarterMissingZero { index: usize },
    #[error("starter cycle {index} has length {got}, expected {k}")]
    WrongCycleLength { index: usize, got: usize, k: usize },
    #[error("cycle modulus {got} does not match system modulus {v}")]
    MixedModulus { got: u64, v: u64 },
    #[error("partial differences do not cover Z_v - {{0}} exactly once: {0}")]
    Coverage(CoverageReport),
}

/// The ring Z_v for odd v >= 3; carries all vertex arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zv {
    v: u64,
}

impl Zv {
    pub fn new(v: u64) -> Result<Zv, CyclicError> {
        if v < 3 {
            return Err(CyclicError::ModulusTooSmall(v));
        }
        if v.is_multiple_of(2) {
            return Err(CyclicError::EvenModulus(v));
        }
        Ok(Zv { v })
    }

    pub fn modulus(self) -> u64 {
        self.v
    }

    /// Reduce any signed integer into [0, v).
    pub fn reduce(self, x: i128) -> u64 {
        let v = self.v as i128;
        (((x % v) + v) % v) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.v
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.v - b % self.v) % self.v
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.v - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.v as u128) as u64
    }

    /// Units of Z_v in ascending order.
    pub fn units(self) -> Vec<u64> {
        (1..self.v).filter(|&u| gcd(u, self.v) == 1).collect()
    }
}

/// A simple k-cycle with vertices in Z_v. The authored vertex order is
/// kept (constructions and oriented-vector work depend on it); equality,
/// ordering, and hashing use the canonical form, so cycles compare as
/// subgraphs.
#[derive(Debug, Clone)]
pub struct Cycle {
    zv: Zv,
    verts: Vec<u64>,
    canon: Vec<u64>,
}

/// Rotate the least vertex to the front, then pick the direction with the
/// smaller second vertex. Subgraph equality becomes list equality.
fn canonical_form(verts: &[u64]) -> Vec<u64> {
    let k = verts.len();
    let start = (0..k).min_by_key(|&i| verts[i]).unwrap();
    let fwd: Vec<u64> = (0..k).map(|i| verts[(start + i) % k]).collect();
    let bwd: Vec<u64> = (0..k).map(|i| verts[(start + k - i) % k]).collect();
    if fwd[1] <= bwd[1] {
        fwd
    } else {
        bwd
    }
}

impl Cycle {
    /// Build from signed vertex expressions, reducing mod v and rejecting
    /// repeated vertices.
    pub fn new(zv: Zv, verts: &[i128]) -> Result<Cycle, CyclicError> {
        let reduced: Vec<u64> = verts.iter().map(|&x| zv.reduce(x)).collect();
        Cycle::from_residues(zv, reduced)
    }

    pub fn from_residues(zv: Zv, verts: Vec<u64>) -> Result<Cycle, CyclicError> {
        let k = verts.len();
        if k < 3 {
            return Err(CyclicError::CycleTooShort(k));
        }
        if k as u64 > zv.modulus() {
            return Err(CyclicError::CycleLongerThanModulus { k, v: zv.modulus() });
        }
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(CyclicError::DuplicateVertex(w[0]));
            }
        }
        let canon = canonical_form(&verts);
        Ok(Cycle { zv, verts, canon })
    }

    pub fn zv(&self) -> Zv {
        self.zv
    }

    pub fn modulus(&self) -> u64 {
        self.zv.modulus()
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Vertices in authored order.
    pub fn vertices(&self) -> &[u64] {
        &self.verts
    }

    /// Canonical vertex list (least vertex first, smaller neighbor next).
    pub fn canonical(&self) -> &[u64] {
        &self.canon
    }

    pub fn contains(&self, x: u64) -> bool {
        self.verts.contains(&x)
    }

    /// Vertexwise c -> c + z.
    pub fn translate(&self, z: u64) -> Cycle {
        let verts: Vec<u64> = self.verts.iter().map(|&c| self.zv.add(c, z)).collect();
        let canon = canonical_form(&verts);
        Cycle { zv: self.zv, verts, canon }
    }

    /// Vertexwise c -> -c; partial differences are preserved.
    pub fn negate(&self) -> Cycle {
        let verts: Vec<u64> = self.verts.iter().map(|&c| self.zv.neg(c)).collect();
        let canon = canonical_form(&verts);
        Cycle { zv: self.zv, verts, canon }
    }

    /// Stabilizer size: the largest d dividing gcd(k, v) whose subgroup
    /// generator v/d fixes the cycle.
    pub fn cycle_type(&self) -> u64 {
        let v = self.modulus();
        let g = gcd(self.len() as u64, v);
        for &d in divisors(g).iter().rev() {
            if self.translate(v / d).canon == self.canon {
                return d;
            }
        }
        1
    }

    /// One period of signed consecutive differences with their negatives:
    /// 2k/d residues, sorted ascending (multiset as sorted list).
    pub fn partial_differences(&self) -> Vec<u64> {
        self.partial_differences_for_type(self.cycle_type())
    }

    fn partial_differences_for_type(&self, d: u64) -> Vec<u64> {
        let k = self.len();
        let period = k / d as usize;
        let mut out = Vec::with_capacity(2 * period);
        for i in 0..period {
            let diff = self.zv.sub(self.verts[(i + 1) % k], self.verts[i]);
            out.push(diff);
            out.push(self.zv.neg(diff));
        }
        out.sort_unstable();
        out
    }

    /// All v/d distinct translates, canonicalized and sorted.
    pub fn orbit(&self) -> Vec<Cycle> {
        let d = self.cycle_type();
        let len = self.modulus() / d;
        let mut out: Vec<Cycle> = (0..len).map(|z| self.translate(z)).collect();
        out.sort();
        out
    }

    /// Edges as ordered pairs (min, max).
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let k = self.verts.len();
        (0..k).map(move |i| {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % k];
            (a.min(b), a.max(b))
        })
    }
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        self.zv == other.zv && self.canon == other.canon
    }
}

impl Eq for Cycle {}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canon.cmp(&other.canon)
    }
}

impl std::hash::Hash for Cycle {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canon.hash(state);
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// How a candidate starter set covers Z_v - {0}: which residues are hit
/// zero times and which more than once. Empty on both counts means exact
/// cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub missing: Vec<u64>,
    pub duplicated: Vec<u64>,
}

impl CoverageReport {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.duplicated.is_empty()
    }
}

impl fmt::Display for CoverageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "exact cover");
        }
        write!(f, "missing {:?}, duplicated {:?}", self.missing, self.duplicated)
    }
}

/// Multiplicity check: does the union of partial differences of the
/// starters cover every nonzero residue exactly once?
pub fn is_difference_system(starters: &[Cycle], v: u64, k: usize) -> CoverageReport {
    let mut count = vec![0u32; v as usize];
    for c in starters {
        if c.modulus() == v && c.len() == k {
            for d in c.partial_differences() {
                count[d as usize] += 1;
            }
        } else {
            // Shape mismatch surfaces as missing coverage plus the
            // constructor-level errors; never panic here.
            return CoverageReport { missing: (1..v).collect(), duplicated: vec![] };
        }
    }
    let missing = (1..v).filter(|&x| count[x as usize] == 0).collect();
    let duplicated = (1..v).filter(|&x| count[x as usize] > 1).collect();
    CoverageReport { missing, duplicated }
}

/// Starter cycles, each containing 0, whose partial differences tile
/// Z_v - {0}. Construction re-runs the validator, so a value of this type
/// is always expandable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSystem {
    zv: Zv,
    k: usize,
    starters: Vec<Cycle>,
}

impl DifferenceSystem {
    pub fn new(zv: Zv, k: usize, starters: Vec<Cycle>) -> Result<DifferenceSystem, CyclicError> {
        for (index, c) in starters.iter().enumerate() {
            if c.modulus() != zv.modulus() {
                return Err(CyclicError::MixedModulus { got: c.modulus(), v: zv.modulus() });
            }
            if c.len() != k {
                return Err(CyclicError::WrongCycleLength { index, got: c.len(), k });
            }
            if !c.contains(0) {
                return Err(CyclicError::StarterMissingZero { index });
            }
        }
        let report = is_difference_system(&starters, zv.modulus(), k);
        if !report.ok() {
            return Err(CyclicError::Coverage(report));
        }
        Ok(DifferenceSystem { zv, k, starters })
    }

    pub fn zv(&self) -> Zv {
        self.zv
    }

    pub fn modulus(&self) -> u64 {
        self.zv.modulus()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn starters(&self) -> &[Cycle] {
        &self.starters
    }

    /// Indices of starters with trivial stabilizer, in stored order; this
    /// is the canonical indexing sign and class vectors use.
    pub fn type1_indices(&self) -> Vec<usize> {
        self.starters
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cycle_type() == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Per-starter sorted difference multisets, listed in canonical order
    /// (by length, then lexicographically). Distinct profiles certify
    /// distinct designs.
    pub fn difference_profile(&self) -> Vec<Vec<u64>> {
        let mut profile: Vec<Vec<u64>> =
            self.starters.iter().map(|c| c.partial_differences()).collect();
        profile.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        profile
    }

    /// Union of starter orbits: the full cyclic (K_v, C_k)-design.
    pub fn expand(&self) -> CycleSystem {
        let mut cycles = Vec::new();
        for c in &self.starters {
            cycles.extend(c.orbit());
        }
        cycles.sort();
        CycleSystem { zv: self.zv, k: self.k, cycles }
    }
}

/// A full edge-partition of K_v into k-cycles, stored canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleSystem {
    zv: Zv,
    k: usize,
    cycles: Vec<Cycle>,
}

impl CycleSystem {
    /// Assemble from parts (e.g. a parsed design file); cycles are
    /// canonicalized and sorted, duplicates kept for the validator to
    /// flag.
    pub fn from_cycles(zv: Zv, k: usize, mut cycles: Vec<Cycle>) -> Result<CycleSystem, CyclicError> {
        for (index, c) in cycles.iter().enumerate() {
            if c.modulus() != zv.modulus() {
                return Err(CyclicError::MixedModulus { got: c.modulus(), v: zv.modulus() });
            }
            if c.len() != k {
                return Err(CyclicError::WrongCycleLength { index, got: c.len(), k });
            }
        }
        cycles.sort();
        Ok(CycleSystem { zv, k, cycles })
    }

    pub fn zv(&self) -> Zv {
        self.zv
    }

    pub fn modulus(&self) -> u64 {
        self.zv.modulus()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Expected cycle count for a full design: v(v-1)/(2k).
    pub fn expected_cycle_count(v: u64, k: usize) -> u64 {
        v * (v - 1) / (2 * k as u64)
    }

    /// Stable identity of the design as a set of cycles (canonical forms,
    /// sorted); equal keys iff equal cycle sets.
    pub fn design_key(&self) -> Vec<u64> {
        let mut key = Vec::with_capacity(self.cycles.len() * self.k);
        for c in &self.cycles {
            key.extend_from_slice(c.canonical());
        }
        key
    }
}

/// Verdict of the edge-partition check, with the first failure found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SystemVerdict {
    Valid,
    /// Lexicographically first edge of K_v covered by no cycle.
    UncoveredEdge { a: u64, b: u64 },
    /// Lexicographically first edge covered more than once.
    DoublyCoveredEdge { a: u64, b: u64 },
    /// Cycle count differs from v(v-1)/(2k).
    WrongCount { got: u64, expected: u64 },
}

impl SystemVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, SystemVerdict::Valid)
    }
}

/// True iff every edge of K_v lies on exactly one cycle (each stored
/// cycle is simple by construction).
pub fn validate_cycle_system(sys: &CycleSystem) -> SystemVerdict {
    let v = sys.modulus();
    let mut count = vec![0u32; (v * v) as usize];
    for c in &sys.cycles {
        for (a, b) in c.edges() {
            count[(a * v + b) as usize] += 1;
        }
    }
    for a in 0..v {
        for b in (a + 1)..v {
            match count[(a * v + b) as usize] {
                0 => return SystemVerdict::UncoveredEdge { a, b },
                1 => {}
                _ => return SystemVerdict::DoublyCoveredEdge { a, b },
            }
        }
    }
    let expected = CycleSystem::expected_cycle_count(v, sys.k);
    if sys.cycles.len() as u64 != expected {
        return SystemVerdict::WrongCount { got: sys.cycles.len() as u64, expected };
    }
    SystemVerdict::Valid
}
