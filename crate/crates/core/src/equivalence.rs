//! Equivalence machinery for cyclic cycle systems: the unit-multiplier
//! action, an affine invariant that is exact for cyclic systems (two
//! cyclic systems on Z_v are isomorphic iff a unit multiplier carries one
//! onto the other), census summaries over corpora of systems, and a
//! vertex-bijection brute-force oracle for small v to check the invariant
//! against ground truth.

use crate::cyclic::{gcd, validate_cycle_system, Cycle, CycleSystem, CyclicError};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// Largest v the brute-force isomorphism oracle accepts; beyond this the
/// backtracking blows up and the affine key is the intended tool.
pub const BRUTE_FORCE_LIMIT: u64 = 15;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivError {
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error("{u} is not a unit mod {v}")]
    NotUnit { u: u64, v: u64 },
    #[error("system is not closed under translation; affine keys apply to cyclic systems only")]
    NotTranslationClosed,
    #[error("corpus mixes parameters: expected (v,k) = ({v},{k})")]
    MixedParameters { v: u64, k: usize },
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("v = {v} exceeds the brute-force limit {limit}")]
    TooLargeForBruteForce { v: u64, limit: u64 },
    #[error("input is not a valid cycle system")]
    InvalidSystem,
}

/// The image of a system under x -> ux for a unit u.
pub fn apply_multiplier(sys: &CycleSystem, u: u64) -> Result<CycleSystem, EquivError> {
    let zv = sys.zv();
    let v = zv.modulus();
    let u = u % v;
    if gcd(u, v) != 1 {
        return Err(EquivError::NotUnit { u, v });
    }
    let cycles = sys
        .cycles()
        .iter()
        .map(|c| {
            let verts: Vec<u64> = c.vertices().iter().map(|&x| zv.mul(x, u)).collect();
            Cycle::from_residues(zv, verts)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CycleSystem::from_cycles(zv, sys.k(), cycles)?)
}

fn serialize_multiplied(sys: &CycleSystem, u: u64) -> Vec<u8> {
    let zv = sys.zv();
    let mut canons: Vec<Vec<u64>> = sys
        .cycles()
        .iter()
        .map(|c| {
            let verts: Vec<u64> = c.vertices().iter().map(|&x| zv.mul(x, u)).collect();
            Cycle::from_residues(zv, verts)
                .expect("unit multiplication preserves simplicity")
                .canonical()
                .to_vec()
        })
        .collect();
    canons.sort_unstable();
    let mut bytes = Vec::with_capacity(canons.len() * sys.k() * 8);
    for c in &canons {
        for &x in c {
            bytes.extend_from_slice(&x.to_be_bytes());
        }
    }
    bytes
}

/// A total invariant for cyclic systems under graph isomorphism: the
/// minimum, over all units u of Z_v, of the serialized canonical form of
/// the system's image under x -> ux. Requires translation closure (it is
/// checked): with translations already factored out, units are the only
/// isomorphisms that can remain between distinct cyclic systems.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineKey {
    v: u64,
    k: usize,
    bytes: Vec<u8>,
}

pub fn affine_key(sys: &CycleSystem) -> Result<AffineKey, EquivError> {
    let zv = sys.zv();
    let canon_set: BTreeSet<&[u64]> =
        sys.cycles().iter().map(|c| c.canonical()).collect();
    let closed = sys.cycles().iter().all(|c| {
        let t = c.translate(1);
        canon_set.contains(t.canonical())
    });
    if !closed {
        return Err(EquivError::NotTranslationClosed);
    }
    let bytes = zv
        .units()
        .into_par_iter()
        .map(|u| serialize_multiplied(sys, u))
        .min()
        .expect("v >= 3 always has the unit 1");
    Ok(AffineKey { v: zv.modulus(), k: sys.k(), bytes })
}

/// Summary of a corpus of systems sharing one (v, k): how many inputs,
/// how many distinct edge decompositions, how many affine classes, and
/// the resulting lower bound on pairwise non-isomorphic systems — the
/// larger of the affine class count and ceil(distinct / phi(v)), since a
/// single isomorphism class can absorb at most phi(v) distinct cyclic
/// systems (one per unit multiplier).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusCensus {
    pub v: u64,
    pub k: usize,
    pub total: usize,
    pub distinct: usize,
    pub affine_classes: usize,
    pub phi: u64,
    pub ceiling_bound: u64,
    pub nonisomorphic_lower_bound: u64,
}

pub fn census(corpus: &[CycleSystem]) -> Result<CorpusCensus, EquivError> {
    let first = corpus.first().ok_or(EquivError::EmptyCorpus)?;
    let v = first.zv().modulus();
    let k = first.k();
    if corpus.iter().any(|s| s.zv().modulus() != v || s.k() != k) {
        return Err(EquivError::MixedParameters { v, k });
    }
    let distinct: BTreeSet<Vec<u64>> = corpus.iter().map(|s| s.design_key()).collect();
    let keys = corpus
        .par_iter()
        .map(affine_key)
        .collect::<Result<Vec<_>, _>>()?;
    let affine_classes = keys.into_iter().collect::<BTreeSet<_>>().len();
    let phi = crate::bounds::euler_phi(v);
    let distinct_count = distinct.len();
    let ceiling_bound = (distinct_count as u64).div_ceil(phi);
    Ok(CorpusCensus {
        v,
        k,
        total: corpus.len(),
        distinct: distinct_count,
        affine_classes,
        phi,
        ceiling_bound,
        nonisomorphic_lower_bound: ceiling_bound.max(affine_classes as u64),
    })
}

struct IsoSearch {
    v: usize,
    a_edge: Vec<usize>,
    b_edge: Vec<usize>,
    f: Vec<usize>,
    used: Vec<bool>,
    amap: Vec<usize>,
    bused: Vec<bool>,
    mapped: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl IsoSearch {
    /// Next vertex to map: the one whose edges to mapped vertices land in
    /// the most already-pinned source cycles (those force the image), ties
    /// to the smallest index.
    fn pick(&self) -> usize {
        let mut best = UNSET;
        let mut best_score = -1i64;
        for x in 0..self.v {
            if self.f[x] != UNSET {
                continue;
            }
            let score = self
                .mapped
                .iter()
                .filter(|&&z| self.amap[self.a_edge[x * self.v + z]] != UNSET)
                .count() as i64;
            if score > best_score {
                best_score = score;
                best = x;
            }
        }
        best
    }

    fn try_assign(&mut self, x: usize, y: usize, log: &mut Vec<usize>) -> bool {
        for mi in 0..self.mapped.len() {
            let z = self.mapped[mi];
            let ca = self.a_edge[x * self.v + z];
            let cb = self.b_edge[y * self.v + self.f[z]];
            if self.amap[ca] == UNSET {
                if self.bused[cb] {
                    return false;
                }
                self.amap[ca] = cb;
                self.bused[cb] = true;
                log.push(ca);
            } else if self.amap[ca] != cb {
                return false;
            }
        }
        self.f[x] = y;
        self.used[y] = true;
        self.mapped.push(x);
        true
    }

    fn unassign(&mut self, x: usize, y: usize, log: &[usize]) {
        for &ca in log {
            self.bused[self.amap[ca]] = false;
            self.amap[ca] = UNSET;
        }
        self.f[x] = UNSET;
        self.used[y] = false;
        self.mapped.pop();
    }

    fn extend(&mut self) -> bool {
        if self.mapped.len() == self.v {
            return true;
        }
        let x = self.pick();
        for y in 0..self.v {
            if self.used[y] {
                continue;
            }
            let mut log = Vec::new();
            if self.try_assign(x, y, &mut log) {
                if self.extend() {
                    return true;
                }
                self.unassign(x, y, &log);
            } else {
                for &ca in &log {
                    self.bused[self.amap[ca]] = false;
                    self.amap[ca] = UNSET;
                }
            }
        }
        false
    }
}

fn edge_cycle_table(sys: &CycleSystem) -> Vec<usize> {
    let v = sys.zv().modulus() as usize;
    let mut table = vec![UNSET; v * v];
    for (ci, c) in sys.cycles().iter().enumerate() {
        for (a, b) in c.edges() {
            table[a as usize * v + b as usize] = ci;
            table[b as usize * v + a as usize] = ci;
        }
    }
    table
}

/// Ground-truth isomorphism by exhaustive vertex bijection with
/// cycle-correspondence pruning (all edges of one source cycle must land
/// in a single image cycle). Only for v <= BRUTE_FORCE_LIMIT; both inputs
/// must be valid systems on the same (v, k).
pub fn brute_force_isomorphic(a: &CycleSystem, b: &CycleSystem) -> Result<bool, EquivError> {
    let v = a.zv().modulus();
    if b.zv().modulus() != v || b.k() != a.k() {
        return Err(EquivError::MixedParameters { v, k: a.k() });
    }
    if v > BRUTE_FORCE_LIMIT {
        return Err(EquivError::TooLargeForBruteForce { v, limit: BRUTE_FORCE_LIMIT });
    }
    if !validate_cycle_system(a).is_valid() || !validate_cycle_system(b).is_valid() {
        return Err(EquivError::InvalidSystem);
    }
    let n_cycles = a.cycles().len();
    let mut search = IsoSearch {
        v: v as usize,
        a_edge: edge_cycle_table(a),
        b_edge: edge_cycle_table(b),
        f: vec![UNSET; v as usize],
        used: vec![false; v as usize],
        amap: vec![UNSET; n_cycles],
        bused: vec![false; n_cycles],
        mapped: Vec::with_capacity(v as usize),
    };
    Ok(search.extend())
}
