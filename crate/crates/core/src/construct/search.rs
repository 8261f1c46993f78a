//! Exhaustive backtracking over difference systems, used as a repair path
//! when a printed formula fails validation and as a nonexistence prover
//! when it terminates without finding anything.
//!
//! The state space is canonicalized so every system is generated exactly
//! once: starters are built in increasing order of the smallest difference
//! class they cover, and each starter is pinned to the unique listing that
//! traverses its class-x edge as (0, +x). Exhausting the space without a
//! hit is therefore a proof that no system of the requested shape exists.

use super::{admissible, ConstructError};
use crate::cyclic::{divisors, gcd, Cycle, Zv};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit_ms: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_limit: 20_000_000, time_limit_ms: 60_000 }
    }
}

/// Optional constraints on what the search may build. `allowed_types`
/// restricts starter orbit types (entries must divide gcd(k,v)); `target`
/// lists exactly the residues to cover (must exclude 0 and be closed
/// under negation). `None` means all types / all of Z_v - {0}.
#[derive(Debug, Clone, Default)]
pub struct SearchShape {
    pub allowed_types: Option<Vec<u64>>,
    pub target: Option<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// Starters covering the target exactly, in discovery order.
    Found { starters: Vec<Cycle>, nodes: u64 },
    /// Budget ran out with the space only partially explored; proves nothing.
    BudgetExhausted { nodes: u64 },
    /// The whole canonical space was explored: no system of this shape exists.
    Nonexistent { nodes: u64 },
}

impl SearchOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::BudgetExhausted { nodes }
            | SearchOutcome::Nonexistent { nodes } => *nodes,
        }
    }
}

enum Stop {
    Nodes,
    Time,
}

struct Searcher {
    zv: Zv,
    v: u64,
    k: u64,
    /// Orbit types the shape allows, ascending.
    allowed: Vec<u64>,
    /// Residue -> still to cover. Kept symmetric under negation.
    needed: Vec<bool>,
    /// Count of classes (negation pairs) still to cover.
    remaining: usize,
    /// DP table: can `i` classes be tiled by starters of the allowed types?
    representable: Vec<bool>,
    starters: Vec<Cycle>,
    nodes: u64,
    node_limit: u64,
    deadline: Instant,
}

impl Searcher {
    fn tick(&mut self) -> Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Stop::Nodes);
        }
        if self.nodes.is_multiple_of(8192) && Instant::now() >= self.deadline {
            return Err(Stop::Time);
        }
        Ok(())
    }

    fn cover(&mut self, class_rep: u64) {
        self.needed[class_rep as usize] = false;
        self.needed[(self.v - class_rep) as usize] = false;
        self.remaining -= 1;
    }

    fn uncover(&mut self, class_rep: u64) {
        self.needed[class_rep as usize] = true;
        self.needed[(self.v - class_rep) as usize] = true;
        self.remaining += 1;
    }

    fn solve(&mut self) -> Result<bool, Stop> {
        self.tick()?;
        if self.remaining == 0 {
            return Ok(true);
        }
        if !self.representable[self.remaining] {
            return Ok(false);
        }
        // The next starter must cover the smallest open class; its class-x
        // edge is pinned at (0, x), which fixes translation and direction.
        let x = (1..=self.v / 2)
            .find(|&x| self.needed[x as usize])
            .expect("remaining > 0 implies an open class");
        for ti in 0..self.allowed.len() {
            let d = self.allowed[ti];
            let p = (self.k / d) as usize;
            if p > self.remaining || !self.representable[self.remaining - p] {
                continue;
            }
            if p == 1 {
                // The starter is a single orbit: (0, x, 2x, ...) with x a
                // generator of the order-k subgroup.
                let step = self.v / d;
                if x % step != 0 || gcd(x / step, d) != 1 {
                    continue;
                }
                let verts: Vec<u64> =
                    (0..d).map(|t| self.zv.reduce(t as i128 * x as i128)).collect();
                let c = Cycle::from_residues(self.zv, verts)
                    .expect("orbit of a subgroup generator is a simple cycle");
                self.cover(x);
                self.starters.push(c);
                if self.solve()? {
                    return Ok(true);
                }
                self.starters.pop();
                self.uncover(x);
                continue;
            }
            let modq = self.v / d;
            if x % modq == 0 {
                continue; // second vertex would collide with 0 in the base window
            }
            self.cover(x);
            let mut path = vec![0u64, x];
            let mut seen = vec![false; modq as usize];
            seen[0] = true;
            seen[(x % modq) as usize] = true;
            let found = self.extend(&mut path, &mut seen, d)?;
            self.uncover(x);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Grow the base window of a type-d starter one difference at a time;
    /// the final edge is forced by closure onto l*(v/d).
    fn extend(&mut self, path: &mut Vec<u64>, seen: &mut [bool], d: u64) -> Result<bool, Stop> {
        self.tick()?;
        let p = (self.k / d) as usize;
        if path.len() == p {
            if d == 1 {
                return self.try_close(path, d, 0);
            }
            for l in 1..d {
                if gcd(l, d) == 1 && self.try_close(path, d, l * (self.v / d))? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let modq = self.v / d;
        let last = *path.last().expect("path never empty");
        for y in 1..=self.v / 2 {
            if !self.needed[y as usize] {
                continue;
            }
            for sign in [1i128, -1i128] {
                let next = self.zv.reduce(last as i128 + sign * y as i128);
                let r = (next % modq) as usize;
                if seen[r] {
                    continue;
                }
                self.cover(y);
                seen[r] = true;
                path.push(next);
                let found = self.extend(path, seen, d)?;
                path.pop();
                seen[r] = false;
                self.uncover(y);
                if found {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn try_close(&mut self, path: &[u64], d: u64, closure: u64) -> Result<bool, Stop> {
        let last = *path.last().expect("path never empty");
        let diff = self.zv.reduce(closure as i128 - last as i128);
        if diff == 0 {
            return Ok(false);
        }
        let cls = diff.min(self.v - diff);
        if !self.needed[cls as usize] {
            return Ok(false);
        }
        let mut verts = Vec::with_capacity(self.k as usize);
        for t in 0..d {
            let off = t as i128 * closure as i128;
            for &u in path {
                verts.push(self.zv.reduce(u as i128 + off));
            }
        }
        // Base window distinct mod v/d and gcd(l,d)=1 make the expansion simple.
        let c = Cycle::from_residues(self.zv, verts)
            .expect("closed base window expands to a simple cycle");
        debug_assert_eq!(c.cycle_type(), d);
        self.cover(cls);
        self.starters.push(c);
        let found = self.solve()?;
        if !found {
            self.starters.pop();
            self.uncover(cls);
        }
        Ok(found)
    }
}

/// Deterministic exhaustive search for a set of starters covering the
/// shape's target exactly. With the default shape this searches for a full
/// difference system on (v, k) and `Nonexistent` is a certificate that no
/// cyclic k-cycle system of K_v exists; with a restricted shape the
/// verdict is relative to that shape.
pub fn search_fallback(
    v: u64,
    k: u64,
    shape: &SearchShape,
    budget: &SearchBudget,
) -> Result<SearchOutcome, ConstructError> {
    let zv = Zv::new(v)?;
    if k < 3 || k > v {
        return Err(ConstructError::BadK { k, min: 3 });
    }
    let g = gcd(k, v);
    let allowed: Vec<u64> = match &shape.allowed_types {
        None => {
            let mut ds = divisors(g);
            ds.sort_unstable();
            ds
        }
        Some(ts) => {
            let mut ds: Vec<u64> = ts.clone();
            ds.sort_unstable();
            ds.dedup();
            if ds.is_empty() || ds.iter().any(|&d| d == 0 || !g.is_multiple_of(d)) {
                return Err(ConstructError::BadShape(
                    "allowed orbit types must be divisors of gcd(k, v)",
                ));
            }
            ds
        }
    };
    let mut needed = vec![false; v as usize];
    match &shape.target {
        None => {
            if !admissible(v, k) {
                return Err(ConstructError::Inadmissible { v, k });
            }
            for x in 1..v {
                needed[x as usize] = true;
            }
        }
        Some(t) => {
            for &x in t {
                if x == 0 || x >= v {
                    return Err(ConstructError::BadShape("target residues must lie in 1..v"));
                }
                needed[x as usize] = true;
            }
            for x in 1..v {
                if needed[x as usize] != needed[(v - x) as usize] {
                    return Err(ConstructError::BadShape(
                        "target must be closed under negation",
                    ));
                }
            }
        }
    }
    let remaining = (1..=v / 2).filter(|&x| needed[x as usize]).count();
    let sizes: Vec<usize> = allowed.iter().map(|&d| (k / d) as usize).collect();
    let mut representable = vec![false; remaining + 1];
    representable[0] = true;
    for r in 1..=remaining {
        representable[r] = sizes.iter().any(|&s| s <= r && representable[r - s]);
    }
    let mut searcher = Searcher {
        zv,
        v,
        k,
        allowed,
        needed,
        remaining,
        representable,
        starters: Vec::new(),
        nodes: 0,
        node_limit: budget.node_limit,
        deadline: Instant::now() + Duration::from_millis(budget.time_limit_ms),
    };
    Ok(match searcher.solve() {
        Ok(true) => {
            SearchOutcome::Found { starters: searcher.starters, nodes: searcher.nodes }
        }
        Ok(false) => SearchOutcome::Nonexistent { nodes: searcher.nodes },
        Err(_) => SearchOutcome::BudgetExhausted { nodes: searcher.nodes },
    })
}
