//! Systematic ways to turn one difference system into many: negating
//! full-orbit starters (any odd k), and re-orienting pentagon starters
//! through the 24 rotation classes of their difference vectors (k = 5
//! only — for k = 3 a triple's differences admit no inequivalent
//! re-orderings, so negation is the only lever there).

use crate::cyclic::{Cycle, CyclicError, DifferenceSystem, Zv};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VariantError {
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error("sign vector has {got} entries but the system has {expected} full-orbit starters")]
    SignLength { expected: usize, got: usize },
    #[error("sign entries must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("class vector has {got} entries but the system has {expected} full-orbit starters")]
    ClassLength { expected: usize, got: usize },
    #[error("class indices run 1..=24, got {got}")]
    ClassIndexRange { got: usize },
    #[error("orientation classes are defined for pentagons only, not k = {k}")]
    PentagonOnly { k: usize },
    #[error("cycle has a translation stabilizer; orientation machinery needs a full orbit")]
    NotFullOrbit,
    #[error("difference vector must have ten distinct partial differences")]
    RepeatedDifference,
    #[error("difference vector entries must be nonzero")]
    VectorZeroEntry,
    #[error("difference vector must sum to 0 (mod v), got {sum}")]
    VectorSum { sum: u64 },
    #[error("sign string may contain only '+' and '-'")]
    BadSignString,
    #[error("class string must be comma-separated integers")]
    BadClassString,
}

/// Negate the full-orbit starters selected by `sigma` (one entry per
/// full-orbit starter, in stored order; +1 keeps, -1 negates). Negation
/// preserves every partial difference, so the result revalidates by
/// construction; short-orbit starters are never touched.
pub fn sign_variant(
    ds: &DifferenceSystem,
    sigma: &[i8],
) -> Result<DifferenceSystem, VariantError> {
    let idx = ds.type1_indices();
    if sigma.len() != idx.len() {
        return Err(VariantError::SignLength { expected: idx.len(), got: sigma.len() });
    }
    if let Some(&bad) = sigma.iter().find(|s| !matches!(s, 1 | -1)) {
        return Err(VariantError::BadSign(bad));
    }
    let mut starters: Vec<Cycle> = ds.starters().to_vec();
    for (j, &i) in idx.iter().enumerate() {
        if sigma[j] == -1 {
            starters[i] = starters[i].negate();
        }
    }
    Ok(DifferenceSystem::new(ds.zv(), ds.k(), starters)?)
}

/// The difference vector of a full-orbit cycle in its stored orientation:
/// consecutive vertex differences, wrapping back to the start.
pub fn oriented_vector(c: &Cycle) -> Result<Vec<u64>, VariantError> {
    if c.cycle_type() != 1 {
        return Err(VariantError::NotFullOrbit);
    }
    let zv = c.zv();
    let verts = c.vertices();
    let k = verts.len();
    Ok((0..k)
        .map(|i| zv.sub(verts[(i + 1) % k], verts[i]))
        .collect())
}

/// Rebuild a cycle from a difference vector: vertices are the prefix sums
/// from 0. The entries must be nonzero, sum to 0 mod v, and give distinct
/// prefix sums.
pub fn cycle_from_vector(zv: Zv, vector: &[u64]) -> Result<Cycle, VariantError> {
    if vector.iter().any(|&d| d == 0 || d >= zv.modulus()) {
        return Err(VariantError::VectorZeroEntry);
    }
    let mut sum = 0u64;
    let mut verts = Vec::with_capacity(vector.len());
    for &d in vector {
        verts.push(sum);
        sum = zv.add(sum, d);
    }
    if sum != 0 {
        return Err(VariantError::VectorSum { sum });
    }
    Ok(Cycle::from_residues(zv, verts)?)
}

fn lex_least_rotation(w: &[u64; 5]) -> [u64; 5] {
    let mut best = *w;
    for r in 1..5 {
        let mut cand = [0u64; 5];
        for i in 0..5 {
            cand[i] = w[(i + r) % 5];
        }
        if cand < best {
            best = cand;
        }
    }
    best
}

fn permutations_of_five() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut items = [0usize, 1, 2, 3, 4];
    fn rec(items: &mut [usize; 5], start: usize, out: &mut Vec<[usize; 5]>) {
        if start == 5 {
            out.push(*items);
            return;
        }
        for i in start..5 {
            items.swap(start, i);
            rec(items, start + 1, out);
            items.swap(start, i);
        }
    }
    rec(&mut items, 0, &mut out);
    out.sort_unstable();
    out
}

/// The 24 rotation classes of the 120 orderings of a pentagon's oriented
/// difference vector. Each class is keyed by its lexicographically least
/// rotation; classes are indexed 1..=24 in sorted key order, which makes
/// the indexing reproducible across runs.
#[derive(Debug, Clone)]
pub struct PentagonClasses {
    zv: Zv,
    vectors: Vec<[u64; 5]>,
    base: usize,
}

impl PentagonClasses {
    pub fn zv(&self) -> Zv {
        self.zv
    }

    /// Canonical vectors in index order (index i is `vectors()[i-1]`).
    pub fn vectors(&self) -> &[[u64; 5]] {
        &self.vectors
    }

    /// 1-based class index of the input cycle's own orientation.
    pub fn base_class(&self) -> usize {
        self.base
    }

    /// The representative pentagon of a class: prefix sums of its
    /// canonical vector, anchored at 0.
    pub fn representative(&self, index: usize) -> Result<Cycle, VariantError> {
        if index == 0 || index > self.vectors.len() {
            return Err(VariantError::ClassIndexRange { got: index });
        }
        cycle_from_vector(self.zv, &self.vectors[index - 1])
    }
}

/// Classify all orderings of a pentagon's difference vector. Requires a
/// full-orbit pentagon whose ten partial differences are distinct (true
/// for any starter of a valid system); every ordering then yields a
/// simple pentagon, the 120 orderings fall into exactly 24 rotation
/// classes, and two representatives generate the same translation orbit
/// iff their canonical vectors are equal.
pub fn pentagon_classes(c: &Cycle) -> Result<PentagonClasses, VariantError> {
    if c.len() != 5 {
        return Err(VariantError::PentagonOnly { k: c.len() });
    }
    let d = oriented_vector(c)?;
    let zv = c.zv();
    let v = zv.modulus();
    for i in 0..5 {
        for j in (i + 1)..5 {
            if d[i] == d[j] || zv.add(d[i], d[j]) == 0 {
                return Err(VariantError::RepeatedDifference);
            }
        }
    }
    let base_vec: [u64; 5] = [d[0], d[1], d[2], d[3], d[4]];
    let mut canon_set = std::collections::BTreeSet::new();
    for perm in permutations_of_five() {
        let w = [d[perm[0]], d[perm[1]], d[perm[2]], d[perm[3]], d[perm[4]]];
        canon_set.insert(lex_least_rotation(&w));
    }
    let vectors: Vec<[u64; 5]> = canon_set.into_iter().collect();
    assert_eq!(
        vectors.len(),
        24,
        "5 distinct differences with no negation pair always split 120 orderings into 24 rotation classes (v={v})"
    );
    let base_key = lex_least_rotation(&base_vec);
    let base = vectors.iter().position(|w| *w == base_key).expect("own class present") + 1;
    Ok(PentagonClasses { zv, vectors, base })
}

/// Replace each full-orbit pentagon starter by the representative of the
/// orientation class `phi` selects for it (1..=24, stored starter order).
/// Re-orientation permutes each starter's differences, so coverage is
/// preserved and the result revalidates; k != 5 is refused outright.
pub fn class_variant(
    ds: &DifferenceSystem,
    phi: &[usize],
) -> Result<DifferenceSystem, VariantError> {
    if ds.k() != 5 {
        return Err(VariantError::PentagonOnly { k: ds.k() });
    }
    let idx = ds.type1_indices();
    if phi.len() != idx.len() {
        return Err(VariantError::ClassLength { expected: idx.len(), got: phi.len() });
    }
    let mut starters: Vec<Cycle> = ds.starters().to_vec();
    for (j, &i) in idx.iter().enumerate() {
        let classes = pentagon_classes(&starters[i])?;
        starters[i] = classes.representative(phi[j])?;
    }
    Ok(DifferenceSystem::new(ds.zv(), ds.k(), starters)?)
}

/// Sign vectors print as '+'/'-' strings, class vectors as comma-separated
/// indices; both forms appear in design-file headers and on the command
/// line.
pub fn parse_sign_vector(s: &str) -> Result<Vec<i8>, VariantError> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(VariantError::BadSignString),
        })
        .collect()
}

pub fn format_sign_vector(sigma: &[i8]) -> String {
    sigma.iter().map(|&s| if s == 1 { '+' } else { '-' }).collect()
}

pub fn parse_class_vector(s: &str) -> Result<Vec<usize>, VariantError> {
    s.split(',')
        .map(|part| part.trim().parse::<usize>().map_err(|_| VariantError::BadClassString))
        .collect()
}

pub fn format_class_vector(phi: &[usize]) -> String {
    phi.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
