//! Construction and analysis of cyclic k-cycle systems of complete graphs.
//!
//! A (K_v, C_k)-design partitions the edge set of the complete graph on
//! Z_v into k-cycles; it is cyclic when the vertex map x -> x+1 preserves
//! the cycle set. Every such design is generated by a small set of starter
//! cycles whose partial differences tile Z_v - {0}, so the whole pipeline
//! here works on difference systems:
//!
//! * [`skolem`] builds and enumerates the four kinds of Skolem-type
//!   sequences that parameterize the starter constructions.
//! * [`cyclic`] holds residue arithmetic, cycles, partial differences,
//!   orbits, and the validators for difference systems and cycle systems.
//! * [`construct`] turns sequences into concrete difference systems for
//!   v = 6n+3 (k=3), v = 10n+1 and 10n+5 (k=5), and v = 2nk+1 / (2n+1)k
//!   for odd k > 5, with a backtracking fallback that can also certify
//!   nonexistence by exhaustion.
//! * [`variants`] produces families of pairwise-distinct designs from one
//!   system: sign flips of type-1 starters and, for k = 5, the 24
//!   rotation classes of oriented difference vectors.
//! * [`equivalence`] decides multiplier/translation equivalence, runs a
//!   brute-force isomorphism oracle at small v, and computes census lower
//!   bounds on the number of isomorphism classes.
//! * [`bounds`] evaluates the growth-rate inequalities behind those lower
//!   bounds in certified double-double arithmetic and checks every
//!   claimed crossover threshold over a finite window.
//! * [`files`] defines the on-disk formats (sequence files, JSON-lines
//!   design files, census reports) shared with the CLI.

pub mod bounds;
pub mod construct;
pub mod cyclic;
pub mod equivalence;
pub mod files;
pub mod skolem;
pub mod variants;

pub use cyclic::{Cycle, CycleSystem, CoverageReport, DifferenceSystem, Zv};
pub use skolem::{SkolemKind, SkolemSequence};
