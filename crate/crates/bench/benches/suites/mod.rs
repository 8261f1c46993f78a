pub mod bounds;
pub mod constructions;
pub mod equivalence;
pub mod search;
pub mod sequences;
