//! Contravariant forms on lowest-weight modules of rational Cherednik
//! algebras for symmetric, cyclic and dihedral groups, with exact
//! unitarity certification at rational parameters.

pub mod cli;
pub mod groups;
pub mod linalg;
pub mod scalars;
pub mod typea;
pub mod unitarity;
pub mod verma;
