//! A workbench for the λμ-calculus with intersection and product types.
//!
//! The crate covers term syntax and reduction, the three-sorted type
//! theories with a subtyping decision procedure, a finite-rank semantic
//! model used as an independent oracle, a derivation checker, a constructive
//! strong-normalisation certifier and the embedding of Parigot's simply
//! typed λμ-calculus.

pub mod cli;
pub mod goldens;
pub mod oracle;
pub mod parigot;
pub mod reduction;
pub mod syntax;
pub mod types;
pub mod typing;
