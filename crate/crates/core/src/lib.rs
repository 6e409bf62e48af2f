//! fdclab: an exact-arithmetic workbench for the coarse geometry of
//! matrix groups over rational function fields F_p(t).
//!
//! The crate computes discrete norms and length pseudometrics on
//! GL_n(F_p(t)), builds finite windows onto groups and their quotients
//! by finite subgroups, and constructs and independently verifies
//! decomposition certificates: asymptotic-dimension-at-scale covers and
//! finite-decomposition-complexity witness trees. All arithmetic is
//! exact; there is no floating point anywhere in the pipeline.

pub mod algebra;
pub mod config;
pub mod decomp;
mod dist;
pub mod experiments;
pub mod norms;
pub mod report;
pub mod spaces;
pub mod structure;

pub use dist::Dist;
