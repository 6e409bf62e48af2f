//! Group-structural algorithms: factorization of GL_n(F_p(t)) through
//! the triangular subgroup over a valuation ring, simultaneous
//! triangularization of finite unipotent subgroups, and Hirsch ranks of
//! normal series with abelian factors.

mod hirsch;
mod th;
mod triangularize;

pub use hirsch::{hirsch_rank, solvable_bound_probe, FactorPresentation, NormalSeries, ProbeEntry, ProbeReport};
pub use th::{th_factorize, THFactorization};
pub use triangularize::triangularize_unipotent;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructError {
    #[error("element list is not closed under the group operation: {0}")]
    NotClosed(String),
    #[error("element {index} is not unipotent")]
    NotUnipotent { index: usize },
    #[error("no common fixed vector: the family is not simultaneously unipotent")]
    NoCommonFixedVector,
    #[error("relation row {row} has {got} entries but the factor has {expected} generators")]
    RelationWidth {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("series {name} is inconsistent: {msg}")]
    BadSeries { name: String, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
