//! Certificates and verifiers for asymptotic-dimension-at-scale and
//! finite-decomposition-complexity-at-scale, plus the constructive
//! strategies that produce them: greedy/brick covers, the asdim-to-FDC
//! conversion, fibering over a base decomposition, union reductions,
//! coset decompositions of finite subgroups, and equivariant lifting.
//!
//! Constructors never bypass verification: everything they return has
//! been re-checked by the corresponding verifier. Failure of a
//! constructor is a value, never a negative theorem.

mod bricks;
mod convert;
mod cosets;
mod equivariant;
mod fibering;
mod greedy;
mod serial;
mod verify;

pub use bricks::brick_cover;
pub use convert::{asdim_to_fdc, union_decompose, UnionReport};
pub use cosets::{finite_subgroup_family_asdim0, CosetAsdimResult, CosetInfo};
pub use equivariant::{equivariant_lift, verify_equivariant, EqMember, EqSplit, EquivariantTree, LiftReport};
pub use fibering::{fibering_decompose, ExpansionModulus, FiberingReport};
pub use greedy::{exhaustive_scale_sweep, greedy_asdim, GreedyOptions};
pub use serial::tree_to_dot;
pub use verify::{verify_asdim, verify_fdc, verify_fdc_subspaces};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spaces::SpaceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("input certificate failed verification: {0}")]
    Unverified(String),
    #[error("strategy failed: {0}")]
    Strategy(String),
    #[error("uniform expansiveness violated on the window: {0}")]
    Expansiveness(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Which invariant a verifier found broken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailKind {
    Coverage,
    Disjointness,
    DiameterBound,
    Split,
    LeafBound,
    Equivariance,
}

/// A located counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFailure {
    pub kind: FailKind,
    pub location: String,
}

/// Verification outcome: pass, or the first counterexample found.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub failure: Option<VerifyFailure>,
    pub checks: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub(crate) fn fail(kind: FailKind, location: String, checks: usize) -> VerifyReport {
        VerifyReport {
            failure: Some(VerifyFailure { kind, location }),
            checks,
        }
    }

    pub(crate) fn pass(checks: usize) -> VerifyReport {
        VerifyReport {
            failure: None,
            checks,
        }
    }
}

/// One piece of an asdim cover: a point set tagged with a color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub color: usize,
    pub points: Vec<usize>,
}

/// A witness that a family has asymptotic dimension <= n at scale r:
/// per member, a cover by pieces in colors 0..=n such that same-color
/// pieces are r-disjoint and every piece has diameter <= bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsdimCertificate {
    pub n: usize,
    pub scale: u64,
    pub bound: u64,
    /// One cover per family member.
    pub covers: Vec<Vec<Piece>>,
}

/// A finite witness tree for decomposition complexity at fixed scales.
///
/// At every internal node each member X of the current family splits as
/// X = U u V; both halves carry r-disjoint piece lists, and the two
/// children describe the flattened piece families. Leaves certify that
/// the remaining family is bounded, or semi-bounded (all finite
/// distances below the bound, infinity allowed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompTree {
    Node {
        scale: u64,
        splits: Vec<MemberSplit>,
        u_child: Box<DecompTree>,
        v_child: Box<DecompTree>,
    },
    Leaf(LeafCert),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberSplit {
    pub u_pieces: Vec<Vec<usize>>,
    pub v_pieces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeafCert {
    Bounded { bound: u64 },
    SemiBounded { bound: u64 },
}

impl DecompTree {
    pub fn depth(&self) -> usize {
        match self {
            DecompTree::Leaf(_) => 0,
            DecompTree::Node {
                u_child, v_child, ..
            } => 1 + u_child.depth().max(v_child.depth()),
        }
    }

    /// Scales along the tree, one entry per internal node, preorder.
    pub fn scales(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.collect_scales(&mut out);
        out
    }

    fn collect_scales(&self, out: &mut Vec<u64>) {
        if let DecompTree::Node {
            scale,
            u_child,
            v_child,
            ..
        } = self
        {
            out.push(*scale);
            u_child.collect_scales(out);
            v_child.collect_scales(out);
        }
    }
}
