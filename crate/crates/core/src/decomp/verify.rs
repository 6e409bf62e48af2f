//! Independent verifiers for asdim covers and decomposition trees.
//! These are the ground truth every constructor is checked against.

use super::{
    AsdimCertificate, DecompError, DecompTree, FailKind, LeafCert, VerifyReport,
};
use crate::dist::Dist;
use crate::spaces::{is_r_disjoint, FinSpace, MetricFamily};

/// Checks coverage, per-color r-disjointness and the uniform diameter
/// bound. Malformed certificates (bad member count, unknown points,
/// colors outside 0..=n) are errors; a broken invariant is a report
/// with the first counterexample located.
pub fn verify_asdim(
    cert: &AsdimCertificate,
    family: &MetricFamily,
) -> Result<VerifyReport, DecompError> {
    if cert.covers.len() != family.len() {
        return Err(DecompError::Malformed(format!(
            "certificate covers {} members but the family has {}",
            cert.covers.len(),
            family.len()
        )));
    }
    let mut checks = 0usize;
    for (m, (cover, space)) in cert.covers.iter().zip(family.members()).enumerate() {
        for (pi, piece) in cover.iter().enumerate() {
            if piece.color > cert.n {
                return Err(DecompError::Malformed(format!(
                    "member {m} piece {pi} has color {} > n = {}",
                    piece.color, cert.n
                )));
            }
            for &pt in &piece.points {
                if pt >= space.len() {
                    return Err(DecompError::Malformed(format!(
                        "member {m} piece {pi} references unknown point {pt}"
                    )));
                }
            }
        }
        // coverage
        let mut covered = vec![false; space.len()];
        for piece in cover {
            for &pt in &piece.points {
                covered[pt] = true;
            }
        }
        checks += space.len();
        if let Some(pt) = covered.iter().position(|&c| !c) {
            return Ok(VerifyReport::fail(
                FailKind::Coverage,
                format!("member {m}: point {pt} is not covered by any piece"),
                checks,
            ));
        }
        // within-color strict r-disjointness
        for color in 0..=cert.n {
            let same: Vec<Vec<usize>> = cover
                .iter()
                .filter(|p| p.color == color)
                .map(|p| p.points.clone())
                .collect();
            checks += same.len() * same.len();
            let check = is_r_disjoint(&same, space, cert.scale);
            if let Some((a, b, x, y, d)) = check.violation {
                return Ok(VerifyReport::fail(
                    FailKind::Disjointness,
                    format!(
                        "member {m} color {color}: pieces {a} and {b} have d({x},{y}) = {d} <= r = {}",
                        cert.scale
                    ),
                    checks,
                ));
            }
        }
        // uniform diameter bound
        for (pi, piece) in cover.iter().enumerate() {
            checks += piece.points.len();
            let diam = space.subset_diameter(&piece.points);
            if diam > Dist::Fin(cert.bound) {
                return Ok(VerifyReport::fail(
                    FailKind::DiameterBound,
                    format!(
                        "member {m} piece {pi} (color {}) has diameter {diam} > bound {}",
                        piece.color, cert.bound
                    ),
                    checks,
                ));
            }
        }
    }
    Ok(VerifyReport::pass(checks))
}

/// Verifies a decomposition tree against the family it claims to
/// decompose. Recursive: at each node the split must cover each member,
/// both piece lists must be r-disjoint at the node scale, and the child
/// trees are verified against the families formed by collecting the
/// pieces; leaves certify (semi-)boundedness.
pub fn verify_fdc(family: &MetricFamily, tree: &DecompTree) -> Result<VerifyReport, DecompError> {
    verify_fdc_subspaces(family.members(), tree)
}

/// Same as `verify_fdc`, over a bare member list (children of a node
/// may form an empty family, which a leaf certifies vacuously).
pub fn verify_fdc_subspaces(
    members: &[FinSpace],
    tree: &DecompTree,
) -> Result<VerifyReport, DecompError> {
    verify_rec(members, tree, "root")
}

fn verify_rec(
    members: &[FinSpace],
    tree: &DecompTree,
    path: &str,
) -> Result<VerifyReport, DecompError> {
    match tree {
        DecompTree::Leaf(LeafCert::Bounded { bound }) => {
            let mut checks = 0;
            for (m, space) in members.iter().enumerate() {
                checks += space.len();
                let diam = space.diameter();
                if diam > Dist::Fin(*bound) {
                    return Ok(VerifyReport::fail(
                        FailKind::LeafBound,
                        format!("{path}: member {m} has diameter {diam} > bound {bound}"),
                        checks,
                    ));
                }
            }
            Ok(VerifyReport::pass(checks))
        }
        DecompTree::Leaf(LeafCert::SemiBounded { bound }) => {
            let mut checks = 0;
            for (m, space) in members.iter().enumerate() {
                for i in 0..space.len() {
                    for j in 0..i {
                        checks += 1;
                        if let Dist::Fin(d) = space.dist(i, j) {
                            if d >= *bound {
                                return Ok(VerifyReport::fail(
                                    FailKind::LeafBound,
                                    format!(
                                        "{path}: member {m} has finite d({i},{j}) = {d} >= {bound}"
                                    ),
                                    checks,
                                ));
                            }
                        }
                    }
                }
            }
            Ok(VerifyReport::pass(checks))
        }
        DecompTree::Node {
            scale,
            splits,
            u_child,
            v_child,
        } => {
            if splits.len() != members.len() {
                return Err(DecompError::Malformed(format!(
                    "{path}: node splits {} members but the family has {}",
                    splits.len(),
                    members.len()
                )));
            }
            let mut checks = 0;
            let mut u_members: Vec<FinSpace> = Vec::new();
            let mut v_members: Vec<FinSpace> = Vec::new();
            for (m, (split, space)) in splits.iter().zip(members).enumerate() {
                for piece in split.u_pieces.iter().chain(&split.v_pieces) {
                    for &pt in piece {
                        if pt >= space.len() {
                            return Err(DecompError::Malformed(format!(
                                "{path}: member {m} split references unknown point {pt}"
                            )));
                        }
                    }
                }
                // coverage: U union V = member
                let mut covered = vec![false; space.len()];
                for piece in split.u_pieces.iter().chain(&split.v_pieces) {
                    for &pt in piece {
                        covered[pt] = true;
                    }
                }
                checks += space.len();
                if let Some(pt) = covered.iter().position(|&c| !c) {
                    return Ok(VerifyReport::fail(
                        FailKind::Split,
                        format!("{path}: member {m}: point {pt} lies in neither U nor V"),
                        checks,
                    ));
                }
                for (side, pieces) in [("U", &split.u_pieces), ("V", &split.v_pieces)] {
                    checks += pieces.len() * pieces.len();
                    let check = is_r_disjoint(pieces, space, *scale);
                    if let Some((a, b, x, y, d)) = check.violation {
                        return Ok(VerifyReport::fail(
                            FailKind::Disjointness,
                            format!(
                                "{path}: member {m} side {side}: pieces {a},{b} have d({x},{y}) = {d} <= r = {scale}"
                            ),
                            checks,
                        ));
                    }
                }
                for piece in &split.u_pieces {
                    u_members.push(space.restrict(piece)?);
                }
                for piece in &split.v_pieces {
                    v_members.push(space.restrict(piece)?);
                }
            }
            let u_report = verify_rec(&u_members, u_child, &format!("{path}/U"))?;
            checks += u_report.checks;
            if !u_report.passed() {
                return Ok(VerifyReport {
                    failure: u_report.failure,
                    checks,
                });
            }
            let v_report = verify_rec(&v_members, v_child, &format!("{path}/V"))?;
            checks += v_report.checks;
            if !v_report.passed() {
                return Ok(VerifyReport {
                    failure: v_report.failure,
                    checks,
                });
            }
            Ok(VerifyReport::pass(checks))
        }
    }
}
