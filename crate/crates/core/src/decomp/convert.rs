//! Mechanical conversions between certificate forms: asdim covers to
//! decomposition trees, and union structures to trees over their parts.

use serde::Serialize;

use super::{
    verify_asdim, verify_fdc_subspaces, AsdimCertificate, DecompError, DecompTree, LeafCert,
    MemberSplit,
};
use crate::spaces::{FinSpace, MetricFamily};

/// Converts a verified asdim certificate into a decomposition tree:
/// node k splits off the color-k pieces as U (r-disjoint, bounded)
/// against the rest as V. The final node's V side carries the last
/// color's pieces directly, so a dimension-n certificate becomes a tree
/// with max(n, 1) nodes along the V spine, every node at the
/// certificate's scale.
pub fn asdim_to_fdc(
    cert: &AsdimCertificate,
    family: &MetricFamily,
) -> Result<DecompTree, DecompError> {
    let report = verify_asdim(cert, family)?;
    if let Some(failure) = report.failure {
        return Err(DecompError::Unverified(failure.location));
    }
    // current point sets per member, in original ids
    let all_points: Vec<Vec<usize>> = family
        .members()
        .iter()
        .map(|s| (0..s.len()).collect())
        .collect();
    let tree = build_node(cert, 0, &all_points);
    let check = verify_fdc_subspaces(family.members(), &tree)?;
    debug_assert!(check.passed(), "{:?}", check.failure);
    Ok(tree)
}

fn build_node(cert: &AsdimCertificate, k: usize, current: &[Vec<usize>]) -> DecompTree {
    let leaf = || Box::new(DecompTree::Leaf(LeafCert::Bounded { bound: cert.bound }));
    let mut splits = Vec::with_capacity(current.len());
    let mut next_current = Vec::with_capacity(current.len());
    let last = k + 1 >= cert.n.max(1); // final node of the spine
    for (member, points) in current.iter().enumerate() {
        // local index of each original point in this member's subspace
        let local = |pt: usize| points.binary_search(&pt).expect("piece inside current set");
        let color_pieces = |c: usize| -> Vec<Vec<usize>> {
            cert.covers[member]
                .iter()
                .filter(|p| p.color == c)
                .map(|p| {
                    let mut pts: Vec<usize> = p.points.iter().map(|&pt| local(pt)).collect();
                    pts.sort_unstable();
                    pts
                })
                .collect()
        };
        let u_pieces = color_pieces(k);
        let (v_pieces, v_next) = if last {
            if cert.n == 0 {
                (Vec::new(), Vec::new())
            } else {
                (color_pieces(cert.n), Vec::new())
            }
        } else {
            // points covered by any color above k, as one piece
            let mut v_points: Vec<usize> = cert.covers[member]
                .iter()
                .filter(|p| p.color > k)
                .flat_map(|p| p.points.iter().copied())
                .collect();
            v_points.sort_unstable();
            v_points.dedup();
            let v_local: Vec<usize> = v_points.iter().map(|&pt| local(pt)).collect();
            (vec![v_local], v_points)
        };
        splits.push(MemberSplit { u_pieces, v_pieces });
        if !last {
            next_current.push(v_next);
        }
    }
    let v_child = if last {
        leaf()
    } else {
        Box::new(build_node(cert, k + 1, &next_current))
    };
    DecompTree::Node {
        scale: cert.scale,
        splits,
        u_child: leaf(),
        v_child,
    }
}

/// Bookkeeping from a union reduction.
#[derive(Clone, Debug, Serialize)]
pub struct UnionReport {
    /// Largest number of parts over all members; the multiplicity the
    /// reduction introduces.
    pub max_parts: usize,
}

/// Decomposes members expressed as finite unions of parts by peeling
/// one part per level: node k has U = part k (a single piece, no
/// separation needed) and V = the remaining parts. The part strategy
/// supplies trees for the peeled-part families. With a single part per
/// member this is a passthrough to the strategy.
pub fn union_decompose(
    family: &MetricFamily,
    parts: &[Vec<Vec<usize>>],
    scale: u64,
    part_strategy: &dyn Fn(&[FinSpace]) -> Result<DecompTree, DecompError>,
) -> Result<(DecompTree, UnionReport), DecompError> {
    if parts.len() != family.len() {
        return Err(DecompError::Malformed(format!(
            "{} part lists for {} members",
            parts.len(),
            family.len()
        )));
    }
    for (m, (space, member_parts)) in family.members().iter().zip(parts).enumerate() {
        let mut covered = vec![false; space.len()];
        for part in member_parts {
            for &pt in part {
                if pt >= space.len() {
                    return Err(DecompError::Malformed(format!(
                        "member {m}: part references unknown point {pt}"
                    )));
                }
                covered[pt] = true;
            }
        }
        if let Some(pt) = covered.iter().position(|&c| !c) {
            return Err(DecompError::Malformed(format!(
                "member {m}: parts fail to cover point {pt}"
            )));
        }
    }
    let max_parts = parts.iter().map(|p| p.len()).max().unwrap_or(0);
    let report = UnionReport { max_parts };
    if max_parts <= 1 {
        let members: Vec<FinSpace> = family.members().to_vec();
        let tree = part_strategy(&members)?;
        let check = verify_fdc_subspaces(&members, &tree)?;
        if !check.passed() {
            return Err(DecompError::Strategy(format!(
                "part strategy tree failed verification: {}",
                check.failure.unwrap().location
            )));
        }
        return Ok((tree, report));
    }
    let current: Vec<Vec<usize>> = family
        .members()
        .iter()
        .map(|s| (0..s.len()).collect())
        .collect();
    let tree = union_node(family, parts, scale, part_strategy, 0, &current)?;
    let check = verify_fdc_subspaces(family.members(), &tree)?;
    if !check.passed() {
        return Err(DecompError::Strategy(format!(
            "union tree failed verification: {}",
            check.failure.unwrap().location
        )));
    }
    Ok((tree, report))
}

fn union_node(
    family: &MetricFamily,
    parts: &[Vec<Vec<usize>>],
    scale: u64,
    part_strategy: &dyn Fn(&[FinSpace]) -> Result<DecompTree, DecompError>,
    k: usize,
    current: &[Vec<usize>],
) -> Result<DecompTree, DecompError> {
    let max_parts = parts.iter().map(|p| p.len()).max().unwrap_or(0);
    let last = k + 2 >= max_parts;
    let mut splits = Vec::with_capacity(current.len());
    let mut u_members: Vec<FinSpace> = Vec::new();
    let mut v_members_pts: Vec<Vec<usize>> = Vec::new();
    let mut v_last_members: Vec<FinSpace> = Vec::new();
    for (member, points) in current.iter().enumerate() {
        let space = &family.members()[member];
        let local = |pt: usize| points.binary_search(&pt).expect("part inside current set");
        let part_local = |idx: usize| -> Option<Vec<usize>> {
            parts[member].get(idx).map(|part| {
                let mut pts: Vec<usize> = part.iter().map(|&pt| local(pt)).collect();
                pts.sort_unstable();
                pts.dedup();
                pts
            })
        };
        let u_pieces: Vec<Vec<usize>> = part_local(k).into_iter().collect();
        let (v_pieces, v_orig): (Vec<Vec<usize>>, Vec<usize>) = if last {
            (part_local(k + 1).into_iter().collect(), Vec::new())
        } else {
            let mut v_orig: Vec<usize> = parts[member]
                .iter()
                .skip(k + 1)
                .flat_map(|p| p.iter().copied())
                .collect();
            v_orig.sort_unstable();
            v_orig.dedup();
            let v_local: Vec<usize> = v_orig.iter().map(|&pt| local(pt)).collect();
            let pieces = if v_local.is_empty() { Vec::new() } else { vec![v_local] };
            (pieces, v_orig)
        };
        for piece in &u_pieces {
            let orig: Vec<usize> = piece.iter().map(|&i| points[i]).collect();
            u_members.push(space.restrict(&orig)?);
        }
        if last {
            for piece in &v_pieces {
                let orig: Vec<usize> = piece.iter().map(|&i| points[i]).collect();
                v_last_members.push(space.restrict(&orig)?);
            }
        } else {
            v_members_pts.push(v_orig);
        }
        splits.push(MemberSplit { u_pieces, v_pieces });
    }
    let u_child = Box::new(subtree_for(&u_members, part_strategy)?);
    let v_child = if last {
        Box::new(subtree_for(&v_last_members, part_strategy)?)
    } else {
        Box::new(union_node(
            family,
            parts,
            scale,
            part_strategy,
            k + 1,
            &v_members_pts,
        )?)
    };
    Ok(DecompTree::Node {
        scale,
        splits,
        u_child,
        v_child,
    })
}

fn subtree_for(
    members: &[FinSpace],
    part_strategy: &dyn Fn(&[FinSpace]) -> Result<DecompTree, DecompError>,
) -> Result<DecompTree, DecompError> {
    if members.is_empty() {
        return Ok(DecompTree::Leaf(LeafCert::Bounded { bound: 0 }));
    }
    part_strategy(members)
}
