//! Equivariant decompositions: trees whose nodes also carry group
//! actions on the piece index sets, with the pointwise compatibility
//! g U_i = U_{g i}, and the lift of a quotient-family tree to an
//! equivariant tree via coset decompositions at the leaves.
//!
//! Child families here keep one member per parent member: the pieces of
//! a member reassemble into a coproduct carrying the same action, with
//! distances between different pieces set to infinity. Leaves therefore
//! certify semi-boundedness rather than boundedness.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{DecompError, DecompTree, FailKind, LeafCert, VerifyReport};
use crate::dist::Dist;
use crate::spaces::{is_r_disjoint, FinSpace, GroupAction};

/// A metric space together with a finite isometry group acting on it.
#[derive(Clone, Debug)]
pub struct EqMember {
    pub space: FinSpace,
    pub action: GroupAction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquivariantTree {
    Node {
        scale: u64,
        splits: Vec<EqSplit>,
        u_child: Box<EquivariantTree>,
        v_child: Box<EquivariantTree>,
    },
    /// Semi-bounded family: every finite distance is < bound.
    Leaf { semi_bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqSplit {
    pub u_pieces: Vec<Vec<usize>>,
    pub v_pieces: Vec<Vec<usize>>,
    /// Per group element (in the action's order), the permutation it
    /// induces on the piece indices: element g maps piece i onto piece
    /// u_index_action[g][i].
    pub u_index_action: Vec<Vec<usize>>,
    pub v_index_action: Vec<Vec<usize>>,
}

/// Verifies an equivariant tree: the usual split/disjointness checks at
/// the node scale, invariance of U and V, the pointwise piece
/// compatibility g U_i = U_{g i}, and recursively the children over the
/// coproduct members; leaves certify semi-boundedness.
pub fn verify_equivariant(
    members: &[EqMember],
    tree: &EquivariantTree,
) -> Result<VerifyReport, DecompError> {
    verify_rec(members, tree, "root")
}

fn verify_rec(
    members: &[EqMember],
    tree: &EquivariantTree,
    path: &str,
) -> Result<VerifyReport, DecompError> {
    match tree {
        EquivariantTree::Leaf { semi_bound } => {
            let mut checks = 0;
            for (m, member) in members.iter().enumerate() {
                let space = &member.space;
                for i in 0..space.len() {
                    for j in 0..i {
                        checks += 1;
                        if let Dist::Fin(d) = space.dist(i, j) {
                            if d >= *semi_bound {
                                return Ok(VerifyReport::fail(
                                    FailKind::LeafBound,
                                    format!(
                                        "{path}: member {m} has finite d({i},{j}) = {d} >= {semi_bound}"
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
        EquivariantTree::Node {
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
            for (m, (split, member)) in splits.iter().zip(members).enumerate() {
                let space = &member.space;
                let order = member.action.order();
                for pieces in [&split.u_pieces, &split.v_pieces] {
                    for piece in pieces {
                        for &pt in piece {
                            if pt >= space.len() {
                                return Err(DecompError::Malformed(format!(
                                    "{path}: member {m} piece references unknown point {pt}"
                                )));
                            }
                        }
                    }
                }
                if split.u_index_action.len() != order || split.v_index_action.len() != order {
                    return Err(DecompError::Malformed(format!(
                        "{path}: member {m} index action must list {order} permutations"
                    )));
                }
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
                // pointwise equivariance: g . piece_i = piece_{g i}
                for (side, pieces, index_action) in [
                    ("U", &split.u_pieces, &split.u_index_action),
                    ("V", &split.v_pieces, &split.v_index_action),
                ] {
                    for (gi, perm) in member.action.perms().iter().enumerate() {
                        let idx_perm = &index_action[gi];
                        if idx_perm.len() != pieces.len() {
                            return Err(DecompError::Malformed(format!(
                                "{path}: member {m} side {side}: index permutation {gi} has wrong length"
                            )));
                        }
                        let mut hit = vec![false; pieces.len()];
                        for &img in idx_perm {
                            if img >= pieces.len() || hit[img] {
                                return Err(DecompError::Malformed(format!(
                                    "{path}: member {m} side {side}: index action {gi} is not a permutation"
                                )));
                            }
                            hit[img] = true;
                        }
                        for (i, piece) in pieces.iter().enumerate() {
                            checks += piece.len();
                            let mut image: Vec<usize> =
                                piece.iter().map(|&pt| perm[pt]).collect();
                            image.sort_unstable();
                            let mut target = pieces[idx_perm[i]].clone();
                            target.sort_unstable();
                            if image != target {
                                return Ok(VerifyReport::fail(
                                    FailKind::Equivariance,
                                    format!(
                                        "{path}: member {m} side {side}: g{gi} maps piece {i} to {image:?}, not onto piece {}",
                                        idx_perm[i]
                                    ),
                                    checks,
                                ));
                            }
                        }
                    }
                }
            }
            for (side, child) in [("U", u_child), ("V", v_child)] {
                let child_members = coproduct_members(members, splits, side)?;
                let report = verify_rec(&child_members, child, &format!("{path}/{side}"))?;
                checks += report.checks;
                if !report.passed() {
                    return Ok(VerifyReport {
                        failure: report.failure,
                        checks,
                    });
                }
            }
            Ok(VerifyReport::pass(checks))
        }
    }
}

/// One child member per parent member: the pieces of the chosen side,
/// glued at infinite mutual distance, with the action carried over.
fn coproduct_members(
    members: &[EqMember],
    splits: &[EqSplit],
    side: &str,
) -> Result<Vec<EqMember>, DecompError> {
    let mut out = Vec::with_capacity(members.len());
    for (member, split) in members.iter().zip(splits) {
        let (pieces, index_action) = if side == "U" {
            (&split.u_pieces, &split.u_index_action)
        } else {
            (&split.v_pieces, &split.v_index_action)
        };
        let mut offsets = Vec::with_capacity(pieces.len());
        let mut total = 0usize;
        for piece in pieces {
            offsets.push(total);
            total += piece.len();
        }
        // coproduct metric
        let mut dist = vec![Dist::Inf; total * total];
        for (pi, piece) in pieces.iter().enumerate() {
            let off = offsets[pi];
            for (a, &x) in piece.iter().enumerate() {
                for (b, &y) in piece.iter().enumerate() {
                    dist[(off + a) * total + (off + b)] = member.space.dist(x, y);
                }
            }
        }
        for i in 0..total {
            dist[i * total + i] = Dist::ZERO;
        }
        let space = FinSpace::new_pseudometric_unchecked(total, dist)?;
        // induced permutations
        let mut perms = Vec::with_capacity(member.action.order());
        for (gi, perm) in member.action.perms().iter().enumerate() {
            let mut induced = vec![0usize; total];
            for (pi, piece) in pieces.iter().enumerate() {
                let target_piece = index_action[gi][pi];
                let target = &pieces[target_piece];
                for (a, &x) in piece.iter().enumerate() {
                    let img = perm[x];
                    let pos = target.iter().position(|&y| y == img).ok_or_else(|| {
                        DecompError::Malformed(format!(
                            "index action inconsistent with point action on piece {pi}"
                        ))
                    })?;
                    induced[offsets[pi] + a] = offsets[target_piece] + pos;
                }
            }
            perms.push(induced);
        }
        let action = GroupAction::new(&space, perms)?;
        out.push(EqMember { space, action });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    /// Largest order of a short-generated subgroup H over all leaves.
    pub k: usize,
    pub leaf_scale: u64,
    /// The chain estimate k * r for the leaf pieces.
    pub chain_bound: u64,
    pub max_leaf_piece_diameter: u64,
}

/// Lifts a decomposition tree of the quotient family {G\X} to an
/// equivariant tree on {(X, G)}. Internal nodes pull pieces back along
/// the projections with the trivial index action; at each bounded base
/// leaf, every member decomposes into the cosets of the subgroup H
/// generated by the elements moving a fundamental set Y within the leaf
/// scale, G permuting the pieces through its coset action. The result
/// is re-verified pointwise before being returned.
pub fn equivariant_lift(
    base: &DecompTree,
    members: &[EqMember],
    projections: &[Vec<usize>],
    leaf_scale: u64,
) -> Result<(EquivariantTree, LiftReport), DecompError> {
    if members.len() != projections.len() {
        return Err(DecompError::Malformed(
            "one projection per member is required".into(),
        ));
    }
    for (member, proj) in members.iter().zip(projections) {
        if proj.len() != member.space.len() {
            return Err(DecompError::Malformed(
                "projection length does not match the member".into(),
            ));
        }
    }
    let mut report = LiftReport {
        k: 0,
        leaf_scale,
        chain_bound: 0,
        max_leaf_piece_diameter: 0,
    };
    // root cursors: the whole member over the whole quotient
    let cursor_groups: Vec<Vec<Cursor>> = members
        .iter()
        .zip(projections)
        .map(|(m, proj)| {
            let q_count = proj.iter().copied().max().map_or(0, |v| v + 1);
            vec![Cursor {
                space: m.space.clone(),
                x_pts: (0..m.space.len()).collect(),
                q_pts: (0..q_count).collect(),
            }]
        })
        .collect();
    let tree = lift_rec(base, members, projections, &cursor_groups, leaf_scale, &mut report)?;
    let check = verify_equivariant(members, &tree)?;
    if !check.passed() {
        return Err(DecompError::Strategy(format!(
            "equivariant lift failed verification: {}",
            check.failure.unwrap().location
        )));
    }
    Ok((tree, report))
}

/// One fragment of the current equivariant member: the preimage of one
/// base-tree member, carrying its own (sub)space aligned with x_pts.
struct Cursor {
    /// Metric on the fragment, indexed like x_pts.
    space: FinSpace,
    /// Original point ids of the member, in fragment order.
    x_pts: Vec<usize>,
    /// Original quotient ids corresponding to the base member's local ids.
    q_pts: Vec<usize>,
}

fn lift_rec(
    base: &DecompTree,
    members: &[EqMember],
    projections: &[Vec<usize>],
    cursor_groups: &[Vec<Cursor>],
    leaf_scale: u64,
    report: &mut LiftReport,
) -> Result<EquivariantTree, DecompError> {
    match base {
        DecompTree::Leaf(LeafCert::Bounded { .. }) => {
            lift_leaf(members, cursor_groups, leaf_scale, report)
        }
        DecompTree::Leaf(LeafCert::SemiBounded { .. }) => Err(DecompError::Strategy(
            "equivariant lifting expects bounded base leaves".into(),
        )),
        DecompTree::Node {
            scale,
            splits,
            u_child,
            v_child,
        } => {
            let mut split_iter = splits.iter();
            let mut out_splits = Vec::with_capacity(members.len());
            let mut u_groups: Vec<Vec<Cursor>> = Vec::with_capacity(members.len());
            let mut v_groups: Vec<Vec<Cursor>> = Vec::with_capacity(members.len());
            for (member_idx, (member, cursors)) in
                members.iter().zip(cursor_groups).enumerate()
            {
                let proj = &projections[member_idx];
                let order = member.action.order();
                // local offsets of cursor fragments inside the current member
                let mut u_pieces: Vec<Vec<usize>> = Vec::new();
                let mut v_pieces: Vec<Vec<usize>> = Vec::new();
                let mut u_cursors: Vec<Cursor> = Vec::new();
                let mut v_cursors: Vec<Cursor> = Vec::new();
                let mut offset = 0usize;
                for cursor in cursors {
                    let split = split_iter.next().ok_or_else(|| {
                        DecompError::Malformed(
                            "base tree does not match the quotient family shape".into(),
                        )
                    })?;
                    for (pieces, out_pieces, out_cursors) in [
                        (&split.u_pieces, &mut u_pieces, &mut u_cursors),
                        (&split.v_pieces, &mut v_pieces, &mut v_cursors),
                    ] {
                        for piece in pieces {
                            let q_orig: Vec<usize> =
                                piece.iter().map(|&l| cursor.q_pts[l]).collect();
                            let q_set: std::collections::HashSet<usize> =
                                q_orig.iter().copied().collect();
                            let mut frag_local = Vec::new(); // indices into cursor.space
                            let mut member_local = Vec::new(); // indices into current member
                            let mut x_orig = Vec::new();
                            for (fl, &orig) in cursor.x_pts.iter().enumerate() {
                                if q_set.contains(&proj[orig]) {
                                    frag_local.push(fl);
                                    member_local.push(offset + fl);
                                    x_orig.push(orig);
                                }
                            }
                            out_pieces.push(member_local);
                            out_cursors.push(Cursor {
                                space: cursor.space.restrict(&frag_local)?,
                                x_pts: x_orig,
                                q_pts: q_orig,
                            });
                        }
                    }
                    offset += cursor.x_pts.len();
                }
                // preimages of quotient pieces are invariant: trivial index action
                let trivial_u: Vec<Vec<usize>> =
                    vec![(0..u_pieces.len()).collect(); order];
                let trivial_v: Vec<Vec<usize>> =
                    vec![(0..v_pieces.len()).collect(); order];
                out_splits.push(EqSplit {
                    u_pieces,
                    v_pieces,
                    u_index_action: trivial_u,
                    v_index_action: trivial_v,
                });
                u_groups.push(u_cursors);
                v_groups.push(v_cursors);
            }
            if split_iter.next().is_some() {
                return Err(DecompError::Malformed(
                    "base tree has more members than the cursor family".into(),
                ));
            }
            let u_tree = lift_rec(u_child, members, projections, &u_groups, leaf_scale, report)?;
            let v_tree = lift_rec(v_child, members, projections, &v_groups, leaf_scale, report)?;
            Ok(EquivariantTree::Node {
                scale: *scale,
                splits: out_splits,
                u_child: Box::new(u_tree),
                v_child: Box::new(v_tree),
            })
        }
    }
}

/// The base case: every fragment X_c with bounded quotient decomposes
/// into the cosets of H = <g : d(Y, gY) <= r>, where Y picks one point
/// per orbit as close to the base point as possible.
fn lift_leaf(
    members: &[EqMember],
    cursor_groups: &[Vec<Cursor>],
    r: u64,
    report: &mut LiftReport,
) -> Result<EquivariantTree, DecompError> {
    let mut out_splits = Vec::with_capacity(members.len());
    for (member, cursors) in members.iter().zip(cursor_groups) {
        let perms = member.action.perms();
        let order = perms.len();
        let perm_index: HashMap<&Vec<usize>, usize> = perms.iter().zip(0..).collect();
        let compose = |a: usize, b: usize| -> usize {
            let comp: Vec<usize> = (0..perms[a].len()).map(|i| perms[a][perms[b][i]]).collect();
            *perm_index.get(&comp).expect("action is closed")
        };
        let mut u_pieces: Vec<Vec<usize>> = Vec::new();
        let mut index_action: Vec<Vec<usize>> = vec![Vec::new(); order];
        let mut offset = 0usize;
        for cursor in cursors {
            let frag_len = cursor.x_pts.len();
            if frag_len == 0 {
                continue;
            }
            let pos_of: HashMap<usize, usize> = cursor
                .x_pts
                .iter()
                .enumerate()
                .map(|(fl, &orig)| (orig, fl))
                .collect();
            // orbits on the fragment, in fragment-local coordinates
            let mut orbit_of: Vec<Option<usize>> = vec![None; frag_len];
            let mut orbits: Vec<Vec<usize>> = Vec::new();
            for fl in 0..frag_len {
                if orbit_of[fl].is_some() {
                    continue;
                }
                let idx = orbits.len();
                let mut orbit = Vec::new();
                for perm in perms {
                    let img_orig = perm[cursor.x_pts[fl]];
                    let img_fl = *pos_of.get(&img_orig).ok_or_else(|| {
                        DecompError::Malformed(
                            "fragment is not invariant under the action".into(),
                        )
                    })?;
                    if orbit_of[img_fl].is_none() {
                        orbit_of[img_fl] = Some(idx);
                        orbit.push(img_fl);
                    }
                }
                orbits.push(orbit);
            }
            // fundamental set Y: one point per orbit, nearest the base point
            let base_pt = 0usize;
            let y: Vec<usize> = orbits
                .iter()
                .map(|orbit| {
                    orbit
                        .iter()
                        .copied()
                        .min_by_key(|&fl| (cursor.space.dist(base_pt, fl), fl))
                        .expect("orbit nonempty")
                })
                .collect();
            // H = <g : d(Y, gY) <= r>
            let apply = |g: usize, fl: usize| -> usize {
                pos_of[&perms[g][cursor.x_pts[fl]]]
            };
            let moves_y_close = |g: usize| -> bool {
                let gy: Vec<usize> = y.iter().map(|&fl| apply(g, fl)).collect();
                let mut best = Dist::Inf;
                for &a in &y {
                    for &b in &gy {
                        best = best.min(cursor.space.dist(a, b));
                    }
                }
                best <= Dist::Fin(r)
            };
            let mut h: Vec<usize> = (0..order).filter(|&g| moves_y_close(g)).collect();
            // close under composition (inverses come along, the set is finite)
            loop {
                let mut added = false;
                let current = h.clone();
                for &a in &current {
                    for &b in &current {
                        let c = compose(a, b);
                        if !h.contains(&c) {
                            h.push(c);
                            added = true;
                        }
                    }
                }
                if !added {
                    break;
                }
            }
            h.sort_unstable();
            // cosets gH over the group
            let mut coset_of: Vec<Option<usize>> = vec![None; order];
            let mut coset_reps: Vec<usize> = Vec::new();
            let mut coset_members: Vec<Vec<usize>> = Vec::new();
            for g in 0..order {
                if coset_of[g].is_some() {
                    continue;
                }
                let idx = coset_reps.len();
                coset_reps.push(g);
                let mut mem = Vec::new();
                for &hh in &h {
                    let gh = compose(g, hh);
                    coset_of[gh] = Some(idx);
                    mem.push(gh);
                }
                coset_members.push(mem);
            }
            // pieces: (gH) Y in member-local coordinates
            let mut frag_pieces: Vec<Vec<usize>> = Vec::new();
            for mem in &coset_members {
                let mut piece: Vec<usize> = Vec::new();
                for &g in mem {
                    for &fl in &y {
                        let img = apply(g, fl);
                        if !piece.contains(&img) {
                            piece.push(img);
                        }
                    }
                }
                piece.sort_unstable();
                if let Dist::Fin(d) = cursor.space.subset_diameter(&piece) {
                    report.max_leaf_piece_diameter = report.max_leaf_piece_diameter.max(d);
                }
                frag_pieces.push(piece.iter().map(|&fl| offset + fl).collect());
            }
            report.k = report.k.max(h.len());
            report.chain_bound = report.k as u64 * r;
            // index action: g'' sends coset gH to (g'' g)H
            let piece_base = u_pieces.len();
            for (g2, row) in index_action.iter_mut().enumerate() {
                for &rep in &coset_reps {
                    let target = coset_of[compose(g2, rep)].expect("cosets cover");
                    row.push(piece_base + target);
                }
            }
            u_pieces.extend(frag_pieces);
            offset += frag_len;
        }
        // empty V side
        let v_index_action: Vec<Vec<usize>> = vec![Vec::new(); order];
        for idx_perm in &index_action {
            debug_assert_eq!(idx_perm.len(), u_pieces.len());
        }
        out_splits.push(EqSplit {
            u_pieces,
            v_pieces: Vec::new(),
            u_index_action: index_action,
            v_index_action,
        });
    }
    let semi_bound = report.max_leaf_piece_diameter + 1;
    Ok(EquivariantTree::Node {
        scale: r,
        splits: out_splits,
        u_child: Box::new(EquivariantTree::Leaf { semi_bound }),
        v_child: Box::new(EquivariantTree::Leaf { semi_bound: 1 }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::MemberSplit;
    use crate::spaces::{grid_space, quotient, GridMetric};

    fn symmetric_window(m: i64) -> (FinSpace, GroupAction) {
        let space = grid_space(&[(-m, m)], GridMetric::L1);
        let n = space.len();
        let flip: Vec<usize> = (0..n).rev().collect();
        let action = GroupAction::new(&space, vec![(0..n).collect(), flip]).unwrap();
        (space, action)
    }

    #[test]
    fn trivial_action_lift_mirrors_base() {
        let space = grid_space(&[(0, 5)], GridMetric::L1);
        let action = GroupAction::trivial(&space);
        let base = DecompTree::Leaf(LeafCert::Bounded { bound: 5 });
        let proj: Vec<usize> = (0..space.len()).collect();
        let members = vec![EqMember {
            space: space.clone(),
            action,
        }];
        let (tree, report) = equivariant_lift(&base, &members, &[proj], 2).unwrap();
        assert!(verify_equivariant(&members, &tree).unwrap().passed());
        assert_eq!(report.k, 1);
    }

    #[test]
    fn z2_reflection_lift_verifies() {
        // Z/2 on the symmetric window [-6, 6], bounded base leaf
        let (space, action) = symmetric_window(6);
        let (_, proj) = quotient(&space, &action).unwrap();
        let base = DecompTree::Leaf(LeafCert::Bounded { bound: 6 });
        let members = vec![EqMember {
            space: space.clone(),
            action,
        }];
        let (tree, report) = equivariant_lift(&base, &members, &[proj], 3).unwrap();
        let check = verify_equivariant(&members, &tree).unwrap();
        assert!(check.passed(), "{:?}", check.failure);
        // the flip moves Y = [-6,0] within distance 0 of itself, so H = G
        // and there is a single coset piece of diameter 12
        assert_eq!(report.k, 2);
        match &tree {
            EquivariantTree::Node { splits, .. } => {
                assert_eq!(splits[0].u_pieces.len(), 1);
            }
            _ => panic!("expected a node"),
        }
    }

    #[test]
    fn non_invariant_split_fails_equivariance() {
        let (space, action) = symmetric_window(2); // points 0..=4 for -2..=2
        let members = vec![EqMember {
            space: space.clone(),
            action,
        }];
        // U = {0,1} (i.e. -2,-1), V = {2,3,4}: the flip does not preserve U
        let split = EqSplit {
            u_pieces: vec![vec![0, 1]],
            v_pieces: vec![vec![2, 3, 4]],
            u_index_action: vec![vec![0], vec![0]],
            v_index_action: vec![vec![0], vec![0]],
        };
        let tree = EquivariantTree::Node {
            scale: 0,
            splits: vec![split],
            u_child: Box::new(EquivariantTree::Leaf { semi_bound: 5 }),
            v_child: Box::new(EquivariantTree::Leaf { semi_bound: 5 }),
        };
        let report = verify_equivariant(&members, &tree).unwrap();
        let failure = report.failure.unwrap();
        assert_eq!(failure.kind, FailKind::Equivariance);
    }

    #[test]
    fn lift_through_internal_node() {
        // base: [-6,6]/flip = [0,6] split into bricks at r=1
        let (space, action) = symmetric_window(6);
        let (qspace, proj) = quotient(&space, &action).unwrap();
        assert_eq!(qspace.len(), 7);
        let base = DecompTree::Node {
            scale: 1,
            splits: vec![MemberSplit {
                u_pieces: vec![vec![0, 1], vec![4, 5]],
                v_pieces: vec![vec![2, 3], vec![6]],
            }],
            u_child: Box::new(DecompTree::Leaf(LeafCert::Bounded { bound: 1 })),
            v_child: Box::new(DecompTree::Leaf(LeafCert::Bounded { bound: 1 })),
        };
        assert!(
            crate::decomp::verify_fdc_subspaces(&[qspace], &base)
                .unwrap()
                .passed()
        );
        let members = vec![EqMember {
            space: space.clone(),
            action,
        }];
        let (tree, _) = equivariant_lift(&base, &members, &[proj], 1).unwrap();
        let check = verify_equivariant(&members, &tree).unwrap();
        assert!(check.passed(), "{:?}", check.failure);
    }
}
