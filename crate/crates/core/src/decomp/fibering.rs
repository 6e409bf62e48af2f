//! Pulling a decomposition back along a uniformly expansive family of
//! maps: the base tree decomposes the image family, preimages of its
//! pieces decompose the source at the scale the expansion modulus
//! allows, and a fiber strategy finishes off the preimages of the
//! bounded leaves.

use std::collections::HashSet;

use serde::Serialize;

use super::{
    verify_fdc_subspaces, DecompError, DecompTree, LeafCert, MemberSplit,
};
use crate::dist::Dist;
use crate::spaces::FinSpace;

/// The empirical expansion modulus of a family of maps: for every
/// observed source distance s, the largest image distance over pairs at
/// source distance <= s. Monotone by construction. Beyond the largest
/// observed source distance the modulus is unknown (treated as
/// unbounded), so certified scales never exceed the window.
#[derive(Clone, Debug, Serialize)]
pub struct ExpansionModulus {
    /// (source distance, max image distance at or below it), ascending.
    steps: Vec<(u64, u64)>,
}

impl ExpansionModulus {
    pub fn from_data(
        x_members: &[FinSpace],
        y_members: &[FinSpace],
        maps: &[Vec<usize>],
    ) -> Result<ExpansionModulus, DecompError> {
        let mut raw: Vec<(u64, u64)> = Vec::new();
        for ((x, y), map) in x_members.iter().zip(y_members).zip(maps) {
            for i in 0..x.len() {
                for j in 0..i {
                    match (x.dist(i, j), y.dist(map[i], map[j])) {
                        (Dist::Fin(dx), Dist::Fin(dy)) => raw.push((dx, dy)),
                        (Dist::Fin(dx), Dist::Inf) => {
                            return Err(DecompError::Expansiveness(format!(
                                "points {j},{i} at finite distance {dx} map to distance INF"
                            )));
                        }
                        (Dist::Inf, _) => {}
                    }
                }
            }
        }
        raw.sort_unstable();
        let mut steps: Vec<(u64, u64)> = Vec::new();
        let mut cummax = 0u64;
        for (dx, dy) in raw {
            cummax = cummax.max(dy);
            match steps.last_mut() {
                Some((last_dx, last_dy)) if *last_dx == dx => *last_dy = cummax,
                _ => steps.push((dx, cummax)),
            }
        }
        Ok(ExpansionModulus { steps })
    }

    /// rho(r): the largest image distance over pairs at source distance
    /// <= r; None when r exceeds every observed source distance.
    pub fn rho(&self, r: u64) -> Option<u64> {
        if self.steps.last().map_or(true, |&(dx, _)| r > dx) {
            return None;
        }
        let mut best = 0u64;
        for &(dx, dy) in &self.steps {
            if dx > r {
                break;
            }
            best = dy;
        }
        Some(best)
    }

    /// The largest source scale r whose rho stays within the image
    /// scale s. Conservative: capped by the largest observed source
    /// distance; 0 when even distance-0 pairs expand past s.
    pub fn max_scale_for(&self, s: u64) -> u64 {
        let mut best = 0u64;
        for &(dx, dy) in &self.steps {
            if dy <= s {
                best = dx;
            } else {
                return if dx == 0 { 0 } else { best.min(dx - 1) };
            }
        }
        best
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberingReport {
    pub modulus: ExpansionModulus,
    /// (base node scale, pulled-back scale), preorder over base nodes.
    pub scale_map: Vec<(u64, u64)>,
    pub leaf_fibers: usize,
}

/// Pulls `base_tree` (a verified tree for the image family) back along
/// the maps. Internal nodes become preimage splits at the scale the
/// modulus certifies; at each base leaf the fiber strategy must produce
/// a tree for the family of leaf-member preimages. The assembled tree
/// is re-verified against the source family before being returned.
pub fn fibering_decompose(
    x_members: &[FinSpace],
    y_members: &[FinSpace],
    maps: &[Vec<usize>],
    base_tree: &DecompTree,
    fiber_strategy: &dyn Fn(&[FinSpace]) -> Result<DecompTree, DecompError>,
) -> Result<(DecompTree, FiberingReport), DecompError> {
    if x_members.len() != y_members.len() || maps.len() != x_members.len() {
        return Err(DecompError::Malformed(
            "source family, image family and map family must have equal length".into(),
        ));
    }
    for ((x, y), map) in x_members.iter().zip(y_members).zip(maps) {
        if map.len() != x.len() || map.iter().any(|&img| img >= y.len()) {
            return Err(DecompError::Malformed(
                "point map does not match member sizes".into(),
            ));
        }
    }
    let base_check = verify_fdc_subspaces(y_members, base_tree)?;
    if !base_check.passed() {
        return Err(DecompError::Unverified(format!(
            "base tree: {}",
            base_check.failure.unwrap().location
        )));
    }
    let modulus = ExpansionModulus::from_data(x_members, y_members, maps)?;
    let cursors: Vec<Cursor> = (0..x_members.len())
        .map(|m| Cursor {
            member: m,
            x_pts: (0..x_members[m].len()).collect(),
            y_pts: (0..y_members[m].len()).collect(),
        })
        .collect();
    let mut report = FiberingReport {
        modulus: modulus.clone(),
        scale_map: Vec::new(),
        leaf_fibers: 0,
    };
    let tree = pull_back(
        x_members,
        maps,
        base_tree,
        &modulus,
        &cursors,
        fiber_strategy,
        &mut report,
    )?;
    let check = verify_fdc_subspaces(x_members, &tree)?;
    if !check.passed() {
        return Err(DecompError::Strategy(format!(
            "pulled-back tree failed verification: {}",
            check.failure.unwrap().location
        )));
    }
    Ok((tree, report))
}

struct Cursor {
    member: usize,
    /// current subset of the source member, original ids, sorted
    x_pts: Vec<usize>,
    /// current subset of the image member, original ids, sorted by the
    /// base tree's local order
    y_pts: Vec<usize>,
}

fn pull_back(
    x_members: &[FinSpace],
    maps: &[Vec<usize>],
    base: &DecompTree,
    modulus: &ExpansionModulus,
    cursors: &[Cursor],
    fiber_strategy: &dyn Fn(&[FinSpace]) -> Result<DecompTree, DecompError>,
    report: &mut FiberingReport,
) -> Result<DecompTree, DecompError> {
    match base {
        DecompTree::Leaf(_) => {
            let members: Vec<FinSpace> = cursors
                .iter()
                .map(|c| x_members[c.member].restrict(&c.x_pts))
                .collect::<Result<_, _>>()?;
            report.leaf_fibers += members.len();
            if members.is_empty() {
                return Ok(DecompTree::Leaf(LeafCert::Bounded { bound: 0 }));
            }
            let tree = fiber_strategy(&members)?;
            let check = verify_fdc_subspaces(&members, &tree)?;
            if !check.passed() {
                return Err(DecompError::Strategy(format!(
                    "fiber strategy tree failed verification: {}",
                    check.failure.unwrap().location
                )));
            }
            Ok(tree)
        }
        DecompTree::Node {
            scale,
            splits,
            u_child,
            v_child,
        } => {
            if splits.len() != cursors.len() {
                return Err(DecompError::Malformed(
                    "base tree does not match the image family shape".into(),
                ));
            }
            let out_scale = modulus.max_scale_for(*scale);
            report.scale_map.push((*scale, out_scale));
            let mut out_splits = Vec::with_capacity(cursors.len());
            let mut u_cursors = Vec::new();
            let mut v_cursors = Vec::new();
            for (cursor, split) in cursors.iter().zip(splits) {
                let map = &maps[cursor.member];
                let preimage = |piece: &Vec<usize>| -> (Vec<usize>, Vec<usize>, Vec<usize>) {
                    // piece holds y-local ids; translate to original ids
                    let y_orig: Vec<usize> = piece.iter().map(|&l| cursor.y_pts[l]).collect();
                    let y_set: HashSet<usize> = y_orig.iter().copied().collect();
                    let mut x_local = Vec::new();
                    let mut x_orig = Vec::new();
                    for (local, &orig) in cursor.x_pts.iter().enumerate() {
                        if y_set.contains(&map[orig]) {
                            x_local.push(local);
                            x_orig.push(orig);
                        }
                    }
                    (x_local, x_orig, y_orig)
                };
                let mut u_pieces = Vec::new();
                for piece in &split.u_pieces {
                    let (x_local, x_orig, y_orig) = preimage(piece);
                    u_cursors.push(Cursor {
                        member: cursor.member,
                        x_pts: x_orig,
                        y_pts: y_orig,
                    });
                    u_pieces.push(x_local);
                }
                let mut v_pieces = Vec::new();
                for piece in &split.v_pieces {
                    let (x_local, x_orig, y_orig) = preimage(piece);
                    v_cursors.push(Cursor {
                        member: cursor.member,
                        x_pts: x_orig,
                        y_pts: y_orig,
                    });
                    v_pieces.push(x_local);
                }
                out_splits.push(MemberSplit { u_pieces, v_pieces });
            }
            let u_tree = pull_back(
                x_members,
                maps,
                u_child,
                modulus,
                &u_cursors,
                fiber_strategy,
                report,
            )?;
            let v_tree = pull_back(
                x_members,
                maps,
                v_child,
                modulus,
                &v_cursors,
                fiber_strategy,
                report,
            )?;
            Ok(DecompTree::Node {
                scale: out_scale,
                splits: out_splits,
                u_child: Box::new(u_tree),
                v_child: Box::new(v_tree),
            })
        }
    }
}
