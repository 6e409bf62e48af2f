//! Finite windows onto infinite groups and lattices.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::{FinSpace, SpaceError};
use crate::algebra::GroupElement;
use crate::dist::Dist;
use crate::norms::{length, pseudometric, MetricProfile};

/// A word-metric ball in a matrix group together with its element table
/// and the pseudometric space evaluated on it.
#[derive(Clone, Debug)]
pub struct BallWindow {
    pub elements: Vec<GroupElement>,
    /// Word radius at which each element was first reached.
    pub word_radius: Vec<u32>,
    pub space: FinSpace,
}

/// BFS over the generating set (inverses added automatically) to the
/// given word radius, deduplicating through canonical forms. Points are
/// ordered by discovery; distances come from the profile pseudometric.
pub fn ball_space(
    gens: &[GroupElement],
    radius: u32,
    profile: &MetricProfile,
    cap: usize,
) -> Result<BallWindow, SpaceError> {
    let first = gens.first().ok_or_else(|| {
        SpaceError::Precondition("ball_space needs at least one generator".into())
    })?;
    let n = first.dim();
    let field = first.field();
    let mut moves: Vec<GroupElement> = Vec::new();
    for g in gens {
        if g.dim() != n {
            return Err(SpaceError::Algebra(crate::algebra::AlgebraError::DimensionMismatch));
        }
        if !moves.contains(g) {
            moves.push(g.clone());
        }
        let gi = g.inverse();
        if !moves.contains(&gi) {
            moves.push(gi);
        }
    }
    let identity = GroupElement::identity(n, field);
    let mut index: HashMap<GroupElement, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut word_radius = vec![0u32];
    index.insert(identity, 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(cur) = queue.pop_front() {
        let depth = word_radius[cur];
        if depth == radius {
            continue;
        }
        let base = elements[cur].clone();
        for mv in &moves {
            let next = base.mul(mv)?;
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(SpaceError::CapExceeded {
                    size: elements.len() + 1,
                    cap,
                });
            }
            let id = elements.len();
            index.insert(next.clone(), id);
            elements.push(next);
            word_radius.push(depth + 1);
            queue.push_back(id);
        }
    }
    let space = space_from_elements(&elements, profile)?;
    Ok(BallWindow {
        elements,
        word_radius,
        space,
    })
}

/// Evaluates the profile pseudometric pairwise on an element table.
/// Subadditivity of the length function guarantees the triangle
/// inequality, so only the cheap checks re-run here.
pub fn space_from_elements(
    elements: &[GroupElement],
    profile: &MetricProfile,
) -> Result<FinSpace, SpaceError> {
    let n = elements.len();
    let rows: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let gi_inv = elements[i].inverse();
            (0..n)
                .map(|j| {
                    let diff = gi_inv.mul(&elements[j]).expect("same dimension");
                    length(&diff, profile).scalar()
                })
                .collect()
        })
        .collect();
    let mut dist = vec![Dist::ZERO; n * n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            dist[i * n + j] = Dist::Fin(d);
        }
    }
    let labels = elements.iter().map(|e| e.to_string()).collect();
    Ok(FinSpace::new_pseudometric_unchecked(n, dist)?.with_labels(labels))
}

/// Closure of an element list under the group operation, by BFS over
/// products. Fails (None) if the closure exceeds the cap.
pub fn generate_subgroup(gens: &[GroupElement], cap: usize) -> Option<Vec<GroupElement>> {
    let first = gens.first()?;
    let identity = GroupElement::identity(first.dim(), first.field());
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut out = vec![identity.clone()];
    seen.insert(identity);
    let mut frontier = vec![0usize];
    let mut moves = gens.to_vec();
    for g in gens {
        moves.push(g.inverse());
    }
    while let Some(cur) = frontier.pop() {
        let base = out[cur].clone();
        for mv in &moves {
            let next = base.mul(mv).ok()?;
            if seen.insert(next.clone()) {
                if out.len() >= cap {
                    return None;
                }
                out.push(next);
                frontier.push(out.len() - 1);
            }
        }
    }
    Some(out)
}

/// Saturates a window under left multiplication by a finite subgroup:
/// the result contains f*x for every f in the subgroup and x in the
/// window, so the subgroup acts on it by permutations.
pub fn saturate_window(
    window: &[GroupElement],
    subgroup: &[GroupElement],
) -> Result<Vec<GroupElement>, SpaceError> {
    let mut seen: HashSet<GroupElement> = window.iter().cloned().collect();
    let mut out = window.to_vec();
    for f in subgroup {
        for x in window {
            let y = f.mul(x)?;
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// The permutation action of a subgroup on a saturated window.
pub fn left_mult_action(
    window: &[GroupElement],
    subgroup: &[GroupElement],
    space: &FinSpace,
) -> Result<super::GroupAction, SpaceError> {
    let index: HashMap<&GroupElement, usize> = window.iter().zip(0..).collect();
    let mut perms = Vec::with_capacity(subgroup.len());
    for f in subgroup {
        let mut perm = Vec::with_capacity(window.len());
        for x in window {
            let y = f.mul(x)?;
            let &idx = index.get(&y).ok_or_else(|| {
                SpaceError::Precondition(format!(
                    "window is not closed under left multiplication by {f}"
                ))
            })?;
            perm.push(idx);
        }
        perms.push(perm);
    }
    super::GroupAction::new(space, perms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GridMetric {
    L1,
    LInf,
}

/// A window onto Z^d: the integer box given by inclusive ranges, with
/// the chosen lattice metric. Grid coordinates are attached to the
/// space so brick covers can use them.
pub fn grid_space(ranges: &[(i64, i64)], metric: GridMetric) -> FinSpace {
    assert!(!ranges.is_empty());
    let mut coords: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in ranges {
        assert!(lo <= hi, "empty range");
        let mut next = Vec::new();
        for c in &coords {
            for v in lo..=hi {
                let mut c2 = c.clone();
                c2.push(v);
                next.push(c2);
            }
        }
        coords = next;
    }
    let n = coords.len();
    let mut dist = vec![Dist::ZERO; n * n];
    for i in 0..n {
        for j in 0..i {
            let d = match metric {
                GridMetric::L1 => coords[i]
                    .iter()
                    .zip(&coords[j])
                    .map(|(a, b)| a.abs_diff(*b))
                    .sum::<u64>(),
                GridMetric::LInf => coords[i]
                    .iter()
                    .zip(&coords[j])
                    .map(|(a, b)| a.abs_diff(*b))
                    .max()
                    .unwrap_or(0),
            };
            dist[i * n + j] = Dist::Fin(d);
            dist[j * n + i] = Dist::Fin(d);
        }
    }
    FinSpace::new_pseudometric_unchecked(n, dist)
        .expect("grid matrix is symmetric with zero diagonal")
        .with_coords(coords)
}

/// Report of the conjugation-isometry verification.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugationReport {
    pub pairs_checked: usize,
    pub right_translation_isometric: bool,
    pub quotient_distances_match: bool,
    pub first_mismatch: Option<String>,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        self.right_translation_isometric && self.quotient_distances_match
    }
}

/// For g of length zero, conjugation by g is an isometry and induces an
/// isometry of quotients by F and by g^{-1} F g. Checks both statements
/// exhaustively on the window: d(x,y) = d(xg, yg) for all pairs, and
/// min_f l(x^{-1} f y) = min_f l((g^{-1}xg)^{-1} g^{-1}fg (g^{-1}yg)).
pub fn conjugation_isometry_check(
    window: &[GroupElement],
    g: &GroupElement,
    subgroup: &[GroupElement],
    profile: &MetricProfile,
) -> Result<ConjugationReport, SpaceError> {
    if !length(g, profile).is_zero() {
        return Err(SpaceError::Precondition(format!(
            "conjugation element must have length 0, got {}",
            length(g, profile).scalar()
        )));
    }
    let mut pairs = 0usize;
    let mut right_ok = true;
    let mut quot_ok = true;
    let mut mismatch = None;
    let coset_dist = |x: &GroupElement,
                      y: &GroupElement,
                      sub: &[GroupElement]|
     -> Result<u64, SpaceError> {
        let mut best = u64::MAX;
        for f in sub {
            let prod = x.inverse().mul(f)?.mul(y)?;
            best = best.min(length(&prod, profile).scalar());
        }
        Ok(best)
    };
    let g_inv = g.inverse();
    let conj =
        |x: &GroupElement| -> Result<GroupElement, SpaceError> { Ok(g_inv.mul(x)?.mul(g)?) };
    let conj_sub: Vec<GroupElement> = subgroup
        .iter()
        .map(|f| conj(f))
        .collect::<Result<_, _>>()?;
    for (i, x) in window.iter().enumerate() {
        for y in &window[..i] {
            pairs += 1;
            let d = pseudometric(x, y, profile)?;
            let d_right = pseudometric(&x.mul(g)?, &y.mul(g)?, profile)?;
            if d != d_right && right_ok {
                right_ok = false;
                mismatch.get_or_insert(format!(
                    "right translation: d({x},{y})={d} but d(xg,yg)={d_right}"
                ));
            }
            let dq = coset_dist(x, y, subgroup)?;
            let dq_conj = coset_dist(&conj(x)?, &conj(y)?, &conj_sub)?;
            if dq != dq_conj && quot_ok {
                quot_ok = false;
                mismatch.get_or_insert(format!(
                    "quotient: d(Fx,Fy)={dq} but conjugated quotient gives {dq_conj}"
                ));
            }
        }
    }
    Ok(ConjugationReport {
        pairs_checked: pairs,
        right_translation_isometric: right_ok,
        quotient_distances_match: quot_ok,
        first_mismatch: mismatch,
    })
}
