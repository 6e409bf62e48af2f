//! Isometric group actions on finite spaces and quotient constructions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{FinSpace, SpaceError};
use crate::algebra::GroupElement;
use crate::dist::Dist;
use crate::norms::{length, MetricProfile};

/// A finite group acting on a finite space by isometric permutations.
/// Verified at construction: permutations, isometries, identity present,
/// closed under composition (hence under inverses, the group is finite).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupAction {
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(space: &FinSpace, perms: Vec<Vec<usize>>) -> Result<GroupAction, SpaceError> {
        let n = space.len();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for perm in &perms {
            if perm.len() != n {
                return Err(SpaceError::NotPermutation);
            }
            let mut hit = vec![false; n];
            for &img in perm {
                if img >= n || hit[img] {
                    return Err(SpaceError::NotPermutation);
                }
                hit[img] = true;
            }
            for i in 0..n {
                for j in 0..i {
                    if space.dist(perm[i], perm[j]) != space.dist(i, j) {
                        return Err(SpaceError::NotIsometric(i, j));
                    }
                }
            }
            seen.insert(perm.clone());
        }
        let identity: Vec<usize> = (0..n).collect();
        if !seen.contains(&identity) {
            return Err(SpaceError::NotClosed);
        }
        for a in &perms {
            for b in &perms {
                let comp: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                if !seen.contains(&comp) {
                    return Err(SpaceError::NotClosed);
                }
            }
        }
        Ok(GroupAction { perms })
    }

    pub fn trivial(space: &FinSpace) -> GroupAction {
        GroupAction {
            perms: vec![(0..space.len()).collect()],
        }
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    /// Orbit partition: blocks sorted by smallest member.
    pub fn orbits(&self, n: usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit: Vec<usize> = self
                .perms
                .iter()
                .map(|p| p[start])
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            orbit.sort_unstable();
            for &x in &orbit {
                seen[x] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }
}

/// Quotient of a space by a verified isometric action. Points are the
/// orbits (ordered by smallest member); d([x],[y]) is the minimum over
/// orbit pairs, which for a transitive isometry group on each orbit is a
/// pseudometric; the triangle inequality is re-verified anyway.
/// Returns the quotient and the projection point -> orbit index.
pub fn quotient(
    space: &FinSpace,
    action: &GroupAction,
) -> Result<(FinSpace, Vec<usize>), SpaceError> {
    let n = space.len();
    let orbits = action.orbits(n);
    let m = orbits.len();
    let mut proj = vec![0usize; n];
    for (idx, orbit) in orbits.iter().enumerate() {
        for &x in orbit {
            proj[x] = idx;
        }
    }
    let mut dist = vec![Dist::ZERO; m * m];
    for a in 0..m {
        for b in 0..a {
            let d = space.set_distance(&orbits[a], &orbits[b]);
            dist[a * m + b] = d;
            dist[b * m + a] = d;
        }
    }
    let q = FinSpace::new(m, dist)?;
    Ok((q, proj))
}

/// Quotient of a window inside a matrix group by a finite subgroup
/// acting by left multiplication. Orbit membership is decided by
/// y x^{-1} in F, and distances by min over f of l(x^{-1} f y); the
/// subgroup need not map the window into itself.
pub fn quotient_by_subgroup(
    window: &[GroupElement],
    subgroup: &[GroupElement],
    profile: &MetricProfile,
) -> Result<(FinSpace, Vec<usize>), SpaceError> {
    let sub: HashSet<&GroupElement> = subgroup.iter().collect();
    let n = window.len();
    // orbit identification: x ~ y iff y x^{-1} in F
    let mut orbit_of: Vec<Option<usize>> = vec![None; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if orbit_of[i].is_some() {
            continue;
        }
        let idx = orbits.len();
        let mut members = vec![i];
        orbit_of[i] = Some(idx);
        for j in i + 1..n {
            if orbit_of[j].is_some() {
                continue;
            }
            let rel = window[j].mul(&window[i].inverse())?;
            if sub.contains(&rel) {
                orbit_of[j] = Some(idx);
                members.push(j);
            }
        }
        orbits.push(members);
    }
    let m = orbits.len();
    // d(Fx, Fy) = min over f of l(x^{-1} f y)
    let coset_dist = |x: &GroupElement, y: &GroupElement| -> Result<u64, SpaceError> {
        let mut best = u64::MAX;
        for f in subgroup {
            let prod = x.inverse().mul(f)?.mul(y)?;
            best = best.min(length(&prod, profile).scalar());
        }
        Ok(best)
    };
    let mut dist = vec![Dist::ZERO; m * m];
    for a in 0..m {
        for b in 0..a {
            let d = coset_dist(&window[orbits[a][0]], &window[orbits[b][0]])?;
            dist[a * m + b] = Dist::Fin(d);
            dist[b * m + a] = Dist::Fin(d);
        }
    }
    let proj: Vec<usize> = orbit_of.into_iter().map(|o| o.unwrap()).collect();
    let labels = orbits
        .iter()
        .map(|o| format!("[{}]", window[o[0]]))
        .collect();
    let q = FinSpace::new(m, dist)?.with_labels(labels);
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::tests::line_space;
    use crate::spaces::FinSpace;

    #[test]
    fn trivial_action_quotient_is_isometric_copy() {
        let s = line_space(&[0, 1, 5]);
        let action = GroupAction::trivial(&s);
        let (q, proj) = quotient(&s, &action).unwrap();
        assert_eq!(q.len(), 3);
        assert_eq!(proj, vec![0, 1, 2]);
        assert_eq!(q.dist(0, 2), Dist::Fin(5));
    }

    #[test]
    fn reflection_quotient_of_symmetric_interval() {
        // {-2,-1,0,1,2} with |.| metric, x -> -x
        let s = line_space(&[-2, -1, 0, 1, 2]);
        let flip = vec![4, 3, 2, 1, 0];
        let action = GroupAction::new(&s, vec![(0..5).collect(), flip]).unwrap();
        let (q, proj) = quotient(&s, &action).unwrap();
        // orbits {-2,2},{-1,1},{0} -> quotient is {0,1,2} with |.|
        assert_eq!(q.len(), 3);
        assert_eq!(q.dist(1, 2), Dist::Fin(1));
        assert_eq!(q.dist(0, 2), Dist::Fin(2));
        // projection is 1-Lipschitz
        for i in 0..5 {
            for j in 0..5 {
                assert!(q.dist(proj[i], proj[j]) <= s.dist(i, j));
            }
        }
    }

    #[test]
    fn non_isometric_action_rejected() {
        let s = line_space(&[0, 1, 5]);
        // swapping 0 and 2 is not an isometry here
        let bad = vec![2, 1, 0];
        assert!(matches!(
            GroupAction::new(&s, vec![(0..3).collect(), bad]),
            Err(SpaceError::NotIsometric(..))
        ));
    }

    #[test]
    fn unclosed_action_rejected() {
        // 3-cycle without its square on a space where rotation is isometric
        let mut dist = vec![Dist::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    dist[i * 3 + j] = Dist::Fin(1);
                }
            }
        }
        let s = FinSpace::new(3, dist).unwrap();
        let rot = vec![1, 2, 0];
        assert!(matches!(
            GroupAction::new(&s, vec![(0..3).collect(), rot]),
            Err(SpaceError::NotClosed)
        ));
    }
}
