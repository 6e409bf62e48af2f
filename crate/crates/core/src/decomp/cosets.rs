//! Coset decompositions of finite subgroups: the family of finite
//! subgroups of a group window has asymptotic dimension zero at every
//! scale, witnessed by the cosets of the subgroup generated by the
//! short elements.

use std::collections::HashSet;

use serde::Serialize;

use super::{verify_asdim, AsdimCertificate, DecompError, Piece};
use crate::algebra::GroupElement;
use crate::dist::Dist;
use crate::norms::{length, MetricProfile};
use crate::spaces::{space_from_elements, MetricFamily};

#[derive(Clone, Debug, Serialize)]
pub struct CosetInfo {
    pub subgroup_order: usize,
    /// Order of H, the subgroup generated by elements of length <= R.
    pub short_subgroup_order: usize,
    pub coset_count: usize,
    /// Chain estimate |H| * R; every coset diameter stays below it.
    pub chain_bound: u64,
    pub max_coset_diameter: u64,
}

#[derive(Clone, Debug)]
pub struct CosetAsdimResult {
    pub cert: AsdimCertificate,
    /// The subgroups as pseudometric spaces, in input order.
    pub family: MetricFamily,
    pub per_subgroup: Vec<CosetInfo>,
    /// max |H| over the family, the uniform constant of the estimate.
    pub k: usize,
}

/// For each finite subgroup F (given as a closed element list): H is
/// generated by the elements of F with length <= R, and F splits into
/// the left cosets of H. Distinct cosets are more than R apart, because
/// x^{-1}y lands in F and has length <= R exactly when x and y share a
/// coset; and every coset has diameter at most |H| * R, since each
/// element of H is a product of at most |H| generators of length <= R.
/// The result is an n = 0 certificate over the subgroup family.
pub fn finite_subgroup_family_asdim0(
    subgroups: &[Vec<GroupElement>],
    scale: u64,
    profile: &MetricProfile,
) -> Result<CosetAsdimResult, DecompError> {
    if subgroups.is_empty() {
        return Err(DecompError::Malformed("no subgroups supplied".into()));
    }
    let mut members = Vec::with_capacity(subgroups.len());
    let mut covers = Vec::with_capacity(subgroups.len());
    let mut infos = Vec::with_capacity(subgroups.len());
    let mut bound = 0u64;
    let mut k = 0usize;
    for (si, subgroup) in subgroups.iter().enumerate() {
        check_closed(subgroup, si)?;
        let elem_set: HashSet<&GroupElement> = subgroup.iter().collect();
        // H = <elements of length <= R>, closure inside F
        let short: Vec<GroupElement> = subgroup
            .iter()
            .filter(|f| length(f, profile).scalar() <= scale)
            .cloned()
            .collect();
        let mut h: HashSet<GroupElement> = short.iter().cloned().collect();
        let identity = GroupElement::identity(
            subgroup[0].dim(),
            subgroup[0].field(),
        );
        h.insert(identity);
        loop {
            let mut new = Vec::new();
            for a in &h {
                for b in &h {
                    let prod = a.mul(b).map_err(|e| DecompError::Space(e.into()))?;
                    if !h.contains(&prod) {
                        debug_assert!(elem_set.contains(&prod), "closure stays inside F");
                        new.push(prod);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            h.extend(new);
        }
        // left cosets of H partition F
        let mut coset_of: Vec<Option<usize>> = vec![None; subgroup.len()];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for i in 0..subgroup.len() {
            if coset_of[i].is_some() {
                continue;
            }
            let idx = cosets.len();
            let mut pts = vec![i];
            coset_of[i] = Some(idx);
            for j in i + 1..subgroup.len() {
                if coset_of[j].is_some() {
                    continue;
                }
                let rel = subgroup[i]
                    .inverse()
                    .mul(&subgroup[j])
                    .map_err(|e| DecompError::Space(e.into()))?;
                if h.contains(&rel) {
                    coset_of[j] = Some(idx);
                    pts.push(j);
                }
            }
            cosets.push(pts);
        }
        let space = space_from_elements(subgroup, profile)?;
        let max_diam = cosets
            .iter()
            .map(|c| match space.subset_diameter(c) {
                Dist::Fin(d) => d,
                Dist::Inf => unreachable!("group windows have finite distances"),
            })
            .max()
            .unwrap_or(0);
        bound = bound.max(max_diam);
        k = k.max(h.len());
        infos.push(CosetInfo {
            subgroup_order: subgroup.len(),
            short_subgroup_order: h.len(),
            coset_count: cosets.len(),
            chain_bound: h.len() as u64 * scale,
            max_coset_diameter: max_diam,
        });
        covers.push(
            cosets
                .into_iter()
                .map(|points| Piece { color: 0, points })
                .collect(),
        );
        members.push(space);
    }
    let family = MetricFamily::new("finite subgroups", members)
        .map_err(DecompError::Space)?;
    let cert = AsdimCertificate {
        n: 0,
        scale,
        bound,
        covers,
    };
    let report = verify_asdim(&cert, &family)?;
    if let Some(failure) = report.failure {
        return Err(DecompError::Strategy(format!(
            "coset decomposition failed verification: {}",
            failure.location
        )));
    }
    Ok(CosetAsdimResult {
        cert,
        family,
        per_subgroup: infos,
        k,
    })
}

fn check_closed(subgroup: &[GroupElement], index: usize) -> Result<(), DecompError> {
    let set: HashSet<&GroupElement> = subgroup.iter().collect();
    if subgroup.is_empty() {
        return Err(DecompError::Malformed(format!(
            "subgroup {index} is empty"
        )));
    }
    let identity = GroupElement::identity(subgroup[0].dim(), subgroup[0].field());
    if !set.contains(&identity) {
        return Err(DecompError::Malformed(format!(
            "subgroup {index} does not contain the identity"
        )));
    }
    for a in subgroup {
        if !set.contains(&a.inverse()) {
            return Err(DecompError::Malformed(format!(
                "subgroup {index} is not closed under inverses"
            )));
        }
        for b in subgroup {
            let prod = a.mul(b).map_err(|e| DecompError::Space(e.into()))?;
            if !set.contains(&prod) {
                return Err(DecompError::Malformed(format!(
                    "subgroup {index} is not closed under the group operation"
                )));
            }
        }
    }
    Ok(())
}
