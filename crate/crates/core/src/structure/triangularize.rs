//! Simultaneous triangularization of finite unipotent subgroups by
//! common-fixed-vector recursion: a unipotent family closed under
//! products has a common eigenvector with eigenvalue 1; quotienting by
//! it and recursing builds a basis in which every element is strictly
//! upper unitriangular.

use super::StructError;
use crate::algebra::{GroupElement, Mat, PrimeField, RatFunc};

/// Returns P with P^{-1} f P upper unitriangular for every f in the
/// (checked) closed list. Fails if some element is not unipotent.
pub fn triangularize_unipotent(
    subgroup: &[GroupElement],
) -> Result<GroupElement, StructError> {
    if subgroup.is_empty() {
        return Err(StructError::NotClosed("empty element list".into()));
    }
    let n = subgroup[0].dim();
    let field = subgroup[0].field();
    check_closed(subgroup)?;
    for (index, f) in subgroup.iter().enumerate() {
        if !f.is_unipotent() {
            return Err(StructError::NotUnipotent { index });
        }
    }
    let mats: Vec<Mat> = subgroup.iter().map(|f| f.mat().clone()).collect();
    let p_cols = triangularize_mats(&mats, n, field)?;
    let p_mat = mat_from_cols(&p_cols, field);
    let p = GroupElement::try_new(p_mat)?;
    // exact re-verification
    for f in subgroup {
        let conj = p.inverse().mul(f)?.mul(&p)?;
        let m = conj.mat();
        for i in 0..n {
            if !m.get(i, i).is_one() {
                return Err(StructError::NoCommonFixedVector);
            }
            for j in 0..i {
                if !m.get(i, j).is_zero() {
                    return Err(StructError::NoCommonFixedVector);
                }
            }
        }
    }
    Ok(p)
}

/// Recursive step on a family of dim x dim matrices; returns the full
/// basis (as columns) realizing the flag of common fixed subspaces.
fn triangularize_mats(
    mats: &[Mat],
    dim: usize,
    field: PrimeField,
) -> Result<Vec<Vec<RatFunc>>, StructError> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    // rows of (f - I) for all f, stacked
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    for m in mats {
        for i in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let mut e = m.get(i, j).clone();
                if i == j {
                    e = e.sub(&RatFunc::one(field));
                }
                row.push(e);
            }
            if row.iter().any(|e| !e.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        // every matrix is the identity: any basis works
        let mut cols = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut col = vec![RatFunc::zero(field); dim];
            col[i] = RatFunc::one(field);
            cols.push(col);
        }
        return Ok(cols);
    }
    let fixed = kernel_basis(&rows, dim, field);
    if fixed.is_empty() {
        return Err(StructError::NoCommonFixedVector);
    }
    let k = fixed.len();
    // extend the fixed-space basis to a basis of the whole space
    let mut basis = fixed.clone();
    for i in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut cand = vec![RatFunc::zero(field); dim];
        cand[i] = RatFunc::one(field);
        if extends_independently(&basis, &cand) {
            basis.push(cand);
        }
    }
    debug_assert_eq!(basis.len(), dim);
    let p0 = mat_from_cols(&basis, field);
    let p0_inv = p0.inverse().map_err(StructError::Algebra)?;
    // induced maps on the quotient: lower-right blocks of P0^{-1} f P0
    let mut quotient_mats = Vec::with_capacity(mats.len());
    for m in mats {
        let conj = p0_inv.mul(m).map_err(StructError::Algebra)?;
        let conj = conj.mul(&p0).map_err(StructError::Algebra)?;
        let mut block = Mat::zero(dim - k, field);
        for i in k..dim {
            for j in k..dim {
                block.set(i - k, j - k, conj.get(i, j).clone());
            }
        }
        quotient_mats.push(block);
    }
    let q_cols = triangularize_mats(&quotient_mats, dim - k, field)?;
    // assemble: P = P0 * [[I_k, 0], [0, Q]]; columns of the product are
    // the fixed basis followed by P0 applied to the lifted Q columns
    let mut cols = basis[..k].to_vec();
    for q_col in &q_cols {
        let mut lifted = vec![RatFunc::zero(field); k];
        lifted.extend_from_slice(q_col);
        cols.push(apply_mat(&p0, &lifted, field));
    }
    Ok(cols)
}

fn mat_from_cols(cols: &[Vec<RatFunc>], field: PrimeField) -> Mat {
    let n = cols.len();
    let mut m = Mat::zero(n, field);
    for (j, col) in cols.iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            m.set(i, j, e.clone());
        }
    }
    m
}

fn apply_mat(m: &Mat, v: &[RatFunc], field: PrimeField) -> Vec<RatFunc> {
    let n = m.dim();
    let mut out = vec![RatFunc::zero(field); n];
    for i in 0..n {
        let mut acc = RatFunc::zero(field);
        for j in 0..n {
            if !v[j].is_zero() && !m.get(i, j).is_zero() {
                acc = acc.add(&m.get(i, j).mul(&v[j]));
            }
        }
        out[i] = acc;
    }
    out
}

/// Kernel of the stacked rows, by reduced row echelon form over F_p(t).
fn kernel_basis(rows: &[Vec<RatFunc>], dim: usize, field: PrimeField) -> Vec<Vec<RatFunc>> {
    let mut m: Vec<Vec<RatFunc>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..dim {
        let Some(pivot_row) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let inv = m[rank][col].inverse().expect("pivot nonzero");
        for c in 0..dim {
            m[rank][c] = m[rank][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..dim {
                    let v = m[r][c].sub(&factor.mul(&m[rank][c]));
                    m[r][c] = v;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![RatFunc::zero(field); dim];
        v[fc] = RatFunc::one(field);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][fc].neg();
        }
        basis.push(v);
    }
    basis
}

fn extends_independently(basis: &[Vec<RatFunc>], cand: &[RatFunc]) -> bool {
    let dim = cand.len();
    let mut rows: Vec<Vec<RatFunc>> = basis.to_vec();
    rows.push(cand.to_vec());
    // rank via elimination
    let mut rank = 0usize;
    for col in 0..dim {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inverse().expect("pivot nonzero");
        for c in 0..dim {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in rank + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..dim {
                    let v = rows[r][c].sub(&factor.mul(&rows[rank][c]));
                    rows[r][c] = v;
                }
            }
        }
        rank += 1;
    }
    rank == rows.len()
}

fn check_closed(subgroup: &[GroupElement]) -> Result<(), StructError> {
    let set: std::collections::HashSet<&GroupElement> = subgroup.iter().collect();
    let identity = GroupElement::identity(subgroup[0].dim(), subgroup[0].field());
    if !set.contains(&identity) {
        return Err(StructError::NotClosed("missing identity".into()));
    }
    for a in subgroup {
        if !set.contains(&a.inverse()) {
            return Err(StructError::NotClosed(format!("missing inverse of {a}")));
        }
        for b in subgroup {
            let prod = a.mul(b)?;
            if !set.contains(&prod) {
                return Err(StructError::NotClosed(format!(
                    "missing product {a} * {b}"
                )));
            }
        }
    }
    Ok(())
}
