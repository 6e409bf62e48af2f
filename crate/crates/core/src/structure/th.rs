//! Factorization g = t * h with t upper triangular carrying uniformizer
//! powers on the diagonal and h integral together with its inverse.
//!
//! The factorization is not unique; this routine realizes one choice by
//! column reduction over the valuation ring: rows are processed bottom
//! up, the minimal-valuation entry (ties: lowest column index) becomes
//! the pivot, a unit column scaling makes it an exact uniformizer
//! power, and integral elementary column operations clear the row to
//! its left. Every right multiplier and its inverse stay integral, so
//! h = (accumulated multiplier)^{-1} lands in the integral subgroup and
//! d(g, t) = 0.

use serde::Serialize;

use super::StructError;
use crate::algebra::{GroupElement, Mat};
use crate::norms::{length_coord, valuation, NormSpec, Val};

/// g = t * h, together with the further split t = d * u into the
/// diagonal uniformizer-power part and a unipotent upper factor.
#[derive(Clone, Debug, Serialize)]
pub struct THFactorization {
    pub g: GroupElement,
    pub t: GroupElement,
    pub h: GroupElement,
    pub d: GroupElement,
    pub u: GroupElement,
    /// Diagonal exponents of d: t_ii = pi^{exponents[i]}.
    pub exponents: Vec<i64>,
}

impl THFactorization {
    /// Re-verifies every invariant exactly: reassembly, triangularity,
    /// exact uniformizer powers on the diagonal, integrality of h and
    /// h^{-1} (hence zero length), and the d * u split.
    pub fn verify(&self, spec: &NormSpec) -> Result<(), String> {
        let n = self.g.dim();
        let field = self.g.field();
        let pi = spec.uniformizer(field);
        let t_mat = self.t.mat();
        let product = self
            .t
            .mul(&self.h)
            .map_err(|e| format!("t*h failed: {e}"))?;
        if product != self.g {
            return Err("g != t * h".into());
        }
        for i in 0..n {
            for j in 0..i {
                if !t_mat.get(i, j).is_zero() {
                    return Err(format!("t has a nonzero entry below the diagonal at ({i},{j})"));
                }
            }
            let expected = pi
                .pow(self.exponents[i])
                .map_err(|e| format!("pi^k failed: {e}"))?;
            if *t_mat.get(i, i) != expected {
                return Err(format!(
                    "diagonal entry {i} of t is {} instead of pi^{}",
                    t_mat.get(i, i),
                    self.exponents[i]
                ));
            }
        }
        for e in self.h.mat().entries().iter().chain(self.h.inv_mat().entries()) {
            if valuation(e, spec) < Val::Finite(0) {
                return Err(format!("h or h^{{-1}} has the non-integral entry {e}"));
            }
        }
        if length_coord(&self.h, spec) != 0 {
            return Err("h does not have length zero".into());
        }
        let du = self.d.mul(&self.u).map_err(|e| format!("d*u failed: {e}"))?;
        if du != self.t {
            return Err("t != d * u".into());
        }
        let u_mat = self.u.mat();
        for i in 0..n {
            if !u_mat.get(i, i).is_one() {
                return Err(format!("u has diagonal entry {} at {i}", u_mat.get(i, i)));
            }
            for j in 0..i {
                if !u_mat.get(i, j).is_zero() {
                    return Err(format!("u is not upper triangular at ({i},{j})"));
                }
            }
        }
        Ok(())
    }
}

/// Iwasawa-style column reduction of an invertible matrix over the
/// valuation ring of the given norm.
pub fn th_factorize(g: &GroupElement, spec: &NormSpec) -> Result<THFactorization, StructError> {
    let n = g.dim();
    let field = g.field();
    let pi = spec.uniformizer(field);
    let pi_inv = pi.inverse()?;
    let mut a = g.mat().clone();
    // accumulated right multiplier k and its inverse; h = k^{-1}
    let mut k_acc = Mat::identity(n, field);
    let mut k_inv = Mat::identity(n, field);
    let swap_cols = |m: &mut Mat, c1: usize, c2: usize| {
        for r in 0..n {
            let tmp = m.get(r, c1).clone();
            m.set(r, c1, m.get(r, c2).clone());
            m.set(r, c2, tmp);
        }
    };
    let swap_rows = |m: &mut Mat, r1: usize, r2: usize| {
        for c in 0..n {
            let tmp = m.get(r1, c).clone();
            m.set(r1, c, m.get(r2, c).clone());
            m.set(r2, c, tmp);
        }
    };
    for i in (0..n).rev() {
        // minimal-valuation pivot among the first i+1 columns of row i
        let mut pivot: Option<(i64, usize)> = None;
        for j in 0..=i {
            if let Val::Finite(v) = valuation(a.get(i, j), spec) {
                if pivot.map_or(true, |(pv, _)| v < pv) {
                    pivot = Some((v, j));
                }
            }
        }
        let Some((val, col)) = pivot else {
            // row i vanishes on the working columns: impossible for invertible g
            return Err(StructError::Algebra(crate::algebra::AlgebraError::Singular));
        };
        if col != i {
            swap_cols(&mut a, col, i);
            swap_cols(&mut k_acc, col, i);
            swap_rows(&mut k_inv, col, i);
        }
        // scale column i by the inverse unit so the pivot is exactly pi^val
        let pivot_entry = a.get(i, i).clone();
        let pi_pow = if val >= 0 {
            pi.pow(val)?
        } else {
            pi_inv.pow(-val)?
        };
        let unit = pivot_entry.mul(&pi_pow.inverse()?);
        debug_assert_eq!(valuation(&unit, spec), Val::Finite(0));
        let unit_inv = unit.inverse()?;
        for r in 0..n {
            a.set(r, i, a.get(r, i).mul(&unit_inv));
            k_acc.set(r, i, k_acc.get(r, i).mul(&unit_inv));
        }
        for c in 0..n {
            k_inv.set(i, c, k_inv.get(i, c).mul(&unit));
        }
        // clear the row left of the pivot with integral column operations
        for j in 0..i {
            let entry = a.get(i, j).clone();
            if entry.is_zero() {
                continue;
            }
            let coeff = entry.mul(&pi_pow.inverse()?);
            debug_assert!(valuation(&coeff, spec) >= Val::Finite(0));
            // col_j -= coeff * col_i; inverse op: row_i += coeff * row_j ... on k_inv
            for r in 0..n {
                let av = a.get(r, j).sub(&coeff.mul(a.get(r, i)));
                a.set(r, j, av);
                let kv = k_acc.get(r, j).sub(&coeff.mul(k_acc.get(r, i)));
                k_acc.set(r, j, kv);
            }
            for c in 0..n {
                let kv = k_inv.get(i, c).add(&coeff.mul(k_inv.get(j, c)));
                k_inv.set(i, c, kv);
            }
        }
    }
    let exponents: Vec<i64> = (0..n)
        .map(|i| match valuation(a.get(i, i), spec) {
            Val::Finite(v) => v,
            Val::Infinite => unreachable!("pivot entries are nonzero"),
        })
        .collect();
    // t = g * k, h = k^{-1}
    let t_inv = k_inv.mul(g.inv_mat())?;
    let t = GroupElement::from_parts(a.clone(), t_inv);
    let h = GroupElement::from_parts(k_inv, k_acc);
    // split t = d * u
    let mut d_mat = Mat::identity(n, field);
    let mut d_inv = Mat::identity(n, field);
    for i in 0..n {
        let e = exponents[i];
        let (p, q) = if e >= 0 {
            (pi.pow(e)?, pi_inv.pow(e)?)
        } else {
            (pi_inv.pow(-e)?, pi.pow(-e)?)
        };
        d_mat.set(i, i, p);
        d_inv.set(i, i, q);
    }
    let u_mat = d_inv.mul(&a)?;
    let u_inv = u_mat.inverse()?;
    let d = GroupElement::from_parts(d_mat, d_inv);
    let u = GroupElement::from_parts(u_mat, u_inv);
    let out = THFactorization {
        g: g.clone(),
        t,
        h,
        d,
        u,
        exponents,
    };
    debug_assert!(out.verify(spec).is_ok(), "{:?}", out.verify(spec));
    Ok(out)
}
