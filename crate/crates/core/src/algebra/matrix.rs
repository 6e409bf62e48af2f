//! Square matrices over F_p(t) and invertible group elements with
//! cached inverses.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::fp::PrimeField;
use super::ratfunc::RatFunc;
use super::AlgebraError;

/// A square matrix over F_p(t), row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    n: usize,
    entries: Vec<RatFunc>,
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Mat, AlgebraError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::DimensionMismatch);
        }
        let entries: Vec<RatFunc> = rows.into_iter().flatten().collect();
        let p = entries[0].modulus();
        if entries.iter().any(|e| e.modulus() != p) {
            return Err(AlgebraError::DimensionMismatch);
        }
        Ok(Mat { n, entries })
    }

    pub fn identity(n: usize, field: PrimeField) -> Mat {
        let mut entries = vec![RatFunc::zero(field); n * n];
        for i in 0..n {
            entries[i * n + i] = RatFunc::one(field);
        }
        Mat { n, entries }
    }

    pub fn zero(n: usize, field: PrimeField) -> Mat {
        Mat {
            n,
            entries: vec![RatFunc::zero(field); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.entries[0].field()
    }

    pub fn modulus(&self) -> u64 {
        self.entries[0].modulus()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn mul(&self, rhs: &Mat) -> Result<Mat, AlgebraError> {
        if self.n != rhs.n {
            return Err(AlgebraError::DimensionMismatch);
        }
        let n = self.n;
        let field = self.field();
        let mut out = Mat::zero(n, field);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RatFunc::zero(field);
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Mat) -> Result<Mat, AlgebraError> {
        if self.n != rhs.n {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = a.add(b);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat, AlgebraError> {
        if self.n != rhs.n {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = a.sub(b);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.entries.iter().enumerate().all(|(idx, e)| {
            if idx / n == idx % n {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    /// Exact inverse by Gauss-Jordan elimination over F_p(t).
    /// Every intermediate value stays in canonical reduced form, so the
    /// result is exact; a singular input is reported as an error.
    pub fn inverse(&self) -> Result<Mat, AlgebraError> {
        let n = self.n;
        let field = self.field();
        let mut a = self.clone();
        let mut inv = Mat::identity(n, field);
        for col in 0..n {
            // pivot: first row with nonzero entry in this column
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero());
            let Some(pivot) = pivot else {
                return Err(AlgebraError::Singular);
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(pivot, j).clone();
                    a.set(pivot, j, a.get(col, j).clone());
                    a.set(col, j, tmp);
                    let tmp = inv.get(pivot, j).clone();
                    inv.set(pivot, j, inv.get(col, j).clone());
                    inv.set(col, j, tmp);
                }
            }
            let scale = a.get(col, col).inverse().expect("pivot nonzero");
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&scale));
                inv.set(col, j, inv.get(col, j).mul(&scale));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let av = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, av);
                    let iv = inv.get(r, j).sub(&factor.mul(inv.get(col, j)));
                    inv.set(r, j, iv);
                }
            }
        }
        Ok(inv)
    }

    /// Matrix power by repeated multiplication (exponents stay small here).
    pub fn pow(&self, k: usize) -> Result<Mat, AlgebraError> {
        let mut acc = Mat::identity(self.n, self.field());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// An invertible matrix over F_p(t) carrying its exact inverse.
/// Inversion happens once at construction; group operations update the
/// cached inverse without re-inverting.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupElement {
    mat: Mat,
    inv: Mat,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl GroupElement {
    /// Inverts once; rejects singular matrices.
    pub fn try_new(mat: Mat) -> Result<GroupElement, AlgebraError> {
        let inv = mat.inverse()?;
        let g = GroupElement { mat, inv };
        g.debug_check();
        Ok(g)
    }

    /// Wraps a matrix with a known inverse; the product is re-verified
    /// in debug builds.
    pub fn from_parts(mat: Mat, inv: Mat) -> GroupElement {
        let g = GroupElement { mat, inv };
        g.debug_check();
        g
    }

    fn debug_check(&self) {
        debug_assert!(
            self.mat.mul(&self.inv).map(|m| m.is_identity()).unwrap_or(false),
            "mat * inv must be the identity"
        );
    }

    pub fn identity(n: usize, field: PrimeField) -> GroupElement {
        let id = Mat::identity(n, field);
        GroupElement {
            mat: id.clone(),
            inv: id,
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn field(&self) -> PrimeField {
        self.mat.field()
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn inv_mat(&self) -> &Mat {
        &self.inv
    }

    /// Group product; the inverse is (b.inv)(a.inv), no re-inversion.
    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement, AlgebraError> {
        let mat = self.mat.mul(&rhs.mat)?;
        let inv = rhs.inv.mul(&self.inv)?;
        Ok(GroupElement { mat, inv })
    }

    /// O(1): swaps the cached matrices.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    /// True iff (g - I)^n = 0 exactly.
    pub fn is_unipotent(&self) -> bool {
        let n = self.dim();
        let id = Mat::identity(n, self.field());
        let nil = self.mat.sub(&id).expect("same dimension");
        nil.pow(n).expect("same dimension").is_zero()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn t(field: PrimeField) -> RatFunc {
        RatFunc::t(field)
    }

    fn one(field: PrimeField) -> RatFunc {
        RatFunc::one(field)
    }

    fn zero(field: PrimeField) -> RatFunc {
        RatFunc::zero(field)
    }

    fn upper_unipotent(field: PrimeField, x: RatFunc) -> Mat {
        Mat::from_rows(vec![
            vec![one(field), x],
            vec![zero(field), one(field)],
        ])
        .unwrap()
    }

    #[test]
    fn unipotent_inverse() {
        // [[1,t],[0,1]]^{-1} = [[1,-t],[0,1]]
        let f = f3();
        let m = upper_unipotent(f, t(f));
        let inv = m.inverse().unwrap();
        assert_eq!(inv, upper_unipotent(f, t(f).neg()));
    }

    #[test]
    fn diagonal_inverse() {
        // diag(t, 1/t)^{-1} = diag(1/t, t)
        let f = f2();
        let ti = t(f).inverse().unwrap();
        let m = Mat::from_rows(vec![
            vec![t(f), zero(f)],
            vec![zero(f), ti.clone()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        let expected = Mat::from_rows(vec![
            vec![ti, zero(f)],
            vec![zero(f), t(f)],
        ])
        .unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn singular_rejected() {
        let f = f2();
        let m = Mat::from_rows(vec![
            vec![one(f), one(f)],
            vec![one(f), one(f)],
        ])
        .unwrap();
        assert!(matches!(m.inverse(), Err(AlgebraError::Singular)));
        assert!(GroupElement::try_new(m).is_err());
    }

    #[test]
    fn unipotent_square() {
        // [[1,t],[0,1]]^2 = [[1,2t],[0,1]]; identity in char 2
        let f = f3();
        let g = GroupElement::try_new(upper_unipotent(f, t(f))).unwrap();
        let sq = g.mul(&g).unwrap();
        let two_t = t(f).add(&t(f));
        assert_eq!(*sq.mat(), upper_unipotent(f, two_t));

        let f = f2();
        let g = GroupElement::try_new(upper_unipotent(f, t(f))).unwrap();
        assert!(g.mul(&g).unwrap().is_identity());
    }

    #[test]
    fn product_inverse_reassembles() {
        let f = f3();
        let a = GroupElement::try_new(upper_unipotent(f, t(f))).unwrap();
        let swap = Mat::from_rows(vec![
            vec![zero(f), one(f)],
            vec![one(f), zero(f)],
        ])
        .unwrap();
        let b = GroupElement::try_new(swap).unwrap();
        let ab = a.mul(&b).unwrap();
        assert!(ab.inv_mat().mul(ab.mat()).unwrap().is_identity());
        assert!(a.mul(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn unipotent_predicate() {
        let f = f2();
        assert!(GroupElement::try_new(upper_unipotent(f, one(f)))
            .unwrap()
            .is_unipotent());
        // swap matrix over F_2: (g-I)^2 = 0 in char 2
        let swap = Mat::from_rows(vec![
            vec![zero(f), one(f)],
            vec![one(f), zero(f)],
        ])
        .unwrap();
        assert!(GroupElement::try_new(swap).unwrap().is_unipotent());
        // diag(t, 1/t) is not unipotent
        let ti = t(f).inverse().unwrap();
        let d = Mat::from_rows(vec![
            vec![t(f), zero(f)],
            vec![zero(f), ti],
        ])
        .unwrap();
        assert!(!GroupElement::try_new(d).unwrap().is_unipotent());
        let _ = Poly::t(f);
    }
}
