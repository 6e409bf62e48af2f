//! Dense polynomials over F_p in the variable t, lowest degree first.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::fp::{PrimeField, PrimeFieldElem};
use super::AlgebraError;

/// A polynomial in F_p[t]. The zero polynomial has an empty coefficient
/// vector; otherwise the leading (last) coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(field: PrimeField) -> Poly {
        Poly {
            p: field.modulus(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: PrimeFieldElem) -> Poly {
        let mut poly = Poly {
            p: c.modulus(),
            coeffs: vec![c.value()],
        };
        poly.normalize();
        poly
    }

    /// The variable t.
    pub fn t(field: PrimeField) -> Poly {
        Poly {
            p: field.modulus(),
            coeffs: vec![0, 1],
        }
    }

    /// Builds from residues, lowest degree first.
    pub fn from_residues(field: PrimeField, coeffs: &[u64]) -> Poly {
        let p = field.modulus();
        let mut poly = Poly {
            p,
            coeffs: coeffs.iter().map(|&c| c % p).collect(),
        };
        poly.normalize();
        poly
    }

    fn normalize(&mut self) {
        while let Some(&last) = self.coeffs.last() {
            if last == 0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("stored modulus is prime")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> PrimeFieldElem {
        let v = self.coeffs.get(k).copied().unwrap_or(0);
        self.field().elem(v)
    }

    pub fn leading_coeff(&self) -> Option<PrimeFieldElem> {
        self.coeffs.last().map(|&c| self.field().elem(c))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.p, rhs.p, "mismatched moduli");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).copied().unwrap_or(0);
            let b = rhs.coeffs.get(k).copied().unwrap_or(0);
            let mut v = a + b;
            if v >= self.p {
                v -= self.p;
            }
            coeffs.push(v);
        }
        let mut poly = Poly { p: self.p, coeffs };
        poly.normalize();
        poly
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| if c == 0 { 0 } else { self.p - c })
            .collect();
        Poly { p: self.p, coeffs }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.p, rhs.p, "mismatched moduli");
        if self.is_zero() || rhs.is_zero() {
            return Poly {
                p: self.p,
                coeffs: Vec::new(),
            };
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let prod = (a as u128 * b as u128) % self.p as u128;
                coeffs[i + j] = ((coeffs[i + j] as u128 + prod) % self.p as u128) as u64;
            }
        }
        let mut poly = Poly { p: self.p, coeffs };
        poly.normalize();
        poly
    }

    pub fn mul_scalar(&self, c: PrimeFieldElem) -> Poly {
        assert_eq!(self.p, c.modulus(), "mismatched moduli");
        let cv = c.value();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| ((a as u128 * cv as u128) % self.p as u128) as u64)
            .collect();
        let mut poly = Poly { p: self.p, coeffs };
        poly.normalize();
        poly
    }

    /// Multiplication by t^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u64; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { p: self.p, coeffs }
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn div_rem(&self, div: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        assert_eq!(self.p, div.p, "mismatched moduli");
        if div.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let field = self.field();
        let dd = div.degree().unwrap();
        let lead_inv = div.leading_coeff().unwrap().inverse()?;
        let mut rem = self.clone();
        let mut q_coeffs = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap().mul(lead_inv);
            let k = rd - dd;
            q_coeffs[k] = factor.value();
            let sub = div.mul_scalar(factor).shift_up(k);
            rem = rem.sub(&sub);
        }
        let mut q = Poly {
            p: self.p,
            coeffs: q_coeffs,
        };
        q.normalize();
        let _ = field;
        Ok((q, rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to make the leading coefficient 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lead) => self.mul_scalar(lead.inverse().expect("leading coeff nonzero")),
        }
    }

    /// Multiplicity of `factor` in self: the largest k with factor^k | self.
    /// Returns None for the zero polynomial (infinite multiplicity).
    pub fn multiplicity_of(&self, factor: &Poly) -> Option<u64> {
        assert!(
            factor.degree().map(|d| d >= 1).unwrap_or(false),
            "factor must be nonconstant"
        );
        if self.is_zero() {
            return None;
        }
        let mut count = 0u64;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(factor).expect("factor nonzero");
            if r.is_zero() {
                count += 1;
                cur = q;
            } else {
                return Some(count);
            }
        }
    }

    /// Multiplicity of t, i.e. the index of the lowest nonzero coefficient.
    pub fn t_multiplicity(&self) -> Option<u64> {
        self.coeffs.iter().position(|&c| c != 0).map(|k| k as u64)
    }

    /// Irreducibility by trial division: no monic divisor of degree
    /// 1..=deg/2 divides self. Constants and degree-1 polynomials are
    /// handled directly.
    pub fn is_irreducible(&self) -> bool {
        let Some(deg) = self.degree() else {
            return false; // zero
        };
        if deg == 0 {
            return false; // units are not irreducible
        }
        if deg == 1 {
            return true;
        }
        let field = self.field();
        let p = self.p;
        for d in 1..=deg / 2 {
            // enumerate monic polynomials of degree d: p^d candidates
            let mut counter = vec![0u64; d];
            loop {
                let mut coeffs = counter.clone();
                coeffs.push(1);
                let candidate = Poly::from_residues(field, &coeffs);
                let (_, r) = self.div_rem(&candidate).expect("candidate nonzero");
                if r.is_zero() {
                    return false;
                }
                // increment base-p counter
                let mut i = 0;
                loop {
                    if i == d {
                        break;
                    }
                    counter[i] += 1;
                    if counter[i] < p {
                        break;
                    }
                    counter[i] = 0;
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
        }
        true
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, k) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{k}")?,
                (_, 1) => write!(f, "{c}*t")?,
                (_, _) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}
