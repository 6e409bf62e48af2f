//! Rational functions F_p(t) in canonical reduced form.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::fp::{PrimeField, PrimeFieldElem};
use super::poly::Poly;
use super::AlgebraError;

/// An element of F_p(t) as a reduced fraction with monic denominator.
/// Canonical form makes structural equality coincide with equality of
/// rational functions, so Eq and Hash are derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds num/den and canonicalizes. Fails if den is zero.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, AlgebraError> {
        assert_eq!(num.modulus(), den.modulus(), "mismatched moduli");
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                den: Poly::one(num.field()),
                num,
            });
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g).expect("gcd nonzero");
        let (mut den, _) = den.div_rem(&g).expect("gcd nonzero");
        // monic denominator
        let lead = den.leading_coeff().expect("den nonzero");
        let lead_inv = lead.inverse().expect("leading coeff nonzero");
        num = num.mul_scalar(lead_inv);
        den = den.mul_scalar(lead_inv);
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            den: Poly::one(p.field()),
            num: p,
        }
    }

    pub fn zero(field: PrimeField) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: PrimeField) -> RatFunc {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn constant(c: PrimeFieldElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn t(field: PrimeField) -> RatFunc {
        RatFunc::from_poly(Poly::t(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn field(&self) -> PrimeField {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFunc::new(num, den).expect("product of nonzero denominators")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        let num = self.num.mul(&rhs.num);
        let den = self.den.mul(&rhs.den);
        RatFunc::new(num, den).expect("product of nonzero denominators")
    }

    pub fn inverse(&self) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::InverseOfZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, AlgebraError> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<RatFunc, AlgebraError> {
        let field = self.field();
        if exp == 0 {
            return Ok(RatFunc::one(field));
        }
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RatFunc::one(field);
        let mut e = exp.unsigned_abs();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let paren = |p: &Poly| {
            let s = p.to_string();
            if s.contains('+') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", paren(&self.num), paren(&self.den))
    }
}
