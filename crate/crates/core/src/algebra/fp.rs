//! Prime fields F_p with machine-word moduli.

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Deterministic Miller-Rabin for u64 moduli.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// A validated prime modulus. Constructing one is the only place
/// primality is checked; elements and polynomials trust it afterwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField(u64);

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, AlgebraError> {
        if is_prime_u64(p) {
            Ok(PrimeField(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn modulus(self) -> u64 {
        self.0
    }

    /// Residue of `value` in this field.
    pub fn elem(self, value: u64) -> PrimeFieldElem {
        PrimeFieldElem {
            p: self.0,
            value: value % self.0,
        }
    }

    pub fn elem_i64(self, value: i64) -> PrimeFieldElem {
        let p = self.0 as i64;
        self.elem(value.rem_euclid(p) as u64)
    }

    pub fn zero(self) -> PrimeFieldElem {
        self.elem(0)
    }

    pub fn one(self) -> PrimeFieldElem {
        self.elem(1)
    }
}

/// An element of F_p. Carries its modulus; mixing moduli is a
/// programming error and panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFieldElem {
    p: u64,
    value: u64,
}

impl PrimeFieldElem {
    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, rhs: PrimeFieldElem) -> PrimeFieldElem {
        assert_eq!(self.p, rhs.p, "mismatched moduli");
        let mut v = self.value + rhs.value;
        if v >= self.p {
            v -= self.p;
        }
        PrimeFieldElem { p: self.p, value: v }
    }

    pub fn sub(self, rhs: PrimeFieldElem) -> PrimeFieldElem {
        self.add(rhs.neg())
    }

    pub fn neg(self) -> PrimeFieldElem {
        let v = if self.value == 0 { 0 } else { self.p - self.value };
        PrimeFieldElem { p: self.p, value: v }
    }

    pub fn mul(self, rhs: PrimeFieldElem) -> PrimeFieldElem {
        assert_eq!(self.p, rhs.p, "mismatched moduli");
        PrimeFieldElem {
            p: self.p,
            value: mul_mod(self.value, rhs.value, self.p),
        }
    }

    /// Multiplicative inverse via Fermat: a^(p-2) mod p.
    pub fn inverse(self) -> Result<PrimeFieldElem, AlgebraError> {
        if self.value == 0 {
            return Err(AlgebraError::InverseOfZero);
        }
        Ok(PrimeFieldElem {
            p: self.p,
            value: pow_mod(self.value, self.p - 2, self.p),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(5));
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(1_000_000));
    }

    #[test]
    fn mod_five_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.elem(3).add(f.elem(4)), f.elem(2));
        assert_eq!(f.elem(2).inverse().unwrap(), f.elem(3));
    }

    #[test]
    fn char_two() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(f.elem(1).add(f.elem(1)), f.zero());
    }

    #[test]
    fn inverse_of_zero_rejected() {
        let f = PrimeField::new(7).unwrap();
        assert!(f.zero().inverse().is_err());
    }

    #[test]
    fn non_prime_modulus_rejected() {
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(0).is_err());
    }
}
