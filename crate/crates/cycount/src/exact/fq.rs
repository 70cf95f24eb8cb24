//! The prime field F_q.

use std::fmt;

use crate::error::{CyError, Result};

/// Largest modulus accepted; keeps every product inside a u64.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A prime field, passed around by value. Elements are plain `u32` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    q: u64,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) || q >= MAX_PRIME {
            return Err(CyError::NotPrime(q));
        }
        Ok(Field { q })
    }

    pub fn q(self) -> u64 {
        self.q
    }

    pub fn elem(self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q - b as u64) % self.q) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.q - a as u64) as u32
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a as u64 % self.q;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.q;
            }
            base = base * base % self.q;
            e >>= 1;
        }
        acc as u32
    }

    /// Inverse by Fermat; zero has none.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(CyError::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// `(-1)^k` as a field element.
    pub fn sign(self, k: i64) -> u32 {
        if k.rem_euclid(2) == 0 {
            1
        } else {
            self.neg(1)
        }
    }

    /// All elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }
}

/// A standalone field element that remembers its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqScalar {
    pub value: u32,
    pub field: Field,
}

impl FqScalar {
    pub fn new(field: Field, v: i64) -> Self {
        FqScalar { value: field.elem(v), field }
    }

    fn check(self, o: FqScalar) -> Result<()> {
        if self.field != o.field {
            return Err(CyError::FieldMismatch(self.field.q, o.field.q));
        }
        Ok(())
    }

    pub fn add(self, o: FqScalar) -> Result<FqScalar> {
        self.check(o)?;
        Ok(FqScalar { value: self.field.add(self.value, o.value), field: self.field })
    }

    pub fn mul(self, o: FqScalar) -> Result<FqScalar> {
        self.check(o)?;
        Ok(FqScalar { value: self.field.mul(self.value, o.value), field: self.field })
    }

    pub fn inv(self) -> Result<FqScalar> {
        Ok(FqScalar { value: self.field.inv(self.value)?, field: self.field })
    }
}

impl fmt::Display for FqScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(Field::new(4), Err(CyError::NotPrime(4)));
        assert_eq!(Field::new(9), Err(CyError::NotPrime(9)));
        assert_eq!(Field::new(1), Err(CyError::NotPrime(1)));
        assert!(Field::new(7).is_ok());
    }

    #[test]
    fn inverses() {
        let f = Field::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), Err(CyError::DivisionByZero));
    }
}
