//! Finitely supported vectors over iso-classes.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CyError, Result};
use crate::exact::QuadExt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Half-densities `h_x`.
    H,
    /// `a_x = √|Aut x| h_x`.
    A,
    /// `u_x = √|Aut x| q^{-⟨x,x⟩_0/2} h_x`.
    U,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::H => "h",
            Basis::A => "a",
            Basis::U => "u",
        })
    }
}

impl std::str::FromStr for Basis {
    type Err = CyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" => Ok(Basis::H),
            "a" => Ok(Basis::A),
            "u" => Ok(Basis::U),
            _ => Err(CyError::Unsupported(format!("unknown basis {s:?}"))),
        }
    }
}

/// `Σ c_x b_x` in one basis. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement<C: Ord> {
    basis: Basis,
    q: u64,
    coeffs: BTreeMap<C, QuadExt>,
}

impl<C: Ord + Clone> HallElement<C> {
    pub fn zero(basis: Basis, q: u64) -> Self {
        HallElement { basis, q, coeffs: BTreeMap::new() }
    }

    pub fn basis_vector(basis: Basis, q: u64, x: C) -> Self {
        let mut e = Self::zero(basis, q);
        e.add_term(x, QuadExt::one(q));
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn add_term(&mut self, x: C, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(x.clone()).or_insert_with(|| QuadExt::zero(self.q));
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.coeffs.remove(&x);
        }
    }

    pub fn coeff(&self, x: &C) -> QuadExt {
        self.coeffs.get(x).cloned().unwrap_or_else(|| QuadExt::zero(self.q))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&C, &QuadExt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_space(&self, o: &Self) -> Result<()> {
        if self.q != o.q {
            return Err(CyError::FieldMismatch(self.q, o.q));
        }
        if self.basis != o.basis {
            return Err(CyError::Unsupported(format!("mixed bases {} and {}", self.basis, o.basis)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_space(o)?;
        let mut out = self.clone();
        for (x, c) in o.terms() {
            out.add_term(x.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &QuadExt) -> Self {
        let mut out = Self::zero(self.basis, self.q);
        for (x, c) in self.terms() {
            out.add_term(x.clone(), c.mul(s));
        }
        out
    }

    pub(crate) fn check_same_basis(&self, o: &Self) -> Result<()> {
        self.same_space(o)
    }
}

impl<C: Ord + fmt::Display> fmt::Display for HallElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (x, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {}_{x}", self.basis)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_stored_zeros() {
        let mut e = HallElement::basis_vector(Basis::U, 2, 1u8);
        e.add_term(1, QuadExt::from_int(2, -1));
        assert!(e.is_zero());
        let a = HallElement::basis_vector(Basis::U, 2, 0u8);
        let b = HallElement::basis_vector(Basis::A, 2, 0u8);
        assert!(a.add(&b).is_err());
    }
}
