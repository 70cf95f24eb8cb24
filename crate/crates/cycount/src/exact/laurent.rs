//! Laurent polynomials in `z` with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use super::quad::QuadExt;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c z^e`.
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, BigInt::from(c));
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in o.terms() {
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect() }
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Evaluate at a given element of the quadratic extension.
    pub fn eval(&self, z: &QuadExt) -> crate::error::Result<QuadExt> {
        let q = z.q();
        let mut acc = QuadExt::zero(q);
        for (e, c) in self.terms() {
            acc = acc.add(&z.pow(e)?.mul(&QuadExt::from_bigint(q, c.clone())));
        }
        Ok(acc)
    }

    /// JSON object `{"<exponent>": coefficient}` with keys in increasing exponent order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (e, c) in self.terms() {
            let v = match i64::try_from(c) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::String(c.to_string()),
            };
            map.insert(e.to_string(), v);
        }
        serde_json::Value::Object(map)
    }
}

/// `z = √q - 1/√q`.
pub fn z_value(q: u64) -> QuadExt {
    let s = QuadExt::sqrt_q(q);
    s.sub(&s.inv().expect("sqrt q is nonzero"))
}

/// Evaluate `p` at `z = √q - 1/√q`.
pub fn laurent_eval_z(p: &LaurentPoly, q: u64) -> crate::error::Result<QuadExt> {
    QuadExt::checked_zero(q)?;
    p.eval(&z_value(q))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    #[test]
    fn unknot_value_at_two() {
        let v = laurent_eval_z(&LaurentPoly::monomial(-1, 1), 2).unwrap();
        assert_eq!(v, QuadExt::sqrt_q(2));
    }

    #[test]
    fn hopf_value() {
        let p = LaurentPoly::from_terms([(-2, 1), (0, 1)]);
        for q in [2i64, 3, 5] {
            let want = BigRational::new((q * q - q + 1).into(), ((q - 1) * (q - 1)).into());
            assert_eq!(laurent_eval_z(&p, q as u64).unwrap(), QuadExt::from_rational(q as u64, want));
        }
    }

    #[test]
    fn constant_and_display() {
        assert_eq!(laurent_eval_z(&LaurentPoly::one(), 7).unwrap(), QuadExt::one(7));
        let p = LaurentPoly::from_terms([(-2, 1), (0, 1), (1, -3)]);
        assert_eq!(p.to_string(), "-3z + 1 + z^-2");
        assert!(laurent_eval_z(&p, 4).is_err());
    }
}
