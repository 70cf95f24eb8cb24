//! Exact arithmetic in Q(sqrt q, sqrt(q-1)).
//!
//! Elements are `a + b√q + c√(q-1) + d√(q(q-1))` with rational `a..d`. For prime `q` the
//! only degenerate case is `q-1` a perfect square (q = 2, 5, 17, ...), where `c` and `d`
//! are folded into `a` and `b`. Otherwise the four surds are linearly independent and the
//! ring is a field of degree 4.

use std::fmt;

use num::bigint::BigInt;
use num::integer::Roots;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::fq::is_prime;
use crate::error::{CyError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    q: u64,
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `Some(s)` when `n = s^2`.
fn exact_sqrt(n: u64) -> Option<u64> {
    let s = n.sqrt();
    (s * s == n).then_some(s)
}

/// Write `n = s^2 * r` with `r` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut s = 1;
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    (s, r * n)
}

impl QuadExt {
    fn raw(q: u64, a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        let mut x = QuadExt { q, a, b, c, d };
        x.canonicalize();
        x
    }

    fn canonicalize(&mut self) {
        if let Some(s) = exact_sqrt(self.q - 1) {
            let s = rat(s as i64);
            let c = std::mem::take(&mut self.c);
            let d = std::mem::take(&mut self.d);
            self.a += c * &s;
            self.b += d * &s;
        }
    }

    /// Checks that `q` is prime; all other constructors assume it.
    pub fn checked_zero(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(CyError::NotPrime(q));
        }
        Ok(Self::zero(q))
    }

    pub fn zero(q: u64) -> Self {
        QuadExt { q, a: rat(0), b: rat(0), c: rat(0), d: rat(0) }
    }

    pub fn one(q: u64) -> Self {
        Self::from_int(q, 1)
    }

    pub fn from_int(q: u64, n: i64) -> Self {
        Self::from_rational(q, rat(n))
    }

    pub fn from_bigint(q: u64, n: BigInt) -> Self {
        Self::from_rational(q, BigRational::from_integer(n))
    }

    pub fn from_rational(q: u64, r: BigRational) -> Self {
        QuadExt { q, a: r, b: rat(0), c: rat(0), d: rat(0) }
    }

    pub fn from_parts(q: u64, parts: [BigRational; 4]) -> Self {
        let [a, b, c, d] = parts;
        Self::raw(q, a, b, c, d)
    }

    pub fn parts(&self) -> [&BigRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn sqrt_q(q: u64) -> Self {
        Self::raw(q, rat(0), rat(1), rat(0), rat(0))
    }

    pub fn sqrt_q_minus_1(q: u64) -> Self {
        Self::raw(q, rat(0), rat(0), rat(1), rat(0))
    }

    /// `q^(k/2)`.
    pub fn q_half_pow(q: u64, k: i64) -> Self {
        let whole = Self::from_rational(q, rat_pow(q, k.div_euclid(2)));
        if k.rem_euclid(2) == 1 {
            whole.mul(&Self::sqrt_q(q))
        } else {
            whole
        }
    }

    /// `(q-1)^(k/2)`.
    pub fn q1_half_pow(q: u64, k: i64) -> Self {
        let whole = Self::from_rational(q, rat_pow(q - 1, k.div_euclid(2)));
        if k.rem_euclid(2) == 1 {
            whole.mul(&Self::sqrt_q_minus_1(q))
        } else {
            whole
        }
    }

    /// The square root of a positive integer, when it lies in this field.
    pub fn sqrt_of_int(q: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::zero(q));
        }
        let (s, r) = squarefree_split(n);
        let s = rat(s as i64);
        let (t, r1) = squarefree_split(q - 1);
        let t = rat(t as i64);
        let unit = if r == 1 {
            Self::one(q)
        } else if r == q {
            Self::sqrt_q(q)
        } else if r == r1 {
            Self::sqrt_q_minus_1(q).scale(&(rat(1) / &t))
        } else if r == squarefree_split(q * r1).1 {
            Self::sqrt_q(q).mul(&Self::sqrt_q_minus_1(q)).scale(&(rat(1) / &t))
        } else {
            return Err(CyError::NoSquareRoot(n.to_string(), q));
        };
        Ok(unit.scale(&s))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    fn same(&self, o: &QuadExt) -> Result<()> {
        if self.q != o.q {
            return Err(CyError::FieldMismatch(self.q, o.q));
        }
        Ok(())
    }

    /// Addition; panics on mismatched `q` (use [`QuadExt::checked_add`] to get an error).
    pub fn add(&self, o: &QuadExt) -> QuadExt {
        self.checked_add(o).expect("same q")
    }

    pub fn checked_add(&self, o: &QuadExt) -> Result<QuadExt> {
        self.same(o)?;
        Ok(QuadExt {
            q: self.q,
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c,
            d: &self.d + &o.d,
        })
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { q: self.q, a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn sub(&self, o: &QuadExt) -> QuadExt {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &BigRational) -> QuadExt {
        QuadExt { q: self.q, a: &self.a * r, b: &self.b * r, c: &self.c * r, d: &self.d * r }
    }

    pub fn mul(&self, o: &QuadExt) -> QuadExt {
        self.checked_mul(o).expect("same q")
    }

    pub fn checked_mul(&self, o: &QuadExt) -> Result<QuadExt> {
        self.same(o)?;
        let q = rat(self.q as i64);
        let r = rat(self.q as i64 - 1);
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        let a = a1 * a2 + &q * b1 * b2 + &r * c1 * c2 + &q * &r * d1 * d2;
        let b = a1 * b2 + b1 * a2 + &r * (c1 * d2 + d1 * c2);
        let c = a1 * c2 + c1 * a2 + &q * (b1 * d2 + d1 * b2);
        let d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
        Ok(QuadExt::raw(self.q, a, b, c, d))
    }

    /// Multiplicative inverse. Nonzero elements are always invertible: for prime `q`
    /// neither `q` nor `q(q-1)` is a square, so the ring is a field.
    pub fn inv(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(CyError::DivisionByZero);
        }
        let q = rat(self.q as i64);
        let r = rat(self.q as i64 - 1);
        // x = u + v√(q-1) with u = a + b√q, v = c + d√q.
        // 1/x = (u - v√(q-1)) / (u^2 - (q-1) v^2), and the denominator lives in Q(√q).
        let n0 = &self.a * &self.a + &q * &self.b * &self.b
            - &r * (&self.c * &self.c + &q * &self.d * &self.d);
        let n1 = rat(2) * (&self.a * &self.b - &r * &self.c * &self.d);
        // 1/(n0 + n1√q) = (n0 - n1√q)/(n0^2 - q n1^2)
        let den = &n0 * &n0 - &q * &n1 * &n1;
        if den.is_zero() {
            return Err(CyError::DivisionByZero);
        }
        let (i0, i1) = (&n0 / &den, -&n1 / &den);
        let conj = QuadExt { q: self.q, a: self.a.clone(), b: self.b.clone(), c: -&self.c, d: -&self.d };
        let ninv = QuadExt { q: self.q, a: i0, b: i1, c: rat(0), d: rat(0) };
        Ok(conj.mul(&ninv))
    }

    pub fn div(&self, o: &QuadExt) -> Result<QuadExt> {
        self.same(o)?;
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<QuadExt> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = QuadExt::one(self.q);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// JSON form: an integer when integral, otherwise the exact string.
    pub fn to_json(&self) -> serde_json::Value {
        match self.as_integer() {
            Some(n) => match i64::try_from(&n) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::String(n.to_string()),
            },
            None => serde_json::Value::String(self.to_string()),
        }
    }
}

fn rat_pow(base: u64, e: i64) -> BigRational {
    let p = num::pow(BigInt::from(base), e.unsigned_abs() as usize);
    if e < 0 {
        BigRational::new(BigInt::one(), p)
    } else {
        BigRational::from_integer(p)
    }
}

fn term(coef: &BigRational, surd: Option<u64>) -> String {
    let numer = coef.numer().abs();
    let denom = coef.denom();
    let mut s = match surd {
        None => numer.to_string(),
        Some(n) if numer.is_one() => format!("√{n}"),
        Some(n) => format!("{numer}√{n}"),
    };
    if !denom.is_one() {
        s = format!("{s}/{denom}");
    }
    s
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.q;
        let items = [(&self.a, None), (&self.b, Some(q)), (&self.c, Some(q - 1)), (&self.d, Some(q * (q - 1)))];
        let nonzero: Vec<_> = items.iter().filter(|(c, _)| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (c, s)) in nonzero.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term(c, *s));
        }
        if nonzero.len() > 1 {
            write!(f, "({out})")
        } else {
            write!(f, "{out}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        for q in [2u64, 3, 5, 7] {
            let s = QuadExt::sqrt_q(q);
            assert_eq!(s.mul(&s), QuadExt::from_int(q, q as i64));
            let t = QuadExt::sqrt_q_minus_1(q);
            assert_eq!(t.mul(&t), QuadExt::from_int(q, q as i64 - 1));
        }
        assert_eq!(QuadExt::sqrt_q_minus_1(2), QuadExt::one(2));
    }

    #[test]
    fn z_squared_at_three() {
        let s = QuadExt::sqrt_q(3);
        let z = s.sub(&s.inv().unwrap());
        assert_eq!(z.mul(&z), QuadExt::from_rational(3, BigRational::new(4.into(), 3.into())));
    }

    #[test]
    fn inverse_of_generic_element() {
        let x = QuadExt::from_parts(3, [rat(1), rat(2), rat(-1), rat(3)]);
        assert_eq!(x.mul(&x.inv().unwrap()), QuadExt::one(3));
        assert_eq!(QuadExt::zero(3).inv(), Err(CyError::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        assert_eq!(QuadExt::from_rational(3, BigRational::new(7.into(), 4.into())).to_string(), "7/4");
        assert_eq!(QuadExt::sqrt_q(2).to_string(), "√2");
        let x = QuadExt::from_parts(3, [rat(1), rat(0), BigRational::new((-1).into(), 2.into()), rat(0)]);
        assert_eq!(x.to_string(), "(1 - √2/2)");
    }

    #[test]
    fn integer_square_roots() {
        let r = QuadExt::sqrt_of_int(3, 18).unwrap(); // 3√2
        assert_eq!(r.mul(&r), QuadExt::from_int(3, 18));
        let r = QuadExt::sqrt_of_int(3, 6).unwrap();
        assert_eq!(r.mul(&r), QuadExt::from_int(3, 6));
        let r = QuadExt::sqrt_of_int(5, 20).unwrap();
        assert_eq!(r.mul(&r), QuadExt::from_int(5, 20));
        assert!(QuadExt::sqrt_of_int(3, 7).is_err());
    }
}
