//! Structure constants and basis changes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::element::{Basis, HallElement};
use super::{CategoryModel, ExtRecord};
use crate::error::{CyError, Result};
use crate::exact::QuadExt;

type Records<C> = Arc<Vec<ExtRecord<C>>>;

/// A model together with a choice of odd CY reading `n`, caching extension data per pair.
pub struct HallAlgebra<'a, M: CategoryModel> {
    model: &'a M,
    n: i64,
    cache: Mutex<HashMap<(M::Class, M::Class), Records<M::Class>>>,
}

impl<'a, M: CategoryModel> HallAlgebra<'a, M> {
    pub fn new(model: &'a M) -> Result<Self> {
        Self::with_reading(model, model.cy_dim())
    }

    /// Read the model as `n`-CY. With `Z/2m` grading any `n ≡ cy_dim (mod 2m)` is allowed.
    pub fn with_reading(model: &'a M, n: i64) -> Result<Self> {
        if n.rem_euclid(2) != 1 {
            return Err(CyError::Unsupported(format!("CY dimension {n} is even")));
        }
        let m = model.grading_modulus() as i64;
        let ok = if m == 0 { n == model.cy_dim() } else { (n - model.cy_dim()).rem_euclid(2 * m) == 0 };
        if !ok {
            return Err(CyError::Unsupported(format!(
                "{n} is not a CY reading of a {}-CY model with grading modulus {m}",
                model.cy_dim()
            )));
        }
        Ok(HallAlgebra { model, n, cache: Mutex::new(HashMap::new()) })
    }

    pub fn model(&self) -> &'a M {
        self.model
    }

    pub fn reading(&self) -> i64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.model.q()
    }

    pub fn records(&self, z: &M::Class, x: &M::Class) -> Result<Records<M::Class>> {
        let key = (z.clone(), x.clone());
        if let Some(r) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let recs = Arc::new(self.model.extension_records(z, x)?);
        self.cache.lock().expect("cache lock").insert(key, recs.clone());
        Ok(recs)
    }

    pub fn rank(rec: &ExtRecord<M::Class>, i: i64) -> usize {
        rec.ranks[i.rem_euclid(rec.ranks.len() as i64) as usize]
    }

    fn pairing(&self, z: &M::Class, x: &M::Class, lo: i64, hi: i64) -> Result<i64> {
        self.model.euler_truncated(z, x, lo, hi)
    }

    /// Twice the exponent of `q` in the coefficient of `b_{C(δ)}` in `b_z · b_x`.
    fn doubled_exponent(&self, basis: Basis, z: &M::Class, x: &M::Class, rec: &ExtRecord<M::Class>) -> Result<i64> {
        let n = self.n;
        let r = |i: i64| Self::rank(rec, i) as i64;
        match basis {
            Basis::U if n > 0 => Ok(self.pairing(z, x, 1, n - 1)? - r(1) - r(n)),
            Basis::U => Ok(-self.pairing(z, x, n, 0)? - r(1) - r(n)),
            Basis::A if n > 0 => {
                Ok(self.pairing(z, x, 0, n)? + r(0) + r(n + 1) - 2 * self.pairing(z, x, 0, 0)?)
            }
            Basis::A => Ok(-self.pairing(z, x, n + 1, -1)? + r(0) + r(n + 1) - 2 * self.pairing(z, x, 0, 0)?),
            Basis::H => Err(CyError::Internal("no direct product formula in the h basis".into())),
        }
    }

    /// `b_z · b_x` for `b` the `a` or `u` basis (the `h` basis goes through `u`).
    pub fn basis_product(&self, basis: Basis, z: &M::Class, x: &M::Class) -> Result<HallElement<M::Class>> {
        let q = self.q();
        if basis == Basis::H {
            let uz = self.convert(&HallElement::basis_vector(Basis::H, q, z.clone()), Basis::U)?;
            let ux = self.convert(&HallElement::basis_vector(Basis::H, q, x.clone()), Basis::U)?;
            return self.convert(&self.product(&uz, &ux)?, Basis::H);
        }
        let mut out = HallElement::zero(basis, q);
        for rec in self.records(z, x)?.iter() {
            let e = self.doubled_exponent(basis, z, x, rec)?;
            out.add_term(rec.cone.clone(), QuadExt::q_half_pow(q, e));
        }
        Ok(out)
    }

    /// Bilinear extension of the basis product; both operands must share a basis.
    pub fn product(&self, a: &HallElement<M::Class>, b: &HallElement<M::Class>) -> Result<HallElement<M::Class>> {
        a.check_same_basis(b)?;
        if a.q() != self.q() {
            return Err(CyError::FieldMismatch(a.q(), self.q()));
        }
        let basis = a.basis();
        if basis == Basis::H {
            let p = self.product(&self.convert(a, Basis::U)?, &self.convert(b, Basis::U)?)?;
            return self.convert(&p, Basis::H);
        }
        let mut out = HallElement::zero(basis, self.q());
        for (z, cz) in a.terms() {
            for (x, cx) in b.terms() {
                let c = cz.mul(cx);
                for (y, cy) in self.basis_product(basis, z, x)?.terms() {
                    out.add_term(y.clone(), cy.mul(&c));
                }
            }
        }
        Ok(out)
    }

    /// Factor `f` with `b_x = f · h_x`.
    fn to_h_factor(&self, basis: Basis, x: &M::Class) -> Result<QuadExt> {
        let q = self.q();
        match basis {
            Basis::H => Ok(QuadExt::one(q)),
            Basis::A => QuadExt::sqrt_of_int(q, self.model.aut_order(x)?),
            Basis::U => {
                let e = self.model.ext_dim(0, x, x)? as i64;
                Ok(QuadExt::sqrt_of_int(q, self.model.aut_order(x)?)?.mul(&QuadExt::q_half_pow(q, -e)))
            }
        }
    }

    /// Rewrite `e` in another basis. Conversions between `a` and `u` never need `√|Aut|`;
    /// those touching `h` fail when `√|Aut x|` leaves the coefficient field.
    pub fn convert(&self, e: &HallElement<M::Class>, target: Basis) -> Result<HallElement<M::Class>> {
        let q = self.q();
        let from = e.basis();
        if from == target {
            return Ok(e.clone());
        }
        let mut out = HallElement::zero(target, q);
        for (x, c) in e.terms() {
            // c b_x = c (f_from / f_to) b'_x
            let ratio = match (from, target) {
                (Basis::A, Basis::U) => QuadExt::q_half_pow(q, self.model.ext_dim(0, x, x)? as i64),
                (Basis::U, Basis::A) => QuadExt::q_half_pow(q, -(self.model.ext_dim(0, x, x)? as i64)),
                _ => self.to_h_factor(from, x)?.div(&self.to_h_factor(target, x)?)?,
            };
            out.add_term(x.clone(), c.mul(&ratio));
        }
        Ok(out)
    }
}

/// `a · b` in the model's default reading.
pub fn hall_product<M: CategoryModel>(
    a: &HallElement<M::Class>,
    b: &HallElement<M::Class>,
    model: &M,
) -> Result<HallElement<M::Class>> {
    HallAlgebra::new(model)?.product(a, b)
}

pub fn basis_convert<M: CategoryModel>(
    e: &HallElement<M::Class>,
    target: Basis,
    model: &M,
) -> Result<HallElement<M::Class>> {
    HallAlgebra::new(model)?.convert(e, target)
}
