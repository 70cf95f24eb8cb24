//! Verification routines: associativity, heart embedding, reading twists, dimension counts.

use num::rational::BigRational;
use num::BigInt;
use serde::Serialize;

use super::algebra::HallAlgebra;
use super::element::{Basis, HallElement};
use super::CategoryModel;
use crate::error::{CyError, Result};
use crate::exact::QuadExt;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub cases: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub(crate) fn named(check: &str) -> Self {
        CheckReport { check: check.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, o: CheckReport) {
        self.cases += o.cases;
        self.skipped += o.skipped;
        self.failures.extend(o.failures);
    }
}

fn u_vec<M: CategoryModel>(alg: &HallAlgebra<M>, x: &M::Class) -> HallElement<M::Class> {
    HallElement::basis_vector(Basis::U, alg.q(), x.clone())
}

fn within<M: CategoryModel>(model: &M, e: &HallElement<M::Class>, other: &M::Class, left: bool, bound: usize) -> Result<bool> {
    for (y, _) in e.terms() {
        let d = if left { model.ext_dim(1, y, other)? } else { model.ext_dim(1, other, y)? };
        if d > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(u_a u_b) u_c = u_a (u_b u_c)` for all ordered triples of generators. Triples whose
/// intermediate products would need an `Ext^1` of dimension above `dim_bound` are skipped.
pub fn check_associativity<M: CategoryModel>(
    alg: &HallAlgebra<M>,
    generators: &[M::Class],
    dim_bound: usize,
) -> Result<CheckReport> {
    let model = alg.model();
    let mut rep = CheckReport::named("associativity");
    for a in generators {
        for b in generators {
            let ab = alg.product(&u_vec(alg, a), &u_vec(alg, b))?;
            for c in generators {
                let bc = alg.product(&u_vec(alg, b), &u_vec(alg, c))?;
                if !within(model, &ab, c, true, dim_bound)? || !within(model, &bc, a, false, dim_bound)? {
                    rep.skipped += 1;
                    continue;
                }
                let left = alg.product(&ab, &u_vec(alg, c));
                let right = alg.product(&u_vec(alg, a), &bc);
                match (left, right) {
                    (Err(CyError::Resource { .. }), _) | (_, Err(CyError::Resource { .. })) => rep.skipped += 1,
                    (l, r) => {
                        let (l, r) = (l?, r?);
                        rep.cases += 1;
                        if l != r {
                            rep.failures.push(format!("({a} {b}) {c} = {l}  but  {a} ({b} {c}) = {r}"));
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// One residue of the extension identity for one `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityGap<C> {
    pub cone: C,
    pub degree: i64,
    /// `dim Ext^i(x⊕z) - dim Ext^i(C(δ)) - d_i - d_{i+1}`.
    pub gap: i64,
}

/// Gaps in `dim Ext^i(x⊕z) = dim Ext^i(C(δ)) + d_i + d_{i+1}`, `d_i = r_i + r_{n-i+1}`, for
/// every `δ ∈ Ext^1(z, x)` and every residue `i`.
///
/// The right side counts the second page of the spectral sequence of the cone, so the gap
/// is never negative. It is positive exactly when a higher differential survives, which
/// happens already for `F_q[x]/(x^3)`.
pub fn extension_identity_gaps<M: CategoryModel>(alg: &HallAlgebra<M>, z: &M::Class, x: &M::Class) -> Result<Vec<IdentityGap<M::Class>>> {
    let model = alg.model();
    let n = alg.reading();
    let period = 2 * model.grading_modulus().max(1) as i64;
    let sum = model.direct_sum(x, z);
    let lhs: Vec<i64> = (0..period).map(|i| model.ext_dim(i, &sum, &sum).map(|d| d as i64)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for rec in alg.records(z, x)?.iter() {
        let r = |i: i64| HallAlgebra::<M>::rank(rec, i) as i64;
        let d = |i: i64| r(i) + r(n - i + 1);
        for i in 0..period {
            let rhs = model.ext_dim(i, &rec.cone, &rec.cone)? as i64 + d(i) + d(i + 1);
            out.push(IdentityGap { cone: rec.cone.clone(), degree: i, gap: lhs[i as usize] - rhs });
        }
    }
    Ok(out)
}

/// The extension identity with equality, for every `δ` and residue.
pub fn check_extension_identities<M: CategoryModel>(
    alg: &HallAlgebra<M>,
    z: &M::Class,
    x: &M::Class,
) -> Result<CheckReport> {
    let mut rep = CheckReport::named("extension identities");
    for g in extension_identity_gaps(alg, z, x)? {
        rep.cases += 1;
        if g.gap != 0 {
            rep.failures.push(format!("z={z} x={x} cone={}: Ext^{} identity off by {}", g.cone, g.degree, g.gap));
        }
    }
    Ok(rep)
}

/// The inequality half of the extension identity, which holds unconditionally.
pub fn check_extension_bounds<M: CategoryModel>(alg: &HallAlgebra<M>, z: &M::Class, x: &M::Class) -> Result<CheckReport> {
    let mut rep = CheckReport::named("extension bounds");
    for g in extension_identity_gaps(alg, z, x)? {
        rep.cases += 1;
        if g.gap < 0 {
            rep.failures.push(format!("z={z} x={x} cone={}: Ext^{} count exceeds the second page by {}", g.cone, g.degree, -g.gap));
        }
    }
    Ok(rep)
}

/// Compares `a_z a_x` with the twisted classical product `m_z ⋄ m_x` under `m ↦ a`, where
/// `classical(z, x)` lists the Hall numbers `F^y_{z,x}` (submodules `≅ x` with quotient `≅ z`)
/// over heart classes. Also checks `d_0(δ) = r_0 + r_{n+1} = 0` on every extension.
pub fn heart_embedding_check<M, F>(alg: &HallAlgebra<M>, pairs: &[(M::Class, M::Class)], classical: F) -> Result<CheckReport>
where
    M: CategoryModel,
    F: Fn(&M::Class, &M::Class) -> Result<Vec<(M::Class, u64)>>,
{
    let model = alg.model();
    let q = alg.q();
    let n = alg.reading();
    let mut rep = CheckReport::named("heart embedding");
    for (z, x) in pairs {
        rep.cases += 1;
        let twist = if n > 0 {
            model.euler_truncated(z, x, 0, n)?
        } else {
            -model.euler_truncated(z, x, n + 1, -1)?
        };
        let scale = QuadExt::q_half_pow(q, twist);
        let (az, ax) = (model.aut_order(z)?, model.aut_order(x)?);
        let mut want = HallElement::zero(Basis::A, q);
        for (y, f) in classical(z, x)? {
            if f == 0 {
                continue;
            }
            let num = BigInt::from(f) * BigInt::from(az) * BigInt::from(ax);
            let c = QuadExt::from_rational(q, BigRational::new(num, BigInt::from(model.aut_order(&y)?)));
            want.add_term(y, c.mul(&scale));
        }
        let got = alg.basis_product(Basis::A, z, x)?;
        if got != want {
            rep.failures.push(format!("a_{z} a_{x} = {got}  but classical side gives {want}"));
        }
        for rec in alg.records(z, x)?.iter() {
            let d0 = HallAlgebra::<M>::rank(rec, 0) + HallAlgebra::<M>::rank(rec, n + 1);
            if d0 != 0 {
                rep.failures.push(format!("d_0 = {d0} on an extension of {z} by {x} with cone {}", rec.cone));
            }
        }
    }
    Ok(rep)
}

/// `u_z u_x` read as `n2`-CY equals `q^{(k/2)⟨z,x⟩_{Z/2m}}` times the `n`-CY product, where
/// `n2 = n + 2mk` and `⟨z,x⟩_{Z/2m} = ⟨z,x⟩_{0..2m-1}`.
pub fn twist_reading_check<M: CategoryModel>(
    model: &M,
    n: i64,
    n2: i64,
    pairs: &[(M::Class, M::Class)],
) -> Result<CheckReport> {
    let m = model.grading_modulus() as i64;
    if m == 0 || (n2 - n) % (2 * m) != 0 {
        return Err(CyError::Unsupported(format!("{n} and {n2} do not differ by a multiple of 2m")));
    }
    let k = (n2 - n) / (2 * m);
    let a1 = HallAlgebra::with_reading(model, n)?;
    let a2 = HallAlgebra::with_reading(model, n2)?;
    let q = model.q();
    let mut rep = CheckReport::named("reading twist");
    for (z, x) in pairs {
        rep.cases += 1;
        let p1 = a1.basis_product(Basis::U, z, x)?;
        let p2 = a2.basis_product(Basis::U, z, x)?;
        let period = model.euler_truncated(z, x, 0, 2 * m - 1)?;
        let want = p1.scale(&QuadExt::q_half_pow(q, k * period));
        if p2 != want {
            rep.failures.push(format!("u_{z} u_{x}: reading {n2} gives {p2}, twisted reading {n} gives {want}"));
        }
    }
    Ok(rep)
}
