//! Objects of the augmentation category of a single basic tangle, one boundary class at a time.

use std::fmt;

use crate::complex::barannikov::{barannikov_form, classify_to_ruling};
use crate::complex::ext::{gamma, ExtProfile};
use crate::complex::flagged::{coordinate_span, Flag, FlaggedComplex};
use crate::complex::hom::{aut_order, ext01, restriction_rank};
use crate::complex::points::{GradedPointSet, Ruling};
use crate::error::{CyError, Result};
use crate::exact::{ff_reduce, Field, FqMatrix};
use crate::tangle::{BasicTangle, Letter};

/// CY dimension of the boundary span of a tangle category.
pub const SPAN_CY_DIM: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectKind {
    Switch,
    Return,
    Departure,
    /// A crossing between strands of different degree.
    Pass,
    Cusp,
    Identity,
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ObjectKind::Switch => "switch",
            ObjectKind::Return => "return",
            ObjectKind::Departure => "departure",
            ObjectKind::Pass => "pass",
            ObjectKind::Cusp => "cusp",
            ObjectKind::Identity => "identity",
        };
        f.write_str(s)
    }
}

/// One isomorphism class of objects with its boundary data.
#[derive(Clone, Debug)]
pub struct BasicObject {
    pub object: FlaggedComplex,
    pub boundary0: FlaggedComplex,
    pub boundary1: FlaggedComplex,
    pub rho0: Ruling,
    pub rho1: Ruling,
    pub aut: u64,
    pub aut0: u64,
    pub aut1: u64,
    pub gamma: i64,
    pub kind: ObjectKind,
}

/// The flag seen across a cusp at points `i, i+1`: steps `F_{i-1}` and `F_i` are forgotten, so
/// the acyclic piece `F_{i+1}/F_{i-1}` merges into the graded piece below it, or into `F_0`
/// when `i = 1`. Keeping the top step intact means the flag still ends at the whole complex.
pub fn collapse_flag(flag: &Flag, i: usize) -> Flag {
    let mut steps = flag.steps.clone();
    steps.drain(i - 1..=i);
    let mut degs = flag.points.degrees.clone();
    degs.drain(i - 1..=i);
    Flag { steps, points: GradedPointSet { m: flag.points.m, degrees: degs } }
}

/// Whether `F_{i+1}/F_{i-1}` is acyclic for the given flag.
pub fn cusp_quotient_acyclic(x: &FlaggedComplex, flag: &Flag, i: usize) -> bool {
    x.total_subquotient_cohomology(&flag.steps[i + 1], &flag.steps[i - 1]) == 0
}

fn finish(
    object: FlaggedComplex,
    boundary0: FlaggedComplex,
    boundary1: FlaggedComplex,
    rho0: Ruling,
    rho1: Ruling,
    kind: ObjectKind,
) -> Result<BasicObject> {
    let (e0, e1) = ext01(&object)?;
    let rk = restriction_rank(&object, &[boundary0.clone(), boundary1.clone()])?;
    let profile = ExtProfile::new(object.m, [(0, e0), (1, e1)]);
    let g = gamma(&profile, rk, SPAN_CY_DIM)?;
    Ok(BasicObject {
        aut: aut_order(&object)?,
        aut0: aut_order(&boundary0)?,
        aut1: aut_order(&boundary1)?,
        object,
        boundary0,
        boundary1,
        rho0,
        rho1,
        gamma: g,
        kind,
    })
}

/// The identity tangle on `set`: one object per ruling, equal to its own boundaries.
pub fn enumerate_identity_objects(field: Field, set: &GradedPointSet, rho: &Ruling) -> Result<Vec<BasicObject>> {
    let c = barannikov_form(field, rho, set)?;
    let two = FlaggedComplex { flags: vec![c.flags[0].clone(), c.flags[0].clone()], ..c.clone() };
    Ok(vec![finish(two, c.clone(), c, rho.clone(), rho.clone(), ObjectKind::Identity)?])
}

/// All isomorphism classes of objects over `t` whose right boundary is the class of `rho1`.
pub fn enumerate_basic_objects(t: &BasicTangle, rho1: &Ruling, q: u64) -> Result<Vec<BasicObject>> {
    let field = Field::new(q)?;
    rho1.validate(&t.right)?;
    match t.kind {
        Letter::LeftCusp { i, .. } => {
            // the object lives in C(∂1) with Gr_i + Gr_{i+1} acyclic; ∂0 forgets two steps
            let c = barannikov_form(field, rho1, &t.right)?;
            if !cusp_quotient_acyclic(&c, &c.flags[0], i) {
                return Ok(vec![]);
            }
            let b0 = FlaggedComplex { flags: vec![collapse_flag(&c.flags[0], i)], ..c.clone() };
            let rho0 = classify_to_ruling(&b0, 0)?;
            Ok(vec![finish(c.clone(), b0, c, rho0, rho1.clone(), ObjectKind::Cusp)?])
        }
        Letter::RightCusp { i } => {
            let rho0 = rho1.insert_adjacent_pair(i);
            let c = barannikov_form(field, &rho0, &t.left)?;
            let b1 = FlaggedComplex { flags: vec![collapse_flag(&c.flags[0], i)], ..c.clone() };
            if classify_to_ruling(&b1, 0)? != *rho1 {
                return Err(CyError::Internal("collapsed right cusp object has the wrong class".into()));
            }
            Ok(vec![finish(c.clone(), c, b1, rho0, rho1.clone(), ObjectKind::Cusp)?])
        }
        Letter::Crossing { k } => crossing_objects(field, t, k, rho1),
    }
}

/// Candidate second flags: `F_k = F'_{k-1} + L` for homogeneous lines `L ≠ span(e_k)` in
/// `span(e_k, e_{k+1})`, with `d(L) ⊆ F'_{k-1}`. Returns the line parameter and the object.
pub fn crossing_candidates(field: Field, t: &BasicTangle, k: usize, rho1: &Ruling) -> Result<Vec<(u32, FlaggedComplex)>> {
    let c1 = barannikov_form(field, rho1, &t.right)?;
    let n = c1.dim();
    let fprime = c1.flags[0].clone();
    let params: Vec<u32> = if c1.degrees[k - 1] == c1.degrees[k] { field.elements().collect() } else { vec![0] };
    let mut out = Vec::new();
    for c in params {
        let mut v = vec![0u32; n];
        v[k] = 1;
        v[k - 1] = c;
        let dv = c1.d.mul_vec(&v);
        if dv[k - 1..].iter().any(|&x| x != 0) {
            continue;
        }
        let mut steps = fprime.steps.clone();
        let mut cols = fprime.steps[k - 1].columns();
        cols.push(v);
        steps[k] = FqMatrix::from_columns(field, n, &cols);
        let flag = Flag { steps, points: t.left.clone() };
        let x = FlaggedComplex { flags: vec![flag, fprime.clone()], ..c1.clone() };
        if x.with_flags(&[0]).validate_rank_one().is_ok() {
            out.push((c, x));
        }
    }
    Ok(out)
}

/// The intrinsic line `L_d` in `F_{k+1}/F_{k-1}` of a coordinate-flagged complex, in the
/// basis `e_k, e_{k+1}`.
pub fn intrinsic_line(x: &FlaggedComplex, k: usize) -> Result<[u32; 2]> {
    let f = x.field;
    let n = x.dim();
    let mut lines: Vec<[u32; 2]> = Vec::new();
    let dk = x.d.column(k - 1);
    let dk1 = x.d.column(k);
    // kernels of d: F_{k+1}/F_{k-1} -> C/(F_r + d F_{k-1})
    for r in 0..k.saturating_sub(1) {
        let mut cols = vec![dk.clone(), dk1.clone()];
        cols.extend(coordinate_span(f, n, 0..r).columns());
        cols.extend((0..k - 1).map(|j| x.d.column(j)));
        let ker = ff_reduce(&FqMatrix::from_columns(f, n, &cols)).kernel_basis;
        let proj: Vec<Vec<u32>> = ker.columns().into_iter().map(|v| vec![v[0], v[1]]).collect();
        push_if_line(f, &proj, &mut lines);
    }
    // images of d: F_s ∩ d^{-1}(F_{k+1}) -> F_{k+1}/F_{k-1}
    for s in k + 2..=n {
        let rows: Vec<usize> = (k + 1..n).collect();
        let cols: Vec<usize> = (0..s).collect();
        let constraint = x.d.submatrix(&rows, &cols);
        let ker = if rows.is_empty() {
            FqMatrix::identity(f, s)
        } else {
            ff_reduce(&constraint).kernel_basis
        };
        let proj: Vec<Vec<u32>> = ker
            .columns()
            .into_iter()
            .map(|u| {
                let mut full = u.clone();
                full.resize(n, 0);
                let du = x.d.mul_vec(&full);
                vec![du[k - 1], du[k]]
            })
            .collect();
        push_if_line(f, &proj, &mut lines);
    }
    let Some(&first) = lines.first() else {
        return Err(CyError::Internal(format!("no intrinsic line found at crossing {k}")));
    };
    if lines.iter().any(|l| !same_line(f, l, &first)) {
        return Err(CyError::Internal(format!("conflicting intrinsic lines at crossing {k}")));
    }
    Ok(first)
}

fn push_if_line(f: Field, vecs: &[Vec<u32>], out: &mut Vec<[u32; 2]>) {
    let m = FqMatrix::from_columns(f, 2, vecs);
    let red = ff_reduce(&m);
    if red.rank == 1 {
        let v = &vecs[red.pivots[0]];
        out.push([v[0], v[1]]);
    }
}

fn same_line(f: Field, a: &[u32; 2], b: &[u32; 2]) -> bool {
    f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])) == 0
}

fn crossing_objects(field: Field, t: &BasicTangle, k: usize, rho1: &Ruling) -> Result<Vec<BasicObject>> {
    let cands = crossing_candidates(field, t, k, rho1)?;
    let Some((_, first)) = cands.first() else { return Ok(vec![]) };
    let l = t.crossing_gap().expect("crossing");
    let mut reps: Vec<(ObjectKind, FlaggedComplex)> = Vec::new();
    if l != 0 {
        reps.push((ObjectKind::Pass, first.clone()));
    } else {
        let ld = intrinsic_line(first, k)?;
        let lfp = [1, 0];
        for (c, x) in &cands {
            let lf = [*c, 1];
            let kind = if same_line(field, &lfp, &ld) {
                ObjectKind::Departure
            } else if same_line(field, &lf, &ld) {
                ObjectKind::Return
            } else {
                ObjectKind::Switch
            };
            if !reps.iter().any(|(kk, _)| *kk == kind) {
                reps.push((kind, x.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for (kind, x) in reps {
        let b0 = x.with_flags(&[0]);
        let b1 = x.with_flags(&[1]);
        let rho0 = classify_to_ruling(&b0, 0)?;
        let expect = match kind {
            ObjectKind::Switch => Some(rho1.clone()),
            ObjectKind::Return | ObjectKind::Departure | ObjectKind::Pass => Some(rho1.transpose(k)),
            _ => None,
        };
        if expect.as_ref() != Some(&rho0) {
            return Err(CyError::Internal(format!("{kind} object at crossing {k} has boundary class {rho0}")));
        }
        out.push(finish(x, b0, b1, rho0, rho1.clone(), kind)?);
    }
    out.sort_by(|a, b| a.kind.cmp(&b.kind));
    Ok(out)
}
