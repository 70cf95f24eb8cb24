//! Brute-force census of objects of a whole closed link, as an oracle for the functorial count.
//!
//! Only plat-like words (all left cusps, then crossings, then right cusps) are handled. Every
//! slice flag then lives on one acyclic complex whose dimension is the maximal strand count;
//! slices outside the crossing region carry coarsened flags. Candidates are strict objects;
//! isomorphism, automorphisms and Ext are computed in the homotopy limit.

use std::collections::BTreeMap;

use serde::Serialize;

use super::basic::{collapse_flag, cusp_quotient_acyclic, SPAN_CY_DIM};
use crate::complex::barannikov::{barannikov_form, classify_to_ruling};
use crate::complex::ext::{gamma, ExtProfile};
use crate::complex::flagged::{Flag, FlaggedComplex};
use crate::complex::cochains::Cochains;
use crate::complex::limit::{limit_aut_order, limit_ext01, limit_isomorphic, HomLimit};
use crate::complex::points::{enumerate_set_rulings, Ruling};
use crate::error::{CyError, Result};
use crate::exact::{Field, FqMatrix, QuadExt};
use crate::tangle::{Letter, TangleWord};

/// Largest strand count the oracle accepts.
pub const ORACLE_MAX_STRANDS: usize = 4;
/// Largest field size the oracle accepts.
pub const ORACLE_MAX_Q: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CensusEntry {
    pub aut: u64,
    pub gamma: i64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub total: QuadExt,
    /// Number of strict objects enumerated before grouping.
    pub candidates: usize,
    pub classes: Vec<ClassData>,
    /// Number of link components.
    pub components: usize,
}

/// Data of one isomorphism class found by the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub aut: u64,
    pub gamma: i64,
    pub ext0: usize,
    pub ext1: usize,
    /// Rank of `H^0 End` into the scalars of the link components.
    pub component_rank: usize,
}

fn is_plat(w: &TangleWord) -> bool {
    let phase = |t: &Letter| match t {
        Letter::LeftCusp { .. } => 0,
        Letter::Crossing { .. } => 1,
        Letter::RightCusp { .. } => 2,
    };
    w.letters.windows(2).all(|p| phase(&p[0].kind) <= phase(&p[1].kind))
}

/// Lowest peak-slice position of each link component.
fn component_representatives(w: &TangleWord, peak: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = Vec::new();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut slice: Vec<usize> = Vec::new();
    let mut peak_slice = Vec::new();
    for (idx, t) in w.letters.iter().enumerate() {
        match t.kind {
            Letter::LeftCusp { i, .. } => {
                let a = parent.len();
                parent.push(a);
                // both new strand ends belong to one arc through the cusp
                slice.insert(i - 1, a);
                slice.insert(i - 1, a);
            }
            Letter::Crossing { k } => slice.swap(k - 1, k),
            Letter::RightCusp { i } => {
                let (a, b) = (find(&mut parent, slice[i - 1]), find(&mut parent, slice[i]));
                parent[a] = b;
                slice.drain(i - 1..=i);
            }
        }
        if idx + 1 == peak {
            peak_slice = slice.clone();
        }
    }
    let mut seen = BTreeMap::new();
    for (pos, &a) in peak_slice.iter().enumerate() {
        let root = find(&mut parent, a);
        seen.entry(root).or_insert(pos);
    }
    let mut reps: Vec<usize> = seen.into_values().collect();
    reps.sort();
    reps
}

/// All strict global objects whose first peak slice is in normal form.
fn enumerate_candidates(w: &TangleWord, field: Field, peak: usize) -> Result<Vec<FlaggedComplex>> {
    let peak_set = w.letters[peak - 1].right.clone();
    let mut out = Vec::new();
    for rho in enumerate_set_rulings(&peak_set) {
        let base = barannikov_form(field, &rho, &peak_set)?;
        let mut flag = base.flags[0].clone();
        let mut before = vec![flag.clone()];
        let mut ok = true;
        for t in w.letters[..peak].iter().rev() {
            let Letter::LeftCusp { i, .. } = t.kind else { unreachable!("plat word") };
            if !cusp_quotient_acyclic(&base, &flag, i) {
                ok = false;
                break;
            }
            flag = collapse_flag(&flag, i);
            before.push(flag.clone());
        }
        if !ok {
            continue;
        }
        before.reverse();
        let n = base.dim();
        let basis: Vec<Vec<u32>> = (0..n)
            .map(|j| {
                let mut v = vec![0; n];
                v[j] = 1;
                v
            })
            .collect();
        extend_crossings(w, &base, peak, basis, before, &mut out)?;
    }
    Ok(out)
}

fn flag_from_basis(field: Field, basis: &[Vec<u32>], points: crate::complex::points::GradedPointSet) -> Flag {
    let n = basis.len();
    let steps = (0..=n).map(|i| FqMatrix::from_columns(field, n, &basis[..i])).collect();
    Flag { steps, points }
}

fn extend_crossings(
    w: &TangleWord,
    base: &FlaggedComplex,
    pos: usize,
    basis: Vec<Vec<u32>>,
    flags: Vec<Flag>,
    out: &mut Vec<FlaggedComplex>,
) -> Result<()> {
    let field = base.field;
    let t = w.letters.get(pos);
    match t.map(|t| t.kind) {
        Some(Letter::Crossing { k }) => {
            let t = t.expect("letter");
            let same = base.reduce(t.left.deg(k) - t.left.deg(k + 1)) == 0;
            let params: Vec<u32> = if same { field.elements().collect() } else { vec![0] };
            let lower = FqMatrix::from_columns(field, base.dim(), &basis[..k - 1]);
            for c in params {
                let u: Vec<u32> = basis[k].iter().zip(&basis[k - 1]).map(|(&a, &b)| field.add(a, field.mul(c, b))).collect();
                if !crate::complex::flagged::contains(&lower, &base.d.mul_vec(&u)) {
                    continue;
                }
                let mut nb = basis.clone();
                nb[k - 1] = u;
                nb[k] = basis[k - 1].clone();
                let mut nf = flags.clone();
                nf.push(flag_from_basis(field, &nb, t.right.clone()));
                extend_crossings(w, base, pos + 1, nb, nf, out)?;
            }
            Ok(())
        }
        _ => {
            // right cusps: each must close off an acyclic two-step piece
            let mut flags = flags;
            let mut flag = flags.last().expect("peak flag").clone();
            for t in &w.letters[pos..] {
                let Letter::RightCusp { i } = t.kind else { unreachable!("plat word") };
                if !cusp_quotient_acyclic(base, &flag, i) {
                    return Ok(());
                }
                flag = collapse_flag(&flag, i);
                flags.push(flag.clone());
            }
            let x = FlaggedComplex { flags, ..base.clone() };
            x.validate_rank_one()?;
            out.push(x);
            Ok(())
        }
    }
}

/// Rank of `H^0 End(x) -> k^{components}`, reading the scalar by which an endomorphism acts on
/// the graded piece at one point of each component of the (coordinate) peak slice.
fn component_rank(x: &FlaggedComplex, peak: usize, points: &[usize]) -> Result<usize> {
    let h = HomLimit::new(x, x)?;
    let h0 = h.cohomology(0);
    let cols: Vec<Vec<u32>> = h0
        .reps
        .iter()
        .map(|r| {
            let f = h.letter_component(peak - 1, r);
            points.iter().map(|&p| f.get(p, p)).collect()
        })
        .collect();
    Ok(FqMatrix::from_columns(x.field, points.len(), &cols).rank())
}

/// Iso-class census of global objects of a closed plat-like word, weighted by `q^{γ/2}/|Aut|`.
pub fn global_object_oracle(w: &TangleWord, q: u64) -> Result<Census> {
    if !w.is_closed() {
        return Err(CyError::Unsupported("the global oracle needs a closed word".into()));
    }
    if !is_plat(w) {
        return Err(CyError::Unsupported("the global oracle handles plat-like words only (cusps, crossings, cusps)".into()));
    }
    if w.max_strands() > ORACLE_MAX_STRANDS {
        return Err(CyError::Resource { what: "strands".into(), needed: w.max_strands(), cap: ORACLE_MAX_STRANDS });
    }
    if q > ORACLE_MAX_Q {
        return Err(CyError::Resource { what: "field size".into(), needed: q as usize, cap: ORACLE_MAX_Q as usize });
    }
    let field = Field::new(q)?;
    let peak = w.letters.iter().take_while(|t| matches!(t.kind, Letter::LeftCusp { .. })).count();
    if peak == 0 {
        let entries = vec![CensusEntry { aut: 1, gamma: 0, multiplicity: 1 }];
        let classes = vec![ClassData { aut: 1, gamma: 0, ext0: 0, ext1: 0, component_rank: 0 }];
        return Ok(Census { entries, total: QuadExt::one(q), candidates: 1, classes, components: 0 });
    }
    let cands = enumerate_candidates(w, field, peak)?;
    let signature = |x: &FlaggedComplex| -> Result<Vec<Ruling>> { (0..x.flags.len()).map(|i| classify_to_ruling(x, i)).collect() };
    let mut classes: Vec<(Vec<Ruling>, FlaggedComplex)> = Vec::new();
    for x in &cands {
        let sig = signature(x)?;
        let mut found = false;
        for (s, y) in &classes {
            if *s == sig && limit_isomorphic(x, y)? {
                found = true;
                break;
            }
        }
        if !found {
            classes.push((sig, x.clone()));
        }
    }
    let reps = component_representatives(w, peak);
    let mut tally: BTreeMap<(u64, i64), usize> = BTreeMap::new();
    let mut total = QuadExt::zero(q);
    let mut data = Vec::new();
    for (_, x) in &classes {
        let aut = limit_aut_order(x)?;
        let (e0, e1) = limit_ext01(x)?;
        let rk = component_rank(x, peak, &reps)?;
        let g = gamma(&ExtProfile::new(x.m, [(0, e0), (1, e1)]), rk, SPAN_CY_DIM)?;
        *tally.entry((aut, g)).or_insert(0) += 1;
        total = total.add(&QuadExt::q_half_pow(q, g).div(&QuadExt::from_int(q, aut as i64))?);
        data.push(ClassData { aut, gamma: g, ext0: e0, ext1: e1, component_rank: rk });
    }
    let entries = tally.into_iter().map(|((aut, gamma), multiplicity)| CensusEntry { aut, gamma, multiplicity }).collect();
    Ok(Census { entries, total, candidates: cands.len(), classes: data, components: reps.len() })
}
