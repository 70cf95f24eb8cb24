//! Barannikov normal forms and the classification of rank-one flagged complexes by rulings.

use serde::Serialize;

use super::cochains::all_vectors;
use super::flagged::{coordinate_span, Flag, FlaggedComplex};
use super::hom::is_isomorphic;
use super::points::{enumerate_set_rulings, reduce_deg, GradedPointSet, Ruling};
use crate::error::{CyError, Result};
use crate::exact::{Field, FqMatrix};

/// `C_rho`: one basis vector per point, coordinate flag, `d(e_t) = e_s` for each pair `s < t`.
pub fn barannikov_form(field: Field, rho: &Ruling, set: &GradedPointSet) -> Result<FlaggedComplex> {
    rho.validate(set)?;
    let n = set.len();
    let mut d = FqMatrix::zeros(field, n, n);
    for &(s, t) in rho.pairs() {
        d.set(s - 1, t - 1, 1);
    }
    let steps = (0..=n).map(|i| coordinate_span(field, n, 0..i)).collect();
    Ok(FlaggedComplex {
        field,
        m: set.m,
        degrees: set.degrees.clone(),
        d,
        flags: vec![Flag { steps, points: set.clone() }],
    })
}

/// The ruling `rho` with `x ≅ C_rho`, read off from the filtered cohomology of flag `which`.
///
/// With `P(a, b)` the number of pairs inside `(a, b]`, point `s` pairs with `t` exactly when
/// the inclusion-exclusion `P(s-1,t) - P(s,t) - P(s-1,t-1) + P(s,t-1)` equals one.
pub fn classify_to_ruling(x: &FlaggedComplex, which: usize) -> Result<Ruling> {
    let flag = x
        .flags
        .get(which)
        .ok_or_else(|| CyError::Shape(format!("object has no flag {which}")))?;
    x.with_flags(&[which]).validate_rank_one()?;
    let n = flag.len();
    let mut p = vec![vec![0i64; n + 1]; n + 1];
    for a in 0..=n {
        for b in a..=n {
            let h = x.total_subquotient_cohomology(&flag.steps[b], &flag.steps[a]) as i64;
            let inside = (b - a) as i64 - h;
            if inside < 0 || inside % 2 != 0 {
                return Err(CyError::InvalidObject(format!("inconsistent filtered cohomology on ({a},{b}]")));
            }
            p[a][b] = inside / 2;
        }
    }
    let mut pairs = Vec::new();
    for s in 1..=n {
        for t in s + 1..=n {
            let c = p[s - 1][t] - p[s][t] - p[s - 1][t - 1] + p[s][t - 1];
            match c {
                0 => {}
                1 => pairs.push((s, t)),
                _ => return Err(CyError::InvalidObject(format!("pairing multiplicity {c} at ({s},{t})"))),
            }
        }
    }
    let rho = Ruling::from_pairs(pairs);
    rho.validate(&flag.points)?;
    Ok(rho)
}

/// Outcome of [`barannikov_census`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BarannikovCensus {
    /// Strict objects enumerated, one per admissible differential.
    pub objects: usize,
    pub rulings: usize,
    /// Rulings hit by at least one object.
    pub classes: usize,
    pub failures: Vec<String>,
}

impl BarannikovCensus {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.classes == self.rulings
    }
}

/// Enumerates every minimal rank-one object on `set`: coordinate flag, one basis vector per
/// point, and any flag-preserving degree-one differential with `d² = 0` that is acyclic.
/// Each must be isomorphic to `C_ρ` for the ruling it classifies to and to no other
/// normal form, and every ruling must occur.
pub fn barannikov_census(field: Field, set: &GradedPointSet) -> Result<BarannikovCensus> {
    let n = set.len();
    let rulings = enumerate_set_rulings(set);
    let forms: Vec<FlaggedComplex> = rulings.iter().map(|r| barannikov_form(field, r, set)).collect::<Result<_>>()?;
    let mut rep = BarannikovCensus { rulings: rulings.len(), ..Default::default() };
    for (a, x) in forms.iter().enumerate() {
        for y in &forms[a + 1..] {
            if is_isomorphic(x, y)? {
                rep.failures.push(format!("normal forms {} and {} are isomorphic", rulings[a], classify_to_ruling(y, 0)?));
            }
        }
    }
    // entry (i, j), i < j, may be nonzero when deg(i) = deg(j) + 1
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| set.deg(i + 1) == reduce_deg(set.m, set.deg(j + 1) + 1))
        .collect();
    let mut hit = vec![false; rulings.len()];
    for coords in all_vectors(field, slots.len()) {
        let mut d = FqMatrix::zeros(field, n, n);
        for (&(i, j), &v) in slots.iter().zip(&coords) {
            d.set(i, j, v);
        }
        let steps = (0..=n).map(|i| coordinate_span(field, n, 0..i)).collect();
        let x = FlaggedComplex {
            field,
            m: set.m,
            degrees: set.degrees.clone(),
            d,
            flags: vec![Flag { steps, points: set.clone() }],
        };
        if x.validate_rank_one().is_err() {
            continue;
        }
        rep.objects += 1;
        let rho = classify_to_ruling(&x, 0)?;
        let Some(k) = rulings.iter().position(|r| *r == rho) else {
            rep.failures.push(format!("differential {coords:?} classifies to {rho}, which is not a ruling"));
            continue;
        };
        hit[k] = true;
        for (l, y) in forms.iter().enumerate() {
            if is_isomorphic(&x, y)? != (l == k) {
                rep.failures.push(format!("differential {coords:?} with ruling {rho} against normal form {}", rulings[l]));
            }
        }
    }
    rep.classes = hit.iter().filter(|&&h| h).count();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::points::enumerate_set_rulings;

    #[test]
    fn unknot_slice() {
        let f = Field::new(2).unwrap();
        let s = GradedPointSet::new(0, vec![0, -1]);
        let r = Ruling::from_pairs([(1, 2)]);
        let x = barannikov_form(f, &r, &s).unwrap();
        assert_eq!(x.d.get(0, 1), 1);
        x.validate_rank_one().unwrap();
        assert_eq!(classify_to_ruling(&x, 0).unwrap(), r);
    }

    #[test]
    fn empty_set() {
        let f = Field::new(3).unwrap();
        let x = barannikov_form(f, &Ruling::empty(), &GradedPointSet::empty(0)).unwrap();
        assert_eq!(x.dim(), 0);
        assert_eq!(classify_to_ruling(&x, 0).unwrap(), Ruling::empty());
    }

    #[test]
    fn nested_four() {
        let f = Field::new(2).unwrap();
        let s = GradedPointSet::new(0, vec![1, 0, -1, 0]);
        let r = Ruling::from_pairs([(1, 4), (2, 3)]);
        let x = barannikov_form(f, &r, &s).unwrap();
        assert_eq!(classify_to_ruling(&x, 0).unwrap(), r);
        assert_eq!(enumerate_set_rulings(&s), vec![r]);
    }

    #[test]
    fn census_on_four_alternating_points() {
        for q in [2, 3] {
            let f = Field::new(q).unwrap();
            let rep = barannikov_census(f, &GradedPointSet::new(0, vec![0, -1, 0, -1])).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.rulings, 1);
            // d(e2) = a e1, d(e4) = b e1 + c e3, acyclic iff a c != 0
            assert_eq!(rep.objects, ((q - 1) * (q - 1) * q) as usize);
        }
    }

    #[test]
    fn rejects_bad_ruling() {
        let f = Field::new(2).unwrap();
        let s = GradedPointSet::new(0, vec![-1, 0]);
        assert!(barannikov_form(f, &Ruling::from_pairs([(1, 2)]), &s).is_err());
    }
}
