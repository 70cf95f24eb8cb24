use cycount::aug::{
    enumerate_basic_objects, global_object_oracle, link_invariant, verify_main_theorem, z_transfer, ObjectKind,
};
use cycount::complex::{enumerate_set_rulings, find_isomorphism, GradedPointSet, Ruling};
use cycount::exact::{laurent_eval_z, LaurentPoly, QuadExt};
use cycount::tangle::random::{random_plat_word, random_word};
use cycount::tangle::{parse_tangle, ruling_polynomial, BasicTangle, Letter, TangleWord};
use num::rational::BigRational;
use num::{BigInt, One};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hopf(m: u32, k: i64) -> TangleWord {
    parse_tangle(&format!("mod {}\nleft:\nL 1 {k}\nL 3 -1\nX 2\nX 2\nR 3\nR 1\n", 2 * m)).unwrap()
}

fn unknot() -> TangleWord {
    parse_tangle("mod 0\nleft:\nL 1 -1\nR 1\n").unwrap()
}

fn ratio(q: u64, num: i64, den: i64) -> QuadExt {
    QuadExt::from_rational(q, BigRational::new(num.into(), den.into()))
}

fn k_nonzero(m: u32, k: i64) -> bool {
    m == 0 && k != 0 || m > 0 && k.rem_euclid(2 * m as i64) != 0
}

#[test]
fn unknot_invariant_and_census() {
    let w = unknot();
    for q in [2u64, 3, 5] {
        let want = QuadExt::sqrt_q(q).div(&QuadExt::from_int(q, q as i64 - 1)).unwrap();
        assert_eq!(link_invariant(&w, q).unwrap(), want);
        assert_eq!(laurent_eval_z(&LaurentPoly::monomial(-1, 1), q).unwrap(), want);
    }
    for q in [2u64, 3] {
        let c = global_object_oracle(&w, q).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!((c.classes[0].aut, c.classes[0].gamma), (q - 1, 1));
    }
}

#[test]
fn hopf_values_for_all_residues() {
    for q in [2u64, 3, 5] {
        let split = ratio(q, (q * q - q + 1) as i64, ((q - 1) * (q - 1)) as i64);
        let twisted = ratio(q, q as i64, ((q - 1) * (q - 1)) as i64);
        for m in 0..=3u32 {
            let ks: Vec<i64> = if m == 0 { (-3..=3).collect() } else { (0..2 * m as i64).collect() };
            for k in ks {
                let want = if k_nonzero(m, k) { &twisted } else { &split };
                assert_eq!(&link_invariant(&hopf(m, k), q).unwrap(), want, "m={m} k={k} q={q}");
            }
        }
    }
}

#[test]
fn hopf_split_census() {
    for q in [2u64, 3] {
        let c = global_object_oracle(&hopf(0, 0), q).unwrap();
        let mut got: Vec<(u64, i64)> = c.classes.iter().map(|d| (d.aut, d.gamma)).collect();
        got.sort();
        let mut want = vec![((q - 1) * (q - 1), 0)];
        want.extend(std::iter::repeat((q - 1, 0)).take(q as usize));
        want.sort();
        assert_eq!(got, want);
        assert_eq!(c.total, link_invariant(&hopf(0, 0), q).unwrap());
    }
}

#[test]
fn hopf_twisted_gamma_regimes() {
    // (m, k, gamma): |k| > 1, then k = ±1 with m ≠ 1, then k = ±1 with m = 1
    let cases = [(0, 3, 2), (2, 2, 2), (3, 2, 2), (3, 3, 2), (2, 1, 4), (2, 3, 4), (3, 5, 4), (0, -1, 4), (1, 1, 6)];
    for (m, k, g) in cases {
        for q in [2u64, 3] {
            let c = global_object_oracle(&hopf(m, k), q).unwrap();
            assert_eq!(c.classes.len(), 1, "m={m} k={k}");
            assert_eq!(c.classes[0].gamma, g, "m={m} k={k} q={q}");
            assert_eq!(c.total, ratio(q, q as i64, ((q - 1) * (q - 1)) as i64));
        }
    }
}

#[test]
fn oracle_agrees_with_functor_on_random_plats() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 12 {
        let m = [0u32, 1, 2][checked % 3];
        let Some(w) = random_plat_word(&mut rng, m, 4, 3) else { continue };
        for q in [2u64, 3] {
            let c = global_object_oracle(&w, q).unwrap();
            assert_eq!(c.total, link_invariant(&w, q).unwrap(), "{}", w.to_dsl());
            if c.components == 1 {
                for d in &c.classes {
                    assert_eq!(d.gamma, 2 * d.ext0 as i64 - d.ext1 as i64 - 1, "{}", w.to_dsl());
                }
            }
        }
        checked += 1;
    }
}

#[test]
fn switch_weight_on_two_strands() {
    let q = 2;
    let t = BasicTangle::new(GradedPointSet::new(0, vec![0, 0]), Letter::Crossing { k: 1 }).unwrap();
    // a pair (1,2) needs deg 1 = deg 2 + 1, so two equal-degree points have no ruling
    assert!(enumerate_set_rulings(&t.right).is_empty());
    let t = BasicTangle::new(GradedPointSet::new(0, vec![1, 1, 0, 0]), Letter::Crossing { k: 1 }).unwrap();
    let rho = Ruling::from_pairs([(1, 3), (2, 4)]);
    let w = TangleWord { m: 0, left: t.left.clone(), letters: vec![t.clone()] };
    let z = z_transfer(&w, q).unwrap();
    let zv = laurent_eval_z(&LaurentPoly::monomial(1, 1), q).unwrap();
    let nested = Ruling::from_pairs([(1, 4), (2, 3)]);
    assert_eq!(z.get_by(&nested, &nested).cloned().unwrap(), zv);
    assert_eq!(z.get_by(&rho, &nested).cloned().unwrap(), QuadExt::one(q));
    let kinds: Vec<ObjectKind> = enumerate_basic_objects(&t, &nested, q).unwrap().iter().map(|o| o.kind).collect();
    assert!(kinds.contains(&ObjectKind::Switch));
}

#[test]
fn right_cusp_automorphisms() {
    for q in [2u64, 3, 5] {
        let t = BasicTangle::new(GradedPointSet::new(0, vec![0, 1, 0, -1]), Letter::RightCusp { i: 3 }).unwrap();
        for rho1 in enumerate_set_rulings(&t.right) {
            for o in enumerate_basic_objects(&t, &rho1, q).unwrap() {
                assert_eq!(o.aut, o.aut0);
                assert_eq!(o.aut, o.aut1 * (q - 1));
            }
        }
    }
}

/// Crossing objects with a fixed right boundary are pairwise non-isomorphic.
#[test]
fn crossing_classes_are_distinct() {
    for m in [0u32, 1, 2] {
        for degs in [vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0], vec![2, 1, 1, 0]] {
            let left = GradedPointSet::new(m, degs);
            for k in 1..4 {
                let t = BasicTangle::new(left.clone(), Letter::Crossing { k }).unwrap();
                for rho1 in enumerate_set_rulings(&t.right) {
                    let objs = enumerate_basic_objects(&t, &rho1, 3).unwrap();
                    for (a, x) in objs.iter().enumerate() {
                        for y in &objs[a + 1..] {
                            assert!(find_isomorphism(&x.object, &y.object).unwrap().is_none());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn identity_words_give_identity_matrices() {
    for degs in [vec![], vec![0, -1], vec![1, 0, 1, 0], vec![0, 0, -1, -1]] {
        let w = TangleWord::identity(GradedPointSet::new(0, degs));
        let z = z_transfer(&w, 3).unwrap();
        for (i, _) in z.rows.iter().enumerate() {
            for (j, _) in z.cols.iter().enumerate() {
                let want = if i == j { QuadExt::one(3) } else { QuadExt::zero(3) };
                assert_eq!(z.get(i, j).cloned().unwrap_or_else(|| QuadExt::zero(3)), want);
            }
        }
    }
}

/// Every rational coefficient has a denominator built from the primes of `q(q-1)`.
fn denominators_ok(v: &QuadExt, q: u64) -> bool {
    v.parts().iter().all(|r| {
        let mut d: BigInt = r.denom().clone();
        for p in [2u64, 3, 5, 7] {
            if (q * (q - 1)) % p == 0 {
                while (&d % p) == BigInt::from(0) {
                    d /= p;
                }
            }
        }
        d.is_one()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn z_is_functorial(seed in 0u64..1_000_000, m in 0u32..3, q in prop::sample::select(vec![2u64, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, m, 6, 4);
        let cut = w.letters.len() / 2;
        let a = TangleWord { m, left: w.left.clone(), letters: w.letters[..cut].to_vec() };
        let b = TangleWord { m, left: a.right().clone(), letters: w.letters[cut..].to_vec() };
        let whole = z_transfer(&w, q).unwrap();
        let prod = z_transfer(&a, q).unwrap().compose(&z_transfer(&b, q).unwrap());
        prop_assert_eq!(whole.rows.clone(), prod.rows.clone());
        for i in 0..whole.rows.len() {
            for j in 0..whole.cols.len() {
                let zero = QuadExt::zero(q);
                prop_assert_eq!(whole.get(i, j).unwrap_or(&zero), prod.get(i, j).unwrap_or(&zero));
            }
        }
    }

    #[test]
    fn main_identity_on_random_words(seed in 0u64..1_000_000, m in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, m, 8, 4);
        for r in verify_main_theorem(&w, &[2, 3, 5]).unwrap() {
            prop_assert!(r.passed(), "{} {:?}", w.to_dsl(), r);
        }
    }

    #[test]
    fn closed_values_have_groupoid_denominators(seed in 0u64..1_000_000, m in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(w) = cycount::tangle::random::random_closed_word(&mut rng, m, 10, 4) {
            for q in [2u64, 3, 5] {
                let v = link_invariant(&w, q).unwrap();
                prop_assert!(denominators_ok(&v, q), "{} {}", w.to_dsl(), v);
                prop_assert_eq!(v, laurent_eval_z(&ruling_polynomial(&w).unwrap(), q).unwrap());
            }
        }
    }
}
