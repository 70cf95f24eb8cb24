use cycount::complex::points::{enumerate_set_rulings, GradedPointSet, Ruling};
use cycount::exact::LaurentPoly;
use cycount::tangle::random::{random_closed_word, random_word};
use cycount::tangle::{parse_tangle, ruling_polynomial, ruling_transfer, sweep_transfer, Letter, TransferMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Brute force over all perfect matchings, filtered by the degree rule.
fn matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in 2..=n {
        let rest: Vec<usize> = (2..=n).filter(|&x| x != t).collect();
        for sub in matchings(rest.len()) {
            let mut pm = vec![(1, t)];
            pm.extend(sub.iter().map(|&(a, b)| (rest[a - 1], rest[b - 1])));
            out.push(pm);
        }
    }
    out
}

#[test]
fn four_point_rulings_match_brute_force() {
    for m in [0u32, 1, 2] {
        for code in 0..81 {
            let degs: Vec<i64> = (0..4).map(|i| (code / 3i64.pow(i)) % 3 - 1).collect();
            let s = GradedPointSet::new(m, degs);
            let mut want: Vec<Ruling> = matchings(4)
                .into_iter()
                .map(Ruling::from_pairs)
                .filter(|r| r.is_valid_for(&s))
                .collect();
            want.sort();
            assert_eq!(enumerate_set_rulings(&s), want);
        }
    }
    assert_eq!(matchings(4).len(), 3);
    let s = GradedPointSet::new(0, vec![0, -1, 0, -1]);
    assert_eq!(enumerate_set_rulings(&s).len(), 1);
}

#[test]
fn transfer_matches_sweep_on_seeded_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..300 {
        let m = [0, 1, 2, 3][i % 4];
        let w = random_word(&mut rng, m, 12, 8);
        assert_eq!(ruling_transfer(&w), sweep_transfer(&w).unwrap(), "{}", w.to_dsl());
    }
}

#[test]
fn closed_polynomials_have_nonnegative_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = 0;
    for i in 0..200 {
        let Some(w) = random_closed_word(&mut rng, [0, 1, 2][i % 3], 14, 6) else { continue };
        let p = ruling_polynomial(&w).unwrap();
        assert!(p.has_nonnegative_coefficients(), "{}", w.to_dsl());
        seen += 1;
    }
    assert!(seen > 50);
}

#[test]
fn switch_entries_only_at_equal_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let w = random_word(&mut rng, 0, 6, 6);
        for t in &w.letters {
            if let Letter::Crossing { .. } = t.kind {
                let m = cycount::tangle::letter_transfer(t);
                let has_z = m.entries().any(|(_, v)| v.coeff(1) != 0.into());
                if has_z {
                    assert_eq!(t.crossing_gap(), Some(0));
                }
            }
        }
    }
}

#[test]
fn spec_example_word_parses_slice_by_slice() {
    let w = parse_tangle("mod 2\nleft:\nL 1 -1\nL 2 0\nX 2\nX 2\nR 3\nR 1\n").unwrap();
    let slices: Vec<Vec<i64>> = w.letters.iter().map(|t| t.right.degrees.clone()).collect();
    assert_eq!(slices, vec![vec![0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1], vec![0, 1], vec![]]);
    assert!(w.is_closed());
}

fn arb_word() -> impl Strategy<Value = cycount::tangle::TangleWord> {
    (any::<u64>(), 0u32..4).prop_map(|(seed, m)| random_word(&mut ChaCha8Rng::seed_from_u64(seed), m, 8, 6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functoriality(seed in any::<u64>(), m in 0u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, m, 10, 6);
        let cut = w.letters.len() / 2;
        let mut a = cycount::tangle::TangleWord::identity(w.left.clone());
        for t in &w.letters[..cut] { a.push(t.kind).unwrap(); }
        let mut b = cycount::tangle::TangleWord::identity(a.right().clone());
        for t in &w.letters[cut..] { b.push(t.kind).unwrap(); }
        prop_assert_eq!(a.compose(&b).unwrap(), w.clone());
        prop_assert_eq!(ruling_transfer(&a).compose(&ruling_transfer(&b)), ruling_transfer(&w));
    }

    #[test]
    fn identities_map_to_identities(w in arb_word()) {
        let id = cycount::tangle::TangleWord::identity(w.right().clone());
        let r = ruling_transfer(&id);
        prop_assert_eq!(r.clone(), TransferMatrix::identity(r.rows.clone(), LaurentPoly::one()));
    }
}
