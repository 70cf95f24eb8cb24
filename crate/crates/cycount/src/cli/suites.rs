//! Verification suites, one per acceptance criterion.

use std::collections::BTreeSet;

use num::rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::aug::{basic_tangles, global_object_oracle, link_invariant, verify_main_theorem, BatteryBounds};
use crate::complex::{barannikov_census, barannikov_form, classify_to_ruling, enumerate_set_rulings, GradedPointSet};
use crate::error::Result;
use crate::exact::{laurent_eval_z, Field, LaurentPoly, QuadExt};
use crate::hall::{
    build_root_nilpotent, build_stable_nakayama, check_associativity, cone_oracle_sweep, heart_embedding_check,
    twist_reading_check, CategoryModel, CheckReport, HallAlgebra, NilClass, Partition,
};
use crate::tangle::random::random_word;
use crate::tangle::{parse_tangle, ruling_polynomial, ruling_transfer, sweep_transfer, TangleWord};

/// Suite names in criterion order.
pub const SUITES: [&str; 10] =
    ["unknot", "hopf", "hopf-twisted", "basic-tangles", "rulings", "barannikov", "associativity", "heart", "twist", "cones"];

/// Inputs shared by the suites.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    /// Restricts every suite to these field sizes where the suite has a choice.
    pub qs: Option<Vec<u64>>,
    pub seed: u64,
    /// Named words checked by the rulings suite on top of the random ones.
    pub corpus: Vec<(String, TangleWord)>,
}

impl SuiteConfig {
    fn qs(&self, default: &[u64]) -> Vec<u64> {
        match &self.qs {
            Some(qs) => qs.clone(),
            None => default.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub criterion: usize,
    pub cases: usize,
    pub passed: bool,
    /// First failing case, when there is one.
    pub counterexample: Option<String>,
}

#[derive(Default)]
struct Tally {
    cases: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.first.is_none() {
            self.first = Some(what());
        }
    }

    fn report(&mut self, rep: &CheckReport) {
        self.cases += rep.cases;
        if self.first.is_none() {
            if let Some(f) = rep.failures.first() {
                self.first = Some(format!("{}: {f}", rep.check));
            } else if rep.skipped > 0 {
                self.first = Some(format!("{}: {} cases skipped", rep.check, rep.skipped));
            }
        }
    }

    fn finish(self, suite: &str) -> SuiteResult {
        let criterion = SUITES.iter().position(|s| *s == suite).map_or(0, |i| i + 1);
        SuiteResult {
            suite: suite.into(),
            criterion,
            cases: self.cases,
            passed: self.first.is_none() && self.cases > 0,
            counterexample: self.first,
        }
    }
}

pub fn hopf_word(m: u32, k: i64) -> TangleWord {
    parse_tangle(&format!("mod {}\nleft:\nL 1 {k}\nL 3 -1\nX 2\nX 2\nR 3\nR 1\n", 2 * m)).expect("the Hopf word is valid")
}

pub fn unknot_word() -> TangleWord {
    parse_tangle("mod 0\nleft:\nL 1 -1\nR 1\n").expect("the unknot word is valid")
}

fn ratio(q: u64, num: u64, den: u64) -> QuadExt {
    QuadExt::from_rational(q, BigRational::new(num.into(), den.into()))
}

pub fn unknot(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let w = unknot_word();
    let mut t = Tally::default();
    for q in cfg.qs(&[2, 3, 5]) {
        let want = QuadExt::sqrt_q(q).div(&QuadExt::from_int(q, q as i64 - 1))?;
        let got = link_invariant(&w, q)?;
        t.check(got == want, || format!("q={q}: invariant {got}, expected {want}"));
        let z = laurent_eval_z(&LaurentPoly::monomial(-1, 1), q)?;
        t.check(z == want, || format!("q={q}: z^-1 evaluates to {z}"));
        if q <= 3 {
            let c = global_object_oracle(&w, q)?;
            let classes: Vec<(u64, i64)> = c.classes.iter().map(|d| (d.aut, d.gamma)).collect();
            t.check(classes == vec![(q - 1, 1)], || format!("q={q}: census {classes:?}"));
        }
    }
    Ok(t.finish("unknot"))
}

pub fn hopf(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut t = Tally::default();
    for q in cfg.qs(&[2, 3, 5]) {
        let want = ratio(q, q * q - q + 1, (q - 1) * (q - 1));
        for m in 0..=3 {
            let got = link_invariant(&hopf_word(m, 0), q)?;
            t.check(got == want, || format!("m={m} q={q}: invariant {got}, expected {want}"));
        }
        if q <= 3 {
            let c = global_object_oracle(&hopf_word(0, 0), q)?;
            let mut got: Vec<(u64, i64)> = c.classes.iter().map(|d| (d.aut, d.gamma)).collect();
            got.sort();
            let mut want = vec![((q - 1) * (q - 1), 0)];
            want.extend(std::iter::repeat((q - 1, 0)).take(q as usize));
            want.sort();
            t.check(got == want, || format!("q={q}: census {got:?}, expected {want:?}"));
        }
    }
    Ok(t.finish("hopf"))
}

/// `γ` of the unique object of the Hopf link with `k ≢ 0 (mod 2m)`.
pub fn hopf_gamma_regime(m: u32, k: i64) -> i64 {
    let unit = if m == 0 { k.abs() == 1 } else { [1, 2 * m as i64 - 1].contains(&k.rem_euclid(2 * m as i64)) };
    match (unit, m == 1) {
        (false, _) => 2,
        (true, false) => 4,
        (true, true) => 6,
    }
}

pub fn hopf_twisted(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut t = Tally::default();
    for q in cfg.qs(&[2, 3, 5]) {
        let want = ratio(q, q, (q - 1) * (q - 1));
        for m in 1..=3u32 {
            for k in 1..2 * m as i64 {
                let w = hopf_word(m, k);
                let got = link_invariant(&w, q)?;
                t.check(got == want, || format!("m={m} k={k} q={q}: invariant {got}, expected {want}"));
                if q <= 3 {
                    let c = global_object_oracle(&w, q)?;
                    let g: Vec<i64> = c.classes.iter().map(|d| d.gamma).collect();
                    let expect = hopf_gamma_regime(m, k);
                    t.check(g == vec![expect], || format!("m={m} k={k} q={q}: gammas {g:?}, expected [{expect}]"));
                }
            }
        }
    }
    Ok(t.finish("hopf-twisted"))
}

pub fn basic_tangle_battery(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let qs = cfg.qs(&[2, 3]);
    let mut t = Tally::default();
    for b in basic_tangles(&BatteryBounds::default()) {
        let w = TangleWord { m: b.left.m, left: b.left.clone(), letters: vec![b.clone()] };
        for r in verify_main_theorem(&w, &qs)? {
            t.check(r.passed(), || format!("{} at q={}: {:?}", w.to_dsl().replace('\n', "; "), r.q, r.mismatch));
        }
    }
    Ok(t.finish("basic-tangles"))
}

pub fn rulings(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut t = Tally::default();
    for i in 0..200 {
        let w = random_word(&mut rng, [0, 1, 2, 3][i % 4], 12, 8);
        t.check(ruling_transfer(&w) == sweep_transfer(&w)?, || format!("random word {i}: {}", w.to_dsl().replace('\n', "; ")));
    }
    for (name, w) in &cfg.corpus {
        t.check(ruling_transfer(w) == sweep_transfer(w)?, || format!("corpus word {name}"));
        if let Some(p) = ruling_polynomial(w) {
            t.check(p.has_nonnegative_coefficients(), || format!("corpus word {name}: polynomial {p}"));
        }
    }
    Ok(t.finish("rulings"))
}

/// Graded sets with at most `n` points and degrees in `0..=top`, deduplicated after reduction.
fn small_sets(n: usize, top: i64, m: u32) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for len in 0..=n {
        let mut v = vec![0i64; len];
        loop {
            out.insert(GradedPointSet::new(m, v.clone()).degrees);
            let mut i = 0;
            while i < len && v[i] == top {
                v[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
            v[i] += 1;
        }
    }
    out
}

pub fn barannikov(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut t = Tally::default();
    for m in [0u32, 1, 2] {
        for degs in small_sets(4, 3, m) {
            let set = GradedPointSet { m, degrees: degs };
            for q in cfg.qs(&[2, 3]) {
                let field = Field::new(q)?;
                for r in enumerate_set_rulings(&set) {
                    let back = classify_to_ruling(&barannikov_form(field, &r, &set)?, 0)?;
                    t.check(back == r, || format!("m={m} set {:?} q={q}: {r} classifies back to {back}", set.degrees));
                }
                let c = barannikov_census(field, &set)?;
                t.check(c.passed(), || format!("m={m} set {:?} q={q}: {c:?}", set.degrees));
            }
        }
    }
    Ok(t.finish("barannikov"))
}

pub fn associativity(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut t = Tally::default();
    for m in [3, 4] {
        for q in cfg.qs(&[2, 3]) {
            let model = build_stable_nakayama(q, m)?;
            let alg = HallAlgebra::new(&model)?;
            t.report(&check_associativity(&alg, &model.indecomposables(), 10)?);
        }
    }
    for q in cfg.qs(&[2]) {
        let model = build_root_nilpotent(q, 12)?;
        let alg = HallAlgebra::new(&model)?;
        t.report(&check_associativity(&alg, &model.indecomposables(), 10)?);
    }
    Ok(t.finish("associativity"))
}

/// Pairs of degree-zero stalks with total size at most `n`.
pub fn heart_pairs(n: usize) -> Vec<(NilClass, NilClass)> {
    let mut pairs = Vec::new();
    for a in 1..n {
        for b in 1..=n - a {
            for z in Partition::of_size(a) {
                for x in Partition::of_size(b) {
                    pairs.push((NilClass::stalk0(z.clone()), NilClass::stalk0(x)));
                }
            }
        }
    }
    pairs
}

pub fn heart(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut t = Tally::default();
    for q in cfg.qs(&[2, 3]) {
        let model = build_root_nilpotent(q, 12)?;
        let alg = HallAlgebra::new(&model)?;
        t.report(&heart_embedding_check(&alg, &heart_pairs(4), |z, x| model.classical_expansion(z, x))?);
    }
    Ok(t.finish("heart"))
}

fn all_pairs<C: Clone>(classes: &[C]) -> Vec<(C, C)> {
    classes.iter().flat_map(|z| classes.iter().map(move |x| (z.clone(), x.clone()))).collect()
}

pub fn twist(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut t = Tally::default();
    for q in cfg.qs(&[2, 3]) {
        let nil = build_root_nilpotent(q, 12)?;
        let classes: Vec<NilClass> = nil.classes_within(&Partition::new(vec![1, 1])).into_iter().filter(|c| c.size() <= 2).collect();
        t.report(&twist_reading_check(&nil, 1, 3, &all_pairs(&classes))?);
        for m in [3, 4] {
            let nak = build_stable_nakayama(q, m)?;
            t.report(&twist_reading_check(&nak, -1, -3, &all_pairs(&nak.classes_up_to(2)))?);
        }
    }
    Ok(t.finish("twist"))
}

pub fn cones(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut t = Tally::default();
    for q in cfg.qs(&[2]) {
        let model = build_root_nilpotent(q, 12)?;
        t.report(&cone_oracle_sweep(&model, &Partition::new(vec![2, 1]))?);
    }
    Ok(t.finish("cones"))
}

/// Runs one suite by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteResult> {
    match name {
        "unknot" => unknot(cfg),
        "hopf" => hopf(cfg),
        "hopf-twisted" => hopf_twisted(cfg),
        "basic-tangles" => basic_tangle_battery(cfg),
        "rulings" => rulings(cfg),
        "barannikov" => barannikov(cfg),
        "associativity" => associativity(cfg),
        "heart" => heart(cfg),
        "twist" => twist(cfg),
        "cones" => cones(cfg),
        other => Err(crate::error::CyError::Unsupported(format!("unknown suite `{other}`"))),
    }
}
