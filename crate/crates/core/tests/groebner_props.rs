mod common;

use std::sync::Arc;

use common::*;
use projlat::{GradedRing, HomogeneousIdeal, Monomial, Polynomial};
use proptest::prelude::*;

fn rings() -> Vec<Arc<GradedRing>> {
    vec![
        qq(&["x", "y"]),
        qq(&["x", "y", "z"]),
        ring(&[("x", 1), ("y", 1), ("z", 2)]),
    ]
}

/// A homogeneous polynomial of degree `d` from term picks.
fn pick(r: &Arc<GradedRing>, d: i64, picks: &[(usize, i64)]) -> Polynomial {
    let basis = monomials(r.weights(), d);
    Polynomial::from_terms(
        r,
        picks.iter().map(|(i, c)| (Monomial(basis[i % basis.len()].clone()), r.field().from_i64(*c))),
    )
}

type GenSpec = Vec<(i64, Vec<(usize, i64)>)>;

fn gen_spec() -> impl Strategy<Value = GenSpec> {
    prop::collection::vec((1i64..=4, prop::collection::vec((0usize..40, -3i64..=3), 1..4)), 1..4)
}

fn build(r: &Arc<GradedRing>, spec: &GenSpec) -> HomogeneousIdeal {
    let gens = spec.iter().map(|(d, p)| pick(r, *d, p)).filter(|g| !g.is_zero()).collect();
    HomogeneousIdeal::new(r, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn membership_matches_macaulay(ri in 0usize..3, spec in gen_spec(), probes in prop::collection::vec((0i64..=6, prop::collection::vec((0usize..80, -3i64..=3), 1..5)), 1..6)) {
        let r = &rings()[ri];
        let i = build(r, &spec);
        for (d, p) in &probes {
            let f = pick(r, *d, p);
            prop_assert_eq!(i.contains(&f).unwrap(), macaulay_member(r.weights(), i.generators(), &f), "{} in {}", f, i);
        }
        for g in i.generators() {
            prop_assert!(i.contains(g).unwrap());
        }
    }

    #[test]
    fn basis_is_reduced_and_homogeneous(ri in 0usize..3, spec in gen_spec()) {
        let r = &rings()[ri];
        let i = build(r, &spec);
        let gb = i.groebner_basis().unwrap().to_vec();
        for (k, g) in gb.iter().enumerate() {
            prop_assert!(g.is_homogeneous());
            prop_assert!(g.leading_term().unwrap().1.is_one());
            for (l, h) in gb.iter().enumerate() {
                if k != l {
                    let lm = &h.leading_term().unwrap().0;
                    prop_assert!(g.terms().iter().all(|(m, _)| !lm.divides(m)), "{} reducible by {}", g, h);
                }
            }
        }
        for w in gb.windows(2) {
            let (a, b) = (&w[0].leading_term().unwrap().0, &w[1].leading_term().unwrap().0);
            prop_assert_eq!(a.cmp_canonical(b, r.weights()), std::cmp::Ordering::Less);
        }
        for g in i.generators() {
            prop_assert!(i.normal_form(g).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_is_idempotent(ri in 0usize..3, spec in gen_spec(), d in 0i64..=6, p in prop::collection::vec((0usize..80, -3i64..=3), 1..6)) {
        let r = &rings()[ri];
        let i = build(r, &spec);
        let f = pick(r, d, &p);
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(i.contains(&(&f - &nf)).unwrap());
    }

    #[test]
    fn colon_intersection_saturation(ri in 0usize..3, a in gen_spec(), b in gen_spec()) {
        let r = &rings()[ri];
        let (i, j) = (build(r, &a), build(r, &b));
        prop_assume!(!j.is_zero());
        let colon = i.quotient(&j).unwrap();
        prop_assert!(colon.contains_ideal(&i).unwrap());
        let prod = colon.product(&j).unwrap();
        prop_assert!(i.contains_ideal(&prod).unwrap());
        let meet = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&meet).unwrap());
        prop_assert!(j.contains_ideal(&meet).unwrap());
        prop_assert!(meet.contains_ideal(&i.product(&j).unwrap()).unwrap());
        let sat = i.saturate(&j).unwrap();
        prop_assert!(sat.contains_ideal(&colon).unwrap());
        prop_assert!(sat.saturate(&j).unwrap().same_ideal(&sat).unwrap());
    }

    #[test]
    fn radical_of_powers(ri in 0usize..3, spec in gen_spec(), k in 1u32..4) {
        let r = &rings()[ri];
        let i = build(r, &spec);
        let pk = i.power(k).unwrap();
        for g in i.generators() {
            prop_assert!(pk.radical_contains(g).unwrap());
        }
    }
}

#[test]
fn macaulay_oracle_sanity() {
    let r = qq(&["x", "y"]);
    let gens = vec![poly(&r, "x^2"), poly(&r, "x*y")];
    assert!(macaulay_member(r.weights(), &gens, &poly(&r, "x^3 + 2*x*y^2")));
    assert!(!macaulay_member(r.weights(), &gens, &poly(&r, "y^3")));
    assert!(!macaulay_member(r.weights(), &gens, &poly(&r, "x^2 + y^2")));
    assert_eq!(monomials(&[1, 1, 1], 3).len(), 10);
    assert_eq!(monomials(&[1, 2], 4).len(), 3);
    assert!(monomials(&[2], 3).is_empty());
}

#[test]
fn known_bases() {
    let r = qq(&["x", "y"]);
    let i = ideal(&r, &["x^2", "x*y"]);
    let gb: Vec<String> = i.groebner_basis().unwrap().iter().map(|g| g.to_string()).collect();
    assert_eq!(gb, ["x*y", "x^2"]);
    let j = ideal(&r, &["x^2 - y^2", "x*y"]);
    let gb: Vec<String> = j.groebner_basis().unwrap().iter().map(|g| g.to_string()).collect();
    assert_eq!(gb, ["x*y", "x^2 - y^2", "y^3"]);
    let sat = i.saturate_irrelevant().unwrap();
    assert!(sat.same_ideal(&ideal(&r, &["x"])).unwrap());
}
