//! Acceptance suite: one timed PASS/FAIL line per criterion.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use projlat::finite::{
    exhaustive_classification_check, model_ring, monomial_points, monomial_proj_model, open_lattice, point_ideal,
    soberification_check, FiniteSpectralSpace,
};
use projlat::serre::{classification_round_trip, classification_round_trip_open};
use projlat::session::{mask_timing, run_session, OutputMode, DEMO_SESSION};
use projlat::{
    BasicOpen, GradedRing, HomogeneousIdeal, ModulePresentation, Monomial, Polynomial, SectionElement, SerreSupport,
    ThomasonDatum,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn torsion_quotients() -> Outcome {
    let mut checked = 0;
    for r in [ring(&[("x", 1), ("y", 1)]), ring(&[("x", 1), ("y", 1), ("z", 2)])] {
        let a = ModulePresentation::free(&r, vec![0]);
        let plus = HomogeneousIdeal::irrelevant(&r);
        for d in -2..=2 {
            for t in 1..=3 {
                let m = ModulePresentation::cyclic(&plus.power(t).map_err(e)?).shift(d);
                ensure(m.is_torsion().map_err(e)?, || format!("A/A+^{t}({d}) over {r}"))?;
                checked += 1;
            }
            for n in 1..=3 {
                let m = a.quotient_by(&a.tail_generators(n).map_err(e)?).map_err(e)?.shift(d);
                ensure(m.is_torsion().map_err(e)?, || format!("A/A_>={n}({d}) over {r}"))?;
                checked += 1;
            }
            ensure(!a.shift(d).is_torsion().map_err(e)?, || format!("A({d}) over {r}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} modules"))
}

fn three_way_torsion() -> Outcome {
    let corpus = module_corpus();
    for (name, m, expected) in &corpus {
        let t = m.is_torsion().map_err(e)?;
        let s = m.support().map_err(e)?.is_empty().map_err(e)?;
        let plus = HomogeneousIdeal::irrelevant(m.ring());
        let rad = m.annihilator().map_err(e)?.radical_contains_ideal(&plus).map_err(e)?;
        let hilb = torsion_oracle(m, 12);
        ensure(t == s && s == rad && rad == hilb && hilb == *expected, || {
            format!("{name}: torsion {t}, empty support {s}, A+ in rad Ann {rad}, hilbert {hilb}")
        })?;
    }
    Ok(format!("{} modules", corpus.len()))
}

fn random_ideal(rng: &mut ChaCha8Rng) -> HomogeneousIdeal {
    let specs: [&[(&str, u32)]; 5] = [
        &[("x", 1)],
        &[("x", 1), ("y", 1)],
        &[("x", 1), ("y", 1), ("z", 1)],
        &[("x", 1), ("y", 1), ("z", 1)],
        &[("x", 1), ("y", 1), ("z", 2)],
    ];
    let r = ring(specs[rng.gen_range(0..specs.len())]);
    let ngens = rng.gen_range(1..=3);
    let gens = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            random_nonzero_poly(&r, rng, d, 3)
        })
        .collect();
    HomogeneousIdeal::new(&r, gens).unwrap()
}

fn groebner_membership() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b);
    let mut decisions = 0;
    for _ in 0..50 {
        let i = random_ideal(&mut rng);
        let r = i.ring().clone();
        for d in 0..=6 {
            let slice = MacaulaySlice::new(r.weights(), i.generators(), d);
            let mut tests: Vec<Polynomial> = monomials(r.weights(), d)
                .into_iter()
                .map(|m| Polynomial::term(&r, Monomial(m), r.field().one()))
                .collect();
            for _ in 0..3 {
                tests.push(random_poly(&r, &mut rng, d, 4));
                let mut member = Polynomial::zero(&r);
                for g in i.generators() {
                    let dg = g.weighted_degree().unwrap();
                    member = &member + &(&random_poly(&r, &mut rng, d - dg, 3) * g);
                }
                tests.push(member);
            }
            for f in &tests {
                let lib = i.contains(f).map_err(e)?;
                let oracle = slice.contains(f);
                ensure(lib == oracle, || format!("{f} in {i}: library {lib}, oracle {oracle}"))?;
                decisions += 1;
            }
        }
    }
    Ok(format!("{decisions} decisions on 50 ideals"))
}

fn symbolic_data() -> Vec<(Arc<GradedRing>, Vec<Vec<&'static str>>)> {
    let r2 = qq(&["x", "y"]);
    let r3 = qq(&["x", "y", "z"]);
    let d2: Vec<Vec<Vec<&str>>> = vec![
        vec![],
        vec![vec!["0"]],
        vec![vec!["x"]],
        vec![vec!["x"], vec!["y"]],
        vec![vec!["x - y"]],
        vec![vec!["x^2 + y^2"]],
        vec![vec!["x*y"]],
        vec![vec!["x", "y"]],
        vec![vec!["x^2"], vec!["x - 2*y"]],
        vec![vec!["x^3 - y^3"]],
        vec![vec!["x^2 - y^2"], vec!["y"]],
        vec![vec!["x^2*y - x*y^2"]],
    ];
    let d3: Vec<Vec<Vec<&str>>> = vec![
        vec![],
        vec![vec!["0"]],
        vec![vec!["x"]],
        vec![vec!["x", "y"]],
        vec![vec!["x", "y"], vec!["y", "z"]],
        vec![vec!["x*y*z"]],
        vec![vec!["x^2 - y*z"]],
        vec![vec!["x", "y - z"], vec!["z"]],
        vec![vec!["x*y", "y*z", "x*z"]],
        vec![vec!["x + y + z"], vec!["x", "y"]],
        vec![vec!["x^2 + y^2 - z^2"]],
        vec![vec!["x - y", "y - z"]],
        vec![vec!["x", "y", "z"]],
    ];
    let mut out = Vec::new();
    for d in d2 {
        out.push((r2.clone(), d));
    }
    for d in d3 {
        out.push((r3.clone(), d));
    }
    out
}

fn classification() -> Outcome {
    let data = symbolic_data();
    ensure(data.len() == 25, || format!("{} data", data.len()))?;
    let corpus = module_corpus();
    for (r, comps) in &data {
        let ideals: Vec<HomogeneousIdeal> = comps.iter().map(|g| ideal(r, g)).collect();
        let u = ThomasonDatum::from_ideals(r, &ideals).map_err(e)?;
        let rep = classification_round_trip_open(&u).map_err(e)?;
        ensure(rep.passed(), || format!("phi psi on {u}:\n{rep}"))?;
        let gens: Vec<ModulePresentation> = ideals.iter().map(ModulePresentation::cyclic).collect();
        let s = SerreSupport::from_modules(r, &gens).map_err(e)?;
        let probes: Vec<ModulePresentation> = std::iter::once(ModulePresentation::free(r, vec![0]))
            .chain(corpus.iter().filter(|(_, m, _)| m.ring() == r).map(|(_, m, _)| m.clone()))
            .collect();
        let rep = classification_round_trip(&s, &probes).map_err(e)?;
        ensure(rep.passed(), || format!("psi phi on {s}:\n{rep}"))?;
    }
    let mut opens = 0;
    for n in 1..=3 {
        let r = model_ring(n).map_err(e)?;
        let rep = exhaustive_classification_check(&r).map_err(e)?;
        ensure(rep.passed(), || format!("{rep}"))?;
        opens += rep.checks.iter().filter(|c| c.name.starts_with("dual-open")).count();
    }
    Ok(format!("25 symbolic data, {opens} dual-opens"))
}

/// Every partial order on `n` labelled points.
fn all_posets(n: usize) -> Vec<FiniteSpectralSpace> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << pairs.len()) {
        let rel = |i: usize, j: usize| i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| bits >> k & 1 == 1);
        if let Ok(x) = FiniteSpectralSpace::from_order(labels.clone(), rel) {
            out.push(x);
        }
    }
    out
}

fn finite_models() -> Outcome {
    let mut spaces = Vec::new();
    for n in 1..=4 {
        spaces.push((format!("monomial model n={n}"), monomial_proj_model(&*model_ring(n).map_err(e)?).map_err(e)?));
    }
    let mut posets = 0;
    for n in 1..=4 {
        for (k, x) in all_posets(n).into_iter().enumerate() {
            spaces.push((format!("poset {n}.{k}"), x));
            posets += 1;
        }
    }
    for (name, x) in &spaces {
        let dual = x.hochster_dual();
        ensure(dual.hochster_dual() == *x, || format!("{name}: (X*)* != X"))?;
        for (which, y) in [("X", x), ("X*", &dual)] {
            let s = y.spectral_report();
            ensure(s.passed(), || format!("{name} {which}:\n{s}"))?;
            let l = open_lattice(y).axiom_report();
            ensure(l.passed(), || format!("{name} {which}:\n{l}"))?;
            let b = soberification_check(y);
            ensure(b.passed(), || format!("{name} {which}:\n{b}"))?;
        }
    }
    Ok(format!("4 monomial models, {posets} posets"))
}

fn prime_elements() -> Outcome {
    let mut points = 0;
    for n in 1..=3 {
        let r = model_ring(n).map_err(e)?;
        let rep = exhaustive_classification_check(&r).map_err(e)?;
        let relevant: Vec<_> = rep
            .checks
            .iter()
            .filter(|c| c.name.starts_with("S_") || c.name.contains("bijection"))
            .collect();
        ensure(relevant.iter().all(|c| c.pass), || format!("{rep}"))?;
        points += relevant.len() - 1;
    }
    Ok(format!("{points} points"))
}

fn random_monomial_ideal(r: &Arc<GradedRing>, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let n = r.nvars();
    (0..rng.gen_range(1..=3))
        .map(|_| loop {
            let m: Vec<u32> = (0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { 0 }).collect();
            if m.iter().any(|&x| x > 0) {
                break m;
            }
        })
        .collect()
}

fn tensor_support() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e);
    let rings = [qq(&["x", "y"]), qq(&["x", "y", "z"])];
    let mut pairs = 0;
    for k in 0..24 {
        let r = &rings[k % 2];
        let gi = random_monomial_ideal(r, &mut rng);
        let gj = random_monomial_ideal(r, &mut rng);
        let m = ModulePresentation::cyclic(&HomogeneousIdeal::monomial(r, &gi)).shift(rng.gen_range(-2..=2));
        let n = ModulePresentation::cyclic(&HomogeneousIdeal::monomial(r, &gj));
        let t = m.tensor(&n).map_err(e)?;
        let st = t.support().map_err(e)?;
        let meet = m.support().map_err(e)?.intersect(&n.support().map_err(e)?).map_err(e)?;
        ensure(st.same_locus(&meet).map_err(e)?, || format!("pair {k}: {st} vs {meet}"))?;
        let ti = monomial_trace(r.nvars(), &gi);
        let tj = monomial_trace(r.nvars(), &gj);
        for p in monomial_points(r.nvars()) {
            let expect = ti.contains(&p) && tj.contains(&p);
            let got = st.contains_point(&point_ideal(r, p)).map_err(e)?;
            ensure(got == expect, || format!("pair {k}: point {p:b}: library {got}, combinatorial {expect}"))?;
        }
        pairs += 1;
    }
    let corpus = module_corpus();
    let picks = [(2, 4), (3, 13), (7, 8), (15, 18), (16, 19), (26, 27)];
    for (a, b) in picks {
        let (m, n) = (&corpus[a].1, &corpus[b].1);
        let st = m.tensor(n).map_err(e)?.support().map_err(e)?;
        let meet = m.support().map_err(e)?.intersect(&n.support().map_err(e)?).map_err(e)?;
        ensure(st.same_locus(&meet).map_err(e)?, || format!("{} with {}: {st} vs {meet}", corpus[a].0, corpus[b].0))?;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs"))
}

fn random_section(open: &Arc<BasicOpen>, rng: &mut ChaCha8Rng) -> SectionElement {
    let k = rng.gen_range(0..=3);
    let r = open.ring().clone();
    let g = random_poly(&r, rng, k as i64, 3);
    open.section(&g, k).unwrap()
}

fn sections() -> Outcome {
    let r = qq(&["x", "y"]);
    let x = r.var(0);
    let dx = BasicOpen::new(&x, None).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c);
    for _ in 0..50 {
        let s = random_section(&dx, &mut rng);
        let p = s.dehomogenized().ok_or("no dehomogenization on D(x)")?;
        ensure(p.terms().iter().all(|(m, _)| m.exps()[0] == 0), || format!("{s} gives {p}"))?;
        ensure(s.power() == 0 || s.numerator().terms().iter().any(|(m, _)| m.exps()[0] == 0), || {
            format!("{s} is not reduced")
        })?;
        let j = rng.gen_range(1..=3);
        let padded = dx.section(&(s.numerator() * &x.pow(j)), s.power() + j).map_err(e)?;
        ensure(padded == s, || format!("{padded} and {s} differ structurally"))?;
        ensure(padded.section_eq(&s).map_err(e)?, || format!("{padded} != {s}"))?;
    }
    let h1 = poly(&r, "y");
    let h2 = poly(&r, "x + y");
    for _ in 0..50 {
        let s = random_section(&dx, &mut rng);
        let stepwise = s.restrict(&h1).map_err(e)?.restrict(&h2).map_err(e)?;
        let direct = s.restrict(&(&h1 * &h2)).map_err(e)?;
        ensure(stepwise.section_eq(&direct).map_err(e)?, || format!("restrictions of {s} disagree"))?;
        let t = random_section(&dx, &mut rng);
        let sum = s.add(&t).map_err(e)?.restrict(&h1).map_err(e)?;
        let sum2 = s.restrict(&h1).map_err(e)?.add(&t.restrict(&h1).map_err(e)?).map_err(e)?;
        ensure(sum.section_eq(&sum2).map_err(e)?, || format!("restriction not additive on {s}, {t}"))?;
        let prod = s.mul(&t).map_err(e)?.restrict(&h1).map_err(e)?;
        let prod2 = s.restrict(&h1).map_err(e)?.mul(&t.restrict(&h1).map_err(e)?).map_err(e)?;
        ensure(prod.section_eq(&prod2).map_err(e)?, || format!("restriction not multiplicative on {s}, {t}"))?;
    }
    let one = dx.one();
    let zero = dx.zero();
    for _ in 0..50 {
        let (a, b, c) = (random_section(&dx, &mut rng), random_section(&dx, &mut rng), random_section(&dx, &mut rng));
        let laws = [
            ("add assoc", a.add(&b).and_then(|v| v.add(&c)), b.add(&c).and_then(|v| a.add(&v))),
            ("mul assoc", a.mul(&b).and_then(|v| v.mul(&c)), b.mul(&c).and_then(|v| a.mul(&v))),
            ("add comm", a.add(&b), b.add(&a)),
            ("mul comm", a.mul(&b), b.mul(&a)),
            (
                "distributive",
                b.add(&c).and_then(|v| a.mul(&v)),
                a.mul(&b).and_then(|u| a.mul(&c).and_then(|v| u.add(&v))),
            ),
            ("unit", a.mul(&one), Ok(a.clone())),
            ("zero", a.add(&zero), Ok(a.clone())),
            ("inverse", a.sub(&a), Ok(zero.clone())),
        ];
        for (law, lhs, rhs) in laws {
            let (lhs, rhs) = (lhs.map_err(e)?, rhs.map_err(e)?);
            ensure(lhs.section_eq(&rhs).map_err(e)?, || format!("{law}: {lhs} vs {rhs}"))?;
        }
    }
    Ok("50 normal forms, 50 restriction chains, 50 law triples".into())
}

fn demo_replay() -> Outcome {
    let run = || -> Result<String, String> {
        let out = run_session(DEMO_SESSION, None).map_err(e)?;
        ensure(out.exit_code == 0, || format!("demo exit code {}", out.exit_code))?;
        Ok(mask_timing(&out.render(OutputMode::Json)))
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "json replays differ".into())?;
    Ok(format!("{} records", a.lines().count()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 torsion of A/A+^t, A/A_>=n and A(d)", 5, torsion_quotients),
        ("2 torsion <=> empty support <=> A+ in rad Ann on the corpus", 30, three_way_torsion),
        ("3 Groebner membership vs Macaulay matrices", 60, groebner_membership),
        ("4 classification round trips", 30, classification),
        ("5 finite models: duality, L1-L5, soberification", 10, finite_models),
        ("6 P -> S_P hits the prime elements", 10, prime_elements),
        ("7 supp(M (x) N) = supp M meet supp N", 30, tensor_support),
        ("8 section rings over QQ[x,y]", 10, sections),
        ("9 demo session replay is deterministic", 5, demo_replay),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        match (&outcome, in_time) {
            (Ok(detail), true) => println!("PASS criterion {name}: {detail} ({:.2}s, limit {limit}s)", took.as_secs_f64()),
            (Ok(detail), false) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} but took {:.2}s, limit {limit}s", took.as_secs_f64());
            }
            (Err(msg), _) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({:.2}s)", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
