//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! the library's Gröbner or linear-algebra code; polynomials are only read
//! through their term lists.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use projlat::{Field, GradedRing, HomogeneousIdeal, ModulePresentation, Monomial, Polynomial, Scalar};
use rand::Rng;

pub fn ring(spec: &[(&str, u32)]) -> Arc<GradedRing> {
    GradedRing::new(Field::Rational, spec.to_vec()).unwrap()
}

pub fn qq(names: &[&str]) -> Arc<GradedRing> {
    GradedRing::standard(names)
}

/// Parses sums of terms like `3/2*x^2*y - y^3` (no parentheses).
pub fn poly(r: &Arc<GradedRing>, text: &str) -> Polynomial {
    let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = src.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            terms.push(&src[start..i]);
            start = i;
        }
    }
    let mut out = Polynomial::zero(r);
    for t in terms {
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; r.nvars()];
        for factor in body.split('*') {
            let (base, e) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().unwrap()),
                None => (factor, 1),
            };
            if let Some(i) = r.var_index(base) {
                exps[i] += e;
            } else {
                let c: BigRational = match base.split_once('/') {
                    Some((a, b)) => BigRational::new(a.parse().unwrap(), b.parse().unwrap()),
                    None => BigRational::from_integer(base.parse::<BigInt>().unwrap()),
                };
                for _ in 0..e {
                    coeff *= &c;
                }
            }
        }
        if neg {
            coeff = -coeff;
        }
        out = &out + &Polynomial::term(r, Monomial(exps), Scalar::Q(coeff));
    }
    out
}

pub fn ideal(r: &Arc<GradedRing>, gens: &[&str]) -> HomogeneousIdeal {
    HomogeneousIdeal::new(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
}

pub fn cyclic(r: &Arc<GradedRing>, gens: &[&str]) -> ModulePresentation {
    ModulePresentation::cyclic(&ideal(r, gens))
}

pub fn q(s: &Scalar) -> BigRational {
    match s {
        Scalar::Q(r) => r.clone(),
        other => panic!("oracle works over QQ only, got {other:?}"),
    }
}

/// Exponent vectors of weighted degree `d`, enumerated independently of
/// the library.
pub fn monomials(weights: &[u32], d: i64) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], d: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == weights.len() {
            if d == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let w = weights[prefix.len()] as i64;
        let mut e = 0;
        while e * w <= d {
            prefix.push(e as u32);
            go(weights, d - e * w, prefix, out);
            prefix.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        go(weights, d, &mut Vec::new(), &mut out);
    }
    out
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Row-reduced span of rational vectors.
#[derive(Default)]
pub struct Span {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Span {
    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        let v: Vec<BigRational> = v.into_iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &c * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: Vec<BigRational>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// The degree-`d` slice of a homogeneous ideal, as the row space of the
/// Macaulay matrix.
pub struct MacaulaySlice {
    pub index: HashMap<Vec<u32>, usize>,
    pub span: Span,
}

impl MacaulaySlice {
    pub fn new(weights: &[u32], gens: &[Polynomial], d: i64) -> Self {
        let basis = monomials(weights, d);
        let index: HashMap<Vec<u32>, usize> = basis.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Span::default();
        for g in gens {
            let Some((lead, _)) = g.terms().first() else { continue };
            let dg: i64 = lead.exps().iter().zip(weights).map(|(e, w)| (*e as i64) * (*w as i64)).sum();
            for mu in monomials(weights, d - dg) {
                let mut row = vec![BigRational::zero(); index.len()];
                for (m, c) in g.terms() {
                    row[index[&add_exps(m.exps(), &mu)]] += q(c);
                }
                span.insert(row);
            }
        }
        MacaulaySlice { index, span }
    }

    pub fn vector(&self, f: &Polynomial) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.index.len()];
        for (m, c) in f.terms() {
            v[self.index[m.exps()]] += q(c);
        }
        v
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.span.contains(self.vector(f))
    }
}

/// Ideal membership of a homogeneous `f` by linear algebra in its degree.
pub fn macaulay_member(weights: &[u32], gens: &[Polynomial], f: &Polynomial) -> bool {
    let Some((lead, _)) = f.terms().first() else { return true };
    let d: i64 = lead.exps().iter().zip(weights).map(|(e, w)| (*e as i64) * (*w as i64)).sum();
    MacaulaySlice::new(weights, gens, d).contains(f)
}

/// `dim M_j` for a presentation, from its columns alone.
pub fn hilbert_oracle(m: &ModulePresentation, j: i64) -> usize {
    let w = m.ring().weights().to_vec();
    let mut index = HashMap::new();
    for (s, ds) in m.row_shifts().iter().enumerate() {
        for mono in monomials(&w, j + ds) {
            let k = index.len();
            index.insert((s, mono), k);
        }
    }
    let mut span = Span::default();
    for (col, ct) in m.columns().iter().zip(m.col_shifts()) {
        for mu in monomials(&w, j + ct) {
            let mut row = vec![BigRational::zero(); index.len()];
            for (s, e) in col.iter().enumerate() {
                for (mono, c) in e.terms() {
                    row[index[&(s, add_exps(mono.exps(), &mu))]] += q(c);
                }
            }
            span.insert(row);
        }
    }
    index.len() - span.dim()
}

/// Torsion iff the Hilbert function vanishes on a full period of weights
/// far out. `far` must exceed the top degree of the torsion part.
pub fn torsion_oracle(m: &ModulePresentation, far: i64) -> bool {
    let maxw = m.ring().max_weight() as i64;
    (far..far + maxw).all(|j| hilbert_oracle(m, j) == 0)
}

/// Monomial points `P` (variable masks) with `I ⊆ P`, for a monomial ideal
/// given by exponent vectors.
pub fn monomial_trace(nvars: usize, gens: &[Vec<u32>]) -> Vec<u64> {
    let full = (1u64 << nvars) - 1;
    (0..full)
        .filter(|&p| gens.iter().all(|g| g.iter().enumerate().any(|(i, &e)| e > 0 && p >> i & 1 == 1)))
        .collect()
}

pub fn random_poly(r: &Arc<GradedRing>, rng: &mut impl Rng, d: i64, max_terms: usize) -> Polynomial {
    let basis = monomials(r.weights(), d);
    let mut out = Polynomial::zero(r);
    if basis.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let c: i64 = rng.gen_range(-3..=3);
        out = &out + &Polynomial::term(r, Monomial(m), r.field().from_i64(c));
    }
    out
}

pub fn random_nonzero_poly(r: &Arc<GradedRing>, rng: &mut impl Rng, d: i64, max_terms: usize) -> Polynomial {
    loop {
        let p = random_poly(r, rng, d, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn is_small_integer(x: &BigRational) -> bool {
    x.is_integer() && x.abs() < BigRational::from_integer(1_000_000.into())
}

/// Thirty graded modules over three rings, each tagged with whether it is
/// torsion by construction.
pub fn module_corpus() -> Vec<(String, ModulePresentation, bool)> {
    let r2 = qq(&["x", "y"]);
    let r3 = qq(&["x", "y", "z"]);
    let w = ring(&[("x", 1), ("y", 1), ("z", 2)]);
    let mut out: Vec<(String, ModulePresentation, bool)> = Vec::new();
    let mut push = |name: &str, m: ModulePresentation, t: bool| out.push((name.to_string(), m, t));

    push("A2/(x,y)", cyclic(&r2, &["x", "y"]), true);
    push("A2/(x,y)^2", cyclic(&r2, &["x^2", "x*y", "y^2"]), true);
    push("A2/(x^2,xy)", cyclic(&r2, &["x^2", "x*y"]), false);
    push("A2/(xy)", cyclic(&r2, &["x*y"]), false);
    push("A2/(x^2-y^2)", cyclic(&r2, &["x^2 - y^2"]), false);
    push("A2", ModulePresentation::free(&r2, vec![0]), false);
    push("A2(-1)+A2(2)", ModulePresentation::free(&r2, vec![-1, 2]), false);
    let two_row = ModulePresentation::with_inferred_shifts(
        &r2,
        vec![0, -1],
        vec![vec![poly(&r2, "y"), poly(&r2, "1")]],
    )
    .unwrap();
    push("coker[y;1]", two_row, false);
    push("tail(A2/(x^2),2)", cyclic(&r2, &["x^2"]).tail(2).unwrap(), false);
    push("A2/(x) (x) A2/(y)", cyclic(&r2, &["x"]).tensor(&cyclic(&r2, &["y"])).unwrap(), true);
    push("A2/(x^3,y^2)(3)", cyclic(&r2, &["x^3", "y^2"]).shift(3), true);
    let m = cyclic(&r2, &["x^2", "x*y"]);
    push("tau(A2/(x^2,xy))", m.torsion_submodule().unwrap(), true);
    push("A2/(x^2,xy) mod tau", m.torsion_free_quotient().unwrap(), false);
    push("A2/(x^2+xy+y^2)", cyclic(&r2, &["x^2 + x*y + y^2"]), false);

    push("A3/(x,y,z)^2", cyclic(&r3, &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]), true);
    push("A3/(x,y)", cyclic(&r3, &["x", "y"]), false);
    push("A3/(xy,yz,zx)", cyclic(&r3, &["x*y", "y*z", "x*z"]), false);
    push("A3/(x^2,y^2,z^2)", cyclic(&r3, &["x^2", "y^2", "z^2"]), true);
    push("A3/(x^2-yz,y^2-xz,z^2-xy)", cyclic(&r3, &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]), false);
    let pair = ModulePresentation::with_inferred_shifts(
        &r3,
        vec![0, 0],
        vec![vec![poly(&r3, "x"), poly(&r3, "y")], vec![poly(&r3, "z"), poly(&r3, "0")]],
    )
    .unwrap();
    push("coker[x,z;y,0]", pair, false);
    push("A3/(x,y) (x) A3/(z)", cyclic(&r3, &["x", "y"]).tensor(&cyclic(&r3, &["z"])).unwrap(), true);
    let cube = cyclic(&r3, &["x^3", "x^2*y", "x^2*z", "x*y^2", "x*y*z", "x*z^2", "y^3", "y^2*z", "y*z^2", "z^3"]);
    push("A3/(x) + A3/m^3", cyclic(&r3, &["x"]).direct_sum(&cube).unwrap(), false);
    push("tail(A3,2)", ModulePresentation::free(&r3, vec![0]).tail(2).unwrap(), false);
    push(
        "A3/(p1,p2,p3)",
        cyclic(&r3, &["x + y + z", "x^2 + y^2 + z^2", "x^3 + y^3 + z^3"]),
        true,
    );
    push("A3/m^3 (1)", cube.shift(1), true);

    push("W/(x,y)", cyclic(&w, &["x", "y"]), false);
    push("W/(x,y,z)", cyclic(&w, &["x", "y", "z"]), true);
    push("W/(z-x^2,y)", cyclic(&w, &["z - x^2", "y"]), false);
    push("W/(x^2,y^2,z)", cyclic(&w, &["x^2", "y^2", "z"]), true);
    push(
        "W/(x) (x) W/(y^2,z^3) (-1)",
        cyclic(&w, &["x"]).tensor(&cyclic(&w, &["y^2", "z^3"])).unwrap().shift(-1),
        true,
    );
    out
}
