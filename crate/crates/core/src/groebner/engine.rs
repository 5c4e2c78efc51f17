//! Buchberger's algorithm over sparse module vectors.
//!
//! Ideals are the one-component case. Terms carry a component index and the
//! module order is position-over-term with component 0 the largest, so the
//! leading component of a reduced element bounds every component it touches.
//! Pair selection follows the sugar strategy; the coprime-leading-term
//! criterion and the chain criterion discard useless pairs.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::revlex;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub exps: Vec<u32>,
    pub comp: usize,
}

impl Term {
    fn divides(&self, other: &Term) -> bool {
        self.comp == other.comp && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Term) -> Term {
        Term {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
            comp: self.comp,
        }
    }

    fn quotient(&self, other: &Term) -> Vec<u32> {
        self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect()
    }

    fn coprime(&self, other: &Term) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum MonoOrder {
    /// Weighted degree, ties broken reverse lexicographically.
    WDegRevLex,
    /// Plain lexicographic, first variable most significant.
    #[allow(dead_code)]
    Lex,
    /// Total exponent of the first `k` variables first, then `WDegRevLex`.
    Elim(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Context {
    pub weights: Vec<u32>,
    pub order: MonoOrder,
    #[allow(dead_code)]
    pub field: Field,
    /// Degree of the basis vector of each component (for sugar).
    pub comp_offsets: Vec<i64>,
    pub cap: usize,
}

impl Context {
    pub fn ideal(weights: Vec<u32>, order: MonoOrder, field: Field) -> Self {
        Context { weights, order, field, comp_offsets: vec![0], cap: super::basis_cap() }
    }

    pub fn module(weights: Vec<u32>, field: Field, comp_offsets: Vec<i64>) -> Self {
        Context { weights, order: MonoOrder::WDegRevLex, field, comp_offsets, cap: super::basis_cap() }
    }

    fn wdeg(&self, e: &[u32]) -> i64 {
        e.iter().zip(&self.weights).map(|(&a, &w)| a as i64 * w as i64).sum()
    }

    pub fn degree(&self, t: &Term) -> i64 {
        self.wdeg(&t.exps) + self.comp_offsets.get(t.comp).copied().unwrap_or(0)
    }

    fn cmp_mono(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.order {
            MonoOrder::WDegRevLex => self.wdeg(a).cmp(&self.wdeg(b)).then_with(|| revlex(a, b)),
            MonoOrder::Lex => a.cmp(b),
            MonoOrder::Elim(k) => {
                let sa: u64 = a[..k].iter().map(|&e| e as u64).sum();
                let sb: u64 = b[..k].iter().map(|&e| e as u64).sum();
                sa.cmp(&sb)
                    .then_with(|| self.wdeg(a).cmp(&self.wdeg(b)))
                    .then_with(|| revlex(a, b))
            }
        }
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        b.comp.cmp(&a.comp).then_with(|| self.cmp_mono(&a.exps, &b.exps))
    }
}

/// Terms in strictly descending order, nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<(Term, Scalar)>,
}

impl AsRef<Vector> for Vector {
    fn as_ref(&self) -> &Vector {
        self
    }
}

impl Vector {
    pub fn from_unsorted(ctx: &Context, terms: Vec<(Term, Scalar)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ctx.cmp(&b.0, &a.0));
        let mut out: Vec<(Term, Scalar)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((u, d)) if *u == t => *d = &*d + &c,
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Vector { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Term, Scalar)> {
        self.terms.first()
    }

    fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            let inv = c.inv().expect("nonzero leading coefficient");
            for (_, d) in self.terms.iter_mut() {
                *d = &*d * &inv;
            }
        }
        self
    }

    /// Largest term degree; drives the sugar of inputs.
    fn max_degree(&self, ctx: &Context) -> i64 {
        self.terms.iter().map(|(t, _)| ctx.degree(t)).max().unwrap_or(0)
    }

    /// `self - c * m * other`, where multiplying by `m` preserves order.
    fn sub_scaled(&self, ctx: &Context, c: &Scalar, m: &[u32], other: &Vector) -> Vector {
        let shifted = other.terms.iter().map(|(t, d)| {
            let exps = t.exps.iter().zip(m).map(|(a, b)| a + b).collect();
            (Term { exps, comp: t.comp }, c * d)
        });
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = shifted.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => ctx.cmp(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => break,
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (t, d) = b.next().unwrap();
                    out.push((t, -&d));
                }
                Ordering::Equal => {
                    let (t, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x - &y;
                    if !s.is_zero() {
                        out.push((t.clone(), s));
                    }
                }
            }
        }
        Vector { terms: out }
    }
}

/// Fully reduces `f` modulo `basis` (no term of the result is divisible by a
/// leading term of the basis).
pub(crate) fn normal_form<B: AsRef<Vector>>(ctx: &Context, f: &Vector, basis: &[B]) -> Vector {
    // p[..i] is already irreducible and strictly above everything after it
    let mut p = f.terms.clone();
    let mut i = 0;
    while i < p.len() {
        let t = &p[i].0;
        let divisor = basis
            .iter()
            .map(|g| g.as_ref())
            .find(|g| g.lead().is_some_and(|(lt, _)| lt.divides(t)));
        match divisor {
            Some(g) => {
                let (lt, lc) = g.lead().unwrap();
                let coef = &p[i].1 * &lc.inv().expect("nonzero leading coefficient");
                let m = t.quotient(lt);
                let tail = Vector { terms: p.split_off(i) };
                p.extend(tail.sub_scaled(ctx, &coef, &m, g).terms);
            }
            None => i += 1,
        }
    }
    Vector { terms: p }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    sugar: i64,
}

struct Elem {
    v: Vector,
    sugar: i64,
}

impl AsRef<Vector> for Elem {
    fn as_ref(&self) -> &Vector {
        &self.v
    }
}

/// Computes the reduced Gröbner basis of the submodule spanned by `gens`,
/// sorted ascending by leading term.
pub(crate) fn groebner(ctx: &Context, gens: Vec<Vector>) -> Result<Vec<Vector>> {
    let mut basis: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut inputs: Vec<Vector> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|a, b| ctx.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    for g in inputs {
        let sugar = g.max_degree(ctx);
        add_element(ctx, &mut basis, &mut pairs, &mut pending, g.monic(), sugar)?;
    }

    while !pairs.is_empty() {
        let idx = select_pair(ctx, &pairs);
        let pair = pairs.swap_remove(idx);
        pending.remove(&(pair.i, pair.j));
        if chain_criterion(&basis, &pending, &pair) {
            continue;
        }
        let (fi, fj) = (&basis[pair.i].v, &basis[pair.j].v);
        let (lti, lci) = fi.lead().unwrap();
        let (ltj, lcj) = fj.lead().unwrap();
        let mi = pair.lcm.quotient(lti);
        let mj = pair.lcm.quotient(ltj);
        let ci = lci.inv().unwrap();
        let cj = lcj.inv().unwrap();
        let zero = Vector { terms: Vec::new() };
        let left = zero.sub_scaled(ctx, &-&ci, &mi, fi);
        let s = left.sub_scaled(ctx, &cj, &mj, fj);
        let h = normal_form(ctx, &s, &basis);
        if !h.is_zero() {
            add_element(ctx, &mut basis, &mut pairs, &mut pending, h.monic(), pair.sugar)?;
        }
    }
    Ok(interreduce(ctx, basis.into_iter().map(|e| e.v).collect()))
}

fn select_pair(ctx: &Context, pairs: &[Pair]) -> usize {
    let mut best = 0;
    for (k, p) in pairs.iter().enumerate().skip(1) {
        let b = &pairs[best];
        let ord = p
            .sugar
            .cmp(&b.sugar)
            .then_with(|| ctx.cmp(&p.lcm, &b.lcm))
            .then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
        if ord == Ordering::Less {
            best = k;
        }
    }
    best
}

fn add_element(
    ctx: &Context,
    basis: &mut Vec<Elem>,
    pairs: &mut Vec<Pair>,
    pending: &mut HashSet<(usize, usize)>,
    v: Vector,
    sugar: i64,
) -> Result<()> {
    if basis.len() >= ctx.cap {
        return Err(Error::BasisCap { cap: ctx.cap });
    }
    let k = basis.len();
    let (ltk, _) = v.lead().unwrap().clone();
    for (i, e) in basis.iter().enumerate() {
        let (lti, _) = e.v.lead().unwrap();
        // the product criterion only holds for ideals
        if lti.comp != ltk.comp || (ctx.comp_offsets.len() == 1 && lti.coprime(&ltk)) {
            continue;
        }
        let lcm = lti.lcm(&ltk);
        let di = ctx.degree(&lcm) - ctx.degree(lti);
        let dk = ctx.degree(&lcm) - ctx.degree(&ltk);
        let s = (e.sugar + di).max(sugar + dk);
        pairs.push(Pair { i, j: k, lcm, sugar: s });
        pending.insert((i, k));
    }
    basis.push(Elem { v, sugar });
    Ok(())
}

/// Buchberger's second criterion: skip `(i, j)` if some other leading term
/// divides their lcm and both companion pairs are already treated.
fn chain_criterion(basis: &[Elem], pending: &HashSet<(usize, usize)>, p: &Pair) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    basis.iter().enumerate().any(|(k, e)| {
        k != p.i
            && k != p.j
            && e.v.lead().unwrap().0.divides(&p.lcm)
            && !pending.contains(&key(p.i, k))
            && !pending.contains(&key(p.j, k))
    })
}

fn interreduce(ctx: &Context, mut elems: Vec<Vector>) -> Vec<Vector> {
    elems.sort_by(|a, b| ctx.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    let mut minimal: Vec<Vector> = Vec::new();
    for e in elems {
        let lt = &e.lead().unwrap().0;
        if !minimal.iter().any(|m| m.lead().unwrap().0.divides(lt)) {
            minimal.push(e);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Vector> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, v)| v.clone())
            .collect();
        let head = Vector { terms: vec![minimal[k].terms[0].clone()] };
        let tail = Vector { terms: minimal[k].terms[1..].to_vec() };
        let mut r = normal_form(ctx, &tail, &others);
        let mut terms = head.terms;
        terms.append(&mut r.terms);
        reduced.push(Vector { terms }.monic());
    }
    reduced
}
