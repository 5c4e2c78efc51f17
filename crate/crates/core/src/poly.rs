//! Weighted polynomial rings `k[x_1..x_n]`, `deg x_i = w_i >= 1`, and their
//! sparse exact-coefficient polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A positively graded polynomial ring over a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedRing {
    names: Vec<String>,
    weights: Vec<u32>,
    field: Field,
}

impl GradedRing {
    pub fn new<S: Into<String>>(field: Field, vars: Vec<(S, u32)>) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let mut names = Vec::with_capacity(vars.len());
        let mut weights = Vec::with_capacity(vars.len());
        for (name, w) in vars {
            let name = name.into();
            if w == 0 {
                return Err(Error::InvalidRing(format!("weight of {name} must be at least 1")));
            }
            if names.contains(&name) {
                return Err(Error::InvalidRing(format!("duplicate variable {name}")));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(Arc::new(GradedRing { names, weights, field }))
    }

    /// Standard-graded ring over the rationals, one variable per name.
    pub fn standard(names: &[&str]) -> Arc<Self> {
        Self::new(Field::Rational, names.iter().map(|n| (*n, 1)).collect())
            .expect("valid standard ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same ring with a different coefficient field.
    pub fn with_field(&self, field: Field) -> Arc<Self> {
        Arc::new(GradedRing { names: self.names.clone(), weights: self.weights.clone(), field })
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        Polynomial::term(self, Monomial(e), self.field.one())
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// All monomials of weighted degree exactly `d`, in descending canonical order.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let mut cur = vec![0u32; self.nvars()];
        fill_monomials(&self.weights, 0, d as u64, &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp_canonical(a, &self.weights));
        out
    }
}

fn fill_monomials(w: &[u32], i: usize, rest: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == w.len() {
        if rest == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    let wi = w[i] as u64;
    let mut e = 0u64;
    while e * wi <= rest {
        cur[i] = e as u32;
        fill_monomials(w, i + 1, rest - e * wi, cur, out);
        e += 1;
    }
    cur[i] = 0;
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, (n, w)) in self.names.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{w}")?;
        }
        write!(f, "]")
    }
}

/// An exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, weights: &[u32]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Weighted degree, then reverse lexicographic.
    pub fn cmp_canonical(&self, other: &Monomial, weights: &[u32]) -> Ordering {
        self.degree(weights)
            .cmp(&other.degree(weights))
            .then_with(|| revlex(&self.0, &other.0))
    }
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent in
/// the last differing variable is the larger one.
pub(crate) fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// A polynomial with terms stored in descending canonical order, no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<GradedRing>,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<GradedRing>, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<GradedRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn term(ring: &Arc<GradedRing>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "exponent vector length");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms<I>(ring: &Arc<GradedRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "exponent vector length");
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let w = ring.weights();
        terms.sort_by(|a, b| b.0.cmp_canonical(&a.0, w));
        Polynomial { ring: ring.clone(), terms }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<GradedRing>, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// Maximum weighted degree over the terms.
    pub fn weighted_degree(&self) -> Result<i64> {
        let w = self.ring.weights();
        self.terms.iter().map(|(m, _)| m.degree(w)).max().ok_or(Error::DegreeUndefined)
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut degs = self.terms.iter().map(|(m, _)| m.degree(w));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Splits into homogeneous pieces, ascending by degree.
    pub fn homogeneous_components(&self) -> Vec<(i64, Polynomial)> {
        let w = self.ring.weights();
        let mut parts: Vec<(i64, Vec<(Monomial, Scalar)>)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree(w);
            match parts.iter_mut().find(|(e, _)| *e == d) {
                Some((_, v)) => v.push((m.clone(), c.clone())),
                None => parts.push((d, vec![(m.clone(), c.clone())])),
            }
        }
        parts.sort_by_key(|(d, _)| *d);
        parts
            .into_iter()
            .map(|(d, t)| (d, Polynomial::from_sorted_terms(&self.ring, t)))
            .collect()
    }

    /// Errors with degree diagnostics unless homogeneous.
    pub fn require_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::Inhomogeneous {
                poly: self.to_string(),
                degrees: self.homogeneous_components().iter().map(|(d, _)| *d).collect(),
            })
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let prods = self.terms.iter().flat_map(|(m, c)| {
            other.terms.iter().map(move |(n, d)| (m.mul(n), c * d))
        });
        Ok(Polynomial::from_terms(&self.ring, prods))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.terms.first()?;
        let lc_inv = lc.inv()?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = &c * &lc_inv;
            rest = &rest - &divisor.mul_monomial(&qm).scale(&qc);
            quotient.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quotient))
    }

    /// Substitutes `x_i = 1`.
    pub fn dehomogenize(&self, i: usize) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e[i] = 0;
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Moves the polynomial into a ring with the same variables but a
    /// different coefficient field.
    pub fn change_ring(&self, ring: &Arc<GradedRing>) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let c = match c {
                Scalar::Q(r) => ring.field().from_rational(r).unwrap_or_else(|| ring.field().zero()),
                Scalar::Fp { v, .. } => ring.field().from_i64(*v as i64),
            };
            (m.clone(), c)
        });
        Polynomial::from_terms(ring, terms)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let w = self.ring.weights();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp_canonical(&b.0, w),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials over the same ring")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials over the same ring")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials over the same ring")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

pub(crate) fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, n) in m.0.iter().zip(names) {
        match e {
            0 => {}
            1 => parts.push(n.clone()),
            _ => parts.push(format!("{n}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_monomial(m, self.ring.names()))?;
            } else {
                write!(f, "{abs}*{}", fmt_monomial(m, self.ring.names()))?;
            }
        }
        Ok(())
    }
}
