use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{self, Context, MonoOrder, Term, Vector};
use crate::error::{Error, Result};
use crate::poly::{GradedRing, Monomial, Polynomial};

/// A finitely generated ideal with homogeneous generators.
///
/// The reduced Gröbner basis for the canonical weighted-degree reverse
/// lexicographic order is computed once on first use and then frozen.
#[derive(Debug, Clone)]
pub struct HomogeneousIdeal {
    ring: Arc<GradedRing>,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

pub(crate) fn canonical_context(ring: &GradedRing) -> Context {
    Context::ideal(ring.weights().to_vec(), MonoOrder::WDegRevLex, ring.field())
}

/// Embeds a polynomial into a ring with `front` new leading and `back` new
/// trailing variables, all with exponent `pad_front`/`0`.
fn embed(ctx: &Context, p: &Polynomial, front: usize, pad_front: u32, back: usize) -> Vector {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut exps = vec![pad_front; front];
            exps.extend_from_slice(m.exps());
            exps.extend(std::iter::repeat_n(0, back));
            (Term { exps, comp: 0 }, c.clone())
        })
        .collect();
    Vector::from_unsorted(ctx, terms)
}

fn extract(ring: &Arc<GradedRing>, v: &Vector, front: usize) -> Polynomial {
    let n = ring.nvars();
    let terms = v
        .terms
        .iter()
        .map(|(t, c)| (Monomial(t.exps[front..front + n].to_vec()), c.clone()));
    Polynomial::from_terms(ring, terms)
}

impl HomogeneousIdeal {
    /// Validates that every generator is homogeneous and lives in `ring`;
    /// zero generators are dropped.
    pub fn new(ring: &Arc<GradedRing>, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            g.require_homogeneous()?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(HomogeneousIdeal { ring: ring.clone(), generators: gens, basis: OnceLock::new() })
    }

    fn with_basis(ring: &Arc<GradedRing>, mut basis: Vec<Polynomial>) -> Self {
        let w = ring.weights();
        basis.sort_by(|a, b| a.terms()[0].0.cmp_canonical(&b.terms()[0].0, w));
        let ideal = HomogeneousIdeal {
            ring: ring.clone(),
            generators: basis.clone(),
            basis: OnceLock::new(),
        };
        let _ = ideal.basis.set(basis);
        ideal
    }

    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Self::with_basis(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<GradedRing>) -> Self {
        Self::with_basis(ring, vec![Polynomial::one(ring)])
    }

    /// `A_+`, generated by all variables.
    pub fn irrelevant(ring: &Arc<GradedRing>) -> Self {
        Self::with_basis(ring, ring.vars())
    }

    pub fn principal(f: &Polynomial) -> Result<Self> {
        Self::new(f.ring(), vec![f.clone()])
    }

    /// Monomial ideal from exponent vectors.
    pub fn monomial(ring: &Arc<GradedRing>, monomials: &[Vec<u32>]) -> Self {
        let gens = monomials
            .iter()
            .map(|e| Polynomial::term(ring, Monomial(e.clone()), ring.field().one()))
            .collect();
        Self::new(ring, gens).expect("monomials are homogeneous")
    }

    /// The prime generated by the variables with indices in `vars`.
    pub fn variable_prime(ring: &Arc<GradedRing>, vars: &[usize]) -> Self {
        let gens = vars.iter().map(|&i| ring.var(i)).collect();
        Self::new(ring, gens).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    fn same_ring(&self, other: &HomogeneousIdeal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Gröbner basis, ascending by leading monomial.
    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let ctx = canonical_context(&self.ring);
        let gens = self.generators.iter().map(|g| embed(&ctx, g, 0, 0, 0)).collect();
        let gb = engine::groebner(&ctx, gens)?;
        let basis = gb.iter().map(|v| extract(&self.ring, v, 0)).collect();
        let _ = self.basis.set(basis);
        Ok(self.basis.get().expect("basis just set"))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let ctx = canonical_context(&self.ring);
        let basis: Vec<Vector> =
            self.groebner_basis()?.iter().map(|g| embed(&ctx, g, 0, 0, 0)).collect();
        let r = engine::normal_form(&ctx, &embed(&ctx, f, 0, 0, 0), &basis);
        Ok(extract(&self.ring, &r, 0))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &HomogeneousIdeal) -> Result<bool> {
        self.same_ring(other)?;
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality by mutual membership.
    pub fn same_ideal(&self, other: &HomogeneousIdeal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_constant()))
    }

    /// Whether the reduced basis consists of monomials.
    pub fn is_monomial(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().all(|g| g.terms().len() == 1))
    }

    /// If the ideal is generated by a set of variables, that set.
    pub fn as_variable_set(&self) -> Result<Option<Vec<usize>>> {
        let mut vars = Vec::new();
        for g in self.groebner_basis()? {
            match g.terms() {
                [(m, _)] if m.exps().iter().sum::<u32>() == 1 => {
                    vars.push(m.exps().iter().position(|&e| e == 1).unwrap());
                }
                _ => return Ok(None),
            }
        }
        vars.sort_unstable();
        Ok(Some(vars))
    }

    pub fn sum(&self, other: &HomogeneousIdeal) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn product(&self, other: &HomogeneousIdeal) -> Result<Self> {
        self.same_ring(other)?;
        let gens = self
            .generators
            .iter()
            .flat_map(|f| other.generators.iter().map(move |g| f * g))
            .collect();
        Self::new(&self.ring, gens)
    }

    pub fn power(&self, t: u32) -> Result<Self> {
        let mut acc = Self::unit(&self.ring);
        for _ in 0..t {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
    ///
    /// `t` carries weight zero, so the auxiliary ideal stays homogeneous for
    /// the original grading and the eliminated basis is already the reduced
    /// canonical basis of the intersection.
    pub fn intersect(&self, other: &HomogeneousIdeal) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let mut weights = vec![0];
        weights.extend_from_slice(self.ring.weights());
        let ctx = Context::ideal(weights, MonoOrder::Elim(1), self.ring.field());
        let mut gens: Vec<Vector> = self.generators.iter().map(|f| embed(&ctx, f, 1, 1, 0)).collect();
        for g in &other.generators {
            let plain = embed(&ctx, g, 1, 0, 0);
            let with_t = embed(&ctx, g, 1, 1, 0);
            let mut terms = plain.terms;
            terms.extend(with_t.terms.into_iter().map(|(t, c)| (t, -&c)));
            gens.push(Vector::from_unsorted(&ctx, terms));
        }
        let gb = engine::groebner(&ctx, gens)?;
        let basis: Vec<Polynomial> = gb
            .iter()
            .filter(|v| v.lead().is_some_and(|(t, _)| t.exps[0] == 0))
            .map(|v| extract(&self.ring, v, 1))
            .collect();
        for b in &basis {
            b.require_homogeneous()?;
        }
        Ok(Self::with_basis(&self.ring, basis))
    }

    /// `(I : g) = (I ∩ (g)) / g`.
    pub fn quotient_by(&self, g: &Polynomial) -> Result<Self> {
        if g.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::ColonByZero);
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let meet = self.intersect(&Self::principal(g)?)?;
        let gens = meet
            .generators()
            .iter()
            .map(|h| h.exact_div(g).expect("elements of (g) are divisible by g"))
            .collect();
        Self::new(&self.ring, gens)
    }

    /// `(I : J) = ∩_{g ∈ gens J} (I : g)`.
    pub fn quotient(&self, other: &HomogeneousIdeal) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = other.generators.iter();
        let first = gens.next().ok_or(Error::ColonByZero)?;
        let mut acc = self.quotient_by(first)?;
        for g in gens {
            acc = acc.intersect(&self.quotient_by(g)?)?;
        }
        Ok(acc)
    }

    /// `(I : J^∞)`, iterating colons to the fixed point.
    pub fn saturate(&self, other: &HomogeneousIdeal) -> Result<Self> {
        let mut current = self.clone();
        loop {
            let next = current.quotient(other)?;
            if current.contains_ideal(&next)? {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Saturation with respect to the irrelevant ideal.
    pub fn saturate_irrelevant(&self) -> Result<Self> {
        self.saturate(&Self::irrelevant(&self.ring))
    }

    /// `f ∈ √I`: decides whether `1 ∈ I + (1 - u·f)` in `A[u]`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let mut weights = self.ring.weights().to_vec();
        weights.push(1);
        let ctx = Context::ideal(weights, MonoOrder::WDegRevLex, self.ring.field());
        let mut gens: Vec<Vector> = self.generators.iter().map(|g| embed(&ctx, g, 0, 0, 1)).collect();
        let n = self.ring.nvars();
        let mut terms = vec![(Term { exps: vec![0; n + 1], comp: 0 }, self.ring.field().one())];
        for (m, c) in f.terms() {
            let mut exps = m.exps().to_vec();
            exps.push(1);
            terms.push((Term { exps, comp: 0 }, -c));
        }
        gens.push(Vector::from_unsorted(&ctx, terms));
        let gb = engine::groebner(&ctx, gens)?;
        Ok(gb.iter().any(|v| v.lead().is_some_and(|(t, _)| t.exps.iter().all(|&e| e == 0))))
    }

    /// `J ⊆ √I`, generator by generator.
    pub fn radical_contains_ideal(&self, other: &HomogeneousIdeal) -> Result<bool> {
        self.same_ring(other)?;
        for g in other.generators() {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
