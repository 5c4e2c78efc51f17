//! Degree-zero section rings `O(D(f)) = A_(f)` over `A` or a quotient `A/I`,
//! with restriction maps and equality of germs at a relevant prime.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::HomogeneousIdeal;
use crate::grmodules::check_relevant_prime;
use crate::poly::{GradedRing, Polynomial};

/// A basic open `D(f)` of `Proj(A/I)`, with `I = 0` when no ambient ideal
/// is given.
#[derive(Debug)]
pub struct BasicOpen {
    f: Polynomial,
    ambient: Option<HomogeneousIdeal>,
    saturated: OnceLock<HomogeneousIdeal>,
}

impl BasicOpen {
    pub fn new(f: &Polynomial, ambient: Option<&HomogeneousIdeal>) -> Result<Arc<Self>> {
        let ring = f.ring();
        if let Some(i) = ambient {
            if i.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        f.require_homogeneous()?;
        if f.is_zero() || f.weighted_degree()? < 1 {
            return Err(Error::InvalidSection(format!("{f} is not a homogeneous element of A+")));
        }
        let ambient = match ambient {
            Some(i) if i.is_zero() => None,
            other => other.cloned(),
        };
        if let Some(i) = &ambient {
            if i.contains(f)? {
                return Err(Error::EmptyBasicOpen(format!("{f} vanishes in A/{i}")));
            }
        }
        Ok(Arc::new(BasicOpen { f: f.clone(), ambient, saturated: OnceLock::new() }))
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        self.f.ring()
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn ambient(&self) -> Option<&HomogeneousIdeal> {
        self.ambient.as_ref()
    }

    fn same_ambient(&self, other: &BasicOpen) -> Result<bool> {
        match (&self.ambient, &other.ambient) {
            (None, None) => Ok(true),
            (Some(a), Some(b)) => a.same_ideal(b),
            _ => Ok(false),
        }
    }

    fn same_open(&self, other: &BasicOpen) -> Result<()> {
        if self.f.ring() != other.f.ring() {
            return Err(Error::RingMismatch);
        }
        if !self.same_ambient(other)? {
            return Err(Error::AmbientMismatch);
        }
        if self.f != other.f {
            return Err(Error::InvalidSection(format!(
                "sections on D({}) and D({}) cannot be combined",
                self.f, other.f
            )));
        }
        Ok(())
    }

    /// `(I : f^∞)`, the kernel of `A → A_f` pulled back.
    fn kernel(&self) -> Result<Option<&HomogeneousIdeal>> {
        let Some(i) = &self.ambient else { return Ok(None) };
        if let Some(s) = self.saturated.get() {
            return Ok(Some(s));
        }
        let s = i.saturate(&HomogeneousIdeal::principal(&self.f)?)?;
        let _ = self.saturated.set(s);
        Ok(self.saturated.get())
    }

    fn vanishes(&self, d: &Polynomial) -> Result<bool> {
        match self.kernel()? {
            None => Ok(d.is_zero()),
            Some(k) => k.contains(d),
        }
    }

    /// `g / f^k`; requires `deg g = k·deg f`.
    pub fn section(self: &Arc<Self>, g: &Polynomial, k: u32) -> Result<SectionElement> {
        if g.ring() != self.ring() {
            return Err(Error::RingMismatch);
        }
        if !g.is_zero() {
            g.require_homogeneous()?;
            let want = k as i64 * self.f.weighted_degree()?;
            if g.weighted_degree()? != want {
                return Err(Error::InvalidSection(format!(
                    "numerator {g} has degree {}, expected {want}",
                    g.weighted_degree()?
                )));
            }
        }
        SectionElement { open: self.clone(), numerator: g.clone(), power: k }.normalized()
    }

    pub fn one(self: &Arc<Self>) -> SectionElement {
        SectionElement { open: self.clone(), numerator: Polynomial::one(self.ring()), power: 0 }
    }

    pub fn zero(self: &Arc<Self>) -> SectionElement {
        SectionElement { open: self.clone(), numerator: Polynomial::zero(self.ring()), power: 0 }
    }

    /// Monomial fractions `m / f^k`, `deg m = k·deg f`, for `k` up to the
    /// largest variable weight; these generate `A_(f)` as an algebra.
    pub fn generators(self: &Arc<Self>) -> Result<Vec<SectionElement>> {
        let d = self.f.weighted_degree()?;
        let mut out = Vec::new();
        for k in 1..=self.ring().max_weight() {
            for m in self.ring().monomials_of_degree(k as i64 * d) {
                let g = Polynomial::term(self.ring(), m, self.ring().field().one());
                if g != self.f.pow(k) {
                    out.push(self.section(&g, k)?);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BasicOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ambient {
            None => write!(f, "D({})", self.f),
            Some(i) => write!(f, "D({}) in Proj A/{}", self.f, i),
        }
    }
}

/// `numerator / f^power` on a basic open `D(f)`.
#[derive(Debug, Clone)]
pub struct SectionElement {
    open: Arc<BasicOpen>,
    numerator: Polynomial,
    power: u32,
}

impl SectionElement {
    pub fn open(&self) -> &Arc<BasicOpen> {
        &self.open
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// Reduces the numerator modulo the ambient ideal and cancels factors of
    /// `f`. On `D(x_i)` over a polynomial ring this leaves `x_i ∤ g`.
    fn normalized(mut self) -> Result<Self> {
        if let Some(i) = &self.open.ambient {
            self.numerator = i.normal_form(&self.numerator)?;
        }
        if self.numerator.is_zero() {
            self.power = 0;
            return Ok(self);
        }
        while self.power > 0 {
            match self.numerator.exact_div(&self.open.f) {
                Some(q) => {
                    self.numerator = q;
                    self.power -= 1;
                }
                None => break,
            }
        }
        Ok(self)
    }

    pub fn add(&self, other: &SectionElement) -> Result<SectionElement> {
        self.open.same_open(&other.open)?;
        let f = &self.open.f;
        let num = &(&self.numerator * &f.pow(other.power)) + &(&other.numerator * &f.pow(self.power));
        SectionElement { open: self.open.clone(), numerator: num, power: self.power + other.power }
            .normalized()
    }

    pub fn neg(&self) -> SectionElement {
        SectionElement { numerator: -&self.numerator, ..self.clone() }
    }

    pub fn sub(&self, other: &SectionElement) -> Result<SectionElement> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SectionElement) -> Result<SectionElement> {
        self.open.same_open(&other.open)?;
        SectionElement {
            open: self.open.clone(),
            numerator: &self.numerator * &other.numerator,
            power: self.power + other.power,
        }
        .normalized()
    }

    fn cross_difference(&self, other: &SectionElement) -> Polynomial {
        let f = &self.open.f;
        &(&self.numerator * &f.pow(other.power)) - &(&other.numerator * &f.pow(self.power))
    }

    /// Equality in `A_(f)`: the cross difference dies after multiplying by a
    /// power of `f`.
    pub fn section_eq(&self, other: &SectionElement) -> Result<bool> {
        self.open.same_open(&other.open)?;
        self.open.vanishes(&self.cross_difference(other))
    }

    /// `(a, k)` on `D(f)` to `(a·h^k, k)` on `D(fh)`.
    pub fn restrict(&self, h: &Polynomial) -> Result<SectionElement> {
        if h.ring() != self.open.ring() {
            return Err(Error::RingMismatch);
        }
        h.require_homogeneous()?;
        let fh = &self.open.f * h;
        if fh.is_zero() {
            return Err(Error::EmptyBasicOpen(format!("{} * {h} = 0", self.open.f)));
        }
        let open = BasicOpen::new(&fh, self.open.ambient.as_ref())?;
        SectionElement { open, numerator: &self.numerator * &h.pow(self.power), power: self.power }
            .normalized()
    }

    /// On `D(x_i)` with `x_i` of weight 1: the polynomial in the fractions
    /// `x_j / x_i` (written with the variable names `x_j`) obtained by
    /// setting `x_i = 1`.
    pub fn dehomogenized(&self) -> Option<Polynomial> {
        let f = &self.open.f;
        let (m, c) = f.leading_term()?;
        if f.terms().len() != 1 || !c.is_one() || m.exps().iter().sum::<u32>() != 1 {
            return None;
        }
        let i = m.exps().iter().position(|&e| e == 1)?;
        if self.open.ring().weights()[i] != 1 {
            return None;
        }
        Some(self.numerator.dehomogenize(i))
    }
}

/// Equality of the germs of `s ∈ O(D(f))` and `t ∈ O(D(g))` at `P`.
///
/// Over a polynomial ring this is equality of fractions. Over `A/I` the
/// cross difference on `D(fg)` is saturated by `fg` times the variables
/// outside `P` when `P` is monomial, and by `fg` alone otherwise; a `true`
/// answer is always correct, a `false` one is exact only in the monomial
/// case.
pub fn germ_eq(s: &SectionElement, t: &SectionElement, prime: &HomogeneousIdeal) -> Result<bool> {
    check_relevant_prime(prime)?;
    if !s.open.same_ambient(&t.open)? {
        return Err(Error::AmbientMismatch);
    }
    for f in [&s.open.f, &t.open.f] {
        if prime.contains(f)? {
            return Err(Error::NotDefinedAtPrime(format!("{f} lies in {prime}")));
        }
    }
    let s2 = s.restrict(&t.open.f)?;
    let t2 = t.restrict(&s.open.f)?;
    let d = s2.cross_difference(&t2);
    let Some(ambient) = &s.open.ambient else {
        return Ok(d.is_zero());
    };
    let ring = prime.ring();
    let mut h = s2.open.f.clone();
    if let Some(vars) = prime.as_variable_set()? {
        for i in (0..ring.nvars()).filter(|i| !vars.contains(i)) {
            h = &h * &ring.var(i);
        }
    }
    ambient.saturate(&HomogeneousIdeal::principal(&h)?)?.contains(&d)
}

impl PartialEq for SectionElement {
    /// Structural equality of normalized representatives; use
    /// [`SectionElement::section_eq`] for equality in the ring.
    fn eq(&self, other: &Self) -> bool {
        self.open.f == other.open.f && self.numerator == other.numerator && self.power == other.power
    }
}

impl fmt::Display for SectionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            return write!(f, "{}", self.numerator);
        }
        let wrap = |p: &Polynomial| {
            if p.terms().len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        let base = self.open.f.to_string();
        let base = if base.chars().all(|c| c.is_alphanumeric() || c == '_') { base } else { format!("({base})") };
        if self.power == 1 {
            write!(f, "{}/{base}", wrap(&self.numerator))
        } else {
            write!(f, "{}/{base}^{}", wrap(&self.numerator), self.power)
        }
    }
}
