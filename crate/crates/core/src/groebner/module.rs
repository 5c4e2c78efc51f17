//! Graded submodules of `⊕_s A(d_s)` and component elimination.

use std::sync::{Arc, OnceLock};

use super::engine::{self, Context, Term, Vector};
use super::HomogeneousIdeal;
use crate::error::{Error, Result};
use crate::poly::{GradedRing, Monomial, Polynomial};

/// A homogeneous element of `⊕_s A(d_s)`: the image of the generator of
/// `A(shift)` under a degree-zero map, so entry `s` has degree `d_s - shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVector {
    pub entries: Vec<Polynomial>,
    pub shift: i64,
}

impl GradedVector {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Unit vector `e_s` of `⊕ A(d)`.
    pub fn unit(ring: &Arc<GradedRing>, ambient_shifts: &[i64], s: usize) -> Self {
        let entries = (0..ambient_shifts.len())
            .map(|k| if k == s { Polynomial::one(ring) } else { Polynomial::zero(ring) })
            .collect();
        GradedVector { entries, shift: ambient_shifts[s] }
    }

    pub fn scale_by(&self, f: &Polynomial) -> Result<Self> {
        let d = f.weighted_degree()?;
        Ok(GradedVector {
            entries: self.entries.iter().map(|e| e * f).collect(),
            shift: self.shift - d,
        })
    }

    /// Checks the degree constraint against an ambient; `col` labels errors.
    pub fn validate(&self, ambient_shifts: &[i64], col: usize) -> Result<()> {
        if self.entries.len() != ambient_shifts.len() {
            return Err(Error::Shape(format!(
                "column {col} has {} entries, expected {}",
                self.entries.len(),
                ambient_shifts.len()
            )));
        }
        for (s, (e, d)) in self.entries.iter().zip(ambient_shifts).enumerate() {
            if e.is_zero() {
                continue;
            }
            if !e.is_homogeneous() {
                return Err(Error::Presentation {
                    row: s,
                    col,
                    reason: format!("entry {e} is not homogeneous"),
                });
            }
            let deg = e.weighted_degree()?;
            if deg != d - self.shift {
                return Err(Error::Presentation {
                    row: s,
                    col,
                    reason: format!("degree of {e} is {deg}, expected {}", d - self.shift),
                });
            }
        }
        Ok(())
    }
}

/// Reads a vector's shift off its first nonzero entry.
fn infer_shift(entries: &[Polynomial], ambient_shifts: &[i64]) -> Option<i64> {
    entries
        .iter()
        .zip(ambient_shifts)
        .find(|(e, _)| !e.is_zero())
        .map(|(e, d)| d - e.weighted_degree().expect("nonzero entry"))
}

fn to_vector(ctx: &Context, entries: &[Polynomial], comp_base: usize) -> Vector {
    let terms = entries
        .iter()
        .enumerate()
        .flat_map(|(s, e)| {
            e.terms().iter().map(move |(m, c)| {
                (Term { exps: m.exps().to_vec(), comp: comp_base + s }, c.clone())
            })
        })
        .collect();
    Vector::from_unsorted(ctx, terms)
}

fn from_vector(ring: &Arc<GradedRing>, v: &Vector, comp_base: usize, len: usize) -> Vec<Polynomial> {
    let mut parts: Vec<Vec<(Monomial, crate::field::Scalar)>> = vec![Vec::new(); len];
    for (t, c) in &v.terms {
        parts[t.comp - comp_base].push((Monomial(t.exps.clone()), c.clone()));
    }
    parts.into_iter().map(|p| Polynomial::from_terms(ring, p)).collect()
}

/// Generators of `(image of cols) ∩ F_2` where each column lives in
/// `F_1 ⊕ F_2`, `F_1` having `front.len()` components. Uses a
/// position-over-term order with `F_1` on top.
pub(crate) fn eliminate_front(
    ring: &Arc<GradedRing>,
    front: &[i64],
    back: &[i64],
    cols: &[Vec<Polynomial>],
) -> Result<Vec<GradedVector>> {
    let mut offsets: Vec<i64> = front.iter().map(|d| -d).collect();
    offsets.extend(back.iter().map(|d| -d));
    let ctx = Context::module(ring.weights().to_vec(), ring.field(), offsets);
    let gens = cols.iter().map(|c| to_vector(&ctx, c, 0)).collect();
    let gb = engine::groebner(&ctx, gens)?;
    let k = front.len();
    Ok(gb
        .iter()
        .filter(|v| v.lead().is_some_and(|(t, _)| t.comp >= k))
        .map(|v| {
            let entries = from_vector(ring, v, 0, k + back.len()).split_off(k);
            let shift = infer_shift(&entries, back).expect("nonzero eliminated vector");
            GradedVector { entries, shift }
        })
        .collect())
}

/// A graded submodule `N ⊆ ⊕_s A(d_s)` given by homogeneous generators.
#[derive(Debug, Clone)]
pub struct FreeSubmodule {
    ring: Arc<GradedRing>,
    ambient_shifts: Vec<i64>,
    generators: Vec<GradedVector>,
    basis: OnceLock<Vec<GradedVector>>,
}

impl FreeSubmodule {
    pub fn new(
        ring: &Arc<GradedRing>,
        ambient_shifts: Vec<i64>,
        generators: Vec<GradedVector>,
    ) -> Result<Self> {
        for (t, g) in generators.iter().enumerate() {
            if g.entries.iter().any(|e| e.ring() != ring) {
                return Err(Error::RingMismatch);
            }
            g.validate(&ambient_shifts, t)?;
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(FreeSubmodule { ring: ring.clone(), ambient_shifts, generators, basis: OnceLock::new() })
    }

    /// The whole ambient module, spanned by the unit vectors.
    pub fn full(ring: &Arc<GradedRing>, ambient_shifts: Vec<i64>) -> Self {
        let gens = (0..ambient_shifts.len())
            .map(|s| GradedVector::unit(ring, &ambient_shifts, s))
            .collect();
        Self::new(ring, ambient_shifts, gens).expect("unit vectors are valid")
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn ambient_shifts(&self) -> &[i64] {
        &self.ambient_shifts
    }

    pub fn rank(&self) -> usize {
        self.ambient_shifts.len()
    }

    pub fn generators(&self) -> &[GradedVector] {
        &self.generators
    }

    fn context(&self) -> Context {
        let offsets = self.ambient_shifts.iter().map(|d| -d).collect();
        Context::module(self.ring.weights().to_vec(), self.ring.field(), offsets)
    }

    /// Reduced Gröbner basis for the position-over-term order (component 0
    /// largest) refined by the canonical monomial order.
    pub fn groebner_basis(&self) -> Result<&[GradedVector]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let ctx = self.context();
        let gens = self.generators.iter().map(|g| to_vector(&ctx, &g.entries, 0)).collect();
        let gb = engine::groebner(&ctx, gens)?;
        let n = self.rank();
        let basis = gb
            .iter()
            .map(|v| {
                let entries = from_vector(&self.ring, v, 0, n);
                let shift = infer_shift(&entries, &self.ambient_shifts).expect("nonzero");
                GradedVector { entries, shift }
            })
            .collect();
        let _ = self.basis.set(basis);
        Ok(self.basis.get().expect("basis just set"))
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.rank() {
            return Err(Error::Shape(format!("vector of length {} in rank {}", v.len(), self.rank())));
        }
        let ctx = self.context();
        let basis: Vec<Vector> = self
            .groebner_basis()?
            .iter()
            .map(|g| to_vector(&ctx, &g.entries, 0))
            .collect();
        let r = engine::normal_form(&ctx, &to_vector(&ctx, v, 0), &basis);
        Ok(from_vector(&self.ring, &r, 0, self.rank()))
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(|p| p.is_zero()))
    }

    /// `other ⊆ self`, both in the same ambient.
    pub fn contains_submodule(&self, other: &FreeSubmodule) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(&g.entries)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `N` is the whole ambient.
    pub fn is_full(&self) -> Result<bool> {
        for s in 0..self.rank() {
            let e = GradedVector::unit(&self.ring, &self.ambient_shifts, s);
            if !self.contains(&e.entries)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(N : e_s) = {a | a·e_s ∈ N}`: component `s` is moved to the bottom of
    /// a position-over-term order and the basis elements living there are read
    /// off.
    pub fn colon_component(&self, s: usize) -> Result<HomogeneousIdeal> {
        let others: Vec<usize> = (0..self.rank()).filter(|&k| k != s).collect();
        let front: Vec<i64> = others.iter().map(|&k| self.ambient_shifts[k]).collect();
        let back = [self.ambient_shifts[s]];
        let cols: Vec<Vec<Polynomial>> = self
            .generators
            .iter()
            .map(|g| {
                let mut c: Vec<Polynomial> = others.iter().map(|&k| g.entries[k].clone()).collect();
                c.push(g.entries[s].clone());
                c
            })
            .collect();
        let gens = eliminate_front(&self.ring, &front, &back, &cols)?
            .into_iter()
            .map(|v| v.entries.into_iter().next().unwrap())
            .collect();
        HomogeneousIdeal::new(&self.ring, gens)
    }

    /// `(N :_A F) = ∩_s (N : e_s)`; the unit ideal for a rank-zero ambient.
    pub fn colon_ambient(&self) -> Result<HomogeneousIdeal> {
        let mut acc = HomogeneousIdeal::unit(&self.ring);
        for s in 0..self.rank() {
            let q = self.colon_component(s)?;
            acc = if s == 0 { q } else { acc.intersect(&q)? };
        }
        Ok(acc)
    }

    /// `(N :_F J) = {v ∈ F | g·v ∈ N for all g ∈ gens J}`, as the kernel of
    /// `F → (F/N)^r`, `v ↦ (g_1 v, …, g_r v)`.
    pub fn quotient_by_ideal(&self, ideal: &HomogeneousIdeal) -> Result<FreeSubmodule> {
        let gs = ideal.generators();
        if gs.is_empty() {
            return Err(Error::ColonByZero);
        }
        let n = self.rank();
        let r = gs.len();
        let mut front = Vec::with_capacity(r * n);
        for g in gs {
            let dg = g.weighted_degree()?;
            front.extend(self.ambient_shifts.iter().map(|d| d + dg));
        }
        let zero = Polynomial::zero(&self.ring);
        let mut cols = Vec::new();
        for s in 0..n {
            let mut c = vec![zero.clone(); r * n + n];
            for (i, g) in gs.iter().enumerate() {
                c[i * n + s] = g.clone();
            }
            c[r * n + s] = Polynomial::one(&self.ring);
            cols.push(c);
        }
        for i in 0..r {
            for k in &self.generators {
                let mut c = vec![zero.clone(); r * n + n];
                for s in 0..n {
                    c[i * n + s] = k.entries[s].clone();
                }
                cols.push(c);
            }
        }
        let gens = eliminate_front(&self.ring, &front, &self.ambient_shifts, &cols)?;
        FreeSubmodule::new(&self.ring, self.ambient_shifts.clone(), gens)
    }

    /// `N ∩ N'` via the diagonal trick in `F ⊕ F`.
    pub fn intersect(&self, other: &FreeSubmodule) -> Result<FreeSubmodule> {
        if self.ambient_shifts != other.ambient_shifts {
            return Err(Error::Shape("intersection of submodules of different ambients".into()));
        }
        let n = self.rank();
        let zero = Polynomial::zero(&self.ring);
        let mut cols = Vec::new();
        for g in &self.generators {
            let mut c = g.entries.clone();
            c.extend(g.entries.iter().cloned());
            cols.push(c);
        }
        for g in &other.generators {
            let mut c = g.entries.clone();
            c.extend(std::iter::repeat_n(zero.clone(), n));
            cols.push(c);
        }
        let gens = eliminate_front(&self.ring, &self.ambient_shifts, &self.ambient_shifts, &cols)?;
        FreeSubmodule::new(&self.ring, self.ambient_shifts.clone(), gens)
    }

    /// Relations among `gens` modulo `self`: all `a ∈ ⊕ A(shift_i)` with
    /// `Σ a_i gens_i ∈ N`.
    pub fn relations_of(&self, gens: &[GradedVector]) -> Result<Vec<GradedVector>> {
        let n = self.rank();
        let k = gens.len();
        let back: Vec<i64> = gens.iter().map(|g| g.shift).collect();
        let zero = Polynomial::zero(&self.ring);
        let mut cols = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let mut c = g.entries.clone();
            c.extend((0..k).map(|j| if j == i { Polynomial::one(&self.ring) } else { zero.clone() }));
            cols.push(c);
        }
        for g in &self.generators {
            let mut c = g.entries.clone();
            c.extend(std::iter::repeat_n(zero.clone(), k));
            cols.push(c);
        }
        let _ = n;
        eliminate_front(&self.ring, &self.ambient_shifts, &back, &cols)
    }
}
