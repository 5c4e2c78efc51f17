//! Finitely presented graded modules
//! `⊕_t A(c_t) → ⊕_s A(d_s) → M → 0` and their qgr-invariant observables:
//! annihilators, torsion, supports, Hilbert function values.
//!
//! Two presentations are never compared for isomorphism; they are compared
//! only through these invariants.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{FreeSubmodule, GradedVector, HomogeneousIdeal};
use crate::poly::{GradedRing, Monomial, Polynomial};
use crate::proj::ClosedLocus;

/// A presentation matrix stored by columns: `columns[t][s]` is homogeneous of
/// degree `d_s - c_t` or zero.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    ring: Arc<GradedRing>,
    row_shifts: Vec<i64>,
    col_shifts: Vec<i64>,
    columns: Vec<Vec<Polynomial>>,
    image: OnceLock<FreeSubmodule>,
    annihilator: OnceLock<HomogeneousIdeal>,
}

impl ModulePresentation {
    /// Validates degrees and drops zero columns.
    pub fn new(
        ring: &Arc<GradedRing>,
        row_shifts: Vec<i64>,
        col_shifts: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if col_shifts.len() != columns.len() {
            return Err(Error::Shape(format!(
                "{} column shifts for {} columns",
                col_shifts.len(),
                columns.len()
            )));
        }
        let mut keep_shifts = Vec::new();
        let mut keep_cols = Vec::new();
        for (t, (c, col)) in col_shifts.into_iter().zip(columns).enumerate() {
            if col.iter().any(|e| e.ring() != ring) {
                return Err(Error::RingMismatch);
            }
            let v = GradedVector { entries: col, shift: c };
            v.validate(&row_shifts, t)?;
            if !v.is_zero() {
                keep_shifts.push(c);
                keep_cols.push(v.entries);
            }
        }
        Ok(ModulePresentation {
            ring: ring.clone(),
            row_shifts,
            col_shifts: keep_shifts,
            columns: keep_cols,
            image: OnceLock::new(),
            annihilator: OnceLock::new(),
        })
    }

    /// Infers each column shift from its first nonzero entry. A zero column
    /// leaves its shift ambiguous and is rejected.
    pub fn with_inferred_shifts(
        ring: &Arc<GradedRing>,
        row_shifts: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let mut shifts = Vec::with_capacity(columns.len());
        for (t, col) in columns.iter().enumerate() {
            let first = col.iter().zip(&row_shifts).enumerate().find(|(_, (e, _))| !e.is_zero());
            match first {
                Some((s, (e, d))) => {
                    e.require_homogeneous().map_err(|_| Error::Presentation {
                        row: s,
                        col: t,
                        reason: format!("entry {e} is not homogeneous"),
                    })?;
                    shifts.push(d - e.weighted_degree()?);
                }
                None => {
                    return Err(Error::Shape(format!(
                        "column {t} is zero, so its shift is ambiguous; give explicit colshifts"
                    )))
                }
            }
        }
        Self::new(ring, row_shifts, shifts, columns)
    }

    pub fn free(ring: &Arc<GradedRing>, shifts: Vec<i64>) -> Self {
        Self::new(ring, shifts, vec![], vec![]).expect("free module")
    }

    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Self::free(ring, vec![])
    }

    /// `A/I` with its generator in degree 0.
    pub fn cyclic(ideal: &HomogeneousIdeal) -> Self {
        let ring = ideal.ring();
        let gens = ideal.generators();
        let shifts = gens.iter().map(|g| -g.weighted_degree().expect("nonzero")).collect();
        let cols = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::new(ring, vec![0], shifts, cols).expect("cyclic presentation")
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn row_shifts(&self) -> &[i64] {
        &self.row_shifts
    }

    pub fn col_shifts(&self) -> &[i64] {
        &self.col_shifts
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    /// Image of the presentation matrix, a submodule of `⊕ A(d_s)`.
    pub fn image(&self) -> &FreeSubmodule {
        self.image.get_or_init(|| {
            let gens = self
                .columns
                .iter()
                .zip(&self.col_shifts)
                .map(|(c, &shift)| GradedVector { entries: c.clone(), shift })
                .collect();
            FreeSubmodule::new(&self.ring, self.row_shifts.clone(), gens).expect("validated")
        })
    }

    /// `M(k)`: every row and column shift moves by `k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(
            &self.ring,
            self.row_shifts.iter().map(|d| d + k).collect(),
            self.col_shifts.iter().map(|c| c + k).collect(),
            self.columns.clone(),
        )
        .expect("shifted presentation stays valid")
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let n1 = self.row_shifts.len();
        let n2 = other.row_shifts.len();
        let zero = Polynomial::zero(&self.ring);
        let mut cols = Vec::new();
        for c in &self.columns {
            let mut v = c.clone();
            v.extend(std::iter::repeat_n(zero.clone(), n2));
            cols.push(v);
        }
        for c in &other.columns {
            let mut v = vec![zero.clone(); n1];
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        let mut rows = self.row_shifts.clone();
        rows.extend(&other.row_shifts);
        let mut shifts = self.col_shifts.clone();
        shifts.extend(&other.col_shifts);
        Self::new(&self.ring, rows, shifts, cols)
    }

    /// `M / ⟨extra⟩`, extra relations given as vectors of the ambient.
    pub fn quotient_by(&self, extra: &[GradedVector]) -> Result<Self> {
        let mut cols = self.columns.clone();
        let mut shifts = self.col_shifts.clone();
        for v in extra {
            cols.push(v.entries.clone());
            shifts.push(v.shift);
        }
        Self::new(&self.ring, self.row_shifts.clone(), shifts, cols)
    }

    /// Presentation of the submodule of `M` generated by the images of
    /// `gens` (vectors of the ambient `⊕ A(d_s)`).
    pub fn submodule(&self, gens: &[GradedVector]) -> Result<Self> {
        let live: Vec<GradedVector> = gens
            .iter()
            .filter(|g| !self.image().contains(&g.entries).unwrap_or(false))
            .cloned()
            .collect();
        if live.is_empty() {
            return Ok(Self::zero(&self.ring));
        }
        let relations = self.image().relations_of(&live)?;
        Self::new(
            &self.ring,
            live.iter().map(|g| g.shift).collect(),
            relations.iter().map(|r| r.shift).collect(),
            relations.into_iter().map(|r| r.entries).collect(),
        )
    }

    /// The tail `M_{≥d}`: generated by `e_s` when `e_s` already sits in
    /// degree `≥ d`, otherwise by the monomial multiples `m·e_s` landing in
    /// degrees `d ..= d + max_weight - 1`.
    pub fn tail(&self, d: i64) -> Result<Self> {
        self.submodule(&self.tail_generators(d)?)
    }

    /// Generators of `M_{≥d}` as vectors of `⊕ A(d_s)`, as used by [`Self::tail`].
    pub fn tail_generators(&self, d: i64) -> Result<Vec<GradedVector>> {
        let maxw = self.ring.max_weight() as i64;
        let mut gens = Vec::new();
        for (s, &ds) in self.row_shifts.iter().enumerate() {
            let unit = GradedVector::unit(&self.ring, &self.row_shifts, s);
            if -ds >= d {
                gens.push(unit);
                continue;
            }
            for j in d..d + maxw {
                for m in self.ring.monomials_of_degree(j + ds) {
                    let mono = Polynomial::term(&self.ring, m, self.ring.field().one());
                    gens.push(unit.scale_by(&mono)?);
                }
            }
        }
        Ok(gens)
    }

    /// `M ⊗_A N` via `coker(φ⊗1 ⊕ 1⊗ψ)` on `⊕ A(d_s + d'_u)`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let n1 = self.row_shifts.len();
        let n2 = other.row_shifts.len();
        let idx = |s: usize, u: usize| s * n2 + u;
        let zero = Polynomial::zero(&self.ring);
        let mut rows = Vec::with_capacity(n1 * n2);
        for ds in &self.row_shifts {
            for du in &other.row_shifts {
                rows.push(ds + du);
            }
        }
        let mut cols = Vec::new();
        let mut shifts = Vec::new();
        for (c, ct) in self.columns.iter().zip(&self.col_shifts) {
            for (u, du) in other.row_shifts.iter().enumerate() {
                let mut v = vec![zero.clone(); n1 * n2];
                for s in 0..n1 {
                    v[idx(s, u)] = c[s].clone();
                }
                cols.push(v);
                shifts.push(ct + du);
            }
        }
        for (s, ds) in self.row_shifts.iter().enumerate() {
            for (c, cv) in other.columns.iter().zip(&other.col_shifts) {
                let mut v = vec![zero.clone(); n1 * n2];
                for u in 0..n2 {
                    v[idx(s, u)] = c[u].clone();
                }
                cols.push(v);
                shifts.push(ds + cv);
            }
        }
        Self::new(&self.ring, rows, shifts, cols)
    }

    /// `Ann_A(M) = (image :_A ⊕ A(d_s))`; the unit ideal for `M = 0`.
    pub fn annihilator(&self) -> Result<&HomogeneousIdeal> {
        if let Some(a) = self.annihilator.get() {
            return Ok(a);
        }
        let a = self.image().colon_ambient()?;
        let _ = self.annihilator.set(a);
        Ok(self.annihilator.get().expect("just set"))
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.image().is_full()
    }

    /// Torsion iff every variable lies in `√Ann M`.
    pub fn is_torsion(&self) -> Result<bool> {
        let ann = self.annihilator()?;
        for x in self.ring.vars() {
            if !ann.radical_contains(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The submodule `T ⊆ ⊕ A(d_s)` with `T / image = τ(M)`, reached by
    /// iterating `K ↦ (K :_F A_+)` until it stabilises.
    pub fn torsion_lift(&self) -> Result<FreeSubmodule> {
        let plus = HomogeneousIdeal::irrelevant(&self.ring);
        let mut current = self.image().clone();
        loop {
            let next = current.quotient_by_ideal(&plus)?;
            if current.contains_submodule(&next)? {
                return Ok(current);
            }
            current = next;
        }
    }

    /// `τ(M)`, the largest torsion submodule, as a presentation.
    pub fn torsion_submodule(&self) -> Result<Self> {
        let lift = self.torsion_lift()?;
        self.submodule(lift.generators())
    }

    /// `M / τ(M)`.
    pub fn torsion_free_quotient(&self) -> Result<Self> {
        let lift = self.torsion_lift()?;
        self.quotient_by(lift.generators())
    }

    /// `supp_A(M) = V(Ann M) ∩ Proj A`.
    pub fn support(&self) -> Result<ClosedLocus> {
        ClosedLocus::new(self.annihilator()?)
    }

    /// `M_P ≠ 0` for a relevant prime `P`, i.e. `Ann M ⊆ P`. Primality is
    /// verified only for monomial `P`; otherwise it is the caller's claim.
    pub fn nonzero_at_prime(&self, prime: &HomogeneousIdeal) -> Result<bool> {
        check_relevant_prime(prime)?;
        let ann = self.annihilator()?;
        for g in ann.groebner_basis()? {
            if !prime.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `dim_k M_j`: the degree-`j` slice of `⊕ A(d_s)` minus the rank of the
    /// degree-`j` block of the Macaulay matrix.
    pub fn hilbert_dim(&self, j: i64) -> usize {
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        for (s, ds) in self.row_shifts.iter().enumerate() {
            for m in self.ring.monomials_of_degree(j + ds) {
                let k = index.len();
                index.insert((s, m), k);
            }
        }
        let total = index.len();
        if total == 0 {
            return 0;
        }
        let field = self.ring.field();
        let mut rows = Vec::new();
        for (col, ct) in self.columns.iter().zip(&self.col_shifts) {
            for mu in self.ring.monomials_of_degree(j + ct) {
                let mut row = vec![field.zero(); total];
                for (s, e) in col.iter().enumerate() {
                    for (m, c) in e.terms() {
                        let k = index[&(s, m.mul(&mu))];
                        row[k] = &row[k] + c;
                    }
                }
                rows.push(row);
            }
        }
        total - rank(rows)
    }
}

pub(crate) fn check_relevant_prime(prime: &HomogeneousIdeal) -> Result<()> {
    let ring = prime.ring();
    let mut all = true;
    for x in ring.vars() {
        if !prime.contains(&x)? {
            all = false;
            break;
        }
    }
    if all {
        return Err(Error::IrrelevantPrime);
    }
    if prime.is_unit()? {
        return Err(Error::NotPrime(prime.to_string()));
    }
    if prime.is_monomial()? && prime.as_variable_set()?.is_none() {
        return Err(Error::NotPrime(prime.to_string()));
    }
    Ok(())
}

/// Row rank by Gaussian elimination.
pub(crate) fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot");
        let pivot: Vec<Scalar> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ints = |v: &[i64]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "coker{{shifts:[{}]; cols:[", ints(&self.row_shifts))?;
        for (t, c) in self.columns.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            let entries: Vec<String> = c.iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", entries.join(","))?;
        }
        write!(f, "]; colshifts:[{}]}}", ints(&self.col_shifts))
    }
}
