//! Closed loci `V(I) ∩ Proj A` and finite unions of them (the compact open
//! sets of the Hochster-dual topology on `Proj A`).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::HomogeneousIdeal;
use crate::poly::GradedRing;

/// `V(I) ∩ Proj A`, stored through the saturation `(I : A_+^∞)`, which cuts
/// out the same relevant primes.
#[derive(Debug, Clone)]
pub struct ClosedLocus {
    ideal: HomogeneousIdeal,
}

impl ClosedLocus {
    pub fn new(ideal: &HomogeneousIdeal) -> Result<Self> {
        Ok(ClosedLocus { ideal: ideal.saturate_irrelevant()? })
    }

    /// All of `Proj A`.
    pub fn whole(ring: &Arc<GradedRing>) -> Self {
        ClosedLocus { ideal: HomogeneousIdeal::zero(ring) }
    }

    pub fn empty(ring: &Arc<GradedRing>) -> Self {
        ClosedLocus { ideal: HomogeneousIdeal::unit(ring) }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        self.ideal.ring()
    }

    /// The saturated defining ideal.
    pub fn ideal(&self) -> &HomogeneousIdeal {
        &self.ideal
    }

    /// Empty iff `A_+ ⊆ √I`, checked variable by variable.
    pub fn is_empty(&self) -> Result<bool> {
        for x in self.ring().vars() {
            if !self.ideal.radical_contains(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `V(I) ⊆ V(J)` iff `J ⊆ √I`. Complete because a saturated proper ideal
    /// has no irrelevant minimal prime.
    pub fn is_subset_of(&self, other: &ClosedLocus) -> Result<bool> {
        self.ideal.radical_contains_ideal(&other.ideal)
    }

    pub fn same_locus(&self, other: &ClosedLocus) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// `V(I) ∪ V(J) = V(I ∩ J)`.
    pub fn union(&self, other: &ClosedLocus) -> Result<ClosedLocus> {
        ClosedLocus::new(&self.ideal.intersect(&other.ideal)?)
    }

    /// `V(I) ∩ V(J) = V(I + J)`.
    pub fn intersect(&self, other: &ClosedLocus) -> Result<ClosedLocus> {
        ClosedLocus::new(&self.ideal.sum(&other.ideal)?)
    }

    /// `P ∈ V(I)` for a relevant prime `P`, i.e. `I ⊆ P`.
    pub fn contains_point(&self, prime: &HomogeneousIdeal) -> Result<bool> {
        prime.contains_ideal(&self.ideal)
    }
}

impl fmt::Display for ClosedLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.ideal.generators();
        if gens.is_empty() {
            return write!(f, "V(0)");
        }
        let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        write!(f, "V({})", parts.join(", "))
    }
}

/// A finite union of closed loci `V(I_1) ∪ … ∪ V(I_k)`, kept alongside the
/// single locus `V(I_1 ∩ … ∩ I_k)` that decides every predicate.
#[derive(Debug, Clone)]
pub struct ThomasonDatum {
    components: Vec<ClosedLocus>,
    cached: ClosedLocus,
}

impl ThomasonDatum {
    pub fn new(ring: &Arc<GradedRing>, components: Vec<ClosedLocus>) -> Result<Self> {
        let mut cached = ClosedLocus::empty(ring);
        for c in &components {
            if c.ring() != ring {
                return Err(Error::RingMismatch);
            }
            cached = cached.union(c)?;
        }
        Ok(ThomasonDatum { components, cached })
    }

    pub fn from_ideals(ring: &Arc<GradedRing>, ideals: &[HomogeneousIdeal]) -> Result<Self> {
        let comps = ideals.iter().map(ClosedLocus::new).collect::<Result<Vec<_>>>()?;
        Self::new(ring, comps)
    }

    pub fn empty(ring: &Arc<GradedRing>) -> Self {
        ThomasonDatum { components: Vec::new(), cached: ClosedLocus::empty(ring) }
    }

    pub fn whole(ring: &Arc<GradedRing>) -> Self {
        let w = ClosedLocus::whole(ring);
        ThomasonDatum { components: vec![w.clone()], cached: w }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        self.cached.ring()
    }

    pub fn components(&self) -> &[ClosedLocus] {
        &self.components
    }

    pub fn locus(&self) -> &ClosedLocus {
        &self.cached
    }

    pub fn is_empty(&self) -> Result<bool> {
        self.cached.is_empty()
    }

    pub fn union(&self, other: &ThomasonDatum) -> Result<ThomasonDatum> {
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        Ok(ThomasonDatum { components: comps, cached: self.cached.union(&other.cached)? })
    }

    pub fn intersect(&self, other: &ThomasonDatum) -> Result<ThomasonDatum> {
        let mut comps = Vec::new();
        for a in &self.components {
            for b in &other.components {
                comps.push(a.intersect(b)?);
            }
        }
        Ok(ThomasonDatum { components: comps, cached: self.cached.intersect(&other.cached)? })
    }

    pub fn is_subset_of(&self, other: &ThomasonDatum) -> Result<bool> {
        self.cached.is_subset_of(&other.cached)
    }

    pub fn same_set(&self, other: &ThomasonDatum) -> Result<bool> {
        self.cached.same_locus(&other.cached)
    }

    pub fn contains_point(&self, prime: &HomogeneousIdeal) -> Result<bool> {
        self.cached.contains_point(prime)
    }
}

impl fmt::Display for ThomasonDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cached)
    }
}
