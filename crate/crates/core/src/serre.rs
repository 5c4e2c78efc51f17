//! Tensor Serre subcategories of `qgr A`, represented by their support data,
//! and the two classification assignments
//! `φ: S ↦ ∪_{M ∈ S} supp M` and `ψ: U ↦ {M : supp M ⊆ U}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::HomogeneousIdeal;
use crate::grmodules::ModulePresentation;
use crate::poly::GradedRing;
use crate::proj::ThomasonDatum;
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct SerreSupport {
    datum: ThomasonDatum,
    provenance: Option<Vec<ModulePresentation>>,
}

impl SerreSupport {
    /// `φ` applied to the class generated by `mods`.
    pub fn from_modules(ring: &Arc<GradedRing>, mods: &[ModulePresentation]) -> Result<Self> {
        let mut comps = Vec::with_capacity(mods.len());
        for m in mods {
            if m.ring() != ring {
                return Err(Error::RingMismatch);
            }
            comps.push(m.support()?);
        }
        Ok(SerreSupport {
            datum: ThomasonDatum::new(ring, comps)?,
            provenance: Some(mods.to_vec()),
        })
    }

    /// `ψ(U)`, held through `U` itself.
    pub fn from_datum(datum: ThomasonDatum) -> Self {
        SerreSupport { datum, provenance: None }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        self.datum.ring()
    }

    pub fn datum(&self) -> &ThomasonDatum {
        &self.datum
    }

    pub fn provenance(&self) -> Option<&[ModulePresentation]> {
        self.provenance.as_deref()
    }

    pub fn contains(&self, m: &ModulePresentation) -> Result<bool> {
        if m.ring() != self.ring() {
            return Err(Error::RingMismatch);
        }
        m.support()?.is_subset_of(self.datum.locus())
    }

    pub fn join(&self, other: &SerreSupport) -> Result<SerreSupport> {
        Ok(SerreSupport { datum: self.datum.union(&other.datum)?, provenance: None })
    }

    pub fn meet(&self, other: &SerreSupport) -> Result<SerreSupport> {
        Ok(SerreSupport { datum: self.datum.intersect(&other.datum)?, provenance: None })
    }

    /// Same membership predicate.
    pub fn same_class(&self, other: &SerreSupport) -> Result<bool> {
        self.datum.same_set(&other.datum)
    }
}

impl fmt::Display for SerreSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "serre[{}]", self.datum)
    }
}

/// One cyclic probe `A/I` per component; each has support `V(I)`.
fn probes(datum: &ThomasonDatum) -> Vec<ModulePresentation> {
    datum.components().iter().map(|c| ModulePresentation::cyclic(c.ideal())).collect()
}

/// `φ(ψ(U)) = U`: realizes `ψ(U)` by its probe generators and re-derives
/// the datum from their supports.
pub fn classification_round_trip_open(u: &ThomasonDatum) -> Result<Report> {
    let mut r = Report::new(format!("phi(psi(U)) = U for U = {u}"));
    r.localizing_finite_type_bijection = true;
    let psi = SerreSupport::from_datum(u.clone());
    let gens = probes(u);
    let mut all_in = true;
    for g in &gens {
        all_in &= psi.contains(g)?;
    }
    r.check("probe generators lie in psi(U)", all_in, format!("probes: {}", gens.len()));
    let phi = SerreSupport::from_modules(u.ring(), &gens)?;
    let equal = phi.datum().same_set(u)?;
    r.check("datum equality", equal, phi.datum().to_string());
    Ok(r)
}

/// `ψ(φ(S)) = S`: every generator of `S` lies in `ψ(φ(S))`, membership on
/// `probe_corpus` is unchanged, the class is closed under shifts and tensor
/// factors on the corpus, and the data agree.
pub fn classification_round_trip(
    s: &SerreSupport,
    probe_corpus: &[ModulePresentation],
) -> Result<Report> {
    let mut r = Report::new(format!("psi(phi(S)) = S for S = {s}"));
    r.localizing_finite_type_bijection = true;
    let round = SerreSupport::from_datum(s.datum().clone());
    if let Some(gens) = s.provenance() {
        let mut ok = true;
        for g in gens {
            ok &= round.contains(g)?;
        }
        r.check("generators lie in psi(phi(S))", ok, format!("generators: {}", gens.len()));
    }
    let mut same = true;
    let mut closed = true;
    let mut detail = Vec::new();
    for (i, m) in probe_corpus.iter().enumerate() {
        let a = s.contains(m)?;
        let b = round.contains(m)?;
        if a != b {
            same = false;
            detail.push(format!("probe {i}"));
        }
        if a {
            for k in [-2, 1] {
                closed &= s.contains(&m.shift(k))?;
            }
            if let Some(n) = probe_corpus.first() {
                closed &= s.contains(&m.tensor(n)?)?;
            }
        }
    }
    r.check("membership agrees on the probe corpus", same, detail.join(", "));
    r.check("closed under shifts and tensor factors on the corpus", closed, "");
    let regenerated = SerreSupport::from_modules(s.ring(), &probes(round.datum()))?;
    r.check("datum equality", regenerated.same_class(s)?, regenerated.datum().to_string());
    Ok(r)
}

/// `M ∈ S_P`, i.e. `M_P = 0`.
pub fn point_prime_membership(prime: &HomogeneousIdeal, m: &ModulePresentation) -> Result<bool> {
    Ok(!m.nonzero_at_prime(prime)?)
}
