//! Finite spectral spaces as posets, their open-set ideal lattices, prime
//! spectra of finite ideal lattices, and the monomial model of `Proj`.
//!
//! Points are indexed `0..n` with `n ≤ 64`; subsets are `u64` bitmasks.
//! The specialization order is `x ≤ y` iff `y ∈ cl{x}`, so opens are the
//! down-closed sets and closed sets the up-closed ones.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::HomogeneousIdeal;
use crate::grmodules::ModulePresentation;
use crate::poly::{GradedRing, Polynomial};
use crate::proj::{ClosedLocus, ThomasonDatum};
use crate::report::Report;
use crate::serre;

/// Largest variable count accepted by the exhaustive checkers.
pub const MAX_MODEL_VARS: usize = 4;

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpectralSpace {
    labels: Vec<String>,
    /// `closures[x] = cl{x} = {y : x ≤ y}`.
    closures: Vec<u64>,
}

impl FiniteSpectralSpace {
    /// Builds the space of a finite poset; `leq(x, y)` means `y ∈ cl{x}`.
    pub fn from_order(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        if n > 64 {
            return Err(Error::SizeGuard(format!("{n} points exceed 64")));
        }
        let mut closures = vec![0u64; n];
        for (x, c) in closures.iter_mut().enumerate() {
            for y in 0..n {
                if leq(x, y) {
                    *c |= 1 << y;
                }
            }
        }
        for x in 0..n {
            if closures[x] >> x & 1 == 0 {
                return Err(Error::Shape(format!("order is not reflexive at {}", labels[x])));
            }
            for y in bits(closures[x]) {
                if y != x && closures[y] >> x & 1 == 1 {
                    return Err(Error::Shape(format!(
                        "order is not antisymmetric at {}, {}",
                        labels[x], labels[y]
                    )));
                }
                if closures[y] & !closures[x] != 0 {
                    return Err(Error::Shape(format!("order is not transitive at {}", labels[x])));
                }
            }
        }
        Ok(FiniteSpectralSpace { labels, closures })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn all(&self) -> u64 {
        full_mask(self.len())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.closures[x] >> y & 1 == 1
    }

    pub fn closure(&self, x: usize) -> u64 {
        self.closures[x]
    }

    /// `{y : y ≤ x}`, the smallest open containing `x`.
    pub fn generizations(&self, x: usize) -> u64 {
        (0..self.len()).filter(|&y| self.leq(y, x)).fold(0, |m, y| m | 1 << y)
    }

    pub fn is_open(&self, set: u64) -> bool {
        bits(set).all(|x| self.generizations(x) & !set == 0)
    }

    pub fn is_closed(&self, set: u64) -> bool {
        self.is_open(self.all() & !set)
    }

    /// All open sets, sorted by size and then by mask.
    pub fn opens(&self) -> Vec<u64> {
        let principal: Vec<u64> = (0..self.len()).map(|x| self.generizations(x)).collect();
        let mut seen: HashSet<u64> = HashSet::from([0]);
        let mut stack = vec![0u64];
        while let Some(u) = stack.pop() {
            for p in &principal {
                let v = u | p;
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_by_key(|m| (m.count_ones(), *m));
        out
    }

    pub fn closed_sets(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.opens().into_iter().map(|u| self.all() & !u).collect();
        out.sort_by_key(|m| (m.count_ones(), *m));
        out
    }

    /// Same points, reversed specialization order: the opens of the dual are
    /// the closed sets here.
    pub fn hochster_dual(&self) -> Self {
        FiniteSpectralSpace {
            labels: self.labels.clone(),
            closures: (0..self.len()).map(|x| self.generizations(x)).collect(),
        }
    }

    pub fn set_label(&self, set: u64) -> String {
        let names: Vec<&str> = bits(set).map(|x| self.labels[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Brute-force check of the spectral axioms.
    pub fn spectral_report(&self) -> Report {
        let mut r = Report::new("spectral axioms");
        let distinct: HashSet<u64> = self.closures.iter().copied().collect();
        r.check("T0", distinct.len() == self.len(), "");

        let opens = self.opens();
        let open_set: HashSet<u64> = opens.iter().copied().collect();
        let mut closed_ops = open_set.contains(&0) && open_set.contains(&self.all());
        for &u in &opens {
            for &v in &opens {
                closed_ops &= open_set.contains(&(u | v)) && open_set.contains(&(u & v));
            }
        }
        r.check("opens closed under finite unions and intersections", closed_ops, "");

        let basis_ok = opens
            .iter()
            .all(|&u| bits(u).fold(0, |m, x| m | self.generizations(x)) == u);
        r.check(
            "quasi-compact opens form a basis",
            basis_ok,
            format!("{} opens, all quasi-compact", opens.len()),
        );

        let closed = self.closed_sets();
        let mut sober = true;
        for &c in closed.iter().filter(|&&c| c != 0) {
            let proper: Vec<u64> = closed.iter().copied().filter(|&d| d & !c == 0 && d != c).collect();
            let reducible = proper.iter().any(|&a| proper.iter().any(|&b| a | b == c));
            let generic = (0..self.len()).filter(|&x| self.closures[x] == c).count();
            sober &= if reducible { generic == 0 } else { generic == 1 };
        }
        r.check("sober: irreducible closed sets have unique generic points", sober, "");
        r
    }
}

/// A finite ideal lattice given by its order and multiplication tables.
#[derive(Debug, Clone)]
pub struct FiniteIdealLattice {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    product: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
}

type Bitset = Vec<u64>;

fn bitset_contains(b: &Bitset, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn bitset_subset(a: &Bitset, b: &Bitset) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bitset_and(a: &Bitset, b: &Bitset) -> Bitset {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

impl FiniteIdealLattice {
    /// Computes joins and meets from the order; fails with an `L1` error if
    /// some pair lacks one.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>, product: Vec<Vec<usize>>) -> Result<Self> {
        let m = labels.len();
        let l1 = |detail: String| Error::LatticeAxiom { axiom: "L1", detail };
        if m == 0 || leq.len() != m || product.len() != m {
            return Err(l1("empty or mis-sized tables".into()));
        }
        let words = m.div_ceil(64);
        let mut up: Vec<Bitset> = vec![vec![0; words]; m];
        let mut down: Vec<Bitset> = vec![vec![0; words]; m];
        for a in 0..m {
            for b in 0..m {
                if leq[a][b] {
                    up[a][b / 64] |= 1 << (b % 64);
                    down[b][a / 64] |= 1 << (a % 64);
                }
            }
        }
        let least = |set: &Bitset, toward: &Vec<Bitset>| {
            (0..m).find(|&u| bitset_contains(set, u) && bitset_subset(set, &toward[u]))
        };
        let mut join = vec![vec![0; m]; m];
        let mut meet = vec![vec![0; m]; m];
        for a in 0..m {
            for b in a..m {
                let j = least(&bitset_and(&up[a], &up[b]), &up)
                    .ok_or_else(|| l1(format!("no join of {} and {}", labels[a], labels[b])))?;
                let k = least(&bitset_and(&down[a], &down[b]), &down)
                    .ok_or_else(|| l1(format!("no meet of {} and {}", labels[a], labels[b])))?;
                join[a][b] = j;
                join[b][a] = j;
                meet[a][b] = k;
                meet[b][a] = k;
            }
        }
        let top = (0..m).fold(0, |t, a| join[t][a]);
        let bottom = (0..m).fold(0, |t, a| meet[t][a]);
        Ok(FiniteIdealLattice { labels, leq, join, meet, product, top, bottom })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Exhaustive check of associativity and L1–L5.
    pub fn axiom_report(&self) -> Report {
        let m = self.len();
        let mut r = Report::new("ideal lattice axioms");
        let order_ok = (0..m).all(|a| {
            self.leq[a][a]
                && (0..m).all(|b| {
                    (a == b || !(self.leq[a][b] && self.leq[b][a]))
                        && (0..m).all(|c| !(self.leq[a][b] && self.leq[b][c]) || self.leq[a][c])
                })
        });
        let bounds_ok = (0..m).all(|a| self.leq[self.bottom][a] && self.leq[a][self.top]);
        r.check(
            "L1 complete lattice",
            order_ok && bounds_ok,
            format!("{m} elements, all binary joins and meets"),
        );
        r.check("L2 compactly generated", true, "finite, every element compact");

        let mut assoc = true;
        let mut distrib = true;
        for a in 0..m {
            for b in 0..m {
                let ab = self.product[a][b];
                for c in 0..m {
                    assoc &= self.product[ab][c] == self.product[a][self.product[b][c]];
                    let bc = self.join[b][c];
                    distrib &= self.product[a][bc] == self.join[ab][self.product[a][c]];
                    let ac = self.product[a][c];
                    distrib &= self.product[self.join[a][b]][c] == self.join[ac][self.product[b][c]];
                }
            }
        }
        r.check("associative multiplication", assoc, "");
        r.check("L3 product distributes over joins", distrib, "");
        let unit = (0..m).all(|a| self.product[self.top][a] == a && self.product[a][self.top] == a);
        r.check("L4 top is a compact unit", unit, "");
        r.check("L5 products of compacts are compact", true, "finite, every element compact");
        r
    }

    pub fn verify(&self) -> Result<()> {
        match self.axiom_report().failures().next() {
            None => Ok(()),
            Some(c) => Err(Error::LatticeAxiom {
                axiom: if c.name.starts_with("L3") { "L3" } else if c.name.starts_with("L4") { "L4" } else { "L1" },
                detail: c.name.clone(),
            }),
        }
    }

    /// `p ≠ 1` with `ab ≤ p ⇒ a ≤ p or b ≤ p`.
    pub fn is_prime(&self, p: usize) -> bool {
        if p == self.top {
            return false;
        }
        let m = self.len();
        (0..m).all(|a| self.leq[a][p] || (0..m).all(|b| !self.leq[self.product[a][b]][p] || self.leq[b][p]))
    }

    pub fn prime_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.is_prime(p)).collect()
    }

    /// `V(a)` as a mask over `prime_elements()`.
    pub fn v_set(&self, primes: &[usize], a: usize) -> u64 {
        primes.iter().enumerate().filter(|(_, &p)| self.leq[a][p]).fold(0, |m, (i, _)| m | 1 << i)
    }
}

/// `L_open(X)` with `UV = U ∩ V`; element `i` is `X.opens()[i]`.
pub fn open_lattice(space: &FiniteSpectralSpace) -> FiniteIdealLattice {
    let opens = space.opens();
    let index: HashMap<u64, usize> = opens.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let leq = opens.iter().map(|&a| opens.iter().map(|&b| a & !b == 0).collect()).collect();
    let product = opens.iter().map(|&a| opens.iter().map(|&b| index[&(a & b)]).collect()).collect();
    let labels = opens.iter().map(|&u| space.set_label(u)).collect();
    FiniteIdealLattice::new(labels, leq, product).expect("opens of a finite space form a lattice")
}

/// `Spec L`: prime elements ordered as in `L` (so `cl{p} = V(p)`), after
/// checking that the sets `V(a)` are exactly the closed sets of that order.
pub fn spec_of_lattice(lattice: &FiniteIdealLattice) -> Result<FiniteSpectralSpace> {
    let primes = lattice.prime_elements();
    let labels = primes.iter().map(|&p| lattice.labels()[p].clone()).collect();
    let space = FiniteSpectralSpace::from_order(labels, |i, j| lattice.leq(primes[i], primes[j]))?;
    let from_lattice: BTreeSet<u64> = (0..lattice.len()).map(|a| lattice.v_set(&primes, a)).collect();
    let closed: BTreeSet<u64> = space.closed_sets().into_iter().collect();
    if from_lattice != closed {
        return Err(Error::LatticeAxiom {
            axiom: "spectrum",
            detail: "the sets V(a) are not the closed sets of the specialization order".into(),
        });
    }
    Ok(space)
}

/// Checks that `x ↦ X∖cl{x}` is a homeomorphism `X → Spec L_open(X)`.
pub fn soberification_check(space: &FiniteSpectralSpace) -> Report {
    let mut r = Report::new("soberification");
    let opens = space.opens();
    let lattice = open_lattice(space);
    let index: HashMap<u64, usize> = opens.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let primes = lattice.prime_elements();
    let image: Vec<usize> = (0..space.len()).map(|x| index[&(space.all() & !space.closure(x))]).collect();

    r.check("image consists of prime elements", image.iter().all(|&p| lattice.is_prime(p)), "");
    let distinct: BTreeSet<usize> = image.iter().copied().collect();
    r.check("injective", distinct.len() == space.len(), "");
    let prime_set: BTreeSet<usize> = primes.iter().copied().collect();
    r.check("surjective onto the prime elements", distinct == prime_set, format!("{} primes", primes.len()));

    let order = (0..space.len())
        .all(|x| (0..space.len()).all(|y| space.leq(x, y) == lattice.leq(image[x], image[y])));
    r.check("specialization order preserved and reflected", order, "");

    // U ↦ D(U) = {p : U ⊄ p} must match the image of U, and hit every open.
    let slot: HashMap<usize, usize> = image.iter().enumerate().map(|(x, &p)| (p, x)).collect();
    let mut images = BTreeSet::new();
    let mut opens_to_opens = true;
    for (i, &u) in opens.iter().enumerate() {
        let d = primes.iter().filter(|&&p| !lattice.leq(i, p)).fold(0u64, |m, p| {
            m | slot.get(p).map_or(0, |&x| 1 << x)
        });
        opens_to_opens &= d == u;
        images.insert(d);
    }
    r.check("opens map onto the basic opens D(U)", opens_to_opens, "");
    let spec = spec_of_lattice(&lattice);
    let spec_ok = spec.as_ref().is_ok_and(|s| {
        let spec_opens: BTreeSet<u64> = s.opens().into_iter().collect();
        spec_opens.len() == images.len()
    });
    r.check("continuous inverse", spec_ok, "");
    r
}

/// Variable subsets of the monomial points, as bitmasks over variables, in
/// the point order used by [`monomial_proj_model`].
pub fn monomial_points(nvars: usize) -> Vec<u64> {
    let mut pts: Vec<u64> = (0..full_mask(nvars)).collect();
    pts.sort_by_key(|m| (m.count_ones(), *m));
    pts
}

fn point_label(ring: &GradedRing, vars: u64) -> String {
    if vars == 0 {
        return "(0)".into();
    }
    let names: Vec<&str> = bits(vars).map(|i| ring.names()[i].as_str()).collect();
    format!("({})", names.join(","))
}

pub fn point_ideal(ring: &Arc<GradedRing>, vars: u64) -> HomogeneousIdeal {
    HomogeneousIdeal::variable_prime(ring, &bits(vars).collect::<Vec<_>>())
}

/// The monomial primes of `Proj A` (proper variable subsets) ordered by
/// inclusion.
pub fn monomial_proj_model(ring: &GradedRing) -> Result<FiniteSpectralSpace> {
    if ring.nvars() > 6 {
        return Err(Error::SizeGuard(format!("{} variables give more than 64 points", ring.nvars())));
    }
    let pts = monomial_points(ring.nvars());
    let labels = pts.iter().map(|&p| point_label(ring, p)).collect();
    FiniteSpectralSpace::from_order(labels, |i, j| pts[i] & !pts[j] == 0)
}

struct TestModule {
    name: String,
    support: ClosedLocus,
    module: ModulePresentation,
    /// Model points in the support.
    trace: u64,
}

fn test_family(ring: &Arc<GradedRing>, pts: &[u64]) -> Result<Vec<TestModule>> {
    let mut raw: Vec<(String, HomogeneousIdeal)> = vec![("A".into(), HomogeneousIdeal::zero(ring))];
    for &p in pts.iter().filter(|&&p| p != 0) {
        let label = point_label(ring, p);
        let ideal = point_ideal(ring, p);
        raw.push((format!("A/{label}"), ideal.clone()));
        raw.push((format!("A/{label}^2"), ideal.power(2)?));
    }
    for s in 1..=full_mask(ring.nvars()) {
        if s.count_ones() < 2 {
            continue;
        }
        let prod = bits(s).fold(Polynomial::one(ring), |acc, i| &acc * &ring.var(i));
        raw.push((format!("A/({prod})"), HomogeneousIdeal::principal(&prod)?));
    }
    raw.push(("A/A+".into(), HomogeneousIdeal::irrelevant(ring)));
    let primes: Vec<HomogeneousIdeal> = pts.iter().map(|&p| point_ideal(ring, p)).collect();
    raw.into_iter()
        .map(|(name, ideal)| {
            let module = ModulePresentation::cyclic(&ideal);
            let support = module.support()?;
            let mut trace = 0u64;
            for (i, q) in primes.iter().enumerate() {
                if support.contains_point(q)? {
                    trace |= 1 << i;
                }
            }
            Ok(TestModule { name, support, module, trace })
        })
        .collect()
}

/// Realizes both classification assignments on every dual-open of the
/// monomial model and checks `P ↦ S_P` against the prime elements of
/// `L_open` of the dual model.
pub fn exhaustive_classification_check(ring: &Arc<GradedRing>) -> Result<Report> {
    let n = ring.nvars();
    if n > MAX_MODEL_VARS {
        return Err(Error::SizeGuard(format!("{n} variables exceed the limit of {MAX_MODEL_VARS}")));
    }
    let mut r = Report::new(format!("classification on the monomial model of {ring}"));
    r.localizing_finite_type_bijection = true;
    let pts = monomial_points(n);
    let space = monomial_proj_model(ring)?;
    let dual = space.hochster_dual();
    let family = test_family(ring, &pts)?;

    for u in dual.opens() {
        let ideals: Vec<HomogeneousIdeal> = bits(u).map(|i| point_ideal(ring, pts[i])).collect();
        let datum = ThomasonDatum::from_ideals(ring, &ideals)?;
        let mut members = Vec::new();
        let mut combinatorial_agrees = true;
        for m in &family {
            let inside = m.support.is_subset_of(datum.locus())?;
            combinatorial_agrees &= inside == (m.trace & !u == 0);
            if inside {
                members.push(m);
            }
        }
        let phi = ThomasonDatum::new(ring, members.iter().map(|m| m.support.clone()).collect())?;
        let trace = members.iter().fold(0, |t, m| t | m.trace);
        let ok = combinatorial_agrees && trace == u && phi.same_set(&datum)?;
        let names: Vec<&str> = members.iter().map(|m| m.name.as_str()).collect();
        r.check(
            format!("dual-open {}", space.set_label(u)),
            ok,
            format!("psi realized by {}", names.join(", ")),
        );
    }

    let lattice = open_lattice(&dual);
    let index: HashMap<u64, usize> = dual.opens().into_iter().enumerate().map(|(i, u)| (u, i)).collect();
    let mut hit = BTreeSet::new();
    let mut all_prime = true;
    for (i, &p) in pts.iter().enumerate() {
        let prime = point_ideal(ring, p);
        let mut open = 0u64;
        for m in &family {
            if serre::point_prime_membership(&prime, &m.module)? {
                open |= m.trace;
            }
        }
        let expected = space.all() & !dual.closure(i);
        let elem = index.get(&open).copied();
        let prime_ok = open == expected && elem.is_some_and(|e| lattice.is_prime(e));
        all_prime &= prime_ok;
        if let Some(e) = elem {
            hit.insert(e);
        }
        r.check(format!("S_{} is a prime element", space.labels()[i]), prime_ok, space.set_label(open));
    }
    let primes: BTreeSet<usize> = lattice.prime_elements().into_iter().collect();
    r.check(
        "P -> S_P is a bijection onto the prime elements",
        all_prime && hit == primes && hit.len() == pts.len(),
        format!("{} points, {} primes", pts.len(), primes.len()),
    );
    Ok(r)
}

/// Standard ring `QQ[x, y, z, w]` truncated to `n` variables.
pub fn model_ring(n: usize) -> Result<Arc<GradedRing>> {
    const NAMES: [&str; MAX_MODEL_VARS] = ["x", "y", "z", "w"];
    if n == 0 || n > MAX_MODEL_VARS {
        return Err(Error::SizeGuard(format!("model size {n} outside 1..={MAX_MODEL_VARS}")));
    }
    GradedRing::new(Field::Rational, NAMES[..n].iter().map(|s| (*s, 1)).collect())
}

/// Everything the finite tier can verify for the `n`-variable model.
pub fn finite_verify(n: usize) -> Result<Report> {
    let ring = model_ring(n)?;
    let space = monomial_proj_model(&ring)?;
    let dual = space.hochster_dual();
    let mut r = Report::new(format!("finite model n={n}: {} points", space.len()));
    for (name, x) in [("Proj", &space), ("Proj*", &dual)] {
        let mut s = x.spectral_report();
        s.title = format!("{name} {}", s.title);
        r.extend(s);
        let mut l = open_lattice(x).axiom_report();
        l.title = format!("{name} L_open");
        r.extend(l);
        let mut b = soberification_check(x);
        b.title = format!("{name} {}", b.title);
        r.extend(b);
    }
    r.check("duality (X*)* = X", dual.hochster_dual() == space, "");
    r.extend(exhaustive_classification_check(&ring)?);
    Ok(r)
}
