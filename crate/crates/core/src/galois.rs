//! The Galois correspondence between equations on a free act `F_X` and point
//! sets in the affine space of homomorphisms `F_X → G`.
//!
//! A point is identified with its vector of generator images. For a relation
//! `T`, `T′` is the set of points whose kernel contains `T`; for a point set
//! `A`, `A′` is the intersection of the kernels of its points (universal when
//! `A` is empty). Closed congruences (`T = T″`) and algebraic varieties
//! (`A = A″`) form dually isomorphic lattices, enumerated here at a fixed arity.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::act::{Act, ActHom};
use crate::congruence::{intersect, Congruence, FreeAct, Relation};
use crate::error::{Error, Result};
use crate::{saturating_pow, Limits};

/// A system of equations on a free act carrier.
pub trait Equations {
    /// Carrier size the equations live on.
    fn carrier(&self) -> usize;
    /// Whether every equation holds under `map` (i.e. lies in its kernel).
    fn holds_under(&self, map: &[usize]) -> bool;
}

impl Equations for Relation {
    fn carrier(&self) -> usize {
        self.size()
    }

    fn holds_under(&self, map: &[usize]) -> bool {
        self.is_in_kernel_of(map)
    }
}

impl Equations for Congruence {
    fn carrier(&self) -> usize {
        self.size()
    }

    fn holds_under(&self, map: &[usize]) -> bool {
        let mut image = vec![usize::MAX; self.num_blocks()];
        self.blocks().iter().zip(map).all(|(&b, &y)| {
            if image[b] == usize::MAX {
                image[b] = y;
            }
            image[b] == y
        })
    }
}

/// A set of points `F_X → G`, each given by its generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    points: BTreeSet<Vec<usize>>,
}

impl PointSet {
    pub fn new(points: impl IntoIterator<Item = Vec<usize>>) -> Self {
        PointSet { points: points.into_iter().collect() }
    }

    pub fn empty() -> Self {
        PointSet { points: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[usize]) -> bool {
        self.points.contains(point)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.points.iter()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet { points: self.points.union(&other.points).cloned().collect() }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        PointSet { points: self.points.intersection(&other.points).cloned().collect() }
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.points.is_subset(&other.points)
    }
}

/// All homomorphisms `F_X → G` for a fixed target and arity `|X|`.
#[derive(Debug, Clone)]
pub struct AffineSpace {
    free: FreeAct,
    target: Act,
    points: usize,
}

impl AffineSpace {
    /// Fails when `|G|^arity` exceeds the size cap.
    pub fn new(target: &Act, arity: usize, limits: &Limits) -> Result<Self> {
        let count = saturating_pow(target.size(), arity);
        if count > limits.size_cap as u128 {
            return Err(Error::ArityBoundExceeded { points: count, cap: limits.size_cap });
        }
        let free = FreeAct::new(target.monoid().clone(), arity)?;
        Ok(AffineSpace { free, target: target.clone(), points: count as usize })
    }

    pub fn free(&self) -> &FreeAct {
        &self.free
    }

    pub fn target(&self) -> &Act {
        &self.target
    }

    pub fn arity(&self) -> usize {
        self.free.basis_size()
    }

    /// Size of the free act carrier.
    pub fn carrier(&self) -> usize {
        self.free.size()
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    /// Generator images of the `idx`-th point (row-major, first generator most significant).
    pub fn point(&self, mut idx: usize) -> Vec<usize> {
        let g = self.target.size();
        let mut images = vec![0; self.arity()];
        for slot in images.iter_mut().rev() {
            *slot = idx % g;
            idx /= g;
        }
        images
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.points).map(|i| self.point(i))
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::new(self.points())
    }

    pub fn map_of(&self, images: &[usize]) -> Vec<usize> {
        self.free.map_from_basis_images(&self.target, images)
    }

    pub fn hom(&self, images: &[usize]) -> Result<ActHom> {
        self.free.hom_from_basis_images(&self.target, images)
    }

    pub fn kernel_of(&self, images: &[usize]) -> Congruence {
        Congruence::of_map(&self.map_of(images))
    }

    fn check_carrier(&self, found: usize) -> Result<()> {
        if found != self.carrier() {
            return Err(Error::CarrierMismatch { expected: self.carrier(), found });
        }
        Ok(())
    }

    /// `T′`: all points whose kernel contains `T`.
    pub fn solutions<E: Equations + ?Sized>(&self, t: &E) -> Result<PointSet> {
        self.check_carrier(t.carrier())?;
        Ok(PointSet::new(self.points().filter(|p| t.holds_under(&self.map_of(p)))))
    }

    /// `A′`: the intersection of the kernels of the points of `A`.
    pub fn coclosure(&self, a: &PointSet) -> Congruence {
        let kernels: Vec<Congruence> = a.iter().map(|p| self.kernel_of(p)).collect();
        intersect(self.carrier(), &kernels)
    }

    /// `T″`.
    pub fn congruence_closure<E: Equations + ?Sized>(&self, t: &E) -> Result<Congruence> {
        Ok(self.coclosure(&self.solutions(t)?))
    }

    pub fn is_closed(&self, t: &Congruence) -> Result<bool> {
        Ok(self.congruence_closure(t)? == *t)
    }

    /// `A″`.
    pub fn variety_closure(&self, a: &PointSet) -> PointSet {
        self.solutions(&self.coclosure(a)).expect("coclosure lives on this carrier")
    }

    /// For a closed `T`, the points of `T′`, whose kernels intersect to `T`
    /// (so `F_X/T` embeds into a power of `G`). `None` when `T` is not closed.
    pub fn subdirect_certificate(&self, t: &Congruence) -> Result<Option<Vec<ActHom>>> {
        let sols = self.solutions(t)?;
        if self.coclosure(&sols) != *t {
            return Ok(None);
        }
        Ok(Some(sols.iter().map(|p| self.hom(p).expect("points are valid")).collect()))
    }

    pub fn meet(&self, t1: &Congruence, t2: &Congruence) -> Congruence {
        t1.meet(t2)
    }

    /// `(T1 ∪ T2)″`.
    pub fn join(&self, t1: &Congruence, t2: &Congruence) -> Result<Congruence> {
        self.congruence_closure(&t1.to_relation().union(&t2.to_relation()))
    }

    /// Every `G`-closed congruence on `F_X`: kernels of single points closed
    /// under pairwise intersection, plus the universal congruence.
    pub fn closed_lattice(&self) -> ClosedCongruenceLattice {
        let mut seen: HashSet<Congruence> = HashSet::new();
        seen.insert(Congruence::universal(self.carrier()));
        let mut frontier: Vec<Congruence> = Vec::new();
        for p in self.points() {
            let k = self.kernel_of(&p);
            if seen.insert(k.clone()) {
                frontier.push(k);
            }
        }
        let mut members: Vec<Congruence> = seen.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for a in &frontier {
                for b in &members {
                    let m = a.meet(b);
                    if seen.insert(m.clone()) {
                        fresh.push(m);
                    }
                }
            }
            members.extend(fresh.iter().cloned());
            frontier = fresh;
        }
        ClosedCongruenceLattice::new(self.arity(), members)
    }

    /// The algebraic varieties, listed in the order of [`Self::closed_lattice`]
    /// through `T ↦ T′`.
    pub fn variety_lattice(&self) -> VarietyLattice {
        let closed = self.closed_lattice();
        let members = closed.members().iter().map(|t| self.solutions(t).expect("same carrier")).collect();
        VarietyLattice { closed, members }
    }
}

/// The `G`-closed congruences at one arity, sorted coarse-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedCongruenceLattice {
    arity: usize,
    members: Vec<Congruence>,
    index: HashMap<Congruence, usize>,
}

impl ClosedCongruenceLattice {
    fn new(arity: usize, mut members: Vec<Congruence>) -> Self {
        members.sort();
        let index = members.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        ClosedCongruenceLattice { arity, members, index }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &[Congruence] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, t: &Congruence) -> bool {
        self.index.contains_key(t)
    }

    pub fn position(&self, t: &Congruence) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Index of `members[i] ∩ members[j]`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&self.members[i].meet(&self.members[j])]
    }

    /// Index of the least member containing both (the lattice join).
    pub fn join(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.members[i], &self.members[j]);
        let uppers: Vec<&Congruence> = self.members.iter().filter(|c| a.is_subset_of(c) && b.is_subset_of(c)).collect();
        let least = intersect(a.size(), &uppers.into_iter().cloned().collect::<Vec<_>>());
        self.index[&least]
    }

    /// Covering pairs `(lower, upper)` of the inclusion order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.members.len();
        let below = |i: usize, j: usize| i != j && self.members[i].is_subset_of(&self.members[j]);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if below(i, j) && !(0..n).any(|m| below(i, m) && below(m, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges.sort();
        edges
    }

    /// Hasse diagram in DOT, smallest congruences at the bottom.
    pub fn to_dot(&self, name: &str) -> String {
        let labels: Vec<String> = self.members.iter().map(|c| c.to_string()).collect();
        hasse_dot(name, &labels, &self.hasse_edges())
    }
}

/// The algebraic varieties at one arity, paired with the closed congruences.
#[derive(Debug, Clone)]
pub struct VarietyLattice {
    closed: ClosedCongruenceLattice,
    members: Vec<PointSet>,
}

impl VarietyLattice {
    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn closed(&self) -> &ClosedCongruenceLattice {
        &self.closed
    }

    /// `T′` for a closed `T`.
    pub fn variety_of(&self, t: &Congruence) -> Option<&PointSet> {
        self.closed.position(t).map(|i| &self.members[i])
    }

    /// `A′` for a variety `A`.
    pub fn congruence_of(&self, a: &PointSet) -> Option<&Congruence> {
        self.members.iter().position(|m| m == a).map(|i| &self.closed.members[i])
    }

    /// Covering pairs `(lower, upper)` under inclusion of point sets.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self.closed.hasse_edges().into_iter().map(|(a, b)| (b, a)).collect();
        edges.sort();
        edges
    }

    /// Hasse diagram in DOT; each node is labelled by the congruence `A′`.
    pub fn to_dot(&self, name: &str) -> String {
        let labels: Vec<String> =
            self.closed.members.iter().zip(&self.members).map(|(c, a)| format!("{c} ({} points)", a.len())).collect();
        hasse_dot(name, &labels, &self.hasse_edges())
    }
}

fn hasse_dot(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{l}\"];").unwrap();
    }
    for (a, b) in edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// A pair of closed congruences whose varieties' union is not a variety.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StabilityCounterexample {
    pub arity: usize,
    pub t1: Congruence,
    pub t2: Congruence,
    /// A point of `(T1 ∩ T2)′` outside `T1′ ∪ T2′`.
    pub gamma: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StabilityReport {
    pub max_arity: usize,
    pub counterexample: Option<StabilityCounterexample>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `T1′ ∪ T2′ = (T1 ∩ T2)′` for all closed pairs at arities `1..=max_arity`.
///
/// Pairs are scanned with `T1` ascending and `T2` descending in lattice order,
/// so over a two-element set the first failure is `x1 = x2`, `x2 = x3` with
/// `γ = (a, b, a)`.
pub fn is_geometrically_stable(target: &Act, max_arity: usize, limits: &Limits) -> Result<StabilityReport> {
    for arity in 1..=max_arity {
        let space = AffineSpace::new(target, arity, limits)?;
        let varieties = space.variety_lattice();
        let closed = varieties.closed();
        for i in 0..closed.len() {
            for j in (i + 1..closed.len()).rev() {
                let union = varieties.members[i].union(&varieties.members[j]);
                let meet = &varieties.members[closed.meet(i, j)];
                if let Some(gamma) = meet.iter().find(|p| !union.contains(p)) {
                    let counterexample = StabilityCounterexample {
                        arity,
                        t1: closed.members[i].clone(),
                        t2: closed.members[j].clone(),
                        gamma: gamma.clone(),
                    };
                    return Ok(StabilityReport { max_arity, counterexample: Some(counterexample) });
                }
            }
        }
    }
    Ok(StabilityReport { max_arity, counterexample: None })
}

/// Compares `Cl_{G1}(F_X)` and `Cl_{G2}(F_X)` at one arity; returns the first
/// congruence (in lattice order) closed for exactly one of the two targets.
pub fn cl_equal(g1: &Act, g2: &Act, arity: usize, limits: &Limits) -> Result<Option<Congruence>> {
    if !g1.same_monoid(g2) {
        return Err(Error::MixedMonoids);
    }
    let l1 = AffineSpace::new(g1, arity, limits)?.closed_lattice();
    let l2 = AffineSpace::new(g2, arity, limits)?.closed_lattice();
    let mut diff: Vec<&Congruence> = l1
        .members()
        .iter()
        .filter(|c| !l2.contains(c))
        .chain(l2.members().iter().filter(|c| !l1.contains(c)))
        .collect();
    diff.sort();
    Ok(diff.first().map(|c| (*c).clone()))
}
