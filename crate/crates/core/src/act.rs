//! Finite left S-acts and their homomorphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{as_group, FiniteGroup, FiniteMonoid, Subgroup};
use crate::error::{Error, Result};
use crate::{saturating_pow, Limits};

/// A finite set with a left action of a finite monoid.
///
/// Cloning is cheap: the monoid and the action table are shared.
#[derive(Clone)]
pub struct Act {
    monoid: Arc<FiniteMonoid>,
    size: usize,
    /// Row-major `|S| × size`: `action[s * size + a] = s·a`.
    action: Arc<[usize]>,
}

impl fmt::Debug for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Act").field("size", &self.size).field("action", &self.rows()).finish()
    }
}

impl PartialEq for Act {
    fn eq(&self, other: &Self) -> bool {
        self.same_monoid(other) && self.size == other.size && self.action == other.action
    }
}

impl Eq for Act {}

impl Act {
    /// Validates an action table `rows[s][a] = s·a`.
    pub fn new(monoid: Arc<FiniteMonoid>, rows: &[Vec<usize>]) -> Result<Self> {
        let order = monoid.order();
        if rows.len() != order {
            return Err(Error::ActionShape { expected: order, found: rows.len() });
        }
        let size = rows[0].len();
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut action = Vec::with_capacity(order * size);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != size {
                return Err(Error::RaggedTable { row, len: entries.len(), expected: size });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= size {
                    return Err(Error::OutOfRangeEntry { row, col, value, bound: size });
                }
            }
            action.extend_from_slice(entries);
        }
        let at = |s: usize, a: usize| action[s * size + a];
        let e = monoid.identity();
        if let Some(a) = (0..size).find(|&a| at(e, a) != a) {
            return Err(Error::IdentityLawViolated(a));
        }
        for s in 0..order {
            for t in 0..order {
                let st = monoid.mul(s, t);
                for a in 0..size {
                    if at(st, a) != at(s, at(t, a)) {
                        return Err(Error::CompatibilityViolated(s, t, a));
                    }
                }
            }
        }
        Ok(Act { monoid, size, action: action.into() })
    }

    pub(crate) fn from_flat(monoid: Arc<FiniteMonoid>, size: usize, action: Vec<usize>) -> Self {
        debug_assert_eq!(action.len(), monoid.order() * size);
        Act { monoid, size, action: action.into() }
    }

    /// The monoid acting on itself by left multiplication (the free act on one generator).
    pub fn regular(monoid: Arc<FiniteMonoid>) -> Self {
        let n = monoid.order();
        let action = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).map(|(s, t)| monoid.mul(s, t)).collect();
        Act::from_flat(monoid, n, action)
    }

    /// `size` fixed points.
    pub fn trivial(monoid: Arc<FiniteMonoid>, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        let action = (0..monoid.order()).flat_map(|_| 0..size).collect();
        Ok(Act::from_flat(monoid, size, action))
    }

    /// The one-point act `z`.
    pub fn zero(monoid: Arc<FiniteMonoid>) -> Self {
        Act::trivial(monoid, 1).expect("non-empty")
    }

    /// Left cosets `S/H` with `s·(tH) = (st)H`, indexed by sorted minimal representatives.
    pub fn coset(group: &FiniteGroup, h: &Subgroup) -> Self {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for s in 0..n {
            if coset_of[s] != usize::MAX {
                continue;
            }
            for &x in h.members() {
                coset_of[group.mul(s, x)] = reps.len();
            }
            reps.push(s);
        }
        let size = reps.len();
        let action =
            (0..n).flat_map(|s| reps.iter().map(move |&r| (s, r))).map(|(s, r)| coset_of[group.mul(s, r)]).collect();
        Act::from_flat(group.monoid().clone(), size, action)
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, s: usize, a: usize) -> usize {
        self.action[s * self.size + a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.action.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn same_monoid(&self, other: &Act) -> bool {
        Arc::ptr_eq(&self.monoid, &other.monoid) || *self.monoid == *other.monoid
    }

    pub fn group(&self) -> Result<FiniteGroup> {
        as_group(self.monoid.clone()).map_err(|_| Error::MonoidNotGroup)
    }

    /// The subact `S·a`, sorted.
    pub fn orbit(&self, a: usize) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        for s in 0..self.monoid.order() {
            seen[self.act(s, a)] = true;
        }
        (0..self.size).filter(|&x| seen[x]).collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| (0..self.monoid.order()).all(|s| self.act(s, a) == a)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.fixed_points().len() == self.size
    }

    /// `{s : s·a = a}` for an act over a group.
    pub fn stabilizer(&self, a: usize) -> Result<Subgroup> {
        let group = self.group()?;
        Ok(self.stabilizer_in(&group, a))
    }

    fn stabilizer_in(&self, group: &FiniteGroup, a: usize) -> Subgroup {
        group.subgroup((0..group.order()).filter(|&s| self.act(s, a) == a)).expect("stabilizers are subgroups")
    }

    /// Splits an act over a group into orbits, each with the stabilizer of its
    /// least element and the conjugacy class of that stabilizer.
    pub fn orbit_decomposition(&self) -> Result<OrbitDecomposition> {
        let group = self.group()?;
        let table = group.subgroup_conjugacy_classes();
        let mut assigned = vec![false; self.size];
        let mut orbits = Vec::new();
        for a in 0..self.size {
            if assigned[a] {
                continue;
            }
            let elements = self.orbit(a);
            for &x in &elements {
                assigned[x] = true;
            }
            let stabilizer = self.stabilizer_in(&group, a);
            let class_id = table.class_of(&stabilizer).expect("stabilizer is in the inventory");
            orbits.push(Orbit { elements, representative: a, stabilizer, class_id });
        }
        let zero_orbits = orbits.iter().filter(|o| o.elements.len() == 1).count();
        Ok(OrbitDecomposition { orbits, zero_orbits })
    }

    /// Orbit stabilizer classes as a multiset (sorted class ids).
    pub fn class_signature(&self) -> Result<Vec<usize>> {
        let mut ids: Vec<usize> = self.orbit_decomposition()?.orbits.iter().map(|o| o.class_id).collect();
        ids.sort_unstable();
        Ok(ids)
    }

    /// `A^n` with the componentwise action; tuples indexed row-major.
    pub fn power(&self, n: usize, limits: &Limits) -> Result<Act> {
        assert!(n >= 1, "power exponent must be positive");
        limits.check_size(saturating_pow(self.size, n))?;
        let size = self.size.pow(n as u32);
        let order = self.monoid.order();
        let mut action = Vec::with_capacity(order * size);
        let mut digits = vec![0usize; n];
        for s in 0..order {
            for idx in 0..size {
                let mut rest = idx;
                for d in digits.iter_mut().rev() {
                    *d = rest % self.size;
                    rest /= self.size;
                }
                let image = digits.iter().fold(0, |acc, &d| acc * self.size + self.act(s, d));
                action.push(image);
            }
        }
        Ok(Act::from_flat(self.monoid.clone(), size, action))
    }

    /// `n` disjoint copies of the act.
    pub fn copower(&self, n: usize) -> Act {
        assert!(n >= 1, "copower exponent must be positive");
        coproduct(&vec![self.clone(); n]).expect("copies share a monoid").0
    }

    /// Coproduct of two acts.
    pub fn plus(&self, other: &Act) -> Result<Act> {
        Ok(coproduct(&[self.clone(), other.clone()])?.0)
    }

    /// Elements whose subacts `S·a` jointly cover the act, chosen greedily by index.
    fn generating_set(&self) -> Vec<usize> {
        let mut covered = vec![false; self.size];
        let mut reps = Vec::new();
        for a in 0..self.size {
            if covered[a] {
                continue;
            }
            reps.push(a);
            for x in self.orbit(a) {
                covered[x] = true;
            }
        }
        reps
    }
}

/// Disjoint union of acts over a common monoid, with the offset of each part.
pub fn coproduct(parts: &[Act]) -> Result<(Act, Vec<usize>)> {
    let first = parts.first().ok_or(Error::EmptyList)?;
    if parts.iter().any(|p| !p.same_monoid(first)) {
        return Err(Error::MixedMonoids);
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut size = 0;
    for p in parts {
        offsets.push(size);
        size += p.size;
    }
    let order = first.monoid.order();
    let mut action = Vec::with_capacity(order * size);
    for s in 0..order {
        for (p, &off) in parts.iter().zip(&offsets) {
            action.extend((0..p.size).map(|a| off + p.act(s, a)));
        }
    }
    Ok((Act::from_flat(first.monoid.clone(), size, action), offsets))
}

/// One orbit of a group act.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub elements: Vec<usize>,
    pub representative: usize,
    pub stabilizer: Subgroup,
    /// Index into the group's subgroup conjugacy class table.
    pub class_id: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
    /// Number of singleton (fixed-point) orbits.
    pub zero_orbits: usize,
}

/// An equivariant map between two acts over the same monoid.
#[derive(Clone, PartialEq, Eq)]
pub struct ActHom {
    source: Act,
    target: Act,
    map: Vec<usize>,
}

impl fmt::Debug for ActHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ActHom{:?}", self.map)
    }
}

impl ActHom {
    pub fn new(source: Act, target: Act, map: Vec<usize>) -> Result<Self> {
        if !source.same_monoid(&target) {
            return Err(Error::MixedMonoids);
        }
        if map.len() != source.size {
            return Err(Error::MapLength { expected: source.size, found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.size) {
            return Err(Error::ElementOutOfRange(bad, target.size));
        }
        for s in 0..source.monoid.order() {
            for a in 0..source.size {
                if map[source.act(s, a)] != target.act(s, map[a]) {
                    return Err(Error::NotEquivariant(s, a));
                }
            }
        }
        Ok(ActHom { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Act, target: Act, map: Vec<usize>) -> Self {
        ActHom { source, target, map }
    }

    pub fn identity(act: &Act) -> Self {
        ActHom { source: act.clone(), target: act.clone(), map: (0..act.size).collect() }
    }

    pub fn source(&self) -> &Act {
        &self.source
    }

    pub fn target(&self) -> &Act {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ActHom) -> Result<ActHom> {
        if self.target != next.source {
            return Err(Error::CarrierMismatch { expected: next.source.size, found: self.target.size });
        }
        let map = self.map.iter().map(|&y| next.map[y]).collect();
        Ok(ActHom { source: self.source.clone(), target: next.target.clone(), map })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }
}

/// Backtracking search over images of a generating set of `source`.
struct HomSearch<'a> {
    source: &'a Act,
    target: &'a Act,
    reps: Vec<usize>,
    injective: bool,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl<'a> HomSearch<'a> {
    fn new(source: &'a Act, target: &'a Act, injective: bool, limits: &Limits) -> Result<Self> {
        if !source.same_monoid(target) {
            return Err(Error::MixedMonoids);
        }
        let reps = source.generating_set();
        limits.check_size(saturating_pow(target.size, reps.len()))?;
        Ok(HomSearch { source, target, reps, injective, map: vec![None; source.size], used: vec![false; target.size] })
    }

    /// Extends the partial map along `rep ↦ image`; returns the newly set
    /// positions, or `None` (with the map restored) on a conflict.
    fn assign(&mut self, rep: usize, image: usize) -> Option<Vec<usize>> {
        let mut set = Vec::new();
        for s in 0..self.source.monoid.order() {
            let x = self.source.act(s, rep);
            let y = self.target.act(s, image);
            match self.map[x] {
                Some(old) if old == y => {}
                Some(_) => {
                    self.undo(&set);
                    return None;
                }
                None => {
                    if self.injective && self.used[y] {
                        self.undo(&set);
                        return None;
                    }
                    self.map[x] = Some(y);
                    self.used[y] = true;
                    set.push(x);
                }
            }
        }
        Some(set)
    }

    fn undo(&mut self, set: &[usize]) {
        for &x in set {
            if let Some(y) = self.map[x].take() {
                self.used[y] = false;
            }
        }
    }

    /// Visits complete homs in lexicographic order of representative images;
    /// stops early when `visit` returns `false`.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(Vec<usize>) -> bool) -> bool {
        if depth == self.reps.len() {
            let map = self.map.iter().map(|y| y.expect("generating set covers the act")).collect();
            return visit(map);
        }
        let rep = self.reps[depth];
        for image in 0..self.target.size {
            if let Some(set) = self.assign(rep, image) {
                let go_on = self.run(depth + 1, visit);
                self.undo(&set);
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// All homomorphisms `A → B`, in lexicographic order of generator images.
pub fn enumerate_homs(a: &Act, b: &Act, limits: &Limits) -> Result<Vec<ActHom>> {
    let mut search = HomSearch::new(a, b, false, limits)?;
    let mut out = Vec::new();
    search.run(0, &mut |map| {
        out.push(ActHom::new_unchecked(a.clone(), b.clone(), map));
        true
    });
    Ok(out)
}

/// Some injective homomorphism `A ↣ B`.
pub fn exists_embedding(a: &Act, b: &Act, limits: &Limits) -> Result<Option<ActHom>> {
    if !a.same_monoid(b) {
        return Err(Error::MixedMonoids);
    }
    if a.size > b.size {
        return Ok(None);
    }
    let mut search = HomSearch::new(a, b, true, limits)?;
    let mut found = None;
    search.run(0, &mut |map| {
        found = Some(ActHom::new_unchecked(a.clone(), b.clone(), map));
        false
    });
    Ok(found)
}

/// Isomorphism of group acts via the multiset of orbit stabilizer classes.
pub fn are_isomorphic(a: &Act, b: &Act) -> Result<bool> {
    if !a.same_monoid(b) {
        return Err(Error::MixedMonoids);
    }
    Ok(a.size == b.size && a.class_signature()? == b.class_signature()?)
}

/// Orbit counts per stabilizer class, as a sorted map.
pub fn class_counts(a: &Act) -> Result<BTreeMap<usize, usize>> {
    let mut counts = BTreeMap::new();
    for o in a.orbit_decomposition()?.orbits {
        *counts.entry(o.class_id).or_insert(0) += 1;
    }
    Ok(counts)
}
