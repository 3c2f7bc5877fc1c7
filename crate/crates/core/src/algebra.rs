//! Finite monoids and groups given by Cayley tables.
//!
//! Elements are dense indices `0..order`. The identity is detected from the
//! table and need not be index 0. Groups carry a lazily built inventory of
//! their subgroups split into conjugacy classes; every ordering exposed here
//! is deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// A finite monoid stored as a row-major Cayley table (`mul(s, t) = s·t`).
pub struct FiniteMonoid {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Option<Vec<usize>>,
    classes: OnceLock<ConjugacyClassTable>,
}

impl FiniteMonoid {
    /// Validates a square Cayley table and detects its identity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(Error::RaggedTable { row, len: entries.len(), expected: order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(Error::OutOfRangeEntry { row, col, value, bound: order });
                }
            }
            table.extend_from_slice(entries);
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity =
            (0..order).find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a)).ok_or(Error::NoIdentity)?;
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| at(a, b) == identity && at(b, a) == identity))
            .collect::<Option<Vec<_>>>();
        Ok(FiniteMonoid { order, table, identity, inverse, classes: OnceLock::new() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.order + t]
    }

    /// The table as nested rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_group(&self) -> bool {
        self.inverse.is_some()
    }

    /// Elements without a two-sided inverse, in index order.
    fn first_non_invertible(&self) -> usize {
        (0..self.order)
            .find(|&a| !(0..self.order).any(|b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity))
            .unwrap_or(self.identity)
    }
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteMonoid {}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMonoid")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("table", &self.rows())
            .finish()
    }
}

/// A validated monoid whose every element is invertible.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup(Arc<FiniteMonoid>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

/// Promotes a monoid to a group, failing on the first non-invertible element.
pub fn as_group(monoid: Arc<FiniteMonoid>) -> Result<FiniteGroup> {
    if monoid.is_group() {
        Ok(FiniteGroup(monoid))
    } else {
        Err(Error::NotAGroup(monoid.first_non_invertible()))
    }
}

impl FiniteGroup {
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        as_group(Arc::new(FiniteMonoid::from_table(rows)?))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The cyclic group `Z_n` with `mul(a, b) = a + b mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs a positive order");
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&rows).expect("cyclic table is a group")
    }

    /// Builds the group of the given permutations, in the given order.
    ///
    /// Products compose left to right: `(s·t)(x) = t(s(x))`.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let n = perms.len();
        let mut rows = vec![vec![0; n]; n];
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let prod: Vec<usize> = s.iter().map(|&x| t[x]).collect();
                rows[i][j] = *index.get(prod.as_slice()).ok_or(Error::NotASubgroup)?;
            }
        }
        Self::from_table(&rows)
    }

    /// The full symmetric group on `n` points, permutations in lexicographic order.
    pub fn symmetric(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            perms.push(current.clone());
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else { break };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        Self::from_permutations(&perms).expect("symmetric group is closed")
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.0.mul(s, t)
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.0.inverse.as_ref().expect("group has inverses")[a]
    }

    pub fn inverses(&self) -> &[usize] {
        self.0.inverse.as_deref().expect("group has inverses")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks that `members` is a subgroup and wraps it.
    pub fn subgroup(&self, members: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&x) = set.iter().find(|&&x| x >= self.order()) {
            return Err(Error::ElementOutOfRange(x, self.order()));
        }
        let closed = set.contains(&self.identity())
            && set.iter().all(|&a| set.contains(&self.inverse(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))));
        if !closed {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup { members: set.into_iter().collect() })
    }

    /// The subgroup generated by `generators`.
    pub fn generated_by(&self, generators: impl IntoIterator<Item = usize>) -> Subgroup {
        let n = self.order();
        let mut seen = vec![false; n];
        let gens: Vec<usize> = generators.into_iter().collect();
        let mut queue = VecDeque::from([self.identity()]);
        seen[self.identity()] = true;
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup { members: (0..n).filter(|&x| seen[x]).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![self.identity()] }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: (0..self.order()).collect() }
    }

    /// All subgroups, sorted by order and then by member list.
    pub fn enumerate_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let mut queue = VecDeque::from([self.trivial_subgroup()]);
        found.insert(self.trivial_subgroup());
        while let Some(h) = queue.pop_front() {
            for g in 0..self.order() {
                if h.contains(g) {
                    continue;
                }
                let next = self.generated_by(h.members.iter().copied().chain([g]));
                if found.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        found.into_iter().collect()
    }

    /// `{a⁻¹ h a : h ∈ H}`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, a: usize) -> Subgroup {
        let inv = self.inverse(a);
        let mut members: Vec<usize> = h.members.iter().map(|&x| self.mul(self.mul(inv, x), a)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    /// Conjugators in search order: identity first, then ascending indices.
    fn conjugators(&self) -> impl Iterator<Item = usize> + '_ {
        let e = self.identity();
        std::iter::once(e).chain((0..self.order()).filter(move |&a| a != e))
    }

    /// Some `α` with `H1^α = H2`.
    pub fn are_conjugate(&self, h1: &Subgroup, h2: &Subgroup) -> Option<usize> {
        if h1.order() != h2.order() {
            return None;
        }
        self.conjugators().find(|&a| self.conjugate_subgroup(h1, a) == *h2)
    }

    /// Some `α` with `H1^α ⊆ H2`.
    pub fn exists_conjugate_inclusion(&self, h1: &Subgroup, h2: &Subgroup) -> Option<usize> {
        if h1.order() > h2.order() || !h2.order().is_multiple_of(h1.order()) {
            return None;
        }
        self.conjugators().find(|&a| self.conjugate_subgroup(h1, a).members.iter().all(|&x| h2.contains(x)))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order()).all(|a| self.conjugate_subgroup(h, a) == *h)
    }

    /// The subgroup inventory partitioned into conjugacy classes (computed once).
    pub fn subgroup_conjugacy_classes(&self) -> &ConjugacyClassTable {
        self.0.classes.get_or_init(|| ConjugacyClassTable::build(self))
    }
}

/// A subgroup, identified by its sorted member list.
///
/// Ordered by size first, then lexicographically by members.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.len().cmp(&other.members.len()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Subgroups of a group grouped into conjugacy classes.
///
/// Classes are numbered by their smallest member in subgroup order, so class 0
/// is always the trivial subgroup and the last class is the whole group.
#[derive(Debug, Clone)]
pub struct ConjugacyClassTable {
    subgroups: Vec<Subgroup>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    normal: Vec<bool>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl ConjugacyClassTable {
    fn build(group: &FiniteGroup) -> Self {
        let subgroups = group.enumerate_subgroups();
        let lookup: HashMap<Vec<usize>, usize> =
            subgroups.iter().enumerate().map(|(i, h)| (h.members.clone(), i)).collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, h) in subgroups.iter().enumerate() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: BTreeSet<usize> = BTreeSet::new();
            for a in 0..group.order() {
                let conj = group.conjugate_subgroup(h, a);
                members.insert(lookup[&conj.members]);
            }
            for &j in &members {
                class_of[j] = id;
            }
            classes.push(members.into_iter().collect());
        }
        let normal = classes.iter().map(|c| c.len() == 1).collect();
        ConjugacyClassTable { subgroups, classes, class_of, normal, lookup }
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Subgroup indices (into [`Self::subgroups`]) belonging to a class.
    pub fn class_members(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Class of the subgroup at a position of [`Self::subgroups`].
    pub fn class_of_index(&self, subgroup: usize) -> usize {
        self.class_of[subgroup]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.lookup.get(&h.members).copied()
    }

    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.index_of(h).map(|i| self.class_of[i])
    }

    pub fn representative(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.classes[class][0]]
    }

    pub fn is_normal(&self, class: usize) -> bool {
        self.normal[class]
    }

    /// Order of the subgroups in a class.
    pub fn subgroup_order(&self, class: usize) -> usize {
        self.representative(class).order()
    }

    /// The class holding the whole group; its coset act is the zero act.
    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn is_proper(&self, class: usize) -> bool {
        class != self.whole_class()
    }
}
