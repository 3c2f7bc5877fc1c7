//! Free acts, relations and congruences.
//!
//! Congruences are stored as partitions: one block id per carrier element,
//! with blocks numbered by first occurrence. That numbering is canonical, so
//! structural equality of [`Congruence`] values is equality of relations, and
//! the printed form `[0,0,1,...]` is stable across runs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::act::{coproduct, Act, ActHom};
use crate::algebra::FiniteMonoid;
use crate::error::{Error, Result};

/// The free act on `k` generators: `k` disjoint copies of the regular act.
///
/// The element `(i, s)` (copy `i`, monoid element `s`) sits at index `i·|S| + s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAct {
    act: Act,
    basis_size: usize,
}

impl FreeAct {
    pub fn new(monoid: Arc<FiniteMonoid>, basis_size: usize) -> Result<Self> {
        if basis_size == 0 {
            return Err(Error::ZeroArity);
        }
        let regular = Act::regular(monoid);
        let act = coproduct(&vec![regular; basis_size])?.0;
        Ok(FreeAct { act, basis_size })
    }

    pub fn act(&self) -> &Act {
        &self.act
    }

    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    pub fn size(&self) -> usize {
        self.act.size()
    }

    pub fn element(&self, copy: usize, s: usize) -> usize {
        copy * self.act.monoid().order() + s
    }

    pub fn generator(&self, copy: usize) -> usize {
        self.element(copy, self.act.monoid().identity())
    }

    /// Generator copy of a carrier element.
    pub fn copy_of(&self, x: usize) -> usize {
        x / self.act.monoid().order()
    }

    /// The map `(i, s) ↦ s·images[i]`, without validation.
    pub fn map_from_basis_images(&self, target: &Act, images: &[usize]) -> Vec<usize> {
        let n = self.act.monoid().order();
        images.iter().flat_map(|&b| (0..n).map(move |s| target.act(s, b))).collect()
    }

    /// The unique homomorphism sending generator `i` to `images[i]`.
    pub fn hom_from_basis_images(&self, target: &Act, images: &[usize]) -> Result<ActHom> {
        if !self.act.same_monoid(target) {
            return Err(Error::MixedMonoids);
        }
        if images.len() != self.basis_size {
            return Err(Error::MapLength { expected: self.basis_size, found: images.len() });
        }
        if let Some(&bad) = images.iter().find(|&&b| b >= target.size()) {
            return Err(Error::ElementOutOfRange(bad, target.size()));
        }
        let map = self.map_from_basis_images(target, images);
        Ok(ActHom::new_unchecked(self.act.clone(), target.clone(), map))
    }
}

/// A raw system of equations: a set of pairs on a carrier.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= size || b >= size) {
            return Err(Error::ElementOutOfRange(a.max(b), size));
        }
        Ok(Relation { size, pairs })
    }

    pub fn empty(size: usize) -> Self {
        Relation { size, pairs: BTreeSet::new() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation { size: self.size, pairs: self.pairs.union(&other.pairs).copied().collect() }
    }

    /// `true` when every pair lies in one block of `map`'s kernel.
    pub fn is_in_kernel_of(&self, map: &[usize]) -> bool {
        self.pairs.iter().all(|&(a, b)| map[a] == map[b])
    }
}

/// An S-compatible equivalence relation, stored as a canonical partition.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Renumbers arbitrary block labels by first occurrence.
    fn canonical(labels: impl IntoIterator<Item = usize>) -> Self {
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let blocks = labels
            .into_iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Congruence { blocks }
    }

    /// Validates a labelling of `act`'s carrier as a congruence.
    pub fn from_labels(act: &Act, labels: &[usize]) -> Result<Self> {
        if labels.len() != act.size() {
            return Err(Error::CarrierMismatch { expected: act.size(), found: labels.len() });
        }
        let c = Congruence::canonical(labels.iter().copied());
        c.check_compatible(act)?;
        Ok(c)
    }

    pub fn diagonal(size: usize) -> Self {
        Congruence { blocks: (0..size).collect() }
    }

    pub fn universal(size: usize) -> Self {
        Congruence { blocks: vec![0; size] }
    }

    /// Partition of a carrier by the value of `map` (the kernel of a map).
    pub fn of_map(map: &[usize]) -> Self {
        Congruence::canonical(map.iter().copied())
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    pub fn is_universal(&self) -> bool {
        self.num_blocks() <= 1
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_blocks() == self.blocks.len()
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn is_subset_of(&self, other: &Congruence) -> bool {
        let mut image = vec![usize::MAX; self.num_blocks()];
        self.blocks.iter().zip(&other.blocks).all(|(&b, &o)| {
            let slot = &mut image[b];
            if *slot == usize::MAX {
                *slot = o;
            }
            *slot == o
        })
    }

    /// Intersection of two partitions.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        assert_eq!(self.size(), other.size(), "meet of congruences on different carriers");
        let n = other.num_blocks().max(1);
        Congruence::canonical(self.blocks.iter().zip(&other.blocks).map(|(&a, &b)| a * n + b))
    }

    /// `s·a ~ s·b` whenever `a ~ b`.
    pub fn check_compatible(&self, act: &Act) -> Result<()> {
        let mut first = vec![usize::MAX; self.num_blocks()];
        for a in 0..self.size() {
            let b = &mut first[self.blocks[a]];
            if *b == usize::MAX {
                *b = a;
                continue;
            }
            let rep = *b;
            for s in 0..act.monoid().order() {
                if !self.related(act.act(s, rep), act.act(s, a)) {
                    return Err(Error::NotCompatible(s, rep, a));
                }
            }
        }
        Ok(())
    }

    pub fn is_compatible(&self, act: &Act) -> bool {
        self.check_compatible(act).is_ok()
    }

    /// Every related pair, including the diagonal.
    pub fn to_relation(&self) -> Relation {
        let n = self.size();
        let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.related(a, b));
        Relation { size: n, pairs: pairs.collect() }
    }

    /// Blocks as sorted element lists, in block-id order.
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }
}

impl Ord for Congruence {
    /// Coarser partitions first, then lexicographic block vectors.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.num_blocks().cmp(&other.num_blocks()).then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for Congruence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{self}")
    }
}

impl FromStr for Congruence {
    type Err = String;

    /// Parses a block-id vector such as `[0,0,1,1]`; labels are renumbered.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or("expected [..]")?;
        let labels = inner
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad block id {t:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Congruence::canonical(labels))
    }
}

impl serde::Serialize for Congruence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Congruence {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Partition of the carrier by equal image under `hom`.
pub fn kernel(hom: &ActHom) -> Congruence {
    Congruence::of_map(hom.map())
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// The least congruence on `act` containing `pairs`.
///
/// Union-find over the pairs; each successful merge of `(a, b)` enqueues all
/// translates `(s·a, s·b)` until nothing new merges.
pub fn congruence_generated(act: &Act, pairs: &Relation) -> Result<Congruence> {
    if pairs.size() != act.size() {
        return Err(Error::CarrierMismatch { expected: act.size(), found: pairs.size() });
    }
    let mut uf = UnionFind::new(act.size());
    let mut work: Vec<(usize, usize)> = pairs.pairs().collect();
    while let Some((a, b)) = work.pop() {
        if uf.union(a, b) {
            for s in 0..act.monoid().order() {
                work.push((act.act(s, a), act.act(s, b)));
            }
        }
    }
    Ok(Congruence::canonical((0..act.size()).map(|x| uf.find(x))))
}

/// Common refinement of congruences on a carrier of `size` elements; the
/// empty intersection is the universal congruence.
pub fn intersect(size: usize, parts: &[Congruence]) -> Congruence {
    parts.iter().fold(Congruence::universal(size), |acc, c| acc.meet(c))
}

/// The act of blocks and the projection onto it.
pub fn quotient(act: &Act, t: &Congruence) -> Result<(Act, ActHom)> {
    if t.size() != act.size() {
        return Err(Error::CarrierMismatch { expected: act.size(), found: t.size() });
    }
    t.check_compatible(act)?;
    let lists = t.block_lists();
    let size = lists.len();
    let action =
        (0..act.monoid().order()).flat_map(|s| lists.iter().map(move |b| t.blocks[act.act(s, b[0])])).collect();
    let q = Act::from_flat(act.monoid().clone(), size, action);
    let projection = ActHom::new_unchecked(act.clone(), q.clone(), t.blocks.clone());
    Ok((q, projection))
}

/// `{(a, b) : hom(a) T hom(b)}` on the source of `hom`.
pub fn pullback_congruence(hom: &ActHom, t: &Congruence) -> Result<Congruence> {
    if t.size() != hom.target().size() {
        return Err(Error::CarrierMismatch { expected: hom.target().size(), found: t.size() });
    }
    Ok(Congruence::canonical(hom.map().iter().map(|&y| t.blocks[y])))
}

/// Pointwise image of a relation along `hom`.
pub fn pushforward_relation(hom: &ActHom, r: &Relation) -> Result<Relation> {
    if r.size() != hom.source().size() {
        return Err(Error::CarrierMismatch { expected: hom.source().size(), found: r.size() });
    }
    Ok(Relation { size: hom.target().size(), pairs: r.pairs().map(|(a, b)| (hom.apply(a), hom.apply(b))).collect() })
}

/// Every congruence on `act`, by filtering all set partitions of its carrier.
///
/// Exponential (Bell numbers); meant for carriers of at most about ten elements.
pub fn all_congruences(act: &Act) -> Vec<Congruence> {
    let n = act.size();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn fill(pos: usize, max: usize, labels: &mut Vec<usize>, act: &Act, out: &mut Vec<Congruence>) {
        if pos == labels.len() {
            let c = Congruence { blocks: labels.clone() };
            if c.is_compatible(act) {
                out.push(c);
            }
            return;
        }
        for l in 0..=max {
            labels[pos] = l;
            fill(pos + 1, max.max(l + 1), labels, act, out);
        }
    }
    if n > 0 {
        fill(1, 1, &mut labels, act, &mut out);
    }
    out.sort();
    out
}
