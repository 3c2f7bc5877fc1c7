//! Geometric equivalence of finite acts over finite groups.
//!
//! Every act over a group is a coproduct of coset acts `S/H` and zeros. The
//! canonical form records the stabilizer conjugacy classes of the non-zero
//! orbits and the number of zero orbits, after the multiplicity collapses that
//! preserve geometric equivalence:
//!
//! - more than two zero orbits count as two;
//! - with a zero present, every class counts once;
//! - without zeros, a normal class counts once and any other class at most twice.
//!
//! Equal canonical forms prove equivalence. Differing forms are only a
//! separation when a structural argument or the lattice oracle backs it, since
//! two different forms may still describe one equivalence class. [`decide`]
//! therefore returns a three-valued [`Verdict`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::act::{class_counts, coproduct, Act};
use crate::algebra::{ConjugacyClassTable, FiniteGroup};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::galois::{cl_equal, AffineSpace};
use crate::Limits;

/// Multiplicity of one proper stabilizer class in a canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassMultiplicity {
    /// Index into the group's subgroup conjugacy class table.
    pub class: usize,
    /// Order of the subgroups in the class.
    pub order: usize,
    pub normal: bool,
    pub mult: u8,
}

/// Normalized orbit data of an act over a group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// Number of zero orbits, capped at 2.
    pub zero_sig: u8,
    /// Sorted by class index.
    pub classes: Vec<ClassMultiplicity>,
}

impl CanonicalForm {
    pub fn multiplicity(&self, class: usize) -> u8 {
        self.classes.iter().find(|c| c.class == class).map_or(0, |c| c.mult)
    }

    /// Checks the form against a class table.
    pub fn validate(&self, table: &ConjugacyClassTable) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidForm(msg));
        if self.zero_sig > 2 {
            return bad(format!("zero_sig {} above 2", self.zero_sig));
        }
        if self.zero_sig == 0 && self.classes.is_empty() {
            return bad("an act has at least one orbit".into());
        }
        if !self.classes.windows(2).all(|w| w[0].class < w[1].class) {
            return bad("classes must be strictly increasing".into());
        }
        for c in &self.classes {
            if c.class >= table.num_classes() || !table.is_proper(c.class) {
                return bad(format!("class {} is not a proper subgroup class", c.class));
            }
            if c.order != table.subgroup_order(c.class) || c.normal != table.is_normal(c.class) {
                return bad(format!("class {} order/normal flags disagree with the group", c.class));
            }
            if !(1..=2).contains(&c.mult) {
                return bad(format!("class {} has multiplicity {}", c.class, c.mult));
            }
            if c.mult == 2 && (self.zero_sig > 0 || c.normal) {
                return bad(format!("class {} cannot have multiplicity 2 here", c.class));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| if c.mult == 1 { format!("c{}", c.class) } else { format!("c{}*{}", c.class, c.mult) })
            .collect();
        match self.zero_sig {
            0 => {}
            1 => parts.push("z".into()),
            n => parts.push(format!("z*{n}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// One collapse applied while normalizing an act.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Reduction {
    /// Orbits grouped into stabilizer classes (isomorphism invariance).
    OrbitDecomposition { orbits: usize },
    /// More than two zero orbits behave like two.
    ZeroOrbitsCapped { from: usize },
    /// With a zero present, repeated orbits of a class collapse to one.
    AbsorbedByZero { class: usize, from: usize },
    /// Without zeros, copies of a normal-subgroup coset act collapse to one.
    NormalCopowerCollapsed { class: usize, from: usize },
    /// Without zeros, copies of a coset act collapse to two.
    CopowerCappedAtTwo { class: usize, from: usize },
}

/// Canonical form of an act over a group.
pub fn canonical_form(act: &Act) -> Result<CanonicalForm> {
    Ok(canonical_form_traced(act)?.0)
}

/// Canonical form together with the collapses that produced it.
pub fn canonical_form_traced(act: &Act) -> Result<(CanonicalForm, Vec<Reduction>)> {
    let group = act.group()?;
    let table = group.subgroup_conjugacy_classes();
    let counts = class_counts(act)?;
    let whole = table.whole_class();
    let zeros = counts.get(&whole).copied().unwrap_or(0);
    let mut steps = vec![Reduction::OrbitDecomposition { orbits: counts.values().sum() }];
    if zeros > 2 {
        steps.push(Reduction::ZeroOrbitsCapped { from: zeros });
    }
    let zero_sig = zeros.min(2) as u8;
    let mut classes = Vec::new();
    for (&class, &raw) in counts.iter().filter(|(&c, _)| c != whole) {
        let normal = table.is_normal(class);
        let mult = if zero_sig > 0 {
            if raw > 1 {
                steps.push(Reduction::AbsorbedByZero { class, from: raw });
            }
            1
        } else if normal {
            if raw > 1 {
                steps.push(Reduction::NormalCopowerCollapsed { class, from: raw });
            }
            1
        } else {
            if raw > 2 {
                steps.push(Reduction::CopowerCappedAtTwo { class, from: raw });
            }
            raw.min(2)
        };
        classes.push(ClassMultiplicity { class, order: table.subgroup_order(class), normal, mult: mult as u8 });
    }
    Ok((CanonicalForm { zero_sig, classes }, steps))
}

/// The act `∐ (S/H_c)^(∗mult) ∐ zeros` realizing a canonical form, with each
/// class represented by its least subgroup.
pub fn representative(form: &CanonicalForm, group: &FiniteGroup) -> Result<Act> {
    let table = group.subgroup_conjugacy_classes();
    form.validate(table)?;
    let mut parts = Vec::new();
    for c in &form.classes {
        let coset = Act::coset(group, table.representative(c.class));
        parts.extend(std::iter::repeat_n(coset, c.mult as usize));
    }
    for _ in 0..form.zero_sig {
        parts.push(Act::zero(group.monoid().clone()));
    }
    Ok(coproduct(&parts)?.0)
}

/// Over a group, an act is taken to be injective iff it has a fixed point.
pub fn is_injective_over_group(act: &Act) -> Result<bool> {
    act.group()?;
    Ok(!act.fixed_points().is_empty())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub side: Side,
    #[serde(flatten)]
    pub reduction: Reduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Separation {
    /// The acts differ in having no zero / one zero / at least two zeros.
    ZeroSignature,
    /// Two cyclic acts with non-conjugate stabilizers.
    CyclicNonConjugate,
    /// The bounded lattice comparison found a distinguishing congruence.
    OracleWitness,
}

/// A congruence on `F_X`, `|X| = arity`, closed for exactly one of two acts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub arity: usize,
    pub congruence: Congruence,
    pub closed_for: Side,
}

impl Witness {
    /// Recomputes closedness on both sides; `true` when it holds for exactly
    /// the recorded side.
    pub fn verify(&self, left: &Act, right: &Act, limits: &Limits) -> Result<bool> {
        let l = AffineSpace::new(left, self.arity, limits)?.is_closed(&self.congruence)?;
        let r = AffineSpace::new(right, self.arity, limits)?.is_closed(&self.congruence)?;
        Ok(match self.closed_for {
            Side::Left => l && !r,
            Side::Right => r && !l,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent {
        form: CanonicalForm,
        justification: Vec<Step>,
    },
    NotEquivalent {
        reason: Separation,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        witness: Option<Witness>,
    },
    Unknown {
        left: CanonicalForm,
        right: CanonicalForm,
        oracle_arity: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        note: Option<String>,
    },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    pub fn is_not_equivalent(&self) -> bool {
        matches!(self, Verdict::NotEquivalent { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::NotEquivalent { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Largest arity the lattice oracle compares at.
    pub oracle_arity: usize,
    pub limits: Limits,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { oracle_arity: 2, limits: Limits::default() }
    }
}

/// Zero elements and one representative per non-zero orbit.
fn zeros_and_reps(act: &Act) -> Result<(Vec<usize>, Vec<usize>)> {
    let d = act.orbit_decomposition()?;
    let (zeros, others): (Vec<_>, Vec<_>) = d.orbits.iter().partition(|o| o.elements.len() == 1);
    Ok((zeros.iter().map(|o| o.representative).collect(), others.iter().map(|o| o.representative).collect()))
}

/// Kernel of `F_X → act` with the given generator images, if it is closed for
/// `act` and not for `other` within the size cap.
fn verified_kernel(act: &Act, other: &Act, images: &[usize], limits: &Limits) -> Option<Congruence> {
    let space = AffineSpace::new(act, images.len(), limits).ok()?;
    let k = space.kernel_of(images);
    let other_space = AffineSpace::new(other, images.len(), limits).ok()?;
    (!other_space.is_closed(&k).ok()? && space.is_closed(&k).ok()?).then_some(k)
}

/// Searches `Cl` at arities `1..=max_arity` for a separating congruence.
fn oracle_witness(a: &Act, b: &Act, max_arity: usize, limits: &Limits) -> Result<Option<Witness>> {
    for arity in 1..=max_arity {
        if let Some(congruence) = cl_equal(a, b, arity, limits)? {
            let closed_for =
                if AffineSpace::new(a, arity, limits)?.is_closed(&congruence)? { Side::Left } else { Side::Right };
            return Ok(Some(Witness { arity, congruence, closed_for }));
        }
    }
    Ok(None)
}

/// Decides geometric equivalence of two acts over a common group.
///
/// In order: equal canonical forms; zero-orbit signature (none vs some, and one
/// vs two with a verified two-block witness at arity 2); two cyclic acts with
/// different stabilizer classes; the lattice oracle up to `oracle_arity`;
/// otherwise `Unknown`.
pub fn decide(a: &Act, b: &Act, opts: &DecideOptions) -> Result<Verdict> {
    if !a.same_monoid(b) {
        return Err(Error::MixedMonoids);
    }
    let (form_a, steps_a) = canonical_form_traced(a)?;
    let (form_b, steps_b) = canonical_form_traced(b)?;
    let limits = &opts.limits;

    if form_a == form_b {
        let justification = steps_a
            .into_iter()
            .map(|reduction| Step { side: Side::Left, reduction })
            .chain(steps_b.into_iter().map(|reduction| Step { side: Side::Right, reduction }))
            .collect();
        return Ok(Verdict::Equivalent { form: form_a, justification });
    }

    let (zeros_a, reps_a) = zeros_and_reps(a)?;
    let (zeros_b, reps_b) = zeros_and_reps(b)?;

    if (form_a.zero_sig == 0) != (form_b.zero_sig == 0) {
        let (with, without, with_side, zeros, reps) = if form_a.zero_sig > 0 {
            (a, b, Side::Left, &zeros_a, &reps_a)
        } else {
            (b, a, Side::Right, &zeros_b, &reps_b)
        };
        // one generator into a non-zero orbit, the other onto a zero
        let structural = reps
            .first()
            .and_then(|&r| verified_kernel(with, without, &[r, zeros[0]], limits))
            .map(|congruence| Witness { arity: 2, congruence, closed_for: with_side });
        let witness = match structural {
            Some(w) => Some(w),
            None => oracle_witness(a, b, opts.oracle_arity, limits).ok().flatten(),
        };
        return Ok(Verdict::NotEquivalent { reason: Separation::ZeroSignature, witness });
    }

    if form_a.zero_sig != form_b.zero_sig {
        let (two, one, two_side, zeros) =
            if form_a.zero_sig == 2 { (a, b, Side::Left, &zeros_a) } else { (b, a, Side::Right, &zeros_b) };
        // collapse each generator copy onto its own zero
        if let Some(congruence) = verified_kernel(two, one, &[zeros[0], zeros[1]], limits) {
            let witness = Witness { arity: 2, congruence, closed_for: two_side };
            return Ok(Verdict::NotEquivalent { reason: Separation::ZeroSignature, witness: Some(witness) });
        }
    } else if zeros_a.len() + reps_a.len() == 1 && zeros_b.len() + reps_b.len() == 1 {
        return Ok(Verdict::NotEquivalent { reason: Separation::CyclicNonConjugate, witness: None });
    }

    match oracle_witness(a, b, opts.oracle_arity, limits) {
        Ok(Some(witness)) => Ok(Verdict::NotEquivalent { reason: Separation::OracleWitness, witness: Some(witness) }),
        Ok(None) => Ok(Verdict::Unknown { left: form_a, right: form_b, oracle_arity: opts.oracle_arity, note: None }),
        Err(e @ (Error::ArityBoundExceeded { .. } | Error::SizeBoundExceeded { .. })) => Ok(Verdict::Unknown {
            left: form_a,
            right: form_b,
            oracle_arity: opts.oracle_arity,
            note: Some(format!("oracle stopped: {e}")),
        }),
        Err(e) => Err(e),
    }
}

/// An act described by how many orbits of each stabilizer class it has.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitMultiset {
    /// Class index → number of orbits; the whole-group class counts zeros.
    pub counts: BTreeMap<usize, usize>,
    pub size: usize,
}

impl OrbitMultiset {
    pub fn build(&self, group: &FiniteGroup) -> Act {
        let table = group.subgroup_conjugacy_classes();
        let parts: Vec<Act> = self
            .counts
            .iter()
            .flat_map(|(&c, &n)| std::iter::repeat_n(Act::coset(group, table.representative(c)), n))
            .collect();
        coproduct(&parts).expect("non-empty, one monoid").0
    }

    /// Label such as `c0*2 + c1 + z*3`, classes named by index and zeros as `z`.
    pub fn label(&self, table: &ConjugacyClassTable) -> String {
        self.counts
            .iter()
            .map(|(&c, &n)| {
                let name = if c == table.whole_class() { "z".to_string() } else { format!("c{c}") };
                if n == 1 {
                    name
                } else {
                    format!("{name}*{n}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// All acts of size `1..=max_size` up to isomorphism, ordered by size then counts.
pub fn enumerate_acts(group: &FiniteGroup, max_size: usize) -> Vec<OrbitMultiset> {
    let table = group.subgroup_conjugacy_classes();
    let sizes: Vec<usize> = (0..table.num_classes()).map(|c| group.order() / table.subgroup_order(c)).collect();
    let mut out = Vec::new();
    fn extend(
        class: usize,
        sizes: &[usize],
        budget: usize,
        current: &mut BTreeMap<usize, usize>,
        used: usize,
        out: &mut Vec<OrbitMultiset>,
    ) {
        if class == sizes.len() {
            if used > 0 {
                out.push(OrbitMultiset { counts: current.clone(), size: used });
            }
            return;
        }
        let mut n = 0;
        loop {
            if n > 0 {
                current.insert(class, n);
            }
            extend(class + 1, sizes, budget, current, used + n * sizes[class], out);
            n += 1;
            if used + n * sizes[class] > budget {
                break;
            }
        }
        current.remove(&class);
    }
    extend(0, &sizes, max_size, &mut BTreeMap::new(), 0, &mut out);
    out.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.counts.cmp(&b.counts)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bucket {
    pub form: CanonicalForm,
    pub label: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UndecidedPair {
    pub left: String,
    pub right: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Verdict counts over member pairs, split by whether the pair shares a bucket.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub within_equivalent: usize,
    pub within_other: usize,
    pub cross_not_equivalent: usize,
    pub cross_equivalent: usize,
    pub cross_unknown: usize,
    pub unknown_pairs: Vec<UndecidedPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub group_order: usize,
    pub max_size: usize,
    pub oracle_arity: usize,
    pub acts: usize,
    pub buckets: Vec<Bucket>,
    pub pairs: PairSummary,
}

/// Groups all acts up to `max_size` by canonical form and decides every pair.
pub fn classify(group: &FiniteGroup, max_size: usize, opts: &DecideOptions) -> Result<Classification> {
    let table = group.subgroup_conjugacy_classes();
    let specs = enumerate_acts(group, max_size);
    opts.limits.check_size(specs.len() as u128 * specs.len() as u128)?;
    let acts: Vec<Act> = specs.iter().map(|s| s.build(group)).collect();
    let labels: Vec<String> = specs.iter().map(|s| s.label(table)).collect();
    let forms = acts.iter().map(canonical_form).collect::<Result<Vec<_>>>()?;

    let mut by_form: BTreeMap<&CanonicalForm, Vec<usize>> = BTreeMap::new();
    for (i, f) in forms.iter().enumerate() {
        by_form.entry(f).or_default().push(i);
    }
    let buckets = by_form
        .iter()
        .map(|(f, idx)| Bucket {
            form: (*f).clone(),
            label: f.to_string(),
            members: idx.iter().map(|&i| labels[i].clone()).collect(),
        })
        .collect();

    let mut pairs = PairSummary::default();
    for i in 0..acts.len() {
        for j in i + 1..acts.len() {
            let verdict = decide(&acts[i], &acts[j], opts)?;
            if forms[i] == forms[j] {
                if verdict.is_equivalent() {
                    pairs.within_equivalent += 1;
                } else {
                    pairs.within_other += 1;
                }
                continue;
            }
            match verdict {
                Verdict::NotEquivalent { .. } => pairs.cross_not_equivalent += 1,
                Verdict::Equivalent { .. } => pairs.cross_equivalent += 1,
                Verdict::Unknown { note, .. } => {
                    pairs.cross_unknown += 1;
                    pairs.unknown_pairs.push(UndecidedPair { left: labels[i].clone(), right: labels[j].clone(), note });
                }
            }
        }
    }
    Ok(Classification {
        group_order: group.order(),
        max_size,
        oracle_arity: opts.oracle_arity,
        acts: acts.len(),
        buckets,
        pairs,
    })
}
