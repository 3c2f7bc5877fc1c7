//! Desk-scale verification suite.
//!
//! Each check states a law about geometric equivalence or stability and tests
//! it by exhaustive enumeration on one group, using the lattice oracle
//! (`cl_equal` up to `max_arity`) as ground truth. Failures carry the act
//! expressions and separating congruence needed to reproduce them with
//! `equiv` and `lattice`.

use actgeo_core::act::exists_embedding;
use actgeo_core::equivalence::{
    canonical_form, classify, decide, enumerate_acts, representative, DecideOptions, OrbitMultiset,
};
use actgeo_core::galois::{cl_equal, is_geometrically_stable, AffineSpace};
use actgeo_core::{Act, ConjugacyClassTable, Limits, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::expr;
use crate::input::{subgroup_label, GroupInput};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub law: &'static str,
    pub group: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Extra findings reported even on success.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub max_arity: usize,
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckResult>,
}

pub struct Ctx<'a> {
    pub group: &'a GroupInput,
    pub max_arity: usize,
    pub limits: Limits,
}

enum Outcome {
    Pass { detail: Option<String>, data: Option<Value> },
    Fail { detail: String, witness: Value },
    Skipped(&'static str),
}

fn pass_with(detail: String) -> Result<Outcome> {
    Ok(Outcome::Pass { detail: Some(detail), data: None })
}

fn fail(detail: impl Into<String>, witness: Value) -> Result<Outcome> {
    Ok(Outcome::Fail { detail: detail.into(), witness })
}

pub struct Check {
    pub name: &'static str,
    pub law: &'static str,
    run: fn(&Ctx) -> Result<Outcome>,
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "set-stability",
        law: "over the trivial group a one-element set is geometrically stable; a two-element set is not, failing at arity 3 for T1 = {x1~x2}, T2 = {x2~x3} with gamma(x1) = gamma(x3) != gamma(x2)",
        run: set_stability,
    },
    Check {
        name: "set-classes",
        law: "over the trivial group there are exactly two equivalence classes: one-element sets and all larger sets",
        run: set_classes,
    },
    Check {
        name: "mono-monotone",
        law: "an embedding B -> A gives T''(B) contains T''(A) for every T, so every B-closed congruence is A-closed",
        run: mono_monotone,
    },
    Check { name: "power-stability", law: "every act is equivalent to its square", run: power_stability },
    Check {
        name: "mutual-embedding",
        law: "if A embeds into a power of B and B into a power of A, then A and B are equivalent",
        run: mutual_embedding,
    },
    Check {
        name: "trivial-acts",
        law: "all trivial acts with more than one element are equivalent",
        run: trivial_acts,
    },
    Check {
        name: "conjugate-inclusion",
        law: "S/H1 ~ S/H2 forces a^-1 H1 a within H2 and b^-1 H2 b within H1 for some a, b",
        run: conjugate_inclusion,
    },
    Check { name: "proper-inclusion", law: "H strictly inside G gives S/H not equivalent to S/G", run: proper_inclusion },
    Check {
        name: "cyclic-conjugacy",
        law: "S/H1 ~ S/H2 iff H1 and H2 are conjugate",
        run: cyclic_conjugacy,
    },
    Check { name: "normal-cyclic", law: "for normal H1, H2: S/H1 ~ S/H2 iff H1 = H2", run: normal_cyclic },
    Check {
        name: "zero-count",
        law: "for zero-free A: A + z is not equivalent to A + z + z, and A + z + z ~ A + z + z + z",
        run: zero_count,
    },
    Check {
        name: "zero-separation",
        law: "for zero-free A, B: A is equivalent to neither B + z nor B + z + z",
        run: zero_separation,
    },
    Check {
        name: "copower-with-zero",
        law: "for zero-free A and any B: B + A * n + z ~ B + A + z, also with two zeros",
        run: copower_with_zero,
    },
    Check {
        name: "normal-copower",
        law: "for a proper normal N and any B: B + N * n ~ B + N and N * n ~ N",
        run: normal_copower,
    },
    Check { name: "copower-cap", law: "C + A * n ~ C + A * 2 for n >= 2", run: copower_cap },
    Check {
        name: "coproduct-context",
        law: "if A and B embed into powers of each other, then C + A ~ C + B",
        run: coproduct_context,
    },
    Check {
        name: "prime-order-classes",
        law: "over an abelian group of prime order, S, S + z and S + z + z lie in distinct classes; the oracle-derived class count is reported",
        run: prime_order_classes,
    },
    Check {
        name: "injective-forms",
        law: "an act with a fixed point is equivalent to a coproduct of distinct coset acts plus one or two zeros",
        run: injective_forms,
    },
    Check {
        name: "free-acts",
        law: "for a nontrivial group all free acts are equivalent to S",
        run: free_acts,
    },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// Runs `suite` (a check name or `all`) over every group, in order.
pub fn run_suite(groups: &[GroupInput], suite: &str, max_arity: usize, limits: &Limits) -> Result<CheckReport> {
    let selected: Vec<&Check> = if suite == "all" {
        CHECKS.iter().collect()
    } else {
        let found: Vec<&Check> = CHECKS.iter().filter(|c| c.name == suite).collect();
        if found.is_empty() {
            return Err(CliError::UnknownSuite { name: suite.to_string(), available: check_names().join(", ") });
        }
        found
    };
    let mut checks = Vec::new();
    for group in groups {
        let ctx = Ctx { group, max_arity, limits: *limits };
        for check in &selected {
            let (status, detail, data, witness) = match (check.run)(&ctx)? {
                Outcome::Pass { detail, data } => (Status::Pass, detail, data, None),
                Outcome::Fail { detail, witness } => (Status::Fail, Some(detail), None, Some(witness)),
                Outcome::Skipped(why) => (Status::Skipped, Some(why.to_string()), None, None),
            };
            checks.push(CheckResult {
                name: check.name,
                law: check.law,
                group: group.name.clone(),
                params: json!({ "group_order": group.group.order(), "max_arity": max_arity }),
                status,
                detail,
                data,
                witness,
            });
        }
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    Ok(CheckReport {
        suite: suite.to_string(),
        max_arity,
        status: if failed == 0 { Status::Pass } else { Status::Fail },
        passed,
        failed,
        skipped,
        checks,
    })
}

/// An act together with the expression that rebuilds it.
#[derive(Clone)]
struct Named {
    expr: String,
    act: Act,
}

impl Ctx<'_> {
    fn named(&self, src: &str) -> Result<Named> {
        Ok(Named { expr: src.to_string(), act: expr::build(self.group, src, &self.limits)? })
    }

    fn table(&self) -> &ConjugacyClassTable {
        self.group.group.subgroup_conjugacy_classes()
    }

    fn opts(&self) -> DecideOptions {
        DecideOptions { oracle_arity: self.max_arity, limits: self.limits }
    }

    /// Coset acts of the proper subgroup classes, as `coset(#c)`.
    fn zero_free_blocks(&self) -> Result<Vec<Named>> {
        let t = self.table();
        (0..t.num_classes()).filter(|&c| t.is_proper(c)).map(|c| self.named(&format!("coset(#{c})"))).collect()
    }

    fn enumerate(&self, max_size: usize) -> Result<Vec<Named>> {
        enumerate_acts(&self.group.group, max_size)
            .iter()
            .map(|m| self.named(&multiset_expr(m, self.table())))
            .collect()
    }

    /// First arity `≤ max_arity` at which the oracle separates `a` and `b`.
    fn separation(&self, a: &Named, b: &Named) -> Result<Option<Value>> {
        for k in 1..=self.max_arity {
            if let Some(t) = cl_equal(&a.act, &b.act, k, &self.limits)? {
                return Ok(Some(json!({ "left": a.expr, "right": b.expr, "arity": k, "congruence": t })));
            }
        }
        Ok(None)
    }

    fn decide(&self, a: &Named, b: &Named) -> Result<Verdict> {
        Ok(decide(&a.act, &b.act, &self.opts())?)
    }
}

fn pair(a: &Named, b: &Named) -> Value {
    json!({ "left": a.expr, "right": b.expr })
}

fn multiset_expr(m: &OrbitMultiset, table: &ConjugacyClassTable) -> String {
    m.counts
        .iter()
        .map(|(&c, &n)| {
            let base = if c == table.whole_class() { "z".to_string() } else { format!("coset(#{c})") };
            if n == 1 {
                base
            } else {
                format!("{base} * {n}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Pairs that must be equivalent: none separated by the oracle, and `decide`
/// does not separate them either.
fn all_equivalent(ctx: &Ctx, pairs: &[(Named, Named)]) -> Result<Outcome> {
    for (a, b) in pairs {
        if let Some(w) = ctx.separation(a, b)? {
            return fail("oracle separates an equivalent pair", w);
        }
        if ctx.decide(a, b)?.is_not_equivalent() {
            return fail("decide separates an equivalent pair", pair(a, b));
        }
    }
    pass_with(format!("{} pairs", pairs.len()))
}

/// Pairs that must be inequivalent: `decide` says so and every witness re-verifies.
fn all_separated(ctx: &Ctx, pairs: &[(Named, Named)], need_oracle: bool) -> Result<Outcome> {
    for (a, b) in pairs {
        let v = ctx.decide(a, b)?;
        if !v.is_not_equivalent() {
            return fail(
                "decide does not separate an inequivalent pair",
                json!({ "left": a.expr, "right": b.expr, "verdict": v }),
            );
        }
        if let Some(w) = v.witness() {
            if !w.verify(&a.act, &b.act, &ctx.limits)? {
                return fail("witness does not re-verify", json!({ "left": a.expr, "right": b.expr, "verdict": v }));
            }
        }
        if need_oracle && ctx.separation(a, b)?.is_none() {
            return fail(format!("oracle finds no separation up to arity {}", ctx.max_arity), pair(a, b));
        }
    }
    pass_with(format!("{} pairs", pairs.len()))
}

fn set_stability(ctx: &Ctx) -> Result<Outcome> {
    if ctx.group.group.order() != 1 {
        return Ok(Outcome::Skipped("needs the trivial group"));
    }
    let one = ctx.named("z")?;
    let report = is_geometrically_stable(&one.act, 3, &ctx.limits)?;
    if let Some(cx) = report.counterexample {
        return fail("one-element set is unstable", json!(cx));
    }
    let two = ctx.named("z + z")?;
    let report = is_geometrically_stable(&two.act, 3, &ctx.limits)?;
    let Some(cx) = report.counterexample else {
        return fail("two-element set is stable up to arity 3", json!({ "target": two.expr }));
    };
    let g = &cx.gamma;
    let exact = cx.arity == 3
        && cx.t1.to_string() == "[0,0,1]"
        && cx.t2.to_string() == "[0,1,1]"
        && g[0] == g[2]
        && g[0] != g[1];
    if !exact {
        return fail("counterexample differs from T1 = {x1~x2}, T2 = {x2~x3}, gamma = (a,b,a)", json!(cx));
    }
    Ok(Outcome::Pass { detail: None, data: Some(json!(cx)) })
}

fn set_classes(ctx: &Ctx) -> Result<Outcome> {
    if ctx.group.group.order() != 1 {
        return Ok(Outcome::Skipped("needs the trivial group"));
    }
    let c = classify(&ctx.group.group, 4, &ctx.opts())?;
    let p = &c.pairs;
    if c.buckets.len() != 2 || p.within_other + p.cross_equivalent + p.cross_unknown != 0 {
        return fail(format!("{} classes", c.buckets.len()), json!(c));
    }
    pass_with(format!("{} acts in 2 classes", c.acts))
}

fn mono_monotone(ctx: &Ctx) -> Result<Outcome> {
    let acts = ctx.enumerate(3)?;
    let mut pairs = 0;
    for a in &acts {
        for b in &acts {
            if exists_embedding(&b.act, &a.act, &ctx.limits)?.is_none() {
                continue;
            }
            pairs += 1;
            for k in 1..=ctx.max_arity {
                let sa = AffineSpace::new(&a.act, k, &ctx.limits)?;
                let sb = AffineSpace::new(&b.act, k, &ctx.limits)?;
                let (la, lb) = (sa.closed_lattice(), sb.closed_lattice());
                for t in la.members().iter().chain(lb.members()) {
                    let (ca, cb) = (sa.congruence_closure(t)?, sb.congruence_closure(t)?);
                    if !ca.is_subset_of(&cb) {
                        let w = json!({ "sub": b.expr, "act": a.expr, "arity": k, "congruence": t });
                        return fail("closure over the subact is smaller", w);
                    }
                }
            }
        }
    }
    pass_with(format!("{pairs} embeddings"))
}

fn power_stability(ctx: &Ctx) -> Result<Outcome> {
    let mut pairs = Vec::new();
    for a in ctx.enumerate(3)? {
        let sq = ctx.named(&format!("({}) ^ 2", a.expr))?;
        pairs.push((a, sq));
    }
    all_equivalent(ctx, &pairs)
}

/// Distinct pairs of acts of size ≤ 3 embedding into each other's squares.
fn mutually_embedded(ctx: &Ctx) -> Result<Vec<(Named, Named)>> {
    let acts = ctx.enumerate(3)?;
    let squares: Vec<Act> = acts.iter().map(|a| a.act.power(2, &ctx.limits)).collect::<std::result::Result<_, _>>()?;
    let mut out = Vec::new();
    for i in 0..acts.len() {
        for j in i + 1..acts.len() {
            if exists_embedding(&acts[i].act, &squares[j], &ctx.limits)?.is_some()
                && exists_embedding(&acts[j].act, &squares[i], &ctx.limits)?.is_some()
            {
                out.push((acts[i].clone(), acts[j].clone()));
            }
        }
    }
    Ok(out)
}

fn mutual_embedding(ctx: &Ctx) -> Result<Outcome> {
    all_equivalent(ctx, &mutually_embedded(ctx)?)
}

fn trivial_acts(ctx: &Ctx) -> Result<Outcome> {
    let acts: Vec<Named> = (2..=4).map(|n| ctx.named(&format!("z * {n}"))).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..acts.len() {
        for j in i + 1..acts.len() {
            pairs.push((acts[i].clone(), acts[j].clone()));
        }
    }
    all_equivalent(ctx, &pairs)
}

fn subgroup_cosets(ctx: &Ctx) -> Result<Vec<(actgeo_core::Subgroup, Named)>> {
    let g = &ctx.group.group;
    g.enumerate_subgroups()
        .into_iter()
        .map(|h| {
            let n = ctx.named(&format!("coset({})", subgroup_label(g, &h)))?;
            Ok((h, n))
        })
        .collect()
}

fn conjugate_inclusion(ctx: &Ctx) -> Result<Outcome> {
    let g = &ctx.group.group;
    let cosets = subgroup_cosets(ctx)?;
    let mut unseparated = 0;
    for (h1, a) in &cosets {
        for (h2, b) in &cosets {
            if ctx.separation(a, b)?.is_some() {
                continue;
            }
            unseparated += 1;
            if g.exists_conjugate_inclusion(h1, h2).is_none() || g.exists_conjugate_inclusion(h2, h1).is_none() {
                return fail("oracle-equivalent cosets without mutual conjugate inclusion", pair(a, b));
            }
        }
    }
    pass_with(format!("{unseparated} oracle-equivalent pairs"))
}

fn proper_inclusion(ctx: &Ctx) -> Result<Outcome> {
    let cosets = subgroup_cosets(ctx)?;
    let mut pairs = Vec::new();
    for (h1, a) in &cosets {
        for (h2, b) in &cosets {
            if h1 != h2 && h1.is_subset_of(h2) {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    all_separated(ctx, &pairs, true)
}

fn cyclic_conjugacy(ctx: &Ctx) -> Result<Outcome> {
    let g = &ctx.group.group;
    let cosets = subgroup_cosets(ctx)?;
    let (mut conj, mut by_oracle, mut by_arm) = (0, 0, 0);
    for (h1, a) in &cosets {
        for (h2, b) in &cosets {
            let v = ctx.decide(a, b)?;
            let conjugate = g.are_conjugate(h1, h2).is_some();
            if v.is_equivalent() != conjugate {
                return fail(
                    "verdict disagrees with conjugacy",
                    json!({ "left": a.expr, "right": b.expr, "verdict": v }),
                );
            }
            let sep = ctx.separation(a, b)?;
            if conjugate {
                conj += 1;
                if let Some(w) = sep {
                    return fail("oracle separates conjugate cosets", w);
                }
            } else if sep.is_some() {
                by_oracle += 1;
            } else {
                by_arm += 1;
            }
        }
    }
    pass_with(format!(
        "{conj} conjugate pairs; {by_oracle} non-conjugate pairs separated by the oracle, {by_arm} by the cyclic rule alone"
    ))
}

fn normal_cyclic(ctx: &Ctx) -> Result<Outcome> {
    let g = &ctx.group.group;
    let normal: Vec<_> = subgroup_cosets(ctx)?.into_iter().filter(|(h, _)| g.is_normal(h)).collect();
    let mut distinct = Vec::new();
    let mut same = Vec::new();
    for (i, (_, a)) in normal.iter().enumerate() {
        same.push((a.clone(), a.clone()));
        for (_, b) in &normal[i + 1..] {
            distinct.push((a.clone(), b.clone()));
        }
    }
    match all_separated(ctx, &distinct, false)? {
        Outcome::Pass { .. } => {}
        other => return Ok(other),
    }
    for (a, b) in &same {
        if !ctx.decide(a, b)?.is_equivalent() {
            return fail("a coset act is not equivalent to itself", pair(a, b));
        }
    }
    pass_with(format!("{} normal subgroups", normal.len()))
}

fn zero_count(ctx: &Ctx) -> Result<Outcome> {
    let blocks = ctx.zero_free_blocks()?;
    if blocks.is_empty() {
        return Ok(Outcome::Skipped("no zero-free acts"));
    }
    let (mut apart, mut together) = (Vec::new(), Vec::new());
    for a in &blocks {
        let e = &a.expr;
        apart.push((ctx.named(&format!("{e} + z"))?, ctx.named(&format!("{e} + z * 2"))?));
        together.push((ctx.named(&format!("{e} + z * 2"))?, ctx.named(&format!("{e} + z * 3"))?));
    }
    match all_separated(ctx, &apart, true)? {
        Outcome::Pass { .. } => {}
        other => return Ok(other),
    }
    all_equivalent(ctx, &together)
}

fn zero_separation(ctx: &Ctx) -> Result<Outcome> {
    let blocks = ctx.zero_free_blocks()?;
    if blocks.is_empty() {
        return Ok(Outcome::Skipped("no zero-free acts"));
    }
    let mut pairs = Vec::new();
    for a in &blocks {
        for b in &blocks {
            pairs.push((a.clone(), ctx.named(&format!("{} + z", b.expr))?));
            pairs.push((a.clone(), ctx.named(&format!("{} + z * 2", b.expr))?));
        }
    }
    all_separated(ctx, &pairs, true)
}

/// Zero-free blocks plus `z`, used as the context `B` / `C`.
fn contexts(ctx: &Ctx) -> Result<Vec<Named>> {
    let mut out = ctx.zero_free_blocks()?;
    out.push(ctx.named("z")?);
    Ok(out)
}

fn copower_with_zero(ctx: &Ctx) -> Result<Outcome> {
    let blocks = ctx.zero_free_blocks()?;
    if blocks.is_empty() {
        return Ok(Outcome::Skipped("no zero-free acts"));
    }
    let mut pairs = Vec::new();
    for a in &blocks {
        for b in contexts(ctx)? {
            for zeros in ["z", "z * 2"] {
                let (a, b) = (&a.expr, &b.expr);
                pairs.push((
                    ctx.named(&format!("{b} + {a} * 2 + {zeros}"))?,
                    ctx.named(&format!("{b} + {a} + {zeros}"))?,
                ));
            }
        }
    }
    all_equivalent(ctx, &pairs)
}

fn normal_copower(ctx: &Ctx) -> Result<Outcome> {
    let t = ctx.table();
    let normal: Vec<usize> = (0..t.num_classes()).filter(|&c| t.is_proper(c) && t.is_normal(c)).collect();
    if normal.is_empty() {
        return Ok(Outcome::Skipped("no proper normal subgroups"));
    }
    let mut pairs = Vec::new();
    for c in normal {
        let n = format!("coset(#{c})");
        pairs.push((ctx.named(&format!("{n} * 3"))?, ctx.named(&n)?));
        for b in contexts(ctx)? {
            pairs.push((ctx.named(&format!("{} + {n} * 2", b.expr))?, ctx.named(&format!("{} + {n}", b.expr))?));
        }
    }
    all_equivalent(ctx, &pairs)
}

fn copower_cap(ctx: &Ctx) -> Result<Outcome> {
    let mut bases = ctx.zero_free_blocks()?;
    bases.push(ctx.named("z")?);
    let mut pairs = Vec::new();
    for a in &bases {
        let a = &a.expr;
        pairs.push((ctx.named(&format!("{a} * 3"))?, ctx.named(&format!("{a} * 2"))?));
        for c in contexts(ctx)? {
            let c = &c.expr;
            pairs.push((ctx.named(&format!("{c} + {a} * 3"))?, ctx.named(&format!("{c} + {a} * 2"))?));
        }
    }
    all_equivalent(ctx, &pairs)
}

fn coproduct_context(ctx: &Ctx) -> Result<Outcome> {
    let mut pairs = Vec::new();
    for (a, b) in mutually_embedded(ctx)? {
        for c in contexts(ctx)? {
            let c = &c.expr;
            pairs.push((ctx.named(&format!("{c} + {}", a.expr))?, ctx.named(&format!("{c} + {}", b.expr))?));
        }
    }
    all_equivalent(ctx, &pairs)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_order_classes(ctx: &Ctx) -> Result<Outcome> {
    let g = &ctx.group.group;
    if !is_prime(g.order()) {
        return Ok(Outcome::Skipped("needs a group of prime order"));
    }
    let listed: Vec<Named> = ["S", "S + z", "S + z * 2"].iter().map(|e| ctx.named(e)).collect::<Result<_>>()?;
    for i in 0..listed.len() {
        for j in i + 1..listed.len() {
            match all_separated(ctx, &[(listed[i].clone(), listed[j].clone())], true)? {
                Outcome::Pass { .. } => {}
                other => return Ok(other),
            }
        }
    }
    let c = classify(g, 4, &ctx.opts())?;
    if c.pairs.within_other + c.pairs.cross_equivalent != 0 {
        return fail("classification is not internally coherent", json!(c));
    }
    // partition the same acts by the oracle alone
    let acts = ctx.enumerate(4)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, a) in acts.iter().enumerate() {
        let mut home = None;
        for (ci, class) in classes.iter().enumerate() {
            if ctx.separation(&acts[class[0]], a)?.is_none() {
                home = Some(ci);
                break;
            }
        }
        match home {
            Some(ci) => classes[ci].push(i),
            None => classes.push(vec![i]),
        }
    }
    let forms: Vec<_> = acts.iter().map(|a| canonical_form(&a.act)).collect::<std::result::Result<_, _>>()?;
    for class in &classes {
        if class.iter().any(|&i| forms[i] != forms[class[0]]) {
            let members: Vec<&str> = class.iter().map(|&i| acts[i].expr.as_str()).collect();
            return fail("an oracle class mixes canonical forms", json!({ "members": members }));
        }
    }
    if classes.len() != c.buckets.len() {
        return fail("oracle classes split a canonical form", json!(c));
    }
    let listed_forms: Vec<_> = listed.iter().map(|n| canonical_form(&n.act)).collect::<std::result::Result<_, _>>()?;
    let summary: Vec<Value> = classes
        .iter()
        .map(|class| {
            let f = &forms[class[0]];
            json!({
                "form": f.to_string(),
                "members": class.iter().map(|&i| acts[i].expr.clone()).collect::<Vec<_>>(),
                "listed": listed_forms.contains(f),
                "pure_trivial": f.classes.is_empty(),
            })
        })
        .collect();
    let present: Vec<String> = listed_forms.iter().filter(|f| forms.contains(f)).map(|f| f.to_string()).collect();
    let additional: Vec<String> = classes
        .iter()
        .map(|class| &forms[class[0]])
        .filter(|f| !listed_forms.contains(f))
        .map(|f| f.to_string())
        .collect();
    let all_trivial = classes
        .iter()
        .map(|class| &forms[class[0]])
        .filter(|f| !listed_forms.contains(f))
        .all(|f| f.classes.is_empty());
    let data = json!({
        "max_size": 4,
        "oracle_classes": classes.len(),
        "classes": summary,
        "listed_present": present,
        "additional": additional,
        "additional_are_pure_trivial": !additional.is_empty() && all_trivial,
    });
    let detail = format!(
        "{} oracle classes among acts of size <= 4; listed classes present: {}; additional: {}",
        classes.len(),
        present.join(", "),
        match (additional.is_empty(), all_trivial) {
            (true, _) => "none".to_string(),
            (false, true) => format!("{} (pure-trivial)", additional.join(", ")),
            (false, false) => additional.join(", "),
        }
    );
    Ok(Outcome::Pass { detail: Some(detail), data: Some(data) })
}

fn injective_forms(ctx: &Ctx) -> Result<Outcome> {
    let g = &ctx.group.group;
    let mut n = 0;
    for a in ctx.enumerate(4)? {
        if a.act.fixed_points().is_empty() {
            continue;
        }
        n += 1;
        let form = canonical_form(&a.act)?;
        if form.zero_sig == 0 || form.classes.iter().any(|c| c.mult != 1) {
            return fail("injective act with a non-injective form", json!({ "act": a.expr, "form": form }));
        }
        let rep = Named { expr: form_expr(&form), act: representative(&form, g)? };
        if let Some(w) = ctx.separation(&a, &rep)? {
            return fail("oracle separates an injective act from its representative", w);
        }
    }
    pass_with(format!("{n} injective acts"))
}

/// Expression for the representative of a canonical form.
pub fn form_expr(form: &actgeo_core::CanonicalForm) -> String {
    let mut parts: Vec<String> = form
        .classes
        .iter()
        .map(|c| if c.mult == 1 { format!("coset(#{})", c.class) } else { format!("coset(#{}) * {}", c.class, c.mult) })
        .collect();
    match form.zero_sig {
        0 => {}
        1 => parts.push("z".into()),
        n => parts.push(format!("z * {n}")),
    }
    parts.join(" + ")
}

fn free_acts(ctx: &Ctx) -> Result<Outcome> {
    if ctx.group.group.order() == 1 {
        return Ok(Outcome::Skipped("needs a nontrivial group"));
    }
    let s = ctx.named("S")?;
    let pairs = vec![(s.clone(), ctx.named("S * 2")?), (s, ctx.named("S * 3")?)];
    all_equivalent(ctx, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::builtin_groups;

    #[test]
    fn unknown_suite() {
        let err = run_suite(&builtin_groups(), "nope", 2, &Limits::default()).unwrap_err();
        assert!(err.to_string().contains("set-stability"));
    }

    #[test]
    fn primes() {
        let got: Vec<usize> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(got, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
