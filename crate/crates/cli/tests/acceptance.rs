//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Closures, closedness and conjugacy are recomputed here by brute force,
//! independently of the library, and compared with what the library reports.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use actgeo_cli::input::{load_group, GroupInput};
use actgeo_core::act::coproduct;
use actgeo_core::congruence::kernel;
use actgeo_core::equivalence::{classify, decide, enumerate_acts, DecideOptions, Separation};
use actgeo_core::galois::{cl_equal, is_geometrically_stable};
use actgeo_core::{Act, AffineSpace, Congruence, FiniteGroup, Limits, Subgroup, Verdict};

type Outcome = std::result::Result<String, String>;

fn fixture(name: &str) -> GroupInput {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    load_group(&path).expect("fixture loads")
}

fn lim() -> Limits {
    Limits::default()
}

fn sum(parts: &[Act]) -> Act {
    coproduct(parts).expect("common monoid").0
}

fn zeros(g: &FiniteGroup, n: usize) -> Vec<Act> {
    vec![Act::zero(g.monoid().clone()); n]
}

fn regular(g: &FiniteGroup) -> Act {
    Act::regular(g.monoid().clone())
}

// ---- brute-force oracle -------------------------------------------------

/// Free act on `k` generators over `g`'s monoid, element `(i, s)` at `i·|S| + s`.
struct Brute {
    order: usize,
    k: usize,
    target: Act,
    points: Vec<Vec<usize>>,
}

impl Brute {
    fn new(target: &Act, k: usize) -> Self {
        let mut points = vec![vec![]];
        for _ in 0..k {
            points = points
                .into_iter()
                .flat_map(|p| (0..target.size()).map(move |y| [p.clone(), vec![y]].concat()))
                .collect();
        }
        Brute { order: target.monoid().order(), k, target: target.clone(), points }
    }

    fn carrier(&self) -> usize {
        self.order * self.k
    }

    fn image(&self, p: &[usize], x: usize) -> usize {
        self.target.act(x % self.order, p[x / self.order])
    }

    fn free_mul(&self, s: usize, x: usize) -> usize {
        let m = self.target.monoid();
        (x / self.order) * self.order + m.mul(s, x % self.order)
    }

    /// Partitions of the carrier as restricted growth strings, kept when compatible.
    fn congruences(&self) -> Vec<Vec<usize>> {
        let n = self.carrier();
        let mut out = Vec::new();
        let mut labels = vec![0usize; n];
        fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == labels.len() {
                out.push(labels.clone());
                return;
            }
            for l in 0..=max + 1 {
                labels[i] = l;
                rec(i + 1, max.max(l), labels, out);
            }
        }
        if n == 0 {
            return out;
        }
        rec(1, 0, &mut labels, &mut out);
        out.retain(|lab| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    lab[a] != lab[b] || (0..self.order).all(|s| lab[self.free_mul(s, a)] == lab[self.free_mul(s, b)])
                })
            })
        });
        out
    }

    fn prime(&self, t: &[usize]) -> BTreeSet<usize> {
        let n = self.carrier();
        (0..self.points.len())
            .filter(|&pi| {
                let p = &self.points[pi];
                (0..n).all(|a| (0..n).all(|b| t[a] != t[b] || self.image(p, a) == self.image(p, b)))
            })
            .collect()
    }

    /// `A′` as a relation matrix (`true` when related).
    fn coprime(&self, a: &BTreeSet<usize>) -> Vec<Vec<bool>> {
        let n = self.carrier();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.iter().all(|&pi| self.image(&self.points[pi], x) == self.image(&self.points[pi], y)))
                    .collect()
            })
            .collect()
    }

    fn to_matrix(&self, t: &[usize]) -> Vec<Vec<bool>> {
        let n = self.carrier();
        (0..n).map(|x| (0..n).map(|y| t[x] == t[y]).collect()).collect()
    }

    fn double_prime(&self, t: &[usize]) -> Vec<Vec<bool>> {
        self.coprime(&self.prime(t))
    }

    fn is_closed(&self, t: &[usize]) -> bool {
        self.double_prime(t) == self.to_matrix(t)
    }

    fn to_congruence(&self, rel: &[Vec<bool>]) -> Congruence {
        let labels: Vec<usize> = (0..rel.len()).map(|x| (0..rel.len()).find(|&y| rel[x][y]).unwrap()).collect();
        Congruence::of_map(&labels)
    }
}

fn le(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    a.iter().zip(b).all(|(ra, rb)| ra.iter().zip(rb).all(|(&x, &y)| !x || y))
}

fn brute_conjugate(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> bool {
    (0..g.order()).any(|a| {
        let ai = (0..g.order()).find(|&b| g.mul(a, b) == g.identity()).unwrap();
        let conj: BTreeSet<usize> = h1.members().iter().map(|&h| g.mul(g.mul(ai, h), a)).collect();
        conj == h2.members().iter().copied().collect()
    })
}

fn laws_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("trivial", fixture("trivial.json").group),
        ("Z2", fixture("z2.json").group),
        ("Z3", fixture("z3.json").group),
        ("S3", fixture("s3.json").group),
    ]
}

/// Targets of size ≤ 4 and arities ≤ 2 with free carrier ≤ 8.
fn law_cases() -> Vec<(String, Act, usize)> {
    let mut out = Vec::new();
    for (name, g) in laws_groups() {
        for spec in enumerate_acts(&g, 4) {
            for k in 1..=2 {
                if g.order() * k <= 8 {
                    out.push((
                        format!("{name} {} k={k}", spec.label(g.subgroup_conjugacy_classes())),
                        spec.build(&g),
                        k,
                    ));
                }
            }
        }
    }
    out
}

// ---- criteria -----------------------------------------------------------

fn galois_laws() -> Outcome {
    let mut violations = Vec::new();
    let (mut cases, mut congruences) = (0, 0);
    for (label, target, k) in law_cases() {
        cases += 1;
        let brute = Brute::new(&target, k);
        let space = AffineSpace::new(&target, k, &lim()).map_err(|e| e.to_string())?;
        let all = brute.congruences();
        congruences += all.len();
        let primes: Vec<BTreeSet<usize>> = all.iter().map(|t| brute.prime(t)).collect();
        let closures: Vec<Vec<Vec<bool>>> = primes.iter().map(|p| brute.coprime(p)).collect();
        for (i, t) in all.iter().enumerate() {
            let tm = brute.to_matrix(t);
            if !le(&tm, &closures[i]) {
                violations.push(format!("{label}: T not in T''"));
            }
            let again = brute.double_prime(brute.to_congruence(&closures[i]).blocks());
            if again != closures[i] {
                violations.push(format!("{label}: T'' not idempotent"));
            }
            for (j, u) in all.iter().enumerate() {
                if le(&tm, &brute.to_matrix(u)) && (!primes[j].is_subset(&primes[i]) || !le(&closures[i], &closures[j]))
                {
                    violations.push(format!("{label}: antitonicity"));
                }
            }
            let lib = space.congruence_closure(&brute.to_congruence(&tm)).map_err(|e| e.to_string())?;
            if lib != brute.to_congruence(&closures[i]) {
                violations.push(format!("{label}: library closure differs from brute force"));
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("{cases} (target, arity) cases, {congruences} congruences, 0 violations"))
    } else {
        Err(format!("{} violations, first: {}", violations.len(), violations[0]))
    }
}

fn subdirect_certificates() -> Outcome {
    let (mut closed, mut rejected) = (0, 0);
    for (label, target, k) in law_cases() {
        let brute = Brute::new(&target, k);
        let space = AffineSpace::new(&target, k, &lim()).map_err(|e| e.to_string())?;
        let lattice = space.closed_lattice();
        for t in lattice.members() {
            let homs = space
                .subdirect_certificate(t)
                .map_err(|e| e.to_string())?
                .ok_or(format!("{label}: {t} lacks a certificate"))?;
            let kernels: Vec<Congruence> = homs.iter().map(kernel).collect();
            let meet = kernels.iter().fold(Congruence::universal(t.size()), |acc, k| acc.meet(k));
            if meet != *t {
                return Err(format!("{label}: certificate for {t} intersects to {meet}"));
            }
            closed += 1;
        }
        for t in brute.congruences() {
            let c = Congruence::of_map(&t);
            let is_closed = brute.is_closed(&t);
            if is_closed != lattice.contains(&c) {
                return Err(format!("{label}: lattice membership of {c} disagrees with brute force"));
            }
            if !is_closed {
                if space.subdirect_certificate(&c).map_err(|e| e.to_string())?.is_some() {
                    return Err(format!("{label}: non-closed {c} got a certificate"));
                }
                rejected += 1;
            }
        }
    }
    Ok(format!("{closed} closed congruences certified, {rejected} non-closed rejected"))
}

fn set_stability() -> Outcome {
    let t = fixture("trivial.json").group;
    let one = Act::zero(t.monoid().clone());
    let r = is_geometrically_stable(&one, 3, &lim()).map_err(|e| e.to_string())?;
    if !r.is_stable() {
        return Err("one-element set reported unstable".into());
    }
    let two = sum(&zeros(&t, 2));
    if !is_geometrically_stable(&two, 2, &lim()).map_err(|e| e.to_string())?.is_stable() {
        return Err("two-element set fails below arity 3".into());
    }
    let r = is_geometrically_stable(&two, 3, &lim()).map_err(|e| e.to_string())?;
    let cx = r.counterexample.ok_or("two-element set reported stable")?;
    let g = &cx.gamma;
    let exact = cx.arity == 3
        && cx.t1.to_string() == "[0,0,1]"
        && cx.t2.to_string() == "[0,1,1]"
        && g.len() == 3
        && g[0] == g[2]
        && g[0] != g[1];
    if !exact {
        return Err(format!("counterexample {cx:?}"));
    }
    // the witness really lies outside T1′ ∪ T2′ and inside (T1 ∩ T2)′
    let brute = Brute::new(&two, 3);
    let gi = brute.points.iter().position(|p| p == g).unwrap();
    let (p1, p2) = (brute.prime(cx.t1.blocks()), brute.prime(cx.t2.blocks()));
    let pm = brute.prime(cx.t1.meet(&cx.t2).blocks());
    if p1.contains(&gi) || p2.contains(&gi) || !pm.contains(&gi) {
        return Err("gamma does not witness the failure".into());
    }
    Ok(format!("|G|=1 stable; |G|=2 fails at k=3 with T1={}, T2={}, gamma={:?}", cx.t1, cx.t2, g))
}

fn set_classes() -> Outcome {
    let t = fixture("trivial.json").group;
    let c = classify(&t, 4, &DecideOptions::default()).map_err(|e| e.to_string())?;
    let p = &c.pairs;
    if c.buckets.len() != 2 {
        return Err(format!("{} classes", c.buckets.len()));
    }
    if p.within_other != 0 || p.cross_equivalent + p.cross_unknown != 0 {
        return Err(format!("pair summary {p:?}"));
    }
    // within pairs equivalent by the oracle, cross pairs separated
    let acts: Vec<Act> = enumerate_acts(&t, 4).iter().map(|s| s.build(&t)).collect();
    for a in &acts {
        for b in &acts {
            let same = (a.size() == 1) == (b.size() == 1);
            let sep = (1..=3).any(|k| cl_equal(a, b, k, &lim()).unwrap().is_some());
            if same == sep {
                return Err(format!("oracle disagrees for sizes {} and {}", a.size(), b.size()));
            }
        }
    }
    Ok(format!(
        "2 classes; {} within pairs equivalent, {} cross pairs not equivalent",
        p.within_equivalent, p.cross_not_equivalent
    ))
}

fn cyclic_conjugacy() -> Outcome {
    let opts = DecideOptions::default();
    let mut n = 0;
    for name in ["s3.json", "z4.json"] {
        let g = fixture(name).group;
        let subgroups = g.enumerate_subgroups();
        for h1 in &subgroups {
            for h2 in &subgroups {
                let (a, b) = (Act::coset(&g, h1), Act::coset(&g, h2));
                let v = decide(&a, &b, &opts).map_err(|e| e.to_string())?;
                let conj = brute_conjugate(&g, h1, h2);
                if v.is_equivalent() != conj || v.is_unknown() {
                    return Err(format!("{name}: {h1:?} vs {h2:?}: {v:?}"));
                }
                let sep = (1..=2).find_map(|k| cl_equal(&a, &b, k, &lim()).unwrap());
                match (&v, sep) {
                    (Verdict::Equivalent { .. }, Some(t)) => {
                        return Err(format!("{name}: equivalent pair separated by {t}"))
                    }
                    (Verdict::NotEquivalent { reason, .. }, None) if *reason != Separation::CyclicNonConjugate => {
                        return Err(format!("{name}: unseparated pair with reason {reason:?}"))
                    }
                    _ => {}
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} subgroup pairs over S3 and Z4"))
}

fn zero_signature() -> Outcome {
    let opts = DecideOptions::default();
    for name in ["z2.json", "z3.json"] {
        let g = fixture(name).group;
        let s = regular(&g);
        let sz = sum(&[vec![s.clone()], zeros(&g, 1)].concat());
        let szz = sum(&[vec![s.clone()], zeros(&g, 2)].concat());
        let szzz = sum(&[vec![s.clone()], zeros(&g, 3)].concat());
        if !decide(&s, &sz, &opts).map_err(|e| e.to_string())?.is_not_equivalent() {
            return Err(format!("{name}: S ~ S+z"));
        }
        let v = decide(&sz, &szz, &opts).map_err(|e| e.to_string())?;
        let w = v.witness().ok_or(format!("{name}: no witness for S+z vs S+z+z"))?;
        let left = Brute::new(&sz, w.arity).is_closed(w.congruence.blocks());
        let right = Brute::new(&szz, w.arity).is_closed(w.congruence.blocks());
        if !v.is_not_equivalent() || left == right {
            return Err(format!("{name}: witness {} closed on both or neither", w.congruence));
        }
        if !decide(&szz, &szzz, &opts).map_err(|e| e.to_string())?.is_equivalent() {
            return Err(format!("{name}: S+z+z not equivalent to S+z+z+z"));
        }
    }
    Ok("Z2, Z3: S vs S+z separated, S+z vs S+z+z separated with re-verified witness, S+z+z ~ S+z+z+z".into())
}

fn collapse_soundness() -> Outcome {
    let g = fixture("s3.json").group;
    let b = Act::coset(&g, &g.subgroup([0, 3]).unwrap());
    let n = Act::coset(&g, &g.subgroup([0, 1, 2]).unwrap());
    let s = regular(&g);
    let mut cases = vec![
        ("F_1 vs F_3".to_string(), s.clone(), s.copower(3)),
        ("B + N*2 vs B + N".to_string(), sum(&[b.clone(), n.clone(), n.clone()]), sum(&[b.clone(), n.clone()])),
        ("B*3 vs B*2".to_string(), b.copower(3), b.copower(2)),
    ];
    for spec in enumerate_acts(&g, 3) {
        let a = spec.build(&g);
        let sq = a.power(2, &lim()).map_err(|e| e.to_string())?;
        cases.push((format!("{} vs its square", spec.label(g.subgroup_conjugacy_classes())), a, sq));
    }
    for (label, x, y) in &cases {
        for k in 1..=2 {
            if let Some(t) = cl_equal(x, y, k, &lim()).map_err(|e| e.to_string())? {
                return Err(format!("{label}: separated at k={k} by {t}"));
            }
        }
    }
    Ok(format!("{} pairs agree at k <= 2", cases.len()))
}

fn z4_cosets() -> Outcome {
    let g = fixture("z4.json").group;
    let subgroups = g.enumerate_subgroups();
    if subgroups.len() != 3 {
        return Err(format!("{} subgroups", subgroups.len()));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let v = decide(&Act::coset(&g, &subgroups[i]), &Act::coset(&g, &subgroups[j]), &DecideOptions::default())
                .map_err(|e| e.to_string())?;
            if !v.is_not_equivalent() {
                return Err(format!("{:?} vs {:?}: {v:?}", subgroups[i], subgroups[j]));
            }
        }
    }
    Ok("3 subgroup coset acts pairwise not equivalent".into())
}

fn prime_order_probe() -> Outcome {
    let mut notes = Vec::new();
    for name in ["z2.json", "z3.json"] {
        let g = fixture(name).group;
        let opts = DecideOptions::default();
        let c = classify(&g, 4, &opts).map_err(|e| e.to_string())?;
        let acts: Vec<(String, Act)> =
            enumerate_acts(&g, 4).iter().map(|s| (s.label(g.subgroup_conjugacy_classes()), s.build(&g))).collect();
        let sep = |a: &Act, b: &Act| (1..=2).any(|k| cl_equal(a, b, k, &lim()).unwrap().is_some());
        // oracle classes by first unseparated representative
        let mut reps: Vec<usize> = Vec::new();
        let mut class_of = vec![0; acts.len()];
        for i in 0..acts.len() {
            match reps.iter().position(|&r| !sep(&acts[r].1, &acts[i].1)) {
                Some(c) => class_of[i] = c,
                None => {
                    class_of[i] = reps.len();
                    reps.push(i);
                }
            }
        }
        // coherence: the oracle partition matches the canonical buckets
        for b in &c.buckets {
            let ids: BTreeSet<usize> =
                b.members.iter().map(|m| class_of[acts.iter().position(|(l, _)| l == m).unwrap()]).collect();
            if ids.len() != 1 {
                return Err(format!("{name}: bucket {} is split by the oracle", b.label));
            }
        }
        if reps.len() != c.buckets.len() {
            return Err(format!("{name}: {} oracle classes vs {} buckets", reps.len(), c.buckets.len()));
        }
        // the three listed classes
        let s = regular(&g);
        let listed =
            [s.clone(), sum(&[vec![s.clone()], zeros(&g, 1)].concat()), sum(&[vec![s], zeros(&g, 2)].concat())];
        for i in 0..3 {
            for j in i + 1..3 {
                if !decide(&listed[i], &listed[j], &opts).unwrap().is_not_equivalent() || !sep(&listed[i], &listed[j]) {
                    return Err(format!("{name}: listed classes {i} and {j} not distinct"));
                }
            }
        }
        let trivial: Vec<&str> =
            c.buckets.iter().filter(|b| b.form.classes.is_empty()).map(|b| b.label.as_str()).collect();
        notes.push(format!(
            "{name}: {} oracle classes, pure-trivial extra classes [{}]{}",
            reps.len(),
            trivial.join(", "),
            if trivial.is_empty() { "" } else { " (flagged: beyond the three listed)" }
        ));
    }
    Ok(notes.join("; "))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_actgeo")).args(["check", "--suite", "all"]).output().map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() {
        return Err(format!("check exited with {}: {}", a.status, String::from_utf8_lossy(&a.stderr)));
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return Err("reports differ between runs".into());
    }
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("galois laws on full congruence enumeration", galois_laws),
        ("closed congruences certified, non-closed rejected", subdirect_certificates),
        ("set stability and the arity-3 witness", set_stability),
        ("two classes over the trivial group", set_classes),
        ("coset equivalence iff conjugate (S3, Z4)", cyclic_conjugacy),
        ("zero signature separations (Z2, Z3)", zero_signature),
        ("collapse soundness at the oracle (S3)", collapse_soundness),
        ("Z4 coset acts pairwise inequivalent", z4_cosets),
        ("prime-order class probe (Z2, Z3)", prime_order_probe),
        ("check --suite all is byte-deterministic", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {:>2}: {name} ({secs:.2}s) {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({secs:.2}s) {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
