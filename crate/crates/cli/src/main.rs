use std::path::{Path, PathBuf};
use std::process::ExitCode;

use actgeo_cli::checks::{form_expr, run_suite, Status};
use actgeo_cli::error::{CliError, Result};
use actgeo_cli::expr;
use actgeo_cli::input::{builtin_groups, labelled_subgroups, load_group, subgroup_label, GroupInput};
use actgeo_core::equivalence::{canonical_form_traced, classify, decide, DecideOptions};
use actgeo_core::galois::{is_geometrically_stable, AffineSpace};
use actgeo_core::{Limits, Verdict};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

/// Galois geometry of finite S-acts over finite groups.
///
/// Acts are written as expressions: `S` (regular act), `z` (zero),
/// `coset(H)` with H a member list `[0,3]`, a label such as `c2a` from
/// `subgroups`, or a class index `#1`; `file(act.json)`; `a + b`
/// (coproduct), `a ^ n` (power), `a * n` (copower) and parentheses.
#[derive(Parser)]
#[command(name = "actgeo", version)]
struct Cli {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a group file, and optionally an act over it
    Validate { group: PathBuf, act: Option<String> },
    /// List subgroups with labels, conjugacy classes and normality
    Subgroups { group: PathBuf },
    /// Orbit decomposition of an act
    Decompose { group: PathBuf, act: String },
    /// Canonical form of an act and the collapses applied
    Canonical { group: PathBuf, act: String },
    /// Decide geometric equivalence (exit 0 equivalent, 1 not, 2 unknown)
    Equiv {
        group: PathBuf,
        left: String,
        right: String,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
    /// Closed congruences on the free act of the given arity
    Lattice {
        group: PathBuf,
        target: String,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Write the Hasse diagram as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also list the algebraic varieties
        #[arg(long)]
        varieties: bool,
    },
    /// Group all acts up to a size by canonical form and decide every pair
    Classify {
        group: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
    /// Search for a geometric-stability counterexample
    Stability {
        group: PathBuf,
        target: String,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
    /// Run the verification suite (built-in groups when no group is given)
    Check {
        group: Option<PathBuf>,
        /// Check name, or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn element_names(g: &GroupInput, members: &[usize]) -> String {
    let names: Vec<&str> = members.iter().map(|&m| g.names[m].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

fn run(cli: Cli) -> Result<u8> {
    let limits = Limits::from_env();
    let json_out = cli.json;
    match cli.command {
        Command::Validate { group, act } => {
            let g = load_group(&group)?;
            let table = g.group.subgroup_conjugacy_classes();
            let act = act.map(|src| expr::build(&g, &src, &limits)).transpose()?;
            if json_out {
                let act = act.map(|a| json!({ "size": a.size(), "orbits": a.orbit_decomposition().map(|d| d.orbits.len()).unwrap_or(0) }));
                print_json(&json!({
                    "order": g.group.order(),
                    "abelian": g.group.is_abelian(),
                    "subgroups": table.subgroups().len(),
                    "classes": table.num_classes(),
                    "act": act,
                }));
            } else {
                println!(
                    "group: order {}, {}, {} subgroups in {} conjugacy classes",
                    g.group.order(),
                    if g.group.is_abelian() { "abelian" } else { "non-abelian" },
                    table.subgroups().len(),
                    table.num_classes()
                );
                if let Some(a) = act {
                    let d = a.orbit_decomposition()?;
                    println!("act: {} elements, {} orbits, {} zeros", a.size(), d.orbits.len(), d.zero_orbits);
                }
            }
            Ok(0)
        }
        Command::Subgroups { group } => {
            let g = load_group(&group)?;
            let table = g.group.subgroup_conjugacy_classes();
            let rows: Vec<_> = labelled_subgroups(&g.group)
                .into_iter()
                .map(|(label, h)| {
                    let class = table.class_of(&h).expect("enumerated subgroup");
                    (label, class, table.is_normal(class), h)
                })
                .collect();
            if json_out {
                let out: Vec<_> = rows
                    .iter()
                    .map(|(label, class, normal, h)| {
                        json!({ "label": label, "order": h.order(), "class": class, "normal": normal, "members": h.members() })
                    })
                    .collect();
                print_json(&out);
            } else {
                println!("{:<6} {:>5} {:>5}  {:<6} members", "label", "order", "class", "normal");
                for (label, class, normal, h) in &rows {
                    let normal = if *normal { "yes" } else { "no" };
                    println!("{label:<6} {:>5} {class:>5}  {normal:<6} {}", h.order(), element_names(&g, h.members()));
                }
            }
            Ok(0)
        }
        Command::Decompose { group, act } => {
            let g = load_group(&group)?;
            let a = expr::build(&g, &act, &limits)?;
            let d = a.orbit_decomposition()?;
            let orbits: Vec<_> = d
                .orbits
                .iter()
                .map(|o| {
                    json!({
                        "elements": o.elements,
                        "representative": o.representative,
                        "stabilizer": subgroup_label(&g.group, &o.stabilizer),
                        "class": o.class_id,
                    })
                })
                .collect();
            if json_out {
                print_json(&json!({ "size": a.size(), "orbits": orbits, "zero_orbits": d.zero_orbits }));
            } else {
                println!("{} elements, {} orbits, {} zeros", a.size(), d.orbits.len(), d.zero_orbits);
                for (i, o) in d.orbits.iter().enumerate() {
                    println!(
                        "orbit {i}: {:?} rep {} stabilizer {} {} class {}",
                        o.elements,
                        o.representative,
                        subgroup_label(&g.group, &o.stabilizer),
                        element_names(&g, o.stabilizer.members()),
                        o.class_id
                    );
                }
            }
            Ok(0)
        }
        Command::Canonical { group, act } => {
            let g = load_group(&group)?;
            let a = expr::build(&g, &act, &limits)?;
            let (form, steps) = canonical_form_traced(&a)?;
            if json_out {
                print_json(
                    &json!({ "form": form, "label": form.to_string(), "representative": form_expr(&form), "reductions": steps }),
                );
            } else {
                println!("form: {form}");
                println!("representative: {}", form_expr(&form));
                println!("zero_sig: {}", form.zero_sig);
                for c in &form.classes {
                    let kind = if c.normal { "normal" } else { "non-normal" };
                    println!("class {} (order {}, {kind}): {}", c.class, c.order, c.mult);
                }
                for s in &steps {
                    println!("reduction: {}", serde_json::to_string(s).expect("serializable"));
                }
            }
            Ok(0)
        }
        Command::Equiv { group, left, right, max_arity } => {
            let g = load_group(&group)?;
            let a = expr::build(&g, &left, &limits)?;
            let b = expr::build(&g, &right, &limits)?;
            let v = decide(&a, &b, &DecideOptions { oracle_arity: max_arity, limits })?;
            print_json(&v);
            Ok(match v {
                Verdict::Equivalent { .. } => 0,
                Verdict::NotEquivalent { .. } => 1,
                Verdict::Unknown { .. } => 2,
            })
        }
        Command::Lattice { group, target, arity, dot, varieties } => {
            let g = load_group(&group)?;
            let a = expr::build(&g, &target, &limits)?;
            let space = AffineSpace::new(&a, arity, &limits)?;
            let v = space.variety_lattice();
            let l = v.closed();
            if let Some(path) = &dot {
                write_file(path, &l.to_dot("closed"))?;
            }
            if json_out {
                let mut out = json!({
                    "arity": arity,
                    "carrier": space.carrier(),
                    "target_size": a.size(),
                    "count": l.len(),
                    "members": l.members(),
                    "hasse": l.hasse_edges(),
                });
                if varieties {
                    let vs: Vec<Vec<&Vec<usize>>> = v.members().iter().map(|p| p.iter().collect()).collect();
                    out["varieties"] = json!(vs);
                }
                print_json(&out);
            } else {
                println!(
                    "{} closed congruences on F_{arity} (carrier {}) over a {}-element target",
                    l.len(),
                    space.carrier(),
                    a.size()
                );
                for (i, t) in l.members().iter().enumerate() {
                    if varieties {
                        let pts: Vec<String> = v.members()[i].iter().map(|p| format!("{p:?}")).collect();
                        println!("{i:>4}  {t}  {{{}}}", pts.join(", "));
                    } else {
                        println!("{i:>4}  {t}");
                    }
                }
            }
            Ok(0)
        }
        Command::Classify { group, max_size, max_arity } => {
            let g = load_group(&group)?;
            let c = classify(&g.group, max_size, &DecideOptions { oracle_arity: max_arity, limits })?;
            if json_out {
                print_json(&c);
            } else {
                println!(
                    "{} acts of size <= {max_size} in {} canonical forms (oracle arity {max_arity})",
                    c.acts,
                    c.buckets.len()
                );
                for b in &c.buckets {
                    println!("[{}] {}", b.label, b.members.join(", "));
                }
                let p = &c.pairs;
                println!(
                    "pairs within forms: {} equivalent, {} other; across forms: {} not equivalent, {} equivalent, {} unknown",
                    p.within_equivalent, p.within_other, p.cross_not_equivalent, p.cross_equivalent, p.cross_unknown
                );
                for u in &p.unknown_pairs {
                    println!("unknown: {} vs {}", u.left, u.right);
                }
            }
            Ok(0)
        }
        Command::Stability { group, target, max_arity } => {
            let g = load_group(&group)?;
            let a = expr::build(&g, &target, &limits)?;
            let r = is_geometrically_stable(&a, max_arity, &limits)?;
            if json_out {
                print_json(&r);
            } else {
                match &r.counterexample {
                    None => println!("stable up to arity {max_arity}"),
                    Some(cx) => println!(
                        "not stable at arity {}: T1 = {}, T2 = {}, gamma = {:?}",
                        cx.arity, cx.t1, cx.t2, cx.gamma
                    ),
                }
            }
            Ok(0)
        }
        Command::Check { group, suite, max_arity } => {
            let groups = match group {
                Some(path) => vec![load_group(&path)?],
                None => builtin_groups(),
            };
            let report = run_suite(&groups, &suite, max_arity, &limits)?;
            print_json(&report);
            Ok(if report.status == Status::Pass { 0 } else { 1 })
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Write { path: path.to_path_buf(), source })
}
