//! Group and act files.
//!
//! Group file: `{"order": n, "table": [[...], ...], "names": ["e", ...]}` with
//! `table[s][t] = s·t`; `names` is optional. Act file: `{"size": m, "action":
//! [[...], ...]}` with `action[s][a] = s·a`, read against a group file.

use std::path::Path;

use actgeo_core::{Act, FiniteGroup, Subgroup};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone)]
pub struct GroupInput {
    /// Short name used in reports (file stem or built-in name).
    pub name: String,
    pub group: FiniteGroup,
    pub names: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    order: usize,
    table: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActFile {
    size: usize,
    action: Vec<Vec<usize>>,
}

fn json_error(origin: &str, e: serde_json::Error) -> CliError {
    CliError::Parse {
        origin: origin.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
        message: e.to_string(),
    }
}

fn invalid(origin: &str, message: String) -> CliError {
    CliError::Parse { origin: origin.to_string(), line: None, column: None, message }
}

fn check_shape(origin: &str, what: &str, rows: &[Vec<usize>], nrows: usize, ncols: usize) -> Result<()> {
    if rows.len() != nrows {
        return Err(invalid(origin, format!("{what} has {} rows, expected {nrows}", rows.len())));
    }
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != ncols) {
        return Err(invalid(origin, format!("{what} row {r} has length {}, expected {ncols}", row.len())));
    }
    Ok(())
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn parse_group(text: &str, origin: &str) -> Result<GroupInput> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| json_error(origin, e))?;
    if file.order == 0 {
        return Err(invalid(origin, "order must be positive".into()));
    }
    check_shape(origin, "table", &file.table, file.order, file.order)?;
    let names = match file.names {
        Some(names) if names.len() != file.order => {
            return Err(invalid(origin, format!("{} names for order {}", names.len(), file.order)))
        }
        Some(names) => names,
        None => (0..file.order).map(|i| i.to_string()).collect(),
    };
    let group = FiniteGroup::from_table(&file.table)?;
    let name = Path::new(origin).file_stem().map_or(origin.to_string(), |s| s.to_string_lossy().into_owned());
    Ok(GroupInput { name, group, names })
}

pub fn load_group(path: &Path) -> Result<GroupInput> {
    parse_group(&read_file(path)?, &path.display().to_string())
}

pub fn parse_act(group: &FiniteGroup, text: &str, origin: &str) -> Result<Act> {
    let file: ActFile = serde_json::from_str(text).map_err(|e| json_error(origin, e))?;
    check_shape(origin, "action", &file.action, group.order(), file.size)?;
    Ok(Act::new(group.monoid().clone(), &file.action)?)
}

pub fn load_act(group: &FiniteGroup, path: &Path) -> Result<Act> {
    parse_act(group, &read_file(path)?, &path.display().to_string())
}

/// `a, b, ..., z, aa, ab, ...`
fn letters(mut i: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Subgroups with labels `c{order}{letter}`, lettered within each order in
/// enumeration order.
pub fn labelled_subgroups(group: &FiniteGroup) -> Vec<(String, Subgroup)> {
    let mut out: Vec<(String, Subgroup)> = Vec::new();
    let mut last_order = 0;
    let mut count = 0;
    for h in group.subgroup_conjugacy_classes().subgroups() {
        if h.order() != last_order {
            last_order = h.order();
            count = 0;
        }
        out.push((format!("c{}{}", h.order(), letters(count)), h.clone()));
        count += 1;
    }
    out
}

pub fn subgroup_label(group: &FiniteGroup, h: &Subgroup) -> String {
    labelled_subgroups(group).into_iter().find(|(_, s)| s == h).map(|(l, _)| l).expect("subgroup of this group")
}

/// Groups used when no group file is given.
pub fn builtin_groups() -> Vec<GroupInput> {
    let named = |name: &str, group: FiniteGroup| GroupInput {
        name: name.to_string(),
        names: (0..group.order()).map(|i| i.to_string()).collect(),
        group,
    };
    vec![
        named("trivial", FiniteGroup::trivial()),
        named("Z2", FiniteGroup::cyclic(2)),
        named("Z3", FiniteGroup::cyclic(3)),
        named("Z4", FiniteGroup::cyclic(4)),
        named("S3", FiniteGroup::symmetric(3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_sequence() {
        let got: Vec<String> = [0, 1, 25, 26, 27, 51, 52].into_iter().map(letters).collect();
        assert_eq!(got, vec!["a", "b", "z", "aa", "ab", "az", "ba"]);
    }

    #[test]
    fn group_file_errors() {
        let err = parse_group(r#"{"order": 2, "table": [[0, 1], [1]]}"#, "g.json").unwrap_err();
        assert!(err.to_string().contains("row 1 has length 1"), "{err}");
        let err = parse_group("{\"order\": 2,\n \"table\": [[0, 1], [1, 0]],,}", "g.json").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: Some(2), .. }), "{err}");
        let err = parse_group(r#"{"order": 2, "table": [[0, 1], [1, 1]]}"#, "g.json").unwrap_err();
        assert!(matches!(err, CliError::Core(_)), "{err}");
        let err = parse_group(r#"{"order": 1, "table": [[0]], "names": ["e", "f"]}"#, "g.json").unwrap_err();
        assert!(err.to_string().contains("2 names"));
    }

    #[test]
    fn s3_labels() {
        let g = FiniteGroup::symmetric(3);
        let labels: Vec<String> = labelled_subgroups(&g).into_iter().map(|(l, _)| l).collect();
        assert_eq!(labels, vec!["c1a", "c2a", "c2b", "c2c", "c3a", "c6a"]);
    }

    #[test]
    fn act_file() {
        let g = FiniteGroup::cyclic(2);
        let a = parse_act(&g, r#"{"size": 3, "action": [[0, 1, 2], [1, 0, 2]]}"#, "a.json").unwrap();
        assert_eq!(a.size(), 3);
        assert!(parse_act(&g, r#"{"size": 3, "action": [[0, 1, 2]]}"#, "a.json").is_err());
        assert!(parse_act(&g, r#"{"size": 2, "action": [[1, 0], [1, 0]]}"#, "a.json").is_err());
    }
}
