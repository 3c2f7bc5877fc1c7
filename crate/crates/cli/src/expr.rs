//! Act builder expressions.
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := atom (('^' | '*') INT)*
//! atom  := 'S' | 'z' | 'coset' '(' hspec ')' | 'file' '(' PATH ')' | '(' expr ')'
//! hspec := '[' INT (',' INT)* ']' | LABEL | '#' INT
//! ```
//!
//! `+` is the coproduct, `^ n` the n-th power, `* n` the n-fold copower.
//! Subgroups are given by member indices, by a label from `subgroups`
//! (`c2a`), or by conjugacy class index (`#1`, the class's least subgroup).
//! Whitespace between tokens is ignored.

use std::fmt;
use std::path::PathBuf;

use actgeo_core::act::coproduct;
use actgeo_core::{Act, Limits, Subgroup};

use crate::error::{CliError, Result};
use crate::input::{labelled_subgroups, load_act, GroupInput};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupRef {
    Members(Vec<usize>),
    Label(String),
    Class(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActExpr {
    Regular,
    Zero,
    Coset(SubgroupRef),
    File(PathBuf),
    Sum(Vec<ActExpr>),
    Power(Box<ActExpr>, usize),
    Copower(Box<ActExpr>, usize),
}

impl fmt::Display for SubgroupRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupRef::Members(m) => {
                let items: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", items.join(","))
            }
            SubgroupRef::Label(l) => f.write_str(l),
            SubgroupRef::Class(c) => write!(f, "#{c}"),
        }
    }
}

impl fmt::Display for ActExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActExpr::Regular => f.write_str("S"),
            ActExpr::Zero => f.write_str("z"),
            ActExpr::Coset(h) => write!(f, "coset({h})"),
            ActExpr::File(p) => write!(f, "file({})", p.display()),
            ActExpr::Sum(parts) => {
                let items: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                f.write_str(&items.join(" + "))
            }
            ActExpr::Power(e, n) => write!(f, "{} ^ {n}", Paren(e)),
            ActExpr::Copower(e, n) => write!(f, "{} * {n}", Paren(e)),
        }
    }
}

struct Paren<'a>(&'a ActExpr);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            ActExpr::Sum(_) => write!(f, "({})", self.0),
            e => write!(f, "{e}"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(CliError::Expr { expr: self.src.to_string(), position: at + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(self.pos, format!("expected '{want}', found '{c}'")),
            None => self.error(self.pos, format!("expected '{want}', found end of input")),
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.word();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return self.error(start, "expected a non-negative integer");
        }
        match digits.parse() {
            Ok(n) => Ok(n),
            Err(_) => self.error(start, "integer out of range"),
        }
    }

    fn expr(&mut self) -> Result<ActExpr> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { ActExpr::Sum(parts) })
    }

    fn term(&mut self) -> Result<ActExpr> {
        let mut e = self.atom()?;
        while let Some(op @ ('^' | '*')) = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let n = self.int()?;
            if n == 0 {
                return self.error(at, "exponent must be at least 1");
            }
            e = if op == '^' { ActExpr::Power(Box::new(e), n) } else { ActExpr::Copower(Box::new(e), n) };
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<ActExpr> {
        let start = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                return Ok(e);
            }
            Some(_) => self.pos,
            None => return self.error(self.pos, "unexpected end of input"),
        };
        match self.word().as_str() {
            "S" => Ok(ActExpr::Regular),
            "z" => Ok(ActExpr::Zero),
            "coset" => {
                self.expect('(')?;
                let h = self.subgroup_ref()?;
                self.expect(')')?;
                Ok(ActExpr::Coset(h))
            }
            "file" => {
                self.expect('(')?;
                let open = self.pos;
                let Some(len) = self.chars[open..].iter().position(|&c| c == ')') else {
                    return self.error(open, "unterminated file(...)");
                };
                let raw: String = self.chars[open..open + len].iter().collect();
                self.pos = open + len + 1;
                let path = raw.trim().trim_matches('"');
                if path.is_empty() {
                    return self.error(open, "empty file path");
                }
                Ok(ActExpr::File(PathBuf::from(path)))
            }
            "" => {
                let c = self.chars[start];
                self.error(start, format!("unexpected '{c}'"))
            }
            w => self.error(start, format!("unknown act '{w}' (expected S, z, coset(...), file(...))")),
        }
    }

    fn subgroup_ref(&mut self) -> Result<SubgroupRef> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut members = vec![self.int()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    members.push(self.int()?);
                }
                self.expect(']')?;
                Ok(SubgroupRef::Members(members))
            }
            Some('#') => {
                self.pos += 1;
                Ok(SubgroupRef::Class(self.int()?))
            }
            _ => {
                let at = self.pos;
                let label = self.word();
                if label.is_empty() {
                    return self.error(at, "expected a member list, subgroup label or #class");
                }
                Ok(SubgroupRef::Label(label))
            }
        }
    }
}

pub fn parse(src: &str) -> Result<ActExpr> {
    let mut p = Parser { src, chars: src.chars().collect(), pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.error(p.pos, format!("unexpected '{c}' after expression"));
    }
    Ok(e)
}

fn resolve(group: &GroupInput, h: &SubgroupRef) -> Result<Subgroup> {
    let g = &group.group;
    let unknown = |message: String| CliError::Parse { origin: h.to_string(), line: None, column: None, message };
    match h {
        SubgroupRef::Members(m) => Ok(g.subgroup(m.iter().copied())?),
        SubgroupRef::Label(l) => labelled_subgroups(g)
            .into_iter()
            .find(|(label, _)| label == l)
            .map(|(_, s)| s)
            .ok_or_else(|| unknown(format!("no subgroup labelled {l}; see `actgeo subgroups`"))),
        SubgroupRef::Class(c) => {
            let table = g.subgroup_conjugacy_classes();
            if *c >= table.num_classes() {
                return Err(unknown(format!("class {c} out of range (group has {})", table.num_classes())));
            }
            Ok(table.representative(*c).clone())
        }
    }
}

impl ActExpr {
    pub fn eval(&self, group: &GroupInput, limits: &Limits) -> Result<Act> {
        let m = group.group.monoid();
        Ok(match self {
            ActExpr::Regular => Act::regular(m.clone()),
            ActExpr::Zero => Act::zero(m.clone()),
            ActExpr::Coset(h) => Act::coset(&group.group, &resolve(group, h)?),
            ActExpr::File(p) => load_act(&group.group, p)?,
            ActExpr::Sum(parts) => {
                let acts = parts.iter().map(|p| p.eval(group, limits)).collect::<Result<Vec<_>>>()?;
                coproduct(&acts)?.0
            }
            ActExpr::Power(e, n) => e.eval(group, limits)?.power(*n, limits)?,
            ActExpr::Copower(e, n) => {
                let a = e.eval(group, limits)?;
                limits_check(limits, a.size() as u128 * *n as u128)?;
                a.copower(*n)
            }
        })
    }
}

fn limits_check(limits: &Limits, size: u128) -> Result<()> {
    if size > limits.size_cap as u128 {
        return Err(actgeo_core::Error::SizeBoundExceeded { size, cap: limits.size_cap }.into());
    }
    Ok(())
}

/// Parses and evaluates in one step.
pub fn build(group: &GroupInput, src: &str, limits: &Limits) -> Result<Act> {
    parse(src)?.eval(group, limits)
}
