//! Exceptional-pair tables over one-member families such as `aH + D`.
//!
//! Cell `(row R, column C)` holds the parameter values for which `(R, C)` is an
//! exceptional pair, i.e. `R - C` is cohomologically zero. Column parameters are
//! primed when the row has parameters of its own.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::cohomology::{Coord, CzClassification};
use crate::divisor::Divisor;
use crate::error::Error;
use crate::linear::{parse_linear, Assignment, LinExpr};
use crate::template::AffineDivisor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub label: String,
    pub member: AffineDivisor,
}

/// Disjunction of conjunctions of linear equations `e = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Constraint {
    Always,
    Never,
    AnyOf(Vec<Vec<LinExpr>>),
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `Err(())` if unsatisfiable over the integers, `Ok(None)` if trivially true.
fn normalize_eq(e: &LinExpr) -> Result<Option<LinExpr>, ()> {
    if e.is_constant() {
        return if e.constant == 0 { Ok(None) } else { Err(()) };
    }
    let g = e.coeffs.values().fold(0, |g, &c| gcd(g, c));
    if e.constant % g != 0 {
        return Err(());
    }
    let lead = *e.coeffs.values().next().unwrap();
    let s = if lead < 0 { -1 } else { 1 };
    let mut out = LinExpr::constant(e.constant / g * s);
    for (v, c) in &e.coeffs {
        out.coeffs.insert(v.clone(), c / g * s);
    }
    Ok(Some(out))
}

/// Canonical conjunction; `None` if unsatisfiable. Single-variable equations
/// are solved and substituted into the others.
fn normalize_conj(eqs: &[LinExpr]) -> Option<Vec<LinExpr>> {
    let mut pending: Vec<LinExpr> = eqs.to_vec();
    let mut fixed = Assignment::new();
    loop {
        let mut rest = Vec::new();
        let mut progressed = false;
        for e in &pending {
            match normalize_eq(&e.partial_eval(&fixed)).ok()? {
                None => {}
                Some(n) if n.coeffs.len() == 1 => {
                    let (v, &k) = n.coeffs.iter().next().unwrap();
                    if n.constant % k != 0 {
                        return None;
                    }
                    fixed.insert(v.clone(), -n.constant / k);
                    progressed = true;
                }
                Some(n) => rest.push(n),
            }
        }
        pending = rest;
        if !progressed {
            break;
        }
    }
    let mut out: Vec<LinExpr> = pending;
    for (v, x) in fixed {
        out.push(LinExpr::var(&v) - LinExpr::constant(x));
    }
    out.sort();
    out.dedup();
    Some(out)
}

impl Constraint {
    /// Canonical form of `OR_k AND_l eqs[k][l] = 0`.
    pub fn any_of(alternatives: Vec<Vec<LinExpr>>) -> Constraint {
        let mut alts: Vec<Vec<LinExpr>> = alternatives
            .iter()
            .filter_map(|a| normalize_conj(a))
            .collect();
        if alts.iter().any(|a| a.is_empty()) {
            return Constraint::Always;
        }
        alts.sort();
        alts.dedup();
        // drop alternatives implied by a weaker one: X or (X and Y) = X
        let keep: Vec<Vec<LinExpr>> = alts
            .iter()
            .filter(|a| {
                !alts
                    .iter()
                    .any(|b| b != *a && b.len() < a.len() && b.iter().all(|e| a.contains(e)))
            })
            .cloned()
            .collect();
        if keep.is_empty() {
            Constraint::Never
        } else {
            Constraint::AnyOf(keep)
        }
    }

    pub fn eval(&self, asg: &Assignment) -> Option<bool> {
        match self {
            Constraint::Always => Some(true),
            Constraint::Never => Some(false),
            Constraint::AnyOf(alts) => {
                for a in alts {
                    let mut all = true;
                    for e in a {
                        if e.eval(asg)? != 0 {
                            all = false;
                        }
                    }
                    if all {
                        return Some(true);
                    }
                }
                Some(false)
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        match self {
            Constraint::AnyOf(alts) => alts
                .iter()
                .flatten()
                .flat_map(|e| e.vars().map(|s| s.to_string()))
                .collect(),
            _ => BTreeSet::new(),
        }
    }
}

/// Writes `e = 0` as `v=rhs`, pivoting on a unit-coefficient variable,
/// primed ones first.
fn solve_for(e: &LinExpr) -> (String, LinExpr) {
    let pivot = e
        .coeffs
        .iter()
        .filter(|(_, c)| c.abs() == 1)
        .max_by_key(|(v, _)| (v.ends_with('\''), core::cmp::Reverse((*v).clone())))
        .map(|(v, _)| v.clone());
    match pivot {
        Some(v) => {
            let k = e.coeff(&v);
            let mut rest = e.clone();
            rest.coeffs.remove(&v);
            (v, rest.scale(-k))
        }
        None => (e.to_string(), LinExpr::constant(0)),
    }
}

/// Paper-style rendering: `a'=a+1, a+2`, `a=-1,0 or b'=2`, a check mark, or empty.
impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Always => f.write_str("\u{2713}"),
            Constraint::Never => Ok(()),
            Constraint::AnyOf(alts) => {
                let mut groups: Vec<(String, Vec<(i64, String)>)> = Vec::new();
                for a in alts {
                    let (lhs, rhs) = if a.len() == 1 {
                        let (v, r) = solve_for(&a[0]);
                        (v, (r.constant, r.to_string()))
                    } else {
                        let parts: Vec<String> = a
                            .iter()
                            .map(|e| {
                                let (v, r) = solve_for(e);
                                alloc::format!("{}={}", v, r)
                            })
                            .collect();
                        (parts.join(" and "), (0, String::new()))
                    };
                    match groups.iter_mut().find(|g| g.0 == lhs && !rhs.1.is_empty()) {
                        Some(g) => g.1.push(rhs),
                        None => groups.push((lhs, alloc::vec![rhs])),
                    }
                }
                for (i, (lhs, rhs)) in groups.iter_mut().enumerate() {
                    if i > 0 {
                        f.write_str(" or ")?;
                    }
                    if rhs.len() == 1 && rhs[0].1.is_empty() {
                        f.write_str(lhs)?;
                    } else {
                        rhs.sort();
                        let vals: Vec<&str> = rhs.iter().map(|r| r.1.as_str()).collect();
                        write!(f, "{}={}", lhs, vals.join(", "))?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Parses a table cell: empty, a check mark, or `v=e1, e2 or w=e3`.
pub fn parse_cell(s: &str) -> Result<Constraint, Error> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Constraint::Never);
    }
    if t == "\u{2713}" || t == "\\checkmark" || t == "ok" {
        return Ok(Constraint::Always);
    }
    let mut alts = Vec::new();
    for clause in t.split(" or ") {
        let (lhs, rhs) = clause
            .split_once('=')
            .ok_or_else(|| Error::parse(s, "expected '='"))?;
        let lhs = parse_linear(lhs)?;
        for value in rhs.split(',') {
            alts.push(alloc::vec![lhs.clone() - parse_linear(value)?]);
        }
    }
    Ok(Constraint::any_of(alts))
}

pub fn prime(v: &str) -> String {
    alloc::format!("{}'", v)
}

/// Column family with parameters primed when the row has parameters.
pub fn column_member(row: &Family, col: &Family) -> AffineDivisor {
    if row.member.params().is_empty() {
        col.member.clone()
    } else {
        col.member.rename(prime)
    }
}

/// Constraint for the ordered pair `(row, col)` given the CZ locus as lines plus points.
pub fn cell(row: &Family, col: &Family, cz: &CzClassification) -> Constraint {
    let c = column_member(row, col);
    let dh = row.member.h.clone() - c.h;
    let dd = row.member.d.clone() - c.d;
    let mut alts = Vec::new();
    for l in &cz.lines {
        let e = match l.coord {
            Coord::A => dh.clone(),
            Coord::B => dd.clone(),
        };
        alts.push(alloc::vec![e - LinExpr::constant(l.value)]);
    }
    for p in &cz.sporadic {
        alts.push(alloc::vec![
            dh.clone() - LinExpr::constant(p.a),
            dd.clone() - LinExpr::constant(p.b)
        ]);
    }
    Constraint::any_of(alts)
}

/// Full table, `out[i][j]` for row `families[i]`, column `families[j]`.
pub fn pair_table(families: &[Family], cz: &CzClassification) -> Vec<Vec<Constraint>> {
    families
        .iter()
        .map(|r| families.iter().map(|c| cell(r, c, cz)).collect())
        .collect()
}

/// The difference `row - col` at a grounding of all row and (primed) column parameters.
pub fn cell_difference(row: &Family, col: &Family, asg: &Assignment) -> Option<Divisor> {
    let c = column_member(row, col);
    Some(row.member.eval(asg)? - c.eval(asg)?)
}

/// Variables a cell depends on: row parameters plus (primed) column parameters.
pub fn cell_vars(row: &Family, col: &Family) -> Vec<String> {
    let mut v: BTreeSet<String> = row.member.params();
    v.extend(column_member(row, col).params());
    v.into_iter().collect()
}

/// Every grounding of `vars` in `[lo, hi]` where the two constraints disagree.
pub fn sampled_disagreements(
    a: &Constraint,
    b: &Constraint,
    vars: &[String],
    lo: i64,
    hi: i64,
) -> Vec<Assignment> {
    let mut out = Vec::new();
    let mut asg = Assignment::new();
    fn go(
        k: usize,
        vars: &[String],
        lo: i64,
        hi: i64,
        asg: &mut Assignment,
        a: &Constraint,
        b: &Constraint,
        out: &mut Vec<Assignment>,
    ) {
        if k == vars.len() {
            if a.eval(asg) != b.eval(asg) {
                out.push(asg.clone());
            }
            return;
        }
        for x in lo..=hi {
            asg.insert(vars[k].clone(), x);
            go(k + 1, vars, lo, hi, asg, a, b, out);
        }
    }
    go(0, vars, lo, hi, &mut asg, a, b, &mut out);
    out
}
