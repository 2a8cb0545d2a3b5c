//! Parametric collection types and matching against enumerated collections.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::divisor::{Collection, Divisor};
use crate::error::Error;
use crate::linear::{Assignment, Cursor, LinExpr};

/// `x H + y D` with `x`, `y` linear in integer parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineDivisor {
    pub h: LinExpr,
    pub d: LinExpr,
}

impl AffineDivisor {
    pub fn constant(d: Divisor) -> Self {
        AffineDivisor {
            h: LinExpr::constant(d.a),
            d: LinExpr::constant(d.b),
        }
    }

    pub fn eval(&self, asg: &Assignment) -> Option<Divisor> {
        Some(Divisor::new(self.h.eval(asg)?, self.d.eval(asg)?))
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.h
            .vars()
            .chain(self.d.vars())
            .map(|s| s.to_string())
            .collect()
    }

    pub fn rename(&self, f: impl Fn(&str) -> String + Copy) -> Self {
        AffineDivisor {
            h: self.h.rename(f),
            d: self.d.rename(f),
        }
    }

    /// Constant part and one direction per parameter, in `params` order.
    pub fn to_affine(&self, params: &[String]) -> Vec<[i64; 2]> {
        let mut out = vec![[self.h.constant, self.d.constant]];
        for p in params {
            out.push([self.h.coeff(p), self.d.coeff(p)]);
        }
        out
    }

    pub fn from_affine(rows: &[[i64; 2]], params: &[String]) -> Result<Self, Error> {
        if rows.len() != params.len() + 1 {
            return Err(Error::parse(
                "affine member",
                "row count does not match parameter count",
            ));
        }
        let mut h = LinExpr::constant(rows[0][0]);
        let mut d = LinExpr::constant(rows[0][1]);
        for (p, r) in params.iter().zip(&rows[1..]) {
            h = h + LinExpr::var(p).scale(r[0]);
            d = d + LinExpr::var(p).scale(r[1]);
        }
        Ok(AffineDivisor { h, d })
    }
}

impl core::fmt::Display for AffineDivisor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let coef = |f: &mut core::fmt::Formatter<'_>,
                    e: &LinExpr,
                    sym: &str,
                    first: bool|
         -> core::fmt::Result {
            if e.is_constant() {
                let c = e.constant;
                if c == 0 {
                    return Ok(());
                }
                if c < 0 {
                    f.write_str("-")?;
                } else if !first {
                    f.write_str("+")?;
                }
                if c.abs() != 1 {
                    write!(f, "{}", c.abs())?;
                }
            } else {
                if !first {
                    f.write_str("+")?;
                }
                if e.constant == 0 && e.coeffs.len() == 1 && e.coeffs.values().all(|&c| c == 1) {
                    write!(f, "{}", e)?;
                } else {
                    write!(f, "({})", e)?;
                }
            }
            f.write_str(sym)
        };
        let h_zero = self.h.is_constant() && self.h.constant == 0;
        let d_zero = self.d.is_constant() && self.d.constant == 0;
        if h_zero && d_zero {
            return f.write_str("0");
        }
        coef(f, &self.h, "H", true)?;
        coef(f, &self.d, "D", h_zero)
    }
}

/// Parses one member such as `(a+1)H+2D`, `H-D`, `bH+D` or `H+(a+2)D`.
pub fn parse_member(s: &str) -> Result<AffineDivisor, Error> {
    let mut c = Cursor::new(s);
    if c.at_end() {
        return Err(c.err("empty member"));
    }
    let mut out = AffineDivisor::default();
    let mut first = true;
    while !c.at_end() {
        let sign = if c.eat('-') {
            -1
        } else if c.eat('+') || first {
            1
        } else {
            return Err(c.err("expected + or -"));
        };
        first = false;
        let n = c.number();
        let coef = if c.eat('(') {
            let inner = c.linear()?;
            if !c.eat(')') {
                return Err(c.err("expected )"));
            }
            inner.scale(n.unwrap_or(1))
        } else if let Some(p) = c.param() {
            LinExpr::var(&p).scale(n.unwrap_or(1))
        } else {
            LinExpr::constant(n.unwrap_or(1))
        };
        let coef = coef.scale(sign);
        match c.bump() {
            Some('H') => out.h = out.h + coef,
            Some('D') => out.d = out.d + coef,
            None if n == Some(0) && coef.is_constant() => {}
            _ => return Err(c.err("expected H or D")),
        }
    }
    Ok(out)
}

/// Parses a comma-separated member list; the leading `O` is not part of the string.
pub fn parse_member_list(s: &str) -> Result<Vec<AffineDivisor>, Error> {
    s.split(',').map(parse_member).collect()
}

/// One parametric type: `O` followed by the listed members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionTemplate {
    pub type_id: String,
    pub params: Vec<String>,
    /// Full member list, starting with `O`.
    pub members: Vec<AffineDivisor>,
}

impl CollectionTemplate {
    pub fn new(type_id: &str, listed: Vec<AffineDivisor>) -> Self {
        let mut members = vec![AffineDivisor::constant(Divisor::ZERO)];
        members.extend(listed);
        let params: BTreeSet<String> = members.iter().flat_map(|m| m.params()).collect();
        CollectionTemplate {
            type_id: type_id.to_string(),
            params: params.into_iter().collect(),
            members,
        }
    }

    pub fn parse(type_id: &str, listed: &str) -> Result<Self, Error> {
        Ok(CollectionTemplate::new(type_id, parse_member_list(listed)?))
    }

    pub fn instantiate(&self, asg: &Assignment) -> Option<Collection> {
        self.members
            .iter()
            .map(|m| m.eval(asg))
            .collect::<Option<Vec<_>>>()
            .map(Collection::new)
    }

    /// Range of `p` forced by coordinates that involve `p` alone.
    fn param_range(&self, p: &str, radius: i64) -> (i64, i64) {
        let (mut lo, mut hi) = (i64::MIN, i64::MAX);
        for m in &self.members {
            for e in [&m.h, &m.d] {
                let k = e.coeff(p);
                if k != 0 && e.coeffs.len() == 1 {
                    // |c + k p| <= radius
                    let (a, b) = ((-radius - e.constant), (radius - e.constant));
                    let (a, b) = if k > 0 { (a, b) } else { (-b, -a) };
                    let k = k.abs();
                    lo = lo.max(a.div_euclid(k) + i64::from(a.rem_euclid(k) != 0));
                    hi = hi.min(b.div_euclid(k));
                }
            }
        }
        if lo == i64::MIN || hi == i64::MAX {
            let wide = 4 * radius + 16;
            (lo.max(-wide), hi.min(wide))
        } else {
            (lo, hi)
        }
    }

    /// Every parameter assignment whose instance lies in `[-radius, radius]^2`.
    pub fn instances(&self, radius: i64) -> Vec<(Assignment, Collection)> {
        let ranges: Vec<(i64, i64)> = self
            .params
            .iter()
            .map(|p| self.param_range(p, radius))
            .collect();
        let mut out = Vec::new();
        let mut asg = Assignment::new();
        self.fill(0, &ranges, radius, &mut asg, &mut out);
        out
    }

    fn fill(
        &self,
        k: usize,
        ranges: &[(i64, i64)],
        radius: i64,
        asg: &mut Assignment,
        out: &mut Vec<(Assignment, Collection)>,
    ) {
        if k == self.params.len() {
            if let Some(c) = self.instantiate(asg) {
                if c.in_box(radius) {
                    out.push((asg.clone(), c));
                }
            }
            return;
        }
        let (lo, hi) = ranges[k];
        for x in lo..=hi {
            asg.insert(self.params[k].clone(), x);
            self.fill(k + 1, ranges, radius, asg, out);
        }
        asg.remove(&self.params[k]);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TypeMatch {
    pub type_id: String,
    pub params: Assignment,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MatchedCollection {
    pub collection: Collection,
    pub types: Vec<TypeMatch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MissingInstance {
    pub instance: TypeMatch,
    pub collection: Collection,
}

/// Both directions of the comparison between found collections and templates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MatchReport {
    pub found: usize,
    pub matched: Vec<MatchedCollection>,
    /// Found collections no template instance equals.
    pub unmatched: Vec<Collection>,
    /// In-box template instances that were not found.
    pub missing: Vec<MissingInstance>,
    /// Number of found collections each type accounts for.
    pub per_type: BTreeMap<String, usize>,
}

impl MatchReport {
    pub fn is_clean(&self) -> bool {
        self.unmatched.is_empty() && self.missing.is_empty()
    }

    /// Types with at least one found instance.
    pub fn types_seen(&self) -> BTreeSet<String> {
        self.per_type
            .iter()
            .filter(|(_, &n)| n > 0)
            .map(|(t, _)| t.clone())
            .collect()
    }
}

/// Matches `found` member-wise against every in-box instance of `templates`.
pub fn match_templates(
    found: &[Collection],
    templates: &[CollectionTemplate],
    radius: i64,
) -> MatchReport {
    let mut index: BTreeMap<Collection, Vec<TypeMatch>> = BTreeMap::new();
    let mut per_type = BTreeMap::new();
    for t in templates {
        per_type.insert(t.type_id.clone(), 0usize);
        for (asg, c) in t.instances(radius) {
            index.entry(c).or_default().push(TypeMatch {
                type_id: t.type_id.clone(),
                params: asg,
            });
        }
    }
    let found_set: BTreeSet<&Collection> = found.iter().collect();
    let mut report = MatchReport {
        found: found_set.len(),
        per_type,
        ..Default::default()
    };
    for c in &found_set {
        match index.get(*c) {
            Some(types) => {
                for t in types {
                    *report.per_type.get_mut(&t.type_id).unwrap() += 1;
                }
                report.matched.push(MatchedCollection {
                    collection: (*c).clone(),
                    types: types.clone(),
                });
            }
            None => report.unmatched.push((*c).clone()),
        }
    }
    for (c, types) in &index {
        if !found_set.contains(c) {
            for t in types {
                report.missing.push(MissingInstance {
                    instance: t.clone(),
                    collection: c.clone(),
                });
            }
        }
    }
    report
}

/// Sorted multiset of forward differences `D_j - D_i`, `j < i`; a
/// template-free fingerprint for grouping raw findings.
pub fn difference_signature(c: &Collection) -> Vec<Divisor> {
    let m = &c.members;
    let mut out = Vec::new();
    for i in 0..m.len() {
        for j in 0..i {
            out.push(m[j] - m[i]);
        }
    }
    out.sort();
    out
}

/// Groups collections by [`difference_signature`]; returns group sizes.
pub fn signature_groups(found: &[Collection]) -> BTreeMap<Vec<Divisor>, usize> {
    let mut g = BTreeMap::new();
    for c in found {
        *g.entry(difference_signature(c)).or_insert(0) += 1;
    }
    g
}
