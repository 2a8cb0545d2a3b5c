//! Integer linear expressions over named parameters, with a small parser.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::Error;

/// `sum_v coeffs[v] * v + constant`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinExpr {
    pub coeffs: BTreeMap<String, i64>,
    pub constant: i64,
}

pub type Assignment = BTreeMap<String, i64>;

impl LinExpr {
    pub fn constant(c: i64) -> LinExpr {
        LinExpr {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(name: &str) -> LinExpr {
        let mut e = LinExpr::default();
        e.coeffs.insert(name.to_string(), 1);
        e
    }

    pub fn scale(&self, k: i64) -> LinExpr {
        let mut out = LinExpr::constant(self.constant * k);
        if k != 0 {
            for (v, c) in &self.coeffs {
                out.coeffs.insert(v.clone(), c * k);
            }
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(|s| s.as_str())
    }

    pub fn coeff(&self, v: &str) -> i64 {
        self.coeffs.get(v).copied().unwrap_or(0)
    }

    /// Value under `asg`; `None` when a variable is unassigned.
    pub fn eval(&self, asg: &Assignment) -> Option<i64> {
        let mut s = self.constant;
        for (v, c) in &self.coeffs {
            s += c * asg.get(v)?;
        }
        Some(s)
    }

    /// Substitutes the assigned variables and keeps the rest symbolic.
    pub fn partial_eval(&self, asg: &Assignment) -> LinExpr {
        let mut out = LinExpr::constant(self.constant);
        for (v, c) in &self.coeffs {
            match asg.get(v) {
                Some(x) => out.constant += c * x,
                None => {
                    out.coeffs.insert(v.clone(), *c);
                }
            }
        }
        out
    }

    /// Applies `f` to every variable name.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> LinExpr {
        let mut out = LinExpr::constant(self.constant);
        for (v, c) in &self.coeffs {
            *out.coeffs.entry(f(v)).or_insert(0) += c;
        }
        out.coeffs.retain(|_, c| *c != 0);
        out
    }

    fn add_coeff(&mut self, v: &str, c: i64) {
        let e = self.coeffs.entry(v.to_string()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(v);
        }
    }
}

impl Add for LinExpr {
    type Output = LinExpr;
    fn add(mut self, o: LinExpr) -> LinExpr {
        self.constant += o.constant;
        for (v, c) in &o.coeffs {
            self.add_coeff(v, *c);
        }
        self
    }
}

impl Sub for LinExpr {
    type Output = LinExpr;
    fn sub(self, o: LinExpr) -> LinExpr {
        self + o.scale(-1)
    }
}

impl Neg for LinExpr {
    type Output = LinExpr;
    fn neg(self) -> LinExpr {
        self.scale(-1)
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &c) in &self.coeffs {
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            f.write_str(v)?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant > 0 {
            write!(f, "+{}", self.constant)
        } else if self.constant < 0 {
            write!(f, "{}", self.constant)
        } else {
            Ok(())
        }
    }
}

/// Character cursor shared by the small parsers in this crate.
pub(crate) struct Cursor<'s> {
    pub src: &'s str,
    chars: Vec<char>,
    pub pos: usize,
}

impl<'s> Cursor<'s> {
    pub fn new(src: &'s str) -> Self {
        let chars = src
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        Cursor { src, chars, pos: 0 }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub fn err(&self, reason: &str) -> Error {
        Error::parse(
            self.src,
            alloc::format!("{} at offset {}", reason, self.pos),
        )
    }

    pub fn number(&mut self) -> Option<i64> {
        let start = self.pos;
        let mut n: i64 = 0;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            n = n * 10 + c.to_digit(10).unwrap() as i64;
            self.pos += 1;
        }
        (self.pos > start).then_some(n)
    }

    /// A parameter name: one lowercase letter, optionally followed by primes.
    pub fn param(&mut self) -> Option<String> {
        let c = self.peek().filter(|c| c.is_ascii_lowercase())?;
        self.pos += 1;
        let mut s = String::new();
        s.push(c);
        while self.eat('\'') {
            s.push('\'');
        }
        Some(s)
    }

    /// `[sign] atom ((+|-) atom)*` with atoms `n`, `v`, `nv`.
    pub fn linear(&mut self) -> Result<LinExpr, Error> {
        let mut out = LinExpr::default();
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                break;
            };
            let n = self.number();
            match self.param() {
                Some(v) => out.add_coeff(&v, sign * n.unwrap_or(1)),
                None => match n {
                    Some(n) => out.constant += sign * n,
                    None => return Err(self.err("expected number or parameter")),
                },
            }
            first = false;
        }
        Ok(out)
    }
}

/// Parses `a+1`, `-2`, `b'-c+3` and similar.
pub fn parse_linear(s: &str) -> Result<LinExpr, Error> {
    let mut c = Cursor::new(s);
    let e = c.linear()?;
    if !c.at_end() {
        return Err(c.err("trailing input"));
    }
    Ok(e)
}
