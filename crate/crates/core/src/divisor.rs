//! Divisors `aH + bD` and ordered collections of them.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// Integer point `aH + bD` of the Picard lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "[i64; 2]", into = "[i64; 2]"))]
pub struct Divisor {
    pub a: i64,
    pub b: i64,
}

impl Divisor {
    pub const ZERO: Divisor = Divisor { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Divisor { a, b }
    }

    /// True when both coefficients lie in `[-r, r]`.
    pub fn in_box(self, r: i64) -> bool {
        self.a.abs() <= r && self.b.abs() <= r
    }

    pub fn swap(self) -> Self {
        Divisor::new(self.b, self.a)
    }
}

impl From<[i64; 2]> for Divisor {
    fn from(v: [i64; 2]) -> Self {
        Divisor::new(v[0], v[1])
    }
}

impl From<Divisor> for [i64; 2] {
    fn from(d: Divisor) -> Self {
        [d.a, d.b]
    }
}

impl From<(i64, i64)> for Divisor {
    fn from(v: (i64, i64)) -> Self {
        Divisor::new(v.0, v.1)
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(self, o: Divisor) -> Divisor {
        Divisor::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(self, o: Divisor) -> Divisor {
        Divisor::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor::new(-self.a, -self.b)
    }
}

impl AddAssign for Divisor {
    fn add_assign(&mut self, o: Divisor) {
        *self = *self + o;
    }
}

impl SubAssign for Divisor {
    fn sub_assign(&mut self, o: Divisor) {
        *self = *self - o;
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: i64, sym: char, first: bool) -> fmt::Result {
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
    write!(f, "{}", sym)
}

/// Renders in the usual `2H-D` notation, `0` for the zero class.
impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0 && self.b == 0 {
            return f.write_str("0");
        }
        write_term(f, self.a, 'H', true)?;
        write_term(f, self.b, 'D', self.a == 0)
    }
}

/// Ordered list of line bundles `O(D_1), ..., O(D_L)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Collection {
    pub members: Vec<Divisor>,
}

impl Collection {
    pub fn new(members: Vec<Divisor>) -> Self {
        Collection { members }
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Collection::new(pairs.iter().map(|&p| p.into()).collect())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.members.first().is_none_or(|d| *d == Divisor::ZERO)
    }

    /// Tensor by `O(-D_1)` so the first member becomes `O`.
    pub fn normalized(&self) -> Collection {
        match self.members.first() {
            None => self.clone(),
            Some(&first) => self.shifted(-first),
        }
    }

    pub fn shifted(&self, t: Divisor) -> Collection {
        Collection::new(self.members.iter().map(|&d| d + t).collect())
    }

    pub fn in_box(&self, r: i64) -> bool {
        self.members.iter().all(|d| d.in_box(r))
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", d)?;
        }
        f.write_str("}")
    }
}
