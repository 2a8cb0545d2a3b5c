//! Exact line-bundle cohomology.
//!
//! Bundles `P(E) -> P^n` of rank `r+1`: for `b >= 0` push forward to
//! `Sym^b E` and sum `P^n` cohomology over its weights; for `-r <= b <= -1`
//! everything vanishes; for `b <= -(r+1)` use Serre duality on `X`, which lands
//! back in `b >= 0`. Products use Kunneth.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::divisor::Divisor;
use crate::error::Error;
use crate::variety::{Realization, VarietyDescriptor};

/// `C(n, k)` with checked arithmetic; every intermediate value is itself a binomial.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128).expect("binomial overflow") / (i as u128 + 1);
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// `h^i(P^n, O(k))` for `i = 0..=n`.
pub fn projective_space_cohomology(n: u32, k: i64) -> Vec<u64> {
    let mut h = vec![0u64; n as usize + 1];
    if k >= 0 {
        h[0] = binomial(n as u64 + k as u64, n as u64);
    }
    if k < -(n as i64) {
        h[n as usize] = binomial((-k - 1) as u64, n as u64);
    }
    h
}

/// Multiplicity of each weight of `Sym^b(O(e_0) + ... + O(e_r))`.
pub fn weight_histogram(twists: &[i64], b: u64) -> BTreeMap<i64, u64> {
    // layer[k] = weights of degree-k monomials in the twists seen so far
    let mut layer: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::new(); b as usize + 1];
    layer[0].insert(0, 1);
    for &e in twists {
        for k in 1..=b as usize {
            let prev: Vec<(i64, u64)> = layer[k - 1].iter().map(|(&w, &c)| (w, c)).collect();
            for (w, c) in prev {
                *layer[k].entry(w + e).or_insert(0) += c;
            }
        }
    }
    layer.pop().unwrap_or_default()
}

/// Base twists of `Sym^b(O(e_0) + ... + O(e_r))` as a sorted multiset.
pub fn pushforward_weights(v: &VarietyDescriptor, b: i64) -> Result<Vec<i64>, Error> {
    let Realization::ProjectiveBundle { twists, .. } = &v.realization else {
        return Err(Error::NotABundle);
    };
    if b < 0 {
        return Err(Error::NoPushforwardWeights(b));
    }
    let mut out = Vec::new();
    for (w, c) in weight_histogram(twists, b as u64) {
        out.extend(core::iter::repeat_n(w, c as usize));
    }
    Ok(out)
}

fn bundle_cohomology(n: u32, twists: &[i64], k: Divisor, d: Divisor) -> Vec<u64> {
    let r = twists.len() as i64 - 1;
    let dim = n as usize + r as usize;
    if d.b >= 0 {
        let mut h = vec![0u64; dim + 1];
        for (w, c) in weight_histogram(twists, d.b as u64) {
            for (i, x) in projective_space_cohomology(n, d.a + w)
                .into_iter()
                .enumerate()
            {
                h[i] += c * x;
            }
        }
        h
    } else if d.b >= -r {
        vec![0; dim + 1]
    } else {
        let mut h = bundle_cohomology(n, twists, k, k - d);
        h.reverse();
        h
    }
}

/// `(h^0, ..., h^dim)` of `O_X(aH + bD)`.
pub fn cohomology(v: &VarietyDescriptor, d: Divisor) -> Vec<u64> {
    match &v.realization {
        Realization::ProjectiveBundle { base_dim, twists } => {
            bundle_cohomology(*base_dim, twists, v.canonical, d)
        }
        Realization::Product { m, n } => {
            let x = projective_space_cohomology(*m, d.a);
            let y = projective_space_cohomology(*n, d.b);
            let mut h = vec![0u64; (m + n) as usize + 1];
            for (i, p) in x.iter().enumerate() {
                for (j, q) in y.iter().enumerate() {
                    h[i + j] += p * q;
                }
            }
            h
        }
    }
}

pub fn alternating_sum(h: &[u64]) -> i128 {
    h.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i128 } else { -(x as i128) })
        .sum()
}

/// True iff every cohomology group vanishes.
pub fn is_cohomologically_zero(v: &VarietyDescriptor, d: Divisor) -> bool {
    cohomology(v, d).iter().all(|&x| x == 0)
}

/// Anything that can answer "is `O(d)` cohomologically zero".
pub trait CzOracle {
    fn is_cz(&self, d: Divisor) -> bool;
}

impl CzOracle for VarietyDescriptor {
    fn is_cz(&self, d: Divisor) -> bool {
        is_cohomologically_zero(self, d)
    }
}

/// Precomputed CZ predicate on `[-radius, radius]^2`, falling back to the
/// oracle outside. Answers are identical with or without the table.
#[derive(Clone, Debug)]
pub struct CzTable {
    variety: VarietyDescriptor,
    radius: i64,
    grid: Vec<bool>,
}

impl CzTable {
    pub fn new(v: &VarietyDescriptor, radius: i64) -> CzTable {
        let side = 2 * radius + 1;
        let mut grid = Vec::with_capacity((side * side) as usize);
        for a in -radius..=radius {
            for b in -radius..=radius {
                grid.push(is_cohomologically_zero(v, Divisor::new(a, b)));
            }
        }
        CzTable {
            variety: v.clone(),
            radius,
            grid,
        }
    }

    pub fn variety(&self) -> &VarietyDescriptor {
        &self.variety
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// All CZ divisors inside the table's box, in lexicographic order.
    pub fn points(&self) -> Vec<Divisor> {
        let r = self.radius;
        let mut out = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                let d = Divisor::new(a, b);
                if self.is_cz(d) {
                    out.push(d);
                }
            }
        }
        out
    }
}

impl CzOracle for CzTable {
    fn is_cz(&self, d: Divisor) -> bool {
        if d.in_box(self.radius) {
            let side = 2 * self.radius + 1;
            self.grid[((d.a + self.radius) * side + d.b + self.radius) as usize]
        } else {
            is_cohomologically_zero(&self.variety, d)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Coord {
    A,
    B,
}

/// A full coordinate line `a = value` or `b = value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Line {
    pub coord: Coord,
    pub value: i64,
}

impl Line {
    pub fn contains(&self, d: Divisor) -> bool {
        match self.coord {
            Coord::A => d.a == self.value,
            Coord::B => d.b == self.value,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CzClassification {
    pub lines: Vec<Line>,
    pub sporadic: Vec<Divisor>,
}

/// Splits the CZ divisors of `[-radius, radius]^2` into coordinate lines that
/// are CZ along their whole length in the box, plus the remaining points.
pub fn cz_classification(v: &VarietyDescriptor, radius: i64) -> CzClassification {
    let t = CzTable::new(v, radius);
    let range = || -radius..=radius;
    let mut lines = Vec::new();
    for x in range() {
        if range().all(|y| t.is_cz(Divisor::new(x, y))) {
            lines.push(Line {
                coord: Coord::A,
                value: x,
            });
        }
    }
    for y in range() {
        if range().all(|x| t.is_cz(Divisor::new(x, y))) {
            lines.push(Line {
                coord: Coord::B,
                value: y,
            });
        }
    }
    let sporadic = t
        .points()
        .into_iter()
        .filter(|&d| !lines.iter().any(|l| l.contains(d)))
        .collect();
    CzClassification { lines, sporadic }
}
