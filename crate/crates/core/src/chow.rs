//! Polynomials in `H`, `D` and their degrees against a variety's intersection form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::divisor::Divisor;
use crate::error::Error;
use crate::variety::{Realization, VarietyDescriptor};

/// Integer polynomial in `H` and `D`; keys are exponent pairs `(i, j)` of `H^i D^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), i128>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::monomial(0, 0, 1)
    }

    pub fn monomial(i: u32, j: u32, c: i128) -> Poly {
        let mut p = Poly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn divisor(d: Divisor) -> Poly {
        Poly::monomial(1, 0, d.a as i128) + Poly::monomial(0, 1, d.b as i128)
    }

    /// Homogeneous class from coefficients indexed by the `H` exponent.
    pub fn from_class(degree: u32, coeffs: &[i64]) -> Poly {
        let mut p = Poly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(i as u32, degree - i as u32, c as i128);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i128)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i128) -> Poly {
        let mut p = Poly::zero();
        for ((i, j), v) in self.terms() {
            p.add_term(i, j, v * c);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut p = Poly::one();
        for _ in 0..k {
            p = &p * self;
        }
        p
    }

    /// Part of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Poly {
        let mut p = Poly::zero();
        for ((i, j), v) in self.terms() {
            if i + j == k {
                p.add_term(i, j, v);
            }
        }
        p
    }

    /// Coefficient vector of the degree-`k` part, indexed by the `H` exponent.
    pub fn class_vector(&self, k: u32) -> Vec<i64> {
        let mut out = vec![0i64; k as usize + 1];
        for ((i, j), v) in self.terms() {
            if i + j == k {
                out[i as usize] = v as i64;
            }
        }
        out
    }

    /// Single total degree of a homogeneous polynomial; `None` for zero or mixed.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|&(i, j)| i + j);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, o: Poly) -> Poly {
        for ((i, j), v) in o.terms() {
            self.add_term(i, j, v);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        self + (-o)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for ((i, j), v) in self.terms() {
            for ((k, l), w) in o.terms() {
                p.add_term(i + k, j + l, v * w);
            }
        }
        p
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

/// Parses a class such as `18H^2+6HD` or `-3H^3+3H^2D+8HD^2+D^3`.
pub fn parse_class(s: &str) -> Result<Poly, Error> {
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::parse(s, "empty class"));
    }
    let mut p = Poly::zero();
    let mut pos = 0;
    while pos < src.len() {
        let mut sign = 1i128;
        if src[pos] == '+' || src[pos] == '-' {
            if src[pos] == '-' {
                sign = -1;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(Error::parse(s, "expected sign between terms"));
        }
        let start = pos;
        while pos < src.len() && src[pos].is_ascii_digit() {
            pos += 1;
        }
        let coef: i128 = if pos == start {
            1
        } else {
            let digits: alloc::string::String = src[start..pos].iter().collect();
            digits
                .parse()
                .map_err(|_| Error::parse(s, "bad coefficient"))?
        };
        let (mut i, mut j) = (0u32, 0u32);
        let mut saw = false;
        while pos < src.len() && (src[pos] == 'H' || src[pos] == 'D') {
            let var = src[pos];
            pos += 1;
            let mut e = 1u32;
            if pos < src.len() && src[pos] == '^' {
                pos += 1;
                let st = pos;
                while pos < src.len() && src[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: alloc::string::String = src[st..pos].iter().collect();
                e = digits
                    .parse()
                    .map_err(|_| Error::parse(s, "bad exponent"))?;
            }
            if var == 'H' {
                i += e;
            } else {
                j += e;
            }
            saw = true;
        }
        if !saw && pos == start {
            return Err(Error::parse(s, "expected a term"));
        }
        p.add_term(i, j, sign * coef);
    }
    Ok(p)
}

/// `H^i D^j` for `i + j = dim`, indexed by `i`, computed from the realization.
///
/// For a bundle `P(O(e_0) + ... + O(e_r))` over `P^n` the Chow ring is
/// `Z[H, D] / (H^{n+1}, sum_k (-1)^k e_k H^k D^{r+1-k})` with `e_k` the
/// elementary symmetric functions of the twists and `H^n D^r = 1`.
pub fn intersection_from_realization(r: &Realization) -> Vec<i64> {
    match r {
        Realization::Product { m, n } => {
            let dim = m + n;
            (0..=dim).map(|i| i64::from(i == *m)).collect()
        }
        Realization::ProjectiveBundle { base_dim, twists } => {
            let n = *base_dim as usize;
            let rk = twists.len() - 1;
            let dim = n + rk;
            let mut e = vec![0i64; rk + 2];
            e[0] = 1;
            for &t in twists {
                for k in (1..=rk + 1).rev() {
                    e[k] += e[k - 1] * t;
                }
            }
            // val[i] = H^i D^{dim-i}; fill from large i downward since the
            // relation raises the H exponent.
            let mut val = vec![0i64; dim + 1];
            for i in (0..=dim).rev() {
                let j = dim - i;
                val[i] = if i > n {
                    0
                } else if j == rk {
                    1
                } else {
                    (1..=rk + 1)
                        .filter(|&k| i + k <= dim)
                        .map(|k| {
                            let s = if k % 2 == 1 { 1 } else { -1 };
                            s * e[k] * val[i + k]
                        })
                        .sum()
                };
            }
            val
        }
    }
}

/// `K_X` from the realization.
pub fn canonical_from_realization(r: &Realization) -> Divisor {
    match r {
        Realization::Product { m, n } => Divisor::new(-(*m as i64 + 1), -(*n as i64 + 1)),
        Realization::ProjectiveBundle { base_dim, twists } => Divisor::new(
            -(*base_dim as i64 + 1) + twists.iter().sum::<i64>(),
            -(twists.len() as i64),
        ),
    }
}

/// Total Chern class `c(T_X)` as an unreduced polynomial.
///
/// Bundles: `(1+H)^{n+1} prod_i (1 + D - e_i H)`; products: `(1+H)^{m+1}(1+D)^{n+1}`.
pub fn total_chern_from_realization(r: &Realization) -> Poly {
    let h1 = Poly::one() + Poly::monomial(1, 0, 1);
    match r {
        Realization::Product { m, n } => {
            let d1 = Poly::one() + Poly::monomial(0, 1, 1);
            h1.pow(m + 1) * d1.pow(n + 1)
        }
        Realization::ProjectiveBundle { base_dim, twists } => {
            let mut c = h1.pow(base_dim + 1);
            for &e in twists {
                let f = Poly::one() + Poly::monomial(0, 1, 1) + Poly::monomial(1, 0, -(e as i128));
                c = c * f;
            }
            c
        }
    }
}

/// Degree of the top-dimensional part of `p`; lower-degree terms are dropped.
pub fn integrate(v: &VarietyDescriptor, p: &Poly) -> i128 {
    p.terms()
        .filter(|&((i, j), _)| i + j == v.dim)
        .map(|((i, _), c)| c * v.intersection[i as usize] as i128)
        .sum()
}

/// Degree of a homogeneous polynomial of total degree `dim`.
pub fn evaluate(v: &VarietyDescriptor, p: &Poly) -> Result<i128, Error> {
    match p.degree() {
        None if p.is_zero() => Ok(0),
        Some(k) if k == v.dim => Ok(integrate(v, p)),
        Some(k) => Err(Error::WrongDegree {
            expected: v.dim,
            got: k,
        }),
        None => Err(Error::WrongDegree {
            expected: v.dim,
            got: 0,
        }),
    }
}

/// `H^i . D^j`.
pub fn intersection_number(v: &VarietyDescriptor, i: u32, j: u32) -> Result<i64, Error> {
    if i + j != v.dim {
        return Err(Error::WrongDegree {
            expected: v.dim,
            got: i + j,
        });
    }
    Ok(v.intersection[i as usize])
}

/// `(aH + bD)^k`; only defined for `k = dim`.
pub fn divisor_power_pairing(v: &VarietyDescriptor, d: Divisor, k: u32) -> Result<i128, Error> {
    if k != v.dim {
        return Err(Error::WrongDegree {
            expected: v.dim,
            got: k,
        });
    }
    Ok(integrate(v, &Poly::divisor(d).pow(k)))
}

/// True when two classes of degree `k` have equal pairings with every monomial
/// of complementary degree, i.e. they agree numerically.
pub fn numerically_equal(v: &VarietyDescriptor, p: &Poly, q: &Poly, k: u32) -> bool {
    let diff = p.homogeneous_part(k) - q.homogeneous_part(k);
    (0..=v.dim - k).all(|i| integrate(v, &(&diff * &Poly::monomial(i, v.dim - k - i, 1))) == 0)
}
