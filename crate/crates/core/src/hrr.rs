//! Euler characteristics: Hirzebruch-Riemann-Roch and the factored closed forms.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::chow::{integrate, Poly};
use crate::divisor::Divisor;
use crate::error::Error;
use crate::variety::VarietyDescriptor;
use crate::Rational;

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// `int ch(O(d)) td(X)` with the given Chern classes (`chern[k-1] = c_k`).
pub fn hrr_rational(v: &VarietyDescriptor, chern: &[Poly], d: Divisor) -> Rational {
    let x = Poly::divisor(d);
    let deg = |p: Poly| Rational::from_integer(integrate(v, &p));
    let c1 = &chern[0];
    let c2 = &chern[1];
    let c11 = c1 * c1;
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    match v.dim {
        3 => {
            deg(c1 * c2) * r(1, 24)
                + deg(&x * &(c11 + c2.clone())) * r(1, 12)
                + deg(&x2 * c1) * r(1, 4)
                + deg(x3) * r(1, 6)
        }
        4 => {
            let c3 = &chern[2];
            let c4 = &chern[3];
            let td4 = (&c11 * &c11).scale(-1) + (&c11 * c2).scale(4) + (c2 * c2).scale(3) + c1 * c3
                - c4.clone();
            deg(td4) * r(1, 720)
                + deg(&x * &(c1 * c2)) * r(1, 24)
                + deg(&x2 * &(c11 + c2.clone())) * r(1, 24)
                + deg(&x3 * c1) * r(1, 12)
                + deg(&x3 * &x) * r(1, 24)
        }
        n => panic!("HRR implemented for dimensions 3 and 4, got {}", n),
    }
}

fn registry_chern(v: &VarietyDescriptor) -> Vec<Poly> {
    (1..=v.dim).map(|k| v.chern_poly(k)).collect()
}

fn integral(v: &VarietyDescriptor, d: Divisor, q: Rational) -> Result<i64, Error> {
    if q.is_integer() {
        Ok(*q.numer() as i64)
    } else {
        Err(Error::NonIntegral {
            variety: v.id.clone(),
            divisor: d.to_string(),
            value: alloc::format!("{}", q),
        })
    }
}

/// `chi(X, O(d))` by HRR from the registry's Chern data; must be an integer.
pub fn euler_char_hrr(v: &VarietyDescriptor, d: Divisor) -> Result<i64, Error> {
    integral(v, d, hrr_rational(v, &registry_chern(v), d))
}

fn closed_form(id: &str, a: i128, b: i128, published: bool) -> Option<Rational> {
    let q = match id {
        "PP2_Om1_O1" => r((b + 1) * (3 * a * a + 9 * a + b * b + 2 * b + 6), 6),
        "PP3_O_O3" => r(
            (b + 1) * (2 * a - 3 * b + 4) * (2 * a * a - 6 * a * b + 8 * a + 9 * b * b - 3 * b + 6),
            24,
        ),
        "PP3_O_O2" => r(
            (b + 1) * (a - b + 2) * (a * a - 2 * a * b + 4 * a + 2 * b * b - 2 * b + 3),
            6,
        ),
        "PP3_O_O1" => {
            // the printed factor reads -2b; its own expanded form factors with -3b
            let lin = if published { 2 } else { 3 };
            r(
                (b + 1) * (2 * a - b + 4) * (2 * a * a - 2 * a * b + 8 * a + b * b - lin * b + 6),
                24,
            )
        }
        "PP1_O3_O1" => r((b + 1) * (b + 2) * (b + 3) * (4 * a - b + 4), 24),
        "PP2_O_O_O2" => r(
            (b + 1) * (b + 2) * (3 * a * a - 4 * a * b + 9 * a + 2 * b * b - 4 * b + 6),
            12,
        ),
        "PP2_O_O_O1" => r(
            (b + 1) * (b + 2) * (6 * a * a - 4 * a * b + 18 * a + b * b - 5 * b + 12),
            24,
        ),
        "PP2_O_O1_O1" => r(
            (b + 1) * (b + 2) * (6 * a * a + 4 * a * b + 18 * a + b * b + 7 * b + 12),
            24,
        ),
        _ => return None,
    };
    Some(q)
}

pub fn has_closed_form(v: &VarietyDescriptor) -> bool {
    closed_form(&v.id, 0, 0, false).is_some()
}

/// Factored chi polynomial, with known misprints corrected.
pub fn euler_char_closed(v: &VarietyDescriptor, d: Divisor) -> Result<i64, Error> {
    let q = closed_form(&v.id, d.a as i128, d.b as i128, false)
        .ok_or_else(|| Error::NoClosedForm(v.id.clone()))?;
    integral(v, d, q)
}

/// Factored chi polynomial exactly as printed; may be non-integral where it was misprinted.
pub fn euler_char_closed_published(v: &VarietyDescriptor, d: Divisor) -> Result<Rational, Error> {
    closed_form(&v.id, d.a as i128, d.b as i128, true)
        .ok_or_else(|| Error::NoClosedForm(v.id.clone()))
}
