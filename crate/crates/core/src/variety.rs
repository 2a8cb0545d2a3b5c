//! Registry of the eleven Picard-rank-two varieties.
//!
//! Twists follow the Grothendieck convention: for a bundle realization
//! `P(O(e_0) + ... + O(e_r)) -> P^n`, `f_* O_X(bD) = Sym^b(O(e_0) + ... + O(e_r))`,
//! `D = c_1(O_X(1))` and `H` is the pullback of the hyperplane class.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::chow::{self, parse_class};
use crate::divisor::Divisor;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Realization {
    ProjectiveBundle { base_dim: u32, twists: Vec<i64> },
    Product { m: u32, n: u32 },
}

impl Realization {
    pub fn dim(&self) -> u32 {
        match self {
            Realization::ProjectiveBundle { base_dim, twists } => {
                base_dim + twists.len() as u32 - 1
            }
            Realization::Product { m, n } => m + n,
        }
    }

    /// `(n+1)(r+1)` or `(m+1)(n+1)`: the rank of `K_0`.
    pub fn k0_rank(&self) -> usize {
        match self {
            Realization::ProjectiveBundle { base_dim, twists } => {
                (*base_dim as usize + 1) * twists.len()
            }
            Realization::Product { m, n } => (*m as usize + 1) * (*n as usize + 1),
        }
    }
}

/// A bundle structure used for Orlov seeds. When `swapped` is set the bundle's
/// own `(H, D)` coordinates are the variety's `(D, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fibration {
    pub base_dim: u32,
    pub twists: Vec<i64>,
    pub swapped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum NoteKind {
    /// Published value disagrees with the derived one; the corrected value is used.
    Discrepancy,
    /// No published value; computed from the realization.
    Derived,
    /// Published list of varieties leaves this one out.
    TableOmission,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DataNote {
    pub field: String,
    pub kind: NoteKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VarietyDescriptor {
    pub id: String,
    pub aliases: Vec<String>,
    /// Plain-text description of the realization.
    pub name: String,
    /// Label of the classification theorem the template data is filed under.
    pub classification: String,
    pub realization: Realization,
    pub fibrations: Vec<Fibration>,
    pub dim: u32,
    pub canonical: Divisor,
    /// `intersection[i] = H^i D^{dim-i}`.
    pub intersection: Vec<i64>,
    /// `chern[k-1][i]` is the coefficient of `H^i D^{k-i}` in `c_k`.
    pub chern: Vec<Vec<i64>>,
    /// Chern classes as printed, empty when none are printed.
    pub chern_published: Vec<String>,
    pub max_length: usize,
    pub notes: Vec<DataNote>,
}

impl VarietyDescriptor {
    pub fn matches(&self, id: &str) -> bool {
        self.id == id || self.aliases.iter().any(|a| a == id)
    }

    /// Relative dimension `r` of a bundle realization; `None` for products.
    pub fn fiber_dim(&self) -> Option<u32> {
        match &self.realization {
            Realization::ProjectiveBundle { twists, .. } => Some(twists.len() as u32 - 1),
            Realization::Product { .. } => None,
        }
    }

    pub fn chern_poly(&self, k: u32) -> chow::Poly {
        chow::Poly::from_class(k, &self.chern[k as usize - 1])
    }

    pub fn is_product(&self) -> bool {
        matches!(self.realization, Realization::Product { .. })
    }
}

struct Entry {
    id: &'static str,
    aliases: &'static [&'static str],
    name: &'static str,
    classification: &'static str,
    realization: Realization,
    canonical: (i64, i64),
    intersection: &'static [i64],
    chern_published: &'static [&'static str],
    corrections: &'static [(usize, &'static str, &'static str)],
    table_omission: bool,
}

fn bundle(n: u32, twists: &[i64]) -> Realization {
    Realization::ProjectiveBundle {
        base_dim: n,
        twists: twists.to_vec(),
    }
}

fn entries() -> Vec<Entry> {
    vec![
        Entry {
            id: "PP2_Om1_O1",
            aliases: &["PP2_O_O2"],
            name: "P_{P^2}(O(-1)+O(1))",
            classification: "cl1",
            realization: bundle(2, &[-1, 1]),
            canonical: (-3, -2),
            intersection: &[1, 0, 1, 0],
            chern_published: &["3H+2D", "6HD+3H^2", "6H^2D"],
            corrections: &[],
            table_omission: false,
        },
        Entry {
            id: "P2xP1",
            aliases: &[],
            name: "P^2 x P^1",
            classification: "cl2",
            realization: Realization::Product { m: 2, n: 1 },
            canonical: (-3, -2),
            intersection: &[0, 0, 1, 0],
            chern_published: &[],
            corrections: &[],
            table_omission: false,
        },
        Entry {
            id: "PP3_O_O3",
            aliases: &[],
            name: "P_{P^3}(O+O(3))",
            classification: "cl3",
            realization: bundle(3, &[0, -3]),
            canonical: (-7, -2),
            intersection: &[-27, 9, -3, 1, 0],
            chern_published: &["7H+2D", "18H^2+6HD", "22H^3+12H^2D", "12H^4+8H^3D"],
            corrections: &[(
                2,
                "18H^2+8HD",
                "printed c_2 = 18H^2+6HD is inconsistent with c(X) and with the chi polynomial",
            )],
            table_omission: false,
        },
        Entry {
            id: "PP3_O_O2",
            aliases: &[],
            name: "P_{P^3}(O+O(2))",
            classification: "cl4",
            realization: bundle(3, &[0, -2]),
            canonical: (-6, -2),
            intersection: &[-8, 4, -2, 1, 0],
            chern_published: &["6H+2D", "14H^2+8HD", "16H^3+12H^2D", "8H^4+8H^3D"],
            corrections: &[],
            table_omission: true,
        },
        Entry {
            id: "PP3_O_O1",
            aliases: &[],
            name: "P_{P^3}(O+O(1))",
            classification: "cl5",
            realization: bundle(3, &[0, -1]),
            canonical: (-5, -2),
            intersection: &[-1, 1, -1, 1, 0],
            chern_published: &["5H+2D", "10H^2+8HD", "10H^3+12H^2D", "4H^4+8H^3D"],
            corrections: &[],
            table_omission: true,
        },
        Entry {
            id: "P1xP3",
            aliases: &[],
            name: "P^1 x P^3",
            classification: "cl6",
            realization: Realization::Product { m: 1, n: 3 },
            canonical: (-2, -4),
            intersection: &[0, 1, 0, 0, 0],
            chern_published: &[],
            corrections: &[],
            table_omission: false,
        },
        Entry {
            id: "PP1_O3_O1",
            aliases: &[],
            name: "P_{P^1}(O+O+O+O(1))",
            classification: "cl7",
            realization: bundle(1, &[0, 0, 0, -1]),
            canonical: (-3, -4),
            intersection: &[-1, 1, 0, 0, 0],
            chern_published: &[
                "3H+4D",
                "2H^2+11HD+6D^2",
                "6H^2D+15HD^2+4D^3",
                "6H^2D^2+9HD^3+D^4",
            ],
            corrections: &[],
            table_omission: false,
        },
        Entry {
            id: "PP2_O_O_O2",
            aliases: &[],
            name: "P_{P^2}(O+O+O(2))",
            classification: "cl8",
            realization: bundle(2, &[0, 0, -2]),
            canonical: (-5, -3),
            intersection: &[4, -2, 1, 0, 0],
            chern_published: &[
                "5H+3D",
                "9H^2+13HD+3D^2",
                "6H^3+21H^2D+11HD^2+D^3",
                "12H^3D+15H^2D^2+3HD^3",
            ],
            corrections: &[],
            table_omission: false,
        },
        Entry {
            id: "PP2_O_O_O1",
            aliases: &[],
            name: "P_{P^2}(O+O+O(1))",
            classification: "cl9",
            realization: bundle(2, &[0, 0, -1]),
            canonical: (-4, -3),
            intersection: &[1, -1, 1, 0, 0],
            chern_published: &[
                "4H+3D",
                "6H^2+11HD+3D^2",
                "3H^3+15H^2D+10HD^2+D^3",
                "6H^3D+12H^2D^2+3HD^3",
            ],
            corrections: &[],
            table_omission: false,
        },
        Entry {
            id: "PP2_O_O1_O1",
            aliases: &[],
            name: "P_{P^2}(O+O(1)+O(1))",
            classification: "cl10",
            realization: bundle(2, &[0, 0, 1]),
            canonical: (-2, -3),
            intersection: &[1, 1, 1, 0, 0],
            chern_published: &[
                "2H+3D",
                "7HD+3D^2",
                "-3H^3+3H^2D+8HD^2+D^3",
                "-6H^3D+6H^2D^2+3HD^3",
            ],
            corrections: &[],
            table_omission: false,
        },
        Entry {
            id: "P2xP2",
            aliases: &[],
            name: "P^2 x P^2",
            classification: "cl11",
            realization: Realization::Product { m: 2, n: 2 },
            canonical: (-3, -3),
            intersection: &[0, 0, 1, 0, 0],
            chern_published: &[],
            corrections: &[],
            table_omission: false,
        },
    ]
}

fn fibrations(r: &Realization) -> Vec<Fibration> {
    match r {
        Realization::ProjectiveBundle { base_dim, twists } => {
            vec![Fibration {
                base_dim: *base_dim,
                twists: twists.clone(),
                swapped: false,
            }]
        }
        // P^m x P^n is the trivial P^n-bundle over P^m and the trivial P^m-bundle over P^n.
        Realization::Product { m, n } => vec![
            Fibration {
                base_dim: *m,
                twists: vec![0; *n as usize + 1],
                swapped: false,
            },
            Fibration {
                base_dim: *n,
                twists: vec![0; *m as usize + 1],
                swapped: true,
            },
        ],
    }
}

fn build(e: Entry) -> VarietyDescriptor {
    let dim = e.realization.dim();
    let mut notes = Vec::new();
    let chern: Vec<Vec<i64>> = if e.chern_published.is_empty() {
        notes.push(DataNote {
            field: "chern".to_string(),
            kind: NoteKind::Derived,
            detail: "not printed; computed from (1+H)^{m+1}(1+D)^{n+1}".to_string(),
        });
        let c = chow::total_chern_from_realization(&e.realization);
        (1..=dim).map(|k| c.class_vector(k)).collect()
    } else {
        (1..=dim)
            .map(|k| {
                let fixed = e.corrections.iter().find(|c| c.0 == k as usize);
                let src = fixed.map_or(e.chern_published[k as usize - 1], |c| c.1);
                parse_class(src)
                    .expect("registry Chern data parses")
                    .class_vector(k)
            })
            .collect()
    };
    for &(k, value, why) in e.corrections {
        notes.push(DataNote {
            field: alloc::format!("chern[{}]", k),
            kind: NoteKind::Discrepancy,
            detail: alloc::format!("using {}; {}", value, why),
        });
    }
    if e.table_omission {
        notes.push(DataNote {
            field: "max_length".to_string(),
            kind: NoteKind::TableOmission,
            detail: "absent from the published list of varieties; max_length is the rank of K_0"
                .to_string(),
        });
    }
    VarietyDescriptor {
        id: e.id.to_string(),
        aliases: e.aliases.iter().map(|s| s.to_string()).collect(),
        name: e.name.to_string(),
        classification: e.classification.to_string(),
        fibrations: fibrations(&e.realization),
        dim,
        canonical: e.canonical.into(),
        intersection: e.intersection.to_vec(),
        chern,
        chern_published: e.chern_published.iter().map(|s| s.to_string()).collect(),
        max_length: e.realization.k0_rank(),
        realization: e.realization,
        notes,
    }
}

/// The eleven varieties: two threefolds, then the nine fourfolds.
pub fn registry() -> Vec<VarietyDescriptor> {
    entries().into_iter().map(build).collect()
}

pub fn lookup(id: &str) -> Result<VarietyDescriptor, Error> {
    lookup_in(&registry(), id).cloned()
}

pub fn lookup_in<'a>(
    reg: &'a [VarietyDescriptor],
    id: &str,
) -> Result<&'a VarietyDescriptor, Error> {
    reg.iter()
        .find(|v| v.matches(id))
        .ok_or_else(|| Error::UnknownVariety(id.to_string()))
}
