//! Shipped data files and their loaders.
//!
//! Files are embedded at build time. Setting `EXCOLL_DATA_DIR` makes every
//! loader read `<dir>/<file>` instead when that file exists.

use std::path::PathBuf;

use excoll_core::cohomology::{Coord, CzClassification, Line};
use excoll_core::pairs::Family;
use excoll_core::template::{parse_member, AffineDivisor, CollectionTemplate};
use excoll_core::{Divisor, VarietyDescriptor};
use serde::{Deserialize, Serialize};

use crate::Error;

pub const DATA_DIR_ENV: &str = "EXCOLL_DATA_DIR";

const TEMPLATES: &str = include_str!("../data/templates.json");
const PAIR_TABLES: &str = include_str!("../data/pair_tables.json");
const PUBLISHED: &str = include_str!("../data/published.json");

fn override_path(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(DATA_DIR_ENV)?;
    let p = PathBuf::from(dir).join(name);
    p.exists().then_some(p)
}

fn load_text(name: &str, embedded: &'static str) -> Result<String, Error> {
    match override_path(name) {
        Some(p) => std::fs::read_to_string(&p).map_err(|e| Error::Io(p.display().to_string(), e)),
        None => Ok(embedded.to_string()),
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Data(format!("{}: {}", name, e)))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RegistryFile {
    pub schema: u32,
    pub varieties: Vec<VarietyDescriptor>,
}

/// The built-in registry, or `registry.json` from the data directory.
pub fn registry() -> Result<Vec<VarietyDescriptor>, Error> {
    match override_path("registry.json") {
        Some(p) => {
            let text =
                std::fs::read_to_string(&p).map_err(|e| Error::Io(p.display().to_string(), e))?;
            Ok(parse_json::<RegistryFile>("registry.json", &text)?.varieties)
        }
        None => Ok(excoll_core::registry()),
    }
}

pub fn lookup(reg: &[VarietyDescriptor], id: &str) -> Result<VarietyDescriptor, Error> {
    Ok(excoll_core::variety::lookup_in(reg, id)?.clone())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TemplateRecord {
    pub type_id: String,
    /// Member list as printed (without the leading `O`); absent for supplementary types.
    pub published: Option<String>,
    pub corrected: Option<String>,
    #[serde(default)]
    pub flags: Vec<String>,
    pub note: Option<String>,
    pub params: Vec<String>,
    /// Affine members `[[cH, cD], [uH, uD] per parameter]`, starting with `O`.
    pub members: Vec<Vec<[i64; 2]>>,
}

impl TemplateRecord {
    pub fn is_supplementary(&self) -> bool {
        self.flags.iter().any(|f| f == "supplementary")
    }

    pub fn has_discrepancy(&self) -> bool {
        self.flags.iter().any(|f| f == "discrepancy")
    }

    /// The string the shipped template is built from.
    pub fn effective(&self) -> &str {
        self.corrected
            .as_deref()
            .or(self.published.as_deref())
            .unwrap_or("")
    }

    pub fn from_affine(&self) -> Result<CollectionTemplate, Error> {
        let members = self
            .members
            .iter()
            .map(|rows| AffineDivisor::from_affine(rows, &self.params))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CollectionTemplate {
            type_id: self.type_id.clone(),
            params: self.params.clone(),
            members,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VarietyTemplates {
    pub variety: String,
    pub classification: String,
    pub types: Vec<TemplateRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TemplateFile {
    pub schema: u32,
    pub varieties: Vec<VarietyTemplates>,
}

pub fn templates() -> Result<TemplateFile, Error> {
    parse_json("templates.json", &load_text("templates.json", TEMPLATES)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Published member lists exactly as printed.
    Verbatim,
    /// Published lists with misprints corrected.
    Corrected,
    /// Corrected lists plus the supplementary types.
    Extended,
}

/// A template set for one variety, plus types that could not be built.
#[derive(Clone, Debug)]
pub struct TemplateSet {
    pub templates: Vec<CollectionTemplate>,
    pub unparsed: Vec<(String, String)>,
}

impl VarietyTemplates {
    pub fn build(&self, variant: Variant) -> TemplateSet {
        let mut set = TemplateSet {
            templates: Vec::new(),
            unparsed: Vec::new(),
        };
        for t in &self.types {
            let text = match variant {
                Variant::Verbatim => match &t.published {
                    Some(s) => s.as_str(),
                    None => continue,
                },
                Variant::Corrected if t.is_supplementary() => continue,
                _ => t.effective(),
            };
            match CollectionTemplate::parse(&t.type_id, text) {
                Ok(ct) => set.templates.push(ct),
                Err(e) => set.unparsed.push((t.type_id.clone(), e.to_string())),
            }
        }
        set
    }

    pub fn published_count(&self) -> usize {
        self.types.iter().filter(|t| !t.is_supplementary()).count()
    }

    pub fn supplementary_count(&self) -> usize {
        self.types.iter().filter(|t| t.is_supplementary()).count()
    }
}

impl TemplateFile {
    pub fn for_variety(&self, v: &VarietyDescriptor) -> Result<&VarietyTemplates, Error> {
        self.varieties
            .iter()
            .find(|t| v.matches(&t.variety))
            .ok_or_else(|| Error::Data(format!("no templates for {}", v.id)))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FamilyRecord {
    pub label: String,
    pub member: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CellRecord {
    pub published: String,
    /// Present where the generated entry differs from the printed one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected: Option<String>,
    /// `typo` or `cz_omission`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Cells compared as canonical constraint sets.
    Exact,
    /// Cells compared on every parameter grounding in a range.
    Sampled,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PairTableRecord {
    pub variety: String,
    pub comparison: Comparison,
    pub families: Vec<FamilyRecord>,
    pub cells: Vec<Vec<CellRecord>>,
}

impl PairTableRecord {
    pub fn families(&self) -> Result<Vec<Family>, Error> {
        self.families
            .iter()
            .map(|f| {
                Ok(Family {
                    label: f.label.clone(),
                    member: parse_member(&f.member)?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PairTableFile {
    pub schema: u32,
    pub tables: Vec<PairTableRecord>,
}

pub fn pair_tables() -> Result<PairTableFile, Error> {
    parse_json(
        "pair_tables.json",
        &load_text("pair_tables.json", PAIR_TABLES)?,
    )
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LineRecord {
    pub coord: String,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CzListRecord {
    pub variety: String,
    pub lines: Vec<LineRecord>,
    pub sporadic: Vec<[i64; 2]>,
}

impl CzListRecord {
    pub fn classification(&self) -> Result<CzClassification, Error> {
        let mut lines = Vec::new();
        for l in &self.lines {
            let coord = match l.coord.as_str() {
                "a" => Coord::A,
                "b" => Coord::B,
                other => return Err(Error::Data(format!("bad line coordinate {:?}", other))),
            };
            lines.push(Line {
                coord,
                value: l.value,
            });
        }
        lines.sort();
        let mut sporadic: Vec<Divisor> = self.sporadic.iter().map(|&p| p.into()).collect();
        sporadic.sort();
        Ok(CzClassification { lines, sporadic })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ChainRecord {
    pub variety: String,
    pub types: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PublishedFile {
    pub schema: u32,
    pub cz_lists: Vec<CzListRecord>,
    pub chains: Vec<ChainRecord>,
}

pub fn published() -> Result<PublishedFile, Error> {
    parse_json("published.json", &load_text("published.json", PUBLISHED)?)
}
