//! Command-line front end. `run` returns the text to print and the exit status
//! so the binary stays a thin wrapper and tests can drive it in-process.

use std::io::{IsTerminal, Read};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use excoll_core::cohomology::{alternating_sum, cohomology, cz_classification, CzTable};
use excoll_core::hrr::{euler_char_closed, euler_char_hrr, has_closed_form};
use excoll_core::mutation::{check_certificate, FullnessCertificate, DEFAULT_BUDGET};
use excoll_core::pairs::{cell, cell_vars, parse_cell, sampled_disagreements};
use excoll_core::template::{match_templates, signature_groups};
use excoll_core::{Collection, Divisor, VarietyDescriptor};
use serde::{Deserialize, Serialize};

use crate::acceptance::{self, show_line};
use crate::data::{self, Comparison, Variant};
use crate::report::{self, json};
use crate::{par, Error};

#[derive(Parser, Debug)]
#[command(
    name = "excoll",
    version,
    about = "Exceptional collections of line bundles on Picard-rank-two varieties"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantChoice {
    Verbatim,
    Corrected,
    Extended,
    /// Verbatim and corrected side by side.
    Both,
}

impl VariantChoice {
    fn variants(self) -> Vec<Variant> {
        match self {
            VariantChoice::Verbatim => vec![Variant::Verbatim],
            VariantChoice::Corrected => vec![Variant::Corrected],
            VariantChoice::Extended => vec![Variant::Extended],
            VariantChoice::Both => vec![Variant::Verbatim, Variant::Corrected],
        }
    }
}

#[derive(Args, Debug)]
pub struct VarietyArg {
    /// Variety id or alias, e.g. PP2_Om1_O1.
    #[arg(long)]
    pub variety: String,
}

#[derive(Args, Debug)]
pub struct DivisorArg {
    /// Divisor `a,b` meaning aH+bD.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_divisor)]
    pub divisor: Divisor,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the variety registry.
    Varieties,
    /// Euler characteristic of a line bundle.
    Chi {
        #[command(flatten)]
        variety: VarietyArg,
        #[command(flatten)]
        divisor: DivisorArg,
        #[arg(long, value_enum, default_value_t = ChiMethod::Hrr)]
        method: ChiMethod,
    },
    /// All cohomology dimensions of a line bundle.
    Cohomology {
        #[command(flatten)]
        variety: VarietyArg,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Cohomologically zero divisors in a box, as lines plus sporadic points.
    CzList {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long = "box", default_value_t = 8, value_parser = positive)]
        radius: i64,
    },
    /// Normalized maximal exceptional collections in a box.
    Enumerate {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long = "box", default_value_t = 6, value_parser = positive)]
        radius: i64,
        /// Collection length; defaults to the maximal length.
        #[arg(long)]
        length: Option<usize>,
        /// Also group results by difference signature.
        #[arg(long)]
        signatures: bool,
    },
    /// Match collections against the shipped templates.
    Match {
        /// Defaults to the variety named in the input envelope.
        #[arg(long)]
        variety: Option<String>,
        #[arg(long = "box", default_value_t = 6, value_parser = positive)]
        radius: i64,
        #[arg(long, value_enum, default_value_t = VariantChoice::Corrected)]
        variant: VariantChoice,
        /// Collections as JSON (`-` for stdin). Without it, piped stdin is
        /// read if present, otherwise the box is enumerated.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Generated exceptional-pair table next to the transcribed one.
    Tables {
        #[command(flatten)]
        variety: VarietyArg,
    },
    /// Search for a fullness certificate for a collection.
    Verify {
        #[command(flatten)]
        variety: VarietyArg,
        /// JSON array of `[a,b]` members.
        #[arg(long)]
        collection: String,
        #[arg(long = "box", default_value_t = 6, value_parser = positive)]
        radius: i64,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = positive_usize)]
        budget: usize,
    },
    /// Replay a certificate file.
    CheckCert { file: PathBuf },
    /// Run the acceptance criteria and print a pass/fail matrix.
    ReproduceAll {
        /// Run only these criteria.
        #[arg(long)]
        criterion: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = positive_usize)]
        budget: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChiMethod {
    Hrr,
    Closed,
    Oracle,
}

fn parse_divisor(s: &str) -> Result<Divisor, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if let [a, b] = parts[..] {
        if let (Ok(a), Ok(b)) = (a.parse(), b.parse()) {
            return Ok(Divisor::new(a, b));
        }
    }
    Err(format!("expected `a,b`, got {s:?}"))
}

fn positive(s: &str) -> Result<i64, String> {
    match s.parse::<i64>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

/// What the binary prints and returns.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String, passed: bool) -> Output {
        Output {
            stdout,
            stderr: String::new(),
            code: if passed { 0 } else { 1 },
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    use excoll_core::Error as C;
    match e {
        Error::Core(C::UnknownVariety(_)) => "unknown_variety",
        Error::Core(C::Parse { .. }) => "parse",
        Error::Core(C::BudgetExhausted { .. }) => "budget_exhausted",
        Error::Core(C::NotExceptional) => "not_exceptional",
        Error::Core(_) => "math",
        Error::Data(_) => "data",
        Error::Io(..) => "io",
        Error::Input(_) => "input",
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdin_piped: bool) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output::ok(e.to_string(), true);
            }
            return Output {
                stdout: String::new(),
                stderr: report::error_record("usage", e.to_string().trim()),
                code: 2,
            };
        }
    };
    match dispatch(&cli, stdin, stdin_piped) {
        Ok(out) => out,
        Err(e) => Output {
            stdout: String::new(),
            stderr: report::error_record(error_kind(&e), &e),
            code: 2,
        },
    }
}

/// Entry point for the binary.
pub fn main_with_stdio() -> i32 {
    let piped = !std::io::stdin().is_terminal();
    let out = run(std::env::args_os(), &mut std::io::stdin(), piped);
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr);
    }
    out.code
}

fn variety(id: &str) -> Result<VarietyDescriptor, Error> {
    data::lookup(&data::registry()?, id)
}

fn render(
    fmt: Format,
    command: &str,
    v: Option<&str>,
    result: impl Serialize,
    header: &[&str],
    rows: Vec<Vec<String>>,
) -> String {
    match fmt {
        Format::Json => json(command, v, result) + "\n",
        Format::Csv => report::csv(header, &rows),
        Format::Table => report::table(header, &rows),
    }
}

fn show_collection(c: &Collection) -> String {
    serde_json::to_string(c).expect("collections serialize")
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, stdin_piped: bool) -> Result<Output, Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Varieties => {
            let reg = data::registry()?;
            let rows = reg
                .iter()
                .map(|v| {
                    vec![
                        v.id.clone(),
                        v.classification.clone(),
                        v.dim.to_string(),
                        v.canonical.to_string(),
                        v.max_length.to_string(),
                        v.name.clone(),
                    ]
                })
                .collect();
            let header = [
                "id",
                "classification",
                "dim",
                "canonical",
                "max_length",
                "name",
            ];
            Ok(Output::ok(
                render(fmt, "varieties", None, &reg, &header, rows),
                true,
            ))
        }
        Command::Chi {
            variety: va,
            divisor,
            method,
        } => {
            let v = variety(&va.variety)?;
            let d = divisor.divisor;
            let chi = match method {
                ChiMethod::Hrr => euler_char_hrr(&v, d)?,
                ChiMethod::Closed => {
                    if !has_closed_form(&v) {
                        return Err(excoll_core::Error::NoClosedForm(v.id.clone()).into());
                    }
                    euler_char_closed(&v, d)?
                }
                ChiMethod::Oracle => alternating_sum(&cohomology(&v, d)) as i64,
            };
            #[derive(Serialize)]
            struct Chi {
                divisor: Divisor,
                chi: i64,
            }
            let rows = vec![vec![d.a.to_string(), d.b.to_string(), chi.to_string()]];
            Ok(Output::ok(
                render(
                    fmt,
                    "chi",
                    Some(&v.id),
                    Chi { divisor: d, chi },
                    &["a", "b", "chi"],
                    rows,
                ),
                true,
            ))
        }
        Command::Cohomology {
            variety: va,
            divisor,
        } => {
            let v = variety(&va.variety)?;
            let d = divisor.divisor;
            let h = cohomology(&v, d);
            #[derive(Serialize)]
            struct Coh {
                divisor: Divisor,
                h: Vec<u64>,
            }
            let rows = h
                .iter()
                .enumerate()
                .map(|(i, x)| vec![i.to_string(), x.to_string()])
                .collect();
            Ok(Output::ok(
                render(
                    fmt,
                    "cohomology",
                    Some(&v.id),
                    Coh { divisor: d, h },
                    &["i", "h"],
                    rows,
                ),
                true,
            ))
        }
        Command::CzList {
            variety: va,
            radius,
        } => {
            let v = variety(&va.variety)?;
            let cz = cz_classification(&v, *radius);
            let mut rows: Vec<Vec<String>> = cz
                .lines
                .iter()
                .map(|l| vec!["line".into(), show_line(l)])
                .collect();
            rows.extend(
                cz.sporadic
                    .iter()
                    .map(|p| vec!["point".into(), format!("{},{}", p.a, p.b)]),
            );
            Ok(Output::ok(
                render(fmt, "cz-list", Some(&v.id), &cz, &["kind", "value"], rows),
                true,
            ))
        }
        Command::Enumerate {
            variety: va,
            radius,
            length,
            signatures,
        } => {
            let v = variety(&va.variety)?;
            let len = length.unwrap_or(v.max_length);
            let cz = CzTable::new(&v, 2 * radius);
            let found = par::enumerate(&cz, *radius, len);
            let rows = found.iter().map(|c| vec![show_collection(c)]).collect();
            let out = if *signatures && fmt == Format::Json {
                #[derive(Serialize)]
                struct WithSig<'a> {
                    collections: &'a [Collection],
                    signatures: Vec<(Vec<Divisor>, usize)>,
                }
                let sig = signature_groups(&found).into_iter().collect();
                json(
                    "enumerate",
                    Some(&v.id),
                    WithSig {
                        collections: &found,
                        signatures: sig,
                    },
                ) + "\n"
            } else {
                render(fmt, "enumerate", Some(&v.id), &found, &["collection"], rows)
            };
            Ok(Output::ok(out, true))
        }
        Command::Match {
            variety: vid,
            radius,
            variant,
            input,
        } => {
            let text = match input {
                Some(p) if p.as_os_str() == "-" => Some(read_all(stdin, "stdin")?),
                Some(p) => Some(
                    std::fs::read_to_string(p)
                        .map_err(|e| Error::Io(p.display().to_string(), e))?,
                ),
                // an empty pipe (e.g. a closed stdin) means "enumerate"
                None if stdin_piped => {
                    Some(read_all(stdin, "stdin")?).filter(|t| !t.trim().is_empty())
                }
                None => None,
            };
            let (named, found) = match &text {
                Some(t) => parse_collections(t)?,
                None => (None, Vec::new()),
            };
            let id = vid
                .clone()
                .or(named)
                .ok_or_else(|| Error::Input("no variety given".into()))?;
            let v = variety(&id)?;
            let found = if text.is_some() {
                found
            } else {
                par::enumerate_maximal(&v, *radius)
            };
            let vt = data::templates()?;
            let vt = vt.for_variety(&v)?;
            #[derive(Serialize)]
            struct VariantReport {
                variant: Variant,
                clean: bool,
                unparsed: Vec<(String, String)>,
                report: excoll_core::template::MatchReport,
            }
            let mut reports = Vec::new();
            for var in variant.variants() {
                let set = vt.build(var);
                let report = match_templates(&found, &set.templates, *radius);
                reports.push(VariantReport {
                    variant: var,
                    clean: report.is_clean(),
                    unparsed: set.unparsed,
                    report,
                });
            }
            let passed = reports.iter().all(|r| r.clean);
            let mut rows = Vec::new();
            for r in &reports {
                let var = format!("{:?}", r.variant).to_lowercase();
                for (t, n) in &r.report.per_type {
                    rows.push(vec![var.clone(), t.clone(), n.to_string()]);
                }
                rows.push(vec![
                    var.clone(),
                    "unmatched".into(),
                    r.report.unmatched.len().to_string(),
                ]);
                rows.push(vec![
                    var,
                    "missing".into(),
                    r.report.missing.len().to_string(),
                ]);
            }
            Ok(Output::ok(
                render(
                    fmt,
                    "match",
                    Some(&v.id),
                    &reports,
                    &["variant", "type", "count"],
                    rows,
                ),
                passed,
            ))
        }
        Command::Tables { variety: va } => tables(fmt, &va.variety),
        Command::Verify {
            variety: va,
            collection,
            radius,
            budget,
        } => {
            let v = variety(&va.variety)?;
            let members: Vec<Divisor> =
                serde_json::from_str(collection).map_err(|e| excoll_core::Error::Parse {
                    input: collection.clone(),
                    reason: e.to_string(),
                })?;
            let target = Collection::new(members);
            let norm = target.normalized();
            let r = norm
                .members
                .iter()
                .map(|d| d.a.abs().max(d.b.abs()))
                .max()
                .unwrap_or(0)
                .max(*radius);
            let cz = CzTable::new(&v, 4 * r);
            match par::verify_fullness(&cz, &target, r, *budget)? {
                Ok(cert) => {
                    let rows = vec![vec![
                        show_collection(&cert.seed),
                        cert.moves.len().to_string(),
                    ]];
                    Ok(Output::ok(
                        render(fmt, "verify", Some(&v.id), &cert, &["seed", "moves"], rows),
                        true,
                    ))
                }
                Err(nf) if nf.budget_exhausted => Err(excoll_core::Error::BudgetExhausted {
                    explored: nf.explored,
                }
                .into()),
                Err(nf) => {
                    #[derive(Serialize)]
                    struct NoCert {
                        found: bool,
                        explored: usize,
                    }
                    let rows = vec![vec!["false".into(), nf.explored.to_string()]];
                    let body = NoCert {
                        found: false,
                        explored: nf.explored,
                    };
                    Ok(Output::ok(
                        render(
                            fmt,
                            "verify",
                            Some(&v.id),
                            body,
                            &["found", "explored"],
                            rows,
                        ),
                        false,
                    ))
                }
            }
        }
        Command::CheckCert { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Io(file.display().to_string(), e))?;
            let cert = parse_certificate(&text)?;
            let v = variety(&cert.variety)?;
            let r = cert
                .seed
                .members
                .iter()
                .chain(&cert.target.members)
                .map(|d| d.a.abs().max(d.b.abs()))
                .max()
                .unwrap_or(0);
            let check = check_certificate(&CzTable::new(&v, 2 * r + 8), &cert);
            let rows = vec![vec![
                check.ok.to_string(),
                check.reason.clone().unwrap_or_default(),
            ]];
            let passed = check.ok;
            Ok(Output::ok(
                render(
                    fmt,
                    "check-cert",
                    Some(&v.id),
                    &check,
                    &["ok", "reason"],
                    rows,
                ),
                passed,
            ))
        }
        Command::ReproduceAll { criterion, budget } => {
            let cfg = acceptance::Config {
                budget: *budget,
                ..Default::default()
            };
            let numbers: Vec<u32> = if criterion.is_empty() {
                (1..=8).collect()
            } else {
                criterion.clone()
            };
            let outcomes = numbers
                .iter()
                .map(|&n| acceptance::run(n, &cfg))
                .collect::<Result<Vec<_>, _>>()?;
            let passed = outcomes.iter().all(|o| o.passed);
            let out = match fmt {
                Format::Json => json("reproduce-all", None, &outcomes) + "\n",
                _ => {
                    let rows = outcomes
                        .iter()
                        .map(|o| {
                            vec![
                                o.number.to_string(),
                                o.name.clone(),
                                if o.passed { "PASS" } else { "FAIL" }.to_string(),
                                o.summary.clone(),
                            ]
                        })
                        .collect::<Vec<_>>();
                    let header = ["criterion", "name", "result", "summary"];
                    let mut s = if fmt == Format::Csv {
                        report::csv(&header, &rows)
                    } else {
                        report::table(&header, &rows)
                    };
                    if fmt == Format::Table {
                        for o in &outcomes {
                            for d in &o.details {
                                s.push_str(&format!("{}: {}\n", o.number, d));
                            }
                        }
                    }
                    s
                }
            };
            Ok(Output::ok(out, passed))
        }
    }
}

fn read_all(r: &mut dyn Read, what: &str) -> Result<String, Error> {
    let mut s = String::new();
    r.read_to_string(&mut s)
        .map_err(|e| Error::Io(what.into(), e))?;
    Ok(s)
}

#[derive(Deserialize)]
struct EnvelopeIn<T> {
    variety: Option<String>,
    result: T,
}

/// Accepts a bare array of collections or an `enumerate` envelope.
fn parse_collections(text: &str) -> Result<(Option<String>, Vec<Collection>), Error> {
    let bad = |e: serde_json::Error| {
        Error::Core(excoll_core::Error::Parse {
            input: "collections".into(),
            reason: e.to_string(),
        })
    };
    let value: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
    if value.is_array() {
        return Ok((None, serde_json::from_value(value).map_err(bad)?));
    }
    let env: EnvelopeIn<serde_json::Value> = serde_json::from_value(value).map_err(bad)?;
    let list = match env.result.get("collections") {
        Some(c) => c.clone(),
        None => env.result,
    };
    Ok((env.variety, serde_json::from_value(list).map_err(bad)?))
}

/// Accepts a bare certificate or a `verify` envelope.
fn parse_certificate(text: &str) -> Result<FullnessCertificate, Error> {
    let bad = |e: serde_json::Error| {
        Error::Core(excoll_core::Error::Parse {
            input: "certificate".into(),
            reason: e.to_string(),
        })
    };
    let value: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
    let value = match value.get("result") {
        Some(r) if value.get("schema").is_some() => r.clone(),
        _ => value,
    };
    serde_json::from_value(value).map_err(bad)
}

#[derive(Serialize)]
struct CellOut {
    row: String,
    col: String,
    generated: String,
    published: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    corrected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    agrees: bool,
}

fn tables(fmt: Format, id: &str) -> Result<Output, Error> {
    let v = variety(id)?;
    let file = data::pair_tables()?;
    let t = file
        .tables
        .iter()
        .find(|t| v.matches(&t.variety))
        .ok_or_else(|| Error::Data(format!("no pair table for {}", v.id)))?;
    let fam = t.families()?;
    let cz = cz_classification(&v, 8);
    let mut cells = Vec::new();
    let mut passed = true;
    for (i, r) in fam.iter().enumerate() {
        for (j, c) in fam.iter().enumerate() {
            let rec = &t.cells[i][j];
            let g = cell(r, c, &cz);
            let p = parse_cell(&rec.published)?;
            let agrees = match t.comparison {
                Comparison::Exact => p == g,
                Comparison::Sampled => {
                    sampled_disagreements(&p, &g, &cell_vars(r, c), -4, 4).is_empty()
                }
            };
            if !agrees && rec.reason.as_deref() != Some("typo") {
                passed = false;
            }
            cells.push(CellOut {
                row: r.label.clone(),
                col: format!("{}'", c.label),
                generated: g.to_string(),
                published: rec.published.clone(),
                corrected: rec.corrected.clone(),
                reason: rec.reason.clone(),
                agrees,
            });
        }
    }
    let rows = cells
        .iter()
        .map(|c| {
            vec![
                c.row.clone(),
                c.col.clone(),
                c.generated.clone(),
                c.published.clone(),
                c.reason.clone().unwrap_or_else(|| {
                    if c.agrees {
                        "".into()
                    } else {
                        "unflagged".into()
                    }
                }),
            ]
        })
        .collect();
    let header = ["row", "col", "generated", "published", "flag"];
    Ok(Output::ok(
        render(fmt, "tables", Some(&v.id), &cells, &header, rows),
        passed,
    ))
}
