//! Command-line front end: JSON documents in, JSON reports out.
//!
//! Input documents describe `(A, P)` through `r, c, n, m, l, A, D` and an
//! optional list of maximal cones. Columns are numbered from 0 in block
//! order `v01, …, v0n0, v11, …, vr nr`, followed by the extra columns
//! `v1, …, vm`. All rationals travel as `"p/q"` strings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::acomplex::{
    boundary_distances, build_complex, cone_label, gorenstein_index_via_complex, gorenstein_index_via_cones,
    AnticanonicalComplex,
};
use crate::arrangement::ArrangementData;
use crate::classify::{self, CandidateRecord, Fingerprint, Rejection, SettingId};
use crate::error::{Error, Result};
use crate::exactla::{IntMat, Rat, RatMat};
use crate::polyhedra::{toric_gorenstein_index, Fan};
use crate::tropical::{ConeClass, TropStructure};

#[derive(Parser, Debug)]
#[command(name = "acx", version, about = "Anticanonical complex and Gorenstein index of general arrangement varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the conditions on (A, P).
    Validate(FileArg),
    /// Class group, degrees, anticanonical class and moving cone.
    Info(FileArg),
    /// The fan in use and the position of its cones relative to trop(X).
    Fan(FileArg),
    /// Leaves of the tropical variety and the classification of fan cones.
    Trop(FileArg),
    /// Cells of the anticanonical complex and its boundary.
    Acomplex(FileArg),
    /// Gorenstein index.
    Gorenstein(GorensteinArgs),
    /// Fano threefold candidates of the five families at a given index.
    Classify(ClassifyArgs),
    /// Independent search procedures.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Args, Debug)]
pub struct FileArg {
    pub file: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Complex,
    Cones,
    Both,
}

#[derive(Args, Debug)]
pub struct GorensteinArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Read a bare fan `{rays, cones}` and use the toric formula.
    #[arg(long)]
    pub toric: bool,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub index: i64,
    /// Families to run; all five when omitted.
    #[arg(long, value_delimiter = ',')]
    pub setting: Vec<u8>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Scan a box of parameters of one family.
    BoxSearch {
        #[arg(long)]
        setting: u8,
        #[arg(long)]
        index: i64,
        #[arg(long, default_value_t = 60)]
        bound: i64,
    },
}

/// `(A, P)` as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub r: usize,
    pub c: usize,
    pub n: Vec<usize>,
    #[serde(default)]
    pub m: usize,
    pub l: Vec<Vec<i64>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<Vec<Vec<usize>>>,
}

/// A bare fan for the toric formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricDocument {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

pub fn parse_rational(text: &str) -> Result<Rat> {
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    let (num, den) = match text.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

pub fn format_rational(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn rat_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn int_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("parse error: {e}")))
    }

    pub fn from_data(data: &ArrangementData, fan: Option<&Fan>) -> Self {
        InputDocument {
            r: data.r(),
            c: data.c(),
            n: data.n().to_vec(),
            m: data.m(),
            l: data.l().to_vec(),
            a: data.a().row_vecs().iter().map(|row| rat_strings(row)).collect(),
            d: data
                .d()
                .row_vecs()
                .iter()
                .map(|row| row.iter().map(|x| i64::try_from(x).expect("entry fits i64")).collect())
                .collect(),
            fan: fan.map(|f| f.max_cones().to_vec()),
        }
    }

    /// Shape-checked data; the mathematical conditions are not checked here.
    pub fn to_data(&self) -> Result<ArrangementData> {
        let a_rows: Vec<Vec<Rat>> =
            self.a.iter().map(|row| row.iter().map(|x| parse_rational(x)).collect()).collect::<Result<_>>()?;
        let a_cols = a_rows.first().map_or(0, Vec::len);
        if a_rows.iter().any(|row| row.len() != a_cols) {
            return Err(Error::InvalidInput("rows of A differ in length".into()));
        }
        let cols = self.n.iter().sum::<usize>() + self.m;
        if self.d.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidInput(format!("every row of D needs n+m = {cols} entries")));
        }
        let d_rows: Vec<Vec<BigInt>> = self.d.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
        ArrangementData::new(
            self.r,
            self.c,
            self.n.clone(),
            self.m,
            self.l.clone(),
            RatMat::from_rows(&a_rows, a_cols),
            IntMat::from_rows(&d_rows, cols),
        )
    }
}

/// Data that passed validation together with the fan to work with.
pub struct Loaded {
    pub data: ArrangementData,
    pub fan: Fan,
    pub fan_source: FanSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanSource {
    Listed,
    Anticanonical,
}

fn read_document(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::from_json(&text)
}

fn valid_data(doc: &InputDocument) -> Result<ArrangementData> {
    let data = doc.to_data()?;
    let violations = data.validate();
    if violations.is_empty() {
        Ok(data)
    } else {
        Err(Error::Validation(violations))
    }
}

/// Validates the document and picks the listed fan or `Σ(−K)`.
pub fn load(doc: &InputDocument) -> Result<Loaded> {
    let data = valid_data(doc)?;
    if let Some(cones) = &doc.fan {
        let fan = Fan::new(data.lattice_dim(), data.columns(), cones.clone())?;
        return Ok(Loaded { data, fan, fan_source: FanSource::Listed });
    }
    let check = data.is_fano()?;
    match (check.fan, check.reason) {
        (Some(ample), None) => Ok(Loaded { data, fan: ample.minimal, fan_source: FanSource::Anticanonical }),
        (_, reason) => Err(Error::NotFano(reason.unwrap_or_else(|| "no ample anticanonical class".into()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRecord {
    pub index: usize,
    pub label: String,
    pub vector: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub validation: ValidationReport,
    pub columns: Vec<ColumnRecord>,
    pub relations: Vec<String>,
    pub class_group_rank: usize,
    pub class_group_torsion: Vec<String>,
    pub degrees: Vec<String>,
    pub relation_degree: String,
    pub anticanonical: String,
    pub moving_cone: Vec<Vec<String>>,
    pub fano: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_fano_reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRecord {
    pub columns: Vec<usize>,
    pub label: String,
    pub class: ConeClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanReport {
    pub source: FanSource,
    pub rays: Vec<ColumnRecord>,
    pub max_cones: Vec<ConeRecord>,
    pub complete: bool,
    /// Whether a listed fan equals `Σ(−K)`; absent when not applicable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matches_anticanonical: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafRecord {
    pub leaf: Vec<usize>,
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigConeRecord {
    pub columns: Vec<usize>,
    pub interior_meets_lineality: bool,
    pub lineality_intersection_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropReport {
    pub leaves: Vec<LeafRecord>,
    pub cones: Vec<ConeRecord>,
    pub big_cones: Vec<BigConeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub parent: usize,
    pub parent_label: String,
    pub leaf: Vec<usize>,
    pub block: usize,
    pub u: Vec<String>,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub cell: usize,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
    pub distance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub vertices: Vec<Vec<String>>,
    pub cells: Vec<CellRecord>,
    pub boundary_cells: Vec<BoundaryRecord>,
    pub gorenstein_index: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeIndexRecord {
    pub columns: Vec<usize>,
    pub label: String,
    pub cartier_index: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via_complex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via_cones: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cone_indices: Vec<ConeIndexRecord>,
    pub gorenstein_index: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricReport {
    pub gorenstein_index: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub fingerprint: Fingerprint,
    pub representative: BTreeMap<String, i64>,
    pub duplicates: Vec<BTreeMap<String, i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectionRecord {
    pub parameters: BTreeMap<String, i64>,
    pub rejection: Rejection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SettingReport {
    pub setting: SettingId,
    pub considered: usize,
    pub accepted_count: usize,
    pub accepted: Vec<CandidateRecord>,
    pub groups: Vec<GroupRecord>,
    pub rejected: Vec<RejectionRecord>,
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub gorenstein_index: i64,
    pub settings: Vec<SettingReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxSearchReport {
    pub setting: SettingId,
    pub gorenstein_index: i64,
    pub bound: i64,
    pub tuples: Vec<BTreeMap<String, i64>>,
}

fn column_records(data: &ArrangementData) -> Vec<ColumnRecord> {
    data.columns()
        .iter()
        .enumerate()
        .map(|(k, v)| ColumnRecord { index: k, label: data.column_label(k), vector: int_strings(v) })
        .collect()
}

fn relation_text(data: &ArrangementData) -> Vec<String> {
    data.relations()
        .iter()
        .map(|rel| {
            let terms: Vec<String> = rel
                .blocks
                .iter()
                .zip(&rel.coefficients)
                .zip(&rel.exponents)
                .map(|((&block, coeff), exps)| {
                    let monomial: Vec<String> = data
                        .block_columns(block)
                        .zip(exps)
                        .map(|(k, e)| format!("T{}^{}", &data.column_label(k)[1..], e))
                        .collect();
                    format!("({})*{}", format_rational(coeff), monomial.join("*"))
                })
                .collect();
            terms.join(" + ")
        })
        .collect()
}

pub fn validation_report(doc: &InputDocument) -> Result<ValidationReport> {
    let violations = doc.to_data()?.validate();
    Ok(ValidationReport { valid: violations.is_empty(), violations })
}

pub fn info_report(doc: &InputDocument) -> Result<InfoReport> {
    let data = valid_data(doc)?;
    let check = data.is_fano()?;
    let dd = &check.degrees;
    let moving = data.moving_cone(dd)?;
    Ok(InfoReport {
        validation: ValidationReport { valid: true, violations: Vec::new() },
        columns: column_records(&data),
        relations: relation_text(&data),
        class_group_rank: dd.free_rank,
        class_group_torsion: int_strings(&dd.torsion),
        degrees: dd.degrees.iter().map(ToString::to_string).collect(),
        relation_degree: dd.relation_degree.to_string(),
        anticanonical: check.anticanonical.to_string(),
        moving_cone: moving.generators().iter().map(|g| int_strings(g)).collect(),
        fano: check.is_fano(),
        not_fano_reason: check.reason.clone(),
    })
}

fn cone_records(data: &ArrangementData, fan: &Fan) -> Result<Vec<ConeRecord>> {
    let trop = TropStructure::for_data(data);
    fan.max_cones()
        .iter()
        .zip(fan.cones())
        .map(|(cols, cone)| {
            Ok(ConeRecord { columns: cols.clone(), label: cone_label(data, cols), class: trop.classify_cone(cone)? })
        })
        .collect()
}

pub fn fan_report(doc: &InputDocument) -> Result<FanReport> {
    let loaded = load(doc)?;
    let matches_anticanonical = match loaded.fan_source {
        FanSource::Anticanonical => None,
        FanSource::Listed => {
            let check = loaded.data.is_fano()?;
            Some(check.fan.is_some_and(|ample| {
                let mut ours = loaded.fan.max_cones().to_vec();
                let mut theirs = ample.minimal.max_cones().to_vec();
                ours.sort();
                theirs.sort();
                ours == theirs
            }))
        }
    };
    Ok(FanReport {
        source: loaded.fan_source,
        rays: column_records(&loaded.data),
        max_cones: cone_records(&loaded.data, &loaded.fan)?,
        complete: loaded.fan.is_complete(),
        matches_anticanonical,
    })
}

pub fn trop_report(doc: &InputDocument) -> Result<TropReport> {
    let loaded = load(doc)?;
    let trop = TropStructure::for_data(&loaded.data);
    let leaves = trop
        .leaves()
        .iter()
        .map(|(set, cone)| LeafRecord {
            leaf: set.clone(),
            rays: cone.rays().iter().map(|g| int_strings(g)).collect(),
            lineality: cone.lineality().iter().map(|g| int_strings(g)).collect(),
        })
        .collect();
    let cones = cone_records(&loaded.data, &loaded.fan)?;
    let mut big_cones = Vec::new();
    for (cols, cone) in loaded.fan.max_cones().iter().zip(loaded.fan.cones()) {
        if trop.classify_cone(cone)?.is_big() {
            let check = trop.check_big_cone_lineality(cone)?;
            big_cones.push(BigConeRecord {
                columns: cols.clone(),
                interior_meets_lineality: check.interior_meets,
                lineality_intersection_dim: check.dim,
            });
        }
    }
    Ok(TropReport { leaves, cones, big_cones })
}

fn complex_of(doc: &InputDocument) -> Result<(Loaded, AnticanonicalComplex)> {
    let loaded = load(doc)?;
    let ac = build_complex(&loaded.data, &loaded.fan)?;
    Ok((loaded, ac))
}

pub fn complex_report(doc: &InputDocument) -> Result<ComplexReport> {
    let (loaded, ac) = complex_of(doc)?;
    let distances = boundary_distances(&ac)?;
    let cells = ac
        .cells
        .iter()
        .map(|c| CellRecord {
            parent: c.piece.parent,
            parent_label: cone_label(&loaded.data, &loaded.fan.max_cones()[c.piece.parent]),
            leaf: c.piece.leaf.clone(),
            block: c.support.block,
            u: rat_strings(&c.support.u),
            vertices: c.cell.vertices.iter().map(|v| rat_strings(v)).collect(),
            rays: c.cell.rays.iter().map(|g| int_strings(g)).collect(),
        })
        .collect();
    let boundary_cells = ac
        .boundary_cells
        .iter()
        .zip(&distances)
        .map(|(b, d)| BoundaryRecord {
            cell: b.cell,
            vertices: b.vertices.iter().map(|v| rat_strings(v)).collect(),
            rays: b.rays.iter().map(|g| int_strings(g)).collect(),
            distance: d.to_string(),
        })
        .collect();
    Ok(ComplexReport {
        vertices: ac.vertex_set.iter().map(|v| rat_strings(v)).collect(),
        cells,
        boundary_cells,
        gorenstein_index: gorenstein_index_via_complex(&ac)?.to_string(),
    })
}

pub fn gorenstein_report(doc: &InputDocument, method: Method) -> Result<GorensteinReport> {
    let loaded = load(doc)?;
    let via_complex = match method {
        Method::Cones => None,
        _ => Some(gorenstein_index_via_complex(&build_complex(&loaded.data, &loaded.fan)?)?),
    };
    let via_cones = match method {
        Method::Complex => None,
        _ => Some(gorenstein_index_via_cones(&loaded.data, &loaded.fan)?),
    };
    let cone_indices = via_cones
        .as_ref()
        .map(|ci| {
            loaded
                .fan
                .max_cones()
                .iter()
                .zip(&ci.per_cone)
                .map(|(cols, c)| ConeIndexRecord {
                    columns: cols.clone(),
                    label: cone_label(&loaded.data, cols),
                    cartier_index: c.to_string(),
                })
                .collect()
        })
        .unwrap_or_default();
    let index = match (&via_complex, &via_cones) {
        (Some(a), Some(b)) if *a != b.index => {
            return Err(Error::InvariantBreach(format!(
                "Gorenstein index via complex {a} differs from index via cones {}",
                b.index
            )))
        }
        (Some(a), _) => a.clone(),
        (None, Some(b)) => b.index.clone(),
        (None, None) => unreachable!("at least one method runs"),
    };
    Ok(GorensteinReport {
        method,
        via_complex: via_complex.map(|x| x.to_string()),
        via_cones: via_cones.map(|x| x.index.to_string()),
        cone_indices,
        gorenstein_index: index.to_string(),
    })
}

pub fn toric_report(doc: &ToricDocument) -> Result<ToricReport> {
    let dim = doc.rays.first().map_or(0, Vec::len);
    if dim == 0 || doc.rays.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidInput("rays must be non-empty vectors of equal length".into()));
    }
    let rays: Vec<Vec<BigInt>> = doc.rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let fan = Fan::new(dim, rays, doc.cones.clone())?;
    Ok(ToricReport { gorenstein_index: toric_gorenstein_index(&fan)?.to_string() })
}

fn settings_of(ids: &[u8]) -> Result<Vec<SettingId>> {
    if ids.is_empty() {
        return Ok(SettingId::ALL.to_vec());
    }
    let mut out: Vec<SettingId> = ids.iter().map(|&i| SettingId::new(i)).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Runs the classification; the report depends only on `index` and the
/// chosen families.
pub fn classify_report(index: i64, settings: &[u8], jobs: usize) -> Result<ClassifyReport> {
    let mut out = Vec::new();
    for id in settings_of(settings)? {
        let run = classify::classify_setting(id, index, jobs)?;
        let groups = classify::dedupe(&run.accepted)
            .into_iter()
            .map(|g| GroupRecord {
                fingerprint: g.fingerprint,
                representative: g.representative.tuple.named(),
                duplicates: g.duplicates.iter().map(|c| c.tuple.named()).collect(),
            })
            .collect();
        out.push(SettingReport {
            setting: id,
            considered: run.considered,
            accepted_count: run.accepted.len(),
            accepted: run.accepted.iter().map(CandidateRecord::from_candidate).collect(),
            groups,
            rejected: run
                .rejected
                .into_iter()
                .map(|(t, rejection)| RejectionRecord { parameters: t.named(), rejection })
                .collect(),
            skipped: run.skipped,
        });
    }
    Ok(ClassifyReport { gorenstein_index: index, settings: out })
}

pub fn box_search_report(setting: u8, index: i64, bound: i64) -> Result<BoxSearchReport> {
    let id = SettingId::new(setting)?;
    if !(1..=classify::MAX_INDEX).contains(&index) {
        return Err(Error::InvalidInput(format!("Gorenstein index must lie in 1..={}", classify::MAX_INDEX)));
    }
    if bound < 1 {
        return Err(Error::InvalidInput("bound must be positive".into()));
    }
    let tuples = classify::brute_force_box(id, index, bound).iter().map(|t| t.named()).collect();
    Ok(BoxSearchReport { setting: id, gorenstein_index: index, bound, tuples })
}

/// Rendered report and process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialise") + "\n"
}

/// Executes a parsed command line. Errors carry their exit code through
/// [`Error::exit_code`].
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let ok = |output: String| Ok(Outcome { output, code: 0 });
    match &cli.command {
        Command::Validate(f) => {
            let report = validation_report(&read_document(&f.file)?)?;
            let code = if report.valid { 0 } else { 1 };
            Ok(Outcome { output: pretty(&report), code })
        }
        Command::Info(f) => ok(pretty(&info_report(&read_document(&f.file)?)?)),
        Command::Fan(f) => ok(pretty(&fan_report(&read_document(&f.file)?)?)),
        Command::Trop(f) => ok(pretty(&trop_report(&read_document(&f.file)?)?)),
        Command::Acomplex(f) => ok(pretty(&complex_report(&read_document(&f.file)?)?)),
        Command::Gorenstein(g) => {
            if g.toric {
                let text = std::fs::read_to_string(&g.file)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", g.file.display())))?;
                let doc: ToricDocument =
                    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("parse error: {e}")))?;
                ok(pretty(&toric_report(&doc)?))
            } else {
                ok(pretty(&gorenstein_report(&read_document(&g.file)?, g.method)?))
            }
        }
        Command::Classify(c) => {
            let report = pretty(&classify_report(c.index, &c.setting, c.jobs)?);
            match &c.out {
                Some(path) => {
                    std::fs::write(path, &report)
                        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
                    ok(String::new())
                }
                None => ok(report),
            }
        }
        Command::Oracle { command: OracleCommand::BoxSearch { setting, index, bound } } => {
            ok(pretty(&box_search_report(*setting, *index, *bound)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-3/6").unwrap(), Rat::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(parse_rational("7").unwrap(), Rat::from_integer(BigInt::from(7)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&Rat::new(BigInt::from(4), BigInt::from(-6))), "-2/3");
    }

    #[test]
    fn settings_default_to_all() {
        assert_eq!(settings_of(&[]).unwrap().len(), 5);
        assert!(settings_of(&[6]).is_err());
    }
}
