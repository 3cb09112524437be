//! Command-line driver: builds braidings and doubles from flags or table files,
//! runs verification suites and writes JSON reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::braiding::spectral::{baxterize, Flavor as Spectral};
use crate::braiding::{Braiding, BraidingTable, Kind, Series};
use crate::currents::{CurrentDouble, CurrentRelations};
use crate::error::{Error, Result};
use crate::fock::{braided_lie, make_double, Family, Flavor, FockDouble};
use crate::quadalgebra::{classical_dims, make_algebra, mu_line_report, AlgebraKind};
use crate::report::{gating, report_only, CheckRecord, Verdict};
use crate::scalar::{parse_rational, Scalar};
use crate::tensor::{Matrix, Space};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "braided-fock",
    version,
    about = "Exact checks for braidings and quantum Fock doubles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        config: RunConfig,
    },
    /// Dimensions of the graded components of the four quadratic algebras.
    Poincare {
        #[command(flatten)]
        config: RunConfig,
    },
    /// Matrices of `l_i^j` on a homogeneous component of the creation algebra.
    Repr {
        #[command(flatten)]
        config: RunConfig,
    },
    /// Serialize `R`, `Ψ`, `B`, `C` of the selected braiding.
    Export {
        #[command(flatten)]
        config: RunConfig,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Braiding,
    Algebras,
    Double,
    Lie,
    Spectral,
    Currents,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlavorArg {
    Bosonic,
    Fermionic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Hecke,
    BmwOrthogonal,
    BmwSymplectic,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RunConfig {
    /// Builtin braiding: flip, std-hecke, bmw-orth, bmw-symp, superflip-M-N.
    #[arg(long, default_value = "std-hecke")]
    pub braiding: String,
    /// Braiding table (JSON); overrides --braiding.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// `generic` or a rational value such as 3/2.
    #[arg(long, default_value = "generic", allow_hyphen_values = true)]
    pub q: String,
    /// Double flavor; defaults to every flavor admissible for the family.
    #[arg(long, value_enum)]
    pub flavor: Option<FlavorArg>,
    /// Double family; inferred from the braiding when omitted.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    /// Mode window M of the current checks.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
    pub window: i64,
    /// State degree for current checks, component degree for `repr`.
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub report_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").into(),
            report_version: REPORT_VERSION,
            command: command.into(),
            config: config.clone(),
            records: Vec::new(),
            data: None,
            error: None,
        }
    }

    /// `0` iff no gating check failed and no error surfaced.
    pub fn exit_code(&self) -> i32 {
        let failed = self.records.iter().any(|r| r.verdict == Verdict::Fail);
        i32::from(failed || self.error.is_some())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A matrix with 1-based row/column metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixExport {
    pub rows: usize,
    pub cols: usize,
    /// How a 1-based row or column number maps to multi-indices.
    pub index: String,
    pub entries: Vec<Vec<Scalar>>,
}

impl MatrixExport {
    pub fn new(m: &Matrix, index: impl Into<String>) -> Self {
        MatrixExport {
            rows: m.rows(),
            cols: m.cols(),
            index: index.into(),
            entries: (0..m.rows()).map(|r| m.row(r).to_vec()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.entries.clone())
    }
}

/// `R`, `Ψ`, `B`, `C` of one braiding; reloading the table must reproduce the rest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportBundle {
    pub table: BraidingTable,
    pub psi: MatrixExport,
    pub b: MatrixExport,
    pub c: MatrixExport,
}

pub fn export_bundle(b: &Braiding) -> Result<ExportBundle> {
    let skew = b.skew_inverse()?;
    let pair = "(i,j) -> (i-1)*N + j";
    Ok(ExportBundle {
        table: b.to_table(),
        psi: MatrixExport::new(skew.psi.matrix(), pair),
        b: MatrixExport::new(&skew.b, "i"),
        c: MatrixExport::new(&skew.c, "i"),
    })
}

/// Reloads an export and recomputes `Ψ`, `B`, `C` from its table.
pub fn load_export(json: &str) -> Result<(Braiding, bool)> {
    let bundle: ExportBundle =
        serde_json::from_str(json).map_err(|e| Error::InvalidTable(e.to_string()))?;
    let b = Braiding::from_table(&bundle.table)?;
    let fresh = export_bundle(&b)?;
    let same = fresh.psi == bundle.psi && fresh.b == bundle.b && fresh.c == bundle.c;
    Ok((b, same))
}

pub fn load_braiding(config: &RunConfig) -> Result<Braiding> {
    let b = match &config.table {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let is_bundle = serde_json::from_str::<Value>(&text)
                .map(|v| v.get("table").is_some())
                .unwrap_or(false);
            if is_bundle {
                let (b, consistent) = load_export(&text)?;
                if !consistent {
                    return Err(Error::InvalidTable(format!(
                        "{}: stored Psi, B, C disagree with R",
                        path.display()
                    )));
                }
                b
            } else {
                Braiding::load_table(path)?
            }
        }
        None => Braiding::builtin(&config.braiding, config.n as usize)?,
    };
    match config.q.trim() {
        "generic" => Ok(b),
        lit => {
            let q0 = parse_rational(lit)
                .ok_or_else(|| Error::Unsupported(format!("cannot parse q = {lit}")))?;
            b.specialize(&q0)
        }
    }
}

fn default_family(b: &Braiding) -> Family {
    match b.series() {
        Some(Series::Orthogonal) => Family::BmwOrthogonal,
        Some(Series::Symplectic) => Family::BmwSymplectic,
        None => Family::Hecke,
    }
}

/// The doubles selected by the config.
pub fn doubles(b: &Braiding, config: &RunConfig) -> Result<Vec<FockDouble>> {
    let family = match config.family {
        Some(FamilyArg::Hecke) => Family::Hecke,
        Some(FamilyArg::BmwOrthogonal) => Family::BmwOrthogonal,
        Some(FamilyArg::BmwSymplectic) => Family::BmwSymplectic,
        None => default_family(b),
    };
    let flavors = match (config.flavor, family) {
        (Some(FlavorArg::Bosonic), _) => vec![Flavor::Bosonic],
        (Some(FlavorArg::Fermionic), _) => vec![Flavor::Fermionic],
        (None, Family::Hecke) => vec![Flavor::Bosonic, Flavor::Fermionic],
        (None, Family::BmwOrthogonal) => vec![Flavor::Bosonic],
        (None, Family::BmwSymplectic) => vec![Flavor::Fermionic],
    };
    flavors
        .into_iter()
        .map(|f| make_double(b, f, family, false))
        .collect()
}

/// Whether the braiding is a classical deformation whose algebras have binomial dimensions.
fn classical_expected(b: &Braiding) -> bool {
    b.label().starts_with("std-hecke-") || b.label().starts_with("flip-")
}

fn poincare_table(b: &Braiding, kmax: usize) -> Result<(Value, Vec<CheckRecord>)> {
    let n = b.dim();
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for kind in [AlgebraKind::Sym, AlgebraKind::Lambda] {
        for space in [Space::V, Space::Dual] {
            let alg = make_algebra(b, kind, space)?;
            let dims = alg.poincare(kmax);
            let classical = classical_dims(n, kind, kmax);
            let side = if space == Space::V { "v" } else { "dual" };
            let id = format!(
                "algebras.{}.{}.{side}.poincare",
                b.label(),
                format!("{kind:?}").to_lowercase()
            );
            let detail = format!("dims {dims:?}, classical {classical:?}");
            let matches = dims == classical;
            let rec = if classical_expected(b) {
                gating(&id, "classical Poincaré series", || {
                    if matches {
                        Ok(())
                    } else {
                        Err(detail.clone())
                    }
                })
                .with_detail(detail)
            } else {
                report_only(&id, "classical Poincaré series", || {
                    format!("{detail}, {}", if matches { "matches" } else { "differs" })
                })
            };
            records.push(rec);
            rows.push(json!({
                "algebra": format!("{kind:?}").to_lowercase(),
                "space": side,
                "dims": dims,
                "classical": classical,
            }));
        }
    }
    if let Some(line) = mu_line_report(b)? {
        records.push(report_only(
            &format!("algebras.{}.mu-line", b.label()),
            "mu-eigenspace in degree two",
            || line,
        ));
    }
    Ok((json!(rows), records))
}

fn run_suite(b: &Braiding, config: &RunConfig, suite: Suite) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Braiding {
        out.extend(b.check_suite());
    }
    if all || suite == Suite::Algebras {
        out.extend(poincare_table(b, config.kmax)?.1);
    }
    if all || suite == Suite::Double {
        for d in doubles(b, config)? {
            out.extend(d.verify_compatibility());
            out.extend(d.verify_l_relations());
            out.extend(d.verify_representations(3));
            out.push(d.left_dual_variant());
        }
    }
    if (all || suite == Suite::Lie) && b.kind() != Kind::Bmw {
        out.extend(braided_lie(b)?.check_suite());
    }
    let spectral = match b.kind() {
        Kind::Involutive => Some(Spectral::Rational),
        Kind::Hecke => Some(Spectral::Trigonometric),
        Kind::Bmw => None,
    };
    if let Some(flavor) = spectral {
        let cb = baxterize(b, flavor)?;
        if all || suite == Suite::Spectral {
            out.extend(cb.check_suite());
        }
        if all || suite == Suite::Currents {
            // intermediate creation modes reach |r| + |l| + |offset| + 1
            let cd = CurrentDouble::new(&cb, 2 * config.window + 2, config.degree.max(1))?;
            out.extend(cd.current_relation_check(CurrentRelations::BSide));
            out.extend(cd.current_relation_check(CurrentRelations::ASide));
            out.extend(cd.current_relation_check(CurrentRelations::HalfCurrents));
            out.extend(cd.verify_yang(config.window, config.degree)?.records);
        }
    }
    Ok(out)
}

fn repr_data(b: &Braiding, config: &RunConfig) -> Result<(Value, Vec<CheckRecord>)> {
    let k = config.degree;
    let mut data = Vec::new();
    let mut records = Vec::new();
    for d in doubles(b, config)? {
        let comp = d.b_algebra().component(k);
        let n = b.dim();
        let one = d.fock_representation(1)?;
        let basis1 = d.b_algebra().component(1);
        let id = format!("repr.{}.{:?}.degree-one", b.label(), d.flavor()).to_lowercase();
        records.push(gating(&id, "action of l_i^j on generators", || {
            for i in 0..n {
                for j in 0..n {
                    for kk in 0..n {
                        let row = basis1.index_of(&[kk]).ok_or("missing generator")?;
                        let col = basis1.index_of(&[i]).ok_or("missing generator")?;
                        for s in 0..basis1.dim() {
                            let want = if s == col {
                                d.pairing()[(kk, j)].clone()
                            } else {
                                Scalar::zero()
                            };
                            if one[i][j][(row, s)] != want {
                                return Err(format!("l_{}^{} on x_{}", i + 1, j + 1, kk + 1));
                            }
                        }
                    }
                }
            }
            Ok(())
        }));
        let reps = match d.fock_representation(k) {
            Err(Error::EmptyComponent(_)) => {
                let id = format!("repr.{}.{:?}.degree-{k}", b.label(), d.flavor()).to_lowercase();
                records.push(report_only(&id, "component dimension", || {
                    "component is zero".to_string()
                }));
                continue;
            }
            r => r?,
        };
        let mut mats = Vec::new();
        for (i, row) in reps.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                mats.push(json!({
                    "i": i + 1,
                    "j": j + 1,
                    "matrix": MatrixExport::new(m, "basis position, 1-based; row = input"),
                }));
            }
        }
        data.push(json!({
            "flavor": d.flavor(),
            "degree": k,
            "basis": comp.basis.iter().map(|w| w.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "l": mats,
        }));
    }
    Ok((json!(data), records))
}

fn sort_records(r: &mut Report) {
    r.records.sort_by(|a, b| a.id.cmp(&b.id));
}

/// Executes one subcommand. Errors are recorded in the report, never panicked.
pub fn execute(command: &Command) -> Report {
    let (name, config) = match command {
        Command::Verify { config } => ("verify", config),
        Command::Poincare { config } => ("poincare", config),
        Command::Repr { config } => ("repr", config),
        Command::Export { config } => ("export", config),
    };
    let mut report = Report::new(name, config);
    let res = load_braiding(config).and_then(|b| match command {
        Command::Verify { .. } => {
            report.records = run_suite(&b, config, config.suite)?;
            Ok(())
        }
        Command::Poincare { .. } => {
            let (table, recs) = poincare_table(&b, config.kmax)?;
            report.records = recs;
            report.data = Some(table);
            Ok(())
        }
        Command::Repr { .. } => {
            let (data, recs) = repr_data(&b, config)?;
            report.records = recs;
            report.data = Some(data);
            Ok(())
        }
        Command::Export { .. } => {
            let bundle = export_bundle(&b)?;
            report.data = Some(serde_json::to_value(&bundle).expect("bundle serializes"));
            Ok(())
        }
    });
    if let Err(e) = res {
        report.error = Some(e.to_string());
    }
    sort_records(&mut report);
    report
}

/// Runs the CLI on parsed arguments, writes the report and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let report = execute(&cli.command);
    let config = &report.config;
    let text = match (&cli.command, &report.data) {
        // export writes the bare bundle so it can be reloaded directly
        (Command::Export { .. }, Some(data)) if report.error.is_none() => {
            serde_json::to_string_pretty(data).expect("bundle serializes")
        }
        _ => report.to_json(),
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => println!("{text}"),
    }
    for r in &report.records {
        if r.verdict == Verdict::Fail {
            eprintln!(
                "FAIL {} ({}): {}",
                r.id,
                r.anchor,
                r.witness.as_deref().unwrap_or("")
            );
        }
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    report.exit_code()
}
