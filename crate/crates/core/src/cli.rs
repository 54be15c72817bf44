//! Command-line front end.
//!
//! Exit codes: `0` success, `2` validation failure, `64` usage error,
//! `66` input file not found. Failures write a JSON error record to stderr.

use std::f64::consts::FRAC_PI_2;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{
    check_type_constraints, classify, enumerate_profiles, ClassifyInput, NamedFamily, ProfileStratum,
};
use crate::hopf_lift::{lift_shape_operator, project_spectrum, LiftedShapeData};
use crate::indefinite_linalg::{classify_jordan, RANK_TOL};
use crate::kahler_angle::{complement, kahler_decomposition, RealSubspace, SubspaceRecord};
use crate::numeric::seeded_rng;
use crate::solvable_model::{build_w, AnModel, AnPoint};
use crate::tube_geometry::{
    numeric_shape_data, standard_spectrum, tube_char_poly, tube_spectrum_at, HopfFamily, TubeSpec, TubeSpectrum,
    SPECTRUM_TOL,
};
use crate::verify::{verify_suites, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Example {
    TubeChk,
    TubeRhn,
    Horosphere,
    Lohnherr,
    BerndtBrueck,
}

#[derive(Debug, Parser)]
#[command(
    name = "isoparam",
    version,
    about = "Tubes, Hopf lifts and congruence classes of isoparametric real hypersurfaces of CH^n"
)]
pub struct Cli {
    /// Constant holomorphic sectional curvature c < 0.
    #[arg(long, global = true, default_value_t = -4.0, allow_negative_numbers = true)]
    pub curvature: f64,
    #[arg(
        long,
        global = true,
        env = "ISOPARAM_TOL",
        default_value_t = 1e-9,
        allow_negative_numbers = true
    )]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Defaults to `table` for `spectrum` and `json` elsewhere.
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Principal curvatures of a named family or of a tube around W_w.
    Spectrum(InputArgs),
    /// Case of the classification with homogeneity flags.
    Classify(InputArgs),
    /// Lorentzian lift of the shape operator, its normal form and projection.
    Lift(InputArgs),
    /// Strata of Kähler profiles of k-dimensional subspaces of C^{n-1}.
    Moduli {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Randomized invariant suites.
    Verify {
        /// Comma-separated suite names, or `all`; an empty value selects none.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Points of a horocycle p·Exp(tU) with U ∈ w, and their distance from S_w.
    Horocycle {
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, value_enum, required_unless_present = "subspace", conflicts_with = "subspace")]
    pub example: Option<Example>,
    /// JSON file `{"ambient_cdim": m, "basis": [[re1, im1, ...], ...]}` spanning w ⊂ C^m.
    #[arg(long)]
    pub subspace: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// Kähler angle: of w^⊥ for berndt-brueck, of the chosen normal for subspace inputs.
    #[arg(long)]
    pub angle: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub curvature_c: f64,
    pub tol: f64,
    pub seed: u64,
    pub output_format: OutputFormat,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    NotFound(PathBuf),
    Validation { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::NotFound(_) => EXIT_NO_INPUT,
            CliError::Validation { .. } => EXIT_VALIDATION,
        }
    }

    pub fn record(&self) -> Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::NotFound(p) => ("file_not_found", format!("cannot open {}", p.display())),
            CliError::Validation { kind, message } => (*kind, message.clone()),
        };
        json!({ "error": { "kind": kind, "exit_code": self.exit_code(), "message": message } })
    }

    fn validation(kind: &'static str, message: impl ToString) -> Self {
        CliError::Validation {
            kind,
            message: message.to_string(),
        }
    }
}

macro_rules! validation_from {
    ($($ty:ty => $kind:literal),* $(,)?) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::validation($kind, e)
            }
        }
    )*};
}

validation_from! {
    crate::classifier::ClassifierError => "classifier",
    crate::hopf_lift::LiftError => "hopf_lift",
    crate::indefinite_linalg::LinalgError => "indefinite_linalg",
    crate::kahler_angle::KahlerError => "kahler_angle",
    crate::solvable_model::ModelError => "solvable_model",
    crate::tube_geometry::TubeError => "tube_geometry",
}

/// Runs the CLI on `argv` (program name first), writing the report to `out`
/// and error records to `err`; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let error = CliError::Usage(e.render().to_string().trim_end().to_string());
                    let _ = writeln!(err, "{}", error.record());
                    error.exit_code()
                }
            };
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let _ = out.write_all(report.as_bytes());
            code
        }
        Err(error) => {
            let _ = writeln!(err, "{}", error.record());
            error.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let default_format = match cli.command {
        Command::Spectrum(_) => OutputFormat::Table,
        _ => OutputFormat::Json,
    };
    let config = RunConfig {
        curvature_c: cli.curvature,
        tol: cli.tol,
        seed: cli.seed,
        output_format: cli.output.unwrap_or(default_format),
    };
    if !(config.curvature_c < 0.0 && config.curvature_c.is_finite()) {
        return Err(CliError::validation(
            "config",
            format!("curvature must be negative, got {}", config.curvature_c),
        ));
    }
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        return Err(CliError::validation(
            "config",
            format!("tolerance must be positive, got {}", config.tol),
        ));
    }
    let (report, code) = match &cli.command {
        Command::Spectrum(args) => (spectrum(&config, args)?, EXIT_OK),
        Command::Classify(args) => (classify_command(&config, args)?, EXIT_OK),
        Command::Lift(args) => (lift(&config, args)?, EXIT_OK),
        Command::Moduli { n, k } => (moduli(*n, *k)?, EXIT_OK),
        Command::Verify { suite } => verify(&config, suite)?,
        Command::Horocycle { subspace, n } => (horocycle(&config, subspace, *n)?, EXIT_OK),
    };
    Ok((report.render(config.output_format)?, code))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits round-trip every double.
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn table(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// One report in all three formats: a JSON document plus a flat table.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::validation("output", e))?;
                s.push('\n');
                Ok(s)
            }
            OutputFormat::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::validation("output", e);
                writer.write_record(&self.header).map_err(io)?;
                for row in &self.rows {
                    writer.write_record(row.iter().map(Cell::csv)).map_err(io)?;
                }
                let bytes = writer.into_inner().map_err(|e| CliError::validation("output", e))?;
                String::from_utf8(bytes).map_err(|e| CliError::validation("output", e))
            }
            OutputFormat::Table => {
                let cells: Vec<Vec<String>> = std::iter::once(self.header.iter().map(|h| h.to_string()).collect())
                    .chain(self.rows.iter().map(|r| r.iter().map(Cell::table).collect()))
                    .collect();
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|j| {
                        cells
                            .iter()
                            .map(|r| r.get(j).map_or(0, |c| c.chars().count()))
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let mut s = String::new();
                for row in &cells {
                    let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    s.push_str(line.join("  ").trim_end());
                    s.push('\n');
                }
                Ok(s)
            }
        }
    }
}

fn read_subspace(path: &Path) -> Result<RealSubspace, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::NotFound(path.to_path_buf()),
        _ => CliError::validation("input", format!("{}: {e}", path.display())),
    })?;
    let record: SubspaceRecord =
        serde_json::from_str(&text).map_err(|e| CliError::validation("input", format!("{}: {e}", path.display())))?;
    Ok(RealSubspace::from_record(&record)?)
}

/// `n` from the flag or from the ambient `C^{n−1}` of `w`, which must agree.
fn resolve_n(w: &RealSubspace, n: Option<usize>) -> Result<usize, CliError> {
    let implied = w.ambient_cdim() + 1;
    match n {
        Some(n) if n != implied => Err(CliError::validation(
            "input",
            format!(
                "--n {n} does not match w ⊂ C^{}, which needs n = {implied}",
                w.ambient_cdim()
            ),
        )),
        _ => Ok(implied),
    }
}

fn require<T>(value: Option<T>, flag: &str, example: Example) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --example {}", example_name(example))))
}

fn example_name(e: Example) -> &'static str {
    match e {
        Example::TubeChk => "tube-chk",
        Example::TubeRhn => "tube-rhn",
        Example::Horosphere => "horosphere",
        Example::Lohnherr => "lohnherr",
        Example::BerndtBrueck => "berndt-brueck",
    }
}

fn hopf_family(example: Example, args: &InputArgs) -> Option<HopfFamily> {
    match example {
        Example::TubeChk => Some(HopfFamily::TubeChk { k: args.k.unwrap_or(0) }),
        Example::TubeRhn => Some(HopfFamily::TubeRhn),
        Example::Horosphere => Some(HopfFamily::Horosphere),
        _ => None,
    }
}

fn spectrum_json(spectrum: &TubeSpectrum) -> Value {
    json!({ "entries": spectrum.entries, "hopf_value": spectrum.hopf_value, "mean_curvature": spectrum.trace() })
}

fn spectrum_rows(angle: Option<f64>, spectrum: &TubeSpectrum, rows: &mut Vec<Vec<Cell>>) {
    let scale = 1.0 + spectrum.entries.iter().fold(0.0f64, |m, e| m.max(e.value.abs()));
    for e in &spectrum.entries {
        let hopf = spectrum
            .hopf_value
            .is_some_and(|h| (h - e.value).abs() <= SPECTRUM_TOL * scale);
        rows.push(vec![
            angle.into(),
            e.value.into(),
            e.alg_mult.into(),
            e.geo_mult.into(),
            if hopf { "*".into() } else { Cell::Empty },
        ]);
    }
}

/// Principal normals of `w^⊥`, one per Kähler angle block, largest angle first.
fn principal_normals(spec: &TubeSpec) -> Vec<(f64, crate::solvable_model::AnVector)> {
    let model = spec.sub.model();
    kahler_decomposition(spec.sub.w_perp())
        .blocks
        .iter()
        .map(|b| (b.angle, model.root(&b.basis.column(0).clone_owned())))
        .collect()
}

fn tube_from_file(config: &RunConfig, args: &InputArgs, path: &Path) -> Result<(TubeSpec, RealSubspace), CliError> {
    let w = read_subspace(path)?;
    let n = resolve_n(&w, args.n)?;
    let r = args.radius.unwrap_or(1.0);
    let model = AnModel::new(n, config.curvature_c)?;
    let spec = TubeSpec::new(build_w(&model, &w)?, r)?;
    Ok((spec, w))
}

fn spectrum(config: &RunConfig, args: &InputArgs) -> Result<Report, CliError> {
    let c = config.curvature_c;
    let r = args.radius.unwrap_or(1.0);
    let header = vec!["normal_angle", "value", "alg_mult", "geo_mult", "hopf"];
    let mut rows = Vec::new();
    let json = if let Some(path) = &args.subspace {
        let (spec, w) = tube_from_file(config, args, path)?;
        let mut spectra = Vec::new();
        for (angle, xi) in principal_normals(&spec) {
            let s = tube_spectrum_at(&spec, &xi)?;
            spectrum_rows(Some(angle), &s, &mut rows);
            spectra.push(json!({ "normal_angle": angle, "spectrum": spectrum_json(&s) }));
        }
        json!({ "input": { "subspace": w.to_record(), "n": spec.n(), "k": spec.sub.codim(), "r": r }, "c": c, "spectra": spectra })
    } else {
        let example = args.example.expect("clap requires --example or --subspace");
        let n = require(args.n, "n", example)?;
        let (s, angle, k) = match hopf_family(example, args) {
            Some(family) => (standard_spectrum(family, n, r, c)?, None, args.k),
            None => {
                let (k, phi) = constant_angle_parameters(example, args)?;
                let roots = tube_char_poly(n, k, r, phi, c)?.roots();
                (TubeSpectrum::from_values(roots, None), Some(phi), Some(k))
            }
        };
        spectrum_rows(angle, &s, &mut rows);
        json!({
            "input": { "example": example, "n": n, "k": k, "r": r, "angle": angle },
            "c": c,
            "spectra": [{ "normal_angle": angle, "spectrum": spectrum_json(&s) }],
        })
    };
    Ok(Report { json, header, rows })
}

fn constant_angle_parameters(example: Example, args: &InputArgs) -> Result<(usize, f64), CliError> {
    match example {
        Example::Lohnherr => Ok((1, FRAC_PI_2)),
        _ => Ok((require(args.k, "k", example)?, require(args.angle, "angle", example)?)),
    }
}

fn classify_command(config: &RunConfig, args: &InputArgs) -> Result<Report, CliError> {
    let r = args.radius.unwrap_or(1.0);
    let input = if let Some(path) = &args.subspace {
        let w = read_subspace(path)?;
        let n = resolve_n(&w, args.n)?;
        ClassifyInput::Subspace { w, n, r }
    } else {
        let example = args.example.expect("clap requires --example or --subspace");
        let n = require(args.n, "n", example)?;
        let family = match example {
            Example::TubeChk => NamedFamily::TubeChk { k: args.k.unwrap_or(0) },
            Example::TubeRhn => NamedFamily::TubeRhn,
            Example::Horosphere => NamedFamily::Horosphere,
            Example::Lohnherr => NamedFamily::Lohnherr,
            Example::BerndtBrueck => {
                let (k, phi) = constant_angle_parameters(example, args)?;
                NamedFamily::BerndtBrueck { k, phi }
            }
        };
        ClassifyInput::Family { family, n, r }
    };
    let report = classify(&input, config.curvature_c)?;
    let json = serde_json::to_value(&report).map_err(|e| CliError::validation("output", e))?;
    let invariant = match &json["invariant"] {
        Value::String(tag) => tag.clone(),
        other => other.to_string(),
    };
    let rows = vec![
        vec!["case".into(), report.case.numeral().into()],
        vec!["homogeneous".into(), report.homogeneous.to_string().into()],
        vec![
            "constant_principal_curvatures".into(),
            report.constant_principal_curvatures.to_string().into(),
        ],
        vec!["invariant".into(), invariant.into()],
        vec!["n".into(), report.n.into()],
        vec!["k".into(), report.k.into()],
        vec!["r".into(), report.r.into()],
        vec!["phi".into(), report.phi.into()],
    ];
    Ok(Report {
        json,
        header: vec!["field", "value"],
        rows,
    })
}

fn lift(config: &RunConfig, args: &InputArgs) -> Result<Report, CliError> {
    let c = config.curvature_c;
    let r = args.radius.unwrap_or(1.0);
    let (data, input) = if let Some(path) = &args.subspace {
        let (spec, w) = tube_from_file(config, args, path)?;
        let normals = principal_normals(&spec);
        let (angle, xi) = match args.angle {
            Some(target) => normals
                .into_iter()
                .min_by(|a, b| (a.0 - target).abs().total_cmp(&(b.0 - target).abs()))
                .expect("w^⊥ is nonzero"),
            None => normals.into_iter().next().expect("w^⊥ is nonzero"),
        };
        let data = LiftedShapeData::from_shape(&numeric_shape_data(&spec, &xi)?, c)?;
        (
            data,
            json!({ "subspace": w.to_record(), "n": spec.n(), "k": spec.sub.codim(), "r": r, "normal_angle": angle }),
        )
    } else {
        let example = args.example.expect("clap requires --example or --subspace");
        let n = require(args.n, "n", example)?;
        let family = hopf_family(example, args).ok_or_else(|| {
            CliError::Usage(format!(
                "--example {} is not Hopf; lift it through --subspace with its w",
                example_name(example)
            ))
        })?;
        let data = LiftedShapeData::hopf(standard_spectrum(family, n, r, c)?, c)?;
        (data, json!({ "example": example, "n": n, "k": args.k, "r": r }))
    };
    let op = lift_shape_operator(&data)?;
    let cls = classify_jordan(&op, RANK_TOL)?;
    let constraints = check_type_constraints(&cls, c, config.tol);
    let projection = project_spectrum(&cls, c)?;
    let matrix: Vec<Vec<f64>> = op
        .matrix()
        .row_iter()
        .map(|row| row.iter().copied().collect())
        .collect();
    let json = json!({
        "input": input,
        "c": c,
        "b": data.b,
        "lifted_matrix": matrix,
        "jordan": {
            "type": cls.jtype,
            "real_eigenvalues": cls.real_eigs,
            "complex_pair": cls.complex_pair.map(|(a, b)| [a, b]),
            "epsilon": cls.epsilon,
        },
        "constraints": constraints,
        "projection": projection,
    });
    let mut rows: Vec<Vec<Cell>> = vec![vec![
        "jordan_type".into(),
        cls.jtype.to_string().into(),
        Cell::Empty,
        Cell::Empty,
    ]];
    for e in &cls.real_eigs {
        rows.push(vec![
            "eigenvalue".into(),
            e.value.into(),
            e.alg_mult.into(),
            e.geo_mult.into(),
        ]);
    }
    if let Some((a, b)) = cls.complex_pair {
        rows.push(vec!["complex_pair_re".into(), a.into(), 1.into(), 1.into()]);
        rows.push(vec!["complex_pair_im".into(), b.into(), 1.into(), 1.into()]);
    }
    for check in &constraints.checks {
        rows.push(vec![
            format!("constraint:{}", check.name).into(),
            check.residual.into(),
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    match projection.spectrum() {
        Some(s) => {
            for e in &s.entries {
                rows.push(vec![
                    "projected".into(),
                    e.value.into(),
                    e.alg_mult.into(),
                    e.geo_mult.into(),
                ]);
            }
            rows.push(vec![
                "projected_hopf".into(),
                s.hopf_value.into(),
                Cell::Empty,
                Cell::Empty,
            ]);
        }
        None => {
            if let crate::hopf_lift::Projection::TubeAroundW { lambda, radius } = projection {
                rows.push(vec!["tube_lambda".into(), lambda.into(), Cell::Empty, Cell::Empty]);
                rows.push(vec!["tube_radius".into(), radius.into(), Cell::Empty, Cell::Empty]);
            }
        }
    }
    Ok(Report {
        json,
        header: vec!["quantity", "value", "alg_mult", "geo_mult"],
        rows,
    })
}

/// Case of the classification reached by tubes around `W_w` with `w^⊥` in the stratum.
fn stratum_case(s: &ProfileStratum, k: usize) -> &'static str {
    let blocks = (s.complex_dim > 0) as usize + s.free_blocks.len() + (s.totally_real_dim > 0) as usize;
    match blocks {
        0 => "none",
        _ if s.complex_dim == k => "i",
        _ if k == 1 => "iv",
        1 => "v",
        _ => "vi",
    }
}

fn moduli(n: usize, k: usize) -> Result<Report, CliError> {
    let strata = enumerate_profiles(n, k)?;
    let mut rows = Vec::new();
    let entries: Vec<Value> = strata
        .iter()
        .map(|s| {
            let case = stratum_case(s, k);
            let blocks: Vec<String> = s.free_blocks.iter().map(usize::to_string).collect();
            rows.push(vec![
                s.complex_dim.into(),
                blocks.join(" ").into(),
                s.totally_real_dim.into(),
                s.free_parameters().into(),
                case.into(),
            ]);
            json!({
                "complex_dim": s.complex_dim,
                "free_blocks": s.free_blocks,
                "totally_real_dim": s.totally_real_dim,
                "free_parameters": s.free_parameters(),
                "complex_span": s.complex_span(),
                "case": case,
            })
        })
        .collect();
    let json = json!({ "n": n, "k": k, "strata": entries });
    Ok(Report {
        json,
        header: vec![
            "complex_dim",
            "free_blocks",
            "totally_real_dim",
            "free_parameters",
            "case",
        ],
        rows,
    })
}

fn parse_suites(spec: &str) -> Result<Vec<Suite>, CliError> {
    let mut out = Vec::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(name.parse().map_err(CliError::Usage)?);
        }
    }
    Ok(out)
}

fn verify(config: &RunConfig, suite: &str) -> Result<(Report, i32), CliError> {
    let suites = parse_suites(suite)?;
    let summary = verify_suites(
        &VerifyConfig {
            curvature: config.curvature_c,
            tol: config.tol,
            seed: config.seed,
        },
        &suites,
    );
    let mut rows = Vec::new();
    for s in &summary.suites {
        for inv in &s.invariants {
            rows.push(vec![
                s.suite.name().into(),
                inv.invariant.into(),
                inv.checks.into(),
                inv.passed.into(),
                inv.max_residual.into(),
                inv.bound.into(),
            ]);
        }
    }
    let json = serde_json::to_value(&summary).map_err(|e| CliError::validation("output", e))?;
    let code = if summary.passed { EXIT_OK } else { EXIT_VALIDATION };
    Ok((
        Report {
            json,
            header: vec!["suite", "invariant", "checks", "passed", "max_residual", "bound"],
            rows,
        },
        code,
    ))
}

fn horocycle(config: &RunConfig, path: &Path, n: Option<usize>) -> Result<Report, CliError> {
    use rand::Rng;
    let w = read_subspace(path)?;
    let n = resolve_n(&w, n)?;
    let model = AnModel::new(n, config.curvature_c)?;
    let sub = build_w(&model, &w)?;
    if w.dim() == 0 {
        return Err(CliError::validation(
            "input",
            "w is zero; horocycles need a direction U ∈ w",
        ));
    }
    let mut rng = seeded_rng(config.seed);
    let coeffs = nalgebra::DVector::from_fn(w.dim(), |_, _| rng.gen_range(-1.0..1.0));
    let direction = w.basis() * coeffs;
    let u = model.root(&(&direction / direction.norm()));
    // A seeded base point Exp(X) of S_w, X ∈ s_w.
    let mut x = crate::solvable_model::AnVector::zero(n);
    for t in sub.tangent_basis() {
        x = &x + &(&t * rng.gen_range(-1.0..1.0));
    }
    let origin = AnPoint(x);
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for i in 0..=8 {
        let t = -2.0 + 0.5 * i as f64;
        let p = model.horocycle_point(&origin, &u, t)?;
        let residual = sub.membership_residual(&p);
        let inside = residual <= config.tol;
        rows.push(vec![
            t.into(),
            p.0.a.into(),
            p.0.x.into(),
            residual.into(),
            inside.to_string().into(),
        ]);
        points.push(json!({ "t": t, "point": p.0, "membership_residual": residual, "in_w": inside }));
    }
    let json = json!({
        "n": n,
        "c": config.curvature_c,
        "w": w.to_record(),
        "k": complement(&w).dim(),
        "base_point": origin.0,
        "direction": u,
        "points": points,
    });
    Ok(Report {
        json,
        header: vec!["t", "a", "x", "membership_residual", "in_w"],
        rows,
    })
}
