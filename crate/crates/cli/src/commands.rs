use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use dgq_core::cy::cy_check;
use dgq_core::dg::check_grading_with;
use dgq_core::ginzburg::{ginzburg_model, restrict_potential, Superpotential};
use dgq_core::homology::{cohomology_dims, compare_h0, ensure_adams_graded, identity_map, Limits};
use dgq_core::io::CycleRepr;
use dgq_core::koszul::subsets::MAX_VARIABLES;
use dgq_core::koszul::{ModelFile, Provenance};
use dgq_core::{
    check_d_squared, delete_vertex, mckay_model, polynomial_model, CheckReport, GradedQuiver, McKayData, MinimalModel,
    PresentedAlgebra,
};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::output::{self, Sink};
use crate::{Check, Cli, Command, Format};

#[derive(Debug)]
pub enum CliError {
    Core(dgq_core::Error),
    Io(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(dgq_core::Error::ResourceCap { .. }) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Json(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<dgq_core::Error> for CliError {
    fn from(e: dgq_core::Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.to_path_buf(), e))
}

fn read_model(path: &Path) -> Result<MinimalModel> {
    let file: ModelFile = read_json(path)?;
    Ok(MinimalModel::try_from(file)?)
}

fn run_checks(model: &MinimalModel, checks: &[Check]) -> Result<Vec<CheckReport>> {
    let d = &model.differential;
    let adams = model.provenance != Provenance::Ginzburg || ensure_adams_graded(d).is_ok();
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for &c in checks {
        if seen.contains(&c) {
            continue;
        }
        seen.push(c);
        out.push(match c {
            Check::Dsq => check_d_squared(d, d.quiver().max_adeg())?,
            Check::Grading => check_grading_with(d, adams),
        });
    }
    Ok(out)
}

/// Writes the model, then the reports (to `report` if given, a summary on
/// stderr in any case). Returns whether every check passed.
fn finish_model(sink: &Sink, model: &MinimalModel, checks: &[Check], report: Option<&Path>) -> Result<bool> {
    let reports = run_checks(model, checks)?;
    sink.emit(&match sink.format(Format::Json) {
        Format::Json => output::pretty(&ModelFile::from(model)),
        Format::Table => output::model_table(model),
    })?;
    for r in &reports {
        eprintln!("check {}: {}", r.check, if r.passed() { "pass" } else { "FAIL" });
    }
    if let Some(path) = report {
        output::write_file(path, &output::pretty(&json!({ "checks": reports })))?;
    }
    Ok(reports.iter().all(CheckReport::passed))
}

fn mckay_data(m: u32, weights: &[u32], strict: bool) -> Result<McKayData> {
    if strict {
        return Ok(McKayData::strict(m, weights.to_vec())?);
    }
    let (data, warnings) = McKayData::new(m, weights.to_vec())?;
    for w in warnings {
        eprintln!("warning: {}", w.message);
    }
    Ok(data)
}

pub fn run(cli: &Cli) -> Result<bool> {
    let sink = Sink::new(cli.out.clone(), cli.format);
    match &cli.command {
        Command::ModelPoly { n, verify, report } => {
            if !(1..=MAX_VARIABLES).contains(n) {
                return Err(CliError::Usage(format!("--n must be in 1..={MAX_VARIABLES}")));
            }
            finish_model(&sink, &polynomial_model(*n), verify, report.as_deref())
        }
        Command::ModelMckay { m, weights, delete_zero, verify, strict, report } => {
            let data = mckay_data(*m, weights, *strict)?;
            let mut model = mckay_model(&data);
            if *delete_zero {
                model = delete_vertex(&model, 0)?;
            }
            finish_model(&sink, &model, verify, report.as_deref())
        }
        Command::Ginzburg { quiver, potential, delete_vertex, verify, report } => {
            let q: GradedQuiver = read_json(quiver)?;
            let cycles: Vec<CycleRepr> = read_json(potential)?;
            let mut w = Superpotential::from_repr(q, &cycles)?;
            if let Some(v) = delete_vertex {
                w = restrict_potential(&w, *v)?;
            }
            let g = ginzburg_model(&w)?;
            if !g.adams_graded() {
                eprintln!("warning: the potential is not homogeneous; the model carries no Adams grading");
            }
            finish_model(&sink, &g.to_model(), verify, report.as_deref())
        }
        Command::Cohomology { model, hmin, adams_max } => {
            let model = read_model(model)?;
            let table = cohomology_dims(&model.differential, *hmin, *adams_max, &Limits::from_env()?)?;
            sink.emit(&match sink.format(Format::Table) {
                Format::Json => output::pretty(&table),
                Format::Table => table.render(),
            })?;
            Ok(true)
        }
        Command::CompareH0 { model, presentation, map, adams_max } => {
            let model = read_model(model)?;
            let p: PresentedAlgebra = read_json(presentation)?;
            let map: BTreeMap<String, String> = match map {
                Some(path) => read_json(path)?,
                None => identity_map(&model.differential),
            };
            let r = compare_h0(&model.differential, &p, &map, *adams_max, &Limits::from_env()?)?;
            sink.emit(&match sink.format(Format::Json) {
                Format::Json => output::pretty(&r),
                Format::Table => output::report_lines(std::slice::from_ref(&r)),
            })?;
            Ok(r.passed())
        }
        Command::CyCheck { m, weights, adams_max } => {
            let data = mckay_data(*m, weights, false)?;
            let r = cy_check(&data, *adams_max, &Limits::from_env()?)?;
            sink.emit(&match sink.format(Format::Json) {
                Format::Json => output::pretty(&r),
                Format::Table => output::cy_table(&r),
            })?;
            Ok(r.passed())
        }
        Command::Verify { model, checks } => {
            let model = read_model(model)?;
            let reports = run_checks(&model, checks)?;
            sink.emit(&match sink.format(Format::Json) {
                Format::Json => output::pretty(&json!({ "checks": reports })),
                Format::Table => output::report_lines(&reports),
            })?;
            Ok(reports.iter().all(CheckReport::passed))
        }
    }
}
