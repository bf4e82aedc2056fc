use std::fs;
use std::path::{Path, PathBuf};

use dgq_core::cy::CyReport;
use dgq_core::{CheckReport, MinimalModel};
use serde::Serialize;

use crate::commands::CliError;
use crate::Format;

/// Destination of the main output.
pub struct Sink {
    out: Option<PathBuf>,
    format: Option<Format>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>, format: Option<Format>) -> Self {
        Sink { out, format }
    }

    pub fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => write_file(path, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn model_table(model: &MinimalModel) -> String {
    let q = model.quiver();
    let mut s = format!("vertices: {:?}\n", q.vertices());
    s.push_str("arrow\tsource\ttarget\thdeg\tadeg\td\n");
    for a in q.arrow_ids() {
        let ar = q.arrow(a);
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            ar.id,
            ar.source,
            ar.target,
            ar.hdeg,
            ar.adeg,
            model.differential.image(a).display(q)
        ));
    }
    s
}

pub fn report_lines(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!("{}\t{}\n", r.check, if r.passed() { "pass" } else { "FAIL" }));
        if let Some(w) = &r.witness {
            s.push_str(&format!("  witness: {w}\n"));
        }
        for n in &r.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
    }
    s
}

pub fn cy_table(r: &CyReport) -> String {
    let mut all = vec![r.closure.clone()];
    all.extend(r.koszul_truncated.parts.iter().cloned());
    all.extend([r.omega.d_squared.clone(), r.omega.degree.clone(), r.omega.closed.clone(), r.omega.nondegenerate.clone()]);
    let mut s = format!("m = {}, weights = {:?}, |ω| = {}\n", r.m, r.weights, r.omega.expected_degree);
    s.push_str(&report_lines(&all));
    for n in &r.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}
