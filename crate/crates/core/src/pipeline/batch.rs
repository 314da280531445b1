//! Running criteria or verification over a census file in parallel.

use rayon::prelude::*;
use serde::Serialize;

use super::plan::{parse_plans, PlanDiagnostic, VerificationPlan};
use super::report::{Report, Verdict};
use super::{criteria_report, verify_sphere};
use crate::enumerate::EnumOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BatchMode {
    Criteria,
    Verify,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum BatchOutcome {
    Report(Box<Report>),
    Error {
        id: Option<String>,
        code: String,
        message: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub codes: usize,
    pub errors: usize,
    pub criteria_pass: usize,
    pub criteria_fail: usize,
    pub sphere: usize,
    pub not_sphere: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchResult {
    pub outcomes: Vec<BatchOutcome>,
    pub diagnostics: Vec<PlanDiagnostic>,
    pub summary: BatchSummary,
}

/// Processes every line of a census or plan file. Census lines are `<id> <code>`; fiber
/// choices may follow. Bad lines become diagnostics. Results are sorted by id, numeric ids
/// numerically; lines without an id come last in file order.
pub fn batch(text: &str, mode: BatchMode, options: EnumOptions, jobs: usize) -> BatchResult {
    let (plans, diagnostics) = parse_plans(text);
    let run = |plan: &VerificationPlan| -> BatchOutcome {
        let mut plan = plan.clone();
        plan.options = options;
        let result = match mode {
            BatchMode::Criteria => criteria_report(&plan.code, plan.id.clone()),
            BatchMode::Verify => verify_sphere(&plan),
        };
        match result {
            Ok(r) => BatchOutcome::Report(Box::new(r)),
            Err(e) => BatchOutcome::Error {
                id: plan.id.clone(),
                code: plan.code.clone(),
                message: e.to_string(),
            },
        }
    };
    let mut outcomes: Vec<BatchOutcome> =
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| plans.par_iter().map(run).collect()),
            Err(_) => plans.iter().map(run).collect(),
        };
    outcomes.sort_by_key(|o| id_key(o.id()));
    let reports: Vec<&Report> = outcomes
        .iter()
        .filter_map(|o| match o {
            BatchOutcome::Report(r) => Some(r.as_ref()),
            BatchOutcome::Error { .. } => None,
        })
        .collect();
    let verdicts = |v| reports.iter().filter(|r| r.verdict == Some(v)).count();
    let summary = BatchSummary {
        codes: outcomes.len(),
        errors: outcomes.len() - reports.len(),
        criteria_pass: reports.iter().filter(|r| r.criteria.pass()).count(),
        criteria_fail: reports.iter().filter(|r| !r.criteria.pass()).count(),
        sphere: verdicts(Verdict::Sphere),
        not_sphere: verdicts(Verdict::NotSphere),
        undecided: verdicts(Verdict::Undecided),
    };
    BatchResult {
        outcomes,
        diagnostics,
        summary,
    }
}

impl BatchOutcome {
    pub fn id(&self) -> Option<&str> {
        match self {
            BatchOutcome::Report(r) => r.id.as_deref(),
            BatchOutcome::Error { id, .. } => id.as_deref(),
        }
    }
}

fn id_key(id: Option<&str>) -> (u8, u64, String) {
    match id {
        Some(id) => match id.parse::<u64>() {
            Ok(n) => (0, n, String::new()),
            Err(_) => (1, 0, id.to_string()),
        },
        None => (2, 0, String::new()),
    }
}

/// A plain-text table: one row per code with the double cover's boundary and verdict.
pub fn summary_table(result: &BatchResult) -> String {
    let mut rows = vec![[
        "id".to_string(),
        "code".to_string(),
        "types".to_string(),
        "double cover is a complement of".to_string(),
        "phi".to_string(),
        "H1".to_string(),
        "verdict".to_string(),
    ]];
    for o in &result.outcomes {
        match o {
            BatchOutcome::Report(r) => rows.push([
                r.id.clone().unwrap_or_default(),
                r.code.clone(),
                r.cusps.iter().map(|c| c.flat_type.letter()).collect(),
                r.link_description(),
                format!(
                    "{}{}",
                    r.criteria.phi.dimension,
                    if r.criteria.phi.pass { "" } else { " (fail)" }
                ),
                format!(
                    "{}{}",
                    r.criteria.homology.double_cover,
                    if r.criteria.homology.pass {
                        ""
                    } else {
                        " (fail)"
                    }
                ),
                r.verdict.map_or("-".to_string(), |v| v.to_string()),
            ]),
            BatchOutcome::Error { id, code, message } => rows.push([
                id.clone().unwrap_or_default(),
                code.clone(),
                "-".to_string(),
                "-".to_string(),
                "-".to_string(),
                "-".to_string(),
                format!("error: {message}"),
            ]),
        }
    }
    let widths: Vec<usize> = (0..7)
        .map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (n, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
        if n == 0 {
            out.push_str(
                &widths
                    .iter()
                    .map(|&w| "-".repeat(w))
                    .collect::<Vec<_>>()
                    .join("-+-"),
            );
            out.push('\n');
        }
    }
    let s = &result.summary;
    out.push_str(&format!(
        "{} codes, {} errors, {} diagnostics; criteria pass {} fail {}; sphere {} not-sphere {} undecided {}\n",
        s.codes,
        s.errors,
        result.diagnostics.len(),
        s.criteria_pass,
        s.criteria_fail,
        s.sphere,
        s.not_sphere,
        s.undecided
    ));
    out
}
