//! What to verify: a code, fiber choices and limits. Plans are also read from text,
//! one per line: `<id> <code> [E<i>[']=<word>]... [transversal=<gen>]`.

use crate::encoding::{decode_code, CensusDiagnostic};
use crate::enumerate::EnumOptions;
use crate::presentation::{matched_relators, ridge_cycle_relators, Word};

use super::fibers::{FiberSpec, PowerSpec};
use super::{generator_index, PipelineError};

/// The twelve link complements with fiber choices that fill them to a sphere.
pub const REFERENCE_PLANS: &str = include_str!("../../data/links.txt");

pub type PlanDiagnostic = CensusDiagnostic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationPlan {
    pub id: Option<String>,
    pub code: String,
    /// Fibers for some lifts; the rest are chosen automatically.
    pub fibers: Vec<FiberSpec>,
    /// Generator whose coset is the second sheet of the double cover.
    pub transversal: Option<usize>,
    /// Powers of fibers, for finite covers.
    pub powers: Vec<PowerSpec>,
    pub options: EnumOptions,
    /// Tietze-simplify the quotient before enumerating it.
    pub simplify: bool,
}

impl VerificationPlan {
    pub fn new(code: &str) -> Self {
        VerificationPlan {
            id: None,
            code: code.to_string(),
            fibers: Vec::new(),
            transversal: None,
            powers: Vec::new(),
            options: EnumOptions::default(),
            simplify: true,
        }
    }

    pub fn with_fibers(mut self, specs: &[&str]) -> Result<Self, PipelineError> {
        for s in specs {
            self.fibers
                .push(s.parse().map_err(|e| PipelineError::Plan(format!("{e}")))?);
        }
        Ok(self)
    }

    pub fn with_powers(mut self, specs: &[&str]) -> Result<Self, PipelineError> {
        for s in specs {
            self.powers
                .push(s.parse().map_err(|e| PipelineError::Plan(format!("{e}")))?);
        }
        Ok(self)
    }

    /// Replaces the fiber of `spec`'s lift, or adds it.
    pub fn set_fiber(&mut self, spec: FiberSpec) {
        self.fibers.retain(|f| f.lift != spec.lift);
        self.fibers.push(spec);
    }

    fn parse_line(line: &str) -> Result<VerificationPlan, String> {
        let mut fields = line.split_whitespace();
        let (Some(id), Some(code)) = (fields.next(), fields.next()) else {
            return Err(format!("expected `<id> <code> [fibers]`, got {line:?}"));
        };
        let scheme = decode_code(code).map_err(|e| e.to_string())?;
        let mut plan = VerificationPlan::new(scheme.code());
        plan.id = Some(id.to_string());
        for f in fields {
            if let Some(g) = f.strip_prefix("transversal=") {
                plan.transversal = Some(generator_index(g).map_err(|e| e.to_string())?);
            } else {
                plan.fibers.push(
                    f.parse()
                        .map_err(|e: super::FiberParseError| e.to_string())?,
                );
            }
        }
        Ok(plan)
    }
}

/// Parses plan lines; `#` starts a comment line. Bad lines become diagnostics.
pub fn parse_plans(text: &str) -> (Vec<VerificationPlan>, Vec<PlanDiagnostic>) {
    let mut plans = Vec::new();
    let mut diagnostics = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match VerificationPlan::parse_line(trimmed) {
            Ok(p) => plans.push(p),
            Err(message) => diagnostics.push(CensusDiagnostic {
                line: idx + 1,
                message,
            }),
        }
    }
    (plans, diagnostics)
}

/// Codes matching `template` (`?` for an unknown character) whose ridge-cycle relators
/// agree with `relators` as a multiset.
pub fn reconstruct_code(template: &str, relators: &[Word]) -> Vec<String> {
    const DIGITS: &str = "123456789ABCDEF";
    let mut partial = vec![String::new()];
    for c in template.chars() {
        partial = partial
            .into_iter()
            .flat_map(|p| {
                let choices: Vec<char> = if c == '?' {
                    DIGITS.chars().collect()
                } else {
                    vec![c]
                };
                choices.into_iter().map(move |d| format!("{p}{d}"))
            })
            .collect();
    }
    partial
        .into_iter()
        .filter(|code| {
            let Ok(scheme) = decode_code(code) else {
                return false;
            };
            let Ok(p) = ridge_cycle_relators(&scheme) else {
                return false;
            };
            p.relators().len() == relators.len()
                && matched_relators(p.relators(), relators) == relators.len()
        })
        .collect()
}
