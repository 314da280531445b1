//! From a code to a verdict: criteria, the double cover, fiber choices, and the
//! enumeration that decides whether filling the fibers leaves a trivial group.

mod batch;
mod cover;
mod criteria;
mod fibers;
mod plan;
mod report;

use std::time::Instant;

use thiserror::Error;

use crate::algebra::abelianization;
use crate::cusp::{cusps, double_cover_boundary, Cusp, CuspError, DoubleCoverBoundary};
use crate::encoding::{decode_code, DecodeError, PairingScheme};
use crate::enumerate::{coset_enumerate, EnumStatus};
use crate::presentation::{
    quotient, ridge_cycle_relators, tietze_simplify, CycleError, FPresentation, Word,
};
use crate::subgroup::{
    orientation_double_cover_scheme, NotInSubgroup, SubgroupError, SubgroupScheme,
};

pub use batch::{batch, summary_table, BatchMode, BatchOutcome, BatchResult, BatchSummary};
pub use cover::analyze_cover;
pub use criteria::{
    homology_criterion, phi_basis, phi_criterion, phi_dimension, phi_label, phi_map,
    HomologyCriterion, Phi, PhiCriterion, PhiWitness,
};
pub use fibers::{
    auto_fiber, check_fiber, lifts, select_fibers, Fiber, FiberCheck, FiberError, FiberParseError,
    FiberSource, FiberSpec, LiftName, PowerSpec,
};
pub use plan::{parse_plans, reconstruct_code, PlanDiagnostic, VerificationPlan, REFERENCE_PLANS};
pub use report::{
    CoverComponent, CoverReport, CriteriaReport, CuspReport, DoubleCoverReport, EnumerationReport,
    FiberReport, HolonomyReport, Report, SchemeReport, Verdict,
};

/// Tietze elimination budget for quotient presentations.
const TIETZE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error("fiber {lift} is not in the double cover: {source}")]
    Rewrite {
        lift: LiftName,
        source: NotInSubgroup,
    },
    #[error("bad plan: {0}")]
    Plan(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("the cover's deck group is not known to be finite: enumeration overflowed at {limit} cosets")]
    CoverOverflow { limit: usize },
}

/// Everything computed before fibers are chosen.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub scheme: PairingScheme,
    pub presentation: FPresentation,
    pub cusps: Vec<Cusp>,
    pub cover: SubgroupScheme,
    pub boundary: DoubleCoverBoundary,
}

impl Analysis {
    /// Decodes `code` and builds the orientation double cover, with transversal `{1, rep}`
    /// when a generator is given.
    pub fn new(code: &str, transversal: Option<usize>) -> Result<Analysis, PipelineError> {
        let scheme = decode_code(code)?;
        let presentation = ridge_cycle_relators(&scheme)?;
        let cusps = cusps(&scheme)?;
        let cover = orientation_double_cover_scheme(
            &presentation,
            &scheme.orientation_character(),
            transversal,
        )?;
        let boundary = double_cover_boundary(&cusps)?;
        Ok(Analysis {
            scheme,
            presentation,
            cusps,
            cover,
            boundary,
        })
    }

    /// The transversal element standing for the second sheet.
    pub fn rep(&self) -> &Word {
        &self.cover.transversal()[1]
    }

    /// Report through the criteria stage.
    pub fn report(&self, id: Option<String>) -> Result<Report, PipelineError> {
        let criteria = CriteriaReport {
            phi: phi_criterion(&self.cusps),
            homology: homology_criterion(&self.cover, &self.cusps)?,
        };
        let mut warnings = Vec::new();
        if !criteria.phi.pass {
            warnings.push(format!(
                "phi criterion fails: span has dimension {} < 5",
                criteria.phi.dimension
            ));
        }
        if !criteria.homology.pass {
            warnings.push(format!(
                "homology criterion fails: double cover has H1 = {}, expected {}",
                criteria.homology.double_cover, criteria.homology.expected
            ));
        }
        let h = self.cover.presentation();
        Ok(Report {
            id,
            code: self.scheme.code().to_string(),
            scheme: SchemeReport::new(&self.scheme),
            presentation: self.presentation.clone(),
            cusps: self.cusps.iter().map(CuspReport::new).collect(),
            criteria,
            double_cover: DoubleCoverReport {
                transversal: self
                    .cover
                    .transversal()
                    .iter()
                    .map(|w| self.presentation.format_word(w))
                    .collect(),
                generators: h.ngens(),
                relators: h.relators().len(),
                boundary: self.boundary.type_string(),
                components: self.boundary.components.clone(),
                dictionary: self.cover.dictionary(),
            },
            fibers: Vec::new(),
            enumeration: None,
            cover: None,
            verdict: None,
            warnings,
            elapsed_ms: 0,
        })
    }

    /// Validates or chooses the fibers and rewrites them into the double cover.
    pub fn fibers_for(&self, plan: &VerificationPlan) -> Result<Vec<(Fiber, Word)>, PipelineError> {
        let chosen = select_fibers(&self.scheme, &self.cusps, &plan.fibers, self.rep())?;
        chosen
            .into_iter()
            .map(|f| {
                let z = self
                    .cover
                    .rewrite_word(&f.word.free_reduce())
                    .map_err(|source| PipelineError::Rewrite {
                        lift: f.lift,
                        source,
                    })?;
                Ok((f, z))
            })
            .collect()
    }
}

/// Index of a generator name `a`..`l`.
pub fn generator_index(name: &str) -> Result<usize, PipelineError> {
    PairingScheme::gen_names()
        .iter()
        .position(|n| n == name.trim())
        .ok_or_else(|| PipelineError::UnknownGenerator(name.to_string()))
}

/// Decides whether `H/⟨⟨fibers⟩⟩` is trivial, `H` the orientation double cover.
pub fn verify_sphere(plan: &VerificationPlan) -> Result<Report, PipelineError> {
    let start = Instant::now();
    let analysis = Analysis::new(&plan.code, plan.transversal)?;
    let mut report = analysis.report(plan.id.clone())?;
    let fibers = analysis.fibers_for(plan)?;
    let names = analysis.cover.generator_names();
    let phi_dim = phi_dimension(
        &fibers
            .iter()
            .map(|(f, _)| phi_map(&f.word))
            .collect::<Vec<_>>(),
    );
    let relators: Vec<Word> = fibers.iter().map(|(_, z)| z.clone()).collect();
    report.fibers = fibers
        .into_iter()
        .map(|(fiber, z)| FiberReport {
            fiber,
            rewritten: z.to_string_with(&names),
            power: 1,
        })
        .collect();

    let q = quotient(&analysis.cover.presentation(), &relators);
    let q = if plan.simplify {
        tietze_simplify(&q, TIETZE_BUDGET)
    } else {
        q
    };
    let ab = abelianization(&q);
    let mut enumeration = EnumerationReport {
        presentation: q.clone(),
        abelianization: ab.clone(),
        fiber_phi_dimension: phi_dim,
        short_circuit: None,
        max_cosets: plan.options.max_cosets,
        status: None,
        order: None,
        stats: None,
    };
    let verdict = if phi_dim < 5 {
        report.warnings.push(format!(
            "fiber images under phi span only {phi_dim} dimensions"
        ));
        enumeration.short_circuit = Some(format!("fiber phi span {phi_dim} < 5"));
        Verdict::NotSphere
    } else if !ab.is_trivial() {
        enumeration.short_circuit = Some(format!("abelianization {ab} is nontrivial"));
        Verdict::NotSphere
    } else {
        let table = coset_enumerate(&q, &[], &plan.options);
        enumeration.status = Some(table.status);
        enumeration.stats = Some(table.stats);
        match table.status {
            EnumStatus::Complete => {
                enumeration.order = Some(table.len());
                if table.len() == 1 {
                    Verdict::Sphere
                } else {
                    Verdict::NotSphere
                }
            }
            EnumStatus::Overflow { .. } => Verdict::Undecided,
        }
    };
    report.enumeration = Some(enumeration);
    report.verdict = Some(verdict);
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Report through the criteria stage for a bare code.
pub fn criteria_report(code: &str, id: Option<String>) -> Result<Report, PipelineError> {
    let start = Instant::now();
    let mut r = Analysis::new(code, None)?.report(id)?;
    r.elapsed_ms = start.elapsed().as_millis();
    Ok(r)
}
