//! Finite covers of the filled manifold, from filling some fibers with a power `m`.

use std::collections::VecDeque;
use std::time::Instant;

use super::report::{CoverComponent, CoverReport, FiberReport, Report};
use super::{Analysis, PipelineError, VerificationPlan, TIETZE_BUDGET};
use crate::cusp::{rot_det, FlatType, IDENTITY_ROT};
use crate::enumerate::{coset_enumerate, CosetTable, EnumStatus};
use crate::presentation::{quotient, tietze_simplify_with_map, Simplified, TietzeOptions, Word};

/// Cosets reachable from coset 0 of a regular table using the given words.
fn orbit(table: &CosetTable, words: &[Word]) -> Vec<bool> {
    let mut seen = vec![false; table.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for w in words {
            for d in [table.act_word(c, w), table.act_word(c, &w.inverse())]
                .into_iter()
                .flatten()
            {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
    }
    seen
}

/// Counts the boundary components of the cover `Ĥ → H` with deck group
/// `H/⟨⟨t_j^{m_j}⟩⟩`, where `m_j` is 1 unless the plan gives a power.
///
/// Above a lifted cusp with group `K`, the components number `|Q| / |ψ(K)|` for the
/// projection `ψ: H → Q`. A type-B cusp stays type B exactly when some element of `K`
/// with nontrivial holonomy lies in the kernel, i.e. `ψ(s) ∈ ψ(translations)`.
pub fn analyze_cover(plan: &VerificationPlan) -> Result<Report, PipelineError> {
    let start = Instant::now();
    let analysis = Analysis::new(&plan.code, plan.transversal)?;
    let mut report = analysis.report(plan.id.clone())?;
    for p in &plan.powers {
        if !super::lifts(&analysis.cusps).contains(&p.lift) {
            return Err(PipelineError::Plan(format!(
                "no boundary component {}",
                p.lift
            )));
        }
    }
    let fibers = analysis.fibers_for(plan)?;
    let names = analysis.cover.generator_names();
    let power = |lift| {
        plan.powers
            .iter()
            .find(|p| p.lift == lift)
            .map_or(1, |p| p.power)
    };
    let relators: Vec<Word> = fibers.iter().map(|(f, z)| z.pow(power(f.lift))).collect();
    let simplified: Simplified = tietze_simplify_with_map(
        &quotient(&analysis.cover.presentation(), &relators),
        TietzeOptions {
            budget: TIETZE_BUDGET,
            ..TietzeOptions::default()
        },
    );
    let table = coset_enumerate(&simplified.presentation, &[], &plan.options);
    if let EnumStatus::Overflow { limit } = table.status {
        return Err(PipelineError::CoverOverflow { limit });
    }
    let deck_order = table.len();
    // an element of the double cover, as a word over the simplified generators
    let image = |w: &Word| -> Result<Word, PipelineError> {
        let z = analysis
            .cover
            .rewrite_word(&w.free_reduce())
            .map_err(|source| {
                PipelineError::Plan(format!(
                    "stabilizer element {} is not in the double cover: {source}",
                    analysis.presentation.format_word(w)
                ))
            })?;
        Ok(simplified.map_word(&z))
    };

    let mut components = Vec::new();
    for (f, _) in &fibers {
        let cusp = &analysis.cusps[f.lift.cusp - 1];
        let st = &cusp.stabilizer;
        let conj = |w: &Word| {
            if f.lift.primed {
                analysis.rep().conjugate(w)
            } else {
                w.clone()
            }
        };
        let mut translations = Vec::new();
        for e in st
            .lattice
            .iter()
            .chain(st.reps.iter().filter(|e| e.rot == IDENTITY_ROT))
        {
            translations.push(image(&conj(&e.word))?);
        }
        let mut rotations = Vec::new();
        for e in st
            .reps
            .iter()
            .filter(|e| e.rot != IDENTITY_ROT && rot_det(e.rot) == 1)
        {
            rotations.push(image(&conj(&e.word))?);
        }
        let all: Vec<Word> = translations
            .iter()
            .chain(rotations.iter())
            .cloned()
            .collect();
        let reach = orbit(&table, &all).iter().filter(|&&b| b).count();
        let lift_type = st.lift_type()?;
        let flat_type = match (lift_type, rotations.first()) {
            (FlatType::B, Some(s)) => {
                let by_translation = orbit(&table, &translations);
                let target = table.act_word(0, s).expect("complete table");
                if by_translation[target] {
                    FlatType::B
                } else {
                    FlatType::A
                }
            }
            (t, _) => t,
        };
        components.push(CoverComponent {
            lift: f.lift.to_string(),
            power: power(f.lift),
            count: deck_order / reach,
            flat_type,
        });
    }
    let count = |t| {
        components
            .iter()
            .filter(|c| c.flat_type == t)
            .map(|c| c.count)
            .sum()
    };
    report.cover = Some(CoverReport {
        deck_order,
        euler_characteristic: 2 * deck_order,
        tori: count(FlatType::A),
        klein_bottles: count(FlatType::B),
        components,
    });
    report.fibers = fibers
        .into_iter()
        .map(|(fiber, z)| {
            let p = power(fiber.lift);
            FiberReport {
                fiber,
                rewritten: z.to_string_with(&names),
                power: p,
            }
        })
        .collect();
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}
