use std::collections::HashSet;

use super::{canonical_relator, FPresentation, Letter, Word};

#[derive(Clone, Copy, Debug)]
pub struct TietzeOptions {
    /// Maximum number of generator eliminations.
    pub budget: usize,
    /// An elimination is skipped if it would push the total relator length
    /// above `max_growth` times the starting total (or 64, whichever is larger).
    pub max_growth: f64,
}

impl Default for TietzeOptions {
    fn default() -> Self {
        TietzeOptions {
            budget: 10_000,
            max_growth: 1.5,
        }
    }
}

/// Result of simplification, with each original generator expressed in the new generators.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: FPresentation,
    pub images: Vec<Word>,
}

impl Simplified {
    /// Rewrites a word over the original generators into the simplified ones.
    pub fn map_word(&self, w: &Word) -> Word {
        substitute(w, &self.images).free_reduce()
    }
}

fn substitute(w: &Word, images: &[Word]) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for l in w.letters() {
        let img = &images[l.gen()];
        if l.is_inverse() {
            out.extend(img.inverse().into_letters());
        } else {
            out.extend_from_slice(img.letters());
        }
    }
    Word::from_letters(out)
}

fn tidy(relators: Vec<Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in relators {
        let r = r.cyclic_reduce();
        if r.is_empty() {
            continue;
        }
        if seen.insert(canonical_relator(&r)) {
            out.push(r);
        }
    }
    out
}

/// Tietze simplification: reduce, drop trivial and duplicate relators, and eliminate
/// generators that occur exactly once in some relator.
pub fn tietze_simplify(p: &FPresentation, budget: usize) -> FPresentation {
    tietze_simplify_with_map(
        p,
        TietzeOptions {
            budget,
            ..TietzeOptions::default()
        },
    )
    .presentation
}

pub fn tietze_simplify_with_map(p: &FPresentation, opts: TietzeOptions) -> Simplified {
    let mut names: Vec<String> = p.names().to_vec();
    // images of original generators over the current generator list
    let mut images: Vec<Word> = (0..p.ngens()).map(Word::gen).collect();
    let mut relators = tidy(p.relators().to_vec());
    let start_total: usize = relators.iter().map(Word::len).sum();
    let cap = ((start_total as f64 * opts.max_growth) as usize).max(64);

    for _ in 0..opts.budget {
        let total: usize = relators.iter().map(Word::len).sum();
        let occurrences: Vec<usize> = (0..names.len())
            .map(|g| relators.iter().map(|r| r.occurrences(g)).sum())
            .collect();

        // candidate (growth, relator length, gen, relator index)
        let mut best: Option<(isize, usize, usize, usize)> = None;
        for (ri, r) in relators.iter().enumerate() {
            for g in 0..names.len() {
                if r.occurrences(g) != 1 {
                    continue;
                }
                let replacement = r.len() as isize - 1;
                let others = (occurrences[g] - 1) as isize;
                let growth = others * (replacement - 1) - r.len() as isize;
                if (total as isize + growth) as usize > cap {
                    continue;
                }
                let key = (growth, r.len(), g, ri);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, gen, ri)) = best else { break };

        let r = relators.remove(ri);
        let pos = r
            .letters()
            .iter()
            .position(|l| l.gen() == gen)
            .expect("occurs once");
        let rotated = r.rotate(pos);
        let rest = Word::from_letters(rotated.letters()[1..].to_vec());
        // g^e * rest = 1  =>  g = rest^-1 (e = +1) or g = rest (e = -1)
        let value = if rotated.letters()[0].is_inverse() {
            rest
        } else {
            rest.inverse()
        };

        let ngens = names.len();
        let mut subst: Vec<Word> = (0..ngens).map(Word::gen).collect();
        subst[gen] = value;
        // renumber generators above `gen`
        let renumber = |w: &Word| -> Word {
            w.letters()
                .iter()
                .map(|l| {
                    let g = l.gen();
                    Letter::new(if g > gen { g - 1 } else { g }, l.is_inverse())
                })
                .collect()
        };
        relators = tidy(
            relators
                .iter()
                .map(|w| renumber(&substitute(w, &subst).free_reduce()))
                .collect(),
        );
        images = images
            .iter()
            .map(|w| renumber(&substitute(w, &subst).free_reduce()))
            .collect();
        names.remove(gen);
    }

    Simplified {
        presentation: FPresentation::new(names, relators),
        images,
    }
}
