//! Finite presentations and the ridge-cycle presentation of a 24-cell group.

mod tietze;
mod word;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cell24::{sides_intersect, SideId};
use crate::encoding::{KElem, PairingScheme};

pub use tietze::{tietze_simplify, tietze_simplify_with_map, Simplified, TietzeOptions};
pub use word::{Letter, ParseWordError, Word, WordDisplay};

/// A finitely presented group. Relators are kept cyclically reduced and nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPresentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl FPresentation {
    pub fn new(names: Vec<String>, relators: impl IntoIterator<Item = Word>) -> FPresentation {
        let ngens = names.len();
        let relators = relators
            .into_iter()
            .map(|r| r.cyclic_reduce())
            .filter(|r| !r.is_empty())
            .inspect(|r| {
                assert!(
                    r.letters().iter().all(|l| l.gen() < ngens),
                    "relator uses unknown generator"
                )
            })
            .collect();
        FPresentation { names, relators }
    }

    /// The free group on the given generators.
    pub fn free(names: Vec<String>) -> FPresentation {
        FPresentation {
            names,
            relators: Vec::new(),
        }
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, ParseWordError> {
        Word::parse(text, &self.names)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.to_string_with(&self.names)
    }

    /// Line-oriented text form: a `gens:` header followed by one relator per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.names.join(" "));
        for r in &self.relators {
            out.push_str(&self.format_word(r));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<FPresentation, ParseWordError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().unwrap_or("");
        let names: Vec<String> = header
            .strip_prefix("gens:")
            .ok_or_else(|| ParseWordError {
                text: header.to_string(),
                offset: 0,
                reason: "missing `gens:` header".into(),
            })?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let relators = lines
            .map(|l| Word::parse(l, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FPresentation::new(names, relators))
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.format_word(r)).collect()
    }
}

impl fmt::Display for FPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "< {} | {} >",
            self.names.join(", "),
            self.relator_strings().join(", ")
        )
    }
}

impl Serialize for FPresentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            generators: &'a [String],
            relators: Vec<String>,
        }
        Repr {
            generators: &self.names,
            relators: self.relator_strings(),
        }
        .serialize(serializer)
    }
}

/// Appends extra relators.
pub fn quotient(p: &FPresentation, extra: &[Word]) -> FPresentation {
    FPresentation::new(
        p.names.clone(),
        p.relators.iter().cloned().chain(extra.iter().cloned()),
    )
}

/// Least representative among all cyclic rotations of `w` and `w^-1`, after reduction.
pub fn canonical_relator(w: &Word) -> Word {
    let w = w.cyclic_reduce();
    let inv = w.inverse();
    (0..w.len().max(1))
        .flat_map(|k| [w.rotate(k), inv.rotate(k)])
        .min()
        .unwrap_or_default()
}

/// Whether `w2` is a cyclic rotation of `w1` or of `w1^-1`, after free and cyclic reduction.
pub fn relator_equivalent(w1: &Word, w2: &Word) -> bool {
    let (a, b) = (w1.cyclic_reduce(), w2.cyclic_reduce());
    a.len() == b.len() && canonical_relator(&a) == canonical_relator(&b)
}

/// Size of the largest matching between `a` and `b` under [`relator_equivalent`].
pub fn matched_relators(a: &[Word], b: &[Word]) -> usize {
    let mut counts: std::collections::HashMap<Word, usize> = std::collections::HashMap::new();
    for w in a {
        *counts.entry(canonical_relator(w)).or_default() += 1;
    }
    b.iter()
        .filter(|w| match counts.get_mut(&canonical_relator(w)) {
            Some(n) if *n > 0 => {
                *n -= 1;
                true
            }
            _ => false,
        })
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error(
        "ridge cycle through {exit}|{partner} does not close after 4 crossings (period {period})"
    )]
    WrongLength {
        exit: SideId,
        partner: SideId,
        period: usize,
    },
    #[error("ridge cycle through {exit}|{partner} closes with non-identity K-product {product}")]
    NonIdentity {
        exit: SideId,
        partner: SideId,
        product: KElem,
    },
}

/// One ridge cycle: the directed ridges `(exit side, partner side)` visited and the relator read off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeCycle {
    pub states: Vec<(SideId, SideId)>,
    #[serde(skip)]
    pub relator: Word,
}

fn step(scheme: &PairingScheme, (exit, partner): (SideId, SideId)) -> (SideId, SideId) {
    let k = scheme.kpart_of_side(exit);
    (k.apply_side(partner), k.apply_side(exit))
}

/// Traces all ridge cycles of the scheme. Crossing the exit side `S` of the
/// directed ridge `(S, U)` appends `s_S^-1` and moves to `(k_S(U), k_S(S))`.
pub fn ridge_cycles(scheme: &PairingScheme) -> Result<Vec<RidgeCycle>, CycleError> {
    let mut states: Vec<(SideId, SideId)> = Vec::with_capacity(192);
    for s in SideId::all() {
        for u in SideId::all().filter(|&u| sides_intersect(s, u)) {
            states.push((s, u));
        }
    }
    let mut seen: HashSet<(SideId, SideId)> = HashSet::new();
    let mut cycles = Vec::with_capacity(24);
    for &start in &states {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        let mut product = KElem::IDENTITY;
        let mut cur = start;
        loop {
            product = product.compose(scheme.kpart_of_side(cur.0));
            cur = step(scheme, cur);
            if cur == start || orbit.len() > 4 {
                break;
            }
            orbit.push(cur);
        }
        if orbit.len() != 4 || cur != start {
            return Err(CycleError::WrongLength {
                exit: start.0,
                partner: start.1,
                period: orbit.len(),
            });
        }
        if !product.is_identity() {
            return Err(CycleError::NonIdentity {
                exit: start.0,
                partner: start.1,
                product,
            });
        }
        let reverse: Vec<(SideId, SideId)> = orbit.iter().rev().map(|&(s, u)| (u, s)).collect();
        seen.extend(orbit.iter().copied());
        seen.extend(reverse.iter().copied());

        // Canonical start: least directed ridge whose exit letter is a generator, so the
        // relator begins with an inverse generator.
        let start_state = orbit
            .iter()
            .chain(reverse.iter())
            .copied()
            .min_by_key(|&(s, u)| (scheme.outgoing_letter(s).is_inverse(), s, u))
            .expect("eight directed ridges");
        let mut seq = vec![start_state];
        while seq.len() < 4 {
            seq.push(step(scheme, *seq.last().expect("nonempty")));
        }
        let relator: Word = seq
            .iter()
            .map(|&(s, _)| scheme.outgoing_letter(s).inverse())
            .collect();
        cycles.push(RidgeCycle {
            states: seq,
            relator,
        });
    }
    Ok(cycles)
}

/// Presentation of the side-pairing group: 12 generators, one length-4 relator per ridge cycle.
pub fn ridge_cycle_relators(scheme: &PairingScheme) -> Result<FPresentation, CycleError> {
    let cycles = ridge_cycles(scheme)?;
    Ok(FPresentation::new(
        PairingScheme::gen_names(),
        cycles.into_iter().map(|c| c.relator),
    ))
}
