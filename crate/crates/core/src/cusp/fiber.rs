//! Choosing the translation that becomes a fiber: normality, primitivity, and the
//! self-conjugacy shortcut for normal closures in the double cover.

use serde::Serialize;
use thiserror::Error;

use super::flat::AffineGroup;
use super::trace::{rot_apply, trace_word, AffineIso3, Rot, IDENTITY_ROT};
use super::{vertex_paths, Cusp};
use crate::algebra::{lattice_contains, relation_matrix, IntMatrix};
use crate::cell24::VertexId;
use crate::encoding::PairingScheme;
use crate::enumerate::{coset_enumerate, EnumOptions, EnumStatus};
use crate::presentation::{FPresentation, Word};

/// A word `x · core · x⁻¹` whose core is a translation of `G_u` for a vertex `u` of the cusp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocatedTranslation {
    pub conjugator: Word,
    pub core: Word,
    pub vertex: VertexId,
    /// The core in the cube frame at `vertex`.
    pub element: AffineIso3,
    /// Whether the word lies in the second lift (`E'`) of an orientable cusp.
    pub primed: bool,
}

/// Splits `word` as `x · core · x⁻¹` (shortest `x` first) with `core` a nonzero translation
/// at some vertex of the cusp. The word is tried as written, then freely reduced, so a
/// conjugate such as `i(i⁻¹h)i⁻¹` keeps its conjugator.
pub fn locate_translation(
    scheme: &PairingScheme,
    cusp: &Cusp,
    word: &Word,
) -> Option<LocatedTranslation> {
    let paths = vertex_paths(scheme, cusp.base());
    let reduced = word.free_reduce();
    if let Some(found) = split_conjugate(scheme, cusp, word, &paths) {
        return Some(found);
    }
    if reduced != *word {
        return split_conjugate(scheme, cusp, &reduced, &paths);
    }
    None
}

fn split_conjugate(
    scheme: &PairingScheme,
    cusp: &Cusp,
    w: &Word,
    paths: &[Option<Word>],
) -> Option<LocatedTranslation> {
    let letters = w.letters();
    for l in 0..=letters.len() / 2 {
        let x = Word::from_letters(letters[..l].to_vec());
        let tail = Word::from_letters(letters[letters.len() - l..].to_vec());
        if tail != x.inverse() {
            continue;
        }
        let core = Word::from_letters(letters[l..letters.len() - l].to_vec());
        if core.is_empty() {
            continue;
        }
        for &u in &cusp.vertices {
            let Some(e) = trace_word(scheme, u, &core) else {
                continue;
            };
            if !e.is_translation() || e.trans == [0; 3] {
                continue;
            }
            let y = paths[u.index()].as_ref().expect("vertex in cycle");
            let primed = cusp.orientable() && (scheme.word_reverses(&x) ^ scheme.word_reverses(y));
            return Some(LocatedTranslation {
                conjugator: x,
                core,
                vertex: u,
                element: e,
                primed,
            });
        }
    }
    None
}

/// `R t = ±t` for every holonomy element `R`.
pub fn is_normal_translation(t: [i64; 3], holonomy: &[Rot]) -> bool {
    let neg = t.map(|x| -x);
    holonomy.iter().all(|&r| {
        let rt = rot_apply(r, t);
        rt == t || rt == neg
    })
}

fn divides_all(k: i64, t: [i64; 3]) -> bool {
    t.iter().all(|x| x % k == 0)
}

/// Whether translation `t` is not a proper power of an element of `lift`. For a lift
/// with a rotation by π, translations along the rotation axis are rejected too.
pub fn is_primitive_in_lift(t: [i64; 3], lift: &AffineGroup) -> bool {
    if t == [0; 3] {
        return false;
    }
    let n = lift.n;
    let bound = t.iter().map(|x| x.abs()).max().expect("three entries");
    for &(rot, p) in &lift.reps {
        if rot == IDENTITY_ROT {
            // t = k (p + nλ)
            for k in 2..=bound {
                if divides_all(k, t) && (0..3).all(|i| (t[i] / k - p[i]).rem_euclid(n) == 0) {
                    return false;
                }
            }
        } else {
            if rot_apply(rot, t) == t {
                return false;
            }
            // t = j (R + I)(p + nλ): zero across the flipped axes, 2j(p_i + nλ_i) elsewhere
            for j in 1..=bound {
                let ok = (0..3).all(|i| {
                    if rot[i] < 0 {
                        t[i] == 0
                    } else {
                        t[i] % (2 * j) == 0 && (t[i] / (2 * j) - p[i]).rem_euclid(n) == 0
                    }
                });
                if ok {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conjugacy {
    /// `x t x⁻¹ = t`
    Same,
    /// `x t x⁻¹ = t⁻¹`
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfConjugacy {
    pub witness: Option<(Word, Conjugacy)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("could not decide self-conjugacy within {limit} cosets")]
pub struct Undecided {
    pub limit: usize,
}

/// Looks for a candidate `x` with `x t x⁻¹ = t^{±1}` in the group `quotient`.
///
/// A complete coset table decides every case. Otherwise a partial table for the trivial
/// subgroup can still prove `u = 1` (when `u` closes at coset 0), and a nonzero image in
/// the abelianization proves `u ≠ 1`.
pub fn check_self_conjugate(
    t: &Word,
    quotient: &FPresentation,
    candidates: &[Word],
    opts: &EnumOptions,
) -> Result<SelfConjugacy, Undecided> {
    let table = coset_enumerate(quotient, &[], opts);
    let complete = table.status == EnumStatus::Complete;
    let rels: IntMatrix<i64> = relation_matrix(quotient);
    let columns = IntMatrix::from_rows(
        (0..rels.cols())
            .map(|g| (0..rels.rows()).map(|r| *rels.get(r, g)).collect())
            .collect(),
    );
    let decide = |u: &Word| -> Option<bool> {
        match table.act_word(0, u) {
            Some(c) if complete => Some(c == 0),
            Some(0) => Some(true),
            _ => {
                let v: Vec<i64> = (0..quotient.ngens()).map(|g| u.exponent_sum(g)).collect();
                if rels.rows() == 0 {
                    return if v.iter().any(|&x| x != 0) {
                        Some(false)
                    } else {
                        None
                    };
                }
                if lattice_contains(&columns, &v) {
                    None
                } else {
                    Some(false)
                }
            }
        }
    };
    let mut undecided = false;
    for x in candidates {
        let conj = x.conjugate(t);
        for (kind, target) in [
            (Conjugacy::Same, t.clone()),
            (Conjugacy::Inverse, t.inverse()),
        ] {
            let u = conj.concat(&target.inverse()).free_reduce();
            match decide(&u) {
                Some(true) => {
                    return Ok(SelfConjugacy {
                        witness: Some((x.clone(), kind)),
                    })
                }
                Some(false) => {}
                None => undecided = true,
            }
        }
    }
    if undecided {
        Err(Undecided {
            limit: opts.max_cosets,
        })
    } else {
        Ok(SelfConjugacy { witness: None })
    }
}
