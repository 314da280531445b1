//! Finite-index subgroups: Schreier transversals, Reidemeister–Schreier presentations
//! and rewriting of words into subgroup generators.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{coset_enumerate, EnumOptions, EnumStatus};
use crate::presentation::{quotient, FPresentation, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("the orientation character is trivial: no orientation-reversing generator")]
    NoReversingGenerator,
    #[error("generator {0} does not reverse orientation")]
    NotReversing(String),
    #[error("quotient is not known to be finite: enumeration overflowed at {limit} cosets")]
    InfiniteQuotient { limit: usize },
    #[error("the coset action is not transitive")]
    NotTransitive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("word does not lie in the subgroup (ends in coset {coset})")]
pub struct NotInSubgroup {
    pub coset: usize,
}

/// A Schreier generator `γ(x, y) = x y (xy)‾⁻¹` for coset `x` and parent generator `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGen {
    pub coset: usize,
    pub gen: usize,
    pub name: String,
    /// The generator as a word in the parent group.
    pub expansion: Word,
}

/// A finite-index subgroup, given by a transitive action of the parent generators on
/// cosets and a Schreier transversal. Coset 0 is the subgroup itself.
#[derive(Clone, Debug)]
pub struct SubgroupScheme {
    parent: FPresentation,
    /// `action[g][x]` is the coset `x·g`.
    action: Vec<Vec<usize>>,
    inverse_action: Vec<Vec<usize>>,
    /// Tree edge into each coset: `rep(x) = rep(from) · letter`.
    tree: Vec<Option<(usize, Letter)>>,
    transversal: Vec<Word>,
    /// `gamma[x][g]`: index into `generators`, or `None` for a tree edge.
    gamma: Vec<Vec<Option<usize>>>,
    generators: Vec<SchreierGen>,
}

impl SubgroupScheme {
    /// Builds the scheme from permutations of the cosets, one per parent generator.
    /// The transversal is grown breadth-first in letter order `a, a⁻¹, b, ...`, with
    /// `preferred` (if any) tried first at every coset.
    pub fn from_action(
        parent: FPresentation,
        action: Vec<Vec<usize>>,
        preferred: Option<Letter>,
    ) -> Result<SubgroupScheme, SubgroupError> {
        let n = action.first().map_or(1, Vec::len);
        assert_eq!(action.len(), parent.ngens());
        let mut inverse_action = vec![vec![0; n]; action.len()];
        for (g, perm) in action.iter().enumerate() {
            assert_eq!(perm.len(), n);
            for (x, &y) in perm.iter().enumerate() {
                inverse_action[g][y] = x;
            }
        }
        let mut letters: Vec<Letter> = (0..2 * parent.ngens()).map(Letter::from_column).collect();
        if let Some(p) = preferred {
            letters.retain(|&l| l != p);
            letters.insert(0, p);
        }
        let mut tree = vec![None; n];
        let mut transversal = vec![Word::identity(); n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &l in &letters {
                let y = if l.is_inverse() {
                    inverse_action[l.gen()][x]
                } else {
                    action[l.gen()][x]
                };
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, l));
                    let mut w = transversal[x].clone();
                    w.push(l);
                    transversal[y] = w;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(SubgroupError::NotTransitive);
        }

        let mut gamma = vec![vec![None; parent.ngens()]; n];
        let mut generators = Vec::new();
        for (x, row) in gamma.iter_mut().enumerate() {
            for (g, slot) in row.iter_mut().enumerate() {
                let y = action[g][x];
                let is_tree_edge = tree[y] == Some((x, Letter::new(g, false)))
                    || tree[x] == Some((y, Letter::new(g, true)));
                if is_tree_edge {
                    continue;
                }
                let name = if n == 1 {
                    parent.names()[g].clone()
                } else {
                    format!("{}_{}", parent.names()[g], x)
                };
                let expansion = transversal[x]
                    .concat(&Word::gen(g))
                    .concat(&transversal[y].inverse())
                    .free_reduce();
                *slot = Some(generators.len());
                generators.push(SchreierGen {
                    coset: x,
                    gen: g,
                    name,
                    expansion,
                });
            }
        }
        Ok(SubgroupScheme {
            parent,
            action,
            inverse_action,
            tree,
            transversal,
            gamma,
            generators,
        })
    }

    pub fn parent(&self) -> &FPresentation {
        &self.parent
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn generators(&self) -> &[SchreierGen] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Coset reached from `coset` by reading `w`.
    pub fn coset_of(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |x, &l| self.step(x, l))
    }

    fn step(&self, x: usize, l: Letter) -> usize {
        if l.is_inverse() {
            self.inverse_action[l.gen()][x]
        } else {
            self.action[l.gen()][x]
        }
    }

    /// Rewrites `w` read from coset `start`, returning the subgroup word and the final coset.
    pub fn rewrite_from(&self, start: usize, w: &Word) -> (Word, usize) {
        let mut out = Word::identity();
        let mut x = start;
        for &l in w.letters() {
            if l.is_inverse() {
                let prev = self.inverse_action[l.gen()][x];
                if let Some(z) = self.gamma[prev][l.gen()] {
                    out.push(Letter::new(z, true));
                }
                x = prev;
            } else {
                if let Some(z) = self.gamma[x][l.gen()] {
                    out.push(Letter::new(z, false));
                }
                x = self.action[l.gen()][x];
            }
        }
        (out.free_reduce(), x)
    }

    /// Schreier rewriting of an element of the subgroup.
    pub fn rewrite_word(&self, w: &Word) -> Result<Word, NotInSubgroup> {
        match self.rewrite_from(0, w) {
            (z, 0) => Ok(z),
            (_, coset) => Err(NotInSubgroup { coset }),
        }
    }

    /// Expands a subgroup word back into parent generators.
    pub fn expand(&self, z: &Word) -> Word {
        let mut out = Word::identity();
        for l in z.letters() {
            let e = &self.generators[l.gen()].expansion;
            out = out.concat(&if l.is_inverse() {
                e.inverse()
            } else {
                e.clone()
            });
        }
        out.free_reduce()
    }

    /// The Reidemeister–Schreier presentation: relators `x r x⁻¹` for every coset
    /// representative `x` and parent relator `r`, rewritten over the Schreier generators.
    pub fn presentation(&self) -> FPresentation {
        let mut rels = Vec::with_capacity(self.index() * self.parent.relators().len());
        for x in 0..self.index() {
            for r in self.parent.relators() {
                let (z, end) = self.rewrite_from(x, r);
                debug_assert_eq!(end, x);
                rels.push(z);
            }
        }
        FPresentation::new(self.generator_names(), rels)
    }

    /// Relators before cyclic reduction, one per (coset, parent relator); empty ones included.
    pub fn raw_relator_count(&self) -> usize {
        self.index() * self.parent.relators().len()
    }

    /// Whether the transversal is prefix-closed.
    pub fn is_prefix_closed(&self) -> bool {
        self.transversal.iter().all(|w| {
            (0..w.len()).all(|k| {
                let prefix = Word::from_letters(w.letters()[..k].to_vec());
                self.transversal.contains(&prefix)
            })
        })
    }

    /// Tree edge into a coset.
    pub fn tree_edge(&self, coset: usize) -> Option<(usize, Letter)> {
        self.tree[coset]
    }

    /// Generator dictionary as `(name, expansion)` strings.
    pub fn dictionary(&self) -> Vec<DictionaryEntry> {
        self.generators
            .iter()
            .map(|g| DictionaryEntry {
                name: g.name.clone(),
                word: self.parent.format_word(&g.expansion),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DictionaryEntry {
    pub name: String,
    pub word: String,
}

/// Index-2 subgroup of orientation-preserving elements, with transversal `{1, rep}`.
/// `reversing[g]` tells whether generator `g` reverses orientation. Without `rep`,
/// the first reversing generator is used.
pub fn orientation_double_cover_scheme(
    p: &FPresentation,
    reversing: &[bool],
    rep: Option<usize>,
) -> Result<SubgroupScheme, SubgroupError> {
    let first = reversing
        .iter()
        .position(|&r| r)
        .ok_or(SubgroupError::NoReversingGenerator)?;
    let rep = rep.unwrap_or(first);
    if !reversing[rep] {
        return Err(SubgroupError::NotReversing(p.names()[rep].clone()));
    }
    let action = reversing
        .iter()
        .map(|&r| if r { vec![1, 0] } else { vec![0, 1] })
        .collect();
    SubgroupScheme::from_action(p.clone(), action, Some(Letter::new(rep, false)))
}

/// The normal subgroup `⟨⟨kernel⟩⟩`, provided the quotient by it is finite.
/// Cosets are the elements of the quotient, acted on by right multiplication.
pub fn finite_cover_scheme(
    p: &FPresentation,
    kernel: &[Word],
    opts: &EnumOptions,
) -> Result<SubgroupScheme, SubgroupError> {
    let q = quotient(p, kernel);
    let table = coset_enumerate(&q, &[], opts);
    if let EnumStatus::Overflow { limit } = table.status {
        return Err(SubgroupError::InfiniteQuotient { limit });
    }
    let action = (0..p.ngens()).map(|g| table.permutation(g)).collect();
    SubgroupScheme::from_action(p.clone(), action, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::abelianization;

    fn pres(names: &[&str], rels: &[&str]) -> FPresentation {
        let names: Vec<String> = names.iter().map(|c| c.to_string()).collect();
        let rels = rels
            .iter()
            .map(|r| Word::parse(r, &names).unwrap())
            .collect::<Vec<_>>();
        FPresentation::new(names, rels)
    }

    #[test]
    fn klein_bottle_double_cover_is_torus() {
        // <x, y | y x y^-1 x>, y reverses orientation
        let p = pres(&["x", "y"], &["yxy^-1x"]);
        let s = orientation_double_cover_scheme(&p, &[false, true], None).unwrap();
        assert_eq!(s.transversal(), &[Word::identity(), Word::gen(1)]);
        let h = s.presentation();
        assert_eq!(h.ngens(), 3);
        assert_eq!(s.raw_relator_count(), 2);
        let ab = abelianization(&crate::presentation::tietze_simplify(&h, 100));
        assert_eq!(ab.free_rank, 2);
        assert!(ab.torsion.is_empty());
    }

    #[test]
    fn rewrite_and_expand() {
        let p = pres(&["c", "e", "g", "k"], &[]);
        let s = orientation_double_cover_scheme(&p, &[false, true, false, true], Some(3)).unwrap();
        let names = s.generator_names();
        assert_eq!(names, ["c_0", "e_0", "g_0", "c_1", "e_1", "g_1", "k_1"]);
        let w = p.parse_word("kce^-1").unwrap();
        let z = s.rewrite_word(&w).unwrap();
        assert_eq!(z.to_string_with(&names), "c_1 e_0^-1");
        assert_eq!(s.expand(&z), w);
        assert_eq!(
            s.rewrite_word(&p.parse_word("kck^-1").unwrap())
                .unwrap()
                .to_string_with(&names),
            "c_1"
        );
        assert_eq!(s.rewrite_word(&Word::identity()).unwrap(), Word::identity());
        assert_eq!(
            s.rewrite_word(&p.parse_word("e").unwrap()),
            Err(NotInSubgroup { coset: 1 })
        );
        assert!(s.is_prefix_closed());
    }

    #[test]
    fn errors() {
        let p = pres(&["a"], &[]);
        assert_eq!(
            orientation_double_cover_scheme(&p, &[false], None).unwrap_err(),
            SubgroupError::NoReversingGenerator
        );
        let p = pres(&["a", "b"], &[]);
        assert!(matches!(
            orientation_double_cover_scheme(&p, &[false, true], Some(0)),
            Err(SubgroupError::NotReversing(_))
        ));
    }

    #[test]
    fn finite_covers() {
        let p = pres(&["a", "b"], &["aba^-1b^-1"]);
        let s = finite_cover_scheme(
            &p,
            &[Word::gen(0).pow(2), Word::gen(1).pow(3)],
            &EnumOptions::default(),
        )
        .unwrap();
        assert_eq!(s.index(), 6);
        assert!(s.is_prefix_closed());
        // a finite cover of the torus is a torus
        let h = s.presentation();
        assert_eq!(h.ngens(), 7);
        assert_eq!(abelianization(&h).free_rank, 2);
        let triv = pres(&["a"], &["a"]);
        let s = finite_cover_scheme(&triv, &[], &EnumOptions::default()).unwrap();
        assert_eq!(s.index(), 1);
        assert_eq!(s.presentation(), triv);
        let free = pres(&["a"], &[]);
        assert!(matches!(
            finite_cover_scheme(&free, &[], &EnumOptions::with_limit(100)),
            Err(SubgroupError::InfiniteQuotient { .. })
        ));
    }
}
