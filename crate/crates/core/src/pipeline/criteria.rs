//! Necessary conditions for a census manifold to be a link complement in the 4-sphere.

use serde::Serialize;

use crate::algebra::{abelianization, AbelianInvariants};
use crate::cusp::{double_cover_boundary, Cusp, CuspError};
use crate::encoding::PairingScheme;
use crate::presentation::{tietze_simplify, FPresentation, Word};
use crate::subgroup::SubgroupScheme;

/// A vector of `Z₂⁶`, bit `i` for the generator pair `i`.
pub type Phi = u8;

/// Parity of the exponent sum in each generator pair: `a, b ↦ e₁`, ..., `k, l ↦ e₆`.
pub fn phi_map(w: &Word) -> Phi {
    w.letters()
        .iter()
        .fold(0, |acc, l| acc ^ (1 << (l.gen() / 2)))
}

/// Renders `e₁+e₅` style, `0` for the zero vector.
pub fn phi_label(v: Phi) -> String {
    if v == 0 {
        return "0".to_string();
    }
    (0..6)
        .filter(|i| v >> i & 1 == 1)
        .map(|i| format!("e{}", i + 1))
        .collect::<Vec<_>>()
        .join("+")
}

/// A basis of the span, greedily taken from `vectors` in order, with the index of each basis vector.
pub fn phi_basis(vectors: &[Phi]) -> Vec<usize> {
    // reduced echelon rows keyed by leading bit
    let mut pivots: [Phi; 6] = [0; 6];
    let mut chosen = Vec::new();
    for (idx, &v) in vectors.iter().enumerate() {
        let mut x = v;
        for bit in (0..6).rev() {
            if x >> bit & 1 == 0 {
                continue;
            }
            if pivots[bit] == 0 {
                pivots[bit] = x;
                chosen.push(idx);
                break;
            }
            x ^= pivots[bit];
        }
    }
    chosen
}

pub fn phi_dimension(vectors: &[Phi]) -> usize {
    phi_basis(vectors).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiWitness {
    pub cusp: String,
    pub word: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiCriterion {
    pub dimension: usize,
    pub pass: bool,
    /// Translations whose images form a basis of the span.
    pub witnesses: Vec<PhiWitness>,
}

/// Span of `φ` over the translations of every cusp: the block translations and `T_v`.
pub fn phi_criterion(cusps: &[Cusp]) -> PhiCriterion {
    let names = PairingScheme::gen_names();
    let mut found: Vec<(String, &Word)> = Vec::new();
    for c in cusps {
        let st = &c.stabilizer;
        for e in st.lattice.iter().chain(st.block_translations()) {
            found.push((c.name(), &e.word));
        }
    }
    let images: Vec<Phi> = found.iter().map(|(_, w)| phi_map(w)).collect();
    let basis = phi_basis(&images);
    let witnesses = basis
        .iter()
        .map(|&i| PhiWitness {
            cusp: found[i].0.clone(),
            word: found[i].1.to_string_with(&names),
            image: phi_label(images[i]),
        })
        .collect();
    PhiCriterion {
        dimension: basis.len(),
        pass: basis.len() >= 5,
        witnesses,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyCriterion {
    pub tori: usize,
    pub klein_bottles: usize,
    pub expected: AbelianInvariants,
    pub double_cover: AbelianInvariants,
    pub pass: bool,
}

/// Compares `H₁` of the orientation double cover with `Z^r ⊕ Z₂^s`, where the double
/// cover's boundary has `r` tori and `s` Klein bottles.
pub fn homology_criterion(
    cover: &SubgroupScheme,
    cusps: &[Cusp],
) -> Result<HomologyCriterion, CuspError> {
    let boundary = double_cover_boundary(cusps)?;
    let h: FPresentation = tietze_simplify(&cover.presentation(), 10_000);
    let double_cover = abelianization(&h);
    let expected = AbelianInvariants::tori_klein(boundary.tori, boundary.klein_bottles);
    let pass = double_cover == expected;
    Ok(HomologyCriterion {
        tori: boundary.tori,
        klein_bottles: boundary.klein_bottles,
        expected,
        double_cover,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Letter;

    fn w(s: &str) -> Word {
        Word::parse(s, &PairingScheme::gen_names()).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_map(&w("a")), 0b1);
        assert_eq!(phi_map(&w("a^-1b")), 0);
        assert_eq!(phi_label(phi_map(&w("c^-1i"))), "e2+e5");
        assert_eq!(
            phi_map(&Word::from_letters(vec![Letter::new(11, true)])),
            1 << 5
        );
    }

    #[test]
    fn basis_and_dimension() {
        assert_eq!(phi_dimension(&[]), 0);
        assert_eq!(phi_dimension(&[0, 0]), 0);
        assert_eq!(phi_basis(&[0b11, 0b01, 0b10, 0b100]), vec![0, 1, 3]);
        assert_eq!(phi_dimension(&[1, 2, 4, 8, 16, 32, 63]), 6);
    }
}
