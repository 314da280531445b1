use std::collections::{BTreeSet, HashSet};

use link4::cusp::{classify, AffineGroup, FlatSignature, FlatType, FLAT_TYPES};
use link4::{abelianization, FPresentation, Word};

type Element = ([i8; 3], [i64; 3]);

/// `x ↦ r·x + t` composed as `a ∘ b`, translations reduced mod 2.
fn compose(a: Element, b: Element) -> Element {
    let rot = std::array::from_fn(|i| a.0[i] * b.0[i]);
    let t = std::array::from_fn(|i| (a.0[i] as i64 * b.1[i] + a.1[i]).rem_euclid(2));
    (rot, t)
}

fn closure(gens: &[Element]) -> BTreeSet<Element> {
    let mut set = BTreeSet::from([([1, 1, 1], [0, 0, 0])]);
    loop {
        let before = set.len();
        let current: Vec<Element> = set.iter().copied().collect();
        for &a in &current {
            for &g in gens {
                set.insert(compose(a, g));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Torsion-free: every element with nontrivial rotation moves along a fixed axis.
fn acts_freely(group: &BTreeSet<Element>) -> bool {
    group
        .iter()
        .all(|&(r, t)| r == [1, 1, 1] || (0..3).any(|i| r[i] == 1 && t[i] == 1))
}

#[test]
fn diagonal_bieberbach_groups_are_the_seven_diagonal_types() {
    let elements: Vec<Element> = (0..64)
        .map(|k| {
            let rot = std::array::from_fn(|i| if k >> i & 1 == 1 { -1 } else { 1 });
            let t = std::array::from_fn(|i| (k >> (3 + i) & 1) as i64);
            (rot, t)
        })
        .collect();
    let mut groups = HashSet::new();
    for a in 0..64 {
        for b in a..64 {
            for c in b..64 {
                let g = closure(&[elements[a], elements[b], elements[c]]);
                if acts_freely(&g) {
                    groups.insert(g);
                }
            }
        }
    }
    let mut found = BTreeSet::new();
    for g in &groups {
        let mut reps: Vec<Element> = g.iter().copied().collect();
        reps.sort_by_key(|&(r, t)| (r != [1, 1, 1] || t != [0, 0, 0], r, t));
        let group = AffineGroup { n: 2, reps };
        found.insert(
            group
                .classify()
                .expect("every Bieberbach group is one of the ten"),
        );
    }
    use FlatType::*;
    assert_eq!(found, BTreeSet::from([A, B, F, G, H, I, J]));
}

fn wolf(names: &str, rels: &[&[i32]]) -> FPresentation {
    FPresentation::new(
        names.split(' ').map(String::from).collect(),
        rels.iter().map(|r| Word::from_signed(r)),
    )
}

/// Standard presentations: a screw motion `x` or glide `x` acting on the translations `y`, `z`
/// (the third translation is `x^k`), or the two generators of the didicosm.
fn standard_presentation(t: FlatType) -> Option<FPresentation> {
    // x y x^-1 = w, written as the relator x y x^-1 w^-1
    let commute = [2, 3, -2, -3];
    Some(match t {
        FlatType::A => wolf("x y z", &[&[1, 2, -1, -2], &[1, 3, -1, -3], &commute]),
        FlatType::B => wolf("x y z", &[&[1, 2, -1, 2], &[1, 3, -1, 3], &commute]),
        FlatType::C => wolf("x y z", &[&[1, 2, -1, -3], &[1, 3, -1, 3, 2], &commute]),
        FlatType::D => wolf("x y z", &[&[1, 2, -1, -3], &[1, 3, -1, 2], &commute]),
        FlatType::E => wolf("x y z", &[&[1, 2, -1, -3], &[1, 3, -1, -3, 2], &commute]),
        FlatType::F => wolf("x y", &[&[-1, 2, 2, 1, 2, 2], &[-2, 1, 1, 2, 1, 1]]),
        FlatType::G => wolf("x y z", &[&[1, 2, -1, -2], &[1, 3, -1, 3], &commute]),
        FlatType::H => wolf("x y z", &[&[1, 2, -1, -3], &[1, 3, -1, -2], &commute]),
        _ => return None,
    })
}

#[test]
fn homology_agrees_with_standard_presentations() {
    for t in FLAT_TYPES {
        if let Some(p) = standard_presentation(t) {
            assert_eq!(abelianization(&p), t.signature().homology, "{t}");
        }
    }
}

#[test]
fn signatures_are_distinct() {
    let sigs: Vec<FlatSignature> = FLAT_TYPES.iter().map(|t| t.signature()).collect();
    for (i, s) in sigs.iter().enumerate() {
        assert_eq!(classify(s), Ok(FLAT_TYPES[i]));
    }
}
