//! The ten closed flat 3-manifolds and recognition of a cusp group among them.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::trace::{rot_apply, rot_compose, rot_det, Rot, IDENTITY_ROT};
use crate::algebra::{abelianization, AbelianInvariants};
use crate::presentation::{FPresentation, Letter, Word};

/// Flat 3-manifold types in the usual order: A–F orientable, G–J nonorientable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FlatType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
}

pub const FLAT_TYPES: [FlatType; 10] = [
    FlatType::A,
    FlatType::B,
    FlatType::C,
    FlatType::D,
    FlatType::E,
    FlatType::F,
    FlatType::G,
    FlatType::H,
    FlatType::I,
    FlatType::J,
];

/// Recognition data: orientability, holonomy order and first homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatSignature {
    pub orientable: bool,
    pub holonomy_order: usize,
    pub homology: AbelianInvariants,
}

impl FlatType {
    pub fn signature(self) -> FlatSignature {
        use FlatType::*;
        let (orientable, holonomy_order, free, torsion): (bool, usize, usize, &[u64]) = match self {
            A => (true, 1, 3, &[]),
            B => (true, 2, 1, &[2, 2]),
            C => (true, 3, 1, &[3]),
            D => (true, 4, 1, &[2]),
            E => (true, 6, 1, &[]),
            F => (true, 4, 0, &[4, 4]),
            G => (false, 2, 2, &[2]),
            H => (false, 2, 2, &[]),
            I => (false, 4, 1, &[2, 2]),
            J => (false, 4, 1, &[4]),
        };
        FlatSignature {
            orientable,
            holonomy_order,
            homology: AbelianInvariants::new(free, torsion),
        }
    }

    pub fn is_orientable(self) -> bool {
        self.signature().orientable
    }

    /// Type of the orientable double cover (the type itself when already orientable).
    pub fn orientable_cover(self) -> FlatType {
        match self {
            FlatType::G | FlatType::H => FlatType::A,
            FlatType::I | FlatType::J => FlatType::B,
            t => t,
        }
    }

    pub fn letter(self) -> char {
        (b'A' + FLAT_TYPES.iter().position(|&t| t == self).expect("listed") as u8) as char
    }
}

impl fmt::Display for FlatType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error("no flat 3-manifold has signature (orientable={orientable}, |holonomy|={holonomy_order}, H1={homology})")]
    UnrecognizedType {
        orientable: bool,
        holonomy_order: usize,
        homology: AbelianInvariants,
    },
    #[error("coset representatives do not close under composition")]
    NotClosed,
}

pub fn classify(sig: &FlatSignature) -> Result<FlatType, FlatError> {
    FLAT_TYPES
        .iter()
        .copied()
        .find(|t| t.signature() == *sig)
        .ok_or_else(|| FlatError::UnrecognizedType {
            orientable: sig.orientable,
            holonomy_order: sig.holonomy_order,
            homology: sig.homology.clone(),
        })
}

/// A crystallographic group with diagonal holonomy: the translations `n·Z^3` together
/// with coset representatives `(rot, trans)`, trans in `{0..n-1}^3`, identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineGroup {
    pub n: i64,
    pub reps: Vec<(Rot, [i64; 3])>,
}

impl AffineGroup {
    fn find(&self, rot: Rot, t: [i64; 3]) -> Option<(usize, [i64; 3])> {
        let reduced = t.map(|x| x.rem_euclid(self.n));
        let j = self
            .reps
            .iter()
            .position(|&(r, tr)| tr == reduced && r == rot)?;
        Some((j, std::array::from_fn(|i| (t[i] - reduced[i]) / self.n)))
    }

    pub fn holonomy(&self) -> Vec<Rot> {
        let mut h: Vec<Rot> = self.reps.iter().map(|r| r.0).collect();
        h.sort();
        h.dedup();
        h
    }

    pub fn orientable(&self) -> bool {
        self.reps.iter().all(|r| rot_det(r.0) == 1)
    }

    /// The orientation-preserving subgroup.
    pub fn orientation_subgroup(&self) -> AffineGroup {
        AffineGroup {
            n: self.n,
            reps: self
                .reps
                .iter()
                .copied()
                .filter(|r| rot_det(r.0) == 1)
                .collect(),
        }
    }

    /// Presentation on translations `t1, t2, t3` and one generator per nontrivial coset.
    pub fn presentation(&self) -> Result<FPresentation, FlatError> {
        let k = self.reps.len();
        let mut names: Vec<String> = (1..=3).map(|i| format!("t{i}")).collect();
        names.extend((1..k).map(|j| format!("g{j}")));
        let t = |i: usize, e: i64| Word::gen(i).pow(e);
        let lattice = |m: [i64; 3]| t(0, m[0]).concat(&t(1, m[1])).concat(&t(2, m[2]));
        let g = |j: usize| {
            if j == 0 {
                Word::identity()
            } else {
                Word::gen(2 + j)
            }
        };
        let mut rels = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                rels.push(Word::from_letters(vec![
                    Letter::new(i, false),
                    Letter::new(j, false),
                    Letter::new(i, true),
                    Letter::new(j, true),
                ]));
            }
        }
        for j in 1..k {
            let (r, _) = self.reps[j];
            for i in 0..3 {
                rels.push(g(j).conjugate(&t(i, 1)).concat(&t(i, -(r[i] as i64))));
            }
        }
        for j in 1..k {
            for l in 1..k {
                let (rj, tj) = self.reps[j];
                let (rl, tl) = self.reps[l];
                let rot = rot_compose(rj, rl);
                let tr = rot_apply(rj, tl);
                let tr = [tr[0] + tj[0], tr[1] + tj[1], tr[2] + tj[2]];
                let (m, lat) = self.find(rot, tr).ok_or(FlatError::NotClosed)?;
                // g_j g_l = T^lat g_m
                rels.push(
                    g(j).concat(&g(l))
                        .concat(&g(m).inverse())
                        .concat(&lattice(lat).inverse()),
                );
            }
        }
        Ok(FPresentation::new(names, rels))
    }

    pub fn signature(&self) -> Result<FlatSignature, FlatError> {
        Ok(FlatSignature {
            orientable: self.orientable(),
            holonomy_order: self.holonomy().len(),
            homology: abelianization(&self.presentation()?),
        })
    }

    pub fn classify(&self) -> Result<FlatType, FlatError> {
        classify(&self.signature()?)
    }
}

impl Default for AffineGroup {
    fn default() -> Self {
        AffineGroup {
            n: 1,
            reps: vec![(IDENTITY_ROT, [0; 3])],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus() {
        assert_eq!(AffineGroup::default().classify(), Ok(FlatType::A));
        let g = AffineGroup {
            n: 2,
            reps: vec![(IDENTITY_ROT, [0; 3]), (IDENTITY_ROT, [1, 0, 0])],
        };
        assert_eq!(g.classify(), Ok(FlatType::A));
    }

    #[test]
    fn dicosm_and_amphicosms() {
        // screw motion by half a period along axis 1
        let b = AffineGroup {
            n: 2,
            reps: vec![(IDENTITY_ROT, [0; 3]), ([1, -1, -1], [1, 0, 0])],
        };
        assert_eq!(b.classify(), Ok(FlatType::B));
        // glide reflections
        let g = AffineGroup {
            n: 2,
            reps: vec![(IDENTITY_ROT, [0; 3]), ([1, 1, -1], [1, 0, 0])],
        };
        assert_eq!(g.classify(), Ok(FlatType::G));
        let h = AffineGroup {
            n: 2,
            reps: vec![
                (IDENTITY_ROT, [0; 3]),
                (IDENTITY_ROT, [0, 1, 1]),
                ([1, 1, -1], [1, 0, 0]),
                ([1, 1, -1], [1, 1, 1]),
            ],
        };
        assert_eq!(h.classify(), Ok(FlatType::H));
        assert_eq!(h.orientation_subgroup().classify(), Ok(FlatType::A));
    }

    #[test]
    fn cover_types() {
        for t in FLAT_TYPES {
            assert!(t.orientable_cover().is_orientable());
        }
        assert_eq!(FlatType::J.orientable_cover(), FlatType::B);
    }
}
