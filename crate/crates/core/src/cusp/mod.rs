//! Cusps: vertex cycles, stabilizers read off the horosphere cube tiling, their flat
//! types, and how they lift to the orientable double cover.

mod fiber;
mod flat;
mod trace;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AbelianInvariants;
use crate::cell24::{cube_frame, sides_at, VertexId, VERTEX_COUNT};
use crate::encoding::PairingScheme;
use crate::presentation::Word;

pub use fiber::{
    check_self_conjugate, is_normal_translation, is_primitive_in_lift, locate_translation,
    Conjugacy, LocatedTranslation, SelfConjugacy,
};
pub use flat::{classify, AffineGroup, FlatError, FlatSignature, FlatType, FLAT_TYPES};
pub use trace::{
    block_search, rot_apply, rot_compose, rot_det, rot_planes, staircase, staircase_words,
    t_v_generators, trace_word, AffineIso3, Rot, Walker, AXIS_ORDERS, IDENTITY_ROT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuspError {
    #[error("cusp at {vertex}: {source}")]
    Flat { vertex: VertexId, source: FlatError },
}

/// Partition of the ideal vertices into cycles under the side-pairings, each cycle sorted,
/// cycles ordered by their least vertex.
pub fn vertex_cycles(scheme: &PairingScheme) -> Vec<Vec<VertexId>> {
    let mut parent: Vec<usize> = (0..VERTEX_COUNT).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for v in VertexId::all() {
        for s in sides_at(v) {
            let w = scheme.kpart_of_side(s).apply_vertex(v);
            let (a, b) = (find(&mut parent, v.index()), find(&mut parent, w.index()));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut cycles: Vec<Vec<VertexId>> = Vec::new();
    for v in VertexId::all() {
        let r = find(&mut parent, v.index());
        match cycles.iter_mut().find(|c| c[0].index() == r) {
            Some(c) => c.push(v),
            None => cycles.push(vec![v]),
        }
    }
    cycles
}

/// For each vertex `u` in the cycle of `base`, a product `y` of side-pairings with
/// `y(base) = u`, found breadth-first.
pub fn vertex_paths(scheme: &PairingScheme, base: VertexId) -> Vec<Option<Word>> {
    let mut paths: Vec<Option<Word>> = vec![None; VERTEX_COUNT];
    paths[base.index()] = Some(Word::identity());
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for s in sides_at(v) {
            let w = scheme.kpart_of_side(s).apply_vertex(v);
            if paths[w.index()].is_none() {
                let prev = paths[v.index()].as_ref().expect("visited");
                paths[w.index()] =
                    Some(Word::from_letters(vec![scheme.outgoing_letter(s)]).concat(prev));
                queue.push_back(w);
            }
        }
    }
    paths
}

/// The stabilizer `G_v` of an ideal vertex, as seen in the cube tiling at `v`.
#[derive(Clone, Debug)]
pub struct Stabilizer {
    pub vertex: VertexId,
    /// Steps per axis of the reference lattice `T_v`.
    pub block: i64,
    pub lattice: [AffineIso3; 3],
    /// Elements of `G_v` whose cube lies in the fundamental block, identity first.
    pub reps: Vec<AffineIso3>,
    pub group: AffineGroup,
    pub flat_type: FlatType,
    pub homology: AbelianInvariants,
}

impl Stabilizer {
    pub fn new(scheme: &PairingScheme, v: VertexId) -> Result<Stabilizer, CuspError> {
        let reps: Vec<AffineIso3> = block_search(scheme, v)
            .into_iter()
            .filter(|e| e.fixes_vertex)
            .collect();
        let group = AffineGroup {
            n: v.block_size(),
            reps: reps.iter().map(|e| (e.rot, e.trans)).collect(),
        };
        let sig = group
            .signature()
            .map_err(|source| CuspError::Flat { vertex: v, source })?;
        let flat_type = classify(&sig).map_err(|source| CuspError::Flat { vertex: v, source })?;
        Ok(Stabilizer {
            vertex: v,
            block: v.block_size(),
            lattice: t_v_generators(scheme, v),
            reps,
            group,
            flat_type,
            homology: sig.homology,
        })
    }

    pub fn orientable(&self) -> bool {
        self.group.orientable()
    }

    /// Distinct holonomy elements, each with the first representative word found.
    pub fn holonomy(&self) -> Vec<(Rot, &AffineIso3)> {
        let mut out: Vec<(Rot, &AffineIso3)> = Vec::new();
        for e in &self.reps {
            if !out.iter().any(|(r, _)| *r == e.rot) {
                out.push((e.rot, e));
            }
        }
        out
    }

    /// Translations in the block other than the identity.
    pub fn block_translations(&self) -> Vec<&AffineIso3> {
        self.reps
            .iter()
            .filter(|e| e.is_translation() && e.trans != [0; 3])
            .collect()
    }

    /// Index of `T_v` in the translation subgroup of `G_v`.
    pub fn lattice_index(&self) -> usize {
        self.reps.iter().filter(|e| e.is_translation()).count()
    }

    pub fn coordinates(&self) -> [usize; 3] {
        cube_frame(self.vertex).axes.map(|a| a.coordinate)
    }

    pub fn rot_label(&self, r: Rot) -> String {
        rot_planes(r, self.coordinates())
    }

    /// The orientation-preserving part, i.e. the group of the lifted cusp.
    pub fn lift_group(&self) -> AffineGroup {
        self.group.orientation_subgroup()
    }

    pub fn lift_type(&self) -> Result<FlatType, CuspError> {
        self.lift_group()
            .classify()
            .map_err(|source| CuspError::Flat {
                vertex: self.vertex,
                source,
            })
    }
}

/// One boundary component `E_i` of the manifold.
#[derive(Clone, Debug)]
pub struct Cusp {
    /// 1-based position in vertex-cycle order.
    pub index: usize,
    pub vertices: Vec<VertexId>,
    pub stabilizer: Stabilizer,
}

impl Cusp {
    pub fn base(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn name(&self) -> String {
        format!("E{}", self.index)
    }

    pub fn flat_type(&self) -> FlatType {
        self.stabilizer.flat_type
    }

    pub fn orientable(&self) -> bool {
        self.stabilizer.orientable()
    }
}

pub fn cusps(scheme: &PairingScheme) -> Result<Vec<Cusp>, CuspError> {
    vertex_cycles(scheme)
        .into_iter()
        .enumerate()
        .map(|(i, vertices)| {
            let stabilizer = Stabilizer::new(scheme, vertices[0])?;
            Ok(Cusp {
                index: i + 1,
                vertices,
                stabilizer,
            })
        })
        .collect()
}

/// A boundary component of the orientable double cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedComponent {
    /// Name such as `E2` or `E2'` (the second lift of an orientable cusp).
    pub name: String,
    pub cusp: usize,
    pub primed: bool,
    pub flat_type: FlatType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoverBoundary {
    pub components: Vec<LiftedComponent>,
    pub tori: usize,
    pub klein_bottles: usize,
    /// Whether every lifted component is of type A or B, so each one is filled by a
    /// torus or a Klein bottle.
    pub fillable: bool,
}

impl DoubleCoverBoundary {
    /// Lifted types, later letters first, e.g. `BBBAAAA`.
    pub fn type_string(&self) -> String {
        let mut letters: Vec<FlatType> = self.components.iter().map(|c| c.flat_type).collect();
        letters.sort_by_key(|t| std::cmp::Reverse(*t));
        letters.iter().map(|t| t.letter()).collect()
    }
}

/// Orientable cusps lift to two copies of themselves; nonorientable ones to their
/// orientable double cover.
pub fn double_cover_boundary(cusps: &[Cusp]) -> Result<DoubleCoverBoundary, CuspError> {
    let mut components = Vec::new();
    for c in cusps {
        let lift = c.stabilizer.lift_type()?;
        components.push(LiftedComponent {
            name: c.name(),
            cusp: c.index,
            primed: false,
            flat_type: lift,
        });
        if c.orientable() {
            components.push(LiftedComponent {
                name: format!("{}'", c.name()),
                cusp: c.index,
                primed: true,
                flat_type: lift,
            });
        }
    }
    let tori = components
        .iter()
        .filter(|c| c.flat_type == FlatType::A)
        .count();
    let klein_bottles = components
        .iter()
        .filter(|c| c.flat_type == FlatType::B)
        .count();
    let fillable = tori + klein_bottles == components.len();
    Ok(DoubleCoverBoundary {
        components,
        tori,
        klein_bottles,
        fillable,
    })
}
