//! Walking through the cube tiling of a horosphere centered at an ideal vertex.

use std::fmt;

use serde::Serialize;

use crate::cell24::{cube_frame, SideId, VertexId};
use crate::encoding::{KElem, PairingScheme};
use crate::presentation::{Letter, Word};

/// Diagonal rotational part, one sign per cube axis.
pub type Rot = [i8; 3];

pub const IDENTITY_ROT: Rot = [1, 1, 1];

pub fn rot_compose(a: Rot, b: Rot) -> Rot {
    [a[0] * b[0], a[1] * b[1], a[2] * b[2]]
}

pub fn rot_det(r: Rot) -> i8 {
    r[0] * r[1] * r[2]
}

pub fn rot_apply(r: Rot, t: [i64; 3]) -> [i64; 3] {
    [r[0] as i64 * t[0], r[1] as i64 * t[1], r[2] as i64 * t[2]]
}

/// Renders the reflections making up `r`, e.g. `x2x3`, using the frame's coordinate names.
pub fn rot_planes(r: Rot, coordinates: [usize; 3]) -> String {
    let s: String = (0..3)
        .filter(|&i| r[i] < 0)
        .map(|i| format!("x{}", coordinates[i]))
        .collect();
    if s.is_empty() {
        "trivial".to_string()
    } else {
        s
    }
}

/// A group element that maps the starting cube to the cube at offset `trans`, in the
/// coordinates of the starting vertex's cube frame: `x ↦ rot·x + trans`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineIso3 {
    pub rot: Rot,
    /// Offset in cube units.
    pub trans: [i64; 3],
    pub word: Word,
    /// Whether the element stabilizes the starting vertex.
    pub fixes_vertex: bool,
}

impl AffineIso3 {
    pub fn identity() -> Self {
        AffineIso3 {
            rot: IDENTITY_ROT,
            trans: [0; 3],
            word: Word::identity(),
            fixes_vertex: true,
        }
    }

    pub fn is_translation(&self) -> bool {
        self.fixes_vertex && self.rot == IDENTITY_ROT
    }

    /// Composition `self ∘ other` (apply `other` first); words concatenate as group elements.
    pub fn compose(&self, other: &AffineIso3) -> AffineIso3 {
        let t = rot_apply(self.rot, other.trans);
        AffineIso3 {
            rot: rot_compose(self.rot, other.rot),
            trans: [
                t[0] + self.trans[0],
                t[1] + self.trans[1],
                t[2] + self.trans[2],
            ],
            word: self.word.concat(&other.word),
            fixes_vertex: self.fixes_vertex && other.fixes_vertex,
        }
    }
}

impl fmt::Display for AffineIso3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} rot=({:+},{:+},{:+}) trans=({},{},{})",
            self.word.to_string_with(&PairingScheme::gen_names()),
            self.rot[0],
            self.rot[1],
            self.rot[2],
            self.trans[0],
            self.trans[1],
            self.trans[2]
        )
    }
}

impl Serialize for AffineIso3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            word: String,
            rot: Rot,
            trans: [i64; 3],
            fixes_vertex: bool,
        }
        Repr {
            word: self.word.to_string_with(&PairingScheme::gen_names()),
            rot: self.rot,
            trans: self.trans,
            fixes_vertex: self.fixes_vertex,
        }
        .serialize(serializer)
    }
}

/// Position in the tiling: which side of the 24-cell labels each face of the current cube.
#[derive(Clone, Debug)]
pub struct Walker<'a> {
    scheme: &'a PairingScheme,
    start: VertexId,
    /// Face in direction `(axis, positive)` at index `2 * axis + (negative as usize)`.
    faces: [SideId; 6],
    /// The vertex of the 24-cell this cube belongs to.
    vertex: VertexId,
    kprod: KElem,
    parity: [bool; 3],
    offset: [i64; 3],
    word: Word,
}

impl<'a> Walker<'a> {
    pub fn new(scheme: &'a PairingScheme, start: VertexId) -> Self {
        let frame = cube_frame(start);
        let faces = std::array::from_fn(|i| {
            let axis = frame.axes[i / 2];
            if i % 2 == 0 {
                axis.positive
            } else {
                axis.negative
            }
        });
        Walker {
            scheme,
            start,
            faces,
            vertex: start,
            kprod: KElem::IDENTITY,
            parity: [false; 3],
            offset: [0; 3],
            word: Word::identity(),
        }
    }

    /// Crosses the face in direction `(axis, positive)`.
    pub fn step(&mut self, axis: usize, positive: bool) {
        let side = self.faces[2 * axis + usize::from(!positive)];
        let k = self.scheme.kpart_of_side(side);
        self.word.push(self.scheme.outgoing_letter(side).inverse());
        let old = self.faces;
        for i in 0..6 {
            // entering through a face flips that axis
            let src = if i / 2 == axis { i ^ 1 } else { i };
            self.faces[i] = k.apply_side(old[src]);
        }
        self.vertex = k.apply_vertex(self.vertex);
        self.kprod = self.kprod.compose(k);
        self.parity[axis] ^= true;
        self.offset[axis] += if positive { 1 } else { -1 };
    }

    /// Crosses the face that reading `letter` leads through; `None` if it is not a face of this cube.
    pub fn step_letter(&mut self, letter: Letter) -> Option<()> {
        let side = self.scheme.side_of_letter(letter.inverse());
        let i = self.faces.iter().position(|&f| f == side)?;
        self.step(i / 2, i % 2 == 0);
        Some(())
    }

    pub fn current_vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn element(&self) -> AffineIso3 {
        let fixes_vertex = self.vertex == self.start;
        let rot = if fixes_vertex {
            let frame = cube_frame(self.start);
            std::array::from_fn(|i| {
                let mut s = if self.parity[i] { -1 } else { 1 };
                if self.start.is_unit() && self.kprod.flips(frame.axes[i].coordinate - 1) {
                    s = -s;
                }
                s
            })
        } else {
            IDENTITY_ROT
        };
        AffineIso3 {
            rot,
            trans: self.offset,
            word: self.word.clone(),
            fixes_vertex,
        }
    }
}

/// Follows `word` through the cube tiling at `v`. Returns `None` if some letter does not
/// cross a face of the current cube.
pub fn trace_word(scheme: &PairingScheme, v: VertexId, word: &Word) -> Option<AffineIso3> {
    let mut w = Walker::new(scheme, v);
    for &l in word.free_reduce().letters() {
        w.step_letter(l)?;
    }
    Some(w.element())
}

pub const AXIS_ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Walks an axis-parallel staircase from the origin to `offset`, axes in the given order.
pub fn staircase(
    scheme: &PairingScheme,
    v: VertexId,
    offset: [i64; 3],
    order: [usize; 3],
) -> AffineIso3 {
    let mut w = Walker::new(scheme, v);
    for axis in order {
        for _ in 0..offset[axis].unsigned_abs() {
            w.step(axis, offset[axis] > 0);
        }
    }
    w.element()
}

/// Every cube of the fundamental block `{0..n-1}^3` (n = 2 unit-type, 4 half-type),
/// reached by the staircase moving axis 1, then 2, then 3. The origin is included.
pub fn block_search(scheme: &PairingScheme, v: VertexId) -> Vec<AffineIso3> {
    let n = v.block_size();
    let mut out = Vec::with_capacity((n * n * n) as usize);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out.push(staircase(scheme, v, [x, y, z], AXIS_ORDERS[0]));
            }
        }
    }
    out
}

/// All distinct staircase words reaching `offset`, over the six axis orders.
pub fn staircase_words(scheme: &PairingScheme, v: VertexId, offset: [i64; 3]) -> Vec<Word> {
    let mut words: Vec<Word> = Vec::new();
    for order in AXIS_ORDERS {
        let w = staircase(scheme, v, offset, order).word;
        if !words.contains(&w) {
            words.push(w);
        }
    }
    words
}

/// The reference translations: `n` steps along each axis.
pub fn t_v_generators(scheme: &PairingScheme, v: VertexId) -> [AffineIso3; 3] {
    let n = v.block_size();
    std::array::from_fn(|axis| {
        let mut offset = [0; 3];
        offset[axis] = n;
        staircase(scheme, v, offset, AXIS_ORDERS[0])
    })
}
