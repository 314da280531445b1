//! Combinatorics of the right-angled ideal 24-cell: sides, ideal vertices,
//! incidence, ridges and the horosphere cube at each ideal vertex.

use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::encoding::{KElem, Sign, SignLabel4, GROUP_POSITIONS};

pub const SIDE_COUNT: usize = 24;
pub const VERTEX_COUNT: usize = 24;
pub const RIDGE_COUNT: usize = 96;

const SIGNS: [Sign; 3] = [Sign::Plus, Sign::Minus, Sign::Zero];

fn all_labels() -> impl Iterator<Item = SignLabel4> {
    (0..81).map(|mut n| {
        let mut out = [Sign::Zero; 4];
        for slot in out.iter_mut().rev() {
            *slot = SIGNS[n % 3];
            n /= 3;
        }
        SignLabel4(out)
    })
}

fn side_table() -> &'static [SignLabel4; SIDE_COUNT] {
    static TABLE: OnceLock<[SignLabel4; SIDE_COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let v: Vec<_> = all_labels().filter(|l| l.nonzero_count() == 2).collect();
        v.try_into().expect("24 sides")
    })
}

fn vertex_table() -> &'static [SignLabel4; VERTEX_COUNT] {
    static TABLE: OnceLock<[SignLabel4; VERTEX_COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v: Vec<_> = all_labels()
            .filter(|l| matches!(l.nonzero_count(), 1 | 4))
            .collect();
        v.sort_by_key(|l| (l.nonzero_count() == 4, *l));
        v.try_into().expect("24 ideal vertices")
    })
}

/// A side of the 24-cell, numbered in label order (`+ < - < 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideId(u8);

impl SideId {
    pub fn all() -> impl Iterator<Item = SideId> {
        (0..SIDE_COUNT as u8).map(SideId)
    }

    pub fn from_index(index: usize) -> SideId {
        assert!(index < SIDE_COUNT);
        SideId(index as u8)
    }

    pub fn from_label(label: SignLabel4) -> Option<SideId> {
        side_table()
            .iter()
            .position(|l| *l == label)
            .map(|i| SideId(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn label(self) -> SignLabel4 {
        side_table()[self.index()]
    }

    /// The pair of nonzero positions.
    pub fn positions(self) -> (usize, usize) {
        let s = self.label().support();
        (s[0], s[1])
    }

    /// Index of the side group (and of the code character) this side belongs to.
    pub fn group(self) -> usize {
        let pos = self.positions();
        GROUP_POSITIONS
            .iter()
            .position(|&g| g == pos)
            .expect("valid side positions")
    }
}

impl fmt::Display for SideId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.label())
    }
}

impl Serialize for SideId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An ideal vertex. Unit-type vertices (`v_{+000}` etc.) come first, then
/// half-type vertices (`v_{±±±±}`), each block in label order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u8);

impl VertexId {
    pub fn all() -> impl Iterator<Item = VertexId> {
        (0..VERTEX_COUNT as u8).map(VertexId)
    }

    pub fn from_index(index: usize) -> VertexId {
        assert!(index < VERTEX_COUNT);
        VertexId(index as u8)
    }

    pub fn from_label(label: SignLabel4) -> Option<VertexId> {
        vertex_table()
            .iter()
            .position(|l| *l == label)
            .map(|i| VertexId(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn label(self) -> SignLabel4 {
        vertex_table()[self.index()]
    }

    pub fn is_unit(self) -> bool {
        self.label().nonzero_count() == 1
    }

    /// Steps per axis of the block of cubes that is a fundamental domain
    /// for the reference translation lattice (2 for unit-type, 4 for half-type).
    pub fn block_size(self) -> i64 {
        if self.is_unit() {
            2
        } else {
            4
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.label())
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Whether two distinct sides meet in a ridge inside hyperbolic space.
pub fn sides_intersect(s1: SideId, s2: SideId) -> bool {
    if s1 == s2 {
        return false;
    }
    let (a, b) = (s1.label().0, s2.label().0);
    let shared: Vec<usize> = (0..4)
        .filter(|&i| !a[i].is_zero() && !b[i].is_zero())
        .collect();
    shared.len() == 1 && a[shared[0]] == b[shared[0]]
}

/// Whether two sides touch only at the sphere at infinity.
pub fn sides_touch_at_infinity(s1: SideId, s2: SideId) -> bool {
    let (a, b) = (s1.label().0, s2.label().0);
    let shared: Vec<usize> = (0..4)
        .filter(|&i| !a[i].is_zero() && !b[i].is_zero())
        .collect();
    match shared.len() {
        0 => true,
        2 => {
            let equal = shared.iter().filter(|&&i| a[i] == b[i]).count();
            equal == 1
        }
        _ => false,
    }
}

pub fn vertex_on_side(v: VertexId, s: SideId) -> bool {
    let (vl, sl) = (v.label().0, s.label().0);
    if v.is_unit() {
        let p = v.label().support()[0];
        sl[p] == vl[p]
    } else {
        (0..4).all(|i| sl[i].is_zero() || sl[i] == vl[i])
    }
}

pub fn sides_at(v: VertexId) -> Vec<SideId> {
    SideId::all().filter(|&s| vertex_on_side(v, s)).collect()
}

pub fn vertices_on(s: SideId) -> Vec<VertexId> {
    VertexId::all().filter(|&v| vertex_on_side(v, s)).collect()
}

/// An unordered pair of intersecting sides, stored with the smaller side first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ridge {
    pub sides: (SideId, SideId),
}

impl Ridge {
    pub fn new(a: SideId, b: SideId) -> Option<Ridge> {
        sides_intersect(a, b).then(|| Ridge {
            sides: (a.min(b), a.max(b)),
        })
    }
}

pub fn ridges() -> Vec<Ridge> {
    let mut out = Vec::with_capacity(RIDGE_COUNT);
    for a in SideId::all() {
        for b in SideId::all().filter(|&b| b > a) {
            if let Some(r) = Ridge::new(a, b) {
                out.push(r);
            }
        }
    }
    out
}

/// One axis of a horosphere cube: the face crossed when moving in the
/// positive direction, and the opposite face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubeAxis {
    pub positive: SideId,
    pub negative: SideId,
    /// 1-based coordinate index naming this axis in holonomy labels.
    pub coordinate: usize,
}

/// The cube `Q ∩ C` for a small horosphere `C` at an ideal vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubeFrame {
    pub vertex: VertexId,
    pub axes: [CubeAxis; 3],
}

impl CubeFrame {
    pub fn faces(&self) -> impl Iterator<Item = SideId> + '_ {
        self.axes.iter().flat_map(|a| [a.positive, a.negative])
    }

    /// Axis index and direction (`true` = positive) of a face.
    pub fn locate(&self, side: SideId) -> Option<(usize, bool)> {
        self.axes.iter().enumerate().find_map(|(i, a)| {
            if a.positive == side {
                Some((i, true))
            } else if a.negative == side {
                Some((i, false))
            } else {
                None
            }
        })
    }
}

fn side_from(entries: [(usize, Sign); 2]) -> SideId {
    let mut label = [Sign::Zero; 4];
    for (p, s) in entries {
        label[p] = s;
    }
    SideId::from_label(SignLabel4(label)).expect("two nonzero symbols")
}

/// Canonical cube frame at `v`.
///
/// Unit-type `v` with nonzero position `p`: one axis per other coordinate
/// `q` (ascending), positive face carrying `+` at `q`. Half-type `v`: the
/// frame at `v_{++++}` has axes `S++00|S00++`, `S+0+0|S0+0+`, `S0++0|S+00+`;
/// other half-type frames are its image under the K-element carrying
/// `v_{++++}` to `v`.
pub fn cube_frame(v: VertexId) -> CubeFrame {
    let label = v.label().0;
    if v.is_unit() {
        let p = v.label().support()[0];
        let sp = label[p];
        let mut axes = Vec::with_capacity(3);
        for q in (0..4).filter(|&q| q != p) {
            axes.push(CubeAxis {
                positive: side_from([(p, sp), (q, Sign::Plus)]),
                negative: side_from([(p, sp), (q, Sign::Minus)]),
                coordinate: q + 1,
            });
        }
        CubeFrame {
            vertex: v,
            axes: axes.try_into().expect("three axes"),
        }
    } else {
        let k = KElem::from_bits(
            (0..4)
                .filter(|&i| label[i] == Sign::Minus)
                .map(|i| 1u8 << i)
                .sum(),
        );
        let s = |text: &str| {
            k.apply_side(SideId::from_label(text.parse().expect("static label")).expect("side"))
        };
        let pairs = [("++00", "00++"), ("+0+0", "0+0+"), ("0++0", "+00+")];
        let axes = std::array::from_fn(|i| CubeAxis {
            positive: s(pairs[i].0),
            negative: s(pairs[i].1),
            coordinate: i + 1,
        });
        CubeFrame { vertex: v, axes }
    }
}
