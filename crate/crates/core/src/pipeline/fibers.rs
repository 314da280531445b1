//! Fiber choices: one translation per boundary component of the double cover.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cusp::{
    is_normal_translation, is_primitive_in_lift, locate_translation, Cusp, CuspError, Stabilizer,
};
use crate::encoding::PairingScheme;
use crate::presentation::{ParseWordError, Word};

/// A boundary component of the double cover: cusp `E_i`, or its second lift `E_i'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftName {
    /// 1-based cusp index.
    pub cusp: usize,
    pub primed: bool,
}

impl fmt::Display for LiftName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}", self.cusp, if self.primed { "'" } else { "" })
    }
}

impl Serialize for LiftName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberParseError {
    #[error("expected a lift name like E2 or E2', got {0:?}")]
    BadLift(String),
    #[error("expected `<lift>=<word>` or `<lift>=<integer>`, got {0:?}")]
    MissingEquals(String),
    #[error(transparent)]
    Word(#[from] ParseWordError),
    #[error("bad power {0:?}")]
    BadPower(String),
}

impl FromStr for LiftName {
    type Err = FiberParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || FiberParseError::BadLift(s.to_string());
        let rest = t
            .strip_prefix('E')
            .or_else(|| t.strip_prefix('e'))
            .ok_or_else(bad)?;
        let (digits, primed) = match rest.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let cusp: usize = digits.parse().map_err(|_| bad())?;
        if cusp == 0 {
            return Err(bad());
        }
        Ok(LiftName { cusp, primed })
    }
}

/// A requested fiber `E2'=c a c^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSpec {
    pub lift: LiftName,
    pub word: Word,
}

impl FromStr for FiberSpec {
    type Err = FiberParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lift, word) = s
            .split_once('=')
            .ok_or_else(|| FiberParseError::MissingEquals(s.to_string()))?;
        Ok(FiberSpec {
            lift: lift.parse()?,
            word: Word::parse(word.trim(), &PairingScheme::gen_names())?,
        })
    }
}

/// A requested power `E5'=3` on a fiber, for finite covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerSpec {
    pub lift: LiftName,
    pub power: i64,
}

impl FromStr for PowerSpec {
    type Err = FiberParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lift, m) = s
            .split_once('=')
            .ok_or_else(|| FiberParseError::MissingEquals(s.to_string()))?;
        let power: i64 = m
            .trim()
            .parse()
            .map_err(|_| FiberParseError::BadPower(m.to_string()))?;
        if power < 1 {
            return Err(FiberParseError::BadPower(m.to_string()));
        }
        Ok(PowerSpec {
            lift: lift.parse()?,
            power,
        })
    }
}

/// The test a requested fiber failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberCheck {
    UnknownLift,
    Duplicate,
    NotATranslation,
    WrongLift,
    NotNormal,
    NotPrimitive,
    NoCandidate,
}

impl fmt::Display for FiberCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FiberCheck::UnknownLift => "no such boundary component",
            FiberCheck::Duplicate => "component given twice",
            FiberCheck::NotATranslation => "not a conjugate of a translation of the cusp",
            FiberCheck::WrongLift => "lies in the other lift of the cusp",
            FiberCheck::NotNormal => "not normal in the cusp group",
            FiberCheck::NotPrimitive => "not primitive in the cusp group",
            FiberCheck::NoCandidate => "no normal primitive translation found",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("fiber {lift} = {word}: {check}")]
    Rejected {
        lift: LiftName,
        word: String,
        check: FiberCheck,
    },
    #[error(transparent)]
    Cusp(#[from] CuspError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberSource {
    Given,
    Auto,
}

/// An accepted fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub lift: LiftName,
    /// The word in the side-pairing group, as given.
    pub word: Word,
    pub conjugator: Word,
    pub core: Word,
    pub vertex: crate::cell24::VertexId,
    /// The core's translation vector in the cube frame at `vertex`.
    pub translation: [i64; 3],
    pub source: FiberSource,
}

impl Serialize for Fiber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            lift: LiftName,
            word: String,
            conjugator: String,
            core: String,
            vertex: String,
            translation: [i64; 3],
            source: &'a FiberSource,
        }
        let names = PairingScheme::gen_names();
        Repr {
            lift: self.lift,
            word: self.word.to_string_with(&names),
            conjugator: self.conjugator.to_string_with(&names),
            core: self.core.to_string_with(&names),
            vertex: self.vertex.to_string(),
            translation: self.translation,
            source: &self.source,
        }
        .serialize(serializer)
    }
}

/// The components of the double cover, in cusp order with `E_i` before `E_i'`.
pub fn lifts(cusps: &[Cusp]) -> Vec<LiftName> {
    let mut out = Vec::new();
    for c in cusps {
        out.push(LiftName {
            cusp: c.index,
            primed: false,
        });
        if c.orientable() {
            out.push(LiftName {
                cusp: c.index,
                primed: true,
            });
        }
    }
    out
}

/// Checks that `word` is a normal, primitive translation of the lifted cusp `lift`.
pub fn check_fiber(
    scheme: &PairingScheme,
    cusps: &[Cusp],
    lift: LiftName,
    word: &Word,
    source: FiberSource,
) -> Result<Fiber, FiberError> {
    let reject = |check| FiberError::Rejected {
        lift,
        word: word.to_string_with(&PairingScheme::gen_names()),
        check,
    };
    let cusp = cusps
        .get(lift.cusp.wrapping_sub(1))
        .ok_or_else(|| reject(FiberCheck::UnknownLift))?;
    if lift.primed && !cusp.orientable() {
        return Err(reject(FiberCheck::UnknownLift));
    }
    let located = locate_translation(scheme, cusp, word)
        .ok_or_else(|| reject(FiberCheck::NotATranslation))?;
    if located.primed != lift.primed {
        return Err(reject(FiberCheck::WrongLift));
    }
    let group = Stabilizer::new(scheme, located.vertex)?.lift_group();
    let t = located.element.trans;
    if !is_normal_translation(t, &group.holonomy()) {
        return Err(reject(FiberCheck::NotNormal));
    }
    if !is_primitive_in_lift(t, &group) {
        return Err(reject(FiberCheck::NotPrimitive));
    }
    Ok(Fiber {
        lift,
        word: word.clone(),
        conjugator: located.conjugator,
        core: located.core,
        vertex: located.vertex,
        translation: t,
        source,
    })
}

/// First normal primitive translation of the lift: block translations by word length,
/// then the reference lattice. The second lift conjugates by `rep`.
pub fn auto_fiber(
    scheme: &PairingScheme,
    cusps: &[Cusp],
    lift: LiftName,
    rep: &Word,
) -> Result<Fiber, FiberError> {
    let cusp = cusps
        .get(lift.cusp.wrapping_sub(1))
        .ok_or(FiberError::Rejected {
            lift,
            word: String::new(),
            check: FiberCheck::UnknownLift,
        })?;
    let st = &cusp.stabilizer;
    let mut candidates: Vec<&Word> = st.block_translations().iter().map(|e| &e.word).collect();
    candidates.sort_by_key(|w| w.len());
    candidates.extend(st.lattice.iter().map(|e| &e.word));
    for t in candidates {
        let word = if lift.primed {
            rep.conjugate(t)
        } else {
            t.clone()
        };
        if let Ok(f) = check_fiber(scheme, cusps, lift, &word, FiberSource::Auto) {
            return Ok(f);
        }
    }
    Err(FiberError::Rejected {
        lift,
        word: String::new(),
        check: FiberCheck::NoCandidate,
    })
}

/// One fiber per lift: the requested ones (validated) and automatic choices for the rest.
pub fn select_fibers(
    scheme: &PairingScheme,
    cusps: &[Cusp],
    requested: &[FiberSpec],
    rep: &Word,
) -> Result<Vec<Fiber>, FiberError> {
    let all = lifts(cusps);
    for (i, spec) in requested.iter().enumerate() {
        let word = || spec.word.to_string_with(&PairingScheme::gen_names());
        if !all.contains(&spec.lift) {
            return Err(FiberError::Rejected {
                lift: spec.lift,
                word: word(),
                check: FiberCheck::UnknownLift,
            });
        }
        if requested[..i].iter().any(|s| s.lift == spec.lift) {
            return Err(FiberError::Rejected {
                lift: spec.lift,
                word: word(),
                check: FiberCheck::Duplicate,
            });
        }
    }
    all.into_iter()
        .map(|lift| match requested.iter().find(|s| s.lift == lift) {
            Some(spec) => check_fiber(scheme, cusps, lift, &spec.word, FiberSource::Given),
            None => auto_fiber(scheme, cusps, lift, rep),
        })
        .collect()
}
