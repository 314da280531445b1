//! Side-pairing codes of the ideal 24-cell.
//!
//! A code is six hexadecimal characters, one per group of four sides
//! sharing the same nonzero positions. Each character names the element of
//! `K = Z_2^4` (the group generated by reflections in the coordinate
//! hyperplanes) that is the K-part of the two side-pairings of its group.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cell24::{SideId, VertexId, SIDE_COUNT};
use crate::presentation::{Letter, Word};

/// Number of side-pairing generators (`a` through `l`).
pub const GEN_COUNT: usize = 12;

/// Printable names of the side-pairing generators, in index order.
pub const GEN_NAMES: [&str; GEN_COUNT] =
    ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"];

/// Nonzero coordinate positions of each side group, in code order.
pub const GROUP_POSITIONS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];

/// One entry of a four-symbol label. The derived order is `+ < - < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '\u{2212}' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }
}

/// A label such as `+-00` naming a side, an ideal vertex or an element of K.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignLabel4(pub [Sign; 4]);

impl SignLabel4 {
    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|s| !s.is_zero()).count()
    }

    /// Positions holding a nonzero symbol, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..4).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == Sign::Minus).count()
    }
}

impl fmt::Display for SignLabel4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignLabel4 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs: Vec<Sign> = s
            .chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| format!("bad label symbol {c:?} in {s:?}")))
            .collect::<Result<_, _>>()?;
        let arr: [Sign; 4] = signs
            .try_into()
            .map_err(|_| format!("label {s:?} must have four symbols"))?;
        Ok(SignLabel4(arr))
    }
}

impl Serialize for SignLabel4 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An element of `K = Z_2^4`; bit `i` set means reflection in the plane `x_{i+1} = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KElem(u8);

impl KElem {
    pub const IDENTITY: KElem = KElem(0);

    pub fn from_bits(bits: u8) -> KElem {
        KElem(bits & 0xF)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn flips(self, position: usize) -> bool {
        self.0 >> position & 1 == 1
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Product in K (which is abelian and of exponent 2).
    pub fn compose(self, other: KElem) -> KElem {
        KElem(self.0 ^ other.0)
    }

    pub fn apply(self, label: SignLabel4) -> SignLabel4 {
        let mut out = label.0;
        for (i, s) in out.iter_mut().enumerate() {
            if self.flips(i) {
                *s = s.flip();
            }
        }
        SignLabel4(out)
    }

    pub fn apply_side(self, side: SideId) -> SideId {
        SideId::from_label(self.apply(side.label())).expect("K preserves sides")
    }

    pub fn apply_vertex(self, vertex: VertexId) -> VertexId {
        VertexId::from_label(self.apply(vertex.label())).expect("K preserves ideal vertices")
    }

    /// The `k_±±±±` label of this element.
    pub fn label(self) -> SignLabel4 {
        self.apply(SignLabel4([Sign::Plus; 4]))
    }

    /// Orientation-reversing side-pairings have K-parts with an even number of minuses.
    pub fn reverses_pairing_orientation(self) -> bool {
        self.0.count_ones().is_multiple_of(2)
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Serialize for KElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("code {code:?} has {len} characters, expected 6")]
    Length { code: String, len: usize },
    #[error("invalid code character {ch:?} at position {position}")]
    InvalidChar { position: usize, ch: char },
    #[error("character {ch:?} at position {position} fixes every side of its group")]
    SelfPaired { position: usize, ch: char },
}

/// Decodes one code character: hex value, 4-bit binary, digit order reversed,
/// `0 -> +`, `1 -> -`. Equivalently bit `i` of the value flips position `i`.
pub fn decode_char(c: char) -> Option<KElem> {
    let upper = c.to_ascii_uppercase();
    match upper {
        '1'..='9' | 'A'..='F' => upper.to_digit(16).map(|v| KElem::from_bits(v as u8)),
        _ => None,
    }
}

/// A decoded side-pairing of the 24-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingScheme {
    code: String,
    kparts: [KElem; 6],
    /// `(source, target)` side of each generator.
    pairs: [(SideId, SideId); GEN_COUNT],
    /// The side-pairing leaving each side, indexed by side.
    outgoing: [Letter; SIDE_COUNT],
}

impl PairingScheme {
    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn kparts(&self) -> &[KElem; 6] {
        &self.kparts
    }

    /// K-part shared by both generators of `gen`'s group.
    pub fn kpart_of_gen(&self, gen: usize) -> KElem {
        self.kparts[gen / 2]
    }

    pub fn kpart_of_side(&self, side: SideId) -> KElem {
        self.kparts[side.group()]
    }

    pub fn source(&self, gen: usize) -> SideId {
        self.pairs[gen].0
    }

    pub fn target(&self, gen: usize) -> SideId {
        self.pairs[gen].1
    }

    /// The side-pairing `s_S` that maps `side` onto its partner side.
    pub fn outgoing_letter(&self, side: SideId) -> Letter {
        self.outgoing[side.index()]
    }

    /// The side whose outgoing side-pairing is `letter`.
    pub fn side_of_letter(&self, letter: Letter) -> SideId {
        if letter.is_inverse() {
            self.target(letter.gen())
        } else {
            self.source(letter.gen())
        }
    }

    /// Image of `side` under its own side-pairing.
    pub fn partner(&self, side: SideId) -> SideId {
        self.kpart_of_side(side).apply_side(side)
    }

    pub fn is_reversing(&self, gen: usize) -> bool {
        self.kpart_of_gen(gen).reverses_pairing_orientation()
    }

    /// Parity of orientation-reversing letters in `word`.
    pub fn word_reverses(&self, word: &Word) -> bool {
        word.letters()
            .iter()
            .filter(|l| self.is_reversing(l.gen()))
            .count()
            % 2
            == 1
    }

    pub fn orientation_character(&self) -> [bool; GEN_COUNT] {
        std::array::from_fn(|g| self.is_reversing(g))
    }

    pub fn reversing_generators(&self) -> Vec<usize> {
        (0..GEN_COUNT).filter(|&g| self.is_reversing(g)).collect()
    }

    pub fn gen_names() -> Vec<String> {
        GEN_NAMES.iter().map(|s| s.to_string()).collect()
    }
}

impl FromStr for PairingScheme {
    type Err = DecodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        decode_code(s)
    }
}

/// Decodes a six-character code into its side-pairing scheme.
pub fn decode_code(code: &str) -> Result<PairingScheme, DecodeError> {
    let chars: Vec<char> = code.trim().chars().collect();
    if chars.len() != 6 {
        return Err(DecodeError::Length {
            code: code.to_string(),
            len: chars.len(),
        });
    }
    let mut kparts = [KElem::IDENTITY; 6];
    for (position, &ch) in chars.iter().enumerate() {
        kparts[position] = decode_char(ch).ok_or(DecodeError::InvalidChar { position, ch })?;
    }

    let placeholder = SideId::all().next().expect("sides exist");
    let mut pairs = [(placeholder, placeholder); GEN_COUNT];
    let mut outgoing = [Letter::new(0, false); SIDE_COUNT];
    let dictionary = [
        (Sign::Plus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
    ];
    for (group, &(p, q)) in GROUP_POSITIONS.iter().enumerate() {
        let k = kparts[group];
        if !k.flips(p) && !k.flips(q) {
            return Err(DecodeError::SelfPaired {
                position: group,
                ch: chars[group],
            });
        }
        let side_with = |sp: Sign, sq: Sign| {
            let mut label = [Sign::Zero; 4];
            label[p] = sp;
            label[q] = sq;
            SideId::from_label(SignLabel4(label)).expect("two nonzero symbols")
        };
        let mut used: Vec<SideId> = Vec::with_capacity(4);
        for slot in 0..2 {
            let source = dictionary
                .iter()
                .map(|&(sp, sq)| side_with(sp, sq))
                .find(|s| !used.contains(s))
                .expect("four sides per group");
            let target = k.apply_side(source);
            used.push(source);
            used.push(target);
            let gen = 2 * group + slot;
            pairs[gen] = (source, target);
            outgoing[source.index()] = Letter::new(gen, false);
            outgoing[target.index()] = Letter::new(gen, true);
        }
    }
    Ok(PairingScheme {
        code: chars.iter().collect::<String>().to_ascii_uppercase(),
        kparts,
        pairs,
        outgoing,
    })
}

/// One line of a census file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub id: String,
    pub code: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("line {line}: {message}")]
pub struct CensusDiagnostic {
    pub line: usize,
    pub message: String,
}

/// Parses census text (`<id> <code>` per line, `#` comments). Bad lines become
/// diagnostics; parsing never stops early.
pub fn parse_census(text: &str) -> (Vec<CensusEntry>, Vec<CensusDiagnostic>) {
    let mut entries = Vec::new();
    let mut diagnostics = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(id), Some(code), None) = (fields.next(), fields.next(), fields.next()) else {
            diagnostics.push(CensusDiagnostic {
                line,
                message: format!("expected `<id> <code>`, got {trimmed:?}"),
            });
            continue;
        };
        match decode_code(code) {
            Ok(scheme) => entries.push(CensusEntry {
                id: id.to_string(),
                code: scheme.code().to_string(),
                line,
            }),
            Err(e) => diagnostics.push(CensusDiagnostic {
                line,
                message: e.to_string(),
            }),
        }
    }
    (entries, diagnostics)
}
