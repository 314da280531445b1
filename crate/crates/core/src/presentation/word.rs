use std::fmt;

use thiserror::Error;

/// A generator or its inverse, packed as `2 * gen + inverse`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Letter {
        Letter((gen as u32) << 1 | inverse as u32)
    }

    /// Letter from its coset-table column index.
    pub fn from_column(col: usize) -> Letter {
        Letter(col as u32)
    }

    pub fn column(self) -> usize {
        self.0 as usize
    }

    pub fn gen(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn exponent(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

/// A word in the free group; not reduced unless a reducing method is called.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![Letter::new(g, false)])
    }

    /// Builds a word from signed 1-based indices: `2` is the second generator, `-2` its inverse.
    pub fn from_signed(signed: &[i32]) -> Word {
        Word(
            signed
                .iter()
                .map(|&s| Letter::new(s.unsigned_abs() as usize - 1, s < 0))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self * inner * self^-1`.
    pub fn conjugate(&self, inner: &Word) -> Word {
        self.concat(inner).concat(&self.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by cancelling inverse letters at the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j > i + 1 && w[i] == w[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.0.len());
        Word(v)
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.gen() == gen)
            .map(|l| l.exponent())
            .sum()
    }

    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen() == gen).count()
    }

    /// Renders with the given generator names; inverses print as `x^-1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }

    pub fn parse(text: &str, names: &[String]) -> Result<Word, ParseWordError> {
        let mut parser = Parser {
            chars: text.chars().collect(),
            pos: 0,
            names,
        };
        let w = parser.word()?;
        parser.skip_separators();
        if parser.pos < parser.chars.len() {
            return Err(parser.error("unexpected character"));
        }
        Ok(w)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let spaced = self.names.iter().any(|n| n.chars().count() > 1);
        for (i, l) in self.word.0.iter().enumerate() {
            if spaced && i > 0 {
                write!(f, " ")?;
            }
            match self.names.get(l.gen()) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "x{}", l.gen())?,
            }
            if l.is_inverse() {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse word {text:?} at offset {offset}: {reason}")]
pub struct ParseWordError {
    pub text: String,
    pub offset: usize,
    pub reason: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> ParseWordError {
        ParseWordError {
            text: self.chars.iter().collect(),
            offset: self.pos,
            reason: reason.to_string(),
        }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_whitespace() || matches!(self.chars[self.pos], '*' | '.'))
        {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word, ParseWordError> {
        let mut out = Word::identity();
        loop {
            self.skip_separators();
            let Some(&c) = self.chars.get(self.pos) else {
                break;
            };
            let atom = if c == '(' {
                self.pos += 1;
                let inner = self.word()?;
                self.skip_separators();
                if self.chars.get(self.pos) != Some(&')') {
                    return Err(self.error("missing ')'"));
                }
                self.pos += 1;
                inner
            } else if c == ')' {
                break;
            } else if c == '1' && !self.name_at_pos() {
                self.pos += 1;
                Word::identity()
            } else {
                self.name()?
            };
            let exp = self.exponent()?;
            out = out.concat(&atom.pow(exp));
        }
        Ok(out)
    }

    fn name_at_pos(&self) -> bool {
        self.longest_name().is_some()
    }

    fn longest_name(&self) -> Option<(usize, usize)> {
        let rest: String = self.chars[self.pos..].iter().collect();
        self.names
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_empty() && rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.chars().count())
            .map(|(i, n)| (i, n.chars().count()))
    }

    fn name(&mut self) -> Result<Word, ParseWordError> {
        let (gen, len) = self
            .longest_name()
            .ok_or_else(|| self.error("unknown generator"))?;
        self.pos += len;
        Ok(Word::gen(gen))
    }

    fn exponent(&mut self) -> Result<i64, ParseWordError> {
        if self.chars.get(self.pos) != Some(&'^') {
            return Ok(1);
        }
        self.pos += 1;
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.error("bad exponent"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        "abcdefghijkl".chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn parse_and_print() {
        let n = names();
        let w = Word::parse("g^-1j^-1h^-1i", &n).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string_with(&n), "g^-1j^-1h^-1i");
        let w = Word::parse("c(a^-1k^-1eg)c^-1", &n).unwrap();
        assert_eq!(w.to_string_with(&n), "ca^-1k^-1egc^-1");
        let w = Word::parse("(ab)^-2", &n).unwrap();
        assert_eq!(w.to_string_with(&n), "b^-1a^-1b^-1a^-1");
        assert!(Word::parse("1", &n).unwrap().is_empty());
        assert!(Word::parse("xz", &n).is_err());
        assert!(Word::parse("(ab", &n).is_err());
    }

    #[test]
    fn multi_char_names() {
        let n: Vec<String> = ["c_0", "c_1", "e_0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let w = Word::parse("c_1 e_0^-1", &n).unwrap();
        assert_eq!(w, Word::from_signed(&[2, -3]));
        assert_eq!(w.to_string_with(&n), "c_1 e_0^-1");
    }

    #[test]
    fn reductions() {
        let w = Word::from_signed(&[1, 2, -2, 3, -1]);
        assert_eq!(w.free_reduce(), Word::from_signed(&[1, 3, -1]));
        assert_eq!(w.cyclic_reduce(), Word::from_signed(&[3]));
        assert_eq!(w.concat(&w.inverse()).free_reduce(), Word::identity());
        assert_eq!(
            Word::from_signed(&[1, 2]).pow(-1),
            Word::from_signed(&[-2, -1])
        );
    }
}
