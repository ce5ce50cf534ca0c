use std::collections::BTreeSet;
use std::fmt;

use crate::error::ParseError;

/// A letter of an [`Alphabet`].
///
/// Letters come in converse pairs: the forward letter of pair `i` is stored
/// as `2i` and its backward partner as `2i + 1`, so the converse mapping is a
/// single bit flip and is involutive without any lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn forward(pair: usize) -> Self {
        Letter((pair as u32) << 1)
    }

    pub fn backward(pair: usize) -> Self {
        Letter(((pair as u32) << 1) | 1)
    }

    pub fn from_index(index: usize) -> Self {
        Letter(index as u32)
    }

    pub fn converse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }

    /// Index of the converse pair; equal for `a` and its converse.
    pub fn pair(self) -> usize {
        (self.0 >> 1) as usize
    }

    /// Dense index over the whole alphabet.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The forward letter of this letter's pair.
    pub fn forward_half(self) -> Self {
        Letter(self.0 & !1)
    }
}

/// An alphabet with a converse mapping, partitioned into forward and
/// backward halves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pairs: Vec<(String, String)>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    /// Builds an alphabet from `(forward, backward)` name pairs.
    pub fn new<I, S, T>(pairs: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let pairs: Vec<(String, String)> =
            pairs.into_iter().map(|(f, b)| (f.into(), b.into())).collect();
        let mut seen = BTreeSet::new();
        for (forward, backward) in &pairs {
            for name in [forward, backward] {
                if !is_identifier(name) {
                    return Err(ParseError::msg(format!("invalid letter name `{name}`")));
                }
                if name == "eps" {
                    return Err(ParseError::msg("`eps` is reserved for the empty word"));
                }
            }
            if forward == backward {
                return Err(ParseError::msg(format!(
                    "letter `{forward}` cannot be its own converse"
                )));
            }
            for name in [forward, backward] {
                if !seen.insert(name.clone()) {
                    return Err(ParseError::msg(format!("letter `{name}` declared twice")));
                }
            }
        }
        Ok(Alphabet { pairs })
    }

    /// Number of letters, forward and backward together.
    pub fn len(&self) -> usize {
        self.pairs.len() * 2
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn forward_len(&self) -> usize {
        self.pairs.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(Letter::from_index)
    }

    pub fn forward_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.pairs.len()).map(Letter::forward)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.len()
    }

    pub fn name(&self, letter: Letter) -> &str {
        let (forward, backward) = &self.pairs[letter.pair()];
        if letter.is_forward() {
            forward
        } else {
            backward
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.pairs.iter().enumerate().find_map(|(i, (f, b))| {
            if f == name {
                Some(Letter::forward(i))
            } else if b == name {
                Some(Letter::backward(i))
            } else {
                None
            }
        })
    }

    pub fn letter(&self, name: &str) -> Result<Letter, ParseError> {
        self.lookup(name)
            .ok_or_else(|| ParseError::msg(format!("unknown letter `{name}`")))
    }

    /// Parses a whitespace-separated list of letter names. The empty string
    /// and the single token `eps` both denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["eps"] {
            return Ok(Word::empty());
        }
        tokens
            .into_iter()
            .map(|t| self.letter(t))
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from)
    }

    pub fn render_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "eps".to_string();
        }
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Every word over the alphabet of length at most `max_len`, shortest
    /// first and lexicographic by letter index within a length.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(frontier.len() * self.len());
            for w in &frontier {
                for l in self.letters() {
                    next.push(w.appended(l));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}/{b}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A finite word over an alphabet; the empty word is ε.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn appended(&self, letter: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The converse word: reversed, with every letter replaced by its
    /// converse.
    pub fn converse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.converse()).collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}
