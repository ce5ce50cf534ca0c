//! Grammar files: an alphabet with converse pairs, production rules, and
//! optional per-letter automata given as blocks or regular expressions.
//!
//! ```text
//! letters: a/A, b/B
//! rule: a -> a a
//! rule: b ->
//! automaton a { states: q0 qf; start: q0; final: qf; q0 -a-> qf; qf -a-> qf; }
//! regex b: b*
//! ```

use crate::automata::{from_linear, AutomataMap, Ndfa, Regex, Transition};
use crate::error::{Error, ParseError, ShapeError};
use crate::logic::Logic;
use crate::syntax::{Alphabet, Letter, Rule, SemiThueSystem};

/// Parsed contents of a grammar file, before converse closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrammarFile {
    pub alphabet: Alphabet,
    /// Rules as written.
    pub rules: Vec<Rule>,
    /// Explicit automata, indexed by `Letter::index`.
    pub automata: Vec<Option<Ndfa>>,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Text with the position of its first character.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Span<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }

    fn trim(self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        Span { text: self.text.trim(), line: self.line, column: self.column + self.text[..start].chars().count() }
    }

    fn split_at(self, at: usize, skip: usize) -> (Span<'a>, Span<'a>) {
        let column = self.column + self.text[..at + skip].chars().count();
        (
            Span { text: &self.text[..at], ..self },
            Span { text: &self.text[at + skip..], line: self.line, column },
        )
    }

    fn ident(self, what: &str) -> Result<&'a str, ParseError> {
        let s = self.trim();
        if is_ident(s.text) {
            Ok(s.text)
        } else {
            Err(s.error(format!("expected {what}, found `{}`", s.text)))
        }
    }

    /// Whitespace-separated words with their positions.
    fn words(self) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut rest = self;
        loop {
            let t = rest.trim();
            if t.text.is_empty() {
                return out;
            }
            let end = t.text.find(char::is_whitespace).unwrap_or(t.text.len());
            let (word, tail) = t.split_at(end, 0);
            out.push(word);
            rest = tail;
        }
    }
}

fn letter(sigma: &Alphabet, s: Span<'_>) -> Result<Letter, ParseError> {
    let s = s.trim();
    sigma.letter(s.text).map_err(|e| e.at(s.line, s.column))
}

fn parse_letters(body: Span<'_>) -> Result<Alphabet, ParseError> {
    let mut pairs = Vec::new();
    let mut rest = body;
    loop {
        let (item, tail) = match rest.text.find(',') {
            Some(i) => {
                let (l, r) = rest.split_at(i, 1);
                (l, Some(r))
            }
            None => (rest, None),
        };
        let item = item.trim();
        let slash = item.text.find('/').ok_or_else(|| item.error("expected a pair `forward/backward`"))?;
        let (f, b) = item.split_at(slash, 1);
        let (f, b) = (f.ident("a letter name")?, b.ident("a letter name")?);
        if f == b {
            return Err(item.error(format!("letter `{f}` is paired with itself")));
        }
        pairs.push((f.to_string(), b.to_string()));
        match tail {
            Some(t) => rest = t,
            None => break,
        }
    }
    Alphabet::new(pairs).map_err(|e| e.at(body.line, body.column))
}

fn parse_rule(sigma: &Alphabet, body: Span<'_>) -> Result<Rule, ParseError> {
    let arrow = body.text.find("->").ok_or_else(|| body.trim().error("expected `->` in rule"))?;
    let (lhs, rhs) = body.split_at(arrow, 2);
    let lhs_words = lhs.words();
    if lhs_words.len() != 1 {
        return Err(lhs.trim().error("the left-hand side of a rule must be a single letter"));
    }
    let a = letter(sigma, lhs_words[0])?;
    let word = rhs.words().into_iter().map(|w| letter(sigma, w)).collect::<Result<Vec<_>, _>>()?;
    Ok(Rule::new(a, word.into()))
}

fn parse_automaton(sigma: &Alphabet, items: &[Span<'_>], header: Span<'_>) -> Result<Ndfa, ParseError> {
    let mut states: Option<Vec<String>> = None;
    let mut start: Option<Span<'_>> = None;
    let mut finals: Vec<Span<'_>> = Vec::new();
    let mut edges: Vec<(Span<'_>, Option<Letter>, Span<'_>)> = Vec::new();
    for &item in items {
        let item = item.trim();
        if item.text.is_empty() {
            continue;
        }
        if let Some(colon) = item.text.find(':') {
            let (key, value) = item.split_at(colon, 1);
            match key.text.trim() {
                "states" => states = Some(value.words().iter().map(|w| w.text.to_string()).collect()),
                "start" => start = Some(value.trim()),
                "final" => finals = value.words(),
                other => return Err(key.trim().error(format!("unknown automaton field `{other}`"))),
            }
            continue;
        }
        let dash = item.text.find('-').ok_or_else(|| item.error("expected `from -label-> to`"))?;
        let (from, rest) = item.split_at(dash, 1);
        let arrow = rest.text.find("->").ok_or_else(|| rest.error("expected `->`"))?;
        let (label, to) = rest.split_at(arrow, 2);
        let label = label.trim();
        let label = if label.text == "eps" { None } else { Some(letter(sigma, label)?) };
        edges.push((from.trim(), label, to.trim()));
    }
    let states = states.ok_or_else(|| header.error("automaton without `states:`"))?;
    let index = |s: Span<'_>| {
        states.iter().position(|q| q == s.text).ok_or_else(|| s.error(format!("unknown state `{}`", s.text)))
    };
    let start = index(start.ok_or_else(|| header.error("automaton without `start:`"))?)?;
    let accepting = finals.into_iter().map(index).collect::<Result<Vec<_>, _>>()?;
    let transitions = edges
        .into_iter()
        .map(|(f, label, t)| Ok(Transition { from: index(f)?, label, to: index(t)? }))
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ndfa::new(states, start, accepting, transitions).map_err(|e| header.error(e.0))
}

/// Lines with comments removed, paired with their 1-based numbers.
fn lines(text: &str) -> Vec<Span<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| Span { text: l.split('#').next().unwrap_or(""), line: i + 1, column: 1 })
        .collect()
}

pub fn parse_grammar(text: &str) -> Result<GrammarFile, ParseError> {
    let lines = lines(text);
    let mut sigma: Option<Alphabet> = None;
    let mut rules = Vec::new();
    let mut automata: Vec<Option<Ndfa>> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i].trim();
        i += 1;
        if line.text.is_empty() {
            continue;
        }
        let keyword_end = line.text.find(|c: char| c == ':' || c.is_whitespace()).unwrap_or(line.text.len());
        let keyword = &line.text[..keyword_end];
        if keyword == "letters" {
            if sigma.is_some() {
                return Err(line.error("`letters:` given twice"));
            }
            let colon = line.text.find(':').ok_or_else(|| line.error("expected `letters:`"))?;
            let alphabet = parse_letters(line.split_at(colon, 1).1)?;
            automata = vec![None; alphabet.len()];
            sigma = Some(alphabet);
            continue;
        }
        let Some(alphabet) = sigma.as_ref() else {
            return Err(line.error("the first declaration must be `letters:`"));
        };
        match keyword {
            "rule" => {
                let colon = line.text.find(':').ok_or_else(|| line.error("expected `rule:`"))?;
                rules.push(parse_rule(alphabet, line.split_at(colon, 1).1)?);
            }
            "regex" => {
                let colon = line.text.find(':').ok_or_else(|| line.error("expected `regex <letter>:`"))?;
                let (head, body) = line.split_at(colon, 1);
                let name = head.split_at(keyword_end, 0).1;
                let a = letter(alphabet, name)?;
                let body = body.trim();
                let r = Regex::parse(body.text, alphabet)
                    .map_err(|e| ParseError::new(body.line, body.column + e.column.saturating_sub(1), e.message))?;
                set_automaton(&mut automata, alphabet, a, r.to_ndfa(), name)?;
            }
            "automaton" => {
                let open = line.text.find('{').ok_or_else(|| line.error("expected `{` after the letter"))?;
                let (head, mut body) = line.split_at(open, 1);
                let name = head.split_at(keyword_end, 0).1;
                let a = letter(alphabet, name)?;
                let mut items = Vec::new();
                loop {
                    let close = body.text.find('}');
                    let chunk = match close {
                        Some(c) => body.split_at(c, 1).0,
                        None => body,
                    };
                    let mut rest = chunk;
                    while let Some(semi) = rest.text.find(';') {
                        let (item, tail) = rest.split_at(semi, 1);
                        items.push(item);
                        rest = tail;
                    }
                    items.push(rest);
                    if let Some(c) = close {
                        let after = body.split_at(c, 1).1.trim();
                        if !after.text.is_empty() {
                            return Err(after.error("unexpected text after `}`"));
                        }
                        break;
                    }
                    if i >= lines.len() {
                        return Err(head.error("automaton block is not closed"));
                    }
                    body = lines[i];
                    i += 1;
                }
                let m = parse_automaton(alphabet, &items, head.trim())?;
                set_automaton(&mut automata, alphabet, a, m, name)?;
            }
            other => return Err(line.error(format!("unknown declaration `{other}`"))),
        }
    }
    let alphabet = sigma.ok_or_else(|| ParseError::new(1, 1, "missing `letters:` declaration"))?;
    Ok(GrammarFile { alphabet, rules, automata })
}

fn set_automaton(
    automata: &mut [Option<Ndfa>],
    alphabet: &Alphabet,
    a: Letter,
    m: Ndfa,
    at: Span<'_>,
) -> Result<(), ParseError> {
    let slot = &mut automata[a.index()];
    if slot.is_some() {
        return Err(at.trim().error(format!("second automaton for `{}`", alphabet.name(a))));
    }
    *slot = Some(m);
    Ok(())
}

impl GrammarFile {
    /// The converse closure of the written rules.
    pub fn system(&self) -> SemiThueSystem {
        SemiThueSystem::new(self.rules.iter().cloned()).converse_closure()
    }

    /// Automaton per letter: the explicit one, else the converse of the
    /// partner's explicit one, else one read off linear rules.
    pub fn into_logic(self, name: &str) -> Result<Logic, ShapeError> {
        let system = self.system();
        let mut out = Vec::with_capacity(self.alphabet.len());
        for i in 0..self.alphabet.len() {
            let a = Letter::from_index(i);
            let m = match (&self.automata[i], &self.automata[a.converse().index()]) {
                (Some(m), _) => m.clone(),
                (None, Some(partner)) => partner.converse(),
                (None, None) => from_linear(&system, a, &self.alphabet)?,
            };
            out.push(m);
        }
        let automata = AutomataMap::new(&self.alphabet, out)?;
        Ok(Logic::new(name, self.alphabet, system, automata))
    }
}

/// Parses a grammar file and completes it to a logic.
pub fn load_logic(text: &str, name: &str) -> Result<Logic, Error> {
    Ok(parse_grammar(text)?.into_logic(name)?)
}
