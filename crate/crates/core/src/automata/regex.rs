use super::ndfa::{Ndfa, Transition};
use crate::error::ParseError;
use crate::syntax::lexer::{describe, Cursor, Tok};
use crate::syntax::{Alphabet, Letter};

/// Regular expression over the letters of an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(Letter),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    /// Surface syntax: letter names and `eps` (or `ε`), `∅`, juxtaposition
    /// for concatenation, `|` for union, postfix `*` and `+`, parentheses.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex, ParseError> {
        let mut cur = Cursor::new(text)?;
        let r = parse_union(&mut cur, alphabet)?;
        cur.finish()?;
        Ok(r)
    }

    /// Thompson construction.
    pub fn to_ndfa(&self) -> Ndfa {
        let mut b = Builder::default();
        let (s, f) = b.build(self);
        let names = (0..b.count).map(|i| format!("q{i}")).collect();
        Ndfa::new(names, s, [f], b.edges).expect("Thompson construction is well formed")
    }
}

fn parse_union(cur: &mut Cursor, sigma: &Alphabet) -> Result<Regex, ParseError> {
    let mut alts = vec![parse_concat(cur, sigma)?];
    while cur.eat(&Tok::Pipe) {
        alts.push(parse_concat(cur, sigma)?);
    }
    Ok(if alts.len() == 1 { alts.pop().unwrap() } else { Regex::Union(alts) })
}

fn parse_concat(cur: &mut Cursor, sigma: &Alphabet) -> Result<Regex, ParseError> {
    let mut parts = vec![parse_postfix(cur, sigma)?];
    while matches!(cur.peek(), Tok::Ident(_) | Tok::LParen | Tok::Empty) {
        parts.push(parse_postfix(cur, sigma)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Regex::Concat(parts) })
}

fn parse_postfix(cur: &mut Cursor, sigma: &Alphabet) -> Result<Regex, ParseError> {
    let mut r = parse_atom(cur, sigma)?;
    loop {
        if cur.eat(&Tok::Star) {
            r = Regex::Star(Box::new(r));
        } else if cur.eat(&Tok::Plus) {
            r = Regex::Plus(Box::new(r));
        } else {
            return Ok(r);
        }
    }
}

fn parse_atom(cur: &mut Cursor, sigma: &Alphabet) -> Result<Regex, ParseError> {
    match cur.peek().clone() {
        Tok::Ident(name) => {
            let (_, line, col) = cur.ident("a letter")?;
            if name == "eps" {
                return Ok(Regex::Epsilon);
            }
            sigma.letter(&name).map(Regex::Letter).map_err(|e| e.at(line, col))
        }
        Tok::Empty => {
            cur.bump();
            Ok(Regex::Empty)
        }
        Tok::LParen => {
            cur.bump();
            let r = parse_union(cur, sigma)?;
            cur.expect(&Tok::RParen, "`)`")?;
            Ok(r)
        }
        other => Err(cur.error(format!("expected a regular expression, found {}", describe(&other)))),
    }
}

#[derive(Default)]
struct Builder {
    count: usize,
    edges: Vec<Transition>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.count += 1;
        self.count - 1
    }

    fn edge(&mut self, from: usize, label: Option<Letter>, to: usize) {
        self.edges.push(Transition { from, label, to });
    }

    /// Returns (entry, exit) of a fragment.
    fn build(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Empty => (self.fresh(), self.fresh()),
            Regex::Epsilon => {
                let (s, f) = (self.fresh(), self.fresh());
                self.edge(s, None, f);
                (s, f)
            }
            Regex::Letter(l) => {
                let (s, f) = (self.fresh(), self.fresh());
                self.edge(s, Some(*l), f);
                (s, f)
            }
            Regex::Concat(parts) => {
                let (s, mut f) = self.build(&parts[0]);
                for p in &parts[1..] {
                    let (ps, pf) = self.build(p);
                    self.edge(f, None, ps);
                    f = pf;
                }
                (s, f)
            }
            Regex::Union(alts) => {
                let (s, f) = (self.fresh(), self.fresh());
                for a in alts {
                    let (as_, af) = self.build(a);
                    self.edge(s, None, as_);
                    self.edge(af, None, f);
                }
                (s, f)
            }
            Regex::Star(inner) | Regex::Plus(inner) => {
                let (s, f) = (self.fresh(), self.fresh());
                let (is, if_) = self.build(inner);
                self.edge(s, None, is);
                self.edge(if_, None, f);
                self.edge(if_, None, is);
                if matches!(r, Regex::Star(_)) {
                    self.edge(s, None, f);
                }
                (s, f)
            }
        }
    }
}
