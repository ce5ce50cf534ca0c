//! Shared tokenizer for the formula, IPL, and regex surface syntaxes.

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Pipe,
    Arrow,
    LAngle,
    RAngle,
    LBracket,
    RBracket,
    LParen,
    RParen,
    At,
    Star,
    Plus,
    Caret,
    Minus,
    Empty,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: l0, column: c0 });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, Tok::Ident(word));
            continue;
        }
        let tok = match c {
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                col += 1;
                Tok::Arrow
            }
            '-' => Tok::Minus,
            '~' | '¬' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '<' => Tok::LAngle,
            '>' => Tok::RAngle,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '@' => Tok::At,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '^' => Tok::Caret,
            '∅' => Tok::Empty,
            'ε' => Tok::Ident("eps".to_string()),
            other => {
                return Err(ParseError::new(l0, c0, format!("unexpected character `{other}`")));
            }
        };
        push(&mut out, tok);
        i += 1;
        col += 1;
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

/// Cursor over a token stream with position-aware errors.
pub struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Cursor { toks: tokenize(text)?, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::new(t.line, t.column, message)
    }

    pub fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<(String, usize, usize), ParseError> {
        let t = &self.toks[self.pos];
        match &t.tok {
            Tok::Ident(name) => {
                let out = (name.clone(), t.line, t.column);
                self.bump();
                Ok(out)
            }
            other => Err(self.error(format!("expected {what}, found {}", describe(other)))),
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", describe(self.peek()))))
        }
    }
}

pub fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Eof => "end of input".to_string(),
        Tok::Tilde => "`~`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Pipe => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::LAngle => "`<`".into(),
        Tok::RAngle => "`>`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::At => "`@`".into(),
        Tok::Star => "`*`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Empty => "`∅`".into(),
    }
}
