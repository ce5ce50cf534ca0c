use std::collections::BTreeSet;

use super::alphabet::{Alphabet, Letter};
use super::lexer::{Cursor, Tok};
use crate::error::ParseError;

/// Multimodal formula over propositional variables, nominals, and the
/// letters of an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalFormula {
    Prop(String),
    Nominal(String),
    Top,
    Bottom,
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    /// `⟨a⟩φ`
    Possibly(Letter, Box<ModalFormula>),
    /// `[a]φ`
    Necessarily(Letter, Box<ModalFormula>),
}

/// One entry of [`ModalFormula::box_subformulas`]: the box `[letter]body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxSubformula {
    pub letter: Letter,
    pub body: ModalFormula,
}

impl BoxSubformula {
    pub fn formula(&self) -> ModalFormula {
        ModalFormula::Necessarily(self.letter, Box::new(self.body.clone()))
    }
}

use ModalFormula as M;

impl ModalFormula {
    pub fn prop(name: &str) -> Self {
        M::Prop(name.to_string())
    }

    pub fn nominal(name: &str) -> Self {
        M::Nominal(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: ModalFormula) -> Self {
        M::Not(Box::new(f))
    }

    pub fn and(l: ModalFormula, r: ModalFormula) -> Self {
        M::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: ModalFormula, r: ModalFormula) -> Self {
        M::Or(Box::new(l), Box::new(r))
    }

    pub fn possibly(a: Letter, f: ModalFormula) -> Self {
        M::Possibly(a, Box::new(f))
    }

    pub fn necessarily(a: Letter, f: ModalFormula) -> Self {
        M::Necessarily(a, Box::new(f))
    }

    /// Classical implication, expanded to `¬l ∨ r`.
    pub fn implies(l: ModalFormula, r: ModalFormula) -> Self {
        M::or(M::not(l), r)
    }

    /// Number of AST nodes; the length measure used for size bounds.
    pub fn size(&self) -> usize {
        match self {
            M::Prop(_) | M::Nominal(_) | M::Top | M::Bottom => 1,
            M::Not(f) | M::Possibly(_, f) | M::Necessarily(_, f) => 1 + f.size(),
            M::And(l, r) | M::Or(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            M::Prop(_) | M::Nominal(_) | M::Top | M::Bottom => 0,
            M::Not(f) | M::Possibly(_, f) | M::Necessarily(_, f) => 1 + f.depth(),
            M::And(l, r) | M::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Negation normal form: negation only in front of propositional
    /// variables and nominals.
    pub fn nnf(&self) -> ModalFormula {
        match self {
            M::Not(inner) => inner.negated_nnf(),
            M::And(l, r) => M::and(l.nnf(), r.nnf()),
            M::Or(l, r) => M::or(l.nnf(), r.nnf()),
            M::Possibly(a, f) => M::possibly(*a, f.nnf()),
            M::Necessarily(a, f) => M::necessarily(*a, f.nnf()),
            leaf => leaf.clone(),
        }
    }

    /// NNF of `¬self`.
    fn negated_nnf(&self) -> ModalFormula {
        match self {
            M::Prop(_) | M::Nominal(_) => M::not(self.clone()),
            M::Top => M::Bottom,
            M::Bottom => M::Top,
            M::Not(inner) => inner.nnf(),
            M::And(l, r) => M::or(l.negated_nnf(), r.negated_nnf()),
            M::Or(l, r) => M::and(l.negated_nnf(), r.negated_nnf()),
            M::Possibly(a, f) => M::necessarily(*a, f.negated_nnf()),
            M::Necessarily(a, f) => M::possibly(*a, f.negated_nnf()),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            M::Not(inner) => matches!(**inner, M::Prop(_) | M::Nominal(_)),
            M::And(l, r) | M::Or(l, r) => l.is_nnf() && r.is_nnf(),
            M::Possibly(_, f) | M::Necessarily(_, f) => f.is_nnf(),
            _ => true,
        }
    }

    /// Distinct box subformulas in postorder: every box appears after all
    /// boxes nested inside it. Identity is structural, so repeated
    /// occurrences share one entry.
    pub fn box_subformulas(&self) -> Vec<BoxSubformula> {
        fn walk(f: &ModalFormula, out: &mut Vec<BoxSubformula>) {
            match f {
                M::Not(g) | M::Possibly(_, g) => walk(g, out),
                M::And(l, r) | M::Or(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                M::Necessarily(a, g) => {
                    walk(g, out);
                    let entry = BoxSubformula { letter: *a, body: (**g).clone() };
                    if !out.contains(&entry) {
                        out.push(entry);
                    }
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_leaves(&mut |f| {
            if let M::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    pub fn nominals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_leaves(&mut |f| {
            if let M::Nominal(n) = f {
                out.insert(n.clone());
            }
        });
        out
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        fn walk(f: &ModalFormula, out: &mut BTreeSet<Letter>) {
            match f {
                M::Not(g) => walk(g, out),
                M::Possibly(a, g) | M::Necessarily(a, g) => {
                    out.insert(*a);
                    walk(g, out);
                }
                M::And(l, r) | M::Or(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                _ => {}
            }
        }
        walk(self, &mut out);
        out
    }

    fn visit_leaves(&self, f: &mut impl FnMut(&ModalFormula)) {
        match self {
            M::Not(g) | M::Possibly(_, g) | M::Necessarily(_, g) => g.visit_leaves(f),
            M::And(l, r) | M::Or(l, r) => {
                l.visit_leaves(f);
                r.visit_leaves(f);
            }
            leaf => f(leaf),
        }
    }

    /// Renders in the same surface syntax [`parse_modal`] reads.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        self.render_into(alphabet, &mut s);
        s
    }

    fn render_into(&self, sigma: &Alphabet, s: &mut String) {
        let paren = |f: &ModalFormula, needed: bool, s: &mut String| {
            if needed {
                s.push('(');
                f.render_into(sigma, s);
                s.push(')');
            } else {
                f.render_into(sigma, s);
            }
        };
        match self {
            M::Prop(p) => s.push_str(p),
            M::Nominal(n) => {
                s.push('@');
                s.push_str(n);
            }
            M::Top => s.push_str("true"),
            M::Bottom => s.push_str("false"),
            M::Not(f) => {
                s.push('~');
                paren(f, f.is_binary(), s);
            }
            M::Possibly(a, f) => {
                s.push_str(&format!("<{}>", sigma.name(*a)));
                paren(f, f.is_binary(), s);
            }
            M::Necessarily(a, f) => {
                s.push_str(&format!("[{}]", sigma.name(*a)));
                paren(f, f.is_binary(), s);
            }
            M::And(l, r) => {
                paren(l, matches!(**l, M::Or(..)), s);
                s.push_str(" & ");
                paren(r, r.is_binary(), s);
            }
            M::Or(l, r) => {
                l.render_into(sigma, s);
                s.push_str(" | ");
                paren(r, matches!(**r, M::Or(..)), s);
            }
        }
    }

    fn is_binary(&self) -> bool {
        matches!(self, M::And(..) | M::Or(..))
    }
}

/// Parses the modal surface syntax: `p`, `true`, `false`, `~F`, `F & G`,
/// `F | G`, `F -> G`, `<a>F`, `[a]F`, `@n`, with the usual precedence
/// `~ > & > | > ->` and right-associative `->`.
pub fn parse_modal(text: &str, alphabet: &Alphabet) -> Result<ModalFormula, ParseError> {
    let mut cur = Cursor::new(text)?;
    let f = parse_imp(&mut cur, alphabet)?;
    cur.finish()?;
    Ok(f)
}

fn parse_imp(cur: &mut Cursor, sigma: &Alphabet) -> Result<ModalFormula, ParseError> {
    let lhs = parse_or(cur, sigma)?;
    if cur.eat(&Tok::Arrow) {
        let rhs = parse_imp(cur, sigma)?;
        Ok(M::implies(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_or(cur: &mut Cursor, sigma: &Alphabet) -> Result<ModalFormula, ParseError> {
    let mut f = parse_and(cur, sigma)?;
    while cur.eat(&Tok::Pipe) {
        f = M::or(f, parse_and(cur, sigma)?);
    }
    Ok(f)
}

fn parse_and(cur: &mut Cursor, sigma: &Alphabet) -> Result<ModalFormula, ParseError> {
    let mut f = parse_unary(cur, sigma)?;
    while cur.eat(&Tok::Amp) {
        f = M::and(f, parse_unary(cur, sigma)?);
    }
    Ok(f)
}

fn parse_letter(cur: &mut Cursor, sigma: &Alphabet) -> Result<Letter, ParseError> {
    let (name, line, col) = cur.ident("a letter")?;
    sigma.letter(&name).map_err(|e| e.at(line, col))
}

fn parse_unary(cur: &mut Cursor, sigma: &Alphabet) -> Result<ModalFormula, ParseError> {
    match cur.peek().clone() {
        Tok::Tilde => {
            cur.bump();
            Ok(M::not(parse_unary(cur, sigma)?))
        }
        Tok::LAngle => {
            cur.bump();
            let a = parse_letter(cur, sigma)?;
            cur.expect(&Tok::RAngle, "`>`")?;
            Ok(M::possibly(a, parse_unary(cur, sigma)?))
        }
        Tok::LBracket => {
            cur.bump();
            let a = parse_letter(cur, sigma)?;
            cur.expect(&Tok::RBracket, "`]`")?;
            Ok(M::necessarily(a, parse_unary(cur, sigma)?))
        }
        Tok::At => {
            cur.bump();
            let (name, _, _) = cur.ident("a nominal name")?;
            Ok(M::Nominal(name))
        }
        Tok::LParen => {
            cur.bump();
            let f = parse_imp(cur, sigma)?;
            cur.expect(&Tok::RParen, "`)`")?;
            Ok(f)
        }
        Tok::Ident(name) => {
            cur.bump();
            Ok(match name.as_str() {
                "true" => M::Top,
                "false" => M::Bottom,
                _ => M::Prop(name),
            })
        }
        other => Err(cur.error(format!(
            "expected a formula, found {}",
            super::lexer::describe(&other)
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Alphabet {
        Alphabet::new([("a", "A"), ("b", "B")]).unwrap()
    }

    fn parse(text: &str) -> ModalFormula {
        parse_modal(text, &sigma()).unwrap()
    }

    #[test]
    fn nnf_examples() {
        assert_eq!(parse("~(p & q)").nnf(), parse("~p | ~q"));
        assert_eq!(parse("~[a]p").nnf(), parse("<a>~p"));
        assert_eq!(parse("~true").nnf(), M::Bottom);
        assert_eq!(parse("~false").nnf(), M::Top);
        assert_eq!(parse("~~p").nnf(), parse("p"));
        let f = parse("<a>p & [A](~q | @n)");
        assert!(f.is_nnf());
        assert_eq!(f.nnf(), f);
        assert!(!parse("~<a>p").is_nnf());
    }

    #[test]
    fn implication_is_sugar() {
        assert_eq!(parse("p -> q -> r"), parse("~p | (~q | r)"));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("~p & q | r"), M::or(M::and(M::not(M::prop("p")), M::prop("q")), M::prop("r")));
        assert_eq!(parse("[a]p & q"), M::and(parse("[a]p"), parse("q")));
    }

    #[test]
    fn box_subformula_order() {
        let s = sigma();
        let (a, b) = (s.letter("a").unwrap(), s.letter("b").unwrap());
        let boxes = parse("[a][b]p").box_subformulas();
        assert_eq!(boxes.len(), 2);
        assert_eq!(boxes[0].letter, b);
        assert_eq!(boxes[0].body, parse("p"));
        assert_eq!(boxes[1].letter, a);
        assert_eq!(boxes[1].formula(), parse("[a][b]p"));

        assert!(parse("<a>p").box_subformulas().is_empty());
        assert_eq!(parse("[a]p & [a]p").box_subformulas().len(), 1);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_modal("p &\n  [c]q", &sigma()).unwrap_err();
        assert_eq!((err.line, err.column), (2, 4));
        let err = parse_modal("(p", &sigma()).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(parse_modal("p q", &sigma()).is_err());
    }

    #[test]
    fn render_round_trips() {
        let s = sigma();
        for text in ["<a>p & [a]~p", "p & (q & r)", "(p | q) & r", "p | (q | r)", "~(p & q)", "[B](@n | false)"] {
            let f = parse(text);
            assert_eq!(parse_modal(&f.render(&s), &s).unwrap(), f, "{text}");
        }
    }
}
