//! Intuitionistic propositional logic: the signed Gödel translation into
//! S4 and the direct translation into the guarded two-variable fragment.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::ParseError;
use crate::fo::{Fo, SymbolTable, Var};
use crate::syntax::lexer::{describe, Cursor, Tok};
use crate::syntax::{Letter, ModalFormula};

/// IPL formula. Negation is not a node: `~F` parses as `F -> false`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IplFormula {
    Prop(String),
    Bottom,
    And(Box<IplFormula>, Box<IplFormula>),
    Or(Box<IplFormula>, Box<IplFormula>),
    Implies(Box<IplFormula>, Box<IplFormula>),
}

use IplFormula as I;

impl IplFormula {
    pub fn prop(p: &str) -> Self {
        I::Prop(p.to_string())
    }

    pub fn and(l: IplFormula, r: IplFormula) -> Self {
        I::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: IplFormula, r: IplFormula) -> Self {
        I::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: IplFormula, r: IplFormula) -> Self {
        I::Implies(Box::new(l), Box::new(r))
    }

    /// `F -> false`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: IplFormula) -> Self {
        I::implies(f, I::Bottom)
    }

    pub fn size(&self) -> usize {
        match self {
            I::Prop(_) | I::Bottom => 1,
            I::And(l, r) | I::Or(l, r) | I::Implies(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            I::Prop(_) | I::Bottom => 0,
            I::And(l, r) | I::Or(l, r) | I::Implies(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn props(&self) -> BTreeSet<String> {
        fn walk(f: &IplFormula, out: &mut BTreeSet<String>) {
            match f {
                I::Prop(p) => {
                    out.insert(p.clone());
                }
                I::Bottom => {}
                I::And(l, r) | I::Or(l, r) | I::Implies(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    fn prec(&self) -> u8 {
        match self {
            I::Implies(..) => 0,
            I::Or(..) => 1,
            I::And(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for IplFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, g: &IplFormula, min: u8| {
            if g.prec() < min {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            I::Prop(p) => write!(f, "{p}"),
            I::Bottom => write!(f, "false"),
            I::And(l, r) => {
                wrap(f, l, 2)?;
                write!(f, " & ")?;
                wrap(f, r, 3)
            }
            I::Or(l, r) => {
                wrap(f, l, 1)?;
                write!(f, " | ")?;
                wrap(f, r, 2)
            }
            I::Implies(l, r) => {
                wrap(f, l, 1)?;
                write!(f, " -> ")?;
                wrap(f, r, 0)
            }
        }
    }
}

/// Parses `p`, `false`, `&`, `|`, `->` (right associative) and `~F`.
pub fn parse_ipl(text: &str) -> Result<IplFormula, ParseError> {
    let mut cur = Cursor::new(text)?;
    let f = parse_imp(&mut cur)?;
    cur.finish()?;
    Ok(f)
}

fn parse_imp(cur: &mut Cursor) -> Result<IplFormula, ParseError> {
    let lhs = parse_or(cur)?;
    if cur.eat(&Tok::Arrow) {
        Ok(I::implies(lhs, parse_imp(cur)?))
    } else {
        Ok(lhs)
    }
}

fn parse_or(cur: &mut Cursor) -> Result<IplFormula, ParseError> {
    let mut f = parse_and(cur)?;
    while cur.eat(&Tok::Pipe) {
        f = I::or(f, parse_and(cur)?);
    }
    Ok(f)
}

fn parse_and(cur: &mut Cursor) -> Result<IplFormula, ParseError> {
    let mut f = parse_unary(cur)?;
    while cur.eat(&Tok::Amp) {
        f = I::and(f, parse_unary(cur)?);
    }
    Ok(f)
}

fn parse_unary(cur: &mut Cursor) -> Result<IplFormula, ParseError> {
    match cur.peek().clone() {
        Tok::Tilde => {
            cur.bump();
            Ok(I::not(parse_unary(cur)?))
        }
        Tok::LParen => {
            cur.bump();
            let f = parse_imp(cur)?;
            cur.expect(&Tok::RParen, "`)`")?;
            Ok(f)
        }
        Tok::Ident(name) => {
            cur.bump();
            Ok(if name == "false" { I::Bottom } else { I::Prop(name) })
        }
        other => Err(cur.error(format!("expected a formula, found {}", describe(&other)))),
    }
}

fn a() -> Letter {
    Letter::forward(0)
}

/// Signed Gödel translation into S4 over the letter `a`. `positive` selects
/// polarity 1. The result is in negation normal form.
pub fn godel_s4(phi: &IplFormula, positive: bool) -> ModalFormula {
    use ModalFormula as M;
    match (phi, positive) {
        (I::Bottom, true) => M::Bottom,
        (I::Bottom, false) => M::Top,
        (I::Prop(p), true) => M::necessarily(a(), M::prop(p)),
        (I::Prop(p), false) => M::possibly(a(), M::not(M::prop(p))),
        (I::And(l, r), true) => M::and(godel_s4(l, true), godel_s4(r, true)),
        (I::And(l, r), false) => M::or(godel_s4(l, false), godel_s4(r, false)),
        (I::Or(l, r), true) => M::or(godel_s4(l, true), godel_s4(r, true)),
        (I::Or(l, r), false) => M::and(godel_s4(l, false), godel_s4(r, false)),
        (I::Implies(l, r), true) => M::necessarily(a(), M::or(godel_s4(l, false), godel_s4(r, true))),
        (I::Implies(l, r), false) => M::possibly(a(), M::and(godel_s4(l, true), godel_s4(r, false))),
    }
}

/// Unsigned Gödel translation; implications become `[a](¬l ∨ r)`.
pub fn godel_s4_plain(phi: &IplFormula) -> ModalFormula {
    use ModalFormula as M;
    match phi {
        I::Bottom => M::Bottom,
        I::Prop(p) => M::necessarily(a(), M::prop(p)),
        I::And(l, r) => M::and(godel_s4_plain(l), godel_s4_plain(r)),
        I::Or(l, r) => M::or(godel_s4_plain(l), godel_s4_plain(r)),
        I::Implies(l, r) => M::necessarily(a(), M::implies(godel_s4_plain(l), godel_s4_plain(r))),
    }
}

struct Direct {
    table: SymbolTable,
    relation: String,
    states: HashMap<IplFormula, usize>,
}

impl Direct {
    fn state(&mut self, f: &IplFormula) -> String {
        let id = match self.states.get(f) {
            Some(&id) => id,
            None => {
                let id = self.table.add_box("a", f.to_string(), 1);
                self.states.insert(f.clone(), id);
                id
            }
        };
        self.table.state(id, 0).expect("state registered").to_string()
    }

    fn persistence(&self, pred: &str, alpha: Var, beta: Var) -> Fo {
        Fo::forall2(Fo::implies(
            Fo::binary(&self.relation, alpha, beta),
            Fo::implies(Fo::unary(pred, alpha), Fo::unary(pred, beta)),
        ))
    }

    fn t(&mut self, f: &IplFormula, alpha: Var, positive: bool) -> Fo {
        let beta = alpha.other();
        match (f, positive) {
            (I::Bottom, true) => Fo::False,
            (I::Bottom, false) => Fo::True,
            (I::And(l, r), true) | (I::Or(l, r), false) => {
                Fo::And(vec![self.t(l, alpha, positive), self.t(r, alpha, positive)])
            }
            (I::And(l, r), false) | (I::Or(l, r), true) => {
                Fo::Or(vec![self.t(l, alpha, positive), self.t(r, alpha, positive)])
            }
            (I::Implies(l, r), true) => {
                let s = self.state(f);
                let body = Fo::Or(vec![self.t(l, alpha, false), self.t(r, alpha, true)]);
                Fo::And(vec![
                    Fo::unary(&s, alpha),
                    self.persistence(&s, alpha, beta),
                    Fo::forall(alpha, Fo::implies(Fo::unary(&s, alpha), body)),
                ])
            }
            (I::Implies(l, r), false) => Fo::exists(
                beta,
                Fo::And(vec![Fo::binary(&self.relation, alpha, beta), self.t(l, beta, true), self.t(r, beta, false)]),
            ),
            (I::Prop(p), true) => {
                let pred = self.table.prop(p).expect("prop registered").to_string();
                Fo::And(vec![Fo::unary(&pred, alpha), self.persistence(&pred, alpha, beta)])
            }
            (I::Prop(p), false) => {
                let pred = self.table.prop(p).expect("prop registered");
                Fo::exists(
                    beta,
                    Fo::And(vec![Fo::binary(&self.relation, alpha, beta), Fo::not(Fo::unary(pred, beta))]),
                )
            }
        }
    }
}

/// Direct translation `t(φ, v0, v1, 0)`: one relation `r_a`, one predicate
/// `p_<p>` per proposition, and one state predicate per implication met at
/// polarity 1. Satisfiable iff `φ` is not intuitionistically valid.
pub fn ipl_to_gf2(phi: &IplFormula) -> (Fo, SymbolTable) {
    let mut table = SymbolTable::new();
    for p in phi.props() {
        table.add_prop(&p);
    }
    let relation = table.add_relation("a");
    let mut d = Direct { table, relation, states: HashMap::new() };
    let out = d.t(phi, Var::V0, false);
    (out, d.table)
}
