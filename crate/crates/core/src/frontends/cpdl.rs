//! Converse PDL and the lowering of K_t with the universal modality into it.

use std::fmt;

use super::ktu::{KtuAtom, KtuFormula};
use crate::error::EvalError;
use crate::semantics::{KripkeModel, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Program {
    /// `c_i`, 1-based.
    Atomic(usize),
    Converse(Box<Program>),
    Union(Vec<Program>),
    Seq(Vec<Program>),
    Star(Box<Program>),
}

impl Program {
    pub fn converse(p: Program) -> Self {
        Program::Converse(Box::new(p))
    }

    pub fn star(p: Program) -> Self {
        Program::Star(Box::new(p))
    }

    /// `(c_1 ∪ … ∪ c_{n+1} ∪ c_1⁻¹ ∪ … ∪ c_{n+1}⁻¹)*`
    pub fn universal(n: usize) -> Self {
        let atoms = (1..=n + 1).map(Program::Atomic);
        let inverses = (1..=n + 1).map(|i| Program::converse(Program::Atomic(i)));
        Program::star(Program::Union(atoms.chain(inverses).collect()))
    }

    fn prec(&self) -> u8 {
        match self {
            Program::Union(_) => 0,
            Program::Seq(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, p: &Program, min: u8| {
            if p.prec() < min {
                write!(f, "({p})")
            } else {
                write!(f, "{p}")
            }
        };
        match self {
            Program::Atomic(i) => write!(f, "c{i}"),
            Program::Converse(p) => {
                wrap(f, p, 2)?;
                write!(f, "^-1")
            }
            Program::Star(p) => {
                wrap(f, p, 2)?;
                write!(f, "*")
            }
            Program::Union(items) | Program::Seq(items) => {
                let (sep, level) = if matches!(self, Program::Union(_)) { (" | ", 0) } else { (" ; ", 1) };
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    wrap(f, p, level + 1)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CpdlFormula {
    Top,
    Bottom,
    Atom(KtuAtom),
    Nominal(String),
    Not(Box<CpdlFormula>),
    And(Vec<CpdlFormula>),
    Or(Vec<CpdlFormula>),
    Implies(Box<CpdlFormula>, Box<CpdlFormula>),
    Possibly(Program, Box<CpdlFormula>),
    Necessarily(Program, Box<CpdlFormula>),
}

use CpdlFormula as C;

impl CpdlFormula {
    fn prec(&self) -> u8 {
        match self {
            C::Implies(..) => 0,
            C::Or(_) => 1,
            C::And(_) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for CpdlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, g: &CpdlFormula, min: u8| {
            if g.prec() < min {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            C::Top => write!(f, "true"),
            C::Bottom => write!(f, "false"),
            C::Atom(a) => write!(f, "{}", a.name()),
            C::Nominal(n) => write!(f, "@{n}"),
            C::Not(g) => {
                write!(f, "~")?;
                wrap(f, g, 3)
            }
            C::And(items) | C::Or(items) => {
                let (sep, level) = if matches!(self, C::And(_)) { (" & ", 2) } else { (" | ", 1) };
                for (i, g) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    wrap(f, g, level + 1)?;
                }
                Ok(())
            }
            C::Implies(l, r) => {
                wrap(f, l, 1)?;
                write!(f, " -> ")?;
                wrap(f, r, 0)
            }
            C::Possibly(p, g) => {
                write!(f, "<{p}>")?;
                wrap(f, g, 3)
            }
            C::Necessarily(p, g) => {
                write!(f, "[{p}]")?;
                wrap(f, g, 3)
            }
        }
    }
}

fn program(index: usize, inverse: bool) -> Program {
    if inverse {
        Program::converse(Program::Atomic(index))
    } else {
        Program::Atomic(index)
    }
}

/// Replaces `[i]` by `[c_i]`, `[i]⁻¹` by `[c_i⁻¹]` and `[U]` by the box of
/// [`Program::universal`]`(n)`.
pub fn ktu_to_cpdl(f: &KtuFormula, n: usize) -> CpdlFormula {
    let rec = |g: &KtuFormula| Box::new(ktu_to_cpdl(g, n));
    match f {
        KtuFormula::Top => C::Top,
        KtuFormula::Bottom => C::Bottom,
        KtuFormula::Atom(a) => C::Atom(a.clone()),
        KtuFormula::Nominal(name) => C::Nominal(name.clone()),
        KtuFormula::Not(g) => C::Not(rec(g)),
        KtuFormula::And(items) => C::And(items.iter().map(|g| ktu_to_cpdl(g, n)).collect()),
        KtuFormula::Or(items) => C::Or(items.iter().map(|g| ktu_to_cpdl(g, n)).collect()),
        KtuFormula::Implies(l, r) => C::Implies(rec(l), rec(r)),
        KtuFormula::Possibly { index, inverse, body } => C::Possibly(program(*index, *inverse), rec(body)),
        KtuFormula::Necessarily { index, inverse, body } => C::Necessarily(program(*index, *inverse), rec(body)),
        KtuFormula::Universal(g) => C::Necessarily(Program::universal(n), rec(g)),
    }
}

/// Reflexive-transitive closure by iterating `X := X ∪ X;R` from the
/// identity.
fn star_fixpoint(r: &Relation) -> Relation {
    let mut x = Relation::identity(r.size());
    loop {
        let next = x.union(&x.compose(r));
        if next == x {
            return x;
        }
        x = next;
    }
}

/// Relation denoted by `p`. Atomic programs beyond the frame's letters
/// denote the empty relation.
pub fn program_relation(model: &KripkeModel, p: &Program) -> Result<Relation, EvalError> {
    let n = model.worlds();
    Ok(match p {
        Program::Atomic(0) => return Err(EvalError::UnknownIndex(0)),
        Program::Atomic(i) if *i <= model.frame.pair_count() => model.frame.forward(i - 1).clone(),
        Program::Atomic(_) => Relation::empty(n),
        Program::Converse(q) => program_relation(model, q)?.inverse(),
        Program::Union(items) => {
            let mut out = Relation::empty(n);
            for q in items {
                out = out.union(&program_relation(model, q)?);
            }
            out
        }
        Program::Seq(items) => {
            let mut out = Relation::identity(n);
            for q in items {
                out = out.compose(&program_relation(model, q)?);
            }
            out
        }
        Program::Star(q) => star_fixpoint(&program_relation(model, q)?),
    })
}

pub fn cpdl_extension(model: &KripkeModel, f: &CpdlFormula) -> Result<Vec<bool>, EvalError> {
    let n = model.worlds();
    Ok(match f {
        C::Top => vec![true; n],
        C::Bottom => vec![false; n],
        C::Atom(a) => {
            let name = a.name();
            (0..n).map(|w| model.holds(&name, w)).collect()
        }
        C::Nominal(name) => {
            let at = *model.nominals.get(name).ok_or_else(|| EvalError::UnassignedNominal(name.clone()))?;
            (0..n).map(|w| w == at).collect()
        }
        C::Not(g) => cpdl_extension(model, g)?.into_iter().map(|b| !b).collect(),
        C::And(items) | C::Or(items) => {
            let conj = matches!(f, C::And(_));
            let mut out = vec![conj; n];
            for g in items {
                for (o, e) in out.iter_mut().zip(cpdl_extension(model, g)?) {
                    *o = if conj { *o && e } else { *o || e };
                }
            }
            out
        }
        C::Implies(l, r) => {
            let (l, r) = (cpdl_extension(model, l)?, cpdl_extension(model, r)?);
            l.iter().zip(&r).map(|(a, b)| !a || *b).collect()
        }
        C::Possibly(p, g) | C::Necessarily(p, g) => {
            let rel = program_relation(model, p)?;
            let inner = cpdl_extension(model, g)?;
            let diamond = matches!(f, C::Possibly(..));
            (0..n)
                .map(|w| {
                    let mut succ = rel.successors(w);
                    if diamond {
                        succ.any(|v| inner[v])
                    } else {
                        succ.all(|v| inner[v])
                    }
                })
                .collect()
        }
    })
}

/// Truth of `f` at world `w`.
pub fn eval_cpdl(model: &KripkeModel, w: usize, f: &CpdlFormula) -> Result<bool, EvalError> {
    if w >= model.worlds() {
        return Err(EvalError::UnknownWorld(w));
    }
    Ok(cpdl_extension(model, f)?[w])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::KripkeFrame;
    use crate::syntax::Letter;

    fn p() -> KtuFormula {
        KtuFormula::prop("p")
    }

    #[test]
    fn lowering_examples() {
        let boxed = KtuFormula::Necessarily { index: 1, inverse: false, body: Box::new(p()) };
        assert_eq!(ktu_to_cpdl(&boxed, 1).to_string(), "[c1]p");
        let u = ktu_to_cpdl(&KtuFormula::universal(p()), 1);
        assert_eq!(u.to_string(), "[(c1 | c2 | c1^-1 | c2^-1)*]p");
        let past = KtuFormula::Possibly { index: 1, inverse: true, body: Box::new(p()) };
        assert_eq!(ktu_to_cpdl(&past, 1), C::Possibly(Program::converse(Program::Atomic(1)), Box::new(C::Atom(KtuAtom::Prop("p".into())))));
    }

    fn chain() -> KripkeModel {
        let mut frame = KripkeFrame::new(2, 1);
        frame.add_edge(Letter::forward(0), 0, 1);
        KripkeModel::new(frame)
    }

    #[test]
    fn star_and_converse() {
        let mut m = chain();
        m.set_prop("p", [0, 1]);
        let pa = C::Atom(KtuAtom::Prop("p".into()));
        let f = C::Necessarily(Program::star(Program::Atomic(1)), Box::new(pa));
        assert!(eval_cpdl(&m, 0, &f).unwrap());
        let back = C::Possibly(Program::converse(Program::Atomic(1)), Box::new(C::Top));
        assert!(!eval_cpdl(&m, 0, &back).unwrap());
        assert!(eval_cpdl(&m, 1, &back).unwrap());
    }

    #[test]
    fn star_matches_warshall() {
        let mut frame = KripkeFrame::new(4, 1);
        for (x, y) in [(0, 1), (1, 2), (2, 0), (3, 3)] {
            frame.add_edge(Letter::forward(0), x, y);
        }
        let r = frame.forward(0);
        assert_eq!(star_fixpoint(r), r.star());
    }

    #[test]
    fn extra_program_is_empty() {
        let m = chain();
        let f = C::Possibly(Program::Atomic(2), Box::new(C::Top));
        assert!(!eval_cpdl(&m, 0, &f).unwrap());
        let seq = Program::Seq(vec![Program::Atomic(1), Program::converse(Program::Atomic(1))]);
        assert!(program_relation(&m, &seq).unwrap().contains(0, 0));
    }
}
