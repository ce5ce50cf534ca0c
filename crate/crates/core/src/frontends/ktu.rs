//! Lowering into multimodal K_t with the universal modality.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::automata::Ndfa;
use crate::error::{EvalError, TranslateError};
use crate::fo::{Fo, Var};
use crate::logic::Logic;
use crate::semantics::KripkeModel;
use crate::syntax::{Letter, ModalFormula};
use crate::translate::box_automaton;

/// Propositional atom of a lowered formula: a source proposition or the
/// variable attached to state `state` of box `box_id`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KtuAtom {
    Prop(String),
    State { box_id: usize, state: usize },
}

impl KtuAtom {
    /// Valuation key. State atoms contain a dot, which proposition names
    /// cannot.
    pub fn name(&self) -> String {
        match self {
            KtuAtom::Prop(p) => p.clone(),
            KtuAtom::State { box_id, state } => format!("s{box_id}.{state}"),
        }
    }
}

/// Modal indices start at 1; index `i` is the `i`-th forward letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KtuFormula {
    Top,
    Bottom,
    Atom(KtuAtom),
    Nominal(String),
    Not(Box<KtuFormula>),
    And(Vec<KtuFormula>),
    Or(Vec<KtuFormula>),
    Implies(Box<KtuFormula>, Box<KtuFormula>),
    /// `⟨i⟩φ`, or `⟨i⟩⁻¹φ` when `inverse`.
    Possibly { index: usize, inverse: bool, body: Box<KtuFormula> },
    /// `[i]φ`, or `[i]⁻¹φ` when `inverse`.
    Necessarily { index: usize, inverse: bool, body: Box<KtuFormula> },
    /// `[U]φ`
    Universal(Box<KtuFormula>),
}

use KtuFormula as K;

impl KtuFormula {
    pub fn prop(p: &str) -> Self {
        K::Atom(KtuAtom::Prop(p.to_string()))
    }

    pub fn state(box_id: usize, state: usize) -> Self {
        K::Atom(KtuAtom::State { box_id, state })
    }

    pub fn implies(l: KtuFormula, r: KtuFormula) -> Self {
        K::Implies(Box::new(l), Box::new(r))
    }

    pub fn universal(f: KtuFormula) -> Self {
        K::Universal(Box::new(f))
    }

    /// Conjunction, with the empty and singleton cases collapsed.
    pub fn conj(mut items: Vec<KtuFormula>) -> Self {
        match items.len() {
            0 => K::Top,
            1 => items.pop().unwrap(),
            _ => K::And(items),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            K::Top | K::Bottom | K::Atom(_) | K::Nominal(_) => 1,
            K::Not(f) | K::Universal(f) => 1 + f.size(),
            K::Possibly { body, .. } | K::Necessarily { body, .. } => 1 + body.size(),
            K::And(items) | K::Or(items) => 1 + items.iter().map(K::size).sum::<usize>(),
            K::Implies(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Largest modal index used.
    pub fn max_index(&self) -> usize {
        match self {
            K::Top | K::Bottom | K::Atom(_) | K::Nominal(_) => 0,
            K::Not(f) | K::Universal(f) => f.max_index(),
            K::Possibly { index, body, .. } | K::Necessarily { index, body, .. } => (*index).max(body.max_index()),
            K::And(items) | K::Or(items) => items.iter().map(K::max_index).max().unwrap_or(0),
            K::Implies(l, r) => l.max_index().max(r.max_index()),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            K::Implies(..) => 0,
            K::Or(_) => 1,
            K::And(_) => 2,
            _ => 3,
        }
    }
}

fn modality(f: &mut fmt::Formatter<'_>, open: char, close: char, index: usize, inverse: bool) -> fmt::Result {
    write!(f, "{open}{index}{close}")?;
    if inverse {
        write!(f, "^-1 ")?;
    }
    Ok(())
}

impl fmt::Display for KtuFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, g: &KtuFormula, min: u8| {
            if g.prec() < min {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            K::Top => write!(f, "true"),
            K::Bottom => write!(f, "false"),
            K::Atom(a) => write!(f, "{}", a.name()),
            K::Nominal(n) => write!(f, "@{n}"),
            K::Not(g) => {
                write!(f, "~")?;
                wrap(f, g, 3)
            }
            K::And(items) | K::Or(items) => {
                let (sep, level) = if matches!(self, K::And(_)) { (" & ", 2) } else { (" | ", 1) };
                for (i, g) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    wrap(f, g, level + 1)?;
                }
                Ok(())
            }
            K::Implies(l, r) => {
                wrap(f, l, 1)?;
                write!(f, " -> ")?;
                wrap(f, r, 0)
            }
            K::Possibly { index, inverse, body } => {
                modality(f, '<', '>', *index, *inverse)?;
                wrap(f, body, 3)
            }
            K::Necessarily { index, inverse, body } => {
                modality(f, '[', ']', *index, *inverse)?;
                wrap(f, body, 3)
            }
            K::Universal(g) => {
                write!(f, "[U]")?;
                wrap(f, g, 3)
            }
        }
    }
}

fn index_of(a: Letter) -> (usize, bool) {
    (a.pair() + 1, !a.is_forward())
}

struct Lower<'a> {
    logic: &'a Logic,
    ids: HashMap<(Letter, ModalFormula), usize>,
}

impl Lower<'_> {
    fn automaton(&self, a: Letter) -> Result<Ndfa, TranslateError> {
        let m = self
            .logic
            .automata
            .get(a)
            .ok_or_else(|| TranslateError::MissingAutomaton(self.logic.alphabet.name(a).to_string()))?;
        Ok(box_automaton(m).into_owned())
    }

    fn t(&self, f: &ModalFormula) -> Result<KtuFormula, TranslateError> {
        use ModalFormula as M;
        Ok(match f {
            M::Top => K::Top,
            M::Bottom => K::Bottom,
            M::Prop(p) => K::prop(p),
            M::Nominal(n) => K::Nominal(n.clone()),
            M::Not(g) => match &**g {
                M::Prop(_) | M::Nominal(_) => K::Not(Box::new(self.t(g)?)),
                _ => return Err(TranslateError::NotNnf(f.render(&self.logic.alphabet))),
            },
            M::And(l, r) => K::And(vec![self.t(l)?, self.t(r)?]),
            M::Or(l, r) => K::Or(vec![self.t(l)?, self.t(r)?]),
            M::Possibly(a, g) => {
                let (index, inverse) = index_of(*a);
                K::Possibly { index, inverse, body: Box::new(self.t(g)?) }
            }
            M::Necessarily(a, g) => {
                let id = self.ids[&(*a, (**g).clone())];
                K::state(id, self.automaton(*a)?.start())
            }
        })
    }

    fn clauses(&self, id: usize, a: Letter, body: &ModalFormula) -> Result<Vec<KtuFormula>, TranslateError> {
        let m = self.automaton(a)?;
        let s = |q: usize| K::state(id, q);
        let mut out = Vec::new();
        for t in m.letter_transitions() {
            let (index, inverse) = index_of(t.label.unwrap());
            let step = K::Necessarily { index, inverse, body: Box::new(s(t.to)) };
            out.push(K::universal(K::implies(s(t.from), step)));
        }
        for t in m.epsilon_transitions() {
            out.push(K::universal(K::implies(s(t.from), s(t.to))));
        }
        let tb = self.t(body)?;
        for &f in m.accepting() {
            out.push(K::universal(K::implies(s(f), tb.clone())));
        }
        Ok(out)
    }
}

/// `t(φ)` conjoined with the `[U]`-guarded automaton clauses of every box
/// subformula, one conjunct per box in postorder.
pub fn to_ktu(logic: &Logic, phi: &ModalFormula) -> Result<KtuFormula, TranslateError> {
    if !phi.is_nnf() {
        return Err(TranslateError::NotNnf(phi.render(&logic.alphabet)));
    }
    let boxes = phi.box_subformulas();
    let ids = boxes.iter().enumerate().map(|(i, b)| ((b.letter, b.body.clone()), i)).collect();
    let lower = Lower { logic, ids };
    let mut items = vec![lower.t(phi)?];
    for (id, b) in boxes.iter().enumerate() {
        let rest = K::conj(lower.clauses(id, b.letter, &b.body)?);
        if rest != K::Top {
            items.push(rest);
        }
    }
    Ok(K::conj(items))
}

fn guard(index: usize, inverse: bool, x: Var, y: Var) -> Fo {
    let r = format!("R{index}");
    if inverse {
        Fo::binary(&r, y, x)
    } else {
        Fo::binary(&r, x, y)
    }
}

fn atom_pred(a: &KtuAtom) -> String {
    match a {
        KtuAtom::Prop(p) => format!("prop_{p}"),
        KtuAtom::State { box_id, state } => format!("s{box_id}_{state}"),
    }
}

/// Standard translation at `x`, reading `[U](A → [i]B)` as one guarded
/// two-variable clause and `[U](A → B)` as one single-variable clause.
pub fn relational(f: &KtuFormula, x: Var) -> Fo {
    let y = x.other();
    match f {
        K::Top => Fo::True,
        K::Bottom => Fo::False,
        K::Atom(a) => Fo::unary(&atom_pred(a), x),
        K::Nominal(n) => Fo::Eq(format!("nom_{n}"), x),
        K::Not(g) => Fo::not(relational(g, x)),
        K::And(items) => Fo::And(items.iter().map(|g| relational(g, x)).collect()),
        K::Or(items) => Fo::Or(items.iter().map(|g| relational(g, x)).collect()),
        K::Implies(l, r) => Fo::implies(relational(l, x), relational(r, x)),
        K::Possibly { index, inverse, body } => {
            Fo::exists(y, Fo::And(vec![guard(*index, *inverse, x, y), relational(body, y)]))
        }
        K::Necessarily { index, inverse, body } => {
            Fo::forall(y, Fo::implies(guard(*index, *inverse, x, y), relational(body, y)))
        }
        K::Universal(g) => {
            let (v0, v1) = (Var::V0, Var::V1);
            match &**g {
                K::Implies(l, r) => match &**r {
                    K::Necessarily { index, inverse, body } => Fo::forall2(Fo::implies(
                        guard(*index, *inverse, v0, v1),
                        Fo::implies(relational(l, v0), relational(body, v1)),
                    )),
                    _ => Fo::forall(v0, Fo::implies(relational(l, v0), relational(r, v0))),
                },
                _ => Fo::forall(v0, relational(g, v0)),
            }
        }
    }
}

/// Renames predicates and constants to `u<k>`, `b<k>`, `c<k>` in order of
/// first occurrence.
pub fn canonical_renaming(f: &Fo) -> Fo {
    let mut names: HashMap<(u8, String), String> = HashMap::new();
    let mut counts = [0usize; 3];
    f.for_each_atom(&mut |a| {
        let (kind, name) = match a {
            Fo::Unary(p, _) => (0u8, p),
            Fo::Binary(r, _, _) => (1, r),
            Fo::Eq(c, _) => (2, c),
            _ => return,
        };
        names.entry((kind, name.clone())).or_insert_with(|| {
            let k = counts[kind as usize];
            counts[kind as usize] += 1;
            format!("{}{k}", ["u", "b", "c"][kind as usize])
        });
    });
    f.map_atoms(&mut |a| match a {
        Fo::Unary(p, v) => Fo::Unary(names[&(0, p.clone())].clone(), *v),
        Fo::Binary(r, x, y) => Fo::Binary(names[&(1, r.clone())].clone(), *x, *y),
        Fo::Eq(c, v) => Fo::Eq(names[&(2, c.clone())].clone(), *v),
        other => other.clone(),
    })
}

fn relation_for(model: &KripkeModel, index: usize, inverse: bool) -> Result<Vec<Vec<usize>>, EvalError> {
    if index == 0 || index > model.frame.pair_count() {
        return Err(EvalError::UnknownIndex(index));
    }
    let mut a = Letter::forward(index - 1);
    if inverse {
        a = a.converse();
    }
    Ok((0..model.worlds()).map(|w| model.frame.successors(a, w).collect()).collect())
}

/// Worlds where `f` holds; `[U]` ranges over all worlds.
pub fn ktu_extension(model: &KripkeModel, f: &KtuFormula) -> Result<Vec<bool>, EvalError> {
    let n = model.worlds();
    Ok(match f {
        K::Top => vec![true; n],
        K::Bottom => vec![false; n],
        K::Atom(a) => {
            let name = a.name();
            (0..n).map(|w| model.holds(&name, w)).collect()
        }
        K::Nominal(name) => {
            let at = *model.nominals.get(name).ok_or_else(|| EvalError::UnassignedNominal(name.clone()))?;
            (0..n).map(|w| w == at).collect()
        }
        K::Not(g) => ktu_extension(model, g)?.into_iter().map(|b| !b).collect(),
        K::And(items) | K::Or(items) => {
            let conj = matches!(f, K::And(_));
            let mut out = vec![conj; n];
            for g in items {
                let ext = ktu_extension(model, g)?;
                for (o, e) in out.iter_mut().zip(ext) {
                    *o = if conj { *o && e } else { *o || e };
                }
            }
            out
        }
        K::Implies(l, r) => {
            let (l, r) = (ktu_extension(model, l)?, ktu_extension(model, r)?);
            l.iter().zip(&r).map(|(a, b)| !a || *b).collect()
        }
        K::Possibly { index, inverse, body } => {
            let succ = relation_for(model, *index, *inverse)?;
            let inner = ktu_extension(model, body)?;
            succ.iter().map(|s| s.iter().any(|&v| inner[v])).collect()
        }
        K::Necessarily { index, inverse, body } => {
            let succ = relation_for(model, *index, *inverse)?;
            let inner = ktu_extension(model, body)?;
            succ.iter().map(|s| s.iter().all(|&v| inner[v])).collect()
        }
        K::Universal(g) => {
            let all = ktu_extension(model, g)?.into_iter().all(|b| b);
            vec![all; n]
        }
    })
}

/// Truth of `f` at world `w`.
pub fn eval_ktu(model: &KripkeModel, w: usize, f: &KtuFormula) -> Result<bool, EvalError> {
    if w >= model.worlds() {
        return Err(EvalError::UnknownWorld(w));
    }
    Ok(ktu_extension(model, f)?[w])
}

/// For each state `q` of `m`, the worlds `v` such that every path from `v`
/// that drives `m` from `q` into an accepting state ends inside `body`.
fn state_extensions(model: &KripkeModel, m: &Ndfa, body: &[bool]) -> Vec<Vec<bool>> {
    let n = model.worlds();
    let states = m.state_count();
    let mut out = vec![vec![false; n]; states];
    for (q, ext) in out.iter_mut().enumerate() {
        for (v, slot) in ext.iter_mut().enumerate() {
            let mut seen = vec![false; n * states];
            let mut queue = VecDeque::from([(v, q)]);
            seen[v * states + q] = true;
            let mut ok = true;
            while let Some((w, s)) = queue.pop_front() {
                if m.is_accepting(s) && !body[w] {
                    ok = false;
                    break;
                }
                for t in m.transitions().iter().filter(|t| t.from == s) {
                    let next: Vec<usize> = match t.label {
                        None => vec![w],
                        Some(b) => model.frame.successors(b, w).collect(),
                    };
                    for u in next {
                        if !seen[u * states + t.to] {
                            seen[u * states + t.to] = true;
                            queue.push_back((u, t.to));
                        }
                    }
                }
            }
            *slot = ok;
        }
    }
    out
}

/// Extends the valuation of `model` with the state atoms of `to_ktu(φ)`.
/// When the frame is closed under the logic's rules and `φ` holds at `w`,
/// the lowered formula holds at `w` in the result.
pub fn ktu_model(model: &KripkeModel, logic: &Logic, phi: &ModalFormula) -> Result<KripkeModel, EvalError> {
    let mut out = model.clone();
    for (id, b) in phi.box_subformulas().iter().enumerate() {
        let m = logic.automata.get(b.letter).ok_or(EvalError::UnknownIndex(b.letter.index()))?;
        let m = box_automaton(m);
        let body = model.extension(&b.body)?;
        for (q, ext) in state_extensions(model, &m, &body).into_iter().enumerate() {
            out.valuation.insert(KtuAtom::State { box_id: id, state: q }.name(), ext);
        }
    }
    Ok(out)
}
