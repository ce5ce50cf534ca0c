//! The translation of modal formulas into the guarded two-variable fragment.

use std::borrow::Cow;
use std::collections::HashMap;

use crate::automata::Ndfa;
use crate::error::TranslateError;
use crate::fo::{fresh_table, Fo, SymbolTable, Var};
use crate::logic::Logic;
use crate::syntax::{Alphabet, Letter, ModalFormula};

/// Where the automaton conjuncts of a box end up.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// At the box's position.
    #[default]
    Inline,
    /// In one top-level conjunction; only the start atom stays in place.
    Hoisted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub mode: Mode,
    pub nominals: bool,
}

/// The automaton used for a box: normalized to one accepting state only
/// when it has several, so the body is emitted once.
pub fn box_automaton(m: &Ndfa) -> Cow<'_, Ndfa> {
    if m.accepting().len() > 1 {
        Cow::Owned(m.normalize_single_accepting())
    } else {
        Cow::Borrowed(m)
    }
}

/// `t_a(α, β)`: `r_a(α, β)` for a forward letter, `r_a(β, α)` for the
/// converse of `a`.
pub fn t_letter(
    a: Letter,
    alpha: Var,
    beta: Var,
    alphabet: &Alphabet,
    table: &SymbolTable,
) -> Result<Fo, TranslateError> {
    if alpha == beta {
        return Err(TranslateError::SameVariables);
    }
    let name = alphabet.name(a.forward_half());
    let r = table.relation(name).ok_or_else(|| TranslateError::MissingAutomaton(name.to_string()))?;
    Ok(if a.is_forward() { Fo::binary(r, alpha, beta) } else { Fo::binary(r, beta, alpha) })
}

/// Conjuncts of `t_A(α, body)` after the start atom: transitions, then
/// ε-moves, then accepting states.
fn automaton_rest(
    m: &Ndfa,
    alpha: Var,
    body: &Fo,
    box_id: usize,
    alphabet: &Alphabet,
    table: &SymbolTable,
) -> Result<Vec<Fo>, TranslateError> {
    let beta = alpha.other();
    let q = |s: usize| Fo::unary(table.state(box_id, s).expect("state registered"), alpha);
    let q_beta = |s: usize| Fo::unary(table.state(box_id, s).expect("state registered"), beta);
    let mut out = Vec::new();
    for t in m.letter_transitions() {
        let guard = t_letter(t.label.unwrap(), alpha, beta, alphabet, table)?;
        out.push(Fo::forall2(Fo::implies(guard, Fo::implies(q(t.from), q_beta(t.to)))));
    }
    for t in m.epsilon_transitions() {
        out.push(Fo::forall(alpha, Fo::implies(q(t.from), q(t.to))));
    }
    for &f in m.accepting() {
        out.push(Fo::forall(alpha, Fo::implies(q(f), body.clone())));
    }
    Ok(out)
}

fn check_body(alpha: Var, body: &Fo) -> Result<(), TranslateError> {
    let free = body.free_vars();
    if free.contains(alpha.other()) {
        return Err(TranslateError::WrongFreeVariable { expected: alpha.to_string(), found: free.to_string() });
    }
    Ok(())
}

/// `t_A(α, body)` for box `box_id`: the start atom followed by the guarded
/// transition, ε, and accepting conjuncts.
pub fn t_automaton(
    m: &Ndfa,
    alpha: Var,
    body: &Fo,
    box_id: usize,
    alphabet: &Alphabet,
    table: &SymbolTable,
) -> Result<Fo, TranslateError> {
    check_body(alpha, body)?;
    let start = Fo::unary(table.state(box_id, m.start()).expect("state registered"), alpha);
    let mut items = vec![start];
    items.extend(automaton_rest(m, alpha, body, box_id, alphabet, table)?);
    Ok(Fo::conj(items))
}

struct Ctx<'a> {
    logic: &'a Logic,
    table: SymbolTable,
    ids: HashMap<(Letter, ModalFormula), usize>,
    opts: Options,
    hoisted: Vec<Option<Fo>>,
}

impl Ctx<'_> {
    fn automaton(&self, a: Letter) -> Result<Cow<'_, Ndfa>, TranslateError> {
        let m = self
            .logic
            .automata
            .get(a)
            .ok_or_else(|| TranslateError::MissingAutomaton(self.logic.alphabet.name(a).to_string()))?;
        Ok(box_automaton(m))
    }

    fn t(&mut self, f: &ModalFormula, alpha: Var) -> Result<Fo, TranslateError> {
        let beta = alpha.other();
        let sigma = &self.logic.alphabet;
        Ok(match f {
            ModalFormula::Top => Fo::True,
            ModalFormula::Bottom => Fo::False,
            ModalFormula::Prop(p) => Fo::unary(self.table.prop(p).expect("prop registered"), alpha),
            ModalFormula::Nominal(n) => {
                if !self.opts.nominals {
                    return Err(TranslateError::NominalsDisabled(n.clone()));
                }
                Fo::Eq(self.table.nominal(n).expect("nominal registered").to_string(), alpha)
            }
            ModalFormula::Not(inner) => match &**inner {
                ModalFormula::Prop(_) | ModalFormula::Nominal(_) => Fo::not(self.t(inner, alpha)?),
                _ => return Err(TranslateError::NotNnf(f.render(sigma))),
            },
            ModalFormula::And(l, r) => Fo::And(vec![self.t(l, alpha)?, self.t(r, alpha)?]),
            ModalFormula::Or(l, r) => Fo::Or(vec![self.t(l, alpha)?, self.t(r, alpha)?]),
            ModalFormula::Possibly(a, g) => {
                let guard = t_letter(*a, alpha, beta, sigma, &self.table)?;
                Fo::exists(beta, Fo::And(vec![guard, self.t(g, beta)?]))
            }
            ModalFormula::Necessarily(a, g) => {
                let id = self.ids[&(*a, (**g).clone())];
                match self.opts.mode {
                    Mode::Inline => {
                        let body = self.t(g, alpha)?;
                        let m = self.automaton(*a)?;
                        t_automaton(&m, alpha, &body, id, sigma, &self.table)?
                    }
                    Mode::Hoisted => {
                        if self.hoisted[id].is_none() {
                            let body = self.t(g, Var::V0)?;
                            check_body(Var::V0, &body)?;
                            let m = self.automaton(*a)?;
                            let rest = automaton_rest(&m, Var::V0, &body, id, sigma, &self.table)?;
                            self.hoisted[id] = Some(Fo::conj(rest));
                        }
                        let m = self.automaton(*a)?;
                        Fo::unary(self.table.state(id, m.start()).expect("state registered"), alpha)
                    }
                }
            }
        })
    }
}

/// `T_S(φ) = t(φ, v0, v1)` with the given options. `φ` must be in negation
/// normal form.
pub fn translate_with(logic: &Logic, phi: &ModalFormula, opts: Options) -> Result<(Fo, SymbolTable), TranslateError> {
    if !phi.is_nnf() {
        return Err(TranslateError::NotNnf(phi.render(&logic.alphabet)));
    }
    if !opts.nominals {
        if let Some(n) = phi.nominals().into_iter().next() {
            return Err(TranslateError::NominalsDisabled(n));
        }
    }
    let table = fresh_table(phi, &logic.alphabet, &logic.automata)?;
    let boxes = phi.box_subformulas();
    let ids = boxes.iter().enumerate().map(|(i, b)| ((b.letter, b.body.clone()), i)).collect();
    let mut ctx = Ctx { logic, table, ids, opts, hoisted: vec![None; boxes.len()] };
    let main = ctx.t(phi, Var::V0)?;
    let out = match opts.mode {
        Mode::Inline => main,
        Mode::Hoisted => {
            let mut items = vec![main];
            items.extend(ctx.hoisted.into_iter().flatten().filter(|f| *f != Fo::True));
            Fo::conj(items)
        }
    };
    Ok((out, ctx.table))
}

/// Inline translation without nominals.
pub fn translate(logic: &Logic, phi: &ModalFormula) -> Result<(Fo, SymbolTable), TranslateError> {
    translate_with(logic, phi, Options::default())
}

/// Inline translation where nominal `n` becomes the equality `n_n = α`.
pub fn translate_with_nominals(logic: &Logic, phi: &ModalFormula) -> Result<(Fo, SymbolTable), TranslateError> {
    translate_with(logic, phi, Options { mode: Mode::Inline, nominals: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::standard_logic;
    use crate::fo::{close, to_tptp, Closure, Role};
    use crate::syntax::parse_modal;
    use Var::{V0, V1};

    fn parse(logic: &Logic, text: &str) -> ModalFormula {
        parse_modal(text, &logic.alphabet).unwrap().nnf()
    }

    #[test]
    fn letters_map_to_relations() {
        let k = standard_logic("K").unwrap();
        let t = fresh_table(&ModalFormula::Top, &k.alphabet, &k.automata).unwrap();
        let a = Letter::forward(0);
        assert_eq!(t_letter(a, V0, V1, &k.alphabet, &t).unwrap(), Fo::binary("r_a", V0, V1));
        assert_eq!(t_letter(a.converse(), V0, V1, &k.alphabet, &t).unwrap(), Fo::binary("r_a", V1, V0));
        assert_eq!(
            t_letter(a.converse(), V1, V0, &k.alphabet, &t).unwrap(),
            t_letter(a, V0, V1, &k.alphabet, &t).unwrap()
        );
        assert_eq!(t_letter(a, V0, V0, &k.alphabet, &t), Err(TranslateError::SameVariables));
    }

    #[test]
    fn k_box_expands_two_state_automaton() {
        let k = standard_logic("K").unwrap();
        let (f, _) = translate(&k, &parse(&k, "[a]p")).unwrap();
        let expected = Fo::And(vec![
            Fo::unary("q_a_0_0", V0),
            Fo::forall2(Fo::implies(
                Fo::binary("r_a", V0, V1),
                Fo::implies(Fo::unary("q_a_0_0", V0), Fo::unary("q_a_1_0", V1)),
            )),
            Fo::forall(V0, Fo::implies(Fo::unary("q_a_1_0", V0), Fo::unary("p_p", V0))),
        ]);
        assert_eq!(f, expected);
    }

    #[test]
    fn atom() {
        let k = standard_logic("K").unwrap();
        assert_eq!(translate(&k, &parse(&k, "p")).unwrap().0, Fo::unary("p_p", V0));
    }

    #[test]
    fn rejects_non_nnf_and_nominals() {
        let k = standard_logic("K").unwrap();
        let phi = parse_modal("~[a]p", &k.alphabet).unwrap();
        assert!(matches!(translate(&k, &phi), Err(TranslateError::NotNnf(_))));
        let nom = parse(&k, "@n");
        assert!(matches!(translate(&k, &nom), Err(TranslateError::NominalsDisabled(_))));
        assert_eq!(translate_with_nominals(&k, &nom).unwrap().0, Fo::Eq("n_n".into(), V0));
        let dia = parse(&k, "<a>@n");
        assert_eq!(
            translate_with_nominals(&k, &dia).unwrap().0,
            Fo::exists(V1, Fo::And(vec![Fo::binary("r_a", V0, V1), Fo::Eq("n_n".into(), V1)]))
        );
        let plain = parse(&k, "<a>[a]p");
        assert_eq!(translate(&k, &plain).unwrap(), translate_with_nominals(&k, &plain).unwrap());
    }

    #[test]
    fn body_free_variable_checked() {
        let k = standard_logic("K").unwrap();
        let phi = parse(&k, "[a]p");
        let t = fresh_table(&phi, &k.alphabet, &k.automata).unwrap();
        let m = k.automata.get(Letter::forward(0)).unwrap();
        let err = t_automaton(m, V0, &Fo::unary("p_p", V1), 0, &k.alphabet, &t).unwrap_err();
        assert!(matches!(err, TranslateError::WrongFreeVariable { .. }));
    }

    #[test]
    fn no_accepting_state_means_no_body() {
        let k = standard_logic("K").unwrap();
        let phi = parse(&k, "[a]p");
        let t = fresh_table(&phi, &k.alphabet, &k.automata).unwrap();
        let m = Ndfa::from_names(&["s", "f"], "s", &[], &[("s", Some(Letter::forward(0)), "f")]);
        let f = t_automaton(&m, V0, &Fo::unary("p_p", V0), 0, &k.alphabet, &t).unwrap();
        let mut seen = false;
        f.for_each_atom(&mut |a| seen |= *a == Fo::unary("p_p", V0));
        assert!(!seen);
    }

    #[test]
    fn hoisted_keeps_start_atom_in_place() {
        let k5 = standard_logic("K5").unwrap();
        let phi = parse(&k5, "<a>p & <a>[a]~p");
        let (f, _) = translate_with(&k5, &phi, Options { mode: Mode::Hoisted, nominals: false }).unwrap();
        assert!(f.is_gf2());
        let Fo::And(items) = &f else { panic!("expected a conjunction") };
        assert_eq!(items.len(), 2);
        let text = to_tptp(&f, Role::Axiom, Closure::Existential);
        assert!(text.contains("?[X1]: (r_a(X0,X1) & q_a_0_0(X1))"), "{text}");
        assert_eq!(close(&f, Closure::Existential), Fo::exists(V0, f.clone()));
    }
}
