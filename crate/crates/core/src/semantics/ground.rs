//! Bounded model finding: ground a formula over a fixed domain, encode the
//! result as clauses, and hand it to the SAT solver.

use std::collections::{BTreeSet, HashMap};

use super::fo_model::{Assignment, FoModel};
use super::kripke::Relation;
use super::sat::{Lit, SatResult, Solver};
use crate::fo::{close, Closure, Fo, VarSet};

/// Default conflict budget per domain size.
pub const DEFAULT_CONFLICT_CAP: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoSolution {
    pub model: FoModel,
    /// Values of the free variables that make the formula true.
    pub witness: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoSat {
    Model(FoSolution),
    /// No model with at most this many elements.
    NoModel { up_to: usize },
    /// The conflict budget ran out at this domain size; smaller sizes have no
    /// model.
    Exhausted { domain: usize },
}

impl FoSat {
    pub fn model(&self) -> Option<&FoSolution> {
        match self {
            FoSat::Model(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_model(&self) -> bool {
        matches!(self, FoSat::Model(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum G {
    Const(bool),
    Lit(Lit),
}

#[derive(Default)]
struct Symbols {
    unary: BTreeSet<String>,
    binary: BTreeSet<String>,
    constants: BTreeSet<String>,
}

fn collect(f: &Fo) -> Symbols {
    let mut s = Symbols::default();
    f.for_each_atom(&mut |a| match a {
        Fo::Unary(p, _) => {
            s.unary.insert(p.clone());
        }
        Fo::Binary(r, _, _) => {
            s.binary.insert(r.clone());
        }
        Fo::Eq(c, _) => {
            s.constants.insert(c.clone());
        }
        _ => {}
    });
    s
}

struct Grounder {
    n: usize,
    solver: Solver,
    unary: HashMap<String, usize>,
    binary: HashMap<String, usize>,
    constants: HashMap<String, usize>,
    free: HashMap<*const Fo, VarSet>,
    memo: HashMap<(*const Fo, Assignment, bool), G>,
}

impl Grounder {
    fn new(n: usize, symbols: &Symbols) -> Self {
        let mut next = 0;
        let mut alloc = |count: usize| {
            let base = next;
            next += count;
            base
        };
        let unary = symbols.unary.iter().map(|p| (p.clone(), alloc(n))).collect();
        let binary = symbols.binary.iter().map(|r| (r.clone(), alloc(n * n))).collect();
        let constants: HashMap<String, usize> = symbols.constants.iter().map(|c| (c.clone(), alloc(n))).collect();
        let mut solver = Solver::new(next);
        for &base in constants.values() {
            solver.add_clause((0..n).map(|e| Lit::pos(base + e)));
            for x in 0..n {
                for y in x + 1..n {
                    solver.add_clause([Lit::neg(base + x), Lit::neg(base + y)]);
                }
            }
        }
        Grounder { n, solver, unary, binary, constants, free: HashMap::new(), memo: HashMap::new() }
    }

    fn free_vars(&mut self, f: &Fo) -> VarSet {
        *self.free.entry(f as *const Fo).or_insert_with(|| f.free_vars())
    }

    fn val(env: &Assignment, v: crate::fo::Var) -> usize {
        env[v.index()].expect("variables are bound before use")
    }

    fn and(&mut self, parts: Vec<G>) -> G {
        let mut lits = Vec::new();
        for g in parts {
            match g {
                G::Const(false) => return G::Const(false),
                G::Const(true) => {}
                G::Lit(l) => lits.push(l),
            }
        }
        match lits.len() {
            0 => G::Const(true),
            1 => G::Lit(lits[0]),
            _ => {
                let t = self.solver.new_var();
                for l in lits {
                    self.solver.add_clause([Lit::neg(t), l]);
                }
                G::Lit(Lit::pos(t))
            }
        }
    }

    fn or(&mut self, parts: Vec<G>) -> G {
        let mut lits = Vec::new();
        for g in parts {
            match g {
                G::Const(true) => return G::Const(true),
                G::Const(false) => {}
                G::Lit(l) => lits.push(l),
            }
        }
        match lits.len() {
            0 => G::Const(false),
            1 => G::Lit(lits[0]),
            _ => {
                let t = self.solver.new_var();
                self.solver.add_clause(std::iter::once(Lit::neg(t)).chain(lits));
                G::Lit(Lit::pos(t))
            }
        }
    }

    /// Either a conjunction (when `conj`) or a disjunction.
    fn junction(&mut self, conj: bool, parts: Vec<G>) -> G {
        if conj {
            self.and(parts)
        } else {
            self.or(parts)
        }
    }

    /// Grounds `f` (or its negation when `!pos`) under `env`. Both the
    /// formula and the encoding are in negation normal form, so each
    /// connective needs clauses in one direction only.
    fn ground(&mut self, f: &Fo, env: &Assignment, pos: bool) -> G {
        let free = self.free_vars(f);
        let mut key_env = *env;
        for v in [crate::fo::Var::V0, crate::fo::Var::V1] {
            if !free.contains(v) {
                key_env[v.index()] = None;
            }
        }
        let key = (f as *const Fo, key_env, pos);
        if let Some(&g) = self.memo.get(&key) {
            return g;
        }
        let n = self.n;
        let g = match f {
            Fo::True => G::Const(pos),
            Fo::False => G::Const(!pos),
            Fo::Unary(p, v) => G::Lit(Lit::new(self.unary[p] + Self::val(env, *v), pos)),
            Fo::Binary(r, x, y) => {
                G::Lit(Lit::new(self.binary[r] + Self::val(env, *x) * n + Self::val(env, *y), pos))
            }
            Fo::Eq(c, v) => G::Lit(Lit::new(self.constants[c] + Self::val(env, *v), pos)),
            Fo::Not(g) => self.ground(g, env, !pos),
            Fo::And(items) | Fo::Or(items) => {
                let parts = items.iter().map(|g| self.ground(g, env, pos)).collect();
                self.junction(matches!(f, Fo::And(_)) == pos, parts)
            }
            Fo::Implies(l, r) => {
                let parts = vec![self.ground(l, env, !pos), self.ground(r, env, pos)];
                self.junction(!pos, parts)
            }
            Fo::Exists(v, g) | Fo::Forall(v, g) => {
                let parts = (0..n)
                    .map(|e| {
                        let mut inner = *env;
                        inner[v.index()] = Some(e);
                        self.ground(g, &inner, pos)
                    })
                    .collect();
                self.junction(matches!(f, Fo::Forall(..)) == pos, parts)
            }
            Fo::Forall2(g) => {
                let mut parts = Vec::with_capacity(n * n);
                for x in 0..n {
                    for y in 0..n {
                        parts.push(self.ground(g, &[Some(x), Some(y)], pos));
                    }
                }
                self.junction(pos, parts)
            }
        };
        self.memo.insert(key, g);
        g
    }

    fn decode(&self, assignment: &[bool], symbols: &Symbols) -> FoModel {
        let n = self.n;
        let mut m = FoModel::new(n);
        for p in &symbols.unary {
            let base = self.unary[p];
            m.unary.insert(p.clone(), (0..n).map(|e| assignment[base + e]).collect());
        }
        for r in &symbols.binary {
            let base = self.binary[r];
            let pairs = (0..n * n).filter(|i| assignment[base + i]).map(|i| (i / n, i % n));
            m.binary.insert(r.clone(), Relation::from_pairs(n, pairs));
        }
        for c in &symbols.constants {
            let base = self.constants[c];
            let at = (0..n).find(|&e| assignment[base + e]).expect("exactly-one clause");
            m.constants.insert(c.clone(), at);
        }
        m
    }
}

/// Outcome of the search at exactly `n` elements: `Some(Some(model))`,
/// `Some(None)` for no model, `None` when the budget ran out.
pub fn fo_sat_at(phi: &Fo, n: usize, conflict_cap: u64) -> Option<Option<FoSolution>> {
    assert!(n > 0, "domains are non-empty");
    let closed = close(phi, Closure::Existential);
    let symbols = collect(phi);
    let mut g = Grounder::new(n, &symbols);
    match g.ground(&closed, &[None, None], true) {
        G::Const(false) => return Some(None),
        G::Const(true) => {}
        G::Lit(l) => g.solver.add_clause([l]),
    }
    let assignment = match g.solver.solve(conflict_cap) {
        SatResult::Sat(a) => a,
        SatResult::Unsat => return Some(None),
        SatResult::Unknown => return None,
    };
    let model = g.decode(&assignment, &symbols);
    let free: Vec<_> = phi.free_vars().iter().collect();
    let mut candidates = vec![[None, None]];
    for v in free {
        candidates = candidates
            .into_iter()
            .flat_map(|env: Assignment| {
                (0..n).map(move |e| {
                    let mut env = env;
                    env[v.index()] = Some(e);
                    env
                })
            })
            .collect();
    }
    let witness = candidates
        .into_iter()
        .find(|env| model.eval(env, phi).unwrap_or(false))
        .expect("decoded model satisfies the formula");
    Some(Some(FoSolution { model, witness }))
}

/// Smallest model with at most `max_domain` elements, free variables read
/// existentially. "No model" only speaks about the bound.
pub fn bounded_fo_sat(phi: &Fo, max_domain: usize, conflict_cap: u64) -> FoSat {
    for n in 1..=max_domain {
        match fo_sat_at(phi, n, conflict_cap) {
            Some(Some(sol)) => return FoSat::Model(sol),
            Some(None) => {}
            None => return FoSat::Exhausted { domain: n },
        }
    }
    FoSat::NoModel { up_to: max_domain }
}
