use std::fmt;

/// One of the two variables of the target fragment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    V0,
    V1,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::V0 => Var::V1,
            Var::V1 => Var::V0,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    fn bit(self) -> u8 {
        1 << self.index()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.index())
    }
}

/// Set of variables as a two-bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u8);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);
    pub const BOTH: VarSet = VarSet(3);

    pub fn single(v: Var) -> VarSet {
        VarSet(v.bit())
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn union(self, o: VarSet) -> VarSet {
        VarSet(self.0 | o.0)
    }

    pub fn without(self, v: Var) -> VarSet {
        VarSet(self.0 & !v.bit())
    }

    pub fn is_subset(self, o: VarSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        [Var::V0, Var::V1].into_iter().filter(move |v| self.contains(*v))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// First-order formula over the variables `v0`, `v1`, unary and binary
/// predicates, and constants compared to variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fo {
    True,
    False,
    Unary(String, Var),
    Binary(String, Var, Var),
    /// `c = v` for a constant `c`.
    Eq(String, Var),
    Not(Box<Fo>),
    And(Vec<Fo>),
    Or(Vec<Fo>),
    Implies(Box<Fo>, Box<Fo>),
    Exists(Var, Box<Fo>),
    Forall(Var, Box<Fo>),
    /// `∀v0 v1`.
    Forall2(Box<Fo>),
}

impl Fo {
    pub fn unary(p: &str, v: Var) -> Fo {
        Fo::Unary(p.to_string(), v)
    }

    pub fn binary(r: &str, x: Var, y: Var) -> Fo {
        Fo::Binary(r.to_string(), x, y)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Fo) -> Fo {
        Fo::Not(Box::new(f))
    }

    pub fn implies(l: Fo, r: Fo) -> Fo {
        Fo::Implies(Box::new(l), Box::new(r))
    }

    pub fn exists(v: Var, f: Fo) -> Fo {
        Fo::Exists(v, Box::new(f))
    }

    pub fn forall(v: Var, f: Fo) -> Fo {
        Fo::Forall(v, Box::new(f))
    }

    pub fn forall2(f: Fo) -> Fo {
        Fo::Forall2(Box::new(f))
    }

    /// Conjunction that collapses the empty and singleton cases.
    pub fn conj(mut items: Vec<Fo>) -> Fo {
        match items.len() {
            0 => Fo::True,
            1 => items.pop().unwrap(),
            _ => Fo::And(items),
        }
    }

    /// Disjunction that collapses the empty and singleton cases.
    pub fn disj(mut items: Vec<Fo>) -> Fo {
        match items.len() {
            0 => Fo::False,
            1 => items.pop().unwrap(),
            _ => Fo::Or(items),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Fo::Unary(..) | Fo::Binary(..) | Fo::Eq(..))
    }

    /// Variables occurring in an atom.
    pub fn atom_vars(&self) -> VarSet {
        match self {
            Fo::Unary(_, v) | Fo::Eq(_, v) => VarSet::single(*v),
            Fo::Binary(_, x, y) => VarSet::single(*x).union(VarSet::single(*y)),
            _ => VarSet::EMPTY,
        }
    }

    pub fn free_vars(&self) -> VarSet {
        match self {
            Fo::True | Fo::False => VarSet::EMPTY,
            Fo::Unary(..) | Fo::Binary(..) | Fo::Eq(..) => self.atom_vars(),
            Fo::Not(f) => f.free_vars(),
            Fo::And(items) | Fo::Or(items) => items.iter().fold(VarSet::EMPTY, |acc, f| acc.union(f.free_vars())),
            Fo::Implies(l, r) => l.free_vars().union(r.free_vars()),
            Fo::Exists(v, f) | Fo::Forall(v, f) => f.free_vars().without(*v),
            Fo::Forall2(_) => VarSet::EMPTY,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Fo::True | Fo::False | Fo::Unary(..) | Fo::Binary(..) | Fo::Eq(..) => 1,
            Fo::Not(f) | Fo::Exists(_, f) | Fo::Forall(_, f) | Fo::Forall2(f) => 1 + f.size(),
            Fo::And(items) | Fo::Or(items) => 1 + items.iter().map(Fo::size).sum::<usize>(),
            Fo::Implies(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Applies `f` to every atom, bottom-up, rebuilding the formula.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Fo) -> Fo) -> Fo {
        match self {
            Fo::True | Fo::False => self.clone(),
            Fo::Unary(..) | Fo::Binary(..) | Fo::Eq(..) => f(self),
            Fo::Not(g) => Fo::not(g.map_atoms(f)),
            Fo::And(items) => Fo::And(items.iter().map(|g| g.map_atoms(f)).collect()),
            Fo::Or(items) => Fo::Or(items.iter().map(|g| g.map_atoms(f)).collect()),
            Fo::Implies(l, r) => Fo::implies(l.map_atoms(f), r.map_atoms(f)),
            Fo::Exists(v, g) => Fo::exists(*v, g.map_atoms(f)),
            Fo::Forall(v, g) => Fo::forall(*v, g.map_atoms(f)),
            Fo::Forall2(g) => Fo::forall2(g.map_atoms(f)),
        }
    }

    /// Visits every atom in left-to-right order.
    pub fn for_each_atom(&self, f: &mut impl FnMut(&Fo)) {
        match self {
            Fo::True | Fo::False => {}
            Fo::Unary(..) | Fo::Binary(..) | Fo::Eq(..) => f(self),
            Fo::Not(g) | Fo::Exists(_, g) | Fo::Forall(_, g) | Fo::Forall2(g) => g.for_each_atom(f),
            Fo::And(items) | Fo::Or(items) => items.iter().for_each(|g| g.for_each_atom(f)),
            Fo::Implies(l, r) => {
                l.for_each_atom(f);
                r.for_each_atom(f);
            }
        }
    }

    /// Checks the guarded two-variable shape: every quantifier reads
    /// `∃v (G ∧ ψ)`, `∀v (G → ψ)` or `∀v0 v1 (G → ψ)` with an atomic guard `G`
    /// whose variables cover the bound variables and the free variables of
    /// `ψ`. Returns the offending subformula on failure.
    pub fn check_gf2(&self) -> Result<(), String> {
        let guarded = |guard: &Fo, bound: VarSet, rest: VarSet, whole: &Fo| {
            if !guard.is_atom() {
                return Err(format!("guard is not an atom in `{whole}`"));
            }
            let needed = bound.union(rest);
            if !needed.is_subset(guard.atom_vars()) {
                return Err(format!("guard `{guard}` does not cover {needed} in `{whole}`"));
            }
            Ok(())
        };
        match self {
            Fo::True | Fo::False | Fo::Unary(..) | Fo::Binary(..) | Fo::Eq(..) => Ok(()),
            Fo::Not(f) => f.check_gf2(),
            Fo::And(items) | Fo::Or(items) => items.iter().try_for_each(Fo::check_gf2),
            Fo::Implies(l, r) => {
                l.check_gf2()?;
                r.check_gf2()
            }
            Fo::Exists(v, body) => {
                let bound = VarSet::single(*v);
                match &**body {
                    atom if atom.is_atom() => guarded(atom, bound, VarSet::EMPTY, self),
                    Fo::And(items) if !items.is_empty() => {
                        let rest = items[1..].iter().fold(VarSet::EMPTY, |acc, f| acc.union(f.free_vars()));
                        guarded(&items[0], bound, rest, self)?;
                        items[1..].iter().try_for_each(Fo::check_gf2)
                    }
                    _ => Err(format!("existential without a guarded conjunction: `{self}`")),
                }
            }
            Fo::Forall(v, body) => self.check_universal(VarSet::single(*v), body, guarded),
            Fo::Forall2(body) => self.check_universal(VarSet::BOTH, body, guarded),
        }
    }

    fn check_universal(
        &self,
        bound: VarSet,
        body: &Fo,
        guarded: impl Fn(&Fo, VarSet, VarSet, &Fo) -> Result<(), String>,
    ) -> Result<(), String> {
        match body {
            Fo::Implies(guard, rest) => {
                guarded(guard, bound, rest.free_vars(), self)?;
                rest.check_gf2()
            }
            _ => Err(format!("universal without a guarded implication: `{self}`")),
        }
    }

    pub fn is_gf2(&self) -> bool {
        self.check_gf2().is_ok()
    }
}

impl fmt::Display for Fo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, items: &[Fo], op: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{item}")?;
            }
            write!(f, ")")
        };
        match self {
            Fo::True => write!(f, "⊤"),
            Fo::False => write!(f, "⊥"),
            Fo::Unary(p, v) => write!(f, "{p}({v})"),
            Fo::Binary(r, x, y) => write!(f, "{r}({x},{y})"),
            Fo::Eq(c, v) => write!(f, "{c} = {v}"),
            Fo::Not(g) => write!(f, "¬{g}"),
            Fo::And(items) => join(f, items, "∧"),
            Fo::Or(items) => join(f, items, "∨"),
            Fo::Implies(l, r) => write!(f, "({l} → {r})"),
            Fo::Exists(v, g) => write!(f, "∃{v} {g}"),
            Fo::Forall(v, g) => write!(f, "∀{v} {g}"),
            Fo::Forall2(g) => write!(f, "∀v0 v1 {g}"),
        }
    }
}
