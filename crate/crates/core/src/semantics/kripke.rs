use std::collections::BTreeMap;

use crate::error::EvalError;
use crate::syntax::{Letter, ModalFormula, Rule, SemiThueSystem, Word};

/// Binary relation on `0..n` as a dense boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    cells: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, cells: vec![false; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for x in 0..n {
            r.insert(x, x);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.cells[x * self.n + y]
    }

    /// Returns whether the pair was new.
    pub fn insert(&mut self, x: usize, y: usize) -> bool {
        let cell = &mut self.cells[x * self.n + y];
        let fresh = !*cell;
        *cell = true;
        fresh
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n * n).filter(move |&i| self.cells[i]).map(move |i| (i / n, i % n))
    }

    pub fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&y| self.contains(x, y))
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&b| b)
    }

    pub fn inverse(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(x, y)| (y, x)))
    }

    /// `self ; other`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let mut out = Relation::empty(self.n);
        for (x, y) in self.pairs() {
            for z in other.successors(y) {
                out.insert(x, z);
            }
        }
        out
    }

    pub fn union(&self, other: &Relation) -> Relation {
        let mut out = self.clone();
        for (x, y) in other.pairs() {
            out.insert(x, y);
        }
        out
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.cells.iter().zip(&other.cells).all(|(&a, &b)| !a || b)
    }

    /// Reflexive-transitive closure.
    pub fn star(&self) -> Relation {
        let mut out = Relation::identity(self.n).union(self);
        for k in 0..self.n {
            for x in 0..self.n {
                if out.contains(x, k) {
                    for y in 0..self.n {
                        if out.contains(k, y) {
                            out.insert(x, y);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Finite frame storing one relation per forward letter; the relation of a
/// backward letter is the inverse of its partner's.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KripkeFrame {
    worlds: usize,
    relations: Vec<Relation>,
}

impl KripkeFrame {
    /// `pairs` is the number of forward letters.
    pub fn new(worlds: usize, pairs: usize) -> Self {
        assert!(worlds > 0, "a frame needs at least one world");
        KripkeFrame { worlds, relations: vec![Relation::empty(worlds); pairs] }
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn pair_count(&self) -> usize {
        self.relations.len()
    }

    /// Adds `(x, y)` to the relation of `letter`; for a backward letter this
    /// stores `(y, x)` in the forward partner.
    pub fn add_edge(&mut self, letter: Letter, x: usize, y: usize) -> bool {
        let r = &mut self.relations[letter.pair()];
        if letter.is_forward() {
            r.insert(x, y)
        } else {
            r.insert(y, x)
        }
    }

    pub fn has_edge(&self, letter: Letter, x: usize, y: usize) -> bool {
        let r = &self.relations[letter.pair()];
        if letter.is_forward() {
            r.contains(x, y)
        } else {
            r.contains(y, x)
        }
    }

    /// Stored relation of the forward letter with index `pair`.
    pub fn forward(&self, pair: usize) -> &Relation {
        &self.relations[pair]
    }

    pub fn relation(&self, letter: Letter) -> Relation {
        let r = &self.relations[letter.pair()];
        if letter.is_forward() {
            r.clone()
        } else {
            r.inverse()
        }
    }

    pub fn successors(&self, letter: Letter, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.worlds).filter(move |&y| self.has_edge(letter, x, y))
    }

    /// `R_u` for a word `u`: identity for ε, composition otherwise.
    pub fn word_relation(&self, word: &Word) -> Relation {
        word.letters()
            .iter()
            .fold(Relation::identity(self.worlds), |acc, &l| acc.compose(&self.relation(l)))
    }

    pub fn satisfies_rule(&self, rule: &Rule) -> bool {
        self.word_relation(&rule.rhs).is_subset(&self.relation(rule.lhs))
    }

    pub fn satisfies_system(&self, system: &SemiThueSystem) -> bool {
        system.rules().all(|r| self.satisfies_rule(r))
    }

    /// Every frame is a subframe of itself; `self ⊆ other` edge-wise.
    pub fn is_subframe_of(&self, other: &KripkeFrame) -> bool {
        self.worlds == other.worlds
            && self.relations.iter().zip(&other.relations).all(|(a, b)| a.is_subset(b))
    }

    /// Whether the union of all relations, read undirected, connects every
    /// world.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.worlds];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for r in &self.relations {
                for (y, s) in seen.iter_mut().enumerate() {
                    if !*s && (r.contains(x, y) || r.contains(y, x)) {
                        *s = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub frame: KripkeFrame,
    /// Worlds where each proposition holds; absent propositions hold nowhere.
    pub valuation: BTreeMap<String, Vec<bool>>,
    pub nominals: BTreeMap<String, usize>,
}

impl KripkeModel {
    pub fn new(frame: KripkeFrame) -> Self {
        KripkeModel { frame, valuation: BTreeMap::new(), nominals: BTreeMap::new() }
    }

    pub fn worlds(&self) -> usize {
        self.frame.worlds()
    }

    pub fn set_prop(&mut self, p: &str, worlds: impl IntoIterator<Item = usize>) {
        let mut ext = vec![false; self.worlds()];
        for w in worlds {
            ext[w] = true;
        }
        self.valuation.insert(p.to_string(), ext);
    }

    pub fn holds(&self, p: &str, w: usize) -> bool {
        self.valuation.get(p).is_some_and(|ext| ext[w])
    }

    fn check_letter(&self, a: Letter) -> Result<(), EvalError> {
        if a.pair() < self.frame.pair_count() {
            Ok(())
        } else {
            Err(EvalError::UnknownIndex(a.index()))
        }
    }

    /// The set of worlds where `phi` holds.
    pub fn extension(&self, phi: &ModalFormula) -> Result<Vec<bool>, EvalError> {
        let n = self.worlds();
        Ok(match phi {
            ModalFormula::Top => vec![true; n],
            ModalFormula::Bottom => vec![false; n],
            ModalFormula::Prop(p) => (0..n).map(|w| self.holds(p, w)).collect(),
            ModalFormula::Nominal(name) => {
                let at = *self.nominals.get(name).ok_or_else(|| EvalError::UnassignedNominal(name.clone()))?;
                (0..n).map(|w| w == at).collect()
            }
            ModalFormula::Not(f) => self.extension(f)?.into_iter().map(|b| !b).collect(),
            ModalFormula::And(l, r) => {
                let (l, r) = (self.extension(l)?, self.extension(r)?);
                l.iter().zip(&r).map(|(a, b)| *a && *b).collect()
            }
            ModalFormula::Or(l, r) => {
                let (l, r) = (self.extension(l)?, self.extension(r)?);
                l.iter().zip(&r).map(|(a, b)| *a || *b).collect()
            }
            ModalFormula::Possibly(a, f) => {
                self.check_letter(*a)?;
                let inner = self.extension(f)?;
                (0..n).map(|w| self.frame.successors(*a, w).any(|v| inner[v])).collect()
            }
            ModalFormula::Necessarily(a, f) => {
                self.check_letter(*a)?;
                let inner = self.extension(f)?;
                (0..n).map(|w| self.frame.successors(*a, w).all(|v| inner[v])).collect()
            }
        })
    }

    /// Truth at the world `w`.
    pub fn eval(&self, w: usize, phi: &ModalFormula) -> Result<bool, EvalError> {
        if w >= self.worlds() {
            return Err(EvalError::UnknownWorld(w));
        }
        Ok(self.extension(phi)?[w])
    }

    /// Truth at every world.
    pub fn satisfies(&self, phi: &ModalFormula) -> Result<bool, EvalError> {
        Ok(self.extension(phi)?.into_iter().all(|b| b))
    }
}

/// Truth of `phi` at world `w` of `model`.
pub fn eval_modal(model: &KripkeModel, w: usize, phi: &ModalFormula) -> Result<bool, EvalError> {
    model.eval(w, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_modal, Alphabet};

    fn sigma() -> Alphabet {
        Alphabet::new([("a", "A")]).unwrap()
    }

    fn chain() -> KripkeFrame {
        let mut f = KripkeFrame::new(3, 1);
        f.add_edge(Letter::forward(0), 0, 1);
        f.add_edge(Letter::forward(0), 1, 2);
        f
    }

    #[test]
    fn vacuous_box() {
        let m = KripkeModel::new(KripkeFrame::new(1, 1));
        assert!(m.eval(0, &parse_modal("[a]false", &sigma()).unwrap()).unwrap());
    }

    #[test]
    fn backward_letter_uses_inverse() {
        let s = sigma();
        let mut f = KripkeFrame::new(2, 1);
        f.add_edge(Letter::forward(0), 0, 1);
        let mut m = KripkeModel::new(f);
        m.set_prop("p", [1]);
        let eval = |w, text| m.eval(w, &parse_modal(text, &s).unwrap()).unwrap();
        assert!(eval(0, "<a>p"));
        assert!(!eval(1, "<A>p"));
        assert!(eval(1, "<A>true"));
        assert!(!eval(0, "<A>true"));
    }

    #[test]
    fn word_relation_examples() {
        let s = sigma();
        let f = chain();
        assert_eq!(f.word_relation(&Word::empty()), Relation::identity(3));
        assert_eq!(f.word_relation(&s.parse_word("a a").unwrap()), Relation::from_pairs(3, [(0, 2)]));
    }

    #[test]
    fn rule_satisfaction() {
        let s = sigma();
        let trans = Rule::new(Letter::forward(0), s.parse_word("a a").unwrap());
        let mut f = chain();
        assert!(!f.satisfies_rule(&trans));
        f.add_edge(Letter::forward(0), 0, 2);
        assert!(f.satisfies_rule(&trans));
        assert!(f.satisfies_rule(&Rule::new(Letter::forward(0), Word::single(Letter::forward(0)))));
    }

    #[test]
    fn errors() {
        let m = KripkeModel::new(KripkeFrame::new(1, 1));
        let s = Alphabet::new([("a", "A"), ("b", "B")]).unwrap();
        assert_eq!(m.eval(3, &ModalFormula::Top), Err(EvalError::UnknownWorld(3)));
        assert!(matches!(
            m.eval(0, &parse_modal("<b>true", &s).unwrap()),
            Err(EvalError::UnknownIndex(_))
        ));
        assert!(matches!(m.eval(0, &ModalFormula::nominal("n")), Err(EvalError::UnassignedNominal(_))));
    }

    #[test]
    fn star_is_reflexive_transitive() {
        let r = chain().forward(0).star();
        assert!(r.contains(0, 2) && r.contains(1, 1) && !r.contains(2, 0));
    }
}
