use std::collections::BTreeMap;

use super::kripke::Relation;
use crate::error::EvalError;
use crate::fo::{Fo, Var};

/// Finite first-order structure for the symbols of the target fragment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoModel {
    pub size: usize,
    pub unary: BTreeMap<String, Vec<bool>>,
    pub binary: BTreeMap<String, Relation>,
    pub constants: BTreeMap<String, usize>,
}

/// Values of `v0` and `v1`; `None` is unassigned.
pub type Assignment = [Option<usize>; 2];

impl FoModel {
    pub fn new(size: usize) -> Self {
        FoModel { size, unary: BTreeMap::new(), binary: BTreeMap::new(), constants: BTreeMap::new() }
    }

    fn value(&self, env: &Assignment, v: Var) -> Result<usize, EvalError> {
        env[v.index()].ok_or_else(|| EvalError::UnassignedVariable(v.to_string()))
    }

    pub fn eval(&self, env: &Assignment, f: &Fo) -> Result<bool, EvalError> {
        Ok(match f {
            Fo::True => true,
            Fo::False => false,
            Fo::Unary(p, v) => {
                let ext = self.unary.get(p).ok_or_else(|| EvalError::Uninterpreted(p.clone()))?;
                ext[self.value(env, *v)?]
            }
            Fo::Binary(r, x, y) => {
                let rel = self.binary.get(r).ok_or_else(|| EvalError::Uninterpreted(r.clone()))?;
                rel.contains(self.value(env, *x)?, self.value(env, *y)?)
            }
            Fo::Eq(c, v) => {
                let at = self.constants.get(c).ok_or_else(|| EvalError::Uninterpreted(c.clone()))?;
                *at == self.value(env, *v)?
            }
            Fo::Not(g) => !self.eval(env, g)?,
            Fo::And(items) => {
                for g in items {
                    if !self.eval(env, g)? {
                        return Ok(false);
                    }
                }
                true
            }
            Fo::Or(items) => {
                for g in items {
                    if self.eval(env, g)? {
                        return Ok(true);
                    }
                }
                false
            }
            Fo::Implies(l, r) => !self.eval(env, l)? || self.eval(env, r)?,
            Fo::Exists(v, g) => {
                let mut env = *env;
                for e in 0..self.size {
                    env[v.index()] = Some(e);
                    if self.eval(&env, g)? {
                        return Ok(true);
                    }
                }
                false
            }
            Fo::Forall(v, g) => {
                let mut env = *env;
                for e in 0..self.size {
                    env[v.index()] = Some(e);
                    if !self.eval(&env, g)? {
                        return Ok(false);
                    }
                }
                true
            }
            Fo::Forall2(g) => {
                for x in 0..self.size {
                    for y in 0..self.size {
                        if !self.eval(&[Some(x), Some(y)], g)? {
                            return Ok(false);
                        }
                    }
                }
                true
            }
        })
    }
}

/// Tarskian truth of `f` in `model` under `env`.
pub fn eval_fo(model: &FoModel, env: &Assignment, f: &Fo) -> Result<bool, EvalError> {
    model.eval(env, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Var::{V0, V1};

    fn two() -> FoModel {
        let mut m = FoModel::new(2);
        m.unary.insert("p".into(), vec![false, true]);
        m.binary.insert("r".into(), Relation::from_pairs(2, [(0, 1)]));
        m.constants.insert("c".into(), 1);
        m
    }

    #[test]
    fn equality() {
        let m = two();
        assert!(m.eval(&[None, Some(1)], &Fo::Eq("c".into(), V1)).unwrap());
        assert!(!m.eval(&[Some(0), None], &Fo::Eq("c".into(), V0)).unwrap());
    }

    #[test]
    fn conjunction_and_existential() {
        let m = two();
        let f = Fo::exists(V1, Fo::And(vec![Fo::binary("r", V0, V1), Fo::unary("p", V1)]));
        assert!(m.eval(&[Some(0), None], &f).unwrap());
        assert!(!m.eval(&[Some(1), None], &f).unwrap());
    }

    #[test]
    fn uninterpreted_symbol() {
        let m = two();
        assert_eq!(m.eval(&[Some(0), None], &Fo::unary("q", V0)), Err(EvalError::Uninterpreted("q".into())));
        assert!(matches!(m.eval(&[None, None], &Fo::unary("p", V0)), Err(EvalError::UnassignedVariable(_))));
    }
}
