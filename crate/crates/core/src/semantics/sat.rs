//! A small conflict-driven clause-learning SAT solver.
//!
//! Decisions always pick the lowest-numbered unassigned variable and try
//! `false` first, so runs are reproducible.

use std::ops::Not;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: usize, positive: bool) -> Lit {
        Lit(((var as u32) << 1) | (!positive as u32))
    }

    pub fn pos(var: usize) -> Lit {
        Lit::new(var, true)
    }

    pub fn neg(var: usize) -> Lit {
        Lit::new(var, false)
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Vec<bool>),
    Unsat,
    /// The conflict budget ran out.
    Unknown,
}

#[derive(Default)]
pub struct Solver {
    clauses: Vec<Vec<Lit>>,
    units: Vec<Lit>,
    watches: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    inconsistent: bool,
    pub conflicts: u64,
}

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        let mut s = Solver::default();
        s.grow(num_vars);
        s
    }

    pub fn num_vars(&self) -> usize {
        self.assign.len()
    }

    pub fn new_var(&mut self) -> usize {
        let v = self.num_vars();
        self.grow(v + 1);
        v
    }

    fn grow(&mut self, n: usize) {
        self.assign.resize(n, None);
        self.level.resize(n, 0);
        self.reason.resize(n, None);
        self.watches.resize(2 * n, Vec::new());
    }

    pub fn add_clause(&mut self, lits: impl IntoIterator<Item = Lit>) {
        let mut c: Vec<Lit> = lits.into_iter().collect();
        c.sort();
        c.dedup();
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return;
        }
        if let Some(max) = c.iter().map(|l| l.var()).max() {
            if max >= self.num_vars() {
                self.grow(max + 1);
            }
        }
        match c.len() {
            0 => self.inconsistent = true,
            1 => self.units.push(c[0]),
            _ => {
                let idx = self.clauses.len();
                self.watches[c[0].code()].push(idx);
                self.watches[c[1].code()].push(idx);
                self.clauses.push(c);
            }
        }
    }

    fn value(&self, l: Lit) -> Option<bool> {
        self.assign[l.var()].map(|b| b == l.is_positive())
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        self.assign[l.var()] = Some(l.is_positive());
        self.level[l.var()] = self.decision_level();
        self.reason[l.var()] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = !p;
            let watching = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut kept = Vec::with_capacity(watching.len());
            let mut conflict = None;
            let mut i = 0;
            while i < watching.len() {
                let ci = watching[i];
                i += 1;
                if conflict.is_some() {
                    kept.push(ci);
                    continue;
                }
                if self.clauses[ci][0] == false_lit {
                    self.clauses[ci].swap(0, 1);
                }
                let first = self.clauses[ci][0];
                if self.value(first) == Some(true) {
                    kept.push(ci);
                    continue;
                }
                let len = self.clauses[ci].len();
                let replacement = (2..len).find(|&k| self.value(self.clauses[ci][k]) != Some(false));
                if let Some(k) = replacement {
                    self.clauses[ci].swap(1, k);
                    let w = self.clauses[ci][1];
                    self.watches[w.code()].push(ci);
                    continue;
                }
                kept.push(ci);
                if self.value(first) == Some(false) {
                    conflict = Some(ci);
                } else {
                    self.enqueue(first, Some(ci));
                }
            }
            self.watches[false_lit.code()] = kept;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    /// First-UIP learning; returns the learnt clause (asserting literal
    /// first) and the level to jump back to.
    fn analyze(&self, conflict: usize) -> (Vec<Lit>, usize) {
        let mut seen = vec![false; self.num_vars()];
        let mut learnt = vec![Lit(0)];
        let mut counter = 0;
        let mut clause = conflict;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let current = self.decision_level();
        loop {
            let skip = usize::from(p.is_some());
            for &q in &self.clauses[clause][skip..] {
                let v = q.var();
                if !seen[v] && self.level[v] > 0 {
                    seen[v] = true;
                    if self.level[v] == current {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if seen[self.trail[idx].var()] {
                    break;
                }
            }
            let lit = self.trail[idx];
            seen[lit.var()] = false;
            counter -= 1;
            p = Some(lit);
            if counter == 0 {
                break;
            }
            clause = self.reason[lit.var()].expect("implied literal has a reason");
        }
        learnt[0] = !p.unwrap();
        let mut back = 0;
        if learnt.len() > 1 {
            let (max_i, _) = learnt[1..]
                .iter()
                .enumerate()
                .max_by_key(|(_, l)| self.level[l.var()])
                .unwrap();
            learnt.swap(1, max_i + 1);
            back = self.level[learnt[1].var()];
        }
        (learnt, back)
    }

    fn backtrack(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level];
        for l in self.trail.drain(keep..) {
            self.assign[l.var()] = None;
            self.reason[l.var()] = None;
        }
        self.trail_lim.truncate(level);
        self.qhead = self.trail.len();
    }

    /// Solves with at most `max_conflicts` conflicts.
    pub fn solve(&mut self, max_conflicts: u64) -> SatResult {
        if self.inconsistent {
            return SatResult::Unsat;
        }
        for l in std::mem::take(&mut self.units) {
            match self.value(l) {
                Some(true) => {}
                Some(false) => return SatResult::Unsat,
                None => self.enqueue(l, None),
            }
        }
        let mut next_var = 0;
        loop {
            if let Some(conflict) = self.propagate() {
                self.conflicts += 1;
                if self.decision_level() == 0 {
                    return SatResult::Unsat;
                }
                if self.conflicts > max_conflicts {
                    return SatResult::Unknown;
                }
                let (learnt, back) = self.analyze(conflict);
                self.backtrack(back);
                next_var = 0;
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let idx = self.clauses.len();
                    self.watches[learnt[0].code()].push(idx);
                    self.watches[learnt[1].code()].push(idx);
                    let first = learnt[0];
                    self.clauses.push(learnt);
                    self.enqueue(first, Some(idx));
                }
                continue;
            }
            while next_var < self.num_vars() && self.assign[next_var].is_some() {
                next_var += 1;
            }
            if next_var == self.num_vars() {
                return SatResult::Sat(self.assign.iter().map(|v| v.unwrap_or(false)).collect());
            }
            self.trail_lim.push(self.trail.len());
            self.enqueue(Lit::neg(next_var), None);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(clauses: &[Vec<Lit>], model: &[bool]) -> bool {
        clauses.iter().all(|c| c.iter().any(|l| model[l.var()] == l.is_positive()))
    }

    #[test]
    fn trivial_cases() {
        let mut s = Solver::new(1);
        s.add_clause([Lit::pos(0)]);
        s.add_clause([Lit::neg(0)]);
        assert_eq!(s.solve(100), SatResult::Unsat);

        let mut s = Solver::new(2);
        s.add_clause([Lit::pos(0), Lit::pos(1)]);
        assert_eq!(s.solve(100), SatResult::Sat(vec![false, true]));

        let mut s = Solver::new(0);
        s.add_clause([]);
        assert_eq!(s.solve(10), SatResult::Unsat);
    }

    /// Pigeonhole: n + 1 pigeons into n holes is unsatisfiable.
    #[test]
    fn pigeonhole() {
        let n = 4;
        let var = |p: usize, h: usize| p * n + h;
        let mut s = Solver::new((n + 1) * n);
        for p in 0..=n {
            s.add_clause((0..n).map(|h| Lit::pos(var(p, h))));
        }
        for h in 0..n {
            for p in 0..=n {
                for q in p + 1..=n {
                    s.add_clause([Lit::neg(var(p, h)), Lit::neg(var(q, h))]);
                }
            }
        }
        assert_eq!(s.solve(1_000_000), SatResult::Unsat);
    }

    #[test]
    fn conflict_cap_gives_unknown() {
        let n = 7;
        let var = |p: usize, h: usize| p * n + h;
        let mut s = Solver::new((n + 1) * n);
        for p in 0..=n {
            s.add_clause((0..n).map(|h| Lit::pos(var(p, h))));
        }
        for h in 0..n {
            for p in 0..=n {
                for q in p + 1..=n {
                    s.add_clause([Lit::neg(var(p, h)), Lit::neg(var(q, h))]);
                }
            }
        }
        assert_eq!(s.solve(5), SatResult::Unknown);
    }

    #[test]
    fn brute_force_agreement() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let vars = rng.gen_range(1..8);
            let clauses: Vec<Vec<Lit>> = (0..rng.gen_range(1..20))
                .map(|_| (0..rng.gen_range(1..4)).map(|_| Lit::new(rng.gen_range(0..vars), rng.gen())).collect())
                .collect();
            let brute = (0..1u32 << vars).any(|m| {
                let model: Vec<bool> = (0..vars).map(|i| m >> i & 1 == 1).collect();
                check(&clauses, &model)
            });
            let mut s = Solver::new(vars);
            for c in &clauses {
                s.add_clause(c.iter().copied());
            }
            match s.solve(u64::MAX) {
                SatResult::Sat(model) => {
                    assert!(brute);
                    assert!(check(&clauses, &model));
                }
                SatResult::Unsat => assert!(!brute),
                SatResult::Unknown => unreachable!(),
            }
        }
    }
}
