use super::closure::closure_paths;
use super::fo_model::FoModel;
use super::kripke::{KripkeFrame, KripkeModel};
use crate::fo::SymbolTable;
use crate::logic::Logic;

/// Reads a Kripke model off a first-order model of a translation: worlds
/// are the domain, relations and valuation come from the table's
/// predicates, and the frame is then closed with the logic's automata.
pub fn extract_modal_model(model: &FoModel, table: &SymbolTable, logic: &Logic) -> KripkeModel {
    let n = model.size;
    let mut frame = KripkeFrame::new(n, logic.alphabet.forward_len());
    for (letter, pred) in table.relations() {
        let Some(a) = logic.alphabet.lookup(letter) else { continue };
        if let Some(rel) = model.binary.get(pred) {
            for (x, y) in rel.pairs() {
                frame.add_edge(a, x, y);
            }
        }
    }
    let mut out = KripkeModel::new(closure_paths(&frame, &logic.automata));
    for (p, pred) in table.props() {
        let ext = model.unary.get(pred).cloned().unwrap_or_else(|| vec![false; n]);
        out.valuation.insert(p.to_string(), ext);
    }
    for (name, constant) in table.nominals() {
        if let Some(&at) = model.constants.get(constant) {
            out.nominals.insert(name.to_string(), at);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::standard_logic;
    use crate::semantics::ground::{bounded_fo_sat, FoSat, DEFAULT_CONFLICT_CAP};
    use crate::syntax::parse_modal;
    use crate::translate::translate;

    #[test]
    fn empty_relations_satisfy_vacuous_box() {
        let k = standard_logic("K").unwrap();
        let phi = parse_modal("[a]false", &k.alphabet).unwrap();
        let (_, table) = translate(&k, &phi).unwrap();
        let fo = FoModel::new(2);
        let m = extract_modal_model(&fo, &table, &k);
        assert!(m.satisfies(&phi).unwrap());
    }

    #[test]
    fn s4_frame_is_reflexive_transitive() {
        let s4 = standard_logic("S4").unwrap();
        let phi = parse_modal("<a><a>p & [a]q", &s4.alphabet).unwrap();
        let (f, table) = translate(&s4, &phi).unwrap();
        let sol = bounded_fo_sat(&f, 3, DEFAULT_CONFLICT_CAP);
        let sol = sol.model().unwrap();
        let m = extract_modal_model(&sol.model, &table, &s4);
        assert!(m.frame.satisfies_system(&s4.system));
        assert!(m.eval(sol.witness[0].unwrap(), &phi).unwrap());
    }

    #[test]
    fn k5_example_is_unsatisfiable_on_small_domains() {
        let k5 = standard_logic("K5").unwrap();
        let a = k5.alphabet.letter("a").unwrap();
        let phi = parse_modal("<a>p & <a>[a]~p", &k5.alphabet).unwrap();
        // oracle: every euclidean frame and valuation with at most three worlds
        for n in 1..=3usize {
            for bits in 0u32..1 << (n * n) {
                let mut frame = KripkeFrame::new(n, 1);
                for i in (0..n * n).filter(|i| bits >> i & 1 == 1) {
                    frame.add_edge(a, i / n, i % n);
                }
                if !frame.satisfies_system(&k5.system) {
                    continue;
                }
                for val in 0u32..1 << n {
                    let mut m = KripkeModel::new(frame.clone());
                    m.set_prop("p", (0..n).filter(|w| val >> w & 1 == 1));
                    assert!(m.extension(&phi).unwrap().iter().all(|b| !b));
                }
            }
        }
        let (f, _) = translate(&k5, &phi).unwrap();
        assert_eq!(bounded_fo_sat(&f, 3, DEFAULT_CONFLICT_CAP), FoSat::NoModel { up_to: 3 });
    }

    #[test]
    fn k5_satisfiable_variant_round_trips() {
        let k5 = standard_logic("K5").unwrap();
        let phi = parse_modal("<a>p & <a>[a]q & <a>~p", &k5.alphabet).unwrap();
        let (f, table) = translate(&k5, &phi).unwrap();
        let sol = bounded_fo_sat(&f, 3, DEFAULT_CONFLICT_CAP);
        let sol = sol.model().expect("model");
        let m = extract_modal_model(&sol.model, &table, &k5);
        assert!(m.frame.satisfies_system(&k5.system));
        assert!(m.eval(sol.witness[0].unwrap(), &phi).unwrap());
    }
}
