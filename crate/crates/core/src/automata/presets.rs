use super::ndfa::{AutomataMap, Ndfa};
use crate::error::Error;
use crate::logic::Logic;
use crate::syntax::{Alphabet, Letter, Rule, SemiThueSystem, Word};

/// Names accepted by [`standard_logic`], in display order.
pub const PRESET_NAMES: [&str; 11] = ["K", "KT", "KB", "KTB", "K4", "S4", "KB4", "K5", "S5", "K45", "NIL"];

/// The ten single-modality logics with their regular expressions as
/// published, in the regex syntax of this crate (`A` is the converse of
/// `a`). The K45 expression contains the empty word although its rules do
/// not derive it; the validator reports this.
pub const TABLE_REGEXES: [(&str, &str); 10] = [
    ("K", "a"),
    ("KT", "a | eps"),
    ("KB", "a | A"),
    ("KTB", "a | A | eps"),
    ("K4", "a a*"),
    ("S4", "a*"),
    ("KB4", "(a | A) (a | A)*"),
    ("K5", "(A (a | A)* a) | a"),
    ("S5", "(a | A)*"),
    ("K45", "(A* a)*"),
];

fn rules(sigma: &Alphabet, list: &[(&str, &str)]) -> SemiThueSystem {
    SemiThueSystem::new(list.iter().map(|(l, r)| {
        Rule::new(sigma.letter(l).expect("preset letter"), sigma.parse_word(r).expect("preset word"))
    }))
    .converse_closure()
}

/// Looks a preset up by name, ignoring case.
pub fn standard_logic(name: &str) -> Result<Logic, Error> {
    let upper = name.to_ascii_uppercase();
    if upper == "NIL" {
        return Ok(nil());
    }
    let sigma = Alphabet::new([("a", "A")]).expect("fixed alphabet");
    let a = Letter::forward(0);
    let big = a.converse();
    let (system, automaton) = match upper.as_str() {
        "K" => (vec![], Ndfa::from_names(&["s", "f"], "s", &["f"], &[("s", Some(a), "f")])),
        "KT" => (
            vec![("a", "")],
            Ndfa::from_names(&["s", "f"], "s", &["f"], &[("s", Some(a), "f"), ("s", None, "f")]),
        ),
        "KB" => (
            vec![("a", "A")],
            Ndfa::from_names(&["s", "f"], "s", &["f"], &[("s", Some(a), "f"), ("s", Some(big), "f")]),
        ),
        "KTB" => (
            vec![("a", ""), ("a", "A")],
            Ndfa::from_names(
                &["s", "f"],
                "s",
                &["f"],
                &[("s", Some(a), "f"), ("s", Some(big), "f"), ("s", None, "f")],
            ),
        ),
        "K4" => (
            vec![("a", "a a")],
            Ndfa::from_names(&["s", "f"], "s", &["f"], &[("s", Some(a), "f"), ("f", Some(a), "f")]),
        ),
        "S4" => (vec![("a", ""), ("a", "a a")], Ndfa::from_names(&["q"], "q", &["q"], &[("q", Some(a), "q")])),
        "KB4" => (
            vec![("a", "A"), ("a", "a a")],
            Ndfa::from_names(
                &["s", "f"],
                "s",
                &["f"],
                &[("s", Some(a), "f"), ("s", Some(big), "f"), ("f", Some(a), "f"), ("f", Some(big), "f")],
            ),
        ),
        "K5" => (
            vec![("a", "A a")],
            Ndfa::from_names(
                &["q0", "q1", "qf"],
                "q0",
                &["qf"],
                &[
                    ("q0", Some(big), "q1"),
                    ("q1", Some(a), "q1"),
                    ("q1", Some(big), "q1"),
                    ("q1", Some(a), "qf"),
                    ("q0", Some(a), "qf"),
                ],
            ),
        ),
        "S5" => (
            vec![("a", ""), ("a", "A a")],
            Ndfa::from_names(&["q"], "q", &["q"], &[("q", Some(a), "q"), ("q", Some(big), "q")]),
        ),
        "K45" => (
            vec![("a", "a a"), ("a", "A a")],
            Ndfa::from_names(
                &["s", "t"],
                "s",
                &["s"],
                &[("s", Some(a), "s"), ("s", Some(big), "t"), ("t", Some(big), "t"), ("t", Some(a), "s")],
            ),
        ),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    let system = rules(&sigma, &system);
    let automata = AutomataMap::from_forward(vec![automaton]);
    Ok(Logic::new(PRESET_NAMES.iter().find(|n| **n == upper).unwrap(), sigma, system, automata))
}

fn nil() -> Logic {
    let sigma = Alphabet::new([("fin", "FIN"), ("sim", "SIM")]).expect("fixed alphabet");
    let (fin, sim) = (Letter::forward(0), Letter::forward(1));
    let system = rules(
        &sigma,
        &[("fin", "fin fin"), ("fin", ""), ("sim", "SIM"), ("sim", ""), ("sim", "FIN sim fin")],
    );
    let a_fin = Ndfa::from_names(&["q"], "q", &["q"], &[("q", Some(fin), "q")]);
    let a_sim = Ndfa::from_names(
        &["s", "m"],
        "s",
        &["m"],
        &[
            ("s", Some(fin.converse()), "s"),
            ("s", Some(sim), "m"),
            ("s", Some(sim.converse()), "m"),
            ("s", None, "m"),
            ("m", Some(fin), "m"),
        ],
    );
    Logic::new("NIL", sigma, system, AutomataMap::from_forward(vec![a_fin, a_sim]))
}

/// Words accepted by the preset automaton of `letter` up to `max_len`.
pub fn accepted_words(logic: &Logic, letter: Letter, max_len: usize) -> Vec<Word> {
    let m = logic.automata.get(letter).expect("letter in alphabet");
    logic.alphabet.words_up_to(max_len).into_iter().filter(|w| m.accepts(w)).collect()
}
