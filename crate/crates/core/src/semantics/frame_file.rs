//! Line-based model files: `worlds: 3`, `rel a: 0 1, 1 2`, `val p: 0 2`,
//! `nom n: 1`. Comments start with `#`.

use super::kripke::{KripkeFrame, KripkeModel};
use crate::error::ParseError;
use crate::syntax::Alphabet;

fn number(text: &str, line: usize) -> Result<usize, ParseError> {
    text.trim()
        .parse()
        .map_err(|_| ParseError::new(line, 1, format!("expected a world number, found `{}`", text.trim())))
}

pub fn parse_model(text: &str, alphabet: &Alphabet) -> Result<KripkeModel, ParseError> {
    let mut model: Option<KripkeModel> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (head, body) = content
            .split_once(':')
            .ok_or_else(|| ParseError::new(line, 1, "expected `key: value`"))?;
        let mut words = head.split_whitespace();
        let key = words.next().unwrap_or("");
        let name = words.next();
        if key == "worlds" {
            let n = number(body, line)?;
            if n == 0 {
                return Err(ParseError::new(line, 1, "a model needs at least one world"));
            }
            model = Some(KripkeModel::new(KripkeFrame::new(n, alphabet.forward_len())));
            continue;
        }
        let m = model
            .as_mut()
            .ok_or_else(|| ParseError::new(line, 1, "`worlds:` must come first"))?;
        let n = m.worlds();
        let world = |t: &str| -> Result<usize, ParseError> {
            let w = number(t, line)?;
            if w >= n {
                return Err(ParseError::new(line, 1, format!("world {w} out of range")));
            }
            Ok(w)
        };
        let name = name.ok_or_else(|| ParseError::new(line, 1, format!("`{key}` needs a name")))?;
        match key {
            "rel" => {
                let a = alphabet.letter(name).map_err(|e| e.at(line, 1))?;
                for pair in body.split(',').filter(|s| !s.trim().is_empty()) {
                    let ends: Vec<&str> = pair.split_whitespace().collect();
                    if ends.len() != 2 {
                        return Err(ParseError::new(line, 1, format!("expected a pair, found `{}`", pair.trim())));
                    }
                    let (x, y) = (world(ends[0])?, world(ends[1])?);
                    m.frame.add_edge(a, x, y);
                }
            }
            "val" => {
                let ws = body.split_whitespace().map(world).collect::<Result<Vec<_>, _>>()?;
                m.set_prop(name, ws);
            }
            "nom" => {
                let w = world(body)?;
                m.nominals.insert(name.to_string(), w);
            }
            other => return Err(ParseError::new(line, 1, format!("unknown key `{other}`"))),
        }
    }
    model.ok_or_else(|| ParseError::msg("missing `worlds:` line"))
}

pub fn render_model(model: &KripkeModel, alphabet: &Alphabet) -> String {
    let mut out = format!("worlds: {}\n", model.worlds());
    for a in alphabet.forward_letters() {
        let pairs: Vec<String> = model.frame.forward(a.pair()).pairs().map(|(x, y)| format!("{x} {y}")).collect();
        let line = format!("rel {}: {}", alphabet.name(a), pairs.join(", "));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    for (p, ext) in &model.valuation {
        let ws: Vec<String> = (0..ext.len()).filter(|&w| ext[w]).map(|w| w.to_string()).collect();
        let line = format!("val {p}: {}", ws.join(" "));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    for (n, w) in &model.nominals {
        out.push_str(&format!("nom {n}: {w}\n"));
    }
    out
}
