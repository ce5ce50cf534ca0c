//! TPTP first-order form: writer, and a reader for the subset the writer
//! emits.

use super::formula::{Fo, Var};
use crate::error::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Axiom,
    Conjecture,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Conjecture => "conjecture",
        }
    }
}

/// How free variables are bound before serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Universal,
    Existential,
}

/// Binds the free variables of `phi`.
pub fn close(phi: &Fo, closure: Closure) -> Fo {
    let free: Vec<Var> = phi.free_vars().iter().collect();
    match (closure, free.as_slice()) {
        (_, []) => phi.clone(),
        (Closure::Universal, [v]) => Fo::forall(*v, phi.clone()),
        (Closure::Universal, _) => Fo::forall2(phi.clone()),
        (Closure::Existential, [v]) => Fo::exists(*v, phi.clone()),
        (Closure::Existential, _) => Fo::exists(Var::V0, Fo::exists(Var::V1, phi.clone())),
    }
}

/// One annotated statement named `translated`.
pub fn to_tptp(phi: &Fo, role: Role, closure: Closure) -> String {
    let mut out = format!("fof(translated, {}, ", role.as_str());
    write_formula(&close(phi, closure), &mut out);
    out.push_str(").");
    out
}

fn var(v: Var) -> &'static str {
    match v {
        Var::V0 => "X0",
        Var::V1 => "X1",
    }
}

pub fn write_formula(f: &Fo, out: &mut String) {
    let join = |items: &[Fo], op: &str, out: &mut String| {
        out.push('(');
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                out.push_str(op);
            }
            write_formula(item, out);
        }
        out.push(')');
    };
    match f {
        Fo::True => out.push_str("$true"),
        Fo::False => out.push_str("$false"),
        Fo::Unary(p, v) => out.push_str(&format!("{p}({})", var(*v))),
        Fo::Binary(r, x, y) => out.push_str(&format!("{r}({},{})", var(*x), var(*y))),
        Fo::Eq(c, v) => out.push_str(&format!("{c} = {}", var(*v))),
        Fo::Not(g) => {
            out.push('~');
            write_formula(g, out);
        }
        Fo::And(items) if items.is_empty() => out.push_str("$true"),
        Fo::Or(items) if items.is_empty() => out.push_str("$false"),
        Fo::And(items) | Fo::Or(items) if items.len() == 1 => write_formula(&items[0], out),
        Fo::And(items) => join(items, " & ", out),
        Fo::Or(items) => join(items, " | ", out),
        Fo::Implies(l, r) => {
            out.push('(');
            write_formula(l, out);
            out.push_str(" => ");
            write_formula(r, out);
            out.push(')');
        }
        Fo::Exists(v, g) => {
            out.push_str(&format!("?[{}]: ", var(*v)));
            write_formula(g, out);
        }
        Fo::Forall(v, g) => {
            out.push_str(&format!("![{}]: ", var(*v)));
            write_formula(g, out);
        }
        Fo::Forall2(g) => {
            out.push_str("![X0,X1]: ");
            write_formula(g, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum T {
    Word(String),
    Dollar(String),
    Sym(&'static str),
    Eof,
}

fn lex(text: &str) -> Result<Vec<(T, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        if line.trim_start().starts_with('%') {
            continue;
        }
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '_' || c == '$' {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let w: String = chars[start..i].iter().collect();
                let tok = if c == '$' { T::Dollar(w[1..].to_string()) } else { T::Word(w) };
                out.push((tok, line_no, col));
                continue;
            }
            let (sym, len) = match (c, chars.get(i + 1)) {
                ('=', Some('>')) => ("=>", 2),
                ('=', _) => ("=", 1),
                ('~', _) => ("~", 1),
                ('&', _) => ("&", 1),
                ('|', _) => ("|", 1),
                ('!', _) => ("!", 1),
                ('?', _) => ("?", 1),
                ('[', _) => ("[", 1),
                (']', _) => ("]", 1),
                ('(', _) => ("(", 1),
                (')', _) => (")", 1),
                (',', _) => (",", 1),
                (':', _) => (":", 1),
                ('.', _) => (".", 1),
                _ => return Err(ParseError::new(line_no, col, format!("unexpected character `{c}`"))),
            };
            out.push((T::Sym(sym), line_no, col));
            i += len;
        }
    }
    let last = text.lines().count().max(1);
    out.push((T::Eof, last, 1));
    Ok(out)
}

struct Reader {
    toks: Vec<(T, usize, usize)>,
    pos: usize,
}

impl Reader {
    fn peek(&self) -> &T {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> T {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (_, l, c) = &self.toks[self.pos];
        ParseError::new(*l, *c, msg)
    }

    fn sym(&mut self, s: &'static str) -> Result<(), ParseError> {
        if *self.peek() == T::Sym(s) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`, found {:?}", self.peek())))
        }
    }

    fn eat(&mut self, s: &'static str) -> bool {
        if *self.peek() == T::Sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<String, ParseError> {
        match self.bump() {
            T::Word(w) => Ok(w),
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected a name, found {other:?}")))
            }
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        match self.word()?.as_str() {
            "X0" => Ok(Var::V0),
            "X1" => Ok(Var::V1),
            other => Err(self.err(format!("unknown variable `{other}`"))),
        }
    }

    fn unit(&mut self) -> Result<Fo, ParseError> {
        match self.peek().clone() {
            T::Sym("~") => {
                self.bump();
                Ok(Fo::not(self.unit()?))
            }
            T::Sym("!") => {
                self.bump();
                self.sym("[")?;
                let first = self.var()?;
                let two = self.eat(",");
                if two {
                    let second = self.var()?;
                    if (first, second) != (Var::V0, Var::V1) {
                        return Err(self.err("only `![X0,X1]` is supported"));
                    }
                }
                self.sym("]")?;
                self.sym(":")?;
                let body = self.unit()?;
                Ok(if two { Fo::forall2(body) } else { Fo::forall(first, body) })
            }
            T::Sym("?") => {
                self.bump();
                self.sym("[")?;
                let v = self.var()?;
                self.sym("]")?;
                self.sym(":")?;
                Ok(Fo::exists(v, self.unit()?))
            }
            T::Sym("(") => {
                self.bump();
                let first = self.unit()?;
                let f = if self.eat("=>") {
                    Fo::implies(first, self.unit()?)
                } else if matches!(self.peek(), T::Sym("&") | T::Sym("|")) {
                    let op = self.bump();
                    let mut items = vec![first, self.unit()?];
                    while *self.peek() == op {
                        self.bump();
                        items.push(self.unit()?);
                    }
                    if op == T::Sym("&") {
                        Fo::And(items)
                    } else {
                        Fo::Or(items)
                    }
                } else {
                    first
                };
                self.sym(")")?;
                Ok(f)
            }
            T::Dollar(d) => {
                self.bump();
                match d.as_str() {
                    "true" => Ok(Fo::True),
                    "false" => Ok(Fo::False),
                    _ => Err(self.err(format!("unknown constant `${d}`"))),
                }
            }
            T::Word(_) => {
                let name = self.word()?;
                if self.eat("=") {
                    return Ok(Fo::Eq(name, self.var()?));
                }
                self.sym("(")?;
                let x = self.var()?;
                let f = if self.eat(",") { Fo::Binary(name, x, self.var()?) } else { Fo::Unary(name, x) };
                self.sym(")")?;
                Ok(f)
            }
            other => Err(self.err(format!("expected a formula, found {other:?}"))),
        }
    }
}

/// Reads one `fof(name, role, formula).` statement; `%` comment lines are
/// skipped.
pub fn parse_tptp(text: &str) -> Result<(Role, Fo), ParseError> {
    let mut r = Reader { toks: lex(text)?, pos: 0 };
    if r.word()? != "fof" {
        return Err(r.err("expected `fof`"));
    }
    r.sym("(")?;
    r.word()?;
    r.sym(",")?;
    let role = match r.word()?.as_str() {
        "axiom" => Role::Axiom,
        "conjecture" => Role::Conjecture,
        other => return Err(r.err(format!("unsupported role `{other}`"))),
    };
    r.sym(",")?;
    let f = r.unit()?;
    r.sym(")")?;
    r.sym(".")?;
    if *r.peek() != T::Eof {
        return Err(r.err("trailing input"));
    }
    Ok((role, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Var::{V0, V1};

    #[test]
    fn atom_with_universal_closure() {
        let f = Fo::unary("p_p", V0);
        assert_eq!(to_tptp(&f, Role::Axiom, Closure::Universal), "fof(translated, axiom, ![X0]: p_p(X0)).");
    }

    #[test]
    fn falsum() {
        assert_eq!(to_tptp(&Fo::False, Role::Conjecture, Closure::Universal), "fof(translated, conjecture, $false).");
    }

    #[test]
    fn reads_back() {
        let f = Fo::And(vec![
            Fo::exists(V1, Fo::And(vec![Fo::binary("r_a", V0, V1), Fo::not(Fo::unary("p_p", V1))])),
            Fo::forall2(Fo::implies(
                Fo::binary("r_a", V1, V0),
                Fo::implies(Fo::unary("q", V0), Fo::unary("r", V1)),
            )),
            Fo::Or(vec![Fo::Eq("n_n".into(), V0), Fo::True, Fo::not(Fo::Eq("n_m".into(), V0))]),
        ]);
        for closure in [Closure::Universal, Closure::Existential] {
            let text = to_tptp(&f, Role::Axiom, closure);
            let (role, back) = parse_tptp(&format!("% header\n{text}\n")).unwrap();
            assert_eq!(role, Role::Axiom);
            assert_eq!(back, close(&f, closure));
        }
    }

    #[test]
    fn reader_reports_position() {
        let err = parse_tptp("fof(x, axiom, p(X2)).").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(parse_tptp("fof(x, lemma, $true).").is_err());
    }
}
