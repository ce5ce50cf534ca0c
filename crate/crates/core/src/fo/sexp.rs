//! S-expression rendering: `(forall (v0 v1) (-> (r_a v0 v1) ...))`.

use super::formula::Fo;

pub fn to_sexp(f: &Fo) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write(f: &Fo, out: &mut String) {
    let list = |head: &str, items: &[&Fo], out: &mut String| {
        out.push('(');
        out.push_str(head);
        for item in items {
            out.push(' ');
            write(item, out);
        }
        out.push(')');
    };
    match f {
        Fo::True => out.push_str("true"),
        Fo::False => out.push_str("false"),
        Fo::Unary(p, v) => out.push_str(&format!("({p} {v})")),
        Fo::Binary(r, x, y) => out.push_str(&format!("({r} {x} {y})")),
        Fo::Eq(c, v) => out.push_str(&format!("(= {c} {v})")),
        Fo::Not(g) => list("not", &[g], out),
        Fo::And(items) => list("and", &items.iter().collect::<Vec<_>>(), out),
        Fo::Or(items) => list("or", &items.iter().collect::<Vec<_>>(), out),
        Fo::Implies(l, r) => list("->", &[l, r], out),
        Fo::Exists(v, g) => list(&format!("exists ({v})"), &[g], out),
        Fo::Forall(v, g) => list(&format!("forall ({v})"), &[g], out),
        Fo::Forall2(g) => list("forall (v0 v1)", &[g], out),
    }
}
