//! Printing of morphism terms in the surface expression grammar.
//!
//! Two modes: `print_mor` keeps annotations minimal for humans, while
//! `print_mor_annotated` annotates every leaf so the output re-parses to the
//! same term (used when serializing proof scripts).

use crate::mor::MorExpr;

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Plain,
    Annotated,
}

pub fn print_mor(m: &MorExpr) -> String {
    let mut s = String::new();
    go(m, Mode::Plain, Prec::Top, &mut s);
    s
}

pub fn print_mor_annotated(m: &MorExpr) -> String {
    let mut s = String::new();
    go(m, Mode::Annotated, Prec::Top, &mut s);
    s
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Top,     // sum level
    Compose, // `o` level
    Atom,
}

fn go(m: &MorExpr, mode: Mode, prec: Prec, out: &mut String) {
    match m {
        MorExpr::Sum(a, b) => {
            let wrap = prec > Prec::Top;
            if wrap {
                out.push('(');
            }
            go(a, mode, Prec::Compose, out);
            out.push_str(" + ");
            go(b, mode, Prec::Top, out);
            if wrap {
                out.push(')');
            }
        }
        MorExpr::Compose(a, b) => {
            let wrap = prec > Prec::Compose;
            if wrap {
                out.push('(');
            }
            // `o` is right-associative; the left operand must be an atom
            go(a, mode, Prec::Atom, out);
            out.push_str(" o ");
            go(b, mode, Prec::Compose, out);
            if wrap {
                out.push(')');
            }
        }
        MorExpr::Pair(a, b) => {
            out.push('<');
            go(a, mode, Prec::Top, out);
            out.push_str(", ");
            go(b, mode, Prec::Top, out);
            out.push('>');
        }
        MorExpr::Curry(f, _, _) => {
            out.push_str("curry(");
            go(f, mode, Prec::Top, out);
            out.push(')');
        }
        MorExpr::D(f) => {
            out.push_str("D(");
            go(f, mode, Prec::Top, out);
            out.push(')');
        }
        MorExpr::Id(x) => match mode {
            Mode::Plain => out.push_str("id"),
            Mode::Annotated => out.push_str(&format!("id:({x})")),
        },
        MorExpr::Proj1(l, r) => match mode {
            Mode::Plain => out.push_str("pi1"),
            Mode::Annotated => out.push_str(&format!("pi1:(({l})x({r}))")),
        },
        MorExpr::Proj2(l, r) => match mode {
            Mode::Plain => out.push_str("pi2"),
            Mode::Annotated => out.push_str(&format!("pi2:(({l})x({r}))")),
        },
        MorExpr::Zero(d, c) => match mode {
            Mode::Plain => out.push('0'),
            Mode::Annotated => out.push_str(&format!("0:(({d})->({c}))")),
        },
        MorExpr::Bang(x) => match mode {
            Mode::Plain => out.push('!'),
            Mode::Annotated => out.push_str(&format!("!:({x})")),
        },
        MorExpr::Ev(a, r) => match mode {
            Mode::Plain => out.push_str("ev"),
            Mode::Annotated => out.push_str(&format!("ev:((({a})=>({r}))x({a}))")),
        },
        MorExpr::Gen(sig) => out.push_str(&sig.name),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mor::*;
    use crate::obj::ObjExpr;

    #[test]
    fn plain_printing() {
        let r = ObjExpr::base("R", 1);
        let t = compose(
            proj1(r.clone(), r.clone()),
            pair(id(ObjExpr::prod(r.clone(), r.clone())), zero(ObjExpr::prod(r.clone(), r.clone()), ObjExpr::prod(r.clone(), r.clone()))),
        );
        assert_eq!(print_mor(&t), "pi1 o <id, 0>");
    }

    #[test]
    fn sum_binds_loosest() {
        let r = ObjExpr::base("R", 1);
        let f = sum(compose(id(r.clone()), id(r.clone())), id(r.clone()));
        assert_eq!(print_mor(&f), "id o id + id");
    }
}
