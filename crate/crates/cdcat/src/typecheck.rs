//! Type checking for morphism terms.
//!
//! Every node carries its own annotations, so checking is a single bottom-up
//! pass verifying that the annotations fit together; no inference happens
//! here.

use thiserror::Error;

use crate::gen::Registry;
use crate::mor::{Mor, MorExpr};
use crate::obj::ObjExpr;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("type mismatch at `{at}`: expected {expected}, found {actual}")]
    TypeMismatch {
        at: String,
        expected: String,
        actual: String,
    },
}

fn mismatch(at: &MorExpr, expected: impl ToString, actual: impl ToString) -> TypeError {
    TypeError::TypeMismatch {
        at: crate::pretty::print_mor(at),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

/// Check `f` against the registry and return its (dom, cod).
///
/// For `D(f)` with `f : X -> Y` the result is `X x X -> Y`; for
/// `Curry(f)` with `f : Z x X -> Y` it is `Z -> (X => Y)`.
pub fn typecheck(f: &Mor, reg: &Registry) -> Result<(ObjExpr, ObjExpr), TypeError> {
    check(f, Some(reg))
}

/// Check without a registry: generator nodes are trusted as annotated.
/// Terms built through the parser or the registry always satisfy this.
pub fn infer(f: &Mor) -> Result<(ObjExpr, ObjExpr), TypeError> {
    check(f, None)
}

fn check(f: &Mor, reg: Option<&Registry>) -> Result<(ObjExpr, ObjExpr), TypeError> {
    match &**f {
        MorExpr::Id(x) => Ok((x.clone(), x.clone())),
        MorExpr::Proj1(l, r) => Ok((ObjExpr::prod(l.clone(), r.clone()), l.clone())),
        MorExpr::Proj2(l, r) => Ok((ObjExpr::prod(l.clone(), r.clone()), r.clone())),
        MorExpr::Pair(a, b) => {
            let (da, ca) = check(a, reg)?;
            let (db, cb) = check(b, reg)?;
            if da != db {
                return Err(mismatch(f, &da, &db));
            }
            Ok((da, ObjExpr::prod(ca, cb)))
        }
        MorExpr::Compose(a, b) => {
            let (da, ca) = check(a, reg)?;
            let (db, cb) = check(b, reg)?;
            if cb != da {
                return Err(mismatch(f, &da, &cb));
            }
            Ok((db, ca))
        }
        MorExpr::Zero(d, c) => Ok((d.clone(), c.clone())),
        MorExpr::Sum(a, b) => {
            let (da, ca) = check(a, reg)?;
            let (db, cb) = check(b, reg)?;
            if da != db || ca != cb {
                return Err(mismatch(f, format!("{da} -> {ca}"), format!("{db} -> {cb}")));
            }
            Ok((da, ca))
        }
        MorExpr::Bang(x) => Ok((x.clone(), ObjExpr::Unit)),
        MorExpr::Ev(a, r) => Ok((
            ObjExpr::prod(ObjExpr::exp(a.clone(), r.clone()), a.clone()),
            r.clone(),
        )),
        MorExpr::Curry(g, z, x) => {
            let (dg, cg) = check(g, reg)?;
            let expect = ObjExpr::prod(z.clone(), x.clone());
            if dg != expect {
                return Err(mismatch(f, &expect, &dg));
            }
            Ok((z.clone(), ObjExpr::exp(x.clone(), cg)))
        }
        MorExpr::Gen(sig) => match reg {
            None => Ok((sig.dom.clone(), sig.cod.clone())),
            Some(reg) => match reg.get(&sig.name) {
                None => Err(TypeError::UnknownGenerator(sig.name.clone())),
                Some(known) if **known == **sig => Ok((sig.dom.clone(), sig.cod.clone())),
                Some(known) => Err(mismatch(
                    f,
                    format!("{} -> {}", known.dom, known.cod),
                    format!("{} -> {}", sig.dom, sig.cod),
                )),
            },
        },
        MorExpr::D(g) => {
            let (dg, cg) = check(g, reg)?;
            Ok((ObjExpr::prod(dg.clone(), dg), cg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::GenSig;
    use crate::mor::*;

    fn abx() -> (ObjExpr, ObjExpr) {
        (ObjExpr::base("A", 1), ObjExpr::base("B", 1))
    }

    #[test]
    fn identity_pairing_types() {
        let (a, b) = abx();
        let reg = Registry::new();
        let ab = ObjExpr::prod(a.clone(), b.clone());
        let f = pair(proj1(a.clone(), b.clone()), proj2(a, b));
        let (d, c) = typecheck(&f, &reg).unwrap();
        assert_eq!(d, ab);
        assert_eq!(c, ab);
    }

    #[test]
    fn ev_types() {
        let (a, b) = abx();
        let reg = Registry::new();
        let e = ev(a.clone(), b.clone());
        let (d, c) = typecheck(&e, &reg).unwrap();
        assert_eq!(d, ObjExpr::prod(ObjExpr::exp(a, b.clone()), ObjExpr::base("A", 1)));
        assert_eq!(c, b);
    }

    #[test]
    fn composing_projections_of_wrong_shape_fails() {
        let (a, b) = abx();
        let reg = Registry::new();
        // pi1 : AxB -> A cannot follow pi1 : AxB -> A (A != AxB)
        let p = proj1(a.clone(), b.clone());
        let f = compose(p.clone(), p);
        assert!(matches!(
            typecheck(&f, &reg),
            Err(TypeError::TypeMismatch { .. })
        ));
    }

    #[test]
    fn unknown_generator_reported() {
        let (a, b) = abx();
        let sig = std::sync::Arc::new(GenSig::new("mystery", a, b, None, false));
        let reg = Registry::new();
        assert_eq!(
            typecheck(&gen(sig), &reg),
            Err(TypeError::UnknownGenerator("mystery".into()))
        );
    }

    #[test]
    fn d_doubles_the_domain() {
        let (a, b) = abx();
        let mut reg = Registry::new();
        let sig = reg.insert(GenSig::new("f", a.clone(), b.clone(), None, false));
        let f = diff(gen(sig));
        let (d, c) = typecheck(&f, &reg).unwrap();
        assert_eq!(d, ObjExpr::prod(a.clone(), a));
        assert_eq!(c, b);
    }

    #[test]
    fn constructors_preserve_typability() {
        let (a, b) = abx();
        let reg = Registry::new();
        let f = times(proj1(a.clone(), b.clone()), proj2(a.clone(), b.clone()));
        assert!(typecheck(&f, &reg).is_ok());
        let s = dist(&a, &b, &a, &b);
        assert!(typecheck(&s, &reg).is_ok());
        let al = assoc(&a, &b, &a);
        assert!(typecheck(&al, &reg).is_ok());
        let l = lunit(&a);
        assert!(typecheck(&l, &reg).is_ok());
        let dg = diagonal(&a);
        assert!(typecheck(&dg, &reg).is_ok());
    }
}
