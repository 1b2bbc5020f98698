//! Structural computation of the differential operator on syntax.
//!
//! `differentiate` pushes `D` inward through the whole grammar: identities
//! and projections by D3, pairings by D4, compositions by the chain rule D5,
//! sums and zeros by D1, curried morphisms by the curry law with the
//! costrength expanded into its pairing form.  Generators with a registered
//! derivative are replaced by it; generators without one and evaluation
//! morphisms remain as symbolic `D` nodes, counted in the result.

use thiserror::Error;

use crate::mor::{self, Mor, MorExpr};
use crate::obj::ObjExpr;
use crate::tangent;

#[derive(Debug, Clone)]
pub struct DiffResult {
    pub term: Mor,
    /// Number of `D` applications left opaque in `term`.
    pub residual_d_nodes: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("morphism is not recognized as linear: {0}")]
pub struct NotLinear(pub String);

/// Compute the derivative term of `f : X -> Y`, of type `X x X -> Y`.
pub fn differentiate(f: &Mor) -> DiffResult {
    let term = d(f);
    let residual_d_nodes = term.count_d_nodes();
    DiffResult {
        term,
        residual_d_nodes,
    }
}

fn d(f: &Mor) -> Mor {
    match &**f {
        MorExpr::Id(x) => mor::proj1(x.clone(), x.clone()),
        MorExpr::Proj1(l, r) => {
            let lr = ObjExpr::prod(l.clone(), r.clone());
            mor::compose(mor::proj1(l.clone(), r.clone()), mor::proj1(lr.clone(), lr))
        }
        MorExpr::Proj2(l, r) => {
            let lr = ObjExpr::prod(l.clone(), r.clone());
            mor::compose(mor::proj2(l.clone(), r.clone()), mor::proj1(lr.clone(), lr))
        }
        MorExpr::Pair(a, b) => mor::pair(d(a), d(b)),
        MorExpr::Compose(a, b) => {
            let bd = b.dom();
            mor::compose(
                d(a),
                mor::pair(d(b), mor::compose(b.clone(), mor::proj2(bd.clone(), bd))),
            )
        }
        MorExpr::Zero(dom, cod) => {
            mor::zero(ObjExpr::prod(dom.clone(), dom.clone()), cod.clone())
        }
        MorExpr::Sum(a, b) => mor::sum(d(a), d(b)),
        MorExpr::Bang(x) => mor::bang(ObjExpr::prod(x.clone(), x.clone())),
        MorExpr::Ev(..) => mor::diff(f.clone()),
        MorExpr::Curry(g, z, x) => {
            // D(curry(g)) = curry(D(g) o t')
            let tz = ObjExpr::prod(z.clone(), z.clone());
            mor::curry_at(
                mor::compose(d(g), tangent::costrength(z, x)),
                tz,
                x.clone(),
            )
        }
        MorExpr::Gen(sig) => match sig.derivative() {
            Some(dv) => dv.clone(),
            None if sig.linear => {
                let dm = sig.dom.clone();
                mor::compose(f.clone(), mor::proj1(dm.clone(), dm))
            }
            None => mor::diff(f.clone()),
        },
        MorExpr::D(g) => {
            let inner = d(g);
            // no progress means g is opaque; keep the nested D symbolic
            if let MorExpr::D(h) = &*inner {
                if h == g {
                    return mor::diff(inner);
                }
            }
            d(&inner)
        }
    }
}

/// Second derivative: `differentiate` applied twice.
pub fn second_derivative(f: &Mor) -> Mor {
    differentiate(&differentiate(f).term).term
}

/// Conservative syntactic linearity check.  `true` means the derivative of
/// `f` is `f o pi1`; `false` means unknown, never provably nonlinear.
pub fn is_linear(f: &Mor) -> bool {
    match &**f {
        MorExpr::Id(..)
        | MorExpr::Proj1(..)
        | MorExpr::Proj2(..)
        | MorExpr::Zero(..)
        | MorExpr::Bang(..) => true,
        MorExpr::Pair(a, b) | MorExpr::Sum(a, b) | MorExpr::Compose(a, b) => {
            is_linear(a) && is_linear(b)
        }
        MorExpr::Gen(sig) => sig.linear,
        MorExpr::Ev(..) | MorExpr::Curry(..) | MorExpr::D(..) => false,
    }
}

/// For a linear `f`, the derivative without any computation: `f o pi1`.
pub fn linear_shortcut(f: &Mor) -> Result<Mor, NotLinear> {
    if !is_linear(f) {
        return Err(NotLinear(crate::pretty::print_mor(f)));
    }
    let dm = f.dom();
    Ok(mor::compose(f.clone(), mor::proj1(dm.clone(), dm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{GenSig, Registry};
    use crate::mor::*;

    fn x() -> ObjExpr {
        ObjExpr::base("X", 1)
    }

    #[test]
    fn d3_identity() {
        let r = differentiate(&id(x()));
        assert_eq!(r.term, proj1(x(), x()));
        assert_eq!(r.residual_d_nodes, 0);
    }

    #[test]
    fn d3_projections() {
        let (a, b) = (ObjExpr::base("A", 1), ObjExpr::base("B", 1));
        let ab = ObjExpr::prod(a.clone(), b.clone());
        let r = differentiate(&proj2(a.clone(), b.clone()));
        assert_eq!(
            r.term,
            compose(proj2(a, b), proj1(ab.clone(), ab))
        );
    }

    #[test]
    fn d4_pairing_of_projections() {
        let (a, b) = (ObjExpr::base("A", 1), ObjExpr::base("B", 1));
        let ab = ObjExpr::prod(a.clone(), b.clone());
        let f = pair(proj1(a.clone(), b.clone()), proj2(a.clone(), b.clone()));
        let r = differentiate(&f);
        let p1 = proj1(ab.clone(), ab.clone());
        assert_eq!(
            r.term,
            pair(
                compose(proj1(a.clone(), b.clone()), p1.clone()),
                compose(proj2(a, b), p1)
            )
        );
    }

    #[test]
    fn d5_chain_rule_shape() {
        let mut reg = Registry::new();
        let a = x();
        let f = gen(reg.insert(GenSig::new("f", a.clone(), a.clone(), None, false)));
        let g = gen(reg.insert(GenSig::new("g", a.clone(), a.clone(), None, false)));
        let r = differentiate(&compose(f.clone(), g.clone()));
        let aa = ObjExpr::prod(a.clone(), a.clone());
        assert_eq!(
            r.term,
            compose(
                diff(f),
                pair(diff(g.clone()), compose(g, proj2(aa.clone(), aa).into()))
            )
        );
        assert_eq!(r.residual_d_nodes, 2);
    }

    #[test]
    fn curry_case_uses_costrength() {
        let mut reg = Registry::new();
        let a = x();
        let aa = ObjExpr::prod(a.clone(), a.clone());
        let f = gen(reg.insert(GenSig::new("f2", aa.clone(), a.clone(), None, false)));
        let c = curry_at(f.clone(), a.clone(), a.clone());
        let r = differentiate(&c);
        let expected = curry_at(
            compose(diff(f), crate::tangent::costrength(&a, &a)),
            aa,
            a,
        );
        assert_eq!(r.term, expected);
    }

    #[test]
    fn registered_derivative_is_substituted() {
        let mut reg = Registry::new();
        let a = x();
        let aa = ObjExpr::prod(a.clone(), a.clone());
        // derivative of `lin` is lin o pi1, registered explicitly
        let sig = reg.insert(GenSig::new("lin", a.clone(), a.clone(), None, true));
        sig.set_derivative(Some(compose(gen(sig.clone()), proj1(a.clone(), a.clone()))));
        let r = differentiate(&gen(sig.clone()));
        assert_eq!(r.term, compose(gen(sig), proj1(a.clone(), a.clone())));
        assert_eq!(r.residual_d_nodes, 0);
        let _ = aa;
    }

    #[test]
    fn opaque_generators_stay_symbolic() {
        let mut reg = Registry::new();
        let a = x();
        let f = gen(reg.insert(GenSig::new("op", a.clone(), a, None, false)));
        let r = differentiate(&f);
        assert_eq!(r.term, diff(f.clone()));
        assert_eq!(r.residual_d_nodes, 1);
        // opacity is preserved through the second derivative
        let dd = second_derivative(&f);
        assert_eq!(dd.count_d_nodes(), 2);
        assert_eq!(dd, diff(diff(f)));
    }

    #[test]
    fn linear_shortcut_requires_linearity() {
        let (a, b) = (ObjExpr::base("A", 1), ObjExpr::base("B", 1));
        let c = crate::mor::swap(&a, &b);
        assert!(is_linear(&c));
        let s = linear_shortcut(&c).unwrap();
        let ab = ObjExpr::prod(a.clone(), b.clone());
        assert_eq!(s, compose(c, proj1(ab.clone(), ab)));

        let mut reg = Registry::new();
        let sin = gen(reg.insert(GenSig::new("sin", a.clone(), a, None, false)));
        assert!(!is_linear(&sin));
        assert!(linear_shortcut(&sin).is_err());
    }

    #[test]
    fn typing_of_derivative() {
        let (a, b) = (ObjExpr::base("A", 1), ObjExpr::base("B", 1));
        let mut reg = Registry::new();
        let f = gen(reg.insert(GenSig::new("f", a.clone(), b.clone(), None, false)));
        let term = differentiate(&compose(f.clone(), id(a.clone()))).term;
        let (d, c) = crate::typecheck::typecheck(&term, &reg).unwrap();
        assert_eq!(d, ObjExpr::prod(a.clone(), a));
        assert_eq!(c, b);
    }
}
