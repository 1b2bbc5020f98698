//! The morphism term language.
//!
//! Twelve node kinds form the whole grammar; everything else in the theory
//! (symmetry, associativity, products of morphisms, the tangent functor, the
//! monad structure, strengths, ...) is a macro expanding into these nodes.
//! Nodes carry explicit object annotations so that dom/cod of any subterm is
//! computable without context.  Terms are immutable and shared via `Arc`.

use std::sync::Arc;

use crate::gen::GenSig;
use crate::obj::ObjExpr;

pub type Mor = Arc<MorExpr>;

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum MorExpr {
    /// Identity on an object.
    Id(ObjExpr),
    /// First projection out of `l x r`.
    Proj1(ObjExpr, ObjExpr),
    /// Second projection out of `l x r`.
    Proj2(ObjExpr, ObjExpr),
    /// Pairing `<f, g>` with shared domain.
    Pair(Mor, Mor),
    /// Composition `f o g` (apply `g` first).
    Compose(Mor, Mor),
    /// Zero morphism of the hom-monoid `dom -> cod`.
    Zero(ObjExpr, ObjExpr),
    /// Sum in the hom-monoid; operands share dom and cod.
    Sum(Mor, Mor),
    /// The unique morphism into the terminal object.
    Bang(ObjExpr),
    /// Evaluation `(arg => result) x arg -> result`.
    Ev(ObjExpr, ObjExpr),
    /// Currying of `f : dom x arg -> Y`, giving `dom -> (arg => Y)`.
    Curry(Mor, ObjExpr, ObjExpr),
    /// Opaque generator symbol.
    Gen(Arc<GenSig>),
    /// The differential operator applied to a morphism.
    D(Mor),
}

impl MorExpr {
    /// Domain of a syntactically well-formed term.
    pub fn dom(&self) -> ObjExpr {
        match self {
            MorExpr::Id(x) => x.clone(),
            MorExpr::Proj1(l, r) | MorExpr::Proj2(l, r) => ObjExpr::prod(l.clone(), r.clone()),
            MorExpr::Pair(f, _) => f.dom(),
            MorExpr::Compose(_, g) => g.dom(),
            MorExpr::Zero(d, _) => d.clone(),
            MorExpr::Sum(f, _) => f.dom(),
            MorExpr::Bang(x) => x.clone(),
            MorExpr::Ev(a, r) => {
                ObjExpr::prod(ObjExpr::exp(a.clone(), r.clone()), a.clone())
            }
            MorExpr::Curry(_, d, _) => d.clone(),
            MorExpr::Gen(s) => s.dom.clone(),
            MorExpr::D(f) => {
                let d = f.dom();
                ObjExpr::prod(d.clone(), d)
            }
        }
    }

    /// Codomain of a syntactically well-formed term.
    pub fn cod(&self) -> ObjExpr {
        match self {
            MorExpr::Id(x) => x.clone(),
            MorExpr::Proj1(l, _) => l.clone(),
            MorExpr::Proj2(_, r) => r.clone(),
            MorExpr::Pair(f, g) => ObjExpr::prod(f.cod(), g.cod()),
            MorExpr::Compose(f, _) => f.cod(),
            MorExpr::Zero(_, c) => c.clone(),
            MorExpr::Sum(f, _) => f.cod(),
            MorExpr::Bang(_) => ObjExpr::Unit,
            MorExpr::Ev(_, r) => r.clone(),
            MorExpr::Curry(f, _, a) => ObjExpr::exp(a.clone(), f.cod()),
            MorExpr::Gen(s) => s.cod.clone(),
            MorExpr::D(f) => f.cod(),
        }
    }

    /// Number of `D` nodes in the term (the residual count of a result of
    /// `differentiate`).
    pub fn count_d_nodes(&self) -> usize {
        match self {
            MorExpr::Pair(f, g) | MorExpr::Compose(f, g) | MorExpr::Sum(f, g) => {
                f.count_d_nodes() + g.count_d_nodes()
            }
            MorExpr::Curry(f, _, _) => f.count_d_nodes(),
            MorExpr::D(f) => 1 + f.count_d_nodes(),
            _ => 0,
        }
    }
}

pub fn id(x: ObjExpr) -> Mor {
    Arc::new(MorExpr::Id(x))
}

pub fn proj1(l: ObjExpr, r: ObjExpr) -> Mor {
    Arc::new(MorExpr::Proj1(l, r))
}

pub fn proj2(l: ObjExpr, r: ObjExpr) -> Mor {
    Arc::new(MorExpr::Proj2(l, r))
}

pub fn pair(f: Mor, g: Mor) -> Mor {
    Arc::new(MorExpr::Pair(f, g))
}

pub fn compose(f: Mor, g: Mor) -> Mor {
    Arc::new(MorExpr::Compose(f, g))
}

/// `0 : dom -> cod`.  A zero into the terminal object is the same morphism
/// as `!`, so it is identified with `Bang` at construction.
pub fn zero(dom: ObjExpr, cod: ObjExpr) -> Mor {
    if cod == ObjExpr::Unit {
        bang(dom)
    } else {
        Arc::new(MorExpr::Zero(dom, cod))
    }
}

pub fn sum(f: Mor, g: Mor) -> Mor {
    Arc::new(MorExpr::Sum(f, g))
}

pub fn bang(x: ObjExpr) -> Mor {
    Arc::new(MorExpr::Bang(x))
}

pub fn ev(arg: ObjExpr, result: ObjExpr) -> Mor {
    Arc::new(MorExpr::Ev(arg, result))
}

/// Curry `f : dom x arg -> Y` with the product split given explicitly.
pub fn curry_at(f: Mor, dom: ObjExpr, arg: ObjExpr) -> Mor {
    Arc::new(MorExpr::Curry(f, dom, arg))
}

/// Curry `f`, reading the product split off the domain of `f`.
/// Panics if the domain of `f` is not a product; use `curry_at` when the
/// split is not syntactically visible.
pub fn curry(f: Mor) -> Mor {
    let (z, x) = f
        .dom()
        .as_prod()
        .map(|(a, b)| (a.clone(), b.clone()))
        .expect("curry: domain is not a product");
    curry_at(f, z, x)
}

pub fn gen(sig: Arc<GenSig>) -> Mor {
    Arc::new(MorExpr::Gen(sig))
}

pub fn diff(f: Mor) -> Mor {
    Arc::new(MorExpr::D(f))
}

/// Structural equality after no theory reasoning at all.  Derived
/// constructors are already macro-expanded, so this is plain `==`.
pub fn structural_eq(f: &Mor, g: &Mor) -> bool {
    f == g
}

// ---------------------------------------------------------------------------
// Derived constructors (macros expanding into the core grammar).
// ---------------------------------------------------------------------------

/// Associativity constraint `a : (X x Y) x Z -> X x (Y x Z)`,
/// `<pi1 o pi1, <pi2 o pi1, pi2>>`.
pub fn assoc(x: &ObjExpr, y: &ObjExpr, z: &ObjExpr) -> Mor {
    let xy = ObjExpr::prod(x.clone(), y.clone());
    let p1 = proj1(xy.clone(), z.clone());
    let p2 = proj2(xy.clone(), z.clone());
    pair(
        compose(proj1(x.clone(), y.clone()), p1.clone()),
        pair(compose(proj2(x.clone(), y.clone()), p1), p2),
    )
}

/// Left unit constraint `l : X -> U x X`, `<!, id>`.
pub fn lunit(x: &ObjExpr) -> Mor {
    pair(bang(x.clone()), id(x.clone()))
}

/// Right unit constraint `r : X -> X x U`, `<id, !>`.
pub fn runit(x: &ObjExpr) -> Mor {
    pair(id(x.clone()), bang(x.clone()))
}

/// Symmetry `c : X x Y -> Y x X`, `<pi2, pi1>`.
pub fn swap(x: &ObjExpr, y: &ObjExpr) -> Mor {
    pair(proj2(x.clone(), y.clone()), proj1(x.clone(), y.clone()))
}

/// Diagonal `Delta : X -> X x X`, `<id, id>`.
pub fn diagonal(x: &ObjExpr) -> Mor {
    pair(id(x.clone()), id(x.clone()))
}

/// The distributivity isomorphism
/// `sigma : (A x B) x (C x D) -> (A x C) x (B x D)`,
/// `<<pi1 o pi1, pi1 o pi2>, <pi2 o pi1, pi2 o pi2>>`.
pub fn dist(a: &ObjExpr, b: &ObjExpr, c: &ObjExpr, d: &ObjExpr) -> Mor {
    let ab = ObjExpr::prod(a.clone(), b.clone());
    let cd = ObjExpr::prod(c.clone(), d.clone());
    let p1 = proj1(ab.clone(), cd.clone());
    let p2 = proj2(ab, cd);
    pair(
        pair(
            compose(proj1(a.clone(), b.clone()), p1.clone()),
            compose(proj1(c.clone(), d.clone()), p2.clone()),
        ),
        pair(
            compose(proj2(a.clone(), b.clone()), p1),
            compose(proj2(c.clone(), d.clone()), p2),
        ),
    )
}

/// Product of morphisms `f x g = <f o pi1, g o pi2>`.
pub fn times(f: Mor, g: Mor) -> Mor {
    let df = f.dom();
    let dg = g.dom();
    pair(
        compose(f, proj1(df.clone(), dg.clone())),
        compose(g, proj2(df, dg)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> ObjExpr {
        ObjExpr::base("R", 1)
    }

    #[test]
    fn dom_cod_of_core_nodes() {
        let x = r();
        let xx = ObjExpr::prod(x.clone(), x.clone());
        let d = diff(id(x.clone()));
        assert_eq!(d.dom(), xx);
        assert_eq!(d.cod(), x);
        let c = curry_at(proj1(x.clone(), x.clone()), x.clone(), x.clone());
        assert_eq!(c.dom(), x);
        assert_eq!(c.cod(), ObjExpr::exp(x.clone(), x.clone()));
        let e = ev(x.clone(), x.clone());
        assert_eq!(e.dom(), ObjExpr::prod(ObjExpr::exp(x.clone(), x.clone()), x.clone()));
    }

    #[test]
    fn zero_into_unit_is_bang() {
        let z = zero(r(), ObjExpr::Unit);
        assert!(matches!(&*z, MorExpr::Bang(_)));
    }

    #[test]
    fn swap_is_pair_of_projections() {
        let c = swap(&r(), &r());
        assert_eq!(c, pair(proj2(r(), r()), proj1(r(), r())));
    }

    #[test]
    fn lunit_is_bang_id() {
        assert_eq!(lunit(&r()), pair(bang(r()), id(r())));
    }

    #[test]
    fn times_is_pair_of_precompositions() {
        let f = id(r());
        let g = id(r());
        let fg = times(f.clone(), g.clone());
        assert_eq!(
            fg,
            pair(compose(f, proj1(r(), r())), compose(g, proj2(r(), r())))
        );
    }

    #[test]
    fn structural_eq_is_syntactic() {
        let x = r();
        let xx = ObjExpr::prod(x.clone(), x.clone());
        assert!(structural_eq(&id(xx.clone()), &id(xx.clone())));
        // equal only modulo theory
        assert!(!structural_eq(
            &pair(proj1(x.clone(), x.clone()), proj2(x.clone(), x.clone())),
            &id(xx)
        ));
        let f = zero(x.clone(), x.clone());
        let g = id(x);
        assert!(!structural_eq(&sum(f.clone(), g.clone()), &sum(g, f)));
    }
}
