//! The tangent bundle monad and its companions, as macro expansions.
//!
//! `TX = X x X` and `T(f) = <D(f), f o pi2>`.  The unit, multiplication,
//! strengths, monoidal mediators and the distributive law are all plain
//! pairings of projections and zeros; building them here keeps the rewrite
//! rule set confined to the base equations.

use crate::diff::differentiate;
use crate::mor::{self, Mor};
use crate::obj::ObjExpr;

/// `TX = X x X`.
pub fn t_obj(x: &ObjExpr) -> ObjExpr {
    ObjExpr::prod(x.clone(), x.clone())
}

/// `T(f) = <D(f), f o pi2> : TX -> TY`.
pub fn t_mor(f: &Mor) -> Mor {
    let d = f.dom();
    mor::pair(
        differentiate(f).term,
        mor::compose(f.clone(), mor::proj2(d.clone(), d)),
    )
}

/// Unit `eta = <0, id> : X -> TX`.
pub fn eta(x: &ObjExpr) -> Mor {
    mor::pair(mor::zero(x.clone(), x.clone()), mor::id(x.clone()))
}

/// Multiplication `mu = <pi2 o pi1 + pi1 o pi2, pi2 o pi2> : TTX -> TX`.
pub fn mu(x: &ObjExpr) -> Mor {
    let tx = t_obj(x);
    let p1 = mor::proj1(tx.clone(), tx.clone());
    let p2 = mor::proj2(tx.clone(), tx.clone());
    let q1 = mor::proj1(x.clone(), x.clone());
    let q2 = mor::proj2(x.clone(), x.clone());
    mor::pair(
        mor::sum(
            mor::compose(q2.clone(), p1),
            mor::compose(q1, p2.clone()),
        ),
        mor::compose(q2, p2),
    )
}

/// Tensorial strength
/// `t = <<0, pi1 o pi2>, <pi1, pi2 o pi2>> : X x TY -> T(X x Y)`.
pub fn strength(x: &ObjExpr, y: &ObjExpr) -> Mor {
    let ty = t_obj(y);
    let dom = ObjExpr::prod(x.clone(), ty.clone());
    let p1 = mor::proj1(x.clone(), ty.clone());
    let p2 = mor::proj2(x.clone(), ty.clone());
    let q1 = mor::proj1(y.clone(), y.clone());
    let q2 = mor::proj2(y.clone(), y.clone());
    mor::pair(
        mor::pair(
            mor::zero(dom, x.clone()),
            mor::compose(q1, p2.clone()),
        ),
        mor::pair(p1, mor::compose(q2, p2)),
    )
}

/// Costrength
/// `t' = <<pi1 o pi1, 0>, <pi2 o pi1, pi2>> : TX x Y -> T(X x Y)`,
/// the pairing form of `T(c) o t o c`.
pub fn costrength(x: &ObjExpr, y: &ObjExpr) -> Mor {
    let tx = t_obj(x);
    let dom = ObjExpr::prod(tx.clone(), y.clone());
    let p1 = mor::proj1(tx.clone(), y.clone());
    let p2 = mor::proj2(tx.clone(), y.clone());
    let q1 = mor::proj1(x.clone(), x.clone());
    let q2 = mor::proj2(x.clone(), x.clone());
    mor::pair(
        mor::pair(
            mor::compose(q1, p1.clone()),
            mor::zero(dom, y.clone()),
        ),
        mor::pair(mor::compose(q2, p1), p2),
    )
}

/// The composite form of `t'` from its definition, `T(c) o t o c`.
/// Normalization reduces it to `costrength`.
pub fn costrength_composite(x: &ObjExpr, y: &ObjExpr) -> Mor {
    let tx = t_obj(x);
    mor::compose(
        t_mor(&mor::swap(y, x)),
        mor::compose(strength(y, x), mor::swap(&tx, y)),
    )
}

/// Monoidal mediator `psi = mu o T(t) o t' : TX x TY -> T(X x Y)`.
pub fn psi(x: &ObjExpr, y: &ObjExpr) -> Mor {
    let ty = t_obj(y);
    let xy = ObjExpr::prod(x.clone(), y.clone());
    mor::compose(
        mu(&xy),
        mor::compose(t_mor(&strength(x, y)), costrength(x, &ty)),
    )
}

/// The symmetric mediator `psitilde = mu o T(t') o t : TX x TY -> T(X x Y)`.
pub fn psi_tilde(x: &ObjExpr, y: &ObjExpr) -> Mor {
    let tx = t_obj(x);
    let xy = ObjExpr::prod(x.clone(), y.clone());
    mor::compose(
        mu(&xy),
        mor::compose(t_mor(&costrength(x, y)), strength(&tx, y)),
    )
}

/// The inverse of `psi`: `<T(pi1), T(pi2)> = <pi1 x pi1, pi2 x pi2>`.
pub fn psi_inv(x: &ObjExpr, y: &ObjExpr) -> Mor {
    let p1 = mor::proj1(x.clone(), y.clone());
    let p2 = mor::proj2(x.clone(), y.clone());
    mor::pair(
        mor::times(p1.clone(), p1),
        mor::times(p2.clone(), p2),
    )
}

/// The canonical flip `sigma : TTX -> TTX`, the distributivity shuffle at
/// `(X, X, X, X)`.
pub fn sigma_law(x: &ObjExpr) -> Mor {
    mor::dist(x, x, x, x)
}

/// Closed-structure mediator `psihat = curry(T(ev) o psi)`.
pub fn psi_hat(x: &ObjExpr, y: &ObjExpr) -> Mor {
    let fun = ObjExpr::exp(x.clone(), y.clone());
    mor::curry_at(
        mor::compose(t_mor(&mor::ev(x.clone(), y.clone())), psi(&fun, x)),
        t_obj(&fun),
        t_obj(x),
    )
}

/// Enrichment of `T`: `underline_T = curry(T(ev) o t) : (X => Y) -> (TX => TY)`.
pub fn underline_t(x: &ObjExpr, y: &ObjExpr) -> Mor {
    let fun = ObjExpr::exp(x.clone(), y.clone());
    mor::curry_at(
        mor::compose(t_mor(&mor::ev(x.clone(), y.clone())), strength(&fun, x)),
        fun,
        t_obj(x),
    )
}

/// `T(curry(g))` in the pairing-of-curries form `<curry(pi1 o h), curry(pi2 o h)>`
/// with `h = T(g) o t'`, for `g : A x B -> C`.
pub fn t_curry(g: &Mor) -> Mor {
    let d = g.dom();
    let (a, b) = d
        .as_prod()
        .map(|(a, b)| (a.clone(), b.clone()))
        .expect("t_curry: domain is not a product");
    let c = g.cod();
    let ta = t_obj(&a);
    let h = mor::compose(t_mor(g), costrength(&a, &b));
    mor::pair(
        mor::curry_at(
            mor::compose(mor::proj1(c.clone(), c.clone()), h.clone()),
            ta.clone(),
            b.clone(),
        ),
        mor::curry_at(mor::compose(mor::proj2(c.clone(), c), h), ta, b),
    )
}
