//! A total order on morphism terms.
//!
//! Used to sort summands into canonical order and to orient the interchange
//! canonicalization of second derivatives.  Composition chains compare by
//! their factor sequence read from the right (the innermost factor first),
//! which makes the interchange swap sort mixed-partial arguments by the base
//! access path.  Zero sorts below everything else.

use std::cmp::Ordering;

use crate::mor::{Mor, MorExpr};

fn tag_rank(m: &MorExpr) -> u8 {
    match m {
        MorExpr::Zero(..) => 0,
        MorExpr::Bang(..) => 1,
        MorExpr::Id(..) => 2,
        MorExpr::Proj1(..) => 3,
        MorExpr::Proj2(..) => 4,
        MorExpr::Gen(..) => 5,
        MorExpr::Ev(..) => 6,
        MorExpr::Pair(..) => 7,
        MorExpr::Compose(..) => 8,
        MorExpr::Sum(..) => 9,
        MorExpr::Curry(..) => 10,
        MorExpr::D(..) => 11,
    }
}

fn flatten_compose<'a>(m: &'a Mor, out: &mut Vec<&'a Mor>) {
    if let MorExpr::Compose(f, g) = &**m {
        flatten_compose(f, out);
        flatten_compose(g, out);
    } else {
        out.push(m);
    }
}

/// Total order on terms; `Equal` coincides with structural equality.
pub fn cmp_mor(a: &Mor, b: &Mor) -> Ordering {
    let a_comp = matches!(&**a, MorExpr::Compose(..));
    let b_comp = matches!(&**b, MorExpr::Compose(..));
    if a_comp || b_comp {
        let mut ca = Vec::new();
        let mut cb = Vec::new();
        flatten_compose(a, &mut ca);
        flatten_compose(b, &mut cb);
        // compare from the right end (the factor applied first)
        for (x, y) in ca.iter().rev().zip(cb.iter().rev()) {
            match cmp_head(x, y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        return ca.len().cmp(&cb.len());
    }
    cmp_head(a, b)
}

fn cmp_head(a: &Mor, b: &Mor) -> Ordering {
    if matches!(&**a, MorExpr::Compose(..)) || matches!(&**b, MorExpr::Compose(..)) {
        return cmp_mor(a, b);
    }
    match tag_rank(a).cmp(&tag_rank(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    match (&**a, &**b) {
        (MorExpr::Zero(d1, c1), MorExpr::Zero(d2, c2)) => (d1, c1).cmp(&(d2, c2)),
        (MorExpr::Bang(x), MorExpr::Bang(y)) => x.cmp(y),
        (MorExpr::Id(x), MorExpr::Id(y)) => x.cmp(y),
        (MorExpr::Proj1(l1, r1), MorExpr::Proj1(l2, r2))
        | (MorExpr::Proj2(l1, r1), MorExpr::Proj2(l2, r2)) => (l1, r1).cmp(&(l2, r2)),
        (MorExpr::Gen(s1), MorExpr::Gen(s2)) => s1
            .name
            .cmp(&s2.name)
            .then_with(|| (&s1.dom, &s1.cod).cmp(&(&s2.dom, &s2.cod))),
        (MorExpr::Ev(a1, r1), MorExpr::Ev(a2, r2)) => (a1, r1).cmp(&(a2, r2)),
        (MorExpr::Pair(f1, g1), MorExpr::Pair(f2, g2))
        | (MorExpr::Sum(f1, g1), MorExpr::Sum(f2, g2)) => {
            cmp_mor(f1, f2).then_with(|| cmp_mor(g1, g2))
        }
        (MorExpr::Curry(f1, d1, x1), MorExpr::Curry(f2, d2, x2)) => {
            cmp_mor(f1, f2).then_with(|| (d1, x1).cmp(&(d2, x2)))
        }
        (MorExpr::D(f1), MorExpr::D(f2)) => cmp_mor(f1, f2),
        _ => unreachable!("tag ranks matched"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mor::*;
    use crate::obj::ObjExpr;

    #[test]
    fn zero_sorts_first() {
        let r = ObjExpr::base("R", 1);
        let z = zero(r.clone(), r.clone());
        let i = id(r);
        assert_eq!(cmp_mor(&z, &i), Ordering::Less);
    }

    #[test]
    fn chains_compare_from_the_right() {
        // pi2 o pi1 < pi1 o pi2 because the rightmost factors compare pi1 < pi2
        let r = ObjExpr::base("R", 1);
        let rr = ObjExpr::prod(r.clone(), r.clone());
        let p1 = proj1(rr.clone(), rr.clone());
        let p2 = proj2(rr.clone(), rr.clone());
        let q1 = proj1(r.clone(), r.clone());
        let q2 = proj2(r.clone(), r.clone());
        let a = compose(q2.clone(), p1.clone());
        let b = compose(q1.clone(), p2.clone());
        assert_eq!(cmp_mor(&a, &b), Ordering::Less);
    }

    #[test]
    fn order_is_total_and_matches_equality() {
        let r = ObjExpr::base("R", 1);
        let xs = vec![
            id(r.clone()),
            zero(r.clone(), r.clone()),
            sum(id(r.clone()), id(r.clone())),
            compose(id(r.clone()), id(r.clone())),
        ];
        for x in &xs {
            for y in &xs {
                let o = cmp_mor(x, y);
                assert_eq!(o == Ordering::Equal, x == y);
                assert_eq!(o, cmp_mor(y, x).reverse());
            }
        }
    }
}
