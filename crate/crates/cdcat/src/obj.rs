//! Object expressions: the types of the morphism language.
//!
//! Objects are built from the terminal object, named base spaces with a
//! dimension (only the numeric model cares about the dimension), binary
//! products, and exponentials.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjExpr {
    /// Terminal object.
    Unit,
    /// Named base space with a dimension (>= 1).
    Base(String, u32),
    /// Binary product.
    Prod(Arc<ObjExpr>, Arc<ObjExpr>),
    /// Exponential object `arg => result`.
    Exp(Arc<ObjExpr>, Arc<ObjExpr>),
}

impl ObjExpr {
    pub fn base(name: impl Into<String>, dim: u32) -> ObjExpr {
        assert!(dim >= 1, "base object dimension must be >= 1");
        ObjExpr::Base(name.into(), dim)
    }

    pub fn prod(l: ObjExpr, r: ObjExpr) -> ObjExpr {
        ObjExpr::Prod(Arc::new(l), Arc::new(r))
    }

    pub fn exp(arg: ObjExpr, result: ObjExpr) -> ObjExpr {
        ObjExpr::Exp(Arc::new(arg), Arc::new(result))
    }

    /// An object is first-order iff it contains no exponential.
    pub fn is_first_order(&self) -> bool {
        match self {
            ObjExpr::Unit | ObjExpr::Base(..) => true,
            ObjExpr::Prod(a, b) => a.is_first_order() && b.is_first_order(),
            ObjExpr::Exp(..) => false,
        }
    }

    /// Total number of scalar coordinates; only meaningful for first-order
    /// objects.
    pub fn scalar_len(&self) -> Option<usize> {
        match self {
            ObjExpr::Unit => Some(0),
            ObjExpr::Base(_, d) => Some(*d as usize),
            ObjExpr::Prod(a, b) => Some(a.scalar_len()? + b.scalar_len()?),
            ObjExpr::Exp(..) => None,
        }
    }

    pub fn as_prod(&self) -> Option<(&ObjExpr, &ObjExpr)> {
        match self {
            ObjExpr::Prod(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_exp(&self) -> Option<(&ObjExpr, &ObjExpr)> {
        match self {
            ObjExpr::Exp(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(o: &ObjExpr, f: &mut fmt::Formatter<'_>, nested: bool) -> fmt::Result {
            match o {
                ObjExpr::Unit => write!(f, "U"),
                ObjExpr::Base(name, 1) => write!(f, "{name}"),
                ObjExpr::Base(name, d) => write!(f, "{name}<{d}>"),
                ObjExpr::Prod(a, b) => {
                    if nested {
                        write!(f, "(")?;
                    }
                    go(a, f, true)?;
                    write!(f, "x")?;
                    go(b, f, true)?;
                    if nested {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                ObjExpr::Exp(a, b) => {
                    if nested {
                        write!(f, "(")?;
                    }
                    go(a, f, true)?;
                    write!(f, "=>")?;
                    go(b, f, true)?;
                    if nested {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, f, false)
    }
}

impl fmt::Debug for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_closed_under_prod() {
        let r1 = ObjExpr::base("R", 1);
        let r2 = ObjExpr::base("R", 2);
        assert!(r1.is_first_order());
        assert!(ObjExpr::prod(r1.clone(), r2.clone()).is_first_order());
        let e = ObjExpr::exp(r1.clone(), r2.clone());
        assert!(!e.is_first_order());
        assert!(!ObjExpr::prod(r1, e).is_first_order());
    }

    #[test]
    fn display_round_shapes() {
        let r = ObjExpr::base("R", 1);
        let p = ObjExpr::prod(r.clone(), r.clone());
        assert_eq!(p.to_string(), "RxR");
        assert_eq!(ObjExpr::prod(p.clone(), r.clone()).to_string(), "(RxR)xR");
        assert_eq!(ObjExpr::exp(r.clone(), r.clone()).to_string(), "R=>R");
        assert_eq!(ObjExpr::base("R", 2).to_string(), "R<2>");
        assert_eq!(ObjExpr::Unit.to_string(), "U");
    }
}
