//! Parser and elaborator for the surface expression grammar.
//!
//! ```text
//! mor    := sum
//! sum    := comp ('+' comp)*                 -- lowest precedence
//! comp   := prod ('o' comp)?                 -- right-associative
//! prod   := post ('x' post)*                 -- binds tighter than 'o'
//! post   := atom (':' ann)?
//! atom   := 'id' | 'pi1' | 'pi2' | '0' | '!' | 'ev' | '<' mor ',' mor '>'
//!         | 'curry(' mor ')' | 'D(' mor ')' | 'T(' mor ')'
//!         | 'eta' | 'mu' | 't' | "t'" | 'psi' | 'psitilde' | 'sigma'
//!         | ident | '(' mor ')'
//! ann    := obj | obj '->' obj
//! obj    := prodobj ('=>' obj)?              -- right-associative
//! prodobj:= atomobj ('x' atomobj)*
//! atomobj:= 'U' | ident ('<' nat '>')? | '(' obj ')'
//! ```
//!
//! An annotation `:O` fixes the domain of the annotated atom; `:(O -> P)`
//! fixes domain and codomain (needed for `0` and bare generators out of
//! context).  On the named transformations (`eta`, `mu`, `t`, `t'`, `psi`,
//! `psitilde`, `sigma`) the annotation instead names the object parameters:
//! `eta:X` is the unit at `X`, `t:XxY` the strength at `(X, Y)`, `sigma:X`
//! the distributive law at `X`.  Everywhere else objects are inferred
//! bidirectionally from context.

use std::fmt;

use thiserror::Error;

use crate::gen::Registry;
use crate::mor::{self, Mor};
use crate::obj::ObjExpr;
use crate::tangent;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at {0}..{1}: {2}")]
    Syntax(usize, usize, String),
    #[error("elaboration error at {0}..{1}: {2}")]
    Elab(usize, usize, String),
}

type PResult<T> = Result<T, ParseError>;

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u32),
    LAngle,
    RAngle,
    LParen,
    RParen,
    Comma,
    Colon,
    Plus,
    Bang,
    Arrow,    // ->
    FatArrow, // =>
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::LAngle => write!(f, "`<`"),
            Tok::RAngle => write!(f, "`>`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Bang => write!(f, "`!`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::FatArrow => write!(f, "`=>`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(src: &str) -> PResult<Lexer> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '<' => {
                toks.push((Tok::LAngle, i, i + 1));
                i += 1;
            }
            '>' => {
                toks.push((Tok::RAngle, i, i + 1));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i, i + 1));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i, i + 1));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i, i + 1));
                i += 1;
            }
            ':' => {
                toks.push((Tok::Colon, i, i + 1));
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, i, i + 1));
                i += 1;
            }
            '!' => {
                toks.push((Tok::Bang, i, i + 1));
                i += 1;
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((Tok::Arrow, i, i + 2));
                i += 2;
            }
            '=' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((Tok::FatArrow, i, i + 2));
                i += 2;
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n: u32 = src[i..j]
                    .parse()
                    .map_err(|_| ParseError::Syntax(i, j, "number too large".into()))?;
                toks.push((Tok::Num(n), i, j));
                i = j;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                // allow a trailing prime, as in t'
                while j < bytes.len() && bytes[j] == b'\'' {
                    j += 1;
                }
                toks.push((Tok::Ident(src[i..j].to_string()), i, j));
                i = j;
            }
            other => {
                return Err(ParseError::Syntax(
                    start,
                    start + 1,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    toks.push((Tok::Eof, src.len(), src.len()));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> (usize, usize) {
        let (_, s, e) = self.toks[self.pos];
        (s, e)
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.peek() == t {
            self.next();
            Ok(())
        } else {
            let (s, e) = self.span();
            Err(ParseError::Syntax(
                s,
                e,
                format!("expected {t}, found {}", self.peek()),
            ))
        }
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.peek() {
            Tok::Ident(s) => Some(s),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Surface syntax
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Ann {
    Dom(ObjExpr),
    Arrow(ObjExpr, ObjExpr),
}

#[derive(Debug, Clone, PartialEq)]
enum Surf {
    Id,
    Pi1,
    Pi2,
    Zero,
    Bang,
    Ev,
    Eta,
    Mu,
    Strength,
    Costrength,
    Psi,
    PsiTilde,
    Sigma,
    Gen(String),
    Pair(Box<SurfNode>, Box<SurfNode>),
    Comp(Box<SurfNode>, Box<SurfNode>),
    Sum(Box<SurfNode>, Box<SurfNode>),
    Times(Box<SurfNode>, Box<SurfNode>),
    Curry(Box<SurfNode>),
    D(Box<SurfNode>),
    T(Box<SurfNode>),
    Ann(Box<SurfNode>, Ann),
}

#[derive(Debug, Clone, PartialEq)]
struct SurfNode {
    surf: Surf,
    span: (usize, usize),
}

fn node(surf: Surf, span: (usize, usize)) -> SurfNode {
    SurfNode { surf, span }
}

// ---------------------------------------------------------------------------
// Object parsing
// ---------------------------------------------------------------------------

fn parse_obj(lx: &mut Lexer) -> PResult<ObjExpr> {
    let lhs = parse_obj_prod(lx)?;
    if lx.peek() == &Tok::FatArrow {
        lx.next();
        let rhs = parse_obj(lx)?;
        return Ok(ObjExpr::exp(lhs, rhs));
    }
    Ok(lhs)
}

fn parse_obj_prod(lx: &mut Lexer) -> PResult<ObjExpr> {
    let mut acc = parse_obj_atom(lx)?;
    while lx.peek_ident() == Some("x") {
        lx.next();
        let rhs = parse_obj_atom(lx)?;
        acc = ObjExpr::prod(acc, rhs);
    }
    Ok(acc)
}

fn parse_obj_atom(lx: &mut Lexer) -> PResult<ObjExpr> {
    let (s, e) = lx.span();
    match lx.next() {
        Tok::LParen => {
            let o = parse_obj(lx)?;
            lx.expect(&Tok::RParen)?;
            Ok(o)
        }
        Tok::Ident(name) if name == "U" => Ok(ObjExpr::Unit),
        Tok::Ident(name) if name != "x" => {
            if lx.peek() == &Tok::LAngle {
                lx.next();
                let dim = match lx.next() {
                    Tok::Num(n) if n >= 1 => n,
                    other => {
                        return Err(ParseError::Syntax(
                            s,
                            e,
                            format!("expected dimension >= 1, found {other}"),
                        ))
                    }
                };
                lx.expect(&Tok::RAngle)?;
                Ok(ObjExpr::base(name, dim))
            } else {
                Ok(ObjExpr::base(name, 1))
            }
        }
        other => Err(ParseError::Syntax(s, e, format!("expected object, found {other}"))),
    }
}

// ---------------------------------------------------------------------------
// Morphism parsing
// ---------------------------------------------------------------------------

fn parse_sum(lx: &mut Lexer) -> PResult<SurfNode> {
    let mut acc = parse_comp(lx)?;
    while lx.peek() == &Tok::Plus {
        lx.next();
        let rhs = parse_comp(lx)?;
        let span = (acc.span.0, rhs.span.1);
        acc = node(Surf::Sum(Box::new(acc), Box::new(rhs)), span);
    }
    Ok(acc)
}

fn parse_comp(lx: &mut Lexer) -> PResult<SurfNode> {
    let lhs = parse_prod(lx)?;
    if lx.peek_ident() == Some("o") {
        lx.next();
        let rhs = parse_comp(lx)?;
        let span = (lhs.span.0, rhs.span.1);
        return Ok(node(Surf::Comp(Box::new(lhs), Box::new(rhs)), span));
    }
    Ok(lhs)
}

fn parse_prod(lx: &mut Lexer) -> PResult<SurfNode> {
    let mut acc = parse_post(lx)?;
    while lx.peek_ident() == Some("x") {
        lx.next();
        let rhs = parse_post(lx)?;
        let span = (acc.span.0, rhs.span.1);
        acc = node(Surf::Times(Box::new(acc), Box::new(rhs)), span);
    }
    Ok(acc)
}

fn parse_post(lx: &mut Lexer) -> PResult<SurfNode> {
    let atom = parse_atom(lx)?;
    if lx.peek() == &Tok::Colon {
        lx.next();
        let ann = parse_ann(lx)?;
        let span = atom.span;
        return Ok(node(Surf::Ann(Box::new(atom), ann), span));
    }
    Ok(atom)
}

fn parse_ann(lx: &mut Lexer) -> PResult<Ann> {
    // `(` may open either a parenthesized object or an arrow annotation
    if lx.peek() == &Tok::LParen {
        let save = lx.pos;
        lx.next();
        let dom = parse_obj(lx)?;
        match lx.peek() {
            Tok::Arrow => {
                lx.next();
                let cod = parse_obj(lx)?;
                lx.expect(&Tok::RParen)?;
                return Ok(Ann::Arrow(dom, cod));
            }
            Tok::RParen => {
                lx.next();
                // `(O)` followed by more object syntax, e.g. `(AxB)xC`
                if lx.peek_ident() == Some("x") || lx.peek() == &Tok::FatArrow {
                    lx.pos = save;
                } else {
                    return Ok(Ann::Dom(dom));
                }
            }
            _ => {
                lx.pos = save;
            }
        }
    }
    let dom = parse_obj(lx)?;
    if lx.peek() == &Tok::Arrow {
        lx.next();
        let cod = parse_obj(lx)?;
        return Ok(Ann::Arrow(dom, cod));
    }
    Ok(Ann::Dom(dom))
}

fn parse_atom(lx: &mut Lexer) -> PResult<SurfNode> {
    let (s, e) = lx.span();
    match lx.next() {
        Tok::LParen => {
            let m = parse_sum(lx)?;
            lx.expect(&Tok::RParen)?;
            Ok(m)
        }
        Tok::LAngle => {
            let a = parse_sum(lx)?;
            lx.expect(&Tok::Comma)?;
            let b = parse_sum(lx)?;
            lx.expect(&Tok::RAngle)?;
            let (_, end) = lx.span();
            Ok(node(Surf::Pair(Box::new(a), Box::new(b)), (s, end)))
        }
        Tok::Num(0) => Ok(node(Surf::Zero, (s, e))),
        Tok::Bang => Ok(node(Surf::Bang, (s, e))),
        Tok::Ident(name) => {
            let surf = match name.as_str() {
                "id" => Surf::Id,
                "pi1" => Surf::Pi1,
                "pi2" => Surf::Pi2,
                "ev" => Surf::Ev,
                "eta" => Surf::Eta,
                "mu" => Surf::Mu,
                "t" => Surf::Strength,
                "t'" => Surf::Costrength,
                "psi" => Surf::Psi,
                "psitilde" => Surf::PsiTilde,
                "sigma" => Surf::Sigma,
                "curry" | "D" | "T" => {
                    lx.expect(&Tok::LParen)?;
                    let inner = parse_sum(lx)?;
                    lx.expect(&Tok::RParen)?;
                    let span = (s, inner.span.1 + 1);
                    let surf = match name.as_str() {
                        "curry" => Surf::Curry(Box::new(inner)),
                        "D" => Surf::D(Box::new(inner)),
                        _ => Surf::T(Box::new(inner)),
                    };
                    return Ok(node(surf, span));
                }
                "o" | "x" => {
                    return Err(ParseError::Syntax(
                        s,
                        e,
                        format!("`{name}` is an operator, not a morphism"),
                    ))
                }
                _ => Surf::Gen(name),
            };
            Ok(node(surf, (s, e)))
        }
        other => Err(ParseError::Syntax(s, e, format!("expected morphism, found {other}"))),
    }
}

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

struct Elab<'a> {
    reg: &'a Registry,
}

fn need(span: (usize, usize), what: &str) -> ParseError {
    ParseError::Elab(
        span.0,
        span.1,
        format!("{what}; add a `:Type` annotation"),
    )
}

fn clash(span: (usize, usize), what: &str, want: &ObjExpr, got: &ObjExpr) -> ParseError {
    ParseError::Elab(span.0, span.1, format!("{what}: expected {want}, found {got}"))
}

impl<'a> Elab<'a> {
    /// Elaborate with optional expected domain/codomain.
    fn go(&self, n: &SurfNode, dom: Option<&ObjExpr>, cod: Option<&ObjExpr>) -> PResult<Mor> {
        let sp = n.span;
        match &n.surf {
            Surf::Ann(inner, ann) => {
                // on named transformations the annotation carries parameters
                if let Some(m) = self.named_with_params(inner, ann)? {
                    return self.check_expected(m, sp, dom, cod);
                }
                let (adom, acod) = match ann {
                    Ann::Dom(d) => (d.clone(), cod.cloned()),
                    Ann::Arrow(d, c) => (d.clone(), Some(c.clone())),
                };
                if let Some(want) = dom {
                    if *want != adom {
                        return Err(clash(sp, "annotated domain clashes with context", want, &adom));
                    }
                }
                self.go(inner, Some(&adom), acod.as_ref())
            }
            Surf::Id => {
                let x = dom.or(cod).ok_or_else(|| need(sp, "cannot infer object of `id`"))?;
                if let (Some(d), Some(c)) = (dom, cod) {
                    if d != c {
                        return Err(clash(sp, "`id` must have equal dom and cod", d, c));
                    }
                }
                Ok(mor::id(x.clone()))
            }
            Surf::Pi1 => {
                let d = dom.ok_or_else(|| need(sp, "cannot infer product for `pi1`"))?;
                let (l, r) = d
                    .as_prod()
                    .ok_or_else(|| need(sp, "`pi1` needs a product domain"))?;
                self.check_expected(mor::proj1(l.clone(), r.clone()), sp, dom, cod)
            }
            Surf::Pi2 => {
                let d = dom.ok_or_else(|| need(sp, "cannot infer product for `pi2`"))?;
                let (l, r) = d
                    .as_prod()
                    .ok_or_else(|| need(sp, "`pi2` needs a product domain"))?;
                self.check_expected(mor::proj2(l.clone(), r.clone()), sp, dom, cod)
            }
            Surf::Zero => {
                let d = dom.ok_or_else(|| need(sp, "cannot infer domain of `0`"))?;
                let c = cod.ok_or_else(|| need(sp, "cannot infer codomain of `0`"))?;
                Ok(mor::zero(d.clone(), c.clone()))
            }
            Surf::Bang => {
                let d = dom.ok_or_else(|| need(sp, "cannot infer domain of `!`"))?;
                if let Some(c) = cod {
                    if *c != ObjExpr::Unit {
                        return Err(clash(sp, "`!` lands in U", &ObjExpr::Unit, c));
                    }
                }
                Ok(mor::bang(d.clone()))
            }
            Surf::Ev => {
                let d = dom.ok_or_else(|| need(sp, "cannot infer objects of `ev`"))?;
                let (fun, arg) = d
                    .as_prod()
                    .ok_or_else(|| need(sp, "`ev` needs domain (X=>Y)xX"))?;
                let (x, y) = fun
                    .as_exp()
                    .ok_or_else(|| need(sp, "`ev` needs domain (X=>Y)xX"))?;
                if x != arg {
                    return Err(clash(sp, "`ev` argument object mismatch", x, arg));
                }
                self.check_expected(mor::ev(x.clone(), y.clone()), sp, dom, cod)
            }
            Surf::Eta => {
                let x = match (dom, cod) {
                    (Some(x), _) => x.clone(),
                    (None, Some(c)) => match c.as_prod() {
                        Some((a, b)) if a == b => a.clone(),
                        _ => return Err(need(sp, "cannot infer object of `eta`")),
                    },
                    _ => return Err(need(sp, "cannot infer object of `eta`")),
                };
                self.check_expected(tangent::eta(&x), sp, dom, cod)
            }
            Surf::Mu => {
                let x = match (cod, dom) {
                    (Some(c), _) => match c.as_prod() {
                        Some((a, b)) if a == b => a.clone(),
                        _ => return Err(need(sp, "cannot infer object of `mu`")),
                    },
                    (None, Some(d)) => match d.as_prod() {
                        Some((tt, _)) => match tt.as_prod() {
                            Some((a, b)) if a == b => a.clone(),
                            _ => return Err(need(sp, "cannot infer object of `mu`")),
                        },
                        None => return Err(need(sp, "cannot infer object of `mu`")),
                    },
                    _ => return Err(need(sp, "cannot infer object of `mu`")),
                };
                self.check_expected(tangent::mu(&x), sp, dom, cod)
            }
            Surf::Strength => {
                // t : X x TY -> T(X x Y)
                let d = dom.ok_or_else(|| need(sp, "cannot infer objects of `t`"))?;
                let (x, ty) = d
                    .as_prod()
                    .ok_or_else(|| need(sp, "`t` needs domain Xx(YxY)"))?;
                let (y, y2) = ty
                    .as_prod()
                    .ok_or_else(|| need(sp, "`t` needs domain Xx(YxY)"))?;
                if y != y2 {
                    return Err(clash(sp, "`t` tangent pair mismatch", y, y2));
                }
                self.check_expected(tangent::strength(x, y), sp, dom, cod)
            }
            Surf::Costrength => {
                let d = dom.ok_or_else(|| need(sp, "cannot infer objects of `t'`"))?;
                let (tx, y) = d
                    .as_prod()
                    .ok_or_else(|| need(sp, "`t'` needs domain (XxX)xY"))?;
                let (x, x2) = tx
                    .as_prod()
                    .ok_or_else(|| need(sp, "`t'` needs domain (XxX)xY"))?;
                if x != x2 {
                    return Err(clash(sp, "`t'` tangent pair mismatch", x, x2));
                }
                self.check_expected(tangent::costrength(x, y), sp, dom, cod)
            }
            Surf::Psi | Surf::PsiTilde => {
                let d = dom.ok_or_else(|| need(sp, "cannot infer objects of `psi`"))?;
                let (tx, ty) = d
                    .as_prod()
                    .ok_or_else(|| need(sp, "`psi` needs domain (XxX)x(YxY)"))?;
                let (x, x2) = tx
                    .as_prod()
                    .ok_or_else(|| need(sp, "`psi` needs domain (XxX)x(YxY)"))?;
                let (y, y2) = ty
                    .as_prod()
                    .ok_or_else(|| need(sp, "`psi` needs domain (XxX)x(YxY)"))?;
                if x != x2 || y != y2 {
                    return Err(need(sp, "`psi` needs domain (XxX)x(YxY)"));
                }
                let m = if matches!(n.surf, Surf::Psi) {
                    tangent::psi(x, y)
                } else {
                    tangent::psi_tilde(x, y)
                };
                self.check_expected(m, sp, dom, cod)
            }
            Surf::Sigma => {
                let d = dom.ok_or_else(|| need(sp, "cannot infer objects of `sigma`"))?;
                let (ab, cd) = d
                    .as_prod()
                    .ok_or_else(|| need(sp, "`sigma` needs domain (AxB)x(CxD)"))?;
                let (a, b) = ab
                    .as_prod()
                    .ok_or_else(|| need(sp, "`sigma` needs domain (AxB)x(CxD)"))?;
                let (c, dd) = cd
                    .as_prod()
                    .ok_or_else(|| need(sp, "`sigma` needs domain (AxB)x(CxD)"))?;
                self.check_expected(mor::dist(a, b, c, dd), sp, dom, cod)
            }
            Surf::Gen(name) => {
                let sig = self
                    .reg
                    .get(name)
                    .ok_or_else(|| {
                        ParseError::Elab(sp.0, sp.1, format!("unknown generator `{name}`"))
                    })?
                    .clone();
                self.check_expected(mor::gen(sig), sp, dom, cod)
            }
            Surf::Pair(a, b) => {
                let (cod_a, cod_b) = match cod.and_then(|c| c.as_prod()) {
                    Some((x, y)) => (Some(x.clone()), Some(y.clone())),
                    None => (None, None),
                };
                match self.go(a, dom, cod_a.as_ref()) {
                    Ok(fa) => {
                        let da = fa.dom();
                        let fb = self.go(b, Some(&da), cod_b.as_ref())?;
                        Ok(mor::pair(fa, fb))
                    }
                    Err(_) => {
                        let fb = self.go(b, dom, cod_b.as_ref())?;
                        let db = fb.dom();
                        let fa = self.go(a, Some(&db), cod_a.as_ref())?;
                        Ok(mor::pair(fa, fb))
                    }
                }
            }
            Surf::Comp(f, g) => {
                match self.go(g, dom, None) {
                    Ok(mg) => {
                        let mid = mg.cod();
                        let mf = self.go(f, Some(&mid), cod)?;
                        Ok(mor::compose(mf, mg))
                    }
                    Err(_) => {
                        let mf = self.go(f, None, cod)?;
                        let mid = mf.dom();
                        let mg = self.go(g, dom, Some(&mid))?;
                        Ok(mor::compose(mf, mg))
                    }
                }
            }
            Surf::Sum(a, b) => match self.go(a, dom, cod) {
                Ok(fa) => {
                    let (da, ca) = (fa.dom(), fa.cod());
                    let fb = self.go(b, Some(&da), Some(&ca))?;
                    Ok(mor::sum(fa, fb))
                }
                Err(_) => {
                    let fb = self.go(b, dom, cod)?;
                    let (db, cb) = (fb.dom(), fb.cod());
                    let fa = self.go(a, Some(&db), Some(&cb))?;
                    Ok(mor::sum(fa, fb))
                }
            },
            Surf::Times(a, b) => {
                let (dom_a, dom_b) = match dom.and_then(|d| d.as_prod()) {
                    Some((x, y)) => (Some(x.clone()), Some(y.clone())),
                    None => (None, None),
                };
                let (cod_a, cod_b) = match cod.and_then(|c| c.as_prod()) {
                    Some((x, y)) => (Some(x.clone()), Some(y.clone())),
                    None => (None, None),
                };
                let fa = self.go(a, dom_a.as_ref(), cod_a.as_ref())?;
                let fb = self.go(b, dom_b.as_ref(), cod_b.as_ref())?;
                Ok(mor::times(fa, fb))
            }
            Surf::Curry(f) => {
                // curry(f) : Z -> (X => Y) with f : Z x X -> Y
                let (want_z, want_x, want_y) = match (dom, cod) {
                    (z, Some(c)) => match c.as_exp() {
                        Some((x, y)) => (z.cloned(), Some(x.clone()), Some(y.clone())),
                        None => (z.cloned(), None, None),
                    },
                    (z, None) => (z.cloned(), None, None),
                };
                let want_fdom = match (&want_z, &want_x) {
                    (Some(z), Some(x)) => Some(ObjExpr::prod(z.clone(), x.clone())),
                    _ => None,
                };
                let mf = self.go(f, want_fdom.as_ref(), want_y.as_ref())?;
                let fd = mf.dom();
                let (z, x) = fd
                    .as_prod()
                    .ok_or_else(|| need(sp, "`curry` needs a product domain inside"))?;
                self.check_expected(mor::curry_at(mf.clone(), z.clone(), x.clone()), sp, dom, cod)
            }
            Surf::D(f) => {
                let inner_dom = match dom.and_then(|d| d.as_prod()) {
                    Some((a, b)) if a == b => Some(a.clone()),
                    _ => None,
                };
                let mf = self.go(f, inner_dom.as_ref(), cod)?;
                self.check_expected(mor::diff(mf), sp, dom, cod)
            }
            Surf::T(f) => {
                let inner_dom = match dom.and_then(|d| d.as_prod()) {
                    Some((a, b)) if a == b => Some(a.clone()),
                    _ => None,
                };
                let inner_cod = match cod.and_then(|c| c.as_prod()) {
                    Some((a, b)) if a == b => Some(a.clone()),
                    _ => None,
                };
                let mf = self.go(f, inner_dom.as_ref(), inner_cod.as_ref())?;
                self.check_expected(tangent::t_mor(&mf), sp, dom, cod)
            }
        }
    }

    fn named_with_params(&self, inner: &SurfNode, ann: &Ann) -> PResult<Option<Mor>> {
        let params = match ann {
            Ann::Dom(d) => d,
            Ann::Arrow(..) => return Ok(None),
        };
        let m = match &inner.surf {
            Surf::Eta => Some(tangent::eta(params)),
            Surf::Mu => Some(tangent::mu(params)),
            Surf::Sigma => Some(tangent::sigma_law(params)),
            Surf::Strength => params
                .as_prod()
                .map(|(x, y)| tangent::strength(x, y)),
            Surf::Costrength => params
                .as_prod()
                .map(|(x, y)| tangent::costrength(x, y)),
            Surf::Psi => params.as_prod().map(|(x, y)| tangent::psi(x, y)),
            Surf::PsiTilde => params.as_prod().map(|(x, y)| tangent::psi_tilde(x, y)),
            _ => None,
        };
        Ok(m)
    }

    fn check_expected(
        &self,
        m: Mor,
        sp: (usize, usize),
        dom: Option<&ObjExpr>,
        cod: Option<&ObjExpr>,
    ) -> PResult<Mor> {
        if let Some(d) = dom {
            let md = m.dom();
            if *d != md {
                return Err(clash(sp, "domain mismatch", d, &md));
            }
        }
        if let Some(c) = cod {
            let mc = m.cod();
            if *c != mc {
                return Err(clash(sp, "codomain mismatch", c, &mc));
            }
        }
        Ok(m)
    }
}

/// Parse and elaborate a morphism expression.
pub fn parse_mor(src: &str, reg: &Registry) -> PResult<Mor> {
    parse_mor_expecting(src, reg, None, None)
}

/// Parse with an expected type from context (used for the second operand of
/// an equality query, say).
pub fn parse_mor_expecting(
    src: &str,
    reg: &Registry,
    dom: Option<&ObjExpr>,
    cod: Option<&ObjExpr>,
) -> PResult<Mor> {
    let mut lx = lex(src)?;
    let surf = parse_sum(&mut lx)?;
    let (s, e) = lx.span();
    if lx.peek() != &Tok::Eof {
        return Err(ParseError::Syntax(
            s,
            e,
            format!("unexpected trailing {}", lx.peek()),
        ));
    }
    Elab { reg }.go(&surf, dom, cod)
}

/// Parse an object expression, e.g. for registry files.
pub fn parse_obj_str(src: &str) -> PResult<ObjExpr> {
    let mut lx = lex(src)?;
    let o = parse_obj(&mut lx)?;
    let (s, e) = lx.span();
    if lx.peek() != &Tok::Eof {
        return Err(ParseError::Syntax(
            s,
            e,
            format!("unexpected trailing {}", lx.peek()),
        ));
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::GenSig;
    use crate::mor::*;

    fn reg() -> Registry {
        let mut r = Registry::new();
        let a = ObjExpr::base("A", 1);
        let b = ObjExpr::base("B", 1);
        r.insert(GenSig::new("f", a.clone(), b.clone(), None, false));
        r.insert(GenSig::new("g", b, a, None, false));
        r
    }

    fn rr() -> ObjExpr {
        ObjExpr::prod(ObjExpr::base("R", 1), ObjExpr::base("R", 1))
    }

    #[test]
    fn parses_annotated_id() {
        let m = parse_mor("id:R", &reg()).unwrap();
        assert_eq!(m, id(ObjExpr::base("R", 1)));
    }

    #[test]
    fn parses_pairing_with_product_annotation() {
        let m = parse_mor("<pi1, pi2>:AxB", &reg()).unwrap();
        let a = ObjExpr::base("A", 1);
        let b = ObjExpr::base("B", 1);
        assert_eq!(m, pair(proj1(a.clone(), b.clone()), proj2(a, b)));
    }

    #[test]
    fn infers_through_composition() {
        // mu:R o eta:(RxR)  — eta at TR inferred from mu's domain
        let m = parse_mor("mu:R o eta", &reg()).unwrap();
        assert_eq!(m.dom(), rr());
        assert_eq!(m.cod(), rr());
    }

    #[test]
    fn zero_needs_arrow_annotation() {
        assert!(parse_mor("0", &reg()).is_err());
        let m = parse_mor("0:(A->B)", &reg()).unwrap();
        assert_eq!(m.dom(), ObjExpr::base("A", 1));
        assert_eq!(m.cod(), ObjExpr::base("B", 1));
    }

    #[test]
    fn generators_come_from_registry() {
        let m = parse_mor("g o f", &reg()).unwrap();
        assert_eq!(m.dom(), ObjExpr::base("A", 1));
        assert_eq!(m.cod(), ObjExpr::base("A", 1));
        assert!(parse_mor("unknown_gen", &reg()).is_err());
    }

    #[test]
    fn strength_annotation_is_parameter_pair() {
        let m = parse_mor("t:AxB", &reg()).unwrap();
        let a = ObjExpr::base("A", 1);
        let b = ObjExpr::base("B", 1);
        assert_eq!(m.dom(), ObjExpr::prod(a.clone(), ObjExpr::prod(b.clone(), b.clone())));
        assert_eq!(
            m.cod(),
            ObjExpr::prod(ObjExpr::prod(a.clone(), b.clone()), ObjExpr::prod(a, b))
        );
    }

    #[test]
    fn roundtrip_annotated_printer() {
        let src = "D(<pi1, pi2>:AxB) o <id:(AxB)x(AxB), 0:((AxB)x(AxB)->(AxB)x(AxB))>";
        let m = parse_mor(src, &reg()).unwrap();
        let printed = crate::pretty::print_mor_annotated(&m);
        let back = parse_mor(&printed, &reg()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn curry_and_ev_elaborate() {
        // curry of a generator-shaped composite: f o pi2 : AxA -> B
        let m = parse_mor("curry(f o pi2:AxA)", &reg()).unwrap();
        let a = ObjExpr::base("A", 1);
        let b = ObjExpr::base("B", 1);
        assert_eq!(m.dom(), a);
        assert_eq!(m.cod(), ObjExpr::exp(a.clone(), b.clone()));
        let e = parse_mor("ev:((A=>B)xA)", &reg()).unwrap();
        assert_eq!(e, ev(a, b));
    }

    #[test]
    fn precedence_plus_lowest_o_right_assoc() {
        let m = parse_mor("id:R o id + id", &reg()).unwrap();
        assert!(matches!(&*m, MorExpr::Sum(..)));
        let m2 = parse_mor("pi1:(RxR)x(RxR) o pi1 o <id, id>", &reg()).unwrap();
        // right associativity: pi1 o (pi1 o <id,id>)
        if let MorExpr::Compose(_, rhs) = &*m2 {
            assert!(matches!(&**rhs, MorExpr::Compose(..)));
        } else {
            panic!("expected composition");
        }
    }
}
