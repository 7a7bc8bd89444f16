//! Text syntax for types and terms.
//!
//! ```text
//! term := "\" IDENT ":" type "." term | app
//! app  := atom { atom | "\" … }          juxtaposition, left-associative
//! atom := (IDENT | "(" term ")") { "(" term { "," term } ")" }
//! type := IDENT | type "->" type | "(" type ")"
//! ```
//!
//! `λ` is accepted for `\`. Identifiers starting with an uppercase letter
//! are free variables, names bound by an enclosing λ are bound variables,
//! and anything else must be a constant of the signature. Free-variable
//! types are inferred; unconstrained ones default to the signature's base
//! type.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kernel::normalize::{beta_eta_normalize, Ctx};
use crate::kernel::term::{Expr, Head, Term};
use crate::kernel::types::{Signature, Type};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lambda,
    Ident(String),
    Colon,
    Dot,
    Comma,
    LParen,
    RParen,
    Arrow,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let ident_char = |c: char| c.is_alphanumeric() || c == '_' || c == '\'' || c == '′';
    while i < chars.len() {
        let (off, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '\\' | 'λ' => {
                out.push((Tok::Lambda, off));
                i += 1;
            }
            ':' => {
                out.push((Tok::Colon, off));
                i += 1;
            }
            '.' => {
                out.push((Tok::Dot, off));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, off));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, off));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, off));
                i += 1;
            }
            '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                out.push((Tok::Arrow, off));
                i += 2;
            }
            '→' => {
                out.push((Tok::Arrow, off));
                i += 1;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while i < chars.len() && ident_char(chars[i].1) {
                    name.push(chars[i].1);
                    i += 1;
                }
                // canonical constants: `c_(a->a)` is a single name
                if name == "c_" && chars.get(i).map(|p| p.1) == Some('(') {
                    let mut depth = 0usize;
                    while i < chars.len() {
                        let ch = chars[i].1;
                        name.push(ch);
                        i += 1;
                        match ch {
                            '(' => depth += 1,
                            ')' => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                    }
                    if depth != 0 {
                        return Err(Error::Syntax {
                            offset: off,
                            message: "unbalanced canonical constant name".into(),
                        });
                    }
                    name.retain(|c| !c.is_whitespace());
                }
                out.push((Tok::Ident(name), off));
            }
            _ => {
                return Err(Error::Syntax {
                    offset: off,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

#[derive(Debug)]
enum Surf {
    Ident(String, usize),
    Lam(String, Type, Box<Surf>, usize),
    App(Box<Surf>, Vec<Surf>, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        match self.toks.get(self.pos) {
            Some((Tok::Ident(n), off)) => {
                let r = (n.clone(), *off);
                self.pos += 1;
                Ok(r)
            }
            _ => self.error("expected identifier"),
        }
    }

    fn ty(&mut self) -> Result<Type> {
        let lhs = match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                t
            }
            Some(Tok::Ident(_)) => Type::base(self.ident()?.0),
            _ => return self.error("expected a type"),
        };
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.ty()?;
            Ok(Type::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn term(&mut self) -> Result<Surf> {
        if self.peek() == Some(&Tok::Lambda) {
            return self.lambda();
        }
        let start = self.offset();
        let head = self.atom()?;
        let mut args = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) | Some(Tok::LParen) => args.push(self.atom()?),
                Some(Tok::Lambda) => {
                    args.push(self.lambda()?);
                    break;
                }
                _ => break,
            }
        }
        if args.is_empty() {
            Ok(head)
        } else {
            Ok(Surf::App(Box::new(head), args, start))
        }
    }

    fn lambda(&mut self) -> Result<Surf> {
        let off = self.offset();
        self.expect(Tok::Lambda, "`\\`")?;
        let (var, var_off) = self.ident()?;
        if var.starts_with(|c: char| c.is_uppercase()) {
            return Err(Error::Syntax {
                offset: var_off,
                message: format!("binder `{var}` must not start with an uppercase letter"),
            });
        }
        self.expect(Tok::Colon, "`:`")?;
        let ty = self.ty()?;
        self.expect(Tok::Dot, "`.`")?;
        let body = self.term()?;
        Ok(Surf::Lam(var, ty, Box::new(body), off))
    }

    fn atom(&mut self) -> Result<Surf> {
        let start = self.offset();
        let mut head = match self.peek() {
            Some(Tok::Ident(_)) => {
                let (n, off) = self.ident()?;
                Surf::Ident(n, off)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                t
            }
            _ => return self.error("expected a term"),
        };
        // call syntax binds tighter than juxtaposition
        while self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let mut args = vec![self.term()?];
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`)` or `,`")?;
            head = Surf::App(Box::new(head), args, start);
        }
        Ok(head)
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

pub fn parse_type(text: &str) -> Result<Type> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum IType {
    Meta(usize),
    Base(String),
    Arrow(Box<IType>, Box<IType>),
}

impl IType {
    fn from_type(t: &Type) -> IType {
        match t {
            Type::Base(n) => IType::Base(n.clone()),
            Type::Arrow(a, b) => {
                IType::Arrow(Box::new(IType::from_type(a)), Box::new(IType::from_type(b)))
            }
        }
    }
}

struct Infer<'a> {
    sig: &'a Signature,
    metas: Vec<Option<IType>>,
    free: BTreeMap<String, IType>,
}

impl Infer<'_> {
    fn fresh(&mut self) -> IType {
        self.metas.push(None);
        IType::Meta(self.metas.len() - 1)
    }

    fn resolve(&self, t: &IType) -> IType {
        match t {
            IType::Meta(m) => match &self.metas[*m] {
                Some(u) => self.resolve(u),
                None => t.clone(),
            },
            IType::Base(_) => t.clone(),
            IType::Arrow(a, b) => {
                IType::Arrow(Box::new(self.resolve(a)), Box::new(self.resolve(b)))
            }
        }
    }

    fn occurs(&self, m: usize, t: &IType) -> bool {
        match self.resolve(t) {
            IType::Meta(n) => n == m,
            IType::Base(_) => false,
            IType::Arrow(a, b) => self.occurs(m, &a) || self.occurs(m, &b),
        }
    }

    fn unify(&mut self, a: &IType, b: &IType) -> bool {
        let (a, b) = (self.resolve(a), self.resolve(b));
        match (&a, &b) {
            (IType::Meta(m), IType::Meta(n)) if m == n => true,
            (IType::Meta(m), t) | (t, IType::Meta(m)) => {
                if self.occurs(*m, t) {
                    return false;
                }
                self.metas[*m] = Some(t.clone());
                true
            }
            (IType::Base(x), IType::Base(y)) => x == y,
            (IType::Arrow(a1, b1), IType::Arrow(a2, b2)) => {
                self.unify(a1, a2) && self.unify(b1, b2)
            }
            _ => false,
        }
    }

    fn zonk(&self, t: &IType, default: &Type) -> Type {
        match self.resolve(t) {
            IType::Meta(_) => default.clone(),
            IType::Base(n) => Type::base(n),
            IType::Arrow(a, b) => Type::arrow(self.zonk(&a, default), self.zonk(&b, default)),
        }
    }

    fn show(&self, t: &IType) -> String {
        match self.resolve(t) {
            IType::Meta(m) => format!("?{m}"),
            IType::Base(n) => n,
            IType::Arrow(a, b) => {
                let l = self.show(&a);
                if matches!(self.resolve(&a), IType::Arrow(..)) {
                    format!("({l})->{}", self.show(&b))
                } else {
                    format!("{l}->{}", self.show(&b))
                }
            }
        }
    }

    fn infer(&mut self, s: &Surf, scope: &mut Vec<(String, Type)>) -> Result<(Expr, IType)> {
        match s {
            Surf::Ident(n, off) => {
                if let Some((_, t)) = scope.iter().rev().find(|(m, _)| m == n) {
                    return Ok((Expr::bound(n.clone()), IType::from_type(t)));
                }
                if n.starts_with(|c: char| c.is_uppercase()) {
                    let t = match self.free.get(n) {
                        Some(t) => t.clone(),
                        None => {
                            let t = self.fresh();
                            self.free.insert(n.clone(), t.clone());
                            t
                        }
                    };
                    return Ok((Expr::free(n.clone()), t));
                }
                match self.sig.constant_type(n) {
                    Some(t) => Ok((Expr::constant(n.clone()), IType::from_type(&t))),
                    None => Err(Error::UnknownIdentifier {
                        name: n.clone(),
                        offset: *off,
                    }),
                }
            }
            Surf::Lam(var, ty, body, _) => {
                scope.push((var.clone(), ty.clone()));
                let r = self.infer(body, scope);
                scope.pop();
                let (b, tb) = r?;
                Ok((
                    Expr::lam(var.clone(), ty.clone(), b),
                    IType::Arrow(Box::new(IType::from_type(ty)), Box::new(tb)),
                ))
            }
            Surf::App(f, args, off) => {
                let (mut e, mut tf) = self.infer(f, scope)?;
                let head_name = match f.as_ref() {
                    Surf::Ident(n, _) => n.clone(),
                    _ => "term".to_string(),
                };
                for a in args {
                    let (ea, ta) = self.infer(a, scope)?;
                    match self.resolve(&tf) {
                        IType::Base(_) => {
                            return Err(Error::ArityOverflow {
                                head: head_name,
                                ty: self.show(&tf),
                                given: args.len(),
                                offset: Some(*off),
                            })
                        }
                        IType::Arrow(dom, cod) => {
                            if !self.unify(&dom, &ta) {
                                return Err(Error::TypeMismatch {
                                    expected: self.show(&dom),
                                    found: self.show(&ta),
                                    offset: Some(arg_offset(a).unwrap_or(*off)),
                                });
                            }
                            tf = *cod;
                        }
                        IType::Meta(_) => {
                            let r = self.fresh();
                            let arrow = IType::Arrow(Box::new(ta.clone()), Box::new(r.clone()));
                            if !self.unify(&tf, &arrow) {
                                return Err(Error::TypeMismatch {
                                    expected: self.show(&tf),
                                    found: self.show(&arrow),
                                    offset: Some(*off),
                                });
                            }
                            tf = r;
                        }
                    }
                    e = Expr::app(e, ea);
                }
                Ok((e, tf))
            }
        }
    }
}

fn arg_offset(s: &Surf) -> Option<usize> {
    match s {
        Surf::Ident(_, o) | Surf::Lam(_, _, _, o) | Surf::App(_, _, o) => Some(*o),
    }
}

/// Parses and type-checks an expression without normalizing it. Returns the
/// expression and the inferred free-variable context.
pub fn parse_expr(
    text: &str,
    sig: &Signature,
    free: &BTreeMap<String, Type>,
) -> Result<(Expr, BTreeMap<String, Type>)> {
    let mut p = Parser::new(text)?;
    let surf = p.term()?;
    p.finish()?;
    let mut inf = Infer {
        sig,
        metas: Vec::new(),
        free: BTreeMap::new(),
    };
    for (n, t) in sig.variables().iter().chain(free.iter()) {
        inf.free.insert(n.clone(), IType::from_type(t));
    }
    let (expr, _) = inf.infer(&surf, &mut Vec::new())?;
    let default = sig.default_base();
    let mut ctx = BTreeMap::new();
    let mut used = Vec::new();
    collect_free_names(&expr, &mut used);
    for n in used {
        let t = inf.zonk(&inf.free[&n], &default);
        ctx.insert(n, t);
    }
    Ok((expr, ctx))
}

fn collect_free_names(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Leaf(Head::Free(n)) => {
            if !out.contains(n) {
                out.push(n.clone());
            }
        }
        Expr::Leaf(_) => {}
        Expr::Abs { body, .. } => collect_free_names(body, out),
        Expr::App(f, a) => {
            collect_free_names(f, out);
            collect_free_names(a, out);
        }
    }
}

fn surf_from_expr(e: &Expr) -> Surf {
    match e {
        Expr::Leaf(h) => Surf::Ident(h.name().to_string(), 0),
        Expr::Abs { var, ty, body } => {
            Surf::Lam(var.clone(), ty.clone(), Box::new(surf_from_expr(body)), 0)
        }
        Expr::App(f, a) => Surf::App(Box::new(surf_from_expr(f)), vec![surf_from_expr(a)], 0),
    }
}

/// Type-checks an expression built outside the parser (free-variable types
/// are inferred as for text) and normalizes it. Leaf kinds must agree with
/// the naming convention.
pub fn elaborate(expr: &Expr, sig: &Signature, free: &BTreeMap<String, Type>) -> Result<Term> {
    fn check(e: &Expr, scope: &mut Vec<String>) -> Result<()> {
        match e {
            Expr::Leaf(h) => {
                let n = h.name();
                let ok = match h {
                    Head::Bound(_) => scope.iter().any(|m| m == n),
                    Head::Free(_) => n.starts_with(|c: char| c.is_uppercase()),
                    Head::Const(_) => {
                        !scope.iter().any(|m| m == n) && !n.starts_with(|c: char| c.is_uppercase())
                    }
                };
                if ok {
                    Ok(())
                } else {
                    Err(Error::Syntax {
                        offset: 0,
                        message: format!("leaf `{n}` has the wrong kind"),
                    })
                }
            }
            Expr::Abs { var, body, .. } => {
                scope.push(var.clone());
                let r = check(body, scope);
                scope.pop();
                r
            }
            Expr::App(f, a) => {
                check(f, scope)?;
                check(a, scope)
            }
        }
    }
    check(expr, &mut Vec::new())?;
    let mut inf = Infer {
        sig,
        metas: Vec::new(),
        free: BTreeMap::new(),
    };
    for (n, t) in sig.variables().iter().chain(free.iter()) {
        inf.free.insert(n.clone(), IType::from_type(t));
    }
    let (expr, _) = inf.infer(&surf_from_expr(expr), &mut Vec::new())?;
    let default = sig.default_base();
    let mut used = Vec::new();
    collect_free_names(&expr, &mut used);
    let ctx: BTreeMap<String, Type> = used
        .into_iter()
        .map(|n| {
            let t = inf.zonk(&inf.free[&n], &default);
            (n, t)
        })
        .collect();
    beta_eta_normalize(
        &expr,
        Ctx {
            bound: &[],
            free: &ctx,
            sig,
        },
    )
}

/// Parses a term and returns its η-long β-normal form.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    parse_term_with(text, sig, &BTreeMap::new())
}

/// As [`parse_term`], with known free-variable types.
pub fn parse_term_with(text: &str, sig: &Signature, free: &BTreeMap<String, Type>) -> Result<Term> {
    let (expr, ctx) = parse_expr(text, sig, free)?;
    beta_eta_normalize(
        &expr,
        Ctx {
            bound: &[],
            free: &ctx,
            sig,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_canonical_constant_names() {
        let toks = lex("c_(a->a)(x)").unwrap();
        assert_eq!(toks[0].0, Tok::Ident("c_(a->a)".into()));
        assert_eq!(toks[1].0, Tok::LParen);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let sig = Signature::builtin();
        match parse_term("\\x:a f(x)", &sig) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse_term("\\x:a. g(x)", &sig) {
            Err(Error::UnknownIdentifier { name, offset }) => {
                assert_eq!(name, "g");
                assert_eq!(offset, 6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn type_errors() {
        let sig = Signature::builtin();
        assert!(matches!(
            parse_term("a(a)", &sig),
            Err(Error::ArityOverflow { .. })
        ));
        assert!(matches!(
            parse_term("f(\\x:a. x)", &sig),
            Err(Error::TypeMismatch { .. })
        ));
        assert!(matches!(
            parse_term("\\X:a. X", &sig),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn free_variable_types_are_inferred() {
        let sig = Signature::builtin();
        let (_, ctx) = parse_expr("\\x:a.\\y:a. f(Z(x,y))", &sig, &BTreeMap::new()).unwrap();
        assert_eq!(ctx["Z"], "a->a->a".parse().unwrap());
    }
}
