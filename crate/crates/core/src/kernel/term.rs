use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::types::Type;

/// The head of a spine. The three name spaces never mix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head {
    Bound(String),
    Free(String),
    Const(String),
}

impl Head {
    pub fn name(&self) -> &str {
        match self {
            Head::Bound(n) | Head::Free(n) | Head::Const(n) => n,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Head::Free(_))
    }
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A λ-term in η-long β-normal spine form.
///
/// Every node caches its type. Values are only produced by the normalizer,
/// the parser, or by operations that preserve normal form, so every spine is
/// fully applied and of base type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Abs {
        var: String,
        var_ty: Type,
        body: Box<Term>,
        ty: Type,
    },
    App {
        head: Head,
        args: Vec<Term>,
        ty: Type,
    },
}

/// Result of [`head_of`]: the binder marker or a spine head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeadOrAbs {
    Abs,
    Head(Head),
}

impl Term {
    pub fn abs(var: impl Into<String>, var_ty: Type, body: Term) -> Term {
        let ty = Type::arrow(var_ty.clone(), body.ty().clone());
        Term::Abs {
            var: var.into(),
            var_ty,
            body: Box::new(body),
            ty,
        }
    }

    /// Wraps `body` in binders, outermost first.
    pub fn abs_many(binders: &[(String, Type)], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |acc, (v, t)| Term::abs(v.clone(), t.clone(), acc))
    }

    pub fn app(head: Head, args: Vec<Term>, ty: Type) -> Term {
        Term::App { head, args, ty }
    }

    pub fn ty(&self) -> &Type {
        match self {
            Term::Abs { ty, .. } | Term::App { ty, .. } => ty,
        }
    }

    /// Type of the head of a spine (argument types followed by the spine type).
    pub fn head_type(&self) -> Option<Type> {
        match self {
            Term::App { args, ty, .. } => {
                let tys: Vec<Type> = args.iter().map(|a| a.ty().clone()).collect();
                Some(Type::from_parts(tys.iter(), ty.clone()))
            }
            Term::Abs { .. } => None,
        }
    }

    pub fn head(&self) -> Option<&Head> {
        match self {
            Term::App { head, .. } => Some(head),
            Term::Abs { .. } => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App { args, .. } => args,
            Term::Abs { .. } => &[],
        }
    }

    /// Splits off the leading binders.
    pub fn strip_binders(&self) -> (Vec<(String, Type)>, &Term) {
        let mut binders = Vec::new();
        let mut cur = self;
        while let Term::Abs {
            var, var_ty, body, ..
        } = cur
        {
            binders.push((var.clone(), var_ty.clone()));
            cur = body;
        }
        (binders, cur)
    }

    pub fn is_closed(&self) -> bool {
        free_vars(self).is_empty()
    }

    /// Number of spine nodes plus binders.
    pub fn size(&self) -> usize {
        match self {
            Term::Abs { body, .. } => 1 + body.size(),
            Term::App { args, .. } => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Renames binders to `_0`, `_1`, … by depth, so that α-equivalent
    /// terms become literally equal.
    pub fn canonical(&self) -> Term {
        fn go(t: &Term, scope: &mut Vec<(String, String)>) -> Term {
            match t {
                Term::Abs {
                    var,
                    var_ty,
                    body,
                    ty,
                } => {
                    let name = format!("_{}", scope.len());
                    scope.push((var.clone(), name.clone()));
                    let body = go(body, scope);
                    scope.pop();
                    Term::Abs {
                        var: name,
                        var_ty: var_ty.clone(),
                        body: Box::new(body),
                        ty: ty.clone(),
                    }
                }
                Term::App { head, args, ty } => {
                    let head = match head {
                        Head::Bound(n) => match scope.iter().rev().find(|(o, _)| o == n) {
                            Some((_, new)) => Head::Bound(new.clone()),
                            None => head.clone(),
                        },
                        _ => head.clone(),
                    };
                    Term::App {
                        head,
                        args: args.iter().map(|a| go(a, scope)).collect(),
                        ty: ty.clone(),
                    }
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn to_expr(&self) -> Expr {
        match self {
            Term::Abs {
                var, var_ty, body, ..
            } => Expr::Abs {
                var: var.clone(),
                ty: var_ty.clone(),
                body: Box::new(body.to_expr()),
            },
            Term::App { head, args, .. } => args.iter().fold(Expr::Leaf(head.clone()), |f, a| {
                Expr::App(Box::new(f), Box::new(a.to_expr()))
            }),
        }
    }

    /// Rewrites spine heads through `f`, keeping heads it maps to `None`.
    pub(crate) fn rename_heads(&self, f: &dyn Fn(&Head) -> Option<Head>) -> Term {
        match self {
            Term::Abs {
                var,
                var_ty,
                body,
                ty,
            } => Term::Abs {
                var: var.clone(),
                var_ty: var_ty.clone(),
                body: Box::new(body.rename_heads(f)),
                ty: ty.clone(),
            },
            Term::App { head, args, ty } => Term::App {
                head: f(head).unwrap_or_else(|| head.clone()),
                args: args.iter().map(|a| a.rename_heads(f)).collect(),
                ty: ty.clone(),
            },
        }
    }
}

/// A general, possibly non-normal λ-term. The parser produces these and
/// η-reduction returns them; [`crate::kernel::beta_eta_normalize`] turns
/// them back into [`Term`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Leaf(Head),
    Abs {
        var: String,
        ty: Type,
        body: Box<Expr>,
    },
    App(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn app(f: Expr, a: Expr) -> Expr {
        Expr::App(Box::new(f), Box::new(a))
    }

    pub fn lam(var: impl Into<String>, ty: Type, body: Expr) -> Expr {
        Expr::Abs {
            var: var.into(),
            ty,
            body: Box::new(body),
        }
    }

    pub fn bound(n: impl Into<String>) -> Expr {
        Expr::Leaf(Head::Bound(n.into()))
    }

    pub fn free(n: impl Into<String>) -> Expr {
        Expr::Leaf(Head::Free(n.into()))
    }

    pub fn constant(n: impl Into<String>) -> Expr {
        Expr::Leaf(Head::Const(n.into()))
    }

    /// Splits an application chain into its leftmost operator and arguments.
    pub fn spine(&self) -> (&Expr, Vec<&Expr>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Expr::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// Bound-variable names occurring free.
    pub fn free_bound_names(&self) -> BTreeSet<String> {
        fn go(e: &Expr, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match e {
                Expr::Leaf(Head::Bound(n)) => {
                    if !scope.contains(n) {
                        out.insert(n.clone());
                    }
                }
                Expr::Leaf(_) => {}
                Expr::Abs { var, body, .. } => {
                    scope.push(var.clone());
                    go(body, scope, out);
                    scope.pop();
                }
                Expr::App(f, a) => {
                    go(f, scope, out);
                    go(a, scope, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn alpha_eq(&self, other: &Expr) -> bool {
        fn go<'a>(l: &'a Expr, r: &'a Expr, ls: &mut Vec<&'a str>, rs: &mut Vec<&'a str>) -> bool {
            match (l, r) {
                (Expr::Leaf(Head::Bound(a)), Expr::Leaf(Head::Bound(b))) => {
                    bound_match(a, b, ls, rs)
                }
                (Expr::Leaf(a), Expr::Leaf(b)) => a == b,
                (
                    Expr::Abs {
                        var: v1,
                        ty: t1,
                        body: b1,
                    },
                    Expr::Abs {
                        var: v2,
                        ty: t2,
                        body: b2,
                    },
                ) => {
                    if t1 != t2 {
                        return false;
                    }
                    ls.push(v1);
                    rs.push(v2);
                    let ok = go(b1, b2, ls, rs);
                    ls.pop();
                    rs.pop();
                    ok
                }
                (Expr::App(f1, a1), Expr::App(f2, a2)) => go(f1, f2, ls, rs) && go(a1, a2, ls, rs),
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

fn bound_match(a: &str, b: &str, ls: &[&str], rs: &[&str]) -> bool {
    let ia = ls.iter().rposition(|n| *n == a);
    let ib = rs.iter().rposition(|n| *n == b);
    match (ia, ib) {
        (Some(i), Some(j)) => i == j,
        (None, None) => a == b,
        _ => false,
    }
}

/// True iff the terms differ only in the names of bound variables.
pub fn alpha_eq(t1: &Term, t2: &Term) -> bool {
    fn go<'a>(l: &'a Term, r: &'a Term, ls: &mut Vec<&'a str>, rs: &mut Vec<&'a str>) -> bool {
        match (l, r) {
            (
                Term::Abs {
                    var: v1,
                    var_ty: t1,
                    body: b1,
                    ..
                },
                Term::Abs {
                    var: v2,
                    var_ty: t2,
                    body: b2,
                    ..
                },
            ) => {
                if t1 != t2 {
                    return false;
                }
                ls.push(v1);
                rs.push(v2);
                let ok = go(b1, b2, ls, rs);
                ls.pop();
                rs.pop();
                ok
            }
            (
                Term::App {
                    head: h1,
                    args: a1,
                    ty: t1,
                },
                Term::App {
                    head: h2,
                    args: a2,
                    ty: t2,
                },
            ) => {
                let heads = match (h1, h2) {
                    (Head::Bound(a), Head::Bound(b)) => bound_match(a, b, ls, rs),
                    _ => h1 == h2,
                };
                heads
                    && t1 == t2
                    && a1.len() == a2.len()
                    && a1.iter().zip(a2).all(|(x, y)| go(x, y, ls, rs))
            }
            _ => false,
        }
    }
    go(t1, t2, &mut Vec::new(), &mut Vec::new())
}

/// A path of positive integers; the empty path is ε.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn child(&self, i: usize) -> Position {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    pub fn concat(&self, other: &Position) -> Position {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Position(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// `self < other`: other extends self by a nonempty suffix.
    pub fn is_strict_prefix_of(&self, other: &Position) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Position> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Position::root());
        }
        s.split('.')
            .map(|p| match p.parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(Error::InvalidPosition(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Position)
    }
}

/// All positions of `t`, in preorder.
pub fn positions(t: &Term) -> Vec<Position> {
    fn go(t: &Term, here: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position(here.clone()));
        match t {
            Term::Abs { body, .. } => {
                here.push(1);
                go(body, here, out);
                here.pop();
            }
            Term::App { args, .. } => {
                for (i, a) in args.iter().enumerate() {
                    here.push(i + 1);
                    go(a, here, out);
                    here.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

pub fn subterm_at<'t>(t: &'t Term, p: &Position) -> Result<&'t Term> {
    let mut cur = t;
    for &i in &p.0 {
        cur = match cur {
            Term::Abs { body, .. } if i == 1 => body,
            Term::App { args, .. } if i >= 1 && i <= args.len() => &args[i - 1],
            _ => return Err(Error::InvalidPosition(p.to_string())),
        };
    }
    Ok(cur)
}

/// Replaces the subterm at `p` by a term of the same type.
pub fn replace_at(t: &Term, p: &Position, new: Term) -> Result<Term> {
    fn go(t: &Term, path: &[usize], new: Term, whole: &Position) -> Result<Term> {
        let Some((&i, rest)) = path.split_first() else {
            if new.ty() != t.ty() {
                return Err(Error::mismatch(t.ty(), new.ty()));
            }
            return Ok(new);
        };
        match t {
            Term::Abs {
                var,
                var_ty,
                body,
                ty,
            } if i == 1 => Ok(Term::Abs {
                var: var.clone(),
                var_ty: var_ty.clone(),
                body: Box::new(go(body, rest, new, whole)?),
                ty: ty.clone(),
            }),
            Term::App { head, args, ty } if i >= 1 && i <= args.len() => {
                let mut args = args.clone();
                args[i - 1] = go(&args[i - 1], rest, new, whole)?;
                Ok(Term::App {
                    head: head.clone(),
                    args,
                    ty: ty.clone(),
                })
            }
            _ => Err(Error::InvalidPosition(whole.to_string())),
        }
    }
    go(t, &p.0, new, p)
}

pub fn head_of(e: &Expr) -> HeadOrAbs {
    match e.spine().0 {
        Expr::Leaf(h) => HeadOrAbs::Head(h.clone()),
        Expr::Abs { .. } => HeadOrAbs::Abs,
        Expr::App(..) => unreachable!("spine() strips applications"),
    }
}

pub fn term_head(t: &Term) -> HeadOrAbs {
    match t {
        Term::Abs { .. } => HeadOrAbs::Abs,
        Term::App { head, .. } => HeadOrAbs::Head(head.clone()),
    }
}

/// Occurrences of `h` as a spine head anywhere in `t`.
pub fn occ(h: &Head, t: &Term) -> usize {
    match t {
        Term::Abs { body, .. } => occ(h, body),
        Term::App { head, args, .. } => {
            usize::from(head == h) + args.iter().map(|a| occ(h, a)).sum::<usize>()
        }
    }
}

pub fn free_vars(t: &Term) -> BTreeMap<String, Type> {
    let mut out = BTreeMap::new();
    collect_free(t, &mut out);
    out
}

fn collect_free(t: &Term, out: &mut BTreeMap<String, Type>) {
    match t {
        Term::Abs { body, .. } => collect_free(body, out),
        Term::App { head, args, .. } => {
            if let Head::Free(n) = head {
                if !out.contains_key(n) {
                    out.insert(n.clone(), t.head_type().expect("spine"));
                }
            }
            for a in args {
                collect_free(a, out);
            }
        }
    }
}

/// Free variables in order of first occurrence (preorder).
pub fn free_vars_ordered(t: &Term) -> Vec<(String, Type)> {
    fn go(t: &Term, out: &mut Vec<(String, Type)>) {
        match t {
            Term::Abs { body, .. } => go(body, out),
            Term::App { head, args, .. } => {
                if let Head::Free(n) = head {
                    if !out.iter().any(|(m, _)| m == n) {
                        out.push((n.clone(), t.head_type().expect("spine")));
                    }
                }
                for a in args {
                    go(a, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut out);
    out
}

/// Names bound by some λ in `t`, with their types.
pub fn bound_vars(t: &Term) -> BTreeMap<String, Type> {
    fn go(t: &Term, out: &mut BTreeMap<String, Type>) {
        match t {
            Term::Abs {
                var, var_ty, body, ..
            } => {
                out.insert(var.clone(), var_ty.clone());
                go(body, out);
            }
            Term::App { args, .. } => args.iter().for_each(|a| go(a, out)),
        }
    }
    let mut out = BTreeMap::new();
    go(t, &mut out);
    out
}

/// Constant names occurring in `t`.
pub fn constants(t: &Term) -> BTreeMap<String, Type> {
    fn go(t: &Term, out: &mut BTreeMap<String, Type>) {
        match t {
            Term::Abs { body, .. } => go(body, out),
            Term::App { head, args, .. } => {
                if let Head::Const(n) = head {
                    out.entry(n.clone())
                        .or_insert_with(|| t.head_type().expect("spine"));
                }
                args.iter().for_each(|a| go(a, out));
            }
        }
    }
    let mut out = BTreeMap::new();
    go(t, &mut out);
    out
}

/// Bound-variable names occurring free in `t` (not under their binder).
pub fn free_bound_names(t: &Term) -> BTreeSet<String> {
    fn go(t: &Term, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match t {
            Term::Abs { var, body, .. } => {
                scope.push(var.clone());
                go(body, scope, out);
                scope.pop();
            }
            Term::App { head, args, .. } => {
                if let Head::Bound(n) = head {
                    if !scope.contains(n) {
                        out.insert(n.clone());
                    }
                }
                args.iter().for_each(|a| go(a, scope, out));
            }
        }
    }
    let mut out = BTreeSet::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Every bound-variable name mentioned in `t`, binding or occurring.
pub(crate) fn all_bound_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Abs { var, body, .. } => {
            out.insert(var.clone());
            all_bound_names(body, out);
        }
        Term::App { head, args, .. } => {
            if let Head::Bound(n) = head {
                out.insert(n.clone());
            }
            args.iter().for_each(|a| all_bound_names(a, out));
        }
    }
}

/// `hint`, then `hint1`, `hint2`, …: the first name not in `avoid`.
pub fn fresh_name(hint: &str, avoid: impl Fn(&str) -> bool) -> String {
    if !avoid(hint) {
        return hint.to_string();
    }
    (1..)
        .map(|i| format!("{hint}{i}"))
        .find(|n| !avoid(n))
        .expect("unbounded suffixes")
}

/// Deterministic fresh free-variable name; the type does not affect the choice.
pub fn fresh_free_var(hint: &str, avoid: &BTreeSet<String>, _ty: &Type) -> String {
    fresh_name(hint, |n| avoid.contains(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_follow_suffix_order() {
        let a = Type::base("a");
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(fresh_free_var("Y", &set(&["Z"]), &a), "Y");
        assert_eq!(fresh_free_var("Y", &set(&["Y", "Z"]), &a), "Y1");
        assert_eq!(fresh_free_var("H", &set(&["H", "H1"]), &a), "H2");
    }

    #[test]
    fn position_order_and_text() {
        let p: Position = "1.1".parse().unwrap();
        let q: Position = "1.1.2".parse().unwrap();
        assert!(p.is_strict_prefix_of(&q));
        assert!(!q.is_strict_prefix_of(&p));
        assert!(!p.is_strict_prefix_of(&p));
        assert_eq!(q.to_string(), "1.1.2");
        assert_eq!(Position::root().to_string(), "ε");
        assert!("1.0".parse::<Position>().is_err());
    }
}
