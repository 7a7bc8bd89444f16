use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::term::{
    all_bound_names, alpha_eq, free_bound_names, free_vars, fresh_name, Expr, Head, Term,
};
use crate::kernel::types::{Signature, Type};

/// η-long form of `head` applied to `args`, adding fresh binders for the
/// arguments `args` leaves out.
pub fn eta_expand(head: Head, head_ty: &Type, mut args: Vec<Term>) -> Term {
    let rest = head_ty
        .drop_args(args.len())
        .expect("head applied beyond its type")
        .clone();
    if rest.is_base() {
        return Term::app(head, args, rest);
    }
    let mut avoid = BTreeSet::new();
    for a in &args {
        avoid.extend(free_bound_names(a));
    }
    if let Head::Bound(n) = &head {
        avoid.insert(n.clone());
    }
    let mut binders = Vec::new();
    for ty in rest.args() {
        let name = fresh_name("z", |n| avoid.contains(n));
        avoid.insert(name.clone());
        args.push(eta_expand(Head::Bound(name.clone()), ty, Vec::new()));
        binders.push((name, ty.clone()));
    }
    let body = Term::app(head, args, rest.target().clone());
    Term::abs_many(&binders, body)
}

/// The η-long form of a variable or constant on its own.
pub fn eta_var(head: Head, ty: &Type) -> Term {
    eta_expand(head, ty, Vec::new())
}

/// Simultaneous replacement of heads, with hereditary β-reduction.
#[derive(Clone, Default)]
pub(crate) struct Env {
    map: HashMap<Head, Term>,
    fbv: BTreeSet<String>,
}

impl Env {
    pub(crate) fn new() -> Env {
        Env::default()
    }

    pub(crate) fn insert(&mut self, head: Head, value: Term) {
        self.fbv.extend(free_bound_names(&value));
        self.map.insert(head, value);
    }
}

pub(crate) fn subst(t: &Term, env: &Env) -> Term {
    if env.map.is_empty() {
        return t.clone();
    }
    if let Some(h) = eta_expansion_of(t) {
        if let Some(value) = env.map.get(&h) {
            return value.clone();
        }
    }
    match t {
        Term::Abs {
            var,
            var_ty,
            body,
            ty,
        } => {
            let key = Head::Bound(var.clone());
            let (var, body) = if env.fbv.contains(var) {
                let mut avoid = env.fbv.clone();
                all_bound_names(body, &mut avoid);
                let new = fresh_name(var, |n| avoid.contains(n));
                let mut inner = env.clone();
                inner.insert(key, eta_var(Head::Bound(new.clone()), var_ty));
                (new, subst(body, &inner))
            } else if env.map.contains_key(&key) {
                let mut inner = env.clone();
                inner.map.remove(&key);
                (var.clone(), subst(body, &inner))
            } else {
                (var.clone(), subst(body, env))
            };
            Term::Abs {
                var,
                var_ty: var_ty.clone(),
                body: Box::new(body),
                ty: ty.clone(),
            }
        }
        Term::App { head, args, ty } => {
            let args: Vec<Term> = args.iter().map(|a| subst(a, env)).collect();
            match env.map.get(head) {
                Some(value) => apply_term(value, args),
                None => Term::App {
                    head: head.clone(),
                    args,
                    ty: ty.clone(),
                },
            }
        }
    }
}

// `λȳ.h(ȳ)` with each argument itself an η-expanded binder.
fn eta_expansion_of(t: &Term) -> Option<Head> {
    let (binders, body) = t.strip_binders();
    if binders.is_empty() {
        return None;
    }
    let Term::App { head, args, .. } = body else {
        return None;
    };
    let names: BTreeSet<&str> = binders.iter().map(|(b, _)| b.as_str()).collect();
    if args.len() != binders.len()
        || names.len() != binders.len()
        || matches!(head, Head::Bound(h) if names.contains(h.as_str()))
    {
        return None;
    }
    for ((b, _), a) in binders.iter().zip(args) {
        let ok = match a {
            Term::App {
                head: Head::Bound(n),
                args,
                ..
            } => n == b && args.is_empty(),
            _ => eta_expansion_of(a) == Some(Head::Bound(b.clone())),
        };
        if !ok {
            return None;
        }
    }
    Some(head.clone())
}

/// β-normal form of `f` applied to `args`. `f` is η-long, so it has at
/// least as many leading binders as there are arguments.
pub(crate) fn apply_term(f: &Term, args: Vec<Term>) -> Term {
    if args.is_empty() {
        return f.clone();
    }
    let mut env = Env::new();
    let mut cur = f;
    for a in args {
        match cur {
            Term::Abs { var, body, .. } => {
                env.insert(Head::Bound(var.clone()), a);
                cur = body;
            }
            Term::App { .. } => panic!("applied a base-typed term"),
        }
    }
    subst(cur, &env)
}

/// Replaces bound variable `var` by `value` in `t`.
pub(crate) fn instantiate_bound(t: &Term, var: &str, value: Term) -> Term {
    let mut env = Env::new();
    env.insert(Head::Bound(var.to_string()), value);
    subst(t, &env)
}

/// Renames the outer binder of `t` (an abstraction body is expected) to
/// `new`; a no-op if the names agree.
pub(crate) fn rename_bound(body: &Term, old: &str, new: &str, ty: &Type) -> Term {
    if old == new {
        return body.clone();
    }
    instantiate_bound(body, old, eta_var(Head::Bound(new.to_string()), ty))
}

/// Typing contexts for [`infer_type`] and [`beta_eta_normalize`].
#[derive(Clone, Copy)]
pub struct Ctx<'a> {
    pub bound: &'a [(String, Type)],
    pub free: &'a BTreeMap<String, Type>,
    pub sig: &'a Signature,
}

/// Type of `e`; every leaf must be resolvable in the three contexts.
pub fn infer_type(
    e: &Expr,
    bound: &[(String, Type)],
    free: &BTreeMap<String, Type>,
    sig: &Signature,
) -> Result<Type> {
    let mut scope = bound.to_vec();
    infer(e, &mut scope, free, sig)
}

fn infer(
    e: &Expr,
    scope: &mut Vec<(String, Type)>,
    free: &BTreeMap<String, Type>,
    sig: &Signature,
) -> Result<Type> {
    match e {
        Expr::Leaf(h) => leaf_type(h, scope, free, sig),
        Expr::Abs { var, ty, body } => {
            scope.push((var.clone(), ty.clone()));
            let b = infer(body, scope, free, sig);
            scope.pop();
            Ok(Type::arrow(ty.clone(), b?))
        }
        Expr::App(f, a) => {
            let tf = infer(f, scope, free, sig)?;
            match tf {
                Type::Arrow(dom, cod) => {
                    let ta = infer(a, scope, free, sig)?;
                    if ta != *dom {
                        return Err(Error::mismatch(dom, ta));
                    }
                    Ok(cod.as_ref().clone())
                }
                Type::Base(_) => {
                    let (op, args) = e.spine();
                    let head = match op {
                        Expr::Leaf(h) => h.name().to_string(),
                        _ => "λ-term".to_string(),
                    };
                    let ty = infer(op, scope, free, sig)?;
                    Err(Error::ArityOverflow {
                        head,
                        ty: ty.to_string(),
                        given: args.len(),
                        offset: None,
                    })
                }
            }
        }
    }
}

fn leaf_type(
    h: &Head,
    scope: &[(String, Type)],
    free: &BTreeMap<String, Type>,
    sig: &Signature,
) -> Result<Type> {
    let found = match h {
        Head::Bound(n) => scope
            .iter()
            .rev()
            .find(|(m, _)| m == n)
            .map(|(_, t)| t.clone()),
        Head::Free(n) => free.get(n).cloned(),
        Head::Const(n) => sig.constant_type(n),
    };
    found.ok_or_else(|| Error::UnknownIdentifier {
        name: h.name().to_string(),
        offset: 0,
    })
}

/// η-long β-normal form of a well-typed expression.
pub fn beta_eta_normalize(e: &Expr, ctx: Ctx<'_>) -> Result<Term> {
    infer_type(e, ctx.bound, ctx.free, ctx.sig)?;
    let mut scope: Vec<(String, Term)> = ctx
        .bound
        .iter()
        .map(|(n, t)| (n.clone(), eta_var(Head::Bound(n.clone()), t)))
        .collect();
    Ok(norm(e, &mut scope, ctx))
}

fn norm(e: &Expr, scope: &mut Vec<(String, Term)>, ctx: Ctx<'_>) -> Term {
    match e {
        Expr::Leaf(Head::Bound(n)) => scope
            .iter()
            .rev()
            .find(|(m, _)| m == n)
            .map(|(_, v)| v.clone())
            .expect("checked by infer_type"),
        Expr::Leaf(h @ Head::Free(n)) => eta_var(h.clone(), &ctx.free[n]),
        Expr::Leaf(h @ Head::Const(n)) => {
            eta_var(h.clone(), &ctx.sig.constant_type(n).expect("checked"))
        }
        Expr::Abs { var, ty, body } => {
            let mut in_use = BTreeSet::new();
            for (_, v) in scope.iter() {
                in_use.extend(free_bound_names(v));
            }
            let name = fresh_name(var, |n| in_use.contains(n));
            scope.push((var.clone(), eta_var(Head::Bound(name.clone()), ty)));
            let body = norm(body, scope, ctx);
            scope.pop();
            Term::abs(name, ty.clone(), body)
        }
        Expr::App(f, a) => {
            let f = norm(f, scope, ctx);
            let a = norm(a, scope, ctx);
            apply_term(&f, vec![a])
        }
    }
}

/// Contracts every η-redex `λx. M x` with `x` not free in `M`.
pub fn eta_reduce(t: &Term) -> Expr {
    match t {
        Term::Abs {
            var, var_ty, body, ..
        } => {
            let b = eta_reduce(body);
            if let Expr::App(m, last) = &b {
                if let Expr::Leaf(Head::Bound(x)) = last.as_ref() {
                    if x == var && !m.free_bound_names().contains(var) {
                        return m.as_ref().clone();
                    }
                }
            }
            Expr::lam(var.clone(), var_ty.clone(), b)
        }
        Term::App { head, args, .. } => args
            .iter()
            .fold(Expr::Leaf(head.clone()), |f, a| Expr::app(f, eta_reduce(a))),
    }
}

/// Finite map from free variables to terms of the same type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Adds `var ↦ term`. Bindings of a variable to (the η-long form of)
    /// itself are dropped.
    pub fn insert(&mut self, var: impl Into<String>, term: Term) {
        let var = var.into();
        if is_identity_binding(&var, &term) {
            self.bindings.remove(&var);
        } else {
            self.bindings.insert(var, term);
        }
    }

    pub fn with(mut self, var: impl Into<String>, term: Term) -> Substitution {
        self.insert(var, term);
        self
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn remove(&mut self, var: &str) -> Option<Term> {
        self.bindings.remove(var)
    }

    pub fn contains(&self, var: &str) -> bool {
        self.bindings.contains_key(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.bindings.keys()
    }

    pub fn ranges(&self) -> impl Iterator<Item = &Term> {
        self.bindings.values()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// No range term has a free variable.
    pub fn is_ground(&self) -> bool {
        self.bindings.values().all(Term::is_closed)
    }

    /// Keeps only the bindings whose variable satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&str) -> bool) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn alpha_eq(&self, other: &Substitution) -> bool {
        self.len() == other.len()
            && self
                .bindings
                .iter()
                .all(|(k, v)| other.get(k).is_some_and(|w| alpha_eq(v, w)))
    }
}

fn is_identity_binding(var: &str, term: &Term) -> bool {
    let id = eta_var(Head::Free(var.to_string()), term.ty());
    alpha_eq(&id, term)
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} := {v}")?;
        }
        f.write_str("}")
    }
}

/// Simultaneous, capture-avoiding application of `sigma`, followed by
/// renormalization. Range terms are not themselves re-substituted.
pub fn apply_subst(t: &Term, sigma: &Substitution) -> Result<Term> {
    if sigma.is_empty() {
        return Ok(t.clone());
    }
    for (name, ty) in free_vars(t) {
        if let Some(r) = sigma.get(&name) {
            if *r.ty() != ty {
                return Err(Error::TypeMismatch {
                    expected: ty.to_string(),
                    found: r.ty().to_string(),
                    offset: None,
                });
            }
        }
    }
    let mut env = Env::new();
    for (k, v) in sigma.iter() {
        env.insert(Head::Free(k.clone()), v.clone());
    }
    Ok(subst(t, &env))
}

/// `σ` then `θ`: ranges of `σ` get `θ` applied, then `θ`'s own bindings are
/// added for variables outside `σ`'s domain.
pub fn compose(sigma: &Substitution, theta: &Substitution) -> Result<Substitution> {
    let mut out = Substitution::new();
    for (k, v) in sigma.iter() {
        out.insert(k.clone(), apply_subst(v, theta)?);
    }
    for (k, v) in theta.iter() {
        if !sigma.contains(k) {
            out.insert(k.clone(), v.clone());
        }
    }
    Ok(out)
}
