#![allow(dead_code)]

use lambda_au::au::GenWitness;
use lambda_au::kernel::{parse_term, Expr, Head, Signature, Substitution, Term};

pub fn term(text: &str, sig: &Signature) -> Term {
    parse_term(text, sig).unwrap_or_else(|e| panic!("`{text}`: {e}"))
}

pub fn subst(pairs: &[(&str, &str)], sig: &Signature) -> Substitution {
    let mut s = Substitution::new();
    for (v, t) in pairs {
        s.insert(*v, term(t, sig));
    }
    s
}

pub fn witness(g: &str, s1: &[(&str, &str)], s2: &[(&str, &str)], sig: &Signature) -> GenWitness {
    GenWitness::new(term(g, sig), subst(s1, sig), subst(s2, sig))
}

pub const P1: &str = "\\w1:a.\\w2:a. w1";
pub const P2: &str = "\\w1:a.\\w2:a. w2";

/// Nameless terms, kept deliberately separate from the library's
/// representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Db {
    Var(usize),
    Name(String),
    Lam(Box<Db>),
    App(Box<Db>, Box<Db>),
}

pub fn to_db(e: &Expr) -> Db {
    fn go(e: &Expr, env: &mut Vec<String>) -> Db {
        match e {
            Expr::Leaf(Head::Bound(x)) => match env.iter().rev().position(|y| y == x) {
                Some(i) => Db::Var(i),
                None => panic!("unbound {x}"),
            },
            Expr::Leaf(Head::Free(x)) => Db::Name(format!("?{x}")),
            Expr::Leaf(Head::Const(c)) => Db::Name(c.clone()),
            Expr::Abs { var, body, .. } => {
                env.push(var.clone());
                let b = go(body, env);
                env.pop();
                Db::Lam(Box::new(b))
            }
            Expr::App(m, a) => Db::App(Box::new(go(m, env)), Box::new(go(a, env))),
        }
    }
    go(e, &mut Vec::new())
}

fn shift(t: &Db, d: isize, cutoff: usize) -> Db {
    match t {
        Db::Var(i) if *i >= cutoff => Db::Var((*i as isize + d) as usize),
        Db::Var(_) | Db::Name(_) => t.clone(),
        Db::Lam(b) => Db::Lam(Box::new(shift(b, d, cutoff + 1))),
        Db::App(m, a) => Db::App(Box::new(shift(m, d, cutoff)), Box::new(shift(a, d, cutoff))),
    }
}

fn subst_db(t: &Db, j: usize, s: &Db) -> Db {
    match t {
        Db::Var(i) if *i == j => s.clone(),
        Db::Var(_) | Db::Name(_) => t.clone(),
        Db::Lam(b) => Db::Lam(Box::new(subst_db(b, j + 1, &shift(s, 1, 0)))),
        Db::App(m, a) => Db::App(Box::new(subst_db(m, j, s)), Box::new(subst_db(a, j, s))),
    }
}

fn beta(body: &Db, arg: &Db) -> Db {
    shift(&subst_db(body, 0, &shift(arg, 1, 0)), -1, 0)
}

/// Normal order β-normalization. Terminates on simply typed input.
pub fn beta_normal(t: &Db) -> Db {
    match t {
        Db::Var(_) | Db::Name(_) => t.clone(),
        Db::Lam(b) => Db::Lam(Box::new(beta_normal(b))),
        Db::App(m, a) => match beta_normal(m) {
            Db::Lam(b) => beta_normal(&beta(&b, a)),
            m2 => Db::App(Box::new(m2), Box::new(beta_normal(a))),
        },
    }
}

fn occurs(t: &Db, j: usize) -> bool {
    match t {
        Db::Var(i) => *i == j,
        Db::Name(_) => false,
        Db::Lam(b) => occurs(b, j + 1),
        Db::App(m, a) => occurs(m, j) || occurs(a, j),
    }
}

/// Bottom-up η-reduction of `λ. m 0` with `0 ∉ m`.
pub fn eta_short(t: &Db) -> Db {
    match t {
        Db::Var(_) | Db::Name(_) => t.clone(),
        Db::App(m, a) => Db::App(Box::new(eta_short(m)), Box::new(eta_short(a))),
        Db::Lam(b) => match eta_short(b) {
            Db::App(m, a) if *a == Db::Var(0) && !occurs(&m, 0) => shift(&m, -1, 0),
            b2 => Db::Lam(Box::new(b2)),
        },
    }
}

/// βη-normal form of an expression, as a nameless term.
pub fn oracle_normal(e: &Expr) -> Db {
    eta_short(&beta_normal(&to_db(e)))
}

/// The `Y`-skeleton of `λx.λy.f(Y(...))`: leaves are `x`/`y`, nodes are
/// occurrences of `Y`.
#[derive(Clone, Debug)]
pub enum Skel {
    Leaf,
    Node(Box<Skel>, Box<Skel>),
}

impl Skel {
    pub fn nodes(&self) -> u128 {
        match self {
            Skel::Leaf => 0,
            Skel::Node(a, b) => 1 + a.nodes() + b.nodes(),
        }
    }

    /// `Y(a,b)` becomes `Y(Y(a',b'),Y(a',b'))` where `a'`, `b'` are rewritten.
    pub fn mu(&self) -> Skel {
        match self {
            Skel::Leaf => Skel::Leaf,
            Skel::Node(a, b) => {
                let inner = Skel::Node(Box::new(a.mu()), Box::new(b.mu()));
                Skel::Node(Box::new(inner.clone()), Box::new(inner))
            }
        }
    }
}

/// Occurrence counts of `Y` in `g_0 .. g_steps`, by rewriting skeletons.
pub fn chain_counts(steps: usize) -> Vec<u128> {
    let mut t = Skel::Node(Box::new(Skel::Leaf), Box::new(Skel::Leaf));
    let mut out = vec![t.nodes()];
    for _ in 0..steps {
        t = t.mu();
        out.push(t.nodes());
    }
    out
}
