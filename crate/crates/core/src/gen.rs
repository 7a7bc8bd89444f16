//! Seeded random generators for tests and experiments: closed terms over a
//! small signature, β-expanded variants of normal terms, and decorated
//! generalizations of `λx.λy.f(x) ≜ λx.λy.f(y)` that carry removable
//! variables.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::au::{check_generalization, Aup, GenWitness};
use crate::kernel::{
    eta_reduce, infer_type, parse_term, Expr, Head, Signature, Substitution, Term, Type,
};
use crate::nullarity::witness_problem;

/// `a : a`, `b : a`, `f : a→a`, `g : a→a→a`, `h : (a→a)→a`.
pub fn small_signature() -> Signature {
    let a = Type::base("a");
    let aa = Type::arrow(a.clone(), a.clone());
    Signature::new()
        .with_constant("a", a.clone())
        .with_constant("b", a.clone())
        .with_constant("f", aa.clone())
        .with_constant("g", Type::from_parts([&a, &a], a.clone()))
        .with_constant("h", Type::arrow(aa, a))
}

pub struct TermGen {
    rng: ChaCha8Rng,
    sig: Signature,
    next_binder: usize,
}

impl TermGen {
    pub fn new(seed: u64, sig: Signature) -> TermGen {
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            sig,
            next_binder: 0,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// One of `a`, `a→a`, `a→a→a`, `(a→a)→a`.
    pub fn small_type(&mut self) -> Type {
        let a = Type::base("a");
        let aa = Type::arrow(a.clone(), a.clone());
        let choices = [
            a.clone(),
            aa.clone(),
            Type::from_parts([&a, &a], a.clone()),
            Type::arrow(aa, a),
        ];
        choices.choose(&mut self.rng).expect("non-empty").clone()
    }

    /// A closed η-long β-normal term of type `ty` whose spine nesting is at
    /// most `depth`.
    pub fn closed_term(&mut self, ty: &Type, depth: usize) -> Term {
        self.next_binder = 0;
        let mut scope = Vec::new();
        self.term(ty, depth, &mut scope)
    }

    fn term(&mut self, ty: &Type, depth: usize, scope: &mut Vec<(String, Type)>) -> Term {
        let mut binders = Vec::new();
        for arg in ty.args() {
            let name = ["x", "y", "z", "u", "v"]
                .get(self.next_binder)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("x{}", self.next_binder));
            self.next_binder += 1;
            binders.push((name, arg.clone()));
        }
        let depth_here = scope.len();
        scope.extend(binders.iter().cloned());
        let body = self.body(ty.target(), depth, scope);
        scope.truncate(depth_here);
        Term::abs_many(&binders, body)
    }

    fn body(&mut self, target: &Type, depth: usize, scope: &mut Vec<(String, Type)>) -> Term {
        let mut heads: Vec<(Head, Type)> = Vec::new();
        for (name, ty) in scope.iter() {
            if ty.target() == target && !shadowed(scope, name, ty) {
                heads.push((Head::Bound(name.clone()), ty.clone()));
            }
        }
        for (name, ty) in self.sig.constants() {
            if ty.target() == target {
                heads.push((Head::Const(name.clone()), ty.clone()));
            }
        }
        if depth == 0 {
            heads.retain(|(_, ty)| ty.arity() == 0);
        }
        let (head, hty) = heads.choose(&mut self.rng).expect("a nullary head").clone();
        let args = hty
            .args()
            .into_iter()
            .map(|a| self.term(a, depth.saturating_sub(1), scope))
            .collect();
        Term::app(head, args, target.clone())
    }

    /// Two closed terms of the same small type.
    pub fn aup(&mut self, depth: usize) -> Aup {
        let ty = self.small_type();
        let s = self.closed_term(&ty, depth);
        let t = self.closed_term(&ty, depth);
        Aup::new(s, t).expect("closed terms of one type")
    }

    /// An expression that normalizes to `t`: `t` is η-reduced and then some
    /// arguments `a` of applications `m a` are β-expanded to `(λz. m z) a`.
    pub fn redexify(&mut self, t: &Term) -> Expr {
        let mut scope = Vec::new();
        let e = eta_reduce(t);
        self.expand(&e, &mut scope)
    }

    fn expand(&mut self, e: &Expr, scope: &mut Vec<(String, Type)>) -> Expr {
        match e {
            Expr::Leaf(_) => e.clone(),
            Expr::Abs { var, ty, body } => {
                scope.push((var.clone(), ty.clone()));
                let b = self.expand(body, scope);
                scope.pop();
                Expr::lam(var.clone(), ty.clone(), b)
            }
            Expr::App(m, a) => {
                let m2 = self.expand(m, scope);
                let a2 = self.expand(a, scope);
                if !self.rng.gen_bool(0.4) {
                    return Expr::app(m2, a2);
                }
                let Ok(aty) = infer_type(a, scope, &Default::default(), &self.sig) else {
                    return Expr::app(m2, a2);
                };
                let mut taken = m2.free_bound_names();
                taken.extend(scope.iter().map(|(n, _)| n.clone()));
                let z = crate::kernel::fresh_name("r", |n| taken.contains(n));
                let body = Expr::app(m2, Expr::bound(z.clone()));
                Expr::app(Expr::lam(z, aty, body), a2)
            }
        }
    }
}

fn shadowed(scope: &[(String, Type)], name: &str, ty: &Type) -> bool {
    let last = scope.iter().rposition(|(n, _)| n == name);
    let this = scope.iter().rposition(|(n, t)| n == name && t == ty);
    last != this
}

/// A pattern-derived generalization of `λx.λy.f(x) ≜ λx.λy.f(y)` with
/// removable variables injected into `λx.λy.f(Z(x,y))`, and a witness pair.
#[derive(Clone, Debug)]
pub struct Decorated {
    pub witness: GenWitness,
    pub injected: usize,
}

#[derive(Clone)]
enum Arg {
    Var(&'static str),
    // `R(u)` with `R ↦ λw.w`.
    Wrap(String, Box<Arg>),
    // `V(u, x)` with `V ↦ λw1.λw2.w1`.
    Keep(String, Box<Arg>),
    // An argument `Z` never selects.
    Junk(String, Vec<&'static str>),
}

impl Arg {
    fn text(&self) -> String {
        match self {
            Arg::Var(v) => v.to_string(),
            Arg::Wrap(r, u) => format!("{r}({})", u.text()),
            Arg::Keep(v, u) => format!("{v}({},x)", u.text()),
            Arg::Junk(w, bs) if bs.is_empty() => w.clone(),
            Arg::Junk(w, bs) => format!("{w}({})", bs.join(",")),
        }
    }
}

/// Injects between one and four removable variables.
pub fn decorate(rng: &mut ChaCha8Rng) -> Decorated {
    let (sig, p) = witness_problem();
    let mut args = vec![Arg::Var("x"), Arg::Var("y")];
    let mut extra: Vec<(String, String)> = Vec::new();
    let mut fresh = 0;
    let mut name = |prefix: &str| {
        fresh += 1;
        format!("{prefix}{fresh}")
    };
    let rounds = rng.gen_range(1..=4);
    for _ in 0..rounds {
        let i = rng.gen_range(0..args.len());
        match rng.gen_range(0..4) {
            0 => {
                let r = match extra.iter().find(|(_, b)| b == "\\w:a. w") {
                    Some((r, _)) if rng.gen_bool(0.5) => r.clone(),
                    _ => {
                        let r = name("R");
                        extra.push((r.clone(), "\\w:a. w".into()));
                        r
                    }
                };
                args[i] = Arg::Wrap(r, Box::new(args[i].clone()));
            }
            1 => {
                let v = name("V");
                extra.push((v.clone(), "\\w1:a.\\w2:a. w1".into()));
                args[i] = Arg::Keep(v, Box::new(args[i].clone()));
            }
            _ => {
                let bs: Vec<&'static str> = match rng.gen_range(0..3) {
                    0 => vec![],
                    1 => vec![["x", "y"][rng.gen_range(0..2)]],
                    _ => vec!["x", "y"],
                };
                let at = rng.gen_range(0..=args.len());
                args.insert(at, Arg::Junk(name("W"), bs));
            }
        }
    }
    let text = format!(
        "\\x:a.\\y:a. f(Z({}))",
        args.iter().map(Arg::text).collect::<Vec<_>>().join(",")
    );
    let g = parse_term(&text, &sig).expect("well-typed decoration");
    let selects = |v: &str| {
        args.iter()
            .position(|a| root_var(a) == Some(v))
            .expect("x and y survive")
    };
    let proj = |k: usize| {
        let params: Vec<String> = (1..=args.len()).map(|i| format!("\\w{i}:a.")).collect();
        format!("{} w{}", params.concat(), k + 1)
    };
    let mut s1 = Substitution::new();
    let mut s2 = Substitution::new();
    let parse = |t: &str| parse_term(t, &sig).expect("closed binding");
    s1.insert("Z", parse(&proj(selects("x"))));
    s2.insert("Z", parse(&proj(selects("y"))));
    for (v, b) in &extra {
        s1.insert(v.clone(), parse(b));
        s2.insert(v.clone(), parse(b));
    }
    let witness = GenWitness::new(g, s1, s2);
    debug_assert!(check_generalization(&witness, &p).unwrap_or(false));
    Decorated {
        witness,
        injected: extra.len() + args.iter().filter(|a| matches!(a, Arg::Junk(..))).count(),
    }
}

fn root_var(a: &Arg) -> Option<&'static str> {
    match a {
        Arg::Var(v) => Some(v),
        Arg::Wrap(_, u) | Arg::Keep(_, u) => root_var(u),
        Arg::Junk(..) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{alpha_eq, beta_eta_normalize, Ctx};

    #[test]
    fn same_seed_same_terms() {
        let mut g1 = TermGen::new(7, small_signature());
        let mut g2 = TermGen::new(7, small_signature());
        for _ in 0..20 {
            let p1 = g1.aup(4);
            let p2 = g2.aup(4);
            assert!(alpha_eq(&p1.left, &p2.left) && alpha_eq(&p1.right, &p2.right));
        }
    }

    #[test]
    fn redexes_normalize_back() {
        let mut gen = TermGen::new(3, small_signature());
        for _ in 0..50 {
            let ty = gen.small_type();
            let t = gen.closed_term(&ty, 4);
            let e = gen.redexify(&t);
            let ctx = Ctx {
                bound: &[],
                free: &Default::default(),
                sig: gen.signature(),
            };
            assert!(alpha_eq(&beta_eta_normalize(&e, ctx).unwrap(), &t), "{t}");
        }
    }

    #[test]
    fn decorations_generalize() {
        let (_, p) = witness_problem();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let d = decorate(&mut rng);
            assert!(
                check_generalization(&d.witness, &p).unwrap(),
                "{}",
                d.witness
            );
        }
    }
}
