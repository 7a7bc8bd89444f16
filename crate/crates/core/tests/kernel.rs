mod common;

use std::collections::BTreeMap;

use common::{oracle_normal, term, to_db};
use lambda_au::kernel::{
    alpha_eq, apply_subst, beta_eta_normalize, compose, eta_reduce, free_vars, occ, parse_expr,
    parse_term, parse_type, positions, replace_at, subterm_at, term_from_json, term_to_json, Ctx,
    Head, Position, Signature, Substitution, Type,
};
use lambda_au::Error;

fn sig() -> Signature {
    Signature::builtin()
        .with_constant("g", parse_type("a -> a -> a").unwrap())
        .with_constant("k", parse_type("(a -> a) -> a").unwrap())
}

#[test]
fn types_parse_right_associative() {
    let t = parse_type("a -> (a -> a) -> a").unwrap();
    assert_eq!(t.arity(), 2);
    assert_eq!(t.args()[1], &Type::arrow(Type::base("a"), Type::base("a")));
    assert_eq!(t.to_string(), "a->(a->a)->a");
    assert!(parse_type("a -> ").is_err());
}

#[test]
fn normal_forms_are_eta_long() {
    let s = sig();
    let t = term("k f", &s);
    assert_eq!(t.to_string(), "k(\\z:a. f(z))");
    let t = term("\\x:a->a. k x", &s);
    assert!(alpha_eq(&t, &term("\\u:a->a. k(\\v:a. u(v))", &s)));
    let t = term("(\\h:a->a->a. h a) g", &s);
    assert!(alpha_eq(&t, &term("\\y:a. g(a, y)", &s)));
}

#[test]
fn beta_redexes_are_contracted() {
    let s = sig();
    let t = term("\\x:a.\\y:a. f((\\w1:a.\\w2:a. w1) x y)", &s);
    assert!(alpha_eq(&t, &term("\\x:a.\\y:a. f(x)", &s)));
    let t = term("(\\p:a->a. \\q:a. p (p q)) (\\z:a. g(z, z))", &s);
    assert!(alpha_eq(&t, &term("\\q:a. g(g(q,q), g(q,q))", &s)));
}

#[test]
fn matches_the_nameless_oracle() {
    let s = sig();
    let inputs = [
        "(\\p:a->a. \\q:a. p (p q)) (\\z:a. g(z, z))",
        "\\x:a.\\y:a. (\\u:a.\\v:a. g(v, u)) y x",
        "(\\h:(a->a)->a. h f) k",
        "\\x:a. (\\y:a. \\x:a. g(x, y)) x a",
    ];
    for text in inputs {
        let (e, free) = parse_expr(text, &s, &BTreeMap::new()).unwrap();
        let ctx = Ctx {
            bound: &[],
            free: &free,
            sig: &s,
        };
        let t = beta_eta_normalize(&e, ctx).unwrap();
        assert_eq!(oracle_normal(&eta_reduce(&t)), oracle_normal(&e), "{text}");
    }
}

#[test]
fn alpha_equivalence_ignores_binder_names_only() {
    let s = sig();
    assert!(alpha_eq(
        &term("\\x:a.\\y:a. g(x,y)", &s),
        &term("\\y:a.\\x:a. g(y,x)", &s)
    ));
    assert!(!alpha_eq(
        &term("\\x:a.\\y:a. g(x,y)", &s),
        &term("\\x:a.\\y:a. g(y,x)", &s)
    ));
    assert!(!alpha_eq(
        &term("\\x:a. Z(x)", &s),
        &term("\\x:a. W(x)", &s)
    ));
}

#[test]
fn substitution_avoids_capture() {
    let s = sig();
    let g = term("\\x:a.\\y:a. Z(x,y)", &s);
    let sub = Substitution::new().with("Z", term("\\y:a.\\x:a. g(y,x)", &s));
    let r = apply_subst(&g, &sub).unwrap();
    assert_eq!(
        to_db(&eta_reduce(&r)),
        to_db(&eta_reduce(&term("\\u:a.\\v:a. g(u,v)", &s)))
    );

    let g = term("\\x:a. W(\\y:a. Z(x, y))", &s);
    let sub = Substitution::new().with("Z", term("\\x:a.\\y:a. g(y, x)", &s));
    let r = apply_subst(&g, &sub).unwrap();
    assert!(alpha_eq(&r, &term("\\u:a. W(\\v:a. g(v, u))", &s)));
}

#[test]
fn substitution_checks_types() {
    let s = sig();
    let g = term("\\x:a. Z(x)", &s);
    let bad = Substitution::new().with("Z", term("a", &s));
    assert!(apply_subst(&g, &bad).is_err());
}

#[test]
fn composition_applies_in_order() {
    let s = sig();
    let g = term("\\x:a. Z(x)", &s);
    let s1 = Substitution::new().with("Z", term("\\w:a. W(f(w))", &s));
    let s2 = Substitution::new().with("W", term("\\w:a. g(w, a)", &s));
    let both = compose(&s1, &s2).unwrap();
    let step = apply_subst(&apply_subst(&g, &s1).unwrap(), &s2).unwrap();
    assert!(alpha_eq(&apply_subst(&g, &both).unwrap(), &step));
    assert!(alpha_eq(&step, &term("\\x:a. g(f(x), a)", &s)));
}

#[test]
fn positions_follow_the_spine() {
    let s = sig();
    let t = term("\\x:a.\\y:a. f(Z(x,y))", &s);
    let p: Position = "1.1.1.2".parse().unwrap();
    assert_eq!(subterm_at(&t, &p).unwrap().to_string(), "y");
    assert!(positions(&t).contains(&p));
    assert!(subterm_at(&t, &"1.1.2".parse().unwrap()).is_err());
    let r = replace_at(&t, &p, term("f(a)", &s)).unwrap();
    assert!(alpha_eq(&r, &term("\\x:a.\\y:a. f(Z(x,f(a)))", &s)));
    assert!(matches!(
        replace_at(&t, &p, term("\\x:a. x", &s)),
        Err(Error::TypeMismatch { .. })
    ));
}

#[test]
fn free_variables_get_inferred_types() {
    let s = sig();
    let t = term("\\x:a.\\y:a. Z(W(x), y)", &s);
    let fv = free_vars(&t);
    assert_eq!(fv["Z"], parse_type("a -> a -> a").unwrap());
    assert_eq!(fv["W"], parse_type("a -> a").unwrap());
    assert_eq!(occ(&Head::Free("Z".into()), &t), 1);
}

#[test]
fn parser_reports_errors_with_offsets() {
    let s = sig();
    assert!(matches!(
        parse_term("\\x:a. f(x", &s),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(
        parse_term("\\x:a. q(x)", &s),
        Err(Error::UnknownIdentifier { .. })
    ));
    assert!(matches!(
        parse_term("f(a, a)", &s),
        Err(Error::ArityOverflow { .. })
    ));
    assert!(matches!(
        parse_term("\\x:a->a. f x", &s),
        Err(Error::TypeMismatch { .. })
    ));
}

#[test]
fn printing_round_trips() {
    let s = sig();
    for text in [
        "\\x:a.\\y:a. f(Z(x,y))",
        "k(\\z:a. g(z, a))",
        "\\x:a->a. Z(\\z:a. x(z))",
    ] {
        let t = term(text, &s);
        assert_eq!(term(&t.to_string(), &s), t);
        let free = free_vars(&t);
        let back = term_from_json(&term_to_json(&t), &s, &free).unwrap();
        assert_eq!(back, t);
    }
}
