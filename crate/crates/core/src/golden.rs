//! The worked examples as a self-checking suite. Each case recomputes its
//! result with the library and compares it with the expected text modulo
//! α-renaming and renaming of free variables.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::au::{
    check_generalization, less_general, match_bounded, pattern_lgg, pattern_match, Aup, GenWitness,
    MatchOutcome,
};
use crate::kernel::{
    alpha_eq, apply_subst, beta_eta_normalize, eta_reduce, eta_var, free_vars, free_vars_ordered,
    occ, parse_expr, parse_term, parse_term_with, parse_type, subterm_at, Ctx, Expr, Head,
    Position, Signature, Substitution, Term, Type,
};
use crate::nullarity::{
    check_head_shape, generate_chain, is_representative, is_tight, lift, maximal_positions, mu,
    pseudo_pattern_lambda, pseudo_pattern_sp, refute_chain_step, tighten, witness_problem, CaseTag,
    FragmentTag, PseudoMode, TightStatus, TightVerdict,
};
use crate::superpattern::{is_superpattern, Violation};

/// Renames free variables to `%0`, `%1`, ... in order of first occurrence.
pub fn canonical_free_names(t: &Term) -> Term {
    let mut sigma = Substitution::new();
    for (i, (x, ty)) in free_vars_ordered(t).into_iter().enumerate() {
        sigma.insert(x, eta_var(Head::Free(format!("%{i}")), &ty));
    }
    apply_subst(t, &sigma).expect("renaming preserves types")
}

/// α-equivalence up to a consistent renaming of free variables.
pub fn equal_modulo_renaming(a: &Term, b: &Term) -> bool {
    alpha_eq(&canonical_free_names(a), &canonical_free_names(b))
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "ok  " } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct GoldenReport {
    pub cases: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl GoldenReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.cases.iter().filter(|c| c.passed).count(),
            "total": self.cases.len(),
            "elapsedMs": self.elapsed.as_millis() as u64,
            "cases": self.cases.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            writeln!(f, "{c}")?;
        }
        let passed = self.cases.iter().filter(|c| c.passed).count();
        write!(
            f,
            "{passed}/{} cases passed in {:?}",
            self.cases.len(),
            self.elapsed
        )
    }
}

type Outcome = std::result::Result<String, String>;
type Case = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn term(text: &str, sig: &Signature) -> std::result::Result<Term, String> {
    parse_term(text, sig).map_err(|e| format!("`{text}`: {e}"))
}

fn expect_term(got: &Term, want: &str, sig: &Signature) -> std::result::Result<(), String> {
    let want_t = term(want, sig)?;
    ensure(equal_modulo_renaming(got, &want_t), || {
        format!("got {got}, expected {want}")
    })
}

fn subst(pairs: &[(&str, &str)], sig: &Signature) -> std::result::Result<Substitution, String> {
    let mut s = Substitution::new();
    for (x, t) in pairs {
        s.insert(*x, term(t, sig)?);
    }
    Ok(s)
}

fn proj(i: usize) -> &'static str {
    ["\\w1:a.\\w2:a. w1", "\\w1:a.\\w2:a. w2"][i]
}

fn witness(
    g: &str,
    s1: &[(&str, &str)],
    s2: &[(&str, &str)],
    sig: &Signature,
) -> std::result::Result<GenWitness, String> {
    Ok(GenWitness::new(
        term(g, sig)?,
        subst(s1, sig)?,
        subst(s2, sig)?,
    ))
}

const TIGHT_G: &str = "\\x:a.\\y:a. f(Z(W(x,Z(f(a),a)),W(Z(a,f(a)),y)))";
const MAXIMAL_R: &str = "\\x:a.\\y:a. f(Z(\\w:a->a. x, x, \\w1:a->a.\\w2:a->a. y, f))";

fn eta_long() -> Outcome {
    let sig = Signature::new().with_constant("f", parse_type("(a->a)->a").unwrap());
    let t = term("\\x:a->a. f x", &sig)?;
    expect_term(&t, "\\x:a->a. f(\\y:a. x(y))", &sig)?;
    Ok(t.to_string())
}

fn eta_short() -> Outcome {
    let sig = Signature::new().with_constant("f", parse_type("(a->a)->a").unwrap());
    let t = term("\\x:a->a. f(\\y:a. x(y))", &sig)?;
    let Term::Abs { body, .. } = &t else {
        return Err(format!("{t} is not an abstraction"));
    };
    let short = eta_reduce(body);
    let want = Expr::app(Expr::constant("f"), Expr::bound("x"));
    ensure(short.alpha_eq(&want), || format!("got {short}"))?;
    Ok(format!("\\x:a->a. {short}"))
}

fn projections_recover() -> Outcome {
    let (sig, p) = witness_problem();
    let g = term("\\x:a.\\y:a. f(Z(x,y))", &sig)?;
    let mut out = Vec::new();
    for (i, side) in [&p.left, &p.right].into_iter().enumerate() {
        let r = apply_subst(&g, &subst(&[("Z", proj(i))], &sig)?).map_err(|e| e.to_string())?;
        ensure(alpha_eq(&r, side), || {
            format!("projection {} gave {r}", i + 1)
        })?;
        out.push(r.to_string());
    }
    ensure(!alpha_eq(&p.left, &p.right), || "s and t coincide".into())?;
    Ok(out.join(" and "))
}

fn lgg_running() -> Outcome {
    let (sig, p) = witness_problem();
    let w = pattern_lgg(&p);
    expect_term(&w.g, "\\x:a.\\y:a. f(Z(x,y))", &sig)?;
    let z = free_vars_ordered(&w.g)[0].0.clone();
    for (i, s) in [&w.sigma1, &w.sigma2].into_iter().enumerate() {
        let r = s.get(&z).ok_or("unbound")?;
        ensure(alpha_eq(r, &term(proj(i), &sig)?), || {
            format!("σ{} = {r}", i + 1)
        })?;
    }
    Ok(w.to_string().replace('\n', ";"))
}

fn lgg_top_maximal() -> Outcome {
    let a = parse_type("a").unwrap();
    let aa = parse_type("a->a").unwrap();
    let sig = Signature::new()
        .with_constant("f", aa.clone())
        .with_constant("g", aa.clone())
        .with_constant("h", aa)
        .with_constant("c", a);
    let p = Aup::new(term("\\x:a. f(g(x))", &sig)?, term("\\x:a. f(h(x))", &sig)?)
        .map_err(|e| e.to_string())?;
    let w = pattern_lgg(&p);
    expect_term(&w.g, "\\x:a. f(Y(x))", &sig)?;
    let y = free_vars_ordered(&w.g)[0].0.clone();
    ensure(
        alpha_eq(
            w.sigma1.get(&y).ok_or("unbound")?,
            &term("\\x:a. g(x)", &sig)?,
        ) && alpha_eq(
            w.sigma2.get(&y).ok_or("unbound")?,
            &term("\\x:a. h(x)", &sig)?,
        ),
        || format!("witnesses {w}"),
    )?;
    Ok(w.g.to_string())
}

fn nested_generalization() -> Outcome {
    let (sig, p) = witness_problem();
    let w = witness(
        "\\x:a.\\y:a. f(W(W(x,y),W(x,y)))",
        &[("W", proj(0))],
        &[("W", proj(1))],
        &sig,
    )?;
    ensure(
        check_generalization(&w, &p).map_err(|e| e.to_string())?,
        || "not a generalization".into(),
    )?;
    let lgg = term("\\x:a.\\y:a. f(Z(x,y))", &sig)?;
    match pattern_match(&lgg, &w.g).map_err(|e| e.to_string())? {
        MatchOutcome::Proven(s) => {
            let want = term("\\u:a.\\v:a. W(W(u,v),W(u,v))", &sig)?;
            ensure(alpha_eq(s.get("Z").ok_or("Z unbound")?, &want), || {
                format!("σ = {s}")
            })?;
            Ok(format!("{} ≤ {} by {s}", lgg, w.g))
        }
        other => Err(format!("pattern match: {other}")),
    }
}

fn strict_order() -> Outcome {
    let (sig, _) = witness_problem();
    let lo = term("\\x:a.\\y:a. f(R(x,y))", &sig)?;
    let hi = term("\\x:a.\\y:a. f(R(R(x,y),R(x,y)))", &sig)?;
    ensure(less_general(&lo, &hi, 8).is_proven(), || {
        "forward not proven".into()
    })?;
    let back = match_bounded(&hi, &lo, 3);
    ensure(!back.is_proven(), || format!("reverse proven: {back}"))?;
    let n = occ(&Head::Free("R".into()), &hi);
    ensure(n == 3, || format!("occ = {n}"))?;
    Ok(format!("reverse at fuel 3: {back}; occ(R) = {n}"))
}

fn superpattern_case(text: &str, want: Option<Violation>, sig: &Signature) -> Outcome {
    let t = term(text, sig)?;
    let r = is_superpattern(&t);
    match want {
        None => ensure(r.is_member, || format!("{t}: {r}"))?,
        Some(v) => ensure(
            !r.is_member && r.violations.iter().any(|(_, w)| *w == v),
            || format!("{t}: {r}"),
        )?,
    }
    Ok(r.to_string().replace('\n', ";"))
}

fn sp_sig() -> Signature {
    Signature::builtin()
}

fn tight_verdicts() -> Outcome {
    let (sig, p) = witness_problem();
    let mut out = Vec::new();
    for g in [
        "\\x:a.\\y:a. f(Z(x,y))",
        "\\x:a.\\y:a. f(Z(Z(x,y),Z(x,y)))",
        TIGHT_G,
    ] {
        let both = |i: usize| vec![("Z", proj(i)), ("W", proj(i))];
        let w = witness(g, &both(0), &both(1), &sig)?;
        let w = GenWitness::new(
            w.g.clone(),
            w.sigma1.restrict(|k| free_vars(&w.g).contains_key(k)),
            w.sigma2.restrict(|k| free_vars(&w.g).contains_key(k)),
        );
        let v = is_tight(&w, &p, FragmentTag::LambdaAll, 8);
        ensure(v == TightVerdict::Tight, || format!("{g}: {v:?}"))?;
        out.push(g);
    }
    Ok(format!("tight: {}", out.len()))
}

fn four_projections() -> Outcome {
    let (sig, p) = witness_problem();
    let g = term(TIGHT_G, &sig)?;
    let expected = [
        ("Z", 0, "\\x:a.\\y:a. f(W(x,f(a)))"),
        ("Z", 1, "\\x:a.\\y:a. f(W(f(a),y))"),
        ("W", 0, "\\x:a.\\y:a. f(Z(x,Z(a,f(a))))"),
        ("W", 1, "\\x:a.\\y:a. f(Z(Z(f(a),a),y))"),
    ];
    for (v, i, want) in expected {
        let r = apply_subst(&g, &subst(&[(v, proj(i))], &sig)?).map_err(|e| e.to_string())?;
        expect_term(&r, want, &sig)?;
        let l = less_general(&r, &p.left, 8);
        let rr = less_general(&r, &p.right, 8);
        ensure(l.is_refuted() || rr.is_refuted(), || {
            format!("{r} still generalizes: {l} / {rr}")
        })?;
    }
    Ok("all four results fail to generalize".into())
}

fn not_tight() -> Outcome {
    let (sig, p) = witness_problem();
    let w = witness(
        "\\x:a.\\y:a. f(Z(R(x),R(y)))",
        &[("Z", proj(0)), ("R", "\\w:a. w")],
        &[("Z", proj(1)), ("R", "\\w:a. w")],
        &sig,
    )?;
    match is_tight(&w, &p, FragmentTag::LambdaAll, 8) {
        TightVerdict::NotTight {
            var,
            binding,
            witness,
        } => {
            ensure(var == "R", || format!("rewrote {var}"))?;
            ensure(alpha_eq(&binding, &term("\\b1:a. b1", &sig)?), || {
                binding.to_string()
            })?;
            expect_term(&witness.g, "\\x:a.\\y:a. f(Z(x,y))", &sig)?;
        }
        v => return Err(format!("{v:?}")),
    }
    let w2 = witness(
        "\\x:a.\\y:a. f(Z(Z(x,y),Y(x,y)))",
        &[("Z", proj(0)), ("Y", proj(0))],
        &[("Z", proj(1)), ("Y", proj(1))],
        &sig,
    )?;
    let v = is_tight(&w2, &p, FragmentTag::LambdaAll, 8);
    ensure(matches!(v, TightVerdict::NotTight { .. }), || {
        format!("{v:?}")
    })?;
    let g2 = apply_subst(&w2.g, &subst(&[("Y", proj(1))], &sig)?).map_err(|e| e.to_string())?;
    ensure(
        less_general(&g2, &p.left, 8).is_proven() && less_general(&g2, &p.right, 8).is_proven(),
        || format!("{g2} does not generalize"),
    )?;
    Ok(format!("R ↦ λb1.b1; Y ↦ λb1.λb2.b2 gives {g2}"))
}

fn tighten_example() -> Outcome {
    let (sig, p) = witness_problem();
    let w = witness(
        "\\x:a.\\y:a. f(Z(R(x),R(y)))",
        &[("Z", proj(0)), ("R", "\\w:a. w")],
        &[("Z", proj(1)), ("R", "\\w:a. w")],
        &sig,
    )?;
    let t = tighten(&w, &p, FragmentTag::LambdaAll, &sig, 8).map_err(|e| e.to_string())?;
    ensure(t.status == TightStatus::Tight, || "not tight".into())?;
    expect_term(&t.witness.g, "\\x:a.\\y:a. f(Z(x,y))", &sig)?;
    let c =
        generate_chain(&p, &w, FragmentTag::LambdaAll, 1, &sig, 8).map_err(|e| e.to_string())?;
    expect_term(&c.tightened.g, "\\x:a.\\y:a. f(Z(x,y))", &sig)?;
    Ok(t.witness.g.to_string())
}

fn maximal_set() -> Outcome {
    let (sig, _) = witness_problem();
    let r = term(MAXIMAL_R, &sig)?;
    let got: Vec<String> = maximal_positions(&r, &sig)
        .map_err(|e| e.to_string())?
        .iter()
        .map(Position::to_string)
        .collect();
    ensure(got == ["1.1.1.1", "1.1.1.3", "1.1.1.4"], || {
        format!("{got:?}")
    })?;
    let rep = |s: &str| -> std::result::Result<bool, String> {
        let q: Position = s.parse().map_err(|e: crate::Error| e.to_string())?;
        Ok(is_representative(
            subterm_at(&r, &q).map_err(|e| e.to_string())?,
            &sig,
        ))
    };
    for q in ["1.1.1.1", "1.1.1.3", "1.1.1.3.1", "1.1.1.4"] {
        ensure(rep(q)?, || format!("{q} not representative"))?;
    }
    for q in ["1.1.1", "1.1.1.2"] {
        ensure(!rep(q)?, || format!("{q} representative"))?;
    }
    Ok(format!("{{{}}}", got.join(", ")))
}

fn lift_example() -> Outcome {
    let (sig, _) = witness_problem();
    let r = term(MAXIMAL_R, &sig)?;
    let l = lift(&r, &sig).map_err(|e| e.to_string())?;
    let free: BTreeMap<String, Type> = free_vars(&r)
        .into_iter()
        .chain(l.fresh.iter().map(|(h, ty, ..)| (h.clone(), ty.clone())))
        .collect();
    let want = parse_term_with("\\x:a.\\y:a. f(Z(H1(x,y),x,H2(x,y),H3(x,y)))", &sig, &free)
        .map_err(|e| e.to_string())?;
    ensure(alpha_eq(&l.term, &want), || format!("got {}", l.term))?;
    let h2 = l.fresh.iter().find(|(h, ..)| h == "H2").ok_or("no H2")?;
    let want = parse_type("a->a->(a->a)->(a->a)->a").unwrap();
    ensure(h2.1 == want, || format!("H2 : {}", h2.1))?;
    let h1 = &l.fresh[0].1;
    ensure(*h1 == parse_type("a->a->(a->a)->a").unwrap(), || {
        format!("H1 : {h1}")
    })?;
    let h3 = &l.fresh[2].1;
    ensure(*h3 == parse_type("a->a->a->a").unwrap(), || {
        format!("H3 : {h3}")
    })?;
    Ok(format!("{}; H2 : {}", l.term, h2.1))
}

fn pseudo_lambda_first() -> Outcome {
    let (sig, p) = witness_problem();
    let w = witness(
        "\\x:a.\\y:a. f(Z(\\w:a->a. x, \\w:a->a. y))",
        &[("Z", "\\w1:(a->a)->a.\\w2:(a->a)->a. w1(f)")],
        &[("Z", "\\w1:(a->a)->a.\\w2:(a->a)->a. w2(f)")],
        &sig,
    )?;
    let g = pseudo_pattern_lambda(&w, &p, PseudoMode::Definitional).map_err(|e| e.to_string())?;
    expect_term(&g.g, "\\x:a.\\y:a. f(Y(x,y))", &sig)?;
    Ok(g.g.to_string())
}

fn tight_g_witness(sig: &Signature) -> std::result::Result<GenWitness, String> {
    witness(
        TIGHT_G,
        &[("Z", proj(0)), ("W", proj(0))],
        &[("Z", proj(1)), ("W", proj(1))],
        sig,
    )
}

fn pseudo_lambda_second() -> Outcome {
    let (sig, p) = witness_problem();
    let w = tight_g_witness(&sig)?;
    let g = pseudo_pattern_lambda(&w, &p, PseudoMode::Collapsed).map_err(|e| e.to_string())?;
    expect_term(&g.g, "\\x:a.\\y:a. f(Y(W(x,f(a)),W(f(a),y)))", &sig)?;
    Ok(g.g.to_string())
}

fn pseudo_sp() -> Outcome {
    let (sig, p) = witness_problem();
    let w = tight_g_witness(&sig)?;
    let g = pseudo_pattern_sp(&w, &p, &sig, PseudoMode::Collapsed).map_err(|e| e.to_string())?;
    expect_term(&g.g, "\\x:a.\\y:a. f(Y(W(x,H1(x,y)),W(H2(x,y),y)))", &sig)?;
    let fa = term("\\x:a.\\y:a. f(a)", &sig)?;
    for h in ["H1", "H2"] {
        for s in [&g.sigma1, &g.sigma2] {
            let r = s.get(h).ok_or_else(|| format!("{h} unbound"))?;
            ensure(alpha_eq(r, &fa), || format!("{h} ↦ {r}"))?;
        }
    }
    Ok(g.g.to_string())
}

fn mu_single_pass() -> Outcome {
    let (sig, _) = witness_problem();
    let g = term("\\x:a.\\y:a. f(Y(x,y))", &sig)?;
    let a = parse_type("a").unwrap();
    let r = apply_subst(&g, &mu("Y", &a)).map_err(|e| e.to_string())?;
    expect_term(&r, "\\x:a.\\y:a. f(Y(Y(x,y),Y(x,y)))", &sig)?;
    Ok(r.to_string())
}

fn refutation() -> Outcome {
    let (sig, _) = witness_problem();
    let next = term("\\x:a.\\y:a. f(Y(Y(x,y),Y(x,y)))", &sig)?;
    let prev = term("\\x:a.\\y:a. f(Y(x,y))", &sig)?;
    let ev = refute_chain_step(&next, &prev).map_err(|e| e.to_string())?;
    ensure(ev.case_tag == CaseTag::FreeHeadOccurrenceCase, || {
        format!("{:?}", ev.case_tag)
    })?;
    ensure(ev.n_next == 3 && ev.n_prev == 1, || {
        format!("{} > {}", ev.n_next, ev.n_prev)
    })?;
    expect_term(&ev.projections[0], "\\x:a.\\y:a. f(x)", &sig)?;
    expect_term(&ev.projections[1], "\\x:a.\\y:a. f(y)", &sig)?;
    Ok(format!(
        "{} with {} > {}",
        ev.case_tag, ev.n_next, ev.n_prev
    ))
}

fn closedness() -> Outcome {
    let (sig, _) = witness_problem();
    let open = term("\\x:a.\\y:a. Z(x,y)", &sig)?;
    let closed = term("\\x:a.\\y:a. x", &sig)?;
    let fv: Vec<String> = free_vars(&open).into_keys().collect();
    ensure(fv == ["Z"], || format!("{fv:?}"))?;
    ensure(free_vars(&closed).is_empty(), || {
        "closed term has free variables".into()
    })?;
    Ok("FV = {Z} and ∅".into())
}

fn head_shapes() -> Outcome {
    let (sig, _) = witness_problem();
    let sig = sig.with_constant("c", parse_type("a->a").unwrap());
    let shape = |s: &str| -> std::result::Result<Option<(String, usize)>, String> {
        check_head_shape(&term(s, &sig)?).map_err(|e| e.to_string())
    };
    ensure(
        shape("\\x:a.\\y:a. f(Z(x,y))")? == Some(("Z".into(), 2)),
        || "lgg".into(),
    )?;
    ensure(shape("\\x:a.\\y:a. f(x)")?.is_none(), || {
        "bound head".into()
    })?;
    ensure(shape("\\x:a.\\y:a. f(c(x))")?.is_none(), || {
        "constant head".into()
    })?;
    Ok("(Z, 2), none, none".into())
}

fn normalize_projection() -> Outcome {
    let (sig, _) = witness_problem();
    let (e, _) = parse_expr(
        "\\x:a.\\y:a. f((\\w1:a.\\w2:a. w1) x y)",
        &sig,
        &BTreeMap::new(),
    )
    .map_err(|e| e.to_string())?;
    let free = BTreeMap::new();
    let ctx = Ctx {
        bound: &[],
        free: &free,
        sig: &sig,
    };
    let t = beta_eta_normalize(&e, ctx).map_err(|e| e.to_string())?;
    expect_term(&t, "\\x:a.\\y:a. f(x)", &sig)?;
    Ok(t.to_string())
}

/// Every case, in a fixed order.
pub fn cases() -> Vec<(&'static str, Case)> {
    vec![
        ("eta-long form", eta_long as fn() -> Outcome),
        ("eta-short form", eta_short),
        ("beta-normal projection", normalize_projection),
        ("closed and open terms", closedness),
        ("projections recover s and t", projections_recover),
        ("pattern lgg of s and t", lgg_running),
        ("top-maximal lgg", lgg_top_maximal),
        ("nested generalization", nested_generalization),
        ("strict chain order", strict_order),
        ("superpattern λx.λy.Z", || {
            superpattern_case("\\x:a.\\y:a. Z", None, &sp_sig())
        }),
        ("superpattern λx.λy.Z(x,y)", || {
            superpattern_case("\\x:a.\\y:a. Z(x,y)", None, &sp_sig())
        }),
        ("superpattern with nested free heads", || {
            superpattern_case("\\x:a.\\y:a. Z(R(x,y),K(x),K(P(x)),W,y)", None, &sp_sig())
        }),
        ("non-superpattern λx.λy.Z(x,x)", || {
            superpattern_case(
                "\\x:a.\\y:a. Z(x,x)",
                Some(Violation::DuplicateBoundArg),
                &sp_sig(),
            )
        }),
        ("non-superpattern with abstraction arguments", || {
            superpattern_case(
                "\\x:a.\\y:a. Z(\\w:a->a. w(x), \\w:a->a. w(y))",
                Some(Violation::BadArgHead),
                &sp_sig(),
            )
        }),
        ("non-superpattern with repeated y", || {
            superpattern_case(
                "\\x:a.\\y:a. Z(R(x,y),y,K(x),y,K(P(x)),y,W)",
                Some(Violation::DuplicateBoundArg),
                &sp_sig(),
            )
        }),
        ("non-superpattern with applied bound head", || {
            superpattern_case(
                "\\x:a.\\y:(a->a)->a. Z(y(\\u:a. u))",
                Some(Violation::BadArgHead),
                &sp_sig(),
            )
        }),
        ("head shapes", head_shapes),
        ("tight generalizations", tight_verdicts),
        ("the four projections", four_projections),
        ("non-tight generalizations", not_tight),
        ("tightening removes R", tighten_example),
        ("maximal positions", maximal_set),
        ("lifting", lift_example),
        (
            "pseudo-pattern with abstraction arguments",
            pseudo_lambda_first,
        ),
        ("pseudo-pattern of the tight example", pseudo_lambda_second),
        ("superpattern pseudo-pattern", pseudo_sp),
        ("μ applied once", mu_single_pass),
        ("refutation of the first step", refutation),
    ]
}

/// Runs every case and times the whole suite.
pub fn run() -> GoldenReport {
    let start = Instant::now();
    let cases = cases()
        .into_iter()
        .map(|(name, f)| {
            let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
            match r {
                Ok(detail) => CaseResult {
                    name,
                    passed: true,
                    detail,
                },
                Err(detail) => CaseResult {
                    name,
                    passed: false,
                    detail,
                },
            }
        })
        .collect();
    GoldenReport {
        cases,
        elapsed: start.elapsed(),
    }
}
