mod common;

use common::{chain_counts, term, witness, P1, P2};
use lambda_au::au::{check_generalization, less_general, pattern_lgg};
use lambda_au::kernel::{alpha_eq, apply_subst, occ, parse_type, Head, Type};
use lambda_au::nullarity::{
    chain_step, check_head_shape, core, generate_chain, is_pattern_derived, is_representative,
    is_tight, lift, maximal_positions, mu, mu_occ, pseudo_pattern_lambda, pseudo_pattern_sp,
    refute_chain_step, tighten, witness_problem, CaseTag, FragmentTag, PseudoMode, TightStatus,
    TightVerdict,
};
use lambda_au::superpattern::is_superpattern;
use lambda_au::Error;

const ID: &str = "\\w:a. w";

#[test]
fn pattern_derived_means_below_the_lgg() {
    let (s, p) = witness_problem();
    assert!(is_pattern_derived(&term("\\x:a.\\y:a. f(Z(x,y))", &s), &p));
    assert!(is_pattern_derived(
        &term("\\x:a.\\y:a. f(Y(Y(x,y),Y(x,y)))", &s),
        &p
    ));
    assert!(!is_pattern_derived(&term("\\x:a.\\y:a. Z(x,y)", &s), &p));
}

#[test]
fn head_shape() {
    let (s, _) = witness_problem();
    assert_eq!(
        check_head_shape(&term("\\x:a.\\y:a. f(Z(x,y))", &s)).unwrap(),
        Some(("Z".to_string(), 2))
    );
    assert_eq!(
        check_head_shape(&term("\\x:a.\\y:a. f(y)", &s)).unwrap(),
        None
    );
}

#[test]
fn removable_variables_are_found() {
    let (s, p) = witness_problem();
    let w = witness(
        "\\x:a.\\y:a. f(Z(R(x),R(y)))",
        &[("Z", P1), ("R", ID)],
        &[("Z", P2), ("R", ID)],
        &s,
    );
    let TightVerdict::NotTight { var, witness, .. } = is_tight(&w, &p, FragmentTag::LambdaAll, 8)
    else {
        panic!("expected a rewrite");
    };
    assert_eq!(var, "R");
    assert!(check_generalization(&witness, &p).unwrap());

    let lgg = pattern_lgg(&p);
    for frag in [FragmentTag::LambdaAll, FragmentTag::LambdaSp] {
        assert_eq!(is_tight(&lgg, &p, frag, 8), TightVerdict::Tight);
    }
}

#[test]
fn tightening_reaches_a_tight_instance() {
    let (s, p) = witness_problem();
    let w = witness(
        "\\x:a.\\y:a. f(Z(Z(x,y),Y(x,y)))",
        &[("Z", P1), ("Y", P1)],
        &[("Z", P2), ("Y", P2)],
        &s,
    );
    let t = tighten(&w, &p, FragmentTag::LambdaAll, &s, 8).unwrap();
    assert_eq!(t.status, TightStatus::Tight);
    assert_eq!(t.rewrites.len(), 1);
    assert!(check_generalization(&t.witness, &p).unwrap());
    // The result is an instance of the input.
    assert!(less_general(&w.g, &t.witness.g, 8).is_proven());
}

#[test]
fn tightening_rejects_other_generalizations() {
    let (s, p) = witness_problem();
    let w = witness(
        "\\x:a.\\y:a. Z(x,y)",
        &[("Z", "\\u:a.\\v:a. f(u)")],
        &[("Z", "\\u:a.\\v:a. f(v)")],
        &s,
    );
    assert!(matches!(
        tighten(&w, &p, FragmentTag::LambdaAll, &s, 8),
        Err(Error::NotPatternDerived(_))
    ));
}

#[test]
fn maximal_positions_and_lifting() {
    let (s, _) = witness_problem();
    let r = term(
        "\\x:a.\\y:a. f(Z(\\w:a->a. x, x, \\w1:a->a.\\w2:a->a. y, f))",
        &s,
    );
    let got: Vec<String> = maximal_positions(&r, &s)
        .unwrap()
        .iter()
        .map(|q| q.to_string())
        .collect();
    assert_eq!(got, ["1.1.1.1", "1.1.1.3", "1.1.1.4"]);
    assert!(!is_representative(&term("\\x:a.\\y:a. Z(x,y)", &s), &s));
    assert!(is_representative(&term("f(a)", &s), &s));

    let l = lift(&r, &s).unwrap();
    let types: Vec<Type> = l.fresh.iter().map(|(_, ty, ..)| ty.clone()).collect();
    assert_eq!(
        types,
        [
            parse_type("a->a->(a->a)->a").unwrap(),
            parse_type("a->a->(a->a)->(a->a)->a").unwrap(),
            parse_type("a->a->a->a").unwrap(),
        ]
    );
    // Putting the replaced subterms back gives the original.
    let mut back = lambda_au::kernel::Substitution::new();
    for (h, _, sub, _) in &l.fresh {
        let (binders, _) = r.strip_binders();
        back.insert(
            h.clone(),
            lambda_au::kernel::Term::abs_many(&binders, sub.clone()),
        );
    }
    assert!(alpha_eq(&apply_subst(&l.term, &back).unwrap(), &r));
    assert!(is_superpattern(&l.term).is_member);
    assert_eq!(core(&r, &s).unwrap().head(), Some(&Head::Free("Z".into())));
}

fn tight_g() -> lambda_au::au::GenWitness {
    let (s, _) = witness_problem();
    witness(
        "\\x:a.\\y:a. f(Z(W(x,Z(f(a),a)),W(Z(a,f(a)),y)))",
        &[("Z", P1), ("W", P1)],
        &[("Z", P2), ("W", P2)],
        &s,
    )
}

#[test]
fn pseudo_patterns_in_both_modes() {
    let (s, p) = witness_problem();
    let w = tight_g();
    let d = pseudo_pattern_lambda(&w, &p, PseudoMode::Definitional).unwrap();
    assert!(
        less_general(&w.g, &d.g, 8).is_proven(),
        "definitional is an instance"
    );
    let c = pseudo_pattern_lambda(&w, &p, PseudoMode::Collapsed).unwrap();
    assert!(alpha_eq(
        &c.g,
        &term("\\x:a.\\y:a. f(Y(W(x,f(a)),W(f(a),y)))", &s)
    ));
    for g in [&d, &c] {
        assert!(check_generalization(g, &p).unwrap());
        assert!(alpha_eq(g.sigma1.get("Y").unwrap(), &term(P1, &s)));
        assert!(alpha_eq(g.sigma2.get("Y").unwrap(), &term(P2, &s)));
    }
    let sp = pseudo_pattern_sp(&w, &p, &s, PseudoMode::Collapsed).unwrap();
    assert!(is_superpattern(&sp.g).is_member);
    assert!(!is_superpattern(&c.g).is_member);
}

#[test]
fn pseudo_patterns_need_the_head_shape() {
    let (s, p) = witness_problem();
    let w = witness("\\x:a.\\y:a. Z(f(x),f(y))", &[("Z", P1)], &[("Z", P2)], &s);
    assert!(matches!(
        pseudo_pattern_lambda(&w, &p, PseudoMode::Definitional),
        Err(Error::Shape(_))
    ));
}

#[test]
fn mu_is_one_simultaneous_substitution() {
    let (s, _) = witness_problem();
    let a = Type::base("a");
    let g = term("\\x:a.\\y:a. f(Y(Y(x,y),Y(x,y)))", &s);
    let r = apply_subst(&g, &mu("Y", &a)).unwrap();
    assert_eq!(occ(&Head::Free("Y".into()), &r), 15);
    assert_eq!(mu_occ("Y", &g), 15);
}

#[test]
fn chain_counts_match_the_skeleton_oracle() {
    let (s, p) = witness_problem();
    let c = generate_chain(&p, &pattern_lgg(&p), FragmentTag::LambdaAll, 3, &s, 8).unwrap();
    let got: Vec<u128> = c
        .elements
        .iter()
        .map(|w| occ(&Head::Free("Y".into()), &w.g) as u128)
        .collect();
    assert_eq!(got, chain_counts(3));
    assert_eq!(got, [1, 3, 15, 255]);
    for (i, st) in c.steps.iter().enumerate() {
        assert_eq!(st.refutation.case_tag, CaseTag::FreeHeadOccurrenceCase);
        assert_eq!(st.refutation.n_next as u128, got[i + 1]);
        assert_eq!(st.refutation.n_prev as u128, got[i]);
    }
    let last = c.elements.last().unwrap();
    assert_eq!(mu_occ("Y", &last.g), chain_counts(4)[4]);
}

#[test]
fn chain_steps_are_strict() {
    let (s, p) = witness_problem();
    let c = generate_chain(&p, &pattern_lgg(&p), FragmentTag::LambdaSp, 2, &s, 8).unwrap();
    for pair in c.elements.windows(2) {
        assert!(less_general(&pair[0].g, &pair[1].g, 8).is_proven());
        assert!(!less_general(&pair[1].g, &pair[0].g, 8).is_proven());
        assert!(is_superpattern(&pair[1].g).is_member);
        assert!(check_generalization(&pair[1], &p).unwrap());
    }
}

#[test]
fn long_chains_are_refused() {
    let (s, p) = witness_problem();
    let r = generate_chain(&p, &pattern_lgg(&p), FragmentTag::LambdaAll, 10, &s, 8);
    assert!(matches!(r, Err(Error::TooLarge(_))));
    let c = generate_chain(&p, &pattern_lgg(&p), FragmentTag::LambdaAll, 3, &s, 8).unwrap();
    assert!(matches!(
        chain_step(c.elements.last().unwrap(), &p),
        Err(Error::TooLarge(_))
    ));
}

#[test]
fn refutation_needs_growth() {
    let (s, _) = witness_problem();
    let g = term("\\x:a.\\y:a. f(Y(x,y))", &s);
    assert!(matches!(
        refute_chain_step(&g, &g),
        Err(Error::NotRefutable(_))
    ));
    let next = term("\\x:a.\\y:a. f(Y(Y(x,y),Y(x,y)))", &s);
    let ev = refute_chain_step(&next, &g).unwrap();
    assert_eq!((ev.n_next, ev.n_prev), (3, 1));
    assert_eq!(ev.prev_head, "Y");
    assert_eq!(ev.clash_position.to_string(), "1.1.1");
}

#[test]
fn certificates_serialize() {
    let (s, p) = witness_problem();
    let c = generate_chain(&p, &pattern_lgg(&p), FragmentTag::LambdaAll, 1, &s, 8).unwrap();
    let j = c.to_json();
    assert_eq!(j["elements"].as_array().unwrap().len(), 2);
    assert_eq!(
        j["steps"][0]["refutation"]["caseTag"],
        "FreeHeadOccurrenceCase"
    );
    assert_eq!(j["fragment"], "lambda");
}
