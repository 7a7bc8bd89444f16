//! Tightness of generalizations of λx.λy.f(x) ≜ λx.λy.f(y): removable
//! variables are found and projected away until none is left.

use lambda_au::au::GenWitness;
use lambda_au::kernel::{parse_term, Signature, Substitution};
use lambda_au::nullarity::{is_tight, tighten, witness_problem, FragmentTag, TightVerdict};

fn subst(pairs: &[(&str, &str)], sig: &Signature) -> lambda_au::Result<Substitution> {
    let mut s = Substitution::new();
    for (v, t) in pairs {
        s.insert(*v, parse_term(t, sig)?);
    }
    Ok(s)
}

fn main() -> lambda_au::Result<()> {
    let (sig, p) = witness_problem();
    let id = "\\w:a. w";
    let p1 = "\\w1:a.\\w2:a. w1";
    let p2 = "\\w1:a.\\w2:a. w2";
    let cases = [
        ("\\x:a.\\y:a. f(Z(x,y))", vec![("Z", p1)], vec![("Z", p2)]),
        (
            "\\x:a.\\y:a. f(Z(R(x),R(y)))",
            vec![("Z", p1), ("R", id)],
            vec![("Z", p2), ("R", id)],
        ),
        (
            "\\x:a.\\y:a. f(Z(Z(x,y),Y(x,y)))",
            vec![("Z", p1), ("Y", p1)],
            vec![("Z", p2), ("Y", p2)],
        ),
        (
            "\\x:a.\\y:a. f(Z(W(x,Z(f(a),a)),W(Z(a,f(a)),y)))",
            vec![("Z", p1), ("W", p1)],
            vec![("Z", p2), ("W", p2)],
        ),
    ];
    println!("problem: {p}");
    for (g, s1, s2) in cases {
        let w = GenWitness::new(parse_term(g, &sig)?, subst(&s1, &sig)?, subst(&s2, &sig)?);
        println!("{}", w.g);
        for frag in [FragmentTag::LambdaAll, FragmentTag::LambdaSp] {
            match is_tight(&w, &p, frag, 8) {
                TightVerdict::Tight => println!("  [{frag}] tight"),
                TightVerdict::NotTight {
                    var,
                    binding,
                    witness,
                } => {
                    println!("  [{frag}] {var} := {binding} gives {}", witness.g)
                }
                TightVerdict::Unknown => println!("  [{frag}] unknown"),
            }
        }
        let t = tighten(&w, &p, FragmentTag::LambdaAll, &sig, 8)?;
        for (v, b) in &t.rewrites {
            println!("  rewrite {v} := {b}");
        }
        println!("  result {} ({})", t.witness.g, t.status);
    }
    Ok(())
}
