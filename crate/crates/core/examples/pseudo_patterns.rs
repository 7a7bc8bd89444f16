//! Pseudo-patterns built from tight generalizations, in both construction
//! modes and both fragments.

use lambda_au::au::GenWitness;
use lambda_au::kernel::{parse_term, Signature, Substitution};
use lambda_au::nullarity::{pseudo_pattern_lambda, pseudo_pattern_sp, witness_problem, PseudoMode};

fn subst(pairs: &[(&str, &str)], sig: &Signature) -> lambda_au::Result<Substitution> {
    let mut s = Substitution::new();
    for (v, t) in pairs {
        s.insert(*v, parse_term(t, sig)?);
    }
    Ok(s)
}

fn main() -> lambda_au::Result<()> {
    let (sig, p) = witness_problem();
    let p1 = "\\w1:a.\\w2:a. w1";
    let p2 = "\\w1:a.\\w2:a. w2";
    let tight = [
        GenWitness::new(
            parse_term("\\x:a.\\y:a. f(Z(\\w:a->a. x, \\w:a->a. y))", &sig)?,
            subst(&[("Z", "\\w1:(a->a)->a.\\w2:(a->a)->a. w1(f)")], &sig)?,
            subst(&[("Z", "\\w1:(a->a)->a.\\w2:(a->a)->a. w2(f)")], &sig)?,
        ),
        GenWitness::new(
            parse_term("\\x:a.\\y:a. f(Z(W(x,Z(f(a),a)),W(Z(a,f(a)),y)))", &sig)?,
            subst(&[("Z", p1), ("W", p1)], &sig)?,
            subst(&[("Z", p2), ("W", p2)], &sig)?,
        ),
    ];
    for w in &tight {
        println!("tight {}", w.g);
        for mode in [PseudoMode::Definitional, PseudoMode::Collapsed] {
            let l = pseudo_pattern_lambda(w, &p, mode)?;
            println!("  {mode:?} λ : {}", l.g);
            match pseudo_pattern_sp(w, &p, &sig, mode) {
                Ok(s) => {
                    println!("  {mode:?} sp: {}", s.g);
                    println!("    σ1 = {}", s.sigma1);
                    println!("    σ2 = {}", s.sigma2);
                }
                Err(e) => println!("  {mode:?} sp: {e}"),
            }
        }
    }
    Ok(())
}
