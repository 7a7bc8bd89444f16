//! The constructions behind nullarity of `λx.λy.f(x) ≜ λx.λy.f(y)`: tight
//! generalizations, lifting, pseudo-patterns, and an infinite strictly
//! descending chain of ever more specific generalizations.

mod chain;
mod lift;
mod pseudo;
mod tight;

use std::fmt;
use std::str::FromStr;

use crate::au::{pattern_lgg, pattern_match, Aup};
use crate::error::{Error, Result};
use crate::kernel::{parse_term, Head, Position, Signature, Term};

pub use chain::{
    chain_step, generate_chain, mu, mu_occ, refute_chain_step, CaseTag, ChainCertificate,
    ChainStep, RefutationEvidence, MAX_CHAIN_OCC,
};
pub use lift::{core, is_representative, lift, maximal_positions, Lifted};
pub use pseudo::{pseudo_pattern_lambda, pseudo_pattern_sp, PseudoMode};
pub use tight::{is_tight, tighten, TightStatus, TightVerdict, Tightened};

/// Which fragment generalizations must belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FragmentTag {
    LambdaAll,
    LambdaSp,
}

impl fmt::Display for FragmentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FragmentTag::LambdaAll => "lambda",
            FragmentTag::LambdaSp => "sp",
        })
    }
}

impl FromStr for FragmentTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<FragmentTag> {
        match s {
            "lambda" | "all" => Ok(FragmentTag::LambdaAll),
            "sp" | "superpattern" => Ok(FragmentTag::LambdaSp),
            _ => Err(Error::InvalidProblem(format!("unknown fragment `{s}`"))),
        }
    }
}

/// `λx:a.λy:a. f(x) ≜ λx:a.λy:a. f(y)` over the built-in signature.
pub fn witness_problem() -> (Signature, Aup) {
    let sig = Signature::builtin();
    let s = parse_term("\\x:a.\\y:a. f(x)", &sig).expect("fixed text");
    let t = parse_term("\\x:a.\\y:a. f(y)", &sig).expect("fixed text");
    let p = Aup::new(s, t).expect("closed and same type");
    (sig, p)
}

/// Whether the pattern lgg of `p` matches into `g`.
pub fn is_pattern_derived(g: &Term, p: &Aup) -> bool {
    let lgg = pattern_lgg(p).g;
    matches!(pattern_match(&lgg, g), Ok(o) if o.is_proven())
}

// Position of the argument of the outer constant in `λw̄.c(r)`.
pub(crate) fn outer_arg(g: &Term) -> Result<(Position, &Term)> {
    let (binders, body) = g.strip_binders();
    match body {
        Term::App {
            head: Head::Const(_),
            args,
            ..
        } if args.len() == 1 => {
            let mut p = vec![1; binders.len()];
            p.push(1);
            Ok((Position(p), &args[0]))
        }
        _ => Err(Error::Shape(format!(
            "expected λw̄.c(r) with a unary constant c, got {g}"
        ))),
    }
}

/// For `λw̄.c(r)`: the head of `r` and its argument count when the head is a
/// free variable applied to at least one argument.
pub fn check_head_shape(g: &Term) -> Result<Option<(String, usize)>> {
    let (_, r) = outer_arg(g)?;
    Ok(match r {
        Term::App {
            head: Head::Free(z),
            args,
            ..
        } if !args.is_empty() => Some((z.clone(), args.len())),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn head_shapes() {
        let (sig, _) = witness_problem();
        let sig = sig.with_constant("c", "a->a".parse().unwrap());
        let shape = |s: &str| check_head_shape(&parse_term(s, &sig).unwrap()).unwrap();
        assert_eq!(shape("\\x:a.\\y:a. f(Z(x,y))"), Some(("Z".into(), 2)));
        assert_eq!(shape("\\x:a.\\y:a. f(x)"), None);
        assert_eq!(shape("\\x:a.\\y:a. f(c(x))"), None);
        assert_eq!(shape("\\x:a.\\y:a. f(Z)"), None);
        assert!(check_head_shape(&parse_term("\\x:a. x", &sig).unwrap()).is_err());
    }
}
