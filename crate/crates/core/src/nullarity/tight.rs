use std::fmt;

use crate::au::{
    check_generalization, ground_witnesses, less_general, Aup, GenWitness, MatchOutcome,
};
use crate::error::{Error, Result};
use crate::kernel::{
    apply_subst, eta_var, free_vars, free_vars_ordered, Head, Signature, Substitution, Term,
};
use crate::nullarity::{is_pattern_derived, FragmentTag};
use crate::superpattern::is_superpattern;

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum TightVerdict {
    Tight,
    /// `var ↦ binding` keeps `g` a generalization; `witness` is the result.
    NotTight {
        var: String,
        binding: Term,
        witness: GenWitness,
    },
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TightStatus {
    Tight,
    Unknown,
}

impl fmt::Display for TightStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TightStatus::Tight => "tight",
            TightStatus::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Tightened {
    pub witness: GenWitness,
    pub status: TightStatus,
    pub rewrites: Vec<(String, Term)>,
}

// Projections of `var` first, then its two witness ranges.
fn candidates(var: &str, ty: &crate::kernel::Type, w: &GenWitness) -> Vec<Term> {
    let params: Vec<(String, _)> = ty
        .args()
        .into_iter()
        .enumerate()
        .map(|(i, t)| (format!("b{}", i + 1), t.clone()))
        .collect();
    let mut out = Vec::new();
    for (b, bty) in &params {
        if bty == ty.target() {
            out.push(Term::abs_many(
                &params,
                eta_var(Head::Bound(b.clone()), bty),
            ));
        }
    }
    for s in [&w.sigma1, &w.sigma2] {
        if let Some(r) = s.get(var) {
            out.push(r.clone());
        }
    }
    out
}

/// Looks for a projection or witness range that can replace a free variable
/// of `w.g` while keeping it a generalization of `p` in `frag`.
pub fn is_tight(w: &GenWitness, p: &Aup, frag: FragmentTag, fuel: usize) -> TightVerdict {
    let mut unknown = false;
    for (var, ty) in free_vars_ordered(&w.g) {
        for binding in candidates(&var, &ty, w) {
            let sub = Substitution::new().with(var.clone(), binding.clone());
            let Ok(g2) = apply_subst(&w.g, &sub) else {
                continue;
            };
            if frag == FragmentTag::LambdaSp && !is_superpattern(&g2).is_member {
                continue;
            }
            match (
                less_general(&g2, &p.left, fuel),
                less_general(&g2, &p.right, fuel),
            ) {
                (MatchOutcome::Proven(s1), MatchOutcome::Proven(s2)) => {
                    return TightVerdict::NotTight {
                        var,
                        binding,
                        witness: GenWitness::new(g2, s1, s2),
                    }
                }
                (MatchOutcome::Refuted(_), _) | (_, MatchOutcome::Refuted(_)) => {}
                _ => unknown = true,
            }
        }
    }
    if unknown {
        TightVerdict::Unknown
    } else {
        TightVerdict::Tight
    }
}

/// Applies rewrites found by [`is_tight`] until none is left. Every rewrite
/// removes at least one free variable, so at most `|FV(g)|` are needed.
pub fn tighten(
    w: &GenWitness,
    p: &Aup,
    frag: FragmentTag,
    sig: &Signature,
    fuel: usize,
) -> Result<Tightened> {
    if !is_pattern_derived(&w.g, p) {
        return Err(Error::NotPatternDerived(w.g.to_string()));
    }
    let mut cur = ground_witnesses(w, p, sig)?;
    let mut rewrites = Vec::new();
    let bound = free_vars(&cur.g).len() * 2;
    loop {
        match is_tight(&cur, p, frag, fuel) {
            TightVerdict::Tight => {
                return Ok(Tightened {
                    witness: cur,
                    status: TightStatus::Tight,
                    rewrites,
                })
            }
            TightVerdict::Unknown => {
                return Ok(Tightened {
                    witness: cur,
                    status: TightStatus::Unknown,
                    rewrites,
                })
            }
            TightVerdict::NotTight {
                var,
                binding,
                witness,
            } => {
                let before = free_vars(&cur.g).len();
                cur = ground_witnesses(&witness, p, sig)?;
                debug_assert!(check_generalization(&cur, p)?);
                assert!(
                    free_vars(&cur.g).len() < before,
                    "rewrite kept every variable"
                );
                rewrites.push((var, binding));
                if rewrites.len() > bound {
                    return Ok(Tightened {
                        witness: cur,
                        status: TightStatus::Unknown,
                        rewrites,
                    });
                }
            }
        }
    }
}
