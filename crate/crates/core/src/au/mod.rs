//! Generalizations of pairs of closed terms: witnesses, the least general
//! pattern generalization, and matching for the instance order.

mod enumerate;
mod lgg;
mod matching;

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{
    alpha_eq, apply_subst, eta_var, free_vars, Head, Signature, Substitution, Term, Type,
};

pub use enumerate::enumerate_generalizations;
pub use lgg::pattern_lgg;
pub use matching::{is_pattern, less_general, match_bounded, pattern_match, DEFAULT_FUEL};

/// An anti-unification problem `s ≜ t` over closed terms of one type.
#[derive(Clone, Debug, PartialEq)]
pub struct Aup {
    pub left: Term,
    pub right: Term,
}

impl Aup {
    pub fn new(left: Term, right: Term) -> Result<Aup> {
        for (side, t) in [("left", &left), ("right", &right)] {
            if !t.is_closed() {
                return Err(Error::InvalidProblem(format!(
                    "{side} side {t} is not closed"
                )));
            }
        }
        if left.ty() != right.ty() {
            return Err(Error::TypeMismatch {
                expected: left.ty().to_string(),
                found: right.ty().to_string(),
                offset: None,
            });
        }
        Ok(Aup { left, right })
    }

    pub fn ty(&self) -> &Type {
        self.left.ty()
    }

    pub fn to_json(&self) -> Value {
        json!({"left": self.left.to_string(), "right": self.right.to_string()})
    }
}

impl fmt::Display for Aup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≜ {}", self.left, self.right)
    }
}

/// A generalization `g` together with `σ1`, `σ2` that map it back to the two
/// sides of its problem.
#[derive(Clone, Debug, PartialEq)]
pub struct GenWitness {
    pub g: Term,
    pub sigma1: Substitution,
    pub sigma2: Substitution,
    pub grounded: bool,
}

impl GenWitness {
    pub fn new(g: Term, sigma1: Substitution, sigma2: Substitution) -> GenWitness {
        let grounded = sigma1.is_ground() && sigma2.is_ground();
        GenWitness {
            g,
            sigma1,
            sigma2,
            grounded,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g.to_string(),
            "sigma1": subst_json(&self.sigma1),
            "sigma2": subst_json(&self.sigma2),
            "grounded": self.grounded,
        })
    }
}

impl fmt::Display for GenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\n  σ1 = {}\n  σ2 = {}",
            self.g, self.sigma1, self.sigma2
        )
    }
}

pub(crate) fn subst_json(s: &Substitution) -> Value {
    Value::Object(
        s.iter()
            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
            .collect(),
    )
}

/// Result of a (semi-)decision for `∃σ. query σ = target`.
#[derive(Clone, Debug, PartialEq)]
pub enum MatchOutcome {
    Proven(Substitution),
    Refuted(String),
    Unknown,
}

impl MatchOutcome {
    pub fn is_proven(&self) -> bool {
        matches!(self, MatchOutcome::Proven(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, MatchOutcome::Refuted(_))
    }

    pub fn subst(&self) -> Option<&Substitution> {
        match self {
            MatchOutcome::Proven(s) => Some(s),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            MatchOutcome::Proven(s) => json!({"outcome": "proven", "subst": subst_json(s)}),
            MatchOutcome::Refuted(r) => json!({"outcome": "refuted", "reason": r}),
            MatchOutcome::Unknown => json!({"outcome": "unknown"}),
        }
    }

    // Builds `Proven` only after re-checking the substitution.
    pub(crate) fn proven(query: &Term, target: &Term, sigma: Substitution) -> MatchOutcome {
        match apply_subst(query, &sigma) {
            Ok(r) if alpha_eq(&r, target) => MatchOutcome::Proven(sigma),
            Ok(r) => panic!("matcher produced {sigma} but {query}σ = {r}, not {target}"),
            Err(e) => panic!("matcher produced an ill-typed substitution: {e}"),
        }
    }
}

impl fmt::Display for MatchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchOutcome::Proven(s) => write!(f, "proven {s}"),
            MatchOutcome::Refuted(r) => write!(f, "refuted: {r}"),
            MatchOutcome::Unknown => f.write_str("unknown (fuel exhausted)"),
        }
    }
}

/// Whether `w.g σ1 = s` and `w.g σ2 = t` hold up to αβη.
pub fn check_generalization(w: &GenWitness, p: &Aup) -> Result<bool> {
    if w.g.ty() != p.ty() {
        return Err(Error::TypeMismatch {
            expected: p.ty().to_string(),
            found: w.g.ty().to_string(),
            offset: None,
        });
    }
    let l = apply_subst(&w.g, &w.sigma1)?;
    let r = apply_subst(&w.g, &w.sigma2)?;
    Ok(alpha_eq(&l, &p.left) && alpha_eq(&r, &p.right))
}

/// Replaces every free variable in the witness ranges by the canonical
/// constant of its type.
pub fn ground_witnesses(w: &GenWitness, p: &Aup, sig: &Signature) -> Result<GenWitness> {
    let ground = |s: &Substitution| -> Result<Substitution> {
        let mut out = Substitution::new();
        for (k, v) in s.iter() {
            let mut theta = Substitution::new();
            for (x, ty) in free_vars(v) {
                theta.insert(x, eta_var(Head::Const(sig.canonical_by_type(&ty)), &ty));
            }
            out.insert(k.clone(), apply_subst(v, &theta)?);
        }
        // Variables the witness erases may take any ground value.
        for (x, ty) in free_vars(&w.g) {
            if out.get(&x).is_none() {
                out.insert(x, eta_var(Head::Const(sig.canonical_by_type(&ty)), &ty));
            }
        }
        Ok(out)
    };
    let out = GenWitness::new(w.g.clone(), ground(&w.sigma1)?, ground(&w.sigma2)?);
    if !check_generalization(&out, p)? {
        return Err(Error::InvalidWitness(format!(
            "grounding broke the witness for {}",
            w.g
        )));
    }
    Ok(out)
}
