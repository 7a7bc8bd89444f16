use std::fmt;

use serde_json::{json, Value};

use crate::au::{
    check_generalization, ground_witnesses, match_bounded, subst_json, Aup, GenWitness,
};
use crate::error::{Error, Result};
use crate::kernel::{
    alpha_eq, apply_subst, eta_expand, eta_var, free_vars, occ, subterm_at, term_to_json, Head,
    Position, Signature, Substitution, Term, Type,
};
use crate::nullarity::pseudo::projection;
use crate::nullarity::{
    is_pattern_derived, outer_arg, pseudo_pattern_lambda, pseudo_pattern_sp, tighten, FragmentTag,
    PseudoMode, TightStatus,
};
use crate::superpattern::is_superpattern;

/// `{Y ↦ λw1.λw2. Y(Y(w1,w2),Y(w1,w2))}` for `Y : α→α→α`.
pub fn mu(y: &str, alpha: &Type) -> Substitution {
    let ty = Type::from_parts([alpha, alpha], alpha.clone());
    let w1 = eta_var(Head::Bound("w1".into()), alpha);
    let w2 = eta_var(Head::Bound("w2".into()), alpha);
    let inner = eta_expand(Head::Free(y.into()), &ty, vec![w1, w2]);
    let body = eta_expand(Head::Free(y.into()), &ty, vec![inner.clone(), inner]);
    let params = [
        ("w1".to_string(), alpha.clone()),
        ("w2".to_string(), alpha.clone()),
    ];
    Substitution::new().with(y, Term::abs_many(&params, body))
}

// `λw̄.f(Y(r1,r2))`: `Y` and `α`.
fn chain_head(g: &Term) -> Result<(String, Type)> {
    let (_, r) = outer_arg(g)?;
    match r {
        Term::App {
            head: Head::Free(y),
            args,
            ty,
        } if args.len() == 2 && args.iter().all(|a| a.ty() == ty) => Ok((y.clone(), ty.clone())),
        _ => Err(Error::Shape(format!("expected λw̄.f(Y(r1,r2)), got {g}"))),
    }
}

/// Largest number of occurrences of the chain variable a step may produce.
pub const MAX_CHAIN_OCC: u128 = 1 << 12;

/// `occ(y, t·mu(y))` without building the term. Every occurrence `y(a,b)`
/// becomes three occurrences plus two copies of each substituted argument.
pub fn mu_occ(y: &str, t: &Term) -> u128 {
    match t {
        Term::Abs { body, .. } => mu_occ(y, body),
        Term::App { head, args, .. } => {
            let inner: u128 = args.iter().map(|a| mu_occ(y, a)).sum();
            match head {
                Head::Free(h) if h == y => 3 + 2 * inner,
                _ => inner,
            }
        }
    }
}

/// Applies [`mu`] to a pseudo-pattern `λw̄.f(Y(r1,r2))`, substituting every
/// occurrence of `Y`. The witnesses are unchanged: the projections absorb the
/// nesting. The occurrence count grows as `2^(2^k) - 1` along a chain, so a
/// step whose result would exceed [`MAX_CHAIN_OCC`] occurrences is refused.
pub fn chain_step(w: &GenWitness, p: &Aup) -> Result<GenWitness> {
    let (y, alpha) = chain_head(&w.g)?;
    let predicted = mu_occ(&y, &w.g);
    if predicted > MAX_CHAIN_OCC {
        return Err(Error::TooLarge(format!(
            "the next element would contain {predicted} occurrences of {y} (limit {MAX_CHAIN_OCC})"
        )));
    }
    for (i, s) in [&w.sigma1, &w.sigma2].into_iter().enumerate() {
        match s.get(&y) {
            Some(r) if alpha_eq(r, &projection(i, &alpha)) => {}
            _ => {
                return Err(Error::InvalidWitness(format!(
                    "σ{} does not send {y} to projection {}",
                    i + 1,
                    i + 1
                )))
            }
        }
    }
    let g = apply_subst(&w.g, &mu(&y, &alpha))?;
    let out = GenWitness::new(g, w.sigma1.clone(), w.sigma2.clone());
    if !check_generalization(&out, p)? {
        return Err(Error::InvalidWitness(format!("{} lost generality", out.g)));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    ProjectionCase,
    ConstantHeadCase,
    FreeHeadOccurrenceCase,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Why no `σ` maps `g_next` back to `g_prev`, case by case on `σ(Y)`: both
/// projections give terms other than `g_prev`; a constant head would clash
/// with the free head of `g_prev` at `clash_position`; a free head would leave
/// at least `n_next` occurrences of one variable where `g_prev` has at most
/// `n_prev`.
#[derive(Clone, Debug, PartialEq)]
pub struct RefutationEvidence {
    pub case_tag: CaseTag,
    pub projections: Vec<Term>,
    pub clash_position: Position,
    pub prev_head: String,
    pub n_next: usize,
    pub n_prev: usize,
}

impl RefutationEvidence {
    pub fn to_json(&self) -> Value {
        json!({
            "caseTag": self.case_tag.to_string(),
            "projections": self.projections.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "clashPosition": self.clash_position.to_string(),
            "prevHead": self.prev_head,
            "nNext": self.n_next,
            "nPrev": self.n_prev,
        })
    }
}

/// Certifies `g_next ≰ g_prev` for consecutive chain elements. Sound only
/// for the chain shape `λw̄.f(Y(...))`.
pub fn refute_chain_step(g_next: &Term, g_prev: &Term) -> Result<RefutationEvidence> {
    let (y, alpha) = chain_head(g_next)?;
    chain_head(g_prev)?;
    let not_refutable = |why: String| Err(Error::NotRefutable(why));
    let mut projections = Vec::new();
    for i in 0..2 {
        let t = apply_subst(
            g_next,
            &Substitution::new().with(y.clone(), projection(i, &alpha)),
        )?;
        if alpha_eq(&t, g_prev) {
            return not_refutable(format!("projection {} of {y} gives {g_prev}", i + 1));
        }
        projections.push(t);
    }
    let (pos, _) = outer_arg(g_prev)?;
    let prev_head = match subterm_at(g_prev, &pos)?.head() {
        Some(Head::Free(h)) => h.clone(),
        _ => return not_refutable(format!("{g_prev} has no free head at {pos}")),
    };
    let n_next = occ(&Head::Free(y.clone()), g_next);
    let n_prev = free_vars(g_prev)
        .into_keys()
        .map(|v| occ(&Head::Free(v), g_prev))
        .max()
        .unwrap_or(0);
    if n_next <= n_prev {
        return not_refutable(format!("{y} occurs {n_next} times, {g_prev} has {n_prev}"));
    }
    Ok(RefutationEvidence {
        case_tag: CaseTag::FreeHeadOccurrenceCase,
        projections,
        clash_position: pos,
        prev_head,
        n_next,
        n_prev,
    })
}

#[derive(Clone, Debug)]
pub struct ChainStep {
    pub forward: Substitution,
    pub refutation: RefutationEvidence,
    pub reverse_fuel: usize,
}

/// A verified chain `g_0 < g_1 < ... < g_n` of generalizations, with how it
/// was obtained from the starting generalization.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub problem: Aup,
    pub fragment: FragmentTag,
    pub start: GenWitness,
    pub tightened: GenWitness,
    pub tighten_rewrites: Vec<(String, Term)>,
    pub elements: Vec<GenWitness>,
    pub steps: Vec<ChainStep>,
}

impl ChainCertificate {
    pub fn to_json(&self) -> Value {
        let element = |w: &GenWitness| {
            let mut v = w.to_json();
            v["ast"] = term_to_json(&w.g);
            v
        };
        json!({
            "problem": self.problem.to_json(),
            "fragment": self.fragment.to_string(),
            "start": self.start.to_json(),
            "tightened": self.tightened.to_json(),
            "tightenRewrites": self
                .tighten_rewrites
                .iter()
                .map(|(v, b)| json!({"var": v, "binding": b.to_string()}))
                .collect::<Vec<_>>(),
            "elements": self.elements.iter().map(element).collect::<Vec<_>>(),
            "steps": self
                .steps
                .iter()
                .map(|s| json!({
                    "forward": subst_json(&s.forward),
                    "refutation": s.refutation.to_json(),
                    "reverseFuel": s.reverse_fuel,
                    "reverse": "not proven",
                }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Grounds, checks and tightens `start`, turns it into a pseudo-pattern (lifted
/// for the superpattern fragment), then applies `n` chain steps. Every element
/// and step is verified; reverse matching at `fuel` must not succeed.
pub fn generate_chain(
    p: &Aup,
    start: &GenWitness,
    frag: FragmentTag,
    n: usize,
    sig: &Signature,
    fuel: usize,
) -> Result<ChainCertificate> {
    let grounded = ground_witnesses(start, p, sig)?;
    if !is_pattern_derived(&grounded.g, p) {
        return Err(Error::NotPatternDerived(grounded.g.to_string()));
    }
    let tight = tighten(&grounded, p, frag, sig, fuel)?;
    if tight.status != TightStatus::Tight {
        return Err(Error::FuelExhausted(format!(
            "could not establish tightness of {}",
            tight.witness.g
        )));
    }
    let first = match frag {
        FragmentTag::LambdaAll => {
            pseudo_pattern_lambda(&tight.witness, p, PseudoMode::Definitional)?
        }
        FragmentTag::LambdaSp => {
            pseudo_pattern_sp(&tight.witness, p, sig, PseudoMode::Definitional)?
        }
    };
    let mut elements = vec![first];
    let mut steps = Vec::new();
    for _ in 0..n {
        let prev = elements.last().expect("non-empty");
        let next = chain_step(prev, p)?;
        let (y, alpha) = chain_head(&prev.g)?;
        let forward = mu(&y, &alpha);
        if !alpha_eq(&apply_subst(&prev.g, &forward)?, &next.g) {
            return Err(Error::InvalidWitness(
                "forward step does not reproduce".into(),
            ));
        }
        let refutation = refute_chain_step(&next.g, &prev.g)?;
        if match_bounded(&next.g, &prev.g, fuel).is_proven() {
            return Err(Error::NotRefutable(format!(
                "{} matches back into {}",
                next.g, prev.g
            )));
        }
        steps.push(ChainStep {
            forward,
            refutation,
            reverse_fuel: fuel,
        });
        elements.push(next);
    }
    for w in &elements {
        if !check_generalization(w, p)? {
            return Err(Error::InvalidWitness(format!(
                "{} is not a generalization",
                w.g
            )));
        }
        if frag == FragmentTag::LambdaSp && !is_superpattern(&w.g).is_member {
            return Err(Error::Shape(format!("{} is not a superpattern", w.g)));
        }
    }
    Ok(ChainCertificate {
        problem: p.clone(),
        fragment: frag,
        start: grounded,
        tightened: tight.witness,
        tighten_rewrites: tight.rewrites,
        elements,
        steps,
    })
}
