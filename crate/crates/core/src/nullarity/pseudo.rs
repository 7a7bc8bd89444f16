use std::collections::BTreeSet;

use crate::au::{check_generalization, Aup, GenWitness};
use crate::error::{Error, Result};
use crate::kernel::{
    alpha_eq, apply_subst, apply_term, constants, eta_expand, eta_var, free_vars, fresh_name,
    replace_at, subterm_at, Head, Signature, Substitution, Term, Type,
};
use crate::nullarity::{check_head_shape, lift, outer_arg};
use crate::superpattern::is_superpattern;

/// How `Y`'s arguments are built from the witness ranges `r1`, `r2` of `Z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PseudoMode {
    /// `g{Z ↦ λb̄.Y(r1(b̄), r2(b̄))}`: an instance of `g`.
    #[default]
    Definitional,
    /// `λx.λy.f(Y(u{Z ↦ r1}, u{Z ↦ r2}))` where `u` is the argument of `f`:
    /// every occurrence of `Z` is resolved by the side it belongs to.
    Collapsed,
}

pub(crate) fn projection(i: usize, ty: &Type) -> Term {
    let params = [
        ("w1".to_string(), ty.clone()),
        ("w2".to_string(), ty.clone()),
    ];
    Term::abs_many(&params, eta_var(Head::Bound(params[i].0.clone()), ty))
}

fn avoid_set(g: &Term) -> BTreeSet<String> {
    let mut taken: BTreeSet<String> = free_vars(g).into_keys().collect();
    taken.extend(constants(g).into_keys());
    taken
}

/// The pseudo-pattern `λx.λy.f(Y(r1', r2'))` of a tight generalization
/// `λx.λy.f(Z(s̄))`, with witnesses sending `Y` to the two projections.
pub fn pseudo_pattern_lambda(w: &GenWitness, p: &Aup, mode: PseudoMode) -> Result<GenWitness> {
    let Some((z, _)) = check_head_shape(&w.g)? else {
        return Err(Error::Shape(format!(
            "{} is not of the form λw̄.c(Z(s̄)) with Z free",
            w.g
        )));
    };
    let (r1, r2) = match (w.sigma1.get(&z), w.sigma2.get(&z)) {
        (Some(r1), Some(r2)) => (r1.clone(), r2.clone()),
        _ => {
            return Err(Error::InvalidWitness(format!(
                "the witness pair does not bind {z}"
            )))
        }
    };
    let z_ty = free_vars(&w.g)[&z].clone();
    let alpha = z_ty.target().clone();
    let y_ty = Type::from_parts([&alpha, &alpha], alpha.clone());
    let y = fresh_name("Y", |n| avoid_set(&w.g).contains(n));
    let g = match mode {
        PseudoMode::Definitional => {
            let params: Vec<(String, Type)> = z_ty
                .args()
                .into_iter()
                .enumerate()
                .map(|(i, ty)| (format!("b{}", i + 1), ty.clone()))
                .collect();
            let bs: Vec<Term> = params
                .iter()
                .map(|(b, ty)| eta_var(Head::Bound(b.clone()), ty))
                .collect();
            let body = eta_expand(
                Head::Free(y.clone()),
                &y_ty,
                vec![apply_term(&r1, bs.clone()), apply_term(&r2, bs)],
            );
            let binding = Term::abs_many(&params, body);
            apply_subst(&w.g, &Substitution::new().with(z.clone(), binding))?
        }
        PseudoMode::Collapsed => {
            let (pos, _) = outer_arg(&w.g)?;
            let side = |r: &Term| -> Result<Term> {
                let inst = apply_subst(&w.g, &Substitution::new().with(z.clone(), r.clone()))?;
                Ok(subterm_at(&inst, &pos)?.clone())
            };
            let arg = eta_expand(Head::Free(y.clone()), &y_ty, vec![side(&r1)?, side(&r2)?]);
            replace_at(&w.g, &pos, arg)?
        }
    };
    let mut s1 = w.sigma1.clone();
    let mut s2 = w.sigma2.clone();
    s1.remove(&z);
    s2.remove(&z);
    let fv = free_vars(&g);
    let s1 = s1
        .restrict(|k| fv.contains_key(k))
        .with(y.clone(), projection(0, &alpha));
    let s2 = s2
        .restrict(|k| fv.contains_key(k))
        .with(y, projection(1, &alpha));
    let out = GenWitness::new(g, s1, s2);
    if !check_generalization(&out, p)? {
        return Err(Error::InvalidWitness(format!(
            "pseudo-pattern {} does not generalize the problem",
            out.g
        )));
    }
    Ok(out)
}

/// The superpattern variant: lift the pseudo-pattern and substitute its core
/// into `λx.λy.f(R(x,y))`. Witnesses also send each lifting variable back to
/// the subterm it replaced.
pub fn pseudo_pattern_sp(
    w: &GenWitness,
    p: &Aup,
    sig: &Signature,
    mode: PseudoMode,
) -> Result<GenWitness> {
    let base = pseudo_pattern_lambda(w, p, mode)?;
    let lifted = lift(&base.g, sig)?;
    let (pos, _) = outer_arg(&lifted.term)?;
    let core = subterm_at(&lifted.term, &pos)?.clone();
    let (binders, _) = lifted.term.strip_binders();
    let r = fresh_name("R", |n| avoid_set(&lifted.term).contains(n));
    let r_ty = Type::from_parts(binders.iter().map(|(_, t)| t), core.ty().clone());
    let ws: Vec<Term> = binders
        .iter()
        .map(|(b, ty)| eta_var(Head::Bound(b.clone()), ty))
        .collect();
    let template = replace_at(
        &lifted.term,
        &pos,
        eta_expand(Head::Free(r.clone()), &r_ty, ws),
    )?;
    let g = apply_subst(
        &template,
        &Substitution::new().with(r, Term::abs_many(&binders, core)),
    )?;
    debug_assert!(alpha_eq(&g, &lifted.term));
    let mut s1 = base.sigma1.clone();
    let mut s2 = base.sigma2.clone();
    for (h, _, sub, _) in &lifted.fresh {
        let back = Term::abs_many(&binders, sub.clone());
        s1.insert(h.clone(), back.clone());
        s2.insert(h.clone(), back);
    }
    let out = GenWitness::new(g, s1, s2);
    if !check_generalization(&out, p)? {
        return Err(Error::InvalidWitness(format!(
            "lifted pseudo-pattern {} does not generalize the problem",
            out.g
        )));
    }
    let report = is_superpattern(&out.g);
    if !report.is_member {
        return Err(Error::Shape(format!(
            "{} is not a superpattern: {report}",
            out.g
        )));
    }
    Ok(out)
}
