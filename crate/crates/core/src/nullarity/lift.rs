use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::{
    constants, eta_expand, eta_reduce, eta_var, free_vars, head_of, replace_at, subterm_at, Head,
    HeadOrAbs, Position, Signature, Term, Type,
};
use crate::nullarity::outer_arg;

/// A lifted term and, for each fresh variable, its type, the subterm it
/// replaced and where.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub term: Term,
    pub fresh: Vec<(String, Type, Term, Position)>,
}

/// Whether the η-reduced head of `t` is an abstraction or a constant of `sig`.
pub fn is_representative(t: &Term, sig: &Signature) -> bool {
    match head_of(&eta_reduce(t)) {
        HeadOrAbs::Abs => true,
        HeadOrAbs::Head(Head::Const(c)) => sig.constant_type(&c).is_some(),
        HeadOrAbs::Head(_) => false,
    }
}

type Binders = Vec<(String, Type)>;

// `λw̄.f'(r̄)`: the binders and the positions of the arguments r̄.
fn split(t: &Term) -> Result<(Binders, Vec<Position>)> {
    let (binders, body) = t.strip_binders();
    let Term::App {
        head: Head::Const(_),
        args,
        ..
    } = body
    else {
        return Err(Error::Shape(format!(
            "expected λw̄.c(r̄) with c a constant, got {t}"
        )));
    };
    let base = Position(vec![1; binders.len()]);
    let roots = (1..=args.len()).map(|i| base.child(i)).collect();
    Ok((binders, roots))
}

/// Outermost positions inside the arguments of `t = λw̄.f'(r̄)` whose
/// η-reduced head is a constant or an abstraction. Positions are relative to
/// `t` and listed left to right.
pub fn maximal_positions(t: &Term, sig: &Signature) -> Result<Vec<Position>> {
    let mut sig = sig.clone();
    for (c, ty) in constants(t) {
        if sig.constant_type(&c).is_none() {
            sig.declare_constant(c, ty);
        }
    }
    let (_, roots) = split(t)?;
    let mut out = Vec::new();
    for root in roots {
        collect(subterm_at(t, &root)?, &root, &sig, &mut out);
    }
    Ok(out)
}

fn collect(t: &Term, pos: &Position, sig: &Signature, out: &mut Vec<Position>) {
    if is_representative(t, sig) {
        out.push(pos.clone());
        return;
    }
    match t {
        Term::Abs { body, .. } => collect(body, &pos.child(1), sig, out),
        Term::App { args, .. } => {
            for (i, a) in args.iter().enumerate() {
                collect(a, &pos.child(i + 1), sig, out);
            }
        }
    }
}

/// Replaces every maximal position of `t = λw̄.f'(r̄)` by `Hj(w̄)` with fresh
/// `H1`, `H2`, ... in left-to-right order.
pub fn lift(t: &Term, sig: &Signature) -> Result<Lifted> {
    let (binders, _) = split(t)?;
    let mut taken: BTreeSet<String> = free_vars(t).into_keys().collect();
    taken.extend(constants(t).into_keys());
    let ws: Vec<Term> = binders
        .iter()
        .map(|(w, ty)| eta_var(Head::Bound(w.clone()), ty))
        .collect();
    let mut term = t.clone();
    let mut fresh = Vec::new();
    let mut j = 1;
    for q in maximal_positions(t, sig)? {
        let sub = subterm_at(t, &q)?.clone();
        shadow_check(t, &q, &binders)?;
        let name = loop {
            let n = format!("H{j}");
            j += 1;
            if !taken.contains(&n) {
                break n;
            }
        };
        let ty = Type::from_parts(binders.iter().map(|(_, ty)| ty), sub.ty().clone());
        let replacement = eta_expand(Head::Free(name.clone()), &ty, ws.clone());
        term = replace_at(&term, &q, replacement)?;
        fresh.push((name, ty, sub, q));
    }
    Ok(Lifted { term, fresh })
}

// `Hj(w̄)` must see the outer binders, not an inner one of the same name.
fn shadow_check(t: &Term, q: &Position, binders: &[(String, Type)]) -> Result<()> {
    let mut cur = t;
    for (depth, &i) in q.0.iter().enumerate() {
        if let Term::Abs { var, body, .. } = cur {
            if depth >= binders.len() && binders.iter().any(|(w, _)| w == var) {
                return Err(Error::Shape(format!(
                    "binder {var} shadows an outer binder above position {q}"
                )));
            }
            cur = body;
        } else {
            cur = &cur.args()[i - 1];
        }
    }
    Ok(())
}

/// The argument of the outer constant in the lifting of `g`.
pub fn core(g: &Term, sig: &Signature) -> Result<Term> {
    let lifted = lift(g, sig)?;
    let (pos, _) = outer_arg(&lifted.term)?;
    Ok(subterm_at(&lifted.term, &pos)?.clone())
}
