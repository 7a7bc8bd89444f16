//! Simple types, λ-terms in η-long β-normal spine form, and the operations
//! everything else is built from: parsing, typing, normalization,
//! positions and capture-avoiding substitution.

mod normalize;
mod parse;
mod print;
mod term;
mod types;

pub use normalize::{
    apply_subst, beta_eta_normalize, compose, eta_expand, eta_reduce, eta_var, infer_type, Ctx,
    Substitution,
};
pub(crate) use normalize::{apply_term, instantiate_bound, rename_bound};
pub use parse::{elaborate, parse_expr, parse_term, parse_term_with, parse_type};
pub use print::{term_from_json, term_to_json};
pub use term::{
    alpha_eq, bound_vars, constants, free_bound_names, free_vars, free_vars_ordered,
    fresh_free_var, fresh_name, head_of, occ, positions, replace_at, subterm_at, term_head, Expr,
    Head, HeadOrAbs, Position, Term,
};
pub use types::{canonical_constant, canonical_constant_type, Signature, Type};

/// `beta_eta_normalize` for a closed term already in normal form: the
/// round trip through [`Expr`].
pub fn renormalize(t: &Term, sig: &Signature) -> crate::error::Result<Term> {
    let free = free_vars(t);
    let consts = constants(t);
    let mut sig = sig.clone();
    for (n, ty) in consts {
        if sig.constant_type(&n).is_none() {
            sig.declare_constant(n, ty);
        }
    }
    beta_eta_normalize(
        &t.to_expr(),
        Ctx {
            bound: &[],
            free: &free,
            sig: &sig,
        },
    )
}
