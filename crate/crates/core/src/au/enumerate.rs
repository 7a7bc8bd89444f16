use std::collections::BTreeMap;

use crate::au::{less_general, Aup, GenWitness, MatchOutcome};
use crate::kernel::{constants, fresh_name, Head, Term, Type};

type Scope = Vec<(String, Type)>;

const MATCH_FUEL: usize = 8;
const MAX_VAR_ARITY: usize = 3;

struct Universe {
    consts: Vec<(String, Type)>,
    bases: Vec<Type>,
    budget: usize,
}

#[derive(Clone)]
struct Partial {
    term: Term,
    vars: Vec<(String, Type)>,
    size: usize,
}

/// All generalizations of `p` whose body under the shared λ-prefix has at most
/// `size_bound` nodes (spine heads plus inner binders) and that use at most
/// `var_budget` free variables, each with a witness. Free variables are named
/// `Z`, `Z1`, ... in order of first occurrence, so the list has no two terms
/// that differ only by renaming. Sorted by size, then printed form.
pub fn enumerate_generalizations(p: &Aup, size_bound: usize, var_budget: usize) -> Vec<GenWitness> {
    let (prefix, body) = p.left.strip_binders();
    let mut consts: BTreeMap<String, Type> = constants(&p.left);
    consts.extend(constants(&p.right));
    let mut bases = Vec::new();
    let mut names = Vec::new();
    p.ty().base_names(&mut names);
    for ty in consts.values() {
        ty.base_names(&mut names);
    }
    names.sort();
    names.dedup();
    bases.extend(names.into_iter().map(Type::base));
    let u = Universe {
        consts: consts.into_iter().collect(),
        bases,
        budget: var_budget,
    };
    let mut scope = prefix.clone();
    let bodies = u.terms(body.ty(), &mut scope, &[], size_bound);
    let mut out: Vec<(usize, String, GenWitness)> = Vec::new();
    for b in bodies {
        let g = Term::abs_many(&prefix, b.term);
        let (MatchOutcome::Proven(s1), MatchOutcome::Proven(s2)) = (
            less_general(&g, &p.left, MATCH_FUEL),
            less_general(&g, &p.right, MATCH_FUEL),
        ) else {
            continue;
        };
        out.push((b.size, g.to_string(), GenWitness::new(g, s1, s2)));
    }
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.dedup_by(|a, b| a.1 == b.1);
    out.into_iter().map(|(_, _, w)| w).collect()
}

impl Universe {
    // η-long terms of type `ty` with at most `max` nodes.
    fn terms(
        &self,
        ty: &Type,
        scope: &mut Vec<(String, Type)>,
        vars: &[(String, Type)],
        max: usize,
    ) -> Vec<Partial> {
        let args = ty.args();
        if !args.is_empty() {
            if max <= args.len() {
                return Vec::new();
            }
            let mut binders = Vec::new();
            for a in &args {
                let name = fresh_name("z", |n| {
                    scope.iter().any(|(b, _)| b == n) || binders.iter().any(|(b, _)| b == n)
                });
                binders.push((name, (*a).clone()));
            }
            let depth = scope.len();
            scope.extend(binders.iter().cloned());
            let bodies = self.terms(ty.target(), scope, vars, max - args.len());
            scope.truncate(depth);
            return bodies
                .into_iter()
                .map(|b| Partial {
                    term: Term::abs_many(&binders, b.term),
                    vars: b.vars,
                    size: b.size + binders.len(),
                })
                .collect();
        }
        if max == 0 {
            return Vec::new();
        }
        let mut heads: Vec<(Head, Type, Scope)> = Vec::new();
        for (i, (b, bty)) in scope.iter().enumerate() {
            let shadowed = scope[i + 1..].iter().any(|(c, _)| c == b);
            if !shadowed && bty.target() == ty {
                heads.push((Head::Bound(b.clone()), bty.clone(), vars.to_vec()));
            }
        }
        for (c, cty) in &self.consts {
            if cty.target() == ty {
                heads.push((Head::Const(c.clone()), cty.clone(), vars.to_vec()));
            }
        }
        for (v, vty) in vars {
            if vty.target() == ty {
                heads.push((Head::Free(v.clone()), vty.clone(), vars.to_vec()));
            }
        }
        if vars.len() < self.budget {
            let name = fresh_name("Z", |n| vars.iter().any(|(v, _)| v == n));
            for vty in self.var_types(ty) {
                let mut vs = vars.to_vec();
                vs.push((name.clone(), vty.clone()));
                heads.push((Head::Free(name.clone()), vty, vs));
            }
        }
        let mut out = Vec::new();
        for (h, hty, vs) in heads {
            let arg_tys: Vec<Type> = hty.args().into_iter().cloned().collect();
            for (args, vs, size) in self.arg_lists(&arg_tys, scope, &vs, max - 1) {
                out.push(Partial {
                    term: Term::app(h.clone(), args, ty.clone()),
                    vars: vs,
                    size: size + 1,
                });
            }
        }
        out
    }

    fn arg_lists(
        &self,
        tys: &[Type],
        scope: &mut Vec<(String, Type)>,
        vars: &[(String, Type)],
        max: usize,
    ) -> Vec<(Vec<Term>, Scope, usize)> {
        let Some((first, rest)) = tys.split_first() else {
            return vec![(Vec::new(), vars.to_vec(), 0)];
        };
        let reserve: usize = rest.iter().map(|t| 1 + t.arity()).sum();
        if max < reserve + 1 + first.arity() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for a in self.terms(first, scope, vars, max - reserve) {
            for (mut args, vs, size) in self.arg_lists(rest, scope, &a.vars, max - a.size) {
                args.insert(0, a.term.clone());
                out.push((args, vs, size + a.size));
            }
        }
        out
    }

    fn var_types(&self, result: &Type) -> Vec<Type> {
        let mut out = vec![result.clone()];
        let mut layer = vec![Vec::<Type>::new()];
        for _ in 0..MAX_VAR_ARITY {
            let mut next = Vec::new();
            for prefix in &layer {
                for b in &self.bases {
                    let mut v = prefix.clone();
                    v.push(b.clone());
                    out.push(Type::from_parts(v.iter(), result.clone()));
                    next.push(v);
                }
            }
            layer = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{parse_term, Signature};

    fn running() -> Aup {
        let sig = Signature::builtin();
        Aup::new(
            parse_term("\\x:a.\\y:a. f(x)", &sig).unwrap(),
            parse_term("\\x:a.\\y:a. f(y)", &sig).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn small_universe() {
        let all: Vec<String> = enumerate_generalizations(&running(), 5, 2)
            .iter()
            .map(|w| w.g.to_string())
            .collect();
        assert!(all.contains(&"\\x:a.\\y:a. Z(x,y)".to_string()), "{all:?}");
        assert!(!all.contains(&"\\x:a.\\y:a. Z".to_string()));
        assert!(all.contains(&"\\x:a.\\y:a. f(Z(x,y))".to_string()));
        assert!(!all.contains(&"\\x:a.\\y:a. f(x)".to_string()));
    }

    #[test]
    fn size_zero_is_empty() {
        assert!(enumerate_generalizations(&running(), 0, 2).is_empty());
    }
}
