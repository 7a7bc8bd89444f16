use std::collections::BTreeSet;

use crate::au::{Aup, GenWitness};
use crate::kernel::{
    alpha_eq, constants, eta_expand, eta_var, free_bound_names, fresh_name, rename_bound, Head,
    Substitution, Term, Type,
};

struct Entry {
    var: String,
    ty: Type,
    params: Vec<(String, Type)>,
    left: Term,
    right: Term,
}

struct Lgg {
    store: Vec<Entry>,
    taken: BTreeSet<String>,
}

/// The least general pattern generalization of `p`, with the witnesses that
/// recover both sides. Generalization variables are `Z`, `Z1`, ... in the
/// order they are created.
pub fn pattern_lgg(p: &Aup) -> GenWitness {
    let mut taken: BTreeSet<String> = constants(&p.left).into_keys().collect();
    taken.extend(constants(&p.right).into_keys());
    let mut st = Lgg {
        store: Vec::new(),
        taken,
    };
    let g = st.generalize(&mut Vec::new(), &p.left, &p.right);
    let mut sigma1 = Substitution::new();
    let mut sigma2 = Substitution::new();
    for e in &st.store {
        sigma1.insert(e.var.clone(), Term::abs_many(&e.params, e.left.clone()));
        sigma2.insert(e.var.clone(), Term::abs_many(&e.params, e.right.clone()));
    }
    GenWitness::new(g, sigma1, sigma2)
}

impl Lgg {
    fn generalize(&mut self, scope: &mut Vec<(String, Type)>, s: &Term, t: &Term) -> Term {
        match (s, t) {
            (
                Term::Abs {
                    var: vs,
                    var_ty,
                    body: bs,
                    ..
                },
                Term::Abs {
                    var: vt, body: bt, ..
                },
            ) => {
                let fs = free_bound_names(bs);
                let ft = free_bound_names(bt);
                let (name, bs, bt) = if vs == vt || !ft.contains(vs.as_str()) {
                    (vs.clone(), (**bs).clone(), rename_bound(bt, vt, vs, var_ty))
                } else {
                    let name = fresh_name(vs, |n| {
                        fs.contains(n) || ft.contains(n) || scope.iter().any(|(b, _)| b == n)
                    });
                    (
                        name.clone(),
                        rename_bound(bs, vs, &name, var_ty),
                        rename_bound(bt, vt, &name, var_ty),
                    )
                };
                scope.push((name.clone(), var_ty.clone()));
                let body = self.generalize(scope, &bs, &bt);
                scope.pop();
                Term::abs(name, var_ty.clone(), body)
            }
            (
                Term::App {
                    head: hs,
                    args: as_,
                    ty,
                },
                Term::App {
                    head: ht, args: at, ..
                },
            ) if hs == ht && as_.len() == at.len() => {
                let args = as_
                    .iter()
                    .zip(at)
                    .map(|(a, b)| self.generalize(scope, a, b))
                    .collect();
                Term::app(hs.clone(), args, ty.clone())
            }
            _ => self.abstract_pair(scope, s, t),
        }
    }

    fn abstract_pair(&mut self, scope: &[(String, Type)], s: &Term, t: &Term) -> Term {
        let mut used = free_bound_names(s);
        used.extend(free_bound_names(t));
        let mut params: Vec<(String, Type)> = Vec::new();
        for (i, (b, ty)) in scope.iter().enumerate() {
            let shadowed = scope[i + 1..].iter().any(|(c, _)| c == b);
            if used.contains(b) && !shadowed {
                params.push((b.clone(), ty.clone()));
            }
        }
        if let Some((var, ty, order)) = self.merge_with(&params, s, t) {
            let args = order
                .iter()
                .map(|&i| eta_var(Head::Bound(params[i].0.clone()), &params[i].1))
                .collect();
            return eta_expand(Head::Free(var), &ty, args);
        }
        let var = fresh_name("Z", |n| self.taken.contains(n));
        self.taken.insert(var.clone());
        let ty = Type::from_parts(params.iter().map(|(_, ty)| ty), s.ty().clone());
        let args = params
            .iter()
            .map(|(b, ty)| eta_var(Head::Bound(b.clone()), ty))
            .collect();
        self.store.push(Entry {
            var: var.clone(),
            ty: ty.clone(),
            params,
            left: s.clone(),
            right: t.clone(),
        });
        eta_expand(Head::Free(var), &ty, args)
    }

    // An earlier variable whose pair is this one up to a permutation of the
    // parameters. Returns it with the order to pass the new parameters in.
    fn merge_with(
        &self,
        params: &[(String, Type)],
        s: &Term,
        t: &Term,
    ) -> Option<(String, Type, Vec<usize>)> {
        for e in &self.store {
            if e.params.len() != params.len() || e.left.ty() != s.ty() {
                continue;
            }
            let old_l = Term::abs_many(&e.params, e.left.clone());
            let old_r = Term::abs_many(&e.params, e.right.clone());
            for order in permutations(params.len()) {
                let ps: Vec<(String, Type)> = order.iter().map(|&i| params[i].clone()).collect();
                if ps.iter().zip(&e.params).any(|(a, b)| a.1 != b.1) {
                    continue;
                }
                if alpha_eq(&Term::abs_many(&ps, s.clone()), &old_l)
                    && alpha_eq(&Term::abs_many(&ps, t.clone()), &old_r)
                {
                    return Some((e.var.clone(), e.ty.clone(), order));
                }
            }
        }
        None
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Merging beyond a handful of parameters is not worth the factorial.
    if n > 6 {
        return vec![(0..n).collect()];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::au::check_generalization;
    use crate::kernel::{parse_term, Signature};

    fn problem(s: &str, t: &str, sig: &Signature) -> Aup {
        Aup::new(parse_term(s, sig).unwrap(), parse_term(t, sig).unwrap()).unwrap()
    }

    #[test]
    fn running_example() {
        let sig = Signature::builtin();
        let p = problem("\\x:a.\\y:a. f(x)", "\\x:a.\\y:a. f(y)", &sig);
        let w = pattern_lgg(&p);
        assert_eq!(w.g.to_string(), "\\x:a.\\y:a. f(Z(x,y))");
        assert_eq!(w.sigma1.to_string(), "{Z := \\x:a.\\y:a. x}");
        assert!(check_generalization(&w, &p).unwrap());
        assert!(w.grounded);
    }

    #[test]
    fn merges_repeated_disagreements() {
        let sig = Signature::builtin().with_constant("g", "a->a->a".parse().unwrap());
        let p = problem("\\x:a.\\y:a. g(x,y)", "\\x:a.\\y:a. g(y,x)", &sig);
        let w = pattern_lgg(&p);
        assert_eq!(w.g.to_string(), "\\x:a.\\y:a. g(Z(x,y),Z(y,x))");
        assert!(check_generalization(&w, &p).unwrap());
    }

    #[test]
    fn parameters_are_the_bound_variables_that_occur() {
        let sig = Signature::builtin().with_constant("b", "a".parse().unwrap());
        let p = problem("\\x:a. f(a)", "\\x:a. f(b)", &sig);
        let w = pattern_lgg(&p);
        assert_eq!(w.g.to_string(), "\\x:a. f(Z)");
    }
}
