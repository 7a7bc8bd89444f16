use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use crate::au::MatchOutcome;
use crate::error::{Error, Result};
use crate::kernel::{
    alpha_eq, apply_subst, apply_term, eta_expand, eta_reduce, eta_var, free_bound_names,
    free_vars, fresh_name, instantiate_bound, positions, rename_bound, subterm_at, Expr, Head,
    Substitution, Term, Type,
};

pub const DEFAULT_FUEL: usize = 8;

// Search steps across all deepening rounds before giving up with `Unknown`.
const STEP_CAP: usize = 200_000;

fn bound_var_args(args: &[Term]) -> Option<Vec<(String, Type)>> {
    args.iter()
        .map(|a| match eta_reduce(a) {
            Expr::Leaf(Head::Bound(n)) => Some((n, a.ty().clone())),
            _ => None,
        })
        .collect()
}

/// Every free variable is applied to distinct bound variables (after η-reduction).
pub fn is_pattern(t: &Term) -> bool {
    positions(t).iter().all(|p| {
        let Ok(Term::App {
            head: Head::Free(_),
            args,
            ..
        }) = subterm_at(t, p)
        else {
            return true;
        };
        match bound_var_args(args) {
            Some(vs) => vs.iter().collect::<BTreeSet<_>>().len() == vs.len(),
            None => false,
        }
    })
}

/// Matching of a pattern against an arbitrary normal term. Free variables of
/// `target` are treated as constants.
pub fn pattern_match(pat: &Term, target: &Term) -> Result<MatchOutcome> {
    if !is_pattern(pat) {
        return Err(Error::NotAPattern(pat.to_string()));
    }
    if pat.ty() != target.ty() {
        return Err(Error::TypeMismatch {
            expected: pat.ty().to_string(),
            found: target.ty().to_string(),
            offset: None,
        });
    }
    let mut sigma = BTreeMap::new();
    if let Err(reason) = pmatch(pat, target, &mut Vec::new(), &mut sigma) {
        return Ok(MatchOutcome::Refuted(reason));
    }
    let mut out = Substitution::new();
    for (k, v) in sigma {
        out.insert(k, v);
    }
    Ok(MatchOutcome::proven(pat, target, out))
}

fn pmatch(
    p: &Term,
    t: &Term,
    scope: &mut Vec<String>,
    sigma: &mut BTreeMap<String, Term>,
) -> std::result::Result<(), String> {
    match (p, t) {
        (
            Term::Abs {
                var: vp,
                var_ty,
                body: bp,
                ..
            },
            Term::Abs {
                var: vt, body: bt, ..
            },
        ) => {
            let ft = free_bound_names(bt);
            let (name, bp, bt) = if vp == vt || !ft.contains(vp.as_str()) {
                (vp.clone(), (**bp).clone(), rename_bound(bt, vt, vp, var_ty))
            } else {
                let fp = free_bound_names(bp);
                let name = fresh_name(vp, |n| {
                    fp.contains(n) || ft.contains(n) || scope.iter().any(|b| b == n)
                });
                (
                    name.clone(),
                    rename_bound(bp, vp, &name, var_ty),
                    rename_bound(bt, vt, &name, var_ty),
                )
            };
            scope.push(name);
            let r = pmatch(&bp, &bt, scope, sigma);
            scope.pop();
            r
        }
        (
            Term::App {
                head: Head::Free(x),
                args,
                ..
            },
            _,
        ) => {
            let params = bound_var_args(args).expect("checked pattern");
            let names: BTreeSet<&str> = params.iter().map(|(n, _)| n.as_str()).collect();
            for v in free_bound_names(t) {
                if scope.contains(&v) && !names.contains(v.as_str()) {
                    return Err(format!("{x} cannot introduce bound variable {v}"));
                }
            }
            let binding = Term::abs_many(&params, t.clone());
            match sigma.get(x) {
                Some(old) if !alpha_eq(old, &binding) => {
                    Err(format!("{x} needs both {old} and {binding}"))
                }
                Some(_) => Ok(()),
                None => {
                    sigma.insert(x.clone(), binding);
                    Ok(())
                }
            }
        }
        (
            Term::App {
                head: hp, args: ap, ..
            },
            Term::App {
                head: ht, args: at, ..
            },
        ) => {
            if hp != ht || ap.len() != at.len() {
                return Err(format!("head clash: {} against {}", hp.name(), ht.name()));
            }
            for (a, b) in ap.iter().zip(at) {
                pmatch(a, b, scope, sigma)?;
            }
            Ok(())
        }
        _ => Err(format!("shape clash: {p} against {t}")),
    }
}

#[derive(Clone)]
struct Eq {
    lhs: Rc<Term>,
    rhs: Rc<Term>,
    depth: usize,
}

#[derive(Clone, Default)]
struct State {
    eqs: Vec<Eq>,
    // In binding order; later bindings only mention metavariables made later.
    bindings: Vec<(String, Rc<Term>)>,
}

impl State {
    fn lookup(&self, x: &str) -> Option<&Rc<Term>> {
        self.bindings.iter().find(|(k, _)| k == x).map(|(_, v)| v)
    }
}

enum Search {
    Found(State),
    Failed { cut: bool },
    OutOfSteps,
}

struct Matcher {
    steps: usize,
    fresh: usize,
}

impl Matcher {
    fn fresh(&mut self, prefix: &str) -> String {
        self.fresh += 1;
        format!("%{prefix}{}", self.fresh)
    }

    fn head_normal(&self, t: &Rc<Term>, st: &State) -> Rc<Term> {
        let mut cur = t.clone();
        loop {
            let next = match cur.as_ref() {
                Term::App {
                    head: Head::Free(x),
                    args,
                    ..
                } => match st.lookup(x) {
                    Some(b) => apply_term(b, args.clone()),
                    None => return cur,
                },
                _ => return cur,
            };
            cur = Rc::new(next);
        }
    }

    fn solve(&mut self, mut st: State) -> Search {
        loop {
            self.steps += 1;
            if self.steps > STEP_CAP {
                return Search::OutOfSteps;
            }
            let Some(eq) = st.eqs.pop() else {
                return Search::Found(st);
            };
            let lhs = self.head_normal(&eq.lhs, &st);
            match (lhs.as_ref(), eq.rhs.as_ref()) {
                (
                    Term::Abs {
                        var: vl,
                        var_ty,
                        body: bl,
                        ..
                    },
                    Term::Abs {
                        var: vr, body: br, ..
                    },
                ) => {
                    let b = self.fresh("b");
                    let v = eta_var(Head::Bound(b), var_ty);
                    st.eqs.push(Eq {
                        lhs: Rc::new(instantiate_bound(bl, vl, v.clone())),
                        rhs: Rc::new(instantiate_bound(br, vr, v)),
                        depth: eq.depth,
                    });
                }
                (
                    Term::App {
                        head: Head::Free(x),
                        ..
                    },
                    Term::App {
                        head: hr, args: ar, ..
                    },
                ) => {
                    if eq.depth == 0 {
                        return Search::Failed { cut: true };
                    }
                    let x_ty = lhs.head_type().expect("application");
                    let mut cut = false;
                    for binding in self.flex_bindings(&x_ty, hr, &eq.rhs, ar.len()) {
                        let mut next = st.clone();
                        next.bindings.push((x.clone(), Rc::new(binding)));
                        next.eqs.push(Eq {
                            lhs: lhs.clone(),
                            rhs: eq.rhs.clone(),
                            depth: eq.depth - 1,
                        });
                        match self.solve(next) {
                            Search::Failed { cut: c } => cut |= c,
                            other => return other,
                        }
                    }
                    return Search::Failed { cut };
                }
                (
                    Term::App {
                        head: hl, args: al, ..
                    },
                    Term::App {
                        head: hr, args: ar, ..
                    },
                ) => {
                    if hl != hr || al.len() != ar.len() {
                        return Search::Failed { cut: false };
                    }
                    for (a, b) in al.iter().zip(ar).rev() {
                        st.eqs.push(Eq {
                            lhs: Rc::new(a.clone()),
                            rhs: Rc::new(b.clone()),
                            depth: eq.depth,
                        });
                    }
                }
                _ => return Search::Failed { cut: false },
            }
        }
    }

    // Imitation of a constant head first, then projections left to right.
    fn flex_bindings(&mut self, x_ty: &Type, rhead: &Head, rhs: &Term, rargs: usize) -> Vec<Term> {
        let params: Vec<(String, Type)> = x_ty
            .args()
            .into_iter()
            .enumerate()
            .map(|(i, ty)| (format!("w{}", i + 1), ty.clone()))
            .collect();
        let result = x_ty.target().clone();
        let mut out = Vec::new();
        if let Head::Const(_) = rhead {
            let h_ty = rhs.head_type().expect("application");
            debug_assert_eq!(h_ty.arity(), rargs);
            out.push(self.general_binding(&params, rhead.clone(), &h_ty));
        }
        for (w, ty) in &params {
            if *ty.target() == result {
                out.push(self.general_binding(&params, Head::Bound(w.clone()), ty));
            }
        }
        out
    }

    // λw̄. h(H1(w̄), ..., Hk(w̄)) with fresh Hj.
    fn general_binding(&mut self, params: &[(String, Type)], h: Head, h_ty: &Type) -> Term {
        let ws: Vec<Term> = params
            .iter()
            .map(|(w, ty)| eta_var(Head::Bound(w.clone()), ty))
            .collect();
        let args = h_ty
            .args()
            .into_iter()
            .map(|rho| {
                let m_ty = Type::from_parts(params.iter().map(|(_, t)| t), rho.clone());
                eta_expand(Head::Free(self.fresh("M")), &m_ty, ws.clone())
            })
            .collect();
        Term::abs_many(params, eta_expand(h, h_ty, args))
    }
}

/// Fuel-bounded imitate/project search for `σ` with `query σ = target`.
/// Free variables of `target` are rigid. Each flexible step uses one unit of
/// fuel along its branch; rounds of increasing depth make the result
/// monotone in `fuel`.
pub fn match_bounded(query: &Term, target: &Term, fuel: usize) -> MatchOutcome {
    if query.ty() != target.ty() {
        return MatchOutcome::Refuted(format!("type {} against {}", query.ty(), target.ty()));
    }
    if alpha_eq(query, target) {
        return MatchOutcome::Proven(Substitution::new());
    }
    let frozen = target.rename_heads(&|h| match h {
        Head::Free(n) => Some(Head::Const(format!("%{n}"))),
        _ => None,
    });
    let mut m = Matcher { steps: 0, fresh: 0 };
    for depth in 0..=fuel {
        let st = State {
            eqs: vec![Eq {
                lhs: Rc::new(query.clone()),
                rhs: Rc::new(frozen.clone()),
                depth,
            }],
            bindings: Vec::new(),
        };
        match m.solve(st) {
            Search::Found(st) => return finish(query, target, st),
            Search::Failed { cut: false } => {
                return MatchOutcome::Refuted("no imitation or projection applies".into())
            }
            Search::Failed { cut: true } => {}
            Search::OutOfSteps => return MatchOutcome::Unknown,
        }
    }
    MatchOutcome::Unknown
}

fn finish(query: &Term, target: &Term, st: State) -> MatchOutcome {
    let mut resolved = Substitution::new();
    for (x, b) in st.bindings.iter().rev() {
        let r = apply_subst(b, &resolved).expect("well-typed bindings");
        resolved.insert(x.clone(), r);
    }
    let qvars = free_vars(query);
    let mut avoid: BTreeSet<String> = qvars.keys().cloned().collect();
    avoid.extend(free_vars(target).into_keys());
    let mut renames: BTreeMap<String, String> = BTreeMap::new();
    let mut out = Substitution::new();
    for x in qvars.keys() {
        let Some(r) = resolved.get(x) else { continue };
        for (m, _) in crate::kernel::free_vars_ordered(r) {
            if m.starts_with('%') && !renames.contains_key(&m) {
                let n = fresh_name("M", |c| avoid.contains(c));
                avoid.insert(n.clone());
                renames.insert(m, n);
            }
        }
        let r = r.rename_heads(&|h| match h {
            Head::Free(n) => renames.get(n).map(|v| Head::Free(v.clone())),
            Head::Const(n) => n.strip_prefix('%').map(|v| Head::Free(v.to_string())),
            Head::Bound(_) => None,
        });
        out.insert(x.clone(), r);
    }
    MatchOutcome::proven(query, target, out)
}

/// `g1 ≤ g2`: pattern matching when `g1` is a pattern, bounded search otherwise.
pub fn less_general(g1: &Term, g2: &Term, fuel: usize) -> MatchOutcome {
    if g1.ty() != g2.ty() {
        return MatchOutcome::Refuted(format!("type {} against {}", g1.ty(), g2.ty()));
    }
    if is_pattern(g1) {
        match pattern_match(g1, g2) {
            Ok(o) => o,
            Err(e) => MatchOutcome::Refuted(e.to_string()),
        }
    } else {
        match_bounded(g1, g2, fuel)
    }
}
