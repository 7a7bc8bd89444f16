use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::parse::elaborate;
use crate::kernel::term::{all_bound_names, constants, fresh_name, Expr, Head, Term};
use crate::kernel::types::{Signature, Type};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let consts: BTreeSet<String> = constants(self).into_keys().collect();
        let mut taken = BTreeSet::new();
        all_bound_names(self, &mut taken);
        taken.extend(consts.iter().cloned());
        let mut out = String::new();
        write_term(self, &mut Vec::new(), &consts, &taken, &mut out);
        f.write_str(&out)
    }
}

// Binders that collide with a constant name are renamed so the text
// parses back to the same term.
fn write_term(
    t: &Term,
    scope: &mut Vec<(String, String)>,
    consts: &BTreeSet<String>,
    taken: &BTreeSet<String>,
    out: &mut String,
) {
    match t {
        Term::Abs {
            var, var_ty, body, ..
        } => {
            let shown = if consts.contains(var) {
                fresh_name(var, |n| taken.contains(n))
            } else {
                var.clone()
            };
            out.push('\\');
            out.push_str(&shown);
            out.push(':');
            out.push_str(&var_ty.to_string());
            out.push('.');
            scope.push((var.clone(), shown));
            if !matches!(body.as_ref(), Term::Abs { .. }) {
                out.push(' ');
            }
            write_term(body, scope, consts, taken, out);
            scope.pop();
        }
        Term::App { head, args, .. } => {
            let name = match head {
                Head::Bound(n) => scope
                    .iter()
                    .rev()
                    .find(|(o, _)| o == n)
                    .map_or(n.as_str(), |(_, s)| s.as_str()),
                _ => head.name(),
            };
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_term(a, scope, consts, taken, out);
                }
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Leaf(h) => f.write_str(h.name()),
            Expr::Abs { var, ty, body } => {
                write!(f, "\\{var}:{ty}.")?;
                if !matches!(body.as_ref(), Expr::Abs { .. }) {
                    f.write_str(" ")?;
                }
                write!(f, "{body}")
            }
            Expr::App(..) => {
                let (op, args) = self.spine();
                match op {
                    Expr::Leaf(h) => f.write_str(h.name())?,
                    _ => write!(f, "({op})")?,
                }
                f.write_str("(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// JSON AST: `{"abs": {"var", "ty", "body"}}` or
/// `{"app": {"head": {"kind", "name"}, "args": [...]}}`.
pub fn term_to_json(t: &Term) -> Value {
    match t {
        Term::Abs {
            var, var_ty, body, ..
        } => json!({"abs": {"var": var, "ty": var_ty.to_string(), "body": term_to_json(body)}}),
        Term::App { head, args, .. } => {
            let kind = match head {
                Head::Bound(_) => "bound",
                Head::Free(_) => "free",
                Head::Const(_) => "const",
            };
            json!({"app": {
                "head": {"kind": kind, "name": head.name()},
                "args": args.iter().map(term_to_json).collect::<Vec<_>>(),
            }})
        }
    }
}

fn expr_from_json(v: &Value) -> Result<Expr> {
    let bad = |m: &str| Error::Json(m.to_string());
    if let Some(abs) = v.get("abs") {
        let var = abs["var"].as_str().ok_or_else(|| bad("abs.var"))?;
        let ty: Type = abs["ty"].as_str().ok_or_else(|| bad("abs.ty"))?.parse()?;
        let body = expr_from_json(&abs["body"])?;
        return Ok(Expr::lam(var, ty, body));
    }
    if let Some(app) = v.get("app") {
        let head = &app["head"];
        let name = head["name"].as_str().ok_or_else(|| bad("app.head.name"))?;
        let head = match head["kind"].as_str() {
            Some("bound") => Head::Bound(name.into()),
            Some("free") => Head::Free(name.into()),
            Some("const") => Head::Const(name.into()),
            _ => return Err(bad("app.head.kind")),
        };
        let args = app["args"].as_array().ok_or_else(|| bad("app.args"))?;
        let mut e = Expr::Leaf(head);
        for a in args {
            e = Expr::app(e, expr_from_json(a)?);
        }
        return Ok(e);
    }
    Err(bad("expected `abs` or `app`"))
}

/// Reads a term from the JSON AST and normalizes it.
pub fn term_from_json(v: &Value, sig: &Signature, free: &BTreeMap<String, Type>) -> Result<Term> {
    elaborate(&expr_from_json(v)?, sig, free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{alpha_eq, parse_term};

    #[test]
    fn prints_and_reparses() {
        let sig = Signature::builtin();
        for src in [
            "\\x:a.\\y:a. f(x)",
            "\\x:a.\\y:a. f(Z(x,y))",
            "\\x:a. Y(\\z:a. x,f(a))",
            "\\x:a.\\y:a. f(Y(W(x,f(a)),W(f(a),y)))",
        ] {
            let t = parse_term(src, &sig).unwrap();
            assert_eq!(t.to_string(), src);
            let back = parse_term(&t.to_string(), &sig).unwrap();
            assert!(alpha_eq(&t, &back));
        }
    }

    #[test]
    fn binder_named_like_constant_is_renamed() {
        let sig = Signature::builtin();
        let t = Term::abs(
            "a",
            Type::base("a"),
            Term::app(
                Head::Const("g".into()),
                vec![
                    Term::app(Head::Bound("a".into()), vec![], Type::base("a")),
                    Term::app(Head::Const("a".into()), vec![], Type::base("a")),
                ],
                Type::base("a"),
            ),
        );
        let shown = t.to_string();
        assert_eq!(shown, "\\a1:a. g(a1,a)");
        let sig = sig.with_constant("g", "a->a->a".parse().unwrap());
        assert!(alpha_eq(&parse_term(&shown, &sig).unwrap(), &t));
    }

    #[test]
    fn json_round_trip() {
        let sig = Signature::builtin();
        let t = parse_term("\\x:a.\\y:a. f(Z(x,y))", &sig).unwrap();
        let v = term_to_json(&t);
        let back = term_from_json(&v, &sig, &crate::kernel::free_vars(&t)).unwrap();
        assert!(alpha_eq(&t, &back));
    }
}
