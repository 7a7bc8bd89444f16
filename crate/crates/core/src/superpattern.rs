//! Membership in the superpattern fragment: below a free variable, every
//! argument is a bound variable or has a free head, and bound-variable
//! arguments are pairwise distinct.

use std::fmt;

use serde_json::{json, Value};

use crate::kernel::{eta_reduce, head_of, Expr, Head, HeadOrAbs, Position, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    BadArgHead,
    DuplicateBoundArg,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::BadArgHead => "BadArgHead",
            Violation::DuplicateBoundArg => "DuplicateBoundArg",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperpatternReport {
    pub is_member: bool,
    pub violations: Vec<(Position, Violation)>,
}

impl SuperpatternReport {
    pub fn to_json(&self) -> Value {
        json!({
            "isMember": self.is_member,
            "violations": self
                .violations
                .iter()
                .map(|(p, v)| json!({"position": p.to_string(), "reason": v.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuperpatternReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_member {
            return f.write_str("superpattern");
        }
        f.write_str("not a superpattern")?;
        for (p, v) in &self.violations {
            write!(f, "\n  {v} at {p}")?;
        }
        Ok(())
    }
}

/// Checks every free-variable application in `t`. Violations are reported at
/// the position of the offending argument, in preorder.
pub fn is_superpattern(t: &Term) -> SuperpatternReport {
    let mut violations = Vec::new();
    visit(t, &Position::root(), &mut Vec::new(), &mut violations);
    SuperpatternReport {
        is_member: violations.is_empty(),
        violations,
    }
}

fn visit(t: &Term, pos: &Position, scope: &mut Vec<String>, out: &mut Vec<(Position, Violation)>) {
    match t {
        Term::Abs { var, body, .. } => {
            scope.push(var.clone());
            visit(body, &pos.child(1), scope, out);
            scope.pop();
        }
        Term::App { head, args, .. } => {
            if let Head::Free(_) = head {
                let mut seen: Vec<String> = Vec::new();
                for (i, a) in args.iter().enumerate() {
                    let p = pos.child(i + 1);
                    match eta_reduce(a) {
                        Expr::Leaf(Head::Bound(b)) if scope.contains(&b) => {
                            if seen.contains(&b) {
                                out.push((p, Violation::DuplicateBoundArg));
                            } else {
                                seen.push(b);
                            }
                        }
                        e => {
                            if !matches!(head_of(&e), HeadOrAbs::Head(Head::Free(_))) {
                                out.push((p, Violation::BadArgHead));
                            }
                        }
                    }
                }
            }
            for (i, a) in args.iter().enumerate() {
                visit(a, &pos.child(i + 1), scope, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{parse_term, Signature};

    #[test]
    fn violations_are_ordered_by_position() {
        let sig = Signature::builtin();
        let t = parse_term("\\x:a.\\y:a. Z(x,x,f(y),x)", &sig).unwrap();
        let r = is_superpattern(&t);
        let shown: Vec<String> = r
            .violations
            .iter()
            .map(|(p, v)| format!("{v}@{p}"))
            .collect();
        assert_eq!(
            shown,
            [
                "DuplicateBoundArg@1.1.2",
                "BadArgHead@1.1.3",
                "DuplicateBoundArg@1.1.4"
            ]
        );
    }
}
