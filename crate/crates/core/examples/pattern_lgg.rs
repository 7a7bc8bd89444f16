//! Least general pattern generalizations, their witnesses, and pattern
//! matching back into each side.

use lambda_au::au::{check_generalization, pattern_lgg, pattern_match, Aup};
use lambda_au::kernel::{parse_term, parse_type, Signature};

fn main() -> lambda_au::Result<()> {
    let sig = Signature::builtin()
        .with_constant("g", parse_type("a -> a -> a")?)
        .with_constant("h", parse_type("a -> a")?)
        .with_constant("c", parse_type("a")?);
    let problems = [
        ("\\x:a.\\y:a. f(x)", "\\x:a.\\y:a. f(y)"),
        ("\\x:a. f(h(x))", "\\x:a. f(f(x))"),
        ("\\x:a.\\y:a. g(f(x), c)", "\\x:a.\\y:a. g(f(y), c)"),
        ("\\x:a->a. x(a)", "\\x:a->a. f(x(c))"),
        ("g(a, c)", "g(c, a)"),
    ];
    for (s, t) in problems {
        let p = Aup::new(parse_term(s, &sig)?, parse_term(t, &sig)?)?;
        let w = pattern_lgg(&p);
        println!("{p}");
        println!("  lgg {w}");
        println!("  verified: {}", check_generalization(&w, &p)?);
        for side in [&p.left, &p.right] {
            println!("  match into {side}: {}", pattern_match(&w.g, side)?);
        }
    }
    Ok(())
}
